"""Bilinear forms between Hopf algebras and their axiom checkers.

A form ``lam`` on ``(X, Y)`` is a map X (x) Y -> k given on basis pairs.  The
orientation is stored explicitly; nothing here flips a form implicitly.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Mapping

from .exactmath import LinComb, accumulate, basis_key, raw_items
from .hopfcore import HopfAlgebra, WindowError
from .report import VerificationReport, check_identity


class AlgebraMismatchError(ValueError):
    pass


class BilinearForm:
    """Scalar-valued bilinear map on ``left`` (x) ``right``.

    ``table`` maps basis pairs to scalars; unlisted pairs evaluate to 0
    (``default="zero"``) or to eps(x) eps(y) (``default="counit-product"``).
    A ``rule`` is a callable on basis pairs; ``window`` optionally caps the
    window on which a rule-backed form may be verified.
    """

    def __init__(
        self,
        left: HopfAlgebra,
        right: HopfAlgebra,
        *,
        table: Mapping | None = None,
        rule: Callable | None = None,
        default: str = "zero",
        name: str = "",
        window: int | None = None,
        meta: Mapping | None = None,
    ):
        if (table is None) == (rule is None):
            raise ValueError("BilinearForm needs exactly one of table / rule")
        if left.field != right.field:
            raise AlgebraMismatchError("left and right algebras over different fields")
        if default not in ("zero", "counit-product"):
            raise ValueError(f"unknown default {default!r}")
        self.left = left
        self.right = right
        self.field = left.field
        self.name = name
        self.default = default
        self.window = window
        self.meta = dict(meta or {})
        self._rule = rule
        self._table = None
        if table is not None:
            F = self.field
            self._table = {}
            for (x, y), c in table.items():
                if left.is_finite and x not in left.basis:
                    raise AlgebraMismatchError(f"{name}: {x!r} not in {left.name}")
                if right.is_finite and y not in right.basis:
                    raise AlgebraMismatchError(f"{name}: {y!r} not in {right.name}")
                self._table[(x, y)] = F(c)
        self._cache: dict = {}

    @property
    def table_backed(self) -> bool:
        return self._table is not None

    def __call__(self, x, y):
        key = (x, y)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if self._table is not None:
            if key in self._table:
                val = self._table[key]
            elif self.default == "counit-product":
                val = self.left.counit(x) * self.right.counit(y)
            else:
                val = self.field.zero
        else:
            val = self.field(self._rule(x, y))
        self._cache[key] = val
        return val

    def pair(self, u: Mapping, v: Mapping):
        """Bilinear extension to linear combinations."""
        total = self.field.zero
        vi = list(raw_items(v))
        for x, c in raw_items(u):
            for y, d in vi:
                val = self(x, y)
                if val:
                    total = total + c * d * val
        return total

    def windows(self, window: int | None = None) -> tuple[list, list]:
        if window is not None and self.window is not None and window > self.window:
            raise WindowError(f"{self.name}: requested window {window} exceeds declared {self.window}")
        w = window if window is not None else self.window
        return self.left.elements(w), self.right.elements(w)

    def window_label(self, window: int | None = None) -> str:
        if self.left.is_finite and self.right.is_finite:
            return "complete"
        w = window if window is not None else self.window
        return str(w if w is not None else min(
            x.default_window for x in (self.left, self.right) if not x.is_finite))

    def entries(self, window: int | None = None) -> dict:
        """Nonzero values on the (window) basis, sorted."""
        L, R = self.windows(window)
        out = {}
        for x in L:
            for y in R:
                v = self(x, y)
                if v:
                    out[(x, y)] = v
        return out

    def __repr__(self):
        return f"<BilinearForm {self.name} on ({self.left.name}, {self.right.name})>"


def counit_form(left: HopfAlgebra, right: HopfAlgebra, name: str = "eps(x)eps") -> BilinearForm:
    return BilinearForm(left, right, table={}, default="counit-product", name=name)


def forms_equal(f: BilinearForm, g: BilinearForm, window: int | None = None) -> VerificationReport:
    L, R = f.windows(window)
    report = VerificationReport(f"{f.name} == {g.name}", f.window_label(window), field=f.field)
    report.add(check_identity("entrywise", list(product(L, R)), f, g))
    return report


# ---------------------------------------------------------------------------
# derived forms


def convolve_forms(lam: BilinearForm, mu: BilinearForm, name: str = "") -> BilinearForm:
    """(lam * mu)(x, y) = lam(x_(1), y_(1)) mu(x_(2), y_(2))."""
    if lam.left is not mu.left or lam.right is not mu.right:
        raise AlgebraMismatchError("convolution needs forms on the same pair of algebras")
    X, Y = lam.left, lam.right

    def rule(x, y):
        total = lam.field.zero
        dy = list(Y.comult(y).terms.items())
        for (x1, x2), c in X.comult(x).terms.items():
            for (y1, y2), d in dy:
                a = lam(x1, y1)
                if a:
                    b = mu(x2, y2)
                    if b:
                        total = total + c * d * a * b
        return total

    return BilinearForm(X, Y, rule=rule, name=name or f"({lam.name}*{mu.name})",
                        window=_min_window(lam, mu))


def convolution_inverse(lam: BilinearForm, name: str = "") -> BilinearForm:
    """lam^-1 = lam o (S (x) Id), valid for skew pairings."""
    X = lam.left
    if X.antipode is None:
        raise ValueError(f"{X.name} has no antipode")
    return BilinearForm(
        X, lam.right,
        rule=lambda x, y: lam.pair(X.antipode(x), {y: 1}),
        name=name or f"{lam.name}^-1",
        window=lam.window,
    )


def flip_dual(lam: BilinearForm, name: str = "") -> BilinearForm:
    """lam o (S (x) Id) o flip, a form on (right, left)."""
    X, Y = lam.left, lam.right
    if X.antipode is None:
        raise ValueError(f"{X.name} has no antipode")
    return BilinearForm(
        Y, X,
        rule=lambda y, x: lam.pair(X.antipode(x), {y: 1}),
        name=name or f"{lam.name}^flip",
        window=lam.window,
    )


def flipped(lam: BilinearForm, name: str = "") -> BilinearForm:
    """lam o flip, with no antipode: (y, x) -> lam(x, y)."""
    return BilinearForm(lam.right, lam.left, rule=lambda y, x: lam(x, y),
                        name=name or f"{lam.name}^nu", window=lam.window)


def _min_window(*forms):
    ws = [f.window for f in forms if f.window is not None]
    return min(ws) if ws else None


# ---------------------------------------------------------------------------
# checkers


def _skew_pairing_results(lam: BilinearForm, window, full):
    X, Y = lam.left, lam.right
    L, R = lam.windows(window)
    F = lam.field
    one_x, one_y = X.one, Y.one
    results = []

    def br1_rhs(x, y, z):
        total = F.zero
        for (z1, z2), c in Y.comult(z).terms.items():
            a = lam(x, z1)
            if a:
                b = lam(y, z2)
                if b:
                    total = total + c * a * b
        return total

    results.append(check_identity(
        "multiplicative_left", [(x, y, z) for x in L for y in L for z in R],
        lambda x, y, z: lam.pair(X.mult(x, y), {z: 1}), br1_rhs, full=full,
    ))
    results.append(check_identity(
        "unital_left", [(z,) for z in R],
        lambda z: lam.pair(one_x, {z: 1}), lambda z: Y.counit(z), full=full,
    ))

    def br3_rhs(x, l, z):
        total = F.zero
        for (x1, x2), c in X.comult(x).terms.items():
            a = lam(x1, z)
            if a:
                b = lam(x2, l)
                if b:
                    total = total + c * a * b
        return total

    results.append(check_identity(
        "multiplicative_right", [(x, l, z) for x in L for l in R for z in R],
        lambda x, l, z: lam.pair({x: 1}, Y.mult(l, z)), br3_rhs, full=full,
    ))
    results.append(check_identity(
        "unital_right", [(y,) for y in L],
        lambda y: lam.pair({y: 1}, one_y), lambda y: X.counit(y), full=full,
    ))
    return results


def check_skew_pairing(lam: BilinearForm, window: int | None = None, *, full: bool = False) -> VerificationReport:
    """lam(xy, z) = lam(x, z1) lam(y, z2), lam(1, z) = eps(z),
    lam(x, lz) = lam(x1, z) lam(x2, l), lam(y, 1) = eps(y)."""
    report = VerificationReport(f"skew pairing {lam.name}", lam.window_label(window), field=lam.field)
    for r in _skew_pairing_results(lam, window, full):
        report.add(r)
    return report


def commutation_sides(p: BilinearForm):
    """Both sides of p(x1, y1) x2 y2 = y1 x1 p(x2, y2) as functions of (x, y)."""
    A = p.left

    def lhs(x, y):
        acc: dict = {}
        dy = list(A.comult(y).terms.items())
        for (x1, x2), c in A.comult(x).terms.items():
            for (y1, y2), d in dy:
                s = p(x1, y1)
                if s:
                    accumulate(acc, A.mult(x2, y2).terms, c * d * s)
        return LinComb._trusted(acc)

    def rhs(x, y):
        acc: dict = {}
        dy = list(A.comult(y).terms.items())
        for (x1, x2), c in A.comult(x).terms.items():
            for (y1, y2), d in dy:
                s = p(x2, y2)
                if s:
                    accumulate(acc, A.mult(y1, x1).terms, c * d * s)
        return LinComb._trusted(acc)

    return lhs, rhs


def check_braiding(p: BilinearForm, window: int | None = None, *, full: bool = False) -> VerificationReport:
    """Skew-pairing axioms on (A, A) plus the commutation law."""
    if p.left is not p.right:
        raise AlgebraMismatchError("a braiding is a form on (A, A)")
    report = VerificationReport(f"braiding {p.name}", p.window_label(window), field=p.field)
    for r in _skew_pairing_results(p, window, full):
        report.add(r)
    L, _ = p.windows(window)
    lhs, rhs = commutation_sides(p)
    report.add(check_identity("commutation", [(x, y) for x in L for y in L], lhs, rhs, full=full))
    return report


def check_tau_on_kX(tau: BilinearForm, window: int = 8) -> VerificationReport:
    """Braiding check for a form on the binomial (divided-power free) k[X]."""
    if tau.field.characteristic != 0:
        raise ValueError("k[X] braidings with factorial entries need characteristic 0")
    if tau.left.meta.get("rule") != "kX":
        raise AlgebraMismatchError(f"{tau.left.name} is not the binomial k[X]")
    return check_braiding(tau, window)


def sorted_pairs(lam: BilinearForm, window=None) -> list:
    return sorted(lam.entries(window), key=lambda k: (basis_key(k[0]), basis_key(k[1])))
