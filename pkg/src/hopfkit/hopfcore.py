"""Bialgebras and Hopf algebras given by structure constants.

An algebra either has a finite basis (table-backed maps, complete checks)
or is rule-backed over an infinite but locally finite basis, in which case
all checks run on a finite *window* of basis elements and are reported as
such.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Mapping

from .exactmath import (
    Field,
    LinComb,
    LinMap,
    accumulate,
    basis_key,
    label,
    raw_items,
    matrix_inverse,
)
from .report import VerificationReport, check_identity


class WindowError(ValueError):
    """A requested verification window is not available for this object."""


class HopfAlgebra:
    """Structure maps of a bialgebra (optionally with antipode).

    ``mult`` and ``comult`` are :class:`LinMap` of arity 2 and 1; comult
    values are linear combinations over pair ids ``(b1, b2)``.  ``counit`` is
    a scalar-valued callable on basis ids.  ``unit`` is a basis id or a
    :class:`LinComb` (duals have non-basis units).
    """

    def __init__(
        self,
        field: Field,
        *,
        mult: LinMap,
        unit,
        comult: LinMap,
        counit: Callable,
        antipode: LinMap | None = None,
        basis: Iterable | None = None,
        window: Callable[[int], list] | None = None,
        default_window: int | None = None,
        name: str = "",
        meta: Mapping | None = None,
    ):
        if basis is None and window is None:
            raise ValueError("need a finite basis or a window rule")
        self.field = field
        self.mult = mult
        self.comult = comult
        self._counit = counit
        self.antipode = antipode
        self.basis = sorted(basis, key=basis_key) if basis is not None else None
        self._window = window
        self.default_window = default_window
        self.name = name
        self.meta = dict(meta or {})
        self.one = unit if isinstance(unit, LinComb) else LinComb.basis(unit, field.one)
        self._eps_cache: dict = {}

        chars = self.meta.get("char_not")
        if chars and field.characteristic in chars:
            raise ValueError(f"{name} requires char not in {chars}, got {field.tag}")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_tables(
        cls,
        field: Field,
        basis: Iterable,
        unit,
        mult: Mapping,
        comult: Mapping,
        counit: Mapping,
        antipode: Mapping | None = None,
        name: str = "",
        meta: Mapping | None = None,
    ) -> "HopfAlgebra":
        """Build from sparse tables; unlisted entries are zero."""
        basis = list(basis)
        F = field
        conv = lambda d: LinComb({k: F(v) for k, v in d.items()})
        mtab = {(i, j): conv(mult.get((i, j), {})) for i in basis for j in basis}
        ctab = {i: conv(comult.get(i, {})) for i in basis}
        etab = {i: F(counit.get(i, 0)) for i in basis}
        stab = None
        if antipode is not None:
            stab = {i: conv(antipode.get(i, {})) for i in basis}
        return cls(
            F,
            basis=basis,
            unit=unit if isinstance(unit, LinComb) else LinComb.basis(unit, F.one),
            mult=LinMap(2, table=mtab, name=f"{name}.mult"),
            comult=LinMap(1, table=ctab, name=f"{name}.comult"),
            counit=lambda b: etab[b] if b in etab else _undefined(name, b),
            antipode=LinMap(1, table=stab, name=f"{name}.antipode") if stab is not None else None,
            name=name,
            meta=meta,
        )

    # -- basic evaluation ------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.basis is not None

    @property
    def has_antipode(self) -> bool:
        return self.antipode is not None

    def dim(self) -> int:
        if self.basis is None:
            raise WindowError(f"{self.name} is infinite-dimensional")
        return len(self.basis)

    def elements(self, window: int | None = None) -> list:
        """Basis elements to verify on: the whole basis, or a rule window."""
        if self.basis is not None:
            return list(self.basis)
        n = self.default_window if window is None else window
        return sorted(self._window(n), key=basis_key)

    def window_label(self, window: int | None = None) -> str:
        if self.basis is not None:
            return "complete"
        return str(self.default_window if window is None else window)

    def counit(self, b):
        hit = self._eps_cache.get(b)
        if hit is None:
            hit = self._eps_cache[b] = self._counit(b)
        return hit

    def eps(self, v: Mapping):
        total = self.field.zero
        for b, c in raw_items(v):
            e = self.counit(b)
            if e:
                total = total + c * e
        return total

    def mul(self, u: Mapping, v: Mapping) -> LinComb:
        return self.mult.extend(u, v)

    def mul_basis(self, x, y) -> LinComb:
        return self.mult(x, y)

    def vec(self, b) -> LinComb:
        return LinComb.basis(b, self.field.one)

    def S(self, v: Mapping) -> LinComb:
        if self.antipode is None:
            raise ValueError(f"{self.name} has no antipode")
        return self.antipode.extend(v)

    def delta(self, b) -> LinComb:
        return self.comult(b)

    def coproduct(self, b, n: int = 2) -> dict:
        """Iterated coproduct b -> sum b_(1) x ... x b_(n) as {tuple: coeff}."""
        return self._coproduct(b, n)

    @lru_cache(maxsize=None)
    def _coproduct(self, b, n):
        if n == 1:
            return {(b,): self.field.one}
        out: dict = {}
        for (b1, b2), c in self.comult(b).terms.items():
            for rest, c2 in self._coproduct(b2, n - 1).items():
                key = (b1,) + rest
                v = out.get(key, 0) + c * c2
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other

    def __repr__(self):
        kind = f"dim {len(self.basis)}" if self.basis is not None else f"rule, window {self.default_window}"
        return f"<HopfAlgebra {self.name} over {self.field.tag}, {kind}>"


def _undefined(name, b):
    raise KeyError(f"{name}: basis element {b!r} not in algebra")


def delta_vec(H: HopfAlgebra, v: Mapping) -> LinComb:
    acc: dict = {}
    for b, c in raw_items(v):
        accumulate(acc, H.comult(b).terms, c)
    return LinComb._trusted(acc)


def tensor_mul(H: HopfAlgebra, u: Mapping, v: Mapping) -> LinComb:
    """Product in H (x) H of two pair-indexed combinations."""
    acc: dict = {}
    vi = list(raw_items(v))
    for (a1, a2), c in raw_items(u):
        for (b1, b2), d in vi:
            x = H.mult(a1, b1)
            if not x:
                continue
            y = H.mult(a2, b2)
            if not y:
                continue
            cd = c * d
            for k1, e1 in x.terms.items():
                for k2, e2 in y.terms.items():
                    key = (k1, k2)
                    val = acc.get(key, 0) + cd * e1 * e2
                    if val:
                        acc[key] = val
                    else:
                        acc.pop(key, None)
    return LinComb._trusted(acc)


# ---------------------------------------------------------------------------
# axiom checks


def check_hopf(H: HopfAlgebra, window: int | None = None, *, full: bool = False) -> VerificationReport:
    """Check the bialgebra axioms (and antipode, if present) on a window."""
    W = H.elements(window)
    report = VerificationReport(H.name or "algebra", H.window_label(window), field=H.field)
    one = H.one
    F = H.field
    pairs = list(product(W, W))
    triples = list(product(W, W, W))
    singles = [(x,) for x in W]

    def vec(x):
        return H.vec(x)

    report.add(check_identity(
        "associativity", triples,
        lambda x, y, z: H.mul(H.mult(x, y), vec(z)),
        lambda x, y, z: H.mul(vec(x), H.mult(y, z)),
        full=full,
    ))
    report.add(check_identity("unit_left", singles, lambda x: H.mul(one, vec(x)), vec, full=full))
    report.add(check_identity("unit_right", singles, lambda x: H.mul(vec(x), one), vec, full=full))

    def coassoc_left(x):
        acc: dict = {}
        for (x1, x2), c in H.comult(x).terms.items():
            for (y1, y2), d in H.comult(x1).terms.items():
                accumulate(acc, {(y1, y2, x2): c * d})
        return LinComb._trusted(acc)

    def coassoc_right(x):
        acc: dict = {}
        for (x1, x2), c in H.comult(x).terms.items():
            for (y1, y2), d in H.comult(x2).terms.items():
                accumulate(acc, {(x1, y1, y2): c * d})
        return LinComb._trusted(acc)

    report.add(check_identity("coassociativity", singles, coassoc_left, coassoc_right, full=full))

    def counit_left(x):
        acc: dict = {}
        for (x1, x2), c in H.comult(x).terms.items():
            accumulate(acc, {x2: c * H.counit(x1)})
        return LinComb._trusted(acc)

    def counit_right(x):
        acc: dict = {}
        for (x1, x2), c in H.comult(x).terms.items():
            accumulate(acc, {x1: c * H.counit(x2)})
        return LinComb._trusted(acc)

    report.add(check_identity("counit_left", singles, counit_left, vec, full=full))
    report.add(check_identity("counit_right", singles, counit_right, vec, full=full))

    report.add(check_identity(
        "comult_multiplicative", pairs,
        lambda x, y: delta_vec(H, H.mult(x, y)),
        lambda x, y: tensor_mul(H, H.comult(x), H.comult(y)),
        full=full,
    ))
    report.add(check_identity(
        "comult_unital", [()],
        lambda: delta_vec(H, one),
        lambda: one.tensor(one),
    ))
    report.add(check_identity(
        "counit_multiplicative", pairs,
        lambda x, y: H.eps(H.mult(x, y)),
        lambda x, y: H.counit(x) * H.counit(y),
        full=full,
    ))
    report.add(check_identity("counit_unital", [()], lambda: H.eps(one), lambda: F.one))

    if H.antipode is not None:

        def s_left(x):
            acc: dict = {}
            for (x1, x2), c in H.comult(x).terms.items():
                accumulate(acc, H.mul(H.antipode(x1), vec(x2)).terms, c)
            return LinComb._trusted(acc)

        def s_right(x):
            acc: dict = {}
            for (x1, x2), c in H.comult(x).terms.items():
                accumulate(acc, H.mul(vec(x1), H.antipode(x2)).terms, c)
            return LinComb._trusted(acc)

        unit_eps = lambda x: one.scale(H.counit(x))
        report.add(check_identity("antipode_left", singles, s_left, unit_eps, full=full))
        report.add(check_identity("antipode_right", singles, s_right, unit_eps, full=full))
    return report


def structure_equal(H: HopfAlgebra, K: HopfAlgebra, window: int | None = None, relabel=None) -> VerificationReport:
    """Compare the structure constants of two algebras on a window.

    ``relabel`` maps basis ids of H to those of K (identity by default).
    """
    rl = relabel or (lambda b: b)

    def mapv(v: Mapping) -> LinComb:
        return LinComb((rl(b), c) for b, c in v.items())

    W = H.elements(window)
    report = VerificationReport(f"{H.name} vs {K.name}", H.window_label(window), field=H.field)
    report.add(check_identity(
        "mult", list(product(W, W)),
        lambda x, y: mapv(H.mult(x, y)), lambda x, y: K.mult(rl(x), rl(y)),
    ))
    report.add(check_identity(
        "comult", [(x,) for x in W],
        lambda x: LinComb({(rl(a), rl(b)): c for (a, b), c in H.comult(x).terms.items()}),
        lambda x: K.comult(rl(x)),
    ))
    report.add(check_identity("counit", [(x,) for x in W], lambda x: H.counit(x), lambda x: K.counit(rl(x))))
    report.add(check_identity("unit", [()], lambda: mapv(H.one), lambda: K.one))
    if H.antipode is not None and K.antipode is not None:
        report.add(check_identity(
            "antipode", [(x,) for x in W], lambda x: mapv(H.antipode(x)), lambda x: K.antipode(rl(x)),
        ))
    return report


def antipode_matrix_inverse(H: HopfAlgebra) -> LinMap:
    """S^-1 on a finite basis, by exact matrix inversion."""
    if not H.is_finite:
        raise WindowError("antipode inverse needs a finite basis")
    B = H.basis
    idx = {b: i for i, b in enumerate(B)}
    F = H.field
    # column j = S(b_j)
    mat = [[F.zero] * len(B) for _ in B]
    for j, b in enumerate(B):
        for k, c in H.antipode(b).terms.items():
            mat[idx[k]][j] = c
    inv = matrix_inverse(mat, F.one)
    table = {b: LinComb({B[i]: inv[i][j] for i in range(len(B))}) for j, b in enumerate(B)}
    return LinMap(1, table=table, name=f"{H.name}.antipode_inv")


def dual_id(b):
    return b + "*" if isinstance(b, str) else ("*", b)


def dual(H: HopfAlgebra) -> HopfAlgebra:
    """The dual Hopf algebra on delta functionals (finite bases only)."""
    if not H.is_finite:
        raise WindowError(f"dual of rule-backed {H.name} is not supported")
    F = H.field
    B = H.basis
    d = {b: dual_id(b) for b in B}
    mult = {}
    for i in B:
        for j in B:
            acc: dict = {}
            for k in B:
                c = H.comult(k)[(i, j)]
                if c:
                    acc[d[k]] = c
            mult[(d[i], d[j])] = acc
    comult = {}
    for k in B:
        acc = {}
        for i in B:
            for j in B:
                c = H.mult(i, j)[k]
                if c:
                    acc[(d[i], d[j])] = c
        comult[d[k]] = acc
    counit = {d[k]: H.one[k] for k in B}
    unit = LinComb({d[k]: H.counit(k) for k in B})
    antipode = None
    if H.antipode is not None:
        antipode = {d[k]: {d[j]: H.antipode(j)[k] for j in B if H.antipode(j)[k]} for k in B}
    meta = {"construction": "dual", "of": H.name}
    if "char_not" in H.meta:
        meta["char_not"] = H.meta["char_not"]
    return HopfAlgebra.from_tables(
        F, [d[b] for b in B], unit, mult, comult, counit, antipode, name=f"{H.name}*", meta=meta
    )


def op_cop(H: HopfAlgebra, which: str = "op") -> HopfAlgebra:
    """Opposite multiplication, co-opposite comultiplication, or both."""
    if which not in ("op", "cop", "both"):
        raise ValueError(which)
    flip_mult = which in ("op", "both")
    flip_comult = which in ("cop", "both")
    F = H.field

    if flip_mult:
        mult = LinMap(2, rule=lambda x, y: H.mult(y, x), bound=lambda x, y: len(H.mult(y, x)), name="op")
    else:
        mult = H.mult
    if flip_comult:
        comult = LinMap(
            1,
            rule=lambda x: {(b, a): c for (a, b), c in H.comult(x).terms.items()},
            bound=lambda x: len(H.comult(x)),
            name="cop",
        )
    else:
        comult = H.comult

    antipode = None
    if H.antipode is not None:
        if which == "both":
            antipode = H.antipode
        elif H.is_finite:
            antipode = antipode_matrix_inverse(H)
        elif all(H.S(H.antipode(b)) == H.vec(b) for b in H.elements()):
            # S involutive on the window: S^-1 = S
            antipode = H.antipode
    suffix = {"op": "^op", "cop": "^cop", "both": "^opcop"}[which]
    return HopfAlgebra(
        F,
        mult=mult,
        unit=H.one,
        comult=comult,
        counit=H.counit,
        antipode=antipode,
        basis=H.basis,
        window=H._window,
        default_window=H.default_window,
        name=H.name + suffix,
        meta={**H.meta, "construction": which},
    )


def tensor_product(A: HopfAlgebra, H: HopfAlgebra, name: str | None = None) -> HopfAlgebra:
    """A (x) H with componentwise structure, basis ids (a, h)."""
    if A.field != H.field:
        raise ValueError("field mismatch")
    F = A.field

    def mult(x, y):
        return A.mult(x[0], y[0]).tensor(H.mult(x[1], y[1]))

    def comult(x):
        a, h = x
        return {
            ((a1, h1), (a2, h2)): c * d
            for (a1, a2), c in A.comult(a).terms.items()
            for (h1, h2), d in H.comult(h).terms.items()
        }

    antipode = None
    if A.antipode is not None and H.antipode is not None:
        antipode = LinMap(
            1,
            rule=lambda x: A.antipode(x[0]).tensor(H.antipode(x[1])),
            bound=lambda x: len(A.antipode(x[0])) * len(H.antipode(x[1])),
            name="tensor.antipode",
        )
    return HopfAlgebra(
        F,
        mult=LinMap(2, rule=mult, bound=lambda x, y: len(A.mult(x[0], y[0])) * len(H.mult(x[1], y[1]))),
        unit=A.one.tensor(H.one),
        comult=LinMap(1, rule=comult, bound=lambda x: len(A.comult(x[0])) * len(H.comult(x[1]))),
        counit=lambda x: A.counit(x[0]) * H.counit(x[1]),
        antipode=antipode,
        **_pair_basis(A, H),
        name=name or f"{A.name}(x){H.name}",
        meta={"construction": "tensor"},
    )


def _pair_basis(A: HopfAlgebra, H: HopfAlgebra) -> dict:
    if A.is_finite and H.is_finite:
        return {"basis": [(a, h) for a in A.basis for h in H.basis]}
    windows = [w for w in (A.default_window, H.default_window) if w is not None]
    return {
        "window": lambda n: [(a, h) for a in A.elements(n if not A.is_finite else None)
                             for h in H.elements(n if not H.is_finite else None)],
        "default_window": min(windows),
    }


def coalgebra_pair_comult(A: HopfAlgebra, H: HopfAlgebra) -> Callable:
    """Comultiplication of the tensor coalgebra A (x) H on pair ids."""

    @lru_cache(maxsize=None)
    def comult(x):
        a, h = x
        return {
            ((a1, h1), (a2, h2)): c * d
            for (a1, a2), c in A.comult(a).terms.items()
            for (h1, h2), d in H.comult(h).terms.items()
        }

    return comult


def describe_table(H: HopfAlgebra) -> str:
    """Human-readable multiplication table for finite algebras."""
    B = H.basis
    lines = []
    for x in B:
        row = [H.mult(x, y).format(H.field) for y in B]
        lines.append(f"{label(x)}: " + " | ".join(row))
    return "\n".join(lines)
