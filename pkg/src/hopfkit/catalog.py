"""Worked examples as loadable, self-validating fixtures.

Algebras:
    kZ        group algebra of Z, basis ("g", t), rule-backed
    kZn       group algebra of Z/n, basis ("g", t) with 0 <= t < n
    kX        k[X] with binomial comultiplication, basis ("X", n), rule-backed
    H4        Sweedler's four-dimensional Hopf algebra, basis 1, g, x, gx
    Utilde(n) PBW monomials in c, x1..xn, y1..yn (words joined by "*")
    B+(n), B-(n) the Borel Hopf subalgebras generated by c and the x's / y's
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Callable

from .exactmath import QQ, Field, FunctionField, LinMap, PrimeField, basis_key
from .hopfcore import HopfAlgebra, check_hopf
from .pairings import BilinearForm, check_braiding, check_skew_pairing, check_tau_on_kX
from .report import VerificationReport, check_identity


class UnknownFixtureError(KeyError):
    pass


# ---------------------------------------------------------------------------
# group algebras and k[X]


def _group_like(F, name, elems_of_window, op, inv, unit, *, window=None, default_window=None, basis=None, meta=None):
    one = F.one
    return HopfAlgebra(
        F,
        mult=LinMap(2, rule=lambda x, y: {op(x, y): one}, bound=lambda x, y: 1, name=f"{name}.mult"),
        unit=unit,
        comult=LinMap(1, rule=lambda x: {(x, x): one}, bound=lambda x: 1, name=f"{name}.comult"),
        counit=lambda x: one,
        antipode=LinMap(1, rule=lambda x: {inv(x): one}, bound=lambda x: 1, name=f"{name}.antipode"),
        basis=basis,
        window=elems_of_window,
        default_window=default_window,
        name=name,
        meta=meta,
    )


def kZ(field: Field = QQ, window: int = 6) -> HopfAlgebra:
    """k[Z] with g^t g^l = g^(t+l); the window n covers |t| <= n."""
    return _group_like(
        field, "kZ",
        lambda n: [("g", t) for t in range(-n, n + 1)],
        lambda x, y: ("g", x[1] + y[1]),
        lambda x: ("g", -x[1]),
        ("g", 0),
        default_window=window,
        meta={"rule": "kZ"},
    )


def kZn(n: int, field: Field = QQ) -> HopfAlgebra:
    return _group_like(
        field, f"kZ{n}", None,
        lambda x, y: ("g", (x[1] + y[1]) % n),
        lambda x: ("g", (-x[1]) % n),
        ("g", 0),
        basis=[("g", t) for t in range(n)],
    )


def kX(field: Field = QQ, window: int = 8) -> HopfAlgebra:
    """Polynomials with Delta(X^n) = sum_k C(n,k) X^k (x) X^(n-k)."""
    one = field.one
    return HopfAlgebra(
        field,
        mult=LinMap(2, rule=lambda x, y: {("X", x[1] + y[1]): one}, bound=lambda x, y: 1, name="kX.mult"),
        unit=("X", 0),
        comult=LinMap(
            1,
            rule=lambda x: {(("X", k), ("X", x[1] - k)): field(comb(x[1], k)) for k in range(x[1] + 1)},
            bound=lambda x: x[1] + 1,
            name="kX.comult",
        ),
        counit=lambda x: one if x[1] == 0 else field.zero,
        antipode=LinMap(1, rule=lambda x: {x: field((-1) ** x[1])}, bound=lambda x: 1, name="kX.antipode"),
        window=lambda n: [("X", k) for k in range(n + 1)],
        default_window=window,
        name="kX",
        meta={"rule": "kX"},
    )


# ---------------------------------------------------------------------------
# Sweedler's H4


H4_BASIS = ["1", "g", "x", "gx"]


def H4(field: Field = QQ) -> HopfAlgebra:
    """g^2 = 1, x^2 = 0, xg = -gx; Delta x = x (x) g + 1 (x) x."""
    mult = {
        ("1", "1"): {"1": 1}, ("1", "g"): {"g": 1}, ("1", "x"): {"x": 1}, ("1", "gx"): {"gx": 1},
        ("g", "1"): {"g": 1}, ("g", "g"): {"1": 1}, ("g", "x"): {"gx": 1}, ("g", "gx"): {"x": 1},
        ("x", "1"): {"x": 1}, ("x", "g"): {"gx": -1},
        ("gx", "1"): {"gx": 1}, ("gx", "g"): {"x": -1},
    }
    comult = {
        "1": {("1", "1"): 1},
        "g": {("g", "g"): 1},
        "x": {("x", "g"): 1, ("1", "x"): 1},
        "gx": {("gx", "1"): 1, ("g", "gx"): 1},
    }
    counit = {"1": 1, "g": 1}
    antipode = {"1": {"1": 1}, "g": {"g": 1}, "x": {"gx": 1}, "gx": {"x": -1}}
    return HopfAlgebra.from_tables(field, H4_BASIS, "1", mult, comult, counit, antipode,
                                   name="H4", meta={"char_not": [2]})


# The table as printed in the literature for this example; the (x, gx)
# cell is incompatible with the multiplicative axioms under the coproduct
# above (they force p(x, gx) = p(x,x) p(g,g) = -alpha).
P_ALPHA_DISPLAY = {
    "1": ["1", "1", "0", "0"],
    "g": ["1", "-1", "0", "0"],
    "x": ["0", "0", "alpha", "alpha"],
    "gx": ["0", "0", "alpha", "alpha"],
}


def p_alpha_table(alpha) -> dict:
    """The braiding p_alpha on H4 (rows/columns 1, g, x, gx), nonzero cells."""
    rows = {
        "1": [1, 1, 0, 0],
        "g": [1, -1, 0, 0],
        "x": [0, 0, alpha, -alpha],
        "gx": [0, 0, alpha, alpha],
    }
    return {(r, c): v for r, vals in rows.items() for c, v in zip(H4_BASIS, vals) if not (isinstance(v, int) and v == 0)}


def p_alpha(A: HopfAlgebra, alpha, name: str = "") -> BilinearForm:
    F = A.field
    a = F.param(alpha) if isinstance(alpha, str) else F(alpha)
    return BilinearForm(A, A, table=p_alpha_table(a), name=name or f"p_{alpha}")


# ---------------------------------------------------------------------------
# the algebra U~(n) and its Borel subalgebras


def _gens(n: int, which: str = "cxy") -> list[str]:
    out = ["c"] if "c" in which else []
    if "x" in which:
        out += [f"x{i}" for i in range(1, n + 1)]
    if "y" in which:
        out += [f"y{i}" for i in range(1, n + 1)]
    return out


def _word_id(word: tuple) -> str:
    return "*".join(word) if word else "1"


def _word_of(b: str) -> tuple:
    return () if b == "1" else tuple(b.split("*"))


def _normal_form(word: tuple, order: dict) -> tuple[int, tuple]:
    """Reorder letters into PBW order; returns (sign, word) or (0, ())."""
    w = list(word)
    sign = 1
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(w) - 1:
            u, v = w[i], w[i + 1]
            if u == v:
                if u == "c":
                    del w[i:i + 2]
                    changed = True
                    continue
                return 0, ()
            if order[u] > order[v]:
                w[i], w[i + 1] = v, u
                if not (u[0] != v[0] and u[0] in "xy" and v[0] in "xy"):
                    sign = -sign
                changed = True
            i += 1
    return sign, tuple(w)


def _pbw_words(gens: list[str]) -> list[tuple]:
    words = [()]
    for g in gens:
        words += [w + (g,) for w in words]
    return words


def utilde_family(n: int, which: str = "cxy", field: Field = QQ, name: str | None = None) -> HopfAlgebra:
    """U~(n) (which="cxy") or its Borel parts (which="cx" / "cy")."""
    gens = _gens(n, which)
    order = {g: i for i, g in enumerate(_gens(n))}
    words = _pbw_words(gens)
    basis = [_word_id(w) for w in words]
    F = field
    one = F.one

    @lru_cache(maxsize=None)
    def mult_words(u: tuple, v: tuple):
        s, w = _normal_form(u + v, order)
        return s, w

    def mult(x, y):
        s, w = mult_words(_word_of(x), _word_of(y))
        return {_word_id(w): F(s)} if s else {}

    def gen_comult(g):
        if g == "c":
            return {("c", "c"): one}
        if g[0] == "x":
            return {("1", g): one, (g, "c"): one}
        return {("c", g): one, (g, "1"): one}

    def tmul(u: dict, v: dict) -> dict:
        acc: dict = {}
        for (a1, a2), c in u.items():
            for (b1, b2), d in v.items():
                m1 = mult(a1, b1)
                m2 = mult(a2, b2)
                for k1, e1 in m1.items():
                    for k2, e2 in m2.items():
                        key = (k1, k2)
                        val = acc.get(key, 0) + c * d * e1 * e2
                        if val:
                            acc[key] = val
                        else:
                            acc.pop(key, None)
        return acc

    def comult(x):
        acc = {("1", "1"): one}
        for g in _word_of(x):
            acc = tmul(acc, gen_comult(g))
        return acc

    def gen_antipode(g):
        if g == "c":
            return {"c": one}
        if g[0] == "x":
            return mult("c", g)
        return mult(g, "c")

    def antipode(x):
        acc = {"1": one}
        for g in _word_of(x):
            # S is an anti-homomorphism: S(w g) = S(g) S(w)
            new: dict = {}
            for k1, e1 in gen_antipode(g).items():
                for k2, e2 in acc.items():
                    for k, e in mult(k1, k2).items():
                        val = new.get(k, 0) + e1 * e2 * e
                        if val:
                            new[k] = val
                        else:
                            new.pop(k, None)
            acc = new
        return acc

    def counit(x):
        return one if all(g == "c" for g in _word_of(x)) else F.zero

    dim = len(basis)
    title = name or {"cxy": f"Utilde({n})", "cx": f"B+({n})", "cy": f"B-({n})"}[which]
    return HopfAlgebra(
        F,
        mult=LinMap(2, rule=mult, bound=lambda x, y: 1, name=f"{title}.mult"),
        unit="1",
        comult=LinMap(1, rule=comult, bound=lambda x: dim * dim, name=f"{title}.comult"),
        counit=counit,
        antipode=LinMap(1, rule=antipode, bound=lambda x: 1, name=f"{title}.antipode"),
        basis=basis,
        name=title,
        meta={"char_not": [2], "n": n},
    )


def utilde(n: int, field: Field = QQ) -> HopfAlgebra:
    return utilde_family(n, "cxy", field)


def borel_plus(n: int, field: Field = QQ) -> HopfAlgebra:
    return utilde_family(n, "cx", field)


def borel_minus(n: int, field: Field = QQ) -> HopfAlgebra:
    return utilde_family(n, "cy", field)


def borel_field(n: int) -> FunctionField:
    names = [f"{s}_{i}{j}" for s in ("alpha", "beta") for i in range(1, n + 1) for j in range(1, n + 1)]
    return FunctionField(names)


def multiplicative_form(left: HopfAlgebra, right: HopfAlgebra, gen_table: dict, *, name: str) -> BilinearForm:
    """Extend a form from generator pairs to PBW monomials.

    Uses lam(u v, z) = lam(u, z_(1)) lam(v, z_(2)) to peel letters off the
    left argument and lam(x, u v) = lam(x_(1), v) lam(x_(2), u) on the right
    argument, bottoming out at unit values eps(.) and generator pairs.
    """
    F = left.field

    @lru_cache(maxsize=None)
    def val(x: str, z: str):
        wx, wz = _word_of(x), _word_of(z)
        if not wx:
            return right.counit(z)
        if not wz:
            return left.counit(x)
        if len(wx) > 1:
            head, tail = _word_id(wx[:1]), _word_id(wx[1:])
            total = F.zero
            for (z1, z2), c in right.comult(z).terms.items():
                a = val(head, z1)
                if a:
                    b = val(tail, z2)
                    if b:
                        total = total + c * a * b
            return total
        if len(wz) > 1:
            u, v = _word_id(wz[:1]), _word_id(wz[1:])
            total = F.zero
            for (x1, x2), c in left.comult(x).terms.items():
                a = val(x1, v)
                if a:
                    b = val(x2, u)
                    if b:
                        total = total + c * a * b
            return total
        return F(gen_table.get((x, z), 0))

    table = {}
    for x in left.basis:
        for z in right.basis:
            v = val(x, z)
            if v:
                table[(x, z)] = v
    return BilinearForm(left, right, table=table, name=name)


def borel_tau(Bm: HopfAlgebra, params=None) -> BilinearForm:
    """tau on B-: tau(c,c) = -1, tau(y_i, y_j) = alpha_ij."""
    n = Bm.meta["n"]
    F = Bm.field
    gen = {("c", "c"): -1}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            gen[(f"y{i}", f"y{j}")] = _param(F, f"alpha_{i}{j}", params)
    return multiplicative_form(Bm, Bm, gen, name="tau")


def borel_p(Bp: HopfAlgebra, params=None) -> BilinearForm:
    """p on B+: p(c,c) = -1, p(x_i, x_j) = beta_ij."""
    n = Bp.meta["n"]
    F = Bp.field
    gen = {("c", "c"): -1}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            gen[(f"x{i}", f"x{j}")] = _param(F, f"beta_{i}{j}", params)
    return multiplicative_form(Bp, Bp, gen, name="p")


def borel_lambda(Bm: HopfAlgebra, Bp: HopfAlgebra) -> BilinearForm:
    """lambda on (B-, B+): lambda(c,c) = -1, lambda(y_i, x_j) = delta_ij."""
    n = Bm.meta["n"]
    gen = {("c", "c"): -1}
    for i in range(1, n + 1):
        gen[(f"y{i}", f"x{i}")] = 1
    return multiplicative_form(Bm, Bp, gen, name="lambda")


def _param(F: Field, name: str, params):
    if params is not None and name in params:
        return F(params[name])
    return F.param(name)


# ---------------------------------------------------------------------------
# forms for the rule-backed examples


def _power(F: Field, base, e: int):
    return base ** e if e >= 0 else F.one / base ** (-e)


def kz_braiding(Z: HopfAlgebra, q="q") -> BilinearForm:
    """p(g^t, g^l) = q^(tl)."""
    F = Z.field
    qv = F.param(q) if isinstance(q, str) else F(q)
    return BilinearForm(Z, Z, rule=lambda x, y: _power(F, qv, x[1] * y[1]), name="p_q", window=Z.default_window,
                        meta={"rule": "kZ-q", "params": {"q": q if isinstance(q, str) else F.format(qv)}})


def kx_braiding(X: HopfAlgebra, alpha="alpha") -> BilinearForm:
    """tau(X^i, X^j) = i! alpha^i when i = j, else 0."""
    F = X.field
    av = F.param(alpha) if isinstance(alpha, str) else F(alpha)
    return BilinearForm(X, X, rule=lambda x, y: F(factorial(x[1])) * av ** x[1] if x[1] == y[1] else F.zero,
                        name="tau_alpha", window=X.default_window,
                        meta={"rule": "kX-tau", "params": {"alpha": alpha if isinstance(alpha, str) else F.format(av)}})


def kx_kz_pairing(X: HopfAlgebra, Z: HopfAlgebra) -> BilinearForm:
    """lam(X^m, g^t) = t^m, with t^0 = 1 also for t = 0."""
    F = X.field

    def rule(x, g):
        m, t = x[1], g[1]
        return F.one if m == 0 else F(t ** m)

    return BilinearForm(X, Z, rule=rule, name="lambda", window=min(X.default_window, Z.default_window),
                        meta={"rule": "kX-kZ"})


def kz_kx_closed_sigma(F: Field, t: int, n: int, l: int, m: int, q="q", alpha="alpha"):
    """Closed form of the braiding of kZ >< k[X] on g^t X^n, g^l X^m."""
    qv, av = F.param(q), F.param(alpha)
    total = F.zero
    for k in range(m + 1):
        r = m - k
        if r > n:
            continue
        lpow = 1 if n - r == 0 else l ** (n - r)
        tpow = 1 if k == 0 else t ** k
        coeff = (-1) ** k * comb(m, k) * comb(n, r) * tpow * lpow * factorial(r)
        if coeff:
            total = total + F(coeff) * _power(F, qv, t * l) * av ** r
    return total


# ---------------------------------------------------------------------------
# independent evaluation of the H4 >< H4 braiding from plain tables

_H4_DELTA = {"1": [("1", "1", 1)], "g": [("g", "g", 1)], "x": [("x", "g", 1), ("1", "x", 1)],
             "gx": [("gx", "1", 1), ("g", "gx", 1)]}
_H4_S = {"1": [("1", 1)], "g": [("g", 1)], "x": [("gx", 1)], "gx": [("x", -1)]}


def h4_double_display(F: Field, alpha="alpha", beta="beta", gamma="gamma") -> dict:
    """sigma(a h, b g) = p_gamma(S g1, a1) p_alpha(a2, b1) p_beta(h1, g2) p_gamma(h2, b2)
    evaluated from literal tables, on all 256 basis pairs."""
    tabs = {}
    for key, name in (("a", alpha), ("b", beta), ("c", gamma)):
        v = F.param(name) if isinstance(name, str) else F(name)
        tabs[key] = {k: F(x) for k, x in p_alpha_table(v).items()}
    pa, pb, pc = (lambda x, y, t=tabs[k]: t.get((x, y), F.zero) for k in "abc")
    out = {}
    for a, h, b, g in product(H4_BASIS, repeat=4):
        total = F.zero
        for g1, g2, s1 in _H4_DELTA[g]:
            for a1, a2, s2 in _H4_DELTA[a]:
                for b1, b2, s3 in _H4_DELTA[b]:
                    for h1, h2, s4 in _H4_DELTA[h]:
                        for sg, s5 in _H4_S[g1]:
                            total = total + F(s1 * s2 * s3 * s4 * s5) * pc(sg, a1) * pa(a2, b1) * pb(h1, g2) * pc(h2, b2)
        out[((a, h), (b, g))] = total
    return out


# ---------------------------------------------------------------------------
# the braiding table of the Borel double


def borel_sigma_table(n: int, F: Field) -> dict:
    """Expected sigma on the sectors c.c, c.y, x.c, x.y of B+ >< B- (all pairs,
    zeros included).  The x.c / c.y block is -delta_mi."""
    al = lambda i, j: F.param(f"alpha_{i}{j}")
    be = lambda i, j: F.param(f"beta_{i}{j}")
    d = lambda i, j: F.one if i == j else F.zero
    idx = range(1, n + 1)
    sectors = {"cc": [(("c", "c"), ())]}
    sectors["cy"] = [(("c", f"y{i}"), (i,)) for i in idx]
    sectors["xc"] = [((f"x{i}", "c"), (i,)) for i in idx]
    sectors["xy"] = [((f"x{i}", f"y{j}"), (i, j)) for i in idx for j in idx]
    rules = {
        ("cc", "cc"): lambda r, c: F.one,
        ("cy", "cy"): lambda r, c: al(r[0], c[0]),
        ("cy", "xc"): lambda r, c: d(r[0], c[0]),
        ("xc", "cy"): lambda r, c: -d(r[0], c[0]),
        ("xc", "xc"): lambda r, c: be(r[0], c[0]),
        ("xy", "xy"): lambda r, c: al(r[1], c[1]) * be(r[0], c[0]) - d(r[1], c[0]) * d(c[1], r[0]),
    }
    out = {}
    for rs, rows in sectors.items():
        for cs, cols in sectors.items():
            fn = rules.get((rs, cs), lambda r, c: F.zero)
            for x, ri in rows:
                for y, ci in cols:
                    out[(x, y)] = fn(ri, ci)
    return out


# ---------------------------------------------------------------------------
# small toys over Z/2


def trivial_hopf(field: Field = QQ) -> HopfAlgebra:
    """The one-dimensional Hopf algebra k."""
    return HopfAlgebra.from_tables(field, ["1"], "1", {("1", "1"): {"1": 1}}, {"1": {("1", "1"): 1}},
                                   {"1": 1}, {"1": {"1": 1}}, name="k")


def left_zero_toy(field: Field) -> HopfAlgebra:
    """Unit 1 and idempotents a, b with ab = a, ba = b; a, b primitive.

    Associative and unital, but Delta is not multiplicative and there is no
    antipode, so no braiding can exist.
    """
    mult = {("1", "1"): {"1": 1}, ("1", "a"): {"a": 1}, ("1", "b"): {"b": 1},
            ("a", "1"): {"a": 1}, ("b", "1"): {"b": 1},
            ("a", "a"): {"a": 1}, ("a", "b"): {"a": 1}, ("b", "a"): {"b": 1}, ("b", "b"): {"b": 1}}
    comult = {"1": {("1", "1"): 1}, "a": {("a", "1"): 1, ("1", "a"): 1}, "b": {("b", "1"): 1, ("1", "b"): 1}}
    return HopfAlgebra.from_tables(field, ["1", "a", "b"], "1", mult, comult, {"1": 1}, None, name="left-zero toy")


def z2_inversion_action(A: HopfAlgebra, H: HopfAlgebra):
    """h |> a = a^-1 for the generator of H (which on Z/2 is the identity)."""
    def lact(h, a):
        return {a if h[1] == 0 else next(iter(A.antipode(a).terms)): 1}
    return lact


def z2_cocycle(A: HopfAlgebra):
    """f(g, g) = g in A, otherwise the unit: kZ2 # kZ2 becomes kZ4."""
    return lambda h, g: {("g", 1): 1} if h == g == ("g", 1) else {("g", 0): 1}


# ---------------------------------------------------------------------------
# fixtures


class FixtureValidationError(ValueError):
    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


@dataclass
class ExpectedTable:
    """Expected values of a named form on listed pairs.

    ``printed`` records cells where the reference display differs from the
    corrected value used here.
    """

    form: str
    entries: dict
    note: str = ""
    printed: dict = dc_field(default_factory=dict)


@dataclass
class Fixture:
    name: str
    field: Field
    algebras: dict = dc_field(default_factory=dict)
    forms: dict = dc_field(default_factory=dict)
    products: dict = dc_field(default_factory=dict)
    quadruples: dict = dc_field(default_factory=dict)
    expected: list = dc_field(default_factory=list)
    checks: list = dc_field(default_factory=list)
    window: int | None = None
    notes: list = dc_field(default_factory=list)

    def form(self, key: str) -> BilinearForm:
        return self.forms[key]


FIXTURE_NAMES = ("kZ", "kX", "kZ-bowtie-kX", "H4", "H4-double", "Utilde(n)", "Borel(n)", "Borel-double(n)", "Z2-toys")


def _parse_name(name: str) -> tuple[str, int | None]:
    name = name.strip()
    if "(" in name and name.endswith(")"):
        base, arg = name[:-1].split("(", 1)
        if arg == "n":
            return base, None
        try:
            return base, int(arg)
        except ValueError:
            raise UnknownFixtureError(name) from None
    return name, None


def _fx_kz(field, window):
    F = field or FunctionField(["q"])
    Z = kZ(F)
    p = kz_braiding(Z)
    w = window or 4
    q = F.param("q")
    exp = {(("g", t), ("g", l)): _power(F, q, t * l) for t in (-2, 1, 2) for l in (-1, 0, 3)}
    return Fixture("kZ", F, {"kZ": Z}, {"p": p}, expected=[ExpectedTable("p", exp, "q^(tl)")],
                   checks=[("kZ", lambda w=w: check_hopf(Z, min(w + 1, Z.default_window))),
                           ("p", lambda w=w: check_braiding(p, w))], window=w)


def _fx_kx(field, window):
    F = field or FunctionField(["alpha"])
    X = kX(F)
    tau = kx_braiding(X)
    w = window or X.default_window
    a = F.param("alpha")
    exp = {(("X", 1), ("X", 1)): a, (("X", 2), ("X", 3)): F.zero, (("X", 3), ("X", 3)): F(6) * a ** 3}
    return Fixture("kX", F, {"kX": X}, {"tau": tau}, expected=[ExpectedTable("tau", exp)],
                   checks=[("kX", lambda: check_hopf(X, w)), ("tau", lambda: check_tau_on_kX(tau, w))], window=w)


def _fx_kz_kx(field, window):
    from .coquasi import canonical_gqd_sigma
    from .products import build_gqd

    F = field or FunctionField(["alpha", "q"])
    Z, X = kZ(F), kX(F)
    p, tau, lam = kz_braiding(Z), kx_braiding(X), kx_kz_pairing(X, Z)
    P = build_gqd(Z, X, lam, check=False, name="kZ >< kX")
    sigma = canonical_gqd_sigma(p, tau, P)
    w = window or 3
    exp = {((("g", t), ("X", n)), (("g", l), ("X", m))): kz_kx_closed_sigma(F, t, n, l, m)
           for t in range(-w, w + 1) for l in range(-w, w + 1) for n in range(6) for m in range(6)}
    return Fixture(
        "kZ-bowtie-kX", F, {"kZ": Z, "kX": X}, {"p": p, "tau": tau, "lambda": lam, "sigma": sigma}, {"double": P},
        expected=[ExpectedTable("sigma", exp, "closed form; full grid t, l in [-w, w], n, m <= 5")],
        checks=[("lambda", lambda: check_skew_pairing(lam, 4)), ("p", lambda: check_braiding(p, 3)),
                ("tau", lambda: check_braiding(tau, 5))],
        window=w,
    )


def _fx_h4(field, window):
    F = field or FunctionField(["alpha"])
    A = H4(F)
    alpha = "alpha" if isinstance(F, FunctionField) else 1
    p = p_alpha(A, alpha)
    av = F.param("alpha") if isinstance(F, FunctionField) else F(1)
    printed = {}
    if isinstance(F, FunctionField):
        for r, vals in P_ALPHA_DISPLAY.items():
            for c, s in zip(H4_BASIS, vals):
                pv = av if s == "alpha" else F(int(s))
                if pv != p(r, c):
                    printed[(r, c)] = pv
    exp = {(r, c): p(r, c) for r in H4_BASIS for c in H4_BASIS}
    return Fixture(
        "H4", F, {"H4": A}, {"p": p},
        expected=[ExpectedTable("p", exp, "rows/columns 1, g, x, gx", printed)],
        checks=[("H4", lambda: check_hopf(A)), ("p", lambda: check_braiding(p)),
                ("p^-1", lambda: _inverse_report(p))],
        notes=[f"printed display differs at {sorted(printed)}"] if printed else [],
    )


def _inverse_report(lam: BilinearForm) -> VerificationReport:
    from .pairings import convolution_inverse, convolve_forms, counit_form

    inv = convolution_inverse(lam)
    eps = counit_form(lam.left, lam.right)
    rep = VerificationReport(f"convolution inverse of {lam.name}", lam.window_label(), field=lam.field)
    L, R = lam.windows()
    pairs = [(x, y) for x in L for y in R]
    rep.add(check_identity("left_inverse", pairs, convolve_forms(lam, inv), eps))
    rep.add(check_identity("right_inverse", pairs, convolve_forms(inv, lam), eps))
    return rep


def _fx_h4_double(field, window):
    from .coquasi import canonical_gqd_sigma, canonical_quadruple
    from .products import build_gqd

    F = field or FunctionField(["alpha", "beta", "gamma"])
    A = H4(F)
    sym = isinstance(F, FunctionField)
    pa, pb, pc = (p_alpha(A, s if sym else v, name=f"p_{s}") for s, v in (("alpha", 1), ("beta", 2), ("gamma", 1)))
    D = build_gqd(A, A, pc, check=False, name="H4 >< H4")
    sigma = canonical_gqd_sigma(pa, pb, D)
    fx = Fixture("H4-double", F, {"H4": A}, {"p_alpha": pa, "p_beta": pb, "p_gamma": pc, "sigma": sigma},
                 {"double": D}, {"canonical": canonical_quadruple(pa, pb, D)})
    if sym:
        fx.expected.append(ExpectedTable("sigma", h4_double_display(F), "display formula, literal tables"))
    fx.checks = [("double", lambda: check_hopf(D)), ("sigma", lambda: check_braiding(sigma))]
    return fx


def _fx_utilde(field, n):
    F = field or QQ
    n = n or 1
    U = utilde(n, F)
    return Fixture(f"Utilde({n})", F, {"U": U},
                   checks=[("U", lambda: check_hopf(U)), ("dim", lambda: _dim_report(U, 2 ** (2 * n + 1)))])


def _dim_report(X: HopfAlgebra, expected: int) -> VerificationReport:
    rep = VerificationReport(f"dimension of {X.name}", "complete", field=X.field)
    rep.add(check_identity("dimension", [()], lambda: X.dim(), lambda: expected))
    return rep


def _borel_parts(field, n):
    F = field or borel_field(n)
    params = None if isinstance(F, FunctionField) else {}
    if params is not None:
        params = {f"{s}_{i}{j}": 1 for s in ("alpha", "beta") for i in range(1, n + 1) for j in range(1, n + 1)}
    Bp, Bm = borel_plus(n, F), borel_minus(n, F)
    return F, Bp, Bm, borel_p(Bp, params), borel_tau(Bm, params), borel_lambda(Bm, Bp)


def _fx_borel(field, n):
    n = n or 1
    F, Bp, Bm, p, tau, lam = _borel_parts(field, n)
    return Fixture(
        f"Borel({n})", F, {"B+": Bp, "B-": Bm}, {"p": p, "tau": tau, "lambda": lam},
        checks=[("B+", lambda: check_hopf(Bp)), ("B-", lambda: check_hopf(Bm)),
                ("p", lambda: check_braiding(p)), ("tau", lambda: check_braiding(tau)),
                ("lambda", lambda: check_skew_pairing(lam))],
    )


def _fx_borel_double(field, n):
    from .coquasi import canonical_gqd_sigma, canonical_quadruple
    from .products import build_gqd

    n = n or 1
    F, Bp, Bm, p, tau, lam = _borel_parts(field, n)
    P = build_gqd(Bp, Bm, lam, check=False, name=f"B+({n}) >< B-({n})")
    sigma = canonical_gqd_sigma(p, tau, P)
    fx = Fixture(f"Borel-double({n})", F, {"B+": Bp, "B-": Bm}, {"p": p, "tau": tau, "lambda": lam, "sigma": sigma},
                 {"double": P}, {"canonical": canonical_quadruple(p, tau, P)})
    if isinstance(F, FunctionField):
        fx.expected.append(ExpectedTable("sigma", borel_sigma_table(n, F),
                                         "sector table; the x.c / c.y block uses -delta_mi"))
        fx.notes.append("x.c / c.y block printed with an index that does not label the column; read as -delta_mi")
    fx.checks = [("lambda", lambda: check_skew_pairing(lam)), ("double", lambda: check_hopf(P))]
    if n == 1:
        fx.checks.append(("sigma", lambda: check_braiding(sigma)))
    return fx


def _fx_z2(field, window):
    from .products import build_crossed_product, build_double_cross, coadjoint_double, trivial_datum, build_unified_product

    F = field or PrimeField(3)
    A, H = kZn(2, F), kZn(2, F)
    chi = BilinearForm(A, A, table={(("g", 1), ("g", 1)): -1}, default="counit-product", name="chi")
    tensor = build_double_cross(A, H, None, None, check=False, name="kZ2 (x) kZ2")
    smash = build_crossed_product(A, H, z2_inversion_action(A, H), None, check=False, name="kZ2 # kZ2 (inversion)")
    crossed = build_crossed_product(A, H, None, z2_cocycle(A), check=False, name="kZ2 #_f kZ2")
    over_k = build_unified_product(trivial_datum(A, trivial_hopf(F)), check=False, name="kZ2 |x k")
    D = coadjoint_double(A, check=False, name="D(kZ2)")
    toy = left_zero_toy(F)
    return Fixture(
        "Z2-toys", F, {"kZ2": A, "toy": toy},
        {"chi": chi},
        {"tensor": tensor, "smash": smash, "crossed": crossed, "trivial": over_k, "D": D},
        checks=[("kZ2", lambda: check_hopf(A)), ("chi", lambda: check_braiding(chi)),
                ("tensor", lambda: check_hopf(tensor)), ("smash", lambda: check_hopf(smash)),
                ("crossed", lambda: check_hopf(crossed)), ("trivial", lambda: check_hopf(over_k)),
                ("D", lambda: check_hopf(D))],
        notes=["the toy is deliberately not a bialgebra"],
    )


_BUILDERS: dict[str, Callable] = {
    "kZ": _fx_kz, "kX": _fx_kx, "kZ-bowtie-kX": _fx_kz_kx, "H4": _fx_h4, "H4-double": _fx_h4_double,
    "Utilde": _fx_utilde, "Borel": _fx_borel, "Borel-double": _fx_borel_double, "Z2-toys": _fx_z2,
}


def build_fixture(name: str, *, field: Field | None = None, window: int | None = None) -> Fixture:
    """Construct a fixture without running its checks."""
    base, arg = _parse_name(name)
    if base not in _BUILDERS:
        raise UnknownFixtureError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    if arg is not None and base not in ("Utilde", "Borel", "Borel-double"):
        raise UnknownFixtureError(name)
    return _BUILDERS[base](field, arg if arg is not None else window)


def verify_fixture(fx: "Fixture | str", **kw) -> VerificationReport:
    """Run every attached check and compare every expected table."""
    if isinstance(fx, str):
        fx = build_fixture(fx, **kw)
    rep = VerificationReport(f"fixture {fx.name}", "complete" if fx.window is None else str(fx.window), field=fx.field)
    for label_, run in fx.checks:
        rep.extend(run(), prefix=f"{label_}:")
    for tab in fx.expected:
        form = fx.forms[tab.form]
        keys = sorted(tab.entries, key=lambda k: (basis_key(k[0]), basis_key(k[1])))
        rep.add(check_identity(f"expected:{tab.form}", keys, form, lambda x, y: tab.entries[(x, y)],
                               note=tab.note))
    return rep


def load_fixture(name: str, *, field: Field | None = None, window: int | None = None, validate: bool = True) -> Fixture:
    """Build a fixture and (by default) re-validate it."""
    fx = build_fixture(name, field=field, window=window)
    if validate:
        rep = verify_fixture(fx)
        if not rep.ok:
            raise FixtureValidationError(f"fixture {fx.name} failed validation", rep)
    return fx
