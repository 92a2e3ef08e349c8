"""Extending data, unified products and their special cases.

Basis ids of a product are pairs ``(a, h)`` with the A-index on the left.
Every product is rule-backed with cached structure constants, so building a
64-dimensional double is cheap and entries are computed on demand.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Mapping

from .exactmath import LinComb, LinMap, accumulate, raw_items
from .hopfcore import HopfAlgebra, WindowError, check_hopf, dual, dual_id, op_cop
from .pairings import AlgebraMismatchError, BilinearForm, check_skew_pairing, convolution_inverse
from .report import VerificationReport, check_identity


class PreconditionError(ValueError):
    """A construction was refused; ``report`` holds the failing checks."""

    def __init__(self, message: str, report: VerificationReport | None = None):
        super().__init__(message)
        self.report = report


def _vec(b, one):
    return LinComb._trusted({b: one})


class ExtendingDatum:
    """``(H, ract, lact, cocycle)`` over a base Hopf algebra ``A``.

    ``ract(h, a)`` is h <| a in H, ``lact(h, a)`` is h |> a in A and
    ``cocycle(h, g)`` is f(h, g) in A; each is a callable on basis ids
    returning a mapping.  Omitted pieces default to the trivial ones.  The
    product on ``H`` need not be associative.
    """

    def __init__(
        self,
        A: HopfAlgebra,
        H: HopfAlgebra,
        *,
        ract: Callable | LinMap | None = None,
        lact: Callable | LinMap | None = None,
        cocycle: Callable | LinMap | None = None,
        name: str = "",
        meta: Mapping | None = None,
    ):
        if A.field != H.field:
            raise AlgebraMismatchError("A and H over different fields")
        self.A, self.H = A, H
        self.field = A.field
        self.name = name or f"datum({A.name},{H.name})"
        self.meta = dict(meta or {})
        self.trivial_ract = ract is None
        self.trivial_lact = lact is None
        self.trivial_cocycle = cocycle is None
        self.ract = _as_map(ract, lambda h, a: {h: A.counit(a)}, lambda h, a: 1, "ract")
        self.lact = _as_map(lact, lambda h, a: {a: H.counit(h)}, lambda h, a: 1, "lact")
        one_A = A.one
        self.cocycle = _as_map(
            cocycle,
            lambda h, g: one_A.scale(H.counit(h) * H.counit(g)),
            lambda h, g: max(1, len(one_A)),
            "cocycle",
        )

    def R(self, hv: Mapping, av: Mapping) -> LinComb:
        return self.ract.extend(hv, av)

    def L(self, hv: Mapping, av: Mapping) -> LinComb:
        return self.lact.extend(hv, av)

    def F(self, hv: Mapping, gv: Mapping) -> LinComb:
        return self.cocycle.extend(hv, gv)

    def __repr__(self):
        return f"<ExtendingDatum {self.name}>"


def _as_map(fn, default, default_bound, name) -> LinMap:
    if isinstance(fn, LinMap):
        return fn
    if fn is None:
        return LinMap(2, rule=default, bound=default_bound, name=name)
    # user rules get a certificate from their own first evaluation; this
    # keeps them honest about finiteness without knowing their shape
    seen: dict = {}

    def rule(x, y):
        out = fn(x, y)
        out = out if isinstance(out, LinComb) else LinComb(out)
        seen[(x, y)] = len(out)
        return out

    return LinMap(2, rule=rule, bound=lambda x, y: seen[(x, y)], name=name)


def trivial_datum(A: HopfAlgebra, H: HopfAlgebra, name: str = "") -> ExtendingDatum:
    return ExtendingDatum(A, H, name=name or f"trivial({A.name},{H.name})")


# ---------------------------------------------------------------------------
# the (BE) checker


def check_extending_structure(
    datum: ExtendingDatum, window: int | None = None, *, full: bool = False
) -> VerificationReport:
    """Normalization, coalgebra-map, module and compatibility conditions
    characterising a bialgebra extending structure."""
    A, H = datum.A, datum.H
    F = datum.field
    WA, WH = A.elements(window), H.elements(window)
    label = A.window_label(window) if not A.is_finite else H.window_label(window)
    report = VerificationReport(f"extending structure {datum.name}", label, field=F)
    oneA, oneH = A.one, H.one
    R, L, Fc = datum.R, datum.L, datum.F
    va = lambda a: _vec(a, F.one)
    vh = va
    Hm = H.mul
    Am = A.mul

    def add(name, tuples, lhs, rhs):
        report.add(check_identity(name, tuples, lhs, rhs, full=full))

    hs = [(h,) for h in WH]
    as_ = [(a,) for a in WA]
    ha = list(product(WH, WA))
    hh = list(product(WH, WH))

    # normalization
    add("lact_unit", hs, lambda h: L(vh(h), oneA), lambda h: oneA.scale(H.counit(h)))
    add("lact_by_unit", as_, lambda a: L(oneH, va(a)), va)
    add("ract_unit", as_, lambda a: R(oneH, va(a)), lambda a: oneH.scale(A.counit(a)))
    add("ract_by_unit", hs, lambda h: R(vh(h), oneA), vh)
    add("comult_unit_H", [()], lambda: _delta(H, oneH), lambda: oneH.tensor(oneH))
    add("cocycle_normalized", hs, lambda h: Fc(vh(h), oneH) + Fc(oneH, vh(h)),
        lambda h: oneA.scale(2 * H.counit(h)))

    # H coalgebra and bialgebra-type conditions
    add("H_coassociativity", hs, lambda h: _coassoc(H, h, 0), lambda h: _coassoc(H, h, 1))
    add("H_counit", hs, lambda h: _counit_side(H, h), vh)
    add("H_comult_multiplicative", hh, lambda h, g: _delta(H, H.mult(h, g)),
        lambda h, g: _tensor_mul(H, H, H.comult(h), H.comult(g)))
    add("H_counit_multiplicative", hh, lambda h, g: H.eps(H.mult(h, g)),
        lambda h, g: H.counit(h) * H.counit(g))

    # coalgebra maps
    def sweedler2(X, Y, x, y, fn):
        acc: dict = {}
        dy = list(Y.comult(y).terms.items())
        for (x1, x2), c in X.comult(x).terms.items():
            for (y1, y2), d in dy:
                l = fn(x1, y1)
                if not l:
                    continue
                r = fn(x2, y2)
                if r:
                    accumulate(acc, l.tensor(r).terms, c * d)
        return LinComb._trusted(acc)

    add("ract_coalgebra_map", ha, lambda h, a: _delta(H, datum.ract(h, a)),
        lambda h, a: sweedler2(H, A, h, a, datum.ract))
    add("ract_counit", ha, lambda h, a: H.eps(datum.ract(h, a)), lambda h, a: H.counit(h) * A.counit(a))
    add("lact_coalgebra_map", ha, lambda h, a: _delta(A, datum.lact(h, a)),
        lambda h, a: sweedler2(H, A, h, a, datum.lact))
    add("lact_counit", ha, lambda h, a: A.eps(datum.lact(h, a)), lambda h, a: H.counit(h) * A.counit(a))
    add("cocycle_coalgebra_map", hh, lambda h, g: _delta(A, datum.cocycle(h, g)),
        lambda h, g: sweedler2(H, H, h, g, datum.cocycle))
    add("cocycle_counit", hh, lambda h, g: A.eps(datum.cocycle(h, g)), lambda h, g: H.counit(h) * H.counit(g))

    # (H, <|) is a right A-module
    haa = [(h, a, b) for h in WH for a in WA for b in WA]
    add("right_module", haa, lambda h, a, b: R(datum.ract(h, a), va(b)),
        lambda h, a, b: R(vh(h), A.mult(a, b)))

    hhh = [(g, h, l) for g in WH for h in WH for l in WH]
    hhA = [(g, h, a) for g in WH for h in WH for a in WA]
    hAA = [(g, a, b) for g in WH for a in WA for b in WA]

    def be1_rhs(g, h, l):
        acc: dict = {}
        dl = list(H.comult(l).terms.items())
        for (h1, h2), c in H.comult(h).terms.items():
            for (l1, l2), d in dl:
                left = R(vh(g), datum.cocycle(h1, l1))
                if left:
                    accumulate(acc, Hm(left, H.mult(h2, l2)).terms, c * d)
        return LinComb._trusted(acc)

    add("cocycle_associativity", hhh, lambda g, h, l: Hm(H.mult(g, h), vh(l)), be1_rhs)

    def be2_rhs(g, a, b):
        acc: dict = {}
        da = list(A.comult(a).terms.items())
        for (g1, g2), c in H.comult(g).terms.items():
            for (a1, a2), d in da:
                left = datum.lact(g1, a1)
                if not left:
                    continue
                right = L(datum.ract(g2, a2), va(b))
                if right:
                    accumulate(acc, Am(left, right).terms, c * d)
        return LinComb._trusted(acc)

    add("left_action_multiplicative", hAA, lambda g, a, b: L(vh(g), A.mult(a, b)), be2_rhs)

    def be3_rhs(g, h, a):
        acc: dict = {}
        da = list(A.comult(a).terms.items())
        for (h1, h2), c in H.comult(h).terms.items():
            for (a1, a2), d in da:
                left = R(vh(g), datum.lact(h1, a1))
                if not left:
                    continue
                right = datum.ract(h2, a2)
                if right:
                    accumulate(acc, Hm(left, right).terms, c * d)
        return LinComb._trusted(acc)

    add("right_action_product", hhA, lambda g, h, a: R(H.mult(g, h), va(a)), be3_rhs)

    def be4_lhs(g, h, a):
        acc: dict = {}
        d3a = list(A.coproduct(a, 3).items())
        d3h = list(H.coproduct(h, 3).items())
        for (g1, g2), c in H.comult(g).terms.items():
            for (h1, h2, h3), d in d3h:
                for (a1, a2, a3), e in d3a:
                    left = L(vh(g1), datum.lact(h1, a1))
                    if not left:
                        continue
                    mid = R(vh(g2), datum.lact(h2, a2))
                    if not mid:
                        continue
                    right = Fc(mid, datum.ract(h3, a3))
                    if right:
                        accumulate(acc, Am(left, right).terms, c * d * e)
        return LinComb._trusted(acc)

    def be4_rhs(g, h, a):
        acc: dict = {}
        dh = list(H.comult(h).terms.items())
        for (g1, g2), c in H.comult(g).terms.items():
            for (h1, h2), d in dh:
                left = datum.cocycle(g1, h1)
                if not left:
                    continue
                right = L(H.mult(g2, h2), va(a))
                if right:
                    accumulate(acc, Am(left, right).terms, c * d)
        return LinComb._trusted(acc)

    add("twisted_module", hhA, be4_lhs, be4_rhs)

    def be5_lhs(g, h, l):
        acc: dict = {}
        d3h = list(H.coproduct(h, 3).items())
        d3l = list(H.coproduct(l, 3).items())
        for (g1, g2), c in H.comult(g).terms.items():
            for (h1, h2, h3), d in d3h:
                for (l1, l2, l3), e in d3l:
                    left = L(vh(g1), datum.cocycle(h1, l1))
                    if not left:
                        continue
                    mid = R(vh(g2), datum.cocycle(h2, l2))
                    if not mid:
                        continue
                    right = Fc(mid, H.mult(h3, l3))
                    if right:
                        accumulate(acc, Am(left, right).terms, c * d * e)
        return LinComb._trusted(acc)

    def be5_rhs(g, h, l):
        acc: dict = {}
        dh = list(H.comult(h).terms.items())
        for (g1, g2), c in H.comult(g).terms.items():
            for (h1, h2), d in dh:
                left = datum.cocycle(g1, h1)
                if not left:
                    continue
                right = Fc(H.mult(g2, h2), vh(l))
                if right:
                    accumulate(acc, Am(left, right).terms, c * d)
        return LinComb._trusted(acc)

    add("cocycle_condition", hhh, be5_lhs, be5_rhs)

    def be6(g, a, swap):
        acc: dict = {}
        da = list(A.comult(a).terms.items())
        for (g1, g2), c in H.comult(g).terms.items():
            for (a1, a2), d in da:
                if swap:
                    left, right = datum.ract(g2, a2), datum.lact(g1, a1)
                else:
                    left, right = datum.ract(g1, a1), datum.lact(g2, a2)
                if left and right:
                    accumulate(acc, left.tensor(right).terms, c * d)
        return LinComb._trusted(acc)

    add("actions_cocommutative", ha, lambda g, a: be6(g, a, False), lambda g, a: be6(g, a, True))

    def be7(g, h, swap):
        acc: dict = {}
        dh = list(H.comult(h).terms.items())
        for (g1, g2), c in H.comult(g).terms.items():
            for (h1, h2), d in dh:
                if swap:
                    left, right = H.mult(g2, h2), datum.cocycle(g1, h1)
                else:
                    left, right = H.mult(g1, h1), datum.cocycle(g2, h2)
                if left and right:
                    accumulate(acc, left.tensor(right).terms, c * d)
        return LinComb._trusted(acc)

    add("cocycle_cocommutative", hh, lambda g, h: be7(g, h, False), lambda g, h: be7(g, h, True))
    return report


def _delta(X: HopfAlgebra, v: Mapping) -> LinComb:
    acc: dict = {}
    for b, c in raw_items(v):
        accumulate(acc, X.comult(b).terms, c)
    return LinComb._trusted(acc)


def _coassoc(X, x, side):
    acc: dict = {}
    for (x1, x2), c in X.comult(x).terms.items():
        inner = X.comult(x1 if side == 0 else x2).terms
        for (y1, y2), d in inner.items():
            key = (y1, y2, x2) if side == 0 else (x1, y1, y2)
            accumulate(acc, {key: c * d})
    return LinComb._trusted(acc)


def _counit_side(X, x):
    acc: dict = {}
    for (x1, x2), c in X.comult(x).terms.items():
        accumulate(acc, {x2: c * X.counit(x1)})
    return LinComb._trusted(acc)


def _tensor_mul(X, Y, u, v) -> LinComb:
    acc: dict = {}
    vi = list(raw_items(v))
    for (a1, a2), c in raw_items(u):
        for (b1, b2), d in vi:
            x = X.mult(a1, b1)
            if x:
                y = Y.mult(a2, b2)
                if y:
                    accumulate(acc, x.tensor(y).terms, c * d)
    return LinComb._trusted(acc)


# ---------------------------------------------------------------------------
# product algebras


class ProductAlgebra(HopfAlgebra):
    """A Hopf algebra on ``A (x) H`` remembering how it was built."""

    def __init__(self, *args, provenance: str, datum: ExtendingDatum, pairing=None, **kw):
        super().__init__(*args, **kw)
        self.provenance = provenance
        self.datum = datum
        self.A = datum.A
        self.H = datum.H
        self.pairing = pairing
        self.meta.setdefault("provenance", provenance)

    def embed_a(self, v: Mapping) -> LinComb:
        """a -> a |x 1_H."""
        return LinComb(raw_items(v) if isinstance(v, Mapping) else [(v, 1)]).tensor(self.H.one)

    def embed_h(self, v: Mapping) -> LinComb:
        """h -> 1_A |x h."""
        return self.A.one.tensor(LinComb(raw_items(v) if isinstance(v, Mapping) else [(v, 1)]))

    def embedding_maps(self) -> tuple[LinMap, LinMap]:
        ea = LinMap(1, rule=lambda a: self.A.vec(a).tensor(self.H.one), bound=lambda a: len(self.H.one), name="emb_A")
        eh = LinMap(1, rule=lambda h: self.A.one.tensor(self.H.vec(h)), bound=lambda h: len(self.A.one), name="emb_H")
        return ea, eh


class _BoundedRule:
    """Rule wrapper whose finiteness certificate is the number of (term,
    term) pairs of its Sweedler expansion, recorded on evaluation."""

    def __init__(self, fn):
        self.fn = fn
        self.sizes: dict = {}

    def rule(self, *args):
        out, size = self.fn(*args)
        self.sizes[args] = size
        return out

    def bound(self, *args):
        return self.sizes[args]


def _extend_sized(mult: LinMap, u: Mapping, v: Mapping) -> tuple[LinComb, int]:
    """Bilinear extension plus the sum of the certified supports used."""
    acc: dict = {}
    size = 0
    vi = list(raw_items(v))
    for x, c in raw_items(u):
        for y, d in vi:
            out = mult(x, y)
            size += mult._bound(x, y)
            accumulate(acc, out.terms, c * d)
    return LinComb._trusted(acc), size


def _make_product(
    datum: ExtendingDatum,
    mult_fn: Callable,
    *,
    provenance: str,
    name: str,
    pairing=None,
    antipode: bool = True,
) -> ProductAlgebra:
    A, H = datum.A, datum.H
    F = datum.field
    mult_rule = _BoundedRule(mult_fn)
    mult = LinMap(2, rule=mult_rule.rule, bound=mult_rule.bound, name=f"{name}.mult")

    def comult(x):
        a, h = x
        return {
            ((a1, h1), (a2, h2)): c * d
            for (a1, a2), c in A.comult(a).terms.items()
            for (h1, h2), d in H.comult(h).terms.items()
        }

    comult_map = LinMap(1, rule=comult, bound=lambda x: len(A.comult(x[0])) * len(H.comult(x[1])), name=f"{name}.comult")

    if A.is_finite and H.is_finite:
        basis_kw = {"basis": [(a, h) for a in A.basis for h in H.basis]}
    else:
        wins = [w for w in (A.default_window, H.default_window) if w is not None]
        basis_kw = {
            "window": lambda n: [(a, h) for a in A.elements(None if A.is_finite else n)
                                 for h in H.elements(None if H.is_finite else n)],
            "default_window": min(wins),
        }

    S = None
    if antipode and A.antipode is not None and H.antipode is not None:
        s_rule = _BoundedRule(lambda x: _unified_antipode(datum, mult, x))
        S = LinMap(1, rule=s_rule.rule, bound=s_rule.bound, name=f"{name}.antipode")

    meta = {"provenance": provenance, "A": A.name, "H": H.name}
    chars = set(A.meta.get("char_not", ())) | set(H.meta.get("char_not", ()))
    if chars:
        meta["char_not"] = sorted(chars)
    return ProductAlgebra(
        F,
        mult=mult,
        unit=A.one.tensor(H.one),
        comult=comult_map,
        counit=lambda x: A.counit(x[0]) * H.counit(x[1]),
        antipode=S,
        **basis_kw,
        name=name,
        meta=meta,
        provenance=provenance,
        datum=datum,
        pairing=pairing,
    )


def _unified_antipode(datum: ExtendingDatum, mult: LinMap, x) -> LinComb:
    """S(a |x g) = (S_A[f(S_H g_(2), g_(3))] |x S_H g_(1)) . (S_A(a) |x 1_H)."""
    A, H = datum.A, datum.H
    a, g = x
    left: dict = {}
    for (g1, g2, g3), c in H.coproduct(g, 3).items():
        fval = datum.F(H.antipode(g2), _vec(g3, datum.field.one))
        if not fval:
            continue
        sa = A.S(fval)
        accumulate(left, sa.tensor(H.antipode(g1)).terms, c)
    right = A.antipode(a).tensor(H.one)
    return _extend_sized(mult, LinComb._trusted(left), right)


def _unified_mult(datum: ExtendingDatum):
    """Multiplication of the unified product, every factor kept."""
    A, H = datum.A, datum.H
    one = datum.field.one

    def mult(x, y):
        (a, h), (c, g) = x, y
        acc: dict = {}
        size = 0
        dg = list(H.comult(g).terms.items())
        va = _vec(a, one)
        for (h1, h2, h3), ch in H.coproduct(h, 3).items():
            for (c1, c2, c3), cc in A.coproduct(c, 3).items():
                act = datum.lact(h1, c1)
                if not act:
                    continue
                mid = datum.ract(h2, c2)
                if not mid:
                    continue
                right = datum.ract(h3, c3)
                if not right:
                    continue
                aleft = A.mul(va, act)
                for (g1, g2), cg in dg:
                    fv = datum.F(mid, _vec(g1, one))
                    if not fv:
                        continue
                    left = A.mul(aleft, fv)
                    hside = H.mul(right, _vec(g2, one))
                    size += len(left) * len(hside)
                    accumulate(acc, left.tensor(hside).terms, ch * cc * cg)
        return LinComb._trusted(acc), size

    return mult


def _dcp_mult(datum: ExtendingDatum):
    """a(h_(1) |> c_(1)) |x (h_(2) <| c_(2)) g."""
    A, H = datum.A, datum.H
    one = datum.field.one

    def mult(x, y):
        (a, h), (c, g) = x, y
        acc: dict = {}
        size = 0
        va, vg = _vec(a, one), _vec(g, one)
        dc = list(A.comult(c).terms.items())
        for (h1, h2), ch in H.comult(h).terms.items():
            for (c1, c2), cc in dc:
                act = datum.lact(h1, c1)
                if not act:
                    continue
                ra = datum.ract(h2, c2)
                if not ra:
                    continue
                left = A.mul(va, act)
                right = H.mul(ra, vg)
                size += len(left) * len(right)
                accumulate(acc, left.tensor(right).terms, ch * cc)
        return LinComb._trusted(acc), size

    return mult


def _crossed_mult(datum: ExtendingDatum):
    """a(h_(1) |> c) f(h_(2), g_(1)) |x h_(3) g_(2)."""
    A, H = datum.A, datum.H
    one = datum.field.one

    def mult(x, y):
        (a, h), (c, g) = x, y
        acc: dict = {}
        size = 0
        va = _vec(a, one)
        dg = list(H.comult(g).terms.items())
        for (h1, h2, h3), ch in H.coproduct(h, 3).items():
            act = datum.lact(h1, c)
            if not act:
                continue
            aleft = A.mul(va, act)
            for (g1, g2), cg in dg:
                fv = datum.cocycle(h2, g1)
                if not fv:
                    continue
                left = A.mul(aleft, fv)
                right = H.mult(h3, g2)
                size += len(left) * len(right)
                accumulate(acc, left.tensor(right).terms, ch * cg)
        return LinComb._trusted(acc), size

    return mult


def build_unified_product(
    datum: ExtendingDatum,
    *,
    check: bool = True,
    window: int | None = None,
    name: str = "",
) -> ProductAlgebra:
    """A |x H with the general twisted multiplication and tensor coalgebra."""
    if check:
        rep = check_extending_structure(datum, window)
        if not rep.ok:
            raise PreconditionError(f"{datum.name} is not an extending structure", rep)
    return _make_product(datum, _unified_mult(datum), provenance="unified",
                         name=name or f"{datum.A.name}|x{datum.H.name}")


def build_double_cross(
    A: HopfAlgebra,
    H: HopfAlgebra,
    lact: Callable | LinMap | None,
    ract: Callable | LinMap | None,
    *,
    check: bool = True,
    window: int | None = None,
    name: str = "",
    provenance: str = "dcp",
    pairing=None,
) -> ProductAlgebra:
    datum = ExtendingDatum(A, H, ract=ract, lact=lact, name=f"matched({A.name},{H.name})")
    if check:
        rep = check_extending_structure(datum, window)
        if not rep.ok:
            raise PreconditionError(f"{datum.name} is not a matched pair", rep)
    return _make_product(datum, _dcp_mult(datum), provenance=provenance,
                         name=name or f"{A.name}><{H.name}", pairing=pairing)


def build_crossed_product(
    A: HopfAlgebra,
    H: HopfAlgebra,
    lact: Callable | LinMap | None,
    cocycle: Callable | LinMap | None,
    *,
    check: bool = True,
    window: int | None = None,
    name: str = "",
) -> ProductAlgebra:
    datum = ExtendingDatum(A, H, lact=lact, cocycle=cocycle, name=f"crossed({A.name},{H.name})")
    if check:
        rep = check_extending_structure(datum, window)
        if not rep.ok:
            raise PreconditionError(f"{datum.name} is not a crossed system", rep)
    return _make_product(datum, _crossed_mult(datum), provenance="crossed",
                         name=name or f"{A.name}#{H.name}")


def as_unified(P: ProductAlgebra, name: str = "") -> ProductAlgebra:
    """The same datum rebuilt through the general multiplication rule."""
    return _make_product(P.datum, _unified_mult(P.datum), provenance="unified",
                         name=name or f"{P.name}[general]", pairing=P.pairing)


# ---------------------------------------------------------------------------
# generalized quantum doubles


def matched_pair_from_pairing(lam: BilinearForm) -> tuple[LinMap, LinMap]:
    """Actions induced by a skew pairing lam on (H, A).

    Returns ``(lact, ract)`` with
    h <| a = h_(2) lam^-1(h_(1), a_(1)) lam(h_(3), a_(2)) and
    h |> a = a_(2) lam^-1(h_(1), a_(1)) lam(h_(2), a_(3)).
    """
    H, A = lam.left, lam.right
    inv = convolution_inverse(lam)

    def ract(h, a):
        acc: dict = {}
        da = list(A.comult(a).terms.items())
        for (h1, h2, h3), c in H.coproduct(h, 3).items():
            for (a1, a2), d in da:
                s = inv(h1, a1)
                if s:
                    t = lam(h3, a2)
                    if t:
                        accumulate(acc, {h2: c * d * s * t})
        return LinComb._trusted(acc)

    def lact(h, a):
        acc: dict = {}
        dh = list(H.comult(h).terms.items())
        for (a1, a2, a3), c in A.coproduct(a, 3).items():
            for (h1, h2), d in dh:
                s = inv(h1, a1)
                if s:
                    t = lam(h2, a3)
                    if t:
                        accumulate(acc, {a2: c * d * s * t})
        return LinComb._trusted(acc)

    return (
        LinMap(2, rule=lact, bound=lambda h, a: len(A.coproduct(a, 3)), name=f"|>_{lam.name}"),
        LinMap(2, rule=ract, bound=lambda h, a: len(H.coproduct(h, 3)), name=f"<|_{lam.name}"),
    )


def build_gqd(
    A: HopfAlgebra,
    H: HopfAlgebra,
    lam: BilinearForm,
    *,
    check: bool = True,
    window: int | None = None,
    name: str = "",
) -> ProductAlgebra:
    """Generalized quantum double A ><_lam H for a skew pairing lam on (H, A)."""
    if lam.left is not H or lam.right is not A:
        raise AlgebraMismatchError("the pairing of a generalized quantum double lives on (H, A)")
    if check:
        rep = check_skew_pairing(lam, window)
        if not rep.ok:
            raise PreconditionError(f"{lam.name} is not a skew pairing", rep)
    lact, ract = matched_pair_from_pairing(lam)
    return build_double_cross(
        A, H, lact, ract, check=check, window=window, provenance="gqd", pairing=lam,
        name=name or f"{A.name}><_{lam.name}{H.name}",
    )


def evaluation_pairing(H: HopfAlgebra, Hstar: HopfAlgebra) -> BilinearForm:
    """<h, alpha> := alpha(h) on (H, H*) for the delta-functional basis."""
    table = {(b, dual_id(b)): 1 for b in H.basis}
    return BilinearForm(H, Hstar, table=table, name="ev")


def coadjoint_double(H: HopfAlgebra, *, check: bool = True, name: str = "") -> ProductAlgebra:
    """Drinfeld's double H*^op >< H via the mutual coadjoint actions."""
    if not H.is_finite:
        raise WindowError("the coadjoint double needs a finite basis")
    if H.antipode is None:
        raise ValueError(f"{H.name} has no antipode")
    Hd = dual(H)
    Aop = op_cop(Hd, "op")

    def lact(h, alpha):
        # h |> alpha = alpha_(2) (S*(alpha_(1)) alpha_(3))(h), product taken in H*
        acc: dict = {}
        for (a1, a2, a3), c in Hd.coproduct(alpha, 3).items():
            phi = Hd.mul(Hd.antipode(a1), Hd.vec(a3))
            s = phi[dual_id(h)]
            if s:
                accumulate(acc, {a2: c * s})
        return LinComb._trusted(acc)

    def ract(h, alpha):
        # h <| alpha = h_(2) alpha(S(h_(1)) h_(3))
        acc: dict = {}
        target = alpha[:-1] if isinstance(alpha, str) else alpha[1]
        for (h1, h2, h3), c in H.coproduct(h, 3).items():
            w = H.mul(H.antipode(h1), H.vec(h3))
            s = w[target]
            if s:
                accumulate(acc, {h2: c * s})
        return LinComb._trusted(acc)

    n = len(H.basis)
    return build_double_cross(
        Aop, H,
        LinMap(2, rule=lact, bound=lambda h, a: n, name="coadj|>"),
        LinMap(2, rule=ract, bound=lambda h, a: n, name="coadj<|"),
        check=check, provenance="coadjoint-double", name=name or f"D({H.name})",
    )


def product_checks(P: ProductAlgebra, window: int | None = None, *, full: bool = False) -> VerificationReport:
    """Hopf axioms of the product plus the embedding properties."""
    rep = check_hopf(P, window, full=full)
    ea, eh = P.embedding_maps()
    A, H = P.A, P.H
    WA, WH = A.elements(window), H.elements(window)
    rep.add(check_identity(
        "embed_A_multiplicative", list(product(WA, WA)),
        lambda a, b: P.mul(ea(a), ea(b)), lambda a, b: ea.extend(A.mult(a, b)), full=full,
    ))
    rep.add(check_identity(
        "embed_H_multiplicative", list(product(WH, WH)),
        lambda h, g: P.mul(eh(h), eh(g)), lambda h, g: eh.extend(H.mult(h, g)), full=full,
    ))
    def pushed(v, emb):
        acc: dict = {}
        for (x, y), c in raw_items(v):
            accumulate(acc, emb(x).tensor(emb(y)).terms, c)
        return LinComb._trusted(acc)

    rep.add(check_identity(
        "embed_A_comultiplicative", [(a,) for a in WA],
        lambda a: _delta(P, ea(a)), lambda a: pushed(A.comult(a), ea), full=full,
    ))
    rep.add(check_identity(
        "embed_H_comultiplicative", [(h,) for h in WH],
        lambda h: _delta(P, eh(h)), lambda h: pushed(H.comult(h), eh), full=full,
    ))
    return rep
