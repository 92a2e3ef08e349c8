"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line that the session summary prints.  A
criterion that cannot hold is recorded as FAIL and its unattainable part is
a strict xfail, so the suite stays green without hiding the verdict.
"""

import time

import pytest

from hopfkit.catalog import (
    H4,
    H4_BASIS,
    P_ALPHA_DISPLAY,
    borel_sigma_table,
    build_fixture,
    kZn,
    p_alpha,
)
from hopfkit.coquasi import (
    assemble_sigma,
    canonical_quadruple,
    check_compat,
    decompose_sigma,
    forms_agree,
    quadruples_agree,
)
from hopfkit.exactmath import FunctionField, LinComb, PrimeField
from hopfkit.hopfcore import check_hopf
from hopfkit.pairings import BilinearForm, check_braiding, counit_form
from hopfkit.products import as_unified, coadjoint_double
from hopfkit.search import cross_validate_bijection, decompose_all, enumerate_braidings
from hopfkit.ybe import check_ybe, r_matrix

F3 = PrimeField(3)


def _retab(form, changes):
    t = dict(form.entries())
    t.update(changes)
    return BilinearForm(form.left, form.right, table={k: v for k, v in t.items() if v}, name=form.name + "'")


# 1 -----------------------------------------------------------------------------------


def _display_value(F, r, c):
    s = P_ALPHA_DISPLAY[r][H4_BASIS.index(c)]
    return F.param("alpha") if s == "alpha" else F(int(s))


def test_criterion_1_h4_braiding_table(criterion):
    t0 = time.perf_counter()
    fx = build_fixture("H4")
    p, F = fx.form("p"), fx.field
    axioms_ok = check_braiding(p).ok
    matches = [(r, c) for r in H4_BASIS for c in H4_BASIS if p(r, c) == _display_value(F, r, c)]
    elapsed = time.perf_counter() - t0
    off = sorted(set((r, c) for r in H4_BASIS for c in H4_BASIS) - set(matches))
    criterion(1, axioms_ok and len(matches) == 16 and elapsed < 1,
              f"axioms {'pass' if axioms_ok else 'fail'}; {len(matches)}/16 entries match the display "
              f"(differs at {off}); {elapsed:.2f}s")
    assert axioms_ok and elapsed < 1
    assert len(matches) == 15 and off == [("x", "gx")]


@pytest.mark.xfail(strict=True, reason="the displayed (x, gx) entry contradicts multiplicativity")
def test_criterion_1_display_entries_all_match():
    fx = build_fixture("H4")
    p, F = fx.form("p"), fx.field
    assert all(p(r, c) == _display_value(F, r, c) for r in H4_BASIS for c in H4_BASIS)


# 2 -----------------------------------------------------------------------------------


def test_criterion_2_h4_double_sigma(criterion):
    t0 = time.perf_counter()
    fx = build_fixture("H4-double")
    s = fx.form("sigma")
    braided = check_braiding(s).ok
    display = fx.expected[0].entries
    agree = sum(1 for (x, y), v in display.items() if s(x, y) == v)
    elapsed = time.perf_counter() - t0
    ok = braided and agree == len(display) == 256 and elapsed < 30
    criterion(2, ok, f"braiding {'pass' if braided else 'fail'}; {agree}/{len(display)} pairs equal; {elapsed:.2f}s")
    assert ok


# 3 -----------------------------------------------------------------------------------


def test_criterion_3_borel_double_table(criterion):
    t0 = time.perf_counter()
    fx = build_fixture("Borel-double(2)")
    P, s, q = fx.products["double"], fx.form("sigma"), fx.quadruples["canonical"]
    table = borel_sigma_table(2, fx.field)
    canonical_ok = sum(1 for (x, y), v in table.items() if s(x, y) == v)
    # second route: the quadruple formula with u = lam^-1 o flip, v = lam
    assembled = assemble_sigma(q, P, force=True)
    expansion_ok = sum(1 for (x, y), v in table.items() if assembled(x, y) == v)
    elapsed = time.perf_counter() - t0
    ok = canonical_ok == expansion_ok == len(table) and elapsed < 60
    criterion(3, ok, f"{canonical_ok}/{len(table)} entries across the 16 sector blocks (canonical), "
                     f"{expansion_ok}/{len(table)} (quadruple expansion); {elapsed:.2f}s")
    assert ok


# 4 -----------------------------------------------------------------------------------


def test_criterion_4_closed_form_sigma(criterion):
    t0 = time.perf_counter()
    fx = build_fixture("kZ-bowtie-kX")
    s = fx.form("sigma")
    grid = fx.expected[0].entries
    agree = sum(1 for (x, y), v in grid.items() if s(x, y) == v)
    elapsed = time.perf_counter() - t0
    ok = agree == len(grid) == 1764 and elapsed < 30
    criterion(4, ok, f"{agree}/{len(grid)} evaluations, t, l in [-3, 3], n, m <= 5; {elapsed:.2f}s")
    assert ok


# 5 -----------------------------------------------------------------------------------


def _round_trip(P, q, s, window=None):
    d = decompose_sigma(s, P)
    return (quadruples_agree(d, q, window).ok
            and forms_agree(assemble_sigma(d, P, force=True), s, window).passed
            and forms_agree(assemble_sigma(q, P, force=True), s, window).passed)


def test_criterion_5_round_trips(criterion):
    t0 = time.perf_counter()
    results = {}
    for name in ("H4-double", "Borel-double(1)", "Borel-double(2)"):
        fx = build_fixture(name)
        results[name] = _round_trip(fx.products["double"], fx.quadruples["canonical"], fx.form("sigma"))
    fx = build_fixture("kZ-bowtie-kX")
    P = fx.products["double"]
    results["kZ-bowtie-kX (window 2)"] = _round_trip(
        P, canonical_quadruple(fx.form("p"), fx.form("tau"), P), fx.form("sigma"), 2)
    bij = cross_validate_bijection(coadjoint_double(kZn(2, F3)))
    elapsed = time.perf_counter() - t0
    ok = all(results.values()) and bij.ok and elapsed < 300
    criterion(5, ok, f"round trips {sum(results.values())}/{len(results)}; D(kZ2) over F3: "
                     f"{bij['count_match'].note}; {elapsed:.1f}s")
    assert ok


# 6 -----------------------------------------------------------------------------------

MUTANTS = {
    "gqd:v_actions_exchange": lambda q: q.replace(v=_retab(q.v, {("y1", "x1"): q.v("y1", "x1") + 1})),
    "gqd:u_actions_exchange": lambda q: q.replace(u=_retab(q.u, {("x1", "y1"): q.u("x1", "y1") + 1})),
    "gqd:u_p_actions": lambda q: q.replace(p=counit_form(q.A, q.A)),
    "gqd:tau_v_actions": lambda q: q.replace(tau=counit_form(q.H, q.H)),
    "gqd:p_v_actions": lambda q: q.replace(p=_retab(q.p, {("c", "c"): q.p("c", "c") + 1})),
    "gqd:u_tau_actions": lambda q: q.replace(u=counit_form(q.A, q.H)),
}


def test_criterion_6_gqd_compatibilities(criterion):
    passes = {}
    for name in ("H4-double", "Borel-double(1)", "Borel-double(2)"):
        fx = build_fixture(name)
        rep = check_compat(fx.quadruples["canonical"], fx.products["double"], general=False)
        passes[name] = rep.ok and len(rep.results) == 6
    fx = build_fixture("kZ-bowtie-kX")
    P = fx.products["double"]
    rep = check_compat(canonical_quadruple(fx.form("p"), fx.form("tau"), P), P, 2, general=False)
    passes["kZ-bowtie-kX (window 2)"] = rep.ok and len(rep.results) == 6

    fx = build_fixture("Borel-double(1)")
    P, q = fx.products["double"], fx.quadruples["canonical"]
    hit = {}
    for target, make in MUTANTS.items():
        res = check_compat(make(q), P, general=False)[target]
        hit[target] = (not res.passed) and res.witness is not None and res.lhs != res.rhs
    ok = all(passes.values()) and all(hit.values())
    criterion(6, ok, f"canonical quadruple passes on {sum(passes.values())}/{len(passes)} doubles; "
                     f"{sum(hit.values())}/6 mutants fail their equation with a witness")
    assert ok


# 7 -----------------------------------------------------------------------------------


def test_criterion_7_yang_baxter(criterion):
    t0 = time.perf_counter()
    F = FunctionField(["alpha"])
    A = H4(F)
    R = r_matrix(p_alpha(A, "alpha"))
    rep = check_ybe(R)
    elapsed = time.perf_counter() - t0
    symbolic = any(not isinstance(v, int) and F.format(v) in ("alpha", "-alpha") for v in R.entries.values())
    ok = rep.ok and R.n == 16 and symbolic and elapsed < 120
    criterion(7, ok, f"R is {R.n}x{R.n}, triple products {R.n * 4}x{R.n * 4} equal; {elapsed:.2f}s")
    assert ok


# 8 -----------------------------------------------------------------------------------


def _vals(f):
    L, R = f.windows()
    return tuple(f(x, y).value for x in L for y in R)


def test_criterion_8_search(criterion):
    A = H4(F3)
    found = enumerate_braidings(A, 3, strategy="coset")
    family = {_vals(p_alpha(A, a)) for a in range(3)}
    in_family = all(_vals(f) in family for f in found)
    covers = {_vals(f) for f in found} == family
    dec = decompose_all(coadjoint_double(kZn(2, F3)))
    ok = bool(found) and in_family and covers and dec.ok
    criterion(8, ok, f"{len(found)} braidings on H4 over F3, all p_alpha; D(kZ2): "
                     f"{dec['restrictions_are_braidings'].note} restrict to braidings")
    assert ok


# 9 -----------------------------------------------------------------------------------


def _antipode_convolution_ok(P, window=None):
    for b in P.elements(window):
        e = P.one.scale(P.counit(b))
        left, right = LinComb({}), LinComb({})
        for (x, y), c in P.comult(b).terms.items():
            left = left + P.mul(P.S(P.vec(x)), P.vec(y)).scale(c)
            right = right + P.mul(P.vec(x), P.S(P.vec(y))).scale(c)
        if not (left == e == right):
            return False
    return True


def _dcp_formula(P, x, y):
    """(a h)(c g) = a (h1 |> c1) (x) (h2 <| c2) g."""
    A, H, d = P.A, P.H, P.datum
    (a, h), (c, g) = x, y
    acc = LinComb({})
    for (h1, h2), s in H.comult(h).terms.items():
        for (c1, c2), t in A.comult(c).terms.items():
            left = A.mul(A.vec(a), d.lact(h1, c1))
            right = H.mul(d.ract(h2, c2), H.vec(g))
            acc = acc + left.tensor(right).scale(s * t)
    return acc


def _crossed_formula(P, x, y):
    """(a h)(c g) = a (h1 |> c1) f(h2, g1) (x) h3 g2."""
    A, H, d = P.A, P.H, P.datum
    (a, h), (c, g) = x, y
    acc = LinComb({})
    for (h1, h2, h3), s in H.coproduct(h, 3).items():
        for (c1, c2), t in A.comult(c).terms.items():
            for (g1, g2), r in H.comult(g).terms.items():
                left = A.mul(A.mul(A.vec(a), d.lact(h1, c1)), d.cocycle(h2, g1))
                acc = acc + left.tensor(H.mult(h3, g2)).scale(s * t * r)
    return acc


def test_criterion_9_products(criterion):
    products = {}
    for name in ("H4-double", "Borel-double(1)", "Borel-double(2)", "Z2-toys"):
        for key, P in build_fixture(name).products.items():
            products[f"{name}:{key}"] = (P, None)
    products["kZ-bowtie-kX:double (window 2)"] = (build_fixture("kZ-bowtie-kX").products["double"], 2)
    products["D(H4)"] = (coadjoint_double(H4()), None)
    antipode = {k: _antipode_convolution_ok(P, w) for k, (P, w) in products.items()}

    formulas = {}
    for k, (P, w) in products.items():
        if P.provenance in ("dcp", "gqd", "coadjoint-double"):
            rule = _dcp_formula
        elif P.provenance == "crossed":
            rule = _crossed_formula
        else:
            continue
        U = as_unified(P)
        W = P.elements(w if w is not None else None)
        if not P.is_finite:
            W = P.elements(1)
        formulas[k] = all(P.mult(x, y) == rule(P, x, y) == U.mult(x, y) for x in W for y in W)
    hopf_ok = check_hopf(build_fixture("Z2-toys").products["smash"]).ok
    ok = all(antipode.values()) and all(formulas.values()) and hopf_ok
    criterion(9, ok, f"antipode convolution on {sum(antipode.values())}/{len(antipode)} products; "
                     f"specialised formulas reproduced on {sum(formulas.values())}/{len(formulas)}")
    assert ok
