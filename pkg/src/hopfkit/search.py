"""Exhaustive search for braidings and braiding components over F_p.

Unknowns are the values of a form on basis pairs.  The unit normalizations
are affine and the commutation law is linear in the unknowns, so they are
solved first by exact elimination mod p; only the coset of solutions is then
enumerated and filtered by the two quadratic multiplicativity laws, using
plain integer arithmetic.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Callable

from .exactmath import Mod, PrimeField, rref
from .hopfcore import HopfAlgebra
from .pairings import BilinearForm, check_braiding
from .report import AxiomResult, VerificationReport, worker_count


class BoundExceeded(RuntimeError):
    def __init__(self, free: int, limit: int, what: str = ""):
        super().__init__(f"{what}: {free} free parameters exceed the limit {limit}")
        self.free = free
        self.limit = limit


def _prime_of(X: HopfAlgebra, prime: int | None) -> int:
    F = X.field
    if not isinstance(F, PrimeField):
        raise ValueError(f"{X.name} is over {F.tag}; the search runs over a prime field")
    if prime is not None and prime != F.p:
        raise ValueError(f"{X.name} is over F_{F.p}, not F_{prime}")
    return F.p


def _int(x) -> int:
    return x.value if isinstance(x, Mod) else int(x)


class _Tables:
    """Integer structure constants of a finite algebra, indexed by position."""

    def __init__(self, X: HopfAlgebra):
        self.X = X
        self.basis = list(X.basis)
        self.idx = {b: i for i, b in enumerate(self.basis)}
        n = len(self.basis)
        ix = self.idx
        self.mult = [[[(ix[k], _int(c)) for k, c in X.mult(a, b).terms.items()] for b in self.basis] for a in self.basis]
        self.comult = [[(ix[l], ix[r], _int(c)) for (l, r), c in X.comult(a).terms.items()] for a in self.basis]
        self.counit = [_int(X.counit(a)) for a in self.basis]
        self.one = [(ix[k], _int(c)) for k, c in X.one.terms.items()]
        self.n = n


@dataclass
class SearchSpace:
    left: HopfAlgebra
    right: HopfAlgebra
    prime: int
    particular: list
    directions: list
    inconsistent: bool = False

    @property
    def free(self) -> int:
        return len(self.directions)

    @property
    def size(self) -> int:
        return 0 if self.inconsistent else self.prime ** self.free


def solve_affine(nvars: int, equations: list, prime: int):
    """Solve sum_j c_j x_j = b mod p for all given (coeffs, b).

    Returns (particular solution, nullspace basis) or None when inconsistent.
    """
    one = Mod(1, prime)
    rows = []
    for coeffs, rhs in equations:
        row = [Mod(0, prime)] * (nvars + 1)
        for j, c in coeffs.items():
            row[j] = row[j] + c
        row[nvars] = Mod(rhs, prime)
        if any(row):
            rows.append(row)
    red, pivots = rref(rows, nvars + 1, one) if rows else ([], [])
    if nvars in pivots:
        return None
    particular = [0] * nvars
    for row, pc in zip(red, pivots):
        particular[pc] = row[nvars].value
    free_cols = [j for j in range(nvars) if j not in pivots]
    directions = []
    for fc in free_cols:
        vec = [0] * nvars
        vec[fc] = 1
        for row, pc in zip(red, pivots):
            vec[pc] = (-row[fc].value) % prime
        directions.append(vec)
    return particular, directions


def _unital_equations(L: _Tables, R: _Tables) -> list:
    """lam(1, z) = eps(z) and lam(y, 1) = eps(y); unknown (i, j) at i * nR + j."""
    nR = R.n
    eqs = []
    for j in range(R.n):
        eqs.append(({i * nR + j: c for i, c in L.one}, R.counit[j]))
    for i in range(L.n):
        eqs.append(({i * nR + j: c for j, c in R.one}, L.counit[i]))
    return eqs


def _commutation_equations(T: _Tables) -> list:
    n = T.n
    eqs = []
    for x in range(n):
        for y in range(n):
            acc: dict = {}
            for x1, x2, c in T.comult[x]:
                for y1, y2, d in T.comult[y]:
                    for k, m in T.mult[x2][y2]:
                        row = acc.setdefault(k, {})
                        row[x1 * n + y1] = row.get(x1 * n + y1, 0) + c * d * m
                    for k, m in T.mult[y1][x1]:
                        row = acc.setdefault(k, {})
                        row[x2 * n + y2] = row.get(x2 * n + y2, 0) - c * d * m
            for k in sorted(acc):
                eqs.append((acc[k], 0))
    return eqs


def _multiplicative_left(L: _Tables, R: _Tables, p: int) -> Callable:
    """lam(xy, z) = lam(x, z1) lam(y, z2) on integer tables."""
    nR = R.n
    triples = [(x, y, z) for x in range(L.n) for y in range(L.n) for z in range(R.n)]

    def ok(v):
        for x, y, z in triples:
            lhs = sum(c * v[k * nR + z] for k, c in L.mult[x][y])
            rhs = sum(c * v[x * nR + z1] * v[y * nR + z2] for z1, z2, c in R.comult[z])
            if (lhs - rhs) % p:
                return False
        return True

    return ok


def _multiplicative_right(L: _Tables, R: _Tables, p: int) -> Callable:
    """lam(x, lz) = lam(x1, z) lam(x2, l) on integer tables."""
    nR = R.n
    triples = [(x, l, z) for x in range(L.n) for l in range(R.n) for z in range(R.n)]

    def ok(v):
        for x, l, z in triples:
            lhs = sum(c * v[x * nR + k] for k, c in R.mult[l][z])
            rhs = sum(c * v[x1 * nR + z] * v[x2 * nR + l] for x1, x2, c in L.comult[x])
            if (lhs - rhs) % p:
                return False
        return True

    return ok


def search_space(left: HopfAlgebra, right: HopfAlgebra, equations: list, prime: int) -> SearchSpace:
    sol = solve_affine(left.dim() * right.dim(), equations, prime)
    if sol is None:
        return SearchSpace(left, right, prime, [], [], inconsistent=True)
    return SearchSpace(left, right, prime, *sol)


def _enumerate(space: SearchSpace, predicates: list, max_free: int, what: str) -> list[list[int]]:
    if space.inconsistent:
        return []
    f, p = space.free, space.prime
    if f > max_free:
        raise BoundExceeded(f, max_free, what)
    base, dirs = space.particular, space.directions
    n = len(base)

    def run(first):
        found = []
        heads = [first] if f else [None]
        for head in heads:
            rest = product(range(p), repeat=max(f - 1, 0)) if f else [()]
            for tail in rest:
                coeffs = ((head,) + tail) if f else ()
                v = list(base)
                for a, d in zip(coeffs, dirs):
                    if a:
                        for j in range(n):
                            if d[j]:
                                v[j] = (v[j] + a * d[j]) % p
                if all(pred(v) for pred in predicates):
                    found.append(v)
        return found

    chunks = list(range(p)) if f else [0]
    workers = min(worker_count(), len(chunks))
    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(run, chunks))
    else:
        parts = [run(c) for c in chunks]
    out = [v for part in parts for v in part]
    out.sort()
    return out


# ---------------------------------------------------------------------------
# branch-and-propagate over the free parameters


def _affine_unknowns(space: SearchSpace) -> list:
    """Each unknown as {(): const, (k,): coeff} in the free parameters t_k."""
    out = []
    for j, c in enumerate(space.particular):
        poly = {(): c} if c else {}
        for k, d in enumerate(space.directions):
            if d[j]:
                poly[(k,)] = d[j]
        out.append(poly)
    return out


def _padd(target: dict, poly: dict, coeff: int, p: int) -> None:
    for mon, c in poly.items():
        v = (target.get(mon, 0) + coeff * c) % p
        if v:
            target[mon] = v
        else:
            target.pop(mon, None)


def _pmul(a: dict, b: dict, p: int) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mon = tuple(sorted(ma + mb))
            v = (out.get(mon, 0) + ca * cb) % p
            if v:
                out[mon] = v
            else:
                out.pop(mon, None)
    return out


def _quadratic_polys(L: _Tables, R: _Tables, aff: list, p: int, laws=("left", "right")) -> list:
    """The multiplicativity laws as polynomials in the free parameters."""
    nR = R.n
    polys = {}
    prods: dict = {}

    def prod_of(i, j):
        key = (i, j) if i <= j else (j, i)
        if key not in prods:
            prods[key] = _pmul(aff[i], aff[j], p)
        return prods[key]

    for x in range(L.n if "left" in laws else 0):
        for y in range(L.n):
            for z in range(R.n):
                eq: dict = {}
                for k, c in L.mult[x][y]:
                    _padd(eq, aff[k * nR + z], c, p)
                for z1, z2, c in R.comult[z]:
                    _padd(eq, prod_of(x * nR + z1, y * nR + z2), -c, p)
                if eq:
                    polys[frozenset(eq.items())] = eq
    for x in range(L.n if "right" in laws else 0):
        for l in range(R.n):
            for z in range(R.n):
                eq = {}
                for k, c in R.mult[l][z]:
                    _padd(eq, aff[x * nR + k], c, p)
                for x1, x2, c in L.comult[x]:
                    _padd(eq, prod_of(x1 * nR + z, x2 * nR + l), -c, p)
                if eq:
                    polys[frozenset(eq.items())] = eq
    return list(polys.values())


def _subst(poly: dict, vals: dict, p: int) -> dict:
    out: dict = {}
    for mon, c in poly.items():
        rest = []
        for v in mon:
            if v in vals:
                c = c * vals[v] % p
            else:
                rest.append(v)
        if c:
            key = tuple(rest)
            w = (out.get(key, 0) + c) % p
            if w:
                out[key] = w
            else:
                out.pop(key, None)
    return out


def propagate_solve(nfree: int, polys: list, p: int, *, max_nodes: int = 200000) -> list[list[int]]:
    """All t in F_p^nfree annihilating every polynomial (degree <= 2).

    Depth-first branching; after each choice, equations left with a single
    linear unknown are solved on the spot and constant equations prune.
    """
    inv = {a: pow(a, p - 2, p) for a in range(1, p)}
    solutions = []
    nodes = 0

    def propagate(current, assign, pending):
        while pending:
            nxt: dict = {}
            kept = []
            for poly in current:
                s = _subst(poly, pending, p)
                if not s:
                    continue
                if len(s) == 1 and () in s:
                    return None
                vars_ = [m for m in s if m]
                if len(vars_) == 1 and len(vars_[0]) == 1:
                    v = vars_[0][0]
                    val = (-s.get((), 0) * inv[s[vars_[0]]]) % p
                    if nxt.get(v, val) != val:
                        return None
                    nxt[v] = val
                    continue
                kept.append(s)
            assign.update(pending)
            for v, val in list(nxt.items()):
                if v in assign:
                    if assign[v] != val:
                        return None
                    del nxt[v]
            current, pending = kept, nxt
        return current

    def branch(current, assign, pending):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise BoundExceeded(nodes, max_nodes, "propagation nodes")
        assign = dict(assign)
        current = propagate(current, assign, pending)
        if current is None:
            return
        free = [k for k in range(nfree) if k not in assign]
        if not free:
            solutions.append([assign[k] for k in range(nfree)])
            return
        counts: dict = {}
        for poly in current:
            for mon in poly:
                for v in mon:
                    counts[v] = counts.get(v, 0) + 1
        var = max(free, key=lambda k: (counts.get(k, 0), -k))
        for val in range(p):
            branch(current, assign, {var: val})

    branch(polys, {}, {})
    solutions.sort()
    return solutions


def _solve(space: SearchSpace, L: _Tables, R: _Tables, predicates, max_free, what, strategy,
           laws=("left", "right")):
    if strategy == "coset":
        return _enumerate(space, predicates, max_free, what)
    if strategy != "propagate":
        raise ValueError(f"unknown strategy {strategy!r}")
    if space.inconsistent:
        return []
    p = space.prime
    aff = _affine_unknowns(space)
    polys = _quadratic_polys(L, R, aff, p, laws)
    vecs = []
    for t in propagate_solve(space.free, polys, p):
        v = list(space.particular)
        for a, d in zip(t, space.directions):
            if a:
                v = [(x + a * y) % p for x, y in zip(v, d)]
        if all(pred(v) for pred in predicates):
            vecs.append(v)
    vecs.sort()
    return vecs


def _to_form(left, right, v, name) -> BilinearForm:
    nR = right.dim()
    table = {}
    for i, x in enumerate(left.basis):
        for j, y in enumerate(right.basis):
            if v[i * nR + j]:
                table[(x, y)] = v[i * nR + j]
    return BilinearForm(left, right, table=table, name=name)


def braiding_space(A: HopfAlgebra, prime: int | None = None) -> SearchSpace:
    p = _prime_of(A, prime)
    T = _Tables(A)
    return search_space(A, A, _unital_equations(T, T) + _commutation_equations(T), p)


def enumerate_braidings(A: HopfAlgebra, prime: int | None = None, *, max_free: int = 12,
                        strategy: str = "coset") -> list[BilinearForm]:
    """Every braiding on a finite algebra over F_p, in a fixed order.

    ``strategy="coset"`` enumerates the whole solution coset of the linear
    conditions (refusing more than ``max_free`` parameters); ``"propagate"``
    branches on the parameters and propagates the quadratic laws.
    """
    p = _prime_of(A, prime)
    T = _Tables(A)
    space = braiding_space(A, p)
    vecs = _solve(space, T, T, [_multiplicative_left(T, T, p), _multiplicative_right(T, T, p)], max_free,
                  f"braidings on {A.name}", strategy)
    return [_to_form(A, A, v, f"p#{k}") for k, v in enumerate(vecs)]


def enumerate_skew_pairings(left: HopfAlgebra, right: HopfAlgebra, prime: int | None = None, *,
                            max_free: int = 12, name: str = "lam", strategy: str = "coset") -> list[BilinearForm]:
    p = _prime_of(left, prime)
    L, R = _Tables(left), _Tables(right)
    space = search_space(left, right, _unital_equations(L, R), p)
    vecs = _solve(space, L, R, [_multiplicative_left(L, R, p), _multiplicative_right(L, R, p)], max_free,
                  f"skew pairings on ({left.name}, {right.name})", strategy)
    return [_to_form(left, right, v, f"{name}#{k}") for k, v in enumerate(vecs)]


def _component_candidates(P, prime: int, max_free: int, strategy: str):
    """Forms on the four blocks satisfying every condition that does not
    involve the other components."""
    A, H = P.A, P.H
    TA, TH = _Tables(A), _Tables(H)
    ps = enumerate_braidings(A, prime, max_free=max_free, strategy=strategy)
    space_u = search_space(A, H, _unital_equations(TA, TH), prime)
    us = [_to_form(A, H, v, f"u#{k}") for k, v in enumerate(
        _solve(space_u, TA, TH, [_multiplicative_left(TA, TH, prime)], max_free, "u", strategy, ("left",)))]
    space_v = search_space(H, A, _unital_equations(TH, TA), prime)
    vs = [_to_form(H, A, v, f"v#{k}") for k, v in enumerate(
        _solve(space_v, TH, TA, [_multiplicative_right(TH, TA, prime)], max_free, "v", strategy, ("right",)))]
    space_t = search_space(H, H, _unital_equations(TH, TH) + _commutation_equations(TH), prime)
    taus = [_to_form(H, H, v, f"tau#{k}") for k, v in enumerate(
        _solve(space_t, TH, TH, [], max_free, "tau", strategy, ()))]
    return ps, taus, us, vs


def enumerate_quadruples(P, prime: int | None = None, *, max_free: int = 12, strategy: str = "coset") -> list:
    """All quadruples over the datum of P passing every condition."""
    from .coquasi import Quadruple, check_compat, check_ls, check_rs, check_sbr

    p = _prime_of(P, prime)
    ps, taus, us, vs = _component_candidates(P, p, max_free, strategy)
    datum = P.datum
    out = []
    for pf in ps:
        good_u = [u for u in us if check_rs(u, pf, datum).ok]
        good_v = [v for v in vs if check_ls(v, pf, datum).ok]
        for u in good_u:
            for v in good_v:
                for t in taus:
                    if not check_sbr(t, u, v, datum).ok:
                        continue
                    q = Quadruple(p=pf, tau=t, u=u, v=v, datum=datum)
                    if check_compat(q, P).ok:
                        out.append(q)
    return out


def _form_key(f: BilinearForm) -> tuple:
    L, R = f.windows()
    return tuple(_int(f(x, y)) for x in L for y in R)


def _quad_key(q) -> tuple:
    return tuple(_form_key(getattr(q, k)) for k in ("p", "tau", "u", "v"))


def cross_validate_bijection(P, prime: int | None = None, *, max_free: int = 12,
                             strategy: str = "coset") -> VerificationReport:
    """Compare braidings of P with valid quadruples over its datum.

    Both sets are found by independent exhaustive searches; the report
    checks that they have equal size and that restriction and assembly are
    mutually inverse bijections between them.
    """
    from .coquasi import assemble_sigma, decompose_sigma

    p = _prime_of(P, prime)
    sigmas = enumerate_braidings(P, p, max_free=max_free, strategy=strategy)
    quads = enumerate_quadruples(P, p, max_free=max_free, strategy=strategy)
    s_keys = {_form_key(s): s for s in sigmas}
    q_keys = {_quad_key(q): q for q in quads}
    rep = VerificationReport(f"bijection on {P.name} over F_{p}", "complete", field=P.field)
    rep.add(AxiomResult("count_match", passed=len(sigmas) == len(quads), checked=len(sigmas) + len(quads),
                        note=f"{len(sigmas)} braidings, {len(quads)} quadruples"))

    bad_dec, bad_rt_s = [], []
    for key, s in s_keys.items():
        q = decompose_sigma(s, P)
        qk = _quad_key(q)
        if qk not in q_keys:
            bad_dec.append(key)
        if _form_key(assemble_sigma(q, P, force=True)) != key:
            bad_rt_s.append(key)
    bad_asm, bad_rt_q = [], []
    for key, q in q_keys.items():
        s = assemble_sigma(q, P, force=True)
        if _form_key(s) not in s_keys:
            bad_asm.append(key)
        if _quad_key(decompose_sigma(s, P)) != key:
            bad_rt_q.append(key)
    for axiom, bad, n in (("restriction_lands_in_quadruples", bad_dec, len(s_keys)),
                          ("assembly_lands_in_braidings", bad_asm, len(q_keys)),
                          ("assemble_after_decompose", bad_rt_s, len(s_keys)),
                          ("decompose_after_assemble", bad_rt_q, len(q_keys))):
        rep.add(AxiomResult(axiom, passed=not bad, checked=n, witness=bad[0] if bad else None))
    return rep


def decompose_all(P, prime: int | None = None, *, max_free: int = 12, strategy: str = "coset",
                  full: bool = False) -> VerificationReport:
    """Every braiding found on P restricts to braidings on both factors;
    with ``full`` the restricted quadruple must pass every condition."""
    from .coquasi import check_quadruple, decompose_sigma

    p = _prime_of(P, prime)
    sigmas = enumerate_braidings(P, p, max_free=max_free, strategy=strategy)
    rep = VerificationReport(f"restrictions of braidings on {P.name}", "complete", field=P.field)
    bad = []
    for k, s in enumerate(sigmas):
        q = decompose_sigma(s, P)
        ok = check_quadruple(q, P).ok if full else check_braiding(q.p).ok and check_braiding(q.tau).ok
        if not ok:
            bad.append(k)
    rep.add(AxiomResult("restrictions_are_braidings", passed=not bad, checked=len(sigmas),
                        witness=(bad[0],) if bad else None, note=f"{len(sigmas)} braidings"))
    return rep
