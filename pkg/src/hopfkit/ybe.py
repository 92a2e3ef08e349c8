"""R-matrices from braidings and the quantum Yang-Baxter equation.

A right comodule M over A with coaction m -> m<0> (x) m<1> and a braiding p
on A give R(m (x) n) = p(m<1>, n<1>) m<0> (x) n<0>.  Matrices are sparse
dicts {(row, col): scalar}; the basis of M (x) M is ordered row-major over
pairs, so (m_i, m_j) has index i * d + j.

Slot conventions: R12 = R (x) I, R23 = I (x) R, R13 = P23 R12 P23 where P23
swaps the second and third tensor factors.
"""

from __future__ import annotations

from typing import Callable, Mapping

from .exactmath import Field, LinComb, LinMap, accumulate, label
from .hopfcore import HopfAlgebra
from .pairings import BilinearForm
from .report import AxiomResult, VerificationReport, check_identity


class DimensionError(ValueError):
    pass


class Comodule:
    """Finite-dimensional right comodule: coaction(m) is a LinComb over (m', a)."""

    def __init__(self, algebra: HopfAlgebra, basis, coaction: Callable, name: str = ""):
        self.algebra = algebra
        self.field = algebra.field
        self.basis = list(basis)
        self.index = {m: i for i, m in enumerate(self.basis)}
        F = self.field
        self.coaction = LinMap(1, rule=lambda m: {k: F(v) for k, v in dict(coaction(m)).items()},
                               bound=lambda m: 10 ** 6, name=f"{name}.coaction")
        self.name = name

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"<Comodule {self.name} of dim {self.dim} over {self.algebra.name}>"


def regular_comodule(A: HopfAlgebra) -> Comodule:
    if not A.is_finite:
        raise DimensionError("the regular comodule needs a finite basis")
    return Comodule(A, A.basis, lambda m: A.comult(m).terms, name=f"{A.name} regular")


def trivial_comodule(A: HopfAlgebra, dim: int = 1) -> Comodule:
    one = A.one.terms
    return Comodule(A, [("e", i) for i in range(dim)],
                    lambda m: {(m, a): c for a, c in one.items()}, name=f"trivial^{dim}")


def grouplike_comodule(A: HopfAlgebra, g) -> Comodule:
    """One-dimensional comodule m -> m (x) g for a group-like g."""
    return Comodule(A, [("m", g)], lambda m: {(m, g): 1}, name=f"k_{label(g)}")


def direct_sum(M: Comodule, N: Comodule) -> Comodule:
    if M.algebra is not N.algebra:
        raise DimensionError("comodules over different algebras")
    basis = [(0, m) for m in M.basis] + [(1, n) for n in N.basis]

    def coact(x):
        side, b = x
        src = (M if side == 0 else N).coaction(b)
        return {((side, m), a): c for (m, a), c in src.terms.items()}

    return Comodule(M.algebra, basis, coact, name=f"{M.name} + {N.name}")


def check_comodule(M: Comodule) -> VerificationReport:
    """Coassociativity and counit law of the coaction."""
    A, F = M.algebra, M.field
    rep = VerificationReport(f"comodule {M.name}", "complete", field=F)

    def twice(m):
        acc: dict = {}
        for (m0, a), c in M.coaction(m).terms.items():
            for (m00, a0), d in M.coaction(m0).terms.items():
                accumulate(acc, {(m00, a0, a): c * d})
        return LinComb._trusted(acc)

    def via_delta(m):
        acc: dict = {}
        for (m0, a), c in M.coaction(m).terms.items():
            for (a1, a2), d in A.comult(a).terms.items():
                accumulate(acc, {(m0, a1, a2): c * d})
        return LinComb._trusted(acc)

    def counit(m):
        acc: dict = {}
        for (m0, a), c in M.coaction(m).terms.items():
            e = A.counit(a)
            if e:
                accumulate(acc, {m0: c * e})
        return LinComb._trusted(acc)

    pts = [(m,) for m in M.basis]
    rep.add(check_identity("coaction_coassociative", pts, twice, via_delta))
    rep.add(check_identity("coaction_counital", pts, counit, lambda m: LinComb.basis(m, F.one)))
    return rep


class SquareMatrix:
    """Sparse exact square matrix of size n, acting on column vectors."""

    def __init__(self, n: int, entries: Mapping, field: Field, labels=None):
        self.n = n
        self.field = field
        self.entries = {k: field(v) for k, v in entries.items() if v}
        for (i, j) in self.entries:
            if not (0 <= i < n and 0 <= j < n):
                raise DimensionError(f"entry ({i}, {j}) outside {n}x{n}")
        self.labels = labels

    def __getitem__(self, key):
        return self.entries.get(key, self.field.zero)

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        if self.n != other.n:
            raise DimensionError(f"{self.n}x{self.n} times {other.n}x{other.n}")
        rows: dict = {}
        for (i, k), v in self.entries.items():
            rows.setdefault(k, []).append((i, v))
        out: dict = {}
        for (k, j), w in other.entries.items():
            for i, v in rows.get(k, ()):
                key = (i, j)
                out[key] = out[key] + v * w if key in out else v * w
        return SquareMatrix(self.n, out, self.field)

    def __eq__(self, other):
        return isinstance(other, SquareMatrix) and self.n == other.n and self.entries == other.entries

    def transpose(self) -> "SquareMatrix":
        return SquareMatrix(self.n, {(j, i): v for (i, j), v in self.entries.items()}, self.field, self.labels)

    def dense(self) -> list[list]:
        z = self.field.zero
        return [[self.entries.get((i, j), z) for j in range(self.n)] for i in range(self.n)]

    def to_text(self, d: int | None = None) -> str:
        """First line ``d n``, then one row per line of scalar literals."""
        d = d if d is not None else _root(self.n)
        lines = [f"{d} {self.n}"]
        for row in self.dense():
            lines.append(" ".join(self.field.format(v) for v in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, field: Field) -> tuple["SquareMatrix", int]:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        d, n = (int(x) for x in lines[0].split())
        if len(lines) - 1 != n:
            raise DimensionError(f"expected {n} rows, found {len(lines) - 1}")
        entries = {}
        for i, ln in enumerate(lines[1:]):
            vals = ln.split()
            if len(vals) != n:
                raise DimensionError(f"row {i} has {len(vals)} entries, expected {n}")
            for j, s in enumerate(vals):
                v = field.parse(s)
                if v:
                    entries[(i, j)] = v
        return cls(n, entries, field), d

    def __repr__(self):
        return f"<SquareMatrix {self.n}x{self.n}, {len(self.entries)} nonzero>"


def _root(n: int) -> int:
    d = int(round(n ** 0.5))
    if d * d != n:
        raise DimensionError(f"{n} is not a square")
    return d


def identity(n: int, field: Field) -> SquareMatrix:
    return SquareMatrix(n, {(i, i): field.one for i in range(n)}, field)


def flip_matrix(d: int, field: Field) -> SquareMatrix:
    """m (x) n -> n (x) m on a d-dimensional space."""
    return SquareMatrix(d * d, {(j * d + i, i * d + j): field.one for i in range(d) for j in range(d)}, field)


def r_matrix(p: BilinearForm, M: Comodule | None = None) -> SquareMatrix:
    """Matrix of R_p on M (x) M; M defaults to the regular comodule."""
    if p.left is not p.right:
        raise DimensionError("R-matrices come from forms on (A, A)")
    M = M or regular_comodule(p.left)
    if M.algebra is not p.left:
        raise DimensionError("comodule is over a different algebra")
    d = M.dim
    idx = M.index
    entries: dict = {}
    coacts = {m: list(M.coaction(m).terms.items()) for m in M.basis}
    for m in M.basis:
        for n in M.basis:
            col = idx[m] * d + idx[n]
            for (m0, a), c in coacts[m]:
                for (n0, b), e in coacts[n]:
                    v = p(a, b)
                    if v:
                        key = (idx[m0] * d + idx[n0], col)
                        entries[key] = entries[key] + c * e * v if key in entries else c * e * v
    labels = [(m, n) for m in M.basis for n in M.basis]
    return SquareMatrix(d * d, entries, p.field, labels)


def _pad(R: SquareMatrix, d: int, where: str) -> SquareMatrix:
    """R (x) I_d (where='left') or I_d (x) R (where='right')."""
    out = {}
    if where == "left":
        for (i, j), v in R.entries.items():
            for k in range(d):
                out[(i * d + k, j * d + k)] = v
    else:
        for (i, j), v in R.entries.items():
            for k in range(d):
                out[(k * R.n + i, k * R.n + j)] = v
    return SquareMatrix(R.n * d, out, R.field)


def p23(d: int, field: Field) -> SquareMatrix:
    out = {}
    for a in range(d):
        for b in range(d):
            for c in range(d):
                out[(a * d * d + c * d + b, a * d * d + b * d + c)] = field.one
    return SquareMatrix(d ** 3, out, field)


def slots(R: SquareMatrix, d: int | None = None) -> tuple[SquareMatrix, SquareMatrix, SquareMatrix]:
    d = d if d is not None else _root(R.n)
    if d * d != R.n:
        raise DimensionError(f"R is {R.n}x{R.n}, not ({d}^2)x({d}^2)")
    R12 = _pad(R, d, "left")
    R23 = _pad(R, d, "right")
    P = p23(d, R.field)
    R13 = P @ R12 @ P
    return R12, R13, R23


def check_ybe(R: SquareMatrix, d: int | None = None) -> VerificationReport:
    """R12 R13 R23 = R23 R13 R12, compared entry by entry."""
    R12, R13, R23 = slots(R, d)
    d = d if d is not None else _root(R.n)
    lhs = R12 @ R13 @ R23
    rhs = R23 @ R13 @ R12
    rep = VerificationReport(f"Yang-Baxter equation on {d}^3", "complete", field=R.field)
    keys = sorted(set(lhs.entries) | set(rhs.entries))
    rep.add(check_identity("yang_baxter", keys, lambda i, j: lhs[(i, j)], lambda i, j: rhs[(i, j)]))
    return rep


def block(R: SquareMatrix, d: int, indices: list[int]) -> SquareMatrix:
    """Restriction of a (d^2)x(d^2) matrix to span{e_i (x) e_j : i, j in indices}."""
    pos = {i: k for k, i in enumerate(indices)}
    e = len(indices)
    out = {}
    for (r, c), v in R.entries.items():
        r1, r2, c1, c2 = r // d, r % d, c // d, c % d
        if r1 in pos and r2 in pos and c1 in pos and c2 in pos:
            out[(pos[r1] * e + pos[r2], pos[c1] * e + pos[c2])] = v
    return SquareMatrix(e * e, out, R.field)


def leaks(R: SquareMatrix, d: int, indices: list[int]) -> int:
    """Number of entries mapping a pure block tensor outside that block."""
    inside = set(indices)
    count = 0
    for (r, c), v in R.entries.items():
        c1, c2 = c // d, c % d
        r1, r2 = r // d, r % d
        if c1 in inside and c2 in inside and not (r1 in inside and r2 in inside):
            count += 1
    return count


def naturality_report(p: BilinearForm, M: Comodule, N: Comodule) -> VerificationReport:
    """R on M + N restricts to R on M and on N."""
    S = direct_sum(M, N)
    Rs = r_matrix(p, S)
    d = S.dim
    im = list(range(M.dim))
    jn = list(range(M.dim, d))
    rep = VerificationReport(f"naturality on {S.name}", "complete", field=p.field)
    for tag, ind, R in (("M", im, r_matrix(p, M)), ("N", jn, r_matrix(p, N))):
        B = block(Rs, d, ind)
        keys = sorted(set(B.entries) | set(R.entries))
        rep.add(check_identity(f"block_{tag}", keys, lambda i, j, B=B: B[(i, j)], lambda i, j, R=R: R[(i, j)]))
        rep.add(AxiomResult(f"invariant_{tag}", passed=leaks(Rs, d, ind) == 0, checked=len(ind) ** 2))
    return rep
