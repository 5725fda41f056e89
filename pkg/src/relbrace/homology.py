"""Integer homology via Smith normal form, and the comparison of the two operads arity by arity."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence


class ChainComplexError(ArithmeticError):
    pass


# ---------------------------------------------------------------- Smith normal form


@dataclass
class SNFResult:
    factors: list[int]
    rank: int
    U: list[list[int]] | None = None
    V: list[list[int]] | None = None
    D: list[list[int]] | None = None


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _matmul(a, b):
    if not a or not b:
        return [[0] * (len(b[0]) if b else 0) for _ in a]
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def smith_normal_form(m: Sequence[Sequence[int]], transforms: bool = False) -> SNFResult:
    """Diagonalize an integer matrix by unimodular row and column operations.

    Pivots are the entries of least absolute value, which keeps coefficients
    small.  With ``transforms`` the result carries U, V with U m V = D.
    """
    A = [[int(x) for x in row] for row in m]
    nr = len(A)
    nc = len(A[0]) if nr else 0
    U = _identity(nr) if transforms else None
    V = _identity(nc) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in A:
            row[dst] += q * row[src]
        if V is not None:
            for row in V:
                row[dst] += q * row[src]

    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = A[t][t]
            for i in range(t + 1, nr):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, nc):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            rest = [(i, t) for i in range(t + 1, nr) if A[i][t]] + [(t, j) for j in range(t + 1, nc) if A[t][j]]
            if rest:
                i, j = min(rest, key=lambda ij: abs(A[ij[0]][ij[1]]))
                if i != t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1
    factors = [A[i][i] for i in range(min(nr, nc)) if A[i][i]]
    res = SNFResult(factors, len(factors))
    if transforms:
        res.U, res.V, res.D = U, V, A
    return res


def _unit_elimination(rows: list[dict]) -> tuple[int, list[dict]]:
    """Eliminate unit pivots of a sparse integer matrix; return (count, residual rows)."""
    col_rows: dict = defaultdict(set)
    for r, row in enumerate(rows):
        for c in row:
            col_rows[c].add(r)
    alive = {r for r, row in enumerate(rows) if row}
    pivots = 0
    while True:
        best = None
        for r in alive:
            row = rows[r]
            if best is not None and len(row) >= best[0]:
                continue
            for c, v in row.items():
                if v == 1 or v == -1:
                    score = len(row)
                    if best is None or score < best[0] or (score == best[0] and len(col_rows[c]) < best[3]):
                        best = (score, r, c, len(col_rows[c]))
        if best is None:
            break
        _, r, c, _ = best
        prow = rows[r]
        pv = prow[c]
        for r2 in list(col_rows[c]):
            if r2 == r:
                continue
            row2 = rows[r2]
            q = row2[c] * pv
            for cc, v in prow.items():
                nv = row2.get(cc, 0) - q * v
                if nv:
                    if cc not in row2:
                        col_rows[cc].add(r2)
                    row2[cc] = nv
                elif cc in row2:
                    del row2[cc]
                    col_rows[cc].discard(r2)
            if not row2:
                alive.discard(r2)
        for cc in prow:
            col_rows[cc].discard(r)
        rows[r] = {}
        alive.discard(r)
        pivots += 1
    return pivots, [rows[r] for r in sorted(alive)]


def invariant_factors(entries: dict[tuple[int, int], int], nrows: int, ncols: int) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix given as {(i, j): value}."""
    rows: list[dict] = [dict() for _ in range(nrows)]
    for (i, j), v in entries.items():
        if v:
            rows[i][j] = v
    pivots, residual = _unit_elimination(rows)
    if not residual:
        return [1] * pivots
    cols = sorted({c for row in residual for c in row})
    pos = {c: k for k, c in enumerate(cols)}
    dense = [[0] * len(cols) for _ in residual]
    for i, row in enumerate(residual):
        for c, v in row.items():
            dense[i][pos[c]] = v
    return [1] * pivots + smith_normal_form(dense).factors


# ---------------------------------------------------------------- field ranks


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    A = [[int(x) % p for x in row] for row in rows]
    return _rank_generic(A, lambda x: pow(x, p - 2, p), lambda x: x % p)


def rank_rational(rows: Sequence[Sequence]) -> int:
    A = [[Fraction(x) for x in row] for row in rows]
    return _rank_generic(A, lambda x: 1 / x, lambda x: x)


def _rank_generic(A, inv: Callable, red: Callable) -> int:
    nr = len(A)
    nc = len(A[0]) if nr else 0
    rank = 0
    for c in range(nc):
        piv = next((i for i in range(rank, nr) if A[i][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        iv = inv(A[rank][c])
        A[rank] = [red(x * iv) for x in A[rank]]
        for i in range(nr):
            if i != rank and A[i][c]:
                q = A[i][c]
                A[i] = [red(x - q * y) for x, y in zip(A[i], A[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------- chain complexes


@dataclass
class ChainComplexZ:
    """Free graded Z-module with boundary d_k : C_k -> C_{k-1}, stored sparsely."""

    bases: dict[int, list[Hashable]]
    boundaries: dict[int, dict[tuple[int, int], int]] = field(default_factory=dict)
    check: bool = True

    def __post_init__(self):
        if self.check:
            self.verify()

    def rank(self, k: int) -> int:
        return len(self.bases.get(k, ()))

    def total_rank(self) -> int:
        return sum(len(b) for b in self.bases.values())

    def degrees(self) -> list[int]:
        return sorted(k for k, b in self.bases.items() if b)

    def matrix(self, k: int) -> list[list[int]]:
        m = [[0] * self.rank(k) for _ in range(self.rank(k - 1))]
        for (i, j), v in self.boundaries.get(k, {}).items():
            m[i][j] = v
        return m

    def verify(self) -> None:
        for k in self.boundaries:
            lo = self.boundaries.get(k - 1)
            hi = self.boundaries[k]
            if not lo or not hi:
                continue
            by_row: dict = defaultdict(list)
            for (i, j), v in lo.items():
                by_row[j].append((i, v))
            acc: dict = defaultdict(int)
            for (i, j), v in hi.items():
                for i2, v2 in by_row.get(i, ()):
                    acc[(i2, j)] += v * v2
            if any(acc.values()):
                raise ChainComplexError(f"d_{k - 1} d_{k} != 0")

    @classmethod
    def from_differential(cls, elements: Iterable, grade: Callable, diff: Callable, check: bool = True) -> "ChainComplexZ":
        bases: dict[int, list] = defaultdict(list)
        for e in elements:
            bases[grade(e)].append(e)
        index = {k: {e: i for i, e in enumerate(b)} for k, b in bases.items()}
        boundaries: dict[int, dict] = {}
        for k, b in bases.items():
            entries = {}
            for j, e in enumerate(b):
                for r, c in diff(e):
                    if r not in index.get(k - 1, {}):
                        raise ChainComplexError(f"boundary of {e} leaves the complex")
                    entries[(index[k - 1][r], j)] = c
            if entries:
                boundaries[k] = entries
        return cls(dict(bases), boundaries, check)


@dataclass
class HomologyGroup:
    degree: int
    betti: int
    torsion: list[int]

    def to_json(self) -> dict:
        return {"degree": self.degree, "betti": self.betti, "torsion": list(self.torsion)}


@dataclass
class HomologySummary:
    groups: list[HomologyGroup]

    def betti(self) -> dict[int, int]:
        return {g.degree: g.betti for g in self.groups if g.betti}

    def torsion(self) -> dict[int, list[int]]:
        return {g.degree: g.torsion for g in self.groups if g.torsion}

    def is_torsion_free(self) -> bool:
        return not self.torsion()

    def nonzero(self) -> list[HomologyGroup]:
        return [g for g in self.groups if g.betti or g.torsion]

    def __eq__(self, other) -> bool:
        return isinstance(other, HomologySummary) and (self.betti(), self.torsion()) == (other.betti(), other.torsion())

    def to_json(self) -> list[dict]:
        return [g.to_json() for g in self.nonzero()]


def homology_of(c: ChainComplexZ) -> HomologySummary:
    degs = c.degrees()
    if not degs:
        return HomologySummary([])
    facs: dict[int, list[int]] = {}
    for k in range(min(degs), max(degs) + 2):
        if c.rank(k) and c.rank(k - 1) and c.boundaries.get(k):
            facs[k] = invariant_factors(c.boundaries[k], c.rank(k - 1), c.rank(k))
        else:
            facs[k] = []
    groups = []
    for k in degs:
        cycles = c.rank(k) - len(facs.get(k, ()))
        image = facs.get(k + 1, [])
        groups.append(HomologyGroup(k, cycles - len(image), sorted(f for f in image if f > 1)))
    return HomologySummary(groups)


def reduced_homology_vanishes(c: ChainComplexZ) -> bool:
    """True when the homology is a single copy of Z in one degree, as for a contractible cell."""
    nz = homology_of(c).nonzero()
    return len(nz) == 1 and nz[0].betti == 1 and not nz[0].torsion


def _columns(c: ChainComplexZ, k: int) -> dict[int, list[tuple[int, int]]]:
    cols: dict = defaultdict(list)
    for (i, j), v in c.boundaries.get(k, {}).items():
        cols[j].append((i, v))
    return cols


def mapping_cone(src: ChainComplexZ, tgt: ChainComplexZ, f: Callable) -> ChainComplexZ:
    """Cone of a chain map given on basis elements; degree k is src_{k-1} + tgt_k."""
    bases: dict[int, list] = defaultdict(list)
    for k in sorted(set(src.bases) | {k - 1 for k in tgt.bases}):
        bases[k + 1].extend(("src", e) for e in src.bases.get(k, ()))
    for k, b in tgt.bases.items():
        bases[k].extend(("tgt", e) for e in b)
    index = {k: {e: i for i, e in enumerate(b)} for k, b in bases.items()}
    boundaries: dict[int, dict] = {}
    for k, b in bases.items():
        scols, tcols = _columns(src, k - 1), _columns(tgt, k)
        spos = {e: i for i, e in enumerate(src.bases.get(k - 1, ()))}
        tpos = {e: i for i, e in enumerate(tgt.bases.get(k, ()))}
        entries: dict = defaultdict(int)
        for j, (side, e) in enumerate(b):
            if side == "src":
                for i, v in scols.get(spos[e], ()):
                    entries[(index[k - 1][("src", src.bases[k - 2][i])], j)] -= v
                for r, v in f(e):
                    entries[(index[k - 1][("tgt", r)], j)] += v
            else:
                for i, v in tcols.get(tpos[e], ()):
                    entries[(index[k - 1][("tgt", tgt.bases[k - 1][i])], j)] += v
        entries = {ij: v for ij, v in entries.items() if v}
        if entries:
            boundaries[k] = entries
    return ChainComplexZ(dict(bases), boundaries)


# ---------------------------------------------------------------- the two operads


def boundary_matrices(operad: str, sig, convention: str = "standard") -> ChainComplexZ:
    from . import rbr, rs
    from .trees import Signature, degree

    sig = Signature.of(sig)
    if operad == "rbr":
        elems = rbr.enumerate_basis(sig)
        diff = lambda e: rbr.differential(e).terms.items()
    elif operad == "rs":
        elems = rs.enumerate_basis_rs(sig)
        diff = lambda e: rs.differential_rs(e).terms.items()
    else:
        raise ValueError(f"unknown operad {operad!r}")
    return ChainComplexZ.from_differential(elems, lambda e: degree(e, convention), diff)


@dataclass
class Comparison:
    sig: str
    rbr: HomologySummary
    rs: HomologySummary
    equal: bool
    phi_iso: bool
    torsion_free: bool

    def to_json(self) -> dict:
        return {
            "signature": self.sig,
            "rbr": self.rbr.to_json(),
            "rs": self.rs.to_json(),
            "equal_summaries": self.equal,
            "phi_quasi_isomorphism": self.phi_iso,
            "torsion_free": self.torsion_free,
        }


def compare_homology(sig, convention: str = "standard") -> Comparison:
    from . import rs

    c1 = boundary_matrices("rbr", sig, convention)
    c2 = boundary_matrices("rs", sig, convention)
    h1, h2 = homology_of(c1), homology_of(c2)
    cone = mapping_cone(c1, c2, lambda e: rs.phi(e).terms.items())
    hc = homology_of(cone)
    return Comparison(str(sig), h1, h2, h1 == h2, not hc.nonzero(), h1.is_torsion_free() and h2.is_torsion_free())
