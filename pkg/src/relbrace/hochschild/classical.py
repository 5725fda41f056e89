"""Classical Hochschild cochains C^n(A, M) = Hom(A^n, M) for a bimodule M.

This is coded directly from the textbook differential and serves as the
independent oracle for the closed and open parts of the deformation complex.
The normalized variant (cochains vanishing when an argument is the unit)
stands in for the bar resolution of a unital algebra.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..homology import HomologyGroup, HomologySummary
from .algebra import AffineAction, EndPlusElement, Report, end_plus_product
from .field import Field


class BoundExceeded(ValueError):
    pass


MAX_DEGREE = 6


@dataclass
class Bimodule:
    """``left[a]`` and ``right[a]`` are matrices on M; ``mult`` is the product of A."""

    field: Field
    mult: np.ndarray
    left: np.ndarray
    right: np.ndarray
    name: str = ""

    @property
    def dim_A(self) -> int:
        return self.mult.shape[0]

    @property
    def dim_M(self) -> int:
        return self.left.shape[1]


def regular_bimodule(data: AffineAction) -> Bimodule:
    m = data.algebra.mult
    left = np.transpose(m, (0, 2, 1))  # left[a][k][j] = coeff of e_k in e_a e_j
    right = np.transpose(m, (1, 2, 0))  # right[a][k][j] = coeff of e_k in e_j e_a
    return Bimodule(data.field, m, left, right, "A")


def end_plus_structure(data: AffineAction) -> np.ndarray:
    """Product tensor of End+(V) on flat coordinates (v, then phi row-major)."""
    F, d = data.field, data.dim_V
    D = d + d * d
    P = F.zeros((D, D, D))
    basis = [_flat_basis(F, d, i) for i in range(D)]
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            P[i, j] = end_plus_product(x, y).flat()
    return P


def _flat_basis(F: Field, d: int, i: int) -> EndPlusElement:
    vec = F.zeros(d + d * d)
    vec[i] = 1
    return EndPlusElement(vec[:d], vec[d:].reshape(d, d), F)


def alpha_matrix(data: AffineAction) -> np.ndarray:
    """alpha[k][a]: coordinate k of (f(e_a), rho(e_a)) in End+(V)."""
    F = data.field
    cols = [data.alpha(F.array([int(i == a) for i in range(data.dim_A)])).flat() for a in range(data.dim_A)]
    return F.array(np.array(cols, dtype=object).T) if cols else F.zeros((data.dim_V + data.dim_V ** 2, 0))


def end_plus_bimodule(data: AffineAction) -> Bimodule:
    F = data.field
    P = end_plus_structure(data)
    al = alpha_matrix(data)
    # left[a][k][j] = sum_i al[i,a] P[i,j,k]
    left = np.transpose(F.tensordot(al, P, ([0], [0])), (0, 2, 1))
    right = np.transpose(F.tensordot(al, P, ([0], [1])), (0, 2, 1))
    return Bimodule(F, data.algebra.mult, left, right, "EndPlus")


def bimodule(data: AffineAction, coefficients: str) -> Bimodule:
    c = coefficients.lower()
    if c in ("a", "algebra", "self"):
        return regular_bimodule(data)
    if c in ("endplus", "end+", "end_plus"):
        return end_plus_bimodule(data)
    raise ValueError(f"unknown coefficients {coefficients!r}")


# ---------------------------------------------------------------- the differential


def hochschild_d(M: Bimodule, g: np.ndarray) -> np.ndarray:
    """(dg)(a_1..a_{n+1}) = a_1 g(a_2..) + sum_i (-1)^i g(.., a_i a_{i+1}, ..) + (-1)^(n+1) g(a_1..a_n) a_{n+1}."""
    F = M.field
    n = g.ndim - 1
    out = np.moveaxis(F.tensordot(M.left, g, ([2], [n])), 1, -1)
    for i in range(1, n + 1):
        t = F.tensordot(M.mult, g, ([2], [i - 1]))  # [a_i, a_{i+1}, g axes without i-1]
        perm = list(range(2, 2 + i - 1)) + [0, 1] + list(range(2 + i - 1, t.ndim))
        t = np.transpose(t, perm)
        out = out - t if i % 2 else out + t
    t = F.tensordot(g, M.right, ([n], [2]))
    out = out - t if (n + 1) % 2 else out + t
    return F.reduce(out)


def _cochain_shape(M: Bimodule, n: int) -> tuple:
    return (M.dim_A,) * n + (M.dim_M,)


def _unit_tensor(F: Field, shape, flat_index: int) -> np.ndarray:
    t = F.zeros(int(np.prod(shape)))
    t[flat_index] = 1
    return t.reshape(shape)


def d_matrix(M: Bimodule, n: int) -> np.ndarray:
    """Matrix of d: C^n -> C^(n+1) on the standard tensor bases (rows index C^(n+1))."""
    F = M.field
    shape = _cochain_shape(M, n)
    dim = int(np.prod(shape))
    cols = [hochschild_d(M, _unit_tensor(F, shape, i)).reshape(-1) for i in range(dim)]
    out = F.zeros((int(np.prod(_cochain_shape(M, n + 1))), dim))
    for i, c in enumerate(cols):
        out[:, i] = c
    return out


def cohomology_dims(M: Bimodule, max_degree: int, normalized: bool = False, reduced_open: bool = False) -> dict[int, int]:
    """dim HH^n(A, M) for 0 <= n <= max_degree.

    ``normalized`` restricts to cochains vanishing when some argument is the
    unit.  ``reduced_open`` drops the V part in degree 0, leaving End(V)
    (the complex seen by the open side of the deformation complex).
    """
    if max_degree > MAX_DEGREE:
        raise BoundExceeded(f"degree {max_degree} exceeds the bound {MAX_DEGREE}")
    F = M.field
    subs = {}
    for n in range(max_degree + 1):
        dim = int(np.prod(_cochain_shape(M, n)))
        S = normalized_basis(M, n) if normalized else None
        if reduced_open and n == 0:
            dV = _end_plus_dims(M.dim_M)
            S = F.zeros((dim - dV, dim))
            for j in range(dim - dV):
                S[j, dV + j] = 1
        subs[n] = S
    ranks = {-1: 0}
    sizes = {}
    for n in range(max_degree + 1):
        D = d_matrix(M, n)
        S = subs[n]
        sizes[n] = D.shape[1] if S is None else S.shape[0]
        img = D if S is None else F.matmul(D, S.T)
        ranks[n] = F.rank(img) if img.size else 0
    return {n: sizes[n] - ranks[n] - ranks[n - 1] for n in range(max_degree + 1)}


def _end_plus_dims(D: int) -> int:
    d = int(round((-1 + (1 + 4 * D) ** 0.5) / 2))
    if d + d * d != D:
        raise ValueError(f"{D} is not of the form d + d^2")
    return d


def normalized_basis(M: Bimodule, n: int) -> np.ndarray:
    """Rows span the cochains g with g(.., 1, ..) = 0 in every slot; needs a unit."""
    F = M.field
    from .algebra import Algebra

    u = Algebra(F, M.mult).unit()
    if u is None:
        raise ValueError("normalized cochains need a unital algebra")
    shape = _cochain_shape(M, n)
    dim = int(np.prod(shape))
    blocks = []
    for slot in range(n):
        # evaluation at the unit in this slot, as a map C^n -> C^(n-1)
        ev = F.zeros((dim // M.dim_A, dim))
        for i in range(dim):
            ev[:, i] = F.tensordot(u, _unit_tensor(F, shape, i), ([0], [slot])).reshape(-1)
        blocks.append(ev)
    if not blocks:
        return F.nullspace(F.zeros((0, dim)), dim)
    return F.nullspace(np.concatenate(blocks), dim)


def hochschild_cohomology(data: AffineAction, coefficients: str = "A", max_degree: int = 4, method: str = "classical") -> HomologySummary:
    M = bimodule(data, coefficients)
    dims = cohomology_dims(M, max_degree, normalized=(method == "normalized"))
    return HomologySummary([HomologyGroup(n, d, []) for n, d in sorted(dims.items())])


hochschild_homology = hochschild_cohomology


# ---------------------------------------------------------------- the whistle on cohomology


def cup(M: Bimodule, P: np.ndarray, g: np.ndarray, h: np.ndarray) -> np.ndarray:
    """(g cup h)(a, b) = g(a) h(b) using the product tensor P of the coefficient algebra."""
    F = M.field
    t = F.tensordot(g, P, ([g.ndim - 1], [0]))  # [a.., y, z]
    return F.tensordot(h, t, ([h.ndim - 1], [t.ndim - 2])).transpose(
        list(range(h.ndim - 1, h.ndim - 1 + g.ndim - 1)) + list(range(h.ndim - 1)) + [h.ndim - 1 + g.ndim - 1]
    )


def push_forward(al: np.ndarray, g: np.ndarray, F: Field) -> np.ndarray:
    return F.tensordot(g, al, ([g.ndim - 1], [1]))


def cocycle_representatives(M: Bimodule, n: int) -> list[np.ndarray]:
    """Cocycles whose classes form a basis of HH^n(A, M)."""
    F = M.field
    shape = _cochain_shape(M, n)
    dim = int(np.prod(shape))
    Z = F.nullspace(d_matrix(M, n), dim)
    span = d_matrix(M, n - 1).T if n else F.zeros((0, dim))
    r0 = F.rank(span) if span.size else 0
    reps = []
    for z in Z:
        trial = np.concatenate([span, z[None]])
        r = F.rank(trial)
        if r > r0:
            reps.append(z.reshape(shape))
            span, r0 = trial, r
    return reps


def _is_coboundary(M: Bimodule, n: int, g: np.ndarray) -> bool:
    F = M.field
    if n == 0:
        return F.is_zero(g)
    B = d_matrix(M, n - 1).T
    return F.rank(np.concatenate([B, g.reshape(1, -1)])) == F.rank(B)


def whistle_check(data: AffineAction, max_degree: int = 2) -> Report:
    """alpha_*: C(A, A) -> C(A, End+(V)) is a chain map, multiplicative for cup products.

    On HH^0 = Z(A) this is z -> alpha(z); in degrees p + q <= max_degree the
    pushed-forward cup product of representatives equals the cup product of
    pushed-forward representatives.
    """
    F = data.field
    A = regular_bimodule(data)
    E = end_plus_bimodule(data)
    P_A = data.algebra.mult
    P_E = end_plus_structure(data)
    al = alpha_matrix(data)
    checks, witness = {}, {}
    ok = True
    for n in range(max_degree + 1):
        shape = _cochain_shape(A, n)
        for i in range(int(np.prod(shape))):
            g = _unit_tensor(F, shape, i)
            if not F.is_zero(hochschild_d(E, push_forward(al, g, F)) - push_forward(al, hochschild_d(A, g), F)):
                ok = False
                witness.setdefault("chain_map", [n, i])
                break
    checks["chain_map"] = ok

    center = data.algebra.center_basis()
    reps0 = cocycle_representatives(A, 0)
    checks["center_is_HH0"] = len(center) == len(reps0)
    ok_c, ok_m = True, True
    for z in center:
        az = push_forward(al, z, F)
        if not F.is_zero(hochschild_d(E, az)):
            ok_c = False
        for w in center:
            lhs = push_forward(al, data.algebra.times(z, w), F)
            rhs = F.tensordot(F.tensordot(az, P_E, ([0], [0])), push_forward(al, w, F), ([0], [0]))
            if not F.is_zero(lhs - rhs):
                ok_m = False
    checks["center_to_cocycles"] = ok_c
    checks["center_multiplicative"] = ok_m

    reps = {n: cocycle_representatives(A, n) for n in range(max_degree + 1)}
    ok_cup, ok_cls = True, True
    pairs = 0
    for p in range(max_degree + 1):
        for q in range(max_degree + 1 - p):
            for g in reps[p]:
                for h in reps[q]:
                    pairs += 1
                    gh = cup(A, P_A, g, h)
                    lhs = push_forward(al, gh, F)
                    rhs = cup(E, P_E, push_forward(al, g, F), push_forward(al, h, F))
                    if not F.is_zero(lhs - rhs):
                        ok_cup = False
                        witness.setdefault("cup", [p, q])
                    if not F.is_zero(hochschild_d(E, lhs)):
                        ok_cls = False
    checks["cup_multiplicative"] = ok_cup
    checks["images_are_cocycles"] = ok_cls
    images = {}
    for n, rs in reps.items():
        images[n] = sum(1 for g in rs if not _is_coboundary(E, n, push_forward(al, g, F)))
    rep = Report(all(checks.values()), checks, witness)
    rep.checks["pairs_tested"] = pairs
    rep.checks["nonzero_images"] = images
    return rep
