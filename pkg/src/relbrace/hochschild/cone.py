"""The deformation complex as a mapping cone, and its comparison with classical Hochschild cochains.

Degrees are those of the deformation complex: the differential lowers degree
by one and raises word length by one, so cutting at word length N leaves a
quotient complex and every rank below is exact for that truncation.
"""
from __future__ import annotations

import numpy as np

from .algebra import AffineAction, Report
from .classical import end_plus_bimodule, hochschild_d, regular_bimodule
from .cochains import (
    CL,
    END,
    VEC,
    Cochain,
    Space,
    bracket,
    circle,
    closed_differential,
    convolution,
    convolution_oracle,
    mc_element,
    open_differential,
)


def _matrix(F, fn, sp: Space, src_keys, dst_keys) -> np.ndarray:
    src, dst = sp.basis(src_keys), sp.basis(dst_keys)
    M = F.zeros((len(dst), len(src)))
    for j, (k, idx) in enumerate(src):
        col = fn(Cochain.from_coordinate(sp, k, idx)).vector(dst)
        for i, x in enumerate(col):
            M[i, j] = x
    return M


def _rank(F, M) -> int:
    return F.rank(M) if M.size else 0


def degree_range(sp: Space) -> range:
    return range(-sp.N, 1)


def cone_check(data: AffineAction, N: int = 3) -> Report:
    """Lower-triangular shape, the off-diagonal block as an (anti-)chain map, and the long exact sequence."""
    F = data.field
    eta = mc_element(data, N)
    sp = eta.space
    full = lambda x: bracket(eta, x)
    off = lambda x: circle(eta.open, x.closed)
    checks, witness = {}, {}
    cl = {k: sp.keys("closed", k) for k in range(-N - 1, 2)}
    op = {k: sp.keys("open", k) for k in range(-N - 1, 2)}

    tri, block, anti = True, True, True
    D_cl, D_op, F_blk = {}, {}, {}
    for k in degree_range(sp):
        # delta(0, psi_op) has no closed part
        M = _matrix(F, full, sp, op[k], cl[k - 1])
        if M.size and not F.is_zero(M):
            tri = False
            witness.setdefault("lower_triangular", k)
        D_cl[k] = _matrix(F, lambda x: closed_differential(eta, x), sp, cl[k], cl[k - 1])
        D_op[k] = _matrix(F, lambda x: open_differential(eta, x), sp, op[k], op[k - 1])
        F_blk[k] = _matrix(F, off, sp, cl[k], op[k - 1])
        # the full differential is exactly the block matrix
        both = _matrix(F, full, sp, cl[k], cl[k - 1] + op[k - 1])
        want = np.concatenate([D_cl[k], F_blk[k]]) if both.size else both
        if both.size and not F.is_zero(both - want):
            block = False
    for k in degree_range(sp):
        if k - 1 in F_blk and F_blk[k].size and D_op[k - 1].size and F_blk[k - 1].size and D_cl[k].size:
            lhs = F.matmul(D_op[k - 1], F_blk[k])
            rhs = F.matmul(F_blk[k - 1], D_cl[k])
            if not F.is_zero(lhs + rhs):
                anti = False
                witness.setdefault("anti_chain_map", k)
    checks["lower_triangular"] = tri
    checks["block_form"] = block
    checks["anti_chain_map"] = anti

    # homology of the three complexes and the rank of the induced map
    def hdims(D, spaces):
        out = {}
        for k in degree_range(sp):
            dim = len(sp.basis(spaces[k]))
            r_out = _rank(F, D.get(k, F.zeros((0, 0))))
            r_in = _rank(F, D.get(k + 1, F.zeros((0, 0))))
            out[k] = dim - r_out - r_in
        return out

    H_cl = hdims(D_cl, cl)
    H_op = hdims(D_op, op)
    D_def = {}
    for k in degree_range(sp):
        D_def[k] = _matrix(F, full, sp, cl[k] + op[k], cl[k - 1] + op[k - 1])
    alls = {k: cl[k] + op[k] for k in range(-N - 1, 2)}
    H_def = hdims(D_def, alls)

    def induced_rank(k):
        # F_*: H_k(closed) -> H_{k-1}(open)
        if not F_blk[k].size:
            return 0
        Z = F.nullspace(D_cl[k], D_cl[k].shape[1])
        if not Z.size:
            return 0
        img = F.matmul(F_blk[k], Z.T).T
        B = D_op[k].T
        return _rank(F, np.concatenate([B, img])) - _rank(F, B)

    rk = {k: induced_rank(k) for k in degree_range(sp)}
    rk[1] = 0
    les = all(H_def[k] == (H_op[k] - rk[k + 1]) + (H_cl[k] - rk[k]) for k in degree_range(sp))
    checks["long_exact_sequence"] = les
    chi = lambda H: sum((-1) ** (k % 2) * v for k, v in H.items())
    chains = lambda spaces: sum((-1) ** (k % 2) * len(sp.basis(spaces[k])) for k in degree_range(sp))
    checks["euler"] = chi(H_def) == chi(H_cl) + chi(H_op) == chains(alls)
    rep = Report(all(checks.values()), checks, witness)
    rep.checks["H_def"] = H_def
    rep.checks["H_closed"] = H_cl
    rep.checks["H_open"] = H_op
    rep.checks["chi"] = {"def": chi(H_def), "closed": chi(H_cl), "open_shifted": -chi(H_op)}
    return rep


# ---------------------------------------------------------------- two-oracle agreement


def _end_plus_tensor(sp: Space, c: Cochain, m: int) -> np.ndarray:
    """The End+(V)-valued tensor of word length m of an open cochain (v part, then the matrix row-major)."""
    F, dV = sp.field, sp.dim_V
    e = c.comps.get((END, m), F.zeros(sp.shape((END, m))))
    e = np.swapaxes(e, -1, -2).reshape(e.shape[:-2] + (dV * dV,))
    v = c.comps.get((VEC, m), F.zeros(sp.shape((VEC, m)))) if m else F.zeros((dV,))
    return np.concatenate([v, e], axis=-1)


def oracle_agreement(data: AffineAction, N: int = 4) -> Report:
    """On full bases: the closed part of delta is (-1)^n d_H on Hom(A^n, A), the open part (-1)^(m+1) d_H with End+(V) coefficients."""
    F = data.field
    eta = mc_element(data, N)
    sp = eta.space
    A, E = regular_bimodule(data), end_plus_bimodule(data)
    checks, witness = {"closed": True, "open": True}, {}
    for n in range(1, N):
        for k, idx in sp.basis([(CL, n)]):
            psi = Cochain.from_coordinate(sp, k, idx)
            lhs = closed_differential(eta, psi).comps.get((CL, n + 1), F.zeros(sp.shape((CL, n + 1))))
            rhs = hochschild_d(A, psi.comps[k])
            if not F.is_zero(lhs - (rhs if n % 2 == 0 else -rhs)):
                checks["closed"] = False
                witness.setdefault("closed", [n, list(idx)])
    for m in range(0, N):
        keys = [(VEC, m), (END, m)] if m else [(END, 0)]
        for k, idx in sp.basis(keys):
            psi = Cochain.from_coordinate(sp, k, idx)
            lhs = _end_plus_tensor(sp, open_differential(eta, psi), m + 1)
            rhs = hochschild_d(E, _end_plus_tensor(sp, psi, m))
            if not F.is_zero(lhs - (rhs if (m + 1) % 2 == 0 else -rhs)):
                checks["open"] = False
                witness.setdefault("open", [m, list(k), list(idx)])
    return Report(all(checks.values()), checks, witness)


# ---------------------------------------------------------------- random-sample identities


def identity_samples(data: AffineAction, samples: int = 100, seed: int = 0, N: int = 4) -> Report:
    """The deformation-complex identities on random homogeneous cochains.

    Each identity is tried on ``samples`` independent draws; the report counts
    failures per identity and records the first failing draw.
    """
    F = data.field
    eta = mc_element(data, N)
    sp = eta.space
    A, E = regular_bimodule(data), end_plus_bimodule(data)
    rng = np.random.default_rng(seed)
    fails = {k: 0 for k in ("pre_lie", "d_squared", "lower_triangular", "block_form", "closed_oracle", "open_oracle", "convolution")}
    witness = {}

    def fail(name, info):
        fails[name] += 1
        witness.setdefault(name, info)

    degs = lambda size: [int(d) for d in rng.integers(-N + 1, 1, size=size)]
    for t in range(samples):
        dx, dy, dz = degs(3)
        x, y, z = sp.random(rng, dx), sp.random(rng, dy), sp.random(rng, dz)
        lhs = circle(circle(x, y), z) - circle(x, circle(y, z))
        rhs = circle(circle(x, z), y) - circle(x, circle(z, y))
        if lhs != rhs.scale(-1 if dy * dz % 2 else 1):
            fail("pre_lie", [t, dx, dy, dz])

        psi = sp.random(rng, dx)
        d = bracket(eta, psi)
        if bracket(eta, d):
            fail("d_squared", [t, dx])
        if bracket(eta, psi.open).closed:
            fail("lower_triangular", [t, dx])
        want = closed_differential(eta, psi) + circle(eta.open, psi.closed) + open_differential(eta, psi)
        if d != want:
            fail("block_form", [t, dx])

        n = int(rng.integers(1, N))
        c = sp.random(rng, 1 - n, "closed", max_arity=n)
        got = closed_differential(eta, c).comps.get((CL, n + 1), F.zeros(sp.shape((CL, n + 1))))
        ref = hochschild_d(A, c.comps.get((CL, n), F.zeros(sp.shape((CL, n)))))
        if not F.is_zero(got - (ref if n % 2 == 0 else -ref)):
            fail("closed_oracle", [t, n])

        m = int(rng.integers(0, N))
        o = sp.random(rng, -m, "open", max_arity=m)
        got = _end_plus_tensor(sp, open_differential(eta, o), m + 1)
        ref = hochschild_d(E, _end_plus_tensor(sp, o, m))
        if not F.is_zero(got - (ref if (m + 1) % 2 == 0 else -ref)):
            fail("open_oracle", [t, m])

        a, b = sp.random(rng, dx, "open"), sp.random(rng, dy, "open")
        if convolution(a, b) != convolution_oracle(a, b):
            fail("convolution", [t, dx, dy])
    checks = {k: v == 0 for k, v in fails.items()}
    checks["samples"] = samples
    return Report(all(v == 0 for v in fails.values()), checks, witness)
