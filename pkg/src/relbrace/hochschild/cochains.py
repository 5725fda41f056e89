"""Cochains of the deformation complex as multilinear maps on (sA, V).

A cochain is a sum of components, each a dense tensor keyed by
``(kind, p)``:

* ``("cl", p)``: (sA)^p -> sA, axes ``p`` inputs then the output, degree 1 - p;
* ``("v", p)``: (sA)^p -> V, degree -p, p >= 1;
* ``("end", p)``: (sA)^p (x) V -> V, axes ``p`` inputs, the V input, the output, degree -p.

The ``v`` and ``end`` components together are maps from words in sA to
End+(V) = V x| End(V).  Every sign comes from one rule: moving a map of
degree d past an element of degree e costs (-1)^(d e).  Letters of sA are
odd and V is even, so inserting g into input slot i of f costs
(-1)^(|g| i).  Components whose word length exceeds the truncation bound N
are dropped; every operation here only raises word length, so all results
are exact up to N.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .algebra import AffineAction, EndPlusElement, Report, end_plus_product
from .field import Field

CL, VEC, END = "cl", "v", "end"
OPEN_KINDS = (VEC, END)


class TruncationError(ValueError):
    pass


class NotMaurerCartan(ValueError):
    pass


def key_degree(key) -> int:
    kind, p = key
    return 1 - p if kind == CL else -p


def key_output(key) -> str:
    return "c" if key[0] == CL else "o"


@dataclass(frozen=True)
class Space:
    field: Field
    dim_A: int
    dim_V: int
    N: int = 4

    @classmethod
    def of(cls, data: AffineAction, N: int = 4) -> "Space":
        return cls(data.field, data.dim_A, data.dim_V, N)

    def shape(self, key) -> tuple:
        kind, p = key
        a = (self.dim_A,) * p
        if kind == CL:
            return a + (self.dim_A,)
        if kind == VEC:
            return a + (self.dim_V,)
        return a + (self.dim_V, self.dim_V)

    def keys(self, part: str = "all", degree: int | None = None) -> list:
        out = []
        if part in ("all", "closed"):
            out += [(CL, p) for p in range(1, self.N + 1)]
        if part in ("all", "open"):
            out += [(VEC, p) for p in range(1, self.N + 1)]
            out += [(END, p) for p in range(0, self.N + 1)]
        if degree is not None:
            out = [k for k in out if key_degree(k) == degree]
        return out

    def zero(self) -> "Cochain":
        return Cochain(self, {})

    def random(self, rng: np.random.Generator, degree: int, part: str = "all", max_arity: int | None = None) -> "Cochain":
        keys = [k for k in self.keys(part, degree) if max_arity is None or k[1] <= max_arity]
        return Cochain(self, {k: self.field.random(self.shape(k), rng) for k in keys})

    def basis(self, keys) -> list[tuple]:
        """Coordinates (key, index) over the given components, in a fixed order."""
        return [(k, idx) for k in keys for idx in np.ndindex(*self.shape(k))]

    def unit_cochain(self) -> "Cochain":
        """The open cochain concentrated on the empty word with value (0, id)."""
        F = self.field
        return Cochain(self, {(END, 0): F.array(np.eye(self.dim_V, dtype=int))})


class Cochain:
    """A (closed, open) pair of truncated cochains, i.e. an element of the deformation complex."""

    __slots__ = ("space", "comps")

    def __init__(self, space: Space, comps: dict):
        self.space = space
        F = space.field
        self.comps = {}
        for k, t in comps.items():
            if k[1] > space.N:
                continue
            t = F.reduce(t)
            if t.shape != space.shape(k):
                raise TruncationError(f"component {k} has shape {t.shape}, expected {space.shape(k)}")
            if not F.is_zero(t):
                self.comps[k] = t

    # linear structure
    def __add__(self, other: "Cochain") -> "Cochain":
        _same(self, other)
        out = dict(self.comps)
        for k, t in other.comps.items():
            out[k] = out[k] + t if k in out else t
        return Cochain(self.space, out)

    def __neg__(self) -> "Cochain":
        return Cochain(self.space, {k: -t for k, t in self.comps.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + (-other)

    def scale(self, c) -> "Cochain":
        c = self.space.field.scalar(c)
        return Cochain(self.space, {k: t * c for k, t in self.comps.items()})

    def __rmul__(self, c) -> "Cochain":
        return self.scale(c)

    def __eq__(self, other) -> bool:
        return isinstance(other, Cochain) and not (self - other).comps

    def __bool__(self) -> bool:
        return bool(self.comps)

    def __repr__(self) -> str:
        return f"Cochain({sorted(self.comps)})"

    # parts and grading
    @property
    def closed(self) -> "Cochain":
        return Cochain(self.space, {k: t for k, t in self.comps.items() if k[0] == CL})

    @property
    def open(self) -> "Cochain":
        return Cochain(self.space, {k: t for k, t in self.comps.items() if k[0] != CL})

    def degrees(self) -> set[int]:
        return {key_degree(k) for k in self.comps}

    def degree(self) -> int:
        d = self.degrees()
        if len(d) > 1:
            raise ValueError(f"inhomogeneous cochain with degrees {sorted(d)}")
        return d.pop() if d else 0

    def truncate(self, N: int) -> "Cochain":
        return Cochain(self.space, {k: t for k, t in self.comps.items() if k[1] <= N})

    def vector(self, coords) -> list:
        F = self.space.field
        zero = F.scalar(0)
        return [self.comps[k][idx] if k in self.comps else zero for k, idx in coords]

    @classmethod
    def from_coordinate(cls, space: Space, key, idx) -> "Cochain":
        t = space.field.zeros(space.shape(key))
        t[idx] = 1
        return cls(space, {key: t})

    def first_nonzero(self):
        for k in sorted(self.comps):
            idx = np.argwhere(self.space.field.reduce(self.comps[k]) != 0)[0]
            return k, tuple(int(i) for i in idx)
        return None


def _same(a: Cochain, b: Cochain) -> None:
    if a.space != b.space:
        raise TruncationError(f"cochains live in different spaces {a.space} and {b.space}")


# ---------------------------------------------------------------- partial composition


def _insert(space: Space, xk, xt, i: int, yk, yt):
    """Component of x o_i y as (key, tensor), or None when colors clash or N is exceeded."""
    kind, p = xk
    ykind, q = yk
    if i < p:
        if ykind != CL:
            return None
        rk = (kind, p + q - 1)
    elif kind == END and i == p:
        if ykind == CL:
            return None
        rk = (ykind, p + q)
    else:
        return None
    if rk[1] > space.N:
        return None
    ny = yt.ndim - 1
    r = space.field.tensordot(yt, xt, ([ny], [i]))
    perm = list(range(ny, ny + i)) + list(range(ny)) + list(range(ny + i, r.ndim))
    r = np.transpose(r, perm)
    if key_degree(yk) * i % 2:
        r = -r
    return rk, r


def _n_slots(key) -> int:
    return key[1] + (1 if key[0] == END else 0)


def _accumulate(space: Space, pieces) -> Cochain:
    acc: dict = {}
    for k, t in pieces:
        acc[k] = acc[k] + t if k in acc else t
    return Cochain(space, acc)


def circle(x: Cochain, y: Cochain) -> Cochain:
    """Pre-Lie product: insert y into every input of x that has y's output color, summed."""
    _same(x, y)
    sp = x.space
    pieces = []
    for xk, xt in x.comps.items():
        for yk, yt in y.comps.items():
            for i in range(_n_slots(xk)):
                r = _insert(sp, xk, xt, i, yk, yt)
                if r is not None:
                    pieces.append(r)
    return _accumulate(sp, pieces)


pre_lie_product = circle


def graft(a: Cochain, b: Cochain) -> Cochain:
    """Insert b into the open input of a (zero on components without one)."""
    _same(a, b)
    sp = a.space
    pieces = []
    for xk, xt in a.comps.items():
        if xk[0] != END:
            continue
        for yk, yt in b.comps.items():
            r = _insert(sp, xk, xt, xk[1], yk, yt)
            if r is not None:
                pieces.append(r)
    return _accumulate(sp, pieces)


def convolution(phi: Cochain, psi: Cochain) -> Cochain:
    """Convolution of open cochains with values in End+(V); equals grafting into the V input."""
    if phi.closed or psi.closed:
        raise TruncationError("convolution takes open cochains")
    return graft(phi, psi)


def convolution_oracle(phi: Cochain, psi: Cochain) -> Cochain:
    """The same product computed word by word: split the word, evaluate, multiply in End+(V)."""
    sp = phi.space
    F = sp.field
    dV = sp.dim_V
    out: dict = {}

    def value(c: Cochain, word):
        m = len(word)
        v = c.comps.get((VEC, m))
        e = c.comps.get((END, m))
        vv = v[word] if v is not None else F.zeros(dV)
        # stored as [.., V in, V out]; End+ wants [row=out, col=in]
        ee = e[word].T if e is not None else F.zeros((dV, dV))
        return EndPlusElement(vv, ee, F)

    for m in range(sp.N + 1):
        for word in np.ndindex(*((sp.dim_A,) * m)):
            tot_v, tot_e = F.zeros(dV), F.zeros((dV, dV))
            for i in range(m + 1):
                # the second factor has degree -(m - i) and moves past i odd letters
                prod = end_plus_product(value(phi, word[:i]), value(psi, word[i:]))
                s = -1 if i * (m - i) % 2 else 1
                tot_v = tot_v + s * prod.v
                tot_e = tot_e + s * prod.phi
            if m >= 1:
                out.setdefault((VEC, m), F.zeros(sp.shape((VEC, m))))[word] = F.reduce(tot_v)
            out.setdefault((END, m), F.zeros(sp.shape((END, m))))[word] = F.reduce(tot_e.T)
    return Cochain(sp, out)


def bracket(x: Cochain, y: Cochain) -> Cochain:
    """[x, y] = x o y - (-1)^(|x||y|) y o x, extended bilinearly over homogeneous parts."""
    out = x.space.zero()
    for dx, xs in _homogeneous_parts(x):
        for dy, ys in _homogeneous_parts(y):
            t = circle(xs, ys)
            u = circle(ys, xs)
            out = out + (t + u if dx * dy % 2 else t - u)
    return out


def _homogeneous_parts(x: Cochain):
    by: dict = defaultdict(dict)
    for k, t in x.comps.items():
        by[key_degree(k)][k] = t
    return [(d, Cochain(x.space, c)) for d, c in sorted(by.items())]


def brace(x: Cochain, ys: list[Cochain]) -> Cochain:
    """x{y_1, ..., y_k}: insert the closed cochains y_i into distinct closed inputs of x, in order."""
    sp = x.space
    if not ys:
        return x
    for y in ys:
        if y.open:
            raise TruncationError("brace arguments have closed output")
    pieces = []
    for xk, xt in x.comps.items():
        p = xk[1]
        for choice in product(*(list(y.comps.items()) for y in ys)):
            for slots in combinations(range(p), len(ys)):
                cur = (xk, xt)
                shift = 0
                for (yk, yt), j in zip(choice, slots):
                    cur = _insert(sp, cur[0], cur[1], j + shift, yk, yt)
                    if cur is None:
                        break
                    shift += yk[1] - 1
                if cur is not None:
                    pieces.append(cur)
    return _accumulate(sp, pieces)


# ---------------------------------------------------------------- Maurer-Cartan element


def mc_element(data: AffineAction, N: int = 4) -> Cochain:
    """Minus the multiplication on sA and minus (f, rho) on the open side."""
    sp = Space.of(data, N)
    comps = {}
    if data.dim_A:
        comps[(CL, 2)] = -data.algebra.mult
        if data.dim_V:
            comps[(VEC, 1)] = -data.f
            comps[(END, 1)] = -np.transpose(data.rho, (0, 2, 1))
    return Cochain(sp, comps)


def mc_check(phi: Cochain) -> Report:
    """Degree -1, the support conditions, and phi o phi = 0 (the internal differential is zero)."""
    checks, witness = {}, {}
    checks["degree"] = phi.degrees() <= {-1}
    checks["closed_support"] = (CL, 1) not in phi.comps
    checks["open_support"] = (END, 0) not in phi.comps
    sq = circle(phi, phi)
    checks["equation"] = not sq
    if sq:
        k, idx = sq.first_nonzero()
        witness["equation"] = {"component": list(k), "index": list(idx), "value": str(sq.comps[k][idx])}
    return Report(all(checks.values()), checks, witness)


def def_differential(phi: Cochain, psi: Cochain, check: bool = True) -> Cochain:
    """delta_phi(psi) = [phi, psi]."""
    if check and not mc_check(phi):
        raise NotMaurerCartan("phi fails the Maurer-Cartan equation")
    return bracket(phi, psi)


def closed_differential(phi: Cochain, psi: Cochain) -> Cochain:
    return bracket(phi.closed, psi.closed)


def open_differential(phi: Cochain, psi: Cochain) -> Cochain:
    """The part of delta_phi that maps open cochains to open cochains."""
    return bracket(phi, psi.open).open


def whistle_map(phi: Cochain, psi: Cochain) -> Cochain:
    """psi_cl -> phi_op o psi_cl, the off-diagonal block of delta_phi."""
    return circle(phi.open, psi.closed)


# ---------------------------------------------------------------- matrices


def matrix(fn, space: Space, src_keys, dst_keys) -> list[list]:
    """Rows = destination coordinates, columns = source coordinates."""
    src = space.basis(src_keys)
    dst = space.basis(dst_keys)
    cols = [fn(Cochain.from_coordinate(space, k, idx)).vector(dst) for k, idx in src]
    return [list(r) for r in zip(*cols)] if cols else [[] for _ in dst]
