"""Face posets of tree cells and their nested-interval descriptions.

The order on basis elements is reachability under blow-up components.  The
cells of the corollas are described by nested families of intervals:

* a round corolla with ``k`` inputs by families over ``plain(k)`` (associahedron),
* a closed corolla ``M_{1,n}`` by families of arcs over the cyclic set ``S(n)``
  (cyclohedron),
* a square corolla by families over ``I_left(n)`` through the unit grafting ``natural_map``,
* an open corolla by families over ``I(n)`` through ``flat_map``.

Unit leaves produced by the grafting maps are ordinary closed leaves whose
labels are reserved: ``natural_map`` shifts every label up by one and puts the
unit at label 1 (or at ``n + 1`` for the right-hand variant), and
``flat_map`` turns the open label 1 into the left unit and appends the right
unit at ``n + 2``.
"""
from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

from . import rs
from .homology import ChainComplexZ, homology_of, reduced_homology_vanishes
from .rbr import _expand, differential, generator
from .trees import (
    CLOSED,
    OPEN,
    ROUND,
    SQUARE,
    BasisElement,
    Color,
    Signature,
    SignatureError,
    Tree,
    TreeError,
    validate,
)


class PosetError(ValueError):
    pass


class NotNestedError(PosetError):
    pass


class DomainError(PosetError):
    """Input outside the domain of a grafting bijection."""


class BoundExceeded(PosetError):
    pass


MAX_CELL_INPUTS = 7


# ---------------------------------------------------------------- order on trees


@lru_cache(maxsize=None)
def down_set(e: BasisElement) -> frozenset[BasisElement]:
    """Everything reachable from ``e`` by iterated blow-up components, ``e`` included."""
    seen = {e}
    todo = [e]
    while todo:
        x = todo.pop()
        for r, _, _ in _expand(x):
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return frozenset(seen)


def _same_sig(a, b) -> None:
    if a.sig != b.sig:
        raise SignatureError(f"cannot compare elements of {a.sig} and {b.sig}")


def leq_T(a: BasisElement, b: BasisElement) -> bool:
    _same_sig(a, b)
    return a in down_set(b)


@lru_cache(maxsize=None)
def down_set_rs(e: BasisElement) -> frozenset[BasisElement]:
    """Classes below ``[e]``, as normal forms, under the simplicial face maps."""
    start = rs.normal_form(e)
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for r in rs.faces(x):
            if r not in seen:
                seen.add(r)
                todo.append(r)
    return frozenset(seen)


def leq_Tas(a: BasisElement, b: BasisElement) -> bool:
    _same_sig(a, b)
    return rs.normal_form(a) in down_set_rs(b)


def cell_dimension(e: BasisElement) -> int:
    return e.degree("standard")


# ---------------------------------------------------------------- contraction


def _contract_tree(t: Tree) -> Tree:
    kids = []
    for c in t.children:
        c = _contract_tree(c)
        if t.kind in (ROUND, SQUARE) and c.kind == ROUND:
            kids.extend(c.children)
        else:
            kids.append(c)
    return Tree(t.kind, t.label, tuple(kids))


def contraction(e: BasisElement) -> BasisElement:
    """Merge every pair of adjacent neutral vertices, and runs of square roots in the word."""
    word: list[Tree] = []
    for t in e.word:
        t = _contract_tree(t)
        if word and t.kind == SQUARE and word[-1].kind == SQUARE:
            word[-1] = Tree(SQUARE, 0, word[-1].children + t.children)
        else:
            word.append(t)
    return BasisElement(tuple(word), e.sig)


# ---------------------------------------------------------------- unit grafting


def _shift(t: Tree, by: int) -> Tree:
    lab = t.label + by if t.kind == CLOSED else t.label
    return Tree(t.kind, lab, tuple(_shift(c, by) for c in t.children))


def _square_word(e: BasisElement) -> None:
    if e.sig.output is not Color.OPEN or any(c is not Color.CLOSED for c in e.sig.inputs):
        raise DomainError(f"{e.sig} is not a signature of square words")
    if any(t.kind != SQUARE for t in e.word):
        raise DomainError(f"{e.encode()} has a root that is not square")


def _fold_left(unit: Tree, bodies: Sequence[tuple[Tree, ...]]) -> Tree:
    t = unit
    for b in bodies:
        t = Tree(ROUND, 0, (t,) + b)
    return t


def _fold_right(unit: Tree, bodies: Sequence[tuple[Tree, ...]]) -> Tree:
    t = unit
    for b in reversed(bodies):
        t = Tree(ROUND, 0, b + (t,))
    return t


def natural_map(e: BasisElement, variant: str = "left") -> BasisElement:
    """Turn a word of square trees into one round tree by grafting onto a unit leaf.

    ``left``: labels shift up by one, the unit is ``c1`` and the word
    ``T1 ... Tp`` becomes nested first children with ``T1`` deepest.
    ``right``: labels are kept, the unit is ``c(n+1)`` and ``T1`` is the root.
    """
    _square_word(e)
    n = e.sig.arity
    sig = Signature((Color.CLOSED,) * (n + 1), Color.CLOSED)
    if variant == "left":
        bodies = [tuple(_shift(c, 1) for c in t.children) for t in e.word]
        tree = _fold_left(Tree(CLOSED, 1, ()), bodies)
    elif variant == "right":
        tree = _fold_right(Tree(CLOSED, n + 1, ()), [t.children for t in e.word])
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return BasisElement((tree,), sig)


def _unwind(t: Tree, unit: int, side: int) -> list[tuple[Tree, ...]] | None:
    """Bodies met on the path of first (side 0) or last (side -1) children down to the unit."""
    bodies = []
    while not (t.kind == CLOSED and t.label == unit and not t.children):
        if t.kind != ROUND:
            return None
        kids = t.children
        bodies.append(kids[1:] if side == 0 else kids[:-1])
        t = kids[side]
    return bodies


def natural_inverse(e: BasisElement, variant: str = "left") -> BasisElement:
    n = e.sig.arity - 1
    if e.sig.output is not Color.CLOSED or len(e.word) != 1 or n < 1:
        raise DomainError(f"{e.encode()} is not a round tree with a unit")
    if variant == "left":
        bodies = _unwind(e.word[0], 1, 0)
        if bodies is None:
            raise DomainError(f"c1 is not the leftmost leaf of {e.encode()}")
        word = tuple(Tree(SQUARE, 0, tuple(_shift(c, -1) for c in b)) for b in reversed(bodies))
    elif variant == "right":
        bodies = _unwind(e.word[0], n + 1, -1)
        if bodies is None:
            raise DomainError(f"c{n + 1} is not the rightmost leaf of {e.encode()}")
        word = tuple(Tree(SQUARE, 0, b) for b in bodies)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return validate(word, Signature((Color.CLOSED,) * n, Color.OPEN))


def flat_map(e: BasisElement) -> BasisElement:
    """Replace the open root by a round vertex between two unit leaves.

    The word must read ``W_l T0 W_r`` with ``T0`` the open tree and square
    trees around it.  The open label 1 becomes the left unit, the right unit
    is ``c(n+2)``, and the flanking words are grafted on by the left and
    right unit foldings.
    """
    sig = e.sig
    if sig.output is not Color.OPEN or not sig.inputs or sig.inputs[0] is not Color.OPEN or Color.OPEN in sig.inputs[1:]:
        raise DomainError(f"{sig} is not o c^n ; o")
    n = sig.arity - 1
    pos = [i for i, t in enumerate(e.word) if t.kind == OPEN]
    if len(pos) != 1 or e.word[pos[0]].label != 1:
        raise DomainError(f"{e.encode()} needs exactly one open tree o1")
    k = pos[0]
    left, t0, right = e.word[:k], e.word[k], e.word[k + 1 :]
    if any(t.kind != SQUARE for t in left + right):
        raise DomainError(f"{e.encode()} has a closed root")
    lunit = _fold_left(Tree(CLOSED, 1, ()), [t.children for t in left])
    runit = _fold_right(Tree(CLOSED, n + 2, ()), [t.children for t in right])
    root = Tree(ROUND, 0, (lunit,) + t0.children + (runit,))
    return BasisElement((root,), Signature((Color.CLOSED,) * (n + 2), Color.CLOSED))


def flat_inverse(e: BasisElement) -> BasisElement:
    m = e.sig.arity
    if e.sig.output is not Color.CLOSED or len(e.word) != 1 or m < 2:
        raise DomainError(f"{e.encode()} is not a round tree")
    root = e.word[0]
    if root.kind != ROUND:
        raise DomainError(f"{e.encode()} has no round root")
    lb = _unwind(root.children[0], 1, 0)
    rb = _unwind(root.children[-1], m, -1)
    if lb is None or rb is None:
        raise DomainError(f"{e.encode()} does not carry the units at both ends")
    word = (
        tuple(Tree(SQUARE, 0, b) for b in reversed(lb))
        + (Tree(OPEN, 1, root.children[1:-1]),)
        + tuple(Tree(SQUARE, 0, b) for b in rb)
    )
    return validate(word, Signature((Color.OPEN,) + (Color.CLOSED,) * (m - 2), Color.OPEN))


# ---------------------------------------------------------------- nested intervals


class Ground(NamedTuple):
    """An ordered ground set; ``points`` lists it in order, ``cyclic`` marks S(n)."""

    name: str
    points: tuple
    cyclic: bool

    @property
    def size(self) -> int:
        return len(self.points)

    @classmethod
    def of(cls, kind: str, n: int) -> "Ground":
        if n < 0:
            raise PosetError("negative ground size")
        if kind == "plain":
            return cls(f"plain({n})", tuple(range(1, n + 1)), False)
        if kind == "I":
            return cls(f"I({n})", ("lft",) + tuple(range(1, n + 1)) + ("rgt",), False)
        if kind == "I_left":
            return cls(f"I_left({n})", ("lft",) + tuple(range(1, n + 1)), False)
        if kind == "S":
            return cls(f"S({n})", tuple(range(n + 1)), True)
        raise PosetError(f"unknown ground set {kind!r}")

    def intervals(self) -> list["Interval"]:
        m = self.size
        if self.cyclic:
            return [Interval(s, L) for L in range(2, m + 1) for s in range(m)] if m > 1 else []
        return [Interval(s, L) for L in range(2, m) for s in range(m - L + 1)]


class Interval(NamedTuple):
    """A run of ``length`` consecutive points starting at index ``start``.

    On a cyclic ground the run wraps around; runs covering the whole circle
    with different starts are different arcs.
    """

    start: int
    length: int

    def indices(self, g: Ground) -> tuple[int, ...]:
        return tuple((self.start + i) % g.size for i in range(self.length))

    def points(self, g: Ground) -> tuple:
        return tuple(g.points[i] for i in self.indices(g))

    def label(self, g: Ground) -> str:
        p = self.points(g)
        return f"[{p[0]},{p[-1]}]"


LinearInterval = Interval
CyclicArc = Interval


def inside(b: Interval, a: Interval, g: Ground) -> bool:
    """``b`` is a contiguous sub-run of ``a``."""
    off = (b.start - a.start) % g.size if g.cyclic else b.start - a.start
    return off >= 0 and off + b.length <= a.length


def compatible(a: Interval, b: Interval, g: Ground) -> bool:
    if a == b:
        return True
    if not set(a.indices(g)) & set(b.indices(g)):
        return True
    return inside(a, b, g) or inside(b, a, g)


@dataclass(frozen=True)
class NestedFamily:
    ground: Ground
    members: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        legal = set(self.ground.intervals())
        for a in self.members:
            if a not in legal:
                raise PosetError(f"{a} is not a strict interval of {self.ground.name}")
        for a, b in itertools.combinations(self.members, 2):
            if not compatible(a, b, self.ground):
                raise NotNestedError(f"{a.label(self.ground)} and {b.label(self.ground)} overlap")

    @classmethod
    def of(cls, ground: Ground, members: Iterable) -> "NestedFamily":
        return cls(ground, frozenset(Interval(*m) for m in members))

    def __len__(self) -> int:
        return len(self.members)

    def __le__(self, other: "NestedFamily") -> bool:
        # reverse inclusion: more intervals means a smaller face
        return self.ground == other.ground and other.members <= self.members

    def sets(self) -> dict[Interval, frozenset]:
        return {a: frozenset(a.indices(self.ground)) for a in self.members}

    def describe(self) -> str:
        return "{" + ", ".join(sorted(a.label(self.ground) for a in self.members)) + "}"


def enumerate_nested(ground: Ground | tuple[str, int], restrictive: bool = False) -> list[NestedFamily]:
    g = ground if isinstance(ground, Ground) else Ground.of(*ground)
    ivs = g.intervals()
    ok = {(a, b): compatible(a, b, g) for a in ivs for b in ivs}
    out: list[NestedFamily] = []

    def grow(i: int, chosen: list[Interval]) -> None:
        if i == len(ivs):
            out.append(NestedFamily(g, frozenset(chosen)))
            return
        grow(i + 1, chosen)
        a = ivs[i]
        if all(ok[a, b] for b in chosen):
            chosen.append(a)
            grow(i + 1, chosen)
            chosen.pop()

    grow(0, [])
    if restrictive:
        out = [f for f in out if is_restrictive(f)]
    return out


def maximal_families(ground: Ground | tuple[str, int]) -> list[NestedFamily]:
    fams = enumerate_nested(ground)
    top = max((len(f) for f in fams), default=0)
    return [f for f in fams if len(f) == top]


def is_restrictive(f: NestedFamily) -> bool:
    """Every member has two points, or drops to a member or a single point after removing a smaller member."""
    sets = f.sets()
    member_sets = set(sets.values())
    for a, sa in sets.items():
        if len(sa) == 2:
            continue
        good = False
        for b, sb in sets.items():
            if b != a and sb < sa:
                rest = sa - sb
                if len(rest) == 1 or rest in member_sets:
                    good = True
                    break
        if not good:
            return False
    return True


def maximal_elements(f: NestedFamily) -> NestedFamily:
    """Members not strictly inside another member."""
    g = f.ground
    keep = [a for a in f.members if not any(b != a and inside(a, b, g) for b in f.members)]
    return NestedFamily(g, frozenset(keep))


F = maximal_elements


def _blocks(a: Interval, f: NestedFamily) -> list[Interval]:
    """Top-level pieces of ``a``: the maximal members inside it, and single points."""
    g = f.ground
    kids = [b for b in f.members if b != a and inside(b, a, g)]
    top = [b for b in kids if not any(c != b and inside(b, c, g) for c in kids)]
    offs = {((b.start - a.start) % g.size if g.cyclic else b.start - a.start): b for b in top}
    out = []
    i = 0
    while i < a.length:
        if i in offs:
            out.append(offs[i])
            i += offs[i].length
        else:
            out.append(Interval((a.start + i) % g.size if g.cyclic else a.start + i, 1))
            i += 1
    return out


def completion(f: NestedFamily) -> NestedFamily:
    """A restrictive representative obtained by adding sub-intervals.

    Each member with three or more top-level pieces gets the run of all its
    pieces but the last added as a new member, until nothing changes.
    """
    members = set(f.members)
    g = f.ground
    changed = True
    while changed:
        changed = False
        cur = NestedFamily(g, frozenset(members))
        for a in sorted(members, key=lambda x: (-x.length, x.start)):
            pieces = _blocks(a, cur)
            if len(pieces) >= 3:
                new = Interval(a.start, a.length - pieces[-1].length)
                if new not in members:
                    members.add(new)
                    changed = True
                    break
    out = NestedFamily(g, frozenset(members))
    assert is_restrictive(out)
    return out


def restrictive_classes(ground: Ground | tuple[str, int]) -> dict[NestedFamily, list[NestedFamily]]:
    """Restrictive families grouped by their maximal elements."""
    out: dict = defaultdict(list)
    for f in enumerate_nested(ground, restrictive=True):
        out[F(f)].append(f)
    return dict(out)


# ---------------------------------------------------------------- intervals and trees


def _forest(seq: Sequence[int], arcs: Sequence[tuple[int, ...]], leaf) -> tuple[Tree, ...]:
    """Group the points ``seq`` (in order) by the nested runs ``arcs`` lying inside it."""
    mine = [a for a in arcs if set(a) <= set(seq)]
    top = [a for a in mine if not any(b != a and set(a) < set(b) for b in mine)]
    starts = {a[0]: a for a in top}
    out = []
    i = 0
    while i < len(seq):
        p = seq[i]
        if p in starts:
            a = starts[p]
            inner = [b for b in mine if set(b) < set(a)]
            out.append(Tree(ROUND, 0, _forest(a, inner, leaf)))
            i += len(a)
        else:
            out.append(leaf(p))
            i += 1
    return tuple(out)


def kappa(f: NestedFamily) -> BasisElement:
    """Parenthesization of ``plain(k)`` as a face of the round corolla with k inputs."""
    g = f.ground
    if g.cyclic:
        raise PosetError("kappa needs a linear ground set")
    k = g.size
    arcs = [tuple(a.indices(g)) for a in f.members]
    tree = Tree(ROUND, 0, _forest(tuple(range(k)), arcs, lambda p: Tree(CLOSED, p + 1, ())))
    return validate((tree,), Signature((Color.CLOSED,) * k, Color.CLOSED))


def _leaf_indices(t: Tree) -> list[int]:
    return [v.label - 1 for v in t.vertices() if v.kind == CLOSED]


def _linear_arcs(t: Tree, g: Ground, out: set) -> None:
    for v in t.vertices():
        if v.kind == ROUND:
            idx = sorted(_leaf_indices(v))
            out.add(Interval(idx[0], len(idx)))


def kappa_inverse(e: BasisElement) -> NestedFamily:
    root = e.word[0]
    if len(e.word) != 1 or root.kind != ROUND:
        raise DomainError(f"{e.encode()} is not a round tree")
    g = Ground.of("plain", e.sig.arity)
    arcs: set = set()
    for c in root.children:
        _linear_arcs(c, g, arcs)
    return NestedFamily(g, frozenset(arcs))


def upsilon(f: NestedFamily) -> BasisElement:
    """Face of the closed corolla ``M_{1,n}`` indexed by a family of arcs of S(n).

    Point 0 is the closed root ``c1`` and point ``p`` the leaf ``c(p+1)``.
    The arcs through 0 form a chain ``Z_1 < ... < Z_r``.  ``Z_1`` is the root
    and ``Z_i`` sits above ``Z_{i+1}``; the points of ``Z_i`` outside
    ``Z_{i-1}`` hang off it, those following the smaller arc on the left and
    those preceding it on the right.  ``c1`` keeps the points outside ``Z_r``.
    Arcs avoiding 0 group leaves into round vertices.
    """
    g = f.ground
    if not g.cyclic:
        raise PosetError("upsilon needs the cyclic ground S(n)")
    n = g.size - 1
    runs = [a.indices(g) for a in f.members]
    zero = sorted((r for r in runs if 0 in r), key=len)
    other = [r for r in runs if 0 not in r]

    def leaf(p):
        return Tree(CLOSED, p + 1, ())

    outside = tuple(p for p in range(1, n + 1) if not zero or p not in zero[-1])
    t = Tree(CLOSED, 1, _forest(outside, other, leaf))
    for k in range(len(zero) - 1, -1, -1):
        r = zero[k]
        inner = zero[k - 1] if k else (0,)
        i = next(j for j in range(len(r)) if r[j : j + len(inner)] == inner)
        before, after = r[:i], r[i + len(inner) :]
        t = Tree(ROUND, 0, _forest(after, other, leaf) + (t,) + _forest(before, other, leaf))
    return validate((t,), Signature((Color.CLOSED,) * (n + 1), Color.CLOSED))


def upsilon_inverse(e: BasisElement) -> NestedFamily:
    n = e.sig.arity - 1
    g = Ground.of("S", n)
    if e.sig.output is not Color.CLOSED or any(c is not Color.CLOSED for c in e.sig.inputs) or len(e.word) != 1:
        raise DomainError(f"{e.encode()} is not a face of M_1,{n}")
    arcs: set = set()

    def points(ts) -> tuple[int, ...]:
        return tuple(v.label - 1 for t in ts for v in t.vertices() if v.kind == CLOSED)

    def holds_root(t: Tree) -> bool:
        return any(v.kind == CLOSED and v.label == 1 for v in t.vertices())

    t = e.word[0]
    run: tuple[int, ...] = (0,)
    while not (t.kind == CLOSED and t.label == 1):
        if t.kind != ROUND:
            raise DomainError(f"{e.encode()} is not a face of M_1,{n}")
        i = next(k for k, c in enumerate(t.children) if holds_root(c))
        left, right = t.children[:i], t.children[i + 1 :]
        for x in left + right:
            _linear_arcs(x, g, arcs)
        run = points(right) + run + points(left)
        arcs.add(Interval(run[0], len(run)))
        t = t.children[i]
    for c in t.children:
        _linear_arcs(c, g, arcs)
    return NestedFamily(g, frozenset(arcs))


def nested_to_tree(f: NestedFamily) -> BasisElement:
    """The face of the corolla attached to the ground set of ``f``."""
    g = f.ground
    kind = g.name.split("(")[0]
    if kind == "S":
        return upsilon(f)
    if kind == "plain":
        return kappa(f)
    k = g.size
    plain = NestedFamily(Ground.of("plain", k), f.members)
    if kind == "I_left":
        return natural_inverse(kappa(plain), "left")
    if kind == "I":
        return flat_inverse(kappa(plain))
    raise PosetError(f"no corolla for {g.name}")


# ---------------------------------------------------------------- face posets


@dataclass
class FacePoset:
    elements: list
    leq: list[list[bool]]
    dims: list[int]

    def __post_init__(self):
        n = len(self.elements)
        for i in range(n):
            if not self.leq[i][i]:
                raise PosetError("relation is not reflexive")
            for j in range(n):
                if i != j and self.leq[i][j] and self.leq[j][i]:
                    raise PosetError("relation is not antisymmetric")
                if self.leq[i][j]:
                    for k in range(n):
                        if self.leq[j][k] and not self.leq[i][k]:
                            raise PosetError("relation is not transitive")

    def fvector(self) -> list[int]:
        if not self.dims:
            return []
        out = [0] * (max(self.dims) + 1)
        for d in self.dims:
            out[d] += 1
        return out

    def pairs(self) -> list[tuple[int, int]]:
        n = len(self.elements)
        return [(i, j) for i in range(n) for j in range(n) if self.leq[i][j]]

    def to_json(self) -> dict:
        return {
            "elements": [e.encode() for e in self.elements],
            "leq": [list(p) for p in self.pairs()],
            "fvector": self.fvector(),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _sorted(elts) -> list[BasisElement]:
    return sorted(elts, key=lambda e: (-cell_dimension(e), e.encode()))


def face_poset(top: BasisElement, quotient: bool = False) -> FacePoset:
    """Down-set of ``top`` in the tree order, or of its class when ``quotient``."""
    if quotient:
        elts = _sorted(down_set_rs(top))
        rel = [[a in down_set_rs(b) for b in elts] for a in elts]
    else:
        elts = _sorted(down_set(top))
        rel = [[a in down_set(b) for b in elts] for a in elts]
    return FacePoset(elts, rel, [cell_dimension(e) for e in elts])


def vertices(top: BasisElement) -> list[BasisElement]:
    return [e for e in down_set(top) if cell_dimension(e) == 0]


# ---------------------------------------------------------------- cells


class Theta(NamedTuple):
    rep: BasisElement


class ThetaInf(NamedTuple):
    rep: BasisElement


class DownSet(NamedTuple):
    top: BasisElement


def _check_bound(e: BasisElement) -> None:
    if e.sig.arity > MAX_CELL_INPUTS:
        raise BoundExceeded(f"{e.sig} has more than {MAX_CELL_INPUTS} inputs")


def theta_inf_support(rep: BasisElement) -> frozenset[BasisElement]:
    """Union of the tree down-sets of contractions of binary trees whose class lies below ``[rep]``."""
    below = down_set_rs(rep)
    out: set = set()
    for nf, reps in rs.classes(rep.sig).items():
        if nf in below:
            for _, t in reps:
                out |= down_set(contraction(t))
    return frozenset(out)


def cell_complex(target) -> ChainComplexZ:
    if isinstance(target, DownSet):
        _check_bound(target.top)
        cells = down_set(target.top)
        diff = differential
    elif isinstance(target, Theta):
        _check_bound(target.rep)
        cells = down_set_rs(target.rep)
        diff = rs.differential_rs
    elif isinstance(target, ThetaInf):
        _check_bound(target.rep)
        cells = theta_inf_support(target.rep)
        diff = differential
    else:
        raise TypeError(f"unknown cell target {target!r}")
    return ChainComplexZ.from_differential(cells, cell_dimension, lambda e: list(diff(e)))


def is_contractible(c: ChainComplexZ) -> bool:
    return reduced_homology_vanishes(c)


# ---------------------------------------------------------------- structural checks


def is_order_isomorphism(domain: Sequence, codomain: Iterable, f, leq_dom, leq_cod, inverse=None) -> tuple[bool, str | None]:
    """``f`` is a bijection ``domain -> codomain`` with ``a <= b`` iff ``f(a) <= f(b)``."""
    domain = list(domain)
    image = [f(a) for a in domain]
    cod = set(codomain)
    if len(set(image)) != len(domain):
        return False, "not injective"
    if set(image) != cod:
        return False, f"image misses {len(cod - set(image))} elements"
    for a, fa in zip(domain, image):
        if inverse is not None and inverse(fa) != a:
            return False, f"inverse fails at {a}"
    for (a, fa), (b, fb) in itertools.product(zip(domain, image), repeat=2):
        if leq_dom(a, b) != leq_cod(fa, fb):
            return False, f"order mismatch at {a} vs {b}"
    return True, None


def square_words(n: int) -> list[BasisElement]:
    from .rbr import enumerate_basis

    sig = Signature((Color.CLOSED,) * n, Color.OPEN)
    return [e for e in enumerate_basis(sig) if all(t.kind == SQUARE for t in e.word)]


def unit_trees(n: int, variant: str = "left") -> list[BasisElement]:
    """Round trees on ``n + 1`` closed inputs carrying the unit as their extreme leaf."""
    from .rbr import enumerate_basis

    sig = Signature((Color.CLOSED,) * (n + 1), Color.CLOSED)
    unit, side = (1, 0) if variant == "left" else (n + 1, -1)
    return [e for e in enumerate_basis(sig) if e.word[0].kind == ROUND and _unwind(e.word[0], unit, side) is not None]


def catalan(n: int) -> int:
    c = [1]
    for m in range(1, n + 1):
        c.append(sum(c[i] * c[m - 1 - i] for i in range(m)))
    return c[n]


def little_schroeder(n: int) -> int:
    """1, 1, 3, 11, 45, 197, ... from the three-term recurrence."""
    s = [1, 1]
    for m in range(2, n + 1):
        s.append(((6 * m - 3) * s[m - 1] - (m - 2) * s[m - 2]) // (m + 1))
    return s[n]


__all__ = [
    "BoundExceeded",
    "CyclicArc",
    "DomainError",
    "DownSet",
    "F",
    "FacePoset",
    "Ground",
    "Interval",
    "LinearInterval",
    "NestedFamily",
    "NotNestedError",
    "PosetError",
    "Theta",
    "ThetaInf",
    "catalan",
    "cell_complex",
    "compatible",
    "completion",
    "contraction",
    "down_set",
    "down_set_rs",
    "enumerate_nested",
    "face_poset",
    "flat_inverse",
    "flat_map",
    "homology_of",
    "is_contractible",
    "is_order_isomorphism",
    "is_restrictive",
    "kappa",
    "kappa_inverse",
    "leq_T",
    "leq_Tas",
    "little_schroeder",
    "maximal_elements",
    "maximal_families",
    "natural_inverse",
    "natural_map",
    "nested_to_tree",
    "restrictive_classes",
    "square_words",
    "unit_trees",
    "upsilon",
    "upsilon_inverse",
    "vertices",
]
