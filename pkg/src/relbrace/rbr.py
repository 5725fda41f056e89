"""The dg operad of relative braces: basis enumeration, composition and the blow-up differential.

All signs are computed against the canonical wedge of neutral vertices.  The
internal workhorse is a *tagged* tree ``(kind, label, tag, children)`` whose
tags survive rewriting, so that the sign of any operation is the parity of
the permutation taking the intended wedge (a list of tags) to the preorder of
neutral tags in the result.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from functools import lru_cache
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from .trees import (
    CLOSED,
    NEUTRAL_KINDS,
    OPEN,
    ROUND,
    SQUARE,
    BasisElement,
    Color,
    Signature,
    Tree,
    TreeError,
    compose_permutations,
    degree,
    parse,
    sigma_action,
)


class CompositionError(TreeError):
    pass


class FormalSum:
    """Finite integer combination of basis elements."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            self.terms: dict = {}
        elif isinstance(terms, FormalSum):
            self.terms = dict(terms.terms)
        else:
            acc: dict = defaultdict(int)
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                acc[e] += c
            self.terms = {e: c for e, c in acc.items() if c}

    @classmethod
    def basis(cls, e: BasisElement, coeff: int = 1) -> "FormalSum":
        return cls({e: coeff})

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __getitem__(self, e) -> int:
        return self.terms.get(e, 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "FormalSum") -> "FormalSum":
        acc = dict(self.terms)
        for e, c in other.terms.items():
            v = acc.get(e, 0) + c
            if v:
                acc[e] = v
            else:
                acc.pop(e, None)
        out = FormalSum()
        out.terms = acc
        return out

    def __neg__(self) -> "FormalSum":
        out = FormalSum()
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def __mul__(self, k: int) -> "FormalSum":
        if not k:
            return FormalSum()
        out = FormalSum()
        out.terms = {e: k * c for e, c in self.terms.items()}
        return out

    __rmul__ = __mul__

    @property
    def sig(self) -> Signature | None:
        sigs = {e.sig for e in self.terms}
        if len(sigs) > 1:
            raise CompositionError("formal sum mixes signatures")
        return next(iter(sigs), None)

    def degrees(self, convention: str = "lambda") -> set[int]:
        return {degree(e, convention) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda ec: ec[0].encode())

    def to_json(self) -> list[dict]:
        return [{"coeff": c, "element": e.encode()} for e, c in self.sorted_items()]

    @classmethod
    def from_json(cls, data, sig: Signature | str) -> "FormalSum":
        return cls((parse(d["element"], sig), int(d["coeff"])) for d in data)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_items():
            parts.append(("+" if c > 0 else "-") + (str(abs(c)) if abs(c) != 1 else "") + "[" + e.encode() + "]")
        return " ".join(parts)


def as_sum(x) -> FormalSum:
    return x if isinstance(x, FormalSum) else FormalSum.basis(x)


# ---------------------------------------------------------------- generators


class GeneratorKind(NamedTuple):
    name: str
    k: int = 0


def Partial(k: int) -> GeneratorKind:
    return GeneratorKind("partial", k)


def G(k: int) -> GeneratorKind:
    return GeneratorKind("G", k)


def M(k: int) -> GeneratorKind:
    return GeneratorKind("M", k)


def Gamma(k: int) -> GeneratorKind:
    return GeneratorKind("Gamma", k)


IdClosed = GeneratorKind("id_c")
IdOpen = GeneratorKind("id_o")
MuOpen = GeneratorKind("mu_op")


def generator(kind: GeneratorKind | str, k: int | None = None) -> BasisElement:
    if isinstance(kind, str):
        kind = GeneratorKind(kind, k or 0)
    name, k = kind.name, kind.k
    if name == "partial":
        if k < 2:
            raise ValueError("the round neutral corolla needs k >= 2")
        return parse("(n " + " ".join(f"c{i}" for i in range(1, k + 1)) + ")", "c" * k + ";c")
    if name == "G":
        if k < 1:
            raise ValueError("the square neutral corolla needs k >= 1")
        return parse("(s " + " ".join(f"c{i}" for i in range(1, k + 1)) + ")", "c" * k + ";o")
    if name == "M":
        if k < 0:
            raise ValueError("negative arity")
        if k == 0:
            return parse("c1", "c;c")
        return parse("(c1 " + " ".join(f"c{i}" for i in range(2, k + 2)) + ")", "c" * (k + 1) + ";c")
    if name == "Gamma":
        if k < 0:
            raise ValueError("negative arity")
        if k == 0:
            return parse("o1", "o;o")
        return parse("(o1 " + " ".join(f"c{i}" for i in range(2, k + 2)) + ")", "o" + "c" * k + ";o")
    if name == "id_c":
        return parse("c1", "c;c")
    if name == "id_o":
        return parse("o1", "o;o")
    if name == "mu_op":
        return parse("o1 o2", "oo;o")
    raise ValueError(f"unknown generator {name!r}")


def generators_up_to(max_inputs: int) -> list[tuple[str, BasisElement]]:
    out = [("id_c", generator(IdClosed)), ("id_o", generator(IdOpen)), ("mu_op", generator(MuOpen))]
    for k in range(2, max_inputs + 1):
        out.append((f"partial_{k}", generator(Partial(k))))
    for k in range(1, max_inputs + 1):
        out.append((f"G_{k}", generator(G(k))))
    for k in range(1, max_inputs):
        out.append((f"M_1,{k}", generator(M(k))))
        out.append((f"Gamma_1,{k}", generator(Gamma(k))))
    return out


# ---------------------------------------------------------------- tagged trees

NEW = -1  # tag of the vertex created by a blow-up


def tag_word(word: Sequence[Tree], offset: int = 0) -> tuple:
    counter = offset

    def go(t: Tree):
        nonlocal counter
        me = counter
        counter += 1
        return (t.kind, t.label, me, tuple(go(c) for c in t.children))

    return tuple(go(t) for t in word)


def strip_word(tw: Sequence) -> tuple[Tree, ...]:
    def go(n) -> Tree:
        return Tree(n[0], n[1], tuple(go(c) for c in n[3]))

    return tuple(go(n) for n in tw)


def odd_tags(tw: Sequence) -> list:
    out = []

    def go(n):
        if n[0] in NEUTRAL_KINDS:
            out.append(n[2])
        for c in n[3]:
            go(c)

    for n in tw:
        go(n)
    return out


def perm_sign(seq: Sequence, target: Sequence) -> int:
    """Sign of the permutation rearranging ``seq`` into ``target``."""
    if len(seq) != len(target):
        raise AssertionError("wedge bookkeeping lost a vertex")
    if len(seq) < 2:
        return 1
    pos = {t: i for i, t in enumerate(target)}
    idx = [pos[t] for i, t in enumerate(seq)]
    inv = 0
    for i in range(len(idx)):
        a = idx[i]
        for j in range(i + 1, len(idx)):
            if a > idx[j]:
                inv += 1
    return -1 if inv & 1 else 1


def _sites(tw: Sequence) -> list[tuple[int, tuple, tuple]]:
    """Vertices of a tagged word in preorder as (tree index, path, node)."""
    out = []

    def go(j, path, n):
        out.append((j, path, n))
        for i, c in enumerate(n[3]):
            go(j, path + (i,), c)

    for j, n in enumerate(tw):
        go(j, (), n)
    return out


def _replace(n, path: tuple, new):
    if not path:
        return new
    i = path[0]
    ch = n[3]
    return (n[0], n[1], n[2], ch[:i] + (_replace(ch[i], path[1:], new),) + ch[i + 1 :])


# ---------------------------------------------------------------- blow-ups


class BlowUp(NamedTuple):
    trees: tuple  # replacement: one tagged node, or several tagged trees for a word split
    is_split: bool
    sign: int
    new_odd: tuple  # tags of the neutral vertices among (bottom, top) in that order


def _blowups(n, at_root: bool) -> list[BlowUp]:
    kind, label, tag, ch = n
    k = len(ch)
    out: list[BlowUp] = []
    if kind == ROUND:
        for i in range(k):
            for L in range(2, k):
                if i + L > k:
                    break
                new = (ROUND, 0, tag, ch[:i] + ((ROUND, 0, NEW, ch[i : i + L]),) + ch[i + L :])
                out.append(BlowUp(new, False, -1, (tag, NEW)))
    elif kind == CLOSED:
        for i in range(k):
            for L in range(2, k - i + 1):
                new = (CLOSED, label, tag, ch[:i] + ((ROUND, 0, NEW, ch[i : i + L]),) + ch[i + L :])
                out.append(BlowUp(new, False, 1, (NEW,)))
        for i in range(k + 1):
            for j in range(i + 1, k + 2):
                if i == 0 and j == k + 1:
                    continue
                kept = (CLOSED, label, tag, ch[i : j - 1])
                new = (ROUND, 0, NEW, ch[:i] + (kept,) + ch[j - 1 :])
                out.append(BlowUp(new, False, -1, (NEW,)))
    elif kind == OPEN:
        for i in range(k):
            for L in range(2, k - i + 1):
                new = (OPEN, label, tag, ch[:i] + ((ROUND, 0, NEW, ch[i : i + L]),) + ch[i + L :])
                out.append(BlowUp(new, False, 1, (NEW,)))
        for i in range(k):
            out.append(BlowUp(((OPEN, label, tag, ch[:i]), (SQUARE, 0, NEW, ch[i:])), True, 1, (NEW,)))
        for i in range(1, k + 1):
            out.append(BlowUp(((SQUARE, 0, NEW, ch[:i]), (OPEN, label, tag, ch[i:])), True, -1, (NEW,)))
    elif kind == SQUARE:
        for i in range(k):
            for L in range(2, k - i + 1):
                new = (SQUARE, 0, tag, ch[:i] + ((ROUND, 0, NEW, ch[i : i + L]),) + ch[i + L :])
                out.append(BlowUp(new, False, -1, (tag, NEW)))
        for i in range(1, k):
            out.append(BlowUp(((SQUARE, 0, tag, ch[:i]), (SQUARE, 0, NEW, ch[i:])), True, -1, (tag, NEW)))
    return out


def _expand(e: BasisElement, vertex: int | None = None) -> Iterator[tuple[BasisElement, int, int]]:
    """Yield (result, sign, vertex index) for blow-ups of ``e`` (optionally at one vertex)."""
    tw = tag_word(e.word)
    sites = _sites(tw)
    odd_flags = [s[2][0] in NEUTRAL_KINDS for s in sites]
    before = 0
    for idx, (j, path, n) in enumerate(sites):
        if vertex is None or vertex == idx:
            pre_odd = [sites[t][2][2] for t in range(idx) if odd_flags[t]]
            post_odd = [sites[t][2][2] for t in range(idx + 1, len(sites)) if odd_flags[t]]
            prefix = -1 if before & 1 else 1
            for b in _blowups(n, not path):
                if b.is_split:
                    new_tw = tw[:j] + b.trees + tw[j + 1 :]
                else:
                    new_tw = tw[:j] + (_replace(tw[j], path, b.trees),) + tw[j + 1 :]
                wedge = pre_odd + list(b.new_odd) + post_odd
                s = b.sign * prefix * perm_sign(wedge, odd_tags(new_tw))
                yield BasisElement(strip_word(new_tw), e.sig), s, idx
        if odd_flags[idx]:
            before += 1


def blow_up_components(e: BasisElement, v: int) -> list[tuple[BasisElement, int]]:
    """All blow-ups of the vertex with preorder index ``v``, with their signs in the differential."""
    n_vertices = sum(1 for _ in e.vertices())
    if not 0 <= v < n_vertices:
        raise IndexError(f"vertex {v} out of range")
    return [(r, s) for r, s, _ in _expand(e, v)]


@lru_cache(maxsize=None)
def _differential_basis(e: BasisElement) -> tuple:
    acc: dict = defaultdict(int)
    for r, s, _ in _expand(e):
        acc[r] += s
    return tuple((r, c) for r, c in acc.items() if c)


def differential(a) -> FormalSum:
    a = as_sum(a)
    acc: dict = defaultdict(int)
    for e, c in a.terms.items():
        for r, s in _differential_basis(e):
            acc[r] += c * s
    return FormalSum(acc)


# ---------------------------------------------------------------- composition


def _relabel_tagged(n, f: Callable[[str, int], int]):
    kind, label, tag, ch = n
    if kind in (CLOSED, OPEN):
        label = f(kind, label)
    return (kind, label, tag, tuple(_relabel_tagged(c, f) for c in ch))


def _graft(tx: Sequence, assign: dict[int, list]) -> tuple:
    counter = 0

    def go(n):
        nonlocal counter
        new = list(assign.get(counter, ()))
        counter += 1
        for c in n[3]:
            new.append(go(c))
            new.extend(assign.get(counter, ()))
            counter += 1
        return (n[0], n[1], n[2], tuple(new))

    return tuple(go(n) for n in tx)


def _angle_count(tw: Sequence) -> int:
    return sum(len(n[3]) + 1 for _, _, n in _sites(tw))


_X_OFFSET = 1 << 20


@lru_cache(maxsize=200000)
def compose_basis(w: BasisElement, slot: int, x: BasisElement) -> tuple:
    if not 1 <= slot <= w.sig.arity:
        raise CompositionError(f"unknown slot {slot} for signature {w.sig}")
    color = w.sig.inputs[slot - 1]
    if color is not x.sig.output:
        raise CompositionError(f"slot {slot} has color {color.value}, argument has output {x.sig.output.value}")
    nx = x.sig.arity
    new_sig = Signature(w.sig.inputs[: slot - 1] + x.sig.inputs + w.sig.inputs[slot:], w.sig.output)
    tw = tag_word(w.word)
    sites = _sites(tw)
    target = next((s for s in sites if s[2][0] == color.value and s[2][1] == slot), None)
    if target is None:
        raise CompositionError(f"no vertex carries label {slot}")
    vj, vpath, vnode = target
    shift_w = lambda _k, b: b + nx - 1 if b > slot else b
    tw = tuple(_relabel_tagged(n, shift_w) for n in tw)
    tx = tuple(_relabel_tagged(n, lambda _k, a: a + slot - 1) for n in tag_word(x.word, _X_OFFSET))
    children = [_relabel_tagged(c, shift_w) for c in vnode[3]]
    wedge = odd_tags(tw) + odd_tags(tx)
    n_angles = _angle_count(tx)
    acc: dict = defaultdict(int)
    for f in itertools.combinations_with_replacement(range(n_angles), len(children)):
        assign: dict[int, list] = defaultdict(list)
        for child, a in zip(children, f):
            assign[a].append(child)
        grafted = _graft(tx, assign)
        if color is Color.CLOSED:
            new_tw = tw[:vj] + (_replace(tw[vj], vpath, grafted[0]),) + tw[vj + 1 :]
        else:
            new_tw = tw[:vj] + grafted + tw[vj + 1 :]
        s = perm_sign(wedge, odd_tags(new_tw))
        acc[BasisElement(strip_word(new_tw), new_sig)] += s
    return tuple((r, c) for r, c in acc.items() if c)


def compose_at(a, slot: int, b) -> FormalSum:
    a, b = as_sum(a), as_sum(b)
    acc: dict = defaultdict(int)
    for w, cw in a.terms.items():
        for x, cx in b.terms.items():
            for r, c in compose_basis(w, slot, x):
                acc[r] += cw * cx * c
    return FormalSum(acc)


# ---------------------------------------------------------------- enumeration


def _subsets(labels: tuple[int, ...], nonempty: bool) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    n = len(labels)
    for mask in range(1 if nonempty else 0, 1 << n):
        inside = tuple(labels[i] for i in range(n) if mask >> i & 1)
        outside = tuple(labels[i] for i in range(n) if not mask >> i & 1)
        yield inside, outside


@lru_cache(maxsize=None)
def _round_trees(labels: tuple[int, ...]) -> tuple[Tree, ...]:
    out = []
    for i, lab in enumerate(labels):
        for f in _forests(labels[:i] + labels[i + 1 :]):
            out.append(Tree(CLOSED, lab, f))
    for inside, outside in _subsets(labels, True):
        if outside:
            for t in _round_trees(inside):
                for rest in _forests(outside):
                    out.append(Tree(ROUND, 0, (t,) + rest))
    return tuple(out)


@lru_cache(maxsize=None)
def _forests(labels: tuple[int, ...]) -> tuple[tuple[Tree, ...], ...]:
    if not labels:
        return ((),)
    out = []
    for inside, outside in _subsets(labels, True):
        for t in _round_trees(inside):
            for rest in _forests(outside):
                out.append((t,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _open_words(cl: tuple[int, ...], op: tuple[int, ...]) -> tuple[tuple[Tree, ...], ...]:
    if not cl and not op:
        return ((),)
    out = []
    for i, o in enumerate(op):
        rest_op = op[:i] + op[i + 1 :]
        for inside, outside in _subsets(cl, False):
            for f in _forests(inside):
                for rest in _open_words(outside, rest_op):
                    out.append((Tree(OPEN, o, f),) + rest)
    for inside, outside in _subsets(cl, True):
        for f in _forests(inside):
            for rest in _open_words(outside, op):
                out.append((Tree(SQUARE, 0, f),) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _enumerate(sig: Signature) -> tuple[BasisElement, ...]:
    cl, op = sig.closed_labels(), sig.open_labels()
    if sig.output is Color.CLOSED:
        if op:
            return ()
        words = [(t,) for t in _round_trees(cl)]
    else:
        words = [w for w in _open_words(cl, op) if w]
    elems = [BasisElement(w, sig) for w in words]
    elems.sort(key=lambda e: (-e.neutral_count(), e.encode()))
    return tuple(elems)


def enumerate_basis(sig: Signature | str, degree: int | None = None, convention: str = "lambda") -> list[BasisElement]:
    sig = Signature.of(sig)
    elems = _enumerate(sig)
    if degree is None:
        return list(elems)
    from .trees import degree as deg

    return [e for e in elems if deg(e, convention) == degree]


def all_signatures(max_inputs: int, min_inputs: int = 1) -> list[Signature]:
    out = []
    for n in range(min_inputs, max_inputs + 1):
        for ins in itertools.product((Color.CLOSED, Color.OPEN), repeat=n):
            for outc in (Color.CLOSED, Color.OPEN):
                if outc is Color.CLOSED and Color.OPEN in ins:
                    continue
                out.append(Signature(tuple(ins), outc))
    return out


# ---------------------------------------------------------------- verification


def block_permutation(sigma: Sequence[int], i: int, nb: int) -> tuple[int, ...]:
    """The permutation induced on a composite when inputs of the outer factor move by ``sigma``.

    Satisfies ``(a . sigma) o_i b = (a o_{sigma(i)} b) . block_permutation(sigma, i, nb)``.
    """
    si = sigma[i - 1]

    def shift(q: int) -> int:
        return q if q < si else q + nb - 1

    out = []
    for p in range(1, len(sigma) + nb):
        if p < i:
            out.append(shift(sigma[p - 1]))
        elif p < i + nb:
            out.append(si + p - i)
        else:
            out.append(shift(sigma[p - nb]))
    return tuple(out)


def inner_permutation(na: int, i: int, tau: Sequence[int]) -> tuple[int, ...]:
    """Identity on the outer inputs, ``tau`` on the block inserted at ``i``."""
    nb = len(tau)
    return tuple(range(1, i)) + tuple(i - 1 + t for t in tau) + tuple(range(i + nb, na + nb))


def act(a, sigma: Sequence[int]) -> FormalSum:
    a = as_sum(a)
    return FormalSum((sigma_action(e, sigma), c) for e, c in a.terms.items())


class Check(NamedTuple):
    name: str
    passed: bool
    count: int
    witness: str | None = None


def _basis_upto(max_inputs: int) -> list[BasisElement]:
    out = []
    for sig in all_signatures(max_inputs):
        out.extend(enumerate_basis(sig))
    return out


def check_d_squared(elements: Iterable[BasisElement]) -> Check:
    n = 0
    for e in elements:
        n += 1
        dd = differential(differential(e))
        if dd:
            return Check("d^2 = 0", False, n, f"{e.sig} {e.encode()}: {dd!r}")
    return Check("d^2 = 0", True, n)


def _slot_pairs(left: Sequence[BasisElement], right: Sequence[BasisElement], bound: int):
    for a in left:
        for slot, color in enumerate(a.sig.inputs, 1):
            for b in right:
                if b.sig.output is color and a.sig.arity + b.sig.arity - 1 <= bound:
                    yield a, slot, b


def check_leibniz(left, right, bound: int) -> Check:
    n = 0
    for a, slot, b in _slot_pairs(left, right, bound):
        n += 1
        da = a.neutral_count()
        lhs = differential(compose_at(a, slot, b))
        rhs = compose_at(differential(a), slot, b) + compose_at(a, slot, differential(b)) * (-1 if da & 1 else 1)
        if lhs != rhs:
            return Check("Leibniz rule", False, n, f"{a} o_{slot} {b}")
    return Check("Leibniz rule", True, n)


def check_associativity(elements, bound: int) -> Check:
    """Sequential and parallel associativity on all triples within the bound."""
    n = 0
    for a in elements:
        for b in elements:
            for c in elements:
                na, nb, nc = a.sig.arity, b.sig.arity, c.sig.arity
                if na + nb + nc - 2 > bound:
                    continue
                for i in range(1, na + 1):
                    if a.sig.inputs[i - 1] is not b.sig.output:
                        continue
                    ab = compose_at(a, i, b)
                    for j in range(1, nb + 1):
                        if b.sig.inputs[j - 1] is not c.sig.output:
                            continue
                        n += 1
                        lhs = compose_at(ab, i + j - 1, c)
                        rhs = compose_at(a, i, compose_at(b, j, c))
                        if lhs != rhs:
                            return Check("associativity", False, n, f"sequential {a} o_{i} {b} o_{j} {c}")
                    for j in range(i + 1, na + 1):
                        if a.sig.inputs[j - 1] is not c.sig.output:
                            continue
                        n += 1
                        sgn = -1 if (b.neutral_count() * c.neutral_count()) & 1 else 1
                        lhs = compose_at(compose_at(a, j, c), i, b)
                        rhs = compose_at(ab, j + nb - 1, c) * sgn
                        if lhs != rhs:
                            return Check("associativity", False, n, f"parallel {a} o_{i} {b}, o_{j} {c}")
    return Check("associativity", True, n)


def check_equivariance(pairs) -> Check:
    n = 0
    for a, slot, b in pairs:
        na, nb = a.sig.arity, b.sig.arity
        for sigma in itertools.permutations(range(1, na + 1)):
            as_ = sigma_action(a, sigma)
            i = sigma.index(slot) + 1  # slot of a.sigma that reads a's slot
            if as_.sig.inputs[i - 1] is not b.sig.output:
                continue
            n += 1
            lhs = compose_at(as_, i, b)
            rhs = act(compose_at(a, slot, b), block_permutation(sigma, i, nb))
            if lhs != rhs:
                return Check("equivariance", False, n, f"outer {sigma} on {a} o_{slot} {b}")
        for tau in itertools.permutations(range(1, nb + 1)):
            n += 1
            lhs = compose_at(a, slot, sigma_action(b, tau))
            rhs = act(compose_at(a, slot, b), inner_permutation(na, slot, tau))
            if lhs != rhs:
                return Check("equivariance", False, n, f"inner {tau} on {a} o_{slot} {b}")
    return Check("equivariance", True, n)


def verify_operad_axioms(bound: int = 4, pair_bound: int = 3) -> list[Check]:
    elements = _basis_upto(bound)
    small = _basis_upto(2)
    gens = [g for _, g in generators_up_to(bound)]
    gens_small = [g for g in gens if g.sig.arity <= pair_bound]
    pairs = [p for p in _slot_pairs(gens_small + small, gens_small + small, bound)]
    return [
        check_d_squared(elements),
        check_leibniz(_basis_upto(pair_bound), small + gens_small, bound),
        check_associativity(small + [g for g in gens if g.sig.arity <= 2], bound),
        check_equivariance(pairs),
    ]
