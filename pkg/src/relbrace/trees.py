"""Planar rooted trees and words of trees with four vertex kinds.

A basis element is a word of planar trees whose vertices are round neutral
(``n``), square neutral (``s``), closed labeled (``cK``) or open labeled
(``oK``).  Labels are 1-based input positions of a signature.  Only neutral
vertices carry odd degree; their wedge is always kept in canonical order,
which is depth-first preorder (a vertex before its children, children left to
right, trees in word order).
"""
from __future__ import annotations

import re
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Sequence

ROUND = "n"
SQUARE = "s"
CLOSED = "c"
OPEN = "o"
NEUTRAL_KINDS = frozenset((ROUND, SQUARE))
LABELED_KINDS = frozenset((CLOSED, OPEN))


class Color(str, Enum):
    CLOSED = "c"
    OPEN = "o"

    def __str__(self) -> str:
        return self.value


class TreeError(ValueError):
    """Base class for malformed trees, words and signatures."""


class GrammarError(TreeError):
    pass


class ArityError(TreeError):
    pass


class PlacementError(TreeError):
    """A square or open vertex sits below the root, or a closed output has extra trees."""


class LabelError(TreeError):
    pass


class SignatureError(TreeError):
    pass


class Signature(NamedTuple):
    inputs: tuple[Color, ...]
    output: Color

    @classmethod
    def parse(cls, text: str) -> "Signature":
        text = text.strip()
        if text.count(";") != 1:
            raise SignatureError(f"signature {text!r} needs exactly one ';'")
        ins, out = text.split(";")
        if not ins:
            raise SignatureError("a signature needs at least one input")
        try:
            inputs = tuple(Color(ch) for ch in ins)
            output = Color(out)
        except ValueError:
            raise SignatureError(f"bad color in signature {text!r}") from None
        return cls(inputs, output)

    @classmethod
    def of(cls, sig: "Signature | str") -> "Signature":
        return sig if isinstance(sig, Signature) else cls.parse(sig)

    def __str__(self) -> str:
        return "".join(c.value for c in self.inputs) + ";" + self.output.value

    @property
    def arity(self) -> int:
        return len(self.inputs)

    def closed_labels(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, c in enumerate(self.inputs) if c is Color.CLOSED)

    def open_labels(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, c in enumerate(self.inputs) if c is Color.OPEN)


class Tree(NamedTuple):
    kind: str
    label: int
    children: tuple["Tree", ...]

    def encode(self) -> str:
        head = self.kind if self.kind in NEUTRAL_KINDS else f"{self.kind}{self.label}"
        if not self.children:
            return head
        return "(" + head + " " + " ".join(c.encode() for c in self.children) + ")"

    def vertices(self) -> Iterator["Tree"]:
        yield self
        for c in self.children:
            yield from c.vertices()


def leaf(kind: str, label: int) -> Tree:
    return Tree(kind, label, ())


def node(kind: str, label: int, children: Iterable[Tree]) -> Tree:
    return Tree(kind, label, tuple(children))


Word = tuple  # tuple[Tree, ...]


class BasisElement(NamedTuple):
    word: tuple[Tree, ...]
    sig: Signature

    def encode(self) -> str:
        return encode_word(self.word)

    def __str__(self) -> str:
        return self.encode()

    def vertices(self) -> Iterator[Tree]:
        for t in self.word:
            yield from t.vertices()

    def neutral_count(self) -> int:
        return sum(1 for v in self.vertices() if v.kind in NEUTRAL_KINDS)

    def degree(self, convention: str = "lambda") -> int:
        return degree(self, convention)


def encode_word(word: Sequence[Tree]) -> str:
    return " ".join(t.encode() for t in word)


def encode(e: BasisElement) -> str:
    return e.encode()


_TOKEN = re.compile(r"\(|\)|[ns]|[co][0-9]+|\S")


def _tokens(text: str) -> list[str]:
    toks = _TOKEN.findall(text)
    for t in toks:
        if t not in "()" and not re.fullmatch(r"[ns]|[co][0-9]+", t):
            raise GrammarError(f"unexpected token {t!r}")
    return toks


def _atom(tok: str) -> tuple[str, int]:
    if tok in (ROUND, SQUARE):
        return tok, 0
    if tok in "()":
        raise GrammarError(f"expected an atom, got {tok!r}")
    label = int(tok[1:])
    if label < 1:
        raise GrammarError(f"labels are positive, got {tok!r}")
    return tok[0], label


def parse_word(text: str) -> tuple[Tree, ...]:
    """Parse the tree grammar into a tuple of trees without any validation."""
    toks = _tokens(text)
    pos = 0

    def tree() -> Tree:
        nonlocal pos
        if pos >= len(toks):
            raise GrammarError("unexpected end of input")
        tok = toks[pos]
        if tok == "(":
            pos += 1
            if pos >= len(toks):
                raise GrammarError("unexpected end of input")
            kind, label = _atom(toks[pos])
            pos += 1
            kids = []
            while pos < len(toks) and toks[pos] != ")":
                kids.append(tree())
            if pos >= len(toks):
                raise GrammarError("missing ')'")
            pos += 1
            if not kids:
                raise GrammarError("a parenthesized tree needs at least one child")
            return Tree(kind, label, tuple(kids))
        if tok == ")":
            raise GrammarError("unbalanced ')'")
        pos += 1
        kind, label = _atom(tok)
        return Tree(kind, label, ())

    trees = []
    while pos < len(toks):
        trees.append(tree())
    if not trees:
        raise GrammarError("empty word")
    return tuple(trees)


def validate(word: Sequence[Tree], sig: Signature | str) -> BasisElement:
    sig = Signature.of(sig)
    word = tuple(word)
    if not word:
        raise PlacementError("empty word")
    if sig.output is Color.CLOSED and len(word) != 1:
        raise PlacementError("a closed output needs a single tree")
    seen: dict[int, str] = {}

    def walk(t: Tree, at_root: bool) -> None:
        name = t.encode() if not t.children else t.kind + (str(t.label) if t.label else "")
        if t.kind == ROUND:
            if t.label:
                raise GrammarError("neutral vertices carry no label")
            if len(t.children) < 2:
                raise ArityError(f"round neutral vertex {name!r} has {len(t.children)} children, needs >= 2")
        elif t.kind == SQUARE:
            if not at_root or sig.output is Color.CLOSED:
                raise PlacementError(f"square vertex {name!r} is not a root of an open-output word")
            if not t.children:
                raise ArityError("square neutral vertex needs >= 1 child")
        elif t.kind in LABELED_KINDS:
            if t.kind == OPEN and (not at_root or sig.output is Color.CLOSED):
                raise PlacementError(f"open vertex o{t.label} is not a root of an open-output word")
            if t.label > sig.arity:
                raise LabelError(f"label {t.kind}{t.label} exceeds arity {sig.arity}")
            want = sig.inputs[t.label - 1].value
            if want != t.kind:
                raise LabelError(f"vertex {t.kind}{t.label} sits on an input of color {want!r}")
            if t.label in seen:
                raise LabelError(f"label {t.label} used twice")
            seen[t.label] = t.kind
        else:
            raise GrammarError(f"unknown vertex kind {t.kind!r}")
        for c in t.children:
            walk(c, False)

    for t in word:
        if sig.output is Color.OPEN and t.kind not in (SQUARE, OPEN):
            raise PlacementError(f"tree {t.encode()!r} of an open-output word needs a square or open root")
        walk(t, True)
    missing = set(range(1, sig.arity + 1)) - set(seen)
    if missing:
        raise LabelError(f"labels {sorted(missing)} missing")
    return BasisElement(word, sig)


def parse(text: str, sig: Signature | str) -> BasisElement:
    return validate(parse_word(text), sig)


def degree(e: BasisElement, convention: str = "lambda") -> int:
    lam = -e.neutral_count()
    conv = convention.lower()
    if conv in ("lambda", "l"):
        return lam
    if conv in ("standard", "std", "s"):
        ncl = sum(1 for c in e.sig.inputs if c is Color.CLOSED)
        return lam + ncl - (1 if e.sig.output is Color.CLOSED else 0)
    raise ValueError(f"unknown grading convention {convention!r}")


def vertex_degree(v: Tree) -> int:
    """Per-vertex share of the standard degree."""
    k = len(v.children)
    return {ROUND: k - 2, SQUARE: k - 1}.get(v.kind, k)


class Angle(NamedTuple):
    vertex: int  # preorder index of the host vertex
    sector: int  # 0 .. number of children
    position: int  # index in the global angle order


def angles(e: BasisElement | Sequence[Tree]) -> list[Angle]:
    word = e.word if isinstance(e, BasisElement) else tuple(e)
    out: list[Angle] = []
    counter = 0

    def walk(t: Tree) -> None:
        nonlocal counter
        me = counter
        counter += 1
        out.append(Angle(me, 0, len(out)))
        for i, c in enumerate(t.children, 1):
            walk(c)
            out.append(Angle(me, i, len(out)))

    for t in word:
        walk(t)
    return out


def relabel_tree(t: Tree, mapping) -> Tree:
    new = mapping(t.kind, t.label) if t.kind in LABELED_KINDS else t.label
    return Tree(t.kind, new, tuple(relabel_tree(c, mapping) for c in t.children))


def sigma_action(e: BasisElement, sigma: Sequence[int], target: Signature | str | None = None) -> BasisElement:
    """Right action of a permutation of inputs.

    ``sigma`` is given in one-line notation on 1..n.  The new signature has
    inputs ``sig[sigma(i)]`` and a vertex labeled ``K`` gets ``sigma^-1(K)``.
    """
    n = e.sig.arity
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, n + 1)):
        raise SignatureError(f"{sigma} is not a permutation of 1..{n}")
    inv = {s: i + 1 for i, s in enumerate(sigma)}
    new_sig = Signature(tuple(e.sig.inputs[s - 1] for s in sigma), e.sig.output)
    if target is not None and Signature.of(target) != new_sig:
        raise SignatureError(f"permutation sends {e.sig} to {new_sig}, not {target}")
    word = tuple(relabel_tree(t, lambda _k, lab: inv[lab]) for t in e.word)
    return BasisElement(word, new_sig)


def compose_permutations(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    """(sigma tau)(i) = sigma(tau(i))."""
    return tuple(sigma[t - 1] for t in tau)
