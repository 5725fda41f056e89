"""The surjection-type quotient: binary/unary trees modulo reassociation and square splitting.

A class is represented by its normal form: every round neutral vertex has a
left child that is not round neutral, and no square vertex has a round
neutral child.  Both rewriting rules cost a factor -1 and keep the identity
of the two vertices involved (outer vertex stays outer, inner stays inner,
square stays left), so the sign of a normal form is the product of the rule
signs and the renormalization of the wedge.
"""
from __future__ import annotations

import itertools
import random
from collections import defaultdict
from functools import lru_cache
from typing import Iterator

from .rbr import (
    Check,
    FormalSum,
    _basis_upto,
    _expand,
    _slot_pairs,
    act,
    all_signatures,
    differential,
    as_sum,
    compose_at,
    compose_basis,
    enumerate_basis,
    odd_tags,
    perm_sign,
    strip_word,
    tag_word,
)
from .trees import ROUND, SQUARE, BasisElement, Signature, TreeError


class NotBinaryError(TreeError):
    pass


def in_t21(e: BasisElement) -> bool:
    """Round neutral vertices are binary and square vertices unary."""
    for v in e.vertices():
        if v.kind == ROUND and len(v.children) != 2:
            return False
        if v.kind == SQUARE and len(v.children) != 1:
            return False
    return True


def _redexes(tw) -> list[tuple]:
    """Rule sites as (rule, tree index, path)."""
    out = []

    def go(j, path, n):
        if n[0] == ROUND and n[3][0][0] == ROUND:
            out.append(("R1", j, path))
        for i, c in enumerate(n[3]):
            go(j, path + (i,), c)

    for j, n in enumerate(tw):
        if n[0] == SQUARE and n[3][0][0] == ROUND:
            out.append(("R2", j, ()))
        go(j, (), n)
    return out


def _get(n, path):
    for i in path:
        n = n[3][i]
    return n


def _put(n, path, new):
    if not path:
        return new
    i = path[0]
    ch = n[3]
    return (n[0], n[1], n[2], ch[:i] + (_put(ch[i], path[1:], new),) + ch[i + 1 :])


def _rewrite(tw, rule, j, path):
    if rule == "R1":
        outer = _get(tw[j], path)
        inner, c = outer[3]
        a, b = inner[3]
        new = (ROUND, 0, outer[2], (a, (ROUND, 0, inner[2], (b, c))))
        return tw[:j] + (_put(tw[j], path, new),) + tw[j + 1 :]
    sq = tw[j]
    rnd = sq[3][0]
    a, b = rnd[3]
    return tw[:j] + ((SQUARE, 0, sq[2], (a,)), (SQUARE, 0, rnd[2], (b,))) + tw[j + 1 :]


def normal_form_signed(e: BasisElement, rng: random.Random | None = None) -> tuple[int, BasisElement]:
    """Return (sign, normal form) with ``e = sign * normal form`` in the quotient."""
    if not in_t21(e):
        raise NotBinaryError(f"{e.encode()} has a neutral vertex of the wrong arity")
    if rng is None:
        return _nf_cached(e)
    return _normal_form(e, rng)


def _normal_form(e: BasisElement, rng: random.Random | None) -> tuple[int, BasisElement]:
    tw = tag_word(e.word)
    wedge = odd_tags(tw)
    sign = 1
    while True:
        red = _redexes(tw)
        if not red:
            break
        rule, j, path = rng.choice(red) if rng else red[0]
        tw = _rewrite(tw, rule, j, path)
        sign = -sign
    sign *= perm_sign(wedge, odd_tags(tw))
    return sign, BasisElement(strip_word(tw), e.sig)


@lru_cache(maxsize=None)
def _nf_cached(e: BasisElement) -> tuple[int, BasisElement]:
    return _normal_form(e, None)


def normal_form(e: BasisElement) -> BasisElement:
    return normal_form_signed(e)[1]


def is_normal(e: BasisElement) -> bool:
    return in_t21(e) and not _redexes(tag_word(e.word))


def project(a) -> FormalSum:
    """Map an rBr combination to the quotient: drop non-binary terms, normalize the rest."""
    acc: dict = defaultdict(int)
    for e, c in as_sum(a).terms.items():
        if in_t21(e):
            s, nf = normal_form_signed(e)
            acc[nf] += s * c
    return FormalSum(acc)


phi = project


@lru_cache(maxsize=None)
def _enumerate_rs(sig: Signature) -> tuple[BasisElement, ...]:
    return tuple(e for e in enumerate_basis(sig) if is_normal(e))


def enumerate_basis_rs(sig: Signature | str, degree: int | None = None, convention: str = "lambda") -> list[BasisElement]:
    sig = Signature.of(sig)
    out = list(_enumerate_rs(sig))
    if degree is not None:
        out = [e for e in out if e.degree(convention) == degree]
    return out


@lru_cache(maxsize=None)
def _d_rs_basis(e: BasisElement) -> tuple:
    acc: dict = defaultdict(int)
    for r, s, _ in _expand(e):
        if in_t21(r):
            t, nf = normal_form_signed(r)
            acc[nf] += s * t
    return tuple((r, c) for r, c in acc.items() if c)


def differential_rs(a) -> FormalSum:
    acc: dict = defaultdict(int)
    for e, c in as_sum(a).terms.items():
        if not is_normal(e):
            s, e = normal_form_signed(e)
            c *= s
        for r, k in _d_rs_basis(e):
            acc[r] += c * k
    return FormalSum(acc)


def compose_rs(a, slot: int, b) -> FormalSum:
    acc: dict = defaultdict(int)
    for x, cx in as_sum(a).terms.items():
        for y, cy in as_sum(b).terms.items():
            for r, c in compose_basis(x, slot, y):
                if in_t21(r):
                    s, nf = normal_form_signed(r)
                    acc[nf] += cx * cy * c * s
    return FormalSum(acc)


def faces(e: BasisElement) -> Iterator[BasisElement]:
    """Codimension-one faces of a class: binary blow-ups taken one at a time, normalized."""
    seen = set()
    for r, _, _ in _expand(e):
        if in_t21(r):
            nf = normal_form(r)
            if nf not in seen:
                seen.add(nf)
                yield nf


def t21_elements(sig: Signature | str) -> list[BasisElement]:
    return [e for e in enumerate_basis(Signature.of(sig)) if in_t21(e)]


def classes(sig: Signature | str) -> dict[BasisElement, list[tuple[int, BasisElement]]]:
    """Normal form -> list of (sign, representative) over the whole binary part."""
    out: dict = defaultdict(list)
    for e in t21_elements(sig):
        s, nf = normal_form_signed(e)
        out[nf].append((s, e))
    return dict(out)


# ---------------------------------------------------------------- verification


def check_d_squared_rs(max_inputs: int = 4) -> Check:
    n = 0
    for sig in all_signatures(max_inputs):
        for e in enumerate_basis_rs(sig):
            n += 1
            dd = differential_rs(differential_rs(e))
            if dd:
                return Check("rs d^2 = 0", False, n, f"{sig} {e.encode()}: {dd!r}")
    return Check("rs d^2 = 0", True, n)


def check_confluence(max_inputs: int = 4, orders: int = 3) -> Check:
    """Random rewrite orders reach the same signed normal form."""
    n = 0
    for sig in all_signatures(max_inputs):
        for e in t21_elements(sig):
            n += 1
            ref = normal_form_signed(e)
            for seed in range(orders):
                if _normal_form(e, random.Random(seed)) != ref:
                    return Check("confluence", False, n, e.encode())
    return Check("confluence", True, n)


def check_chain_map(max_inputs: int = 4) -> Check:
    n = 0
    for sig in all_signatures(max_inputs):
        for e in enumerate_basis(sig):
            n += 1
            if project(differential(e)) != differential_rs(project(e)):
                return Check("projection commutes with d", False, n, f"{sig} {e.encode()}")
    return Check("projection commutes with d", True, n)


def check_composition(max_inputs: int = 4) -> Check:
    elements = _basis_upto(max_inputs)
    n = 0
    for a, slot, b in _slot_pairs(elements, elements, max_inputs):
        n += 1
        if project(compose_at(a, slot, b)) != compose_rs(project(a), slot, project(b)):
            return Check("projection preserves o_i", False, n, f"{a} o_{slot} {b}")
    return Check("projection preserves o_i", True, n)


def check_equivariance_rs(max_inputs: int = 4) -> Check:
    n = 0
    for sig in all_signatures(max_inputs):
        for e in enumerate_basis(sig):
            pe = project(e)
            for sigma in itertools.permutations(range(1, sig.arity + 1)):
                n += 1
                if project(act(e, sigma)) != project(act(pe, sigma)):
                    return Check("projection is equivariant", False, n, f"{e} . {sigma}")
    return Check("projection is equivariant", True, n)


def verify_projection(max_inputs: int = 4) -> list[Check]:
    return [
        check_chain_map(max_inputs),
        check_composition(max_inputs),
        check_equivariance_rs(max_inputs),
    ]
