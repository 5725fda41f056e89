"""The action of rBr on the deformation complex.

A tree acts by nested braces: a labeled vertex contributes its argument, a
round neutral vertex the closed part of the Maurer-Cartan element, a square
neutral vertex its open part; children are braced into their parent in
planar order, and the trees of a word are grafted into each other's open
input from left to right.  The odd neutral vertices sit, as a wedge in
preorder, in front of the arguments; moving everything into preorder costs
the Koszul sign.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..rbr import FormalSum, as_sum, differential, generators_up_to
from ..trees import CLOSED, OPEN, ROUND, SQUARE, BasisElement, Color, Tree
from .algebra import AffineAction
from .cochains import Cochain, Space, brace, closed_differential, graft, mc_element, open_differential


class ArgumentError(ValueError):
    pass


def _check_args(e: BasisElement, args) -> None:
    if len(args) != e.sig.arity:
        raise ArgumentError(f"{e.encode()} takes {e.sig.arity} arguments, got {len(args)}")
    for i, (c, z) in enumerate(zip(e.sig.inputs, args), 1):
        if c is Color.CLOSED and z.open:
            raise ArgumentError(f"input {i} is closed but its argument has open components")
        if c is Color.OPEN and z.closed:
            raise ArgumentError(f"input {i} is open but its argument has closed components")


def koszul_sign(e: BasisElement, degrees) -> int:
    """Sign of moving (neutral wedge, z_1, ..., z_n) into preorder."""
    source = []  # (id, degree)
    target = []
    k = 0
    for v in e.vertices():
        if v.kind in (ROUND, SQUARE):
            source.append((("n", k), 1))
            target.append(("n", k))
            k += 1
        else:
            target.append(("z", v.label))
    source += [(("z", i), degrees[i - 1]) for i in range(1, len(degrees) + 1)]
    pos = {t: j for j, t in enumerate(target)}
    odd = [(pos[s], d) for s, d in source if d % 2]
    inv = sum(1 for i in range(len(odd)) for j in range(i + 1, len(odd)) if odd[i][0] > odd[j][0])
    return -1 if inv % 2 else 1


def _eval_tree(t: Tree, args, eta: Cochain) -> Cochain:
    if t.kind == ROUND:
        op = eta.closed
    elif t.kind == SQUARE:
        op = eta.open
    else:
        op = args[t.label - 1]
    return brace(op, [_eval_tree(c, args, eta) for c in t.children])


def brace_eval(g, args, data: AffineAction | None = None, eta: Cochain | None = None) -> Cochain:
    """Evaluate a basis element or formal sum of rBr on homogeneous arguments."""
    if eta is None:
        if data is None:
            raise ArgumentError("need the action data or a Maurer-Cartan element")
        eta = mc_element(data, args[0].space.N if args else 4)
    total = eta.space.zero()
    degs = [z.degree() for z in args]
    for e, c in as_sum(g):
        _check_args(e, args)
        val = _eval_tree(e.word[0], args, eta)
        for t in e.word[1:]:
            val = graft(val, _eval_tree(t, args, eta))
        total = total + val.scale(c * koszul_sign(e, degs))
    return total


def pair_differential(eta: Cochain, z: Cochain) -> Cochain:
    """Differential of the pair (closed part, open part): [eta_cl, -] and the open Hochschild differential.

    The whistle term eta_op o z_cl of the full deformation differential is not
    part of it; it is the action of the square corolla with one leaf.
    """
    return closed_differential(eta, z) + open_differential(eta, z)


def action_defect(g: BasisElement, args, eta: Cochain) -> Cochain:
    """[d, A(g)](args) - A(dg)(args); zero when the action is a chain map."""
    deg = -g.neutral_count()
    lhs = pair_differential(eta, brace_eval(g, args, eta=eta))
    acc = 0
    for i, z in enumerate(args):
        moved = list(args)
        moved[i] = pair_differential(eta, z)
        s = -1 if (deg + acc) % 2 else 1
        lhs = lhs - brace_eval(g, moved, eta=eta).scale(s)
        acc += z.degree()
    dg = differential(g)
    rhs = brace_eval(dg, args, eta=eta) if dg else eta.space.zero()
    return lhs - rhs


DEGREES = {"c": (0, -1, -2), "o": (0, -1, -2)}


def random_args(e: BasisElement, space: Space, rng: np.random.Generator, max_arity: int = 3) -> list[Cochain]:
    """Random homogeneous arguments of mixed parity, colored by the signature."""
    out = []
    for c in e.sig.inputs:
        d = int(rng.choice(DEGREES[c.value]))
        part = "closed" if c is Color.CLOSED else "open"
        out.append(space.random(rng, d, part, max_arity=max_arity))
    return out


@dataclass
class RelationReport:
    ok: bool
    samples: int
    seed: int
    field: str
    N: int
    per_generator: dict = field(default_factory=dict)
    witness: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "samples": self.samples,
            "seed": self.seed,
            "field": self.field,
            "N": self.N,
            "generators": self.per_generator,
            "witness": self.witness,
        }


def verify_appendix_relations(data: AffineAction, samples: int = 100, seed: int = 0, max_inputs: int = 4, N: int = 5) -> RelationReport:
    """Check the chain-map law on random arguments for every generator with at most ``max_inputs`` inputs."""
    eta = mc_element(data, N)
    sp = eta.space
    per, witness = {}, {}
    for j, (name, g) in enumerate(generators_up_to(max_inputs)):
        rng = np.random.default_rng([seed, j])
        fails = 0
        nonzero = 0
        dg = differential(g)
        for s in range(samples):
            args = random_args(g, sp, rng)
            defect = action_defect(g, args, eta)
            if brace_eval(g, args, eta=eta) or any(brace_eval(e, args, eta=eta) for e, _ in dg):
                nonzero += 1
            if defect:
                fails += 1
                if name not in witness:
                    k, idx = defect.first_nonzero()
                    witness[name] = {"sample": s, "degrees": [z.degree() for z in args], "component": list(k), "index": list(idx)}
        per[name] = {"tree": g.encode(), "sig": str(g.sig), "failures": fails, "nontrivial_samples": nonzero}
    ok = all(v["failures"] == 0 for v in per.values())
    return RelationReport(ok, samples, seed, str(data.field), N, per, witness)
