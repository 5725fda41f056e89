"""Finite-dimensional algebras, affine actions and the algebra End+(V) = V x| End(V)."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from itertools import product
from pathlib import Path

import numpy as np

from .field import Field, QQ


class ActionError(ValueError):
    """Malformed input or a violated law; ``witness`` names the failing basis tuple."""

    def __init__(self, message: str, law: str = "", witness=None):
        super().__init__(message)
        self.law = law
        self.witness = witness


@dataclass
class Algebra:
    """Structure constants ``mult[i, j, k]``: coefficient of e_k in e_i e_j."""

    field: Field
    mult: np.ndarray
    names: list[str] | None = None

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    def times(self, a, b):
        F = self.field
        return F.tensordot(F.tensordot(F.array(a), self.mult, ([0], [0])), F.array(b), ([0], [0]))

    def associator_witness(self):
        F, m = self.field, self.mult
        left = F.tensordot(m, m, ([2], [0]))  # (e_i e_j) e_l -> [i, j, l, k]
        right = np.moveaxis(F.tensordot(m, m, ([2], [1])), 2, 0)  # e_i (e_j e_l) -> [i, j, l, k]
        bad = np.argwhere(F.reduce(left - right) != 0)
        return tuple(int(x) for x in bad[0][:3]) if len(bad) else None

    def unit(self):
        """The unit as a coefficient vector, or None."""
        F, n = self.field, self.dim
        # unknown u with u e_j = e_j and e_j u = e_j for all j
        rows, rhs = [], []
        for j in range(n):
            for k in range(n):
                rows.append([self.mult[i, j, k] for i in range(n)])
                rhs.append(int(j == k))
                rows.append([self.mult[j, i, k] for i in range(n)])
                rhs.append(int(j == k))
        aug = [r + [b] for r, b in zip(rows, rhs)]
        R, piv = F.rref(aug)
        if n in piv:
            return None
        u = [F.scalar(0)] * n
        for i, c in enumerate(piv):
            u[c] = R[i][n]
        return F.array(u)

    def center_basis(self) -> list:
        F, n = self.field, self.dim
        # z with z e_j - e_j z = 0
        comm = F.reduce(self.mult - np.transpose(self.mult, (1, 0, 2)))
        rows = [[comm[i, j, k] for i in range(n)] for j in range(n) for k in range(n)]
        return list(F.nullspace(rows, n))


@dataclass
class AffineAction:
    """An algebra A, a left module V with matrices ``rho[a]`` and a map ``f[a]`` into V.

    ``rho[a][row][col]`` is the matrix of e_a acting on column vectors.
    """

    algebra: Algebra
    rho: np.ndarray
    f: np.ndarray
    name: str = ""

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def dim_A(self) -> int:
        return self.algebra.dim

    @property
    def dim_V(self) -> int:
        return self.f.shape[1]

    def alpha(self, a) -> "EndPlusElement":
        F = self.field
        a = F.array(a)
        return EndPlusElement(F.tensordot(a, self.f, ([0], [0])), F.tensordot(a, self.rho, ([0], [0])), F)

    def to_json(self) -> dict:
        def plain(x):
            return [plain(y) for y in x] if isinstance(x, (list, np.ndarray)) else _scalar_json(x)

        return {
            "field": self.field.to_json(),
            "dim": self.dim_A,
            "mult": plain(self.algebra.mult),
            "module": {"dim": self.dim_V, "rho": plain(self.rho), "f": plain(self.f)},
        }


def _scalar_json(x):
    from fractions import Fraction

    x = x if not isinstance(x, np.integer) else int(x)
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return x


@dataclass
class EndPlusElement:
    v: np.ndarray
    phi: np.ndarray
    field: Field = field(default=QQ)

    def __mul__(self, other: "EndPlusElement") -> "EndPlusElement":
        return end_plus_product(self, other)

    def __eq__(self, other) -> bool:
        F = self.field
        return F.is_zero(self.v - other.v) and F.is_zero(self.phi - other.phi)

    def flat(self) -> np.ndarray:
        return np.concatenate([self.v.reshape(-1), self.phi.reshape(-1)])

    @classmethod
    def unit(cls, dim: int, F: Field = QQ) -> "EndPlusElement":
        return cls(F.zeros(dim), F.array(np.eye(dim, dtype=int)), F)


def end_plus_product(x: EndPlusElement, y: EndPlusElement) -> EndPlusElement:
    """(v, phi)(w, psi) = (phi w, phi psi)."""
    if x.v.shape != y.v.shape or x.phi.shape != y.phi.shape:
        raise ActionError(f"End+ dimension mismatch {x.v.shape} vs {y.v.shape}")
    F = x.field
    return EndPlusElement(F.tensordot(x.phi, y.v, ([1], [0])), F.tensordot(x.phi, y.phi, ([1], [0])), F)


@dataclass
class Report:
    ok: bool
    checks: dict = field(default_factory=dict)
    witness: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": self.checks, "witness": self.witness}


def validate_affine_action(data: AffineAction) -> Report:
    """Check associativity, the module law, f(ab) = rho(a) f(b) and that alpha is multiplicative."""
    F, m, rho, f = data.field, data.algebra.mult, data.rho, data.f
    n = data.dim_A
    checks, witness = {}, {}
    a = data.algebra.associator_witness()
    checks["associative"] = a is None
    if a is not None:
        witness["associative"] = list(a)
    # rho(e_i e_j) = rho(e_i) rho(e_j);  f(e_i e_j) = rho(e_i) f(e_j)
    rho_prod = F.tensordot(m, rho, ([2], [0]))
    rho_comp = np.transpose(F.tensordot(rho, rho, ([2], [1])), (0, 2, 1, 3))
    f_prod = F.tensordot(m, f, ([2], [0]))
    f_comp = np.transpose(F.tensordot(rho, f, ([2], [1])), (0, 2, 1))
    for law, lhs, rhs in (("module", rho_prod, rho_comp), ("f_compatible", f_prod, f_comp)):
        bad = np.argwhere(F.reduce(lhs - rhs) != 0)
        checks[law] = not len(bad)
        if len(bad):
            witness[law] = [int(bad[0][0]), int(bad[0][1])]
    # alpha(e_i e_j) = alpha(e_i) alpha(e_j) in End+; implied by the two laws above but checked directly
    ok = True
    for i, j in product(range(n), repeat=2):
        ei, ej = _unit_vec(F, n, i), _unit_vec(F, n, j)
        if not data.alpha(data.algebra.times(ei, ej)) == data.alpha(ei) * data.alpha(ej):
            ok = False
            witness.setdefault("alpha_morphism", [i, j])
            break
    checks["alpha_morphism"] = ok
    return Report(all(checks.values()), checks, witness)


def _unit_vec(F: Field, n: int, i: int):
    return F.array([int(k == i) for k in range(n)])


# ---------------------------------------------------------------- input


def action_from_json(data: dict, name: str = "") -> AffineAction:
    try:
        F = Field.from_json(data.get("field", "Q"))
        n = int(data["dim"])
        mult = F.array(data["mult"])
        mod = data["module"]
        m = int(mod["dim"])
        rho = F.array(mod["rho"])
        f = F.array(mod["f"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ActionError(f"malformed algebra file: {exc}", "schema") from None
    if n == 0:
        mult = F.zeros((0, 0, 0))
        rho = F.zeros((0, m, m))
        f = F.zeros((0, m))
    if mult.shape != (n, n, n):
        raise ActionError(f"mult has shape {mult.shape}, expected {(n, n, n)}", "schema")
    if rho.shape != (n, m, m):
        raise ActionError(f"rho has shape {rho.shape}, expected {(n, m, m)}", "schema")
    if f.shape != (n, m):
        raise ActionError(f"f has shape {f.shape}, expected {(n, m)}", "schema")
    return AffineAction(Algebra(F, mult, data.get("names")), rho, f, name)


_LAW_TEXT = {
    "associative": "multiplication is not associative on basis triple",
    "module": "rho is not multiplicative, rho(ab) != rho(a)rho(b) on basis pair",
    "f_compatible": "f(ab) != rho(a) f(b) on basis pair",
    "alpha_morphism": "alpha = (f, rho) is not an algebra map into End+(V) on basis pair",
}


def load_algebra(path, validate: bool = True, p: int | None = None) -> AffineAction:
    """Read an action file; ``p`` overrides its field (0 for the rationals)."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ActionError(f"{path}: cannot read ({exc})", "schema") from None
    if not isinstance(data, dict):
        raise ActionError(f"{path}: expected a JSON object", "schema")
    if p is not None:
        data["field"] = {"p": p} if p else "Q"
    act = action_from_json(data, path.stem)
    if validate:
        rep = validate_affine_action(act)
        if not rep.ok:
            law = next(k for k, v in rep.checks.items() if not v)
            raise ActionError(f"{path.name}: {_LAW_TEXT[law]} {rep.witness[law]}", law, rep.witness[law])
    return act


BUNDLED = ("dual_numbers", "truncated_poly3", "upper_triangular", "nilpotent_whistle")


def bundled(name: str, p: int | None = None) -> AffineAction:
    """A bundled example; ``p`` overrides the field stored in the file."""
    text = resources.files("relbrace.data").joinpath(f"{name}.json").read_text()
    data = json.loads(text)
    if p is not None:
        data["field"] = {"p": p} if p else "Q"
    act = action_from_json(data, name)
    rep = validate_affine_action(act)
    if not rep.ok:
        raise ActionError(f"bundled example {name} fails {rep.checks}")
    return act


def bundled_actions(p: int | None = None) -> list[AffineAction]:
    return [bundled(n, p) for n in BUNDLED]
