"""Rewriting check for the quadratic operad generated by mu, rho and f.

Terms are nested tuples ``("mu", a, b)``, ``("rho", a, w)``, ``("f", a)``
with closed leaves ``x1, x2, ...`` and the open leaf ``v``.  The relations
are oriented by mu > rho > f:

    mu(mu(a, b), c) -> mu(a, mu(b, c))
    rho(mu(a, b), w) -> rho(a, rho(b, w))
    f(mu(a, b))      -> rho(a, f(b))

Each critical term is rewritten along every possible path; the check passes
when all paths end in one normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache


def mu(a, b):
    return ("mu", a, b)


def rho(a, w):
    return ("rho", a, w)


def f(a):
    return ("f", a)


def _root_step(t):
    if isinstance(t, tuple):
        if t[0] == "mu" and _is(t[1], "mu"):
            a, b = t[1][1], t[1][2]
            return mu(a, mu(b, t[2]))
        if t[0] == "rho" and _is(t[1], "mu"):
            a, b = t[1][1], t[1][2]
            return rho(a, rho(b, t[2]))
        if t[0] == "f" and _is(t[1], "mu"):
            a, b = t[1][1], t[1][2]
            return rho(a, f(b))
    return None


def _is(t, head: str) -> bool:
    return isinstance(t, tuple) and t[0] == head


def one_step(t) -> list:
    """All terms reachable by rewriting one redex of t."""
    out = []
    r = _root_step(t)
    if r is not None:
        out.append(r)
    if isinstance(t, tuple):
        for i in range(1, len(t)):
            for s in one_step(t[i]):
                out.append(t[:i] + (s,) + t[i + 1 :])
    return out


def is_normal(t) -> bool:
    return not one_step(t)


@lru_cache(maxsize=None)
def normal_forms(t) -> frozenset:
    """Every normal form reachable from t (the system terminates, so this is finite)."""
    nxt = one_step(t)
    if not nxt:
        return frozenset([t])
    out = frozenset()
    for s in nxt:
        out |= normal_forms(s)
    return out


def show(t) -> str:
    if not isinstance(t, tuple):
        return t
    return f"{t[0]}(" + ", ".join(show(s) for s in t[1:]) + ")"


x1, x2, x3, x4, v = "x1", "x2", "x3", "x4", "v"

CRITICAL = {
    "mu.mu.mu": mu(mu(mu(x1, x2), x3), x4),
    "rho.mu.mu": rho(mu(mu(x1, x2), x3), v),
    "f.mu.mu": f(mu(mu(x1, x2), x3)),
}


def _closed_terms(leaves: tuple, weight: int):
    """Closed-output monomials in the given leaves, in order, with ``weight`` generators."""
    if weight == 0:
        if len(leaves) == 1:
            yield leaves[0]
        return
    for k in range(1, len(leaves)):
        for w in range(weight):
            for a in _closed_terms(leaves[:k], w):
                for b in _closed_terms(leaves[k:], weight - 1 - w):
                    yield mu(a, b)


def _open_terms(leaves: tuple, weight: int, with_v: bool):
    if weight == 0:
        if with_v and not leaves:
            yield v
        return
    if not with_v and weight >= 1:
        for a in _closed_terms(leaves, weight - 1):
            yield f(a)
    for k in range(1, len(leaves) + 1):
        for w in range(weight):
            for a in _closed_terms(leaves[:k], w):
                for b in _open_terms(leaves[k:], weight - 1 - w, with_v):
                    yield rho(a, b)


def monomials(signature: str, weight: int) -> list:
    """Planar monomials of the free operad: ``signature`` in {closed, open_v, open_f}."""
    if signature == "closed":
        leaves = tuple(f"x{i}" for i in range(1, weight + 2))
        return list(_closed_terms(leaves, weight))
    if signature == "open_v":
        leaves = tuple(f"x{i}" for i in range(1, weight + 1))
        return list(_open_terms(leaves, weight, True))
    leaves = tuple(f"x{i}" for i in range(1, weight + 1))
    return list(_open_terms(leaves, weight, False))


@dataclass
class KoszulReport:
    ok: bool
    pairs: dict = field(default_factory=dict)
    normal_counts: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "critical_pairs": self.pairs, "normal_monomials": self.normal_counts}


def koszul_confluence_check(weight: int = 3) -> KoszulReport:
    pairs = {}
    for name, t in CRITICAL.items():
        branches = [show(s) for s in one_step(t)]
        nfs = normal_forms(t)
        pairs[name] = {
            "term": show(t),
            "branches": branches,
            "normal_forms": sorted(show(s) for s in nfs),
            "confluent": len(nfs) == 1,
        }
    counts = {}
    ok_counts = True
    for sig in ("closed", "open_v", "open_f"):
        mons = monomials(sig, weight)
        normal = [m for m in mons if is_normal(m)]
        every_term_single = all(len(normal_forms(m)) == 1 for m in mons)
        counts[sig] = {"monomials": len(mons), "normal": len(normal), "unique_normal_forms": every_term_single}
        ok_counts &= len(normal) == 1 and every_term_single
    ok = all(p["confluent"] for p in pairs.values()) and ok_counts
    return KoszulReport(ok, pairs, counts)
