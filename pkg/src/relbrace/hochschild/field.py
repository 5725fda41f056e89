"""Exact scalar fields: the rationals and prime fields F_p.

Arrays over F_p are int64 reduced mod p; arrays over Q are numpy object
arrays of Fraction.  Both support tensordot, which is all the cochain code
needs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, int(p**0.5) + 1))


@dataclass(frozen=True)
class Field:
    p: int = 0  # 0 means the rationals

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return "Q" if not self.p else f"F_{self.p}"

    def __str__(self) -> str:
        return self.name

    @classmethod
    def from_json(cls, spec) -> "Field":
        if spec in (None, "Q", "QQ", "rationals"):
            return cls(0)
        if isinstance(spec, dict) and "p" in spec:
            return cls(int(spec["p"]))
        if isinstance(spec, int):
            return cls(spec)
        raise ValueError(f"unrecognized field {spec!r}")

    def to_json(self):
        return "Q" if not self.p else {"p": self.p}

    # scalars
    def scalar(self, x):
        if self.p:
            if isinstance(x, Fraction):
                return int(x.numerator) * pow(int(x.denominator), -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if self.p:
            return pow(int(x), -1, self.p)
        return 1 / Fraction(x)

    # arrays
    def array(self, data) -> np.ndarray:
        a = np.asarray(data, dtype=object)
        return self.reduce(np.vectorize(self.scalar, otypes=[object])(a) if a.size else a)

    def zeros(self, shape) -> np.ndarray:
        if self.p:
            return np.zeros(shape, dtype=np.int64)
        z = np.empty(shape, dtype=object)
        z.fill(Fraction(0))
        return z

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.p:
            return np.mod(np.asarray(a).astype(np.int64), self.p)
        a = np.asarray(a, dtype=object)
        return a

    def random(self, shape, rng: np.random.Generator) -> np.ndarray:
        if self.p:
            return rng.integers(0, self.p, size=shape, dtype=np.int64)
        vals = rng.integers(-3, 4, size=shape)
        return np.vectorize(Fraction, otypes=[object])(vals) if vals.size else self.zeros(shape)

    def tensordot(self, a, b, axes):
        return self.reduce(np.tensordot(a, b, axes=axes))

    def is_zero(self, a: np.ndarray) -> bool:
        return not np.any(self.reduce(a) != 0)

    # linear algebra; matrices are 2-d arrays or lists of rows
    def matrix(self, rows) -> np.ndarray:
        a = np.asarray(rows, dtype=object if not self.p else np.int64)
        if a.ndim != 2:
            a = a.reshape(len(rows), -1) if len(rows) else np.zeros((0, 0), dtype=a.dtype)
        return self.reduce(a) if self.p else np.vectorize(Fraction, otypes=[object])(a) if a.size else a

    def rref(self, rows) -> tuple[np.ndarray, list[int]]:
        A = self.matrix(rows).copy()
        nr, nc = A.shape
        piv: list[int] = []
        r = 0
        for c in range(nc):
            if r == nr:
                break
            nz = np.nonzero(A[r:, c] != 0)[0]
            if not len(nz):
                continue
            k = r + int(nz[0])
            if k != r:
                A[[r, k]] = A[[k, r]]
            A[r] = self.reduce(A[r] * self.inv(A[r, c]))
            col = A[:, c].copy()
            col[r] = 0
            rows_nz = np.nonzero(col != 0)[0]
            if len(rows_nz):
                A[rows_nz] = self.reduce(A[rows_nz] - np.outer(col[rows_nz], A[r]))
            piv.append(c)
            r += 1
        return A[:r], piv

    def rank(self, rows) -> int:
        A = self.matrix(rows)
        if not A.size:
            return 0
        return len(self.rref(A)[1])

    def nullspace(self, rows, ncols: int) -> np.ndarray:
        """Rows form a basis of {x : M x = 0}."""
        A = self.matrix(rows) if len(rows) else self.zeros((0, ncols))
        R, piv = self.rref(A) if A.size else (A, [])
        free = [c for c in range(ncols) if c not in piv]
        out = self.zeros((len(free), ncols))
        for j, f in enumerate(free):
            out[j, f] = 1
            for i, c in enumerate(piv):
                out[j, c] = -R[i, f]
        return self.reduce(out)

    def matmul(self, a, b) -> np.ndarray:
        return self.reduce(np.dot(a, b))


QQ = Field(0)
GF101 = Field(101)


def GF(p: int) -> Field:
    return Field(p)
