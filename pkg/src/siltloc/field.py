"""Exact scalars and dense linear algebra over F_p and the rationals.

Matrices are plain numpy arrays: ``int64`` with entries in ``[0, p)`` for a
prime field, ``object`` arrays of :class:`fractions.Fraction` for the
rationals. Every routine here returns fresh arrays and never mutates its
inputs.

Bases returned by :meth:`Field.kernel_basis` and :meth:`Field.image_basis`
are stored as *columns*.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from ._kernels import rref_exact, rref_modp
from .errors import Inconsistent

# n * p**2 must stay below 2**63 in int64 matrix products.
_MAX_PRIME = 1 << 25


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Solution:
    """Solution set of ``m @ x = rhs``: ``particular + span(nullspace columns)``."""

    particular: np.ndarray
    nullspace: np.ndarray


class Field:
    """A prime field ``F_p`` (``p`` given) or the rationals (``p=None``)."""

    def __init__(self, p: int | None = None):
        if p is not None:
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
            if p >= _MAX_PRIME:
                raise ValueError(f"prime {p} too large for int64 kernels")
        self.p = p

    # ------------------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def dtype(self):
        return object if self.p is None else np.int64

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"F{self.p}"

    @classmethod
    def parse(cls, text: str) -> "Field":
        t = text.strip()
        if t in ("QQ", "Q"):
            return cls(None)
        if t.startswith("F") and t[1:].isdigit():
            return cls(int(t[1:]))
        if t.startswith("GF(") and t.endswith(")"):
            return cls(int(t[3:-1]))
        raise ValueError(f"unknown field {text!r}")

    # ------------------------------------------------------------------
    # scalars
    def scalar(self, x):
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.p)

    def elements(self):
        """All elements of a prime field, in increasing order."""
        if self.p is None:
            raise ValueError("the rationals are infinite")
        return range(self.p)

    # ------------------------------------------------------------------
    # matrices
    def array(self, data, shape: tuple[int, int] | None = None) -> np.ndarray:
        if self.p is None:
            arr = np.array(data, dtype=object)
            if shape is not None:
                arr = arr.reshape(shape)
            flat = arr.reshape(-1)
            for i in range(flat.size):
                flat[i] = Fraction(flat[i])
            return arr
        arr = np.array(data, dtype=object)
        if shape is not None:
            arr = arr.reshape(shape)
        flat = arr.reshape(-1)
        out = np.empty(flat.shape, dtype=np.int64)
        for i in range(flat.size):
            out[i] = self.scalar(flat[i])
        return out.reshape(arr.shape)

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.p is None:
            z = np.empty((rows, cols), dtype=object)
            z.fill(Fraction(0))
            return z
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        m = self.zeros(n, n)
        for i in range(n):
            m[i, i] = self.scalar(1)
        return m

    def reduce(self, m: np.ndarray) -> np.ndarray:
        if self.p is None:
            return m
        return np.mod(m, self.p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"shape mismatch {a.shape} @ {b.shape}")
        if a.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        if self.p is None:
            return a.dot(b)
        return (a @ b) % self.p

    def chain(self, *mats: np.ndarray) -> np.ndarray:
        out = mats[0]
        for m in mats[1:]:
            out = self.matmul(out, m)
        return out

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def neg(self, a):
        return self.reduce(-a)

    def scale(self, c, a):
        return self.reduce(self.scalar(c) * a)

    def hstack(self, mats: Sequence[np.ndarray], rows: int | None = None) -> np.ndarray:
        mats = list(mats)
        if not mats:
            return self.zeros(rows or 0, 0)
        return np.concatenate(mats, axis=1)

    def vstack(self, mats: Sequence[np.ndarray], cols: int | None = None) -> np.ndarray:
        mats = list(mats)
        if not mats:
            return self.zeros(0, cols or 0)
        return np.concatenate(mats, axis=0)

    def block_diag(self, mats: Sequence[np.ndarray]) -> np.ndarray:
        rows = sum(m.shape[0] for m in mats)
        cols = sum(m.shape[1] for m in mats)
        out = self.zeros(rows, cols)
        r = c = 0
        for m in mats:
            out[r:r + m.shape[0], c:c + m.shape[1]] = m
            r += m.shape[0]
            c += m.shape[1]
        return out

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.size == 0 or b.size == 0:
            return self.zeros(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
        return self.reduce(np.kron(a, b))

    def is_zero(self, m: np.ndarray) -> bool:
        return m.size == 0 or not np.any(m != 0)

    def random(self, rows: int, cols: int, rng: np.random.Generator, bound: int = 5) -> np.ndarray:
        if self.p is None:
            return self.array(rng.integers(-bound, bound + 1, size=(rows, cols)))
        return rng.integers(0, self.p, size=(rows, cols)).astype(np.int64)

    # ------------------------------------------------------------------
    # elimination
    def rref(self, m: np.ndarray) -> tuple[np.ndarray, int, list[int]]:
        """Reduced row echelon form, rank and pivot columns.

        Pivots are chosen as the leftmost nonzero column, smallest row index.
        """
        a = np.array(m, dtype=self.dtype, copy=True)
        if a.ndim != 2:
            raise ValueError("rref expects a 2-d array")
        if a.size == 0:
            return a, 0, []
        if self.p is None:
            pivots = rref_exact(a)
        else:
            a = np.ascontiguousarray(a)
            pivots = list(rref_modp(a, self.p))
        return a, len(pivots), pivots

    def rank(self, m: np.ndarray) -> int:
        if m.size == 0:
            return 0
        return self.rref(m)[1]

    def solve(self, m: np.ndarray, rhs: np.ndarray) -> Solution:
        """Solve ``m @ x = rhs``; ``rhs`` may have several columns.

        Raises :class:`Inconsistent` when no solution exists.
        """
        if rhs.ndim == 1:
            rhs = rhs.reshape(-1, 1)
        rows, cols = m.shape
        if rhs.shape[0] != rows:
            raise ValueError("row counts of matrix and right-hand side differ")
        k = rhs.shape[1]
        aug = self.hstack([m, rhs], rows) if cols + k else self.zeros(rows, 0)
        r, rank, pivots = self.rref(aug)
        if any(pc >= cols for pc in pivots):
            raise Inconsistent("linear system has no solution")
        x = self.zeros(cols, k)
        for i, pc in enumerate(pivots):
            x[pc, :] = r[i, cols:]
        return Solution(x, self._nullspace_from_rref(r[:, :cols], pivots, cols))

    def _nullspace_from_rref(self, r: np.ndarray, pivots: list[int], cols: int) -> np.ndarray:
        pivset = set(pivots)
        free = [c for c in range(cols) if c not in pivset]
        basis = self.zeros(cols, len(free))
        if not free:
            return basis
        basis[free, range(len(free))] = self.scalar(1)
        if pivots:
            basis[pivots, :] = self.neg(r[:len(pivots)][:, free])
        return basis

    def kernel_basis(self, m: np.ndarray) -> np.ndarray:
        """Columns spanning ``{x : m @ x = 0}``; ``dim = cols - rank``."""
        rows, cols = m.shape
        if rows == 0:
            return self.eye(cols)
        r, _, pivots = self.rref(m)
        return self._nullspace_from_rref(r, pivots, cols)

    def image_basis(self, m: np.ndarray) -> np.ndarray:
        """Columns spanning the column space of ``m``, in reduced echelon form."""
        rows, cols = m.shape
        if cols == 0 or rows == 0:
            return self.zeros(rows, 0)
        r, rank, _ = self.rref(m.T)
        return np.array(r[:rank].T, copy=True)

    def cokernel_projection(self, m: np.ndarray) -> tuple[np.ndarray, int]:
        """A full-row-rank ``q`` with ``q @ m = 0`` and ``rows(q) = rows(m) - rank(m)``."""
        q = self.kernel_basis(m.T).T
        return np.array(q, copy=True), q.shape[0]

    def left_inverse(self, m: np.ndarray) -> np.ndarray:
        """Some ``l`` with ``l @ m = I`` for ``m`` of full column rank."""
        rows, cols = m.shape
        sol = self.solve(m.T, self.eye(cols))
        return sol.particular.T

    def right_inverse(self, m: np.ndarray) -> np.ndarray:
        """Some ``r`` with ``m @ r = I`` for ``m`` of full row rank."""
        rows, cols = m.shape
        return self.solve(m, self.eye(rows)).particular

    def inverse(self, m: np.ndarray) -> np.ndarray:
        if m.shape[0] != m.shape[1]:
            raise ValueError("inverse of a non-square matrix")
        sol = self.solve(m, self.eye(m.shape[0]))
        if sol.nullspace.shape[1]:
            raise Inconsistent("matrix is singular")
        return sol.particular

    def in_span(self, basis: np.ndarray, v: np.ndarray) -> bool:
        """Whether the columns of ``v`` lie in the column span of ``basis``."""
        if v.ndim == 1:
            v = v.reshape(-1, 1)
        return self.rank(self.hstack([basis, v], v.shape[0])) == self.rank(basis)

    def complement_columns(self, basis: np.ndarray, ambient: np.ndarray) -> np.ndarray:
        """Columns of ``ambient`` (greedy, in order) completing ``basis`` to span both."""
        n = ambient.shape[0]
        chosen = []
        current = basis
        rank = self.rank(current)
        for j in range(ambient.shape[1]):
            cand = self.hstack([current, ambient[:, j:j + 1]], n)
            rk = self.rank(cand)
            if rk > rank:
                chosen.append(ambient[:, j:j + 1])
                current, rank = cand, rk
        return self.hstack(chosen, n)

    def vec_iter(self, n: int) -> Iterable[np.ndarray]:
        """All vectors of length ``n`` over a prime field, lexicographically."""
        import itertools

        for tup in itertools.product(range(self.p), repeat=n):
            yield np.array(tup, dtype=np.int64)


QQ = Field(None)


def GF(p: int) -> Field:
    return Field(p)
