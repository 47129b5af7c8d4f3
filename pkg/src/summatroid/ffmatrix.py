"""Dense linear algebra over the levels of a :class:`FieldTower`.

The workhorse functions take the tower and a 2-D integer ndarray of element
codes.  Because every subfield sits inside F, one routine serves all levels:
a matrix with entries in K_i row-reduces to a matrix with entries in K_i, and
its rank over K_i equals its rank over F.

:class:`Matrix` is a thin immutable wrapper that records the field level and
checks membership; it is what gets serialized.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import ProfileMismatchError
from .field_tower import FieldTower


def as_array(A) -> np.ndarray:
    arr = np.asarray(A, dtype=np.intp)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    return arr


def matmul(F: FieldTower, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A, B = as_array(A), as_array(B)
    if A.shape[1] != B.shape[0]:
        raise ProfileMismatchError(f"cannot multiply {A.shape} by {B.shape}")
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.intp)
    if A.shape[0] == 0 or B.shape[1] == 0:
        return out
    terms = F.mul_table[A[:, :, None], B[None, :, :]]
    for j in range(A.shape[1]):
        out = F.add_table[out, terms[:, j, :]]
    return out


def rref(F: FieldTower, A) -> tuple[np.ndarray, int, tuple[int, ...]]:
    """Reduced row-echelon form (leftmost pivots, pivots scaled to 1).

    Returns ``(R, rank, pivot_columns)`` with ``R`` of the same shape as ``A``
    and zero rows at the bottom.
    """
    R = as_array(A).copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        s = r + int(nz[0])
        if s != r:
            R[[r, s]] = R[[s, r]]
        R[r] = F.mul_table[F.inv_table[R[r, c]], R[r]]
        factors = R[:, c].copy()
        factors[r] = 0
        if factors.any():
            R = F.sub_table[R, F.mul_table[factors[:, None], R[r][None, :]]]
        pivots.append(c)
        r += 1
    return R, r, tuple(pivots)


def rank(F: FieldTower, A) -> int:
    A = as_array(A)
    if A.size == 0:
        return 0
    return rref(F, A)[1]


def row_basis(F: FieldTower, A, cols: int | None = None) -> np.ndarray:
    """Canonical basis (RREF without zero rows) of the row space of ``A``."""
    A = as_array(A)
    if A.size == 0:
        return np.zeros((0, A.shape[1] if cols is None else cols), dtype=np.intp)
    R, r, _ = rref(F, A)
    return R[:r]


def kernel_basis(F: FieldTower, A, cols: int | None = None) -> np.ndarray:
    """Rows spanning ``{x : A x^T = 0}``, in canonical RREF."""
    A = as_array(A)
    n = A.shape[1] if A.size else (cols if cols is not None else A.shape[1])
    if A.size == 0:
        return np.eye(n, dtype=np.intp)
    R, r, pivots = rref(F, A)
    free = [c for c in range(n) if c not in pivots]
    K = np.zeros((len(free), n), dtype=np.intp)
    for t, f in enumerate(free):
        K[t, f] = 1
        for j, pc in enumerate(pivots):
            K[t, pc] = F.neg_table[R[j, f]]
    return row_basis(F, K, n) if len(free) else K


def left_kernel_basis(F: FieldTower, A) -> np.ndarray:
    """Rows spanning ``{y : y A = 0}``."""
    A = as_array(A)
    return kernel_basis(F, A.T, cols=A.shape[0])


def invertible(F: FieldTower, A) -> bool:
    A = as_array(A)
    if A.shape[0] != A.shape[1]:
        raise ProfileMismatchError(f"invertibility needs a square matrix, got {A.shape}")
    return rank(F, A) == A.shape[0]


def block_diag(parts: Sequence[np.ndarray]) -> np.ndarray:
    parts = [np.asarray(P, dtype=np.intp).reshape(np.shape(P)) for P in parts]
    rows = sum(P.shape[0] for P in parts)
    cols = sum(P.shape[1] for P in parts)
    out = np.zeros((rows, cols), dtype=np.intp)
    r = c = 0
    for P in parts:
        out[r:r + P.shape[0], c:c + P.shape[1]] = P
        r += P.shape[0]
        c += P.shape[1]
    return out


def same_row_space(F: FieldTower, A, B) -> bool:
    a, b = row_basis(F, A), row_basis(F, B)
    return a.shape == b.shape and bool(np.array_equal(a, b))


def intersect_row_spaces(F: FieldTower, A, B) -> np.ndarray:
    """Canonical basis of rowspace(A) ∩ rowspace(B), via the left kernel of [A; B]."""
    A, B = as_array(A), as_array(B)
    if A.shape[0] == 0 or B.shape[0] == 0:
        return np.zeros((0, max(A.shape[1], B.shape[1])), dtype=np.intp)
    stacked = np.vstack([A, B])
    Y = left_kernel_basis(F, stacked)
    if Y.shape[0] == 0:
        return np.zeros((0, A.shape[1]), dtype=np.intp)
    return row_basis(F, matmul(F, Y[:, :A.shape[0]], A))


def span_elements(F: FieldTower, A, scalars: Sequence[int]) -> np.ndarray:
    """Every ``x A`` with ``x`` ranging over ``scalars^rows``, as rows (rows**len(scalars) of them)."""
    A = as_array(A)
    vecs = np.zeros((1, A.shape[1]), dtype=np.intp)
    scal = np.asarray(scalars, dtype=np.intp)
    for row in A:
        multiples = F.mul_table[scal[:, None], row[None, :]]  # (|S|, n)
        vecs = F.add_table[vecs[:, None, :], multiples[None, :, :]].reshape(-1, A.shape[1])
    return vecs


@dataclass(frozen=True, eq=False)
class Matrix:
    """A matrix whose entries lie in the subfield GF(p^level) of the tower.

    ``level`` is the degree over the prime field: ``tower.M`` for F itself,
    ``tower.degrees[i]`` for K_i, ``1`` for the prime field.
    """

    tower: FieldTower
    entries: np.ndarray
    level: int

    def __post_init__(self):
        arr = as_array(self.entries).copy()
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)
        if self.tower.M % self.level:
            raise ProfileMismatchError(f"level {self.level} is not a subfield degree")
        fixed = arr.copy()
        for _ in range(self.level):
            fixed = self.tower.frobenius_table[fixed]
        if not np.array_equal(fixed, arr):
            raise ValueError(f"entries are not all in GF({self.tower.p}^{self.level})")

    @classmethod
    def over_F(cls, tower: FieldTower, entries) -> Matrix:
        return cls(tower, entries, tower.M)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and other.tower is self.tower
            and self.shape == other.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.shape, self.entries.tobytes()))

    def rref(self) -> tuple[Matrix, int, tuple[int, ...]]:
        R, r, piv = rref(self.tower, self.entries)
        return Matrix(self.tower, R, self.level), r, piv

    def rank(self) -> int:
        return rank(self.tower, self.entries)

    def kernel(self) -> Matrix:
        return Matrix(self.tower, kernel_basis(self.tower, self.entries, self.shape[1]), self.level)

    def invertible(self) -> bool:
        return invertible(self.tower, self.entries)

    @property
    def T(self) -> Matrix:
        return Matrix(self.tower, self.entries.T, self.level)

    def __matmul__(self, other: Matrix) -> Matrix:
        if other.tower is not self.tower:
            raise ProfileMismatchError("matrices belong to different towers")
        # the smaller field is promoted into the larger; the product lands in the compositum
        level = self.level * other.level // _gcd(self.level, other.level)
        return Matrix(self.tower, matmul(self.tower, self.entries, other.entries), level)

    def to_json(self) -> list[list[list[int]]]:
        return [[self.tower.to_coeffs(x) for x in row] for row in self.entries]

    @classmethod
    def from_json(cls, tower: FieldTower, rows, level: int | None = None) -> Matrix:
        entries = [[tower.from_coeffs(c) for c in row] for row in rows]
        width = len(entries[0]) if entries else 0
        return cls(tower, np.array(entries, dtype=np.intp).reshape(len(entries), width),
                   tower.M if level is None else level)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def matrix_block_diag(parts: Sequence[Matrix]) -> Matrix:
    tower = parts[0].tower
    level = 1
    for P in parts:
        level = level * P.level // _gcd(level, P.level)
    return Matrix(tower, block_diag([P.entries for P in parts]), level)
