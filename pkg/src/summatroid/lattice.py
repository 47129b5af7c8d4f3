"""Subspace lattices of K_i^{n_i} and their cartesian product.

A :class:`Subspace` is identified by its RREF basis, so equality and hashing
are structural.  :class:`ProductLattice` owns the tower and block profile and
provides the lattice operations, the exhaustive enumerations, and (for the
exhaustive checks elsewhere) integer indexings with precomputed meet, join,
complement and order tables.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import ffmatrix as fm
from .errors import ProfileMismatchError, guard
from .field_tower import FieldTower


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    if q < 2 or not 0 <= k <= n:
        raise ValueError(f"gaussian_binomial needs 0 <= k <= n and q >= 2, got n={n} k={k} q={q}")
    num = den = 1
    for j in range(k):
        num *= q ** (n - j) - 1
        den *= q ** (j + 1) - 1
    return num // den


@dataclass(frozen=True)
class Subspace:
    block: int
    n: int
    rows: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.intp).reshape(len(self.rows), self.n)

    def to_json(self, tower: FieldTower) -> dict:
        return {"block": self.block, "rows": [[tower.to_coeffs(x) for x in r] for r in self.rows]}

    def __repr__(self) -> str:
        return f"Subspace(block={self.block}, n={self.n}, rows={list(map(list, self.rows))})"


@dataclass(frozen=True)
class ProductElement:
    parts: tuple[Subspace, ...]

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i: int) -> Subspace:
        return self.parts[i]

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def rk(self) -> int:
        return sum(U.dim for U in self.parts)

    def dims(self) -> tuple[int, ...]:
        return tuple(U.dim for U in self.parts)

    def to_json(self, tower: FieldTower) -> list[dict]:
        return [U.to_json(tower) for U in self.parts]


def rk(elem: ProductElement) -> int:
    return elem.rk


class _BlockTables:
    """Integer-indexed view of the subspace lattice of one block."""

    def __init__(self, lattice: ProductLattice, i: int):
        F = lattice.tower
        self.subspaces = lattice.subspaces(i)
        self.index = {U: t for t, U in enumerate(self.subspaces)}
        S = len(self.subspaces)
        self.dims = np.array([U.dim for U in self.subspaces], dtype=np.intp)
        K = F.subfield(i)
        pos = np.full(F.q, -1, dtype=np.intp)
        pos[list(K)] = np.arange(len(K))
        weights = len(K) ** np.arange(lattice.ns[i], dtype=object)
        masks = []
        for U in self.subspaces:
            vecs = fm.span_elements(F, U.basis(), K) if U.dim else np.zeros((1, U.n), dtype=np.intp)
            codes = pos[vecs].astype(object) @ weights if U.n else [0]
            m = 0
            for c in codes:
                m |= 1 << int(c)
            masks.append(m)
        self.masks = masks
        by_mask = {m: t for t, m in enumerate(masks)}
        self.orth = np.array([self.index[lattice.orth(U)] for U in self.subspaces], dtype=np.intp)
        meet = np.empty((S, S), dtype=np.intp)
        for a in range(S):
            ma = masks[a]
            for b in range(a, S):
                meet[a, b] = meet[b, a] = by_mask[ma & masks[b]]
        self.meet = meet
        self.join = self.orth[meet[self.orth[:, None], self.orth[None, :]]]
        self.leq = meet == np.arange(S)[:, None]


class ProductLattice:
    """The product P(K^n) = P(K_1^{n_1}) x ... x P(K_l^{n_l}) for a given tower."""

    def __init__(self, tower: FieldTower, ns: Sequence[int]):
        ns = tuple(int(x) for x in ns)
        if len(ns) != tower.ell:
            raise ProfileMismatchError(f"profile {ns} has {len(ns)} blocks, tower has {tower.ell}")
        if any(x < 0 for x in ns):
            raise ProfileMismatchError(f"negative block length in {ns}")
        self.tower = tower
        self.ns = ns
        self._subspaces: dict[int, list[Subspace]] = {}
        self._tables: dict[int, _BlockTables] = {}

    @property
    def ell(self) -> int:
        return len(self.ns)

    @property
    def n(self) -> int:
        return sum(self.ns)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.concatenate([[0], np.cumsum(self.ns)]))

    def same_ground(self, other: ProductLattice) -> bool:
        return (
            self.ns == other.ns
            and self.tower.q == other.tower.q
            and self.tower.modulus == other.tower.modulus
            and self.tower.degrees == other.tower.degrees
        )

    def __repr__(self) -> str:
        return f"ProductLattice({self.tower!r}, ns={list(self.ns)})"

    # -- single-block subspaces ------------------------------------------------

    def _check(self, i: int) -> int:
        if not 0 <= i < self.ell:
            raise ProfileMismatchError(f"block {i} out of range")
        return i

    def _make(self, i: int, A) -> Subspace:
        B = fm.row_basis(self.tower, A, self.ns[i])
        return Subspace(i, self.ns[i], tuple(tuple(int(x) for x in r) for r in B))

    def span(self, vectors, i: int) -> Subspace:
        self._check(i)
        A = np.asarray(vectors, dtype=np.intp).reshape(-1, self.ns[i])
        K = set(self.tower.subfield(i))
        if any(int(x) not in K for x in A.flat):
            raise ValueError(f"vectors have entries outside subfield K_{i}")
        return self._make(i, A)

    def zero(self, i: int) -> Subspace:
        return Subspace(self._check(i), self.ns[i], ())

    def full(self, i: int) -> Subspace:
        return self._make(self._check(i), np.eye(self.ns[i], dtype=np.intp))

    @staticmethod
    def _pair(U: Subspace, W: Subspace) -> None:
        if U.block != W.block or U.n != W.n:
            raise ProfileMismatchError(f"subspaces of different blocks: {U.block}/{U.n} vs {W.block}/{W.n}")

    def sum(self, U: Subspace, W: Subspace) -> Subspace:
        self._pair(U, W)
        return self._make(U.block, np.vstack([U.basis(), W.basis()]))

    def intersect(self, U: Subspace, W: Subspace) -> Subspace:
        self._pair(U, W)
        return self._make(U.block, fm.intersect_row_spaces(self.tower, U.basis(), W.basis()).reshape(-1, U.n))

    def orth(self, U: Subspace) -> Subspace:
        """Orthogonal complement for the standard (bilinear) dot product."""
        return self._make(U.block, fm.kernel_basis(self.tower, U.basis(), U.n))

    def contains(self, U: Subspace, W: Subspace) -> bool:
        """True iff ``W`` is a subspace of ``U``."""
        self._pair(U, W)
        return self.sum(U, W).dim == U.dim

    # -- product elements -------------------------------------------------------

    def element(self, parts: Sequence[Subspace]) -> ProductElement:
        parts = tuple(parts)
        if len(parts) != self.ell or any(U.block != i or U.n != self.ns[i] for i, U in enumerate(parts)):
            raise ProfileMismatchError("product element does not match the block profile")
        return ProductElement(parts)

    def zero_element(self) -> ProductElement:
        return ProductElement(tuple(self.zero(i) for i in range(self.ell)))

    def full_element(self) -> ProductElement:
        return ProductElement(tuple(self.full(i) for i in range(self.ell)))

    def _pairwise(self, a: ProductElement, b: ProductElement) -> None:
        if len(a) != self.ell or len(b) != self.ell:
            raise ProfileMismatchError("product elements of different profiles")

    def join(self, a: ProductElement, b: ProductElement) -> ProductElement:
        self._pairwise(a, b)
        return ProductElement(tuple(self.sum(U, W) for U, W in zip(a, b)))

    def meet(self, a: ProductElement, b: ProductElement) -> ProductElement:
        self._pairwise(a, b)
        return ProductElement(tuple(self.intersect(U, W) for U, W in zip(a, b)))

    def complement(self, a: ProductElement) -> ProductElement:
        return ProductElement(tuple(self.orth(U) for U in a))

    def leq(self, a: ProductElement, b: ProductElement) -> bool:
        self._pairwise(a, b)
        return all(self.contains(W, U) for U, W in zip(a, b))

    def direct_sum_ok(self, a: ProductElement, b: ProductElement) -> bool:
        return all(U.dim == 0 for U in self.meet(a, b))

    # -- enumeration ------------------------------------------------------------

    def enumerate_subspaces(self, i: int, d: int) -> Iterator[Subspace]:
        """All d-dimensional subspaces of K_i^{n_i}, ordered by pivot pattern then free entries."""
        n = self.ns[self._check(i)]
        if not 0 <= d <= n:
            raise ValueError(f"dimension {d} out of range for ambient {n}")
        K = self.tower.subfield(i)
        for pivots in itertools.combinations(range(n), d):
            pivset = set(pivots)
            free = [(r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pivset]
            for values in itertools.product(K, repeat=len(free)):
                rows = [[0] * n for _ in range(d)]
                for r, pc in enumerate(pivots):
                    rows[r][pc] = 1
                for (r, c), v in zip(free, values):
                    rows[r][c] = v
                yield Subspace(i, n, tuple(tuple(r) for r in rows))

    def subspaces(self, i: int, d: int | None = None) -> list[Subspace]:
        """Cached list of subspaces of block i (all dimensions ascending if d is None)."""
        if i not in self._subspaces:
            self._subspaces[i] = [
                U for dd in range(self.ns[self._check(i)] + 1) for U in self.enumerate_subspaces(i, dd)
            ]
        subs = self._subspaces[i]
        return subs if d is None else [U for U in subs if U.dim == d]

    def compositions(self, N: int) -> Iterator[tuple[int, ...]]:
        """Tuples (N_1, ..., N_l) with 0 <= N_i <= n_i summing to N, lexicographic."""
        def rec(i: int, left: int):
            if i == self.ell:
                if left == 0:
                    yield ()
                return
            rest = sum(self.ns[i + 1:])
            for x in range(max(0, left - rest), min(self.ns[i], left) + 1):
                for tail in rec(i + 1, left - x):
                    yield (x,) + tail
        yield from rec(0, N)

    def enumerate_rank_level(self, N: int) -> Iterator[ProductElement]:
        if not 0 <= N <= self.n:
            raise ValueError(f"rank level {N} out of range 0..{self.n}")
        for comp in self.compositions(N):
            for parts in itertools.product(*(self.subspaces(i, d) for i, d in enumerate(comp))):
                yield ProductElement(parts)

    def __iter__(self) -> Iterator[ProductElement]:
        for N in range(self.n + 1):
            yield from self.enumerate_rank_level(N)

    def block_sizes(self) -> tuple[int, ...]:
        q = [len(self.tower.subfield(i)) for i in range(self.ell)]
        return tuple(
            sum(gaussian_binomial(n, d, qi) for d in range(n + 1)) for n, qi in zip(self.ns, q)
        )

    @property
    def size(self) -> int:
        return int(np.prod(self.block_sizes(), dtype=object))

    # -- integer indexing for exhaustive work --------------------------------------

    def tables(self, i: int) -> _BlockTables:
        if i not in self._tables:
            self._tables[i] = _BlockTables(self, i)
        return self._tables[i]

    @cached_property
    def strides(self) -> tuple[int, ...]:
        sizes = self.block_sizes()
        out = [1] * self.ell
        for i in range(self.ell - 2, -1, -1):
            out[i] = out[i + 1] * sizes[i + 1]
        return tuple(out)

    def index(self, elem: ProductElement) -> int:
        return sum(self.tables(i).index[U] * s for i, (U, s) in enumerate(zip(elem, self.strides)))

    def element_at(self, idx: int) -> ProductElement:
        parts = []
        for i, s in enumerate(self.strides):
            t, idx = divmod(idx, s)
            parts.append(self.tables(i).subspaces[t])
        return ProductElement(tuple(parts))

    def indexed(self, max_size: int | None = None) -> IndexedLattice:
        guard("product lattice", self.size, max_size)
        return IndexedLattice(self)


class IndexedLattice:
    """Vectorized view of a whole product lattice: every element is an integer.

    ``multi[t]`` holds the per-block subspace indices of element ``t``.
    """

    def __init__(self, lattice: ProductLattice):
        self.lattice = lattice
        tabs = [lattice.tables(i) for i in range(lattice.ell)]
        self.tabs = tabs
        sizes = lattice.block_sizes()
        self.size = lattice.size
        self.strides = np.array(lattice.strides, dtype=np.intp)
        if lattice.ell:
            grids = np.indices(sizes).reshape(lattice.ell, -1).T
        else:
            grids = np.zeros((1, 0), dtype=np.intp)
        self.multi = grids.astype(np.intp)
        self.rk = sum((tabs[i].dims[self.multi[:, i]] for i in range(lattice.ell)),
                      np.zeros(self.size, dtype=np.intp))
        self.orth = self._combine(lambda i, col: tabs[i].orth[col], self.multi)
        self.zero = 0
        self.full = int(np.argmax(self.rk)) if self.size else 0

    def _combine(self, f, multi) -> np.ndarray:
        out = np.zeros(multi.shape[0], dtype=np.intp)
        for i in range(self.lattice.ell):
            out += f(i, multi[:, i]) * self.strides[i]
        return out

    def join(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        ma, mb = self.multi[a], self.multi[b]
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.intp)
        for i, t in enumerate(self.tabs):
            out += t.join[ma[..., i], mb[..., i]] * self.strides[i]
        return out

    def meet(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        ma, mb = self.multi[a], self.multi[b]
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.intp)
        for i, t in enumerate(self.tabs):
            out += t.meet[ma[..., i], mb[..., i]] * self.strides[i]
        return out

    def leq(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        ma, mb = self.multi[a], self.multi[b]
        out = np.ones(np.broadcast(a, b).shape, dtype=bool)
        for i, t in enumerate(self.tabs):
            out &= t.leq[ma[..., i], mb[..., i]]
        return out

    def element(self, t: int) -> ProductElement:
        return self.lattice.element_at(int(t))
