"""Sum-rank metric codes and the subspaces attached to them.

Functions that only need the ambient space (``srank``, ``support``,
``support_space`` ...) take a :class:`ProductLattice`, which carries the tower
and the block profile.  Functions about a particular code take a
:class:`SumRankCode`.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from functools import cached_property

import numpy as np

from . import ffmatrix as fm
from .errors import ProfileMismatchError, guard
from .field_tower import FieldTower
from .lattice import ProductElement, ProductLattice


class SumRankCode:
    """An F-linear code in F^n with block profile (n_1, ..., n_l).

    The generator must have full row rank.  The parity-check matrix is the
    canonical basis of the dual code and is computed once at construction.
    """

    def __init__(self, tower: FieldTower, ns: Sequence[int], generator):
        self.lattice = ProductLattice(tower, ns)
        n = self.lattice.n
        G = np.asarray(generator, dtype=np.intp)
        if G.size == 0:
            G = G.reshape(0, n)
        if G.ndim != 2 or G.shape[1] != n:
            raise ProfileMismatchError(f"generator shape {G.shape} does not match length {n}")
        if G.min(initial=0) < 0 or G.max(initial=0) >= tower.q:
            raise ValueError("generator entries are not field elements")
        if fm.rank(tower, G) != G.shape[0]:
            raise ValueError("generator rows are linearly dependent")
        G = G.copy()
        G.flags.writeable = False
        self.generator = G
        H = fm.kernel_basis(tower, G, n)
        H.flags.writeable = False
        self.parity = H

    @classmethod
    def full_space(cls, tower: FieldTower, ns: Sequence[int]) -> SumRankCode:
        return cls(tower, ns, np.eye(sum(ns), dtype=np.intp))

    @classmethod
    def zero_code(cls, tower: FieldTower, ns: Sequence[int]) -> SumRankCode:
        return cls(tower, ns, np.zeros((0, sum(ns)), dtype=np.intp))

    @property
    def tower(self) -> FieldTower:
        return self.lattice.tower

    @property
    def ns(self) -> tuple[int, ...]:
        return self.lattice.ns

    @property
    def n(self) -> int:
        return self.lattice.n

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    @cached_property
    def canonical_generator(self) -> np.ndarray:
        return fm.row_basis(self.tower, self.generator, self.n)

    def same_code(self, other: SumRankCode) -> bool:
        return self.lattice.same_ground(other.lattice) and bool(
            np.array_equal(self.canonical_generator, other.canonical_generator)
        )

    def on_tower(self, tower: FieldTower) -> SumRankCode:
        """The same generator read over another tower (e.g. different relative bases)."""
        return SumRankCode(tower, self.ns, self.generator)

    def __repr__(self) -> str:
        return f"SumRankCode(n={self.n}, k={self.k}, ns={list(self.ns)}, q={self.tower.q})"


# -- weights and supports ------------------------------------------------------


def _blocks(lat: ProductLattice, c) -> list[np.ndarray]:
    c = np.asarray(c, dtype=np.intp).reshape(-1)
    if c.shape[0] != lat.n:
        raise ProfileMismatchError(f"vector length {c.shape[0]} != {lat.n}")
    o = lat.offsets
    return [c[o[i]:o[i + 1]] for i in range(lat.ell)]


def srank(lat: ProductLattice, c) -> int:
    """Sum over blocks of the K_i-rank of the coordinate matrix."""
    F = lat.tower
    return sum(fm.rank(F, F.coordinate_matrix(b, i)) for i, b in enumerate(_blocks(lat, c)))


def dist(lat: ProductLattice, x, y) -> int:
    x, y = np.asarray(x, dtype=np.intp), np.asarray(y, dtype=np.intp)
    if x.shape != y.shape:
        raise ProfileMismatchError("vectors of different lengths")
    return srank(lat, lat.tower.sub_table[x, y])


def support(lat: ProductLattice, c) -> ProductElement:
    """Per-block row space of the coordinate matrix."""
    F = lat.tower
    return ProductElement(tuple(
        lat._make(i, F.coordinate_matrix(b, i)) for i, b in enumerate(_blocks(lat, c))
    ))


def support_of_subcode(lat: ProductLattice, D, method: str = "scalars",
                       ceiling: int | None = None) -> ProductElement:
    """Join of supp(c) over all c in the F-span of the rows of ``D``.

    ``method="scalars"`` joins over every F-multiple of every row of D;
    ``method="enumerate"`` joins over every element of the span (guarded).
    """
    F = lat.tower
    D = np.asarray(D, dtype=np.intp).reshape(-1, lat.n)
    if method == "scalars":
        vectors = (F.mul_table[a, row] for row in D for a in range(1, F.q))
    elif method == "enumerate":
        guard("subcode elements", F.q ** D.shape[0], ceiling)
        vectors = iter(fm.span_elements(F, D, range(F.q)))
    else:
        raise ValueError(f"unknown method {method!r}")
    acc = lat.zero_element()
    for v in vectors:
        acc = lat.join(acc, support(lat, v))
    return acc


def generator_matrix(lat: ProductLattice, elem: ProductElement) -> np.ndarray:
    """The block-diagonal ``Rk x n`` matrix diag(A_1, ..., A_l) of canonical bases."""
    if len(elem) != lat.ell:
        raise ProfileMismatchError("element does not match profile")
    return fm.block_diag([U.basis() for U in elem])


def support_space(lat: ProductLattice, elem: ProductElement) -> np.ndarray:
    """F-basis of V = {c : supp(c) within elem}: each K_i-basis vector lifted into its block."""
    return generator_matrix(lat, elem)


def support_space_bruteforce(lat: ProductLattice, elem: ProductElement,
                             ceiling: int | None = 2**16) -> np.ndarray:
    """All vectors of F^n whose support lies in ``elem``, by filtering F^n."""
    F = lat.tower
    guard("vectors of F^n", F.q ** lat.n, ceiling)
    every = fm.span_elements(F, np.eye(lat.n, dtype=np.intp), range(F.q))
    keep = [v for v in every if lat.leq(support(lat, v), elem)]
    return np.array(keep, dtype=np.intp).reshape(-1, lat.n)


def project(lat: ProductLattice, elem: ProductElement, x) -> np.ndarray:
    """x -> x A^T with A the block-diagonal generator matrix of ``elem``."""
    A = generator_matrix(lat, elem)
    x = np.asarray(x, dtype=np.intp).reshape(1, -1)
    if x.shape[1] != lat.n:
        raise ProfileMismatchError("vector length does not match profile")
    return fm.matmul(lat.tower, x, A.T)[0]


# -- codes ----------------------------------------------------------------------


def dual_code(C: SumRankCode) -> SumRankCode:
    return SumRankCode(C.tower, C.ns, C.parity)


def _check_elem(C: SumRankCode, elem: ProductElement) -> None:
    if len(elem) != C.lattice.ell or any(U.n != n for U, n in zip(elem, C.ns)):
        raise ProfileMismatchError("element does not match the code's profile")


def c_of(C: SumRankCode, elem: ProductElement) -> np.ndarray:
    """Basis of {c in C-dual : c^(i) . g = 0 for each generator g of elem_i}."""
    _check_elem(C, elem)
    F = C.tower
    A = generator_matrix(C.lattice, elem)
    HA = fm.matmul(F, C.parity, A.T)
    Y = fm.left_kernel_basis(F, HA) if C.parity.shape[0] else np.zeros((0, 0), dtype=np.intp)
    if Y.shape[0] == 0:
        return np.zeros((0, C.n), dtype=np.intp)
    return fm.row_basis(F, fm.matmul(F, Y, C.parity), C.n)


def c_of_via_support_space(C: SumRankCode, elem: ProductElement) -> np.ndarray:
    """The same subspace computed as C-dual intersected with V of the complement."""
    _check_elem(C, elem)
    V = support_space(C.lattice, C.lattice.complement(elem))
    return fm.intersect_row_spaces(C.tower, C.parity, V).reshape(-1, C.n)


def rho(C: SumRankCode, elem: ProductElement) -> int:
    """dim of the projection of C-dual onto elem, i.e. rank(H A^T)."""
    _check_elem(C, elem)
    if C.parity.shape[0] == 0 or elem.rk == 0:
        return 0
    A = generator_matrix(C.lattice, elem)
    return fm.rank(C.tower, fm.matmul(C.tower, C.parity, A.T))


def mu(C: SumRankCode, elem: ProductElement) -> int:
    """dim of C-dual intersected with V of the complement of elem."""
    return c_of_via_support_space(C, elem).shape[0]


def rho_alt(C: SumRankCode, elem: ProductElement) -> int:
    """dim of the F-span of H_i x^T over every x in every elem_i."""
    _check_elem(C, elem)
    F = C.tower
    o = C.lattice.offsets
    cols = []
    for i, U in enumerate(elem):
        if U.dim == 0:
            continue
        Hi = C.parity[:, o[i]:o[i + 1]]
        xs = fm.span_elements(F, U.basis(), F.subfield(i))
        cols.append(fm.matmul(F, Hi, xs.T).T)
    if not cols or C.parity.shape[0] == 0:
        return 0
    return fm.rank(F, np.vstack(cols))


def intersection_dim(C: SumRankCode, elem: ProductElement) -> int:
    """dim(C ∩ V_elem) = k + Rk(elem) - dim(C + V_elem)."""
    _check_elem(C, elem)
    V = support_space(C.lattice, elem)
    if C.k == 0 or V.shape[0] == 0:
        return 0
    return C.k + V.shape[0] - fm.rank(C.tower, np.vstack([C.generator, V]))


def codewords(C: SumRankCode, ceiling: int | None = None) -> np.ndarray:
    guard("codewords", C.tower.q ** C.k, ceiling)
    return fm.span_elements(C.tower, C.generator, range(C.tower.q)).reshape(-1, C.n)


def iter_codewords(C: SumRankCode, ceiling: int | None = None) -> Iterator[np.ndarray]:
    yield from codewords(C, ceiling)


def min_distance_bruteforce(C: SumRankCode, ceiling: int | None = None) -> int:
    if C.k == 0:
        raise ValueError("the zero code has no nonzero codeword")
    words = codewords(C, ceiling)
    return min(srank(C.lattice, c) for c in words if c.any())


def hamming_view(C: SumRankCode, generator=None) -> SumRankCode:
    """The code (or another generator of the same length) with every block a single F-coordinate."""
    tower = C.tower.restricted([C.tower.M] * C.n)
    G = C.generator if generator is None else generator
    return SumRankCode(tower, [1] * C.n, G)
