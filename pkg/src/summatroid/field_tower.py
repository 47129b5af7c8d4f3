"""Finite field GF(p^M) with a designated family of subfields.

Elements are stored as integers ``0 <= x < p**M`` whose base-``p`` digits are
the coefficients of the power-basis representation, lowest degree first.  All
arithmetic goes through precomputed lookup tables, so the numpy arrays used by
:mod:`summatroid.ffmatrix` can be combined with plain fancy indexing.

Subfields are never separate objects: ``K_i = GF(p^{d_i})`` is the set of
elements fixed by ``x -> x^(p^{d_i})``.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence

import numpy as np

from .errors import (
    NotPrimeError,
    ProfileMismatchError,
    ReducibleModulusError,
    SubfieldDegreeError,
    TowerError,
)

MAX_FIELD_ORDER = 2**10


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo monic ``b``; coefficient lists lowest degree first."""
    a = [c % p for c in a]
    db = len(b) - 1
    for shift in range(len(a) - 1 - db, -1, -1):
        lead = a[shift + db]
        if lead:
            for j, bj in enumerate(b):
                a[shift + j] = (a[shift + j] - lead * bj) % p
    return a[:db]


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive test: no monic factor of degree between 1 and deg/2."""
    poly = [c % p for c in modulus]
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_mod(poly, list(low) + [1], p)):
                return False
    return True


class FieldTower:
    """The field F = GF(p^M) together with subfields K_i = GF(p^{d_i}).

    ``bases[i]`` is the ordered relative basis of F over K_i used to expand
    F-vectors into K_i-matrices.  When not given it is chosen greedily from
    the elements in increasing integer order.
    """

    def __init__(
        self,
        p: int,
        M: int,
        modulus: Sequence[int],
        degrees: Sequence[int],
        bases: Sequence[Sequence[int]] | None = None,
    ):
        if not is_prime(p):
            raise NotPrimeError(f"characteristic {p} is not prime")
        if M < 1:
            raise TowerError(f"degree M must be positive, got {M}")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != M + 1 or modulus[-1] != 1:
            raise TowerError(f"modulus must be monic of degree {M}: {modulus}")
        if p**M > MAX_FIELD_ORDER:
            raise TowerError(f"field order {p**M} above supported maximum {MAX_FIELD_ORDER}")
        if not is_irreducible(modulus, p):
            raise ReducibleModulusError(f"modulus {modulus} is reducible over GF({p})")
        degrees = tuple(int(d) for d in degrees)
        for d in degrees:
            if d < 1 or M % d:
                raise SubfieldDegreeError(f"subfield degree {d} does not divide {M}")

        self.p = p
        self.M = M
        self.q = p**M
        self.modulus = modulus
        self.degrees = degrees
        self.m = tuple(M // d for d in degrees)
        self._build_tables()
        self._subfields: dict[int, tuple[int, ...]] = {}
        if bases is None:
            bases = [self._greedy_basis(i, range(1, self.q)) for i in range(self.ell)]
        self.bases = tuple(tuple(int(g) for g in b) for b in bases)
        self._expand_tables = [self._expansion_table(i) for i in range(self.ell)]

    # -- construction helpers -------------------------------------------------

    def _build_tables(self) -> None:
        p, M, q = self.p, self.M, self.q
        powers = p ** np.arange(M)
        coeffs = (np.arange(q)[:, None] // powers[None, :]) % p
        red = np.array(self.modulus[:M])
        # xpow[j][a] = coefficient vector of a * X^j
        xpow = [coeffs]
        for _ in range(1, M):
            prev = xpow[-1]
            top = prev[:, M - 1]
            shifted = np.concatenate([np.zeros((q, 1), dtype=prev.dtype), prev[:, :-1]], axis=1)
            xpow.append((shifted - top[:, None] * red[None, :]) % p)
        stack = np.stack(xpow)  # (M, q, M)
        mul = np.empty((q, q), dtype=np.intp)
        for b in range(q):
            prod = np.tensordot(coeffs[b], stack, axes=(0, 0)) % p  # (q, M)
            mul[:, b] = prod @ powers
        add = ((coeffs[:, None, :] + coeffs[None, :, :]) % p) @ powers
        sub = ((coeffs[:, None, :] - coeffs[None, :, :]) % p) @ powers
        self._coeffs = coeffs
        self.add_table = add.astype(np.intp)
        self.sub_table = sub.astype(np.intp)
        self.mul_table = mul
        self.neg_table = self.sub_table[0].copy()
        inv = np.zeros(q, dtype=np.intp)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        self.inv_table = inv
        frob = np.arange(q, dtype=np.intp)
        acc = np.ones(q, dtype=np.intp)
        for _ in range(p):
            acc = mul[acc, frob]
        self.frobenius_table = acc  # x -> x^p
        for t in (self.add_table, self.sub_table, self.mul_table, self.neg_table,
                  self.inv_table, self.frobenius_table):
            t.flags.writeable = False

    def _subfield_span(self, i: int, elems: Iterable[int]) -> set[int]:
        span = {0}
        K = self.subfield(i)
        for g in elems:
            span = {int(self.add_table[s, self.mul_table[a, g]]) for s in span for a in K}
        return span

    def _greedy_basis(self, i: int, order: Iterable[int]) -> tuple[int, ...]:
        kept: list[int] = []
        span = {0}
        for x in order:
            if len(kept) == self.m[i]:
                break
            if x not in span:
                kept.append(x)
                span = self._subfield_span(i, kept)
        return tuple(kept)

    def _expansion_table(self, i: int) -> np.ndarray:
        basis = self.bases[i]
        if len(basis) != self.m[i]:
            raise TowerError(f"relative basis {i} needs {self.m[i]} elements, got {len(basis)}")
        K = self.subfield(i)
        table = np.full((self.q, self.m[i]), -1, dtype=np.intp)
        for coords in itertools.product(K, repeat=self.m[i]):
            x = 0
            for a, g in zip(coords, basis):
                x = self.add_table[x, self.mul_table[a, g]]
            if table[x, 0] != -1:
                raise TowerError(f"relative basis {i} is not independent over its subfield")
            table[x] = coords
        table.flags.writeable = False
        return table

    # -- structure -------------------------------------------------------------

    @property
    def ell(self) -> int:
        return len(self.degrees)

    def subfield(self, i: int) -> tuple[int, ...]:
        """Sorted elements of K_i."""
        d = self.degrees[self._check_block(i)]
        if d not in self._subfields:
            fixed = np.arange(self.q, dtype=np.intp)
            for _ in range(d):
                fixed = self.frobenius_table[fixed]
            self._subfields[d] = tuple(int(x) for x in np.flatnonzero(fixed == np.arange(self.q)))
        return self._subfields[d]

    def prime_field(self) -> tuple[int, ...]:
        return tuple(range(self.p))

    def elements(self) -> range:
        return range(self.q)

    def _check_block(self, i: int) -> int:
        if not 0 <= i < len(self.degrees):
            raise ProfileMismatchError(f"block index {i} out of range for {len(self.degrees)} blocks")
        return i

    def with_bases(self, bases: Sequence[Sequence[int]]) -> FieldTower:
        return FieldTower(self.p, self.M, self.modulus, self.degrees, bases)

    def alternative(self) -> FieldTower:
        """Same tower, relative bases chosen greedily in decreasing element order."""
        bases = [self._greedy_basis(i, range(self.q - 1, 0, -1)) for i in range(self.ell)]
        return self.with_bases(bases)

    def restricted(self, degrees: Sequence[int]) -> FieldTower:
        """Same field F with a different list of subfield degrees (default bases)."""
        return FieldTower(self.p, self.M, self.modulus, degrees)

    def __repr__(self) -> str:
        return f"FieldTower(p={self.p}, M={self.M}, modulus={list(self.modulus)}, degrees={list(self.degrees)})"

    # -- element arithmetic ---------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return int(self.inv_table[a])

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result, base = 1, int(a)
        while e:
            if e & 1:
                result = int(self.mul_table[result, base])
            base = int(self.mul_table[base, base])
            e >>= 1
        return result

    def frobenius_power(self, a: int, d: int) -> int:
        """``a ** (p ** d)``."""
        x = int(a)
        for _ in range(d % self.M):
            x = int(self.frobenius_table[x])
        return x

    def is_in_subfield(self, x: int, i: int) -> bool:
        return self.frobenius_power(x, self.degrees[self._check_block(i)]) == x

    def to_coeffs(self, x: int) -> list[int]:
        return [int(c) for c in self._coeffs[x]]

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) != self.M:
            raise ValueError(f"expected {self.M} coefficients, got {len(coeffs)}")
        if any(not 0 <= int(c) < self.p for c in coeffs):
            raise ValueError(f"coefficients must lie in [0, {self.p}): {list(coeffs)}")
        return sum(int(c) * self.p**j for j, c in enumerate(coeffs))

    # -- coordinates over subfields --------------------------------------------

    def expand(self, x: int, i: int) -> list[int]:
        """Coordinates of ``x`` in the relative basis of F over K_i."""
        return [int(c) for c in self._expand_tables[self._check_block(i)][x]]

    def combine(self, coords: Sequence[int], i: int) -> int:
        """Inverse of :meth:`expand`."""
        basis = self.bases[self._check_block(i)]
        if len(coords) != len(basis):
            raise ValueError("coordinate vector has the wrong length")
        x = 0
        for a, g in zip(coords, basis):
            x = int(self.add_table[x, self.mul_table[a, g]])
        return x

    def coordinate_matrix(self, v: Sequence[int] | np.ndarray, i: int) -> np.ndarray:
        """The ``m_i x len(v)`` matrix over K_i whose columns expand the entries of ``v``."""
        v = np.asarray(v, dtype=np.intp)
        return self._expand_tables[self._check_block(i)][v].T.copy()


def make_tower(p: int, M: int, modulus: Sequence[int], degrees: Sequence[int]) -> FieldTower:
    return FieldTower(p, M, modulus, degrees)


def conway_like_modulus(p: int, M: int) -> tuple[int, ...]:
    """First monic irreducible of degree ``M`` over GF(p) in lexicographic order.

    Convenience for tests and examples; the tower itself always takes the
    modulus from the caller.
    """
    for low in itertools.product(range(p), repeat=M):
        poly = tuple(reversed(low)) + (1,)
        if M == 1 or poly[0] != 0:
            if is_irreducible(poly, p):
                return poly
    raise TowerError(f"no irreducible polynomial of degree {M} over GF({p})")  # pragma: no cover
