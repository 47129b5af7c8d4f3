"""Brute-force oracles and code generators shared by the tests.

The oracles here deliberately avoid row reduction: ranks come from counting
the elements of a span, subspaces are compared as sets of vectors.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from summatroid.field_tower import FieldTower, conway_like_modulus
from summatroid.sumrank_code import SumRankCode


def gf(p: int, M: int, degrees) -> FieldTower:
    return FieldTower(p, M, conway_like_modulus(p, M), degrees)


def span_set(F: FieldTower, rows, scalars) -> set[tuple[int, ...]]:
    """Every linear combination of ``rows`` with coefficients from ``scalars``."""
    rows = [tuple(int(x) for x in r) for r in rows]
    n = len(rows[0]) if rows else 0
    out = set()
    for coeffs in itertools.product(scalars, repeat=len(rows)):
        v = [0] * n
        for a, r in zip(coeffs, rows):
            for j in range(n):
                v[j] = F.add(v[j], F.mul(a, r[j]))
        out.add(tuple(v))
    if not rows:
        out.add(())
    return out


def rank_by_counting(F: FieldTower, rows, scalars) -> int:
    """Rank over the field ``scalars`` as log_|K| of the size of the span."""
    rows = [r for r in np.asarray(rows).reshape(len(rows), -1)] if len(rows) else []
    if not rows:
        return 0
    size = len(span_set(F, rows, scalars))
    return round(math.log(size, len(scalars)))


def random_code(F: FieldTower, ns, k: int, rng: np.random.Generator) -> SumRankCode:
    n = sum(ns)
    while True:
        G = rng.integers(F.q, size=(k, n))
        try:
            return SumRankCode(F, ns, G)
        except ValueError:
            continue


def random_profile(rng: np.random.Generator, max_lattice: int = 1000):
    """(tower, ns) with K_i in {GF(2), GF(4)}, sum(n_i) <= 5 and a bounded lattice."""
    from summatroid.lattice import ProductLattice

    while True:
        M = int(rng.integers(1, 3))
        ell = int(rng.integers(1, 4))
        ns = [int(x) for x in rng.integers(1, 5, size=ell)]
        if sum(ns) > 5:
            continue
        degrees = [int(rng.integers(1, M + 1)) if M == 2 else 1 for _ in ns]
        F = gf(2, M, degrees)
        if ProductLattice(F, ns).size <= max_lattice:
            return F, ns


def random_code_corpus(count: int, seed: int, max_lattice: int = 1000) -> list[SumRankCode]:
    rng = np.random.default_rng(seed)
    codes = []
    for _ in range(count):
        F, ns = random_profile(rng, max_lattice)
        k = 0 if rng.random() < 0.1 else int(rng.integers(1, sum(ns) + 1))
        codes.append(random_code(F, ns, k, rng))
    return codes
