"""Sum-matroids: rank functions on a product lattice P(K^n).

A :class:`SumMatroid` wraps either a rank callable (lazy, e.g. backed by a
code) or a table indexed by :meth:`ProductLattice.index`.  Turning one into the
other is always an explicit :meth:`SumMatroid.materialize` call.
"""

from __future__ import annotations

import json
from collections.abc import Callable

import numpy as np

from .errors import ProfileMismatchError, guard
from .lattice import IndexedLattice, ProductElement, ProductLattice
from .reports import CheckReport
from .sumrank_code import SumRankCode, dual_code, rho

DEFAULT_MAX_LATTICE = 5000
MAX_WITNESSES = 20


class SumMatroid:
    def __init__(
        self,
        lattice: ProductLattice,
        rank_fn: Callable[[ProductElement], int] | None = None,
        table: np.ndarray | None = None,
        name: str = "",
    ):
        if (rank_fn is None) == (table is None):
            raise ValueError("give exactly one of rank_fn or table")
        if table is not None:
            table = np.asarray(table, dtype=np.intp).copy()
            if table.shape != (lattice.size,):
                raise ValueError(f"rank table has {table.shape} entries, lattice has {lattice.size}")
            table.flags.writeable = False
        self.lattice = lattice
        self._rank_fn = rank_fn
        self._table = table
        self.name = name

    @property
    def is_table(self) -> bool:
        return self._table is not None

    def rank(self, elem: ProductElement) -> int:
        if self._table is not None:
            return int(self._table[self.lattice.index(elem)])
        return int(self._rank_fn(elem))

    __call__ = rank

    @property
    def matroid_rank(self) -> int:
        """rho(K^n)."""
        return self.rank(self.lattice.full_element())

    def nullity(self, elem: ProductElement) -> int:
        return elem.rk - self.rank(elem)

    def table(self, max_lattice: int | None = DEFAULT_MAX_LATTICE) -> np.ndarray:
        """Rank of every lattice element in index order (computed, not cached, if lazy)."""
        if self._table is not None:
            return self._table
        guard("product lattice", self.lattice.size, max_lattice)
        idx = self.lattice.indexed(max_lattice)
        return np.array([self._rank_fn(idx.element(t)) for t in range(idx.size)], dtype=np.intp)

    def materialize(self, max_lattice: int | None = DEFAULT_MAX_LATTICE) -> SumMatroid:
        return SumMatroid(self.lattice, table=self.table(max_lattice), name=self.name)

    def dual(self) -> SumMatroid:
        """rho*(L) = rho(L^perp) + Rk(L) - rho(K^n)."""
        lat = self.lattice
        name = f"dual({self.name})" if self.name else "dual"
        if self._table is not None:
            idx = lat.indexed(None)
            t = self._table
            return SumMatroid(lat, table=t[idx.orth] + idx.rk - t[idx.full], name=name)
        top = self.matroid_rank
        return SumMatroid(lat, rank_fn=lambda e: self.rank(lat.complement(e)) + e.rk - top, name=name)

    def truncation(self, t: int) -> SumMatroid:
        """min(rho, t); again a sum-matroid when rho is one."""
        if self._table is not None:
            return SumMatroid(self.lattice, table=np.minimum(self._table, t), name=f"trunc{t}({self.name})")
        return SumMatroid(self.lattice, rank_fn=lambda e: min(self.rank(e), t), name=f"trunc{t}({self.name})")

    def __repr__(self) -> str:
        mode = "table" if self.is_table else "lazy"
        return f"SumMatroid({self.name or '?'}, {mode}, ns={list(self.lattice.ns)})"


def from_code(C: SumRankCode) -> SumMatroid:
    return SumMatroid(C.lattice, rank_fn=lambda e: rho(C, e), name=f"M[{C.n},{C.k}]")


def uniform(k: int, lattice: ProductLattice) -> SumMatroid:
    if not 0 <= k <= lattice.n:
        raise ValueError(f"uniform rank {k} out of range 0..{lattice.n}")
    return SumMatroid(lattice, rank_fn=lambda e: min(e.rk, k), name=f"U[{k},{lattice.n}]")


def _witness(idx: IndexedLattice, t) -> list[dict]:
    return idx.element(int(t)).to_json(idx.lattice.tower)


def check_axioms(M: SumMatroid, max_lattice: int | None = DEFAULT_MAX_LATTICE,
                 chunk: int = 256) -> CheckReport:
    """Exhaustive check of boundedness (R1), monotonicity (R2) and submodularity (R3)."""
    idx = M.lattice.indexed(max_lattice)
    r = M.table(max_lattice)
    violations: list[dict] = []
    counts = {"R1": 0, "R2": 0, "R3": 0}

    bad = np.flatnonzero((r < 0) | (r > idx.rk))
    counts["R1"] = int(bad.size)
    for t in bad[:MAX_WITNESSES]:
        violations.append({"axiom": "R1", "element": _witness(idx, t), "rank": int(r[t]), "Rk": int(idx.rk[t])})

    everything = np.arange(idx.size)
    for start in range(0, idx.size, chunk):
        a = np.arange(start, min(start + chunk, idx.size))[:, None]
        b = everything[None, :]
        leq = idx.leq(a, b)
        r2 = leq & (r[a] > r[b])
        if r2.any():
            counts["R2"] += int(r2.sum())
            for x, y in np.argwhere(r2)[: max(0, MAX_WITNESSES - sum(v["axiom"] == "R2" for v in violations))]:
                violations.append({"axiom": "R2", "smaller": _witness(idx, a[x, 0]), "larger": _witness(idx, y),
                                   "ranks": [int(r[a[x, 0]]), int(r[y])]})
        j, m = idx.join(a, b), idx.meet(a, b)
        r3 = r[j] + r[m] > r[a] + r[b]
        if r3.any():
            counts["R3"] += int(r3.sum())
            for x, y in np.argwhere(r3)[: max(0, MAX_WITNESSES - sum(v["axiom"] == "R3" for v in violations))]:
                violations.append({"axiom": "R3", "first": _witness(idx, a[x, 0]), "second": _witness(idx, y)})

    return CheckReport(
        "axioms",
        ok=not any(counts.values()),
        violations=violations,
        details={"lattice_size": idx.size, "violation_counts": counts, "matroid": M.name},
    )


def first_difference(M: SumMatroid, N: SumMatroid,
                     max_lattice: int | None = DEFAULT_MAX_LATTICE) -> ProductElement | None:
    if not M.lattice.same_ground(N.lattice):
        raise ProfileMismatchError("sum-matroids on different grounds")
    a, b = M.table(max_lattice), N.table(max_lattice)
    diff = np.flatnonzero(a != b)
    return M.lattice.element_at(int(diff[0])) if diff.size else None


def equals(M: SumMatroid, N: SumMatroid, max_lattice: int | None = DEFAULT_MAX_LATTICE) -> bool:
    return first_difference(M, N, max_lattice) is None


def duality_commutes(C: SumRankCode, max_lattice: int | None = DEFAULT_MAX_LATTICE) -> CheckReport:
    """Pointwise comparison of dual(M_C) with M_{C-dual}, plus the double dual."""
    M = from_code(C).materialize(max_lattice)
    D = from_code(dual_code(C)).materialize(max_lattice)
    lhs, rhs = M.dual().table(), D.table()
    twice = M.dual().dual().table()
    idx = C.lattice.indexed(max_lattice)
    violations = [
        {"element": _witness(idx, t), "dual_of_matroid": int(lhs[t]), "matroid_of_dual": int(rhs[t])}
        for t in np.flatnonzero(lhs != rhs)[:MAX_WITNESSES]
    ]
    bidual_ok = bool(np.array_equal(twice, M.table()))
    return CheckReport(
        "duality_commutes",
        ok=not violations and bidual_ok,
        violations=violations,
        details={"mismatches": int((lhs != rhs).sum()), "double_dual_ok": bidual_ok,
                 "matroid_rank": int(M.matroid_rank), "dim_dual_code": C.n - C.k},
    )


# -- rank-table files ------------------------------------------------------------


def _key(enc) -> str:
    return json.dumps(enc, sort_keys=True, separators=(",", ":"))


def rank_table_to_json(M: SumMatroid, max_lattice: int | None = DEFAULT_MAX_LATTICE) -> list:
    """Sorted list of ``[element encoding, rank]`` pairs."""
    t = M.table(max_lattice)
    lat = M.lattice
    pairs = [[lat.element_at(i).to_json(lat.tower), int(t[i])] for i in range(lat.size)]
    pairs.sort(key=lambda pr: _key(pr[0]))
    return pairs


def rank_table_from_json(lattice: ProductLattice, pairs: list, name: str = "table") -> SumMatroid:
    F = lattice.tower
    table = np.zeros(lattice.size, dtype=np.intp)
    seen = np.zeros(lattice.size, dtype=bool)
    for enc, value in pairs:
        parts = [lattice._make(int(d["block"]), np.array(
            [[F.from_coeffs(c) for c in row] for row in d["rows"]], dtype=np.intp
        ).reshape(len(d["rows"]), lattice.ns[int(d["block"])])) for d in enc]
        t = lattice.index(lattice.element(parts))
        table[t] = int(value)
        seen[t] = True
    if not seen.all():
        missing = int((~seen).sum())
        raise ValueError(f"rank table is not total: {missing} lattice elements missing")
    return SumMatroid(lattice, table=table, name=name)
