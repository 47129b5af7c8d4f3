"""Generalized weights, Wei duality and MSRD certificates.

Hierarchies always have length eta(K^n) of the matroid at hand; for the
matroid of an [n, k] code that is k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import ffmatrix as fm
from .errors import guard
from .lattice import ProductElement, ProductLattice, gaussian_binomial
from .reports import CheckReport
from .sum_matroid import DEFAULT_MAX_LATTICE, SumMatroid, equals, first_difference, from_code, uniform
from .sumrank_code import (
    SumRankCode,
    codewords,
    dual_code,
    hamming_view,
    intersection_dim,
    srank,
    support,
    support_space,
)


@dataclass(frozen=True)
class WeightHierarchy:
    source: str
    weights: tuple[int, ...]
    n: int
    witnesses: tuple[ProductElement, ...] = field(default=(), compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i: int) -> int:
        return self.weights[i]

    def strictly_increasing(self) -> bool:
        w = self.weights
        return all(a < b for a, b in zip(w, w[1:])) and all(1 <= d <= self.n for d in w)

    def to_json(self) -> list[int]:
        return list(self.weights)


def _sweep(lat: ProductLattice, score, length: int, source: str,
           max_lattice: int | None) -> WeightHierarchy:
    """d_i = least rank level holding an element with ``score >= i``."""
    guard("product lattice", lat.size, max_lattice)
    weights: list[int] = []
    witnesses: list[ProductElement] = []
    for N in range(lat.n + 1):
        if len(weights) == length:
            break
        best, best_elem = -1, None
        for elem in lat.enumerate_rank_level(N):
            s = score(elem)
            if s > best:
                best, best_elem = s, elem
                if best >= length:
                    break
        while len(weights) < min(best, length):
            weights.append(N)
            witnesses.append(best_elem)
    return WeightHierarchy(source, tuple(weights), lat.n, tuple(witnesses))


def matroid_weights(M: SumMatroid, max_lattice: int | None = DEFAULT_MAX_LATTICE) -> WeightHierarchy:
    """d_i = min{Rk(L) : eta(L) >= i} for i = 1..eta(K^n)."""
    lat = M.lattice
    length = lat.n - M.matroid_rank
    return _sweep(lat, M.nullity, max(length, 0), "matroid", max_lattice)


def matroid_weights_exact_nullity(M: SumMatroid, max_lattice: int | None = DEFAULT_MAX_LATTICE) -> WeightHierarchy:
    """Same hierarchy with the condition eta(L) == i instead of >= i."""
    idx = M.lattice.indexed(max_lattice)
    eta = idx.rk - M.table(max_lattice)
    length = int(eta[idx.full])
    out = []
    for i in range(1, length + 1):
        hits = idx.rk[eta == i]
        out.append(int(hits.min()))
    return WeightHierarchy("matroid-exact", tuple(out), M.lattice.n)


def code_weights(C: SumRankCode, max_lattice: int | None = DEFAULT_MAX_LATTICE) -> WeightHierarchy:
    """d_{SR,i} = min{Rk(L) : dim(C ∩ V_L) >= i} for i = 1..k."""
    return _sweep(C.lattice, lambda e: intersection_dim(C, e), C.k, "code", max_lattice)


def code_weights_bruteforce(C: SumRankCode, max_lattice: int | None = DEFAULT_MAX_LATTICE,
                            max_codewords: int | None = None) -> WeightHierarchy:
    """Oracle: count the codewords whose support lies under each lattice element."""
    idx = C.lattice.indexed(max_lattice)
    words = codewords(C, max_codewords)
    sup = np.array([C.lattice.index(support(C.lattice, w)) for w in words], dtype=np.intp)
    q = C.tower.q
    best = np.zeros(C.lattice.n + 1, dtype=np.intp)
    for t in range(idx.size):
        count = int(idx.leq(sup, np.intp(t)).sum())
        dim = round(np.log(count) / np.log(q)) if count > 1 else 0
        if q**dim != count:
            raise AssertionError(f"codewords under an element do not form a subspace ({count})")
        best[idx.rk[t]] = max(best[idx.rk[t]], dim)
    weights = []
    for i in range(1, C.k + 1):
        weights.append(int(np.flatnonzero(best >= i)[0]))
    return WeightHierarchy("code-bruteforce", tuple(weights), C.n)


# -- checks -------------------------------------------------------------------------


def route_equality_check(C: SumRankCode, max_lattice: int | None = DEFAULT_MAX_LATTICE) -> CheckReport:
    """Matroid route and code route give the same hierarchy."""
    hm = matroid_weights(from_code(C), max_lattice)
    hc = code_weights(C, max_lattice)
    bad = [
        {"index": i + 1, "matroid": a, "code": b}
        for i, (a, b) in enumerate(itertools.zip_longest(hm.weights, hc.weights))
        if a != b
    ]
    return CheckReport("route_equality", ok=not bad, violations=bad,
                       details={"matroid": hm.to_json(), "code": hc.to_json()})


def monotonicity_check(h: WeightHierarchy) -> CheckReport:
    return CheckReport("monotonicity", ok=h.strictly_increasing(), details={"hierarchy": h.to_json()})


def singleton_check(h: WeightHierarchy, n: int, k: int) -> CheckReport:
    bad = [{"index": i, "weight": d, "bound": n - k + i}
           for i, d in enumerate(h.weights, start=1) if d > n - k + i]
    tight = [i for i, d in enumerate(h.weights, start=1) if d == n - k + i]
    return CheckReport("singleton", ok=not bad, violations=bad, details={"tight_indices": tight})


def wei_partition(dual_weights, weights, n: int) -> tuple[bool, list[int], list[int]]:
    """Whether {d*_j} and {n+1-d_i} are disjoint and cover 1..n."""
    a = sorted(dual_weights)
    b = sorted(n + 1 - d for d in weights)
    ok = not (set(a) & set(b)) and sorted(a + b) == list(range(1, n + 1))
    return ok, a, b


def wei_duality_check(M: SumMatroid, max_lattice: int | None = DEFAULT_MAX_LATTICE) -> CheckReport:
    h = matroid_weights(M, max_lattice)
    hd = matroid_weights(M.dual(), max_lattice)
    n = M.lattice.n
    ok, a, b = wei_partition(hd.weights, h.weights, n)
    reconstructed = sorted(set(range(1, n + 1)) - set(b))
    ok = ok and reconstructed == list(hd.weights)
    return CheckReport("wei_matroid", ok=ok, details={
        "weights": h.to_json(), "dual_weights": hd.to_json(),
        "dual_side": a, "transformed_side": b,
    })


def wei_code_check(C: SumRankCode, max_lattice: int | None = DEFAULT_MAX_LATTICE) -> CheckReport:
    """{d_t(C)} equals {1..n} minus {n+1-d_r(C-dual)}."""
    h = code_weights(C, max_lattice)
    hd = code_weights(dual_code(C), max_lattice)
    n = C.n
    expected = sorted(set(range(1, n + 1)) - {n + 1 - d for d in hd.weights})
    ok = list(h.weights) == expected
    return CheckReport("wei_code", ok=ok, details={
        "weights": h.to_json(), "dual_weights": hd.to_json(),
        "transformed_dual": sorted(n + 1 - d for d in hd.weights),
    })


# -- MSRD ---------------------------------------------------------------------------


@dataclass
class MsrdCertificate:
    is_msrd: bool
    msrd_rank: int | None
    method: str
    witness: dict[str, Any] | None = None
    hierarchy: tuple[int, ...] | None = None
    checked: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {"is_msrd": self.is_msrd, "msrd_rank": self.msrd_rank, "method": self.method,
                "witness": self.witness, "hierarchy": None if self.hierarchy is None else list(self.hierarchy),
                "checked": self.checked}


def _matrix_json(F, A: np.ndarray) -> list:
    return [[F.to_coeffs(int(x)) for x in row] for row in A]


def _matrix_from_json(F, rows) -> np.ndarray:
    return np.array([[F.from_coeffs(c) for c in row] for row in rows], dtype=np.intp).reshape(len(rows), -1)


def msrd_rank(C: SumRankCode, max_lattice: int | None = DEFAULT_MAX_LATTICE) -> MsrdCertificate:
    """Least i with d_i = n-k+i; a low-weight codeword is attached when d_1 < n-k+1."""
    h = code_weights(C, max_lattice)
    n, k = C.n, C.k
    r = next((i for i, d in enumerate(h.weights, start=1) if d == n - k + i), None)
    if k == 0:
        return MsrdCertificate(True, None, "weights", None, (), 0)
    witness = None
    if r != 1:
        V = support_space(C.lattice, h.witnesses[0])
        common = fm.intersect_row_spaces(C.tower, C.generator, V)
        c = common[0]
        witness = {"kind": "codeword", "vector": [C.tower.to_coeffs(int(x)) for x in c],
                   "srank": srank(C.lattice, c)}
    return MsrdCertificate(r == 1, r, "weights", witness, h.weights, C.lattice.size)


def criterion_size(C: SumRankCode) -> int:
    lat = C.lattice
    q = [len(C.tower.subfield(i)) for i in range(lat.ell)]
    total = 0
    for comp in lat.compositions(C.k):
        prod = 1
        for n_i, k_i, q_i in zip(lat.ns, comp, q):
            prod *= gaussian_binomial(n_i, k_i, q_i)
        total += prod
    return total


def msrd_matrix_criterion(C: SumRankCode, max_compositions: int | None = None) -> MsrdCertificate:
    """MSRD iff G·A is invertible for every block-diagonal rank-k A = diag(A_1..A_l), A_i over K_i.

    Only one A_i per column space is tried; right-multiplying A_i by an
    invertible matrix does not change whether G·A is invertible.
    """
    lat = C.lattice
    guard("block-diagonal test matrices", criterion_size(C), max_compositions)
    checked = 0
    for comp in lat.compositions(C.k):
        for parts in itertools.product(*(lat.subspaces(i, d) for i, d in enumerate(comp))):
            A = fm.block_diag([U.basis().T.reshape(U.n, U.dim) for U in parts])
            checked += 1
            if not fm.invertible(C.tower, fm.matmul(C.tower, C.generator, A)):
                witness = {"kind": "matrix", "composition": list(comp), "A": _matrix_json(C.tower, A)}
                return MsrdCertificate(False, None, "matrix", witness, None, checked)
    return MsrdCertificate(True, None, "matrix", None, None, checked)


def criterion_spotcheck(C: SumRankCode, rng: np.random.Generator, trials: int = 20) -> bool:
    """Random invertible right factors on each A_i never change GA's invertibility."""
    lat = C.lattice
    F = C.tower
    comps = list(lat.compositions(C.k))
    if not comps or C.k == 0:
        return True
    for _ in range(trials):
        comp = comps[rng.integers(len(comps))]
        base, mixed = [], []
        for i, d in enumerate(comp):
            subs = lat.subspaces(i, d)
            U = subs[rng.integers(len(subs))]
            Ai = U.basis().T.reshape(U.n, U.dim)
            base.append(Ai)
            mixed.append(fm.matmul(F, Ai, _random_invertible(F, d, F.subfield(i), rng)))
        a = fm.invertible(F, fm.matmul(F, C.generator, fm.block_diag(base)))
        b = fm.invertible(F, fm.matmul(F, C.generator, fm.block_diag(mixed)))
        if a != b:
            return False
    return True


def _random_invertible(F, d: int, K, rng) -> np.ndarray:
    K = np.asarray(K, dtype=np.intp)
    while True:
        U = K[rng.integers(len(K), size=(d, d))]
        if d == 0 or fm.invertible(F, U):
            return U.reshape(d, d)


def validate_certificate(C: SumRankCode, cert: MsrdCertificate) -> bool:
    """Re-check an attached witness from scratch."""
    F = C.tower
    w = cert.witness
    if w is None:
        return True
    if w["kind"] == "codeword":
        c = np.array([F.from_coeffs(x) for x in w["vector"]], dtype=np.intp)
        in_code = fm.rank(F, np.vstack([C.generator, c])) == C.k
        return bool(c.any()) and in_code and srank(C.lattice, c) <= C.n - C.k
    if w["kind"] == "matrix":
        A = _matrix_from_json(F, w["A"])
        o, col = C.lattice.offsets, 0
        for i, k_i in enumerate(w["composition"]):
            block = A[o[i]:o[i + 1], col:col + k_i]
            outside = A[:, col:col + k_i].copy()
            outside[o[i]:o[i + 1]] = 0
            if outside.any() or any(int(x) not in F.subfield(i) for x in block.flat):
                return False
            if fm.rank(F, block) != k_i:
                return False
            col += k_i
        return col == C.k and not fm.invertible(F, fm.matmul(F, C.generator, A))
    return False


def _general_linear(F, n: int, K) -> list[np.ndarray]:
    out = []
    for entries in itertools.product(K, repeat=n * n):
        A = np.array(entries, dtype=np.intp).reshape(n, n)
        if n == 0 or fm.invertible(F, A):
            out.append(A)
    return out


def r_msrd_crosscheck(C: SumRankCode, r: int | None = None, max_transforms: int | None = None,
                      max_lattice: int | None = DEFAULT_MAX_LATTICE) -> CheckReport:
    """Compare sum-rank weights of C with Hamming weights of C·A over all A = diag(GL_{n_i}(K_i)).

    For each index r: d_{SR,r}(C) = n-k+r  iff  d_{H,r}(C·A) = n-k+r for every A.
    Also checks d_{SR,r}(C) = min over A of d_{H,r}(C·A).
    """
    F, lat = C.tower, C.lattice
    n, k = C.n, C.k
    size = 1
    for i, n_i in enumerate(lat.ns):
        size *= len(F.subfield(i)) ** (n_i * n_i)
    guard("block-diagonal invertible transforms", size, max_transforms)
    groups = [_general_linear(F, n_i, F.subfield(i)) for i, n_i in enumerate(lat.ns)]
    h = code_weights(C, max_lattice).weights
    indices = range(1, k + 1) if r is None else [r]
    meets_all = {i: True for i in indices}
    min_h = {i: n + 1 for i in indices}
    mds_ranks: dict[int | None, int] = {}
    count = 0
    for blocks in itertools.product(*groups):
        A = fm.block_diag(blocks)
        CA = hamming_view(C, fm.matmul(F, C.generator, A))
        hh = code_weights(CA, max_lattice).weights
        count += 1
        for i in indices:
            meets_all[i] &= hh[i - 1] == n - k + i
            min_h[i] = min(min_h[i], hh[i - 1])
        first = next((i for i, d in enumerate(hh, start=1) if d == n - k + i), None)
        mds_ranks[first] = mds_ranks.get(first, 0) + 1
    bad = []
    for i in indices:
        meets = h[i - 1] == n - k + i
        if meets != meets_all[i] or min_h[i] != h[i - 1]:
            bad.append({"index": i, "sum_rank_weight": h[i - 1], "meets": meets,
                        "all_transforms_meet": meets_all[i], "min_hamming_weight": min_h[i]})
    msrd = next((i for i, d in enumerate(h, start=1) if d == n - k + i), None)
    return CheckReport("r_msrd", ok=not bad, violations=bad, details={
        "transforms": count, "msrd_rank": msrd,
        "mds_rank_counts": {str(key): v for key, v in sorted(mds_ranks.items(), key=lambda kv: (kv[0] is None, kv[0] or 0))},
    })


def uniform_correspondence(C: SumRankCode, max_lattice: int | None = DEFAULT_MAX_LATTICE) -> CheckReport:
    """MSRD iff M_C = U_{n-k,n}, and then the dual sum-matroid is U_{k,n}."""
    n, k = C.n, C.k
    h = code_weights(C, max_lattice)
    is_msrd = k == 0 or h.weights[0] == n - k + 1
    M = from_code(C).materialize(max_lattice)
    U = uniform(n - k, C.lattice)
    diff = first_difference(M, U, max_lattice)
    dual_uniform = equals(M.dual(), uniform(k, C.lattice), max_lattice)
    ok = is_msrd == (diff is None) and (not is_msrd or dual_uniform)
    details: dict[str, Any] = {"is_msrd": is_msrd, "matroid_is_uniform": diff is None,
                               "dual_is_uniform": dual_uniform}
    if diff is not None:
        details["witness"] = {"element": diff.to_json(C.tower), "rank": M.rank(diff),
                              "uniform_rank": min(diff.rk, n - k)}
    return CheckReport("uniform_correspondence", ok=ok, details=details)
