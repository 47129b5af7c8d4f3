"""Acceptance suite, one PASS/FAIL line per criterion.

    pytest tests/test_acceptance.py -v -s
    python3 tests/test_acceptance.py
"""

from __future__ import annotations

import functools
import itertools
import json
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import gf, random_code_corpus, span_set  # noqa: E402

from summatroid import ffmatrix as fm  # noqa: E402
from summatroid.cli import iter_generators  # noqa: E402
from summatroid.lattice import ProductLattice  # noqa: E402
from summatroid.sum_matroid import (  # noqa: E402
    check_axioms,
    duality_commutes,
    first_difference,
    from_code,
    uniform,
)
from summatroid.sumrank_code import (  # noqa: E402
    SumRankCode,
    codewords,
    dual_code,
    min_distance_bruteforce,
    mu,
    rho,
    srank,
    support,
    support_of_subcode,
    support_space,
)
from summatroid.weights import (  # noqa: E402
    code_weights,
    code_weights_bruteforce,
    matroid_weights,
    msrd_matrix_criterion,
    msrd_rank,
    route_equality_check,
    uniform_correspondence,
    wei_code_check,
    wei_duality_check,
)

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"
CORPUS_SIZE = 50
CORPUS_SEED = 2024

# (p, M, [(subfield degree, n_i)], k values)
SWEEPS = [
    (2, 2, [(1, 2)], [1]),
    (2, 2, [(2, 1), (1, 2)], [1, 2]),
    (2, 2, [(1, 1), (2, 2)], [1, 2]),
]


@functools.cache
def corpus() -> tuple[SumRankCode, ...]:
    return tuple(random_code_corpus(CORPUS_SIZE, CORPUS_SEED))


def announce(number: int, title: str, ok: bool, detail: str) -> None:
    print(f"[acceptance {number:2d}] {'PASS' if ok else 'FAIL'} {title}: {detail}", flush=True)


# -- criteria -------------------------------------------------------------------------


def criterion_axioms():
    start = time.perf_counter()
    codes = corpus()
    bad = [i for i, C in enumerate(codes) if not check_axioms(from_code(C)).ok]
    elapsed = time.perf_counter() - start
    ok = not bad and len(codes) >= 50 and elapsed < 60
    return ok, f"{len(codes)} codes, {len(bad)} with violations, {elapsed:.1f}s"


def criterion_mu_plus_rho():
    checked = failures = 0
    for C in corpus():
        for elem in C.lattice:
            checked += 1
            failures += mu(C, elem) + rho(C, elem) != C.n - C.k
    return failures == 0, f"{checked} (code, element) pairs, {failures} failures"


def _filtered_support_space_ok(lat: ProductLattice) -> bool:
    """V_L built by keeping every vector of F^n whose support lies under L."""
    F = lat.tower
    idx = lat.indexed()
    every = np.array(list(itertools.product(range(F.q), repeat=lat.n)), dtype=np.intp)
    sup = np.array([lat.index(support(lat, v)) for v in every], dtype=np.intp)
    for t in range(idx.size):
        members = every[idx.leq(sup, np.intp(t))]
        if members.shape[0] != F.q ** int(idx.rk[t]):
            return False
        V = support_space(lat, idx.element(t))
        if fm.rank(F, V) != idx.rk[t] or fm.rank(F, np.vstack([V, members])) != V.shape[0]:
            return False
    return True


def criterion_support_space():
    profiles = {}
    for C in corpus():
        profiles.setdefault((C.tower.q, C.tower.degrees, C.ns), C.lattice)
    skipped = [key for key, lat in profiles.items() if lat.tower.q ** lat.n > 2**16]
    bad = [key for key, lat in profiles.items() if key not in skipped and not _filtered_support_space_ok(lat)]
    ok = not bad and not skipped
    return ok, f"{len(profiles)} profiles, {len(bad)} failures, {len(skipped)} too large to filter"


def criterion_duality():
    bad = [i for i, C in enumerate(corpus()) if not duality_commutes(C).ok]
    return not bad, f"{len(corpus())} codes, {len(bad)} mismatches (pointwise and double dual)"


def criterion_route_equality():
    bad = [i for i, C in enumerate(corpus()) if not route_equality_check(C).ok]
    return not bad, f"{len(corpus())} codes, {len(bad)} disagreements"


def _hierarchies(C: SumRankCode):
    """(hierarchy, rank of the matroid it belongs to) for every hierarchy computed on C."""
    M = from_code(C).materialize()
    D = dual_code(C)
    return [
        (code_weights(C), C.n - C.k),
        (matroid_weights(M), C.n - C.k),
        (matroid_weights(M.dual()), C.k),
        (code_weights(D), C.k),
    ]


def criterion_monotone_singleton():
    count = bad = 0
    for C in corpus():
        for h, r in _hierarchies(C):
            count += 1
            bounded = all(d <= r + i for i, d in enumerate(h.weights, start=1))
            bad += not (h.strictly_increasing() and bounded)
    return bad == 0, f"{count} hierarchies, {bad} violations"


def _synthetic_matroids(lat: ProductLattice, C: SumRankCode):
    for k in range(lat.n + 1):
        yield uniform(k, lat)
    M = from_code(C).materialize()
    for t in range(M.matroid_rank):
        T = M.truncation(t)
        yield T
        yield T.dual()


def criterion_wei():
    code_bad = sum(not (wei_duality_check(from_code(C)).ok and wei_code_check(C).ok) for C in corpus())
    synthetic = synth_bad = 0
    for C in corpus():
        for M in _synthetic_matroids(C.lattice, C):
            if not check_axioms(M).ok:
                continue
            synthetic += 1
            synth_bad += not wei_duality_check(M).ok
    ok = code_bad == 0 and synth_bad == 0 and synthetic > 0
    return ok, (f"{len(corpus())} codes ({code_bad} failures), "
                f"{synthetic} axiom-passing synthetic matroids ({synth_bad} failures)")


@functools.cache
def sweep_records():
    """Per generator matrix: (code, d_1 meets the bound, matrix criterion verdict)."""
    records = []
    for p, M, blocks, ks in SWEEPS:
        degrees, ns = zip(*blocks)
        F = gf(p, M, degrees)
        for k in ks:
            memo = {}
            for G in iter_generators(F, k, sum(ns)):
                C = SumRankCode(F, ns, G)
                key = C.canonical_generator.tobytes()
                if key not in memo:
                    memo[key] = code_weights(C).weights[0] == C.n - C.k + 1
                records.append((C, memo[key], msrd_matrix_criterion(C).is_msrd))
    return tuple(records)


def criterion_msrd_equivalence():
    start = time.perf_counter()
    records = sweep_records()
    elapsed = time.perf_counter() - start
    bad = sum(by_weight != by_matrix for _, by_weight, by_matrix in records)
    msrd = sum(by_weight for _, by_weight, _ in records)
    ok = bad == 0 and elapsed < 120
    return ok, f"{len(records)} generator matrices ({msrd} MSRD), {bad} disagreements, {elapsed:.1f}s"


def criterion_uniform():
    seen = {}
    for C, is_msrd, _ in sweep_records():
        seen.setdefault((C.ns, C.tower.degrees, C.canonical_generator.tobytes()), (C, is_msrd))
    msrd_bad = non_bad = msrd_count = 0
    for C, is_msrd in seen.values():
        rep = uniform_correspondence(C)
        if is_msrd:
            msrd_count += 1
            msrd_bad += not (rep.ok and rep.details["matroid_is_uniform"] and rep.details["dual_is_uniform"])
        else:
            w = first_difference(from_code(C), uniform(C.n - C.k, C.lattice))
            non_bad += not (rep.ok and w is not None and rho(C, w) != min(w.rk, C.n - C.k))
    ok = msrd_bad == 0 and non_bad == 0
    return ok, (f"{len(seen)} distinct codes: {msrd_count} MSRD ({msrd_bad} not uniform), "
                f"{len(seen) - msrd_count} non-MSRD ({non_bad} without witness)")


def _subcode_weights(C: SumRankCode) -> tuple[int, ...]:
    """Oracle: d_r = min Rk(supp(D)) over every r-dimensional subcode D, found by enumeration."""
    F, lat = C.tower, C.lattice
    words = [w for w in codewords(C) if w.any()]
    out = []
    for r in range(1, C.k + 1):
        best = C.n + 1
        seen = set()
        for rows in itertools.combinations(words, r):
            members = frozenset(span_set(F, rows, range(F.q)))
            if len(members) != F.q**r or members in seen:
                continue
            seen.add(members)
            best = min(best, support_of_subcode(lat, np.array(rows), method="enumerate").rk)
        out.append(best)
    return tuple(out)


def criterion_specialization():
    from summatroid.codefile import load_code

    rep = load_code(DATA / "repetition3.json")
    mrd = load_code(DATA / "mrd21.json")
    derived = {
        "repetition": _subcode_weights(rep),
        "repetition_dual": _subcode_weights(dual_code(rep)),
        "mrd": _subcode_weights(mrd),
    }
    partition = (sorted(rep.n + 1 - d for d in derived["repetition"]), sorted(derived["repetition_dual"]))
    oracle_ok = (
        derived == {"repetition": (3,), "repetition_dual": (2, 3), "mrd": (2,)}
        and partition == ([1], [2, 3])
        and code_weights_bruteforce(rep).weights == (3,)
        and min_distance_bruteforce(mrd) == 2 == mrd.n - mrd.k + 1
    )
    golden = {name: json.loads((GOLDEN / f"{name}.json").read_text())
              for name in ("weights_repetition3", "wei_repetition3", "weights_mrd21", "msrd_mrd21")}
    wei = golden["wei_repetition3"]["checks"][0]["details"]
    golden_ok = (
        tuple(golden["weights_repetition3"]["hierarchies"]["code"]) == derived["repetition"]
        and tuple(golden["wei_repetition3"]["hierarchies"]["dual_code"]) == derived["repetition_dual"]
        and (wei["transformed_side"], wei["dual_side"]) == partition
        and tuple(golden["weights_mrd21"]["hierarchies"]["code"]) == derived["mrd"]
        and golden["msrd_mrd21"]["verdicts"]["is_msrd"]
    )
    live_ok = (code_weights(rep).weights == derived["repetition"]
               and code_weights(dual_code(rep)).weights == derived["repetition_dual"]
               and msrd_rank(mrd).msrd_rank == 1)
    ok = oracle_ok and golden_ok and live_ok
    return ok, (f"repetition {derived['repetition']}, dual {derived['repetition_dual']}, "
                f"partition {partition[0]} + {partition[1]}, MRD {derived['mrd']}; "
                f"oracle={oracle_ok} golden={golden_ok} live={live_ok}")


def _all_hierarchies(C: SumRankCode):
    return [h.weights for h, _ in _hierarchies(C)] + [msrd_rank(C).msrd_rank]


def criterion_basis_independence():
    changed = 0
    bases_differ = 0
    for C in corpus():
        alt_tower = C.tower.alternative()
        bases_differ += alt_tower.bases != C.tower.bases
        A = C.on_tower(alt_tower)
        vectors = codewords(C) if C.tower.q**C.n > 1024 else \
            np.array(list(itertools.product(range(C.tower.q), repeat=C.n)), dtype=np.intp)
        for v in vectors:
            if srank(C.lattice, v) != srank(A.lattice, v) or support(C.lattice, v) != support(A.lattice, v):
                changed += 1
                break
        else:
            changed += _all_hierarchies(C) != _all_hierarchies(A)
    ok = changed == 0 and bases_differ > 0
    return ok, f"{len(corpus())} codes ({bases_differ} with a different basis), {changed} changed"


CRITERIA = [
    (1, "axiom suite", criterion_axioms),
    (2, "mu + rho = n - k", criterion_mu_plus_rho),
    (3, "support-space dimension", criterion_support_space),
    (4, "duality", criterion_duality),
    (5, "route equality", criterion_route_equality),
    (6, "monotonicity and Singleton", criterion_monotone_singleton),
    (7, "Wei partition", criterion_wei),
    (8, "MSRD criterion equivalence", criterion_msrd_equivalence),
    (9, "uniform correspondence", criterion_uniform),
    (10, "specialization regression", criterion_specialization),
    (11, "basis independence", criterion_basis_independence),
]


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        announce(number, title, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for number, title, fn in CRITERIA:
        ok, detail = fn()
        announce(number, title, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
