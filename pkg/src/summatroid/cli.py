"""Command-line front end.

Exit statuses: 0 all checks pass, 1 a mathematical check failed, 2 input
error, 3 a brute-force ceiling was hit.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from collections import Counter
from pathlib import Path
from typing import Any

import numpy as np

from . import ffmatrix as fm
from . import sumrank_code as src
from .codefile import CodeFileError, code_to_doc, load_code
from .errors import DEFAULT_CEILING, ScaleError, TowerError, guard
from .field_tower import FieldTower, conway_like_modulus
from .reports import CheckReport
from .sum_matroid import (
    DEFAULT_MAX_LATTICE,
    check_axioms,
    duality_commutes,
    equals,
    from_code,
    rank_table_from_json,
)
from .sumrank_code import SumRankCode
from .weights import (
    code_weights,
    code_weights_bruteforce,
    matroid_weights,
    matroid_weights_exact_nullity,
    monotonicity_check,
    msrd_matrix_criterion,
    msrd_rank,
    r_msrd_crosscheck,
    singleton_check,
    route_equality_check,
    uniform_correspondence,
    validate_certificate,
    wei_code_check,
    wei_duality_check,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SCALE = 0, 1, 2, 3


class Report:
    def __init__(self, command: str, inputs: dict[str, Any]):
        self.command = command
        self.inputs = inputs
        self.verdicts: dict[str, bool] = {}
        self.hierarchies: dict[str, list[int]] = {}
        self.certificates: dict[str, Any] = {}
        self.checks: list[dict[str, Any]] = []
        self.notes: list[str] = []
        self._start = time.perf_counter()

    def add(self, check: CheckReport, key: str | None = None) -> CheckReport:
        name = key or check.name
        self.verdicts[name] = bool(check.ok)
        self.checks.append({**check.to_dict(), "name": name})
        return check

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def to_dict(self, timing: bool = True) -> dict[str, Any]:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "ok": self.ok,
            "verdicts": self.verdicts,
            "hierarchies": self.hierarchies,
            "certificates": self.certificates,
            "checks": self.checks,
            "notes": self.notes,
        }
        if timing:
            out["timing"] = round(time.perf_counter() - self._start, 4)
        return out

    def to_text(self) -> str:
        lines = [f"{self.command}: {'PASS' if self.ok else 'FAIL'}"]
        for k, v in self.inputs.items():
            lines.append(f"  input {k}: {v}")
        for name, h in self.hierarchies.items():
            lines.append(f"  hierarchy {name}: {tuple(h)}")
        for name, v in self.verdicts.items():
            lines.append(f"  [{'pass' if v else 'FAIL'}] {name}")
        for name, cert in self.certificates.items():
            lines.append(f"  certificate {name}: {json.dumps(cert)}")
        for check in self.checks:
            for v in check["violations"][:5]:
                lines.append(f"  violation {check['name']}: {json.dumps(v)}")
        for note in self.notes:
            lines.append(f"  note: {note}")
        return "\n".join(lines)


def _code_inputs(C: SumRankCode, path: str) -> dict[str, Any]:
    F = C.tower
    return {"file": Path(path).name, "p": F.p, "M": F.M, "degrees": list(F.degrees), "ns": list(C.ns),
            "n": C.n, "k": C.k}


# -- commands ---------------------------------------------------------------------


def cmd_weights(C: SumRankCode, args, report: Report) -> None:
    ml = args.max_lattice
    hc = code_weights(C, ml)
    hm = matroid_weights(from_code(C), ml)
    report.hierarchies["code"] = hc.to_json()
    report.hierarchies["matroid"] = hm.to_json()
    report.add(route_equality_check(C, ml))
    report.add(singleton_check(hc, C.n, C.k))
    report.add(monotonicity_check(hc), "monotonicity_code")
    report.add(monotonicity_check(hm), "monotonicity_matroid")


def cmd_axioms(C: SumRankCode, args, report: Report) -> None:
    ml = args.max_lattice
    if args.rank_table:
        try:
            pairs = json.loads(Path(args.rank_table).read_text())
            M = rank_table_from_json(C.lattice, pairs, name=Path(args.rank_table).name)
        except (KeyError, TypeError, ValueError) as exc:
            raise CodeFileError(f"bad rank table {args.rank_table}: {exc}") from None
        report.add(check_axioms(M, ml))
        return
    M = from_code(C)
    report.add(check_axioms(M, ml))
    report.add(check_axioms(M.materialize(ml).dual(), ml), "axioms_dual")
    report.add(duality_commutes(C, ml))
    T = M.materialize(ml)
    report.verdicts["double_dual"] = equals(T.dual().dual(), T, ml)
    report.verdicts["rank_equals_dim_dual"] = T.matroid_rank == C.n - C.k
    if T.matroid_rank == 0:
        report.notes.append("rank-0 sum-matroid")


def cmd_msrd(C: SumRankCode, args, report: Report) -> None:
    ml, method = args.max_lattice, args.method
    certs = {}
    if method in ("weights", "both"):
        certs["weights"] = msrd_rank(C, ml)
    if method in ("matrix", "both"):
        certs["matrix"] = msrd_matrix_criterion(C, args.max_compositions)
    for name, cert in certs.items():
        report.certificates[name] = cert.to_dict()
        report.verdicts[f"witness_{name}_valid"] = validate_certificate(C, cert)
    if "weights" in certs and certs["weights"].hierarchy is not None:
        report.hierarchies["code"] = list(certs["weights"].hierarchy)
    verdict = next(iter(certs.values())).is_msrd
    if method == "both":
        report.verdicts["methods_agree"] = certs["weights"].is_msrd == certs["matrix"].is_msrd
    report.verdicts["is_msrd"] = verdict
    if not verdict:
        # not being MSRD is an answer, not a failed check
        report.verdicts.pop("is_msrd")
        report.notes.append("code is not MSRD")


def cmd_wei(C: SumRankCode, args, report: Report) -> None:
    ml = args.max_lattice
    w = report.add(wei_duality_check(from_code(C), ml))
    report.hierarchies["matroid"] = w.details["weights"]
    report.hierarchies["dual_matroid"] = w.details["dual_weights"]
    c = report.add(wei_code_check(C, ml))
    report.hierarchies["code"] = c.details["weights"]
    report.hierarchies["dual_code"] = c.details["dual_weights"]


def cmd_oracle(C: SumRankCode, args, report: Report) -> None:
    """Every brute-force oracle against its fast path."""
    ml, mc = args.max_lattice, args.max_codewords
    lat = C.lattice
    h = code_weights(C, ml)
    hb = code_weights_bruteforce(C, ml, mc)
    report.hierarchies["code"] = h.to_json()
    report.hierarchies["bruteforce"] = hb.to_json()
    report.verdicts["weights_vs_bruteforce"] = h.weights == hb.weights
    if C.k:
        report.verdicts["min_distance"] = src.min_distance_bruteforce(C, mc) == h.weights[0]
    hm = from_code(C).materialize(ml)
    report.verdicts["exact_nullity_weights"] = (
        matroid_weights_exact_nullity(hm, ml).weights == matroid_weights(hm, ml).weights
    )
    report.verdicts["subcode_support"] = (
        src.support_of_subcode(lat, C.generator, "scalars")
        == src.support_of_subcode(lat, C.generator, "enumerate", ceiling=mc)
    )
    filter_ok = True
    if C.tower.q ** C.n <= 2**16:
        filter_ok = _support_space_filter_ok(lat, ml)
    else:
        report.notes.append("support-space filter skipped (|F|^n > 2^16)")
    report.verdicts["support_space_filter"] = filter_ok
    routes = identity = alt = True
    lat.indexed(ml)
    for elem in lat:
        routes &= fm.same_row_space(C.tower, src.c_of(C, elem), src.c_of_via_support_space(C, elem))
        r = src.rho(C, elem)
        identity &= src.mu(C, elem) + r == C.n - C.k
        alt &= src.rho_alt(C, elem) == r
    report.verdicts["c_of_two_routes"] = bool(routes)
    report.verdicts["mu_plus_rho"] = bool(identity)
    report.verdicts["rho_alt"] = bool(alt)


def _support_space_filter_ok(lat, max_lattice) -> bool:
    """dim V_L = Rk(L) for every L, with V_L obtained by filtering all of F^n."""
    F = lat.tower
    idx = lat.indexed(max_lattice)
    every = fm.span_elements(F, np.eye(lat.n, dtype=np.intp), range(F.q))
    sup = np.array([lat.index(src.support(lat, v)) for v in every], dtype=np.intp)
    for t in range(idx.size):
        members = every[idx.leq(sup, np.intp(t))]
        expected = F.q ** int(idx.rk[t])
        if members.shape[0] != expected:
            return False
        basis = src.support_space(lat, idx.element(t))
        if fm.rank(F, np.vstack([basis, members])) != basis.shape[0] or fm.rank(F, basis) != idx.rk[t]:
            return False
    return True


# -- sweep -------------------------------------------------------------------------


def iter_generators(F: FieldTower, k: int, n: int):
    """Every full-rank k x n matrix over F, lexicographic in the flattened entries."""
    for entries in itertools.product(range(F.q), repeat=k * n):
        G = np.array(entries, dtype=np.intp).reshape(k, n)
        if fm.rank(F, G) == k:
            yield G


def sample_generators(F: FieldTower, k: int, n: int, count: int, seed: int):
    rng = np.random.default_rng(seed)
    made = 0
    while made < count:
        G = rng.integers(F.q, size=(k, n)).astype(np.intp)
        if fm.rank(F, G) == k:
            made += 1
            yield G


def sweep_one(C: SumRankCode, max_lattice: int, r_msrd: bool = False) -> dict[str, bool]:
    results = {}
    results["route_equality"] = route_equality_check(C, max_lattice).ok
    results["axioms"] = check_axioms(from_code(C), max_lattice).ok
    results["duality"] = duality_commutes(C, max_lattice).ok
    results["wei_matroid"] = wei_duality_check(from_code(C), max_lattice).ok
    results["wei_code"] = wei_code_check(C, max_lattice).ok
    h = code_weights(C, max_lattice)
    results["singleton"] = singleton_check(h, C.n, C.k).ok and h.strictly_increasing()
    by_weights = msrd_rank(C, max_lattice).is_msrd
    by_matrix = msrd_matrix_criterion(C).is_msrd
    results["criterion_agreement"] = by_weights == by_matrix
    results["uniform_correspondence"] = uniform_correspondence(C, max_lattice).ok
    if r_msrd:
        results["r_msrd"] = r_msrd_crosscheck(C, max_lattice=max_lattice).ok
    return results


def cmd_sweep(args, report: Report) -> None:
    modulus = args.modulus if args.modulus else conway_like_modulus(args.p, args.M)
    degrees, ns = zip(*args.blocks) if args.blocks else ((), ())
    F = FieldTower(args.p, args.M, modulus, degrees)
    n, k = sum(ns), args.k
    if not 0 <= k <= n:
        raise CodeFileError(f"k={k} out of range for n={n}")
    report.inputs.update({"modulus": list(F.modulus)})
    if args.sample:
        gens = sample_generators(F, k, n, args.sample, args.seed)
    else:
        guard("generator matrices", F.q ** (k * n), args.ceiling)
        gens = iter_generators(F, k, n)
    passes: Counter[str] = Counter()
    counterexamples = []
    memo: dict[bytes, dict[str, bool]] = {}
    total = msrd = 0
    for G in gens:
        C = SumRankCode(F, ns, G)
        key = C.canonical_generator.tobytes()
        if key not in memo:
            memo[key] = (sweep_one(C, args.max_lattice, args.r_msrd), msrd_rank(C, args.max_lattice).is_msrd)
        results, is_msrd = memo[key]
        # the matrix criterion is re-run on the actual generator, not just its row space
        results = dict(results)
        results["criterion_agreement"] &= msrd_matrix_criterion(C).is_msrd == is_msrd
        total += 1
        msrd += is_msrd
        for name, ok in results.items():
            passes[name] += ok
        if not all(results.values()) and len(counterexamples) < 10:
            counterexamples.append({"code": code_to_doc(C),
                                    "failed": [n for n, ok in results.items() if not ok]})
    report.inputs["generators"] = total
    report.inputs["distinct_codes"] = len(memo)
    report.certificates["pass_counts"] = dict(sorted(passes.items()))
    report.certificates["msrd_count"] = int(msrd)
    report.certificates["counterexamples"] = counterexamples
    for name, count in sorted(passes.items()):
        report.verdicts[name] = count == total


# -- entry point ---------------------------------------------------------------------


def _blocks_arg(text: str) -> list[tuple[int, int]]:
    try:
        return [tuple(int(x) for x in part.split(":")) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"blocks must look like 'd:n,d:n', got {text!r}") from None


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="summatroid", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the structured report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-lattice", type=int, default=DEFAULT_MAX_LATTICE)
    common.add_argument("--max-codewords", type=int, default=2**16)
    common.add_argument("--max-compositions", type=int, default=DEFAULT_CEILING)
    common.add_argument("--no-timing", action="store_true", help="omit the timing field")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in [("weights", "generalized weights by both routes"),
                           ("axioms", "rank-function axioms and duality"),
                           ("msrd", "MSRD rank and the block-diagonal matrix criterion"),
                           ("wei", "Wei-type duality for the matroid and the code pair"),
                           ("oracle", "brute-force oracles against the fast paths")]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        if name == "axioms":
            p.add_argument("--rank-table", help="check this rank table (JSON) on the file's ground instead")
        if name == "msrd":
            p.add_argument("--method", choices=["weights", "matrix", "both"], default="both")
    p = sub.add_parser("sweep", parents=[common], help="exhaustive small-parameter verification")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--modulus", type=_ints, help="comma-separated coefficients, lowest degree first")
    p.add_argument("--blocks", type=_blocks_arg, required=True, help="subfield_degree:n pairs, e.g. 1:2,2:1")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ceiling", type=int, default=2**16, help="maximum number of candidate generators")
    p.add_argument("--sample", type=int, default=0, help="random generators instead of all")
    p.add_argument("--r-msrd", action="store_true", help="also run the r-MSRD transform cross-check")
    return parser


COMMANDS = {"weights": cmd_weights, "axioms": cmd_axioms, "msrd": cmd_msrd, "wei": cmd_wei,
            "oracle": cmd_oracle}


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            report = Report("sweep", {"p": args.p, "M": args.M, "blocks": args.blocks, "k": args.k})
            cmd_sweep(args, report)
        else:
            C = load_code(args.file)
            report = Report(args.command, _code_inputs(C, args.file))
            COMMANDS[args.command](C, args, report)
    except ScaleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except (CodeFileError, TowerError, OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        print(json.dumps(report.to_dict(timing=not args.no_timing), indent=2), file=out)
    else:
        print(report.to_text(), file=out)
    return EXIT_OK if report.ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
