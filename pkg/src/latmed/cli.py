"""Command line front end.

Every invocation prints a deterministic report: result lines, then
violation lines. With --json the same report is emitted as one JSON
object {command, digest, results, violations, seed}. The digest is the
first 12 hex chars of sha256 over the canonical serialization of the
inputs, so identical inputs are recognizable across runs. Exit status: 0
clean, 1 for violations or domain errors (reported by error class name),
2 for usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import market_clearing as mc
from . import stable_matching as sm
from .errors import EmptyInput, JOutOfRange, LatmedError
from .lattice_median import check_regular, generalized_medians, medians_via_meet_join
from .order_core import format_vector, parse_vector
from .verify import (
    WORKED_INPUTS,
    WORKED_MEDIANS,
    RNG_ALGORITHM,
    VerifyConfig,
    verify_suite,
)

DEFAULT_SEED = 42


@dataclass(frozen=True)
class RunReport:
    command: str
    digest: str
    results: tuple
    violations: tuple
    seed: int
    exit_code: int


def _digest(source):
    return hashlib.sha256(source.encode()).hexdigest()[:12] if source else ""


def _read_vectors(path):
    vs = [parse_vector(ln) for ln in Path(path).read_text().splitlines() if ln.strip()]
    if not vs:
        raise EmptyInput(f"no vectors in {path}")
    return vs


def _vectors_text(vectors):
    return "".join(format_vector(v) + "\n" for v in vectors)


# --- lattice -----------------------------------------------------------

def cmd_lattice_medians(ns):
    vectors = _read_vectors(ns.vectors)
    medians = generalized_medians(vectors)
    if ns.j is not None:
        if not 1 <= ns.j <= len(medians):
            raise JOutOfRange(f"j={ns.j} outside 1..{len(medians)}")
        medians = [medians[ns.j - 1]]
    return _vectors_text(vectors), [format_vector(m) for m in medians], []


def cmd_lattice_check_regular(ns):
    vectors = _read_vectors(ns.vectors)
    report = check_regular(vectors)
    if report.regular:
        return _vectors_text(vectors), ["regular"], []
    x, y, op = report.counterexample
    line = f"violation: {format_vector(x)} {format_vector(y)} {op}"
    return _vectors_text(vectors), [], [line]


# --- smp ---------------------------------------------------------------

def _read_smp(path):
    return sm.parse_instance(Path(path).read_text())


def cmd_smp_solve(ns):
    inst = _read_smp(ns.file)
    g = sm.gale_shapley(inst, ns.side)
    return sm.serialize_instance(inst), [format_vector(g)], []


def cmd_smp_enumerate(ns):
    inst = _read_smp(ns.file)
    bound = ns.max_n if ns.max_n is not None else sm.ENUM_BOUND
    stable = sm.all_stable_matchings(inst, bound)
    return sm.serialize_instance(inst), [format_vector(g) for g in stable], []


def cmd_smp_median(ns):
    inst = _read_smp(ns.file)
    matchings = _read_vectors(ns.matchings)
    med = sm.median_stable(inst, matchings, ns.j)
    src = sm.serialize_instance(inst) + _vectors_text(matchings)
    return src, [format_vector(med)], []


def cmd_smp_verify(ns):
    inst = _read_smp(ns.file)
    g = parse_vector(ns.matching)
    report = sm.stability_report(inst, g)
    src = sm.serialize_instance(inst) + format_vector(g) + "\n"
    if report.stable:
        return src, ["stable"], []
    if not report.is_matching:
        return src, [], ["not-a-matching"]
    return src, [], [f"blocking: ({m},{w})" for m, w in report.blocking]


# --- market ------------------------------------------------------------

def _read_market(path):
    return mc.parse_market(Path(path).read_text())


def cmd_market_clear(ns):
    inst = _read_market(ns.file)
    prices = mc.min_clearing_prices(inst)
    assignment = mc.clearing_matching(inst, prices)
    lines = [
        f"prices: {format_vector(prices)}",
        "matching: " + " ".join(f"{i}-{j}" for i, j in enumerate(assignment)),
    ]
    return mc.serialize_market(inst), lines, []


def cmd_market_enumerate(ns):
    inst = _read_market(ns.file)
    bound = ns.max_n if ns.max_n is not None else mc.ENUM_N_BOUND
    clearing = mc.enumerate_clearing_vectors(inst, n_bound=bound)
    return mc.serialize_market(inst), [format_vector(p) for p in clearing], []


def cmd_market_median(ns):
    inst = _read_market(ns.file)
    prices = _read_vectors(ns.prices)
    med = mc.median_clearing(inst, prices, ns.j)
    src = mc.serialize_market(inst) + _vectors_text(prices)
    return src, [format_vector(med)], []


def cmd_market_verify(ns):
    inst = _read_market(ns.file)
    p = parse_vector(ns.prices)
    src = mc.serialize_market(inst) + format_vector(p) + "\n"
    if mc.is_market_clearing(inst, p):
        return src, ["clearing"], []
    return src, [], ["not-clearing"]


# --- repro -------------------------------------------------------------

def cmd_repro_paper_example(ns):
    direct = tuple(generalized_medians(WORKED_INPUTS))
    via_ops = tuple(medians_via_meet_join(WORKED_INPUTS))
    results = [
        "inputs: " + " ".join(format_vector(v) for v in WORKED_INPUTS),
        "medians: " + " ".join(format_vector(v) for v in direct),
    ]
    violations = []
    if direct != WORKED_MEDIANS:
        violations.append(f"expected medians {WORKED_MEDIANS}")
    if via_ops != direct:
        violations.append("meet/join route disagrees with order statistics")
    results.append("PASS" if not violations else "FAIL")
    return _vectors_text(WORKED_INPUTS), results, violations


def _verify_config(ns, seed):
    kwargs = {"seed": seed}
    if ns.trials is not None:
        kwargs["subsets_per_instance"] = ns.trials
    if ns.instances is not None:
        scale = ns.instances / 200
        kwargs["smp_instances"] = ns.instances
        kwargs["market_instances"] = max(1, round(100 * scale))
        kwargs["constrained_instances"] = max(1, round(50 * scale))
        kwargs["median_families"] = max(1, round(1000 * scale))
        kwargs["gate_trials"] = max(1, round(200 * scale))
    if ns.max_n is not None:
        kwargs["smp_n_max"] = max(3, min(ns.max_n, sm.ENUM_BOUND))
        kwargs["market_n_max"] = max(2, min(ns.max_n, mc.ENUM_N_BOUND))
    return VerifyConfig(**kwargs)


def cmd_repro_verify(ns):
    seed = ns.seed if ns.seed is not None else DEFAULT_SEED
    cfg = _verify_config(ns, seed)
    outcomes = verify_suite(cfg)
    if not outcomes:
        return repr(cfg), [], []
    results = [f"rng: {RNG_ALGORITHM}", f"seed: {seed}"]
    violations = []
    for r in outcomes:
        mark = "PASS" if r.passed else "FAIL"
        gated = f" gated={r.gated}" if r.gated else ""
        results.append(f"{r.name}: {mark} checked={r.checked}{gated}")
        violations.extend(f"{r.name}: {f}" for f in r.failures)
    results.append("PASS" if not violations else "FAIL")
    return repr(cfg), results, violations


# --- wiring ------------------------------------------------------------

def build_parser():
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--seed", type=int, default=None,
                        help=f"seed for randomized checks (default {DEFAULT_SEED})")
    shared.add_argument("--json", action="store_true", default=False,
                        help="emit the report as a JSON object")
    shared.add_argument("--max-n", type=int, default=None, dest="max_n",
                        help="override the instance-size bound for enumeration")
    shared.add_argument("--trials", type=int, default=None,
                        help="trial count for randomized checks")

    parser = argparse.ArgumentParser(
        prog="latmed",
        description="Medians on finite distributive lattices: "
                    "stable matchings and market clearing prices.",
    )
    groups = parser.add_subparsers(dest="group", required=True)

    lattice = groups.add_parser("lattice", help="raw count-vector families")
    lsub = lattice.add_subparsers(dest="cmd", required=True)
    p = lsub.add_parser("medians", parents=[shared],
                        help="coordinatewise order statistics of a vector file")
    p.add_argument("--vectors", required=True, help="file of count vectors, one per line")
    p.add_argument("--j", type=int, default=None, help="print only the j-th median")
    p.set_defaults(handler=cmd_lattice_medians, command="lattice medians")
    p = lsub.add_parser("check-regular", parents=[shared],
                        help="is the vector set closed under meet and join")
    p.add_argument("--vectors", required=True, help="file of count vectors, one per line")
    p.set_defaults(handler=cmd_lattice_check_regular, command="lattice check-regular")

    smp = groups.add_parser("smp", help="stable marriage instances")
    ssub = smp.add_subparsers(dest="cmd", required=True)
    p = ssub.add_parser("solve", parents=[shared], help="deferred acceptance")
    p.add_argument("file")
    p.add_argument("--side", choices=("men", "women"), default="men")
    p.set_defaults(handler=cmd_smp_solve, command="smp solve")
    p = ssub.add_parser("enumerate", parents=[shared], help="all stable matchings")
    p.add_argument("file")
    p.set_defaults(handler=cmd_smp_enumerate, command="smp enumerate")
    p = ssub.add_parser("median", parents=[shared],
                        help="j-th median of listed stable matchings")
    p.add_argument("file")
    p.add_argument("--matchings", required=True, help="file of rank vectors")
    p.add_argument("--j", type=int, required=True)
    p.set_defaults(handler=cmd_smp_median, command="smp median")
    p = ssub.add_parser("verify", parents=[shared], help="stability of one matching")
    p.add_argument("file")
    p.add_argument("--matching", required=True, help="rank vector, e.g. '(0,1,2)'")
    p.set_defaults(handler=cmd_smp_verify, command="smp verify")

    market = groups.add_parser("market", help="unit-demand markets")
    msub = market.add_subparsers(dest="cmd", required=True)
    p = msub.add_parser("clear", parents=[shared], help="minimum clearing prices")
    p.add_argument("file")
    p.set_defaults(handler=cmd_market_clear, command="market clear")
    p = msub.add_parser("enumerate", parents=[shared],
                        help="all clearing vectors in the price box")
    p.add_argument("file")
    p.set_defaults(handler=cmd_market_enumerate, command="market enumerate")
    p = msub.add_parser("median", parents=[shared],
                        help="j-th median of listed clearing vectors")
    p.add_argument("file")
    p.add_argument("--prices", required=True, help="file of price vectors")
    p.add_argument("--j", type=int, required=True)
    p.set_defaults(handler=cmd_market_median, command="market median")
    p = msub.add_parser("verify", parents=[shared], help="does a vector clear")
    p.add_argument("file")
    p.add_argument("--prices", required=True, help="price vector, e.g. '(1,0)'")
    p.set_defaults(handler=cmd_market_verify, command="market verify")

    repro = groups.add_parser("repro", help="reproducibility entry points")
    rsub = repro.add_subparsers(dest="cmd", required=True)
    p = rsub.add_parser("paper-example", parents=[shared],
                        help="the worked 2-coordinate median example")
    p.set_defaults(handler=cmd_repro_paper_example, command="repro paper-example")
    p = rsub.add_parser("verify", parents=[shared],
                        help="the full randomized verification battery")
    p.add_argument("--instances", type=int, default=None,
                   help="stable-matching instance count; other batteries scale")
    p.set_defaults(handler=cmd_repro_verify, command="repro verify")
    return parser


def dispatch(argv):
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else 2
        violations = () if code == 0 else ("usage error",)
        return RunReport(command=" ".join(argv), digest="", results=(),
                         violations=violations, seed=DEFAULT_SEED, exit_code=code)
    if not hasattr(ns, "instances"):
        ns.instances = None
    seed = ns.seed if ns.seed is not None else DEFAULT_SEED
    try:
        source, results, violations = ns.handler(ns)
    except LatmedError as e:
        source, results, violations = "", [], [f"{type(e).__name__}: {e}"]
    except OSError as e:
        source, results, violations = "", [], [f"FileError: {e}"]
    report = RunReport(
        command=ns.command,
        digest=_digest(source),
        results=tuple(results),
        violations=tuple(violations),
        seed=seed,
        exit_code=0 if not violations else 1,
    )
    if ns.json:
        print(json.dumps({
            "command": report.command,
            "digest": report.digest,
            "results": list(report.results),
            "violations": list(report.violations),
            "seed": report.seed,
        }))
    else:
        for line in report.results:
            print(line)
        for line in report.violations:
            print(line)
    return report


def main(argv=None):
    report = dispatch(sys.argv[1:] if argv is None else argv)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
