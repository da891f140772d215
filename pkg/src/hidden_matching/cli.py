"""Command-line front end.

Every command emits one machine-readable report (JSON by default, CSV with
--format csv). JSON output is canonical (sorted keys, compact separators), so
a fixed --seed reproduces byte-identical files; --metadata adds the only
non-reproducible block (timestamp, platform). Exit codes: 0 success, 2 usage
or validation error, 3 enumeration/evaluation cap exceeded.
"""
from __future__ import annotations

import argparse
import csv
import datetime
import io
import json
import os
import platform
import sys

import numpy as np

from . import __version__
from .classical import (DeterministicStrategyPair, MajorityBlockProtocol,
                        RandomOutputStrategy, TableCommProtocol,
                        constant_message_protocol,
                        cross_block_event_probability,
                        hyperplane_rounding_strategy, nonlocal_from_comm,
                        pair_parity_protocol, random_comm_protocol,
                        rounding_identity_check, rounding_identity_pairs)
from .errors import CapExceededError
from .evaluation import exact_win_probability, mc_win_probability
from .fourier import fourier_report
from .games import GameInstance, GameVariant, win_predicate
from .matchings import ENUMERATION_CAP, FamilyKind, MatchingFamily
from .optimize import brute_force_classical_value, local_search_classical_value
from .quantum import QuantumStrategy
from .ratio import ratio_report
from .serialize import canonical_json_bytes, instance_from_json, to_jsonable

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3


def _parse_seed(value: str) -> int:
    """Fixed default keeps runs reproducible; 'random' opts into entropy."""
    if value == "random":
        return int(np.random.SeedSequence().entropy % (1 << 63))
    return int(value)


def _resolve_instance(args) -> GameInstance:
    if getattr(args, "instance", None):
        with open(args.instance) as fh:
            return instance_from_json(json.load(fh))
    family = None
    if getattr(args, "family", None):
        family = MatchingFamily(args.n, FamilyKind(args.family))
    return GameInstance(args.n, GameVariant(args.variant), family=family)


def _build_strategy(spec: str, instance: GameInstance, seed: int):
    n, variant = instance.n, instance.variant

    def need(expected: GameVariant, what: str):
        if variant is not expected:
            raise ValueError(f"strategy {what!r} plays the {expected.value} game, "
                             f"not {variant.value}")

    if spec == "quantum":
        return QuantumStrategy(variant)
    if spec == "random":
        if variant is GameVariant.HM_COMM:
            return constant_message_protocol(n)
        return RandomOutputStrategy(n, variant)
    if spec == "groth":
        need(GameVariant.HM_NONLOCAL, spec)
        return hyperplane_rounding_strategy(n)
    if spec.startswith("majority:c="):
        need(GameVariant.HM_COMM, spec)
        return MajorityBlockProtocol(n, int(spec.split("=", 1)[1]))
    if spec.startswith("simulated:c="):
        need(GameVariant.HM_NONLOCAL, spec)
        return nonlocal_from_comm(MajorityBlockProtocol(n, int(spec.split("=", 1)[1])))
    if spec.startswith("pair:"):
        need(GameVariant.HM_COMM, spec)
        i, j = (int(t) for t in spec.split(":", 1)[1].split(","))
        return pair_parity_protocol(n, i, j)
    if spec.startswith("table:"):
        need(GameVariant.HM_NONLOCAL, spec)
        with open(spec.split(":", 1)[1]) as fh:
            return DeterministicStrategyPair.from_json(json.load(fh))
    raise ValueError(f"unknown strategy {spec!r}")


def _build_protocol(spec: str, n: int, seed: int, family: MatchingFamily | None):
    if spec.startswith("majority:c="):
        return MajorityBlockProtocol(n, int(spec.split("=", 1)[1]))
    if spec.startswith("pair:"):
        i, j = (int(t) for t in spec.split(":", 1)[1].split(","))
        return pair_parity_protocol(n, i, j)
    if spec == "constant":
        return constant_message_protocol(n)
    if spec.startswith("random:c="):
        rng = np.random.default_rng(seed)
        return random_comm_protocol(n, int(spec.split("=", 1)[1]), rng, family=family)
    if spec.startswith("file:"):
        with open(spec.split(":", 1)[1]) as fh:
            return TableCommProtocol.from_json(json.load(fh))
    raise ValueError(f"unknown protocol {spec!r}")


# ---------------------------------------------------------------------------
# command handlers: return (config, report, csv_rows)

def _cmd_matchings(args):
    family = MatchingFamily(args.n, FamilyKind(args.family))
    config = {"n": args.n, "family": args.family, "list": bool(args.list),
              "matching_cap": args.matching_cap}
    report = {"n": args.n, "family": args.family}
    if args.family == "full" and not args.list:
        report["count"] = family.size()
        rows = [["n", "family", "count"], [args.n, args.family, report["count"]]]
        return config, report, rows
    members = family.enumerate(cap=args.matching_cap)
    report["count"] = len(members)
    rows = [["index", "edges"]]
    if args.list:
        report["matchings"] = [m.to_json() for m in members]
        for t, m in enumerate(members):
            rows.append([t, "|".join(f"{i}-{j}" for i, j in m.edges)])
    else:
        rows = [["n", "family", "count"], [args.n, args.family, report["count"]]]
    return config, report, rows


def _cmd_simulate(args):
    instance = _resolve_instance(args)
    seed = _parse_seed(args.seed)
    strategy = _build_strategy(args.strategy, instance, seed)
    rng = np.random.default_rng(seed)
    rounds = []
    wins = 0
    for t in range(args.rounds):
        x, m = instance.sample_input(rng)
        out = strategy.play(x, m, rng)
        win = win_predicate(instance, x, m, out)
        wins += win
        rounds.append({"x": x, "matching": m.to_json(),
                       "outcome": to_jsonable(out), "win": bool(win)})
    config = {"n": instance.n, "variant": instance.variant.value,
              "family": instance.family.kind.value, "strategy": args.strategy,
              "rounds": args.rounds, "seed": seed}
    report = {"rounds": rounds, "wins": wins, "total": args.rounds,
              "win_fraction": wins / args.rounds}
    rows = [["round", "x", "matching", "outcome", "win"]]
    for t, r in enumerate(rounds):
        rows.append([t, r["x"], json.dumps(r["matching"]),
                     json.dumps(r["outcome"], sort_keys=True), int(r["win"])])
    return config, report, rows


def _evaluation_rows(report) -> list[list]:
    doc = to_jsonable(report)
    cols = ["n", "variant", "family", "strategy", "mode", "winning_probability",
            "advantage", "conditioning", "samples", "effective_samples", "seed",
            "stderr", "ci_level", "ci_low", "ci_high", "batched"]
    return [cols, [doc.get(k) for k in cols]]


def _cmd_evaluate(args):
    instance = _resolve_instance(args)
    seed = _parse_seed(args.seed)
    strategy = _build_strategy(args.strategy, instance, seed)
    condition = None
    if args.condition:
        proto = strategy if isinstance(strategy, MajorityBlockProtocol) else \
            getattr(strategy, "protocol", None)
        if not isinstance(proto, MajorityBlockProtocol):
            raise ValueError("--condition applies to majority-based strategies")
        if args.condition == "cross-block-edge" and args.mode == "mc":
            condition = "cross-block-edge"  # vectorized: batch reports the flag
        elif args.condition == "cross-block-edge":
            condition = lambda x, m: proto.has_cross_block_edge(m)
        else:
            condition = lambda x, m: not proto.has_cross_block_edge(m)
    if args.mode == "exact":
        report = exact_win_probability(
            instance, strategy, condition=condition,
            condition_name=args.condition,
            enumeration_cap=args.matching_cap, max_terms=args.max_terms)
    else:
        report = mc_win_probability(instance, strategy, args.samples, seed,
                                    condition=condition, threads=args.threads)
    config = {"n": instance.n, "variant": instance.variant.value,
              "family": instance.family.kind.value, "strategy": args.strategy,
              "mode": args.mode, "samples": args.samples if args.mode == "mc" else None,
              "seed": seed, "condition": args.condition,
              "threads": args.threads if args.mode == "mc" else None}
    return config, report, _evaluation_rows(report)


def _cmd_bruteforce(args):
    instance = GameInstance(args.n, GameVariant.HM_NONLOCAL)
    result = brute_force_classical_value(instance, enumeration_cap=args.matching_cap)
    config = {"n": args.n, "matching_cap": args.matching_cap}
    doc = to_jsonable(result)
    rows = [["n", "mode", "value", "advantage", "bob_tables", "optimal_bob_tables"],
            [args.n, result.mode, doc["value"],
             to_jsonable(2 * result.value - 1),
             result.stats["bob_tables"], result.stats["optimal_bob_tables"]]]
    return config, result, rows


def _cmd_localsearch(args):
    instance = GameInstance(args.n, GameVariant.HM_NONLOCAL)
    seed = _parse_seed(args.seed)
    result = local_search_classical_value(instance, restarts=args.restarts,
                                          seed=seed,
                                          enumeration_cap=args.matching_cap)
    config = {"n": args.n, "restarts": args.restarts, "seed": seed,
              "matching_cap": args.matching_cap}
    doc = to_jsonable(result)
    rows = [["n", "mode", "value", "advantage", "restarts", "seed"],
            [args.n, result.mode, doc["value"], to_jsonable(2 * result.value - 1),
             result.stats["restarts"], seed]]
    return config, result, rows


def _cmd_fourier(args):
    seed = _parse_seed(args.seed)
    family = MatchingFamily(args.n, FamilyKind(args.family)) if args.family else None
    protocol = _build_protocol(args.protocol, args.n, seed, family)
    report = fourier_report(args.n, protocol, family=family,
                            enumeration_cap=args.matching_cap,
                            mode=args.mode, samples=args.samples, seed=seed)
    config = {"n": args.n, "protocol": args.protocol,
              "family": report.family.value, "mode": args.mode,
              "samples": args.samples if args.mode == "mc" else None, "seed": seed}
    doc = to_jsonable(report)
    cols = ["message", "weight", "win_excess", "bias_sq_sum", "q_max", "q_sum",
            "q_sq_sum", "q_abs_bias", "kkl_ratio", "q_max_stderr"]
    rows = [["n", "c", "family", "mode"] + cols +
            ["overall_win_probability", "entropy_bits", "max_kkl_ratio"]]
    for rec in doc["records"]:
        rows.append([doc["n"], doc["c"], doc["family"], doc["mode"]] +
                    [rec[k] for k in cols] +
                    [doc["win_probability"], doc["entropy_bits"], doc["max_kkl_ratio"]])
    return config, report, rows


def _cmd_ratio(args):
    seed = _parse_seed(args.seed)
    report = ratio_report(args.n, seed=seed, restarts=args.restarts,
                          samples=args.samples, threads=args.threads,
                          enumeration_cap=args.matching_cap)
    config = {"n": args.n, "seed": seed, "restarts": args.restarts,
              "samples": args.samples, "threads": args.threads}
    doc = to_jsonable(report)
    rows = [["n", "quantum_value", "quantum_verification", "classical_mode",
             "classical_value", "classical_advantage", "ratio_kind", "ratio_value"],
            [args.n, doc["quantum"]["winning_probability"],
             doc["quantum"]["verification"], doc["classical"]["mode"],
             doc["classical"]["winning_probability"], doc["classical"]["advantage"],
             doc["ratio"]["kind"], doc["ratio"]["value"]]]
    return config, report, rows


def _cmd_rounding_check(args):
    seed = _parse_seed(args.seed)
    checks = rounding_identity_check(rounding_identity_pairs(args.n),
                                     samples=args.samples, seed=seed)
    config = {"n": args.n, "samples": args.samples, "seed": seed}
    report = {"pairs": checks,
              "max_abs_z": max(abs(c["z"]) for c in checks)}
    rows = [["pair", "inner_product", "expected", "estimate", "stderr", "z", "samples"]]
    for t, c in enumerate(checks):
        rows.append([t, c["inner_product"], c["expected"], c["estimate"],
                     c["stderr"], c["z"], c["samples"]])
    return config, report, rows


def _cmd_event(args):
    seed = _parse_seed(args.seed)
    report = cross_block_event_probability(args.n, args.c, samples=args.samples,
                                           seed=seed,
                                           enumeration_cap=args.matching_cap)
    config = {"n": args.n, "c": args.c, "samples": args.samples, "seed": seed}
    cols = ["n", "c", "mode", "probability", "estimate", "stderr", "samples", "seed"]
    doc = to_jsonable(report)
    rows = [cols, [doc.get(k) for k in cols]]
    return config, report, rows


_HANDLERS = {
    "matchings": _cmd_matchings,
    "simulate": _cmd_simulate,
    "evaluate": _cmd_evaluate,
    "bruteforce": _cmd_bruteforce,
    "localsearch": _cmd_localsearch,
    "fourier": _cmd_fourier,
    "ratio": _cmd_ratio,
    "rounding-check": _cmd_rounding_check,
    "event": _cmd_event,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hm-games",
        description="Hidden Matching games: enumeration, simulation, "
                    "evaluation, optimization, and Fourier diagnostics.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seeded=True):
        p.add_argument("--out", help="output path (default: stdout); relative "
                                     "paths resolve under $HM_GAMES_OUTDIR if set")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--metadata", action="store_true",
                       help="include a timestamp/platform block (not reproducible)")
        p.add_argument("--matching-cap", type=int, default=ENUMERATION_CAP)
        if seeded:
            p.add_argument("--seed", default="0",
                           help="integer seed, or 'random' for entropy")

    p = sub.add_parser("matchings", help="enumerate or count a matching family")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=("full", "bijective-xor"), default="full")
    p.add_argument("--count", action="store_true",
                   help="report the count only (the default)")
    p.add_argument("--list", action="store_true", help="include the matchings")
    common(p, seeded=False)

    p = sub.add_parser("simulate", help="sample rounds of a named strategy")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--variant", choices=[v.value for v in GameVariant], default="hmnl")
    p.add_argument("--family", choices=("full", "bijective-xor"))
    p.add_argument("--instance", help="JSON game-instance file (overrides --n etc.)")
    p.add_argument("--strategy", required=True)
    p.add_argument("--rounds", type=int, default=20)
    common(p)

    p = sub.add_parser("evaluate", help="exact or Monte Carlo winning probability")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--variant", choices=[v.value for v in GameVariant], default="hmnl")
    p.add_argument("--family", choices=("full", "bijective-xor"))
    p.add_argument("--instance")
    p.add_argument("--strategy", required=True)
    p.add_argument("--mode", choices=("exact", "mc"), default="exact")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--condition",
                   choices=("cross-block-edge", "not-cross-block-edge"))
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--max-terms", type=int, default=2_000_000)
    common(p)

    p = sub.add_parser("bruteforce", help="exact classical value (small n)")
    p.add_argument("--n", type=int, default=4)
    common(p, seeded=False)

    p = sub.add_parser("localsearch", help="best-response ascent lower bound")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--restarts", type=int, default=20)
    common(p)

    p = sub.add_parser("fourier", help="message-class diagnostics of a protocol")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--protocol", required=True,
                   help="majority:c=K | pair:I,J | constant | random:c=K | file:PATH")
    p.add_argument("--family", choices=("full", "bijective-xor"))
    p.add_argument("--mode", choices=("exact", "mc"), default="exact")
    p.add_argument("--samples", type=int, default=100_000)
    common(p)

    p = sub.add_parser("ratio", help="quantum/classical advantage ratio report")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--samples", type=int, default=200_000)
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common(p)

    p = sub.add_parser("rounding-check", help="arcsin rounding-identity check")
    p.add_argument("--n", type=int, default=16)
    p.add_argument("--samples", type=int, default=1_000_000)
    common(p)

    p = sub.add_parser("event", help="cross-block-edge event probability")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--samples", type=int, default=1_000_000)
    common(p)

    return parser


def _render_csv(rows: list[list]) -> bytes:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return buf.getvalue().encode("utf-8")


def _write_output(args, payload: bytes) -> None:
    out = getattr(args, "out", None)
    if out:
        outdir = os.environ.get("HM_GAMES_OUTDIR")
        if outdir and not os.path.isabs(out):
            out = os.path.join(outdir, out)
        with open(out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config, report, rows = _HANDLERS[args.command](args)
    except CapExceededError as exc:
        print(f"hm-games {args.command}: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"hm-games {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.format == "csv":
        payload = _render_csv(rows)
    else:
        doc = {"command": args.command, "config": config,
               "report": to_jsonable(report)}
        if args.metadata:
            doc["metadata"] = {
                "timestamp": datetime.datetime.now(datetime.timezone.utc)
                .isoformat(timespec="seconds"),
                "platform": platform.platform(),
                "version": __version__,
            }
        payload = canonical_json_bytes(doc)
    _write_output(args, payload)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
