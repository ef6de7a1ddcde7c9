"""Command line interface.

Subcommands map onto the package's main entry points: simulate runs one
scenario, compare runs a matrix, resumption covers PSK resumption and
its cache cost, annoyance audits quantum exposure, recommend applies
the deployment rule, and registry export dumps the parameter tables.
Exit codes: 0 success, 1 internal refusals (such as empty reports),
2 configuration or parse errors, 3 when simulation aborts.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import annoyance as annoyance_mod
from . import engine, reports
from .channel import band_profile, situation_profile
from .engine import DEFAULT_SEED, MatrixRow, Scenario, compare_matrix, run_batch
from .errors import (
    AllRunsAborted,
    AuthAborted,
    EmptyResults,
    IncompatibleConfig,
    InvalidHybrid,
    NoMatchingKem,
    ParseError,
    PqeapError,
    UnknownAlgorithm,
)
from .handshake import ChainShape, EapMethod
from .recommend import classify_recommended
from .registry import DEFAULT_REGISTRY
from .scenariofile import defaults_reference, parse_scenario


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as handle:
        handle.write(text)


def _band(name: str):
    try:
        return band_profile(name.replace(" ", ""))
    except (KeyError, ValueError):
        raise ParseError(f"unknown band {name!r} (use 2.4GHz or 5GHz)") from None


def _situation(name: str):
    try:
        return situation_profile(name.replace("_", "-").lower())
    except (KeyError, ValueError):
        raise ParseError(
            f"unknown situation {name!r} (use excellent, good or very-weak)") from None


def _method(name: str) -> EapMethod:
    try:
        return EapMethod(name.replace("_", "-").lower())
    except ValueError:
        raise ParseError(f"unknown method {name!r} (use eap-tls or eap-ttls)") from None


def _apply_overrides(scenarios, args) -> list[Scenario]:
    out = []
    for scenario in scenarios:
        if args.seed is not None:
            scenario = replace(scenario, seed=args.seed)
        if args.reps is not None:
            scenario = replace(scenario, repetitions=args.reps)
        out.append(scenario)
    return out


def _scenarios_from_file(args) -> tuple[list[Scenario], object, int]:
    parsed = parse_scenario(args.file)
    seed = args.seed if args.seed is not None else parsed.seed
    return _apply_overrides(parsed.scenarios, args), parsed.registry, seed


def _cmd_simulate(args) -> int:
    if args.file and args.signature:
        raise ParseError("give a scenario file or --signature, not both")
    if args.file:
        scenarios, registry, seed = _scenarios_from_file(args)
        if not 0 <= args.index < len(scenarios):
            raise ParseError(
                f"--index {args.index} out of range, file defines {len(scenarios)} scenarios")
        scenario = scenarios[args.index]
    elif args.signature:
        registry = DEFAULT_REGISTRY
        scenario = Scenario(
            signature=args.signature,
            kem=args.kem,
            method=_method(args.method),
            band=_band(args.band),
            situation=_situation(args.situation),
            shape=ChainShape(chain_length=args.chain_length),
            fragment_size=args.fragment_size,
            resumption=args.resumption,
            repetitions=args.reps if args.reps is not None else 100,
            seed=args.seed if args.seed is not None else DEFAULT_SEED)
        seed = scenario.seed
    else:
        raise ParseError("simulate needs a scenario file or --signature")

    stats = run_batch(scenario, registry)
    row = MatrixRow(scenario, stats)
    if args.format == "table":
        _write(reports.render_single_report(row, stats, seed), args.out)
    else:
        _write(reports.render_matrix([row], args.format, seed), args.out)
    return 0


def _cmd_compare(args) -> int:
    if args.file:
        scenarios, registry, seed = _scenarios_from_file(args)
    else:
        registry = DEFAULT_REGISTRY
        seed = args.seed if args.seed is not None else DEFAULT_SEED
        scenarios = engine.standard_matrix(
            registry,
            repetitions=args.reps if args.reps is not None else 100,
            seed=seed)
    rows = compare_matrix(scenarios, registry)
    _write(reports.render_matrix(rows, args.format, seed), args.out)
    return 3 if all(row.error for row in rows) else 0


def _cmd_resumption(args) -> int:
    if args.storage:
        _write(reports.render_storage_table(DEFAULT_REGISTRY, args.format), args.out)
        return 0
    if args.file:
        scenarios, registry, seed = _scenarios_from_file(args)
        scenarios = [replace(s, resumption=True) for s in scenarios]
    else:
        registry = DEFAULT_REGISTRY
        seed = args.seed if args.seed is not None else DEFAULT_SEED
        scenarios = [
            Scenario(signature=sig.name, resumption=True, seed=seed,
                     repetitions=args.reps if args.reps is not None else 100)
            for sig in registry.signature_table
        ]
    rows = compare_matrix(scenarios, registry)
    _write(reports.render_matrix(rows, args.format, seed), args.out)
    return 3 if all(row.error for row in rows) else 0


def _cmd_annoyance(args) -> int:
    audit = annoyance_mod.evaluate_deployment(
        args.client_sig, args.server_sig, args.kem, DEFAULT_REGISTRY)
    text = audit.to_json() if args.format == "json" else audit.to_table()
    _write(text, args.out)
    return 0


def _cmd_recommend(args) -> int:
    shape = ChainShape(chain_length=args.chain_length)
    names = [args.signature] if args.signature else [
        s.name for s in DEFAULT_REGISTRY.signature_table]
    verdicts = [
        classify_recommended(name, method=_method(args.method), shape=shape,
                             fragment_size=args.fragment_size,
                             registry=DEFAULT_REGISTRY)
        for name in names
    ]
    _write(reports.render_recommendations(verdicts, args.format), args.out)
    return 0


def _cmd_registry_export(args) -> int:
    if args.kind == "signatures":
        _write(DEFAULT_REGISTRY.signature_table_csv(), args.out)
    else:
        _write(DEFAULT_REGISTRY.kem_table_csv(), args.out)
    return 0


def _cmd_defaults(args) -> int:
    _write(defaults_reference(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pqeap",
        description="Post-quantum WPA-Enterprise authentication simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("csv", "json", "table"), default_format="csv"):
        p.add_argument("--format", choices=formats, default=default_format)
        p.add_argument("--out", metavar="PATH", default=None,
                       help="write the report to PATH instead of stdout")
        p.add_argument("--seed", type=int, default=None,
                       help=f"override the RNG seed (default {DEFAULT_SEED})")
        p.add_argument("--reps", type=int, default=None,
                       help="override repetitions per scenario")

    p = sub.add_parser("simulate", help="run one scenario")
    p.add_argument("file", nargs="?", default=None, help="scenario file (TOML)")
    p.add_argument("--index", type=int, default=0,
                   help="which scenario of the file to run")
    p.add_argument("--signature", default=None, help="signature scheme name")
    p.add_argument("--kem", default="auto")
    p.add_argument("--method", default="eap-tls")
    p.add_argument("--band", default="2.4GHz")
    p.add_argument("--situation", default="excellent")
    p.add_argument("--chain-length", type=int, default=1)
    p.add_argument("--fragment-size", type=int, default=1398)
    p.add_argument("--resumption", action="store_true")
    common(p, default_format="table")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("compare", help="run a comparison matrix")
    p.add_argument("file", nargs="?", default=None,
                   help="scenario file; without it, the built-in full matrix runs")
    common(p)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("resumption",
                       help="session resumption timings and cache storage")
    p.add_argument("file", nargs="?", default=None,
                   help="scenario file; every scenario is run as a resumption")
    p.add_argument("--storage", action="store_true",
                   help="print the per-scheme session cache table instead")
    common(p)
    p.set_defaults(func=_cmd_resumption)

    p = sub.add_parser("annoyance", help="quantum exposure audit")
    p.add_argument("--client-sig", required=True, metavar="SCHEME")
    p.add_argument("--server-sig", required=True, metavar="SCHEME")
    p.add_argument("--kem", required=True, metavar="SCHEME")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out", metavar="PATH", default=None)
    p.set_defaults(func=_cmd_annoyance)

    p = sub.add_parser("recommend", help="apply the deployment recommendation rule")
    p.add_argument("--signature", default=None,
                   help="single scheme; default is the whole core table")
    p.add_argument("--method", default="eap-tls")
    p.add_argument("--chain-length", type=int, default=1)
    p.add_argument("--fragment-size", type=int, default=1398)
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--out", metavar="PATH", default=None)
    p.set_defaults(func=_cmd_recommend)

    p = sub.add_parser("registry", help="registry inspection")
    reg_sub = p.add_subparsers(dest="registry_command", required=True)
    p = reg_sub.add_parser("export", help="dump a parameter table as CSV")
    p.add_argument("--kind", choices=("signatures", "kems"), required=True)
    p.add_argument("--out", metavar="PATH", default=None)
    p.set_defaults(func=_cmd_registry_export)

    p = sub.add_parser("defaults", help="print the scenario file reference")
    p.add_argument("--out", metavar="PATH", default=None)
    p.set_defaults(func=_cmd_defaults)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnknownAlgorithm, NoMatchingKem, InvalidHybrid,
            IncompatibleConfig) as exc:
        print(f"pqeap: {exc}", file=sys.stderr)
        return 2
    except (AuthAborted, AllRunsAborted) as exc:
        print(f"pqeap: simulation aborted: {exc}", file=sys.stderr)
        return 3
    except EmptyResults as exc:
        print(f"pqeap: {exc}", file=sys.stderr)
        return 1
    except PqeapError as exc:
        print(f"pqeap: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
