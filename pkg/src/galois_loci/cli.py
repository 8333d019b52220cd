"""Command-line surface.

Subcommands:
  families  — enumerate the family records for a degree (or a system file)
  verify    — run the independent Galois oracle on a center JSON file
  center    — build a center (and its Plucker point) from a group and section
  selftest  — run the full acceptance suite

Exit codes: 0 success, 2 malformed input, 3 computational failure.  All
randomness flows through one seed, settable by --seed and overridden by the
GALOIS_LOCI_SEED environment variable, so fixed inputs give byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .acceptance import run_all
from .config import RunConfig, seed_from_env
from .families import enumerate_families
from .groups import GroupError, conjugated_pair
from .jsonio import (FormatError, center_from_obj, center_to_obj, form_from_obj,
                     group_spec_from_obj, plucker_to_obj, system_from_obj)
from .oracle import OracleError, is_galois
from .spaces import (LinearSystem, SectionError, SpaceError, center_from_section,
                     plucker)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_COMPUTE = 3


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="random seed (env GALOIS_LOCI_SEED overrides)")
    parser.add_argument("--tol-accept", type=float, default=1e-8, dest="tol_accept")
    parser.add_argument("--tol-dedupe", type=float, default=1e-6, dest="tol_dedupe")
    parser.add_argument("--samples", type=int, default=50)
    parser.add_argument("--format", choices=("json", "table"), default="json")
    parser.add_argument("--output", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="galois-loci")
    sub = parser.add_subparsers(dest="command", required=True)

    p_fam = sub.add_parser("families", help="enumerate Galois families for a degree")
    p_fam.add_argument("--degree", type=int, required=True)
    p_fam.add_argument("--system", default=None, help="JSON file with a sub-linear system")
    _add_common(p_fam)

    p_ver = sub.add_parser("verify", help="oracle-verify a center JSON file")
    p_ver.add_argument("center_file")
    p_ver.add_argument("--system", default=None)
    _add_common(p_ver)

    p_ctr = sub.add_parser("center", help="build a center from a group spec and a section")
    p_ctr.add_argument("--group", required=True, help="group spec JSON (inline or @file)")
    p_ctr.add_argument("--section", required=True, help="section JSON (inline or @file)")
    p_ctr.add_argument("--degree", type=int, default=None,
                       help="system degree (default: |G| + deg s)")
    p_ctr.add_argument("--system", default=None)
    _add_common(p_ctr)

    p_self = sub.add_parser("selftest", help="run the acceptance suite")
    _add_common(p_self)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(seed=seed_from_env(args.seed), tol_accept=args.tol_accept,
                           tol_dedupe=args.tol_dedupe, sample_count=args.samples,
                           output=args.output)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    handler = {
        "families": _cmd_families,
        "verify": _cmd_verify,
        "center": _cmd_center,
        "selftest": _cmd_selftest,
    }[args.command]
    try:
        return handler(args, config)
    except (FormatError, SectionError, SpaceError, GroupError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OracleError, ArithmeticError) as exc:
        print(f"computational failure: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def _load_json_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_inline_or_file(raw: str):
    if raw.startswith("@"):
        return _load_json_file(raw[1:])
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {raw!r}") from exc


def _emit(text: str, config: RunConfig) -> None:
    if config.output:
        with open(config.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _load_system(args, degree: int | None) -> LinearSystem:
    if args.system is not None:
        system = system_from_obj(_load_json_file(args.system))
        if degree is not None and system.degree != degree:
            raise FormatError(f"system degree {system.degree} != requested degree {degree}")
        return system
    if degree is None:
        raise FormatError("a degree or a system file is required")
    return LinearSystem.complete(degree)


def _cmd_families(args, config: RunConfig) -> int:
    if args.degree < 1:
        raise FormatError("degree must be positive")
    system = _load_system(args, args.degree)
    records = enumerate_families(args.degree, system, samples=min(config.sample_count, 8),
                                 seed=config.seed)
    if args.format == "table":
        lines = [f"{'kind':<16}{'m':>4}{'fiber':>7}{'base':>6}{'total':>7}  flags"]
        for r in records:
            flags = []
            if r.disjoint_from_curve:
                flags.append("disjoint")
            if r.fiber_dim_may_vary:
                flags.append("may-vary")
            lines.append(f"{r.kind.label():<16}{r.m:>4}{r.fiber_dim:>7}{r.base_dim:>6}"
                         f"{r.total_dim:>7}  {','.join(flags)}")
        _emit("\n".join(lines), config)
    else:
        _emit(_dump([r.to_json() for r in records]), config)
    return EXIT_OK


def _cmd_verify(args, config: RunConfig) -> int:
    center = center_from_obj(_load_json_file(args.center_file))
    system = _load_system(args, center.degree)
    report = is_galois(center, system, seed=config.seed,
                       tol_accept=config.tol_accept, tol_dedupe=config.tol_dedupe)
    _emit(_dump(report.to_json()), config)
    return EXIT_OK


def _cmd_center(args, config: RunConfig) -> int:
    spec = group_spec_from_obj(_load_inline_or_file(args.group))
    section = form_from_obj(_load_inline_or_file(args.section))
    degree = args.degree if args.degree is not None else spec.order + section.degree
    system = _load_system(args, degree)
    pair = conjugated_pair(spec)
    center = center_from_section(pair, section, system)
    payload = {
        "center": center_to_obj(center),
        "plucker": plucker_to_obj(plucker(center)),
    }
    _emit(_dump(payload), config)
    return EXIT_OK


def _cmd_selftest(args, config: RunConfig) -> int:
    results = run_all(config)
    # human-readable progress (with timings) on stderr; the machine report on
    # stdout carries no timings, so fixed seeds give byte-identical output
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.passed for r in results)
    payload = {
        "passed": ok,
        "seed": config.seed,
        "criteria": [{"index": r.index, "name": r.name, "passed": r.passed,
                      "detail": r.detail} for r in results],
    }
    _emit(_dump(payload), config)
    summary = "PASS" if ok else "FAIL"
    print(f"selftest: {summary} ({sum(r.passed for r in results)}/{len(results)} criteria)",
          file=sys.stderr)
    return EXIT_OK if ok else 1


if __name__ == "__main__":
    sys.exit(main())
