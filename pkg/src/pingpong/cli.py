"""Command-line surface: demo, report, simulate, sweep, verify.

Exit codes are a stable contract: 0 success, 2 I/O or usage trouble,
3 validation failure, 1 internal error or failed numeric check.  All
output is deterministic given flags and seeds.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import attack as attack_mod
from . import checks as checks_mod
from . import files as files_mod
from . import metrics
from . import protocol as protocol_mod
from . import search as search_mod

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE_IO = 2
EXIT_VALIDATION = 3


def _fmt(value: float) -> str:
    return f"{value:.12f}"


def _render_report(report: metrics.InfoReport) -> list[str]:
    lines = [
        f"d = {_fmt(report.d)}",
        f"I0t = {_fmt(report.i0t)}",
        f"I0a = {_fmt(report.i0a)}",
        f"I0c = {_fmt(report.i0c)} (computed)",
        "",
        f"Holevo(travel) = {_fmt(report.holevo_t)}",
        f"Holevo(composite) = {_fmt(report.holevo_c)}",
    ]
    deviation = report.claim_deviation
    if deviation is not None:
        lines += [
            "",
            "claimed vs computed I0c:",
            f"  claimed I0c  = {_fmt(deviation.claimed)}",
            f"  computed I0c = {_fmt(deviation.computed)}",
            f"  delta        = {_fmt(deviation.delta)}",
        ]
        if abs(deviation.delta) > 1e-9:
            lines.append(
                f"  DEVIATION: computed I0c differs from the claimed value by {_fmt(deviation.delta)}"
            )
        else:
            lines.append("  MATCH: computed I0c reproduces the claimed value")
    return lines


def _report_json(report: metrics.InfoReport) -> str:
    deviation = report.claim_deviation
    payload = {
        "d": report.d,
        "i0t": report.i0t,
        "i0a": report.i0a,
        "i0c": report.i0c,
        "holevo_t": report.holevo_t,
        "holevo_c": report.holevo_c,
        "claim_deviation": None
        if deviation is None
        else {
            "claimed": deviation.claimed,
            "computed": deviation.computed,
            "delta": deviation.delta,
        },
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def cmd_demo(args: argparse.Namespace) -> int:
    spec = attack_mod.builtin_attack("counterexample")
    config = protocol_mod.make_config("simplified")
    report = metrics.information_report(spec, config)
    print("counterexample attack audit")
    print("mode simplified, Bob sends |0>, encoding {I, Z} with equal priors")
    print()
    print("\n".join(_render_report(report)))
    solid = abs(report.d - 0.5) <= 1e-9 and abs(report.i0t - 1.0) <= 1e-9
    return EXIT_OK if solid else EXIT_INTERNAL


def _load_validated_attack(path: str) -> attack_mod.AttackSpec | int:
    try:
        spec = files_mod.load_attack(path)
    except OSError as exc:
        print(f"cannot read attack file: {exc}", file=sys.stderr)
        return EXIT_USAGE_IO
    except files_mod.AttackFileError as exc:
        print(f"invalid attack file: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    violations = attack_mod.validate_attack(spec)
    if violations:
        for violation in violations:
            print(f"invalid attack: {violation}", file=sys.stderr)
        return EXIT_VALIDATION
    return spec


def cmd_report(args: argparse.Namespace) -> int:
    spec = _load_validated_attack(args.attack_file)
    if isinstance(spec, int):
        return spec
    config = protocol_mod.make_config(args.mode, encoding=args.encoding)
    report = metrics.information_report(spec, config)
    if args.json:
        print(_report_json(report))
    else:
        print(f"attack report ({args.mode} mode, encoding {args.encoding})")
        print()
        print("\n".join(_render_report(report)))
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    spec = _load_validated_attack(args.attack_file)
    if isinstance(spec, int):
        return spec
    # All simulated rounds are control rounds so --rounds sets the
    # binomial sample size for the empirical-vs-analytic comparison.
    config = protocol_mod.make_config(
        args.mode, encoding=args.encoding, control_probability=1.0
    )
    analytic = attack_mod.detection_probability(spec, config)
    stats = protocol_mod.monte_carlo(config, spec, rounds=args.rounds, seed=args.seed)
    n = stats.counts["control_rounds"]
    sigma = math.sqrt(analytic * (1.0 - analytic) / n)
    if sigma == 0.0:
        z = 0.0 if stats.empirical_d == analytic else math.inf
    else:
        z = (stats.empirical_d - analytic) / sigma
    print(f"analytic d = {_fmt(analytic)}")
    print(f"empirical d = {_fmt(stats.empirical_d)}")
    print(f"control rounds = {n}")
    print(f"z-score = {z:.6f}")
    return EXIT_OK if abs(z) <= 4.0 else EXIT_INTERNAL


def _render_summary(summary: search_mod.SweepSummary, objectives: tuple[str, ...]) -> list[str]:
    lines = [f"sweep summary: {summary.note}"]
    flagged = 0
    for row in summary.rows:
        parts = [
            f"{name}={row.best[name]:.6f}" for name in objectives if name in row.best
        ]
        notes = []
        if row.i0c_exceeds_i0t:
            notes.append(
                f"i0c exceeds i0t by {row.best['i0c'] - row.best['i0t']:.6f}"
            )
        if row.i0a_exceeds_i0t:
            notes.append(
                f"i0a exceeds i0t by {row.best['i0a'] - row.best['i0t']:.6f}"
            )
        if row.infeasible_objectives:
            notes.append("infeasible: " + ",".join(row.infeasible_objectives))
        if row.i0c_exceeds_i0t or row.i0a_exceeds_i0t:
            flagged += 1
        suffix = "; ".join(notes) if notes else "no exceedance"
        lines.append(f"  d_target {row.d_target:.4f}: " + " ".join(parts) + f" | {suffix}")
    lines.append(f"flagged grid points: {flagged} of {len(summary.rows)}")
    return lines


def cmd_sweep(args: argparse.Namespace) -> int:
    objectives = (args.objective,) if args.objective else search_mod.OBJECTIVES
    try:
        sweep_cfg = search_mod.SweepConfig(
            d_grid=args.grid,
            restarts=args.restarts,
            budget_per_restart=args.budget,
            seed=args.seed,
            objectives=objectives,
        )
    except ValueError as exc:
        print(f"bad sweep configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE_IO
    family_builder = {
        "full": search_mod.full_unitary_family,
        "product": search_mod.product_family,
    }[args.family]
    family = family_builder(args.ancilla_dim)
    config = protocol_mod.make_config(args.mode, encoding=args.encoding)
    result = search_mod.sweep(family, config, sweep_cfg)
    summary_lines = _render_summary(result.summary, objectives)
    if args.out:
        try:
            files_mod.save_curve_csv(result.points, args.out)
        except OSError as exc:
            print(f"cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE_IO
        print("\n".join(summary_lines))
    else:
        files_mod.write_curve_csv(result.points, sys.stdout)
        print("\n".join(summary_lines), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    results = checks_mod.run_all()
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status} {result.name:<34} margin={result.margin:+.3e}  {result.detail}")
    failed = sum(1 for r in results if not r.passed)
    print(f"{len(results)} suites: {len(results) - failed} passed, {failed} failed")
    return EXIT_OK if failed == 0 else EXIT_INTERNAL


def _parse_grid(text: str) -> tuple[float, ...]:
    stripped = text.strip()
    if not stripped:
        return ()
    try:
        if ":" in stripped:
            parts = stripped.split(":")
            if len(parts) != 3:
                raise ValueError("expected start:stop:step")
            start, stop, step = (float(p) for p in parts)
            if step <= 0:
                raise ValueError("step must be positive")
            values = []
            k = 0
            while True:
                value = start + k * step
                if value > stop + 1e-9:
                    break
                # Clamp float noise at the interval edges only.
                if -1e-9 < value < 0.0:
                    value = 0.0
                if 1.0 < value < 1.0 + 1e-9:
                    value = 1.0
                values.append(value)
                k += 1
            return tuple(values)
        return tuple(float(part) for part in stripped.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}: {exc}") from exc


def _add_attack_io(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("attack_file", help="JSON attack file (ancilla_dim, chi, unitary)")
    parser.add_argument("--mode", choices=protocol_mod.MODES, default="simplified")
    parser.add_argument("--encoding", choices=protocol_mod.ENCODING_NAMES, default="iz")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pingpong",
        description="Ping-pong protocol eavesdropping simulator and analyzer",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    demo = sub.add_parser("demo", help="audit the built-in counterexample attack")
    demo.set_defaults(func=cmd_demo)

    report = sub.add_parser("report", help="information report for an attack file")
    _add_attack_io(report)
    report.add_argument("--json", action="store_true", help="machine-readable output")
    report.set_defaults(func=cmd_report)

    simulate = sub.add_parser("simulate", help="Monte Carlo check of the analytic d")
    _add_attack_io(simulate)
    simulate.add_argument("--rounds", type=int, default=100_000)
    simulate.add_argument("--seed", type=int, default=0)
    simulate.set_defaults(func=cmd_simulate)

    sweep = sub.add_parser("sweep", help="map the information-vs-detection frontier")
    sweep.add_argument("--grid", type=_parse_grid, default=(0.0, 0.1, 0.2, 0.3, 0.4, 0.5),
                       help="comma list or start:stop:step of detection targets")
    sweep.add_argument("--objective", choices=search_mod.OBJECTIVES, default=None,
                       help="optimize one objective (default: all three)")
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--out", default=None, help="CSV path (default: stdout)")
    sweep.add_argument("--mode", choices=protocol_mod.MODES, default="simplified")
    sweep.add_argument("--encoding", choices=protocol_mod.ENCODING_NAMES, default="iz")
    sweep.add_argument("--restarts", type=int, default=20)
    sweep.add_argument("--budget", type=int, default=2000,
                       help="objective evaluations per restart")
    sweep.add_argument("--family", choices=("full", "product"), default="full")
    sweep.add_argument("--ancilla-dim", type=int, default=2)
    sweep.set_defaults(func=cmd_sweep)

    verify = sub.add_parser("verify", help="run the full invariant suite")
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE_IO
    try:
        return args.func(args)
    except Exception as exc:  # stable exit-code contract over stack traces
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
