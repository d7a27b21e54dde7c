"""Command-line interface: ``mcp state | sweep-gghz | random-ew | verify``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import entanglement, experiments, qmath, states, verify
from .control import minimal_control_power
from .errors import DenseCodingError

FAMILY_NAMES = sorted(name.replace("_", "-") for name in states.FAMILY_ARITY)


def _parse_params(text: str | None) -> list[float]:
    if not text:
        return []
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise DenseCodingError(f"--params must be comma-separated numbers, got {text!r}") from None


def _load_state(args):
    if args.input:
        try:
            text = Path(args.input).read_text()
        except OSError as exc:
            raise DenseCodingError(f"cannot read {args.input}: {exc}") from None
        return states.parse_state(text)
    params = _parse_params(args.params)
    if args.normalize and params:
        norm = float(np.linalg.norm(params))
        if args.family.replace("-", "_") == "maximal_slice":
            norm /= np.sqrt(0.5)
        params = [p / norm for p in params]
    return states.build(states.StateFamily(args.family.replace("-", "_"), params))


def state_report(state) -> dict:
    """Control report plus entanglement measures, as a JSON-ready dict."""
    report = minimal_control_power(state)
    out = report.to_dict()
    rho = states.as_density(state)
    out["concurrences"] = {
        f"{a}{b}": entanglement.concurrence(qmath.partial_trace(rho, (a, b)))
        for a, b in ((1, 2), (1, 3), (2, 3))
    }
    if states.is_pure_vector(state):
        out["tau"] = entanglement.three_tangle(state)
    return out


def _print_text(report: dict) -> None:
    print(f"{'jkl':>4} {'c_with':>10} {'c_without':>10} {'cp':>10} {'theta':>9} {'phi':>9}")
    for r in report["assignments"]:
        print(f"{r['jkl']:>4} {r['c_with']:10.6f} {r['c_without']:10.6f} {r['cp']:10.6f} "
              f"{r['theta']:9.5f} {r['phi']:9.5f}")
    print(f"mcp    {report['mcp']:.6f}  (argmin {report['argmin']})")
    if "tau" in report:
        print(f"tau    {report['tau']:.6f}")
    conc = "  ".join(f"C{k}={v:.6f}" for k, v in report["concurrences"].items())
    print(f"concurrence  {conc}")


def cmd_state(args) -> int:
    if not args.input and not args.family:
        raise DenseCodingError("give either --family or --input")
    report = state_report(_load_state(args))
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        _print_text(report)
    return 0


def cmd_sweep_gghz(args) -> int:
    rows = experiments.gghz_sweep(args.grid)
    path = experiments.write_csv(args.out, experiments.SWEEP_HEADER, (r.cells() for r in rows))
    print(f"wrote {len(rows)} rows to {path}", file=sys.stderr)
    return 0


def cmd_random_ew(args) -> int:
    t0 = time.perf_counter()
    result = experiments.random_extended_w(args.count, args.seed, args.measure)
    path = experiments.write_csv(args.out, experiments.RANDOM_HEADER, result.rows())

    xs = np.linspace(0.0, 1.0, args.curve_points)
    path_a, path_b = experiments.curve_paths(args.out)
    curve_a = experiments.boundary_curve("a", xs)
    curve_b = experiments.boundary_curve("b", xs)
    experiments.write_csv(path_a, experiments.CURVE_A_HEADER,
                          ([experiments.fmt(x), experiments.fmt(y)] for x, y in zip(xs, curve_a)))
    experiments.write_csv(path_b, experiments.CURVE_B_HEADER,
                          ([experiments.fmt(x), experiments.fmt(y)] for x, y in zip(xs, curve_b)))

    print(f"wrote {args.count} samples to {path}; curves to {path_a}, {path_b}", file=sys.stderr)
    print(f"max mcp {result.mcp.max():.9f} (standard W: {2 / 3:.9f})", file=sys.stderr)
    status = 0
    if args.check:
        ex_a, ex_b = experiments.boundary_excess(result)
        print(f"max excess over curve a {ex_a.max():.3e}, over curve b {ex_b.max():.3e}",
              file=sys.stderr)
        if max(ex_a.max(), ex_b.max()) > 1e-6:
            status = 1
    print(f"elapsed {time.perf_counter() - t0:.1f} s", file=sys.stderr)
    return status


def cmd_verify(args) -> int:
    names = None if args.suite in (None, "all") else [args.suite]
    ok = True
    for res in verify.run_suites(names, args.samples, args.seed):
        print(res.line())
        ok &= res.passed
    print("all suites passed" if ok else "verification FAILED")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mcp", description="Control power of controlled dense coding for three-qubit states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="report capacities, CP and MCP of one state")
    p.add_argument("--family", choices=FAMILY_NAMES + [n.replace("-", "_") for n in FAMILY_NAMES],
                   metavar="NAME", help=f"one of: {', '.join(FAMILY_NAMES)}")
    p.add_argument("--params", help="comma-separated real coefficients")
    p.add_argument("--normalize", action="store_true", help="rescale --params to unit norm")
    p.add_argument("--input", help="JSON state file")
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("sweep-gghz", help="generalized GHZ sweep over lambda1^2")
    p.add_argument("--grid", type=int, default=200)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep_gghz)

    p = sub.add_parser("random-ew", help="MCP of random extended W states and boundary curves")
    p.add_argument("--count", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--measure", choices=states.MEASURES, default="sphere")
    p.add_argument("--curve-points", type=int, default=101)
    p.add_argument("--check", action="store_true",
                   help="also compare every sample against both curves at its own coordinate")
    p.set_defaults(func=cmd_random_ew)

    p = sub.add_parser("verify", help="run the self-check suites")
    p.add_argument("--suite", choices=list(verify.SUITES) + ["all"])
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DenseCodingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
