"""Command-line front end: CSV emission for populations, correlations and figures."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import correlation, dynamics, oracle
from .figures import FIGURE_IDS, figure_curves
from .polarization import BasisPair, parse_setting
from .rates import RateParams, ValidationError, normalize_to_gamma
from .verification import equivalence_report

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_VERIFY = 0, 1, 2, 3
DEFAULT_PARAMS = RateParams(gamma1=0.5, gamma3=0.5, gamma2=1.0, gamma4=1.0)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    params: RateParams
    out: Path | None = None
    method: str = "analytic"
    options: dict = field(default_factory=dict)


def fmt(x: float) -> str:
    # 12 significant digits; fold -0 into 0 so reruns and sign noise give identical bytes
    return f"{float(x) + 0.0:.12g}"


def grid(start: float, stop: float, points: int) -> np.ndarray:
    if points < 2:
        raise UsageError("grids need at least 2 points")
    if not stop > start:
        raise UsageError("grid end must exceed its start")
    return np.linspace(start, stop, points)


def render_csv(header, columns) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in zip(*columns):
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out = Path(out)
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_populations(config: RunConfig) -> int:
    t = grid(0.0, config.options["t_max"], config.options["points"])
    start = dynamics.CascadeState.biexciton()
    if config.method == "analytic":
        states = dynamics.trajectory(config.params, t, start)
    elif config.method == "oracle":
        rhos = oracle.evolve_density(config.params, start.matrix(), t)
        states = [dynamics.CascadeState.from_matrix(r, time=float(s)) for r, s in zip(rhos, t)]
    else:
        raise UsageError("populations supports --method analytic or oracle")
    header = ("t", "rho_ii", "rho_aa", "rho_bb", "rho_jj", "re_rho_ab", "im_rho_ab")
    cols = [t] + [
        [getattr(s, name) for s in states] for name in ("rho_ii", "rho_aa", "rho_bb", "rho_jj")
    ]
    cols += [[s.rho_ab.real for s in states], [s.rho_ab.imag for s in states]]
    emit(render_csv(header, cols), config.out)
    return EXIT_OK


def cmd_g2(config: RunConfig) -> int:
    tau = grid(0.0, config.options["tau_max"], config.options["points"])
    p1, p2 = config.options["p1"], config.options["p2"]
    method = config.method
    if method == "analytic":
        text = render_csv(("tau", "value"), [tau, correlation.g2_general(config.params, p1, p2, tau)])
    elif method == "oracle":
        text = render_csv(("tau", "value"), [tau, oracle.g2_conditioned(config.params, p1, p2, tau)])
    elif method == "symmetric":
        if abs(p1.phi) > 1e-12 or abs(p2.phi) > 1e-12:
            raise UsageError("--method symmetric only takes linear analyzers (phi = 0)")
        values = 2.0 * correlation.g2_symmetric(config.params, p1.theta, p2.theta, tau)
        text = render_csv(("tau", "value"), [tau, values])
    elif method == "both":
        a = correlation.g2_general(config.params, p1, p2, tau)
        o = oracle.g2_conditioned(config.params, p1, p2, tau)
        text = render_csv(("tau", "analytic", "oracle"), [tau, a, o])
    else:
        raise UsageError(f"unknown method {method!r}")
    emit(text, config.out)
    return EXIT_OK


def cmd_degree(config: RunConfig) -> int:
    if config.method != "analytic":
        raise UsageError("degree is computed analytically only")
    tau = grid(0.0, config.options["tau_max"], config.options["points"])
    c = correlation.degree_of_correlation(config.params, config.options["basis"], tau)
    emit(render_csv(("tau", "c"), [tau, c]), config.out)
    return EXIT_OK


def cmd_degree_avg(config: RunConfig) -> int:
    if config.method != "analytic":
        raise UsageError("degree-avg is computed analytically only")
    thetas = grid(0.0, np.pi, config.options["points"])
    c = correlation.degree_vs_angle(config.params, thetas, config.options["phi"])
    emit(render_csv(("theta", "c_avg"), [thetas, c]), config.out)
    return EXIT_OK


def cmd_figure(config: RunConfig) -> int:
    figure_id = config.options["figure_id"]
    if figure_id not in FIGURE_IDS:
        raise UsageError(f"unknown figure id {figure_id!r}; valid ids: {', '.join(FIGURE_IDS)}")
    outdir = Path(config.out or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    for curve in figure_curves(figure_id):
        path = outdir / f"{curve.name}.csv"
        emit(render_csv(curve.header, [curve.x, curve.y]), path)
        print(path)
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    opts = config.options
    report = equivalence_report(
        cases=opts["cases"],
        seed=opts["seed"],
        points=opts["points"],
        tau_max=opts["tau_max"],
        tolerance=opts["tolerance"],
        jobs=opts["jobs"],
    )
    text = json.dumps(report, indent=2) + "\n"
    emit(text, config.out)
    if config.out is not None:
        print(json.dumps({k: report[k] for k in ("tolerance", "max_rel_error", "passed")}))
    return EXIT_OK if report["passed"] else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--params", type=Path, help="JSON file of rate parameters (normalized to gamma on load)")
    common.add_argument("--out", type=Path, help="output file (directory for 'figure'); default stdout")
    common.add_argument("--method", default="analytic", choices=("analytic", "oracle", "both", "symmetric"))
    common.add_argument("--tolerance", type=float, default=1e-6)

    parser = _Parser(prog="cascade-g2", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("populations", parents=[common], help="single-time populations from |i>")
    p.add_argument("--t-max", type=float, default=10.0)
    p.add_argument("--points", type=int, default=201)

    p = sub.add_parser("g2", parents=[common], help="reduced two-photon correlation versus delay")
    p.add_argument("--p1", default="H", help="first-photon analyzer: preset, 'theta,phi' or 'deg:theta,phi'")
    p.add_argument("--p2", default="H", help="second-photon analyzer")
    p.add_argument("--tau-max", type=float, default=5.0)
    p.add_argument("--points", type=int, default=201)

    p = sub.add_parser("degree", parents=[common], help="degree of correlation versus delay")
    p.add_argument("--basis", default="rectilinear", help="rectilinear, diagonal, circular, a preset or angles")
    p.add_argument("--tau-max", type=float, default=5.0)
    p.add_argument("--points", type=int, default=201)

    p = sub.add_parser("degree-avg", parents=[common], help="time-averaged degree versus basis angle")
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--points", type=int, default=181)

    p = sub.add_parser("figure", parents=[common], help="write the CSV curves behind one figure")
    p.add_argument("figure_id", help=f"one of {', '.join(FIGURE_IDS)}")

    p = sub.add_parser("verify", parents=[common], help="analytic vs oracle on a random grid (JSON report)")
    p.add_argument("--cases", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--tau-max", type=float, default=10.0)
    p.add_argument("--jobs", type=int, default=1)
    return parser


COMMANDS = {
    "populations": cmd_populations,
    "g2": cmd_g2,
    "degree": cmd_degree,
    "degree-avg": cmd_degree_avg,
    "figure": cmd_figure,
    "verify": cmd_verify,
}


def _basis(text: str) -> BasisPair:
    if text in ("rectilinear", "linear", "diagonal", "circular"):
        return BasisPair.named(text)
    return BasisPair.from_setting(parse_setting(text))


def _config(args) -> RunConfig:
    params = RateParams.from_json(args.params) if args.params else DEFAULT_PARAMS
    options = {k: v for k, v in vars(args).items() if k not in ("params", "out", "method", "command")}
    try:
        for key in ("p1", "p2"):
            if key in options:
                options[key] = parse_setting(options[key])
        if "basis" in options:
            options["basis"] = _basis(options["basis"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return RunConfig(normalize_to_gamma(params), args.out, args.method, options)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _config(args)
        return COMMANDS[args.command](config)
    except UsageError as exc:
        print(f"cascade-g2: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, ValueError) as exc:
        print(f"cascade-g2: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"cascade-g2: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except oracle.IntegrationError as exc:
        print(f"cascade-g2: integration failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
