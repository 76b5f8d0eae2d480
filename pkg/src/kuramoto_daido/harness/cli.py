"""Command-line entry point ``kuramoto-daido``.

Exit codes: 0 success, 1 usage error, 2 ambiguous critical point,
3 assumption violation, 4 verification failure.
"""
import argparse
import csv
import io
import json
import os
import sys
from dataclasses import replace

from ..bifurcation import coefficients
from ..errors import AmbiguousMaximizer, AssumptionViolation, NoRoots
from ..simulate import measure_steady_state
from ..spectral import critical_point, track_eigenvalue
from . import experiments
from .config import ExperimentSpec, SpecError, load_spec_file
from .svg import line_plot

EXIT_OK, EXIT_USAGE, EXIT_AMBIGUOUS, EXIT_ASSUMPTION, EXIT_VERIFY = 0, 1, 2, 3, 4

EIGEN_COLUMNS = ("K", "re_lambda", "im_lambda", "branch")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p):
    p.add_argument("--config", metavar="PATH", help="JSON or TOML spec file")
    p.add_argument("--density", choices=("lorentzian", "gaussian"))
    p.add_argument("--gamma", type=float)
    p.add_argument("--sigma", type=float)
    p.add_argument("--alpha1", type=float)
    p.add_argument("--alpha2", type=float)
    p.add_argument("--h", type=float)
    p.add_argument("--K", type=float)
    p.add_argument("--K-min", dest="K_min", type=float)
    p.add_argument("--K-max", dest="K_max", type=float)
    p.add_argument("--K-count", dest="K_count", type=int)
    p.add_argument("--simulator", choices=("finite-n", "galerkin"))
    p.add_argument("--n", type=int)
    p.add_argument("--j-max", dest="j_max", type=int)
    p.add_argument("--m-nodes", dest="m_nodes", type=int)
    p.add_argument("--dt", type=float)
    p.add_argument("--t-end", dest="t_end", type=float)
    p.add_argument("--burn-in", dest="burn_in", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--out", metavar="DIR")
    p.add_argument("--svg", action="store_true", default=None)
    p.add_argument("--json", action="store_true",
                   help="print JSON instead of a text summary")
    p.add_argument("--amp-tol", dest="amplitude_tol", type=float)
    p.add_argument("--vel-tol", dest="velocity_tol", type=float)
    p.add_argument("--decay-tol", dest="decay_tol", type=float)


def build_parser():
    parser = _Parser(prog="kuramoto-daido",
                     description="Bifurcation analysis of the Kuramoto-Daido "
                                 "model and its numerical verification.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "transition": "critical coupling K_c and rotation frequency y_c",
        "eigen": "track the critical (generalized) eigenvalue over a K grid",
        "coeffs": "amplitude-equation coefficients p1, p2, p3",
        "simulate": "run one simulation and measure its steady state",
        "sweep": "simulate over a K grid (bifurcation diagram)",
        "verify": "compare predictions with simulations",
    }
    for name, text in helps.items():
        _add_common(sub.add_parser(name, help=text, description=text))
    return parser


def spec_from_args(args):
    spec = load_spec_file(args.config) if args.config else ExperimentSpec()
    density = dict(spec.density)
    if args.density is not None and args.density != density.get("kind"):
        density = {"kind": args.density}
    if args.gamma is not None:
        density["gamma"] = args.gamma
    if args.sigma is not None:
        density["sigma"] = args.sigma
    updates = {"density": density}
    for name in ("alpha1", "alpha2", "h", "K", "K_min", "K_max", "K_count",
                 "simulator", "n", "j_max", "m_nodes", "dt", "t_end",
                 "burn_in", "eps", "seed", "jobs", "out", "svg",
                 "amplitude_tol", "velocity_tol", "decay_tol"):
        v = getattr(args, name)
        if v is not None:
            updates[name] = v
    return replace(spec, **updates).validate()


def _emit(spec, name, text):
    """Write ``text`` to ``DIR/name`` when ``--out`` is set."""
    if spec.out:
        with open(os.path.join(spec.out, name), "w") as fh:
            fh.write(text)


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=True, default=str) + "\n"


def cmd_transition(spec, as_json):
    cp = critical_point(spec.model(), spec.params())
    text = _json(cp.to_dict())
    _emit(spec, "transition.json", text)
    if as_json:
        sys.stdout.write(text)
    else:
        print(f"K_c = {cp.K_c:.10g}")
        print(f"y_c = {cp.y_c:.10g}")
        print(f"K_c2 = {cp.K_c2:.10g}")
        print(f"roots = {', '.join(f'{y:.10g}' for y in cp.roots_y)}")
    return EXIT_OK


def cmd_eigen(spec, as_json):
    grid = spec.K_grid()
    model = spec.model()
    params = spec.params(grid[0])
    cp = critical_point(model, params)
    path = track_eigenvalue(model, params, grid, K_c=cp.K_c)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(EIGEN_COLUMNS)
    for pt in path:
        lam = pt.lam if pt.lam is not None else complex("nan")
        w.writerow([repr(float(pt.K)), repr(float(lam.real)), repr(float(lam.imag)), pt.branch])
    _emit(spec, "eigen.csv", buf.getvalue())
    sys.stdout.write(buf.getvalue())
    return EXIT_OK


def cmd_coeffs(spec, as_json):
    model = spec.model()
    params = spec.params()
    c = coefficients(model, params)
    out = c.to_dict()
    text = _json(out)
    _emit(spec, "coeffs.json", text)
    if as_json:
        sys.stdout.write(text)
    else:
        for key in ("K_c", "y_c", "p1", "p2", "p3", "kind", "criticality", "verdict"):
            print(f"{key} = {out[key]}")
    return EXIT_OK


def cmd_simulate(spec, as_json):
    grid = spec.K_grid()
    if len(grid) != 1:
        raise SpecError("simulate takes a single K")
    trace = experiments.run_simulation(spec, grid[0])
    m = measure_steady_state(trace)
    _emit(spec, "trace.csv", trace.to_csv())
    text = trace.to_json(m)
    _emit(spec, "trace.json", text)
    if as_json:
        sys.stdout.write(text + "\n")
    else:
        print(f"K = {grid[0]:.10g}")
        print(f"r_mean = {m.r_mean:.6g} (std {m.r_std:.3g})")
        print(f"velocity = {m.velocity:.6g} (stderr {m.velocity_stderr:.3g})")
    return EXIT_OK


def cmd_sweep(spec, as_json):
    rows = experiments.sweep(spec)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(experiments.SWEEP_COLUMNS)
    for r in rows:
        w.writerow(r.csv_fields())
    _emit(spec, "sweep.csv", buf.getvalue())
    sys.stdout.write(buf.getvalue())
    if spec.svg:
        K = [r.K for r in rows]
        svg = line_plot(
            [{"x": K, "y": [r.r0_predicted for r in rows], "label": "r0 predicted",
              "style": "line"},
             {"x": K, "y": [r.r_measured for r in rows], "label": "r measured",
              "style": "points"}],
            xlabel="K", ylabel="|eta_1|", title="bifurcation diagram")
        if spec.out:
            _emit(spec, "sweep.svg", svg)
        else:
            sys.stderr.write("--svg needs --out; skipped\n")
    return EXIT_OK


def cmd_verify(spec, as_json):
    report = experiments.verify(spec)
    text = _json(report.to_dict())
    _emit(spec, "verify.json", text)
    if as_json:
        sys.stdout.write(text)
    else:
        for r in report.rows:
            mark = "PASS" if r.within_tolerance else "FAIL"
            print(f"{mark} K={r.K:.6g} regime={r.regime} r={r.r_measured:.5g} "
                  f"r0={r.r0_predicted} v={r.velocity_measured:.5g} "
                  f"v_pred={r.velocity_predicted} {'; '.join(r.notes)}")
        for c in report.checks.get("decay", []):
            mark = "PASS" if c["ok"] else "FAIL"
            print(f"{mark} decay K={c['K']:.6g} rate={c.get('rate')} "
                  f"predicted={c.get('predicted')}")
        print("overall:", "PASS" if report.passed else "FAIL")
    return EXIT_OK if report.passed else EXIT_VERIFY


COMMANDS = {"transition": cmd_transition, "eigen": cmd_eigen,
            "coeffs": cmd_coeffs, "simulate": cmd_simulate,
            "sweep": cmd_sweep, "verify": cmd_verify}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = spec_from_args(args)
        return COMMANDS[args.command](spec, args.json)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AmbiguousMaximizer as exc:
        print(f"ambiguous critical point: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except AssumptionViolation as exc:
        print(f"assumption violated: {exc}", file=sys.stderr)
        return EXIT_ASSUMPTION
    except NoRoots as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
