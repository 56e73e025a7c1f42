"""
Command-line entry point.

    creutz-dqpt spectrum --K 1 --M 1 --theta 0 --L 6
    creutz-dqpt zeros --theta1 0.25pi --L 22
    creutz-dqpt figure fig3 --out fig3.csv
    creutz-dqpt verify

Settings resolve as: command-line flag, then ``--config`` file, then the
figure's built-in defaults, then :class:`RunConfig` defaults.

Exit codes: 0 success, 1 usage error, 2 verification failure,
3 no solution / incommensurate parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import core, figures, qsl, quench, verify
from .config import RunConfig, coerce, load_config_file
from .errors import IncommensurateError, NoGaplessModeError, NoSolutionError

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_NO_SOLUTION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


# -- output ------------------------------------------------------------------


def format_value(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def json_value(x):
    if isinstance(x, (bool, np.bool_)):
        return int(bool(x))
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else format(x, ".17g")
    return x


def render(columns, rows, fmt="csv") -> str:
    if fmt == "json":
        data = [{c: json_value(v) for c, v in zip(columns, row)} for row in rows]
        return json.dumps(data, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    return buf.getvalue()


def emit(columns, rows, cfg: RunConfig):
    text = render(columns, rows, cfg.format)
    if cfg.output_path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(cfg.output_path, "w", newline="") as fh:
            fh.write(text)


# -- subcommands -------------------------------------------------------------


def cmd_spectrum(cfg: RunConfig):
    params = core.ModelParams(cfg.K, cfg.M, cfg.theta1)
    grid = core.momentum_grid(cfg.L)
    rows = []
    for j, k in enumerate(grid.points):
        b = core.band_energies(params, float(k))
        rows.append((j, float(k), b.eps_alpha, b.eps_beta, core.band_gap(params, float(k))))
    return ["j", "k", "eps_alpha", "eps_beta", "gap"], rows


def cmd_zeros(cfg: RunConfig):
    rows = [(s.j, s.k, s.theta2, s.gap, s.t_first)
            for s in quench.allowed_modes(cfg.K, cfg.M, cfg.theta1, cfg.L)]
    return ["j", "k", "theta2", "gap", "t_first"], rows


def cmd_le(cfg: RunConfig):
    if cfg.theta2 is None:
        raise UsageError("le needs --theta2")
    spec = quench.QuenchSpec(cfg.K, cfg.M, cfg.theta1, cfg.theta2, cfg.L)
    trace = quench.rate_function(spec, np.linspace(cfg.t_min, cfg.t_max, cfg.t_points))
    le = np.where(trace.divergent, 0.0, np.exp(trace.log_le))
    rows = list(zip(trace.times.tolist(), trace.log_le.tolist(), le.tolist(),
                    trace.rate.tolist(), trace.divergent.tolist()))
    return ["t", "log_le", "le", "rate", "divergent"], rows


def cmd_delta_c(cfg: RunConfig):
    rows = []
    for L in qsl.sweep_sizes(cfg.L_min, cfg.L_max, cfg.step):
        rows.append((L, quench.delta_c(cfg.K, cfg.M, cfg.theta1, L),
                     quench.delta_c_asymptote(cfg.K, cfg.M, cfg.theta1, L)))
    return ["L", "delta_c", "asymptote"], rows


def cmd_tau_f(cfg: RunConfig):
    tau_c = qsl.tau_c_asymptote(cfg.K, cfg.M, cfg.theta1)
    rows = []
    for L in qsl.sweep_sizes(cfg.L_min, cfg.L_max, cfg.step):
        ext = qsl.tau_f_extrema(cfg.K, cfg.M, cfg.theta1, L)
        rows.append((L, ext.tau_fmax, ext.tau_fmin, qsl.tau_fmax_asymptote(cfg.K, cfg.M, L), tau_c))
    return ["L", "tau_fmax", "tau_fmin", "tau_fmax_asymptote", "tau_c"], rows


def cmd_qsl(cfg: RunConfig):
    rows = []
    for L in qsl.sweep_sizes(cfg.L_min, cfg.L_max, cfg.step):
        ext = qsl.tau_f_extrema(cfg.K, cfg.M, cfg.theta1, L)
        taus = [qsl.mt_bound(qsl.energy_variance(quench.QuenchSpec(cfg.K, cfg.M, cfg.theta1, s.theta2, L)))
                for s in (ext.sol_max, ext.sol_min)]
        rows.append((L, ext.tau_fmax, ext.tau_fmin, *taus))
    return ["L", "tau_fmax", "tau_fmin", "tau_qsl_max_case", "tau_qsl_min_case"], rows


def cmd_qsl_sweep(cfg: RunConfig):
    st = qsl.qsl_sweep_stats(cfg.K, cfg.M, cfg.theta1, cfg.which, cfg.L_min, cfg.L_max,
                             cfg.step, cfg.normalization)
    return (["theta1", "which", "mean", "variance", "sample_count", "normalization"],
            [(st.theta1, cfg.which, st.mean, st.variance, st.sample_count, st.normalization)])


def cmd_noise(cfg: RunConfig):
    return figures.noise_sweep(cfg)


COMMANDS = {
    "spectrum": cmd_spectrum,
    "zeros": cmd_zeros,
    "le": cmd_le,
    "delta-c": cmd_delta_c,
    "tau-f": cmd_tau_f,
    "qsl": cmd_qsl,
    "qsl-sweep": cmd_qsl_sweep,
    "noise": cmd_noise,
}


# -- argument handling -------------------------------------------------------


def _add_run_flags(p: argparse.ArgumentParser):
    S = argparse.SUPPRESS
    p.add_argument("--config", help="flat 'key = value' file")
    p.add_argument("--K", default=S)
    p.add_argument("--M", default=S)
    p.add_argument("--theta1", "--theta", dest="theta1", default=S,
                   help="pre-quench (or static) phase; accepts e.g. 0.25pi")
    p.add_argument("--theta2", default=S)
    p.add_argument("--L", default=S)
    p.add_argument("--L-min", dest="L_min", default=S)
    p.add_argument("--L-max", dest="L_max", default=S)
    p.add_argument("--step", default=S)
    p.add_argument("--t", default=S)
    p.add_argument("--t-min", dest="t_min", default=S)
    p.add_argument("--t-max", dest="t_max", default=S)
    p.add_argument("--t-points", dest="t_points", default=S)
    p.add_argument("--which", choices=["max", "min"], default=S)
    p.add_argument("--noise-fraction", dest="noise_fraction", default=S)
    p.add_argument("--noise-count", dest="noise_count", default=S)
    p.add_argument("--seed", default=S)
    p.add_argument("--normalization", choices=["paper", "sample-count"], default=S)
    p.add_argument("--theta1-points", dest="theta1_points", default=S)
    p.add_argument("--workers", default=S)
    p.add_argument("--out", dest="output_path", default=S)
    p.add_argument("--format", choices=["csv", "json"], default=S)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="creutz-dqpt", description="Creutz-ladder quench dynamics data")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        _add_run_flags(sub.add_parser(name))
    fig = sub.add_parser("figure")
    fig.add_argument("fig_id", choices=figures.FIGURE_IDS)
    _add_run_flags(fig)
    ver = sub.add_parser("verify")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--inject-wrong-branch", action="store_true", help=argparse.SUPPRESS)
    return parser


_NON_CONFIG = {"command", "config", "fig_id", "inject_wrong_branch"}


def resolve_config(args: argparse.Namespace, defaults: dict | None = None):
    """Merge defaults, config file and flags; return ``(config, explicit_keys)``."""
    cfg = RunConfig().updated(defaults or {})
    explicit = set()
    if getattr(args, "config", None):
        file_values = load_config_file(args.config)
        cfg = cfg.updated(file_values)
        explicit |= set(file_values)
    flags = {k: v for k, v in vars(args).items() if k not in _NON_CONFIG}
    cfg = cfg.updated(flags)
    explicit |= set(coerce(flags))
    return cfg, frozenset(explicit)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        angle = verify.wrong_branch_angle if args.inject_wrong_branch else None
        results = verify.run_checks(seed=args.seed, angle_fn=angle)
        for r in results:
            print(r.line())
        failed = [r.name for r in results if not r.passed]
        if failed:
            print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
            return EXIT_VERIFY
        return EXIT_OK
    try:
        defaults = figures.DEFAULTS[args.fig_id] if args.command == "figure" else None
        cfg, explicit = resolve_config(args, defaults)
        if args.command == "figure":
            columns, rows = figures.figure_data(args.fig_id, cfg, explicit)
        else:
            columns, rows = COMMANDS[args.command](cfg)
    except (NoSolutionError, IncommensurateError, NoGaplessModeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except (UsageError, ValueError, KeyError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(columns, rows, cfg)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
