"""Command-line interface and the benchmark sweep harness.

Subcommands: ``exact``, ``approx``, ``distance``, ``bounds``, ``sweep``.
All output is plain text or CSV; plotting is left to external tools.

Exit codes: 0 success (including degenerate fits reported with a warning),
1 usage error, 2 computation error.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import bounds as bounds_mod
from . import distributions as dist_mod
from .distributions import DegenerateEnsembleError, IntegerDistribution
from .ensemble import BernoulliEnsemble, make_ensemble, ensemble_from_spec, moments, read_probs_file
from .metrics import loc_distance, tv_distance

__all__ = ["SweepRow", "run_sweep", "approximation_pmf", "main", "entrypoint", "METHODS"]

METHODS = ("poisson", "shifted-poisson", "binomial1", "binomial2", "normal", "shifted-binomial")

SWEEP_HEADER = "M,poisson,shifted_poisson,binomial1,binomial2,normal,shifted_binomial,tv_bound,loc_bound"


@dataclass(frozen=True)
class SweepRow:
    """One sweep grid point: exact TV per approximation plus theorem bounds."""

    M: float
    poisson: float
    shifted_poisson: float
    binomial1: float
    binomial2: float
    normal: float
    shifted_binomial: float
    tv_bound: float
    loc_bound: float

    def distances(self) -> dict[str, float]:
        return {
            "poisson": self.poisson,
            "shifted_poisson": self.shifted_poisson,
            "binomial1": self.binomial1,
            "binomial2": self.binomial2,
            "normal": self.normal,
            "shifted_binomial": self.shifted_binomial,
        }


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def approximation_pmf(method: str, e: BernoulliEnsemble) -> tuple[IntegerDistribution, dict[str, float]]:
    """Build the named approximation; returns the PMF and fitted parameters."""
    ms = moments(e)
    if method == "poisson":
        return dist_mod.poisson_pmf(ms.lambda1), {"rate": ms.lambda1}
    if method == "shifted-poisson":
        d = dist_mod.shifted_poisson_pmf(ms)
        shift, frac = dist_mod._floor_frac(ms.lambda1 - ms.sigma2)
        return d, {"shift": shift, "rate": ms.sigma2 + frac}
    if method == "binomial1":
        return dist_mod.one_param_binomial_pmf(e), {"n": e.m, "p": ms.lambda1 / e.m}
    if method == "binomial2":
        d = dist_mod.two_param_binomial_pmf(ms)
        n = d.support_max
        return d, {"n": n, "p": ms.lambda1 / n}
    if method == "normal":
        d = dist_mod.discretized_normal_pmf(ms.lambda1, ms.sigma2, (0, e.m))
        return d, {"mean": ms.lambda1, "variance": ms.sigma2}
    if method == "shifted-binomial":
        fit = dist_mod.fit_shifted_binomial(ms)
        d = dist_mod.shifted_binomial_pmf(fit)
        params = {
            "n": fit.n, "p": fit.p, "s": fit.s,
            "n*": fit.n_star, "p*": fit.p_star, "s*": fit.s_star,
        }
        return d, params
    raise ValueError(f"unknown method {method!r}; valid: {', '.join(METHODS)}")


def run_sweep(m: int, grid: Sequence[float]) -> list[SweepRow]:
    """Exact TV of all six approximations across a max-probability grid.

    Rows are deterministic functions of (m, grid); each uses the
    uniform-spread ensemble p_i = i*M/(m+1).
    """
    if m < 2:
        raise ValueError(f"sweep needs m >= 2, got {m}")
    rows = []
    for M in grid:
        e = ensemble_from_spec("uniform-spread", m, M)
        ms = moments(e)
        exact = dist_mod.exact_pmf(e)
        tv = {
            name.replace("-", "_"): tv_distance(exact, approximation_pmf(name, e)[0])
            for name in METHODS
        }
        fit = dist_mod.fit_shifted_binomial(ms)
        report = bounds_mod.theorem_bounds(e, ms, fit)
        rows.append(
            SweepRow(
                M=M,
                poisson=tv["poisson"],
                shifted_poisson=tv["shifted_poisson"],
                binomial1=tv["binomial1"],
                binomial2=tv["binomial2"],
                normal=tv["normal"],
                shifted_binomial=tv["shifted_binomial"],
                tv_bound=report.tv_bound,
                loc_bound=report.loc_bound,
            )
        )
    return rows


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    lines = [SWEEP_HEADER]
    for r in rows:
        d = r.distances()
        cells = [r.M, d["poisson"], d["shifted_poisson"], d["binomial1"],
                 d["binomial2"], d["normal"], d["shifted_binomial"],
                 r.tv_bound, r.loc_bound]
        lines.append(",".join(_fmt(c) for c in cells))
    return "\n".join(lines) + "\n"


def pmf_csv(d: IntegerDistribution) -> str:
    lines = ["k,mass"]
    for k, mass in zip(d.support(), d.pmf):
        lines.append(f"{k},{_fmt(mass)}")
    return "\n".join(lines) + "\n"


def parse_pmf_csv(text: str) -> IntegerDistribution:
    """Inverse of :func:`pmf_csv`; expects contiguous k values."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0] != "k,mass":
        raise ValueError("expected header 'k,mass'")
    ks, masses = [], []
    for ln in lines[1:]:
        k_str, mass_str = ln.split(",", 1)
        ks.append(int(k_str))
        masses.append(float(mass_str))
    if ks != list(range(ks[0], ks[0] + len(ks))):
        raise ValueError("support values must be contiguous")
    return IntegerDistribution.from_masses(ks[0], np.asarray(masses))


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for
    # computation errors and uses 1 for usage.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--probs", help="comma-separated probabilities")
    p.add_argument("--probs-file", help="file with one probability per line")
    p.add_argument("--uniform-spread", action="store_true",
                   help="use the ramp ensemble p_i = i*M/(m+1)")
    p.add_argument("--m", type=int, default=100, help="ensemble size for --uniform-spread")
    p.add_argument("--max-prob", type=float, default=1.0,
                   help="maximum probability M for --uniform-spread")


def _ensemble_from_args(parser: argparse.ArgumentParser, args: argparse.Namespace) -> BernoulliEnsemble:
    sources = [args.probs is not None, args.probs_file is not None, args.uniform_spread]
    if sum(sources) != 1:
        parser.error("exactly one of --probs, --probs-file, --uniform-spread is required")
    if args.probs is not None:
        return make_ensemble([float(tok) for tok in args.probs.split(",") if tok.strip()])
    if args.probs_file is not None:
        return read_probs_file(args.probs_file)
    return ensemble_from_spec("uniform-spread", args.m, args.max_prob)


def _build_parser() -> _Parser:
    parser = _Parser(prog="shiftbinom",
                     description="Poisson-binomial approximations, distances, and error bounds")
    sub = parser.add_subparsers(dest="command", required=True)

    p_exact = sub.add_parser("exact", parents=[], help="exact PMF of the Bernoulli sum")
    _add_input_flags(p_exact)
    p_exact.add_argument("--out", help="write CSV here instead of stdout")

    p_approx = sub.add_parser("approx", help="fitted approximation PMF")
    _add_input_flags(p_approx)
    p_approx.add_argument("--method", required=True, choices=METHODS)
    p_approx.add_argument("--out", help="write CSV here instead of stdout")

    p_dist = sub.add_parser("distance", help="exact distance between W and an approximation")
    _add_input_flags(p_dist)
    p_dist.add_argument("--method", required=True, choices=METHODS)
    p_dist.add_argument("--metric", choices=("tv", "loc"), default="tv")

    p_bounds = sub.add_parser("bounds", help="error-bound report for the ensemble")
    _add_input_flags(p_bounds)

    p_sweep = sub.add_parser("sweep", help="TV of all six approximations over an M grid")
    p_sweep.add_argument("--m", type=int, default=100, help="ensemble size")
    p_sweep.add_argument("--grid-start", type=float, default=0.05)
    p_sweep.add_argument("--grid-stop", type=float, default=1.0)
    p_sweep.add_argument("--grid-points", type=int, default=20)
    p_sweep.add_argument("--out", help="write CSV here instead of stdout")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _na(x: float) -> str:
    return "n/a" if math.isinf(x) else _fmt(x)


def _cmd_bounds(e: BernoulliEnsemble) -> int:
    ms = moments(e)
    lines = []
    try:
        fit = dist_mod.fit_shifted_binomial(ms)
    except DegenerateEnsembleError as exc:
        print(f"warning: {exc}", file=sys.stderr)
        for name in ("K", "A1", "A2", "A3", "A4", "eta", "tv_bound", "loc_bound",
                     "tv_corollary", "loc_corollary"):
            lines.append(f"{name},n/a")
        print("\n".join(lines))
        return 0
    report = bounds_mod.theorem_bounds(e, ms, fit)
    for name in ("K", "A1", "A2", "A3", "A4", "eta"):
        lines.append(f"{name},{_na(getattr(report, name))}")
    lines.append(f"tv_bound,{_na(report.tv_bound)}")
    lines.append(f"loc_bound,{_na(report.loc_bound)}")
    lines.append(f"tv_corollary,{_na(report.tv_corollary)}")
    lines.append(f"loc_corollary,{_na(report.loc_corollary)}")
    try:
        lines.append(f"ehm_bound,{_fmt(bounds_mod.ehm_bound(e))}")
    except DegenerateEnsembleError:
        lines.append("ehm_bound,n/a")
    try:
        exact = dist_mod.exact_pmf(e)
        lines.append(f"two_param_bound,{_fmt(bounds_mod.two_param_bound(e, ms, exact))}")
    except (DegenerateEnsembleError, dist_mod.FitRangeError):
        lines.append("two_param_bound,n/a")
    for note in report.notes:
        lines.append(f"note,{note}")
    print("\n".join(lines))
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "exact":
            e = _ensemble_from_args(parser, args)
            _emit(pmf_csv(dist_mod.exact_pmf(e)), args.out)
            return 0
        if args.command == "approx":
            e = _ensemble_from_args(parser, args)
            d, params = approximation_pmf(args.method, e)
            header = " ".join(f"{k}={_fmt(float(v))}" for k, v in params.items())
            _emit(f"# {args.method}: {header}\n" + pmf_csv(d), args.out)
            return 0
        if args.command == "distance":
            e = _ensemble_from_args(parser, args)
            exact = dist_mod.exact_pmf(e)
            approx, _ = approximation_pmf(args.method, e)
            metric = tv_distance if args.metric == "tv" else loc_distance
            print(_fmt(metric(exact, approx)))
            return 0
        if args.command == "bounds":
            return _cmd_bounds(_ensemble_from_args(parser, args))
        if args.command == "sweep":
            grid = np.linspace(args.grid_start, args.grid_stop, args.grid_points)
            rows = run_sweep(args.m, [float(M) for M in grid])
            _emit(sweep_csv(rows), args.out)
            return 0
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError(f"unhandled command {args.command!r}")


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
