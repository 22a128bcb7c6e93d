"""Command-line front end.

Reads a sectioned config file, runs one analysis pipeline (or ``all``) and
writes CSV tables plus a JSON summary.  Outputs are deterministic: identical
config and package version produce byte-identical files.  Exit status is 0
when every verdict-carrying check passes, 1 when any fails, 2 on usage or
configuration errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import __version__
from .asymptotics import amplitude_extract, nevai_condition
from .config import COMMANDS, ConfigError, RunConfig, load_config
from .measures import (MeasureSpec, get_measure, select_bessel_ladder_measure,
                       verify_moment_problem)
from .moments import MomentSequence, hankel_determinant, hankel_polynomial, berg_duran_check
from .recurrence import monic_q_coefficients, phi_value
from .sequences import (ParameterDomainError, SequenceRangeError, SequenceSpec, x_factorial,
                        x_limit, x_log_factorial)
from .spectral import (build_truncated, ismail_li_bounds, jacobi_zeros,
                       support_endpoints)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, ".17g")
    return str(value)


class _Runner:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.spec = cfg.spec()
        self.files: List[str] = []
        self.summary: Dict[str, object] = {}
        self.verdicts: Dict[str, Optional[bool]] = {}
        os.makedirs(cfg.out_dir, exist_ok=True)

    def _path(self, suffix: str) -> str:
        return os.path.join(self.cfg.out_dir, f"{self.cfg.prefix}_{suffix}")

    def _write_csv(self, suffix: str, header: List[str], rows) -> str:
        path = self._path(suffix)
        with open(path, "w", newline="\n") as fh:
            fh.write(f"# nlcpoly {__version__} config={self.cfg.sha256()}\n")
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
        self.files.append(path)
        return path

    # -- commands ----------------------------------------------------------

    def cmd_moments(self) -> None:
        spec, n_max = self.spec, self.cfg.n_max
        exact = spec.is_rational
        rows = []
        for n in range(n_max + 1):
            log_mu = x_log_factorial(spec, n)
            value = float(x_factorial(spec, n)) if log_mu < 700 else math.inf
            rows.append((n, value, str(x_factorial(spec, n)) if exact else "", log_mu))
        self._write_csv("moments.csv", ["n", "mu2n", "mu2n_exact", "log_mu2n"], rows)
        self.summary["moments"] = {"n_max": n_max, "exact": exact}

    def cmd_hankel(self) -> None:
        moments = MomentSequence(self.spec)
        rows = []
        all_positive = True
        for n in range(self.cfg.n_max + 1):
            res = hankel_determinant(moments, n)
            all_positive &= res.positive
            rows.append((n, float(res.value), res.positive, res.exact))
        self._write_csv("hankel.csv", ["n", "det", "positive", "exact"], rows)
        self.verdicts["hankel_positive"] = all_positive
        self.summary["hankel"] = {"all_positive": all_positive, "n_max": self.cfg.n_max}

    def cmd_polys(self) -> None:
        spec = self.spec
        rows = []
        for n in range(self.cfg.n_max + 1):
            for k, c in enumerate(monic_q_coefficients(spec, n)):
                rows.append((n, k, float(c), str(c) if spec.is_rational else ""))
        self._write_csv("polys_monic.csv", ["n", "k", "coeff", "coeff_exact"], rows)
        if spec.is_rational:
            moments = MomentSequence(spec)
            rows = [(0, 0, 1.0, "1")]
            for n in range(1, self.cfg.n_max + 1):
                for k, c in enumerate(hankel_polynomial(moments, n)):
                    rows.append((n, k, float(c), str(c)))
            self._write_csv("polys_hankel.csv", ["n", "k", "coeff", "coeff_exact"], rows)
        rng = random.Random(self.cfg.seed)
        points = [rng.uniform(-2.0, 2.0) for _ in range(5)]
        rows = [(n, x, phi_value(spec, n, x))
                for n in range(self.cfg.n_max + 1) for x in points]
        self._write_csv("phi_samples.csv", ["n", "x", "phi"], rows)
        self.summary["polys"] = {"n_max": self.cfg.n_max}

    def cmd_zeros(self) -> None:
        order = self.cfg.order
        result = jacobi_zeros(build_truncated(self.spec, order), self.cfg.tolerance)
        rows = [(order, j + 1, z, lo, hi)
                for j, (z, (lo, hi)) in enumerate(zip(result.zeros, result.brackets))]
        self._write_csv("zeros.csv", ["n", "j", "zero", "lower_bracket", "upper_bracket"], rows)
        self.summary["zeros"] = {
            "order": order, "pairing_defect": result.pairing_defect,
            "max_residual": max(result.residual_bounds),
        }

    def cmd_bounds(self) -> None:
        order = max(self.cfg.order, 2)
        a, b = ismail_li_bounds(self.spec, order)
        result = jacobi_zeros(build_truncated(self.spec, order), self.cfg.tolerance)
        contained = all(a < z < b for z in result.zeros)
        supp = support_endpoints(self.spec)
        self.verdicts["zeros_within_bounds"] = contained
        self.summary["bounds"] = {
            "order": order, "A": a, "B": b, "contained": contained,
            "support_kind": supp.kind, "support_endpoint": supp.endpoint,
            "support_endpoint_unhalved": supp.endpoint_unhalved,
        }

    def _measure(self) -> Tuple[MeasureSpec, Dict[str, object]]:
        info: Dict[str, object] = {}
        if self.cfg.measure:
            if self.cfg.measure == "bessel_ladder_radial":
                measure, selection = select_bessel_ladder_measure(
                    **(self.cfg.measure_params or {"j": 1}))
                info["ladder_selection"] = {
                    "chosen": selection.chosen,
                    "max_rel_error_chosen": selection.max_rel_error_chosen,
                    "max_rel_error_rejected": selection.max_rel_error_rejected,
                }
                return measure, info
            return get_measure(self.cfg.measure, **self.cfg.measure_params), info
        measure = default_measure_for(self.spec)
        if measure is None:
            raise ConfigError(
                f"no default measure for family {self.spec.family!r}; "
                "add a [measure] section")
        if measure.name == "bessel_ladder_radial":
            _, selection = select_bessel_ladder_measure(**measure.params)
            info["ladder_selection"] = {
                "chosen": selection.chosen,
                "max_rel_error_chosen": selection.max_rel_error_chosen,
                "max_rel_error_rejected": selection.max_rel_error_rejected,
            }
        return measure, info

    def cmd_verify_measure(self) -> None:
        measure, info = self._measure()
        report = verify_moment_problem(measure, self.spec, self.cfg.n_max,
                                       self.cfg.tolerance)
        rows = [(r.n, r.computed, r.expected, r.rel_error, r.converged)
                for r in report.rows]
        self._write_csv("measure_check.csv",
                        ["n", "computed", "expected", "rel_error", "converged"], rows)
        self.verdicts["measure"] = report.verdict
        info.update({
            "measure": measure.name,
            "max_abs_rel_error": report.max_abs_rel_error,
            "verdict": _verdict_word(report.verdict),
        })
        self.summary["verify_measure"] = info

    def cmd_nevai(self) -> None:
        diag = nevai_condition(self.spec, self.cfg.nevai_n_max)
        self._write_csv("nevai.csv", ["N", "partial_sum"],
                        list(diag.partial_sums_checkpoints))
        self.summary["nevai"] = {
            "verdict": diag.verdict, "tail_exponent": diag.tail_exponent,
            "n_max": diag.n_max, "note": diag.note,
        }

    def cmd_amplitude(self) -> None:
        lim = x_limit(self.spec)
        if not lim.is_finite:
            self.summary["amplitude"] = {"note": "sequence limit not finite; skipped"}
            return
        lo, hi = self.cfg.amplitude_window
        estimates = []
        rows = []
        from .asymptotics import rescaled_phi_window  # noqa: PLC0415
        import numpy as np  # noqa: PLC0415
        for x in self.cfg.amplitude_points:
            est = amplitude_extract(self.spec, x, (lo, hi))
            estimates.append({
                "x": x, "sine_fit": est.sine_fit_amplitude,
                "envelope": est.envelope_amplitude, "spread": est.spread,
                "theta_fit": est.theta_fit, "inconclusive": est.inconclusive,
            })
            s = np.sqrt(1.0 - x * x) * rescaled_phi_window(self.spec, lo, min(lo + 64, hi), x)
            rows.extend((x, lo + i, float(v)) for i, v in enumerate(s))
        self._write_csv("amplitude_trace.csv", ["x", "n", "s_n"], rows)
        self.summary["amplitude"] = {"window": [lo, hi], "estimates": estimates}

    def cmd_cm_check(self) -> None:
        report = berg_duran_check(self.spec, self.cfg.n_max, self.cfg.order)
        self.verdicts["cm_check"] = report.hausdorff_ok and report.stieltjes_hankels_ok
        self.summary["cm_check"] = {
            "hausdorff_ok": report.hausdorff_ok,
            "stieltjes_hankels_ok": report.stieltjes_hankels_ok,
            "min_signed_difference": report.cm_report.min_signed_difference,
            "first_failure": list(report.cm_report.first_failure)
            if report.cm_report.first_failure else None,
        }

    def run(self) -> int:
        command = self.cfg.command
        handlers = {
            "moments": [self.cmd_moments],
            "hankel": [self.cmd_hankel],
            "polys": [self.cmd_polys],
            "zeros": [self.cmd_zeros],
            "bounds": [self.cmd_bounds],
            "verify-measure": [self.cmd_verify_measure],
            "nevai": [self.cmd_nevai],
            "amplitude": [self.cmd_amplitude],
            "cm-check": [self.cmd_cm_check],
        }
        if command == "all":
            steps = (self.cmd_moments, self.cmd_hankel, self.cmd_polys,
                     self.cmd_zeros, self.cmd_bounds, self.cmd_nevai,
                     self.cmd_cm_check)
            for step in steps:
                step()
            if default_measure_for(self.spec) is not None or self.cfg.measure:
                self.cmd_verify_measure()
        else:
            for step in handlers[command]:
                step()

        failed = [k for k, v in self.verdicts.items() if v is False]
        overall: Optional[bool] = None
        if self.verdicts:
            if failed:
                overall = False
            elif any(v is None for v in self.verdicts.values()):
                overall = None  # some verdict withheld (e.g. unconverged row)
            else:
                overall = True
        self.summary["verdicts"] = {k: _verdict_word(v) for k, v in self.verdicts.items()}
        payload = {
            "command": command,
            "config_sha256": self.cfg.sha256(),
            "family": self.spec.family,
            "results": self.summary,
            "verdict": _verdict_word(overall),
            "version": __version__,
        }
        path = self._path("summary.json")
        with open(path, "w", newline="\n") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True, default=_fmt)
            fh.write("\n")
        self.files.append(path)

        print(f"nlcpoly {__version__}  command={command}  family={self.spec.family}")
        for key, verdict in sorted(self.verdicts.items()):
            print(f"  {key}: {_verdict_word(verdict)}")
        for f in self.files:
            print(f"  wrote {f}")
        if failed:
            return 1
        return 0


def _verdict_word(v: Optional[bool]) -> Optional[str]:
    if v is None:
        return None
    return "PASS" if v else "FAIL"


def default_measure_for(spec: SequenceSpec) -> Optional[MeasureSpec]:
    """Catalog density paired with a family, when one exists."""
    p = spec.params
    try:
        if spec.family == "canonical":
            return get_measure("gaussian_radial")
        if spec.family == "su11" and p["j"] > Fraction(1, 2):
            return get_measure("disc_radial", j=p["j"])
        if spec.family == "barut_girardello":
            return get_measure("bessel_ladder_radial", j=p["j"])
        if spec.family == "ultraspherical":
            return get_measure("ultraspherical_even", nu=p["nu"])
        if spec.family == "jacobi_type":
            return get_measure("jacobi_even", alpha=p["alpha"], beta=p["beta"])
        if spec.family == "meixner_pollaczek_bessel":
            return get_measure("bessel_mp_even", mu=p["mu"], nu=p["nu"], beta=p["beta"])
        if spec.family == "bessel_k_exp":
            return get_measure("bessel_k_exp_even", mu=p["mu"], nu=p["nu"])
        if spec.family == "bessel_k_abs":
            return get_measure("bessel_k_abs_even", mu=p["mu"], nu=p["nu"])
    except (ValueError, KeyError):
        return None
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlcpoly",
        description="Moment, polynomial and spectral analyses for positive "
                    "coherent-state sequences.")
    parser.add_argument("config", help="path to the INI-style run config")
    parser.add_argument("--command", choices=COMMANDS, help="override [run] command")
    parser.add_argument("--n-max", type=int, help="override [run] n_max")
    parser.add_argument("--order", type=int, help="override [run] order")
    parser.add_argument("--tolerance", type=float, help="override [run] tolerance")
    parser.add_argument("--out-dir", help="override [output] dir")
    parser.add_argument("--prefix", help="override [output] prefix")
    parser.add_argument("--set", dest="sets", action="append", default=[],
                        metavar="SECTION.KEY=VALUE",
                        help="generic override, repeatable; flags win over the file")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = list(args.sets)
    if args.command:
        overrides.append(f"run.command={args.command}")
    if args.n_max is not None:
        overrides.append(f"run.n_max={args.n_max}")
    if args.order is not None:
        overrides.append(f"run.order={args.order}")
    if args.tolerance is not None:
        overrides.append(f"run.tolerance={args.tolerance!r}")
    if args.out_dir:
        overrides.append(f"output.dir={args.out_dir}")
    if args.prefix:
        overrides.append(f"output.prefix={args.prefix}")
    try:
        cfg = load_config(args.config, overrides)
        runner = _Runner(cfg)
    except (ConfigError, ParameterDomainError, KeyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        return runner.run()
    except (ConfigError, ParameterDomainError, SequenceRangeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
