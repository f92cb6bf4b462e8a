"""Batch runner: ``fwcheck run --scenario FILE [--out DIR] [--tol-override k=v]...
[--tables] [--full-spectrum]``.

Exit status is 0 when every transform with a declared ``expect_fw`` gets that
verdict, 1 on any mismatch and 2 on configuration or I/O errors.  Diagnostics
go to stderr.
"""

import argparse
import csv
import os
import sys
from dataclasses import replace

import numpy as np

from . import transforms as tf
from .clifford import upper, lower
from .hamiltonians import ConfigurationError, build_susy
from .scenario import ScenarioError, load_scenario, scenario_to_dict
from .spectra import (
    POSITIVE,
    ZeroModeError,
    eigensolve,
    eigensystem,
    gravity_lower_from_upper,
    sign_operator,
)
from .verify import Tolerances, assemble_report, sufficiency_residual

EXIT_OK, EXIT_MISMATCH, EXIT_CONFIG = 0, 1, 2


def build_transform(kind, case, H=None, sign=None):
    """The :class:`~fwcheck.transforms.UnitaryMap` named ``kind`` for ``case``.

    ``sign`` optionally supplies the precomputed sign operator of ``H``.
    """
    H = case.hamiltonian if H is None else H
    m, spec, f = case.m, case.spec, case.fields
    if kind == "fw":
        return tf.u_free_fw(m, spec)
    if kind == "eriksen":
        return tf.u_eriksen(H, sign=sign)
    if kind == "ek":
        return tf.u_eriksen_kolsrud(H, sign=sign)
    if kind == "ek_corrected":
        if case.kind != "free":
            raise ConfigurationError("the E-K to FW corrector is defined for the free case only")
        ek = tf.u_eriksen_kolsrud(H, sign=sign)
        return tf.ek_to_fw_corrector(m, spec).compose(ek, kind="ek_corrected")
    if kind.startswith("su2_"):
        if case.kind == "susy":
            pair = case.susy_pair
        elif case.kind == "free":
            pair = build_susy(m, spec)[1]
        else:
            raise ConfigurationError(f"{kind} needs a susy (or free) case, got {case.kind}")
        sign = "+" if kind == "su2_plus" else "-"
        return tf.u_su2(H, pair, m, sign, keep_angle=(kind == "su2_minus_literal"))
    if kind == "closed_form":
        return tf.case_closed_form(H)
    ones = np.ones(spec.n_sites)
    if kind == "fw_perturbative":
        if case.kind in ("electric", "free"):
            A0 = f.get("A0", np.zeros(spec.n_sites))
            return tf.u_perturbative_electric(m, case.e, A0, spec)[0]
        if case.kind == "gravity":
            return tf.u_perturbative_gravity(m, f["V"], f["W"], spec)[0]
        raise ConfigurationError(f"no perturbative FW series for the {case.kind} case")
    if kind == "ek_perturbative":
        if case.kind == "gravity":
            return tf.u_ek_perturbative_gravity(m, f["V"], f["W"], spec)[0]
        if case.kind == "free":
            return tf.u_ek_perturbative_gravity(m, ones, ones, spec)[0]
        raise ConfigurationError(f"no perturbative E-K map for the {case.kind} case")
    raise ConfigurationError(f"unknown transform {kind!r}")


def build_report(scenario, full_spectrum=None):
    case = scenario.build_case()
    H = case.hamiltonian
    w, v = eigensystem(H)
    solutions = eigensolve(H, eig=(w, v))
    lam = sign_operator(H, eig=(w, v))
    eriksen = tf.u_eriksen(H, sign=lam)
    entries = []
    for t in scenario.transforms:
        tol = scenario.tolerances.with_overrides(**t.tolerances)
        try:
            U = eriksen if t.kind == "eriksen" else build_transform(t.kind, case, H, sign=lam)
        except (ConfigurationError, ArithmeticError) as exc:
            raise type(exc)(f"transform {t.kind!r}: {exc}") from exc
        entries.append((t.kind, U, tol))
    full = scenario.full_spectrum if full_spectrum is None else full_spectrum
    return assemble_report(scenario_to_dict(scenario), H, entries, scenario.tolerances,
                           scenario.states_per_branch, full, solutions, eriksen)


def verdict_mismatches(scenario, report):
    out = []
    for t, r in zip(scenario.transforms, report.per_transform):
        if t.expect_fw is not None and t.expect_fw != r.is_fw:
            out.append((t.kind, t.expect_fw, r.is_fw))
    return out


# -- tables ---------------------------------------------------------------------------

def sweep_values(scenario):
    """``(amplitudes, residuals)`` for the scenario's amplitude sweep."""
    sw = scenario.sweep
    base = scenario.fields[sw.field]

    def measure(amplitude):
        case = scenario.with_field(sw.field, replace(base, amplitude=amplitude)).build_case()
        H = case.hamiltonian
        positive = [s for s in eigensolve(H) if s.branch == POSITIVE]
        sol = positive[sw.state]
        if sw.measure == "reconstruction":
            approx = gravity_lower_from_upper(upper(sol.state), case, sol.branch)
            return float(np.linalg.norm(approx - lower(sol.state)) / np.linalg.norm(upper(sol.state)))
        U = build_transform(sw.transform, case, H)
        return float(getattr(sufficiency_residual(U, sol, H), sw.measure))

    baseline = measure(0.0) if sw.subtract_free else 0.0
    amps = np.array(sw.amplitudes, dtype=float)
    values = np.array([measure(a) - baseline for a in amps])
    return amps, values


def slope_fit(x, y):
    """Least-squares power law ``|y| ~ x^k``: returns ``(k, intercept, r_squared)``."""
    lx, ly = np.log(np.asarray(x, float)), np.log(np.abs(np.asarray(y, float)))
    k, c = np.polyfit(lx, ly, 1)
    resid = ly - (k * lx + c)
    total = ((ly - ly.mean()) ** 2).sum()
    r2 = 1.0 - (resid ** 2).sum() / total if total > 0 else 1.0
    return float(k), float(c), float(r2)


def _write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def emit_tables(scenario, report, out_dir):
    """Write CSV tables next to the report; returns the paths written.

    ``<name>.modes.csv``: kind, epsilon, branch, lower, match, fidelity per
    sampled state.  With a sweep, ``<name>.sweep.csv`` (lambda, residual) and
    ``<name>.slope.csv`` (exponent, intercept, r_squared, points).
    """
    if not scenario.transforms:
        return []
    written = []
    path = os.path.join(out_dir, f"{scenario.name}.modes.csv")
    rows = [(t.kind, repr(s.epsilon), s.branch, repr(s.lower), repr(s.match), repr(s.fidelity))
            for t in report.per_transform for s in t.states]
    _write_csv(path, ["kind", "epsilon", "branch", "lower", "match", "fidelity"], rows)
    written.append(path)
    if scenario.sweep is not None:
        amps, values = sweep_values(scenario)
        path = os.path.join(out_dir, f"{scenario.name}.sweep.csv")
        _write_csv(path, ["lambda", "residual"], [(repr(float(a)), repr(float(v))) for a, v in zip(amps, values)])
        written.append(path)
        k, c, r2 = slope_fit(amps, values)
        path = os.path.join(out_dir, f"{scenario.name}.slope.csv")
        _write_csv(path, ["exponent", "intercept", "r_squared", "points"], [(repr(k), repr(c), repr(r2), len(amps))])
        written.append(path)
    return written


# -- entry points ---------------------------------------------------------------------

def run(scenario, out_dir=".", tables=False, full_spectrum=None, stderr=None):
    """Run a parsed scenario, write ``<out_dir>/<name>.report.json`` and return the exit code."""
    stderr = stderr or sys.stderr
    try:
        report = build_report(scenario, full_spectrum)
    except (ConfigurationError, ZeroModeError, ArithmeticError) as exc:
        print(f"configuration error: {exc}", file=stderr)
        return EXIT_CONFIG
    try:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, f"{scenario.name}.report.json"), "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
        if tables:
            emit_tables(scenario, report, out_dir)
    except OSError as exc:
        print(f"output error: {exc}", file=stderr)
        return EXIT_CONFIG
    except (ConfigurationError, ArithmeticError) as exc:
        print(f"configuration error while writing tables: {exc}", file=stderr)
        return EXIT_CONFIG
    bad = verdict_mismatches(scenario, report)
    for kind, expected, got in bad:
        print(f"verdict mismatch: {kind} expected is_fw={expected}, measured is_fw={got}", file=stderr)
    return EXIT_MISMATCH if bad else EXIT_OK


def _parse_override(text):
    key, sep, value = text.partition("=")
    if not sep:
        raise ValueError(f"expected key=value, got {text!r}")
    return key.strip(), float(value)


def make_parser():
    parser = argparse.ArgumentParser(prog="fwcheck", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    r = sub.add_parser("run", help="run one scenario file")
    r.add_argument("--scenario", required=True, help="path to the scenario JSON file")
    r.add_argument("--out", default=".", help="output directory (default: current directory)")
    r.add_argument("--tol-override", action="append", default=[], metavar="KEY=VALUE",
                   help="override a global tolerance, e.g. match_tol=1e-8 (repeatable)")
    r.add_argument("--tables", action="store_true", help="also write CSV tables")
    r.add_argument("--full-spectrum", action="store_true", help="check every eigenstate, not a sample")
    return parser


def main(argv=None, stderr=None):
    stderr = stderr or sys.stderr
    args = make_parser().parse_args(argv)
    try:
        scenario = load_scenario(args.scenario)
    except ScenarioError as exc:
        for path, msg in exc.errors:
            print(f"scenario error at {path}: {msg}", file=stderr)
        return EXIT_CONFIG
    except (OSError, UnicodeDecodeError) as exc:
        print(f"cannot read scenario: {exc}", file=stderr)
        return EXIT_CONFIG
    try:
        overrides = dict(_parse_override(t) for t in args.tol_override)
        tol = scenario.tolerances.with_overrides(**overrides)
    except ValueError as exc:
        print(f"bad --tol-override: {exc}", file=stderr)
        return EXIT_CONFIG
    scenario = replace(scenario, tolerances=tol)
    full = True if args.full_spectrum else None
    return run(scenario, args.out, args.tables, full, stderr)


if __name__ == "__main__":
    sys.exit(main())


__all__ = ["build_transform", "build_report", "run", "emit_tables", "sweep_values", "slope_fit",
           "main", "make_parser", "Tolerances"]
