"""Command-line front end: design optimization, integral checks, scaling, simulation.

Every run emits a manifest (command, parameters, seed, version, timestamp)
alongside the result, as JSON (one object per run) or CSV (manifest in
leading comment lines).  Exit codes: 0 success/pass, 1 usage error,
2 verification failure.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .phase import asymptotic_error, bdm_input, min_covariant_error, optimal_input
from .simulate import SimConfig, simulate
from .su2_design import (
    asymptotic_error_su2,
    design_optimal,
    self_entanglement_feasible,
)
from .integrals import (
    phase_error_kernel,
    su2_error_kernel,
    su2_single_irrep_integral,
)

# Fixed default so bare invocations are reproducible; override with --seed.
DEFAULT_SEED = 20040725

OUTPUT_DIR_ENV = "COVEST_OUTPUT_DIR"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAIL = 2

SCALING_HEADER = "n,phase_exact,phase_bdm,phase_asymptote,su2_error,su2_asymptote"


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors; the contract here is 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _manifest(command, parameters, seed):
    return {
        "command": command,
        "parameters": parameters,
        "seed": seed,
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }


def _resolve_output(path):
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _emit(text, output):
    if output is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(_resolve_output(output), "w") as fh:
            fh.write(text)


def _render_csv(manifest, header, rows):
    buf = io.StringIO()
    for key in ("command", "seed", "version", "timestamp"):
        buf.write(f"# {key}={manifest[key]}\n")
    buf.write(f"# parameters={json.dumps(manifest['parameters'], sort_keys=True)}\n")
    buf.write(header + "\r\n")
    writer = csv.writer(buf)
    writer.writerows(rows)
    return buf.getvalue()


def _render(manifest, result, fmt, header=None, rows=None):
    if fmt == "json":
        return json.dumps({"manifest": manifest, "result": result}, indent=2)
    return _render_csv(manifest, header, rows)


def cmd_phase_opt(args):
    n, method = args.n, args.method
    if method == "bdm":
        if n < 1:
            raise _UsageError("method 'bdm' requires n >= 1")
        state = bdm_input(n)
        error = min_covariant_error(state)
    else:
        if n < 0:
            raise _UsageError("n must be >= 0")
        design = optimal_input(n)
        state, error = design.input, design.error
    amps = [float(a.real) for a in state.amplitudes]
    asym = asymptotic_error(n) if n >= 1 else None
    ratio = error * 4.0 * n * n / math.pi**2 if n >= 1 else None
    manifest = _manifest("phase-opt", {"n": n, "method": method, "format": args.format}, None)
    result = {
        "n": n,
        "method": method,
        "amplitudes": amps,
        "error": error,
        "asymptote": asym,
        "ratio": ratio,
    }
    rows = [
        [n, method, k, amp, error, asym, ratio] for k, amp in enumerate(amps)
    ]
    text = _render(manifest, result, args.format,
                   header="n,method,k,amplitude,error,asymptote,ratio", rows=rows)
    _emit(text, args.output)
    return EXIT_OK


def cmd_su2_design(args):
    n, mode = args.n, args.mode
    try:
        report = self_entanglement_feasible(n)
        design = design_optimal(n, mode, rng=np.random.default_rng(args.seed))
    except ValueError as exc:
        raise _UsageError(str(exc))
    spectrum = {b.dim: b for b in report.blocks}
    blocks = [
        {
            "dim": dim,
            "multiplicity": spectrum[dim].multiplicity,
            "amplitude": float(amp),
            "feasible": spectrum[dim].feasible,
        }
        for dim, amp in zip(design.blocks.block_dims, design.blocks.amplitudes)
    ]
    asym = asymptotic_error_su2(n)
    manifest = _manifest(
        "su2-design", {"n": n, "mode": mode, "format": args.format}, args.seed
    )
    result = {
        "n": n,
        "mode": mode,
        "error": design.error,
        "asymptote": asym,
        "ratio": design.error * n * n / math.pi**2,
        "seed_matrix": "rank-one optimal seed built from the amplitude phases",
        "blocks": blocks,
        "feasibility": {
            "usable_dims": list(report.usable_dims),
            "achievable_error": report.achievable_error,
        },
    }
    rows = [
        [n, mode, b["dim"], b["multiplicity"], b["amplitude"], b["feasible"],
         design.error, asym]
        for b in blocks
    ]
    text = _render(manifest, result, args.format,
                   header="n,mode,dim,multiplicity,amplitude,feasible,error,asymptote",
                   rows=rows)
    _emit(text, args.output)
    return EXIT_OK


def _verify_rows(kmax, tol):
    dev_single = max(
        abs(su2_single_irrep_integral(j) - (0.75 if j == 1 else 0.5))
        for j in range(1, max(2, 2 * kmax) + 1)
    )
    def delta(k, l):
        if k == l:
            return 0.5
        if abs(k - l) == 1:
            return -0.25
        return 0.0
    dev_su2 = 0.0
    dev_match = 0.0
    for k in range(1, kmax + 1):
        for l in range(1, kmax + 1):
            s = su2_error_kernel(k, l)
            p = phase_error_kernel(k, l)
            dev_su2 = max(dev_su2, abs(s - delta(k, l)))
            dev_match = max(dev_match, abs(s - p))
    dev_phase = max(
        abs(phase_error_kernel(k, l) - delta(k, l))
        for k in range(0, kmax + 1)
        for l in range(0, kmax + 1)
    )
    return [
        ("single-irrep integral", dev_single),
        ("su2 character kernel", dev_su2),
        ("u1 phase kernel", dev_phase),
        ("kernel equivalence", dev_match),
    ]


def cmd_verify_integrals(args):
    if args.kmax < 1:
        raise _UsageError("kmax must be >= 1")
    if args.tol <= 0.0:
        raise _UsageError("tol must be positive")
    checks = _verify_rows(args.kmax, args.tol)
    all_pass = all(dev <= args.tol for _, dev in checks)
    manifest = _manifest(
        "verify-integrals",
        {"kmax": args.kmax, "tol": args.tol, "format": args.format},
        None,
    )
    result = {
        "pass": all_pass,
        "identities": [
            {"identity": name, "worst_abs_deviation": dev, "pass": dev <= args.tol}
            for name, dev in checks
        ],
    }
    rows = [[name, dev, dev <= args.tol] for name, dev in checks]
    text = _render(manifest, result, args.format,
                   header="identity,worst_abs_deviation,pass", rows=rows)
    _emit(text, args.output)
    return EXIT_OK if all_pass else EXIT_VERIFY_FAIL


def cmd_simulate(args):
    if args.trials < 2:
        raise _UsageError("trials must be >= 2")
    try:
        config = SimConfig(args.protocol, args.n, args.trials, args.seed,
                           args.grid_size)
        if args.protocol == "phase":
            design = optimal_input(args.n)
        else:
            if args.n % 2 == 0:
                raise ValueError("su2 simulation requires odd n")
            design = design_optimal(args.n, "external")
        result_obj = simulate(config, design, workers=args.workers)
    except (ValueError, TypeError) as exc:
        raise _UsageError(str(exc))
    manifest = _manifest(
        "simulate",
        {
            "protocol": args.protocol,
            "n": args.n,
            "trials": args.trials,
            "grid_size": args.grid_size,
            "workers": args.workers,
            "format": args.format,
        },
        args.seed,
    )
    passed = abs(result_obj.z_score) < 4.0
    result = {
        "empirical_mean_error": result_obj.empirical_mean_error,
        "standard_error": result_obj.standard_error,
        "closed_form": result_obj.closed_form,
        "z_score": result_obj.z_score,
        "pass": passed,
    }
    rows = [[
        args.protocol, args.n, args.trials,
        result_obj.empirical_mean_error, result_obj.standard_error,
        result_obj.closed_form, result_obj.z_score, passed,
    ]]
    text = _render(
        manifest, result, args.format,
        header="protocol,n,trials,empirical_mean_error,standard_error,closed_form,z_score,pass",
        rows=rows)
    _emit(text, args.output)
    return EXIT_OK if passed else EXIT_VERIFY_FAIL


def cmd_scaling(args):
    if args.max_n < 2:
        raise _UsageError("max-n must be >= 2")
    if args.step < 1:
        raise _UsageError("step must be >= 1")
    rng = np.random.default_rng(args.seed)
    rows = []
    for n in range(args.step, args.max_n + 1, args.step):
        phase_exact = optimal_input(n).error
        phase_bdm = min_covariant_error(bdm_input(n))
        su2_err = design_optimal(n, "external", rng=rng).error
        rows.append([
            n, phase_exact, phase_bdm, asymptotic_error(n),
            su2_err, asymptotic_error_su2(n),
        ])
    manifest = _manifest(
        "scaling",
        {"max_n": args.max_n, "step": args.step, "format": args.format},
        args.seed,
    )
    keys = SCALING_HEADER.split(",")
    result = {"rows": [dict(zip(keys, row)) for row in rows]}
    text = _render(manifest, result, args.format, header=SCALING_HEADER, rows=rows)
    _emit(text, args.output)
    return EXIT_OK


class _UsageError(Exception):
    pass


def _build_parser():
    parser = _Parser(
        prog="covest",
        description="Covariant phase and SU(2) estimation designs, "
                    "character-integral checks, and Monte Carlo runs.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_common(p, seeded=False):
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--output", default=None,
                       help=f"output file; relative paths resolve against ${OUTPUT_DIR_ENV}")
        if seeded:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("phase-opt", help="optimal or sine-profile phase design")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["exact", "bdm"], default="exact")
    add_common(p)
    p.set_defaults(func=cmd_phase_opt)

    p = sub.add_parser("su2-design", help="optimal SU(2) estimation design")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["external", "self-entangled"],
                   default="external")
    add_common(p, seeded=True)
    p.set_defaults(func=cmd_su2_design)

    p = sub.add_parser("verify-integrals", help="check the character-integral identities")
    p.add_argument("--kmax", type=int, default=30)
    p.add_argument("--tol", type=float, default=1e-10)
    add_common(p)
    p.set_defaults(func=cmd_verify_integrals)

    p = sub.add_parser("simulate", help="Monte Carlo run against the closed form")
    p.add_argument("--protocol", choices=["phase", "su2"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--grid-size", type=int, default=4096)
    p.add_argument("--workers", type=int, default=1)
    add_common(p, seeded=True)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("scaling", help="error-scaling table for external plotting")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--step", type=int, default=1)
    add_common(p, seeded=True)
    p.set_defaults(func=cmd_scaling)

    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"covest: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
