"""Command-line front end: parameter sweeps, invariant suites, dilation demos.

Commands
--------
sweep        grid over theta, one CSV/JSON row per point
verify       run every property suite, emit a JSON report
dilate       build a dilation and emit the sampled evolution trace
equivalence  reconstruct a metric from canonical data and match the family form

Exit codes: 0 success, 1 invariant/pattern failure, 2 invalid input,
3 I/O error, 4 infeasible physics (non-positive metric).

Flags override values from an optional ``--config`` key=value file; unknown
config keys are hard errors.  Relative output paths resolve against
``$PTMETRIC_OUTPUT_DIR`` when it is set.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from .canonical import ep_equivalence_check, equivalence_check
from .dilation import assemble_dilated, evolve_and_compare, tau_from_metric
from .errors import (
    InvalidParameterError,
    NotInvertibleError,
    NotPositiveError,
    PtError,
)
from .measures import delta1, delta2_lower_bound, dilation_efficiency
from .metric import Definiteness, MetricFamilyParams, family_metric
from .model import DEFAULT_EP_TOL, Phase, PtParams, build_hamiltonian, classify_phase
from .verify import INVARIANT_NAMES, run_all

ENV_OUTPUT_DIR = "PTMETRIC_OUTPUT_DIR"

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_INVALID = 2
EXIT_IO = 3
EXIT_INFEASIBLE = 4

SWEEP_FIELDS = (
    "theta", "lambda_plus", "lambda_minus", "eta_eig_min", "eta_eig_max",
    "definiteness", "delta1_exact", "delta1_bound", "p_minus", "product_ed1",
    "e_d", "delta2_bound", "phase",
)

TRACE_FIELDS = (
    "t",
    "phi1_re", "phi1_im", "phi2_re", "phi2_im",
    "phi3_re", "phi3_im", "phi4_re", "phi4_im",
    "ref1_re", "ref1_im", "ref2_re", "ref2_im",
    "deviation",
)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _resolve_output(path):
    if path is None:
        return None
    base = os.environ.get(ENV_OUTPUT_DIR)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def _emit(path, text: str) -> None:
    resolved = _resolve_output(path)
    if resolved is None:
        sys.stdout.write(text)
    else:
        with open(resolved, "w", encoding="utf-8") as fh:
            fh.write(text)


def _rows_to_csv(fields, rows) -> str:
    lines = [",".join(fields)]
    lines.extend(",".join(_fmt(row[f]) for f in fields) for row in rows)
    return "\n".join(lines) + "\n"


def _rows_to_json(fields, rows) -> str:
    ordered = [{f: row[f] for f in fields} for row in rows]
    return json.dumps(ordered, indent=2) + "\n"


def _load_config(path, allowed) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise InvalidParameterError(
                    f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            key = key.strip().replace("-", "_")
            if key not in allowed:
                raise InvalidParameterError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = value.strip()
    return values


def _merge_config(args, option_types) -> None:
    """Fill argparse Namespace fields that were left unset.

    Priority: explicit flag > config file entry > built-in default.  The
    parser leaves every option at None so explicit flags are detectable.
    """
    file_values = {}
    if args.config is not None:
        file_values = _load_config(args.config, set(option_types))
    for key, (conv, default) in option_types.items():
        if getattr(args, key) is not None:
            continue
        if key in file_values:
            try:
                setattr(args, key, conv(file_values[key]))
            except ValueError:
                raise InvalidParameterError(
                    f"config value for {key!r} is not a valid "
                    f"{conv.__name__}: {file_values[key]!r}") from None
        else:
            setattr(args, key, default)


def _parse_complex_pair(text: str) -> np.ndarray:
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidParameterError(
            f"expected two comma-separated complex components, got {text!r}")
    try:
        return np.array([complex(p.strip()) for p in parts], dtype=complex)
    except ValueError:
        raise InvalidParameterError(f"cannot parse complex pair {text!r}") from None


def _check_format(fmt: str) -> str:
    if fmt not in ("csv", "json"):
        raise InvalidParameterError(f"format must be csv or json, got {fmt!r}")
    return fmt


# per-command option tables: name -> (converter, default)
SWEEP_OPTS = {
    "e0": (float, 0.0),
    "s": (float, 1.0),
    "theta_min": (float, -math.pi),
    "theta_max": (float, math.pi),
    "steps": (int, 721),
    "a": (float, 0.0),
    "eta11": (float, 2.0),
    "ep_a": (float, 1.0),
    "ep_eta11": (float, None),
    "margin": (float, 1.0),
    "seed": (int, 1234),
    "format": (str, "csv"),
    "output": (str, None),
}

DILATE_OPTS = {
    "e0": (float, 0.0),
    "s": (float, 1.0),
    "theta": (float, math.pi / 6),
    "a": (float, 0.0),
    "eta11": (float, 2.0),
    "margin": (float, 1.0),
    "psi0": (str, "1,0"),
    "t_max": (float, 10.0),
    "steps": (int, 201),
    "seed": (int, 1234),
    "format": (str, "csv"),
    "output": (str, None),
}

EQUIV_OPTS = {
    "e0": (float, 0.0),
    "s": (float, 1.0),
    "theta": (float, math.pi / 3),
    "d11": (float, 1.0),
    "d22": (float, 2.0),
    "d12_imag": (float, 1.0),
    "seed": (int, 1234),
    "format": (str, "json"),
    "output": (str, None),
}

VERIFY_OPTS = {
    "seed": (int, 1234),
    "trials": (int, 10000),
    "self_test_corrupt": (str, None),
    "format": (str, "json"),
    "output": (str, None),
}


def _sweep_rows(args) -> list:
    unbroken = MetricFamilyParams(args.eta11, args.a)
    ep_eta11 = args.ep_eta11 if args.ep_eta11 is not None else args.eta11
    ep_ref = MetricFamilyParams(ep_eta11, args.ep_a)
    thetas = np.linspace(args.theta_min, args.theta_max, args.steps)
    rows = []
    for th in thetas:
        th = float(th)
        params = PtParams(args.e0, args.s, th)
        phase = classify_phase(params).phase
        metric = family_metric(th, unbroken)
        ct = math.cos(params.theta)
        row = dict.fromkeys(SWEEP_FIELDS)
        row["theta"] = th
        row["lambda_plus"] = args.e0 + args.s * ct
        row["lambda_minus"] = args.e0 - args.s * ct
        row["eta_eig_min"] = metric.eig_min
        row["eta_eig_max"] = metric.eig_max
        row["definiteness"] = metric.definiteness.value
        row["phase"] = phase.value
        if phase is Phase.UNBROKEN:
            row["delta2_bound"] = delta2_lower_bound(th, th - math.pi)
            if metric.definiteness is Definiteness.POSITIVE_DEFINITE:
                rep = delta1(th, unbroken, ep_ref)
                row["delta1_exact"] = rep.delta1_exact
                row["delta1_bound"] = rep.delta1_lower_bound
                row["p_minus"] = rep.p_minus
                row["product_ed1"] = rep.product
                scaled, _ = tau_from_metric(metric, args.margin)
                row["e_d"] = dilation_efficiency(scaled)
        rows.append(row)
    return rows


def _cmd_sweep(args) -> int:
    _merge_config(args, SWEEP_OPTS)
    _check_format(args.format)
    if not args.theta_min < args.theta_max:
        raise InvalidParameterError("theta_min must be less than theta_max")
    if args.steps < 2:
        raise InvalidParameterError("steps must be at least 2")
    if args.margin <= 0:
        raise InvalidParameterError("margin must be positive")
    if args.ep_a == 0:
        raise InvalidParameterError("ep_a must be nonzero (invertible EP reference)")
    MetricFamilyParams(args.eta11, args.a)  # validates eta11 != 0
    PtParams(args.e0, args.s, 0.0)          # validates s != 0
    rows = _sweep_rows(args)
    if args.format == "csv":
        text = _rows_to_csv(SWEEP_FIELDS, rows)
    else:
        text = _rows_to_json(SWEEP_FIELDS, rows)
    _emit(args.output, text)
    return EXIT_OK


def _cmd_verify(args) -> int:
    _merge_config(args, VERIFY_OPTS)
    if args.format != "json":
        raise InvalidParameterError("verify reports are JSON only")
    if args.trials < 1:
        raise InvalidParameterError("trials must be at least 1")
    results = run_all(seed=args.seed, trials=args.trials,
                      corrupt=args.self_test_corrupt)
    report = {
        "seed": args.seed,
        "trials": args.trials,
        "all_passed": all(r.passed for r in results),
        "invariants": [r.to_json() for r in results],
    }
    _emit(args.output, json.dumps(report, indent=2) + "\n")
    if not report["all_passed"]:
        failed = [r.name for r in results if not r.passed]
        print(f"FAILED invariants: {', '.join(failed)}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def _cmd_dilate(args) -> int:
    _merge_config(args, DILATE_OPTS)
    _check_format(args.format)
    psi0 = _parse_complex_pair(args.psi0)
    if args.steps < 2:
        raise InvalidParameterError("steps must be at least 2")
    if args.t_max <= 0:
        raise InvalidParameterError("t_max must be positive")
    params = PtParams(args.e0, args.s, args.theta)
    if classify_phase(params).phase is Phase.EXCEPTIONAL_POINT:
        raise NotPositiveError(
            "no static dilation exists at the exceptional point")
    metric = family_metric(args.theta, MetricFamilyParams(args.eta11, args.a))
    scaled, tau = tau_from_metric(metric, args.margin)
    bundle = assemble_dilated(build_hamiltonian(params), scaled, tau)
    trace = evolve_and_compare(bundle, psi0, args.t_max, args.steps)
    e_d = dilation_efficiency(scaled)

    rows = []
    full = np.hstack([trace.dilated_substate, trace.dilated_complement])
    per_t = np.linalg.norm(trace.dilated_substate - trace.reference_state, axis=1)
    for i, t in enumerate(trace.times):
        row = {"t": float(t), "deviation": float(per_t[i])}
        for j in range(4):
            row[f"phi{j + 1}_re"] = float(full[i, j].real)
            row[f"phi{j + 1}_im"] = float(full[i, j].imag)
        for j in range(2):
            row[f"ref{j + 1}_re"] = float(trace.reference_state[i, j].real)
            row[f"ref{j + 1}_im"] = float(trace.reference_state[i, j].imag)
        rows.append(row)

    if args.format == "csv":
        text = _rows_to_csv(TRACE_FIELDS, rows)
    else:
        payload = {
            "e_d": e_d,
            "h_hat_re": bundle.h_hat.real.tolist(),
            "h_hat_im": bundle.h_hat.imag.tolist(),
            "trace": [{f: row[f] for f in TRACE_FIELDS} for row in rows],
        }
        text = json.dumps(payload, indent=2) + "\n"
    _emit(args.output, text)
    print(
        f"dilate: theta={params.theta:.10g} e_d={e_d:.10g} "
        f"max_deviation={trace.deviation:.3e}",
        file=sys.stderr,
    )
    for i in range(4):
        entries = " ".join(
            f"{bundle.h_hat[i, j].real:+.10g}{bundle.h_hat[i, j].imag:+.10g}j"
            for j in range(4))
        print(f"h_hat[{i}] {entries}", file=sys.stderr)
    return EXIT_OK


def _cmd_equivalence(args) -> int:
    _merge_config(args, EQUIV_OPTS)
    if args.format != "json":
        raise InvalidParameterError("equivalence reports are JSON only")
    params = PtParams(args.e0, args.s, args.theta)
    if abs(math.cos(params.theta)) <= DEFAULT_EP_TOL:
        branch = 1 if params.theta > 0 else -1
        rep = ep_equivalence_check(args.d12_imag, args.d22, branch=branch,
                                   e0=args.e0, s=args.s)
        kind = "exceptional"
    else:
        rep = equivalence_check(args.theta, args.d11, args.d22,
                                e0=args.e0, s=args.s)
        kind = "generic"
    payload = {
        "branch": kind,
        "theta": rep.theta,
        "eta11": rep.eta11,
        "a": None if rep.singular else rep.a,
        "singular_match": rep.singular,
        "residual": None if rep.singular else rep.residual,
        "eta_re": rep.eta.real.tolist(),
        "eta_im": rep.eta.imag.tolist(),
    }
    _emit(args.output, json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def _add_options(parser, opts) -> None:
    for key, (conv, _) in opts.items():
        flag = "--" + key.replace("_", "-")
        if key == "self_test_corrupt":
            parser.add_argument(flag, type=str, choices=INVARIANT_NAMES,
                                help=argparse.SUPPRESS, default=None)
        elif key == "format":
            parser.add_argument(flag, type=str, choices=("csv", "json"),
                                default=None, help="output format")
        else:
            parser.add_argument(flag, type=conv, default=None,
                                help=f"{key} (default from config or built-in)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptmetric",
        description="metric operators, difference measures and dilations "
                    "for the two-level family",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, opts, fn in (
        ("sweep", SWEEP_OPTS, _cmd_sweep),
        ("verify", VERIFY_OPTS, _cmd_verify),
        ("dilate", DILATE_OPTS, _cmd_dilate),
        ("equivalence", EQUIV_OPTS, _cmd_equivalence),
    ):
        p = sub.add_parser(name)
        p.add_argument("--config", type=str, default=None,
                       help="key=value file; flags override it")
        _add_options(p, opts)
        p.set_defaults(func=fn)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except InvalidParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (NotPositiveError, NotInvertibleError) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except PtError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
