"""Command-line front end.

Subcommands:

    eval       B(a; b | z), its log, and the scaled value
    curve      relative error vs order N for both engines, one row per order
    dist       pdf | cdf | moment | posterior | sample
    verify     engine vs oracle plus the five identity residuals

Every command prints one JSON record with sorted keys, so identical flags
(and seed) give byte-identical output; `--format csv` switches curve and
sample to delimited rows.  Exit codes: 0 success, 2 validation error,
3 verify failure, 4 PrecisionWarning escalated by --strict.  The env var
ORDERED_BETA_PRECISION ("machine-double" or "extended") sets the default
precision mode; the extended default also flips the default method to
taylor, the only engine with an extended path.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
import warnings

from .distribution import ObservationBatch, OrderedBetaDist
from .errors import DimensionTooLarge, OrderedBetaError, PrecisionWarning
from .evaluate import DEFAULT_METHOD, identity_residuals, incomplete_beta
from .oracle import oracle_montecarlo, oracle_quadrature
from .params import validate_params
from .taylor import PrecisionConfig

__all__ = ["main", "run"]

SCHEMA_VERSION = 1
_ENV_PRECISION = "ORDERED_BETA_PRECISION"


def _float_list(text: str) -> list:
    try:
        return [float(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated number list: {text!r}")


def _int_list(text: str) -> list:
    try:
        return [int(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")


def _env_precision() -> str:
    mode = os.environ.get(_ENV_PRECISION, "machine-double")
    if mode not in ("machine-double", "extended"):
        raise OrderedBetaError(
            f"{_ENV_PRECISION} must be 'machine-double' or 'extended', got {mode!r}"
        )
    return mode


def _resolve_method_precision(args) -> tuple:
    mode = args.precision or _env_precision()
    method = args.method or ("taylor" if mode == "extended" else DEFAULT_METHOD)
    prec = PrecisionConfig.extended(args.digits) if mode == "extended" else PrecisionConfig.double()
    return method, prec


def _record(command: str, inputs: dict, results: dict, method: str, N: int, precision: str) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "method": method,
        "N": N,
        "precision": precision,
    }


def _clean(obj):
    # json.dumps would emit the nonstandard tokens Infinity/NaN; strict JSON
    # consumers get null instead (the paired fields still carry the story,
    # e.g. value = 0.0 alongside a null log_value).
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _emit_json(record: dict, out) -> None:
    out.write(json.dumps(_clean(record), sort_keys=True))
    out.write("\n")


def _emit_csv(header: list, rows: list, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])


# -- subcommand bodies --------------------------------------------------------


def cmd_eval(args, out) -> int:
    p = validate_params(args.a, args.b)
    method, prec = _resolve_method_precision(args)
    t0 = time.perf_counter()
    res = incomplete_beta(p, args.z, method=method, N=args.n, precision=prec)
    dt = time.perf_counter() - t0
    rec = _record(
        "eval",
        {"a": args.a, "b": args.b, "z": args.z},
        {"value": res.value, "log_value": res.log_value, "scaled_value": res.scaled_value},
        res.method,
        res.N_used,
        prec.mode,
    )
    if args.timing:
        rec["timing_s"] = dt
    _emit_json(rec, out)
    return 0


def _curve_rows(p, z: float, orders: list, ref: float) -> list:
    rows = []
    scale = abs(ref) if ref != 0.0 else 1.0
    for N in orders:
        vt = incomplete_beta(p, z, method="taylor", N=N).value
        vc = incomplete_beta(p, z, method="chebyshev", N=N).value
        rows.append((N, abs(vt - ref) / scale, abs(vc - ref) / scale))
    return rows


def cmd_curve(args, out) -> int:
    p = validate_params(args.a, args.b)
    if args.n_min < 0 or args.n_max < args.n_min or args.n_step < 1:
        raise OrderedBetaError(
            f"bad order range {args.n_min}..{args.n_max} step {args.n_step}"
        )
    orders = list(range(args.n_min, args.n_max + 1, args.n_step))
    t0 = time.perf_counter()
    if args.ref is not None:
        ref = args.ref
    else:
        # reference from the stabler engine at a comfortably higher order
        ref = incomplete_beta(p, args.z, method="chebyshev", N=max(96, args.n_max + 16)).value
    rows = _curve_rows(p, args.z, orders, ref)
    dt = time.perf_counter() - t0
    plot_path = None
    if args.plot:
        from .plotting import error_curve_figure

        plot_path = error_curve_figure(rows, args.plot)
    if args.format == "csv":
        _emit_csv(["N", "err_taylor", "err_chebyshev"], rows, out)
        return 0
    rec = _record(
        "curve",
        {
            "a": args.a,
            "b": args.b,
            "z": args.z,
            "n_min": args.n_min,
            "n_max": args.n_max,
            "n_step": args.n_step,
            "ref": ref,
        },
        {"rows": [{"N": N, "err_taylor": et, "err_chebyshev": ec} for N, et, ec in rows]},
        "both",
        args.n_max,
        "machine-double",
    )
    if plot_path:
        rec["plot"] = plot_path
    if args.timing:
        rec["timing_s"] = dt
    _emit_json(rec, out)
    return 0


def _make_dist(args) -> OrderedBetaDist:
    method, prec = _resolve_method_precision(args)
    return OrderedBetaDist(args.a, args.b, method=method, N=args.n, precision=prec)


def cmd_dist_pdf(args, out) -> int:
    d = _make_dist(args)
    if args.k is not None:
        if len(args.x) != 1:
            raise OrderedBetaError("marginal pdf takes a single --x value with --k")
        val = d.marginal_pdf(args.k, args.x[0])
        inputs = {"a": args.a, "b": args.b, "k": args.k, "x": args.x[0]}
        results = {"marginal_pdf": val}
    else:
        lp = d.log_pdf(tuple(args.x))
        inputs = {"a": args.a, "b": args.b, "x": args.x}
        results = {"log_pdf": lp, "pdf": math.exp(lp) if lp > -math.inf else 0.0}
    rec = _record("dist.pdf", inputs, results, d.method, d.N, d.precision.mode)
    _emit_json(rec, out)
    return 0


def cmd_dist_cdf(args, out) -> int:
    d = _make_dist(args)
    cdf = d.marginal_cdf(args.k, args.z)
    sur = d.marginal_survival(args.k, args.z)
    rec = _record(
        "dist.cdf",
        {"a": args.a, "b": args.b, "k": args.k, "z": args.z},
        {"cdf": cdf, "survival": sur},
        d.method,
        d.N,
        d.precision.mode,
    )
    _emit_json(rec, out)
    return 0


def cmd_dist_moment(args, out) -> int:
    d = _make_dist(args)
    alpha = args.alpha if len(args.alpha) > 1 else (args.alpha[0] if args.alpha else 0.0)
    beta = args.beta if len(args.beta) > 1 else (args.beta[0] if args.beta else 0.0)
    val = d.mixed_moment(alpha, beta)
    rec = _record(
        "dist.moment",
        {"a": args.a, "b": args.b, "alpha": args.alpha, "beta": args.beta},
        {"moment": val},
        d.method,
        d.N,
        d.precision.mode,
    )
    _emit_json(rec, out)
    return 0


def cmd_dist_posterior(args, out) -> int:
    d = _make_dist(args)
    post = d.posterior_update(ObservationBatch(tuple(args.m), tuple(args.k)))
    rec = _record(
        "dist.posterior",
        {"a": args.a, "b": args.b, "m": args.m, "k": args.k},
        {"a": list(post.a), "b": list(post.b), "C": post.C},
        d.method,
        d.N,
        d.precision.mode,
    )
    _emit_json(rec, out)
    return 0


def cmd_dist_sample(args, out) -> int:
    d = _make_dist(args)
    batch = d.sample(args.count, seed=args.seed, method=args.sampler, burn_in=args.burn_in)
    arr = batch.array
    if args.format == "csv":
        header = [f"x{i + 1}" for i in range(d.n)]
        _emit_csv(header, [tuple(float(v) for v in row) for row in arr], out)
        return 0
    rec = _record(
        "dist.sample",
        {
            "a": args.a,
            "b": args.b,
            "count": args.count,
            "seed": args.seed,
            "sampler": args.sampler,
        },
        {
            "points": [[float(v) for v in row] for row in arr],
            "acceptance_rate": batch.acceptance_rate,
            "diagnostics": batch.diagnostics,
        },
        d.method,
        d.N,
        d.precision.mode,
    )
    _emit_json(rec, out)
    return 0


def cmd_verify(args, out) -> int:
    p = validate_params(args.a, args.b)
    method, prec = _resolve_method_precision(args)
    engine = incomplete_beta(p, args.z, method=method, N=args.n, precision=prec)
    oracle_kind = args.oracle
    if oracle_kind == "auto":
        oracle_kind = "quadrature" if p.n <= 4 else "montecarlo"
    if oracle_kind == "quadrature":
        if p.n > 4:
            raise DimensionTooLarge(f"quadrature oracle supports n <= 4, got n = {p.n}")
        est = oracle_quadrature(p, args.z, nodes=args.nodes)
        slack = max(est.error_bound, args.tol * max(abs(engine.value), abs(est.value)))
    else:
        est = oracle_montecarlo(p, args.z, samples=args.samples, seed=args.seed)
        slack = max(3.0 * est.stderr, args.tol * max(abs(engine.value), abs(est.value)))
    diff = abs(engine.value - est.value)
    # the residual identities split the interval at z, so endpoint requests
    # fall back to the canonical half point
    res_z = args.z if 0.0 < args.z < 1.0 else 0.5
    res = identity_residuals(p, res_z, method=method, N=args.n)
    checks = {
        "oracle_agreement": diff <= slack,
        "residuals_below_tol": res.max_residual <= args.tol,
    }
    passed = all(checks.values())
    rec = _record(
        "verify",
        {"a": args.a, "b": args.b, "z": args.z, "tol": args.tol, "oracle": oracle_kind},
        {
            "engine_value": engine.value,
            "oracle_value": est.value,
            "difference": diff,
            "oracle_error_bound": est.error_bound,
            "oracle_stderr": est.stderr,
            "residuals": res.as_dict(),
            "max_residual": res.max_residual,
            "checks": checks,
            "passed": passed,
        },
        engine.method,
        engine.N_used,
        prec.mode,
    )
    _emit_json(rec, out)
    return 0 if passed else 3


# -- parser ------------------------------------------------------------------


def _add_engine_flags(sp, with_n: bool = True) -> None:
    sp.add_argument("--a", type=_float_list, required=True, help="comma-separated a parameters")
    sp.add_argument("--b", type=_float_list, required=True, help="comma-separated b parameters")
    if with_n:
        sp.add_argument("--method", choices=("taylor", "chebyshev"), default=None)
        sp.add_argument("--n", type=int, default=None, help="series order N (engine default if omitted)")
        sp.add_argument("--precision", choices=("machine-double", "extended"), default=None)
        sp.add_argument("--digits", type=int, default=120, help="working digits in extended mode")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="orderedbeta",
        description="Incomplete beta integrals over the ordered simplex.",
        allow_abbrev=False,
    )
    ap.add_argument("--strict", action="store_true", help="escalate PrecisionWarning to exit code 4")
    ap.add_argument("--timing", action="store_true", help="include wall-clock timing in the record")
    sub = ap.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", allow_abbrev=False, help="evaluate B(a; b | z)")
    _add_engine_flags(ev)
    ev.add_argument("--z", type=float, required=True)
    ev.set_defaults(func=cmd_eval)

    cv = sub.add_parser("curve", allow_abbrev=False, help="error vs N for both engines")
    _add_engine_flags(cv, with_n=False)
    cv.add_argument("--z", type=float, default=1.0)
    cv.add_argument("--n-min", type=int, default=4)
    cv.add_argument("--n-max", type=int, default=64)
    cv.add_argument("--n-step", type=int, default=4)
    cv.add_argument("--ref", type=float, default=None, help="reference value (high-order run if omitted)")
    cv.add_argument("--format", choices=("json", "csv"), default="json")
    cv.add_argument("--plot", default=None, metavar="PATH", help="also render the curve to this file")
    cv.set_defaults(func=cmd_curve)

    dist = sub.add_parser("dist", allow_abbrev=False, help="ordered beta distribution queries")
    dsub = dist.add_subparsers(dest="dist_command", required=True)

    dp = dsub.add_parser("pdf", allow_abbrev=False, help="joint log-pdf, or marginal pdf with --k")
    _add_engine_flags(dp)
    dp.add_argument("--x", type=_float_list, required=True)
    dp.add_argument("--k", type=int, default=None)
    dp.set_defaults(func=cmd_dist_pdf)

    dc = dsub.add_parser("cdf", allow_abbrev=False, help="marginal cdf and survival of X_k")
    _add_engine_flags(dc)
    dc.add_argument("--k", type=int, required=True)
    dc.add_argument("--z", type=float, required=True)
    dc.set_defaults(func=cmd_dist_cdf)

    dm = dsub.add_parser("moment", allow_abbrev=False, help="mixed moment E[prod X^alpha (1-X)^beta]")
    _add_engine_flags(dm)
    dm.add_argument("--alpha", type=_float_list, default=[0.0])
    dm.add_argument("--beta", type=_float_list, default=[0.0])
    dm.set_defaults(func=cmd_dist_moment)

    dpost = dsub.add_parser("posterior", allow_abbrev=False, help="conjugate update by counts")
    _add_engine_flags(dpost)
    dpost.add_argument("--m", type=_int_list, required=True, help="successes per level")
    dpost.add_argument("--k", type=_int_list, required=True, help="failures per level")
    dpost.set_defaults(func=cmd_dist_posterior)

    ds = dsub.add_parser("sample", allow_abbrev=False, help="draw ordered points")
    _add_engine_flags(ds)
    ds.add_argument("--count", type=int, required=True)
    ds.add_argument("--seed", type=int, default=0)
    ds.add_argument("--sampler", choices=("rejection", "gibbs"), default="rejection")
    ds.add_argument("--burn-in", type=int, default=100)
    ds.add_argument("--format", choices=("json", "csv"), default="json")
    ds.set_defaults(func=cmd_dist_sample)

    vf = sub.add_parser("verify", allow_abbrev=False, help="oracle comparison + identity residuals")
    _add_engine_flags(vf)
    vf.add_argument("--z", type=float, default=1.0)
    vf.add_argument("--tol", type=float, default=1e-9)
    vf.add_argument("--oracle", choices=("auto", "quadrature", "montecarlo"), default="auto")
    vf.add_argument("--nodes", type=int, default=64)
    vf.add_argument("--samples", type=int, default=10**6)
    vf.add_argument("--seed", type=int, default=0)
    vf.set_defaults(func=cmd_verify)

    return ap


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            if args.strict:
                warnings.simplefilter("error", PrecisionWarning)
            return args.func(args, out)
    except PrecisionWarning as w:
        print(f"precision warning escalated by --strict: {w}", file=sys.stderr)
        return 4
    except OrderedBetaError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
