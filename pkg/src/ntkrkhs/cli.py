"""``ntkrkhs`` command line: coefficient tables, certificates and densities as CSV/JSON."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from .asymptotics import predicted_ratio
from .errors import IndeterminateError, KernelToolsError, NumericalHealthError, PrecisionLossError
from .inclusion import certify_kernels, theorem1_report
from .kernels import ZonalKernel
from .series import ExtractionConfig, cauchy_coefficients
from .stable import cm_certificate, density_closed_form_half, density_scaled, tail_constant

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2
FIGURE_MAX_N = 512
TABLE_ORDER = 100


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    parameters: Dict[str, Any]
    outputs: List[str] = field(default_factory=list)
    status: str = "success"
    notes: List[str] = field(default_factory=list)


@dataclass
class Result:
    """What a subcommand hands back to :func:`main` for serialization."""

    columns: Optional[List[str]] = None
    rows: List[List[Any]] = field(default_factory=list)
    payload: Optional[Dict[str, Any]] = None
    ok: bool = True
    notes: List[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# serialization


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return None
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


def render_csv(columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def render_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, ensure_ascii=False) + "\n"


def _render(result: Result, fmt: str) -> str:
    if fmt == "csv":
        if result.columns is None:
            raise UsageError("this command has no CSV form")
        return render_csv(result.columns, result.rows)
    if result.payload is not None:
        return render_json(result.payload)
    return render_json({"columns": result.columns, "rows": [dict(zip(result.columns, r)) for r in result.rows]})


# ---------------------------------------------------------------------------
# flag helpers


def _config(args) -> ExtractionConfig:
    return ExtractionConfig(radius=args.radius, sample_count=args.samples, max_order=args.order)


def _kernel_from_flags(args) -> ZonalKernel:
    name = args.kernel
    if name == "laplace":
        if args.ctilde is not None and args.c is not None:
            raise UsageError("give --ctilde or --c for the Laplace kernel, not both")
        if args.c is not None:
            return ZonalKernel.laplace(args.c)
        return ZonalKernel.laplace(c_tilde=args.ctilde if args.ctilde is not None else math.sqrt(2.0))
    if name == "gaussian":
        return ZonalKernel.gaussian(args.c if args.c is not None else 1.0)
    if name == "exp-power":
        if args.gamma is None:
            raise UsageError("--kernel exp-power needs --gamma")
        return ZonalKernel.exp_power(args.gamma, args.sigma)
    if name == "arccos0":
        return ZonalKernel.arccos0()
    if name == "arccos1":
        return ZonalKernel.arccos1()
    if name == "kappa1-iterate":
        return ZonalKernel.kappa1_iterate(args.layers_k)
    return ZonalKernel.ntk(args.layers_k, args.beta)


_SPEC_KEYS = {"c": float, "c_tilde": float, "gamma": float, "sigma": float, "k": int, "beta": float}


def parse_kernel_spec(text: str) -> ZonalKernel:
    """``name[:key=value,...]``, e.g. ``ntk:k=2,beta=1`` or ``laplace:c_tilde=1``."""
    name, _, rest = text.partition(":")
    kwargs: Dict[str, Any] = {}
    for item in filter(None, rest.split(",")):
        key, eq, val = item.partition("=")
        key = key.strip()
        if not eq or key not in _SPEC_KEYS:
            raise UsageError(f"bad kernel parameter {item!r} in {text!r}")
        try:
            kwargs[key] = _SPEC_KEYS[key](val)
        except ValueError:
            raise UsageError(f"bad value for {key} in {text!r}") from None
    name = name.strip().replace("-", "_")
    makers = {
        "laplace": ZonalKernel.laplace,
        "gaussian": ZonalKernel.gaussian,
        "exp_power": ZonalKernel.exp_power,
        "arccos0": ZonalKernel.arccos0,
        "arccos1": ZonalKernel.arccos1,
        "kappa1_iterate": ZonalKernel.kappa1_iterate,
        "ntk": ZonalKernel.ntk,
    }
    if name not in makers:
        raise UsageError(f"unknown kernel {name!r}")
    try:
        return makers[name](**kwargs)
    except TypeError as exc:
        raise UsageError(f"{text!r}: {exc}") from None


# ---------------------------------------------------------------------------
# subcommands


def cmd_coeffs(args) -> Result:
    kernel = _kernel_from_flags(args)
    s = cauchy_coefficients(kernel, _config(args))
    ratios = s.ratios()
    rows = [[0, s.coeffs[0], s.error_bound[0], math.nan]]
    rows += [[n, s.coeffs[n], s.error_bound[n], ratios[n - 1]] for n in range(1, s.max_order + 1)]
    payload = {
        "kernel": kernel.to_dict(),
        "config": s.config.to_dict(),
        "coefficients": [{"n": r[0], "coeff": r[1], "error_bound": r[2], "ratio_to_n_minus_3_2": r[3]} for r in rows],
    }
    return Result(["n", "coeff", "error_bound", "ratio_to_n_minus_3_2"], rows, payload)


def table1_kernels():
    # the tabulated Laplace column corresponds to c_tilde = 1
    out = [("laplace", None, None, ZonalKernel.laplace(c_tilde=1.0))]
    for beta in (1.0, 0.0):
        out += [("ntk", k, beta, ZonalKernel.ntk(k, beta)) for k in range(1, 5)]
    return out


def cmd_table1(args) -> Result:
    cfg = _config(args)
    if cfg.max_order < TABLE_ORDER:
        raise UsageError(f"table1 needs --order >= {TABLE_ORDER}")
    rows = []
    for name, k, beta, kernel in table1_kernels():
        numeric = float(cauchy_coefficients(kernel, cfg).ratios()[TABLE_ORDER - 1])
        theory = predicted_ratio(kernel).limit(TABLE_ORDER)
        dev = numeric - theory
        rows.append([name, "" if k is None else k, "" if beta is None else beta, numeric, theory, abs(dev), abs(dev) / abs(theory)])
    cols = ["kernel", "k", "beta", "numeric", "theory", "abs_dev", "rel_dev"]
    payload = {"n": TABLE_ORDER, "config": cfg.to_dict(), "rows": [dict(zip(cols, r)) for r in rows]}
    return Result(cols, rows, payload)


def cmd_figure1(args) -> Result:
    if not 1 <= args.max_n <= FIGURE_MAX_N:
        raise UsageError(f"--max-n must lie in [1, {FIGURE_MAX_N}], got {args.max_n}")
    notes = []
    if args.beta not in (0.0, 1.0):
        notes.append(f"beta={args.beta:g} is outside the tabulated values 0 and 1")
    cfg = _config(args)
    if cfg.max_order < args.max_n:
        cfg = ExtractionConfig(cfg.radius, cfg.sample_count, args.max_n)
    series = [("laplace", ZonalKernel.laplace(c_tilde=1.0))]
    series += [(f"N_{k}", ZonalKernel.ntk(k, args.beta)) for k in range(1, 5)]
    rows = []
    for name, kernel in series:
        r = cauchy_coefficients(kernel, cfg).ratios()
        rows += [[name, n, r[n - 1]] for n in range(1, args.max_n + 1)]
    payload = {"beta": args.beta, "max_n": args.max_n, "rows": [dict(zip(("kernel", "n", "ratio"), r)) for r in rows]}
    if notes:
        payload["warnings"] = notes
    return Result(["kernel", "n", "ratio"], rows, payload, notes=notes)


def _cert_rows(certs):
    cols = ["dominated", "dominating", "success", "gamma_squared", "checked_order", "min_margin",
            "asymptotic_ratio", "indeterminate_count"]
    rows = []
    for c in certs:
        d = c.to_dict()
        asym = c.asymptotic_ratio if c.asymptotic_ratio is not None else math.nan
        rows.append([c.dominated.label, c.dominating.label, c.success, c.gamma_squared,
                     c.checked_order, c.min_margin, asym, d["indeterminate_count"]])
    return cols, rows


def cmd_certify(args) -> Result:
    cfg = _config(args)
    pair = args.pair
    if pair == "laplace-ntk":
        rep = theorem1_report(args.layers_k, args.beta, args.ctilde, cfg)
        certs = [rep.ntk_in_reference, rep.reference_in_ntk]
        holds = rep.both_succeed
        claim = f"{certs[0].inclusion} and {certs[1].inclusion}"
    elif pair in ("exp-exp", "gauss-laplace"):
        if pair == "exp-exp":
            k1 = ZonalKernel.exp_power(args.gamma1, args.sigma1)
            k2 = ZonalKernel.exp_power(args.gamma2, args.sigma2)
            if args.gamma1 > args.gamma2:
                k1, k2 = k2, k1
            strict = k1.gamma != k2.gamma
        else:
            k1 = ZonalKernel.laplace(c_tilde=args.ctilde)
            k2 = ZonalKernel.gaussian(args.c)
            strict = True
        forward = certify_kernels(k2, k1, cfg)
        reverse = certify_kernels(k1, k2, cfg)
        certs = [forward, reverse]
        holds = forward.success and (not reverse.success if strict else reverse.success)
        claim = forward.inclusion + (" strictly" if strict else " and conversely")
    else:
        if not (args.dominated and args.dominating):
            raise UsageError("--pair custom needs --dominated and --dominating")
        cert = certify_kernels(parse_kernel_spec(args.dominated), parse_kernel_spec(args.dominating), cfg)
        certs = [cert]
        holds = cert.success
        claim = cert.inclusion
    payload = {
        "pair": pair,
        "claim": claim,
        "claim_holds": holds,
        "config": cfg.to_dict(),
        "certificates": [c.to_dict() for c in certs],
    }
    cols, rows = _cert_rows(certs)
    return Result(cols, rows, payload, ok=holds)


def _t_grid(args) -> List[float]:
    if args.t:
        ts = list(args.t)
        if any(not (t >= 0.0 and math.isfinite(t)) for t in ts):
            raise UsageError("--t values must be finite and nonnegative")
        return ts
    if not 0.0 < args.tmin <= args.tmax:
        raise UsageError("need 0 < --tmin <= --tmax")
    if args.points < 1:
        raise UsageError("--points must be positive")
    if args.points == 1:
        return [args.tmin]
    return [float(t) for t in np.geomspace(args.tmin, args.tmax, args.points)]


def cmd_invlap(args) -> Result:
    if (args.a is None) == (args.gamma is None):
        raise UsageError("give exactly one of --a or --gamma")
    a = args.a if args.a is not None else args.gamma / 2.0
    sigma = args.sigma
    if args.method == "closed" and (a != 0.5 or sigma != 1.0):
        raise UsageError("--method closed is only available for a = 0.5, sigma = 1")
    const = tail_constant(a, sigma)
    rows, rejected = [], 0
    for t in _t_grid(args):
        tail = const * t ** (-a - 1.0) if t > 0.0 else math.inf
        try:
            ev = density_closed_form_half(t) if args.method == "closed" else density_scaled(a, sigma, t)
            rows.append([t, ev.value, ev.method, ev.cancellation_ratio, tail])
        except PrecisionLossError:
            rejected += 1
            rows.append([t, math.nan, "rejected:precision", math.nan, tail])
    notes = [f"{rejected} points rejected by the cancellation guard"] if rejected else []
    cols = ["t", "f", "method", "cancellation_ratio", "tail_prediction"]
    payload = {"a": a, "sigma": sigma, "tail_constant": const, "rows": [dict(zip(cols, r)) for r in rows]}
    return Result(cols, rows, payload, notes=notes)


def cmd_cm(args) -> Result:
    cert = cm_certificate(args.gamma1, args.sigma1, args.gamma2, args.sigma2,
                          t_min=args.tmin, t_max=args.tmax, points=args.points)
    d = cert.to_dict()
    cols = list(d)
    cols.remove("notes")
    return Result(cols, [[d[c] for c in cols]], d, ok=cert.success)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global")
    g.add_argument("--order", type=int, default=512, help="highest coefficient order (default 512)")
    g.add_argument("--radius", type=float, default=0.99, help="sampling circle radius (default 0.99)")
    g.add_argument("--samples", type=int, default=2 ** 15, help="FFT length, a power of two (default 32768)")
    g.add_argument("--out", help="output file; a <out>.report.json sidecar is written next to it")
    g.add_argument("--format", choices=("csv", "json"), help="output format (default depends on command)")

    parser = argparse.ArgumentParser(
        prog="ntkrkhs",
        description="Maclaurin coefficients, RKHS inclusion certificates and stable densities for zonal kernels.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", parents=[common], help="Maclaurin coefficients of one kernel")
    p.add_argument("--kernel", required=True,
                   choices=("laplace", "gaussian", "exp-power", "arccos0", "arccos1", "kappa1-iterate", "ntk"))
    p.add_argument("--layers-k", type=int, default=1)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--ctilde", type=float, help="Laplace rate in exp(-ctilde*sqrt(1-u)) (default sqrt 2)")
    p.add_argument("--c", type=float, help="Laplace rate in exp(-c*|x-y|), or Gaussian rate in exp(-c*|x-y|^2)")
    p.add_argument("--gamma", type=float)
    p.add_argument("--sigma", type=float, default=1.0)
    p.set_defaults(func=cmd_coeffs, default_format="csv")

    p = sub.add_parser("table1", parents=[common], help="ratios at n=100 against the predicted limits")
    p.set_defaults(func=cmd_table1, default_format="csv")

    p = sub.add_parser("figure1", parents=[common], help="ratio curves n^(3/2)[z^n]K in long format")
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--max-n", type=int, default=100)
    p.set_defaults(func=cmd_figure1, default_format="csv")

    p = sub.add_parser("certify", parents=[common], help="coefficient-domination certificates")
    p.add_argument("--pair", choices=("laplace-ntk", "exp-exp", "gauss-laplace", "custom"), required=True)
    p.add_argument("--layers-k", type=int, default=1)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--ctilde", type=float, default=math.sqrt(2.0))
    p.add_argument("--c", type=float, default=1.0, help="Gaussian rate (gauss-laplace)")
    p.add_argument("--gamma1", type=float, default=1.0)
    p.add_argument("--sigma1", type=float, default=1.0)
    p.add_argument("--gamma2", type=float, default=1.5)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--dominated", help="kernel spec, e.g. ntk:k=2,beta=1")
    p.add_argument("--dominating", help="kernel spec, e.g. laplace:c_tilde=1")
    p.set_defaults(func=cmd_certify, default_format="json")

    p = sub.add_parser("invlap", parents=[common], help="inverse Laplace transform of exp(-s^a/sigma)")
    p.add_argument("--a", type=float)
    p.add_argument("--gamma", type=float, help="use a = gamma/2")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--t", type=float, action="append", help="evaluation point (repeatable)")
    p.add_argument("--tmin", type=float, default=0.5)
    p.add_argument("--tmax", type=float, default=50.0)
    p.add_argument("--points", type=int, default=50)
    p.add_argument("--method", choices=("series", "closed"), default="series")
    p.set_defaults(func=cmd_invlap, default_format="csv")

    p = sub.add_parser("cm", parents=[common], help="positivity certificate c^2 g1 - g2 >= 0")
    p.add_argument("--gamma1", type=float, required=True)
    p.add_argument("--sigma1", type=float, default=1.0)
    p.add_argument("--gamma2", type=float, required=True)
    p.add_argument("--sigma2", type=float, default=1.0)
    p.add_argument("--tmin", type=float, default=0.1)
    p.add_argument("--tmax", type=float, default=1e4)
    p.add_argument("--points", type=int, default=256)
    p.set_defaults(func=cmd_cm, default_format="json")
    return parser


def _parameters(args) -> Dict[str, Any]:
    skip = {"func", "default_format", "out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _write(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    fmt = args.format or args.default_format
    report = RunReport(args.command, _parameters(args))
    try:
        result = args.func(args)
        text = _render(result, fmt)
    except UsageError as exc:
        print(f"ntkrkhs {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IndeterminateError as exc:
        print(f"ntkrkhs {args.command}: indeterminate: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except NumericalHealthError as exc:
        print(f"ntkrkhs {args.command}: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (KernelToolsError, ValueError) as exc:
        print(f"ntkrkhs {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    for note in result.notes:
        print(f"ntkrkhs {args.command}: warning: {note}", file=sys.stderr)
    _write(args.out, text)
    report.status = "success" if result.ok else "failure"
    report.notes = list(result.notes)
    if args.out:
        report.outputs = [args.out]
        _write(args.out + ".report.json", render_json(asdict(report)))
    return EXIT_OK if result.ok else EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
