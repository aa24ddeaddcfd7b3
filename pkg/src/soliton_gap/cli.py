"""Command-line front end.

Exit codes: 0 success, 1 usage or domain error, 2 infeasible threshold,
3 failed verification.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__
from .bound_chain import (
    MARGIN,
    SCHEMA_VERSION,
    GapInputs,
    chain_constants,
    f_volume_bound,
    full_report,
    log_grid,
    sample_curve,
)
from .errors import ConsistencyError, DomainError, QuadratureError
from .models import (
    Cylinder,
    Gaussian,
    Sphere,
    f_volume,
    f_volume_closed_form,
    sublevel_identity_residual,
    volume_growth_check,
    logsob_deficit,
    potential_growth,
    standard_logsob_profiles,
    sublevel_f_volume,
    verify_identities,
)
from .numerics import DEFAULT_SPEC, QuadratureSpec
from .serialize import encode_real, format_real
from .spaceform import SpaceFormSpec, model_volume

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_VERIFY_FAILED = 3

CONFIG_ENV = "SOLITON_GAP_CONFIG"
COMMANDS = ("gap", "chain", "verify", "spaceform", "curve")
DEFAULT_VERIFY_TOL = 1e-9


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: Optional[GapInputs] = None
    quadrature: QuadratureSpec = DEFAULT_SPEC
    output_format: str = "json"
    output_path: Optional[Path] = None
    options: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p):
    p.add_argument("--config", help="key=value config file (flags override it)")
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--abs-tol", type=float, default=None)
    p.add_argument("--rel-tol", type=float, default=None)
    p.add_argument("--max-depth", type=int, default=None)


def _add_gap_inputs(p, eps_prime_help):
    p.add_argument("--n", type=int, default=None, help="dimension, >= 2")
    p.add_argument("--A", type=float, default=None, help="sectional curvature upper bound, > 0")
    p.add_argument("--v", type=float, default=None, help="f-volume floor in (0, 1]")
    p.add_argument("--eps-prime", type=float, default=None, help=eps_prime_help)
    p.add_argument("--sharp-constant", action="store_const", const=True, default=None,
                   help="use 36 + 1/e instead of 37 in the noncollapsing constant")
    p.add_argument("--threads", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="soliton-gap", description="Gap-threshold constants for shrinking Ricci solitons.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    yokota = "rigidity constant eps'_n (Yokota's gap constant) in (0, 1); required"

    p = sub.add_parser("gap", help="solve for the gap threshold and write the full report")
    _add_gap_inputs(p, yokota)
    p.add_argument("--points", type=int, default=None, help="report curve samples")
    _add_common(p)

    p = sub.add_parser("chain", help="the constant chain without the threshold search")
    _add_gap_inputs(p, yokota)
    _add_common(p)

    p = sub.add_parser("curve", help="sample the f-volume lower bound F(eps)")
    _add_gap_inputs(p, "optional; adds target and admissibility columns")
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--eps-min", type=float, default=None)
    p.add_argument("--eps-max", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("verify", help="run the model-soliton checks")
    p.add_argument("--model", choices=("gaussian", "sphere", "cylinder"), default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("spaceform", help="ball volume in a constant-curvature space")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--H", type=float, default=None)
    p.add_argument("--r", type=float, default=None)
    _add_common(p)
    return parser


# ---------------------------------------------------------------------------
# config handling

_CONFIG_TYPES = {
    "n": int, "A": float, "v": float, "eps_prime": float, "points": int, "tol": float,
    "format": str, "out": str, "model": str, "threads": int, "H": float, "r": float,
    "abs_tol": float, "rel_tol": float, "max_depth": int, "eps_min": float, "eps_max": float,
}
_BOOL_KEYS = {"sharp_constant"}


def read_config(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key in _BOOL_KEYS:
            values[key] = value.lower() in ("1", "true", "yes", "on")
        elif key in _CONFIG_TYPES:
            try:
                values[key] = _CONFIG_TYPES[key](value)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
        else:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
    return values


def _merged(args) -> dict:
    values = {}
    path = args.config or os.environ.get(CONFIG_ENV)
    if path:
        try:
            values.update(read_config(path))
        except OSError as exc:
            raise UsageError(f"cannot read config file: {exc}") from None
    for key, value in vars(args).items():
        if key in ("config", "command"):
            continue
        if value is not None:
            values[key] = value
    return values


def _quadrature(values) -> QuadratureSpec:
    return QuadratureSpec(
        values.get("abs_tol", DEFAULT_SPEC.abs_tol),
        values.get("rel_tol", DEFAULT_SPEC.rel_tol),
        values.get("max_depth", DEFAULT_SPEC.max_depth),
    )


def _require(values, key, what):
    if key not in values:
        raise UsageError(f"missing --{key.replace('_', '-')}: {what}")
    return values[key]


def _gap_inputs(values, need_eps_prime=True) -> GapInputs:
    n = _require(values, "n", "dimension n")
    A = _require(values, "A", "sectional curvature bound A")
    v = _require(values, "v", "f-volume floor v")
    if need_eps_prime:
        eps_prime = _require(
            values, "eps_prime",
            "the Yokota rigidity constant eps'_n has no default and must be supplied",
        )
    else:
        eps_prime = values.get("eps_prime", 0.5)
    return GapInputs(n, A, v, eps_prime)


def make_config(argv) -> RunConfig:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        raise UsageError(f"a command is required: one of {', '.join(COMMANDS)}")
    values = _merged(args)
    fmt = values.get("format", "json")
    if fmt not in ("json", "csv"):
        raise UsageError(f"--format must be json or csv, got {fmt!r}")
    out = values.get("out")
    inputs = None
    if args.command in ("gap", "chain"):
        inputs = _gap_inputs(values)
    elif args.command == "curve":
        inputs = _gap_inputs(values, need_eps_prime=False)
    return RunConfig(args.command, inputs, _quadrature(values), fmt, Path(out) if out else None, values)


# ---------------------------------------------------------------------------
# output

def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


def _dump_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _emit(config: RunConfig, text: str, stdout):
    if config.output_path is None:
        stdout.write(text)
    else:
        with open(config.output_path, "w", newline="\n") as fh:
            fh.write(text)


def _cell(x):
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return format_real(x)
    return str(x)


# ---------------------------------------------------------------------------
# commands

def cmd_gap(config: RunConfig, stdout=sys.stdout, stderr=sys.stderr) -> int:
    opts = config.options
    report = full_report(
        config.inputs,
        config.quadrature,
        sharp=bool(opts.get("sharp_constant", False)),
        curve_points=opts.get("points", 64),
        threads=opts.get("threads", 1),
    )
    if config.output_format == "json":
        text = _dump_json(report.to_dict())
    else:
        rows = [(s.name, s.formula, _cell(s.value), "" if s.value is None else s.value.hex()) for s in report.stages]
        text = _dump_csv(("stage", "formula", "value", "hex"), rows)
    _emit(config, text, stdout)
    sol = report.solution
    summary = stdout if config.output_path is not None else stderr
    if sol.feasible:
        summary.write(f"eps_star = {format_real(sol.eps_star)} (limited by {sol.limiting_stage})\n")
        return EXIT_OK
    summary.write(f"infeasible: {sol.message}; limiting stage: {sol.limiting_stage}\n")
    if sol.formula_threshold is not None:
        summary.write(
            f"without the C0 window the f-volume bound alone would allow eps <= {format_real(sol.formula_threshold)}\n"
        )
    return EXIT_INFEASIBLE


def cmd_chain(config: RunConfig, stdout=sys.stdout, stderr=sys.stderr) -> int:
    chain = chain_constants(config.inputs, config.quadrature, bool(config.options.get("sharp_constant", False)))
    stages = chain.stages()
    if config.output_format == "json":
        text = _dump_json(
            {
                "schema_version": SCHEMA_VERSION,
                "inputs": config.inputs.to_dict(),
                "stages": [s.to_dict() for s in stages],
                "limiting_cap": chain.limiting_cap,
            }
        )
    else:
        rows = [(s.name, s.formula, _cell(s.value), s.value.hex()) for s in stages]
        text = _dump_csv(("stage", "formula", "value", "hex"), rows)
    _emit(config, text, stdout)
    return EXIT_OK


def curve_rows(inputs: GapInputs, q, points, eps_min, eps_max, eps_prime=None, threads=1):
    """Rows ``(eps, F, in_window[, meets_target, admissible])`` plus the chain."""
    n, A = inputs.n, inputs.A
    cap = min(1.0, n / 2 * (1 - MARGIN), (math.pi / math.sqrt(A)) ** 4 * (1 - MARGIN))
    hi = cap if eps_max is None else min(eps_max, cap)
    if not 0 < eps_min < hi:
        raise DomainError(f"need 0 < eps_min < eps_max (capped at {cap!r}), got {eps_min!r}, {hi!r}")
    chain = chain_constants(inputs, q)
    curve = sample_curve(lambda e: f_volume_bound(n, A, e, q), log_grid(eps_min, hi, points), threads)
    rows = []
    for eps, F in curve.samples:
        in_window = math.log(eps) / 4.0 < chain.log_C0
        row = [eps, F, in_window]
        if eps_prime is not None:
            meets = F >= 1.0 - eps_prime
            row += [meets, meets and in_window]
        rows.append(row)
    return chain, rows


def cmd_curve(config: RunConfig, stdout=sys.stdout, stderr=sys.stderr) -> int:
    opts = config.options
    eps_prime = opts.get("eps_prime")
    points = opts.get("points", 100)
    if points < 2:
        raise DomainError(f"--points must be >= 2, got {points!r}")
    chain, rows = curve_rows(
        config.inputs, config.quadrature, points, opts.get("eps_min", 1e-16), opts.get("eps_max"),
        eps_prime, opts.get("threads", 1),
    )
    header = ["eps", "F", "in_window"] + (["meets_target", "admissible"] if eps_prime is not None else [])
    if config.output_format == "json":
        inputs = {"n": chain.inputs.n, "A": encode_real(chain.inputs.A), "v": encode_real(chain.inputs.v)}
        if eps_prime is not None:
            inputs["eps_prime"] = encode_real(eps_prime)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "inputs": inputs,
            "C0": encode_real(chain.C0),
            "log_C0": encode_real(chain.log_C0),
            "target": encode_real(None if eps_prime is None else 1.0 - eps_prime),
            "rows": [
                {k: (encode_real(v) if isinstance(v, float) else v) for k, v in zip(header, row)} for row in rows
            ],
        }
        text = _dump_json(payload)
    else:
        text = _dump_csv(header, [[_cell(x) for x in row] for row in rows])
    _emit(config, text, stdout)
    if rows and not any(r[2] for r in rows):
        stderr.write(f"note: no sampled eps lies inside the C0 window (log C0 = {chain.log_C0:.6g})\n")
    return EXIT_OK


def cmd_spaceform(config: RunConfig, stdout=sys.stdout, stderr=sys.stderr) -> int:
    opts = config.options
    n = _require(opts, "n", "dimension n")
    H = _require(opts, "H", "curvature H")
    r = _require(opts, "r", "radius r")
    value = model_volume(SpaceFormSpec(n, H), r, config.quadrature)
    if config.output_format == "json":
        text = _dump_json(
            {"schema_version": SCHEMA_VERSION, "n": n, "H": encode_real(H), "r": encode_real(r),
             "volume": encode_real(value)}
        )
    else:
        text = _dump_csv(("n", "H", "r", "volume"), [(n, _cell(float(H)), _cell(float(r)), _cell(value))])
    _emit(config, text, stdout)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verification suite

VERIFY_DIMS = range(2, 7)
IDENTITY_GRID = [k / 10 for k in range(1, 101)]


def _row(m, check, value, tol, passed, detail=""):
    return {
        "model": m.kind,
        "n": m.n,
        "check": check,
        "value": float(value),
        "tolerance": float(tol),
        "status": "pass" if passed else "fail",
        "detail": detail,
    }


def verification_rows(model: str | None = None, dims=None, tol: float = DEFAULT_VERIFY_TOL, q=DEFAULT_SPEC) -> list[dict]:
    """One row per (model, n, check)."""
    dims = list(VERIFY_DIMS if dims is None else dims)
    models = []
    for n in dims:
        for cls in (Gaussian, Sphere, Cylinder):
            if model is not None and cls.kind != model:
                continue
            if cls is Cylinder and n < 3:
                continue
            models.append(cls(n))
    rows = []
    for m in models:
        ident = verify_identities(m, m.sample_points(25, seed=m.n), tol)
        worst = max(ident.trace_residual, ident.normalization_residual)
        rows.append(_row(m, "identities", worst, tol, ident.passed))

        results = [sublevel_identity_residual(m, r, q=q) for r in IDENTITY_GRID]
        rel = max(res.residual / (1.0 + res.volume) for res in results)
        signs = all(res.sign_ok for res in results)
        rows.append(_row(m, "sublevel_identity", rel, tol, rel <= tol and signs, "" if signs else "n V - 2 chi < 0"))

        grid = [1.0 + k / 10 for k in range(1, 91)]
        deltas = []
        if isinstance(m, Gaussian):
            deltas = [0.0, 0.1]
        elif isinstance(m, Cylinder):
            deltas = [(m.n - 1) / 2]
        for delta in deltas:
            rep = volume_growth_check(m, delta, 1.0, grid, q, tol)
            r_at, gap = rep.worst()
            rows.append(
                _row(m, f"volume_growth(delta={delta:g})", -gap, tol, rep.passed and rep.ratio_nondecreasing,
                     f"tightest at r={r_at:g}")
            )

        fv = f_volume(m, q)
        err = abs(fv - f_volume_closed_form(m))
        rows.append(_row(m, "f_volume", err, tol, err <= tol, f"Vol_f={format_real(fv)}"))
        lim = abs(sublevel_f_volume(m, 40.0, q) - fv)
        rows.append(_row(m, "f_volume_limit", lim, tol, lim <= tol))

        growth = potential_growth(m)
        rows.append(_row(m, "potential_growth", max(0.0, -growth.upper_slack), tol,
                         -growth.upper_slack <= tol, f"c1={format_real(growth.c1)} c2={format_real(growth.c2)}"))

        if isinstance(m, Gaussian):
            profiles = standard_logsob_profiles(m.n)
            deficits = [logsob_deficit(p, m.n, q) for p in profiles]
            closed = m.n + m.n / 2 * math.log(4 * math.pi)
            err = abs(deficits[0] - closed)
            rows.append(_row(m, "logsob_closed_form", err, tol, err <= tol))
            low = min(deficits)
            rows.append(_row(m, "logsob_nonnegative", low, tol, low >= -tol, f"{len(profiles)} profiles"))
    return rows


def cmd_verify(config: RunConfig, stdout=sys.stdout, stderr=sys.stderr) -> int:
    opts = config.options
    dims = [opts["n"]] if "n" in opts else None
    if dims and dims[0] < 2:
        raise DomainError(f"dimension n must be an integer >= 2, got {dims[0]!r}")
    tol = opts.get("tol", DEFAULT_VERIFY_TOL)
    if not tol > 0:
        raise DomainError(f"--tol must be > 0, got {tol!r}")
    rows = verification_rows(opts.get("model"), dims, tol, config.quadrature)
    failed = [r for r in rows if r["status"] != "pass"]
    header = ("model", "n", "check", "value", "tolerance", "status", "detail")
    if config.output_format == "json":
        payload = {
            "schema_version": SCHEMA_VERSION,
            "rows": [{**r, "value": encode_real(r["value"]), "tolerance": encode_real(r["tolerance"])} for r in rows],
            "result": {"passed": not failed, "failed": len(failed), "total": len(rows)},
        }
        text = _dump_json(payload)
    else:
        text = _dump_csv(header, [[_cell(r[k]) for k in header] for r in rows])
    _emit(config, text, stdout)
    if failed:
        for r in failed:
            stderr.write(f"FAIL {r['model']} n={r['n']} {r['check']}: {format_real(r['value'])} (tol {r['tolerance']:g})\n")
        return EXIT_VERIFY_FAILED
    return EXIT_OK


_DISPATCH = {"gap": cmd_gap, "chain": cmd_chain, "curve": cmd_curve, "spaceform": cmd_spaceform, "verify": cmd_verify}


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        config = make_config(sys.argv[1:] if argv is None else argv)
        return _DISPATCH[config.command](config, stdout, stderr)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        stderr.write(f"domain error: {exc}\n")
        return EXIT_USAGE
    except (QuadratureError, ConsistencyError) as exc:
        stderr.write(f"numerical error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        stderr.write(f"i/o error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return EXIT_OK if not exc.code else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
