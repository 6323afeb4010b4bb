"""Command-line surface for evaluation, tracing, surveys, and audits.

Eight subcommands over the library: eval (series values), ratio
(reflection factor), curve (level-set export), kappa (strip height
bound), zeros (exhaustive survey), scan (line scan), verify (invariant
suites), audit (claim evidence).  Output is CSV (17-significant-digit
round-trip floats) or JSON (settings echoed); both are deterministic
for a fixed configuration and identical for any --jobs value, because
parallel pieces merge in sorted order.

Exit status: 0 success, 1 failed verify checks, 2 configuration
errors, 3 convergence failures, 4 I/O errors.  In JSON mode errors
also emit a machine-readable object on stderr.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .analysis import (
    Rect,
    audit_claims,
    kappa_detail,
    scan_critical_line,
    survey_zeros,
    trace_unit_curve,
)
from .dhfun import f
from .errors import (
    BoundaryZeroError,
    ConvergenceError,
    DomainError,
    PoleError,
    UndersampledError,
)
from .specfun import EvalSettings
from .suites import SUITE_NAMES, run_suites
from .xratio import x_of

__all__ = ["RunConfig", "main"]

_COMMANDS = ("eval", "ratio", "curve", "kappa", "zeros", "scan", "verify", "audit")


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """A fully resolved invocation: command, domain, and output plan."""

    command: str
    window: Rect | None = None
    step: float | None = None
    t0: float | None = None
    t1: float | None = None
    points: tuple[complex, ...] = ()
    suites: tuple[str, ...] = ()
    jobs: int = 1
    out_path: str | None = None
    format: str = "json"

    def __post_init__(self) -> None:
        if self.command not in _COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.jobs < 1:
            raise DomainError("jobs must be >= 1")
        if self.format not in ("csv", "json"):
            raise DomainError(f"format must be csv or json, got {self.format!r}")
        if self.command in ("curve", "zeros") and self.window is None:
            raise DomainError(f"{self.command} requires a window")


# ----------------------------------------------------------------------
# parsing
# ----------------------------------------------------------------------


def _parse_complex(text: str) -> complex:
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise DomainError(f"cannot parse complex number {text!r}; write a+bi") from exc


def _parse_rect(text: str) -> Rect:
    parts = text.split(",")
    if len(parts) != 4:
        raise DomainError(f"rectangle must be sigma0,sigma1,t0,t1, got {text!r}")
    try:
        return Rect(*(float(p) for p in parts))
    except ValueError as exc:
        raise DomainError(f"cannot parse rectangle {text!r}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dhratio",
        description="Evaluate the period-5 series, its reflection ratio, and their zero geometry.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--seed", type=int, default=None, help="override the settings rng seed")
        p.add_argument("--jobs", type=int, default=1, help="parallel window count")

    p = sub.add_parser("eval", help="evaluate the function at points a+bi")
    p.add_argument("point", nargs="+")
    common(p)

    p = sub.add_parser("ratio", help="evaluate the reflection ratio X at points a+bi")
    p.add_argument("point", nargs="+")
    common(p)

    p = sub.add_parser("curve", help="trace the |X| = 1 level set in a window")
    p.add_argument("--window", required=True, help="sigma0,sigma1,t0,t1")
    p.add_argument("--step", type=float, default=0.01)
    common(p)

    p = sub.add_parser("kappa", help="strip height bound by two methods")
    common(p)

    p = sub.add_parser("zeros", help="survey every zero in a rectangle")
    p.add_argument("--rect", required=True, help="sigma0,sigma1,t0,t1")
    common(p)

    p = sub.add_parser("scan", help="scan the critical line for zeros")
    p.add_argument("--t0", type=float, required=True)
    p.add_argument("--t1", type=float, required=True)
    p.add_argument("--step", type=float, default=0.05)
    common(p)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument(
        "--suite",
        action="append",
        choices=SUITE_NAMES + ("all",),
        default=None,
        help="suite name (repeatable); default all",
    )
    common(p)

    p = sub.add_parser("audit", help="survey a window and emit claim evidence")
    p.add_argument("--rect", default="0,1,0,200", help="sigma0,sigma1,t0,t1")
    common(p)

    return parser


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    fmt = args.format or ("csv" if args.command == "curve" else "json")
    window = None
    if getattr(args, "window", None) is not None:
        window = _parse_rect(args.window)
    if getattr(args, "rect", None) is not None:
        window = _parse_rect(args.rect)
    points = tuple(_parse_complex(p) for p in getattr(args, "point", ()))
    suites = tuple(args.suite) if getattr(args, "suite", None) else ("all",)
    return RunConfig(
        command=args.command,
        window=window,
        step=getattr(args, "step", None),
        t0=getattr(args, "t0", None),
        t1=getattr(args, "t1", None),
        points=points,
        suites=suites,
        jobs=args.jobs,
        out_path=args.out,
        format=fmt,
    )


def _load_settings(seed: int | None) -> EvalSettings:
    path = os.environ.get("DH_SETTINGS")
    if path:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise DomainError("DH_SETTINGS must contain a JSON object")
        cfg = EvalSettings(**data)
    else:
        cfg = EvalSettings()
    if seed is not None:
        cfg = dataclasses.replace(cfg, rng_seed=seed)
    return cfg


# ----------------------------------------------------------------------
# serialization
# ----------------------------------------------------------------------


def _cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _emit(config: RunConfig, payload: dict, columns: list[str], rows: list[dict]) -> None:
    if config.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[c]) for c in columns])
        text = buf.getvalue()
    if config.out_path is None:
        sys.stdout.write(text)
    else:
        with open(config.out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _record_row(rec) -> dict:
    return {
        "sigma": rec.location.sigma,
        "t": rec.location.t,
        "residual": rec.residual,
        "iterations": rec.iterations,
        "paired_sigma": rec.paired_location.sigma,
        "paired_t": rec.paired_location.t,
        "paired_residual": rec.paired_residual,
        "abs_x": rec.abs_x_here,
        "on_line": rec.on_line,
        "within_kappa": rec.within_kappa,
    }


_RECORD_COLUMNS = [
    "sigma",
    "t",
    "residual",
    "iterations",
    "paired_sigma",
    "paired_t",
    "paired_residual",
    "abs_x",
    "on_line",
    "within_kappa",
]


# ----------------------------------------------------------------------
# command bodies
# ----------------------------------------------------------------------


def _run(config: RunConfig, cfg: EvalSettings, worker_map) -> tuple[dict, list[str], list[dict], int]:
    settings_echo = dataclasses.asdict(cfg)
    status = 0

    if config.command == "eval":
        rows = []
        for p in config.points:
            val = f(p, cfg)
            rows.append(
                {
                    "sigma": val.at.sigma,
                    "t": val.at.t,
                    "value_re": val.value.sigma,
                    "value_im": val.value.t,
                    "abs_value": abs(val.value.z),
                    "est_abs_err": val.est_abs_err,
                }
            )
        columns = ["sigma", "t", "value_re", "value_im", "abs_value", "est_abs_err"]
        payload = {"command": "eval", "settings": settings_echo, "records": rows}

    elif config.command == "ratio":
        rows = []
        for p in config.points:
            val = x_of(p, cfg)
            rows.append(
                {
                    "sigma": val.at.sigma,
                    "t": val.at.t,
                    "value_re": val.value.sigma,
                    "value_im": val.value.t,
                    "log_abs": val.log_abs,
                    "arg_cont": val.arg_cont,
                    "zero_flag": val.zero_flag,
                }
            )
        columns = ["sigma", "t", "value_re", "value_im", "log_abs", "arg_cont", "zero_flag"]
        payload = {"command": "ratio", "settings": settings_echo, "records": rows}

    elif config.command == "curve":
        polys = trace_unit_curve(config.window, config.step, cfg, worker_map=worker_map)
        rows = []
        components = []
        for poly in polys:
            components.append(
                {
                    "component_id": poly.component_id,
                    "closed": poly.closed,
                    "excludes_line": poly.excludes_line,
                    "vertices": [{"sigma": v.sigma, "t": v.t} for v in poly.vertices],
                }
            )
            for v in poly.vertices:
                rows.append({"component_id": poly.component_id, "sigma": v.sigma, "t": v.t})
        columns = ["component_id", "sigma", "t"]
        payload = {"command": "curve", "settings": settings_echo, "components": components}

    elif config.command == "kappa":
        kd = kappa_detail(cfg)
        rows = [
            {"metric": "kappa", "value": kd.trace_value},
            {"metric": "trace_value", "value": kd.trace_value},
            {"metric": "root_value", "value": kd.root_value},
            {"metric": "agreement", "value": kd.agreement},
        ]
        columns = ["metric", "value"]
        payload = {
            "command": "kappa",
            "settings": settings_echo,
            "kappa": kd.trace_value,
            "trace_value": kd.trace_value,
            "root_value": kd.root_value,
            "agreement": kd.agreement,
        }

    elif config.command == "zeros":
        records = survey_zeros(config.window, cfg, worker_map=worker_map)
        rows = [_record_row(r) for r in records]
        columns = _RECORD_COLUMNS
        payload = {"command": "zeros", "settings": settings_echo, "records": rows}

    elif config.command == "scan":
        if config.t0 is None or config.t1 is None or config.step is None:
            raise DomainError("scan requires --t0, --t1, --step")
        records = scan_critical_line(config.t0, config.t1, config.step, cfg)
        rows = [_record_row(r) for r in records]
        columns = _RECORD_COLUMNS
        payload = {"command": "scan", "settings": settings_echo, "records": rows}

    elif config.command == "verify":
        results = run_suites(config.suites, cfg, worker_map=worker_map)
        rows = []
        suites_payload = []
        for suite in results:
            checks = []
            for c in suite.checks:
                rows.append(
                    {
                        "suite": suite.name,
                        "check": c.name,
                        "passed": c.passed,
                        "measured": c.measured,
                        "threshold": c.threshold,
                    }
                )
                checks.append(dataclasses.asdict(c))
            suites_payload.append({"name": suite.name, "passed": suite.passed, "checks": checks})
        all_passed = all(s.passed for s in results)
        columns = ["suite", "check", "passed", "measured", "threshold"]
        payload = {
            "command": "verify",
            "settings": settings_echo,
            "suites": suites_payload,
            "all_passed": all_passed,
        }
        status = 0 if all_passed else 1

    elif config.command == "audit":
        records = survey_zeros(config.window, cfg, worker_map=worker_map)
        reports = audit_claims(records, cfg)
        rows = []
        reports_payload = []
        for rep in reports:
            reports_payload.append(
                {
                    "claim_id": rep.claim_id,
                    "verdict_note": rep.verdict_note,
                    "evidence": list(rep.evidence),
                }
            )
            for item in rep.evidence:
                for key, value in item.items():
                    if key == "input":
                        continue
                    rows.append(
                        {
                            "claim_id": rep.claim_id,
                            "input": item["input"],
                            "metric": key,
                            "value": value,
                        }
                    )
        columns = ["claim_id", "input", "metric", "value"]
        payload = {"command": "audit", "settings": settings_echo, "reports": reports_payload}

    else:  # pragma: no cover - guarded by RunConfig
        raise DomainError(f"unknown command {config.command!r}")

    return payload, columns, rows, status


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------


def _fail(code: int, exc: Exception, fmt: str) -> int:
    if fmt == "json":
        sys.stderr.write(
            json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n"
        )
    else:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
    return code


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", None) or ("csv" if args.command == "curve" else "json")
    try:
        config = _resolve_config(args)
        cfg = _load_settings(args.seed)
    except (DomainError, ValueError, KeyError, OSError) as exc:
        return _fail(2, exc, fmt)

    executor = None
    worker_map = None
    try:
        if config.jobs > 1:
            executor = ProcessPoolExecutor(max_workers=config.jobs)
            worker_map = executor.map
        payload, columns, rows, status = _run(config, cfg, worker_map)
    except (DomainError, PoleError, KeyError) as exc:
        return _fail(2, exc, config.format)
    except (ConvergenceError, BoundaryZeroError, UndersampledError) as exc:
        return _fail(3, exc, config.format)
    except OSError as exc:
        return _fail(4, exc, config.format)
    finally:
        if executor is not None:
            executor.shutdown()

    try:
        _emit(config, payload, columns, rows)
    except OSError as exc:
        return _fail(4, exc, config.format)
    return status


if __name__ == "__main__":
    sys.exit(main())
