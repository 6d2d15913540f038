"""Command-line front end: enumerate, verify, matrix, conjecture."""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import export
from .bases import CarrierMismatch, transition_matrix, unitriangular_check
from .families import enumerate_family
from .fourier import conjecture_report, operator_matrix, triangularizable
from .gf2 import StratumFilter, enumerate_vectors
from .orders import build_order, vector_order
from .suite import UnknownStatement, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
MAX_N = 13
OUT_ENV = "ARCBASES_OUT_DIR"

FAMILIES = {"xn1": "XN1", "xn2": "XN2", "xn2-plus": "XN2plus", "xn2-minus": "XN2minus", "e": "E"}
MATRIX_KINDS = ("c", "cprime", "cplus", "cminus", "A", "Aprime", "bar-plus-fourier")
_OPERATOR = {"A": "A_on_c", "Aprime": "Aprime_on_cprime", "bar-plus-fourier": "bar_plus_on_tilde"}
_ORDER = {"c": "leq_XN1", "cprime": "preceq_XN2", "cplus": "bar_plus", "cminus": "bar_minus"}


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    n: int
    command: str
    out: Path | None
    format: str = "json"
    jobs: int = 1
    timings: bool = False


def _parse_stratum(text: str | None) -> int | None:
    if text is None:
        return None
    key, sep, value = text.partition("=")
    if sep != "=" or key.strip() != "t":
        raise UsageError(f"--stratum expects t=<even integer>, got {text!r}")
    try:
        return int(value)
    except ValueError:
        raise UsageError(f"--stratum value {value!r} is not an integer") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, required=True, help="odd ambient size N")
    common.add_argument("--format", choices=export.FORMATS, default="json")
    common.add_argument("--out", type=Path, help=f"output file (default: ${OUT_ENV}/<name> or stdout)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes, 0 = one per CPU")
    common.add_argument("--allow-large", action="store_true", help=f"permit N > {MAX_N}")
    common.add_argument("--timings", action="store_true", help="include wall times in reports")

    p = argparse.ArgumentParser(prog="arcbases", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="list a family of matchings or vectors")
    e.add_argument("--family", choices=sorted(FAMILIES), required=True)
    e.add_argument("--stratum", help="restrict to one stratum, e.g. t=2")
    e.add_argument("--refinement", choices=("prime", "doubleprime"))
    e.add_argument("--sign", choices=("+", "-"), help="sign part of E_N (family e only)")

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("--suite", action="append", default=None,
                   help="statement ids, group names or 'all' (comma separated, repeatable)")

    m = sub.add_parser("matrix", parents=[common], help="export a transition or Fourier matrix")
    m.add_argument("--kind", choices=MATRIX_KINDS, required=True)

    sub.add_parser("conjecture", parents=[common], help="triangularity report on bar E_N^+")
    return p


def _config(args: argparse.Namespace) -> RunConfig:
    n = args.n
    if n < 3 or n % 2 == 0:
        raise UsageError(f"--n must be odd and at least 3, got {n}")
    if n > MAX_N:
        if not args.allow_large:
            raise UsageError(f"--n {n} exceeds {MAX_N}; pass --allow-large to proceed")
        print(f"warning: N={n} above {MAX_N}, enumeration grows like the involution numbers", file=sys.stderr)
    if args.jobs < 0:
        raise UsageError("--jobs must be >= 0")
    return RunConfig(n, args.command, args.out, args.format, args.jobs, args.timings)


def _destination(cfg: RunConfig, stem: str) -> Path | None:
    if cfg.out is not None:
        return cfg.out
    base = os.environ.get(OUT_ENV)
    if base:
        ext = {"json": "json", "csv": "csv", "text": "txt"}[cfg.format]
        return Path(base) / f"{stem}-n{cfg.n}.{ext}"
    return None


def _emit(cfg: RunConfig, stem: str, text: str) -> None:
    path = _destination(cfg, stem)
    if path is None:
        sys.stdout.write(text)
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def run_enumerate(cfg: RunConfig, family: str, stratum: str | None, refinement: str | None,
                  sign: str | None) -> int:
    t = _parse_stratum(stratum)
    tag = FAMILIES[family]
    if tag == "E":
        if refinement is not None and sign is None:
            raise UsageError("--refinement on family e needs --sign")
        items = enumerate_vectors(cfg.n, StratumFilter(t, sign, refinement))
    else:
        if sign is not None:
            raise UsageError("--sign applies to family e only")
        try:
            items = enumerate_family(cfg.n, tag, t, refinement)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    kind = f"family:{family}"
    extra = {"family": family, "stratum": t, "refinement": refinement, "sign": sign}
    if cfg.format == "json":
        text = export.to_json(export.family_document(cfg.n, kind, items, extra))
    elif cfg.format == "csv":
        text = export.family_csv(items)
    else:
        text = export.family_text(cfg.n, kind, items)
    _emit(cfg, f"enumerate-{family}", text)
    return EXIT_OK


def _write_reports(cfg: RunConfig, stem: str, reports) -> None:
    if cfg.format == "json":
        text = export.to_json(export.reports_document(cfg.n, stem, reports, cfg.timings))
    elif cfg.format == "csv":
        text = export.reports_csv(reports, cfg.timings)
    else:
        text = export.reports_text(reports)
    _emit(cfg, stem, text)


def run_verify(cfg: RunConfig, suite: Sequence[str] | None) -> int:
    try:
        reports = run_suite(cfg.n, suite or ["all"], jobs=cfg.jobs)
    except UnknownStatement as exc:
        raise UsageError(f"unknown statement id {exc.args[0]!r}") from None
    _write_reports(cfg, "verify", reports)
    return EXIT_FAIL if any(not r.ok for r in reports) else EXIT_OK


def _certificate(n: int, kind: str, m) -> dict:
    if kind in _OPERATOR:
        verdict = triangularizable(m)
        return {
            "check": "triangularizable",
            "triangularizable": verdict.triangularizable,
            "order": list(verdict.order) if verdict.order is not None else None,
            "cycle": list(verdict.cycle) if verdict.cycle is not None else None,
        }
    flavor = _ORDER[kind]
    order = vector_order(n, flavor) if kind in ("c", "cprime") else build_order(n, flavor)
    report = unitriangular_check(m, order, f"unitriangular:{kind}", n)
    return {
        "check": "unitriangular",
        "order": flavor,
        "status": report.status,
        "witnesses": report.witnesses,
        "linear_extension": order.linear_extension(),
    }


def run_matrix(cfg: RunConfig, kind: str) -> int:
    m = operator_matrix(cfg.n, _OPERATOR[kind]) if kind in _OPERATOR else transition_matrix(cfg.n, kind)
    cert = _certificate(cfg.n, kind, m)
    if cfg.format == "json":
        text = export.to_json(export.matrix_document(cfg.n, f"matrix:{kind}", m, cert))
    elif cfg.format == "csv":
        text = export.matrix_csv(m)
    else:
        text = export.matrix_text(cfg.n, f"matrix:{kind}", m)
    _emit(cfg, f"matrix-{kind}", text)
    return EXIT_FAIL if cert.get("status") == "fail" else EXIT_OK


def run_conjecture(cfg: RunConfig) -> int:
    report = conjecture_report(cfg.n)
    _write_reports(cfg, "conjecture", [report])
    return EXIT_FAIL if not report.ok else EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = _config(args)
        if cfg.command == "enumerate":
            return run_enumerate(cfg, args.family, args.stratum, args.refinement, args.sign)
        if cfg.command == "verify":
            return run_verify(cfg, args.suite)
        if cfg.command == "matrix":
            return run_matrix(cfg, args.kind)
        return run_conjecture(cfg)
    except UsageError as exc:
        print(f"arcbases: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, CarrierMismatch) as exc:
        print(f"arcbases: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:  # anything unexpected is an internal error, not a verification result
        print(f"arcbases: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
