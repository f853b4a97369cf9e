"""Command-line front end: JSON matrix I/O, single-instance computation and
verification, and random campaigns with JSON/CSV reports.

Exit codes: 0 success, 1 at least one FAIL verdict, 2 parse/validation
error, 3 operator without a weighted adjoint.
"""

from __future__ import annotations

import csv
import io
import json
import os
import sys
import tempfile

import click
import numpy as np

from . import __version__
from .campaign import campaign_config, resolve_threads, run_campaign
from .certify import CertifyConfig, certificate_record, run_suite, summarize
from .ensembles import FAMILIES, EnsembleSpec
from .errors import NoAdjointError, ShnrError, ZeroOperatorError
from .functionals import (
    ScanConfig,
    cos_A,
    crawford_A,
    dist_to_scalars,
    gap_bound,
    op_seminorm,
    sin_A,
    w_A,
)
from .space import make_space

QUANTITIES = ("normA", "wA", "crawford", "cos", "sin", "dist", "adjoint", "gap")
SUITE_NAMES = ("all", "section2", "section3", "section4")


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _parse_matrix(obj, name: str) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ValueError(f"{name}: expected an object with rows/cols/data")
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"{name}: missing or invalid rows/cols/data ({exc})") from exc
    if rows < 1 or cols < 1:
        raise ValueError(f"{name}: rows and cols must be positive")
    if not isinstance(data, list) or len(data) != rows * cols:
        raise ValueError(f"{name}: data must list rows*cols [re, im] pairs")
    out = np.empty((rows, cols), dtype=np.complex128)
    for k, pair in enumerate(data):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ValueError(f"{name}: data[{k}] is not an [re, im] pair")
        re, im = float(pair[0]), float(pair[1])
        if not (np.isfinite(re) and np.isfinite(im)):
            raise ValueError(f"{name}: data[{k}] is not finite")
        out[k // cols, k % cols] = complex(re, im)
    return out


def matrix_to_json(M: np.ndarray) -> dict:
    M = np.asarray(M, dtype=np.complex128)
    rows, cols = M.shape
    data = [[float(v.real), float(v.imag)] for v in M.reshape(-1)]
    return {"rows": rows, "cols": cols, "data": data}


def load_operator_file(path: str) -> dict:
    """Parse an operator bundle: required A and T, optional S and R."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("top-level JSON must be an object")
    out = {}
    for name in ("A", "T"):
        if name not in doc:
            raise ValueError(f"missing required matrix {name!r}")
        out[name] = _parse_matrix(doc[name], name)
    for name in ("S", "R"):
        if name in doc:
            out[name] = _parse_matrix(doc[name], name)
    n = out["A"].shape[0]
    for name, M in out.items():
        if M.shape != (n, n):
            raise ValueError(f"{name}: expected shape ({n}, {n}), got {M.shape}")
    return out


def atomic_write_text(path: str, text: str):
    """Write via a temp file and rename, so no partial file survives an error."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".shnr-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["trial", "id", "verdict", "min_slack", "tol", "terms", "slacks", "notes"])
    for rec in records:
        writer.writerow([
            rec.get("trial", 0),
            rec["id"],
            rec["verdict"],
            "" if rec["min_slack"] is None else repr(rec["min_slack"]),
            repr(rec["tol"]),
            json.dumps(rec["terms"]),
            json.dumps(rec["slacks"]),
            rec["notes"],
        ])
    return buf.getvalue()


def _fmt(x: float) -> str:
    return f"{x:.15g}"


@click.group()
@click.version_option(version=__version__, prog_name="shnr")
def main():
    """Weighted operator functionals and inequality certification."""


@main.command()
@click.option("--input", "input_path", required=True, help="Operator bundle JSON file.")
@click.option("--quantity", required=True, type=click.Choice(QUANTITIES))
@click.option("--grid-points", default=1024, show_default=True)
@click.option("--refine-tol", default=1e-12, show_default=True)
@click.option("--starts", default=12, show_default=True,
              help="Random starts for the angle cosine/sine search.")
def compute(input_path, quantity, grid_points, refine_tol, starts):
    """Compute one functional of T (adjoint prints a matrix, scans print 'lo hi')."""
    try:
        ops = load_operator_file(input_path)
        cfg = ScanConfig(grid_points=grid_points, refine_tol=refine_tol)
        sp = make_space(ops["A"])
    except (OSError, ValueError, json.JSONDecodeError, ShnrError) as exc:
        _fail(2, str(exc))
    T = ops["T"]
    try:
        if quantity == "adjoint":
            click.echo(json.dumps(matrix_to_json(sp.sharp(T))))
        elif quantity == "normA":
            click.echo(_fmt(op_seminorm(sp, T)))
        elif quantity == "wA":
            enc = w_A(sp, T, cfg)
            click.echo(f"{_fmt(enc.lo)} {_fmt(enc.hi)}")
        elif quantity == "crawford":
            enc = crawford_A(sp, T, cfg)
            click.echo(f"{_fmt(enc.lo)} {_fmt(enc.hi)}")
        elif quantity == "cos":
            click.echo(_fmt(cos_A(sp, T, starts=starts).value))
        elif quantity == "sin":
            click.echo(_fmt(sin_A(sp, T, starts=starts).value))
        elif quantity == "dist":
            click.echo(_fmt(dist_to_scalars(sp, T, cfg)))
        elif quantity == "gap":
            lhs, rhs = gap_bound(sp, T, cfg)
            click.echo(f"{_fmt(lhs)} {_fmt(rhs)}")
    except NoAdjointError as exc:
        _fail(3, str(exc))
    except ZeroOperatorError as exc:
        _fail(2, str(exc))


@main.command()
@click.option("--input", "input_path", required=True, help="Operator bundle JSON file.")
@click.option("--suite", default="all", show_default=True, type=click.Choice(SUITE_NAMES))
@click.option("--tol", default=1e-8, show_default=True)
@click.option("--output", "output_path", default=None, help="Write the JSON report here.")
def verify(input_path, suite, tol, output_path):
    """Evaluate an inequality suite on the operators of a bundle."""
    try:
        ops = load_operator_file(input_path)
        sp = make_space(ops["A"])
        cfg = CertifyConfig(tol=tol)
        operands = {k: v for k, v in ops.items() if k in ("T", "S", "R")}
        certs = run_suite(suite, sp, operands, cfg)
    except NoAdjointError as exc:
        _fail(3, str(exc))
    except (OSError, ValueError, json.JSONDecodeError, ShnrError) as exc:
        _fail(2, str(exc))
    records = [certificate_record(c) for c in certs]
    summary = summarize(certs)
    counts = summary["verdict_counts"]
    if output_path:
        import datetime

        report = {
            "metadata": {
                "tool": "shnr",
                "version": __version__,
                "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
                "suite": suite,
                "input": os.path.basename(input_path),
                "config": {"tol": tol},
            },
            "certificates": records,
            "aggregate": summary,
        }
        atomic_write_text(output_path, json.dumps(report, indent=2) + "\n")
    click.echo(
        f"suite={suite} certificates={len(records)} "
        f"PASS={counts['PASS']} FAIL={counts['FAIL']} INCONCLUSIVE={counts['INCONCLUSIVE']}"
    )
    sys.exit(1 if counts["FAIL"] else 0)


@main.command()
@click.option("--dim", required=True, type=int)
@click.option("--rank", required=True, type=int)
@click.option("--trials", required=True, type=int)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--family", default="generic", show_default=True, type=click.Choice(FAMILIES))
@click.option("--suite", default="all", show_default=True, type=click.Choice(SUITE_NAMES))
@click.option("--tol", default=1e-8, show_default=True)
@click.option("--output", "output_path", default=None,
              help="Report file; .csv extension selects CSV unless --format is given.")
@click.option("--format", "fmt", default=None, type=click.Choice(("json", "csv")))
@click.option("--threads", default=None, type=int,
              help="Worker processes (default: SHNR_THREADS or all cores).")
def campaign(dim, rank, trials, seed, family, suite, tol, output_path, fmt, threads):
    """Random-instance campaign: one record per (trial, certificate)."""
    try:
        spec = EnsembleSpec(dim=dim, rank=rank, trials=trials, seed=seed, family=family)
    except ValueError as exc:
        _fail(2, str(exc))
    try:
        report = run_campaign(spec, suite, campaign_config(tol), resolve_threads(threads))
    except ShnrError as exc:
        _fail(2, str(exc))
    if output_path:
        if fmt is None:
            fmt = "csv" if output_path.lower().endswith(".csv") else "json"
        if fmt == "csv":
            atomic_write_text(output_path, records_to_csv(report["certificates"]))
        else:
            atomic_write_text(output_path, json.dumps(report, indent=2) + "\n")
    counts = report["aggregate"]["verdict_counts"]
    click.echo(
        f"trials={trials} certificates={len(report['certificates'])} "
        f"PASS={counts['PASS']} FAIL={counts['FAIL']} INCONCLUSIVE={counts['INCONCLUSIVE']}"
    )
    sys.exit(1 if counts["FAIL"] else 0)


if __name__ == "__main__":
    main()
