"""Random-instance verification campaigns with a worker pool.

Trials are independent functions of ``(seed, trial_index)``, so reports are
identical across runs and across worker counts; the pool only changes how
the work is scheduled.  Worker count is taken from the ``SHNR_THREADS``
environment variable (default: available cores).
"""

from __future__ import annotations

import datetime
import multiprocessing
import os

from threadpoolctl import threadpool_limits

from . import __version__
from .certify import REGISTRY, SUITES, CertifyConfig, certificate_record, run_suite
from .ensembles import EnsembleSpec, gen_operator, gen_space
from .functionals import ScanConfig


def campaign_config(tol: float = 1e-8) -> CertifyConfig:
    """Scan parameters tuned for large campaigns.

    Enclosures stay certified; only their width targets are loosened to
    1e-9, well inside the verdict tolerance.
    """
    return CertifyConfig(
        scan=ScanConfig(grid_points=48, refine_tol=1e-9, max_refine_iters=24),
        tol=tol,
        char_grid=192,
        cos_starts=8,
        cos_dense_samples=12_000,
    )


def resolve_threads(threads: int | None = None) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("SHNR_THREADS", "").strip()
    if env:
        return max(1, int(env))
    return max(1, os.cpu_count() or 1)


def _suite_needs_s(suite: str) -> bool:
    return any(REGISTRY[i].needs_S for i in SUITES[suite])


def _limit_blas():
    # workers each own one core; nested BLAS threading only adds contention
    threadpool_limits(limits=1)


def _trial_records(args):
    spec, suite, cfg, trial = args
    sp = gen_space(spec, trial)
    operands = {"T": gen_operator(spec, sp, trial, component=0)}
    if _suite_needs_s(suite):
        operands["S"] = gen_operator(spec, sp, trial, component=1)
    records = []
    for cert in run_suite(suite, sp, operands, cfg):
        rec = certificate_record(cert)
        rec["trial"] = trial
        records.append(rec)
    return records


def aggregate_records(records) -> dict:
    counts = {"PASS": 0, "FAIL": 0, "INCONCLUSIVE": 0}
    per_id: dict[str, dict] = {}
    for rec in records:
        counts[rec["verdict"]] += 1
        entry = per_id.setdefault(
            rec["id"],
            {"PASS": 0, "FAIL": 0, "INCONCLUSIVE": 0, "min_slack": None,
             "mean_slack": 0.0, "slack_count": 0},
        )
        entry[rec["verdict"]] += 1
        ms = rec["min_slack"]
        if ms is not None:
            entry["min_slack"] = ms if entry["min_slack"] is None else min(entry["min_slack"], ms)
            entry["mean_slack"] += ms
            entry["slack_count"] += 1
    for entry in per_id.values():
        if entry["slack_count"]:
            entry["mean_slack"] /= entry["slack_count"]
        else:
            entry["mean_slack"] = None
        del entry["slack_count"]
    return {"verdict_counts": counts, "per_id": per_id}


def build_report(records, metadata) -> dict:
    return {
        "metadata": metadata,
        "certificates": list(records),
        "aggregate": aggregate_records(records),
    }


def run_campaign(spec: EnsembleSpec, suite: str, cfg: CertifyConfig | None = None,
                 threads: int | None = None) -> dict:
    """Run ``spec.trials`` independent trials of a suite and build a report."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    cfg = cfg or campaign_config()
    threads = resolve_threads(threads)
    jobs = [(spec, suite, cfg, trial) for trial in range(spec.trials)]
    if threads == 1 or spec.trials == 1:
        per_trial = [_trial_records(job) for job in jobs]
    else:
        ctx = multiprocessing.get_context("fork")
        chunk = max(1, spec.trials // (threads * 8))
        with ctx.Pool(processes=min(threads, spec.trials), initializer=_limit_blas) as pool:
            per_trial = pool.map(_trial_records, jobs, chunksize=chunk)
    records = [rec for batch in per_trial for rec in batch]
    metadata = {
        "tool": "shnr",
        "version": __version__,
        "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "suite": suite,
        "spec": {
            "dim": spec.dim,
            "rank": spec.rank,
            "trials": spec.trials,
            "seed": spec.seed,
            "family": spec.family,
        },
        "config": {
            "tol": cfg.tol,
            "grid_points": cfg.scan.grid_points,
            "refine_tol": cfg.scan.refine_tol,
            "max_refine_iters": cfg.scan.max_refine_iters,
            "char_grid": cfg.char_grid,
            "cos_starts": cfg.cos_starts,
            "cos_dense_samples": cfg.cos_dense_samples,
        },
    }
    return build_report(records, metadata)
