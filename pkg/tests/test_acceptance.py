"""Acceptance gate: every criterion at its stated tolerance.

Each test prints one line so a verbose run reads as a checklist.  The
random-instance campaigns in criteria 4, 5 and 8 use the campaign scan
configuration; single-instance criteria use the default (tight) scans.
"""

import json
import math
import time

import numpy as np
import pytest

from shnr.campaign import campaign_config, run_campaign
from shnr.certify import evaluate_certificate
from shnr.ensembles import EnsembleSpec, gen_operator, gen_space
from shnr.functionals import (
    cos_A,
    crawford_A,
    dist_to_scalars,
    op_seminorm,
    oracle_sample_cA,
    oracle_sample_normA,
    oracle_sample_wA,
    w_A,
)
from shnr.space import make_space

A_EX = np.array([[1.0, 1.0], [1.0, 1.0]], dtype=complex)
T_EX = np.array([[2.0, 2.0], [0.0, 0.0]], dtype=complex)


def _report(capfd, name, ok, detail=""):
    # bypass capture so the checklist lines reach the terminal without -s
    with capfd.disabled():
        print(f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'} {detail}", flush=True)
    assert ok, f"{name}: {detail}"


def mixed_rank_instances(seed, count, dims=(2, 3, 4, 5, 6)):
    out = []
    for k in range(count):
        dim = dims[k % len(dims)]
        rank = 1 + (seed + k) % dim
        spec = EnsembleSpec(dim=dim, rank=rank, trials=1, seed=seed + k)
        sp = gen_space(spec, 0)
        out.append((sp, gen_operator(spec, sp, 0, 0), gen_operator(spec, sp, 0, 1)))
    return out


def test_criterion_1_worked_example_exact(capfd):
    start = time.perf_counter()
    sp = make_space(A_EX)
    sharp = sp.sharp(T_EX)
    expected = np.array([[1.0, 1.0], [1.0, 1.0]])
    err = np.abs(sharp - expected).max()
    selfadj = sp.is_A_selfadjoint(T_EX)
    differs = np.abs(sharp - T_EX).max() > 0.5
    elapsed = time.perf_counter() - start
    ok = err <= 1e-12 and selfadj and differs and elapsed < 1.0
    _report(capfd, "1 worked-example", ok,
            f"entry error {err:.2e}, selfadjoint={selfadj}, sharp!=T={differs}, {elapsed:.3f}s")


def test_criterion_2_adjoint_calculus_suite(capfd):
    start = time.perf_counter()
    worst = 0.0
    for sp, T, S in mixed_rank_instances(1000, 1000):
        Ts = sp.sharp(T)
        # residuals relative to the computed quantities themselves: the
        # pseudoinverse amplifies by the weight's condition number, so the
        # operand norms are not the right yardstick
        lhs, rhs = sp.A @ Ts, T.conj().T @ sp.A
        worst = max(worst, np.linalg.norm(lhs - rhs)
                    / max(1.0, np.linalg.norm(lhs), np.linalg.norm(rhs)))
        lhs, rhs = sp.sharp(T @ S), sp.sharp(S) @ Ts
        worst = max(worst, np.linalg.norm(lhs - rhs)
                    / max(1.0, np.linalg.norm(lhs), np.linalg.norm(rhs)))
        worst = max(worst, np.linalg.norm(sp.sharp(Ts) - sp.P @ T @ sp.P)
                    / max(1.0, np.linalg.norm(Ts)))
        n = op_seminorm(sp, T)
        worst = max(worst, abs(op_seminorm(sp, Ts @ T) - n * n) / max(1.0, n * n))
        worst = max(worst, abs(op_seminorm(sp, Ts) ** 2 - n * n) / max(1.0, n * n))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8 and elapsed < 30.0
    _report(capfd, "2 adjoint-calculus", ok, f"worst residual {worst:.2e}, {elapsed:.1f}s")


def test_criterion_3_characterization_equalities(capfd):
    grid = 4096
    worst_theta = 0.0
    worst_ab = 0.0
    thetas = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    for sp, T, _ in mixed_rank_instances(3000, 200):
        B = sp.compress(T).B
        if B.shape[0] == 0:
            continue
        w = w_A(sp, T).value
        scale = max(1.0, op_seminorm(sp, T))
        ph = np.exp(1j * thetas)
        H = 0.5 * (ph[:, None, None] * B + np.conj(ph)[:, None, None] * B.conj().T)
        ev = np.linalg.eigvalsh(H)
        sup_theta = float(np.maximum(ev[:, -1], -ev[:, 0]).max())
        worst_theta = max(worst_theta, abs(w - sup_theta) / scale)
        M = 0.5 * (B + B.conj().T)
        N = (B - B.conj().T) / 2j
        G = np.cos(thetas)[:, None, None] * M + np.sin(thetas)[:, None, None] * N
        ev = np.linalg.eigvalsh(G)
        sup_ab = float(np.maximum(ev[:, -1], -ev[:, 0]).max())
        worst_ab = max(worst_ab, abs(w - sup_ab) / scale)
    ok = worst_theta <= 1e-6 and worst_ab <= 1e-6
    _report(capfd, "3 characterizations", ok,
            f"theta-grid dev {worst_theta:.2e}, alpha-beta dev {worst_ab:.2e}")


def test_criterion_4_full_inequality_campaign(capfd):
    start = time.perf_counter()
    trials_total = 0
    fails = []
    flagged_inconclusive = 0
    skips = 0
    for dim in range(2, 7):
        for rank in sorted({dim, dim - 1, (dim + 1) // 2}):
            spec = EnsembleSpec(dim=dim, rank=rank, trials=500, seed=20260811)
            report = run_campaign(spec, "all", campaign_config(1e-8))
            trials_total += spec.trials
            for rec in report["certificates"]:
                if rec["verdict"] == "FAIL":
                    fails.append((dim, rank, rec["trial"], rec["id"]))
                elif rec["verdict"] == "INCONCLUSIVE":
                    if "hypothesis not met" in rec["notes"]:
                        skips += 1  # PROD-COND conditional rows, not heuristic gaps
                    else:
                        flagged_inconclusive += 1
                        assert rec["id"] == "LOWER-SIN", rec
    elapsed = time.perf_counter() - start
    budget = flagged_inconclusive <= 0.01 * trials_total
    ok = not fails and budget and elapsed < 180.0
    _report(capfd, "4 inequality-campaign", ok,
            f"{trials_total} trials, FAIL={len(fails)} {fails[:3]}, "
            f"flagged INCONCLUSIVE={flagged_inconclusive}, cond-skips={skips}, {elapsed:.0f}s")


def test_criterion_5_tightness_witnesses(capfd):
    cfg = campaign_config()
    worst_low = 0.0
    worst_up = 0.0
    worst_eq = 0.0
    for k in range(150):
        dim = (2, 3, 4, 6)[k % 4]
        spec = EnsembleSpec(dim=dim, rank=dim, trials=1, seed=5000 + k,
                            family="nilpotent_classical")
        sp = gen_space(spec, 0)
        cert = evaluate_certificate("PWR-BOUNDS", sp, {"T": gen_operator(spec, sp, 0)}, cfg)
        worst_low = max(worst_low, abs(cert.slacks[0]))

        spec = EnsembleSpec(dim=dim, rank=dim, trials=1, seed=6000 + k,
                            family="normal_classical")
        sp = gen_space(spec, 0)
        cert = evaluate_certificate("PWR-BOUNDS", sp, {"T": gen_operator(spec, sp, 0)}, cfg)
        worst_up = max(worst_up, abs(cert.slacks[1]))

        spec = EnsembleSpec(dim=dim, rank=1 + k % dim, trials=1, seed=7000 + k,
                            family="a_selfadjoint")
        sp = gen_space(spec, 0)
        T = gen_operator(spec, sp, 0)
        worst_eq = max(worst_eq, abs(w_A(sp, T, cfg.scan).value - op_seminorm(sp, T)))
    ok = worst_low <= 1e-9 and worst_up <= 1e-9 and worst_eq <= 1e-9
    _report(capfd, "5 tightness-witnesses", ok,
            f"nilpotent low {worst_low:.2e}, normal up {worst_up:.2e}, selfadj eq {worst_eq:.2e}")


def test_criterion_6_oracle_equivalence(capfd):
    samples = 1_000_000
    worst = {"w_hi": -1.0, "w_lo": -1.0, "n_hi": -1.0, "n_lo": -1.0,
             "c_lo": -1.0, "c_hi": -1.0, "cos": -1.0}
    rng = np.random.default_rng(99)
    cases = []
    for k, (dim, rank) in enumerate(((2, 2), (2, 1), (3, 3), (3, 2), (3, 3), (2, 2))):
        spec = EnsembleSpec(dim=dim, rank=rank, trials=1, seed=8000 + k)
        sp = gen_space(spec, 0)
        T = gen_operator(spec, sp, 0)
        T = T / max(op_seminorm(sp, T), 1e-12)  # unit seminorm, representative scale
        cases.append((sp, T, 8000 + k))
    for sp, T, seed in cases:
        enc = w_A(sp, T)
        ow = oracle_sample_wA(sp, T, samples, seed)
        worst["w_hi"] = max(worst["w_hi"], ow - enc.hi)
        worst["w_lo"] = max(worst["w_lo"], enc.lo - ow)

        n = op_seminorm(sp, T)
        on = oracle_sample_normA(sp, T, samples, seed)
        worst["n_hi"] = max(worst["n_hi"], on - n)
        worst["n_lo"] = max(worst["n_lo"], n - on)

        cenc = crawford_A(sp, T)
        oc = oracle_sample_cA(sp, T, samples, seed)
        worst["c_lo"] = max(worst["c_lo"], cenc.lo - oc)
        worst["c_hi"] = max(worst["c_hi"], oc - cenc.hi)

        est = cos_A(sp, T)
        assert est.certified
        B = sp.compress(T).B
        r = B.shape[0]
        brute = np.inf
        for _ in range(10):  # 10 chunks of 100k = 1e6 dense samples
            Y = rng.standard_normal((100_000, r)) + 1j * rng.standard_normal((100_000, r))
            BY = Y @ B.T
            num = np.abs(np.einsum("ki,ki->k", np.conj(Y), BY))
            den = np.linalg.norm(BY, axis=1) * np.linalg.norm(Y, axis=1)
            good = den > 1e-12
            brute = min(brute, float((num[good] / den[good]).min()))
        worst["cos"] = max(worst["cos"], abs(est.value - brute))
    ok = (worst["w_hi"] <= 1e-9 and worst["w_lo"] <= 5e-3
          and worst["n_hi"] <= 1e-9 and worst["n_lo"] <= 5e-3
          and worst["c_lo"] <= 1e-9 and worst["c_hi"] <= 5e-3
          and worst["cos"] <= 5e-3)
    _report(capfd, "6 oracle-equivalence", ok, " ".join(f"{k}={v:.2e}" for k, v in worst.items()))


def test_criterion_7_classical_limit(capfd):
    sp = make_space(np.eye(2))
    T = np.array([[0.0, 1.0], [0.0, 0.0]])
    w = w_A(sp, T).value
    n = op_seminorm(sp, T)
    c = crawford_A(sp, T).value
    d = dist_to_scalars(sp, T)
    devs = (abs(w - 0.5), abs(n - 1.0), abs(c - 0.0), abs(d - 0.5))
    ok = all(dev <= 1e-9 for dev in devs)
    _report(capfd, "7 classical-limit", ok,
            f"w dev {devs[0]:.2e}, norm dev {devs[1]:.2e}, c dev {devs[2]:.2e}, d dev {devs[3]:.2e}")


def test_criterion_8_campaign_determinism(capfd):
    spec = EnsembleSpec(dim=4, rank=3, trials=10, seed=77)
    reports = []
    for threads in (1, 2, 1):
        rep = run_campaign(spec, "all", campaign_config(1e-8), threads=threads)
        rep["metadata"] = {k: v for k, v in rep["metadata"].items() if k != "generated_at"}
        reports.append(json.dumps(rep, sort_keys=True))
    ok = reports[0] == reports[1] == reports[2]
    _report(capfd, "8 determinism", ok, f"{len(reports)} runs, report bytes {len(reports[0])}")
