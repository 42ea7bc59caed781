"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import math
import time

import numpy as np

from partasym import exact, limits, saddle, special
from partasym.errors import FeasibilityError
from partasym.limits import C, erdos_ln_q, mb_limit_ln_q, szekeres_bounded_ln_q

import oracles

U, D, BD = saddle.ModelKind.UNRESTRICTED, saddle.ModelKind.DISTINCT, saddle.ModelKind.BOUNDED


def _rel_ln(est, count):
    ln_q = count.ln_value
    return abs(est.ln_value - ln_q) / ln_q


def test_criterion_01_shift_identity(report):
    t0 = time.perf_counter()
    bad = [(E, N) for E in range(301) for N in range(25) if not exact.verify_shift_identity(E, N)]
    dt = time.perf_counter() - t0
    ok = report(1, not bad and dt < 10, f"shift identity on E<=300, N<=24, {len(bad)} mismatches, {dt:.2f}s")
    assert ok


def test_criterion_02_totals_identity(report):
    t0 = time.perf_counter()
    bad = []
    for E in range(501):
        total = sum(exact.count_distinct(E, N).value for N in range(E + 1) if N * (N + 1) <= 2 * E)
        if total != exact.count_distinct_total(E).value:
            bad.append(E)
    dt = time.perf_counter() - t0
    ok = report(2, not bad and dt < 30, f"sum over N equals total for E<=500, {len(bad)} mismatches, {dt:.2f}s")
    assert ok


def test_criterion_03_special_values(report):
    err0 = abs(special.g_plus(math.log(2)).value - math.pi ** 2 / 12)
    worst = max(abs(special.g_plus(v).value - special.g_minus(v).value - v * v / 2)
                for v in np.logspace(-6, math.log10(50), 100))
    ok = report(3, err0 <= 1e-12 and worst <= 1e-12,
                f"g_plus(ln2) off by {err0:.1e}, worst identity gap {worst:.1e}")
    assert ok


def _residual_grid(model):
    pts = []
    for E in (30, 200, 1000, 5000, 20000, 10 ** 5, 10 ** 6, 10 ** 7):
        for u in (0.02, 0.1, 0.3, 0.6, 0.9, 1.2, 1.35, 2.0, 4.0):
            N = max(1, round(u * math.sqrt(E)))
            Bs = [None] if model is not BD else [N + 1 + round(k * math.sqrt(E)) for k in (0.5, 1, 3, 10)]
            for B in Bs:
                try:
                    saddle.check_feasible(model, E, N, B)
                except FeasibilityError:
                    continue
                pts.append((E, N, B))
    return pts


def _alpha_relation_error(sol):
    a, v = sol.alpha_star, sol.v
    if sol.model is U:
        lhs, rhs = math.exp(-a), -math.expm1(-v)
    elif sol.model is D:
        lhs, rhs = math.exp(-a), math.expm1(v)
    else:
        # e^{-alpha} = e^w - 1 with e^w - 1 = (e^v - 1) / (1 - e^{v(1 - 1/p)})
        lhs = math.exp(-a)
        rhs = math.expm1(v) / -math.expm1(v * (1 - 1 / sol.p))
    return abs(lhs - rhs) / abs(rhs)


def test_criterion_04_saddle_residuals(report):
    parts = []
    ok = True
    for model in (U, D, BD):
        pts = _residual_grid(model)
        worst_res = worst_alpha = 0.0
        for E, N, B in pts:
            sol = saddle.solve_saddle(model, E, N, B)
            scale = max(1.0, sol.v ** 2 / sol.u ** 2)
            worst_res = max(worst_res, saddle.saddle_residual(sol) / scale)
            worst_alpha = max(worst_alpha, _alpha_relation_error(sol))
        ok &= len(pts) >= 50 and worst_res <= 1e-10 and worst_alpha <= 1e-10
        parts.append(f"{model.value} n={len(pts)} res {worst_res:.1e} alpha {worst_alpha:.1e}")
    report(4, ok, "; ".join(parts))
    assert ok


def _hessian_samples(model):
    out = []
    for E in (400, 1000, 3000, 10 ** 4):
        for u in (0.3, 0.7, 1.1):
            N = round(u * math.sqrt(E))
            if model is BD:
                # closed form holds where beta* B is large
                B = math.ceil(25 * N / saddle.solve_saddle(D, E, N).v)
                out.append((E, N, B))
            else:
                out.append((E, N, None))
    return out


def test_criterion_05_hessian(report):
    parts = []
    ok = True
    for model in (U, D, BD):
        samples = _hessian_samples(model)
        worst = 0.0
        for E, N, B in samples:
            sol = saddle.solve_saddle(model, E, N, B)
            *_, D_fd = oracles.entropy_hessian_fd(model, sol)
            worst = max(worst, oracles.relerr(saddle.hessian_det(sol), D_fd))
        ok &= len(samples) >= 10 and worst <= 1e-4
        parts.append(f"{model.value} n={len(samples)} worst {worst:.1e}")
    report(5, ok, "; ".join(parts))
    assert ok


def test_criterion_06_distinct_accuracy(report):
    t0 = time.perf_counter()
    rel = _rel_ln(saddle.estimate(D, 2000, 35), exact.count_distinct(2000, 35))
    errs = {}
    for E in (500, 2000):
        N = round(0.55 * math.sqrt(E))
        errs[E] = _rel_ln(saddle.estimate(D, E, N), exact.count_distinct(E, N))
    dt = time.perf_counter() - t0
    ok = rel <= 0.02 and errs[2000] < errs[500] and dt < 120
    report(6, ok, f"rel {rel:.2e} at (2000,35); u=0.55 rel {errs[500]:.2e} -> {errs[2000]:.2e}, {dt:.2f}s")
    assert ok


def test_criterion_07_unrestricted_accuracy(report):
    rel = _rel_ln(saddle.estimate(U, 2000, 44), exact.count_unrestricted_max_parts(2000, 44))
    ok = report(7, rel <= 0.02, f"rel {rel:.2e} at (2000,44)")
    assert ok


def test_criterion_08_bounded_accuracy(report):
    rel = _rel_ln(saddle.estimate(BD, 1000, 25, 80), exact.count_distinct_bounded(1000, 25, 80))
    E, N = 2000, 35
    B = math.ceil(50 * math.sqrt(E))
    gap = abs(saddle.estimate(BD, E, N, B).ln_value - saddle.estimate(D, E, N).ln_value)
    ok = report(8, rel <= 0.05 and gap <= 1e-6, f"rel {rel:.2e} at (1000,25,80); |dln| {gap:.1e} at B=50sqrt(E)")
    assert ok


def test_criterion_09_mb_limit(report):
    est = saddle.estimate(D, 10 ** 8, 6).ln_value
    gap = abs(est - mb_limit_ln_q(10 ** 8, 6))
    ok = report(9, gap <= 0.05 * abs(est), f"|dln| {gap:.2e} vs bound {0.05 * abs(est):.2e}")
    assert ok


def test_criterion_10_erdos_limit(report):
    E = 2500
    N = round(math.sqrt(E) * math.log(2) / C)
    est = saddle.estimate(D, E, N).ln_value
    corrected = abs(est - erdos_ln_q(E, N))
    printed = abs(est - erdos_ln_q(E, N, include_inverse_energy=False))
    ok = report(10, corrected <= 0.5 and printed > 0.5,
                f"N={N}, corrected |dln| {corrected:.3f}, without 1/E {printed:.3f}")
    assert ok


def test_criterion_11_szekeres_sign(report):
    E = 2500
    N = round(math.sqrt(E) * math.log(2) / C)
    B = round(3 * math.sqrt(E))
    est = saddle.estimate(BD, E, N, B).ln_value
    decaying = abs(est - szekeres_bounded_ln_q(E, N, B))
    growing = abs(est - szekeres_bounded_ln_q(E, N, B, decaying=False))
    ln_q = exact.count_distinct_bounded(E, N, B).ln_value
    ok = report(11, decaying <= 1.0 and growing > 10,
                f"N={N}, B={B}, decaying |dln| {decaying:.3f} (exact-vs-limit {abs(ln_q - szekeres_bounded_ln_q(E, N, B)):.3f}), "
                f"growing |dln| {growing:.1f}")
    assert ok


def test_criterion_12_brute_force(report):
    t0 = time.perf_counter()
    bad = []
    for E in range(41):
        if exact.count_distinct_total(E).value != oracles.brute_distinct_total(E):
            bad.append(("total", E))
        for N in range(9):
            if exact.count_unrestricted_max_parts(E, N).value != oracles.brute_at_most_parts(E, N):
                bad.append(("unrestricted", E, N))
            if exact.count_distinct(E, N).value != oracles.brute_distinct(E, N):
                bad.append(("distinct", E, N))
            for B in range(1, 21):
                if exact.count_distinct_bounded(E, N, B).value != oracles.brute_distinct(E, N, B):
                    bad.append(("bounded", E, N, B))
    dt = time.perf_counter() - t0
    ok = report(12, not bad and dt < 60, f"E<=40, N<=8, B<=20, {len(bad)} mismatches, {dt:.2f}s")
    assert ok


def test_limits_module_importable():
    assert limits.CONSTANTS.c == C
