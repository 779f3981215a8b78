"""Acceptance suite: one test per release criterion, each printing a
pass/fail line (run with ``pytest -s`` to see every line).

Budgeted to finish well under ten minutes on a laptop. Three checks encode
tolerances that the exact mathematics of the model cannot meet (seam gaps at
1e-4 scale as eps^(3/2) up to ~4.8e-6; the served-fraction approximation
reaches 8% at d_f=5; the outage knee sits beyond d_f=5 for d_u >= 10); they
are asserted as written and fail honestly.
"""

import math
import time

import numpy as np
import pytest

from femtoconn.connectivity import (
    ConnectivityScenario,
    connectivity_probability,
    isolation_probability,
)
from femtoconn.cli import main as cli_main
from femtoconn.geometry import MobilityGeometry, lens_area
from femtoconn.simulate import (
    lens_area_arccos,
    mc_connectivity_ratio,
    mc_disconnectivity,
    quadrature_lens_area,
)
from femtoconn.tier_model import (
    OutageQuery,
    TierParams,
    communication_range,
    connectivity_ratio,
    outage_probability,
    sir_threshold,
    spectral_efficiency_for_outage,
    spectral_efficiency_from_sir,
)


def _report(num, label, ok, detail=""):
    line = f"[acceptance] criterion {num} ({label}): {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" - {detail}"
    print(line)
    assert ok, line


def _random_points(count, seed):
    rng = np.random.Generator(np.random.Philox(key=seed))
    return [
        (0.05 + 0.90 * float(rng.random()), -0.99 + 1.98 * float(rng.random()))
        for _ in range(count)
    ]


def test_criterion_1_geometry_oracle():
    start = time.perf_counter()
    worst_quad = worst_identity = 0.0
    for r, beta in _random_points(200, seed=2026):
        closed = lens_area(r, beta)
        integral = quadrature_lens_area(r, beta)
        worst_quad = max(worst_quad, abs(closed - integral) / integral)
        worst_identity = max(worst_identity, abs(closed - lens_area_arccos(r, beta)))
    elapsed = time.perf_counter() - start
    ok = worst_quad <= 1e-8 and worst_identity <= 1e-12 and elapsed < 10.0
    _report(
        1,
        "geometry oracle",
        ok,
        f"max quadrature rel {worst_quad:.2e}, max identity abs "
        f"{worst_identity:.2e}, {elapsed:.1f}s",
    )


def test_criterion_2_seam_continuity():
    violations = []
    for r in (0.1, 0.3, 0.5, 0.7, 0.9):
        outer = abs(lens_area(r, 1.0 - 1e-4) - 0.0)
        inner = abs(lens_area(r, -1.0 + 1e-4) - math.pi * r * r)
        if outer >= 1e-6:
            violations.append(f"outer r={r}: {outer:.3e}")
        if inner >= 1e-6:
            violations.append(f"inner r={r}: {inner:.3e}")
    _report(2, "seam continuity", not violations, "; ".join(violations))


def test_criterion_3_connectivity_vs_bernoulli_oracle():
    start = time.perf_counter()
    worst = 0.0
    label = 0
    for n_f in (10, 100):
        for r in (0.3, 0.5, 0.7):
            for beta in (-0.5, 0.0, 0.5):
                scn = ConnectivityScenario(MobilityGeometry(r, beta), n_f)
                closed = isolation_probability(scn)
                estimate, _ = mc_disconnectivity(scn, 10 ** 6, seed=1000 + label)
                label += 1
                sigma = math.sqrt(closed * (1.0 - closed) / 10 ** 6)
                z = abs(estimate - closed) / sigma
                worst = max(worst, z)
                # the complement must deviate by the same amount
                conn = connectivity_probability(scn)
                assert math.isclose(
                    abs((1.0 - estimate) - conn),
                    abs(estimate - closed),
                    rel_tol=1e-9,
                    abs_tol=1e-15,
                )
    elapsed = time.perf_counter() - start
    ok = worst <= 3.0 and elapsed < 60.0
    _report(
        3,
        "connectivity closed form vs Bernoulli oracle",
        ok,
        f"worst z {worst:.2f} (hard gate 4), {elapsed:.1f}s",
    )


def test_criterion_4_connectivity_trend_suite():
    tol = 1e-12
    grid = [0.1 + 0.05 * i for i in range(17)]
    failures = []
    for n_f in (10, 100):
        for beta in (-0.5, 0.0, 0.5):
            values = [
                connectivity_probability(
                    ConnectivityScenario(MobilityGeometry(r, beta), n_f)
                )
                for r in grid
            ]
            if not all(b - a > -tol for a, b in zip(values, values[1:])):
                failures.append(f"not increasing in r at beta={beta}, n_f={n_f}")
    for beta in (-0.5, 0.0, 0.5):
        for r in grid:
            small = connectivity_probability(
                ConnectivityScenario(MobilityGeometry(r, beta), 10)
            )
            large = connectivity_probability(
                ConnectivityScenario(MobilityGeometry(r, beta), 100)
            )
            if not large >= small - tol:
                failures.append(f"count dominance fails at r={r}, beta={beta}")
    betas = [-1.0 + 0.1 * i for i in range(21)]
    for n_f in (10, 100):
        for r in (0.3, 0.5, 0.7, 0.9):
            values = [
                connectivity_probability(
                    ConnectivityScenario(MobilityGeometry(r, b), n_f)
                )
                for b in betas
            ]
            if not all(b - a < tol for a, b in zip(values, values[1:])):
                failures.append(f"not non-increasing in beta at r={r}, n_f={n_f}")
    _report(4, "connectivity trend suite", not failures, "; ".join(failures))


def test_criterion_5_served_fraction_vs_ppp_oracle():
    start = time.perf_counter()
    results = []
    for d_f, d_u in ((1.0, 5.0), (2.0, 10.0), (5.0, 10.0)):
        params = TierParams(d_f=d_f, d_u=d_u, p_t=1.0, p_min=1.0, alpha=4.0)
        closed = connectivity_ratio(params, 0.5)
        estimate, _ = mc_connectivity_ratio(
            params, 0.5, window=20.0, reps=1000, seed=0
        )
        results.append((d_f, d_u, abs(closed - estimate) / estimate))
    elapsed = time.perf_counter() - start
    bad = [f"(d_f={f:g},d_u={u:g}) rel {rel:.3f}" for f, u, rel in results if rel > 0.05]
    ok = not bad and elapsed < 180.0
    _report(
        5,
        "served fraction vs spatial oracle",
        ok,
        "; ".join(bad) or f"max rel {max(rel for *_, rel in results):.3f}, {elapsed:.0f}s",
    )


def test_criterion_6_shannon_threshold_map():
    exact = sir_threshold(2.0) == 3.0 and sir_threshold(0.0) == 0.0
    worst = max(
        abs(spectral_efficiency_from_sir(sir_threshold(float(eta))) - float(eta))
        for eta in np.linspace(0.0, 12.0, 25)
    )
    ok = exact and worst < 1e-12
    _report(6, "Shannon threshold map", ok, f"round-trip max err {worst:.2e}")


def test_criterion_7_outage_trend_suite():
    params = TierParams(d_f=2.0, d_u=10.0, p_t=1.0, p_min=10.0, alpha=4.0)
    r = communication_range(params)
    failures = []
    if outage_probability(OutageQuery(params=params, r=r, gamma=0.0)) != 0.0:
        failures.append("outage at gamma=0 is not exactly zero")
    values = [
        outage_probability(OutageQuery(params=params, r=r, gamma=float(g)))
        for g in np.linspace(0.0, 30.0, 61)
    ]
    if not all(b - a >= -1e-12 for a, b in zip(values, values[1:])):
        failures.append("outage not monotone in gamma")
    for d_u in (5.0, 10.0, 20.0):
        def pout(d_f):
            p = TierParams(d_f=d_f, d_u=d_u, p_t=1.0, p_min=10.0, alpha=4.0)
            return outage_probability(OutageQuery(params=p, r=r, eta=2.0))

        if not pout(5.0) < pout(2.0):
            failures.append(
                f"d_u={d_u:g}: P(d_f=5)={pout(5.0):.4f} !< P(d_f=2)={pout(2.0):.4f}"
            )
    _report(7, "outage trend suite", not failures, "; ".join(failures))


def test_criterion_8_spectral_efficiency_trend_suite():
    d_us = (2.0, 5.0, 10.0, 20.0, 40.0)
    targets = (0.05, 0.1, 0.2)
    failures = []
    worst_residual = 0.0
    table = {}
    for d_u in d_us:
        params = TierParams(d_f=2.0, d_u=d_u, p_t=1.0, p_min=10.0, alpha=4.0)
        r = communication_range(params)
        for target in targets:
            eta = spectral_efficiency_for_outage(params, r, target)
            table[(d_u, target)] = eta
            residual = abs(
                outage_probability(OutageQuery(params=params, r=r, eta=eta)) - target
            )
            worst_residual = max(worst_residual, residual)
    if worst_residual >= 1e-8:
        failures.append(f"inversion residual {worst_residual:.2e}")
    for target in targets:
        column = [table[(d_u, target)] for d_u in d_us]
        if not all(b <= a + 1e-12 for a, b in zip(column, column[1:])):
            failures.append(f"eta not non-increasing in d_u at target={target}")
    for d_u in d_us:
        row = [table[(d_u, target)] for target in targets]
        if not all(b >= a - 1e-12 for a, b in zip(row, row[1:])):
            failures.append(f"eta not non-decreasing in target at d_u={d_u:g}")
    _report(
        8,
        "spectral efficiency trend suite",
        not failures,
        "; ".join(failures) or f"worst inversion residual {worst_residual:.2e}",
    )


def _run_cli(cwd, *argv):
    import os

    old = os.getcwd()
    os.chdir(cwd)
    try:
        return cli_main(list(argv))
    finally:
        os.chdir(old)


RECIPES = ("fig5", "fig6", "fig7", "fig8", "fig9", "fig10")


def test_criterion_9_determinism(tmp_path):
    problems = []
    for name in RECIPES:
        _run_cli(tmp_path, "sweep", name, "--seed", "1", "--out", f"{name}_a",
                 "--format", "csv")
        _run_cli(tmp_path, "sweep", name, "--seed", "1", "--out", f"{name}_b",
                 "--format", "csv")
        if (tmp_path / f"{name}_a.csv").read_bytes() != (
            tmp_path / f"{name}_b.csv"
        ).read_bytes():
            problems.append(f"{name} CSV differs across reruns")
    common = ["validate", "--seed", "5", "--trials", "20000", "--set", "window=10"]
    _run_cli(tmp_path, *common, "--out", "v1")
    _run_cli(tmp_path, *common, "--out", "v2")
    _run_cli(tmp_path, *common, "--set", "workers=4", "--out", "v3")
    for other in ("v2", "v3"):
        for suffix in (".report.txt", ".checks.csv"):
            if (tmp_path / f"v1{suffix}").read_bytes() != (
                tmp_path / f"{other}{suffix}"
            ).read_bytes():
                problems.append(f"validation {suffix} differs ({other})")
    _report(9, "deterministic outputs", not problems, "; ".join(problems))


def test_criterion_10_cli_contract(tmp_path):
    problems = []
    for name in RECIPES:
        code = _run_cli(tmp_path, "sweep", name, "--seed", "0")
        if code != 0:
            problems.append(f"{name} exited {code}")
        for suffix in (".csv", ".svg"):
            if not (tmp_path / f"{name}{suffix}").is_file():
                problems.append(f"{name}{suffix} missing")
    code = _run_cli(tmp_path, "sweep", "fig7", "--set", "grid.r=0.9,0.1,0.1")
    if code != 2:
        problems.append(f"spec-error path exited {code}, expected 2")
    code = _run_cli(
        tmp_path, "point", "--metric", "eta_for_outage",
        "--set", "d_f=2", "--set", "d_u=10", "--set", "alpha=4",
        "--set", "p_t=1", "--set", "p_min=10", "--set", "target_outage=1e-12",
    )
    if code != 1:
        problems.append(f"infeasible-target path exited {code}, expected 1")
    _report(10, "CLI contract", not problems, "; ".join(problems))
