"""Validation suite running every closed form against its independent oracle.

Produces a structured text report and a CSV table listing each
oracle/closed-form pair with its estimate, standard error, deviation and
status. Gates: the quadrature oracle must match the lens closed form to
1e-8 relative and the arccosine identity to 1e-12; Monte Carlo frequencies
are expected inside a 3-sigma binomial band and fail the run beyond 4 sigma;
the spatial served-fraction approximation is held to 5% relative. The
spatial outage estimate is reported for reference without a gate.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from . import __version__
from .connectivity import ConnectivityScenario, isolation_probability
from .geometry import MobilityGeometry, lens_area
from .simulate import (
    lens_area_arccos,
    mc_connectivity_ratio,
    mc_disconnectivity,
    mc_lens_area,
    mc_outage,
    quadrature_lens_area,
)
from .tier_model import (
    OutageQuery,
    TierParams,
    connectivity_ratio,
    outage_probability,
)

__all__ = ["OracleCheck", "ValidationReport", "run_validation"]

#: (r, beta) grid shared by the Monte Carlo geometry and connectivity checks.
MC_GRID = tuple(
    (r, beta) for r in (0.3, 0.5, 0.7) for beta in (-0.5, 0.0, 0.5)
)
#: Femtocell counts for the Bernoulli disconnectivity checks.
MC_COUNTS = (10, 100)
#: (d_f, d_u) pairs for the spatial served-fraction checks, all at r = 0.5.
PPP_GRID = ((1.0, 5.0), (2.0, 10.0), (5.0, 10.0))
PPP_RANGE = 0.5
#: Points drawn for the quadrature and identity sweeps.
QUAD_POINTS = 200


@dataclass(frozen=True)
class OracleCheck:
    """One oracle/closed-form comparison row of the validation report."""

    name: str
    closed_form: float
    estimate: float
    std_error: float
    deviation: float
    gate: str
    status: str


@dataclass(frozen=True)
class ValidationReport:
    """All comparison rows plus the run parameters that produced them."""

    checks: tuple
    seed: int
    trials: int
    reps: int
    window: float

    @property
    def passed(self) -> bool:
        return all(check.status != "fail" for check in self.checks)

    def summary_text(self) -> str:
        out = io.StringIO()
        out.write(f"femtoconn {__version__} validation report\n")
        out.write(
            f"seed={self.seed} trials={self.trials} reps={self.reps} "
            f"window={_fmt(self.window)}\n"
        )
        out.write("\n")
        width = max(len(check.name) for check in self.checks)
        for check in self.checks:
            out.write(
                f"{check.name:<{width}}  closed={_fmt(check.closed_form)}"
                f"  estimate={_fmt(check.estimate)}"
                f"  stderr={_fmt(check.std_error)}"
                f"  deviation={_fmt(check.deviation)}"
                f"  gate={check.gate}  [{check.status.upper()}]\n"
            )
        out.write("\n")
        counts = {status: 0 for status in ("pass", "warn", "fail", "info")}
        for check in self.checks:
            counts[check.status] += 1
        out.write(
            f"{counts['pass']} passed, {counts['warn']} warnings, "
            f"{counts['fail']} failed, {counts['info']} informational\n"
        )
        out.write("RESULT: " + ("PASS" if self.passed else "FAIL") + "\n")
        return out.getvalue()

    def csv_text(self) -> str:
        out = io.StringIO()
        out.write(f"# tool=femtoconn {__version__}\n")
        out.write(f"# seed={self.seed}\n")
        out.write(f"# trials={self.trials}\n")
        out.write(f"# reps={self.reps}\n")
        out.write(f"# window={_fmt(self.window)}\n")
        out.write("name,closed_form,estimate,std_error,deviation,gate,status\n")
        for check in self.checks:
            out.write(
                f"{check.name},{_fmt(check.closed_form)},{_fmt(check.estimate)},"
                f"{_fmt(check.std_error)},{_fmt(check.deviation)},"
                f"{check.gate},{check.status}\n"
            )
        return out.getvalue()


def _fmt(value: float) -> str:
    return repr(float(value))


def _sigma_check(name: str, closed: float, estimate: float, n: int) -> OracleCheck:
    sigma = math.sqrt(closed * (1.0 - closed) / n)
    if sigma == 0.0:
        deviation = 0.0 if estimate == closed else math.inf
    else:
        deviation = abs(estimate - closed) / sigma
    status = "pass" if deviation <= 3.0 else ("warn" if deviation <= 4.0 else "fail")
    return OracleCheck(
        name=name,
        closed_form=closed,
        estimate=estimate,
        std_error=sigma,
        deviation=deviation,
        gate="<=3sigma(warn<=4)",
        status=status,
    )


def _relative_check(
    name: str, closed: float, estimate: float, std_error: float, tol: float
) -> OracleCheck:
    deviation = abs(closed - estimate) / abs(estimate) if estimate else math.inf
    status = "pass" if deviation <= tol else "fail"
    return OracleCheck(
        name=name,
        closed_form=closed,
        estimate=estimate,
        std_error=std_error,
        deviation=deviation,
        gate=f"<={_fmt(tol)}rel",
        status=status,
    )


def _check_seed(seed: int, label: int) -> int:
    """Decorrelated per-check seed derived from the base seed."""
    state = np.random.SeedSequence(entropy=[seed, label]).generate_state(1, np.uint64)
    return int(state[0])


def _random_lens_points(seed: int) -> list:
    rng = np.random.Generator(np.random.Philox(key=_check_seed(seed, 0)))
    points = []
    for _ in range(QUAD_POINTS):
        r = 0.05 + 0.90 * rng.random()
        beta = -0.99 + 1.98 * rng.random()
        points.append((float(r), float(beta)))
    return points


def run_validation(
    seed: int = 0,
    trials: int = 10 ** 6,
    reps: int = 1000,
    window: float = 20.0,
    workers: int = 1,
) -> ValidationReport:
    """Run the full oracle/closed-form grid and collect one row per check.

    ``trials`` drives the Bernoulli oracles (minimum 1e4), ``reps`` and
    ``window`` the spatial ones. Identical arguments produce identical
    reports, independent of ``workers``.
    """
    if trials < 10_000:
        raise ValueError(f"need a trial budget of at least 1e4, got {trials!r}")
    checks = []

    # closed form vs adaptive quadrature and vs the arccosine identity
    worst_quad = 0.0
    worst_quad_point = (0.0, 0.0)
    worst_identity = 0.0
    for r, beta in _random_lens_points(seed):
        closed = lens_area(r, beta)
        reference = quadrature_lens_area(r, beta)
        rel = abs(closed - reference) / reference
        if rel > worst_quad:
            worst_quad, worst_quad_point = rel, (r, beta)
        worst_identity = max(worst_identity, abs(closed - lens_area_arccos(r, beta)))
    checks.append(
        OracleCheck(
            name=f"lens/quadrature[{QUAD_POINTS}pt,max-rel]",
            closed_form=lens_area(*worst_quad_point),
            estimate=quadrature_lens_area(*worst_quad_point),
            std_error=0.0,
            deviation=worst_quad,
            gate="<=1e-08rel",
            status="pass" if worst_quad <= 1e-8 else "fail",
        )
    )
    checks.append(
        OracleCheck(
            name=f"lens/arccos-identity[{QUAD_POINTS}pt,max-abs]",
            closed_form=0.0,
            estimate=0.0,
            std_error=0.0,
            deviation=worst_identity,
            gate="<=1e-12abs",
            status="pass" if worst_identity <= 1e-12 else "fail",
        )
    )

    # hit-or-miss area oracle
    for i, (r, beta) in enumerate(MC_GRID):
        closed = lens_area(r, beta)
        estimate, _ = mc_lens_area(r, beta, trials, seed=_check_seed(seed, 100 + i))
        disk = math.pi * r * r
        checks.append(
            _sigma_check(
                f"lens/mc[r={r:g},beta={beta:g}]",
                closed / disk,
                estimate / disk,
                trials,
            )
        )

    # Bernoulli disconnectivity oracle
    label = 200
    for n_f in MC_COUNTS:
        for r, beta in MC_GRID:
            scn = ConnectivityScenario(MobilityGeometry(r, beta), n_f)
            closed = isolation_probability(scn)
            estimate, _ = mc_disconnectivity(scn, trials, seed=_check_seed(seed, label))
            label += 1
            checks.append(
                _sigma_check(
                    f"disconnect/mc[r={r:g},beta={beta:g},n_f={n_f}]",
                    closed,
                    estimate,
                    trials,
                )
            )

    # spatial PPP served-fraction oracle
    for i, (d_f, d_u) in enumerate(PPP_GRID):
        params = TierParams(d_f=d_f, d_u=d_u, p_t=1.0, p_min=1.0, alpha=4.0)
        closed = connectivity_ratio(params, PPP_RANGE)
        estimate, std_error = mc_connectivity_ratio(
            params,
            PPP_RANGE,
            window=window,
            reps=reps,
            seed=_check_seed(seed, 300 + i),
            workers=workers,
        )
        checks.append(
            _relative_check(
                f"served-fraction/ppp[d_f={d_f:g},d_u={d_u:g}]",
                closed,
                estimate,
                std_error,
                tol=0.05,
            )
        )

    # spatial outage estimate: reported only, the interferer population is
    # an interpretation rather than a pinned model
    params = TierParams(d_f=2.0, d_u=10.0, p_t=1.0, p_min=10.0, alpha=4.0)
    query = OutageQuery(params=params, eta=2.0)
    closed = outage_probability(query)
    estimate, std_error = mc_outage(
        query,
        window=min(window, 10.0),
        reps=reps,
        seed=_check_seed(seed, 400),
        workers=workers,
    )
    deviation = abs(closed - estimate) / estimate if estimate else math.inf
    checks.append(
        OracleCheck(
            name="outage/ppp[d_f=2,d_u=10,eta=2]",
            closed_form=closed,
            estimate=estimate,
            std_error=std_error,
            deviation=deviation,
            gate="report-only",
            status="info",
        )
    )

    return ValidationReport(
        checks=tuple(checks), seed=seed, trials=trials, reps=reps, window=window
    )
