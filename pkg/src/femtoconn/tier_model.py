"""Density-based two-tier model: communication range, served-user ratio,
interference, and outage.

Densities are per unit area with the femtocell radius as the length unit.
The channel is distance-only path loss with exponent ``alpha > 2``; noise is
negligible next to interference, so outage is governed by the
signal-to-interference ratio (SIR) against a threshold ``gamma`` set by the
desired spectral efficiency ``eta`` through ``gamma = 2**eta - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

__all__ = [
    "ETA_CAP",
    "InfeasibleTargetError",
    "TierParams",
    "OutageQuery",
    "SirSample",
    "communication_range",
    "connectivity_ratio",
    "active_fap_density",
    "sir",
    "outage_probability",
    "sir_threshold",
    "spectral_efficiency_from_sir",
    "spectral_efficiency_for_outage",
]

_LN2 = math.log(2.0)
#: Spectral efficiencies below the solver resolution count as "vanishing".
_ETA_FLOOR = 1e-9
#: Upper bracket for the outage-target inversion.
ETA_CAP = 64.0


class InfeasibleTargetError(ValueError):
    """No positive spectral efficiency can satisfy the outage target."""


def _clamp01(p: float) -> float:
    return min(max(p, 0.0), 1.0)


@dataclass(frozen=True)
class TierParams:
    """Densities and power budget of the femtocell tier.

    Attributes:
        d_f: femto access points per unit area.
        d_u: users per unit area.
        p_t: fixed user transmit power, linear units.
        p_min: access-point sensitivity power level, linear units.
        alpha: path-loss exponent; must exceed 2.
    """

    d_f: float
    d_u: float
    p_t: float
    p_min: float
    alpha: float

    def __post_init__(self) -> None:
        for name in ("d_f", "d_u", "p_t", "p_min"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"{name} must be positive, got {value!r}")
        if not self.alpha > 2:
            raise ValueError(f"path-loss exponent must exceed 2, got {self.alpha!r}")


def communication_range(p: TierParams) -> float:
    """Reverse-link communication range ``(p_t / p_min) ** (1 / alpha)``.

    The distance at which a user transmitting at ``p_t`` is received exactly
    at the access point's sensitivity level ``p_min``.
    """
    return (p.p_t / p.p_min) ** (1.0 / p.alpha)


def connectivity_ratio(p: TierParams, r: float) -> float:
    """Fraction of users actively served by an access point.

    Combines two Poisson voids: a user finds at least one access point within
    range ``r`` with probability ``1 - exp(-d_f * pi * r^2)``, and an access
    point then draws at least one candidate with probability
    ``1 - exp(-(d_u/d_f) * (1 - exp(-d_f * pi * r^2)))``. The served fraction
    is ``d_f / d_u`` times the latter and always lies in ``[0, 1]``.
    """
    if not r > 0:
        raise ValueError(f"communication range must be positive, got {r!r}")
    covered = -math.expm1(-p.d_f * math.pi * r * r)
    served = -math.expm1(-(p.d_u / p.d_f) * covered)
    return _clamp01((p.d_f / p.d_u) * served)


def active_fap_density(p: TierParams, r: float) -> float:
    """Density of access points that are actively serving a user.

    The served-user fraction times the user density.
    """
    return connectivity_ratio(p, r) * p.d_u


@dataclass(frozen=True)
class SirSample:
    """Distances defining one SIR evaluation at a reference access point.

    ``noise_power`` is retained for completeness but defaults to zero under
    the interference-limited assumption.
    """

    r0: float
    interferer_distances: tuple[float, ...]
    noise_power: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "interferer_distances", tuple(self.interferer_distances)
        )
        if not self.r0 > 0:
            raise ValueError(f"signal distance r0 must be positive, got {self.r0!r}")
        if any(not ri > 0 for ri in self.interferer_distances):
            raise ValueError("interferer distances must all be positive")
        if self.noise_power < 0:
            raise ValueError(f"noise power must be >= 0, got {self.noise_power!r}")


def sir(s: SirSample, p: TierParams) -> float:
    """Signal-to-interference(-plus-noise) ratio at the reference access point.

    ``p_t * r0**-alpha / (noise + sum_i p_t * r_i**-alpha)`` over the
    interferer set.

    Raises:
        ValueError: for an interference-limited sample with no interferers
            (zero denominator; the sample is ill-posed).
    """
    interference = s.noise_power + sum(
        p.p_t * ri ** -p.alpha for ri in s.interferer_distances
    )
    if interference == 0.0:
        raise ValueError("no interferers and zero noise power: SIR is undefined")
    return p.p_t * s.r0 ** -p.alpha / interference


def sir_threshold(eta: float) -> float:
    """Minimum SIR sustaining spectral efficiency ``eta``: ``2**eta - 1``."""
    if eta < 0:
        raise ValueError(f"spectral efficiency must be >= 0, got {eta!r}")
    return 2.0 ** eta - 1.0


def spectral_efficiency_from_sir(gamma: float) -> float:
    """Inverse of :func:`sir_threshold`: ``log2(1 + gamma)``."""
    if gamma < 0:
        raise ValueError(f"SIR threshold must be >= 0, got {gamma!r}")
    return math.log1p(gamma) / _LN2


@dataclass(frozen=True)
class OutageQuery:
    """Inputs to the outage closed form.

    At least one of ``gamma``/``eta`` must be given; the other is derived
    through the Shannon threshold map (and checked for consistency when both
    are supplied). ``r`` defaults to the power-budget communication range and
    ``d_f_active`` to the active access-point density at ``(params, r)``; the
    ``d_f_active`` override exists for sensitivity studies.
    """

    params: TierParams
    gamma: float | None = None
    eta: float | None = None
    r: float | None = None
    d_f_active: float | None = None

    def __post_init__(self) -> None:
        if self.gamma is None and self.eta is None:
            raise ValueError("one of gamma or eta is required")
        if self.eta is not None:
            derived = sir_threshold(self.eta)
            if self.gamma is None:
                object.__setattr__(self, "gamma", derived)
            elif abs(self.gamma - derived) > 1e-12 * max(1.0, derived):
                raise ValueError(
                    f"gamma={self.gamma!r} inconsistent with eta={self.eta!r} "
                    f"(expected {derived!r})"
                )
        else:
            object.__setattr__(self, "eta", spectral_efficiency_from_sir(self.gamma))
        if self.gamma < 0:
            raise ValueError(f"SIR threshold must be >= 0, got {self.gamma!r}")
        if self.r is None:
            object.__setattr__(self, "r", communication_range(self.params))
        elif not self.r > 0:
            raise ValueError(f"communication range must be positive, got {self.r!r}")
        cap = min(self.params.d_f, self.params.d_u)
        if self.d_f_active is None:
            object.__setattr__(
                self, "d_f_active", active_fap_density(self.params, self.r)
            )
        elif not 0.0 <= self.d_f_active <= cap * (1.0 + 1e-12):
            raise ValueError(
                f"d_f_active must lie in [0, min(d_f, d_u)]={cap!r}, "
                f"got {self.d_f_active!r}"
            )


def outage_probability(q: OutageQuery) -> float:
    """Probability that an active access point sees SIR at or below ``gamma``.

    Closed form
    ``1 - d_f*(1 - exp(-(k + d_f)*pi*r^2)) / ((k + d_f)*(1 - exp(-d_f*pi*r^2)))``
    with ``k = d_f_active * gamma**(2/alpha)``; ``gamma**(2/alpha)`` is taken
    as 0 at ``gamma = 0`` (the continuous limit), making the outage exactly
    zero there. Clamped to ``[0, 1]``.
    """
    k = (
        q.d_f_active * q.gamma ** (2.0 / q.params.alpha)
        if q.gamma > 0.0
        else 0.0
    )
    u = k + q.params.d_f
    t = math.pi * q.r * q.r
    numerator = q.params.d_f * -math.expm1(-u * t)
    denominator = u * -math.expm1(-q.params.d_f * t)
    return _clamp01(1.0 - numerator / denominator)


def spectral_efficiency_for_outage(
    p: TierParams, r: float, target_outage: float, eta_cap: float = ETA_CAP
) -> float:
    """Largest spectral efficiency whose outage stays within ``target_outage``.

    Outage is monotone non-decreasing in the SIR threshold and hence in the
    spectral efficiency, so the boundary is a bracketed root; it is located
    with Brent's method well below 1e-9 absolute error. Returns ``eta_cap``
    when even the cap satisfies the target.

    Raises:
        InfeasibleTargetError: when the outage already exceeds the target as
            the spectral efficiency vanishes (below the 1e-9 resolution).
    """
    if not 0.0 < target_outage < 1.0:
        raise ValueError(f"target outage must lie in (0, 1), got {target_outage!r}")

    def pout(eta: float) -> float:
        return outage_probability(OutageQuery(params=p, r=r, eta=eta))

    if pout(_ETA_FLOOR) > target_outage:
        raise InfeasibleTargetError(
            f"outage {pout(_ETA_FLOOR):.6e} at vanishing spectral efficiency "
            f"already exceeds the target {target_outage!r}"
        )
    if pout(eta_cap) <= target_outage:
        return eta_cap
    return float(
        brentq(
            lambda e: pout(e) - target_outage,
            _ETA_FLOOR,
            eta_cap,
            xtol=1e-12,
            rtol=8.881784197001252e-16,
        )
    )
