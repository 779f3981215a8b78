"""Connectivity probability of a mobile user among many femtocells.

A macrocell of normalized area ``pi`` holds ``n_f`` femtocells; the user is
connected when its communication disk overlaps at least one of them. Because
the user's disk can overlap at most one femtocell at a time, the union bound
over femtocells collapses to a single isolation term, which makes the bound
and the isolation probability numerically identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import MobilityGeometry, lens_area

__all__ = [
    "MACROCELL_AREA",
    "ConnectivityScenario",
    "isolation_probability",
    "disconnectivity_bound",
    "connectivity_probability",
]

#: Normalization area of the unit-radius cell; fixed by the geometry.
MACROCELL_AREA = math.pi


def _clamp01(p: float) -> float:
    # absorbs 1-ulp excursions so consumers always see a valid probability
    return min(max(p, 0.0), 1.0)


@dataclass(frozen=True)
class ConnectivityScenario:
    """A user's mobility geometry surrounded by ``n_f`` femtocells.

    ``s`` is the macrocell normalization area; it is fixed at ``pi`` and
    carried as a field only so serialized results record it explicitly.
    """

    geometry: MobilityGeometry
    n_f: int
    s: float = MACROCELL_AREA

    def __post_init__(self) -> None:
        if self.n_f != int(self.n_f) or self.n_f < 1:
            raise ValueError(f"n_f must be a positive integer, got {self.n_f!r}")
        if self.s != MACROCELL_AREA:
            raise ValueError(f"macrocell area is fixed at pi, got {self.s!r}")


def isolation_probability(scn: ConnectivityScenario) -> float:
    """Probability that none of the other ``n_f - 1`` femtocells covers the user.

    Equals ``(1 - A/pi) ** (n_f - 1)`` with ``A`` the single-femtocell overlap
    area, evaluated as ``exp((n_f - 1) * log1p(-A/pi))`` so that large ``n_f``
    and small overlap fractions keep full precision.
    """
    a = lens_area(scn.geometry.r, scn.geometry.beta)
    p = math.exp((scn.n_f - 1) * math.log1p(-a / MACROCELL_AREA))
    return _clamp01(p)


def disconnectivity_bound(scn: ConnectivityScenario) -> float:
    """Union-bound probability that the user is covered by no femtocell.

    Coincides with :func:`isolation_probability`: only one overlap term in
    the union is nonzero, so the bound reduces to that single factor.
    """
    return isolation_probability(scn)


def connectivity_probability(scn: ConnectivityScenario) -> float:
    """Probability that the user connects to at least one femtocell.

    Complement of :func:`disconnectivity_bound`; the two sum to one exactly.
    """
    return 1.0 - disconnectivity_bound(scn)
