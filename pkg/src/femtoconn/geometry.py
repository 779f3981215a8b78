"""Overlap geometry of a mobile user's communication disk and a femtocell.

All lengths are normalized so the femtocell coverage disk has unit radius;
the user's communication range ``r`` must satisfy ``0 < r < 1``. The user's
position is parameterized by the mobility factor ``beta``: the
center-to-center distance is ``d = 1 + beta * r``, so ``beta <= -1`` places
the user's disk fully inside the femtocell and ``beta >= 1`` fully outside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["MobilityGeometry", "center_distance", "chord_abscissa", "lens_area"]


def _require_range(r: float) -> None:
    if not 0.0 < r < 1.0:
        raise ValueError(f"communication range must lie in (0, 1), got {r!r}")


def _clamp_unit(x: float) -> float:
    # rounding can push arcsine arguments a few ulp past +/-1 at the seams
    return max(-1.0, min(1.0, x))


def center_distance(r: float, beta: float) -> float:
    """Center-to-center distance between user and femtocell, ``1 + beta * r``."""
    _require_range(r)
    if not math.isfinite(beta):
        raise ValueError(f"mobility factor must be finite, got {beta!r}")
    return 1.0 + beta * r


def chord_abscissa(r: float, d: float) -> float:
    """Abscissa of the chord joining the two circle intersection points.

    With the user's disk ``x^2 + y^2 = r^2`` and the unit femtocell disk
    centered at ``(d, 0)``, both intersection points lie on the vertical line
    ``x = x0`` with ``x0 = (r^2 + d^2 - 1) / (2 d)``.

    Raises:
        ValueError: if the circles do not genuinely intersect, i.e. unless
            ``|1 - r| < d < 1 + r``.
    """
    _require_range(r)
    if not abs(1.0 - r) < d < 1.0 + r:
        raise ValueError(
            f"circles with r={r!r} and center distance d={d!r} do not intersect"
        )
    return (r * r + d * d - 1.0) / (2.0 * d)


def lens_area(r: float, beta: float) -> float:
    """Overlap area between the user's disk and the unit femtocell disk.

    Piecewise in the mobility factor: ``0`` once the user's disk lies fully
    outside the femtocell (``beta >= 1``), the full ``pi * r**2`` once fully
    inside (``beta <= -1``), and in between the circular-lens area

        pi*(1 + r^2)/2 - x0*sqrt(r^2 - x0^2) - (d - x0)*sqrt(1 - (d - x0)^2)
        - asin(d - x0) - r^2 * asin(x0 / r)

    with ``d = 1 + beta*r`` and ``x0`` the chord abscissa. The result always
    lies in ``[0, pi * r**2]``.
    """
    _require_range(r)
    if beta >= 1.0:
        return 0.0
    if beta <= -1.0:
        return math.pi * r * r
    d = 1.0 + beta * r
    x0 = (r * r + d * d - 1.0) / (2.0 * d)
    u = _clamp_unit(x0 / r)
    v = _clamp_unit(d - x0)
    area = (
        math.pi * (1.0 + r * r) / 2.0
        - r * r * u * math.sqrt(1.0 - u * u)
        - v * math.sqrt(1.0 - v * v)
        - math.asin(v)
        - r * r * math.asin(u)
    )
    return min(max(area, 0.0), math.pi * r * r)


@dataclass(frozen=True)
class MobilityGeometry:
    """A user's communication disk of radius ``r`` against the unit femtocell.

    Attributes:
        r: communication range in units of the femtocell radius, ``0 < r < 1``.
        beta: mobility factor; ``-1`` and ``+1`` are the inner and outer
            tangency positions.
    """

    r: float
    beta: float

    def __post_init__(self) -> None:
        _require_range(self.r)
        if not math.isfinite(self.beta):
            raise ValueError(f"mobility factor must be finite, got {self.beta!r}")

    @property
    def d(self) -> float:
        """Center-to-center distance ``1 + beta * r``."""
        return 1.0 + self.beta * self.r

    @property
    def x0(self) -> float:
        """Chord abscissa of the circle intersection; needs ``-1 < beta < 1``."""
        if not -1.0 < self.beta < 1.0:
            raise ValueError(
                f"chord abscissa undefined at beta={self.beta!r}: circles do not cross"
            )
        return chord_abscissa(self.r, self.d)

    def overlap_area(self) -> float:
        """Lens area of this configuration; see :func:`lens_area`."""
        return lens_area(self.r, self.beta)
