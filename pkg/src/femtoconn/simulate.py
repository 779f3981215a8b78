"""Independent oracles for the closed-form model: adaptive quadrature for the
overlap area, Bernoulli Monte Carlo for the connectivity bound, and a spatial
Poisson-point-process simulation for the density-based tier model.

Every Monte Carlo entry point takes an explicit 64-bit ``seed`` and draws
from counter-based (Philox) streams split per realization, so outputs are
bit-identical across runs and independent of execution order. Parallel and
serial evaluation reduce per-realization results in the same fixed order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad
from scipy.spatial import cKDTree

from .connectivity import MACROCELL_AREA, ConnectivityScenario
from .geometry import lens_area
from .tier_model import OutageQuery, TierParams

__all__ = [
    "PppRealization",
    "sample_ppp",
    "lens_area_arccos",
    "quadrature_lens_area",
    "mc_lens_area",
    "mc_disconnectivity",
    "mc_connectivity_ratio",
    "mc_outage",
]

_MAX_SEED = 2 ** 64
#: Fixed chunk size for single-stream sampling; keeps replay deterministic.
_CHUNK = 1 << 17


def _stream(seed: int, index: int = 0) -> np.random.Generator:
    """Counter-based RNG stream ``index`` of the family keyed by ``seed``."""
    if not 0 <= seed < _MAX_SEED:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    if index < 0:
        raise ValueError(f"stream index must be >= 0, got {index!r}")
    return np.random.Generator(np.random.Philox(key=(index << 64) | seed))


def _require_open_interval(beta: float) -> None:
    if not -1.0 < beta < 1.0:
        raise ValueError(f"need -1 < beta < 1 for a genuine lens, got {beta!r}")


def lens_area_arccos(r: float, beta: float) -> float:
    """Overlap area in the textbook two-circle arccosine form.

    Algebraically identical to :func:`femtoconn.geometry.lens_area` on
    ``-1 < beta < 1``; kept as an independent cross-check of the arcsine
    expression used on the production path.
    """
    _require_open_interval(beta)
    d = 1.0 + beta * r
    x0 = (r * r + d * d - 1.0) / (2.0 * d)
    u = max(-1.0, min(1.0, x0 / r))
    v = max(-1.0, min(1.0, d - x0))
    return (
        r * r * (math.acos(u) - u * math.sqrt(1.0 - u * u))
        + math.acos(v)
        - v * math.sqrt(1.0 - v * v)
    )


def quadrature_lens_area(r: float, beta: float, epsrel: float = 1e-11) -> float:
    """Disk-overlap area by adaptive quadrature, with no closed form involved.

    Integrates the chord width of the intersection of the user's disk
    (radius ``r`` at the origin) and the unit disk (center ``(d, 0)``) along
    the center axis. The interval is split where the binding circle changes,
    so each piece is smooth apart from its square-root endpoints, which the
    QAGS extrapolation handles.
    """
    if not 0.0 < r < 1.0:
        raise ValueError(f"communication range must lie in (0, 1), got {r!r}")
    _require_open_interval(beta)
    d = 1.0 + beta * r

    def width(x: float) -> float:
        user = r * r - x * x
        femto = 1.0 - (x - d) ** 2
        return 2.0 * math.sqrt(max(0.0, min(user, femto)))

    xlo = max(-r, d - 1.0)
    xsplit = (r * r + d * d - 1.0) / (2.0 * d)
    left = quad(width, xlo, xsplit, epsabs=0.0, epsrel=epsrel, limit=200)[0]
    right = quad(width, xsplit, r, epsabs=0.0, epsrel=epsrel, limit=200)[0]
    return left + right


def mc_lens_area(
    r: float, beta: float, n: int, seed: int = 0
) -> tuple[float, float]:
    """Hit-or-miss Monte Carlo estimate of the disk-overlap area.

    Samples ``n`` points uniformly on the user's disk and counts membership
    in the unit femtocell disk at center distance ``d = 1 + beta * r``.

    Returns:
        ``(estimate, std_error)``; the standard error is the binomial
        ``sqrt(p*(1-p)/n)`` scaled by the sampling-disk area.
    """
    _require_open_interval(beta)
    if n < 10_000:
        raise ValueError(f"need at least 1e4 trials, got {n!r}")
    d = 1.0 + beta * r
    rng = _stream(seed)
    hits = 0
    done = 0
    while done < n:
        m = min(_CHUNK, n - done)
        rho = r * np.sqrt(rng.random(m))
        phi = (2.0 * math.pi) * rng.random(m)
        inside = (rho * np.cos(phi) - d) ** 2 + (rho * np.sin(phi)) ** 2 <= 1.0
        hits += int(np.count_nonzero(inside))
        done += m
    p_hat = hits / n
    disk = math.pi * r * r
    return disk * p_hat, disk * math.sqrt(p_hat * (1.0 - p_hat) / n)


def mc_disconnectivity(
    scn: ConnectivityScenario, n: int, seed: int = 0
) -> tuple[float, float]:
    """Bernoulli Monte Carlo estimate of the disconnectivity bound.

    Each trial draws ``n_f - 1`` independent femtocells, each covering the
    user with probability ``A / pi``; the trial counts as disconnected when
    none covers.

    Returns:
        ``(estimate, std_error)`` of the disconnected-trial frequency.
    """
    if n < 10_000:
        raise ValueError(f"need at least 1e4 trials, got {n!r}")
    p_cover = lens_area(scn.geometry.r, scn.geometry.beta) / MACROCELL_AREA
    m = scn.n_f - 1
    rng = _stream(seed)
    rows = max(1, _CHUNK // max(1, m))
    disconnected = 0
    done = 0
    while done < n:
        k = min(rows, n - done)
        if m == 0:
            disconnected += k  # vacuously uncovered
        else:
            covered = rng.random((k, m)) < p_cover
            disconnected += int(np.count_nonzero(~covered.any(axis=1)))
        done += k
    p_hat = disconnected / n
    return p_hat, math.sqrt(p_hat * (1.0 - p_hat) / n)


@dataclass(frozen=True)
class PppRealization:
    """One homogeneous Poisson draw of access points and users on a square.

    The square has side ``window``; all distances on it are taken toroidally
    (wrap-around), so finite-window statistics match the infinite-plane
    model without boundary bias.
    """

    window: float
    fap_points: np.ndarray
    user_points: np.ndarray


def sample_ppp(
    p: TierParams, window: float, rng: np.random.Generator
) -> PppRealization:
    """Draw one realization with Poisson counts of mean ``density * window^2``."""
    area = window * window
    n_f = rng.poisson(p.d_f * area)
    n_u = rng.poisson(p.d_u * area)
    faps = rng.random((n_f, 2)) * window
    users = rng.random((n_u, 2)) * window
    return PppRealization(window=window, fap_points=faps, user_points=users)


def _check_spatial(p: TierParams, window: float, reps: int) -> None:
    if p.d_f * window * window < 50.0:
        raise ValueError(
            f"window side {window!r} too small: need d_f * window^2 >= 50 "
            "to control edge effects"
        )
    if reps < 1000:
        raise ValueError(f"need at least 1e3 realizations, got {reps!r}")


def _attach(
    real: PppRealization, r: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Nearest-AP attachment under the toroidal metric.

    Users attach to their nearest access point when it lies within range
    ``r``; each access point with at least one candidate is active and
    serves its closest candidate.

    Returns:
        ``(fap_idx, user_idx, r0)`` arrays over active access points: the AP
        row, its served user's row, and their separation.
    """
    empty = (
        np.empty(0, dtype=np.intp),
        np.empty(0, dtype=np.intp),
        np.empty(0, dtype=np.float64),
    )
    if len(real.fap_points) == 0 or len(real.user_points) == 0:
        return empty
    tree = cKDTree(real.fap_points, boxsize=real.window)
    dist, nearest = tree.query(real.user_points, k=1)
    in_range = dist <= r
    if not in_range.any():
        return empty
    fap = nearest[in_range]
    sep = dist[in_range]
    user = np.flatnonzero(in_range)
    order = np.lexsort((sep, fap))
    fap, sep, user = fap[order], sep[order], user[order]
    first = np.unique(fap, return_index=True)[1]
    return fap[first], user[first], sep[first]


def _toroidal_distances(a: np.ndarray, b: np.ndarray, window: float) -> np.ndarray:
    """Pairwise wrap-around distances between two point sets on the torus."""
    delta = np.abs(a[:, None, :] - b[None, :, :])
    delta = np.minimum(delta, window - delta)
    return np.sqrt((delta * delta).sum(axis=-1))


def _map_reps(
    fn: Callable[[int], tuple[float, float]], reps: int, workers: int
) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate ``fn`` over realization indices; reduce in fixed index order."""
    if workers <= 1:
        out = [fn(i) for i in range(reps)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(fn, range(reps)))
    first, second = zip(*out)
    return np.asarray(first, dtype=np.float64), np.asarray(second, dtype=np.float64)


def mc_connectivity_ratio(
    p: TierParams,
    r: float,
    window: float = 20.0,
    reps: int = 1000,
    seed: int = 0,
    workers: int = 1,
) -> tuple[float, float]:
    """Spatial PPP estimate of the served-user fraction.

    Runs :func:`_attach` on ``reps`` independent realizations; every active
    access point serves exactly one user, so the served fraction is
    (mean active APs) / (mean users).

    Returns:
        ``(estimate, std_error)`` with the frequency-style standard error
        ``sqrt(p*(1-p)/total_users)``.
    """
    _check_spatial(p, window, reps)
    if not r > 0:
        raise ValueError(f"communication range must be positive, got {r!r}")

    def one(i: int) -> tuple[float, float]:
        real = sample_ppp(p, window, _stream(seed, index=i))
        active = _attach(real, r)[0].size
        return float(active), float(len(real.user_points))

    active, users = _map_reps(one, reps, workers)
    total_users = users.sum()
    if total_users == 0:
        return 0.0, 0.0
    p_hat = float(active.sum() / total_users)
    return p_hat, math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / total_users)


def mc_outage(
    q: OutageQuery,
    window: float = 10.0,
    reps: int = 1000,
    seed: int = 0,
    workers: int = 1,
    all_users_interfere: bool = False,
) -> tuple[float, float]:
    """Spatial PPP estimate of the outage fraction at active access points.

    Attachment as in :func:`mc_connectivity_ratio`. Each active access point
    hears its served user at distance ``r0``; the interferers are the served
    users of every other active access point (or every other user when
    ``all_users_interfere`` is set), at toroidal distances under path loss
    ``alpha``. An access point with no interferers never counts as outage.

    Returns:
        ``(estimate, std_error)`` for the frequency of active access points
        with SIR at or below ``gamma``.
    """
    p = q.params
    _check_spatial(p, window, reps)

    def one(i: int) -> tuple[float, float]:
        real = sample_ppp(p, window, _stream(seed, index=i))
        fap_idx, user_idx, r0 = _attach(real, q.r)
        n_active = fap_idx.size
        if n_active == 0:
            return 0.0, 0.0
        faps = real.fap_points[fap_idx]
        sources = real.user_points if all_users_interfere else real.user_points[user_idx]
        dist = _toroidal_distances(faps, sources, real.window)
        with np.errstate(divide="ignore"):
            power = p.p_t * dist ** -p.alpha
        # zero out each AP's own served user before summing interference
        own_col = user_idx if all_users_interfere else np.arange(n_active)
        power[np.arange(n_active), own_col] = 0.0
        interference = power.sum(axis=1)
        signal = p.p_t * r0 ** -p.alpha
        with np.errstate(divide="ignore"):
            outage = (interference > 0.0) & (signal / interference <= q.gamma)
        return float(np.count_nonzero(outage)), float(n_active)

    outages, actives = _map_reps(one, reps, workers)
    total_active = actives.sum()
    if total_active == 0:
        return 0.0, 0.0
    p_hat = float(outages.sum() / total_active)
    return p_hat, math.sqrt(max(p_hat * (1.0 - p_hat), 0.0) / total_active)
