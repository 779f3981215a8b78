"""
Closed forms against their Monte Carlo oracles
==============================================

Every closed form in the library has an independent oracle: hit-or-miss
sampling for the overlap area, Bernoulli trials for the disconnectivity
bound, and a spatial Poisson-point-process simulation for the served-user
fraction. This demo overlays closed forms and seeded estimates (3-sigma
bars), including the regime where the served-fraction approximation starts
to drift from the spatial simulation.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from femtoconn import (
    ConnectivityScenario,
    MobilityGeometry,
    TierParams,
    connectivity_ratio,
    isolation_probability,
    lens_area,
    mc_connectivity_ratio,
    mc_disconnectivity,
    mc_lens_area,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

fig, (ax1, ax2, ax3) = plt.subplots(1, 3, figsize=(15, 4.5))

# Step 1: overlap area, closed form vs hit-or-miss sampling
betas = np.linspace(-0.95, 0.95, 39)
ax1.plot(betas, [lens_area(0.5, b) for b in betas], label="closed form")
sample_betas = betas[::4]
estimates, bars = zip(
    *(mc_lens_area(0.5, float(b), 10 ** 5, seed=i) for i, b in enumerate(sample_betas))
)
ax1.errorbar(
    sample_betas, estimates, yerr=3 * np.asarray(bars),
    fmt="o", markersize=4, capsize=3, label="hit-or-miss (3 sigma)",
)
ax1.set_xlabel("mobility factor beta")
ax1.set_ylabel("overlap area, r = 0.5")
ax1.legend()

# Step 2: disconnectivity bound vs Bernoulli trials
ranges = np.linspace(0.1, 0.9, 33)
for n_f in (10, 100):
    ax2.plot(
        ranges,
        [
            isolation_probability(ConnectivityScenario(MobilityGeometry(r, 0.0), n_f))
            for r in ranges
        ],
        label=f"closed form, n_f={n_f}",
    )
    picks = ranges[::4]
    est, bars = zip(
        *(
            mc_disconnectivity(
                ConnectivityScenario(MobilityGeometry(float(r), 0.0), n_f),
                10 ** 5,
                seed=n_f + i,
            )
            for i, r in enumerate(picks)
        )
    )
    ax2.errorbar(picks, est, yerr=3 * np.asarray(bars), fmt="o", markersize=4, capsize=3)
ax2.set_xlabel("communication range r")
ax2.set_ylabel("disconnectivity bound, beta = 0")
ax2.legend(fontsize="small")

# Step 3: served-user fraction vs the spatial simulation; the approximation
# drifts as the communication disk dwarfs the typical coverage cell
d_fs = (0.5, 1.0, 2.0, 3.0, 5.0)
closed, simulated, bars = [], [], []
for i, d_f in enumerate(d_fs):
    p = TierParams(d_f=d_f, d_u=10.0, p_t=1, p_min=1, alpha=4)
    closed.append(connectivity_ratio(p, 0.5))
    est, se = mc_connectivity_ratio(p, 0.5, window=15.0, reps=1000, seed=40 + i)
    simulated.append(est)
    bars.append(3 * se)
ax3.plot(d_fs, closed, "s-", label="closed form")
ax3.errorbar(d_fs, simulated, yerr=bars, fmt="o", capsize=3, label="spatial PPP (3 sigma)")
ax3.set_xlabel("access-point density d_f")
ax3.set_ylabel("served-user fraction, d_u = 10")
ax3.legend()

fig.tight_layout()
fig.savefig(OUT / "oracle_agreement.png", dpi=120)
print(f"wrote {OUT / 'oracle_agreement.png'}")
plt.show()
