"""
Density, outage, and spectral efficiency trade-offs
===================================================

The density-based tier model ties together the served-user fraction, the
SIR outage probability, and the spectral efficiency achievable at a given
outage target. This demo sweeps the three figure families: served fraction
versus user density, outage versus access-point density, and achievable
spectral efficiency versus user density.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from femtoconn import (
    OutageQuery,
    TierParams,
    communication_range,
    connectivity_ratio,
    outage_probability,
    spectral_efficiency_for_outage,
)

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

fig, (ax1, ax2, ax3) = plt.subplots(1, 3, figsize=(15, 4.5))

# Step 1: served fraction falls with user density, rises with AP density
d_us = np.linspace(2, 30, 57)
for d_f in (1.0, 3.0, 5.0):
    ax1.plot(
        d_us,
        [
            connectivity_ratio(
                TierParams(d_f=d_f, d_u=d_u, p_t=1, p_min=1, alpha=4), 0.5
            )
            for d_u in d_us
        ],
        label=f"d_f={d_f:g}",
    )
ax1.set_xlabel("user density d_u")
ax1.set_ylabel("served-user fraction")
ax1.set_title("fixed range r = 0.5")
ax1.legend()

# Step 2: outage knee in the access-point density; the transmit budget
# p_t=1, p_min=10, alpha=4 pins the range at 0.1^(1/4)
d_fs = np.linspace(0.2, 5.0, 97)
for d_u in (5.0, 10.0, 20.0):
    values = []
    for d_f in d_fs:
        p = TierParams(d_f=d_f, d_u=d_u, p_t=1, p_min=10, alpha=4)
        values.append(outage_probability(OutageQuery(params=p, eta=2.0)))
    ax2.plot(d_fs, values, label=f"d_u={d_u:g}")
ax2.set_xlabel("access-point density d_f")
ax2.set_ylabel("outage probability at eta=2")
ax2.legend()

# Step 3: the spectral efficiency that just meets an outage target
d_us = np.linspace(2, 30, 29)
for target in (0.05, 0.1, 0.2):
    etas = []
    for d_u in d_us:
        p = TierParams(d_f=2.0, d_u=d_u, p_t=1, p_min=10, alpha=4)
        etas.append(
            spectral_efficiency_for_outage(p, communication_range(p), target)
        )
    ax3.plot(d_us, etas, label=f"target outage {target:g}")
ax3.set_xlabel("user density d_u")
ax3.set_ylabel("achievable spectral efficiency")
ax3.legend()

fig.tight_layout()
fig.savefig(OUT / "density_outage_tradeoffs.png", dpi=120)
print(f"wrote {OUT / 'density_outage_tradeoffs.png'}")
plt.show()
