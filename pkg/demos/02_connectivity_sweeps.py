"""
Connectivity probability of a mobile user
=========================================

Among n_f femtocells, a user is connected when its communication disk
overlaps at least one of them; the probability is
1 - (1 - A(r, beta)/pi)^(n_f - 1). This demo reproduces the two figure
families: the (beta, r) surface at fixed n_f, and connectivity-versus-range
curves for a few (beta, n_f) combinations.
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from femtoconn import ConnectivityScenario, MobilityGeometry, connectivity_probability

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)


def p_c(r, beta, n_f):
    return connectivity_probability(
        ConnectivityScenario(MobilityGeometry(r, beta), n_f)
    )


# Step 1: the surface over (beta, r) at n_f = 100 and n_f = 10
betas = np.linspace(-1.0, 1.0, 81)
ranges = np.linspace(0.05, 0.95, 61)
fig, axes = plt.subplots(1, 2, figsize=(12, 4.5), sharey=True)
for ax, n_f in zip(axes, (100, 10)):
    surface = np.array([[p_c(r, b, n_f) for b in betas] for r in ranges])
    mesh = ax.pcolormesh(betas, ranges, surface, shading="nearest", vmin=0, vmax=1)
    ax.set_xlabel("mobility factor beta")
    ax.set_title(f"n_f = {n_f}")
axes[0].set_ylabel("communication range r")
fig.colorbar(mesh, ax=axes, label="connectivity probability")
fig.savefig(OUT / "connectivity_surface.png", dpi=120)
print(f"wrote {OUT / 'connectivity_surface.png'}")

# Step 2: curves versus range; denser tiers and inward mobility both help
fig2, ax = plt.subplots(figsize=(7, 5))
grid = np.linspace(0.1, 0.9, 81)
for beta in (-0.5, 0.0, 0.5):
    for n_f, style in ((100, "-"), (10, "--")):
        ax.plot(
            grid,
            [p_c(r, beta, n_f) for r in grid],
            style,
            label=f"beta={beta}, n_f={n_f}",
        )
ax.set_xlabel("communication range r")
ax.set_ylabel("connectivity probability")
ax.grid(alpha=0.3)
ax.legend(fontsize="small")
fig2.savefig(OUT / "connectivity_curves.png", dpi=120)
print(f"wrote {OUT / 'connectivity_curves.png'}")
plt.show()
