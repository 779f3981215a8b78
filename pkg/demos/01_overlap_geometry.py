"""
Overlap geometry of a moving user
=================================

A user with communication range r (the femtocell radius is the unit of
length) sits at center distance d = 1 + beta*r from a femtocell. This demo
sketches the two-disk configuration and traces how the overlap area moves
from the full disk area pi*r^2 at beta = -1 (fully inside) to zero at
beta = +1 (fully outside).
"""

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from femtoconn import MobilityGeometry, lens_area

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# Step 1: one concrete configuration, drawn to scale
g = MobilityGeometry(r=0.5, beta=0.2)
fig, (left, right) = plt.subplots(1, 2, figsize=(11, 4.5))
theta = np.linspace(0, 2 * np.pi, 256)
left.plot(np.cos(theta) * g.r, np.sin(theta) * g.r, label=f"user disk, r={g.r}")
left.plot(g.d + np.cos(theta), np.sin(theta), label="femtocell (unit radius)")
left.axvline(g.x0, color="gray", linestyle=":", label=f"chord at x0={g.x0:.3f}")
left.set_aspect("equal")
left.legend(loc="upper right", fontsize="small")
left.set_title(f"beta={g.beta}: overlap area {g.overlap_area():.4f}")

# Step 2: overlap area versus the mobility factor for several ranges
betas = np.linspace(-1.2, 1.2, 481)
for r in (0.25, 0.5, 0.75):
    right.plot(betas, [lens_area(r, b) for b in betas], label=f"r={r}")
    right.axhline(np.pi * r * r, color="gray", linewidth=0.5, linestyle="--")
right.set_xlabel("mobility factor beta")
right.set_ylabel("overlap area")
right.set_title("piecewise closed form, continuous at the seams")
right.legend()

fig.tight_layout()
fig.savefig(OUT / "overlap_geometry.png", dpi=120)
print(f"wrote {OUT / 'overlap_geometry.png'}")
plt.show()
