"""Show the drain-current curve family used as the space-filling code.

Each V_gs level is one curve; a sample (x1, x2) becomes a single current by
quantizing x2 to the nearest curve and riding it at V_ds = x1.  Channel-length
modulation gives every curve its own slope, which is what the decoder reads.
"""
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from ajsccsim.mosfet import AjsccConfig, MosfetParams, build_grid, drain_current, invert_vds

params = MosfetParams()
cfg = AjsccConfig(phi=0.5, vgs_lo=1.0, vgs_hi=5.0, vds_lo=4.5, vds_hi=10.0)
grid = build_grid(cfg)
vds = np.linspace(0, 10, 400)

fig, ax = plt.subplots(figsize=(7, 4.5))
for g in grid.levels:
    ax.plot(vds, 1e3 * drain_current(params, g, vds), lw=1.2,
            label=f"$V_{{gs}}$ = {g:.1f} V" if g in (1.0, 3.0, 5.0) else None)
ax.axvspan(cfg.vds_lo, cfg.vds_hi, color="0.92", label="operating window")
ax.set_xlabel("$V_{ds}$ (V)")
ax.set_ylabel("$I_{ds}$ (mA)")
ax.set_title(f"Curve family, {len(grid)} levels at phi = {cfg.phi} V")
ax.legend(loc="upper left", fontsize=8)

os.makedirs(os.path.join(os.path.dirname(__file__), "output"), exist_ok=True)
out = os.path.join(os.path.dirname(__file__), "output", "encoding_curves.png")
fig.savefig(out, dpi=130, bbox_inches="tight")
print("wrote", out)

# round trip: encode a sample, invert it back
g, v = grid.levels[4], 7.25
ids = drain_current(params, g, v)
print(f"sample (x1={v} V, level {g} V) -> I_ds = {ids*1e6:.3f} uA"
      f" -> inverted V_ds = {invert_vds(params, g, ids):.9f} V")
