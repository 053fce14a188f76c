"""The quantization-step trade-off: decode quality versus front-end power.

Small steps waste power and are fragile to the slope-matching ambiguity;
large steps are robust and cheap but quantize coarsely.  This sweeps a small
Monte Carlo grid at the noisy operating point and prints the power bill of
the four hardware-supported steps next to it.
"""
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from ajsccsim.channel import ChannelConfig
from ajsccsim.mosfet import AjsccConfig, MosfetParams
from ajsccsim.pipeline import encoder_ids_max, sweep_phi
from ajsccsim.power import PHI_CHOICES, PhiSetting, power_estimate
from ajsccsim.sources import FieldConfig

params = MosfetParams()
ajscc = AjsccConfig(phi=0.5, vgs_lo=5.0, vgs_hi=10.0, vds_lo=5.0, vds_hi=10.0)
chan = ChannelConfig(snr_db=-20.0, bandwidth_hz=410e3,
                     ids_max_ref=encoder_ids_max(params, ajscc))
grid = [0.1, 0.2, 0.3, 0.4, 0.5, 0.65, 0.8, 1.0]
points, phi_star = sweep_phi(grid, FieldConfig(), "uniform", "uniform",
                             ajscc, params, chan, trials=6, base_seed=0)

fig, ax = plt.subplots(figsize=(7, 4.2))
ax.semilogy(grid, [p.report.mse_gs for p in points], "o-", label="MSE $V_{gs}$")
ax.semilogy(grid, [p.report.mse_ds for p in points], "s-", label="MSE $V_{ds}$")
ax.semilogy(grid, [p.report.mse_sum for p in points], "^-", label="mean of both")
ax.axvline(phi_star, color="0.5", ls=":", label=f"argmin {phi_star}")
ax.set_xlabel("phi (V)")
ax.set_ylabel("block-averaged MSE (V$^2$)")
ax.set_title("MSE vs phi at -20 dB SNR, 410 kHz")
ax.legend(fontsize=8)
ax.grid(alpha=0.3)

os.makedirs(os.path.join(os.path.dirname(__file__), "output"), exist_ok=True)
out = os.path.join(os.path.dirname(__file__), "output", "phi_tradeoff.png")
fig.savefig(out, dpi=130, bbox_inches="tight")
print("wrote", out)

print("\nfront-end power for the hardware-supported steps:")
for phi in PHI_CHOICES:
    s = PhiSetting(phi)
    print(f"  phi={phi:<6} stages={s.stages}  power ~ {power_estimate(s):.1f} uW")
