"""Square-law MOSFET device model and the two-signal encoder built on it.

The saturation-region current

    I_ds = 1/2 * k_gain * (V_gs - V_th)^2 * (1 + lambda * V_ds)

is used as a space-filling curve: a continuous signal x1 drives V_ds and a
quantized signal x2 selects one of a discrete set of V_gs levels, so a single
current value carries both.  Channel-length modulation (the lambda term) gives
every V_gs curve its own slope, which is what the receiver exploits to tell
the curves apart.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DomainError, InversionUndefinedError

__all__ = [
    "MosfetParams",
    "AjsccConfig",
    "VgsGrid",
    "build_grid",
    "quantize_to_grid",
    "drain_current",
    "curve_gain",
    "invert_vds",
    "encode_sample",
    "saturation_violations",
]


@dataclass(frozen=True)
class MosfetParams:
    """Device constants of the square-law model.

    k_gain lumps W*mu*C_ox/L into one A/V^2 factor; the individual geometry
    terms are never needed.  Defaults are a 0.18 um nMOS.
    """

    k_gain: float = 155e-6   # A/V^2
    v_th: float = 0.74       # V
    lambda_clm: float = 0.037  # 1/V

    def __post_init__(self):
        if not (self.k_gain > 0 and self.v_th > 0 and self.lambda_clm >= 0):
            raise ConfigError(
                f"need k_gain > 0, v_th > 0, lambda_clm >= 0; got {self}"
            )


@dataclass(frozen=True)
class AjsccConfig:
    """Quantization step and the voltage windows of the encoder."""

    phi: float          # V, spacing of the V_gs level set
    vgs_lo: float = 1.0
    vgs_hi: float = 5.0
    vds_lo: float = 4.5
    vds_hi: float = 10.0

    def __post_init__(self):
        if not self.phi > 0:
            raise ConfigError(f"phi must be positive, got {self.phi}")
        if self.phi > self.vgs_hi - self.vgs_lo:
            raise ConfigError(
                f"phi={self.phi} exceeds the V_gs window "
                f"[{self.vgs_lo}, {self.vgs_hi}]"
            )
        if not self.vds_hi > self.vds_lo:
            raise ConfigError("vds_hi must exceed vds_lo")

    def validate_against(self, params: MosfetParams) -> None:
        """Check the pairing constraint vgs_lo > v_th."""
        if not self.vgs_lo > params.v_th:
            raise ConfigError(
                f"vgs_lo={self.vgs_lo} must exceed v_th={params.v_th}"
            )


@dataclass(frozen=True)
class VgsGrid:
    """Ordered, uniformly spaced V_gs level set."""

    levels: tuple[float, ...]
    phi: float
    vgs_lo: float = field(repr=False, default=0.0)

    def __len__(self) -> int:
        return len(self.levels)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.levels)


def build_grid(cfg: AjsccConfig) -> VgsGrid:
    """Enumerate levels vgs_lo + i*phi up to vgs_hi (inclusive within fp slack)."""
    n = int(np.floor((cfg.vgs_hi - cfg.vgs_lo) / cfg.phi + 1e-9)) + 1
    levels = tuple(cfg.vgs_lo + i * cfg.phi for i in range(n))
    return VgsGrid(levels=levels, phi=cfg.phi, vgs_lo=cfg.vgs_lo)


def quantize_to_grid(v, grid: VgsGrid):
    """Map x2 to the nearest grid level.

    Ties round to the higher level; out-of-range values clamp to the nearest
    endpoint.  Works element-wise on arrays.  Returns (index, level).
    """
    if len(grid) == 0:
        raise ConfigError("empty grid")
    v = np.asarray(v, dtype=float)
    idx = np.floor((v - grid.vgs_lo) / grid.phi + 0.5).astype(int)
    idx = np.clip(idx, 0, len(grid) - 1)
    level = grid.vgs_lo + idx * grid.phi
    if v.ndim == 0:
        return int(idx), float(level)
    return idx, level


def drain_current(p: MosfetParams, vgs, vds):
    """Saturation-region drain current; vgs may be scalar or array, likewise vds."""
    vgs = np.asarray(vgs, dtype=float)
    if np.any(vgs <= p.v_th):
        raise DomainError(
            f"V_gs must exceed V_th={p.v_th} (curve gain would vanish)"
        )
    out = curve_gain(p, vgs) * (1.0 + p.lambda_clm * np.asarray(vds, dtype=float))
    return out if out.ndim else float(out)


def curve_gain(p: MosfetParams, vgs_level):
    """Per-curve amplitude A(g) = 1/2 * k_gain * (g - v_th)^2."""
    g = np.asarray(vgs_level, dtype=float)
    if np.any(g <= p.v_th):
        raise DomainError(f"V_gs level must exceed V_th={p.v_th}")
    out = 0.5 * p.k_gain * (g - p.v_th) ** 2
    return out if out.ndim else float(out)


def invert_vds(p: MosfetParams, vgs_level, ids):
    """Solve I_ds = A(g)*(1 + lambda*V_ds) for V_ds on curve g."""
    if p.lambda_clm == 0.0:
        raise InversionUndefinedError(
            "lambda_clm = 0: all V_ds values share one current"
        )
    a = curve_gain(p, vgs_level)
    out = (np.asarray(ids, dtype=float) / a - 1.0) / p.lambda_clm
    return out if np.ndim(out) else float(out)


def encode_sample(p: MosfetParams, cfg: AjsccConfig, grid: VgsGrid, x1, x2):
    """Encode (x1 -> V_ds continuous, x2 -> nearest V_gs level) into one current.

    Returns (level_index, ids).  Element-wise on arrays.
    """
    idx, level = quantize_to_grid(x2, grid)
    return idx, drain_current(p, level, x1)


def saturation_violations(p: MosfetParams, grid: VgsGrid, vds) -> int:
    """Diagnostic only: count (level, vds) pairs violating vds > vgs - v_th.

    The encoder intentionally applies the square-law curve outside strict
    saturation, treating it as a pure space-filling curve.
    """
    vds = np.atleast_1d(np.asarray(vds, dtype=float))
    levels = grid.as_array()
    return int(np.sum(vds[None, :] <= (levels[:, None] - p.v_th)))
