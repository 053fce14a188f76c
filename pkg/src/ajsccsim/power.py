"""Behavioral model of the variable-step quantizer front-end and its power.

The front-end quantizes the raw sensor voltage to the configured step in a
cascade of halving stages (step 1 V needs one stage, 0.125 V needs four),
plus one final adder.  Power is dominated by one op-amp per stage and the
adder; comparators contribute nanowatts.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError

__all__ = ["PHI_CHOICES", "PhiSetting", "PowerModel", "variable_phi_quantize", "power_estimate"]

PHI_CHOICES = (1.0, 0.5, 0.25, 0.125)


@dataclass(frozen=True)
class PhiSetting:
    phi: float

    def __post_init__(self):
        if self.phi not in PHI_CHOICES:
            raise ConfigError(f"phi must be one of {PHI_CHOICES}, got {self.phi}")

    @property
    def stages(self) -> int:
        return 1 + int(round(np.log2(1.0 / self.phi)))


@dataclass(frozen=True)
class PowerModel:
    opamp_uw: float = 8.0
    comparator_nw: float = 12.7

    def __post_init__(self):
        if not (self.opamp_uw > 0 and self.comparator_nw > 0):
            raise ConfigError("power figures must be positive")


def variable_phi_quantize(v_in, s: PhiSetting):
    """Ideal front-end output: integer floor plus the residual rounded to the
    nearest multiple of phi, ties up.  Inputs below 1 V are out of range
    (the device must sit above its threshold voltage)."""
    v = np.asarray(v_in, dtype=float)
    if np.any(v < 1.0):
        raise DomainError("input below 1 V")
    base = np.floor(v)
    resid = v - base
    out = base + np.floor(resid / s.phi + 0.5) * s.phi
    return out if out.ndim else float(out)


def power_estimate(s: PhiSetting, model: PowerModel = PowerModel(), comparators: int = 4) -> float:
    """Microwatts: one op-amp per stage plus the adder, plus comparators."""
    if comparators < 0:
        raise ConfigError("comparators must be >= 0")
    return (s.stages + 1) * model.opamp_uw + comparators * model.comparator_nw / 1000.0
