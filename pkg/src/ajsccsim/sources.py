"""Ground-truth sensor fields from six named distributions on [0, 1].

The six kinds use one fixed parameterization each, chosen so that two pairs
(cosine/triangular and invgau/weibull) are deliberately hard to tell apart:

- uniform:    U(0, 1)
- normal:     N(0.5, 0.15^2) truncated to [0, 1], renormalized
- cosine:     1 - cos(2*pi*x)
- triangular: (0, mode 0.5, 1)
- invgau:     inverse Gaussian mu=0.3, shape 1.0, truncated to (0, 1]
- weibull:    shape 1.5, scale 0.35, truncated to [0, 1]

Truncated kinds are renormalized (no probability mass piled at the edges), so
their densities stay continuous for divergence scoring.  Fields are generated
either i.i.d. per cell or block-correlated: one base draw per (s_p x s_p
spatial block x t_p temporal window) plus small Gaussian jitter.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import ConfigError

__all__ = [
    "DISTRIBUTION_KINDS",
    "FieldConfig",
    "SensorField",
    "pdf_unit",
    "sample_unit",
    "affine_scale",
    "affine_unscale",
    "scaled_pdf",
    "generate_field",
]

DISTRIBUTION_KINDS = ("normal", "uniform", "cosine", "triangular", "invgau", "weibull")

_NORM = stats.norm(loc=0.5, scale=0.15)
_INVGAU = stats.invgauss(mu=0.3, scale=1.0)       # IG(mu=0.3, shape=1.0)
_WEIBULL = stats.weibull_min(c=1.5, scale=0.35)

# Mass each truncated parent leaves inside [0, 1].
_TRUNC_MASS = {
    "normal": float(_NORM.cdf(1.0) - _NORM.cdf(0.0)),
    "invgau": float(_INVGAU.cdf(1.0)),
    "weibull": float(_WEIBULL.cdf(1.0)),
}


def _check_kind(kind: str) -> None:
    if kind not in DISTRIBUTION_KINDS:
        raise ConfigError(f"unknown distribution kind {kind!r}")


def pdf_unit(kind: str, x) -> np.ndarray:
    """Density of the named kind on [0, 1]; zero outside."""
    _check_kind(kind)
    x = np.asarray(x, dtype=float)
    inside = (x >= 0.0) & (x <= 1.0)
    xc = np.where(inside, x, 0.5)  # safe evaluation point for masked-out cells
    if kind == "uniform":
        d = np.ones_like(xc)
    elif kind == "normal":
        d = _NORM.pdf(xc) / _TRUNC_MASS["normal"]
    elif kind == "cosine":
        d = 1.0 - np.cos(2.0 * np.pi * xc)
    elif kind == "triangular":
        d = np.where(xc <= 0.5, 4.0 * xc, 4.0 * (1.0 - xc))
    elif kind == "invgau":
        d = _INVGAU.pdf(xc) / _TRUNC_MASS["invgau"]
    else:  # weibull
        d = _WEIBULL.pdf(xc) / _TRUNC_MASS["weibull"]
    out = np.where(inside, d, 0.0)
    return out if out.ndim else float(out)


def sample_unit(kind: str, n: int, rng) -> np.ndarray:
    """Draw n i.i.d. values on [0, 1] from the named kind.

    Closed-form inverse CDF for uniform/triangular, library inverse CDF on
    the truncated uniform range for normal/invgau/weibull, and rejection
    sampling (envelope 2) for cosine.
    """
    _check_kind(kind)
    if n < 1:
        raise ConfigError("n must be >= 1")
    rng = np.random.default_rng(rng)
    if kind == "uniform":
        return rng.random(n)
    if kind == "triangular":
        u = rng.random(n)
        return np.where(u <= 0.5, np.sqrt(u / 2.0), 1.0 - np.sqrt((1.0 - u) / 2.0))
    if kind == "cosine":
        out = np.empty(n)
        filled = 0
        while filled < n:
            m = max(64, int(2.2 * (n - filled)))
            x = rng.random(m)
            keep = x[rng.random(m) * 2.0 <= 1.0 - np.cos(2.0 * np.pi * x)]
            take = min(keep.size, n - filled)
            out[filled : filled + take] = keep[:take]
            filled += take
        return out
    if kind == "normal":
        dist, lo = _NORM, float(_NORM.cdf(0.0))
        span = _TRUNC_MASS["normal"]
    elif kind == "invgau":
        dist, lo, span = _INVGAU, 0.0, _TRUNC_MASS["invgau"]
    else:
        dist, lo, span = _WEIBULL, 0.0, _TRUNC_MASS["weibull"]
    u = lo + span * rng.random(n)
    return np.clip(dist.ppf(u), 0.0, 1.0)


def affine_scale(values, lo: float, hi: float):
    """Map unit-interval values onto [lo, hi]."""
    return lo + (hi - lo) * np.asarray(values, dtype=float)


def affine_unscale(values, lo: float, hi: float):
    """Inverse of affine_scale."""
    return (np.asarray(values, dtype=float) - lo) / (hi - lo)


def scaled_pdf(kind: str, lo: float, hi: float):
    """Density of the kind after affine scaling onto [lo, hi], as a callable."""
    span = hi - lo

    def pdf(y):
        return pdf_unit(kind, (np.asarray(y, dtype=float) - lo) / span) / span

    return pdf


@dataclass(frozen=True)
class FieldConfig:
    nx: int = 20
    ny: int = 20
    nt: int = 20
    s_p: int = 10
    t_p: int = 10
    correlation_mode: str = "block"   # "block" or "iid"
    jitter_sigma: float = 0.02        # unit-interval scale
    scale_lo: float = 5.0
    scale_hi: float = 10.0

    def __post_init__(self):
        if self.nx % self.s_p or self.ny % self.s_p:
            raise ConfigError("s_p must divide nx and ny")
        if self.nt % self.t_p:
            raise ConfigError("t_p must divide nt")
        if self.jitter_sigma < 0:
            raise ConfigError("jitter_sigma must be >= 0")
        if not self.scale_hi > self.scale_lo:
            raise ConfigError("scale_hi must exceed scale_lo")
        if self.correlation_mode not in ("block", "iid"):
            raise ConfigError(f"unknown correlation_mode {self.correlation_mode!r}")


@dataclass(frozen=True)
class SensorField:
    x1: np.ndarray            # (nx, ny, nt) volts; drives V_ds
    x2: np.ndarray            # (nx, ny, nt) volts; drives V_gs
    kind_x1: str
    kind_x2: str
    config: FieldConfig


def _one_signal(kind: str, cfg: FieldConfig, rng) -> np.ndarray:
    if cfg.correlation_mode == "iid":
        unit = sample_unit(kind, cfg.nx * cfg.ny * cfg.nt, rng).reshape(
            cfg.nx, cfg.ny, cfg.nt
        )
    else:
        bx, by, bt = cfg.nx // cfg.s_p, cfg.ny // cfg.s_p, cfg.nt // cfg.t_p
        base = sample_unit(kind, bx * by * bt, rng).reshape(bx, by, bt)
        cells = np.repeat(np.repeat(np.repeat(base, cfg.s_p, 0), cfg.s_p, 1), cfg.t_p, 2)
        cells = cells + cfg.jitter_sigma * rng.standard_normal(cells.shape)
        unit = np.clip(cells, 0.0, 1.0)
    return affine_scale(unit, cfg.scale_lo, cfg.scale_hi)


def generate_field(cfg: FieldConfig, kind_x1: str, kind_x2: str, rng) -> SensorField:
    """Generate both ground-truth signals of one field realization."""
    _check_kind(kind_x1)
    _check_kind(kind_x2)
    rng = np.random.default_rng(rng)
    x1 = _one_signal(kind_x1, cfg, rng)
    x2 = _one_signal(kind_x2, cfg, rng)
    return SensorField(x1=x1, x2=x2, kind_x1=kind_x1, kind_x2=kind_x2, config=cfg)
