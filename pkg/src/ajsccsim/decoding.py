"""Receiver-side slope-matching decoder with iterative range-check correction.

Two consecutive received currents are assumed to lie on the same V_gs curve.
The curve is identified by comparing the pair slope estimate

    slope_1 = lambda * (I1 + I2) / 2

against each candidate curve's analytic slope lambda * A(g).  slope_1 is an
approximation (exactly lambda*A(g)*(1 + lambda*vbar), so it is biased high),
and the best slope match can land on a neighbouring curve; candidates whose
inverted V_ds values fall outside the transmitter's known window are therefore
rejected in rank order until one fits.  When no candidate fits both samples of
a pair (the samples may not share a curve at all, e.g. across a correlation-
window boundary), each sample falls back to its own best in-range candidate,
and if it has none, to the candidate inverting nearest the window.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, InsufficientDataError
from .mosfet import MosfetParams, VgsGrid, curve_gain

__all__ = [
    "DecodeResult",
    "DEFAULT_RANGE_TOL",
    "DEFAULT_LOW_GUARD",
    "pair_slope_estimate",
    "candidate_slope",
    "decode_pair",
    "decode_series",
    "decode_block",
]

DEFAULT_RANGE_TOL = 0.05  # V of outward slack at the top of the V_ds window

# Wrong-curve aliases always invert BELOW the true V_ds (the pair slope
# estimate is biased high by 1 + lambda*vbar, so the best-matching wrong
# candidates are higher curves, whose inversions are smaller).  A guard band
# above vds_lo, sized to the worst-case inversion shift of the default 2%
# Doppler offset (0.02 * (1 + lambda*vds_hi) / lambda), rejects that alias
# zone; true samples landing in it are recovered by the nearest-window
# fallback, which is exact when no alias competes.
DEFAULT_LOW_GUARD = 0.75  # V of inward guard at the bottom of the window


@dataclass(frozen=True)
class DecodeResult:
    vgs_hat: float
    vds_hat: float
    level_index: int
    correction_rank: int  # 0 = best slope match accepted


def pair_slope_estimate(i1: float, i2: float, p: MosfetParams) -> float:
    """Slope of the shared curve estimated from the pair, lambda*(I1+I2)/2."""
    return p.lambda_clm * (i1 + i2) / 2.0


def candidate_slope(p: MosfetParams, g) -> float:
    """Analytic slope lambda*A(g) of curve g; equals the two-point slope of
    any two noiseless points on that curve."""
    return p.lambda_clm * curve_gain(p, g)


def _decode_pairs_vectorized(
    first: np.ndarray,
    second: np.ndarray,
    grid: VgsGrid,
    p: MosfetParams,
    vds_lo: float,
    vds_hi: float,
    tol: float,
    guard: float,
    range_check: bool,
):
    """Decode P pairs at once.

    Returns (level_idx, rank, vds_first, vds_second) arrays of length P.
    """
    if len(grid) == 0:
        raise ConfigError("empty grid")
    levels = grid.as_array()
    gains = curve_gain(p, levels)                       # (L,)
    slopes = p.lambda_clm * gains                       # (L,)

    est = p.lambda_clm * (first + second) / 2.0         # (P,)
    mism = np.abs(est[:, None] - slopes[None, :])       # (P, L)
    order = np.argsort(mism, axis=1, kind="stable")     # rank -> level idx

    inv1 = (first[:, None] / gains[None, :] - 1.0) / p.lambda_clm
    inv2 = (second[:, None] / gains[None, :] - 1.0) / p.lambda_clm
    rows = np.arange(first.shape[0])

    if range_check:
        lo, hi = vds_lo + guard, vds_hi + tol
        ok1 = (inv1 >= lo) & (inv1 <= hi)
        ok2 = (inv2 >= lo) & (inv2 <= hi)
        joint_ranked = np.take_along_axis(ok1 & ok2, order, axis=1)
        joint_rank = np.argmax(joint_ranked, axis=1)
        joint_found = joint_ranked.any(axis=1)

        # Pairs where no candidate fits both samples (e.g. the samples
        # genuinely sit on different curves) fall back to a per-sample range
        # check; a sample with no in-range candidate at all takes the
        # candidate whose inversion lies nearest the physical window (true
        # samples rejected only by the guard band have distance zero there,
        # so they win; remaining ties resolve to the better slope rank).
        def _solo(ok, inv):
            ranked_ok = np.take_along_axis(ok, order, axis=1)
            first_ok = np.argmax(ranked_ok, axis=1)
            dist = np.maximum(vds_lo - inv, inv - vds_hi)
            nearest = np.argmin(np.take_along_axis(dist, order, axis=1), axis=1)
            return np.where(ranked_ok.any(axis=1), first_ok, nearest)

        rank1 = np.where(joint_found, joint_rank, _solo(ok1, inv1))
        rank2 = np.where(joint_found, joint_rank, _solo(ok2, inv2))
    else:
        rank1 = rank2 = np.zeros(first.shape[0], dtype=int)

    idx1 = np.take_along_axis(order, rank1[:, None], axis=1)[:, 0]
    idx2 = np.take_along_axis(order, rank2[:, None], axis=1)[:, 0]
    return (idx1, rank1, inv1[rows, idx1]), (idx2, rank2, inv2[rows, idx2])


def decode_pair(
    i1: float,
    i2: float,
    grid: VgsGrid,
    p: MosfetParams,
    vds_lo: float,
    vds_hi: float,
    tol: float = DEFAULT_RANGE_TOL,
    guard: float = DEFAULT_LOW_GUARD,
    range_check: bool = True,
) -> tuple[DecodeResult, DecodeResult]:
    """Decode one pair of consecutive currents assumed to share a curve.

    Candidates are ranked by slope mismatch; the first whose inversions for
    both currents lie in [vds_lo + guard, vds_hi + tol] wins.  If none does,
    each sample independently takes its best-ranked candidate with an
    in-range inversion, or failing that the candidate whose inversion lies
    nearest the [vds_lo, vds_hi] window.
    """
    first = np.asarray([i1], dtype=float)
    second = np.asarray([i2], dtype=float)
    (idx1, rank1, v1), (idx2, rank2, v2) = _decode_pairs_vectorized(
        first, second, grid, p, vds_lo, vds_hi, tol, guard, range_check
    )
    r1 = DecodeResult(grid.levels[idx1[0]], float(v1[0]), int(idx1[0]), int(rank1[0]))
    r2 = DecodeResult(grid.levels[idx2[0]], float(v2[0]), int(idx2[0]), int(rank2[0]))
    return r1, r2


def decode_block(
    ids_block: np.ndarray,
    grid: VgsGrid,
    p: MosfetParams,
    vds_lo: float,
    vds_hi: float,
    tol: float = DEFAULT_RANGE_TOL,
    guard: float = DEFAULT_LOW_GUARD,
    range_check: bool = True,
):
    """Decode many series at once.

    ids_block has shape (n_series, series_len); consecutive samples within a
    row form the decoding pairs.  Sample k (k >= 1) takes the second result of
    pair (k-1, k); sample 0 takes the first result of pair (0, 1).

    Returns (vgs_hat, vds_hat, level_idx, rank) arrays shaped like ids_block.
    """
    ids_block = np.asarray(ids_block, dtype=float)
    n_series, n_t = ids_block.shape
    if n_t < 2:
        raise InsufficientDataError("need at least 2 samples per series")

    first = ids_block[:, :-1].reshape(-1)
    second = ids_block[:, 1:].reshape(-1)
    (idx1, rank1, v1), (idx2, rank2, v2) = _decode_pairs_vectorized(
        first, second, grid, p, vds_lo, vds_hi, tol, guard, range_check
    )
    shape = (n_series, n_t - 1)
    idx1, rank1, v1 = (a.reshape(shape) for a in (idx1, rank1, v1))
    idx2, rank2, v2 = (a.reshape(shape) for a in (idx2, rank2, v2))

    level_idx = np.concatenate([idx1[:, :1], idx2], axis=1)
    out_rank = np.concatenate([rank1[:, :1], rank2], axis=1)
    vds_hat = np.concatenate([v1[:, :1], v2], axis=1)
    vgs_hat = grid.as_array()[level_idx]
    return vgs_hat, vds_hat, level_idx, out_rank


def decode_series(
    ids_seq,
    grid: VgsGrid,
    p: MosfetParams,
    vds_lo: float,
    vds_hi: float,
    tol: float = DEFAULT_RANGE_TOL,
    guard: float = DEFAULT_LOW_GUARD,
    range_check: bool = True,
) -> list[DecodeResult]:
    """Decode one time series of received currents."""
    ids_seq = np.asarray(ids_seq, dtype=float)
    if ids_seq.ndim != 1 or ids_seq.size < 2:
        raise InsufficientDataError("need a 1-D series of length >= 2")
    vgs, vds, idx, rank = decode_block(
        ids_seq[None, :], grid, p, vds_lo, vds_hi, tol, guard, range_check
    )
    return [
        DecodeResult(float(vgs[0, k]), float(vds[0, k]), int(idx[0, k]), int(rank[0, k]))
        for k in range(ids_seq.size)
    ]
