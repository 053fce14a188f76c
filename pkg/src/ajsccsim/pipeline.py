"""End-to-end Monte Carlo runs: encode -> channel -> decode -> block MSE.

The spatio-temporal correlation scales (s_p, t_p) let the receiver average
each decoded block-window before computing MSE, trading quantization
resolution against channel robustness; the sweeps below map that trade-off
over the quantization step phi and over (SNR, bandwidth).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .channel import ChannelConfig, transmit_block
from .decoding import decode_block
from .errors import ContractError
from .mosfet import AjsccConfig, MosfetParams, build_grid, drain_current, quantize_to_grid
from .sources import FieldConfig, SensorField, generate_field

__all__ = [
    "MseReport",
    "SweepPoint",
    "block_averaged_mse",
    "run_pipeline_once",
    "sweep_phi",
    "sweep_snr_bw",
    "encoder_ids_max",
]


@dataclass(frozen=True)
class MseReport:
    mse_gs: float
    mse_ds: float

    @property
    def mse_sum(self) -> float:
        return (self.mse_gs + self.mse_ds) / 2.0


@dataclass(frozen=True)
class SweepPoint:
    phi: float
    snr_db: float
    bandwidth_hz: float
    report: MseReport
    seed: int


def _block_means(a: np.ndarray, s_p: int, t_p: int) -> np.ndarray:
    nx, ny, nt = a.shape
    return a.reshape(nx // s_p, s_p, ny // s_p, s_p, nt // t_p, t_p).mean(axis=(1, 3, 5))


def block_averaged_mse(
    field: SensorField, x1_hat: np.ndarray, x2_hat: np.ndarray, s_p: int, t_p: int
) -> MseReport:
    """MSE between block-window means of truth and of the decoded arrays."""
    x1_hat = np.asarray(x1_hat, dtype=float)
    x2_hat = np.asarray(x2_hat, dtype=float)
    if x1_hat.shape != field.x1.shape or x2_hat.shape != field.x2.shape:
        raise ContractError(
            f"decoded shapes {x1_hat.shape}/{x2_hat.shape} do not match "
            f"field shape {field.x1.shape}"
        )
    nx, ny, nt = field.x1.shape
    if nx % s_p or ny % s_p or nt % t_p:
        raise ContractError("s_p/t_p must divide the field dimensions")
    mse_ds = float(np.mean((_block_means(field.x1, s_p, t_p) - _block_means(x1_hat, s_p, t_p)) ** 2))
    mse_gs = float(np.mean((_block_means(field.x2, s_p, t_p) - _block_means(x2_hat, s_p, t_p)) ** 2))
    return MseReport(mse_gs=mse_gs, mse_ds=mse_ds)


def encoder_ids_max(params: MosfetParams, ajscc: AjsccConfig) -> float:
    """Largest encoder current, the channel's scaling anchor."""
    return float(drain_current(params, ajscc.vgs_hi, ajscc.vds_hi))


def run_pipeline_once(
    field_cfg: FieldConfig,
    kind_x1: str,
    kind_x2: str,
    ajscc: AjsccConfig,
    params: MosfetParams,
    chan: ChannelConfig,
    seed: int,
    return_decoded: bool = False,
):
    """One seeded field through encode -> channel -> decode -> block MSE.

    Currents travel as per-sensor time series (consecutive-in-time pairs feed
    the decoder).  The seed is split into independent field and channel
    substreams.
    """
    ajscc.validate_against(params)
    ss_field, ss_chan = np.random.SeedSequence(seed).spawn(2)
    field = generate_field(field_cfg, kind_x1, kind_x2, np.random.default_rng(ss_field))

    grid = build_grid(ajscc)
    _, level = quantize_to_grid(field.x2, grid)
    ids = drain_current(params, level, field.x1)

    nx, ny, nt = field.x1.shape
    series = ids.reshape(nx * ny, nt)
    received = transmit_block(series.reshape(-1), chan, np.random.default_rng(ss_chan))
    received = received.reshape(nx * ny, nt)

    vgs_hat, vds_hat, _, _ = decode_block(
        received, grid, params, ajscc.vds_lo, ajscc.vds_hi
    )
    x1_hat = vds_hat.reshape(nx, ny, nt)
    x2_hat = vgs_hat.reshape(nx, ny, nt)
    report = block_averaged_mse(field, x1_hat, x2_hat, field_cfg.s_p, field_cfg.t_p)
    if return_decoded:
        return report, x1_hat, x2_hat, field
    return report


def _trial_seed(base_seed: int, *indices: int) -> int:
    """Deterministic, order-independent per-trial seed."""
    ss = np.random.SeedSequence([int(base_seed), *[int(i) for i in indices]])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _mean_report(reports: list[MseReport]) -> MseReport:
    return MseReport(
        mse_gs=float(np.mean([r.mse_gs for r in reports])),
        mse_ds=float(np.mean([r.mse_ds for r in reports])),
    )


def sweep_phi(
    phi_grid,
    field_cfg: FieldConfig,
    kind_x1: str,
    kind_x2: str,
    ajscc_base: AjsccConfig,
    params: MosfetParams,
    chan: ChannelConfig,
    trials: int,
    base_seed: int,
):
    """Mean MSE per phi over seeded trials; returns (points, phi_star).

    phi_star is the argmin of the mean mse_sum, ties to the smaller phi.
    """
    phi_grid = list(phi_grid)
    if not phi_grid or trials < 1:
        raise ContractError("need a non-empty phi grid and trials >= 1")
    points = []
    for phi in phi_grid:
        ajscc = replace(ajscc_base, phi=float(phi))
        # Common random numbers across phi: trial t sees the same field and
        # channel draws at every phi, so the argmin comparison is paired.
        reports = [
            run_pipeline_once(
                field_cfg, kind_x1, kind_x2, ajscc, params, chan,
                _trial_seed(base_seed, 0, t),
            )
            for t in range(trials)
        ]
        points.append(
            SweepPoint(
                phi=float(phi), snr_db=chan.snr_db, bandwidth_hz=chan.bandwidth_hz,
                report=_mean_report(reports), seed=base_seed,
            )
        )
    sums = np.array([pt.report.mse_sum for pt in points])
    phi_star = float(phi_grid[int(np.argmin(sums))])
    return points, phi_star


def sweep_snr_bw(
    snr_grid,
    bw_grid,
    phi: float,
    field_cfg: FieldConfig,
    kind_x1: str,
    kind_x2: str,
    ajscc_base: AjsccConfig,
    params: MosfetParams,
    chan_base: ChannelConfig,
    trials: int,
    base_seed: int,
) -> list[SweepPoint]:
    """Mean MSE over the full (snr, bw) cross-product at fixed phi."""
    snr_grid, bw_grid = list(snr_grid), list(bw_grid)
    if not snr_grid or not bw_grid:
        raise ContractError("snr and bw grids must be non-empty")
    ajscc = replace(ajscc_base, phi=float(phi))
    points = []
    for j, bw in enumerate(bw_grid):
        for i, snr in enumerate(snr_grid):
            chan = replace(chan_base, snr_db=float(snr), bandwidth_hz=float(bw))
            reports = [
                run_pipeline_once(
                    field_cfg, kind_x1, kind_x2, ajscc, params, chan,
                    _trial_seed(base_seed, 1, i, j, t),
                )
                for t in range(trials)
            ]
            points.append(
                SweepPoint(
                    phi=float(phi), snr_db=float(snr), bandwidth_hz=float(bw),
                    report=_mean_report(reports), seed=base_seed,
                )
            )
    return points
