import numpy as np
import pytest

from ajsccsim.channel import ChannelConfig, Transmission, scale_factor, transmit, transmit_block
from ajsccsim.errors import ConfigError, ModulationRangeError

IDS_MAX = 9.10425143e-3  # encoder maximum for the (5, 10) voltage windows


def cfg(**kw):
    base = dict(snr_db=20.0, bandwidth_hz=410e3, ids_max_ref=IDS_MAX)
    base.update(kw)
    return ChannelConfig(**base)


class TestConfig:
    @pytest.mark.parametrize("kw", [
        {"bandwidth_hz": 0.0},
        {"n_fft": 100},
        {"n_fft": 32},
        {"doppler_frac": 0.5},
        {"ids_max_ref": 0.0},
        {"rician_k": -1.0},
        {"mode": "funky"},
    ])
    def test_invalid_rejected(self, kw):
        with pytest.raises(ConfigError):
            cfg(**kw)


class TestScaleFactor:
    def test_reference_value(self):
        c = ChannelConfig(snr_db=0, bandwidth_hz=200e3, ids_max_ref=2e-3)
        assert scale_factor(c) == pytest.approx(9e7, rel=1e-12)

    def test_linear_in_bandwidth(self):
        assert scale_factor(cfg(bandwidth_hz=820e3)) == pytest.approx(
            2 * scale_factor(cfg()), rel=1e-12
        )

    def test_monotone_mapping(self):
        s = scale_factor(cfg())
        ids = np.linspace(1e-4, IDS_MAX, 10)
        assert np.all(np.diff(s * ids) > 0)


class TestTransmit:
    def test_ideal_passthrough(self):
        c = cfg(mode="ideal")
        out = transmit(2e-3, c, np.random.default_rng(0))
        assert out.received_ids == 2e-3
        assert out.bin_error == 0

    def test_noiseless_on_bin_exact(self):
        c = cfg(snr_db=60.0, rician_k=1e9, doppler_frac=0.0)
        # put the tone exactly on bin 1000
        f = 1000 * c.bandwidth_hz / c.n_fft
        ids = f / scale_factor(c)
        out = transmit(ids, c, np.random.default_rng(1))
        assert out.bin_error == 0
        assert out.received_ids == pytest.approx(ids, rel=1e-12)

    def test_half_bin_rounding_bound(self):
        c = cfg(snr_db=60.0, doppler_frac=0.0, n_fft=2048)
        s = scale_factor(c)
        bin_ids = (c.bandwidth_hz / c.n_fft) / s
        rng = np.random.default_rng(2)
        ids = rng.uniform(0.1, 0.9, 1000) * IDS_MAX
        got = transmit_block(ids, c, np.random.default_rng(3))
        assert np.max(np.abs(got - ids)) <= bin_ids  # half-bin plus leakage margin

    def test_out_of_band_rejected(self):
        c = cfg()
        with pytest.raises(ModulationRangeError):
            transmit(2 * IDS_MAX, c, np.random.default_rng(0))
        with pytest.raises(ModulationRangeError):
            transmit(0.0, c, np.random.default_rng(0))
        with pytest.raises(ModulationRangeError):
            transmit_block(np.array([1e-3, -1e-3]), c, np.random.default_rng(0))

    def test_returns_transmission(self):
        out = transmit(2e-3, cfg(), np.random.default_rng(5))
        assert isinstance(out, Transmission)
        assert 0 < out.true_freq < cfg().bandwidth_hz


class TestBlockDeterminism:
    def test_fixed_seed_bit_identical(self):
        c = cfg(snr_db=-10.0)
        ids = np.random.default_rng(4).uniform(0.1, 0.9, 500) * IDS_MAX
        a = transmit_block(ids, c, 1234)
        b = transmit_block(ids, c, 1234)
        assert np.array_equal(a, b)

    def test_ideal_block_identity(self):
        ids = np.linspace(1e-4, 8e-3, 50)
        out = transmit_block(ids, cfg(mode="ideal"), 0)
        assert np.array_equal(out, ids)

    def test_disjoint_seeds_decorrelated(self):
        c = cfg(snr_db=-10.0)
        ids = np.full(10_000, 0.5 * IDS_MAX)
        e1 = transmit_block(ids, c, 100) - ids
        e2 = transmit_block(ids, c, 200) - ids
        rho = np.corrcoef(e1, e2)[0, 1]
        assert abs(rho) < 0.1


class TestNoiseStatistics:
    def test_snr_calibration(self):
        # measured signal power over noise power must match snr_db closely
        c = cfg(snr_db=7.0, n_fft=256)
        rng = np.random.default_rng(11)
        sig_pow = []
        noise_pow = []
        los = np.sqrt(c.rician_k / (c.rician_k + 1))
        scat = np.sqrt(1 / (2 * (c.rician_k + 1)))
        sigma2 = 10 ** (-c.snr_db / 10)
        for _ in range(400):
            z = rng.standard_normal(2)
            gain = los + scat * (z[0] + 1j * z[1])
            tone = gain * np.exp(2j * np.pi * 0.21 * np.arange(c.n_fft))
            noise = np.sqrt(sigma2 / 2) * (
                rng.standard_normal(c.n_fft) + 1j * rng.standard_normal(c.n_fft)
            )
            sig_pow.append(np.mean(np.abs(tone) ** 2))
            noise_pow.append(np.mean(np.abs(noise) ** 2))
        measured = 10 * np.log10(np.mean(sig_pow) / np.mean(noise_pow))
        assert measured == pytest.approx(7.0, abs=0.2)

    def test_monotone_degradation(self):
        rng = np.random.default_rng(12)
        ids = rng.uniform(0.15, 0.85, 600) * IDS_MAX
        errs = []
        for snr in range(-60, 1, 10):
            got = transmit_block(ids, cfg(snr_db=snr), snr + 1000)
            errs.append(np.mean(np.abs(got - ids)))
        slack = 1.05  # Monte Carlo slack
        for worse, better in zip(errs, errs[1:]):
            assert better <= worse * slack

    def test_threshold_effect_below_minus_30(self):
        rng = np.random.default_rng(13)
        ids = rng.uniform(0.15, 0.85, 1500) * IDS_MAX
        err = {}
        for snr in (-45, -35, -30, -20):
            got = transmit_block(ids, cfg(snr_db=snr, n_fft=8192), snr + 500)
            err[snr] = np.mean(np.abs(got - ids))
        assert err[-30] >= 5 * err[-20]
        assert err[-45] >= 5 * err[-20]

    def test_scalar_and_block_paths_agree_statistically(self):
        # the spectral fast path must reproduce the literal pipeline's
        # error statistics
        for snr in (-30.0, -22.0):
            c = cfg(snr_db=snr)
            rng = np.random.default_rng(14)
            ids = rng.uniform(0.2, 0.8, 400) * IDS_MAX
            scalar = np.array([
                transmit(x, c, np.random.default_rng([17, int(snr) + 100, k])).received_ids
                for k, x in enumerate(ids)
            ])
            block = transmit_block(ids, c, 18)
            fail_scalar = np.mean(np.abs(scalar - ids) / IDS_MAX > 0.05)
            fail_block = np.mean(np.abs(block - ids) / IDS_MAX > 0.05)
            assert fail_block == pytest.approx(fail_scalar, abs=0.08)
