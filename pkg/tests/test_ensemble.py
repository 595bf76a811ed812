import math

import numpy as np
import pytest
from scipy.stats import ks_2samp, kstest

from zetaumm.ensemble import (
    PLAQUETTE_DENSITY_SIGN,
    acceptance_in_band,
    pair_correlation,
    plaquette_mc,
    plaquette_model_density,
    sample_cue,
    sine_kernel_r2,
    unfold_zeros,
)

TWO_PI = 2.0 * math.pi


class TestCUE:
    def test_mean_circular_spacing_is_exact(self):
        s = sample_cue(16, 200, seed=1)
        # N circular gaps always sum to 2pi, so the mean is identically 2pi/N
        assert abs(s.circular_spacings().mean() - TWO_PI / 16) < 1e-12

    def test_same_seed_reproduces_stream(self):
        a = sample_cue(8, 50, seed=42)
        b = sample_cue(8, 50, seed=42)
        assert np.array_equal(a.phases, b.phases)
        c = sample_cue(8, 50, seed=43)
        assert not np.array_equal(a.phases, c.phases)

    def test_phases_sorted_in_interval(self):
        s = sample_cue(12, 100, seed=5)
        assert (np.diff(s.phases, axis=1) >= 0).all()
        assert s.phases.max() <= math.pi and s.phases.min() > -math.pi

    def test_two_by_two_spacing_law(self):
        # joint density |e^{i a} - e^{i b}|^2 makes a uniformly chosen
        # circular gap follow sin^2(g/2)/pi; KS against its CDF
        s = sample_cue(2, 100_000, seed=9)
        gaps = s.circular_spacings()
        pick = np.random.Generator(np.random.PCG64(1234)).integers(0, 2, gaps.shape[0])
        g = gaps[np.arange(gaps.shape[0]), pick]
        res = kstest(g, lambda x: (x - np.sin(x)) / TWO_PI)
        assert res.pvalue > 0.01

    def test_minimum_size(self):
        with pytest.raises(ValueError):
            sample_cue(1, 10, seed=0)


class TestPlaquetteMC:
    def test_zero_coupling_gives_uniform_density(self):
        run = plaquette_mc(32, [], sweeps=1500, burn_in=300, seed=1, chains=6, bins=32)
        assert np.abs(run.density - 1.0 / TWO_PI).max() < 0.01
        assert acceptance_in_band(run)

    def test_single_coupling_matches_ungapped_density(self):
        run = plaquette_mc(32, [0.25], sweeps=1200, burn_in=300, seed=2, chains=4, bins=32)
        th = 0.5 * (run.bin_edges[1:] + run.bin_edges[:-1])
        model = plaquette_model_density(th, [0.25])
        assert np.abs(run.density - model).max() < 0.03

    def test_sign_convention_frozen(self):
        # the calibration that froze PLAQUETTE_DENSITY_SIGN: fitted first
        # Fourier coefficient has magnitude beta_1 and the recorded sign
        run = plaquette_mc(32, [0.25], sweeps=800, burn_in=300, seed=3, chains=4)
        c_fit = np.cos(run.sample.phases.ravel()).mean()
        assert abs(c_fit - PLAQUETTE_DENSITY_SIGN * 0.25) < 0.02

    def test_burn_in_changes_histogram(self):
        a = plaquette_mc(16, [0.25], sweeps=200, burn_in=0, seed=4, chains=2)
        b = plaquette_mc(16, [0.25], sweeps=200, burn_in=200, seed=4, chains=2)
        assert not np.array_equal(a.density, b.density)

    def test_chain_streams_independent_of_chain_count(self):
        a = plaquette_mc(8, [0.1], sweeps=50, burn_in=20, seed=7, chains=1)
        b = plaquette_mc(8, [0.1], sweeps=50, burn_in=20, seed=7, chains=3)
        assert np.array_equal(a.sample.phases[:50], b.sample.phases[:50])

    def test_same_seed_same_histogram(self):
        a = plaquette_mc(16, [0.2], sweeps=100, burn_in=50, seed=11, chains=2)
        b = plaquette_mc(16, [0.2], sweeps=100, burn_in=50, seed=11, chains=2)
        assert np.array_equal(a.density, b.density)

    def test_gap_phase_guard(self):
        with pytest.raises(ValueError):
            plaquette_mc(16, [0.6], sweeps=10, burn_in=0, seed=0)

    def test_accepts_beta_series_input(self):
        from zetaumm.resolvent import beta_contour, local_zeta_model

        series = beta_contour(local_zeta_model(5), 3, 0.5, 512)
        run_a = plaquette_mc(8, series, sweeps=30, burn_in=10, seed=2, chains=1)
        run_b = plaquette_mc(8, series.coefficients.real, sweeps=30, burn_in=10, seed=2, chains=1)
        assert np.array_equal(run_a.sample.phases, run_b.sample.phases)

    def test_zero_coupling_spacings_match_cue(self):
        # heavy thinning and one gap per configuration keep the two-sample
        # KS comparison effectively independent
        run = plaquette_mc(16, [], sweeps=2000, burn_in=300, seed=5, chains=2, thin=10)
        mc_gaps = run.sample.circular_spacings()[::2, 0]
        cue_gaps = sample_cue(16, mc_gaps.size, seed=6).circular_spacings()[:, 0]
        assert ks_2samp(mc_gaps, cue_gaps).pvalue > 1e-3


class TestPairCorrelation:
    def test_cue_matches_sine_kernel(self):
        s = sample_cue(40, 800, seed=11)
        rep = pair_correlation(s, "cue_native", bins=50, r_max=5.0)
        assert rep.l2_distance < 0.08
        # R2 flattens to 1 at large separations
        assert abs(rep.r2[-10:].mean() - 1.0) < 0.05

    def test_poisson_control(self):
        rng = np.random.Generator(np.random.PCG64(5))
        pts = np.sort(rng.uniform(0.0, 10_000.0, 10_000))
        rep = pair_correlation(pts, "identity", bins=50, r_max=5.0)
        assert rep.l2_distance > 0.2
        assert rep.l2_distance_to(np.ones(50)) < 0.15

    def test_zero_unfolding_has_unit_mean_spacing(self, zeros_2000):
        x = unfold_zeros(zeros_2000.ts)
        spacing = np.diff(x).mean()
        assert abs(spacing - 1.0) < 0.01

    def test_unfolded_zeros_near_sine_kernel(self, zeros_all):
        # low-height zeros carry a visible 1/ln(t) correction at small r,
        # so the distance depends on binning; both conventions below hold
        rep = pair_correlation(zeros_all.ts, "zero_unfold", bins=40, r_max=4.0)
        assert rep.l2_distance < 0.08
        rep_default = pair_correlation(zeros_all.ts, "zero_unfold", bins=50, r_max=5.0)
        assert rep_default.l2_distance < 0.1

    def test_too_few_points_rejected(self):
        with pytest.raises(ValueError):
            pair_correlation(np.linspace(0, 100, 500), "identity")

    def test_sine_kernel_reference(self):
        r = np.array([1e-9, 0.5, 1.0, 2.5])
        vals = sine_kernel_r2(r)
        assert abs(vals[0]) < 1e-8
        assert abs(vals[2] - 1.0) < 1e-12  # sinc vanishes at integers
        assert (vals <= 1.2).all() and (vals >= -1e-12).all()
