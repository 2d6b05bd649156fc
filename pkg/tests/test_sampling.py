"""Tests for the seeded samplers.

Distributional assertions use identities with exact closed forms on the
other side: Laplace transforms, Mellin moments, and equality-in-law pairs
(inverse-Gamma, Beta-Gamma, half-index subordination, the power
factorization). KS thresholds of 0.01 sit ~7x above the n = 1e5 KS scale
1.36/sqrt(n), and every batch is seeded, so the checks are deterministic.
"""

import json
import math
from math import lgamma

import numpy as np
import pytest

from stable_lab import w_laplace_identity
from stable_lab.laws import (
    Family,
    VariableDescriptor,
    fractional_moment,
    stable_density,
    support_left_edge,
)
from stable_lab.sampling import (
    SampleBatch,
    SeedSpec,
    empirical_laplace,
    ks_distance,
    sample,
)


def desc(fam, **kw) -> VariableDescriptor:
    return VariableDescriptor(fam, **kw)


class TestSeedSpec:
    def test_defaults_and_masking(self):
        assert SeedSpec().seed == 0 and SeedSpec().stream == 0
        assert SeedSpec(2**64 + 5, -1) == SeedSpec(5, 2**64 - 1)
        assert SeedSpec(7, 9).to_dict() == {"seed": 7, "stream": 9}

    def test_type_validation(self):
        with pytest.raises(TypeError):
            SeedSpec(1.5, 0)
        with pytest.raises(TypeError):
            SeedSpec(0, True)


class TestSampleBatch:
    def test_length_validation(self):
        d = desc(Family.EXPONENTIAL)
        with pytest.raises(ValueError):
            SampleBatch(d, SeedSpec(), 3, np.array([1.0, 2.0]))
        with pytest.raises(ValueError):
            SampleBatch(d, SeedSpec(), 2, np.array([[1.0], [2.0]]))

    def test_finite_validation(self):
        d = desc(Family.EXPONENTIAL)
        with pytest.raises(ValueError):
            SampleBatch(d, SeedSpec(), 2, np.array([1.0, np.inf]))

    def test_write_csv_with_sidecar(self, tmp_path):
        batch = sample(desc(Family.STABLE, alpha=0.5), 5, SeedSpec(1, 2))
        out = tmp_path / "draws.csv"
        batch.write_csv(out)
        lines = out.read_text().strip().split("\n")
        assert lines[0] == "value"
        assert len(lines) == 6
        assert np.allclose(
            [float(s) for s in lines[1:]], batch.values, rtol=0, atol=0)
        side = json.loads((tmp_path / "draws.csv.json").read_text())
        assert side["n"] == 5
        assert side["seed"] == {"seed": 1, "stream": 2}
        assert side["descriptor"]["family"] == "stable"


class TestDeterminism:
    def test_same_seed_same_batch(self):
        d = desc(Family.STABLE, alpha=0.6)
        a = sample(d, 512, SeedSpec(42, 1))
        b = sample(d, 512, SeedSpec(42, 1))
        assert np.array_equal(a.values, b.values)

    def test_different_stream_differs(self):
        d = desc(Family.STABLE, alpha=0.6)
        a = sample(d, 512, SeedSpec(42, 1))
        b = sample(d, 512, SeedSpec(42, 2))
        assert not np.array_equal(a.values, b.values)

    @pytest.mark.parametrize("fam_kw", [
        dict(fam=Family.STABLE, alpha=0.6),
        dict(fam=Family.MITTAG_LEFFLER, alpha=0.45),
        dict(fam=Family.GAMMA, param=0.47),
        dict(fam=Family.MIXING_X, alpha=0.3),
        dict(fam=Family.PSS_FACTOR, alpha=0.4, param=1.2),
    ])
    @pytest.mark.parametrize("threads", [2, 5])
    def test_threaded_output_bit_identical(self, fam_kw, threads):
        kw = dict(fam_kw)
        d = desc(kw.pop("fam"), **kw)
        serial = sample(d, 2001, SeedSpec(7, 7))
        parallel = sample(d, 2001, SeedSpec(7, 7), threads=threads)
        assert np.array_equal(serial.values, parallel.values)

    def test_threads_environment_variable(self, monkeypatch):
        d = desc(Family.STABLE, alpha=0.5)
        serial = sample(d, 999, SeedSpec(3, 1))
        monkeypatch.setenv("STABLE_LAB_THREADS", "4")
        assert np.array_equal(serial.values, sample(d, 999, SeedSpec(3, 1)).values)

    def test_prefix_property(self):
        # values are keyed by draw index, so a longer batch extends a
        # shorter one without disturbing it
        d = desc(Family.KANTER_V, alpha=0.7)
        short = sample(d, 100, SeedSpec(5, 5))
        long = sample(d, 1000, SeedSpec(5, 5))
        assert np.array_equal(short.values, long.values[:100])


class TestSupport:
    def test_positive_families(self):
        for d in (
            desc(Family.STABLE, alpha=0.2),
            desc(Family.STABLE, alpha=0.9),
            desc(Family.STABLE_POWER, alpha=0.5, param=-1.3),
            desc(Family.QUOTIENT_T, alpha=0.35),
            desc(Family.QUOTIENT_Y, alpha=0.62),
            desc(Family.MITTAG_LEFFLER, alpha=0.5),
            desc(Family.MIXING_X, alpha=0.25),
            desc(Family.SUBORDINATED, alpha=0.4),
            desc(Family.PSS_FACTOR, alpha=0.4, param=0.9),
            desc(Family.GAMMA, param=2.0),
            desc(Family.EXPONENTIAL),
        ):
            v = sample(d, 20_000, SeedSpec(21, 8)).values
            assert np.all(v > 0.0) and np.all(np.isfinite(v))

    def test_beta_in_unit_interval(self):
        v = sample(desc(Family.BETA, param=0.5, param2=0.5), 20_000,
                   SeedSpec(1, 1)).values
        assert np.all((v > 0.0) & (v < 1.0))

    @pytest.mark.parametrize("d", [
        desc(Family.KANTER_V, alpha=0.5),
        desc(Family.KANTER_V, alpha=0.8),
        desc(Family.V_HALF),
        desc(Family.W_SCALE, alpha=0.35),
    ])
    def test_minimum_approaches_left_edge(self, d):
        dd = d if d.alpha is not None else desc(Family.KANTER_V, alpha=0.5)
        edge = support_left_edge(dd)
        v = sample(d, 100_000, SeedSpec(33, 3)).values
        lo = float(np.min(v))
        assert lo >= edge - 1e-12 * max(1.0, abs(edge))
        assert lo - edge < 1e-4

    def test_shifted_power_nonnegative(self):
        v = sample(desc(Family.Y_SHIFTED, param=0.8), 50_000,
                   SeedSpec(2, 9)).values
        assert np.all(v >= -1e-12)


class TestEmpiricalLaplace:
    def test_zero_rate_is_exact(self):
        batch = sample(desc(Family.STABLE, alpha=0.5), 100, SeedSpec(4, 4))
        assert empirical_laplace(batch, 0.0) == (1.0, 0.0)

    @pytest.mark.parametrize("a", [0.3, 0.5, 0.7])
    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.0])
    def test_stable_laplace_agreement(self, a, lam):
        batch = sample(desc(Family.STABLE, alpha=a), 10**6, SeedSpec(1, 2))
        mean, se = empirical_laplace(batch, lam)
        assert abs(mean - math.exp(-lam ** a)) <= 4.0 * se

    def test_half_alpha_example(self):
        batch = sample(desc(Family.STABLE, alpha=0.5), 10**6, SeedSpec(6, 1))
        mean, se = empirical_laplace(batch, 4.0)
        assert abs(mean - math.exp(-2.0)) <= 4.0 * se

    def test_mittag_leffler_at_unit_rate(self):
        batch = sample(desc(Family.MITTAG_LEFFLER, alpha=0.7), 10**6,
                       SeedSpec(14, 2))
        mean, se = empirical_laplace(batch, 1.0)
        assert abs(mean - 0.5) <= 4.0 * se

    def test_w_scale_matches_gamma_ratio(self):
        a = 0.35
        batch = sample(desc(Family.W_SCALE, alpha=a), 10**6, SeedSpec(13, 1))
        for lam in (0.5, 2.0):
            mean, se = empirical_laplace(batch, lam)
            assert abs(mean - w_laplace_identity(a, lam)) <= 4.0 * se

    def test_validation(self):
        batch = sample(desc(Family.EXPONENTIAL), 100, SeedSpec(0, 0))
        with pytest.raises(ValueError):
            empirical_laplace(batch, -1.0)
        tiny = SampleBatch(desc(Family.EXPONENTIAL), SeedSpec(), 1,
                           np.array([1.0]))
        with pytest.raises(ValueError):
            empirical_laplace(tiny, 1.0)


class TestMomentAgreement:
    @pytest.mark.parametrize("a", [0.35, 0.6])
    @pytest.mark.parametrize("s", [-1.0, -0.3])
    def test_stable_fractional_moments(self, a, s):
        v = sample(desc(Family.STABLE, alpha=a), 10**6, SeedSpec(12, 0)).values
        w = v ** s
        mean = float(np.mean(w))
        se = float(np.std(w, ddof=1)) / math.sqrt(len(w))
        assert abs(mean - fractional_moment(a, s)) <= 4.0 * se

    @pytest.mark.parametrize("s", [0.2, -0.8])
    def test_mixing_x_mellin_moments(self, s):
        # E[X^s] = Gamma(1/2 - s) Gamma(1 - a) /
        #          (Gamma(1 - 2a(s + 1/2)) Gamma(1/2)) for s < 1/2
        a = 0.3
        v = sample(desc(Family.MIXING_X, alpha=a), 10**6, SeedSpec(15, 3)).values
        w = v ** s
        mean = float(np.mean(w))
        se = float(np.std(w, ddof=1)) / math.sqrt(len(w))
        want = math.exp(lgamma(0.5 - s) - lgamma(1.0 - 2.0 * a * (s + 0.5))
                        - lgamma(0.5) + lgamma(1.0 - a))
        assert abs(mean - want) <= 4.0 * se


class TestDistributionalIdentities:
    def test_ks_of_identical_batches_is_zero(self):
        batch = sample(desc(Family.STABLE, alpha=0.5), 1000, SeedSpec(9, 9))
        assert ks_distance(batch, batch) == 0.0

    def test_half_stable_is_quarter_inverse_gamma(self):
        z = sample(desc(Family.STABLE, alpha=0.5), 10**5, SeedSpec(3, 4))
        g = sample(desc(Family.GAMMA, param=0.5), 10**5, SeedSpec(5, 6))
        inv = SampleBatch(z.descriptor, g.seed, g.n, 1.0 / (4.0 * g.values))
        assert ks_distance(z, inv) <= 0.01

    def test_beta_gamma_identity(self):
        g = sample(desc(Family.GAMMA, param=0.5), 10**5, SeedSpec(16, 4))
        b = sample(desc(Family.BETA, param=0.5, param2=0.5), 10**5,
                   SeedSpec(17, 5))
        e = sample(desc(Family.EXPONENTIAL), 10**5, SeedSpec(18, 6))
        prod = SampleBatch(g.descriptor, SeedSpec(), g.n, b.values * e.values)
        assert ks_distance(g, prod) <= 0.01

    def test_half_index_subordination(self):
        a = 0.3
        z = sample(desc(Family.STABLE, alpha=a), 10**5, SeedSpec(8, 1))
        s = sample(desc(Family.SUBORDINATED, alpha=a), 10**5, SeedSpec(9, 2))
        assert ks_distance(z, s) <= 0.01

    @pytest.mark.parametrize("extra", [0.0, 0.7])
    def test_power_factorization(self, extra):
        # Z**(-gamma) has the same law as L * V**(-1/g) / Z_g down to the
        # boundary gamma = alpha/beta where the inner index g reaches 1.
        a = 0.4
        gam = a / (1.0 - a) + extra
        lhs = sample(desc(Family.STABLE_POWER, alpha=a, param=-gam), 10**5,
                     SeedSpec(10, 3))
        rhs = sample(desc(Family.PSS_FACTOR, alpha=a, param=gam), 10**5,
                     SeedSpec(11, 4))
        assert ks_distance(lhs, rhs) <= 0.01

    def test_quotient_against_fresh_ratio(self):
        a = 0.6
        q = sample(desc(Family.QUOTIENT_Y, alpha=a), 10**5, SeedSpec(20, 1))
        z1 = sample(desc(Family.STABLE, alpha=a), 10**5, SeedSpec(21, 2))
        z2 = sample(desc(Family.STABLE, alpha=a), 10**5, SeedSpec(22, 3))
        ratio = SampleBatch(q.descriptor, SeedSpec(), q.n, z1.values / z2.values)
        assert ks_distance(q, ratio) <= 0.01

    def test_transform_consistency_between_families(self):
        # same seed => the power/shift/log recipes are exact transforms
        sd = SeedSpec(77, 5)
        a = 0.55
        z = sample(desc(Family.STABLE, alpha=a), 4096, sd).values
        zp = sample(desc(Family.STABLE_POWER, alpha=a, param=-2.2), 4096,
                    sd).values
        assert np.array_equal(zp, z ** -2.2)
        v = sample(desc(Family.KANTER_V, alpha=a), 4096, sd).values
        vp = sample(desc(Family.KANTER_V_POWER, alpha=a, param=3.0), 4096,
                    sd).values
        assert np.array_equal(vp, v ** 3.0)
        w = sample(desc(Family.W_SCALE, alpha=a), 4096, sd).values
        assert np.array_equal(w, (1.0 - a) * np.log(v))
        vh = sample(desc(Family.V_HALF), 4096, sd).values
        ys = sample(desc(Family.Y_SHIFTED, param=0.8), 4096, sd).values
        assert np.array_equal(ys, vh ** 0.8 - 4.0 ** -0.8)
        qy = sample(desc(Family.QUOTIENT_Y, alpha=a), 4096, sd).values
        qt = sample(desc(Family.QUOTIENT_T, alpha=a), 4096, sd).values
        assert np.array_equal(qt, qy ** a)

    def test_density_matches_histogram(self):
        # bin counts vs integral of the density over each bin, 4 sigma
        a = 1.0 / 3.0
        v = sample(desc(Family.STABLE, alpha=a), 10**6, SeedSpec(30, 30)).values
        edges = np.linspace(0.05, 4.0, 25)
        counts, _ = np.histogram(v, bins=edges)
        fine = np.linspace(edges[0], edges[-1], 10 * (len(edges) - 1) + 1)
        dens = stable_density(a, fine)
        cdf = np.concatenate([[0.0], np.cumsum(
            0.5 * (dens[1:] + dens[:-1]) * np.diff(fine))])
        probs = np.diff(cdf[::10])
        expect = len(v) * probs
        sigma = np.sqrt(expect * (1.0 - probs))
        assert np.all(np.abs(counts - expect) <= 4.0 * sigma)


class TestErrors:
    def test_function_families_have_no_sampler(self):
        with pytest.raises(ValueError):
            sample(desc(Family.F_T, param=1.5), 10, SeedSpec())
        with pytest.raises(ValueError):
            sample(desc(Family.PROP41_M, alpha=0.5), 10, SeedSpec())

    def test_n_validation(self):
        d = desc(Family.EXPONENTIAL)
        with pytest.raises(ValueError):
            sample(d, 0, SeedSpec())
        with pytest.raises(ValueError):
            sample(d, -5, SeedSpec())

    def test_seed_type_validation(self):
        with pytest.raises(TypeError):
            sample(desc(Family.EXPONENTIAL), 10, seed=(1, 2))

    def test_threads_validation(self):
        d = desc(Family.EXPONENTIAL)
        with pytest.raises(ValueError):
            sample(d, 10, SeedSpec(), threads=0)

    def test_threads_env_validation(self, monkeypatch):
        monkeypatch.setenv("STABLE_LAB_THREADS", "-2")
        with pytest.raises(ValueError):
            sample(desc(Family.EXPONENTIAL), 10, SeedSpec())
