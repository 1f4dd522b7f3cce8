import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from osbound import Empirical, Exponential, StandardNormal, Uniform
from osbound.majorization import is_majorized, uniform_weights, validate_weights, weight_sequence
from osbound.order_statistics import (
    MixtureSpec,
    SignatureVector,
    bound_pair,
    lower_bound,
    order_stat_cdf,
    order_stat_cdf_oracle,
    order_stat_cdfs,
    order_stat_mean,
    order_stat_means,
    signature_cdf,
    upper_bound,
)

from conftest import CONTINUOUS, random_weights

U = Uniform()
N = StandardNormal()
Q = validate_weights(["5/9", "3/9", "1/9"])
P = weight_sequence(3, 3)
GRID = np.linspace(-6, 6, 10_000)


class TestOrderStatCdf:
    def test_minimum(self):
        assert order_stat_cdf(U, 1, 3, 0.5) == pytest.approx(0.875, abs=1e-15)

    def test_median_of_three(self):
        assert order_stat_cdf(U, 2, 3, 0.5) == pytest.approx(0.5, abs=1e-15)

    @pytest.mark.parametrize("dist", CONTINUOUS, ids=repr)
    def test_maximum(self, dist):
        x = dist.quantile(np.linspace(0.01, 0.99, 50))
        assert np.allclose(order_stat_cdf(dist, 5, 5, x), dist.cdf(x) ** 5, atol=1e-14)

    def test_index_errors(self):
        for i, n in [(0, 3), (4, 3), (1, 0)]:
            with pytest.raises((IndexError, ValueError)):
                order_stat_cdf(U, i, n, 0.5)
            with pytest.raises((IndexError, ValueError)):
                order_stat_cdf_oracle(U, i, n, 0.5)

    def test_oracle_single(self):
        assert order_stat_cdf_oracle(N, 1, 1, 0.3) == pytest.approx(float(N.cdf(0.3)), abs=1e-15)

    def test_oracle_upper_limit(self):
        x = N.quantile(1 - 1e-12)
        for n in (1, 5, 30):
            for i in (1, n):
                assert order_stat_cdf_oracle(N, i, n, x) == pytest.approx(1.0, abs=1e-10)

    def test_agrees_with_oracle(self):
        rng = np.random.default_rng(2024)
        for dist in CONTINUOUS:
            for _ in range(200):
                n = int(rng.integers(1, 31))
                i = int(rng.integers(1, n + 1))
                x = float(dist.quantile(rng.uniform(1e-6, 1 - 1e-6)))
                assert abs(order_stat_cdf(dist, i, n, x) - order_stat_cdf_oracle(dist, i, n, x)) < 1e-10

    @pytest.mark.parametrize("dist", CONTINUOUS, ids=repr)
    def test_pointwise_ordering(self, dist):
        for n in range(1, 11):
            rows = order_stat_cdfs(dist, n, GRID)
            assert np.all(np.diff(rows, axis=0) <= 1e-15)

    @pytest.mark.parametrize("dist", CONTINUOUS + [Empirical.from_sample([1, 4, 4, 9])], ids=repr)
    def test_averaging_identity(self, dist):
        for n in range(1, 11):
            assert np.allclose(order_stat_cdfs(dist, n, GRID).mean(axis=0), dist.cdf(GRID), atol=1e-10, rtol=0)


class TestMixtures:
    @pytest.mark.parametrize("x", [0.25, 0.5, 0.75])
    def test_example_q_polynomials(self, x):
        spec = MixtureSpec(U, Q)
        assert upper_bound(spec, x) == pytest.approx((5 * x - 2 * x**2) / 3, abs=1e-14)
        assert lower_bound(spec, x) == pytest.approx((2 * x**2 + x) / 3, abs=1e-14)

    def test_example_p_polynomials_corrected(self):
        x = np.linspace(0, 1, 101)
        spec = MixtureSpec(U, P)
        # direct expansion with F13 = 3x - 3x^2 + x^3, F23 = 3x^2 - 2x^3, F33 = x^3
        f13, f23, f33 = 3 * x - 3 * x**2 + x**3, 3 * x**2 - 2 * x**3, x**3
        assert np.allclose(6 / 15 * f13 + 5 / 15 * f23 + 4 / 15 * f33, (6 * x - x**2) / 5, atol=1e-14)
        assert np.allclose(upper_bound(spec, x), (6 * x - x**2) / 5, atol=1e-10, rtol=0)
        assert np.allclose(lower_bound(spec, x), (x**2 + 4 * x) / 5, atol=1e-10, rtol=0)

    @pytest.mark.parametrize("dist", CONTINUOUS, ids=repr)
    def test_uniform_weights_collapse(self, dist):
        h, k = bound_pair(MixtureSpec(dist, uniform_weights(4)), GRID)
        assert np.allclose(h, dist.cdf(GRID), atol=1e-12)
        assert np.allclose(k, dist.cdf(GRID), atol=1e-12)

    @pytest.mark.parametrize("dist", CONTINUOUS + [Empirical.from_sample(N.sample(3, 25))], ids=repr)
    def test_envelope_random_weights(self, dist):
        rng = np.random.default_rng(7)
        f = dist.cdf(GRID)
        for n in (2, 3, 6):
            rows = order_stat_cdfs(dist, n, GRID)
            for _ in range(100):
                w = random_weights(rng, n)
                assert np.all(w @ rows[::-1] - f <= 1e-10)
                assert np.all(f - w @ rows <= 1e-10)

    def test_nesting_example_pair(self):
        assert is_majorized(P.array, Q.array)
        x = np.linspace(0, 1, 1001)
        hq, kq = bound_pair(MixtureSpec(U, Q), x)
        hp, kp = bound_pair(MixtureSpec(U, P), x)
        assert np.all(hq <= hp + 1e-12) and np.all(hp <= x + 1e-12)
        assert np.all(x <= kp + 1e-12) and np.all(kp <= kq + 1e-12)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(2, 7), st.floats(0.0, 1.0), st.integers(0, 2**32 - 1))
    def test_nesting_random_comparable(self, n, lam, seed):
        rng = np.random.default_rng(seed)
        q = random_weights(rng, n)
        p = lam * q + (1 - lam) / n  # p ≺ q: convex combination with the uniform vector
        x = N.quantile(np.linspace(1e-4, 1 - 1e-4, 500))
        rows = order_stat_cdfs(N, n, x)
        assert np.all(q @ rows[::-1] <= p @ rows[::-1] + 1e-10)
        assert np.all(p @ rows <= q @ rows + 1e-10)

    def test_strict_for_non_uniform(self):
        rng = np.random.default_rng(3)
        x = np.linspace(0, 1, 1001)
        for n in range(2, 8):
            for _ in range(20):
                w = validate_weights(random_weights(rng, n))
                h, k = bound_pair(MixtureSpec(U, w), x)
                assert np.max(k - h) > 0


class TestSignature:
    def test_series_system(self):
        x = np.linspace(-2, 2, 9)
        assert np.allclose(signature_cdf(N, SignatureVector((1, 0, 0)), x), order_stat_cdf(N, 1, 3, x))

    def test_uniform_signature_is_component(self):
        x = np.linspace(-3, 3, 31)
        assert np.allclose(signature_cdf(N, SignatureVector((1 / 3,) * 3), x), N.cdf(x), atol=1e-14)

    def test_parallel_system(self):
        assert signature_cdf(U, SignatureVector((0, 0, 1)), 0.5) == pytest.approx(0.125, abs=1e-15)

    def test_non_monotone_signature_allowed(self):
        z = SignatureVector((0.0, 1.0, 0.0))  # 2-out-of-3
        x = np.linspace(0, 1, 200)
        f = signature_cdf(U, z, x)
        assert np.all(np.diff(f) >= 0) and f[0] == 0 and f[-1] == pytest.approx(1)

    def test_validation(self):
        for bad in [(), (0.5, 0.6), (-0.1, 1.1)]:
            with pytest.raises(ValueError):
                SignatureVector(bad)


class TestOrderStatMean:
    def test_max_of_three_normals(self):
        assert order_stat_mean(N, 3, 3) == pytest.approx(3 / (2 * math.sqrt(math.pi)), abs=1e-6)

    def test_max_of_three_monte_carlo(self):
        # 1e6 triples; standard error of the mean is about 7.5e-4
        sample = N.sample(12345, 3 * 10**6).reshape(-1, 3).max(axis=1)
        assert abs(sample.mean() - 3 / (2 * math.sqrt(math.pi))) < 1e-3

    @pytest.mark.parametrize("n", [1, 2, 5, 12])
    def test_uniform_beta_means(self, n):
        for i in range(1, n + 1):
            assert order_stat_mean(U, i, n) == pytest.approx(i / (n + 1), abs=1e-8)

    @pytest.mark.parametrize("dist", [N, Uniform(-1, 1)], ids=repr)
    def test_symmetry(self, dist):
        mu = order_stat_means(dist, 6)
        assert np.allclose(mu, -mu[::-1], atol=1e-8)

    def test_exponential_renyi(self):
        # E X_{i:n} = sum_{j=n-i+1}^{n} 1/(rate j)
        for i in range(1, 6):
            expected = sum(1 / (2.0 * j) for j in range(5 - i + 1, 6))
            assert order_stat_mean(Exponential(2.0), i, 5) == pytest.approx(expected, abs=1e-8)

    def test_monotone_in_index(self):
        for dist in CONTINUOUS:
            assert np.all(np.diff(order_stat_means(dist, 7)) > 0)

    def test_empirical_exact(self):
        e = Empirical.from_sample([0.0, 1.0])
        # n=2 draws from {0,1}: max is 1 unless both are 0
        assert order_stat_mean(e, 2, 2) == pytest.approx(0.75, abs=1e-15)
        assert order_stat_mean(e, 1, 2) == pytest.approx(0.25, abs=1e-15)
        assert order_stat_mean(e, 1, 1) == pytest.approx(e.mean(), abs=1e-15)
