import math

import numpy as np
import pytest
from scipy import stats

from osbound.distributions import (
    Empirical,
    Exponential,
    StandardNormal,
    Uniform,
    ks_statistic,
    make_generator,
    parse_distribution,
    read_sample_file,
)

from conftest import CONTINUOUS


def test_cdf_examples():
    assert Uniform().cdf(0.5) == 0.5
    assert StandardNormal().cdf(0.0) == 0.5
    assert Empirical.from_sample([1, 2, 3]).cdf(2.0) == pytest.approx(2 / 3, abs=1e-15)


def test_quantile_examples():
    assert Uniform().quantile(0.25) == 0.25
    assert StandardNormal().quantile(0.5) == 0.0
    assert Empirical.from_sample([3, 1, 2]).quantile(0.5) == 2.0


def test_empirical_quantile_generalized_inverse():
    e = Empirical.from_sample([1.0, 2.0, 2.0, 5.0])
    for u, x in [(0.25, 1.0), (0.26, 2.0), (0.5, 2.0), (0.75, 2.0), (0.76, 5.0), (1.0, 5.0)]:
        assert e.quantile(u) == x
    # smallest x with cdf(x) >= u, checked against a direct scan
    for u in np.linspace(0.01, 1.0, 100):
        scan = min(v for v in e.values if e.cdf(v) >= u)
        assert e.quantile(u) == scan


def test_empirical_right_continuous():
    e = Empirical.from_sample([0.0, 1.0])
    assert e.cdf(0.0) == 0.5
    assert e.cdf(-1e-12) == 0.0
    assert e.cdf(1.0) == 1.0


@pytest.mark.parametrize("dist,u", [(Uniform(), 0.0), (StandardNormal(), 1.0), (Exponential(), -0.1)])
def test_quantile_range_errors(dist, u):
    with pytest.raises(ValueError):
        dist.quantile(u)


def test_empirical_quantile_range():
    with pytest.raises(ValueError):
        Empirical.from_sample([1.0]).quantile(0.0)


def test_means():
    assert Uniform().mean() == 0.5
    assert Exponential(2.0).mean() == 0.5
    assert StandardNormal().mean() == 0.0
    assert Empirical.from_sample([1, 2, 6]).mean() == 3.0


@pytest.mark.parametrize("dist", CONTINUOUS, ids=repr)
def test_round_trip(dist):
    u = np.linspace(0.001, 0.999, 999)
    assert np.max(np.abs(dist.cdf(dist.quantile(u)) - u)) < 1e-9


@pytest.mark.parametrize("dist", CONTINUOUS + [Empirical.from_sample([0.3, -1.0, 2.0, 2.0])], ids=repr)
def test_cdf_monotone_and_bounded(dist):
    x = np.linspace(-10, 10, 10_000)
    f = dist.cdf(x)
    assert np.all(np.diff(f) >= -1e-15)
    assert np.all((f >= 0) & (f <= 1))


def test_ks_statistic_matches_scipy():
    x = StandardNormal().sample(3, 500)
    assert ks_statistic(x, StandardNormal()) == pytest.approx(stats.kstest(x, "norm").statistic, abs=1e-14)


@pytest.mark.parametrize("dist", CONTINUOUS, ids=repr)
@pytest.mark.parametrize("seed", [0, 1, 2, 3, 2**64 - 1])
def test_sample_ks(dist, seed):
    assert ks_statistic(dist.sample(seed, 100_000), dist) < 0.01


def test_empirical_sampling_ks():
    e = Empirical.from_sample(np.arange(50.0))
    assert ks_statistic(e.sample(5, 100_000), e) < 0.01


def test_sample_determinism():
    a = StandardNormal().sample(99, 1000)
    b = StandardNormal().sample(99, 1000)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, StandardNormal().sample(100, 1000))


def test_uniform_sample_mean():
    assert abs(Uniform().sample(11, 100_000).mean() - 0.5) < 0.01


def test_seed_range():
    with pytest.raises(ValueError):
        make_generator(-1)
    with pytest.raises(ValueError):
        make_generator(2**64)
    with pytest.raises(ValueError):
        Uniform().sample(1, 0)


@pytest.mark.parametrize("dist", CONTINUOUS, ids=repr)
def test_tail_mass_matches_quadrature(dist):
    from scipy import integrate

    lo, hi = float(dist.quantile(0.01)), float(dist.quantile(0.99))
    start = {Uniform: getattr(dist, "a", None), Exponential: 0.0}.get(type(dist), lo - 60)
    stop = getattr(dist, "b", hi + 60)
    left = integrate.quad(lambda t: float(dist.cdf(t)), start, lo, limit=200)[0]
    right = integrate.quad(lambda t: 1 - float(dist.cdf(t)), hi, stop, limit=200)[0]
    assert dist.tail_mass(lo, hi) == pytest.approx(left + right, rel=1e-6, abs=1e-12)


def test_empirical_tail_mass():
    e = Empirical.from_sample([0.0, 1.0, 4.0])
    assert e.tail_mass(0.5, 3.0) == pytest.approx((0.5 + 1.0) / 3)


def test_invalid_parameters():
    with pytest.raises(ValueError):
        Uniform(1.0, 1.0)
    with pytest.raises(ValueError):
        Exponential(0.0)
    with pytest.raises(ValueError):
        Empirical(())
    with pytest.raises(ValueError):
        Empirical.from_sample([1.0, math.inf])


def test_read_sample_file(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("1.5\n\n  -2\n3e0\n")
    assert read_sample_file(p) == (1.5, -2.0, 3.0)


def test_read_sample_file_reports_line(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("1.0\n\nabc\n")
    with pytest.raises(ValueError, match=":3:"):
        read_sample_file(p)


def test_parse_distribution(tmp_path):
    assert parse_distribution("uniform", [0, 2]) == Uniform(0, 2)
    assert parse_distribution("normal") == StandardNormal()
    assert parse_distribution("exp", [3]) == Exponential(3)
    p = tmp_path / "d.txt"
    p.write_text("2\n1\n")
    assert parse_distribution("empirical", data=p).sample_values == (1.0, 2.0)
    for bad in [("normal", [1]), ("uniform", [1]), ("cauchy", []), ("empirical", [])]:
        with pytest.raises(ValueError):
            parse_distribution(*bad)


def test_distributions_hashable():
    assert len({Uniform(), Uniform(), StandardNormal(), Empirical.from_sample([2, 1]), Empirical.from_sample([1, 2])}) == 3
