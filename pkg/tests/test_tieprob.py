import math
import warnings

import mpmath
import pytest
from hypothesis import given, strategies as st

from oracles import cdf_oracle, interval_quadrature, pdf_oracle, random_delta_quadrature
from skatetie.tieprob import (ProbabilityClamped, TieScenario, expected_trials,
                              interval_prob, normal_cdf, normal_pdf, tie_prob_exact,
                              tie_prob_fixed, tie_prob_random_delta)

sigmas = st.floats(0.05, 5.0)
deltas = st.floats(-3.0, 3.0)
eps = st.floats(1e-5, 0.05)


def test_normal_pdf():
    assert normal_pdf(0) == pytest.approx(0.3989422804, abs=1e-10)
    assert normal_pdf(1) == pytest.approx(0.2419707245, abs=1e-10)
    assert normal_pdf(1) == pytest.approx(float(pdf_oracle(1)), rel=1e-14)


@given(st.floats(-30, 30))
def test_normal_pdf_symmetric_and_peaked(z):
    assert normal_pdf(-z) == normal_pdf(z)
    assert normal_pdf(z) <= normal_pdf(0)


def test_normal_cdf_points():
    assert normal_cdf(0) == 0.5
    assert normal_cdf(1.959964) == pytest.approx(0.975, abs=1e-8)
    assert normal_cdf(-8) <= 1e-15
    assert normal_cdf(-8) == pytest.approx(float(cdf_oracle(-8)), rel=1e-12)


@pytest.mark.parametrize("z", [-8, -5.5, -3, -1.2, -0.3, 0.0, 0.4, 1.959964, 2.7, 4.1, 8])
def test_normal_cdf_against_mpmath(z):
    assert abs(normal_cdf(z) - float(cdf_oracle(z))) <= 1e-10


@given(st.floats(-8, 8))
def test_normal_cdf_reflection(z):
    assert abs(normal_cdf(-z) - (1 - normal_cdf(z))) <= 1e-10


def test_fixed_examples():
    assert tie_prob_fixed(TieScenario(sigma=0.5, epsilon=0.005)) == pytest.approx(0.00282, abs=5e-6)
    assert tie_prob_fixed(TieScenario(sigma=0.5, epsilon=0.001)) == pytest.approx(0.00056, abs=5e-6)
    assert tie_prob_fixed(TieScenario(sigma=0.5, epsilon=0.010)) == \
        2 * tie_prob_fixed(TieScenario(sigma=0.5, epsilon=0.005))
    assert tie_prob_fixed(TieScenario(sigma=0.5, epsilon=0.005, delta=10)) < 1e-100


def test_fixed_matches_four_race_formula():
    for d, s, e in [(0, 0.5, 0.005), (0.2, 0.46, 0.001), (-0.7, 1.3, 0.01)]:
        direct = math.exp(-d * d / (s * s)) / math.sqrt(2 * math.pi) * 2 * e / (math.sqrt(8) * s)
        assert tie_prob_fixed(TieScenario(sigma=s, epsilon=e, delta=d)) == pytest.approx(direct, rel=1e-14)


@given(deltas, sigmas, eps)
def test_fixed_symmetric_in_delta(d, s, e):
    assert tie_prob_fixed(TieScenario(sigma=s, epsilon=e, delta=d)) == \
        tie_prob_fixed(TieScenario(sigma=s, epsilon=e, delta=-d))


@given(st.floats(0, 1), st.floats(1e-3, 1), sigmas, eps)
def test_fixed_decreasing_in_abs_delta(d, step, s, e):
    lo = tie_prob_fixed(TieScenario(sigma=s, epsilon=e, delta=d))
    hi = tie_prob_fixed(TieScenario(sigma=s, epsilon=e, delta=d + step))
    assert hi <= lo
    if lo > 1e-300:
        assert hi < lo


def test_random_delta_examples():
    assert tie_prob_random_delta(TieScenario(sigma=0.5, tau=0.25, epsilon=0.005)) == \
        pytest.approx(0.00230, abs=5e-6)
    assert tie_prob_random_delta(TieScenario(sigma=0.5, tau=0, epsilon=0.005)) == \
        pytest.approx(tie_prob_fixed(TieScenario(sigma=0.5, epsilon=0.005)), rel=1e-15)
    assert tie_prob_random_delta(TieScenario(sigma=0.5, tau=0.25, epsilon=0.001)) == \
        pytest.approx(0.000461, abs=2e-6)


@pytest.mark.parametrize("sigma, tau, epsilon", [
    (0.5, 0.25, 0.005), (0.5, 0.25, 0.001), (0.46, 0.1, 0.005), (1.0, 2.0, 0.01), (0.25, 0.05, 0.002),
])
def test_random_delta_against_quadrature(sigma, tau, epsilon):
    closed = tie_prob_random_delta(TieScenario(sigma=sigma, tau=tau, epsilon=epsilon))
    assert closed == pytest.approx(float(random_delta_quadrature(sigma, tau, epsilon)), rel=1e-6)


def test_random_delta_general_n_against_quadrature():
    sc = TieScenario(sigma=0.4, tau=0.3, epsilon=0.004, n_distances=6)
    assert tie_prob_random_delta(sc) == pytest.approx(
        float(random_delta_quadrature(0.4, 0.3, 0.004, n=6)), rel=1e-6)


@given(sigmas, st.floats(0, 2), st.floats(1e-3, 1), eps)
def test_random_delta_monotone(s, t, dt, e):
    base = tie_prob_random_delta(TieScenario(sigma=s, tau=t, epsilon=e))
    assert tie_prob_random_delta(TieScenario(sigma=s, tau=t + dt, epsilon=e)) < base
    assert tie_prob_random_delta(TieScenario(sigma=s, tau=t, epsilon=e * 1.5)) > base


def test_exact_examples():
    exact = tie_prob_exact(TieScenario(sigma=0.5, epsilon=0.005))
    assert exact == pytest.approx(0.002821, abs=1e-6)
    # frozen from interval_quadrature(0, sqrt(8)*0.5, 0.005) at 40 digits
    assert exact == pytest.approx(0.0028209420407749722, abs=1e-12)
    assert tie_prob_exact(TieScenario(sigma=0.5, epsilon=100)) == 1.0
    assert interval_prob(0.0, math.sqrt(8) * 0.5, 0.0) == 0.0


@pytest.mark.parametrize("delta", [0, 0.1, 0.25, 1.5])
@pytest.mark.parametrize("sigma", [0.25, 0.5, 1.0])
def test_exact_against_quadrature(delta, sigma):
    sc = TieScenario(sigma=sigma, epsilon=0.005, delta=delta)
    ref = interval_quadrature(4 * delta, mpmath.sqrt(8) * sigma, mpmath.mpf("0.005"))
    assert abs(tie_prob_exact(sc) - float(ref)) <= 1e-10


def test_exact_upper_tail_keeps_precision():
    # both window ends several sd above the mean's mirror image
    sc = TieScenario(sigma=0.1, epsilon=0.005, delta=-0.4)
    ref = interval_quadrature(-1.6, mpmath.sqrt(8) * mpmath.mpf("0.1"), mpmath.mpf("0.005"))
    assert tie_prob_exact(sc) == pytest.approx(float(ref), rel=1e-6)


def test_clamping_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        p = tie_prob_fixed(TieScenario(sigma=0.01, epsilon=10.0))
    assert p == 1.0
    assert any(issubclass(w.category, ProbabilityClamped) for w in caught)


@given(deltas, sigmas, st.floats(0, 3), st.floats(1e-6, 50))
def test_probabilities_in_unit_interval(d, s, t, e):
    sc = TieScenario(sigma=s, epsilon=e, delta=d, tau=t)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ProbabilityClamped)
        for f in (tie_prob_fixed, tie_prob_random_delta, tie_prob_exact):
            assert 0.0 <= f(sc) <= 1.0


def test_expected_trials():
    assert expected_trials(0.00282) == pytest.approx(354.6, abs=0.05)
    assert expected_trials(1.0) == 1.0
    v = expected_trials(0.00230)
    assert v == pytest.approx(434.8, abs=0.05)
    assert v * 0.00230 == pytest.approx(1.0, rel=1e-15)
    with pytest.raises(ValueError):
        expected_trials(0.0)


@pytest.mark.parametrize("kwargs", [
    dict(sigma=0), dict(sigma=-1), dict(epsilon=0), dict(tau=-0.1), dict(n_distances=0),
    dict(n_distances=2.5), dict(delta=float("nan")),
])
def test_invalid_scenarios(kwargs):
    with pytest.raises(ValueError):
        TieScenario(**kwargs)
