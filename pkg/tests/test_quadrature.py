import math
from fractions import Fraction

import pytest

from ybverify import quadrature as quad
from ybverify.rmatrix import Normalization, coefficients_closed_form


def lgamma_ratio(*args):
    """Independent log-gamma oracle: product of gammas over gammas."""
    num, den = args[0], args[1]
    return math.exp(sum(math.lgamma(a) for a in num) - sum(math.lgamma(a) for a in den))


def test_beta_integral_analytic_point():
    # d=2, u=1, k=0: (1/2) B(1/2, 3/2) * 2 = B(1/2,3/2) = pi/2
    got = quad.beta_coefficient_integral(2, 1.0, 0, "even")
    assert abs(got - math.pi / 2) < 1e-10


def test_beta_integral_lgamma_oracle():
    # d=4, u=1/2, k=0: Gamma(1/4) Gamma(9/4) / Gamma(5/2)
    got = quad.beta_coefficient_integral(4, 0.5, 0, "even")
    want = lgamma_ratio((0.25, 2.25), (2.5,))
    assert abs(got - want) < 1e-8 * abs(want)


def test_beta_integral_pole_guard():
    # (u+d)/2 - k = 0 diverges
    with pytest.raises(ValueError):
        quad.beta_coefficient_integral(2, 2.0, 2, "even")
    with pytest.raises(ValueError):
        quad.beta_coefficient_integral(2, -0.5, 0, "even")


@pytest.mark.parametrize("d", [2, 4, 6])
@pytest.mark.parametrize("u", [0.5, 1.0, 1.5])
def test_beta_integral_grid_even(d, u):
    for k in range(d // 2 + 1):
        if u + d - 2 * k <= 0:
            continue
        got = quad.beta_coefficient_integral(d, u, k, "even")
        want = lgamma_ratio((k + u / 2, (u + d) / 2 - k), (u + d / 2,))
        assert abs(got - want) < 1e-8 * abs(want), (d, u, k)


@pytest.mark.parametrize("d", [2, 4, 6])
@pytest.mark.parametrize("u", [0.5, 1.0, 1.5])
def test_beta_integral_grid_odd(d, u):
    for k in range(d // 2):
        got = quad.beta_coefficient_integral(d, u, k, "odd")
        want = lgamma_ratio((k + (u + 1) / 2, (u + d - 1) / 2 - k), (u + d / 2,))
        assert abs(got - want) < 1e-8 * abs(want), (d, u, k)


def test_beta_integral_matches_exact_ratio_times_base():
    # the stored beta table is the rational ratio against the k = 0 base;
    # integral(k) / integral(0) must equal it exactly up to quadrature error
    d, u = 6, Fraction(1, 2)
    table = coefficients_closed_form(d, u, Normalization.BETA_FORM)
    base = quad.beta_coefficient_integral(d, float(u), 0, "even")
    for k in range(1, d // 2 + 1):
        got = quad.beta_coefficient_integral(d, float(u), k, "even")
        ratio = table[2 * k].to_complex().real * (-1) ** k  # strip the (-1)^k sign
        assert abs(got - ratio * base) < 1e-8 * abs(got), k


# --- generating-function reconstruction --------------------------------------

def test_rfun_y_zero_recovers_base():
    # only the k = 0 term survives: (A+B+A-B)/2 * beta_0 with A = B = 1
    d, u = 4, 1.0
    got = quad.reconstruct_Rfun(d, u, 0.0)
    want = quad.beta_even_value(d, u, 0)
    assert abs(got - want) < 1e-9 * abs(want)


def test_rfun_series_vs_integral():
    for d, u, y in ((4, 1.0, 0.5), (2, 1.5, -1.0), (6, 0.75, -0.25), (2, 0.5, 1.0)):
        integral = quad.reconstruct_Rfun(d, u, y)
        series = quad.rfun_series(d, u, y)
        assert abs(integral - series) < 1e-7 * max(1.0, abs(series)), (d, u, y)


def test_rfun_general_weights():
    for A, B in ((1.0, -1.0), (2.0, 0.5), (0.0, 1.0)):
        integral = quad.reconstruct_Rfun(4, 1.0, 0.5, lambda _: A, lambda _: B)
        series = quad.rfun_series(4, 1.0, 0.5, A, B)
        assert abs(integral - series) < 1e-7 * max(1.0, abs(series)), (A, B)


def test_rfun_requires_positive_u():
    with pytest.raises(ValueError):
        quad.reconstruct_Rfun(4, -1.0, 0.5)


# --- unitarity double integral -------------------------------------------------

def test_unitarity_integral_k0():
    got = quad.unitarity_double_integral(2, 0.5, 0)
    want = -4 * math.pi  # -(2 pi/u)/sin(pi u) at u = 1/2
    assert abs(got - want) < 1e-4 * abs(want)


def test_unitarity_integral_kd():
    got = quad.unitarity_double_integral(2, 1 / 3, 2)
    want = -2 * math.pi / ((1 / 3) * math.tan(math.pi / 3))
    assert abs(got - want) < 1e-3 * abs(want)


def test_unitarity_integral_middle_k_vanishes():
    assert abs(quad.unitarity_double_integral(2, 0.5, 1)) < 1e-4
    for k in (1, 2, 3):
        assert abs(quad.unitarity_double_integral(4, 0.5, k)) < 1e-4, k


def test_unitarity_integral_domain_guards():
    with pytest.raises(ValueError):
        quad.unitarity_double_integral(2, 1.5, 0)
    with pytest.raises(ValueError):
        quad.unitarity_double_integral(2, 0.5, 3)


# --- report wrappers -----------------------------------------------------------

def test_check_wrappers():
    assert quad.check_beta_integral(4, 0.5, 0).passed
    assert quad.check_rfun(4, 1.0, -0.5).passed
    assert quad.check_unitarity_integral(2, 0.5, 0).passed
    report = quad.check_unitarity_integral(2, 0.5, 1)
    assert report.passed and report.max_residual < 1e-4


@pytest.mark.slow
def test_triple_integral_symmetry_slow():
    report = quad.check_triple_integral(2, 0.5, 0.5, 0.3, 0.1, 0.7)
    assert report.passed, (report.max_residual, report.detail)
