"""Special-function kernels against frozen high-precision references.

The reference values were computed once with an independent
arbitrary-precision package at 25 significant digits and frozen here;
the library itself never depends on that package.
"""
from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dhratio.errors import DomainError, PoleError
from dhratio.specfun import (
    ComplexPoint,
    EvalSettings,
    cpow,
    digamma,
    em_split_point,
    hurwitz_zeta,
    hurwitz_zeta_any,
    lgamma,
    sin_pi,
)

# ----------------------------------------------------------------------
# frozen references
# ----------------------------------------------------------------------

LGAMMA_CASES = [
    (0.75 - 42.85j, -65.45026191394828317193 - 118.5606290698275060433j),
    (-3.2 + 1.7j, -5.17546124027748448402 - 9.339146622050602565702j),
    (10.5 - 110.0j, -124.8501478220352837952 - 422.3072577704132060772j),
]

DIGAMMA_CASES = [
    (0.75 + 0.0j, -1.085860879786472169627 + 0.0j),
    (0.75 + 0.6j, -0.4725114095429438485156 + 1.082686768556292826971j),
    (-2.5 + 30.0j, 3.406127608716289890187 + 1.670474059529933808805j),
]

HURWITZ_CASES = [
    (0.5 + 14.0j, 0.2, -3.015436520584119972053 - 0.9207911398362443483373j),
    (2.0 + 0.0j, 0.5, 4.934802200544679309417 + 0.0j),
    (-3.5 + 2.0j, 0.8, -0.03964858696730732159859 + 0.01059257713930547874988j),
]

GAMMA_1_PLUS_I_ABS = 0.5215640468649398411582


# ----------------------------------------------------------------------
# point and settings types
# ----------------------------------------------------------------------


def test_complex_point_round_trip():
    p = ComplexPoint(0.3, -2.5)
    assert complex(p) == 0.3 - 2.5j
    assert p.conjugate() == ComplexPoint(0.3, 2.5)
    assert p.mirror() == ComplexPoint(0.7, 2.5)
    assert ComplexPoint.from_complex(1.5 + 4.0j) == ComplexPoint(1.5, 4.0)


def test_complex_point_rejects_nonfinite():
    with pytest.raises(DomainError):
        ComplexPoint(math.inf, 0.0)
    with pytest.raises(DomainError):
        ComplexPoint(0.0, math.nan)


def test_settings_validation():
    with pytest.raises(DomainError):
        EvalSettings(hurwitz_cutoff=0)
    with pytest.raises(DomainError):
        EvalSettings(rel_tol=-1.0)
    with pytest.raises(DomainError):
        EvalSettings(newton_max_iter=0)


# ----------------------------------------------------------------------
# log-gamma and digamma
# ----------------------------------------------------------------------


@pytest.mark.parametrize("z, want", LGAMMA_CASES)
def test_lgamma_reference_values(z, want):
    got = lgamma(z)
    assert abs(got - want) < 1e-12 * (1.0 + abs(want)), f"lgamma({z}) = {got}"


def test_lgamma_modulus_on_imag_axis():
    got = math.exp(lgamma(1.0 + 1.0j).real)
    assert abs(got - GAMMA_1_PLUS_I_ABS) < 1e-14


def test_lgamma_real_positive_matches_math():
    for x in (0.5, 1.0, 3.75, 12.0, 0.07):
        assert abs(lgamma(x + 0.0j).real - math.lgamma(x)) < 1e-13 * (1 + abs(math.lgamma(x)))
        assert lgamma(x + 0.0j).imag == 0.0


def test_lgamma_pole_raises():
    for bad in (0.0, -1.0, -7.0):
        with pytest.raises(PoleError):
            lgamma(bad + 0.0j)


def test_lgamma_vectorized_matches_scalar():
    z = np.array([0.3 + 0.4j, -2.2 + 9.0j, 6.0 - 3.0j])
    batch = lgamma(z)
    for k, zk in enumerate(z):
        assert batch[k] == lgamma(complex(zk))


@pytest.mark.parametrize("z, want", DIGAMMA_CASES)
def test_digamma_reference_values(z, want):
    got = digamma(z)
    assert abs(got - want) < 1e-12 * (1.0 + abs(want)), f"digamma({z}) = {got}"


def test_digamma_pole_raises():
    with pytest.raises(PoleError):
        digamma(-1.0 + 0.0j)


@given(
    re=st.floats(min_value=-9.5, max_value=9.5),
    im=st.floats(min_value=-80.0, max_value=80.0),
)
@settings(max_examples=60, deadline=None)
def test_lgamma_recurrence_property(re, im):
    z = complex(re, im)
    assume(min(abs(z + k) for k in range(0, 11)) > 0.05)
    gap = lgamma(z + 1.0) - lgamma(z) - np.log(np.complex128(z))
    assert abs(gap) < 1e-12, f"recurrence defect {abs(gap):.3g} at {z}"


@given(
    re=st.floats(min_value=-9.5, max_value=9.5),
    im=st.floats(min_value=0.05, max_value=80.0),
)
@settings(max_examples=60, deadline=None)
def test_conjugate_symmetry_property(re, im):
    z = complex(re, im)
    assert lgamma(z.conjugate()) == lgamma(z).conjugate()
    assert digamma(z.conjugate()) == digamma(z).conjugate()


@given(
    re=st.floats(min_value=-6.0, max_value=6.0),
    im=st.floats(min_value=-60.0, max_value=60.0),
)
@settings(max_examples=40, deadline=None)
def test_digamma_is_lgamma_derivative_property(re, im):
    z = complex(re, im)
    assume(min(abs(z + k) for k in range(0, 8)) > 0.5)
    h = 1e-4
    fd = (lgamma(z + h) - lgamma(z - h)) / (2.0 * h)
    assert abs(fd - digamma(z)) < 1e-7


# ----------------------------------------------------------------------
# Hurwitz zeta
# ----------------------------------------------------------------------


@pytest.mark.parametrize("s, a, want", HURWITZ_CASES)
def test_hurwitz_reference_values(s, a, want):
    got = hurwitz_zeta(s, a)
    assert abs(got - want) < 1e-11 * (1.0 + abs(want)), f"zeta({s}, {a}) = {got}"


def test_hurwitz_pole_and_domain():
    with pytest.raises(PoleError):
        hurwitz_zeta(1.0 + 0.0j, 0.3)
    with pytest.raises(DomainError):
        hurwitz_zeta(2.0 + 0.0j, 0.0)
    with pytest.raises(DomainError):
        hurwitz_zeta(2.0 + 0.0j, 1.5)
    # the unrestricted evaluator accepts any positive offset:
    # zeta(2, 1.5) = zeta(2, 0.5) - 0.5^-2 by one recurrence step
    assert abs(hurwitz_zeta_any(2.0 + 0.0j, 1.5) - (4.934802200544679309417 - 4.0)) < 1e-12


def test_hurwitz_brute_force_at_re3():
    rng = np.random.default_rng(20260822)
    n = np.arange(1_000_000, dtype=np.float64)
    for _ in range(3):
        s = complex(3.0, rng.uniform(-50.0, 50.0))
        a = float(rng.uniform(0.05, 1.0))
        brute = np.exp(-s * np.log(n + a)).sum()
        assert abs(hurwitz_zeta(s, a) - brute) < 1e-10, f"s={s}, a={a}"


@given(
    re=st.floats(min_value=-2.0, max_value=6.0),
    im=st.floats(min_value=-40.0, max_value=40.0),
    a=st.floats(min_value=0.05, max_value=1.0),
)
@settings(max_examples=40, deadline=None)
def test_hurwitz_recurrence_property(re, im, a):
    s = complex(re, im)
    assume(abs(s - 1.0) > 0.05)
    lhs = hurwitz_zeta_any(s, a) - hurwitz_zeta_any(s, a + 1.0)
    rhs = np.exp(-s * np.log(np.complex128(a)))
    # a^{-s} can reach ~1e6 for small a and large re, so scale the budget
    scale = max(1.0, abs(rhs))
    assert abs(lhs - rhs) < 1e-10 * scale, f"recurrence defect at s={s}, a={a}"


@given(
    re=st.floats(min_value=-6.0, max_value=6.0),
    im=st.floats(min_value=0.05, max_value=40.0),
    a=st.floats(min_value=0.05, max_value=1.0),
)
@settings(max_examples=40, deadline=None)
def test_hurwitz_conjugate_property(re, im, a):
    s = complex(re, im)
    assume(abs(s - 1.0) > 0.05 and abs(s.conjugate() - 1.0) > 0.05)
    assert hurwitz_zeta(s.conjugate(), a) == hurwitz_zeta(s, a).conjugate()


# ----------------------------------------------------------------------
# principal powers and exact half-period sine
# ----------------------------------------------------------------------


def test_cpow_reference_value():
    want = 0.6878068271514742323019 + 0.9211392799746480204736j
    got = cpow(5.0 / math.pi, 0.3 + 2.0j)
    assert abs(got - want) < 1e-14


def test_cpow_rejects_nonpositive_base():
    with pytest.raises(DomainError):
        cpow(-2.0, 1.0 + 0.0j)
    with pytest.raises(DomainError):
        cpow(0.0, 1.0 + 0.0j)


def test_sin_pi_exact_integer_zeros():
    for n in (-6, -3, 0, 1, 7, 12):
        assert sin_pi(float(n) + 0.0j) == 0.0, f"sin_pi({n}) must vanish exactly"


def test_sin_pi_matches_cmath_off_axis():
    import cmath

    for w in (0.3 + 0.2j, -1.7 + 2.0j, 5.5 - 1.0j):
        want = cmath.sin(math.pi * w)
        assert abs(sin_pi(w) - want) < 1e-13 * (1 + abs(want))


# ----------------------------------------------------------------------
# split-point policy
# ----------------------------------------------------------------------


def test_em_split_point_scales_with_height():
    cfg = EvalSettings()
    low = em_split_point(1.0, 0.5, cfg)
    high = em_split_point(200.0, 0.5, cfg)
    assert high > low >= cfg.hurwitz_cutoff
