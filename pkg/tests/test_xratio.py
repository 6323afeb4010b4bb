"""The reflection ratio X: values, identities, and modulus derivatives.

Reference values frozen from an independent arbitrary-precision
computation; identity checks (reflection, reciprocity, unit circle)
are exact mathematical statements whose defects measure only
evaluation error.
"""
from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dhratio.errors import DomainError, PoleError
from dhratio.xratio import (
    MirrorPair,
    dlogabsx_dt,
    dsigma_logabsx,
    gamma_modulus_dt,
    logabsx_many,
    poles,
    reciprocity_defect,
    reflection_defect,
    trivial_zeros,
    x_of,
)

X_AT_03_2I = 1.055164030176059645296 + 0.2985573037628110043715j
X_AT_0 = 0.7117625434171770584768  # sqrt(5)/pi
S1 = 0.8085171824566373855534 + 85.69934848537759217193j
ABS_X_AT_S1 = 0.271801369195


# ----------------------------------------------------------------------
# values, zeros, poles
# ----------------------------------------------------------------------


def test_reference_values():
    got = x_of(0.3 + 2.0j)
    assert abs(got.value.z - X_AT_03_2I) < 1e-14
    assert abs(x_of(0.0 + 0.0j).value.z - X_AT_0) < 1e-14
    assert abs(math.exp(logabsx_many(S1)) - ABS_X_AT_S1) < 1e-9


def test_log_form_consistency():
    got = x_of(-2.3 + 11.0j)
    recombined = math.exp(got.log_abs) * complex(math.cos(got.arg_cont), math.sin(got.arg_cont))
    assert abs(recombined - got.value.z) < 1e-12 * (1 + abs(got.value.z))


def test_trivial_zero_and_pole_lists():
    zs = trivial_zeros(4)
    ps = poles(4)
    assert [z.sigma for z in zs] == [-1.0, -3.0, -5.0, -7.0]
    assert [p.sigma for p in ps] == [2.0, 4.0, 6.0, 8.0]
    assert all(z.t == 0.0 for z in zs + ps)


def test_zero_flag_and_pole_error():
    val = x_of(-5.0 + 0.0j)
    assert val.zero_flag
    assert val.value.z == 0.0
    assert val.log_abs == -math.inf
    for p in (2.0, 6.0):
        with pytest.raises(PoleError):
            x_of(p + 0.0j)


def test_logabsx_many_signals_by_infinity():
    out = logabsx_many(np.array([-5.0 + 0.0j, 6.0 + 0.0j, 0.5 + 3.0j]))
    assert out[0] == -math.inf
    assert out[1] == math.inf
    assert abs(out[2]) < 1e-14  # on the line


# ----------------------------------------------------------------------
# identities
# ----------------------------------------------------------------------


def test_reflection_defect_example():
    assert reflection_defect(MirrorPair(3.3, 0.4)) < 1e-12


def test_reflection_defect_on_seeded_grid():
    rng = np.random.default_rng(20260822)
    tried = 0
    while tried < 40:
        pair = MirrorPair(float(rng.uniform(-50, 50)), float(rng.uniform(-5, 5)))
        try:
            defect = reflection_defect(pair)
        except PoleError:
            continue
        assert defect < 1e-12, f"defect {defect:.3g} at {pair}"
        tried += 1


def test_mirror_pair_validation():
    with pytest.raises(DomainError):
        MirrorPair(math.nan, 0.1)
    pair = MirrorPair(2.0, 0.25)
    assert pair.s_plus.z == 0.75 + 2.0j
    assert pair.s_minus.z == 0.25 + 2.0j


@pytest.mark.parametrize("delta", [1e-3, 1e-5])
def test_reciprocity_defect_is_order_delta(delta):
    for n in range(3):
        defect = reciprocity_defect(n, delta)
        assert defect < delta, f"defect {defect:.3g} not O(delta) at n={n}"


def test_reciprocity_validation():
    with pytest.raises(DomainError):
        reciprocity_defect(-1, 1e-3)
    with pytest.raises(DomainError):
        reciprocity_defect(0, 0.0)


def test_unit_circle_on_critical_line():
    rng = np.random.default_rng(20260822)
    t = rng.uniform(-100.0, 100.0, 1000)
    g = logabsx_many(0.5 + 1j * t)
    assert np.abs(np.expm1(g)).max() < 1e-12


@given(
    re=st.floats(min_value=-6.0, max_value=7.0),
    im=st.floats(min_value=0.05, max_value=60.0),
)
@settings(max_examples=50, deadline=None)
def test_x_product_with_mirror_is_one(re, im):
    s = complex(re, im)
    prod = x_of(s).value.z * x_of(1.0 - s).value.z
    assert abs(prod - 1.0) < 1e-12, f"X(s) X(1-s) = {prod} at {s}"


@given(
    re=st.floats(min_value=-6.0, max_value=7.0),
    im=st.floats(min_value=0.05, max_value=60.0),
)
@settings(max_examples=50, deadline=None)
def test_x_conjugate_symmetry(re, im):
    s = complex(re, im)
    assert x_of(s.conjugate()).value.z == x_of(s).value.z.conjugate()


# ----------------------------------------------------------------------
# modulus derivatives
# ----------------------------------------------------------------------


def test_dlogabsx_dt_vanishes_on_line_exactly():
    assert dlogabsx_dt(0.5 + 17.0j) == 0.0


def test_dlogabsx_dt_sign_table():
    # sign of d(log|X|)/dt equals sign of t (1/2 - sigma) in each quadrant
    for sigma, t in [(0.2, 3.0), (0.9, 3.0), (0.2, -3.0), (0.9, -3.0), (-4.0, 40.0), (6.0, -40.0)]:
        got = dlogabsx_dt(complex(sigma, t))
        want = math.copysign(1.0, t * (0.5 - sigma))
        assert math.copysign(1.0, got) == want, f"sign at sigma={sigma}, t={t}"


def test_dlogabsx_dt_matches_finite_difference():
    h = 1e-3
    for s in (0.2 + 3.0j, -1.5 + 9.0j, 2.4 - 14.0j):
        series = dlogabsx_dt(s, 300_000)
        fd = (logabsx_many(s + 1j * h) - logabsx_many(s - 1j * h)) / (2 * h)
        assert abs(series - fd) < 1e-6 * abs(fd), f"mismatch at {s}"


def test_dsigma_logabsx_matches_finite_difference():
    h = 1e-4
    for s in (0.2 + 3.0j, -1.5 + 9.0j, 2.4 - 14.0j):
        series = dsigma_logabsx(s)
        fd = (logabsx_many(s + h) - logabsx_many(s - h)) / (2 * h)
        assert abs(series - fd) < 1e-6 * abs(fd), f"mismatch at {s}"


def test_dsigma_logabsx_pole():
    with pytest.raises(PoleError):
        dsigma_logabsx(-1.0 + 0.0j)


def test_gamma_modulus_dt_signs_and_fd():
    # both Gamma modulus factors decrease away from the real axis
    for which in ("upper", "lower"):
        assert gamma_modulus_dt(0.3 + 5.0j, which) < 0.0
        assert gamma_modulus_dt(0.3 - 5.0j, which) > 0.0
    h = 3e-4
    from dhratio.specfun import lgamma

    s = 0.4 + 3.0j
    for which, sign in (("upper", -1.0), ("lower", 1.0)):
        series = gamma_modulus_dt(s, which, 5_000_000)
        arg = 1.0 - 0.5 * s if which == "upper" else 0.5 * (1.0 + s)
        up = math.exp(lgamma(arg + 0.5j * h * sign).real)
        dn = math.exp(lgamma(arg - 0.5j * h * sign).real)
        fd = (up - dn) / (2 * h)
        assert abs(series - fd) < 1e-6 * abs(fd), f"{which}: {series} vs {fd}"


def test_gamma_modulus_dt_validation():
    with pytest.raises(DomainError):
        gamma_modulus_dt(0.3 + 5.0j, "sideways")
    with pytest.raises(DomainError):
        gamma_modulus_dt(0.3 + 5.0j, "upper", 0)
