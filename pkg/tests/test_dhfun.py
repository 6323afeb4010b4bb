"""The series itself: values, functional equation, derivative, rotation.

Value references were frozen from an independent arbitrary-precision
computation.  The Dirichlet partial sum plus tail bound acts as the
in-tree oracle wherever the series converges.
"""
from __future__ import annotations

import math
import warnings

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dhratio.dhfun import (
    XI,
    CoefficientTable,
    f,
    f_batch,
    f_prime,
    f_series,
    functional_eq_residual,
    pq,
    z_function,
)
from dhratio.errors import DomainError, PoleError

# ----------------------------------------------------------------------
# frozen references
# ----------------------------------------------------------------------

F_CASES = [
    (3.0 + 0.0j, 1.013504598330534747044 + 0.0j),
    (0.5 + 0.0j, 0.8253830238211021669514 + 0.0j),
    (1.0 + 0.0j, 0.922801873802890872182 + 0.0j),
    (2.0 - 7.0j, 1.102661670224380689241 - 0.09319828987604721506575j),
    (0.5 + 14.1j, 0.3688935188572358567753 - 0.531917903541121570473j),
]

FPRIME_CASES = [
    (0.3 + 2.0j, -0.2894500710801848764139 - 0.4399771197396943721025j, 1e-10),
    (2.0 + 0.0j, 0.03264584820180466149086 + 0.0j, 1e-10),
    (1.0 + 0.0j, 0.142009948954704204 + 0.0j, 1e-9),
]

S1 = 0.8085171824566373855534 + 85.69934848537759217193j
Z_AT_14_1 = -0.6473168346045510795826

X_POLES = [complex(p, 0.0) for p in (2, 4, 6, 8, 10)]


# ----------------------------------------------------------------------
# coefficients
# ----------------------------------------------------------------------


def test_xi_closed_form_value():
    want = (math.sqrt(10.0 - 2.0 * math.sqrt(5.0)) - 2.0) / (math.sqrt(5.0) - 1.0)
    assert XI == want
    assert abs(XI - 0.28407904384041227) < 1e-16


def test_coefficient_table_validation():
    tab = CoefficientTable.standard()
    assert tab.a[1] == 1.0 and tab.a[4] == -1.0 and tab.a[2] == -tab.a[3]
    with pytest.raises(DomainError):
        CoefficientTable(xi=XI, a=(0.0, 1.0, XI, XI, -1.0))


# ----------------------------------------------------------------------
# values
# ----------------------------------------------------------------------


@pytest.mark.parametrize("s, want", F_CASES)
def test_reference_values(s, want):
    got = f(s)
    assert abs(got.value.z - want) < 1e-13 * (1.0 + abs(want)), f"f({s}) = {got.value.z}"
    assert got.est_abs_err < 1e-10


def test_value_at_one_is_finite_and_unwarned():
    # the continuation has a removable singularity at s = 1: the
    # deflated evaluator must neither warn nor lose accuracy there
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        got = f(1.0 + 0.0j)
    assert abs(got.value.z - 0.922801873802890872182) < 1e-13


def test_trivial_zeros_are_exact():
    for n in range(6):
        got = f(complex(-(2 * n + 1), 0.0))
        assert got.value.z == 0.0, f"f({-(2*n+1)}) = {got.value.z}, want exact 0"


def test_known_off_line_zero_is_tiny():
    assert abs(f(S1).value.z) < 1e-12


def test_real_positive_on_unit_interval():
    sigma = np.linspace(0.0, 1.0, 21)
    vals, _ = f_batch(sigma + 0.0j)
    assert np.abs(vals.imag).max() == 0.0
    assert vals.real.min() > 0.6


# ----------------------------------------------------------------------
# series oracle
# ----------------------------------------------------------------------


def test_series_requires_convergence_region():
    with pytest.raises(DomainError):
        f_series(0.5 + 3.0j, 1000)
    with pytest.raises(DomainError):
        f_series(3.0 + 0.0j, 0)


def test_series_matches_continuation():
    rng = np.random.default_rng(20260822)
    for _ in range(10):
        s = complex(rng.uniform(2.0, 6.0), rng.uniform(-50.0, 50.0))
        a_val = f(s)
        b_val = f_series(s, 200_000)
        budget = a_val.est_abs_err + b_val.est_abs_err + 1e-12
        assert abs(a_val.value.z - b_val.value.z) < budget, f"disagreement at {s}"


def test_series_error_estimate_is_honest():
    # push the truncation: the quoted tail bound must cover the true gap
    s = 2.0 + 1.0j
    coarse = f_series(s, 500)
    fine = f_series(s, 400_000)
    assert abs(coarse.value.z - fine.value.z) < coarse.est_abs_err


# ----------------------------------------------------------------------
# functional equation
# ----------------------------------------------------------------------


def test_functional_equation_residual_examples():
    for s in (0.3 + 2.0j, -4.2 + 31.0j, 7.5 - 12.0j, 0.5 + 45.0j, 1.0 + 0.0j):
        assert functional_eq_residual(s) < 1e-12, f"residual at {s}"


def test_functional_equation_pole_raises():
    with pytest.raises(PoleError):
        functional_eq_residual(4.0 + 0.0j)


@given(
    re=st.floats(min_value=-10.0, max_value=11.0),
    im=st.floats(min_value=-50.0, max_value=50.0),
)
@settings(max_examples=60, deadline=None)
def test_functional_equation_property(re, im):
    s = complex(re, im)
    assume(min(abs(s - p) for p in X_POLES) > 0.05)
    assert functional_eq_residual(s) < 1e-9


@given(
    re=st.floats(min_value=-8.0, max_value=8.0),
    im=st.floats(min_value=0.0, max_value=40.0),
)
@settings(max_examples=50, deadline=None)
def test_conjugate_symmetry_property(re, im):
    s = complex(re, im)
    assert f(s.conjugate()).value.z == f(s).value.z.conjugate()


# ----------------------------------------------------------------------
# derivative
# ----------------------------------------------------------------------


@pytest.mark.parametrize("s, want, tol", FPRIME_CASES)
def test_derivative_reference_values(s, want, tol):
    got = f_prime(s)
    assert abs(got.z - want) < tol, f"f'({s}) = {got.z}, want {want}"


def test_derivative_matches_difference_quotient():
    s = 0.6 + 20.0j
    d = f_prime(s).z
    h = 1e-5
    fd = (f(s + h).value.z - f(s - h).value.z) / (2 * h)
    assert abs(d - fd) < 1e-7 * (1 + abs(fd))


# ----------------------------------------------------------------------
# rotated real form and the P/Q pair
# ----------------------------------------------------------------------


def test_z_function_reference_value():
    assert abs(z_function(14.1) - Z_AT_14_1) < 1e-12


def test_z_function_sign_change_brackets_zero():
    # the first line zero sits near t = 5.094
    assert z_function(5.0) * z_function(5.2) < 0.0


def test_z_function_array_matches_scalar():
    # batches share one series split chosen from the batch maximum
    # height, so agreement is to evaluation accuracy, not bitwise
    t = np.array([2.0, 14.1, -14.1, 60.0])
    batch = z_function(t)
    for k, tv in enumerate(t):
        single = z_function(float(tv))
        assert abs(batch[k] - single) < 1e-12 * (1 + abs(single))


def test_pq_degeneracies():
    # on the line, P and Q are the same product by conjugate symmetry
    p, q = pq(0.5, 23.7)
    assert p == q
    # at s = 2 the mirror value f(-1) is an exact zero, so Q vanishes
    p2, q2 = pq(2.0, 0.0)
    assert q2 == 0.0 and p2 > 0.0


def test_pq_at_off_line_zero():
    # both products collapse to evaluation noise at the zero itself
    # (the numerical face of a 0/0 form) ...
    p, q = pq(S1.real, S1.imag)
    assert p < 1e-24 and q < 1e-18
    # ... while a small offset recovers |X|^2 cleanly
    p_off, q_off = pq(S1.real, S1.imag + 1e-6)
    assert abs(math.sqrt(p_off / q_off) - 0.271801369195) < 1e-5
