"""Evaluation of the five-periodic Dirichlet series and its companions.

The series is

    f(s) = sum_{n>=1} a(n mod 5) n^-s,      a = (0, 1, xi, -xi, -1)

indexed by residue, with xi = (sqrt(10 - 2 sqrt 5) - 2)/(sqrt 5 - 1).
Grouping by residue class gives the Hurwitz form

    f(s) = 5^-s sum_{r=1..4} a(r) zeta(s, r/5),

which continues f to the whole plane.  Because sum_r a(r) = 0 the
simple poles of the four zeta terms at s = 1 cancel and f is entire;
the evaluator performs that cancellation in closed form (a deflated
pole combination built on expm1) so s = 1 is an ordinary point, not a
0/0 special case.

In the left half-plane the Euler-Maclaurin blocks behind zeta(s, a)
grow like (N+a)^(1+|Re s|) while f itself becomes tiny near its trivial
zeros, and double precision cannot survive that cancellation.  For
Re s <= -1 the evaluator therefore switches to the reflected form

    f(s) = 2 Gamma(z) (10 pi)^-z sin(pi z / 2) 5^-s
           * sum_{m=1..4} S_m zeta(z, m/5),        z = 1 - s,

with S_m = 2 [sin(2 pi m/5) + xi sin(4 pi m/5)], where Re z >= 2 puts
every zeta in its comfortable zone.  The sine factor is computed with
exact integer reduction, so the trivial zeros at s = -1, -3, -5, ...
come out exactly 0.0 rather than as rounding residue.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyWarning, DomainError
from .specfun import (
    ComplexPoint,
    EvalSettings,
    _em_regular,
    _hurwitz_batch,
    as_points,
    em_split_point,
    hurwitz_zeta,
    lgamma,
    sin_pi,
)
from .xratio import x_of

__all__ = [
    "CoefficientTable",
    "FnValue",
    "DEFAULT_TABLE",
    "XI",
    "f",
    "f_batch",
    "f_series",
    "f_prime",
    "functional_eq_residual",
    "z_function",
    "pq",
]

_LN5 = math.log(5.0)
_LN10PI = math.log(10.0 * math.pi)
_EPS = np.finfo(float).eps

# ----------------------------------------------------------------------
# coefficients
# ----------------------------------------------------------------------


def _xi_closed_form() -> float:
    return (math.sqrt(10.0 - 2.0 * math.sqrt(5.0)) - 2.0) / (math.sqrt(5.0) - 1.0)


@dataclass(frozen=True)
class CoefficientTable:
    """Period-5 Dirichlet coefficients, indexed by residue n mod 5.

    The tuple `a` satisfies a[0] = 0, a[1] = 1, a[2] = xi = -a[3],
    a[4] = -1; the zero sum over a full period is what makes the series'
    continuation entire.
    """

    xi: float
    a: tuple[float, float, float, float, float]

    def __post_init__(self) -> None:
        ok = (
            self.a[0] == 0.0
            and self.a[1] == 1.0
            and self.a[4] == -1.0
            and self.a[2] == self.xi
            and self.a[3] == -self.xi
        )
        if not ok:
            raise DomainError(f"coefficient table {self.a} breaks the residue pattern")

    @classmethod
    def standard(cls) -> "CoefficientTable":
        xi = _xi_closed_form()
        return cls(xi=xi, a=(0.0, 1.0, xi, -xi, -1.0))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.a, dtype=np.float64)


DEFAULT_TABLE = CoefficientTable.standard()
XI = DEFAULT_TABLE.xi

# Reflected-side coefficients S_m = 2 [sin(2 pi m/5) + xi sin(4 pi m/5)],
# kept as computed (not simplified) so the functional-equation residual
# remains an independent check on the coefficient table.
_S_REFLECT = tuple(
    2.0 * (math.sin(2.0 * math.pi * m / 5.0) + XI * math.sin(4.0 * math.pi * m / 5.0))
    for m in range(1, 5)
)


@dataclass(frozen=True)
class FnValue:
    """A function value together with its argument and error estimate."""

    at: ComplexPoint
    value: ComplexPoint
    est_abs_err: float

    def __post_init__(self) -> None:
        if not self.est_abs_err >= 0.0:
            raise DomainError("est_abs_err must be non-negative")


# ----------------------------------------------------------------------
# batch evaluation core
# ----------------------------------------------------------------------


def _phi1(x: np.ndarray) -> np.ndarray:
    """(e^x - 1)/x continued through x = 0, elementwise on complex input."""
    out = np.empty_like(x)
    small = np.abs(x) < 0.25
    xs = x[small]
    acc = np.zeros_like(xs)
    term = np.ones_like(xs)
    for k in range(1, 14):
        acc = acc + term
        term = term * xs / (k + 1.0)
    out[small] = acc
    xl = x[~small]
    out[~small] = (np.exp(xl) - 1.0) / xl
    return out


def _f_direct(s: np.ndarray, cfg: EvalSettings):
    """Hurwitz-combination route with the s = 1 pole pair deflated.

    Valid for Re s > -1 (and exact at s = 1).  The pole parts
    sum_r a_r x_r^(1-s)/(s-1), x_r = N + r/5, are combined into
    -N^w sum_r a_r u_r phi1(w u_r) with w = 1 - s, u_r = log1p(r/(5N)),
    which is finite and fully stable through w = 0.
    """
    a = DEFAULT_TABLE.a
    n_split = em_split_point(np.abs(s.imag).max(), s.real.min(), cfg)
    regular = np.zeros_like(s)
    reg_err = np.zeros(len(s))
    for r in (1, 2, 3, 4):
        reg, err = _em_regular(s, r / 5.0, n_split, cfg.bernoulli_order)
        regular += a[r] * reg
        reg_err += abs(a[r]) * err

    w = 1.0 - s
    pole = np.zeros_like(s)
    for r in (1, 2, 3, 4):
        u = math.log1p(r / (5.0 * n_split))
        pole += (a[r] * u) * _phi1(w * u)
    pole *= -np.exp(w * math.log(n_split))

    scale = np.exp(-s * _LN5)
    values = scale * (regular + pole)
    errs = np.abs(scale) * (reg_err + 8.0 * _EPS * (np.abs(regular) + np.abs(pole)))
    return values, errs


def _f_reflected(s: np.ndarray, cfg: EvalSettings):
    """Reflected route for Re s <= -1, where Re (1-s) >= 2.

    Exact integer reduction inside sin(pi z / 2) makes the trivial
    zeros land on exact 0.0.
    """
    z = 1.0 - s
    total = np.zeros_like(s)
    tot_err = np.zeros(len(s))
    for m in (1, 2, 3, 4):
        val, err = _hurwitz_batch(z, m / 5.0, cfg)
        total += _S_REFLECT[m - 1] * val
        tot_err += abs(_S_REFLECT[m - 1]) * err

    pref = 2.0 * np.exp(-s * _LN5 + lgamma(z) - z * _LN10PI) * sin_pi(0.5 * z)
    values = pref * total
    errs = np.abs(pref) * tot_err + 8.0 * _EPS * np.abs(values)
    return values, errs


_BATCH_CHUNK = 4096


def f_batch(s, settings: EvalSettings | None = None):
    """Vectorized f over any collection of points.

    Returns (values, est_abs_errs) as numpy arrays.  Chooses the direct
    deflated Hurwitz combination for Re s > -1 and the reflected form
    for Re s <= -1.
    """
    cfg = EvalSettings() if settings is None else settings
    arr, _ = as_points(s)
    values = np.empty_like(arr)
    errs = np.empty(len(arr))
    for lo in range(0, len(arr), _BATCH_CHUNK):
        chunk = arr[lo : lo + _BATCH_CHUNK]
        vals = np.empty_like(chunk)
        errc = np.empty(len(chunk))
        left = chunk.real <= -1.0
        if (~left).any():
            vals[~left], errc[~left] = _f_direct(chunk[~left], cfg)
        if left.any():
            vals[left], errc[left] = _f_reflected(chunk[left], cfg)
        values[lo : lo + _BATCH_CHUNK] = vals
        errs[lo : lo + _BATCH_CHUNK] = errc
    return values, errs


def f(s, settings: EvalSettings | None = None) -> FnValue:
    """The continued series at a single point (entire; no poles).

    A warning is attached when the internal cancellation estimate says
    the result lost more than 1e6 * rel_tol of relative accuracy.
    """
    cfg = EvalSettings() if settings is None else settings
    arr, _ = as_points(s)
    if len(arr) != 1:
        raise DomainError("f takes a single point; use f_batch for arrays")
    values, errs = f_batch(arr, cfg)
    value = complex(values[0])
    err = float(errs[0])
    if err > 1e6 * cfg.rel_tol * (abs(value) + 1.0):
        warnings.warn(
            f"cancellation inflated the error estimate to {err:.3g} at s = {value}",
            AccuracyWarning,
            stacklevel=2,
        )
    return FnValue(
        at=ComplexPoint.from_complex(complex(arr[0])),
        value=ComplexPoint.from_complex(value),
        est_abs_err=err,
    )


# ----------------------------------------------------------------------
# direct partial sums (the brute-force oracle)
# ----------------------------------------------------------------------


def f_series(s, n_terms: int, settings: EvalSettings | None = None) -> FnValue:
    """Plain partial sum of the Dirichlet series, Re s > 1 only.

    est_abs_err is the tail bound 4 n_terms^(1-Re s) / (Re s - 1); the
    op exists as the independent oracle for the continued evaluator.
    """
    arr, _ = as_points(s)
    if len(arr) != 1:
        raise DomainError("f_series takes a single point")
    sv = complex(arr[0])
    if not sv.real > 1.0:
        raise DomainError(f"partial sums require Re s > 1, got {sv.real}")
    if n_terms < 1:
        raise DomainError("n_terms must be a positive integer")

    coeffs = DEFAULT_TABLE.array
    total = 0.0 + 0.0j
    chunk = 1 << 17
    for lo in range(1, n_terms + 1, chunk):
        n = np.arange(lo, min(lo + chunk, n_terms + 1), dtype=np.float64)
        terms = coeffs[(n.astype(np.int64)) % 5] * np.exp(-sv * np.log(n))
        total += terms.sum()
    tail = 4.0 * n_terms ** (1.0 - sv.real) / (sv.real - 1.0)
    return FnValue(
        at=ComplexPoint.from_complex(sv),
        value=ComplexPoint.from_complex(complex(total)),
        est_abs_err=float(tail),
    )


# ----------------------------------------------------------------------
# derivative
# ----------------------------------------------------------------------


def _richardson(diff):
    """One Richardson step on a central difference quotient callable."""

    def at(h: float):
        return (4.0 * diff(0.5 * h) - diff(h)) / 3.0

    return at


def f_prime(s, settings: EvalSettings | None = None) -> ComplexPoint:
    """df/ds by the differentiated Hurwitz form.

    f'(s) = -ln(5) f(s) + 5^-s sum_r a_r d/ds zeta(s, r/5), the zeta
    derivatives taken by central differences with one Richardson step.
    Where that form is unusable (near s = 1, or in the left half-plane
    where the direct zeta route loses digits) the same difference
    scheme is applied to f itself, which is entire.
    """
    cfg = EvalSettings() if settings is None else settings
    arr, _ = as_points(s)
    if len(arr) != 1:
        raise DomainError("f_prime takes a single point")
    sv = complex(arr[0])
    h = cfg.fd_step

    if sv.real > -1.0 + 4.0 * h and abs(sv - 1.0) > 0.05:
        a = DEFAULT_TABLE.a
        deriv_sum = 0.0 + 0.0j
        for r in (1, 2, 3, 4):

            def quotient(step: float, _r=r):
                hi = hurwitz_zeta(sv + step, _r / 5.0, cfg)
                lo = hurwitz_zeta(sv - step, _r / 5.0, cfg)
                return (hi - lo) / (2.0 * step)

            deriv_sum += a[r] * _richardson(quotient)(h)
        fv = f(sv, cfg).value.z
        out = -_LN5 * fv + np.exp(-sv * _LN5) * deriv_sum
    else:

        def quotient(step: float):
            vals, _ = f_batch(np.array([sv + step, sv - step]), cfg)
            return (vals[0] - vals[1]) / (2.0 * step)

        out = _richardson(quotient)(h)
    return ComplexPoint.from_complex(complex(out))


# ----------------------------------------------------------------------
# functional-equation residual
# ----------------------------------------------------------------------


def functional_eq_residual(s, settings: EvalSettings | None = None) -> float:
    """Relative size of f(s) - X(s) f(1-s): the library's master check.

    Raises PoleError at s = 2, 4, 6, ... where X has poles.
    """
    cfg = EvalSettings() if settings is None else settings
    arr, _ = as_points(s)
    if len(arr) != 1:
        raise DomainError("functional_eq_residual takes a single point")
    sv = complex(arr[0])
    xv = x_of(sv, cfg).value.z
    vals, _ = f_batch(np.array([sv, 1.0 - sv]), cfg)
    num = abs(vals[0] - xv * vals[1])
    return float(num / (abs(vals[0]) + abs(vals[1]) + 1e-300))


# ----------------------------------------------------------------------
# rotated critical-line form
# ----------------------------------------------------------------------


def _theta(t: np.ndarray) -> np.ndarray:
    """Continuous rotation phase on the critical line.

    theta(t) = Im[(1/2 - s) ln(5/pi) + lgamma(1 - s/2) - lgamma((1+s)/2)]
    at s = 1/2 + it; both lgamma arguments keep real part 3/4, so the
    principal branch is already continuous in t and theta(0) = 0.
    """
    s = 0.5 + 1j * t
    upper = np.atleast_1d(np.asarray(lgamma(1.0 - 0.5 * s)))
    lower = np.atleast_1d(np.asarray(lgamma(0.5 * (1.0 + s))))
    return -t * math.log(5.0 / math.pi) + upper.imag - lower.imag


def z_function(t, settings: EvalSettings | None = None):
    """Real rotated form Z(t) = exp(-i theta(t)/2) f(1/2 + it).

    The rotation cancels the phase the reflection identity forces on
    the critical line, so Z is real there; sign changes of Z are line
    zeros of f.  Scalar in, scalar out; arrays accepted.
    """
    cfg = EvalSettings() if settings is None else settings
    tarr = np.atleast_1d(np.asarray(t, dtype=np.float64))
    was_scalar = np.asarray(t).ndim == 0
    if not np.all(np.isfinite(tarr)):
        raise DomainError("non-finite height t")
    vals, _ = f_batch(0.5 + 1j * tarr, cfg)
    rotated = np.exp(-0.5j * _theta(tarr)) * vals
    bound = 1e-8 * (1.0 + np.abs(rotated.real))
    if np.any(np.abs(rotated.imag) > bound):
        worst = float(np.abs(rotated.imag).max())
        warnings.warn(
            f"rotated value kept an imaginary part of {worst:.3g}",
            AccuracyWarning,
            stacklevel=2,
        )
    out = rotated.real
    return float(out[0]) if was_scalar else out


def pq(sigma: float, t: float, settings: EvalSettings | None = None):
    """The squared-modulus pair (P, Q) = (|f(s)|^2, |f(1-s)|^2).

    Computed literally as f(s) f(s*) and f(1-s) f(1-s*); conjugate
    symmetry makes both products real, which is checked (relative
    1e-10) before the imaginary parts are discarded.
    """
    cfg = EvalSettings() if settings is None else settings
    sv = complex(float(sigma), float(t))
    pts = np.array([sv, sv.conjugate(), 1.0 - sv, 1.0 - sv.conjugate()])
    vals, _ = f_batch(pts, cfg)
    p = vals[0] * vals[1]
    q = vals[2] * vals[3]
    for name, prod in (("P", p), ("Q", q)):
        if abs(prod.imag) > 1e-10 * (abs(prod) + 1e-300):
            warnings.warn(
                f"{name} kept an imaginary part of {prod.imag:.3g}",
                AccuracyWarning,
                stacklevel=2,
            )
    return float(p.real), float(q.real)
