"""The meromorphic reflection ratio and its logarithmic derivatives.

The ratio

    X(s) = (5/pi)^(1/2 - s) Gamma(1 - s/2) / Gamma((1 + s)/2)

carries the reflection identity of the series module: values at s and
1 - s are tied by f(s) = X(s) f(1 - s).  X has simple zeros at the
negative odd integers, simple poles at the positive even integers, and
maps the line Re s = 1/2 onto the unit circle.

Everything here works in log-modulus form: the combination

    L(s) = (1/2 - s) ln(5/pi) + lgamma(1 - s/2) - lgamma((1 + s)/2)

is evaluated once, giving log|X| = Re L and a continuous argument
Im L, and products like X(s) X(1 - s*) are formed by adding L-values
before a single exp, which keeps reflection defects at roundoff level
even where |X| alone would overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError
from .specfun import (
    ComplexPoint,
    EvalSettings,
    as_points,
    digamma,
    lgamma,
)

__all__ = [
    "RatioValue",
    "MirrorPair",
    "x_of",
    "logabsx_many",
    "reflection_defect",
    "reciprocity_defect",
    "trivial_zeros",
    "poles",
    "dlogabsx_dt",
    "dsigma_logabsx",
    "gamma_modulus_dt",
]

_LN_5_OVER_PI = math.log(5.0 / math.pi)


# ----------------------------------------------------------------------
# domain types
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class RatioValue:
    """X at a point: complex value, log-modulus, continuous argument.

    At a zero of X the value is exactly 0, log_abs is -inf, the
    argument is undefined (NaN), and zero_flag is set.
    """

    at: ComplexPoint
    value: ComplexPoint
    log_abs: float
    arg_cont: float
    zero_flag: bool = False


@dataclass(frozen=True)
class MirrorPair:
    """An anchor 1/2 + it with offset epsilon.

    Derived points: s_plus = 1/2 + epsilon + it and s_minus =
    1/2 - epsilon + it; the reflection identity pairs each with the
    conjugate of the other.
    """

    s0_t: float
    epsilon: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.s0_t) and math.isfinite(self.epsilon)):
            raise DomainError("mirror pair parameters must be finite")

    @property
    def s_plus(self) -> ComplexPoint:
        return ComplexPoint(0.5 + self.epsilon, self.s0_t)

    @property
    def s_minus(self) -> ComplexPoint:
        return ComplexPoint(0.5 - self.epsilon, self.s0_t)


# ----------------------------------------------------------------------
# pole / zero bookkeeping
# ----------------------------------------------------------------------


def _real_integer_mask(arr: np.ndarray) -> np.ndarray:
    return (arr.imag == 0.0) & (arr.real == np.floor(arr.real))

def _pole_mask(arr: np.ndarray) -> np.ndarray:
    """True at s = 2, 4, 6, ... where Gamma((1+s)/2) stays finite but
    Gamma(1 - s/2) blows up."""
    ints = _real_integer_mask(arr)
    return ints & (arr.real >= 2.0) & (np.mod(arr.real, 2.0) == 0.0)

def _zero_mask(arr: np.ndarray) -> np.ndarray:
    """True at s = -1, -3, -5, ... where Gamma((1+s)/2) blows up."""
    ints = _real_integer_mask(arr)
    return ints & (arr.real <= -1.0) & (np.mod(arr.real, 2.0) == 1.0)


def trivial_zeros(count: int) -> list[ComplexPoint]:
    """The first `count` zeros of X: -1, -3, -5, ..."""
    if count < 1:
        raise DomainError("count must be >= 1")
    return [ComplexPoint(-(2.0 * n + 1.0), 0.0) for n in range(count)]


def poles(count: int) -> list[ComplexPoint]:
    """The first `count` poles of X: 2, 4, 6, ..."""
    if count < 1:
        raise DomainError("count must be >= 1")
    return [ComplexPoint(2.0 * n + 2.0, 0.0) for n in range(count)]


# ----------------------------------------------------------------------
# the log form and X itself
# ----------------------------------------------------------------------


def _log_form(arr: np.ndarray, cfg: EvalSettings | None) -> np.ndarray:
    """L(s) = (1/2 - s) ln(5/pi) + lgamma(1 - s/2) - lgamma((1+s)/2).

    Callers must keep pole and zero points of X out of `arr`; the
    lgamma pole check converts stray hits into PoleError.
    """
    upper = lgamma(1.0 - 0.5 * arr, cfg)
    lower = lgamma(0.5 * (1.0 + arr), cfg)
    return (0.5 - arr) * _LN_5_OVER_PI + np.atleast_1d(np.asarray(upper)) - np.atleast_1d(
        np.asarray(lower)
    )


def x_of(s, settings: EvalSettings | None = None) -> RatioValue:
    """Evaluate X at one point.

    Raises PoleError at s = 2, 4, 6, ...; returns a zero-flagged
    record (value exactly 0) at s = -1, -3, -5, ...; log_abs is exact
    in log space, so it stays finite wherever X itself would overflow.
    """
    arr, _ = as_points(s)
    if len(arr) != 1:
        raise DomainError("x_of takes a single point; use logabsx_many for grids")
    at = ComplexPoint.from_complex(complex(arr[0]))
    if _pole_mask(arr)[0]:
        raise PoleError(f"X has a pole at s = {at.z}")
    if _zero_mask(arr)[0]:
        return RatioValue(
            at=at,
            value=ComplexPoint(0.0, 0.0),
            log_abs=-math.inf,
            arg_cont=math.nan,
            zero_flag=True,
        )
    combo = complex(_log_form(arr, settings)[0])
    return RatioValue(
        at=at,
        value=ComplexPoint.from_complex(np.exp(combo)),
        log_abs=combo.real,
        arg_cont=combo.imag,
        zero_flag=False,
    )


def logabsx_many(s, settings: EvalSettings | None = None):
    """log|X| on arbitrary point collections, for field scans.

    Exact poles evaluate to +inf and exact zeros to -inf instead of
    raising, so grid passes over windows containing them classify
    their neighborhoods by sign like any other cell.
    """
    arr, was_scalar = as_points(s)
    out = np.empty(len(arr))
    pole = _pole_mask(arr)
    zero = _zero_mask(arr)
    rest = ~(pole | zero)
    out[pole] = math.inf
    out[zero] = -math.inf
    if rest.any():
        out[rest] = _log_form(arr[rest], settings).real
    return float(out[0]) if was_scalar else out


# ----------------------------------------------------------------------
# reflection identities
# ----------------------------------------------------------------------


def reflection_defect(p: MirrorPair, settings: EvalSettings | None = None) -> float:
    """max deviation of X(s+) X(s-*) and X(s-) X(s+*) from 1.

    Each product pairs a point with the conjugate-mirror partner
    1 minus it, so both are identities; the defect measures evaluation
    error only.  Formed in log space: exp(L(s) + L(partner)) - 1.
    """
    sp = p.s_plus.z
    sm = p.s_minus.z
    defect = 0.0
    for first, second in ((sp, sm.conjugate()), (sm, sp.conjugate())):
        pts = np.array([first, second])
        if _pole_mask(pts).any() or _zero_mask(pts).any():
            raise PoleError(f"mirror pair touches a pole or zero of X at {pts}")
        combos = _log_form(pts, settings)
        defect = max(defect, abs(np.expm1(complex(combos[0] + combos[1]))))
    return defect


def reciprocity_defect(n: int, delta: float, settings: EvalSettings | None = None) -> float:
    """|X(-(2n+1) + delta) X(2n+2 - delta) - 1| on the real axis.

    The two arguments sum to 1, so this probes the zero/pole
    reciprocity of X as the delta -> 0 reflection limit.
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    if not delta > 0.0:
        raise DomainError("delta must be positive")
    pts = np.array([-(2.0 * n + 1.0) + delta + 0.0j, (2.0 * n + 2.0) - delta + 0.0j])
    combos = _log_form(pts, settings)
    return abs(np.expm1(complex(combos[0] + combos[1])))


# ----------------------------------------------------------------------
# derivative series
# ----------------------------------------------------------------------

_SERIES_CHUNK = 1 << 20


def _default_n_max(sv: complex) -> int:
    return max(50, int(math.ceil(10.0 * (abs(sv.imag) + abs(sv.real)))))


def dlogabsx_dt(s, n_max: int | None = None, settings: EvalSettings | None = None) -> float:
    """d(log|X|)/dt as the partial sum

        sum_{n=1..n_max} 8 t (1/2 - sigma) (n - 1/4)
                         / (|it + 2n + sigma - 1|^2 |it + 2n - sigma|^2).

    Terms decay like n^-3; the sum vanishes identically on the line
    sigma = 1/2 (every term carries the factor 1/2 - sigma) and its
    sign elsewhere is the sign of t (1/2 - sigma).  Finite at the zeros
    of X, where the modulus-weighted form would vanish.
    """
    arr, _ = as_points(s)
    if len(arr) != 1:
        raise DomainError("dlogabsx_dt takes a single point")
    sv = complex(arr[0])
    sigma, t = sv.real, sv.imag
    if sigma == 0.5:
        return 0.0
    if n_max is None:
        n_max = _default_n_max(sv)
    if n_max < 1:
        raise DomainError("n_max must be >= 1")

    front = 8.0 * t * (0.5 - sigma)
    total = 0.0
    for lo in range(1, n_max + 1, _SERIES_CHUNK):
        n = np.arange(lo, min(lo + _SERIES_CHUNK, n_max + 1), dtype=np.float64)
        d1 = (2.0 * n + sigma - 1.0) ** 2 + t * t
        d2 = (2.0 * n - sigma) ** 2 + t * t
        total += float(((n - 0.25) / (d1 * d2)).sum())
    return front * total


def dsigma_logabsx(s, settings: EvalSettings | None = None) -> float:
    """d(log|X|)/dsigma = -ln(5/pi) - Re[psi(1 - s/2) + psi((1+s)/2)]/2.

    Raises PoleError when either digamma argument is a non-positive
    integer (the poles and zeros of X).
    """
    arr, _ = as_points(s)
    if len(arr) != 1:
        raise DomainError("dsigma_logabsx takes a single point")
    sv = complex(arr[0])
    upper = digamma(1.0 - 0.5 * sv, settings)
    lower = digamma(0.5 * (1.0 + sv), settings)
    return -_LN_5_OVER_PI - 0.5 * (upper.real + lower.real)


def gamma_modulus_dt(
    s,
    which: str,
    n_max: int | None = None,
    settings: EvalSettings | None = None,
) -> float:
    """t-derivative of a Gamma-factor modulus as a partial sum.

    which = "upper":  d/dt |Gamma(1 - s/2)|
                        = -t |Gamma(1 - s/2)| sum_n 1/|sigma + it - 2n|^2
    which = "lower":  d/dt |Gamma((1+s)/2)|
                        = -t |Gamma((1+s)/2)| sum_n 1/|sigma + it + 2n - 1|^2

    with n running 1..n_max.  Negative for t > 0 and positive for
    t < 0: both moduli decrease monotonically away from the real axis.
    """
    arr, _ = as_points(s)
    if len(arr) != 1:
        raise DomainError("gamma_modulus_dt takes a single point")
    sv = complex(arr[0])
    sigma, t = sv.real, sv.imag
    if which == "upper":
        arg = 1.0 - 0.5 * sv
    elif which == "lower":
        arg = 0.5 * (1.0 + sv)
    else:
        raise DomainError(f"which must be 'upper' or 'lower', got {which!r}")
    if n_max is None:
        n_max = _default_n_max(sv)
    if n_max < 1:
        raise DomainError("n_max must be >= 1")

    modulus = math.exp(lgamma(arg, settings).real)
    total = 0.0
    for lo in range(1, n_max + 1, _SERIES_CHUNK):
        n = np.arange(lo, min(lo + _SERIES_CHUNK, n_max + 1), dtype=np.float64)
        shifted = sigma - 2.0 * n if which == "upper" else sigma + 2.0 * n - 1.0
        total += float((1.0 / (shifted * shifted + t * t)).sum())
    return -t * modulus * total
