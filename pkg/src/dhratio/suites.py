"""Named invariant suites, shared by the test bed and the verify command.

Each suite bundles the library-level invariants of one module into
seeded, self-describing checks: every check reports the quantity it
measured and the threshold it was held to, so a verify run doubles as
a numerical health report.  All randomness flows from the rng_seed in
EvalSettings, making runs reproducible and parallel runs identical.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analysis import Rect, kappa_detail, refine_zero, survey_zeros, trace_unit_curve
from .dhfun import f, f_batch, f_series, functional_eq_residual, _theta
from .errors import AccuracyWarning, PoleError
from .specfun import (
    ComplexPoint,
    EvalSettings,
    digamma,
    hurwitz_zeta,
    hurwitz_zeta_any,
    lgamma,
)
from .xratio import (
    dlogabsx_dt,
    dsigma_logabsx,
    gamma_modulus_dt,
    logabsx_many,
    reciprocity_defect,
    reflection_defect,
    MirrorPair,
    x_of,
)

__all__ = ["CheckResult", "SuiteResult", "SUITE_NAMES", "run_suite", "run_suites"]

SUITE_NAMES = ("specfun", "dhfun", "xratio", "analysis")

_KNOWN_OFF_LINE_ZEROS = (
    0.808517 + 85.699348j,
    0.650830 + 114.163343j,
    0.574356 + 166.479306j,
    0.724258 + 176.702461j,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    measured: float
    threshold: float


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _check(name: str, measured: float, threshold: float) -> CheckResult:
    measured = float(measured)
    return CheckResult(name, bool(measured < threshold), measured, threshold)


def _rng(cfg: EvalSettings) -> np.random.Generator:
    return np.random.default_rng(cfg.rng_seed)


def _random_points(rng, n, re_lo, re_hi, im_lo, im_hi, avoid=(), radius=0.05):
    """n seeded random points in a box, outside disks around `avoid`."""
    out = []
    while len(out) < n:
        batch = rng.uniform(re_lo, re_hi, 4 * n) + 1j * rng.uniform(im_lo, im_hi, 4 * n)
        for z in batch:
            if all(abs(z - a) >= radius for a in avoid):
                out.append(complex(z))
                if len(out) == n:
                    break
    return np.array(out)


# ----------------------------------------------------------------------
# specfun
# ----------------------------------------------------------------------


def _suite_specfun(cfg: EvalSettings, worker_map=None) -> SuiteResult:
    rng = _rng(cfg)
    checks = []

    z = _random_points(
        rng, 400, -10.0, 10.0, -100.0, 100.0,
        avoid=[complex(-k, 0.0) for k in range(0, 11)], radius=0.05,
    )
    gap = lgamma(z + 1.0, cfg) - lgamma(z, cfg) - np.log(z)
    checks.append(_check("lgamma_recurrence", np.abs(gap).max(), 1e-12))

    checks.append(
        _check(
            "lgamma_conjugate",
            np.abs(lgamma(np.conj(z), cfg) - np.conj(lgamma(z, cfg))).max(),
            1e-12,
        )
    )
    checks.append(
        _check(
            "digamma_conjugate",
            np.abs(digamma(np.conj(z), cfg) - np.conj(digamma(z, cfg))).max(),
            1e-12,
        )
    )

    s = _random_points(rng, 60, -6.0, 6.0, -40.0, 40.0, avoid=[1.0 + 0.0j], radius=0.05)
    a = rng.uniform(0.05, 1.0, 60)
    hz = np.array([hurwitz_zeta(sv, av, cfg) for sv, av in zip(s, a)])
    hzc = np.array([hurwitz_zeta(sv.conjugate(), av, cfg) for sv, av in zip(s, a)])
    checks.append(_check("hurwitz_conjugate", np.abs(hzc - np.conj(hz)).max(), 1e-11))

    # the finite-difference grid stays half a unit clear of the poles,
    # where the third derivative of log-gamma is O(1)
    zfd = _random_points(
        rng, 200, -10.0, 10.0, -100.0, 100.0,
        avoid=[complex(-k, 0.0) for k in range(0, 11)], radius=0.5,
    )
    h = cfg.fd_step
    fd = (lgamma(zfd + h, cfg) - lgamma(zfd - h, cfg)) / (2.0 * h)
    checks.append(
        _check("digamma_is_dlgamma", np.abs(fd - digamma(zfd, cfg)).max(), 1e-7)
    )

    # absolute recurrence defect; kept to Re s >= -2, where the
    # split-sum terms stay small enough for an absolute 1e-10 floor
    srec = _random_points(rng, 60, -2.0, 6.0, -40.0, 40.0, avoid=[1.0 + 0.0j], radius=0.05)
    arec = rng.uniform(0.05, 1.0, 60)
    rec = np.array(
        [
            hurwitz_zeta_any(sv, av, cfg)
            - hurwitz_zeta_any(sv, av + 1.0, cfg)
            - np.exp(-sv * np.log(av))
            for sv, av in zip(srec, arec)
        ]
    )
    checks.append(_check("hurwitz_recurrence", np.abs(rec).max(), 1e-10))

    worst = 0.0
    terms = np.arange(1_000_000, dtype=np.float64)
    for _ in range(6):
        sv = complex(3.0, rng.uniform(-50.0, 50.0))
        av = float(rng.uniform(0.05, 1.0))
        brute = np.exp(-sv * np.log(terms + av)).sum()
        worst = max(worst, abs(hurwitz_zeta(sv, av, cfg) - brute))
    checks.append(_check("hurwitz_bruteforce", worst, 1e-10))

    return SuiteResult("specfun", tuple(checks))


# ----------------------------------------------------------------------
# dhfun
# ----------------------------------------------------------------------


def _x_pole_points(re_lo: float, re_hi: float):
    return [complex(p, 0.0) for p in range(2, int(re_hi) + 1, 2) if p >= re_lo]


def _suite_dhfun(cfg: EvalSettings, worker_map=None) -> SuiteResult:
    rng = _rng(cfg)
    checks = []

    s = _random_points(rng, 40, -8.0, 8.0, -40.0, 40.0)
    vals, _ = f_batch(s, cfg)
    conj_vals, _ = f_batch(np.conj(s), cfg)
    scale = np.abs(vals) + 1.0
    checks.append(
        _check("conjugate_symmetry", (np.abs(conj_vals - np.conj(vals)) / scale).max(), 1e-12)
    )

    pts = _random_points(
        rng, 1000, -10.0, 11.0, -50.0, 50.0, avoid=_x_pole_points(-10.0, 11.0), radius=0.05
    )
    worst = max(functional_eq_residual(p, cfg) for p in pts)
    checks.append(_check("functional_equation", worst, 1e-9))

    triv = max(abs(f(-(2.0 * n + 1.0), cfg).value.z) for n in range(6))
    checks.append(_check("trivial_zeros", triv, 1e-9))

    worst = 0.0
    for _ in range(50):
        sv = complex(rng.uniform(2.0, 6.0), rng.uniform(-50.0, 50.0))
        a_val = f(sv, cfg)
        b_val = f_series(sv, 200_000, cfg)
        budget = a_val.est_abs_err + b_val.est_abs_err + 1e-12
        worst = max(worst, abs(a_val.value.z - b_val.value.z) / budget)
    checks.append(_check("oracle_series", worst, 1.0))

    t = rng.uniform(-200.0, 200.0, 200)
    line_vals, _ = f_batch(0.5 + 1j * t, cfg)
    rotated = np.exp(-0.5j * _theta(t)) * line_vals
    rel_im = np.abs(rotated.imag) / (1.0 + np.abs(rotated.real))
    checks.append(_check("z_realness", rel_im.max(), 1e-8))

    return SuiteResult("dhfun", tuple(checks))


# ----------------------------------------------------------------------
# xratio
# ----------------------------------------------------------------------


def _suite_xratio(cfg: EvalSettings, worker_map=None) -> SuiteResult:
    rng = _rng(cfg)
    checks = []

    t = rng.uniform(-100.0, 100.0, 1000)
    g = logabsx_many(0.5 + 1j * t, cfg)
    checks.append(_check("unit_circle", np.abs(np.expm1(g)).max(), 1e-12))

    worst = 0.0
    tried = 0
    while tried < 60:
        tv = float(rng.uniform(-50.0, 50.0))
        ev = float(rng.uniform(-5.0, 5.0))
        try:
            worst = max(worst, reflection_defect(MirrorPair(tv, ev), cfg))
        except PoleError:
            continue
        tried += 1
    checks.append(_check("reflection_identity", worst, 1e-12))

    for delta in (1e-3, 1e-5):
        worst = max(reciprocity_defect(n, delta, cfg) for n in range(3))
        checks.append(_check(f"reciprocity_delta_{delta:g}", worst / delta, 1.0))

    h = 1e-3
    worst_bad_signs = 0
    for sig_lo, sig_hi, t_lo, t_hi in (
        (-5.0, 0.45, 0.2, 50.0),
        (0.55, 6.0, 0.2, 50.0),
        (-5.0, 0.45, -50.0, -0.2),
        (0.55, 6.0, -50.0, -0.2),
    ):
        sig = rng.uniform(sig_lo, sig_hi, 100)
        tv = rng.uniform(t_lo, t_hi, 100)
        pts = sig + 1j * tv
        fd = (logabsx_many(pts + 1j * h, cfg) - logabsx_many(pts - 1j * h, cfg)) / (2 * h)
        expected = np.sign(tv * (0.5 - sig))
        worst_bad_signs += int((np.sign(fd) != expected).sum())
    checks.append(_check("monotone_quadrant_signs", float(worst_bad_signs), 1.0))

    worst = 0.0
    for _ in range(20):
        sv = complex(rng.uniform(-4.0, 5.0), rng.uniform(-20.0, 20.0))
        if abs(sv.real - 0.5) < 0.05 or abs(sv.imag) < 0.05:
            continue
        series = dlogabsx_dt(sv, 300_000, cfg)
        fd = (logabsx_many(sv + 1j * h, cfg) - logabsx_many(sv - 1j * h, cfg)) / (2 * h)
        worst = max(worst, abs(series - fd) / max(abs(fd), 1e-12))
    checks.append(_check("dlogabsx_dt_vs_fd", worst, 1e-6))

    worst = 0.0
    for _ in range(20):
        sv = complex(rng.uniform(-4.0, 5.0), rng.uniform(-20.0, 20.0))
        series = dsigma_logabsx(sv, cfg)
        fd = (logabsx_many(sv + cfg.fd_step, cfg) - logabsx_many(sv - cfg.fd_step, cfg)) / (
            2 * cfg.fd_step
        )
        worst = max(worst, abs(series - fd) / max(abs(fd), 1e-12))
    checks.append(_check("dsigma_logabsx_vs_fd", worst, 1e-6))

    worst = 0.0
    h_gm = 3e-4  # slow 1/(4 n_max) series tail needs the FD extra-tight
    for which in ("upper", "lower"):
        for _ in range(3):
            sv = complex(rng.uniform(-2.0, 3.0), rng.uniform(1.0, 8.0))
            series = gamma_modulus_dt(sv, which, 5_000_000, cfg)
            arg = 1.0 - 0.5 * sv if which == "upper" else 0.5 * (1.0 + sv)
            sign = 1.0 if which == "lower" else -1.0
            up = math.exp(lgamma(arg + 0.5j * h_gm * sign, cfg).real)
            dn = math.exp(lgamma(arg - 0.5j * h_gm * sign, cfg).real)
            fd = (up - dn) / (2 * h_gm)
            worst = max(worst, abs(series - fd) / max(abs(fd), 1e-12))
    checks.append(_check("gamma_modulus_dt_vs_fd", worst, 1e-6))

    s = _random_points(rng, 40, -6.0, 7.0, -40.0, 40.0, avoid=_x_pole_points(-6.0, 7.0))
    direct = np.array([x_of(v, cfg).value.z for v in s])
    conj = np.array([x_of(v.conjugate(), cfg).value.z for v in s])
    checks.append(
        _check(
            "x_conjugate",
            (np.abs(conj - np.conj(direct)) / (np.abs(direct) + 1.0)).max(),
            1e-12,
        )
    )

    return SuiteResult("xratio", tuple(checks))


# ----------------------------------------------------------------------
# analysis
# ----------------------------------------------------------------------


def _suite_analysis(cfg: EvalSettings, worker_map=None) -> SuiteResult:
    checks = []

    polys = trace_unit_curve(Rect(-2.0, 3.0, -2.2, 2.2), 0.02, cfg, worker_map=worker_map)
    verts = np.array([v.z for p in polys for v in p.vertices])
    g = logabsx_many(verts, cfg)
    checks.append(_check("curve_soundness", np.abs(g).max(), 1e-10))
    mirrored = 1.0 - np.conj(verts)
    sym = np.abs(verts[None, :] - mirrored[:, None]).min(axis=1).max()
    checks.append(_check("curve_symmetry", sym, 2 * 0.02))

    kd = kappa_detail(cfg)
    checks.append(_check("kappa_two_methods", kd.agreement, 1e-6))
    checks.append(_check("kappa_reference_value", abs(kd.trace_value - 1.21164), 1e-3))

    worst_dist = 0.0
    worst_res = 0.0
    for seed in _KNOWN_OFF_LINE_ZEROS:
        rec = refine_zero(seed, cfg)
        worst_dist = max(worst_dist, abs(rec.location.z - seed))
        worst_res = max(worst_res, rec.residual)
    checks.append(_check("known_zero_distance", worst_dist, 1e-4))
    checks.append(_check("known_zero_residual", worst_res, 1e-8))

    records = survey_zeros(Rect(0.0, 1.0, 0.0, 120.0), cfg, worker_map=worker_map)
    pairing = max(rec.paired_residual for rec in records)
    checks.append(_check("pairing", pairing, 1e-6))
    off = [rec for rec in records if not rec.on_line]
    checks.append(_check("off_line_zero_count_defect", abs(len(off) - 4.0), 0.5))
    checks.append(_check("strip_zero_count_defect", abs(len(records) - 68.0), 0.5))

    return SuiteResult("analysis", tuple(checks))


_SUITES = {
    "specfun": _suite_specfun,
    "dhfun": _suite_dhfun,
    "xratio": _suite_xratio,
    "analysis": _suite_analysis,
}


def run_suite(name: str, settings: EvalSettings | None = None, worker_map=None) -> SuiteResult:
    """Run one named invariant suite and return its check results."""
    cfg = EvalSettings() if settings is None else settings
    if name not in _SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {SUITE_NAMES} or 'all'")
    return _SUITES[name](cfg, worker_map)


def run_suites(names, settings: EvalSettings | None = None, worker_map=None) -> list[SuiteResult]:
    """Run several suites ('all' expands to every suite, in order)."""
    expanded: list[str] = []
    for n in names:
        if n == "all":
            expanded.extend(SUITE_NAMES)
        else:
            expanded.append(n)
    return [run_suite(n, settings, worker_map) for n in expanded]
