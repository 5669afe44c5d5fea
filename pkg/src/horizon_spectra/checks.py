"""Randomized invariant suite over the whole pipeline.

Each check draws parameters from documented distributions, exercises one
structural property end to end, and reports pass/fail with a short detail
string.  The draw seed comes from the HORIZON_SPECTRA_SEED environment
variable (default 0) unless given explicitly, so repeated runs see the
same parameter stream.

Draw ranges: the cosmological constant is log-uniform on [0.1, 10]; the
charge satisfies Q^2 lam <= 1/4; the mass sits strictly between the lower
mass bound and the window top.  Draws whose inner horizon pair is complex
are skipped, not failed: the mass window and lower bound do not by
themselves force four real roots.
"""

import math
import os
import zlib

import numpy as np

from . import areacharge
from .errors import NotAdmissible
from .geometry import CrossSectionMetric, cross_section
from .params import Parameters
from .roots import (
    HorizonPolynomial,
    critical_structure,
    eval_poly,
    isolate_roots,
    mass_hypothesis_threshold,
    mass_window,
)
from .spectrum import ls_eigenvalue, sign_regions

ENV_SEED = "HORIZON_SPECTRA_SEED"


def suite_seed(seed=None) -> int:
    if seed is not None:
        return int(seed)
    return int(os.environ.get(ENV_SEED, "0"))


def _draw_lam(rng) -> float:
    return float(10.0 ** rng.uniform(-1.0, 1.0))


def _draw_charge(rng, lam) -> float:
    return float(math.sqrt(rng.uniform(0.0, 0.25) / lam))


def draw_candidate(rng):
    """One (lam, q, m) draw with m inside the window and above the lower bound."""
    lam = _draw_lam(rng)
    q = _draw_charge(rng, lam)
    top = mass_window(lam, q).m_max
    low = mass_hypothesis_threshold(lam, q)
    m = float(rng.uniform(low, top))
    if not (low < m < top):
        m = 0.5 * (low + top)
    return lam, q, m


def draw_admissible(rng, max_tries: int = 400):
    """Admissible (params, horizon_set) pair; skips complex-inner-pair draws."""
    for _ in range(max_tries):
        lam, q, m = draw_candidate(rng)
        params = Parameters(lam=lam, m=m, q=q, a=0.0)
        try:
            return params, isolate_roots(params)
        except NotAdmissible:
            continue
    raise RuntimeError("failed to draw admissible parameters")


def _check_root_structure(rng, draws):
    interlacing_failures = 0
    for _ in range(draws):
        params, hs = draw_admissible(rng)
        roots = hs.roots
        if list(roots) != sorted(roots):
            return False, "roots not sorted"
        scale = max(1.0, abs(hs.r_c))
        if abs(sum(roots)) > 1e-9 * scale:
            return False, "root sum violates the zero-cubic identity"
        crit = critical_structure(params)
        ok = (
            hs.r_mm < crit.r1 < crit.rhat1 < 0.0 < hs.r_minus < crit.r2
            < hs.r_plus < crit.r3 < hs.r_c
            and crit.r2 < crit.rhat2 < crit.r3
        )
        if not ok:
            interlacing_failures += 1
    if interlacing_failures:
        return False, "%d interlacing failures" % interlacing_failures
    return True, "%d admissible draws" % draws


def _check_sign_pattern(rng, draws):
    for _ in range(draws):
        params, hs = draw_admissible(rng)
        poly = HorizonPolynomial.from_params(params)
        inner = np.linspace(hs.r_minus, hs.r_plus, 102)[1:-1]
        outer = np.linspace(hs.r_plus, hs.r_c, 102)[1:-1]
        span = hs.r_c - hs.r_plus
        beyond = np.linspace(hs.r_c, hs.r_c + span, 102)[1:-1]
        if not all(eval_poly(poly, float(r)) < 0.0 for r in inner):
            return False, "D not negative between the black-hole horizons"
        if not all(eval_poly(poly, float(r)) > 0.0 for r in outer):
            return False, "D not positive between outer and cosmological horizon"
        if not all(eval_poly(poly, float(r)) < 0.0 for r in beyond):
            return False, "D not negative beyond the cosmological horizon"
    return True, "100 interior samples per region, %d draws" % draws


def _check_derivative_decreasing(rng, draws):
    for _ in range(draws):
        params, hs = draw_admissible(rng)
        poly = HorizonPolynomial.from_params(params)
        crit = critical_structure(params)
        span = hs.r_c - crit.rhat2
        samples = np.linspace(crit.rhat2, hs.r_c + span, 40)
        delta = 1e-6 * max(1.0, hs.r_c)
        for r in samples:
            slope = (eval_poly(poly, float(r) + delta, 1) - eval_poly(poly, float(r), 1)) / delta
            if not slope < 0.0:
                return False, "D' not strictly decreasing beyond the inflection radius"
    return True, "finite-difference slopes negative, %d draws" % draws


def _check_window_identities(rng, draws):
    worst = 0.0
    for _ in range(draws):
        lam = _draw_lam(rng)
        q = _draw_charge(rng, lam)
        s = math.sqrt(1.0 - 4.0 * lam * q * q)
        m_max = mass_window(lam, q).m_max
        # product form of the window top
        alt = (1.0 / 3.0) * math.sqrt((1.0 + s) / (2.0 * lam)) * (2.0 - s)
        worst = max(worst, abs(m_max * m_max - alt * alt) / max(1e-300, m_max * m_max))
        # rationalized form of the window top
        alt2 = ((1.0 + s) * (5.0 - s) + 12.0 * lam * q * q) / (24.0 * lam) \
            / math.sqrt((1.0 + s) / (2.0 * lam))
        worst = max(worst, abs(m_max - alt2) / max(1e-300, m_max))
        if not mass_hypothesis_threshold(lam, q) < m_max:
            return False, "lower mass bound not below the window top"
        if worst > 1e-12:
            return False, "window identity relative error %.3e" % worst
    return True, "max relative error %.3e over %d draws" % (worst, draws)


def _check_sign_tables(rng, draws):
    for _ in range(draws):
        lam = _draw_lam(rng)
        q = _draw_charge(rng, lam)
        regions = sign_regions(lam, q)
        x = float(rng.uniform(1e-6, 2.0 * regions.v_plus))
        boundaries = (regions.u_minus, regions.u_plus, regions.v_minus, regions.v_plus)
        if min(abs(x - b) for b in boundaries) < 1e-9 * max(1.0, x):
            continue
        r0 = math.sqrt(x)
        lam1 = ls_eigenvalue(r0, lam, q, 0)
        lam2 = ls_eigenvalue(r0, lam, q, 1)
        outside_u = x < regions.u_minus or x > regions.u_plus
        outside_v = x < regions.v_minus or x > regions.v_plus
        if (lam1 < 0.0) != outside_u:
            return False, "principal-eigenvalue sign disagrees with the u-regions"
        if (lam2 < 0.0) != outside_v:
            return False, "second-eigenvalue sign disagrees with the v-regions"
        if not (regions.v_minus < regions.u_minus < regions.u_plus < regions.v_plus):
            return False, "u-roots not nested inside v-roots"
        lo, hi = regions.interval
        if not lo < hi:
            return False, "empty radius band"
    return True, "%d draws against direct evaluation" % draws


def _check_radius_band(rng, draws):
    for _ in range(draws):
        params, hs = draw_admissible(rng)
        regions = sign_regions(params.lam, params.q)
        x = hs.r_c * hs.r_c
        if not (regions.u_plus < x < regions.v_plus):
            return False, "cosmological radius squared outside (u_plus, v_plus)"
        poly = HorizonPolynomial.from_params(params)
        edge = math.sqrt(regions.u_plus)
        if not eval_poly(poly, edge, 1) > 0.0:
            return False, "D' not positive at the band's lower edge"
        if not eval_poly(poly, edge) > 0.0:
            return False, "D not positive at the band's lower edge"
    return True, "%d draws" % draws


def _check_margin_identity(rng, draws):
    worst = 0.0
    for _ in range(draws):
        params, _ = draw_admissible(rng)
        try:
            cc = areacharge.horizon_crosscheck(params)
        except ArithmeticError as exc:
            return False, str(exc)
        worst = max(worst, abs(cc.margin_direct - cc.margin_spectral))
    if worst > 1e-10 * 12.0 * math.pi:
        return False, "margin route disagreement %.3e" % worst
    return True, "max |route difference| %.3e over %d draws" % (worst, draws)


def _check_remark_implication(rng, draws):
    holders = 0
    for _ in range(draws):
        lam = _draw_lam(rng)
        charge = float(rng.uniform(0.0, 2.0 * 1.5 / math.sqrt(lam)))
        area = float(10.0 ** rng.uniform(-2.0, 2.0) / lam)
        report = areacharge.check(lam, area, charge)
        if not report.holds:
            continue
        holders += 1
        if not report.charge_bound_ok:
            return False, "margin >= 0 without the charge bound"
        if report.area_window is None:
            return False, "margin >= 0 without a real area window"
        low, high = report.area_window
        pad = 1e-12 * max(1.0, high)
        if not (low - pad <= area <= high + pad):
            return False, "margin >= 0 with area outside the window"
    return True, "%d of %d draws satisfied the inequality" % (holders, draws)


def _check_margin_shape(rng, draws):
    for _ in range(draws):
        lam = _draw_lam(rng)
        q = _draw_charge(rng, lam)
        window = areacharge.check(lam, 4.0 * math.pi / lam, q).area_window
        low, high = window
        area = float(rng.uniform(low + 0.1 * (high - low), high - 0.1 * (high - low)))
        c1 = float(rng.uniform(0.0, q)) if q > 0 else 0.0
        c2 = c1 + max(1e-6, q)
        if not areacharge.check(lam, area, c2).margin < areacharge.check(lam, area, c1).margin:
            return False, "margin not strictly decreasing in |charge|"
        step = 0.2 * (high - low)
        mids = [area - step, area, area + step]
        if mids[0] <= 0:
            continue
        margins = [areacharge.check(lam, x, q).margin for x in mids]
        if margins[1] + 1e-12 * 12.0 * math.pi < 0.5 * (margins[0] + margins[2]):
            return False, "midpoint margin below the endpoint average"
    return True, "monotonicity and midpoint concavity, %d draws" % draws


def _check_geometry_area(rng, draws):
    for _ in range(draws):
        for _ in range(100):
            params0, _ = draw_admissible(rng)
            a = float(rng.uniform(0.01, 0.2))
            params = Parameters(lam=params0.lam, m=params0.m, q=params0.q, a=a)
            try:
                hs = isolate_roots(params)
                break
            except NotAdmissible:
                continue
        else:
            return False, "could not draw an admissible rotating configuration"
        metric = cross_section(params, hs.r_c)
        closed = metric.area
        quad = metric.area_by_quadrature(80)
        if abs(closed - quad) > 1e-10 * closed:
            return False, "quadrature area off by %.3e" % abs(closed - quad)
        for theta in (1e-4, math.pi - 1e-4):
            pole = theta if theta < 1.0 else math.pi - theta
            ratio = metric.g_phi_phi(theta) / (metric.g_theta_theta(theta) * pole * pole)
            if abs(ratio - 1.0) > 1e-8:
                return False, "pole ratio %.3e away from 1" % abs(ratio - 1.0)
    return True, "quadrature and pole regularity, %d rotating draws" % draws


def _check_metric_continuity(rng, draws):
    theta = np.linspace(0.05, math.pi - 0.05, 200)
    for _ in range(draws):
        params, hs = draw_admissible(rng)
        r0 = hs.r_c
        base = CrossSectionMetric(r0=r0, a=0.0, lam=params.lam)
        sups = []
        for a in (0.02, 0.04):
            pert = CrossSectionMetric(r0=r0, a=a, lam=params.lam)
            sups.append(
                float(np.max(np.abs(pert.g_theta_theta(theta) - base.g_theta_theta(theta))))
            )
        ratio = sups[1] / sups[0]
        if not (3.5 <= ratio <= 4.5):
            return False, "doubling the rotation scaled the deviation by %.3f" % ratio
    return True, "quadratic smallness of the metric deviation, %d draws" % draws


CHECKS = (
    ("root_structure", _check_root_structure, 200),
    ("quartic_sign_pattern", _check_sign_pattern, 25),
    ("derivative_decreasing", _check_derivative_decreasing, 50),
    ("mass_window_identities", _check_window_identities, 1000),
    ("spectrum_sign_tables", _check_sign_tables, 2000),
    ("cosmological_radius_band", _check_radius_band, 300),
    ("margin_spectrum_identity", _check_margin_identity, 300),
    ("ac_bound_implications", _check_remark_implication, 2000),
    ("margin_shape", _check_margin_shape, 200),
    ("rotating_area_quadrature", _check_geometry_area, 10),
    ("metric_continuity", _check_metric_continuity, 20),
)


def run_suite(seed=None, scale: float = 1.0) -> dict:
    """Run every invariant check; returns {name: {passed, detail}}.

    ``scale`` multiplies each check's default draw count (floored at 1),
    letting quick smoke runs and long soak runs share one code path.
    """
    results = {}
    for name, func, draws in CHECKS:
        rng = np.random.default_rng(suite_seed(seed) + zlib.crc32(name.encode()))
        count = max(1, int(draws * scale))
        try:
            passed, detail = func(rng, count)
        except Exception as exc:  # surface the failure, never crash the suite
            passed, detail = False, "raised %s: %s" % (type(exc).__name__, exc)
        results[name] = {"passed": bool(passed), "detail": detail}
    return results
