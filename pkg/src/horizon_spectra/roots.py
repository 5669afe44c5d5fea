"""Horizon quartic: evaluation, guaranteed real-root isolation, admissibility.

The radial horizon function of a rotating charged de Sitter spacetime,

    D(r) = (r^2 + a^2)(1 - lam r^2 / 3) - 2 m r + q^2,

is a downward quartic with zero cubic coefficient, so its four roots sum to
zero.  Real roots are bracketed between the closed-form critical points of D
(the critical points solve an explicit cubic), then isolated by bisection and
polished with a few Newton steps.  No linear algebra is involved, which keeps
the per-point cost in the microsecond range for parameter scans.
"""

import math
from dataclasses import dataclass

from .errors import (
    ChargeTooLarge,
    NotAdmissible,
    MASS_OUT_OF_WINDOW,
    ORDERING_VIOLATION,
    ROOTS_NOT_DISTINCT,
)
from .params import Parameters

# classification tags for the four sorted roots
TAG_NEGATIVE = "negative"
TAG_CAUCHY = "cauchy"
TAG_KILLING = "killing"
TAG_COSMOLOGICAL = "cosmological"

REGIME_CHARGED = "charged"
REGIME_ZERO_CHARGE_ROTATING = "zero_charge_rotating"
REGIME_ZERO_CHARGE_STATIC = "zero_charge_static_boundary"

# roots closer than DISTINCT_RTOL * max(1, |r_c|) count as coincident
DISTINCT_RTOL = 1e-9
# bisection interval tolerance, relative to bracket scale
BISECT_RTOL = 1e-13
# |D(root)| must not exceed RESIDUAL_RTOL * max(1, lam/3 * root^4)
RESIDUAL_RTOL = 1e-12


@dataclass(frozen=True)
class HorizonPolynomial:
    """Coefficients of D(r) in descending degree; the cubic term is zero."""

    c4: float
    c2: float
    c1: float
    c0: float

    @classmethod
    def from_params(cls, params: Parameters) -> "HorizonPolynomial":
        lam, m, q, a = params.lam, params.m, params.q, params.a
        return cls(
            c4=-lam / 3.0,
            c2=1.0 - lam * a * a / 3.0,
            c1=-2.0 * m,
            c0=a * a + q * q,
        )

    @property
    def coefficients(self):
        """Descending-degree coefficient tuple (c4, 0, c2, c1, c0)."""
        return (self.c4, 0.0, self.c2, self.c1, self.c0)

    def eval(self, r: float, deriv: int = 0) -> float:
        """Horner value of D, D' or D'' at ``r``."""
        return eval_poly(self, r, deriv)


def eval_poly(p: HorizonPolynomial, r: float, deriv: int = 0) -> float:
    """Evaluate the horizon quartic or one of its first two derivatives."""
    rr = r * r
    if deriv == 0:
        return (p.c4 * rr + p.c2) * rr + p.c1 * r + p.c0
    if deriv == 1:
        return (4.0 * p.c4 * rr + 2.0 * p.c2) * r + p.c1
    if deriv == 2:
        return 12.0 * p.c4 * rr + 2.0 * p.c2
    raise ValueError("deriv must be 0, 1 or 2")


@dataclass(frozen=True)
class CriticalStructure:
    """Real critical points r1 < r2 < r3 of D and inflection radii.

    The inflection radii solve D'' = 0: rhat = +-sqrt((1 - lam a^2/3)/(2 lam)).
    """

    r1: float
    r2: float
    r3: float
    rhat1: float
    rhat2: float


@dataclass(frozen=True)
class HorizonSet:
    """The four classified real roots of the horizon quartic.

    ``admissible`` is True only for the strict ordering
    r_mm < 0 < r_minus < r_plus < r_c with all pairwise gaps above the
    distinctness gate.  The zero-charge static case (q = 0, a = 0) carries an
    exact root at r = 0 and is returned as a classified boundary set with
    ``admissible`` False.
    """

    r_mm: float
    r_minus: float
    r_plus: float
    r_c: float
    min_gap: float
    admissible: bool
    classification: tuple
    residuals: tuple
    regime: str

    @property
    def roots(self):
        return (self.r_mm, self.r_minus, self.r_plus, self.r_c)


def _cubic_critical_points(p: HorizonPolynomial):
    """Real roots of D'(r) = 4 c4 r^3 + 2 c2 r + c1, ascending.

    Solved in closed form (trigonometric branch for three real roots,
    Cardano for one), then tightened by two Newton steps apiece.
    """
    # depressed form t^3 + pp t + ss = 0
    pp = p.c2 / (2.0 * p.c4)
    ss = p.c1 / (4.0 * p.c4)
    roots = []
    if pp < 0.0:
        disc = -4.0 * pp * pp * pp - 27.0 * ss * ss
        if disc > 0.0:
            amp = 2.0 * math.sqrt(-pp / 3.0)
            arg = 3.0 * ss / (pp * amp)
            arg = min(1.0, max(-1.0, arg))
            phi = math.acos(arg)
            roots = [
                amp * math.cos((phi - 2.0 * math.pi * k) / 3.0) for k in (0, 1, 2)
            ]
        # disc <= 0 with pp < 0: repeated or single real critical point;
        # fall through to the single-root formula below
    if not roots:
        half = -ss / 2.0
        rad = math.sqrt(max(0.0, ss * ss / 4.0 + pp * pp * pp / 27.0))
        roots = [math.copysign(abs(half + rad) ** (1.0 / 3.0), half + rad)
                 + math.copysign(abs(half - rad) ** (1.0 / 3.0), half - rad)]
    roots.sort()
    polished = []
    for t in roots:
        for _ in range(2):
            slope = eval_poly(p, t, 2)
            if slope != 0.0:
                t = t - eval_poly(p, t, 1) / slope
        polished.append(t)
    polished.sort()
    return polished


def critical_structure(params: Parameters) -> CriticalStructure:
    """Closed-form critical points and inflection radii of the quartic.

    Raises NotAdmissible when D has fewer than three real critical points,
    since the four-root structure is then impossible.
    """
    p = HorizonPolynomial.from_params(params)
    crits = _cubic_critical_points(p)
    if len(crits) != 3:
        raise NotAdmissible(
            "horizon quartic has a single critical point; at most two real roots",
            reason=ORDERING_VIOLATION,
        )
    head = 1.0 - params.lam * params.a * params.a / 3.0
    if head <= 0.0:
        raise NotAdmissible(
            "no real inflection radii; rotation too large for this cosmological constant",
            reason=ORDERING_VIOLATION,
        )
    rhat = math.sqrt(head / (2.0 * params.lam))
    return CriticalStructure(crits[0], crits[1], crits[2], -rhat, rhat)


def _bisect(p: HorizonPolynomial, lo: float, hi: float, lo_positive: bool) -> float:
    c4, c2, c1, c0 = p.c4, p.c2, p.c1, p.c0
    tol = BISECT_RTOL * max(1.0, abs(lo), abs(hi))
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        rr = mid * mid
        v = (c4 * rr + c2) * rr + c1 * mid + c0
        if (v > 0.0) == lo_positive:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _newton_polish(p: HorizonPolynomial, r: float, lo: float, hi: float) -> float:
    c4, c2, c1, c0 = p.c4, p.c2, p.c1, p.c0
    for _ in range(5):
        rr = r * r
        v = (c4 * rr + c2) * rr + c1 * r + c0
        d = (4.0 * c4 * rr + 2.0 * c2) * r + c1
        if d == 0.0:
            break
        rn = r - v / d
        if not (lo <= rn <= hi):
            break
        if rn == r:
            break
        r = rn
    return r


def _expand_bracket(p: HorizonPolynomial, start: float, direction: float, want_positive: bool):
    """March from ``start`` in ``direction`` until D has the wanted sign."""
    step = max(1.0, abs(start)) * 0.5
    x = start
    for _ in range(200):
        x = x + direction * step
        v = eval_poly(p, x)
        if (v > 0.0) == want_positive and v != 0.0:
            return x
        step *= 2.0
    raise ArithmeticError("failed to bracket a horizon root")


def residual_tolerance(lam: float, root: float) -> float:
    """Largest acceptable |D(r)| for r to count as a horizon radius."""
    return RESIDUAL_RTOL * max(1.0, lam / 3.0 * root ** 4)


def _check_residuals(params: Parameters, roots):
    p = HorizonPolynomial.from_params(params)
    residuals = []
    for r in roots:
        res = eval_poly(p, r)
        if abs(res) > residual_tolerance(params.lam, r):
            raise ArithmeticError(
                "root polish failed the residual gate: |D(%r)| = %.3e" % (r, abs(res))
            )
        residuals.append(res)
    return tuple(residuals)


def _zero_charge_static_set(params: Parameters) -> HorizonSet:
    """q = 0, a = 0: deflate the exact root r = 0 and solve the cubic factor.

    D(r) = r g(r) with g(r) = -(lam/3) r^3 + r - 2m. The cubic's critical
    points are +-1/sqrt(lam); three real roots require g < 0 < g at them,
    equivalently m < 1/(3 sqrt(lam)).
    """
    lam, m = params.lam, params.m
    rs = 1.0 / math.sqrt(lam)

    def g(r):
        return (-(lam / 3.0) * r * r + 1.0) * r - 2.0 * m

    if not (g(rs) > 0.0):
        raise NotAdmissible(
            "mass too large for a zero-charge static horizon pair",
            reason=MASS_OUT_OF_WINDOW,
        )

    def bisect_g(lo, hi, lo_positive):
        tol = BISECT_RTOL * max(1.0, abs(lo), abs(hi))
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if (g(mid) > 0.0) == lo_positive:
                lo = mid
            else:
                hi = mid
        r = 0.5 * (lo + hi)
        for _ in range(5):
            v = g(r)
            d = -lam * r * r + 1.0
            if d == 0.0:
                break
            rn = r - v / d
            if not (lo <= rn <= hi) or rn == r:
                break
            r = rn
        return r

    lo = -rs
    while g(lo) <= 0.0:
        lo *= 2.0
    r_mm = bisect_g(lo, -rs, True)
    r_plus = bisect_g(0.0, rs, False)  # g(0) = -2m < 0 < g(rs)
    hi = 2.0 * rs
    while g(hi) >= 0.0:
        hi *= 2.0
    r_c = bisect_g(rs, hi, True)

    roots = (r_mm, 0.0, r_plus, r_c)
    residuals = _check_residuals(params, roots)
    gaps = [roots[i + 1] - roots[i] for i in range(3)]
    return HorizonSet(
        r_mm=r_mm,
        r_minus=0.0,
        r_plus=r_plus,
        r_c=r_c,
        min_gap=min(gaps),
        admissible=False,
        classification=(TAG_NEGATIVE, TAG_CAUCHY, TAG_KILLING, TAG_COSMOLOGICAL),
        residuals=residuals,
        regime=REGIME_ZERO_CHARGE_STATIC,
    )


def isolate_roots(params: Parameters) -> HorizonSet:
    """Find and classify all real roots of the horizon quartic.

    Returns a HorizonSet when four real roots exist (including the
    zero-charge static boundary where one root is exactly zero).  Raises
    NotAdmissible when the quartic has fewer than four real roots or when
    two roots fall below the distinctness gate.
    """
    if params.q == 0.0 and params.a == 0.0:
        return _zero_charge_static_set(params)

    p = HorizonPolynomial.from_params(params)
    crits = _cubic_critical_points(p)
    if len(crits) != 3:
        raise NotAdmissible(
            "single critical point: at most two real horizon radii",
            reason=ORDERING_VIOLATION,
        )
    t1, t2, t3 = crits
    v1, v2, v3 = (eval_poly(p, t) for t in crits)

    if v3 <= 0.0:
        raise NotAdmissible(
            "outer root pair complex or degenerate (mass too large)",
            reason=MASS_OUT_OF_WINDOW,
        )
    if v2 >= 0.0:
        if abs(v2) <= 1e-12 * max(1.0, abs(v1), abs(v3)):
            raise NotAdmissible(
                "inner root pair degenerate at the critical radius",
                reason=ROOTS_NOT_DISTINCT,
            )
        raise NotAdmissible(
            "inner root pair complex; four-root sign pattern unattainable",
            reason=ORDERING_VIOLATION,
        )
    if v1 <= 0.0:
        raise NotAdmissible(
            "negative-branch maximum not positive; sign pattern violated",
            reason=ORDERING_VIOLATION,
        )

    lo = _expand_bracket(p, t1, -1.0, False)
    hi = _expand_bracket(p, t3, +1.0, False)
    brackets = (
        (lo, t1, False),
        (t1, t2, True),
        (t2, t3, False),
        (t3, hi, True),
    )
    roots = []
    for blo, bhi, lo_pos in brackets:
        r = _bisect(p, blo, bhi, lo_pos)
        roots.append(_newton_polish(p, r, blo, bhi))
    roots.sort()

    scale = max(1.0, abs(roots[-1]))
    gaps = [roots[i + 1] - roots[i] for i in range(3)]
    if min(gaps) <= DISTINCT_RTOL * scale:
        raise NotAdmissible(
            "two horizon radii closer than the distinctness gate",
            reason=ROOTS_NOT_DISTINCT,
        )
    if not (roots[0] < 0.0 < roots[1] < roots[2] < roots[3]):
        raise NotAdmissible(
            "roots violate the required ordering r_mm < 0 < r_minus < r_plus < r_c",
            reason=ORDERING_VIOLATION,
        )
    if abs(sum(roots)) > 1e-9 * scale:
        raise ArithmeticError("root sum violates the zero-cubic-coefficient identity")

    residuals = _check_residuals(params, roots)
    regime = REGIME_CHARGED if params.q > 0.0 else REGIME_ZERO_CHARGE_ROTATING
    return HorizonSet(
        r_mm=roots[0],
        r_minus=roots[1],
        r_plus=roots[2],
        r_c=roots[3],
        min_gap=min(gaps),
        admissible=True,
        classification=(TAG_NEGATIVE, TAG_CAUCHY, TAG_KILLING, TAG_COSMOLOGICAL),
        residuals=residuals,
        regime=regime,
    )


@dataclass(frozen=True)
class MassWindow:
    """Open mass interval (0, m_max) guaranteeing the four-root structure
    in the non-rotating case."""

    lam: float
    charge: float
    m_max: float

    def contains(self, m: float) -> bool:
        return 0.0 < m < self.m_max


def mass_window(lam: float, charge: float) -> MassWindow:
    """Upper mass bound m_max with
    m_max^2 = (1/(18 lam)) [1 + 12 Q^2 lam + (1 - 4 Q^2 lam)^{3/2}].

    Defined only for Q^2 lam <= 1/4; beyond that the square root turns
    imaginary and ChargeTooLarge is raised.
    """
    if lam <= 0:
        raise ValueError("cosmological constant must be positive")
    s = 1.0 - 4.0 * charge * charge * lam
    if s < 0.0:
        raise ChargeTooLarge(
            "charge bound Q^2 lam <= 1/4 violated: Q^2 lam = %r"
            % (charge * charge * lam,)
        )
    m_max_sq = (1.0 + 12.0 * charge * charge * lam + s ** 1.5) / (18.0 * lam)
    return MassWindow(lam=lam, charge=charge, m_max=math.sqrt(m_max_sq))


def mass_hypothesis_threshold(lam: float, charge: float) -> float:
    """Strict lower mass bound (2 Q^2 / 3) ((3 + sqrt(9 - 4 lam Q^2))/(2 lam))^{-1/2}
    that forces the second stability eigenvalue positive at the cosmological
    horizon."""
    s = 9.0 - 4.0 * lam * charge * charge
    if s < 0.0:
        raise ValueError("requires 9 - 4 lam Q^2 >= 0")
    x = (3.0 + math.sqrt(s)) / (2.0 * lam)
    return (2.0 * charge * charge / 3.0) / math.sqrt(x)


def mass_hypothesis_holds(lam: float, charge: float, m: float):
    """Strict-inequality verdict for m against the lower mass bound.

    Returns (holds, threshold); equality counts as a failure.
    """
    threshold = mass_hypothesis_threshold(lam, charge)
    return (threshold < m, threshold)
