"""Closed-form stability spectrum of the non-rotating horizon cross-section.

For a static charged de Sitter horizon of radius r0 the symmetrized
stability operator acts on the round sphere and diagonalizes on spherical
harmonics, giving the explicit ladder

    lambda_{k+1} = k (k + 1) / r0^2 + 1 / r0^2 - lam - Q^2 / r0^4,

with multiplicity 2k + 1 for mode k.  This module evaluates the ladder,
counts the Morse index, classifies stability and degeneracy, and provides
the quadratic sign functions u(x) = -lam x^2 + x - Q^2 and
v(x) = -lam x^2 + 3x - Q^2 (x = r0^2) whose roots delimit the sign changes
of the first two eigenvalues.
"""

import math
from dataclasses import dataclass

from .errors import ChargeTooLarge, NotAPositiveRoot

# a mode count this high on the negative ladder means non-finite input
K_CAP = 64
# |lambda| below ZERO_RTOL * max(1, lambda2 - lambda1) classifies as zero
ZERO_RTOL = 1e-10


def multiplicity(k: int) -> int:
    """Dimension 2k + 1 of the spherical-harmonic eigenspace of mode k."""
    return 2 * k + 1


def ls_eigenvalue(r0: float, lam: float, charge: float, k: int) -> float:
    """Eigenvalue of mode k of the symmetrized stability operator at radius r0."""
    if not (r0 > 0.0):
        raise ValueError("horizon radius must be positive")
    if k < 0:
        raise ValueError("mode index must be nonnegative")
    x = r0 * r0
    return (k * (k + 1) + 1) / x - lam - charge * charge / (x * x)


@dataclass(frozen=True)
class SpectrumReport:
    """Spectral summary of the symmetrized stability operator at radius r0.

    ``eigenvalues`` lists (value, multiplicity, mode) triples in ascending
    mode order, covering every non-positive mode plus the first strictly
    positive one.  ``index`` counts negative eigenvalues with multiplicity.
    ``unstable_full`` records that a negative principal eigenvalue of the
    symmetrized operator forces instability of the full (non-self-adjoint)
    operator, whose principal eigenvalue it bounds from above.
    """

    r0: float
    lam: float
    charge: float
    eigenvalues: tuple
    lambda1: float
    lambda2: float
    index: int
    stable_symmetrized: bool
    degenerate: bool
    unstable_full: bool


def index_and_flags(r0: float, lam: float, charge: float, k_max: int = None) -> SpectrumReport:
    """Enumerate the eigenvalue ladder and classify stability.

    The ladder is strictly increasing in the mode index with slope at least
    2 / r0^2, so enumeration stops at the first strictly positive mode (or at
    ``k_max`` if that is given and larger).  A ladder still non-positive at
    mode 64 can only come from non-finite input and raises ValueError.
    """
    lam1 = ls_eigenvalue(r0, lam, charge, 0)
    lam2 = ls_eigenvalue(r0, lam, charge, 1)
    if not (math.isfinite(lam1) and math.isfinite(lam2)):
        raise ValueError("non-finite eigenvalue; check parameters")
    tol = ZERO_RTOL * max(1.0, lam2 - lam1)

    modes = []
    k = 0
    while True:
        val = ls_eigenvalue(r0, lam, charge, k)
        if not math.isfinite(val):
            raise ValueError("non-finite eigenvalue; check parameters")
        modes.append((val, multiplicity(k), k))
        done_ladder = val > tol and k >= 1
        done_extra = k_max is None or k >= k_max
        if done_ladder and done_extra:
            break
        k += 1
        if k > K_CAP:
            raise ValueError("mode cap exceeded while the ladder is still non-positive")

    index = sum(mult for val, mult, _ in modes if val < -tol)
    degenerate = any(abs(val) <= tol for val, _, _ in modes)
    return SpectrumReport(
        r0=r0,
        lam=lam,
        charge=charge,
        eigenvalues=tuple(modes),
        lambda1=lam1,
        lambda2=lam2,
        index=index,
        stable_symmetrized=not (lam1 < -tol),
        degenerate=degenerate,
        unstable_full=lam1 < -tol,
    )


@dataclass(frozen=True)
class SignRegions:
    """Roots of the sign quadratics u and v in the variable x = r0^2.

    u changes sign at (1 -+ sqrt(1 - 4 lam Q^2)) / (2 lam) and controls the
    sign of the principal eigenvalue; v changes sign at
    (3 -+ sqrt(9 - 4 lam Q^2)) / (2 lam) and controls the second one.  The
    u-interval nests strictly inside the v-interval, and the radius band
    ``interval`` = (sqrt(u_plus), sqrt(v_plus)) is never empty.
    """

    u_minus: float
    u_plus: float
    v_minus: float
    v_plus: float

    @property
    def interval(self):
        return (math.sqrt(self.u_plus), math.sqrt(self.v_plus))


def sign_regions(lam: float, charge: float) -> SignRegions:
    """Sign-change boundaries of the first two eigenvalues as functions of r0^2."""
    su = 1.0 - 4.0 * lam * charge * charge
    if su < 0.0:
        raise ChargeTooLarge("sign regions require Q^2 lam <= 1/4")
    sv = 9.0 - 4.0 * lam * charge * charge
    ru, rv = math.sqrt(su), math.sqrt(sv)
    return SignRegions(
        u_minus=(1.0 - ru) / (2.0 * lam),
        u_plus=(1.0 + ru) / (2.0 * lam),
        v_minus=(3.0 - rv) / (2.0 * lam),
        v_plus=(3.0 + rv) / (2.0 * lam),
    )


def degenerate_mass(lam: float, charge: float):
    """Mass and radius at which the second eigenvalue vanishes exactly.

    Returns (m_deg, r_c_deg) with r_c_deg^2 the upper v-root, so
    v(r_c_deg^2) = 0 by construction, and m_deg chosen so the horizon
    quartic vanishes at r_c_deg: D(r_c_deg) = 4 Q^2 / 3 - 2 m_deg r_c_deg.
    """
    if not (charge > 0.0):
        raise ValueError("degenerate mass requires positive charge")
    if 4.0 * lam * charge * charge > 1.0:
        raise ChargeTooLarge("degenerate mass defined for Q^2 lam <= 1/4")
    x = (3.0 + math.sqrt(9.0 - 4.0 * lam * charge * charge)) / (2.0 * lam)
    r_c_deg = math.sqrt(x)
    m_deg = (2.0 * charge * charge / 3.0) / r_c_deg
    return m_deg, r_c_deg


def kds_lambda2(r0_prime: float, lam: float) -> float:
    """Second stability eigenvalue 3 / r0'^2 - lam at a zero-charge horizon.

    Any genuine positive root of the zero-charge horizon quartic satisfies
    1 - lam r0'^2 / 3 > 0; that certificate is checked and its failure
    raises NotAPositiveRoot.  The returned value is then positive.
    """
    if not (r0_prime > 0.0):
        raise NotAPositiveRoot("radius must be positive")
    if not (1.0 - lam * r0_prime * r0_prime / 3.0 > 0.0):
        raise NotAPositiveRoot(
            "certificate 1 - lam r^2/3 > 0 fails; not a positive horizon root"
        )
    return 3.0 / (r0_prime * r0_prime) - lam
