"""Finite-difference spectrum of -Lap + V on an axisymmetric 2-sphere.

Separating the azimuthal angle turns the operator into a family of radial
problems, one per azimuthal mode number: on the open interval (0, pi),

    (T_m psi)(theta) = -(1/w) (g psi')' + (m^2 / B) psi + V psi,

with w = sqrt(A B) the area-element weight and g = sqrt(B / A) the flux
coefficient of the metric coefficients A, B.  A second-order flux-form
finite-difference scheme on a uniform grid offset half a cell from the
poles makes each T_m a symmetric tridiagonal matrix with respect to the
discrete volume weight; the flux coefficient vanishes at the poles, which
encodes the natural regularity condition for mode 0, while the singular
m^2 / B term enforces decay at the poles for modes >= 1.

Eigenvalues come from bisection on Sturm sequences (LAPACK stebz), the
lowest eigenvector from shifted inverse iteration, and every reported
eigenvalue is the Richardson extrapolation of the values on grids N and
2N.  The raw per-grid values and the two-grid error estimate stay
attached, so convergence-order checks can use the plain second-order
values while consumers get the extrapolated ones.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
import scipy.linalg

from .errors import (
    BadMetric,
    ContinuationLost,
    NoConvergence,
)
from .geometry import CrossSectionMetric, cross_section
from .params import Parameters
from .roots import (
    HorizonPolynomial,
    eval_poly,
    isolate_roots,
    residual_tolerance,
)

MIN_GRID = 16
# continuation may not move a tracked root by more than this fraction of scale
CONTINUATION_JUMP_FRAC = 0.2
# Rayleigh-quotient agreement, relative to max(1, |lambda|) but never below
# the backward-stability floor of order eps * ||T||
RQ_RTOL = 1e-12


def stability_potential(r0: float, lam: float, charge: float) -> float:
    """Constant potential 1/r0^2 - lam - Q^2/r0^4 of the symmetrized
    stability operator on the non-rotating horizon of radius r0."""
    x = r0 * r0
    return 1.0 / x - lam - charge * charge / (x * x)


@dataclass(frozen=True)
class DiscretizedOperator:
    """Symmetric tridiagonal discretization of one azimuthal mode.

    ``diag`` and ``offdiag`` describe the similarity-transformed standard
    eigenproblem; ``weights`` holds the discrete volume weights w_j h used
    for the transform.  Symmetry is structural: a single off-diagonal array
    represents both triangles.
    """

    metric: CrossSectionMetric
    potential: object
    m_mode: int
    grid_n: int
    theta: np.ndarray
    diag: np.ndarray
    offdiag: np.ndarray
    weights: np.ndarray

    @property
    def norm_bound(self) -> float:
        """Infinity-norm bound of the tridiagonal matrix."""
        pad = np.zeros(self.grid_n)
        pad[:-1] += np.abs(self.offdiag)
        pad[1:] += np.abs(self.offdiag)
        return float(np.max(np.abs(self.diag) + pad))


def _potential_values(potential, theta):
    if callable(potential):
        vals = np.asarray(potential(theta), dtype=float)
        if vals.shape != theta.shape:
            vals = np.broadcast_to(vals, theta.shape).astype(float)
        return vals
    return np.full_like(theta, float(potential))


def assemble(metric: CrossSectionMetric, potential, m_mode: int, grid_n: int) -> DiscretizedOperator:
    """Discretize one azimuthal mode of -Lap + V on the given metric.

    The energy form sum_edges g (dpsi/h)^2 h + sum_nodes (m^2/B + V) psi^2 w h
    is differenced exactly, so the stiffness matrix is symmetric with
    respect to the volume weights by construction.  Raises BadMetric if a
    coefficient samples non-positive on the interior grid.
    """
    if grid_n < MIN_GRID:
        raise ValueError("grid size must be at least %d" % MIN_GRID)
    if m_mode < 0:
        raise ValueError("azimuthal mode number must be nonnegative")

    h = math.pi / grid_n
    theta = (np.arange(grid_n) + 0.5) * h
    edges = np.arange(1, grid_n) * h

    a_nodes = np.asarray(metric.g_theta_theta(theta), dtype=float)
    b_nodes = np.asarray(metric.g_phi_phi(theta), dtype=float)
    if not (np.all(np.isfinite(a_nodes)) and np.all(np.isfinite(b_nodes))):
        raise BadMetric("non-finite metric coefficient on the interior grid")
    if np.any(a_nodes <= 0.0) or np.any(b_nodes <= 0.0):
        raise BadMetric("non-positive metric coefficient on the interior grid")

    a_edges = np.asarray(metric.g_theta_theta(edges), dtype=float)
    b_edges = np.asarray(metric.g_phi_phi(edges), dtype=float)
    flux = np.sqrt(b_edges / a_edges)

    weight = np.sqrt(a_nodes * b_nodes) * h
    v_nodes = _potential_values(potential, theta)

    flux_left = np.zeros(grid_n)
    flux_right = np.zeros(grid_n)
    flux_left[1:] = flux
    flux_right[:-1] = flux
    stiff_diag = (flux_left + flux_right) / h + (m_mode * m_mode / b_nodes + v_nodes) * weight
    stiff_off = -flux / h

    diag = stiff_diag / weight
    offdiag = stiff_off / np.sqrt(weight[:-1] * weight[1:])
    return DiscretizedOperator(
        metric=metric,
        potential=potential,
        m_mode=m_mode,
        grid_n=grid_n,
        theta=theta,
        diag=diag,
        offdiag=offdiag,
        weights=weight,
    )


def _bisect_eigenvalues(op: DiscretizedOperator, count: int) -> np.ndarray:
    try:
        vals = eigh_tridiagonal(
            op.diag,
            op.offdiag,
            eigvals_only=True,
            select="i",
            select_range=(0, count - 1),
            lapack_driver="stebz",
            tol=2.0 * np.finfo(float).tiny,
        )
    except np.linalg.LinAlgError as exc:
        raise NoConvergence("tridiagonal bisection failed: %s" % exc) from exc
    return np.asarray(vals, dtype=float)


def _tridiag_matvec(diag, offdiag, vec):
    out = diag * vec
    out[:-1] += offdiag * vec[1:]
    out[1:] += offdiag * vec[:-1]
    return out


def _lowest_eigenvector(op: DiscretizedOperator, shift: float) -> np.ndarray:
    """Inverse iteration for the eigenvector at the given eigenvalue shift."""
    n = op.grid_n
    vec = 1.0 + 0.01 * np.sin(np.arange(n, dtype=float))
    vec /= np.linalg.norm(vec)
    nudge = 0.0
    for attempt in range(6):
        ab = np.zeros((3, n))
        ab[0, 1:] = op.offdiag
        ab[1, :] = op.diag - (shift + nudge)
        ab[2, :-1] = op.offdiag
        try:
            cur = vec
            for _ in range(3):
                cur = scipy.linalg.solve_banded((1, 1), ab, cur)
                norm = np.linalg.norm(cur)
                if not np.isfinite(norm) or norm == 0.0:
                    raise np.linalg.LinAlgError("inverse iteration broke down")
                cur = cur / norm
            resid = _tridiag_matvec(op.diag, op.offdiag, cur) - shift * cur
            if np.linalg.norm(resid) <= 1e-8 * max(1.0, op.norm_bound):
                return cur
        except (np.linalg.LinAlgError, ValueError):
            pass
        nudge = (10.0 ** attempt) * 1e-14 * max(1.0, op.norm_bound)
    raise NoConvergence("inverse iteration failed to produce an eigenvector")


@dataclass(frozen=True)
class ModeEigenvalue:
    """One eigenvalue of one azimuthal mode.

    ``value`` is the Richardson extrapolation of the raw grid-N and grid-2N
    values; ``error_estimate`` is |raw_fine - raw_coarse| / 3, the standard
    two-grid bound on the fine-grid error.
    """

    value: float
    error_estimate: float
    raw_coarse: float
    raw_fine: float
    m_mode: int

    @property
    def multiplicity(self) -> int:
        """Azimuthal degeneracy: modes +-m coincide for m >= 1."""
        return 1 if self.m_mode == 0 else 2


@dataclass(frozen=True)
class NumericSpectrum:
    """Eigenvalues with multiplicity bookkeeping and two-grid error data."""

    entries: tuple
    grid_n: int

    @property
    def values(self) -> np.ndarray:
        """Ascending eigenvalues with each entry repeated by multiplicity."""
        out = []
        for entry in self.entries:
            out.extend([entry.value] * entry.multiplicity)
        return np.array(sorted(out))

    def lowest(self, count: int) -> np.ndarray:
        vals = self.values
        if len(vals) < count:
            raise ValueError("spectrum holds %d values, need %d" % (len(vals), count))
        return vals[:count]


def solve(op: DiscretizedOperator, count: int) -> NumericSpectrum:
    """Lowest ``count`` eigenvalues of one mode with two-grid error control.

    Solves on the operator's grid and on its doubling, pairs the sorted
    eigenvalues, reports the Richardson extrapolations, and verifies the
    lowest coarse eigenvalue against the Rayleigh quotient of its own
    eigenvector.  The agreement gate is 1e-12 relative to the eigenvalue
    scale, floored at a small multiple of eps times the operator norm,
    which is the accuracy limit of any backward-stable eigensolver.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if count > op.grid_n // 4:
        raise ValueError("count must not exceed a quarter of the grid size")

    coarse = _bisect_eigenvalues(op, count)
    fine_op = assemble(op.metric, op.potential, op.m_mode, 2 * op.grid_n)
    fine = _bisect_eigenvalues(fine_op, count)

    vec = _lowest_eigenvector(op, float(coarse[0]))
    rq = float(vec @ _tridiag_matvec(op.diag, op.offdiag, vec))
    gate = max(RQ_RTOL * max(1.0, abs(coarse[0])), 16.0 * np.finfo(float).eps * op.norm_bound)
    if abs(rq - coarse[0]) > gate:
        raise NoConvergence(
            "Rayleigh quotient %.17g disagrees with lowest eigenvalue %.17g"
            % (rq, coarse[0])
        )

    entries = tuple(
        ModeEigenvalue(
            value=float((4.0 * f - c) / 3.0),
            error_estimate=float(abs(f - c) / 3.0),
            raw_coarse=float(c),
            raw_fine=float(f),
            m_mode=op.m_mode,
        )
        for c, f in zip(coarse, fine)
    )
    return NumericSpectrum(entries=entries, grid_n=op.grid_n)


def merged_spectrum(
    metric: CrossSectionMetric,
    potential,
    count: int,
    grid_n: int,
    max_mode: int = None,
) -> NumericSpectrum:
    """Merge per-mode spectra into one ascending list with multiplicities.

    Modes 0..max_mode are solved independently (default max_mode = count,
    which always covers the lowest ``count`` merged eigenvalues, since each
    mode's smallest eigenvalue grows with the mode number).
    """
    if max_mode is None:
        max_mode = count
    all_entries = []
    for m_mode in range(max_mode + 1):
        mode_spec = solve(assemble(metric, potential, m_mode, grid_n), count)
        all_entries.extend(mode_spec.entries)
    all_entries.sort(key=lambda entry: entry.value)
    kept = []
    total = 0
    for entry in all_entries:
        kept.append(entry)
        total += entry.multiplicity
        if total >= count:
            break
    return NumericSpectrum(entries=tuple(kept), grid_n=grid_n)


def ls_numeric_spectrum(params: Parameters, r0: float, count: int = 4, grid_n: int = 256) -> NumericSpectrum:
    """Numeric spectrum of the symmetrized stability operator at radius r0.

    Builds the cross-section metric (residual-gated) and uses the constant
    potential of the non-rotating operator; with a = 0 this is the direct
    numerical counterpart of the closed-form eigenvalue ladder.
    """
    metric = cross_section(params, r0)
    potential = stability_potential(r0, params.lam, params.q)
    return merged_spectrum(metric, potential, count, grid_n)


def _continue_root(poly: HorizonPolynomial, start: float, lam: float) -> float:
    """Newton-track a simple decreasing root of the horizon quartic."""
    r = start
    for _ in range(80):
        val = eval_poly(poly, r)
        slope = eval_poly(poly, r, 1)
        if slope == 0.0 or not math.isfinite(slope):
            raise ContinuationLost("vanishing slope while tracking the horizon root")
        step = val / slope
        r = r - step
        if not math.isfinite(r):
            raise ContinuationLost("root tracking diverged")
        if abs(step) <= 1e-14 * max(1.0, abs(r)):
            break
    else:
        raise ContinuationLost("root tracking did not converge")
    if abs(r - start) > CONTINUATION_JUMP_FRAC * max(1.0, abs(start)):
        raise ContinuationLost(
            "tracked root moved from %r to %r; branch jump suspected" % (start, r)
        )
    if abs(eval_poly(poly, r)) > residual_tolerance(lam, r):
        raise ContinuationLost("tracked root fails the residual gate")
    if not (eval_poly(poly, r, 1) < 0.0):
        raise ContinuationLost("tracked root is not a decreasing crossing")
    return r


@dataclass(frozen=True)
class SweepRow:
    """Spectrum of the frozen-potential operator at one rotation value."""

    a: float
    r0: float
    values: tuple
    error_estimates: tuple
    drift: tuple
    signs_ok: bool
    zero_charge_radius_ok: object  # bool for q = 0, None otherwise


@dataclass(frozen=True)
class SweepResult:
    """Continuity-in-rotation report for the lowest eigenvalues.

    ``a_star`` is the largest rotation value, scanning upward from zero,
    through which the sign pattern lambda1 < 0 < lambda2 persisted; it is
    measured, never assumed.
    """

    rows: tuple
    a_star: object
    frozen_potential: float
    grid_n: int
    count: int


def perturbation_sweep(
    params: Parameters,
    a_list,
    count: int = 4,
    grid_n: int = 128,
    max_mode: int = None,
) -> SweepResult:
    """Track the cosmological root and eigenvalues over rotation values.

    The rotation enters only through the cross-section metric: the
    potential stays frozen at its non-rotating constant, so the sweep
    isolates the kinetic part's continuity.  The cosmological root is
    continued by Newton from each previous rotation value, with residual,
    monotone-crossing and jump gates; a failed gate raises
    ContinuationLost.  Rows are computed in ascending rotation order.
    """
    a_values = sorted({float(a) for a in a_list} | {0.0})
    if a_values[0] < 0.0:
        raise ValueError("rotation values must be nonnegative")

    base = Parameters(lam=params.lam, m=params.m, q=params.q, a=0.0)
    r_c0 = isolate_roots(base).r_c
    frozen_v = stability_potential(r_c0, params.lam, params.q)

    rows = []
    base_values = None
    r_prev = r_c0
    for a in a_values:
        p_a = Parameters(lam=params.lam, m=params.m, q=params.q, a=a)
        if a == 0.0:
            r_a = r_c0
        else:
            r_a = _continue_root(HorizonPolynomial.from_params(p_a), r_prev, params.lam)
        metric = cross_section(p_a, r_a)
        spec = merged_spectrum(metric, frozen_v, count, grid_n, max_mode=max_mode)
        values = spec.lowest(count)
        errors = []
        seen = 0
        for entry in spec.entries:
            errors.extend([entry.error_estimate] * entry.multiplicity)
            seen += entry.multiplicity
            if seen >= count:
                break
        if base_values is None:
            base_values = values
        drift = tuple(float(x) for x in np.abs(values - base_values))
        cert = None
        if params.q == 0.0:
            cert = bool(r_a < math.sqrt(3.0 / params.lam))
        rows.append(
            SweepRow(
                a=a,
                r0=r_a,
                values=tuple(float(x) for x in values),
                error_estimates=tuple(float(x) for x in errors[:count]),
                drift=drift,
                signs_ok=bool(values[0] < 0.0 < values[1]),
                zero_charge_radius_ok=cert,
            )
        )
        r_prev = r_a

    a_star = None
    for row in rows:
        if not row.signs_ok:
            break
        a_star = row.a
    return SweepResult(
        rows=tuple(rows),
        a_star=a_star,
        frozen_potential=frozen_v,
        grid_n=grid_n,
        count=count,
    )
