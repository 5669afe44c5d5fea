"""Area-charge inequality for index-one spherical horizons.

For a stable-direction sphere of area \\|S\\| carrying charge Q in a
spacetime with cosmological constant lam, the inequality reads

    lam |S| + 16 pi^2 Q^2 / |S| <= 12 pi.

The report works with the margin 12 pi - lam |S| - 16 pi^2 Q^2 / |S|;
a nonnegative margin forces the charge bound Q^2 <= 9 / (4 lam) and traps
the area in the window whose endpoints are the roots of
lam A^2 - 12 pi A + 16 pi^2 Q^2.  At a non-rotating cosmological horizon
the margin equals 4 pi r_c^2 times the second stability eigenvalue, an
exact algebraic identity this module cross-checks through two independent
arithmetic routes.
"""

import csv
import math
from dataclasses import dataclass

from .errors import NotAdmissible
from .params import Parameters
from .roots import isolate_roots
from .spectrum import ls_eigenvalue

# |margin| below this counts as the equality case
RIGIDITY_TOL = 1e-10 * 12.0 * math.pi

RIGIDITY_INTERPRETATION = (
    "equality case: the outward null direction is shear-free, the normal "
    "electric field has constant strength, and the ambient scalar curvature "
    "is constant on the surface"
)


@dataclass(frozen=True)
class AreaChargeReport:
    """Margin, verdict and derived bounds of the area-charge inequality."""

    lam: float
    area: float
    charge: float
    margin: float
    holds: bool
    rigidity: bool
    charge_bound_ok: bool
    area_window: object  # (low, high) tuple, or None when no real window exists
    interpretation: object  # rigidity description string, or None


def check(lam: float, area: float, charge: float) -> AreaChargeReport:
    """Evaluate the inequality margin and its derived bounds."""
    if not (lam > 0.0):
        raise ValueError("cosmological constant must be positive")
    if not (area > 0.0):
        raise ValueError("area must be positive")
    margin = 12.0 * math.pi - lam * area - 16.0 * math.pi ** 2 * charge ** 2 / area
    disc = 9.0 - 4.0 * lam * charge * charge
    window = None
    if disc >= 0.0:
        root = math.sqrt(disc)
        window = (
            (2.0 * math.pi / lam) * (3.0 - root),
            (2.0 * math.pi / lam) * (3.0 + root),
        )
    rigidity = abs(margin) <= RIGIDITY_TOL
    return AreaChargeReport(
        lam=lam,
        area=area,
        charge=charge,
        margin=margin,
        holds=margin >= 0.0,
        rigidity=rigidity,
        charge_bound_ok=charge * charge <= 9.0 / (4.0 * lam),
        area_window=window,
        interpretation=RIGIDITY_INTERPRETATION if rigidity else None,
    )


@dataclass(frozen=True)
class CrosscheckReport:
    """Two-route margin computation at a non-rotating cosmological horizon."""

    r_c: float
    lambda2: float
    report: AreaChargeReport
    margin_spectral: float

    @property
    def margin_direct(self) -> float:
        return self.report.margin


def horizon_crosscheck(params: Parameters) -> CrosscheckReport:
    """Verify margin = 4 pi r_c^2 lambda2 at the cosmological horizon.

    Route one computes the margin from the area 4 pi r_c^2 and the charge;
    route two multiplies the closed-form second stability eigenvalue by
    4 pi r_c^2.  The two must agree to 1e-10 relative; disagreement means
    broken arithmetic, not unusual physics, and raises ArithmeticError.
    Only non-rotating parameters are meaningful here.
    """
    if params.a != 0.0:
        raise ValueError("the margin identity is a non-rotating statement")
    horizon_set = isolate_roots(params)  # may raise NotAdmissible
    r_c = horizon_set.r_c
    area = 4.0 * math.pi * r_c * r_c
    report = check(params.lam, area, params.q)
    lam2 = ls_eigenvalue(r_c, params.lam, params.q, 1)
    margin_spectral = area * lam2
    scale = max(1.0, abs(report.margin), abs(margin_spectral))
    if abs(report.margin - margin_spectral) > 1e-10 * scale:
        raise ArithmeticError(
            "margin routes disagree: direct %.17g vs spectral %.17g"
            % (report.margin, margin_spectral)
        )
    return CrosscheckReport(
        r_c=r_c,
        lambda2=lam2,
        report=report,
        margin_spectral=margin_spectral,
    )


def check_catalog(path) -> list:
    """Run the inequality check over a CSV catalog.

    The file must carry columns named Lambda, area and charge; extra
    columns are ignored.  Returns one AreaChargeReport per data row.
    """
    reports = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        required = {"Lambda", "area", "charge"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise ValueError("catalog must have columns Lambda, area, charge")
        for row in reader:
            reports.append(
                check(float(row["Lambda"]), float(row["area"]), float(row["charge"]))
            )
    return reports
