"""HTTP service exposing the analysis pipeline.

Domain errors map to status 422 with a machine-readable reason code; the
endpoints themselves stay thin wrappers over the library calls.
"""

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..areacharge import check as ac_check, horizon_crosscheck
from ..checks import run_suite
from ..eigensolver import ls_numeric_spectrum, perturbation_sweep
from ..errors import HorizonError, NotAdmissible
from ..params import Parameters
from ..roots import isolate_roots
from ..scanner import COLUMNS, ScanConfig, run_scan
from ..spectrum import index_and_flags
from . import schemas


def create_app() -> FastAPI:
    app = FastAPI(title="horizon spectra service", version=__version__)

    @app.exception_handler(NotAdmissible)
    async def _not_admissible(request: Request, exc: NotAdmissible):
        return JSONResponse(
            status_code=422,
            content={"detail": str(exc), "reason": exc.reason},
        )

    @app.exception_handler(HorizonError)
    async def _domain_error(request: Request, exc: HorizonError):
        return JSONResponse(
            status_code=422,
            content={"detail": str(exc), "reason": type(exc).__name__},
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    async def health():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/roots", response_model=schemas.RootsResponse)
    async def roots(req: schemas.RootsRequest):
        hs = isolate_roots(Parameters(lam=req.lam, m=req.m, q=req.q, a=req.a))
        return schemas.RootsResponse(
            admissible=hs.admissible,
            regime=hs.regime,
            r_mm=hs.r_mm,
            r_minus=hs.r_minus,
            r_plus=hs.r_plus,
            r_c=hs.r_c,
            min_gap=hs.min_gap,
            classification=list(hs.classification),
            residuals=list(hs.residuals),
        )

    @app.post("/spectrum", response_model=schemas.SpectrumResponse)
    async def spectrum(req: schemas.SpectrumRequest):
        report = index_and_flags(req.r0, req.lam, req.q, k_max=req.k)
        return schemas.SpectrumResponse(
            r0=report.r0,
            lambda1=report.lambda1,
            lambda2=report.lambda2,
            index=report.index,
            stable_symmetrized=report.stable_symmetrized,
            degenerate=report.degenerate,
            unstable_full=report.unstable_full,
            eigenvalues=[
                schemas.SpectrumMode(value=value, multiplicity=mult, mode=mode)
                for value, mult, mode in report.eigenvalues
            ],
        )

    @app.post("/eigsolve", response_model=schemas.EigsolveResponse)
    async def eigsolve(req: schemas.EigsolveRequest):
        params = Parameters(lam=req.lam, m=req.m, q=req.q, a=req.a)
        r0 = req.r0
        if r0 is None:
            r0 = isolate_roots(params).r_c
        spec = ls_numeric_spectrum(params, r0, count=req.count, grid_n=req.grid_n)
        closed = None
        if req.a == 0.0:
            from ..spectrum import ls_eigenvalue

            closed = []
            k = 0
            while len(closed) < req.count:
                closed.extend([ls_eigenvalue(r0, req.lam, req.q, k)] * (2 * k + 1))
                k += 1
            closed = closed[: req.count]
        return schemas.EigsolveResponse(
            r0=r0,
            grid_n=spec.grid_n,
            entries=[
                schemas.NumericEigenvalue(
                    value=entry.value,
                    error_estimate=entry.error_estimate,
                    raw_coarse=entry.raw_coarse,
                    raw_fine=entry.raw_fine,
                    m_mode=entry.m_mode,
                    multiplicity=entry.multiplicity,
                )
                for entry in spec.entries
            ],
            values=[float(v) for v in spec.lowest(req.count)],
            closed_form=closed,
        )

    @app.post("/sweep", response_model=schemas.SweepResponse)
    async def sweep(req: schemas.SweepRequest):
        params = Parameters(lam=req.lam, m=req.m, q=req.q, a=0.0)
        result = perturbation_sweep(
            params, req.a_list, count=req.count, grid_n=req.grid_n
        )
        return schemas.SweepResponse(
            rows=[
                schemas.SweepRowModel(
                    a=row.a,
                    r0=row.r0,
                    values=list(row.values),
                    error_estimates=list(row.error_estimates),
                    drift=list(row.drift),
                    signs_ok=row.signs_ok,
                    zero_charge_radius_ok=row.zero_charge_radius_ok,
                )
                for row in result.rows
            ],
            a_star=result.a_star,
            frozen_potential=result.frozen_potential,
            grid_n=result.grid_n,
            count=result.count,
        )

    @app.post("/area-charge", response_model=schemas.AreaChargeResponse)
    async def area_charge(req: schemas.AreaChargeRequest):
        if req.m is not None:
            params = Parameters(lam=req.lam, m=req.m, q=req.q or 0.0, a=0.0)
            cc = horizon_crosscheck(params)
            report = cc.report
            return schemas.AreaChargeResponse(
                lam=report.lam,
                area=report.area,
                charge=report.charge,
                margin=report.margin,
                holds=report.holds,
                rigidity=report.rigidity,
                charge_bound_ok=report.charge_bound_ok,
                area_window=report.area_window,
                interpretation=report.interpretation,
                r_c=cc.r_c,
                lambda2=cc.lambda2,
                margin_spectral=cc.margin_spectral,
            )
        report = ac_check(req.lam, req.area, req.charge)
        return schemas.AreaChargeResponse(
            lam=report.lam,
            area=report.area,
            charge=report.charge,
            margin=report.margin,
            holds=report.holds,
            rigidity=report.rigidity,
            charge_bound_ok=report.charge_bound_ok,
            area_window=report.area_window,
            interpretation=report.interpretation,
        )

    @app.post("/scan", response_model=schemas.ScanResponse)
    async def scan(req: schemas.ScanRequest):
        config = ScanConfig(
            lam_values=tuple(req.lam),
            m_values=tuple(req.m),
            q_values=tuple(req.q),
            a_values=tuple(req.a),
            jobs=req.jobs,
        )
        rows = run_scan(config)
        return schemas.ScanResponse(
            columns=list(COLUMNS),
            rows=[row.as_dict() for row in rows],
            any_inadmissible=any(not row.admissible for row in rows),
        )

    @app.post("/check", response_model=schemas.CheckResponse)
    async def check(req: schemas.CheckRequest):
        results = run_suite(seed=req.seed, scale=req.scale)
        return schemas.CheckResponse(
            passed=all(item["passed"] for item in results.values()),
            results={
                name: schemas.CheckOutcome(**item) for name, item in results.items()
            },
        )

    return app


app = create_app()
