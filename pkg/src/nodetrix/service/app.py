"""Stateless layout service.

Every request runs an independent pure computation; two identical requests
with identical seeds return identical bodies regardless of interleaving,
and the embedded drawing document is exactly what the CLI writes for the
same inputs and seed. A negative verdict (feasible = false, or
locallyPlanar = false) is a 200 result, not an error.
"""

from __future__ import annotations

import os
import time

from fastapi import FastAPI, HTTPException, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .. import __version__
from ..geometry import validate_pipes
from ..jsonio import InstanceParseError, drawing_document, parse_instance_document
from ..layout import (
    InvalidInstanceError,
    PipeViolationError,
    check_fixed_order_and_side,
    editor_heuristic,
    solve_exact_fixed_order,
)
from ..model import adjacent_cluster_pairs
from .schemas import HealthResponse, LayoutRequest, LayoutResponse


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    return int(value) if value else default


class ServiceConfig:
    """Request caps; exact mode is exponential in the guess count, so it
    gets a much smaller ceiling than the heuristic."""

    def __init__(self) -> None:
        self.max_clusters = _env_int("NTX_MAX_CLUSTERS", 50)
        self.max_edges = _env_int("NTX_MAX_EDGES", 1000)
        self.exact_max_clusters = _env_int("NTX_EXACT_MAX_CLUSTERS", 6)
        self.exact_max_edges = _env_int("NTX_EXACT_MAX_EDGES", 12)
        self.cors_origin = os.environ.get("NTX_CORS_ORIGIN", "*")


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    cfg = config or ServiceConfig()
    app = FastAPI(title="nodetrix layout service", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[cfg.cors_origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def body_validation_error(
        request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        # schema problems are client errors (422 is reserved for the
        # exact-mode size cap); keep the path-addressed details
        details = "; ".join(
            ".".join(str(p) for p in err.get("loc", ())) + ": " + err.get("msg", "")
            for err in exc.errors()
        )
        return JSONResponse(status_code=400, content={"detail": details})

    @app.get("/api/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/api/layout", response_model=LayoutResponse)
    def layout(request: LayoutRequest) -> LayoutResponse:
        try:
            g, layout_cfg = parse_instance_document(request.instance)
        except InstanceParseError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

        if len(g.clusters) > cfg.max_clusters or len(g.inter_edges) > cfg.max_edges:
            raise HTTPException(
                status_code=400,
                detail=f"instance exceeds the service cap of {cfg.max_clusters} "
                f"clusters / {cfg.max_edges} inter-cluster edges",
            )
        if request.mode == "exact" and (
            len(g.clusters) > cfg.exact_max_clusters
            or len(g.inter_edges) > cfg.exact_max_edges
        ):
            raise HTTPException(
                status_code=422,
                detail=f"exact mode is capped at {cfg.exact_max_clusters} clusters / "
                f"{cfg.exact_max_edges} inter-cluster edges",
            )
        if request.mode == "check" and layout_cfg.sides is None:
            raise HTTPException(
                status_code=400, detail='mode "check" requires a side assignment'
            )

        pairs = [(a, b) for a, b, _ in adjacent_cluster_pairs(g)]
        warnings = validate_pipes(layout_cfg, pairs)
        started = time.perf_counter()
        try:
            if request.mode == "heuristic":
                drawing = editor_heuristic(g, layout_cfg, seed=request.seed)
            elif request.mode == "check":
                drawing = check_fixed_order_and_side(g, layout_cfg)
            else:
                if warnings:
                    raise HTTPException(
                        status_code=400,
                        detail="exact mode requires valid pipes: " + "; ".join(warnings),
                    )
                drawing = solve_exact_fixed_order(g, layout_cfg)
        except (InvalidInstanceError, PipeViolationError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        elapsed_ms = (time.perf_counter() - started) * 1000.0

        return LayoutResponse(
            feasible=drawing is not None,
            drawing=drawing_document(drawing),
            elapsedMs=round(elapsed_ms, 3),
            warnings=warnings,
        )

    return app


app = create_app()
