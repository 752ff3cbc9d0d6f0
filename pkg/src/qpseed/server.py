"""HTTP API consumed by the explorer UI.

Stateless: every response is a pure function of the request body.
Malformed payloads come back as 400, well-formed requests that hit a
domain precondition as 422, both with structured JSON errors.
"""

from __future__ import annotations

from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import serialize
from .errors import (
    CertificateError,
    ConsistencyError,
    PreconditionError,
    QPSeedError,
)
from .fence import build_qp, fence_from_braid, parse_braid
from .mutation import empty_cycles, mutate, two_acyclic
from .walker import explore

EMPTY_CYCLE_SCAN_LEN = 3


class MutateBody(BaseModel):
    qp: dict
    vertex: str


class ExploreBody(BaseModel):
    qp: dict
    depth: int
    budget: int = 1000


def create_app() -> FastAPI:
    app = FastAPI(title="qpseed", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def _malformed(request: Request, exc: RequestValidationError):
        issues = [
            {"at": [str(p) for p in err.get("loc", ())], "message": err.get("msg", "")}
            for err in exc.errors()
        ]
        return JSONResponse(
            status_code=400,
            content={
                "schema": serialize.SCHEMA,
                "error": {
                    "type": "bad-request",
                    "message": "malformed request",
                    "issues": issues,
                },
            },
        )

    @app.exception_handler(QPSeedError)
    async def _domain(request: Request, exc: QPSeedError):
        if isinstance(exc, PreconditionError):
            status = 422
        elif isinstance(exc, (CertificateError, ConsistencyError)):
            status = 500
        else:
            status = 400
        return JSONResponse(
            status_code=status,
            content={"schema": serialize.SCHEMA, "error": exc.payload()},
        )

    @app.get("/api/health")
    async def health():
        return {"ok": True}

    @app.get("/api/qp")
    async def get_qp(braid: str, strands: Optional[int] = None):
        qp = build_qp(fence_from_braid(parse_braid(braid, strands=strands)))
        return serialize.qp_to_json(qp)

    @app.post("/api/mutate")
    async def post_mutate(body: MutateBody):
        qp = serialize.qp_from_json(body.qp)
        new_qp, log = mutate(qp, body.vertex)
        return {
            "schema": serialize.SCHEMA,
            "qp": serialize.qp_to_json(new_qp),
            "log": serialize.log_to_json(log),
            "flags": {
                "two_acyclic": two_acyclic(new_qp.quiver),
                "empty_cycles": [
                    [a.id for a in word]
                    for word in empty_cycles(new_qp, EMPTY_CYCLE_SCAN_LEN)
                ],
            },
        }

    @app.post("/api/explore")
    async def post_explore(body: ExploreBody):
        qp = serialize.qp_from_json(body.qp)
        graph = explore(qp, max_depth=body.depth, max_nodes=body.budget)
        return serialize.graph_to_json(graph)

    return app
