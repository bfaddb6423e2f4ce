"""HTTP service over the library: compute endpoints, family lookup,
and the verification suites, all speaking the same JSON schemas as the
command line.

Run locally with

    uvicorn csf.service:app

Errors: 400 for malformed input, 422 when a documented cap is
exceeded.  Responses reuse the element and graph JSON of the
serialization module.
"""

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict, Field

from . import __version__, ncsym, ubcsym, verify
from .graphs import family as family_graph
from .serialization import element_to_json, graph_from_json, graph_to_json

app = FastAPI(
    title="csf",
    version=__version__,
    description="Chromatic symmetric functions of labelled graphs with exact rational coefficients.",
)


class TermOut(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: Optional[list[int]] = Field(default=None, alias="lambda")
    b: Optional[int] = None
    alpha: Optional[list[int]] = None
    marked: Optional[int] = None
    num: str
    den: str


class ElementOut(BaseModel):
    degree: int
    basis: str
    terms: list[TermOut]


class GraphOut(BaseModel):
    n: int
    edges: list[tuple[int, int]]


class ComputeYRequest(BaseModel):
    graph: dict
    vertex: int | Literal["last"] = "last"
    basis: Literal["e", "p", "m"] = "e"


class ComputeXRequest(BaseModel):
    graph: dict
    basis: Literal["e", "p"] = "e"


class FamilyRequest(BaseModel):
    name: str
    params: dict[str, int | str] = {}


class VerifyRequest(BaseModel):
    suite: str
    max_n: Optional[int] = None
    seed: int = 0
    fail_fast: bool = False
    family: Optional[str] = None
    params: Optional[dict[str, int]] = None


class ResultOut(BaseModel):
    ok: bool
    instance: str
    detail: Optional[str] = None


class VerifyReport(BaseModel):
    suite: str
    checked: int
    failed: int
    failures: list[ResultOut]


class ScanRow(BaseModel):
    n: int
    m: list[int]
    e_positive: bool
    worst: Optional[str] = None


class ScanReport(BaseModel):
    scanned: int
    negative: int
    rows: list[ScanRow]


def _reject(exc: ValueError) -> HTTPException:
    message = str(exc)
    over_cap = "cap" in message or "caps max-n" in message
    return HTTPException(status_code=422 if over_cap else 400, detail=message)


def _parse_graph(data: dict):
    try:
        return graph_from_json(data)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/y", response_model=ElementOut, response_model_exclude_none=True)
def compute_y(request: ComputeYRequest):
    g = _parse_graph(request.graph)
    v = g.n if request.vertex == "last" else request.vertex
    if not 1 <= v <= g.n:
        raise HTTPException(status_code=400, detail=f"vertex {v} not in [1, {g.n}]")
    try:
        y = ubcsym.change_basis(ubcsym.y_centred(g, v), request.basis)
    except ValueError as exc:
        raise _reject(exc) from None
    return element_to_json(y)


@app.post("/x", response_model=ElementOut, response_model_exclude_none=True)
def compute_x(request: ComputeXRequest):
    g = _parse_graph(request.graph)
    try:
        x = ncsym.X_of(g).converted(request.basis)
    except ValueError as exc:
        raise _reject(exc) from None
    return element_to_json(x)


@app.post("/family", response_model=GraphOut)
def family_endpoint(request: FamilyRequest):
    try:
        g = family_graph(request.name, **request.params)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None
    return graph_to_json(g)


@app.post("/verify", response_model=VerifyReport)
def verify_endpoint(request: VerifyRequest):
    try:
        results = list(
            verify.run_suite(
                request.suite,
                max_n=request.max_n,
                fail_fast=request.fail_fast,
                seed=request.seed,
                family=request.family,
                params=request.params,
            )
        )
    except ValueError as exc:
        raise _reject(exc) from None
    failures = [r for r in results if not r["ok"]]
    return {
        "suite": request.suite,
        "checked": len(results),
        "failed": len(failures),
        "failures": failures,
    }


@app.get("/scan-e-positivity", response_model=ScanReport)
def scan_endpoint(max_n: int = 7):
    try:
        rows = list(verify.scan_e_positivity(max_n))
    except ValueError as exc:
        raise _reject(exc) from None
    negative = sum(1 for r in rows if not r["e_positive"])
    return {"scanned": len(rows), "negative": negative, "rows": rows}
