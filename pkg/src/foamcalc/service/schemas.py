"""Pydantic request/response models for the service (and the CLI client).

The payload models mirror the canonical JSON documents of
:mod:`foamcalc.serialization`, so ``model_dump`` output parses with the
same functions that read corpus files.
"""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field

from ..foams import Foam, WebMatching
from ..planar import RotationWeb
from ..serialization import (foam_from_doc, matching_from_doc,
                             rotation_web_from_doc, web_from_doc)
from ..webs import Web

SCHEMA_VERSION = "1"


# ---------------------------------------------------------------------------
# payload documents
# ---------------------------------------------------------------------------

class EdgeModel(BaseModel):
    id: str
    ends: Optional[tuple[str, str]] = None


class WebModel(BaseModel):
    vertices: list[str] = Field(default_factory=list)
    edges: list[EdgeModel] = Field(default_factory=list)
    rotation: Optional[dict[str, list[str]]] = None

    def to_web(self) -> Web:
        return web_from_doc(self.model_dump())

    def to_rotation_web(self) -> RotationWeb:
        if self.rotation is None:
            raise ValueError("a rotation system is required for planar operations")
        return rotation_web_from_doc(self.model_dump())


class SeamEdgeModel(BaseModel):
    id: str
    ends: tuple[str, str]


class SeamCircleModel(BaseModel):
    id: str
    monodromy: str


class FacetModel(BaseModel):
    id: str
    orientable: bool
    genus: int
    dots: int
    boundary: list[list[list[Any]]]


class VertexAttachModel(BaseModel):
    seam_end: tuple[str, int]
    slots: dict[str, int]


class FoamBoundaryModel(BaseModel):
    web: WebModel
    vertex_attach: dict[str, VertexAttachModel]


class FoamModel(BaseModel):
    tetra_points: list[str] = Field(default_factory=list)
    seam_edges: list[SeamEdgeModel] = Field(default_factory=list)
    seam_circles: list[SeamCircleModel] = Field(default_factory=list)
    corners: dict[str, list[list[list[Any]]]] = Field(default_factory=dict)
    facets: list[FacetModel] = Field(default_factory=list)
    boundary: Optional[FoamBoundaryModel] = None

    def to_foam(self) -> Foam:
        doc = self.model_dump()
        if doc.get("boundary") is None:
            doc.pop("boundary", None)
        return foam_from_doc(doc)


class MatchingModel(BaseModel):
    vertices: dict[str, str]
    edges: dict[str, str]

    def to_matching(self) -> WebMatching:
        return matching_from_doc(self.model_dump())


class MatrixModel(BaseModel):
    rows: int
    cols: int
    entries: list[tuple[int, int]] = Field(default_factory=list)


# ---------------------------------------------------------------------------
# requests
# ---------------------------------------------------------------------------

class WebRequest(BaseModel):
    web: WebModel


class EtaRequest(BaseModel):
    web: WebModel
    flow: dict[str, int]


class FoamRequest(BaseModel):
    foam: FoamModel
    trace: bool = False


class GlueRequest(BaseModel):
    a: FoamModel
    b: FoamModel
    matching: MatchingModel


class RankRequest(BaseModel):
    generators: list[FoamModel]
    cogenerators: list[FoamModel]
    matching: MatchingModel


class IndexRequest(BaseModel):
    kappa: str = "0"       # rational "p/q"
    b1: int = 0
    bplus: int = 0
    chi: int = 0
    self_int: str = "0"    # rational "p/q"
    tau: int = 0
    dots: int = 0


class CubeRequest(BaseModel):
    base_dim: int
    n: int
    u_maps: dict[str, MatrixModel]  # keys: comma-joined subsets, "" for the base


class E1Request(BaseModel):
    h_dims: list[int]
    n: int


class AlgebraPairRequest(BaseModel):
    kind: str


class AlgebraReduceRequest(BaseModel):
    kind: str
    monomials: list[list[int]]


class SuiteRequest(BaseModel):
    seed: int = 0
    workers: Optional[int] = None


# ---------------------------------------------------------------------------
# responses
# ---------------------------------------------------------------------------

class Response(BaseModel):
    schema_version: str = SCHEMA_VERSION


class ValueResponse(Response):
    value: int


class ViolationsResponse(Response):
    valid: bool
    violations: list[str]


class BridgesResponse(Response):
    bridges: list[str]


class TwoFactorModel(BaseModel):
    edges: list[str]
    cycle_lengths: list[int]
    all_even: bool


class TwoFactorsResponse(Response):
    factors: list[TwoFactorModel]
    o2_coloring_exists: bool


class FacesResponse(Response):
    faces: list[list[str]]
    genera: list[int]
    planar: bool


class ReduceResponse(Response):
    terminated: bool
    value: Optional[int]
    resolved: int
    residuals: int
    trace: list[str] = Field(default_factory=list)


class ConjectureResponse(Response):
    terminated: bool
    reduced: Optional[int]
    tait: int
    agree: Optional[bool]


class SeamGraphResponse(Response):
    vertices: list[str]
    edges: list[tuple[str, tuple[str, str]]]
    is_bipartite: bool


class FoamResponse(Response):
    foam: FoamModel


class EvalResponse(Response):
    value: int
    trace: list[str] = Field(default_factory=list)


class RankResponse(Response):
    rank: int
    matrix: MatrixModel


class WellDefResponse(Response):
    values: list[int]
    well_defined: bool


class IndexResponse(Response):
    dimension: str
    is_integer: bool
    min_dots_for_nonzero: str
    kappa_admissible_with_tetra: bool
    kappa_admissible_without_tetra: bool


class CubeCheckResponse(Response):
    square_is_zero: bool
    first_violation: Optional[tuple[list[int], list[int]]]


class CubeHomologyResponse(Response):
    square_is_zero: bool
    homology_dim: Optional[int]


class E1Response(Response):
    dims: dict[int, int]


class AlgebraPairResponse(Response):
    basis: list[list[int]]
    matrix: MatrixModel
    rank: int


class AlgebraReduceResponse(Response):
    monomials: list[list[int]]  # canonical-basis exponents with coefficient 1


class SuiteCaseModel(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class SuiteResponse(Response):
    suite: str
    passed: bool
    cases: list[SuiteCaseModel]
    counts: tuple[int, int]


class CorpusListResponse(Response):
    names: list[str]
