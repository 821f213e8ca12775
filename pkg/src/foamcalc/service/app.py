"""FastAPI service exposing the calculator.

Every endpoint is a pure function of its request body; the handler
functions are plain callables as well, so the CLI can dispatch to them
in-process through :data:`ROUTES` without an HTTP round trip.
"""

from __future__ import annotations

import typing
from fractions import Fraction

from fastapi import FastAPI, HTTPException

from .. import corpus
from ..foams import euler_characteristic, glue, seam_graph, validate_foam
from ..homalg import (DotAlgebra, F2Matrix, build_cube_complex,
                      cube_homology_dim, e1_page, rank)
from ..index_formula import (IndexInput, formal_dimension, kappa_admissible,
                             min_dots_for_nonzero)
from ..jflat import evaluate, pairing_rank, well_definedness_report
from ..planar import check_conjecture, component_genera, faces, reduce_dimension
from ..serialization import foam_to_doc
from ..suites import run_suite
from ..webs import (eta_type2_count, find_bridges, o2_coloring_exists,
                    tait_count, tait_orbit_count, two_factors, validate_web)
from . import schemas as s


def web_validate(req: s.WebRequest) -> s.ViolationsResponse:
    violations = validate_web(req.web.to_web())
    return s.ViolationsResponse(valid=not violations, violations=violations)


def web_tait(req: s.WebRequest) -> s.ValueResponse:
    return s.ValueResponse(value=tait_count(req.web.to_web()))


def web_orbits(req: s.WebRequest) -> s.ValueResponse:
    return s.ValueResponse(value=tait_orbit_count(req.web.to_web()))


def web_bridges(req: s.WebRequest) -> s.BridgesResponse:
    return s.BridgesResponse(bridges=sorted(find_bridges(req.web.to_web())))


def web_two_factors(req: s.WebRequest) -> s.TwoFactorsResponse:
    factors = two_factors(req.web.to_web())
    return s.TwoFactorsResponse(
        factors=[s.TwoFactorModel(edges=sorted(f.edges),
                                  cycle_lengths=list(f.cycle_lengths),
                                  all_even=f.all_even) for f in factors],
        o2_coloring_exists=any(f.all_even for f in factors),
    )


def web_o2(req: s.WebRequest) -> s.ValueResponse:
    return s.ValueResponse(value=int(o2_coloring_exists(req.web.to_web())))


def web_eta(req: s.EtaRequest) -> s.ValueResponse:
    return s.ValueResponse(value=eta_type2_count(req.web.to_web(), req.flow))


def planar_faces(req: s.WebRequest) -> s.FacesResponse:
    rw = req.web.to_rotation_web()
    walks = faces(rw)
    genera = component_genera(rw)
    return s.FacesResponse(
        faces=[[f"{e}.{k}" for e, k in walk] for walk in walks],
        genera=genera,
        planar=all(g == 0 for g in genera),
    )


def planar_reduce(req: s.WebRequest) -> s.ReduceResponse:
    res = reduce_dimension(req.web.to_rotation_web())
    return s.ReduceResponse(terminated=not res.stuck, value=res.value,
                            resolved=res.resolved, residuals=len(res.residuals),
                            trace=list(res.trace))


def planar_conjecture(req: s.WebRequest) -> s.ConjectureResponse:
    res = check_conjecture(req.web.to_rotation_web())
    return s.ConjectureResponse(terminated=not res.reduced.stuck,
                                reduced=res.reduced.value, tait=res.tait,
                                agree=res.agree)


def foam_validate(req: s.FoamRequest) -> s.ViolationsResponse:
    violations = validate_foam(req.foam.to_foam())
    return s.ViolationsResponse(valid=not violations, violations=violations)


def foam_euler(req: s.FoamRequest) -> s.ValueResponse:
    return s.ValueResponse(value=euler_characteristic(req.foam.to_foam()))


def foam_seams(req: s.FoamRequest) -> s.SeamGraphResponse:
    sg = seam_graph(req.foam.to_foam())
    return s.SeamGraphResponse(vertices=list(sg.vertices),
                               edges=[(e, ends) for e, ends in sg.edges],
                               is_bipartite=sg.is_bipartite)


def foam_glue(req: s.GlueRequest) -> s.FoamResponse:
    out = glue(req.a.to_foam(), req.b.to_foam(), req.matching.to_matching())
    return s.FoamResponse(foam=s.FoamModel(**foam_to_doc(out)))


def jflat_eval(req: s.FoamRequest) -> s.EvalResponse:
    res = evaluate(req.foam.to_foam())
    trace = [f"{st.rule}({','.join(st.cells)})" for st in res.trace.steps] \
        if req.trace else []
    return s.EvalResponse(value=res.value, trace=trace)


def jflat_rank(req: s.RankRequest) -> s.RankResponse:
    res = pairing_rank([g.to_foam() for g in req.generators],
                       [c.to_foam() for c in req.cogenerators],
                       req.matching.to_matching())
    return s.RankResponse(rank=res.rank, matrix=s.MatrixModel(
        rows=res.matrix.rows, cols=res.matrix.cols,
        entries=sorted(res.matrix.entries)))


def jflat_welldef(req: s.FoamRequest) -> s.WellDefResponse:
    values = sorted(well_definedness_report(req.foam.to_foam()))
    return s.WellDefResponse(values=values, well_defined=len(values) == 1)


def index_dimension(req: s.IndexRequest) -> s.IndexResponse:
    kappa = Fraction(req.kappa)
    self_int = Fraction(req.self_int)
    inp = IndexInput(kappa=kappa, b1=req.b1, bplus=req.bplus, chi=req.chi,
                     self_int=self_int, tau=req.tau, dots=req.dots)
    fd = formal_dimension(inp)
    bound = min_dots_for_nonzero(req.chi, self_int, req.tau)
    return s.IndexResponse(
        dimension=str(fd.value),
        is_integer=fd.is_integer,
        min_dots_for_nonzero=str(bound),
        kappa_admissible_with_tetra=kappa_admissible(kappa, True),
        kappa_admissible_without_tetra=kappa_admissible(kappa, False),
    )


def _parse_subset(key: str) -> frozenset[int]:
    key = key.strip()
    if not key:
        return frozenset()
    return frozenset(int(x) for x in key.split(","))


def _cube_operator(req: s.CubeRequest):
    u_maps = {}
    for key, m in req.u_maps.items():
        u_maps[_parse_subset(key)] = F2Matrix(m.rows, m.cols,
                                              frozenset(map(tuple, m.entries)))
    return build_cube_complex(req.base_dim, req.n, u_maps)


def cube_check(req: s.CubeRequest) -> s.CubeCheckResponse:
    op = _cube_operator(req)
    violation = None
    if op.first_violation is not None:
        violation = (sorted(op.first_violation[0]), sorted(op.first_violation[1]))
    return s.CubeCheckResponse(square_is_zero=op.square_is_zero,
                               first_violation=violation)


def cube_homology(req: s.CubeRequest) -> s.CubeHomologyResponse:
    op = _cube_operator(req)
    dim = cube_homology_dim(op) if op.square_is_zero else None
    return s.CubeHomologyResponse(square_is_zero=op.square_is_zero, homology_dim=dim)


def cube_e1(req: s.E1Request) -> s.E1Response:
    return s.E1Response(dims=e1_page(req.h_dims, req.n))


def algebra_pair(req: s.AlgebraPairRequest) -> s.AlgebraPairResponse:
    alg = DotAlgebra(req.kind)
    m = alg.pairing_matrix()
    return s.AlgebraPairResponse(
        basis=[list(b) for b in alg.basis()],
        matrix=s.MatrixModel(rows=m.rows, cols=m.cols, entries=sorted(m.entries)),
        rank=rank(m),
    )


def algebra_reduce(req: s.AlgebraReduceRequest) -> s.AlgebraReduceResponse:
    alg = DotAlgebra(req.kind)
    element = alg.element(tuple(m) for m in req.monomials)
    return s.AlgebraReduceResponse(monomials=sorted(list(m) for m in element))


def suite_run(name: str, req: s.SuiteRequest) -> s.SuiteResponse:
    report = run_suite(name, seed=req.seed, workers=req.workers)
    return s.SuiteResponse(
        suite=report.suite, passed=report.passed,
        cases=[s.SuiteCaseModel(name=c.name, passed=c.passed, detail=c.detail)
               for c in report.cases],
        counts=report.counts,
    )


def corpus_list() -> s.CorpusListResponse:
    return s.CorpusListResponse(names=corpus.list_corpus())


def corpus_get(name: str) -> dict:
    try:
        return corpus.load_doc(name)
    except FileNotFoundError as exc:
        raise HTTPException(status_code=404, detail=str(exc))


# path -> (handler, request model); the CLI dispatches through this table
ROUTES = {
    "/web/validate": (web_validate, s.WebRequest),
    "/web/tait": (web_tait, s.WebRequest),
    "/web/orbits": (web_orbits, s.WebRequest),
    "/web/bridges": (web_bridges, s.WebRequest),
    "/web/two-factors": (web_two_factors, s.WebRequest),
    "/web/o2": (web_o2, s.WebRequest),
    "/web/eta": (web_eta, s.EtaRequest),
    "/planar/faces": (planar_faces, s.WebRequest),
    "/planar/reduce": (planar_reduce, s.WebRequest),
    "/planar/conjecture": (planar_conjecture, s.WebRequest),
    "/foam/validate": (foam_validate, s.FoamRequest),
    "/foam/euler": (foam_euler, s.FoamRequest),
    "/foam/seams": (foam_seams, s.FoamRequest),
    "/foam/glue": (foam_glue, s.GlueRequest),
    "/jflat/eval": (jflat_eval, s.FoamRequest),
    "/jflat/rank": (jflat_rank, s.RankRequest),
    "/jflat/welldef": (jflat_welldef, s.FoamRequest),
    "/index": (index_dimension, s.IndexRequest),
    "/cube/check": (cube_check, s.CubeRequest),
    "/cube/homology": (cube_homology, s.CubeRequest),
    "/cube/e1": (cube_e1, s.E1Request),
    "/algebra/pair": (algebra_pair, s.AlgebraPairRequest),
    "/algebra/reduce": (algebra_reduce, s.AlgebraReduceRequest),
}


def create_app() -> FastAPI:
    app = FastAPI(title="foamcalc",
                  description="Tait colorings, planar web reduction and "
                              "mod-2 foam evaluation as a service")

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "schema_version": s.SCHEMA_VERSION}

    @app.get("/corpus", response_model=s.CorpusListResponse)
    def get_corpus_list():
        return corpus_list()

    @app.get("/corpus/{name}")
    def get_corpus_entry(name: str):
        return corpus_get(name)

    @app.post("/suite/{name}", response_model=s.SuiteResponse)
    def post_suite(name: str, req: s.SuiteRequest):
        try:
            return suite_run(name, req)
        except ValueError as exc:
            raise HTTPException(status_code=404, detail=str(exc))

    def register(path: str, handler, req_model):
        response_model = typing.get_type_hints(handler)["return"]

        def endpoint(req):
            try:
                return handler(req)
            except (ValueError, KeyError) as exc:
                raise HTTPException(status_code=400, detail=str(exc))

        # the postponed-annotations future turns signatures into strings,
        # so pin the resolved classes for FastAPI's inspection
        endpoint.__annotations__ = {"req": req_model, "return": response_model}
        app.post(path, response_model=response_model)(endpoint)

    for path, (handler, req_model) in ROUTES.items():
        register(path, handler, req_model)
    return app


app = create_app()
