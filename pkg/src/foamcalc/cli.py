"""The ``foamcalc`` command line: a thin client over the service layer.

Every subcommand builds the same request model the HTTP API takes and
dispatches it either in-process (the default) or to a running service
(``--url`` or the FOAMCALC_URL environment variable).  Text output ends
with a single machine-readable value on the last line; ``--json`` prints
the full response with provenance (input path and content hash).
"""

from __future__ import annotations

import hashlib
import json
import sys
from pathlib import Path
from typing import Optional

import click
from pydantic import BaseModel

from . import corpus
from .service import schemas as s
from .service.app import ROUTES, suite_run


def _dispatch(ctx: click.Context, path: str, payload: BaseModel) -> dict:
    url = ctx.obj["url"]
    if url:
        import httpx

        r = httpx.post(url.rstrip("/") + path,
                       json=payload.model_dump(mode="json"), timeout=600.0)
        if r.status_code >= 400:
            raise click.ClickException(f"{r.status_code}: {r.text}")
        return r.json()
    handler, _ = ROUTES[path]
    try:
        return handler(payload).model_dump(mode="json")
    except (ValueError, KeyError) as exc:
        raise click.ClickException(str(exc))


def _load_doc(ref: str) -> tuple[dict, dict]:
    """Load a JSON document from a file path or a corpus name; returns the
    document and its provenance record."""
    p = Path(ref)
    if p.exists():
        raw = p.read_bytes()
        return json.loads(raw), {"input": str(p),
                                 "sha256": hashlib.sha256(raw).hexdigest()}
    name = ref[len("corpus:"):] if ref.startswith("corpus:") else ref
    name = name.rsplit("/", 1)[-1]
    if name.endswith(".json"):
        name = name[: -len(".json")]
    try:
        doc = corpus.load_doc(name)
    except FileNotFoundError:
        raise click.ClickException(f"no such file or corpus entry: {ref}")
    raw = corpus.corpus_dir().joinpath(f"{name}.json").read_bytes()
    return doc, {"input": f"corpus:{name}",
                 "sha256": hashlib.sha256(raw).hexdigest()}


def _web_model(doc: dict) -> s.WebModel:
    return s.WebModel(**doc)


def _foam_model(doc: dict) -> s.FoamModel:
    if "facets" not in doc:
        raise click.ClickException("expected a foam document")
    return s.FoamModel(**doc)


def _emit(ctx: click.Context, resp: dict, provenance: dict,
          lines: list[str], final) -> None:
    if ctx.obj["json"]:
        out = dict(resp)
        out["provenance"] = provenance
        click.echo(json.dumps(out, sort_keys=True, indent=2))
    else:
        for line in lines:
            click.echo(line)
        click.echo(final)


@click.group()
@click.option("--json", "json_mode", is_flag=True, help="emit machine-readable JSON")
@click.option("--url", envvar="FOAMCALC_URL", default=None,
              help="dispatch to a running service instead of in-process")
@click.pass_context
def main(ctx: click.Context, json_mode: bool, url: Optional[str]) -> None:
    ctx.obj = {"json": json_mode, "url": url}


# ---------------------------------------------------------------------------
# web
# ---------------------------------------------------------------------------

@main.group()
def web() -> None:
    """Tait colorings, bridges, 2-factors and flows of abstract webs."""


def _web_command(name: str, path: str, help_text: str):
    @web.command(name=name, help=help_text)
    @click.argument("web_file")
    @click.pass_context
    def cmd(ctx, web_file):
        doc, prov = _load_doc(web_file)
        resp = _dispatch(ctx, path, s.WebRequest(web=_web_model(doc)))
        _emit(ctx, resp, prov, [], resp["value"])
    return cmd


_web_command("tait", "/web/tait", "Number of Tait colorings.")
_web_command("orbits", "/web/orbits", "Tait colorings up to color permutation.")
_web_command("o2", "/web/o2", "1 when some 2-factor has all cycles even.")


@web.command(name="reduce")
@click.argument("web_file")
@click.option("--trace", is_flag=True, help="print the rewrite trace")
@click.pass_context
def web_reduce(ctx, web_file, trace):
    """Alias of `planar reduce` (the input must carry a rotation system)."""
    doc, prov = _load_doc(web_file)
    resp = _dispatch(ctx, "/planar/reduce", s.WebRequest(web=_web_model(doc)))
    lines = list(resp["trace"]) if trace else []
    _emit(ctx, resp, prov, lines, resp["value"] if resp["terminated"] else "STUCK")


@web.command()
@click.argument("web_file")
@click.pass_context
def validate(ctx, web_file):
    """List the invariant violations of a web (empty means valid)."""
    doc, prov = _load_doc(web_file)
    resp = _dispatch(ctx, "/web/validate", s.WebRequest(web=_web_model(doc)))
    _emit(ctx, resp, prov, resp["violations"], int(resp["valid"]))


@web.command()
@click.argument("web_file")
@click.pass_context
def bridges(ctx, web_file):
    """Cut-edges of the web."""
    doc, prov = _load_doc(web_file)
    resp = _dispatch(ctx, "/web/bridges", s.WebRequest(web=_web_model(doc)))
    _emit(ctx, resp, prov, resp["bridges"], len(resp["bridges"]))


@web.command(name="two-factors")
@click.argument("web_file")
@click.pass_context
def two_factors_cmd(ctx, web_file):
    """All 2-factors with their cycle-length multisets."""
    doc, prov = _load_doc(web_file)
    resp = _dispatch(ctx, "/web/two-factors", s.WebRequest(web=_web_model(doc)))
    lines = [f"{' '.join(f['edges'])}  cycles={f['cycle_lengths']}"
             f"{'  even' if f['all_even'] else ''}" for f in resp["factors"]]
    _emit(ctx, resp, prov, lines, len(resp["factors"]))


@web.command()
@click.argument("web_file")
@click.option("--flow", required=True,
              help="edge->bit JSON object, or @file to read one")
@click.pass_context
def eta(ctx, web_file, flow):
    """Number of vertices with exactly two unit ends under a mod-2 flow."""
    doc, prov = _load_doc(web_file)
    if flow.startswith("@"):
        flow_map = json.loads(Path(flow[1:]).read_text())
    else:
        flow_map = json.loads(flow)
    resp = _dispatch(ctx, "/web/eta", s.EtaRequest(web=_web_model(doc), flow=flow_map))
    _emit(ctx, resp, prov, [], resp["value"])


# ---------------------------------------------------------------------------
# planar
# ---------------------------------------------------------------------------

@main.group()
def planar() -> None:
    """Faces, genus and the relation-rewriting dimension of planar webs."""


@planar.command()
@click.argument("web_file")
@click.pass_context
def faces(ctx, web_file):
    """Face walks of the rotation system and component genera."""
    doc, prov = _load_doc(web_file)
    resp = _dispatch(ctx, "/planar/faces", s.WebRequest(web=_web_model(doc)))
    lines = [" ".join(walk) for walk in resp["faces"]]
    lines.append(f"genera: {resp['genera']}")
    _emit(ctx, resp, prov, lines, len(resp["faces"]))


@planar.command()
@click.argument("web_file")
@click.option("--trace", is_flag=True, help="print the rewrite trace")
@click.pass_context
def reduce(ctx, web_file, trace):
    """Reduce by circle/bigon/triangle/square moves; prints the total or
    STUCK."""
    doc, prov = _load_doc(web_file)
    resp = _dispatch(ctx, "/planar/reduce", s.WebRequest(web=_web_model(doc)))
    lines = list(resp["trace"]) if trace else []
    final = resp["value"] if resp["terminated"] else "STUCK"
    _emit(ctx, resp, prov, lines, final)


@planar.command()
@click.argument("web_file")
@click.pass_context
def conjecture(ctx, web_file):
    """Compare the reduction total with the Tait count."""
    doc, prov = _load_doc(web_file)
    resp = _dispatch(ctx, "/planar/conjecture", s.WebRequest(web=_web_model(doc)))
    if resp["terminated"]:
        lines = [f"reduced={resp['reduced']} tait={resp['tait']}"]
        final = "agree" if resp["agree"] else "DISAGREE"
    else:
        lines = [f"reduced=STUCK tait={resp['tait']}"]
        final = "N/A"
    _emit(ctx, resp, prov, lines, final)


# ---------------------------------------------------------------------------
# foam
# ---------------------------------------------------------------------------

@main.group()
def foam() -> None:
    """Validation, Euler characteristic, seam graphs and gluing of foams."""


@foam.command(name="validate")
@click.argument("foam_file")
@click.pass_context
def foam_validate_cmd(ctx, foam_file):
    """List the invariant violations of a foam (empty means valid)."""
    doc, prov = _load_doc(foam_file)
    resp = _dispatch(ctx, "/foam/validate", s.FoamRequest(foam=_foam_model(doc)))
    _emit(ctx, resp, prov, resp["violations"], int(resp["valid"]))


@foam.command()
@click.argument("foam_file")
@click.pass_context
def euler(ctx, foam_file):
    """Euler characteristic of the underlying 2-complex."""
    doc, prov = _load_doc(foam_file)
    resp = _dispatch(ctx, "/foam/euler", s.FoamRequest(foam=_foam_model(doc)))
    _emit(ctx, resp, prov, [], resp["value"])


@foam.command()
@click.argument("foam_file")
@click.pass_context
def seams(ctx, foam_file):
    """The 4-valent seam graph and its bipartiteness."""
    doc, prov = _load_doc(foam_file)
    resp = _dispatch(ctx, "/foam/seams", s.FoamRequest(foam=_foam_model(doc)))
    lines = [f"{e} {ends[0]}-{ends[1]}" for e, ends in resp["edges"]]
    lines.append("bipartite" if resp["is_bipartite"] else "not bipartite")
    _emit(ctx, resp, prov, lines, int(resp["is_bipartite"]))


@foam.command(name="glue")
@click.argument("foam_a")
@click.argument("foam_b")
@click.option("--matching", "matching_file", required=True,
              help="web isomorphism JSON: {vertices: {...}, edges: {...}}")
@click.pass_context
def foam_glue_cmd(ctx, foam_a, foam_b, matching_file):
    """Glue two foams with boundary; prints the glued foam JSON."""
    doc_a, prov = _load_doc(foam_a)
    doc_b, _ = _load_doc(foam_b)
    mdoc, _ = _load_doc(matching_file)
    resp = _dispatch(ctx, "/foam/glue", s.GlueRequest(
        a=_foam_model(doc_a), b=_foam_model(doc_b),
        matching=s.MatchingModel(**mdoc)))
    _emit(ctx, resp, prov, [json.dumps(resp["foam"], sort_keys=True, indent=2)], "ok")


# ---------------------------------------------------------------------------
# jflat
# ---------------------------------------------------------------------------

@main.group()
def jflat() -> None:
    """The mod-2 evaluation of closed foams and pairing ranks."""


@jflat.command(name="eval")
@click.argument("foam_file")
@click.option("--trace", is_flag=True, help="print the pipeline trace")
@click.option("--all-choices", is_flag=True,
              help="sweep every matching and cut order instead")
@click.pass_context
def jflat_eval_cmd(ctx, foam_file, trace, all_choices):
    """Evaluate a closed foam to a bit."""
    doc, prov = _load_doc(foam_file)
    model = _foam_model(doc)
    if all_choices:
        resp = _dispatch(ctx, "/jflat/welldef", s.FoamRequest(foam=model))
        lines = [f"values: {resp['values']}"]
        final = resp["values"][0] if resp["well_defined"] else "AMBIGUOUS"
        _emit(ctx, resp, prov, lines, final)
        return
    resp = _dispatch(ctx, "/jflat/eval", s.FoamRequest(foam=model, trace=trace))
    _emit(ctx, resp, prov, list(resp["trace"]) if trace else [], resp["value"])


@jflat.command(name="welldef")
@click.argument("foam_file")
@click.pass_context
def jflat_welldef_cmd(ctx, foam_file):
    """Set of values over all admissible pipeline choices."""
    doc, prov = _load_doc(foam_file)
    resp = _dispatch(ctx, "/jflat/welldef", s.FoamRequest(foam=_foam_model(doc)))
    _emit(ctx, resp, prov, [f"values: {resp['values']}"], int(resp["well_defined"]))


@jflat.command(name="rank")
@click.option("--gens", "gens_dir", required=True, type=click.Path(exists=True))
@click.option("--cogens", "cogens_dir", required=True, type=click.Path(exists=True))
@click.option("--matching", "matching_file", required=True)
@click.pass_context
def jflat_rank_cmd(ctx, gens_dir, cogens_dir, matching_file):
    """Rank of the Gram matrix of glued evaluations."""

    def load_dir(d):
        files = sorted(Path(d).glob("*.json"))
        if not files:
            raise click.ClickException(f"no .json foams in {d}")
        return [s.FoamModel(**json.loads(p.read_text())) for p in files]

    mdoc, prov = _load_doc(matching_file)
    resp = _dispatch(ctx, "/jflat/rank", s.RankRequest(
        generators=load_dir(gens_dir), cogenerators=load_dir(cogens_dir),
        matching=s.MatchingModel(**mdoc)))
    lines = [f"matrix {resp['matrix']['rows']}x{resp['matrix']['cols']}: "
             f"{resp['matrix']['entries']}"]
    _emit(ctx, resp, prov, lines, resp["rank"])


# ---------------------------------------------------------------------------
# index
# ---------------------------------------------------------------------------

@main.command()
@click.option("--kappa", default="0", help="action, a rational like 3/8")
@click.option("--b1", default=0, type=int)
@click.option("--bplus", default=0, type=int)
@click.option("--chi", default=0, type=int)
@click.option("--selfint", default="0", help="self-intersection, rational")
@click.option("--tau", default=0, type=int)
@click.option("--dots", default=0, type=int)
@click.pass_context
def index(ctx, kappa, b1, bplus, chi, selfint, tau, dots):
    """The formal dimension and the action admissibility flags."""
    resp = _dispatch(ctx, "/index", s.IndexRequest(
        kappa=kappa, b1=b1, bplus=bplus, chi=chi, self_int=selfint,
        tau=tau, dots=dots))
    lines = [
        f"integer: {resp['is_integer']}",
        f"min dots for nonzero evaluation: {resp['min_dots_for_nonzero']}",
        f"kappa admissible (tetra points): {resp['kappa_admissible_with_tetra']}",
        f"kappa admissible (no tetra points): {resp['kappa_admissible_without_tetra']}",
    ]
    _emit(ctx, resp, {"input": "arguments"}, lines, resp["dimension"])


# ---------------------------------------------------------------------------
# cube / algebra
# ---------------------------------------------------------------------------

@main.group()
def cube() -> None:
    """The subset-indexed total complex over a base differential."""


def _cube_request(manifest_file: str) -> tuple[s.CubeRequest, dict]:
    from .serialization import matrix_from_text

    doc, prov = _load_doc(manifest_file)
    base = Path(manifest_file).parent
    u_maps = {}
    for key, rel in doc["u_maps"].items():
        m = matrix_from_text((base / rel).read_text())
        u_maps[key] = s.MatrixModel(rows=m.rows, cols=m.cols,
                                    entries=sorted(m.entries))
    return s.CubeRequest(base_dim=doc["base_dim"], n=doc["n"], u_maps=u_maps), prov


@cube.command()
@click.argument("manifest_file")
@click.pass_context
def check(ctx, manifest_file):
    """Verify that the total operator squares to zero.

    The manifest is JSON: {"base_dim": m, "n": k, "u_maps": {"": "d.txt",
    "1": "u1.txt", "1,2": "u12.txt", ...}} with matrix files relative to
    it ("rows cols" header then one "r c" line per entry).
    """
    req, prov = _cube_request(manifest_file)
    resp = _dispatch(ctx, "/cube/check", req)
    lines = [] if resp["first_violation"] is None else \
        [f"first violating block: {resp['first_violation']}"]
    _emit(ctx, resp, prov, lines, int(resp["square_is_zero"]))


@cube.command()
@click.argument("manifest_file")
@click.pass_context
def homology(ctx, manifest_file):
    """Total homology dimension of a verified square-zero operator."""
    req, prov = _cube_request(manifest_file)
    resp = _dispatch(ctx, "/cube/homology", req)
    if not resp["square_is_zero"]:
        raise click.ClickException("total operator does not square to zero")
    _emit(ctx, resp, prov, [], resp["homology_dim"])


@cube.command()
@click.option("--dims", required=True, help="comma-separated base homology dims")
@click.option("--n", "n_gens", required=True, type=int)
@click.pass_context
def e1(ctx, dims, n_gens):
    """First-page dimensions by filtration level (binomial pattern)."""
    h_dims = [int(x) for x in dims.split(",")]
    resp = _dispatch(ctx, "/cube/e1", s.E1Request(h_dims=h_dims, n=n_gens))
    items = sorted((int(k), v) for k, v in resp["dims"].items())
    lines = [f"m={m}: {d}" for m, d in items]
    _emit(ctx, resp, {"input": "arguments"}, lines, sum(d for _, d in items))


@main.group()
def algebra() -> None:
    """The one-variable and flag dot algebras."""


@algebra.command()
@click.option("--kind", type=click.Choice(["unknot", "flag"]), required=True)
@click.pass_context
def pair(ctx, kind):
    """Gram matrix of the basis pairing (through foam evaluations)."""
    resp = _dispatch(ctx, "/algebra/pair", s.AlgebraPairRequest(kind=kind))
    lines = [f"basis: {resp['basis']}",
             f"matrix entries: {resp['matrix']['entries']}"]
    _emit(ctx, resp, {"input": "arguments"}, lines, resp["rank"])


@algebra.command(name="reduce")
@click.option("--kind", type=click.Choice(["unknot", "flag"]), required=True)
@click.option("--monomials", required=True,
              help='JSON list of exponent tuples, e.g. "[[1,0,0],[0,1,0]]"')
@click.pass_context
def algebra_reduce_cmd(ctx, kind, monomials):
    """Reduce a sum of monomials to the canonical basis."""
    resp = _dispatch(ctx, "/algebra/reduce", s.AlgebraReduceRequest(
        kind=kind, monomials=json.loads(monomials)))
    _emit(ctx, resp, {"input": "arguments"},
          [json.dumps(resp["monomials"])], len(resp["monomials"]))


# ---------------------------------------------------------------------------
# suites, corpus, serve
# ---------------------------------------------------------------------------

@main.command()
@click.argument("name", type=click.Choice(["relations", "welldef", "conjecture", "algebra"]))
@click.option("--seed", default=0, type=int)
@click.option("--workers", default=None, type=int,
              help="parallel case runners (default FOAMCALC_THREADS or 1)")
@click.pass_context
def suite(ctx, name, seed, workers):
    """Run a property suite; non-zero exit on any failure."""
    if ctx.obj["url"]:
        import httpx

        r = httpx.post(ctx.obj["url"].rstrip("/") + f"/suite/{name}",
                       json={"seed": seed, "workers": workers}, timeout=3600.0)
        if r.status_code >= 400:
            raise click.ClickException(f"{r.status_code}: {r.text}")
        resp = r.json()
    else:
        resp = suite_run(name, s.SuiteRequest(seed=seed, workers=workers)) \
            .model_dump(mode="json")
    if ctx.obj["json"]:
        click.echo(json.dumps(resp, sort_keys=True, indent=2))
    else:
        for case in resp["cases"]:
            mark = "ok" if case["passed"] else "FAIL"
            detail = f"  {case['detail']}" if case["detail"] else ""
            click.echo(f"{mark:4} {case['name']}{detail}")
        good, total = resp["counts"]
        click.echo(f"{good}/{total}")
    if not resp["passed"]:
        sys.exit(1)


@main.group(name="corpus")
def corpus_group() -> None:
    """The bundled corpus of webs and foams."""


@corpus_group.command(name="list")
def corpus_list_cmd():
    for name in corpus.list_corpus():
        click.echo(name)


@corpus_group.command(name="show")
@click.argument("name")
def corpus_show(name):
    try:
        doc = corpus.load_doc(name)
    except FileNotFoundError as exc:
        raise click.ClickException(str(exc))
    click.echo(json.dumps(doc, sort_keys=True, indent=2))


@corpus_group.command(name="path")
@click.argument("name")
def corpus_path(name):
    p = corpus.corpus_dir() / f"{name}.json"
    if not p.exists():
        raise click.ClickException(f"no corpus entry {name!r}")
    click.echo(str(p))


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8000, type=int)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("foamcalc.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
