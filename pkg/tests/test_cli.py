import json

import pytest
from click.testing import CliRunner

from foamcalc.cli import main
from foamcalc.corpus import corpus_dir
from foamcalc.serialization import dumps, foam_to_doc, matrix_to_text
from foamcalc.foams import disk_cap, theta_half, identity_matching
from foamcalc.homalg import F2Matrix


@pytest.fixture()
def runner():
    return CliRunner()


def corpus_file(name: str) -> str:
    return str(corpus_dir() / f"{name}.json")


def last_line(output: str) -> str:
    return output.strip().splitlines()[-1]


def test_web_tait(runner):
    res = runner.invoke(main, ["web", "tait", corpus_file("dodecahedron")])
    assert res.exit_code == 0
    assert last_line(res.output) == "60"


def test_corpus_name_resolution(runner):
    res = runner.invoke(main, ["web", "tait", "corpus:theta"])
    assert res.exit_code == 0 and last_line(res.output) == "6"
    res = runner.invoke(main, ["web", "orbits", "dodecahedron"])
    assert res.exit_code == 0 and last_line(res.output) == "10"


def test_jflat_eval(runner):
    res = runner.invoke(main, ["jflat", "eval", corpus_file("theta_012")])
    assert res.exit_code == 0 and last_line(res.output) == "1"
    res = runner.invoke(main, ["jflat", "eval", "theta_111", "--trace"])
    assert res.exit_code == 0 and last_line(res.output) == "0"
    assert "cut-circle" in res.output


def test_jflat_eval_all_choices(runner):
    res = runner.invoke(main, ["jflat", "eval", "suspension_k4_012", "--all-choices"])
    assert res.exit_code == 0 and last_line(res.output) == "1"


def test_planar_reduce(runner):
    res = runner.invoke(main, ["planar", "reduce", "cube"])
    assert res.exit_code == 0 and last_line(res.output) == "24"
    res = runner.invoke(main, ["planar", "reduce", "dodecahedron"])
    assert res.exit_code == 0 and last_line(res.output) == "STUCK"
    res = runner.invoke(main, ["planar", "reduce", "theta", "--trace"])
    assert "bigon" in res.output


def test_planar_conjecture(runner):
    res = runner.invoke(main, ["planar", "conjecture", "cube"])
    assert last_line(res.output) == "agree"
    res = runner.invoke(main, ["planar", "conjecture", "dodecahedron"])
    assert last_line(res.output) == "N/A"


def test_web_structure_commands(runner):
    res = runner.invoke(main, ["web", "bridges", "dumbbell"])
    assert res.exit_code == 0 and last_line(res.output) == "1"
    assert "br" in res.output
    res = runner.invoke(main, ["web", "two-factors", "petersen"])
    assert res.exit_code == 0 and last_line(res.output) == "6"
    res = runner.invoke(main, ["web", "o2", "k4"])
    assert last_line(res.output) == "1"
    res = runner.invoke(main, ["web", "o2", "petersen"])
    assert last_line(res.output) == "0"
    res = runner.invoke(main, ["planar", "faces", "theta"])
    assert res.exit_code == 0 and last_line(res.output) == "3"
    res = runner.invoke(main, ["web", "reduce", "cube"])
    assert last_line(res.output) == "24"


def test_web_eta(runner):
    flow = json.dumps({"ab": 1, "bc": 1, "ac": 1, "ad": 0, "bd": 0, "cd": 0})
    res = runner.invoke(main, ["web", "eta", "k4", "--flow", flow])
    assert res.exit_code == 0 and last_line(res.output) == "3"


def test_foam_commands(runner):
    res = runner.invoke(main, ["foam", "euler", "suspension_k4"])
    assert last_line(res.output) == "4"
    res = runner.invoke(main, ["foam", "validate", "theta_000"])
    assert last_line(res.output) == "1"
    res = runner.invoke(main, ["foam", "seams", "suspension_k4"])
    assert "bipartite" in res.output


def test_foam_glue(runner, tmp_path):
    cap = tmp_path / "cap.json"
    cap.write_text(dumps(foam_to_doc(disk_cap(1))))
    matching = tmp_path / "matching.json"
    matching.write_text(json.dumps({"vertices": {}, "edges": {"c1": "c1"}}))
    res = runner.invoke(main, ["foam", "glue", str(cap), str(cap),
                               "--matching", str(matching)])
    assert res.exit_code == 0
    assert '"dots": 2' in res.output


def test_jflat_rank(runner, tmp_path):
    gens = tmp_path / "gens"
    gens.mkdir()
    for k2 in range(2):
        for k3 in range(3):
            doc = foam_to_doc(theta_half(0, k2, k3))
            (gens / f"g{k2}{k3}.json").write_text(dumps(doc))
    w = theta_half(0, 0, 0).web
    m = identity_matching(w)
    matching = tmp_path / "matching.json"
    matching.write_text(json.dumps({"vertices": dict(m.vertices),
                                    "edges": dict(m.edges)}))
    res = runner.invoke(main, ["jflat", "rank", "--gens", str(gens),
                               "--cogens", str(gens), "--matching", str(matching)])
    assert res.exit_code == 0
    assert last_line(res.output) == "6"


def test_jflat_welldef(runner):
    res = runner.invoke(main, ["jflat", "welldef", "suspension_k4"])
    assert res.exit_code == 0 and last_line(res.output) == "1"


def test_index(runner):
    res = runner.invoke(main, ["index", "--kappa", "0", "--chi", "4", "--tau", "2"])
    assert res.exit_code == 0
    assert last_line(res.output) == "0"
    assert "min dots" in res.output


def test_index_json_mode(runner):
    res = runner.invoke(main, ["--json", "index", "--kappa", "1/8", "--b1", "1"])
    body = json.loads(res.output)
    assert body["dimension"] == "1"
    assert body["schema_version"] == "1"


def test_json_provenance(runner):
    res = runner.invoke(main, ["--json", "web", "tait", corpus_file("theta")])
    body = json.loads(res.output)
    assert body["value"] == 6
    assert body["provenance"]["input"].endswith("theta.json")
    assert len(body["provenance"]["sha256"]) == 64


def test_cube_commands(runner, tmp_path):
    (tmp_path / "d.txt").write_text(matrix_to_text(F2Matrix.zero(2, 2)))
    (tmp_path / "u1.txt").write_text(
        matrix_to_text(F2Matrix(2, 2, frozenset({(0, 1)}))))
    manifest = tmp_path / "cube.json"
    manifest.write_text(json.dumps(
        {"base_dim": 2, "n": 1, "u_maps": {"": "d.txt", "1": "u1.txt"}}))
    res = runner.invoke(main, ["cube", "check", str(manifest)])
    assert res.exit_code == 0 and last_line(res.output) == "1"
    res = runner.invoke(main, ["cube", "homology", str(manifest)])
    assert last_line(res.output) == "2"
    res = runner.invoke(main, ["cube", "e1", "--dims", "1,1", "--n", "2"])
    assert last_line(res.output) == "8"


def test_algebra_commands(runner):
    res = runner.invoke(main, ["algebra", "pair", "--kind", "unknot"])
    assert last_line(res.output) == "3"
    res = runner.invoke(main, ["algebra", "reduce", "--kind", "flag",
                               "--monomials", "[[1,0,0],[0,1,0],[0,0,1]]"])
    assert res.exit_code == 0 and last_line(res.output) == "0"


def test_suite_command(runner):
    res = runner.invoke(main, ["suite", "welldef"])
    assert res.exit_code == 0
    assert last_line(res.output) == "12/12"


def test_corpus_commands(runner):
    res = runner.invoke(main, ["corpus", "list"])
    assert "theta_012" in res.output
    res = runner.invoke(main, ["corpus", "show", "circle"])
    assert json.loads(res.output)["edges"][0]["ends"] is None
    res = runner.invoke(main, ["corpus", "path", "theta"])
    assert res.output.strip().endswith("theta.json")


def test_missing_input(runner):
    res = runner.invoke(main, ["web", "tait", "no_such_thing"])
    assert res.exit_code != 0
    assert "no such file or corpus entry" in res.output


def test_web_validate_command(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"vertices": ["a"], "edges": []}))
    res = runner.invoke(main, ["web", "validate", str(bad)])
    assert last_line(res.output) == "0"
    assert "degree" in res.output
