"""The bundled corpus of webs and foams.

Every file is canonical JSON produced by :mod:`foamcalc.serialization`;
``build_corpus`` regenerates the whole set from the standard constructors,
and the test suite checks the bundled files byte for byte against it.
"""

from __future__ import annotations

from pathlib import Path

from . import standard
from .foams import Foam, closed_surface, dotted_sphere, suspension, theta_foam
from .planar import RotationWeb
from .serialization import (dumps, foam_from_doc, foam_to_doc,
                            rotation_web_from_doc, rotation_web_to_doc,
                            web_from_doc, web_to_doc)
from .webs import Web
import json


def corpus_dir() -> Path:
    return Path(__file__).parent / "corpus"


def list_corpus() -> list[str]:
    return sorted(p.stem for p in corpus_dir().glob("*.json"))


def load_doc(name: str) -> dict:
    path = corpus_dir() / f"{name}.json"
    if not path.exists():
        raise FileNotFoundError(f"no corpus entry {name!r}")
    return json.loads(path.read_text())


def is_foam_doc(doc: dict) -> bool:
    return "facets" in doc


def load_web(name: str) -> Web:
    return web_from_doc(load_doc(name))


def load_rotation_web(name: str) -> RotationWeb:
    doc = load_doc(name)
    if "rotation" not in doc:
        raise ValueError(f"corpus entry {name!r} has no rotation system")
    return rotation_web_from_doc(doc)


def load_foam(name: str) -> Foam:
    return foam_from_doc(load_doc(name))


WEB_NAMES = ("circle", "theta", "k4", "prism2", "prism3", "cube",
             "petersen", "dodecahedron", "dumbbell")
ROTATION_NAMES = ("circle", "theta", "k4", "prism2", "prism3", "cube",
                  "dodecahedron", "dumbbell")
FOAM_NAMES = ("theta_000", "theta_012", "theta_111", "theta_022",
              "sphere0", "sphere1", "sphere2",
              "suspension_k4", "suspension_k4_012",
              "torus", "genus2", "klein")


def _corpus_docs() -> dict[str, dict]:
    docs: dict[str, dict] = {}
    rotations = {
        "circle": RotationWeb(standard.circle_web(), {}),
        "theta": standard.theta_rotation(),
        "k4": standard.k4_rotation(),
        "prism2": standard.prism_rotation(2),
        "prism3": standard.prism_rotation(3),
        "cube": standard.cube_rotation(),
        "dodecahedron": standard.dodecahedron_rotation(),
        "dumbbell": standard.dumbbell_rotation(),
    }
    for name, rw in rotations.items():
        docs[name] = rotation_web_to_doc(rw)
    docs["petersen"] = web_to_doc(standard.petersen_web())

    k4 = standard.k4_web()
    foams = {
        "theta_000": theta_foam(0, 0, 0),
        "theta_012": theta_foam(0, 1, 2),
        "theta_111": theta_foam(1, 1, 1),
        "theta_022": theta_foam(0, 2, 2),
        "sphere0": dotted_sphere(0),
        "sphere1": dotted_sphere(1),
        "sphere2": dotted_sphere(2),
        "suspension_k4": suspension(k4),
        "suspension_k4_012": suspension(k4, {"ab": 0, "ac": 1, "ad": 2}),
        "torus": closed_surface(True, 1, 0),
        "genus2": closed_surface(True, 2, 0),
        "klein": closed_surface(False, 2, 0),
    }
    for name, fm in foams.items():
        docs[name] = foam_to_doc(fm)
    return docs


def build_corpus(target: Path | None = None) -> list[Path]:
    """Write the canonical corpus files; returns the paths written."""
    target = target or corpus_dir()
    target.mkdir(parents=True, exist_ok=True)
    out = []
    for name, doc in sorted(_corpus_docs().items()):
        path = target / f"{name}.json"
        path.write_text(dumps(doc))
        out.append(path)
    return out


def corpus_webs() -> dict[str, Web]:
    return {name: load_web(name) for name in WEB_NAMES}


def corpus_rotation_webs() -> dict[str, RotationWeb]:
    return {name: load_rotation_web(name) for name in ROTATION_NAMES}


def corpus_foams() -> dict[str, Foam]:
    return {name: load_foam(name) for name in FOAM_NAMES}
