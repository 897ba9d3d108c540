"""Fixture bundles: JSON files pairing the different descriptions of one singularity.

A bundle holds any of ``char_exponents``, ``curve``, ``graph`` and
``delta_sequence``. When both ``curve`` and ``graph`` are present they
are taken to describe the same germ.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import FixtureError, InvalidCharExponents
from .graph import DualGraph
from .jets import CurveModel
from .semigroup import CharExponents

PAYLOADS = ("char_exponents", "curve", "graph", "delta_sequence")


@dataclass(frozen=True)
class FixtureBundle:
    name: str
    char_exponents: CharExponents | None = None
    curve: CurveModel | None = None
    graph: DualGraph | None = None
    delta_sequence: tuple | None = None
    raw: dict | None = None

    @property
    def paired(self):
        return self.curve is not None and self.graph is not None


def parse_bundle(data: dict, name: str = "fixture") -> FixtureBundle:
    """Build a bundle from a decoded JSON object.

    Graph records are validated eagerly, so a corrupted graph raises
    MalformedGraph here rather than later.
    """
    if not isinstance(data, dict):
        raise FixtureError(f"{name}: fixture must be a JSON object")
    if not any(k in data for k in PAYLOADS):
        raise FixtureError(f"{name}: no payload among {', '.join(PAYLOADS)}")
    name = data.get("name", name)
    ce = curve = delta = None
    if "char_exponents" in data:
        try:
            ce = CharExponents(tuple(data["char_exponents"]))
        except InvalidCharExponents:
            raise
        except (TypeError, ValueError) as exc:
            raise FixtureError(f"{name}: bad char_exponents") from exc
    if "curve" in data:
        curve = CurveModel.from_dict(data["curve"])
    graph = DualGraph.from_dict(data["graph"]) if "graph" in data else None
    if "delta_sequence" in data:
        try:
            delta = tuple(int(d) for d in data["delta_sequence"])
        except (TypeError, ValueError) as exc:
            raise FixtureError(f"{name}: bad delta_sequence") from exc
    if curve is not None and graph is not None and curve.r != graph.r:
        raise FixtureError(f"{name}: curve has {curve.r} branches but graph has {graph.r}")
    return FixtureBundle(name, ce, curve, graph, delta, data)


def load_fixture(path) -> FixtureBundle:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise FixtureError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: invalid JSON: {exc}") from exc
    return parse_bundle(data, path.stem)


def corpus_files(directory) -> list[Path]:
    directory = Path(directory)
    if not directory.is_dir():
        raise FixtureError(f"{directory} is not a directory")
    return sorted(directory.glob("*.json"))


def shipped_corpus() -> Path:
    return Path(str(resources.files("singcurve") / "corpus"))
