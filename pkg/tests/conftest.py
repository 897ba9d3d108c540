import sys
from pathlib import Path

import pytest
from hypothesis import settings

from singcurve.fixtures import load_fixture, shipped_corpus

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

CORPUS = shipped_corpus()


def corpus_bundle(name):
    return load_fixture(CORPUS / f"{name}.json")


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS


@pytest.fixture(scope="session")
def bundles():
    return {p.stem: load_fixture(p) for p in sorted(CORPUS.glob("*.json"))}
