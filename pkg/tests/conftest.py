import pathlib

import pytest

from arcfloer import parse_curve_file

CORPUS_DIR = pathlib.Path(__file__).resolve().parent.parent / "corpus"


@pytest.fixture(scope="session")
def corpus():
    return {
        path.stem: parse_curve_file(str(path))
        for path in sorted(CORPUS_DIR.glob("*.curve"))
    }


@pytest.fixture(scope="session")
def corpus_dir():
    return CORPUS_DIR
