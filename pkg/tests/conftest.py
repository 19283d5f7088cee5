import json
from pathlib import Path

import pytest

from igtaug.corpus import parse_corpus

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def mini_corpus():
    with open(DATA / "mini_corpus.tsv", "rb") as fh:
        return parse_corpus(fh, "delimited", name="mini")


@pytest.fixture(scope="session")
def tiny_train():
    with open(DATA / "tiny_train.tsv", "rb") as fh:
        return parse_corpus(fh, "delimited", name="tiny")


@pytest.fixture(scope="session")
def mini_golden():
    return json.loads((DATA / "mini_stats_golden.json").read_text())


@pytest.fixture(scope="session")
def data_dir():
    return DATA
