import os

import pytest

FIXTURES = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


@pytest.fixture
def toy_corpus():
    return fixture_path("toy_corpus.jsonl")


@pytest.fixture
def toy_embeddings():
    return fixture_path("toy_embeddings.jsonl")


@pytest.fixture
def toy_token_embeddings():
    return fixture_path("toy_token_embeddings.jsonl")


@pytest.fixture
def toy_candidates():
    return fixture_path("toy_candidates.jsonl")


@pytest.fixture
def toy_nsp():
    return fixture_path("toy_nsp.jsonl")
