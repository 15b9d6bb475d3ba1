from pathlib import Path

import pytest

REPO = Path(__file__).resolve().parents[2]


@pytest.fixture(scope="session")
def fixtures() -> Path:
    return REPO / "fixtures"


@pytest.fixture()
def sample_statements(fixtures, tmp_path) -> Path:
    """Ten statements: nine from the corpus plus the location example."""
    corpus_lines = (fixtures / "statements.jsonl").read_text().splitlines()[:9]
    example_lines = [
        line
        for line in (fixtures / "examples" / "statements.jsonl").read_text().splitlines()
        if '"location-example"' in line
    ]
    assert len(example_lines) == 1
    path = tmp_path / "sample.jsonl"
    path.write_text("\n".join(corpus_lines + example_lines) + "\n")
    return path
