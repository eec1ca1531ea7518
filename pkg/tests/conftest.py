from pathlib import Path

import pytest

from cgelkit import build_graph, parse_corpus, parse_node

FIXTURES = Path(__file__).parent / "fixtures"
WELLFORMED = FIXTURES / "wellformed"
VIOLATIONS = FIXTURES / "violations"
FLAGGED = FIXTURES / "flagged"
APPENDIX_RAW = FIXTURES / "appendix_b_raw.cgel"


def load(path):
    return parse_corpus(Path(path).read_bytes())


def graph_of(text_or_path, strict=True):
    """Graph of a node literal, or of the single tree in a fixture file."""
    if isinstance(text_or_path, Path):
        (tree,) = load(text_or_path)
        return build_graph(tree, strict=strict)
    return build_graph(parse_node(text_or_path), strict=strict)


@pytest.fixture
def appendix_tree():
    (tree,) = load(APPENDIX_RAW)
    return tree


@pytest.fixture
def appendix_graph(appendix_tree):
    return build_graph(appendix_tree)


def pytest_terminal_summary(terminalreporter):
    import test_acceptance
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
