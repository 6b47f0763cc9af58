from __future__ import annotations

import itertools

import pytest
from hypothesis import strategies as st

from linkpoly.corpus import bundled_corpus
from linkpoly.diagram import LinkDiagram, from_braid_word, parse_pd

# Regular-isotopic pairs built from braid relations and hand-entered PD codes.
R2_PAIRS = [
    ("r2-unlink", from_braid_word((1, -1), 2), LinkDiagram((), 2)),
    ("r2-hopf", from_braid_word((1, 1, 1, -1), 2), from_braid_word((1, 1), 2)),
    ("r2-trefoil", from_braid_word((1, 1, 2, -2, 1), 3), from_braid_word((1, 1, 1), 3)),
    ("r2-pd", parse_pd("X[1,3,2,4] X[2,3,1,4]"), LinkDiagram((), 2)),
]
R3_PAIRS = [
    ("r3-positive", from_braid_word((1, 2, 1), 3), from_braid_word((2, 1, 2), 3)),
    ("r3-negative", from_braid_word((-1, -2, -1), 3), from_braid_word((-2, -1, -2), 3)),
    ("r3-mixed", from_braid_word((-1, 2, 1), 3), from_braid_word((2, 1, -2), 3)),
    ("r3-in-knot", from_braid_word((1, 2, 1, 2, -1), 3), from_braid_word((2, 1, 2, 2, -1), 3)),
]
# (name, diagram with an extra curl, diagram without it, writhe of the curl)
R1_PAIRS = [
    ("r1-pd-positive", parse_pd("X[1,1,2,2]"), LinkDiagram((), 1), 1),
    ("r1-pd-negative", parse_pd("X[1,2,2,1]"), LinkDiagram((), 1), -1),
    ("r1-trefoil-positive", from_braid_word((1, 1, 1, 2), 3), from_braid_word((1, 1, 1), 2), 1),
    ("r1-trefoil-negative", from_braid_word((1, 1, 1, -2), 3), from_braid_word((1, 1, 1), 2), -1),
    ("r1-figure-eight", from_braid_word((1, -2, 1, -2, -3), 4), from_braid_word((1, -2, 1, -2), 3), -1),
]


def small_diagrams(max_crossings: int = 3) -> list[tuple[str, LinkDiagram]]:
    """Every braid closure with at most ``max_crossings`` letters on 2 or 3
    strands, plus the corpus entries that small."""
    out = []
    for strands in (2, 3):
        gens = [g for i in range(1, strands) for g in (i, -i)]
        for length in range(max_crossings + 1):
            for word in itertools.product(gens, repeat=length):
                out.append((f"BR{strands}{word}", from_braid_word(word, strands)))
    for e in bundled_corpus():
        d = e.diagram()
        if len(d.crossings) <= max_crossings:
            out.append((e.name, d))
    return out


@st.composite
def braid_diagrams(draw, max_strands: int = 4, max_length: int = 6):
    strands = draw(st.integers(2, max_strands))
    gens = [g for i in range(1, strands) for g in (i, -i)]
    word = draw(st.lists(st.sampled_from(gens), max_size=max_length))
    return from_braid_word(word, strands)


@pytest.fixture(scope="session")
def corpus():
    return bundled_corpus()


# acceptance lines are collected here and echoed in the terminal summary
ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k)):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
