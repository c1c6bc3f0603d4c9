"""Shared fixtures: every framework the suite analyses, built once."""

from __future__ import annotations

import pytest

import isoframe as iso

FIG2_NAMES = [
    "C1",
    "C2",
    "C3",
    "Cs_perp",
    "Cs_in",
    "C2v",
    "C3v_perp",
    "C3v_in",
]
COUNTEREXAMPLE_NAMES = ["C4", "C5", "C6", "C4v"]


@pytest.fixture(scope="session")
def tetrahedron():
    return iso.platonic("tetrahedron")


@pytest.fixture(scope="session")
def octahedron():
    return iso.platonic("octahedron")


@pytest.fixture(scope="session")
def icosahedron():
    return iso.platonic("icosahedron")


@pytest.fixture(scope="session")
def capped_tetrahedron(tetrahedron):
    return iso.cap_all_faces_symmetric(tetrahedron)


@pytest.fixture(scope="session")
def second_stellation(icosahedron):
    return iso.cap_all_faces_symmetric(icosahedron)


@pytest.fixture(scope="session")
def fig2_zoo():
    return {name: iso.fig2_examples(name) for name in FIG2_NAMES}


@pytest.fixture(scope="session")
def counterexample_zoo():
    return {name: iso.counterexample_2d(name) for name in COUNTEREXAMPLE_NAMES}


@pytest.fixture(scope="session")
def banana():
    return iso.double_banana()


# ---------------------------------------------------------------------------
# acceptance summary: one visible line per criterion at the end of the run

_ACCEPTANCE_LINES: dict[int, str] = {}


def record_acceptance(criterion: int, passed: bool, detail: str) -> None:
    word = "PASS" if passed else "FAIL"
    _ACCEPTANCE_LINES[criterion] = f"ACCEPTANCE {criterion}: {word} - {detail}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(_ACCEPTANCE_LINES[n])
