"""Shared fixtures: the regression corpus and cached presentations."""

from pathlib import Path

import pytest

from toriclc import ToricPresentation, enumerate_classes

REPO = Path(__file__).resolve().parent.parent
CORPUS_DIR = REPO / "corpus"

# name -> (matrix rows, ideal degrees or "maximal" or None)
CORPUS = {
    "dim1_weyl": ([[1]], [(1,)]),
    "dim1_cusp": ([[2, 3]], [(2,)]),
    "dim1_2_5": ([[2, 5]], [(2,)]),
    "dim1_3_4_5": ([[3, 4, 5]], [(3,)]),
    "dim1_3_5_7": ([[3, 5, 7]], [(3,)]),
    "dim1_4_6_9": ([[4, 6, 9]], [(4,)]),
    "dim2_normal": ([[1, 1, 1], [0, 1, 2]], [(1, 1)]),
    "dim2_polynomial": ([[1, 0], [0, 1]], "maximal"),
    "dim2_scored_nonnormal": ([[1, 1, 1], [0, 1, 3]], "maximal"),
    "dim2_nonscored": ([[2, 0, 1, 1, 2], [0, 2, 1, 2, 1]], "maximal"),
    "dim3_hartshorne": ([[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]],
                        [(1, 0, 0), (1, 1, 0)]),
}

_presentations = {}
_enumerations = {}


def presentation(name: str) -> ToricPresentation:
    pres = _presentations.get(name)
    if pres is None:
        pres = ToricPresentation.build(CORPUS[name][0])
        _presentations[name] = pres
    return pres


def enumeration(name: str):
    enum = _enumerations.get(name)
    if enum is None:
        enum = enumerate_classes(presentation(name))
        _enumerations[name] = enum
    return enum


@pytest.fixture(scope="session")
def corpus_names():
    return tuple(CORPUS)


@pytest.fixture
def pres_2dim():
    return presentation("dim2_normal")


@pytest.fixture
def pres_hartshorne():
    return presentation("dim3_hartshorne")


@pytest.fixture
def pres_cusp():
    return presentation("dim1_cusp")
