from __future__ import annotations

import pytest

from braidfrac.families import edge_shift_drs, houghton_drs, thompson_drs
from braidfrac.fraction import Flavor, GroupContext


@pytest.fixture
def thompson2():
    return thompson_drs(2)


@pytest.fixture
def houghton3():
    return houghton_drs(3)


@pytest.fixture
def edge2():
    # two vertices, both of out-degree 2
    return edge_shift_drs([("a", ["a", "b"]), ("b", ["b", "a"])], base=("a",))


def make_context(drs, flavor: str, base=None) -> GroupContext:
    return GroupContext(drs, base if base is not None else drs.base, Flavor(flavor))


@pytest.fixture
def t2_braided(thompson2):
    return make_context(thompson2, "braided")


@pytest.fixture
def t2_pure(thompson2):
    return make_context(thompson2, "pure")


@pytest.fixture
def t2_plain(thompson2):
    return make_context(thompson2, "plain")


@pytest.fixture
def h3_braided(houghton3):
    return make_context(houghton3, "braided")


@pytest.fixture
def h3_pure(houghton3):
    return make_context(houghton3, "pure")
