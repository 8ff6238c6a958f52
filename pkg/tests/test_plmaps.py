"""Exact PL interval maps and the realization of expansion forests."""

from __future__ import annotations

from fractions import Fraction

import pytest

from braidfrac.drs import enumerate_expansions, forest_from_steps, graft
from braidfrac.ordering import Sign
from braidfrac.plmaps import (
    PLMap,
    PLMapError,
    pl_compose,
    pl_sign,
    realize_forest,
    realize_pair,
)

F = Fraction


def test_validation():
    with pytest.raises(PLMapError):
        PLMap(((F(0), F(1)), (F(1), F(2))))  # must start at the origin
    with pytest.raises(PLMapError):
        PLMap(((F(0), F(0)), (F(1), F(1)), (F(1), F(2))))  # not strictly increasing
    with pytest.raises(PLMapError):
        PLMap(((F(0), F(0)),))


def test_identity_and_call():
    f = PLMap.identity(2)
    assert f(F(1, 3)) == F(1, 3)
    assert f.is_identity()
    g = PLMap.from_points([(F(0), F(0)), (F(1), F(2)), (F(2), F(3))])
    assert g(F(1, 2)) == F(1)
    assert g(F(3, 2)) == F(5, 2)
    with pytest.raises(PLMapError):
        g(F(3))


def test_inverse_and_compose():
    g = PLMap.from_points([(F(0), F(0)), (F(1), F(3)), (F(2), F(4))])
    assert pl_compose(g, g.inverse()).is_identity()
    assert pl_compose(g.inverse(), g).is_identity()
    h = PLMap.from_points([(F(0), F(0)), (F(3), F(1)), (F(4), F(4))])
    fg = pl_compose(h, g)
    for x in (F(0), F(1, 2), F(1), F(3, 2), F(2)):
        assert fg(x) == h(g(x))


def test_prune_collinear():
    f = PLMap.from_points([(F(0), F(0)), (F(1), F(1)), (F(2), F(2))])
    assert f.breakpoints == ((F(0), F(0)), (F(2), F(2)))


def test_format_parse_round_trip():
    f = PLMap.from_points([(F(0), F(0)), (F(1, 2), F(1, 4)), (F(1), F(1))])
    assert PLMap.parse_text(f.format_text()) == f
    assert f.format_text() == "(0,0) (1/2,1/4) (1,1)"


def test_realize_forest_shape(thompson2):
    f = realize_forest(forest_from_steps(thompson2, ("x",), [1]))
    assert f.breakpoints == ((F(0), F(0)), (F(2), F(1)))
    assert f.domain_length == 2 and f.range_length == 1


def test_realize_pair_dyadic_map(thompson2):
    # doubling map on the left half against the balanced subdivision
    t = forest_from_steps(thompson2, ("x",), [1, 1])
    s = forest_from_steps(thompson2, ("x",), [1, 2])
    m = realize_pair(t, s)
    assert m.breakpoints == (
        (F(0), F(0)),
        (F(1, 2), F(1, 4)),
        (F(3, 4), F(1, 2)),
        (F(1), F(1)),
    )
    assert pl_sign(m) is Sign.NEGATIVE
    assert pl_sign(m.inverse()) is Sign.POSITIVE
    assert pl_sign(realize_pair(t, t)) is Sign.ZERO


def test_realization_functorial(thompson2):
    for f in enumerate_expansions(thompson2, ("x",), 2):
        for g in enumerate_expansions(thompson2, f.leaves(), 2):
            lhs = realize_forest(graft(f, g))
            rhs = pl_compose(realize_forest(f), realize_forest(g))
            assert lhs == rhs


def test_realization_faithful(thompson2):
    for t in enumerate_expansions(thompson2, ("x",), 3):
        for s in enumerate_expansions(thompson2, ("x",), 3):
            if t.leaf_count() != s.leaf_count():
                continue
            m = realize_pair(t, s)
            assert m.is_identity() == (t == s)


def test_pl_sign_is_first_deviation():
    # above the diagonal first, below later: sign follows the first breakpoint
    m = PLMap.from_points(
        [(F(0), F(0)), (F(1, 4), F(1, 2)), (F(7, 8), F(3, 4)), (F(1), F(1))]
    )
    assert pl_sign(m) is Sign.POSITIVE
