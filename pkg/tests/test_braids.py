"""Braid words, handle reduction, the lamination oracle and digital braids.

The word problem is always checked through both routes — handle reduction
and the integral lamination action — which are independent algorithms.
"""

from __future__ import annotations

import random

import pytest

from braidfrac.braids import (
    BraidWord,
    DigitalBraid,
    LabelMismatchError,
    StepBudgetExceeded,
    act_bottom,
    dehornoy_sign,
    forget_digits,
    free_reduce,
    handle_reduce,
    is_trivial_word,
    lamination_apply,
    lamination_initial,
    lamination_trivial,
)
from braidfrac.drs import ExpansionForest, SourceMismatchError, expand_at
from braidfrac.ordering import Sign


def test_free_reduce():
    assert free_reduce((1, -1)) == ()
    assert free_reduce((1, 2, -2, -1, 3)) == (3,)
    assert free_reduce((1, 2, 1)) == (1, 2, 1)


def test_braid_word_validation():
    with pytest.raises(ValueError):
        BraidWord(2, (2,))  # index out of range
    with pytest.raises(ValueError):
        BraidWord(2, (0,))
    with pytest.raises(ValueError):
        BraidWord(0, ())


def test_mul_free_reduces():
    w = BraidWord(3, (1,))
    assert (w * w.inverse()).letters == ()
    assert (w * BraidWord(3, (2,))).letters == (1, 2)


def test_permutation():
    assert BraidWord(3, ()).permutation() == (1, 2, 3)
    assert BraidWord(3, (1,)).permutation() == (2, 1, 3)
    assert BraidWord(3, (1, 2)).permutation() == (3, 1, 2)
    assert BraidWord(3, (-1,)).permutation() == (2, 1, 3)


def test_parse_format_round_trip():
    w = BraidWord.parse(4, "1 -2 3 3")
    assert w.letters == (1, -2, 3, 3)
    assert BraidWord.parse(4, w.format()) == w


def test_handle_reduction_commutator():
    w = BraidWord(3, (1, 2, -1, -2))
    assert handle_reduce(w).letters == (-2, 1)
    assert dehornoy_sign(w) is Sign.POSITIVE


def test_braid_relation_trivial():
    # sigma_1 sigma_2 sigma_1 = sigma_2 sigma_1 sigma_2
    w = BraidWord(3, (1, 2, 1, -2, -1, -2))
    assert is_trivial_word(w)
    assert lamination_trivial(w)


def test_far_commutation_trivial():
    w = BraidWord(4, (1, 3, -1, -3))
    assert is_trivial_word(w)
    assert lamination_trivial(w)


def test_dehornoy_sign_antisymmetric():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(2, 5)
        letters = tuple(
            rng.choice([-1, 1]) * rng.randint(1, n - 1)
            for _ in range(rng.randint(0, 12))
        )
        w = BraidWord(n, letters)
        s = dehornoy_sign(w)
        assert dehornoy_sign(w.inverse()) is -s
        assert (s is Sign.ZERO) == is_trivial_word(w)


def test_word_problem_cross_oracle():
    rng = random.Random(17)
    for _ in range(300):
        n = rng.randint(3, 6)
        letters = tuple(
            rng.choice([-1, 1]) * rng.randint(1, n - 1)
            for _ in range(rng.randint(0, 15))
        )
        w = BraidWord(n, letters)
        assert is_trivial_word(w) == lamination_trivial(w)


def test_lamination_initial():
    assert lamination_initial(3) == (0, 1, 0, 1, 0, 1)
    assert lamination_apply(BraidWord(3, ())) == lamination_initial(3)
    assert lamination_apply(BraidWord(3, (1,))) != lamination_initial(3)


def test_step_budget():
    w = BraidWord(3, (1, 2, -1, -2, 1, 2, -1, -2))
    with pytest.raises(StepBudgetExceeded):
        handle_reduce(w, budget=1)


def test_digital_braid_labels():
    DigitalBraid(("x", "y"), ("y", "x"), BraidWord(2, (1,)))
    with pytest.raises(LabelMismatchError):
        DigitalBraid(("x", "y"), ("y", "x"), BraidWord(2, ()))
    with pytest.raises(LabelMismatchError):
        DigitalBraid(("x",), ("x", "x"), BraidWord(2, ()))


def test_digital_braid_group_ops():
    g = DigitalBraid(("x", "y"), ("y", "x"), BraidWord(2, (1,)))
    assert not g.is_pure()
    assert g.compose(g.invert()).word.letters == ()
    assert forget_digits(g).letters == (1,)
    with pytest.raises(LabelMismatchError):
        g.compose(g)  # bottom ("y","x") != top ("x","y")
    assert DigitalBraid(("x", "x"), ("x", "x"), BraidWord(2, (1, 1))).is_pure()


def test_act_bottom_cables_single_crossing(thompson2):
    g = DigitalBraid(("x", "x"), ("x", "x"), BraidWord(2, (1,)))
    b = expand_at(ExpansionForest.identity(thompson2, ("x", "x")), 1)
    bup, gb = act_bottom(g, b)
    # doubling bottom position 1 widens the crossing into sigma_1 sigma_2
    assert gb.word.letters == (1, 2)
    assert [t.leaf_count for t in bup.trees] == [1, 2]
    assert gb.top == ("x", "x", "x") and gb.bottom == ("x", "x", "x")


def test_act_bottom_identity_forest(thompson2):
    g = DigitalBraid(("x", "x"), ("x", "x"), BraidWord(2, (1, 1)))
    b = ExpansionForest.identity(thompson2, ("x", "x"))
    bup, gb = act_bottom(g, b)
    assert gb.word == g.word and bup.is_identity()


def test_act_bottom_source_mismatch(thompson2):
    g = DigitalBraid(("x", "x"), ("x", "x"), BraidWord(2, (1,)))
    b = ExpansionForest.identity(thompson2, ("x",))
    with pytest.raises(SourceMismatchError):
        act_bottom(g, b)


def test_act_bottom_respects_composition(thompson2):
    # (g h)^B = g^(h B) h^B on a small random sample
    rng = random.Random(3)
    word = ("x",) * 3
    for _ in range(25):
        mk = lambda: DigitalBraid(
            word,
            word,
            BraidWord(
                3,
                free_reduce(
                    tuple(
                        rng.choice([-1, 1]) * rng.randint(1, 2)
                        for _ in range(rng.randint(0, 6))
                    )
                ),
            ),
        )
        g, h = mk(), mk()
        gh = g.compose(h)
        b = expand_at(ExpansionForest.identity(thompson2, word), rng.randint(1, 3))
        _, both = act_bottom(gh, b)
        bup, hb = act_bottom(h, b)
        _, gb = act_bottom(g, bup)
        diff = both.word * gb.compose(hb).word.inverse()
        assert not handle_reduce(diff).letters
        assert lamination_trivial(diff)
