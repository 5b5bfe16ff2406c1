import random

import pytest
from hypothesis import given, settings, strategies as st

from choicelab.frame import (
    FiniteFrame,
    bare_frame,
    definable_family,
    definable_hull,
    discrete_frame,
    is_definable,
    is_union_closed,
    mod_of,
    th_of,
)
from choicelab.report import InputError

import oracle
from conftest import random_frame


def test_mod_examples(fix3):
    assert fix3.model_names(mod_of(fix3, fix3.formula_set(["p"]))) == ["m1", "m2"]
    assert fix3.model_names(mod_of(fix3, 0)) == ["m1", "m2", "m3"]
    assert fix3.model_names(mod_of(fix3, fix3.formula_set(["p", "q"]))) == ["m1"]


def test_th_examples(fix3):
    assert fix3.formula_names(th_of(fix3, fix3.model_set(["m2"]))) == ["p"]
    assert fix3.formula_names(th_of(fix3, 0)) == ["p", "q"]
    assert th_of(fix3, fix3.model_set(["m2", "m3"])) == 0


def test_hull_examples(fix3):
    ms = fix3.model_set
    assert definable_hull(fix3, ms(["m2"])) == ms(["m1", "m2"])
    assert definable_hull(fix3, ms(["m1", "m2"])) == ms(["m1", "m2"])
    assert definable_hull(fix3, ms(["m2", "m3"])) == ms(["m1", "m2", "m3"])


def test_definable_examples(fix3):
    ms = fix3.model_set
    assert is_definable(fix3, ms(["m1", "m2"]))
    assert is_definable(fix3, fix3.all_models)
    assert not is_definable(fix3, 0)
    names = [fix3.model_names(d) for d in definable_family(fix3)]
    assert names == [["m1"], ["m1", "m2"], ["m1", "m3"], ["m1", "m2", "m3"]]
    assert is_union_closed(fix3) == (True, None)


def test_not_union_closed():
    fr = FiniteFrame(("a", "b", "c"), ("p", "q"), ((1, 0), (0, 1), (0, 0)))
    ok, pair = is_union_closed(fr)
    assert not ok
    assert fr.model_names(pair[0] | pair[1]) == ["a", "b"]


def test_definable_family_matches_oracle():
    rng = random.Random(5)
    for _ in range(60):
        fr = random_frame(rng, rng.randint(0, 5), rng.randint(0, 4))
        ref = oracle.Frame(fr.models, fr.formulas, fr.sat)
        got = {frozenset(fr.model_names(d)) for d in definable_family(fr)}
        assert got == ref.definable()
        for a in range(1 << fr.n_formulas):
            assert set(fr.model_names(fr.mod(a))) == ref.mod(fr.formula_names(a))
        for x in range(1 << fr.n_models):
            assert set(fr.formula_names(fr.th(x))) == ref.th(fr.model_names(x))


def test_family_order_is_size_then_value():
    fr = discrete_frame(3)
    assert definable_family(fr) == [0, 1, 2, 4, 3, 5, 6, 7]


def test_bare_and_discrete():
    assert definable_family(bare_frame(3)) == [7]
    assert len(definable_family(discrete_frame(4))) == 16


@st.composite
def frames(draw):
    n = draw(st.integers(0, 6))
    l = draw(st.integers(0, 6))
    rows = draw(st.lists(st.integers(0, 2**l - 1), min_size=n, max_size=n))
    return FiniteFrame.from_rows([f"m{i}" for i in range(n)], [f"a{j}" for j in range(l)], rows)


@settings(max_examples=150, deadline=None)
@given(frames(), st.data())
def test_galois_laws(fr, data):
    x = data.draw(st.integers(0, fr.all_models))
    y = data.draw(st.integers(0, fr.all_models))
    a = data.draw(st.integers(0, fr.all_formulas))
    b = data.draw(st.integers(0, fr.all_formulas))
    # antitone
    assert fr.th(x | y) & ~fr.th(x) == 0
    assert fr.mod(a | b) & ~fr.mod(a) == 0
    # adjunction: X ⊆ Mod(A) iff A ⊆ Th(X)
    assert (x & ~fr.mod(a) == 0) == (a & ~fr.th(x) == 0)
    # triple application
    assert fr.th(fr.mod(fr.th(x))) == fr.th(x)
    assert fr.mod(fr.th(fr.mod(a))) == fr.mod(a)
    # hull is a closure operator
    h = fr.hull(x)
    assert x & ~h == 0
    assert fr.hull(h) == h
    if x & ~y == 0:
        assert h & ~fr.hull(y) == 0
    # intersection closure of the family
    fam = fr.definable_set
    d1 = data.draw(st.sampled_from(sorted(fam)))
    d2 = data.draw(st.sampled_from(sorted(fam)))
    assert d1 & d2 in fam
    assert fr.all_models in fam


def test_frame_errors():
    with pytest.raises(InputError, match="duplicate model"):
        FiniteFrame(("a", "a"), (), ((), ()))
    with pytest.raises(InputError, match="row 1"):
        FiniteFrame(("a", "b"), ("p",), ((1,), ()))
    with pytest.raises(InputError, match="cap"):
        FiniteFrame(tuple(str(i) for i in range(63)), (), tuple(() for _ in range(63)))
    fr = bare_frame(2)
    with pytest.raises(InputError, match="width"):
        th_of(fr, 0b100)
    with pytest.raises(InputError, match="unknown model"):
        fr.model_set(["z"])
