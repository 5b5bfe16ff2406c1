import random

import pytest
from hypothesis import given, settings, strategies as st

from choicelab.bridge import derive_consequence
from choicelab.choice import ExplicitChoice, PreferentialChoice, make_preferential
from choicelab.consequence import (
    CORE_SIX,
    ConsequenceProperty as CP,
    ExplicitConsequence,
    cap_supersets,
    closure,
    eval_consequence_property,
    identity_consequence,
    k_operand,
    to_explicit,
)
from choicelab.frame import FiniteFrame, discrete_frame
from choicelab.proplang import build_prop_frame
from choicelab.report import InputError

import oracle


@pytest.fixture
def fix3_c(fix3):
    return derive_consequence(fix3, make_preferential(fix3, [("m2", "m1")]))


def test_closure_examples(fix3, fix3_c):
    fs = fix3.formula_set
    assert closure(fix3_c, fs(["p"])) == fs(["p"])
    assert closure(fix3_c, fs(["p", "q"])) == fs(["p", "q"])
    assert closure(fix3_c, 0) == 0
    assert closure(fix3_c, fs(["q"])) == fs(["q"])
    ident = identity_consequence(["a", "b", "c"])
    assert all(closure(ident, a) == a for a in range(8))


def test_cap_and_k_operand_examples(fix3, fix3_c):
    fs = fix3.formula_set
    assert cap_supersets(fix3_c, fs(["p"])) == fs(["p"])
    assert cap_supersets(fix3_c, 0) == 0
    assert cap_supersets(fix3_c, 3) == closure(fix3_c, 3)
    assert k_operand(fix3_c, fs(["p"]), fs(["q"])) == 0
    assert k_operand(fix3_c, fs(["p"]), fs(["p"])) == cap_supersets(fix3_c, fs(["p"]))
    ident = identity_consequence(["a", "b", "c"])
    for a in range(8):
        for b in range(8):
            assert k_operand(ident, a, b) == a & b


def test_fixture_properties_hold(fix3_c):
    for p in (*CORE_SIX, CP.CUMULATIVITY, CP.DISTRIBUTIVITY, CP.WEAK_COMPACTNESS):
        assert eval_consequence_property(fix3_c, p).holds, p
    assert eval_consequence_property(fix3_c, CP.INCLUSION).checked == 4


def test_to_explicit(fix3_c):
    exp = to_explicit(fix3_c)
    assert len(exp.table) == 4
    assert all(exp.closure(a) == fix3_c.closure(a) for a in range(4))
    for p in CORE_SIX:
        assert eval_consequence_property(exp, p) == eval_consequence_property(fix3_c, p)
    fr = discrete_frame(3)
    ident = derive_consequence(fr, ExplicitChoice(3, tuple(range(8))))
    assert to_explicit(ident).table == tuple(range(8))


def test_errors():
    c = identity_consequence(["p"])
    with pytest.raises(InputError, match="connective"):
        eval_consequence_property(c, CP.OR_LEFT_INTRO)
    with pytest.raises(InputError, match="canonical frame"):
        eval_consequence_property(c, CP.DISTRIBUTIVITY)
    with pytest.raises(InputError, match="width"):
        closure(c, 0b10)
    with pytest.raises(InputError, match="entries"):
        ExplicitConsequence(("p",), (0,))


ORACLE = {
    CP.INCLUSION: oracle.inclusion,
    CP.IDEMPOTENCE: oracle.idempotence,
    CP.CAUTIOUS_MONOTONICITY: oracle.cautious,
    CP.CONDITIONAL_MONOTONICITY: oracle.conditional,
    CP.THRESHOLD_MONOTONICITY: oracle.threshold,
    CP.CUMULATIVITY: oracle.cumulativity,
    CP.PROPERTY_E: oracle.prop_e,
}


def as_dict(c):
    names = c.formulas
    return {
        frozenset(names[j] for j in range(c.n) if a >> j & 1): frozenset(
            names[j] for j in range(c.n) if c.closure(a) >> j & 1
        )
        for a in range(1 << c.n)
    }


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3), st.randoms(use_true_random=False))
def test_explicit_properties_agree_with_oracle(n, rng):
    names = tuple("abc"[:n])
    # inflationary tables hit the interesting cases more often
    table = tuple(a | (rng.getrandbits(n) if rng.random() < 0.5 else 0) for a in range(1 << n))
    c = ExplicitConsequence(names, table)
    d = as_dict(c)
    for p, check in ORACLE.items():
        assert eval_consequence_property(c, p).holds == check(d, names), p


def small_derived(rng, n, l):
    rows = [rng.getrandbits(l) for _ in range(n)]
    fr = FiniteFrame.from_rows([f"m{i}" for i in range(n)], [f"a{j}" for j in range(l)], rows)
    t = tuple(rng.getrandbits(n) & x for x in range(1 << n))
    return fr, derive_consequence(fr, ExplicitChoice(n, t))


def test_derived_properties_agree_with_oracle():
    rng = random.Random(11)
    for _ in range(150):
        fr, c = small_derived(rng, rng.randint(1, 3), rng.randint(1, 3))
        ref = oracle.Frame(fr.models, fr.formulas, fr.sat)
        d = as_dict(c)
        for p, check in ORACLE.items():
            assert eval_consequence_property(c, p).holds == check(d, fr.formulas), p
        got = eval_consequence_property(c, CP.DISTRIBUTIVITY).holds
        assert got == oracle.distributivity(d, fr.formulas, ref)


def test_quotient_matches_naive_on_small_frames():
    rng = random.Random(3)
    props = [p for p in CP if p not in (CP.OR_LEFT_INTRO, CP.OR_RIGHT_INTRO, CP.NEG_LEFT_INTRO, CP.NEG_LEFT_ELIM)]
    for _ in range(300):
        fr, c = small_derived(rng, rng.randint(1, 3), rng.randint(1, 3))
        for p in props:
            naive = eval_consequence_property(c, p, method="naive")
            quot = eval_consequence_property(c, p, method="quotient")
            # instance counts differ: the quotient visits one set per Mod class
            assert naive.holds == quot.holds, p


def test_superset_meet_reduction_matches_naive():
    rng = random.Random(4)
    for _ in range(200):
        fr, c = small_derived(rng, rng.randint(1, 3), rng.randint(0, 3))
        d = as_dict(c)
        for a in range(1 << c.n):
            want = oracle.cap(d, fr.formulas, frozenset(fr.formula_names(a)))
            assert set(fr.formula_names(cap_supersets(c, a))) == want


def test_meta_checks():
    rng = random.Random(8)
    for _ in range(300):
        n = rng.randint(1, 3)
        table = tuple(a | rng.getrandbits(n) for a in range(1 << n))
        c = ExplicitConsequence(tuple("xyz"[:n]), table)
        r = {p: eval_consequence_property(c, p).holds for p in CP if p.value in
             ("inclusion", "cautious-mono", "conditional-mono", "threshold-mono", "cumulativity")}
        if r[CP.CAUTIOUS_MONOTONICITY] and r[CP.CONDITIONAL_MONOTONICITY]:
            assert r[CP.CUMULATIVITY]
        if r[CP.INCLUSION] and r[CP.THRESHOLD_MONOTONICITY]:
            for a in range(1 << n):
                for b in range(1 << n):
                    u = c.closure(a) | c.closure(b)
                    assert c.closure(u) == cap_supersets(c, u)


def test_theory_of_models_below_superset_meet():
    rng = random.Random(9)
    for _ in range(100):
        fr, c = small_derived(rng, rng.randint(1, 3), rng.randint(1, 3))
        for a in range(1 << c.n):
            assert fr.th(fr.mod(a)) & ~cap_supersets(c, a) == 0


def test_preferential_on_truth_tables_gives_neg_intro():
    pf = build_prop_frame(1)
    for edges in (frozenset(), frozenset({(0, 1)}), frozenset({(1, 0)})):
        c = derive_consequence(pf.frame, PreferentialChoice(2, edges))
        assert eval_consequence_property(c, CP.NEG_LEFT_INTRO, pf.cs).holds
        assert c.closure(0b0110) == pf.frame.all_formulas  # {a, ¬a} has no models
