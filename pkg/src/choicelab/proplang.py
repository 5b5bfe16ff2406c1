"""Connective-equipped frames: formulas are truth tables over ``k`` atoms.

Valuation ``v`` (an int whose bit ``i`` is the value of atom ``i``) is model
number ``v``; the formula with truth table ``t`` is formula number ``t`` and
holds at ``v`` iff bit ``v`` of ``t`` is set.  Hence the extension of a
formula is its own index read as a model set, disjunction is bitwise or and
negation is complement.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .bits import members
from .bridge import (
    CHOICE_CONCLUSIONS,
    REPRESENTATION,
    canonical_choice,
    frame_of_theories,
    verify_representation,
)
from .choice import Scope, evaluate_table
from .consequence import (
    CORE_SIX,
    ConsequenceOperation,
    ConsequenceProperty,
    eval_consequence_property,
)
from .frame import FiniteFrame
from .report import InputError, PropertyReport, TheoremReport

CP = ConsequenceProperty
MAX_ATOMS = 3
UNION_SAMPLE_PAIRS = 200
OR_SEMANTICS = "or-semantics"
NEG_SEMANTICS = "neg-semantics"
UNION_AS_VEE = "union-as-vee"
SATOH = "satoh-finitary"


@dataclass(frozen=True)
class ConnectiveStructure:
    or_table: tuple[tuple[int, ...], ...]
    neg_table: tuple[int, ...]


@dataclass(frozen=True)
class PropFrame:
    k: int
    frame: FiniteFrame
    cs: ConnectiveStructure

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.frame.n_formulas - 1


def valuation_name(v: int, k: int) -> str:
    return "v:" + "".join(str(v >> i & 1) for i in range(k))


def table_name(t: int, n_models: int) -> str:
    return "tt:" + "".join(str(t >> v & 1) for v in range(n_models))


def build_prop_frame(k: int) -> PropFrame:
    if not 0 <= k <= MAX_ATOMS:
        raise InputError(f"atom count {k} outside 0..{MAX_ATOMS}")
    n_models = 1 << k
    n_formulas = 1 << n_models
    models = tuple(valuation_name(v, k) for v in range(n_models))
    formulas = tuple(table_name(t, n_models) for t in range(n_formulas))
    # row v: the formulas true at v, i.e. tables with bit v set
    rows = []
    for v in range(n_models):
        rows.append(sum(1 << t for t in range(n_formulas) if t >> v & 1))
    frame = FiniteFrame.from_rows(models, formulas, rows, formula_cap=n_formulas)
    full = n_formulas - 1
    or_table = tuple(tuple(a | b for b in range(n_formulas)) for a in range(n_formulas))
    neg_table = tuple(full ^ a for a in range(n_formulas))
    return PropFrame(k, frame, ConnectiveStructure(or_table, neg_table))


def atom(pf: PropFrame, i: int) -> int:
    """Index of the formula 'atom i'."""
    return sum(1 << v for v in range(pf.frame.n_models) if v >> i & 1)


def vee_of_sets(pf: PropFrame, a: int, b: int) -> int:
    """{a ∨ b : a ∈ A, b ∈ B}."""
    or_t = pf.cs.or_table
    out = 0
    for i in members(a):
        row = or_t[i]
        for j in members(b):
            out |= 1 << row[j]
    return out


def connective_semantics(frame: FiniteFrame, cs: ConnectiveStructure) -> list[PropertyReport]:
    """Check ``m ⊨ a∨b iff m ⊨ a or m ⊨ b`` and ``m ⊨ ¬a iff m ⊭ a`` on ``frame``."""
    ext = frame.ext
    n = frame.n_formulas
    out = []
    checked = 0
    witness = None
    for a in range(n):
        for b in range(n):
            checked += 1
            if ext[cs.or_table[a][b]] != ext[a] | ext[b]:
                witness = {"a": frame.formulas[a], "b": frame.formulas[b]}
                break
        if witness:
            break
    out.append(PropertyReport(OR_SEMANTICS, witness is None, witness, checked))
    checked = 0
    witness = None
    for a in range(n):
        checked += 1
        if ext[cs.neg_table[a]] != frame.all_models & ~ext[a]:
            witness = {"a": frame.formulas[a]}
            break
    out.append(PropertyReport(NEG_SEMANTICS, witness is None, witness, checked))
    return out


def _small_sets(n: int, size: int) -> list[int]:
    out = []
    for r in range(size + 1):
        for combo in combinations(range(n), r):
            out.append(sum(1 << i for i in combo))
    return out


def check_union_as_vee(pf: PropFrame, seed: int = 0) -> PropertyReport:
    """Mod(A) ∪ Mod(B) = Mod(A ∨ B) on small sets plus seeded random pairs.

    All pairs with ``|A|, |B| <= 2`` are checked when that is at most a few
    hundred thousand pairs; otherwise sets of size at most 1.
    """
    fr = pf.frame
    n = fr.n_formulas
    small = _small_sets(n, 2)
    if len(small) ** 2 > 400_000:
        small = _small_sets(n, 1)
    pairs = [(a, b) for a in small for b in small]
    rng = random.Random(seed)
    for _ in range(UNION_SAMPLE_PAIRS):
        pairs.append((rng.getrandbits(n), rng.getrandbits(n)))
    checked = 0
    for a, b in pairs:
        checked += 1
        if fr.mod(a) | fr.mod(b) != fr.mod(vee_of_sets(pf, a, b)):
            return PropertyReport(
                UNION_AS_VEE,
                False,
                {"A": fr.formula_names(a), "B": fr.formula_names(b)},
                checked,
            )
    return PropertyReport(UNION_AS_VEE, True, None, checked)


def _check_formulas(pf: PropFrame, c: ConsequenceOperation) -> None:
    if tuple(c.formulas) != pf.frame.formulas:
        raise InputError(
            f"operation formulas do not match the {pf.k}-atom truth-table language"
        )


def check_satoh_finitary(pf: PropFrame, c: ConsequenceOperation) -> PropertyReport:
    """If a∨b |~ c then some a', b' with a |~ a', b |~ b' have a'∧b' ⊨ c.

    ``x |~ y`` reads ``y ∈ C({x})``; conjunction is truth-table meet and
    entailment is truth-table containment.
    """
    _check_formulas(pf, c)
    n = pf.frame.n_formulas
    single = [c.closure(1 << a) for a in range(n)]
    or_t = pf.cs.or_table
    names = pf.frame.formulas
    checked = 0
    for a in range(n):
        left = list(members(single[a]))
        for b in range(n):
            right = list(members(single[b]))
            meets = {x & y for x in left for y in right}
            for cc in members(single[or_t[a][b]]):
                checked += 1
                if not any(m & ~cc == 0 for m in meets):
                    return PropertyReport(
                        SATOH, False, {"a": names[a], "b": names[b], "c": names[cc]}, checked
                    )
    return PropertyReport(SATOH, True, None, checked)


THEOREM3_HYPOTHESES = (
    CP.WEAK_COMPACTNESS,
    CP.NEG_LEFT_INTRO,
    CP.NEG_LEFT_ELIM,
    CP.OR_LEFT_INTRO,
    CP.OR_RIGHT_INTRO,
    *CORE_SIX[:5],
)


def prime_complete_theories(pf: PropFrame, c: ConsequenceOperation) -> list[int]:
    """Theories T = C(T) that are ∨-prime and contain exactly one of a, ¬a for each a."""
    n = pf.frame.n_formulas
    or_t, neg_t = pf.cs.or_table, pf.cs.neg_table
    out = []
    for t in _candidate_theories(pf, c):
        if any((t >> a & 1) == (t >> neg_t[a] & 1) for a in range(n)):
            continue
        prime = True
        for a in range(n):
            if not prime:
                break
            for b in range(a, n):
                if t >> or_t[a][b] & 1 and not (t >> a & 1 or t >> b & 1):
                    prime = False
                    break
        if prime:
            out.append(t)
    return sorted(out)


def _candidate_theories(pf: PropFrame, c: ConsequenceOperation) -> list[int]:
    # pick one formula from each complementary pair {t, ¬t}, keep the fixed points
    n = pf.frame.n_formulas
    neg_t = pf.cs.neg_table
    pairs = [(t, neg_t[t]) for t in range(n) if t < neg_t[t]]
    out = []
    for pick in range(1 << len(pairs)):
        t = 0
        for i, (lo, hi) in enumerate(pairs):
            t |= 1 << (hi if pick >> i & 1 else lo)
        if c.closure(t) == t:
            out.append(t)
    return out


def search_theorem3_completeness(pf: PropFrame, c: ConsequenceOperation) -> TheoremReport:
    """Best-effort canonical construction over ∨-prime, negation-complete theories.

    A failing conclusion is a recorded outcome for this instance only.
    """
    _check_formulas(pf, c)
    if pf.k > 2:
        raise InputError("theorem 3 search supports at most 2 atoms")
    cs = pf.cs
    hyps = [eval_consequence_property(c, p, cs) for p in THEOREM3_HYPOTHESES]
    hyps.append(eval_consequence_property(c, CP.PROPERTY_E, cs))
    conclusion_ids = [p.value for p in CHOICE_CONCLUSIONS] + [REPRESENTATION]
    identity_ids = [OR_SEMANTICS, NEG_SEMANTICS]
    failed = next((r.property for r in hyps if not r.holds), None)
    if failed:
        reason = f"hypothesis {failed} fails"
        return TheoremReport(
            "3",
            hyps,
            [PropertyReport.skip(i, reason) for i in conclusion_ids],
            [PropertyReport.skip(i, reason) for i in identity_ids],
        )

    cf = frame_of_theories(c, prime_complete_theories(pf, c))
    identities = connective_semantics(cf, cs)
    f = canonical_choice(c, cf)
    conclusions = [evaluate_table(cf, f.table, p, Scope.ALL_SUBSETS) for p in CHOICE_CONCLUSIONS]
    conclusions.append(verify_representation(c, cf, f))
    return TheoremReport("3", hyps, conclusions, identities)


def enumerate_strict_partial_orders(n: int) -> list[frozenset[tuple[int, int]]]:
    """Every strict partial order on ``range(n)`` as a set of (winner, loser) pairs.

    Deterministic order: elements are added one at a time, each choosing the
    elements it beats and the elements that beat it.
    """
    orders: list[frozenset[tuple[int, int]]] = [frozenset()]
    for new in range(n):
        grown = []
        for order in orders:
            below = {x: {y for (w, y) in order if w == x} for x in range(new)}
            for down in range(1 << new):
                down_set = set(members(down))
                # down-set: anything beaten by a member is a member
                if any(not below[x] <= down_set for x in down_set):
                    continue
                for up in range(1 << new):
                    up_set = set(members(up))
                    if up_set & down_set:
                        continue
                    # up-set: anything beating a member is a member
                    if any(w not in up_set for (w, y) in order if y in up_set):
                        continue
                    # transitivity through the new element
                    if any((u, d) not in order for u in up_set for d in down_set):
                        continue
                    edges = set(order)
                    edges.update((new, d) for d in down_set)
                    edges.update((u, new) for u in up_set)
                    grown.append(frozenset(edges))
        orders = grown
    return orders

