"""Both directions of the choice/consequence correspondence.

* choice to consequence: ``derive_consequence`` and the checker ``verify_theorem2``
* consequence to choice: the canonical frame of theories, the canonical choice
  ``f(X) = X ∩ Mod(C(Th(X)))`` and the checker ``verify_theorem1``
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional

from .bits import members
from .choice import (
    ChoiceFunction,
    ChoiceProperty,
    ExplicitChoice,
    Scope,
    choice_table,
    evaluate_table,
)
from .consequence import (
    CORE_SIX,
    NAIVE_MAX_FORMULAS,
    ConsequenceOperation,
    ConsequenceProperty,
    DerivedConsequence,
    cap_supersets,
    eval_consequence_property,
)
from .frame import MAX_MODELS, MAX_TABLE_BITS, FiniteFrame, is_union_closed
from .report import InputError, PropertyReport, TheoremReport

CHOICE_CONCLUSIONS = (
    ChoiceProperty.CONTRACTION,
    ChoiceProperty.COHERENCE,
    ChoiceProperty.LOCAL_MONOTONICITY,
    ChoiceProperty.EXPANSION,
    ChoiceProperty.DEFINABILITY_PRESERVING,
    ChoiceProperty.HULL_COMPATIBILITY,
)
CHOICE_HYPOTHESES = (
    ChoiceProperty.DEFINABILITY_PRESERVING,
    ChoiceProperty.CONTRACTION,
    ChoiceProperty.COHERENCE,
    ChoiceProperty.LOCAL_MONOTONICITY,
    ChoiceProperty.EXPANSION,
    ChoiceProperty.HULL_COMPATIBILITY,
)

REPRESENTATION = "representation"
UNION_CLOSED = "union-closed"
SUPERSET_MEET = "theory-of-models-is-superset-meet"
SUPERSET_MEET_BOUND = "theory-of-models-below-superset-meet"
CHOICE_IMAGE = "choice-image-is-consequence-models"
K_REDUCTION = "k-operand-reduction"
K_BOUND = "k-operand-bound"


def derive_consequence(frame: FiniteFrame, f: ChoiceFunction) -> DerivedConsequence:
    """``C(A) = Th(f(Mod(A)))``."""
    choice_table(frame, f)  # width and totality
    return DerivedConsequence(frame, f)


def theory_name(formulas: tuple[str, ...], t: int) -> str:
    return "{" + ",".join(formulas[j] for j in members(t)) + "}"


def theories(c: ConsequenceOperation, closed_only: bool = False) -> list[int]:
    """Fixed points C(T) = T in ascending bit order; ``closed_only`` relaxes to C(T) ⊆ T."""
    if c.n > MAX_TABLE_BITS:
        raise InputError(f"{c.n} formulas is too many to enumerate theories")
    out = []
    for t in range(1 << c.n):
        ct = c.closure(t)
        if ct == t or (closed_only and ct & ~t == 0):
            out.append(t)
    return out


def frame_of_theories(c: ConsequenceOperation, models: Iterable[int]) -> FiniteFrame:
    """Frame whose models are the given theories, with T ⊨ a iff a ∈ T."""
    models = list(models)
    if len(models) > MAX_MODELS:
        raise InputError(
            f"canonical frame would have {len(models)} theories, above the cap of {MAX_MODELS}"
        )
    names = tuple(theory_name(c.formulas, t) for t in models)
    return FiniteFrame.from_rows(names, c.formulas, models, formula_cap=max(c.n, 62))


def canonical_frame(c: ConsequenceOperation, closed_only: bool = False) -> FiniteFrame:
    return frame_of_theories(c, theories(c, closed_only))


def canonical_choice(c: ConsequenceOperation, cf: FiniteFrame) -> ExplicitChoice:
    """``f(X) = X ∩ Mod(C(Th(X)))`` on every model subset of ``cf``."""
    if cf.formulas != tuple(c.formulas):
        raise InputError("canonical_choice: frame formulas do not match the operation")
    if cf.n_models > MAX_TABLE_BITS:
        raise InputError(f"{cf.n_models} theories is too many to tabulate a choice function")
    th, mod = cf.th, cf.mod
    table = tuple(x & mod(c.closure(th(x))) for x in range(1 << cf.n_models))
    return ExplicitChoice(cf.n_models, table)


def _formula_domain(c: ConsequenceOperation) -> Iterable[int]:
    """Formula sets to range over for Mod-invariant checks."""
    if isinstance(c, DerivedConsequence) and c.n > NAIVE_MAX_FORMULAS:
        fr = c.frame
        return [fr.th(d) for d in fr.definable]
    return range(1 << c.n)


def _forall(
    name: str,
    domain: Iterable,
    ok: Callable[..., bool],
    witness: Callable[..., dict],
    arity: int = 1,
) -> PropertyReport:
    checked = 0
    if arity == 1:
        for a in domain:
            checked += 1
            if not ok(a):
                return PropertyReport(name, False, witness(a), checked)
    else:
        items = list(domain)
        for a in items:
            for b in items:
                checked += 1
                if not ok(a, b):
                    return PropertyReport(name, False, witness(a, b), checked)
    return PropertyReport(name, True, None, checked)


def verify_representation(
    c: ConsequenceOperation, frame: FiniteFrame, f: ChoiceFunction
) -> PropertyReport:
    """C(A) = Th(f(Mod(A))) for every A."""
    if tuple(c.formulas) != frame.formulas:
        raise InputError("verify_representation: formulas of C and frame differ")
    t = choice_table(frame, f)
    names = lambda a: {"A": [c.formulas[j] for j in members(a)]}  # noqa: E731
    return _forall(
        REPRESENTATION,
        range(1 << c.n),
        lambda a: c.closure(a) == frame.th(t[frame.mod(a)]),
        names,
    )


def _skipped(ids: Iterable[str], reason: str) -> list[PropertyReport]:
    return [PropertyReport.skip(i, reason) for i in ids]


def _first_failure(reports: list[PropertyReport]) -> Optional[str]:
    for r in reports:
        if not r.holds:
            return r.property
    return None


def verify_theorem1(c: ConsequenceOperation, closed_only: bool = False) -> TheoremReport:
    """Completeness: canonical model from an operation meeting the six properties."""
    hyps = [eval_consequence_property(c, p) for p in CORE_SIX]
    conclusion_ids = [p.value for p in CHOICE_CONCLUSIONS] + [REPRESENTATION]
    identity_ids = [SUPERSET_MEET, CHOICE_IMAGE]
    failed = _first_failure(hyps)
    if failed:
        reason = f"hypothesis {failed} fails"
        return TheoremReport("1", hyps, _skipped(conclusion_ids, reason), _skipped(identity_ids, reason))

    cf = canonical_frame(c, closed_only)
    f = canonical_choice(c, cf)
    t = f.table
    conclusions = [evaluate_table(cf, t, p, Scope.ALL_SUBSETS) for p in CHOICE_CONCLUSIONS]
    conclusions.append(verify_representation(c, cf, f))

    def names(a):
        return {"A": [c.formulas[j] for j in members(a)]}

    identities = [
        _forall(
            SUPERSET_MEET,
            range(1 << c.n),
            lambda a: cf.th(cf.mod(a)) == cap_supersets(c, a),
            names,
        ),
        _forall(
            CHOICE_IMAGE,
            range(1 << c.n),
            lambda a: t[cf.mod(a)] == cf.mod(c.closure(a)),
            names,
        ),
    ]
    return TheoremReport("1", hyps, conclusions, identities)


def _union_closed_report(frame: FiniteFrame) -> PropertyReport:
    ok, pair = is_union_closed(frame)
    fam = len(frame.definable)
    checked = fam * (fam + 1) // 2
    if ok:
        return PropertyReport(UNION_CLOSED, True, None, checked)
    d1, d2 = pair
    # report how many pairs were visited up to and including the failure
    fam_list = frame.definable
    i, j = fam_list.index(d1), fam_list.index(d2)
    visited = sum(fam - k for k in range(i)) + (j - i + 1)
    return PropertyReport(
        UNION_CLOSED,
        False,
        {"X": frame.model_names(d1), "Y": frame.model_names(d2)},
        visited,
    )


def verify_theorem2(frame: FiniteFrame, f: ChoiceFunction) -> TheoremReport:
    """Soundness: the derived operation of a well-behaved choice function."""
    t = choice_table(frame, f)
    hyps = [_union_closed_report(frame)]
    hyps += [evaluate_table(frame, t, p, Scope.ALL_SUBSETS) for p in CHOICE_HYPOTHESES]
    conclusion_ids = [p.value for p in CORE_SIX]
    identity_ids = [
        ConsequenceProperty.DISTRIBUTIVITY.value,
        ConsequenceProperty.CUMULATIVITY.value,
        CHOICE_IMAGE,
        SUPERSET_MEET_BOUND,
        K_REDUCTION,
        K_BOUND,
    ]
    failed = _first_failure(hyps)
    if failed:
        reason = f"hypothesis {failed} fails"
        return TheoremReport("2", hyps, _skipped(conclusion_ids, reason), _skipped(identity_ids, reason))

    c = derive_consequence(frame, f)
    conclusions = [eval_consequence_property(c, p) for p in CORE_SIX]
    dom = list(_formula_domain(c))
    cl = c.closure
    th_mod = {a: frame.th(frame.mod(a)) for a in dom}
    caps = {a: cap_supersets(c, a) for a in dom}

    def one(a):
        return {"A": frame.formula_names(a)}

    def two(a, b):
        return {"A": frame.formula_names(a), "B": frame.formula_names(b)}

    identities = [
        eval_consequence_property(c, ConsequenceProperty.DISTRIBUTIVITY),
        eval_consequence_property(c, ConsequenceProperty.CUMULATIVITY),
        _forall(CHOICE_IMAGE, dom, lambda a: frame.mod(cl(a)) == t[frame.mod(a)], one),
        _forall(
            SUPERSET_MEET_BOUND,
            dom,
            lambda a: th_mod[a] & ~caps[a] == 0,
            one,
        ),
        _forall(
            K_REDUCTION,
            dom,
            lambda a, b: cl(caps[a] & caps[b]) == cl(th_mod[a] & th_mod[b]),
            two,
            arity=2,
        ),
        _forall(
            K_BOUND,
            dom,
            lambda a, b: cl(th_mod[a] & th_mod[b]) & ~cl(cl(a) | cl(b)) == 0,
            two,
            arity=2,
        ),
    ]
    return TheoremReport("2", hyps, conclusions, identities)
