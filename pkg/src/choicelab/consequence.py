"""Consequence operations on formula subsets and the consequence-side checker.

An operation is either an explicit table over every formula subset or derived
from a frame and a choice function by ``C(A) = Th(f(Mod(A)))``.

Derived operations over more than ``NAIVE_MAX_FORMULAS`` formulas are checked
on the quotient by Mod: C(A) depends on A only through Mod(A), so every
quantifier over formula sets collapses onto the definable family.  The
quotient evaluators are cross-checked against plain enumeration in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Iterator, Optional, Sequence, Union

from .bits import check_width, members, submasks, supermasks
from .choice import ChoiceFunction, apply, choice_table
from .frame import FiniteFrame, FormulaSet
from .report import InputError, PropertyReport

NAIVE_MAX_FORMULAS = 6
MAX_EXPLICIT_FORMULAS = 16


class ConsequenceProperty(Enum):
    INCLUSION = "inclusion"
    IDEMPOTENCE = "idempotence"
    CAUTIOUS_MONOTONICITY = "cautious-mono"
    CONDITIONAL_MONOTONICITY = "conditional-mono"
    THRESHOLD_MONOTONICITY = "threshold-mono"
    CUMULATIVITY = "cumulativity"
    PROPERTY_E = "prop-e"
    DISTRIBUTIVITY = "distributivity"
    WEAK_COMPACTNESS = "weak-compactness"
    OR_LEFT_INTRO = "or-left"
    OR_RIGHT_INTRO = "or-right"
    NEG_LEFT_INTRO = "neg-intro"
    NEG_LEFT_ELIM = "neg-elim"


CP = ConsequenceProperty
CONNECTIVE = frozenset({CP.OR_LEFT_INTRO, CP.OR_RIGHT_INTRO, CP.NEG_LEFT_INTRO, CP.NEG_LEFT_ELIM})
# the hypothesis list shared by both representation directions
CORE_SIX = (
    CP.INCLUSION,
    CP.IDEMPOTENCE,
    CP.CAUTIOUS_MONOTONICITY,
    CP.CONDITIONAL_MONOTONICITY,
    CP.THRESHOLD_MONOTONICITY,
    CP.PROPERTY_E,
)


@dataclass(frozen=True)
class ExplicitConsequence:
    formulas: tuple[str, ...]
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "formulas", tuple(self.formulas))
        object.__setattr__(self, "table", tuple(self.table))
        if len(set(self.formulas)) != len(self.formulas):
            raise InputError("consequence: duplicate formula identifiers")
        if len(self.formulas) > MAX_EXPLICIT_FORMULAS:
            raise InputError(
                f"consequence: {len(self.formulas)} formulas exceeds the explicit cap "
                f"of {MAX_EXPLICIT_FORMULAS}"
            )
        if len(self.table) != 1 << len(self.formulas):
            raise InputError(
                f"consequence table has {len(self.table)} entries, "
                f"expected {1 << len(self.formulas)}"
            )
        for a, v in enumerate(self.table):
            check_width(v, len(self.formulas), f"consequence value at {a:#x}")

    @property
    def n(self) -> int:
        return len(self.formulas)

    def closure(self, a: int) -> int:
        return self.table[a]

    def full_table(self) -> tuple[int, ...]:
        return self.table


class DerivedConsequence:
    """``C(A) = Th(f(Mod(A)))``, memoized on Mod(A).

    The memo is write-once per key; racing writers compute the same value.
    """

    def __init__(self, frame: FiniteFrame, choice: ChoiceFunction):
        if choice.n != frame.n_models:
            raise InputError(
                f"choice function is over {choice.n} models but the frame has {frame.n_models}"
            )
        self.frame = frame
        self.choice = choice
        self._memo: dict[int, int] = {}

    @property
    def formulas(self) -> tuple[str, ...]:
        return self.frame.formulas

    @property
    def n(self) -> int:
        return self.frame.n_formulas

    def of_models(self, models: int) -> int:
        """Th(f(X)) for a model set X; the value C takes on any A with Mod(A) = X."""
        try:
            return self._memo[models]
        except KeyError:
            value = self.frame.th(apply(self.frame, self.choice, models))
            self._memo.setdefault(models, value)
            return value

    def closure(self, a: int) -> int:
        return self.of_models(self.frame.mod(a))

    def full_table(self) -> tuple[int, ...]:
        if self.n > MAX_EXPLICIT_FORMULAS:
            raise InputError(
                f"{self.n} formulas exceeds the explicit cap of {MAX_EXPLICIT_FORMULAS}"
            )
        choice_table(self.frame, self.choice)  # totality check
        return tuple(self.of_models(x) for x in self.frame.mod_table)

    def __repr__(self) -> str:
        return f"DerivedConsequence({len(self.frame.models)} models, {self.n} formulas)"


ConsequenceOperation = Union[ExplicitConsequence, DerivedConsequence]


def closure(c: ConsequenceOperation, a: FormulaSet) -> FormulaSet:
    check_width(a, c.n, "closure")
    return c.closure(a)


def to_explicit(c: ConsequenceOperation) -> ExplicitConsequence:
    if isinstance(c, ExplicitConsequence):
        return c
    return ExplicitConsequence(c.formulas, c.full_table())


def identity_consequence(formulas: Sequence[str]) -> ExplicitConsequence:
    return ExplicitConsequence(tuple(formulas), tuple(range(1 << len(formulas))))


# --- superset meets --------------------------------------------------------


def _cap_table(tab: Sequence[int], n: int) -> list[int]:
    """``cap[A]`` = meet of C(F) over all F containing A, for every A."""
    size = 1 << n
    cap = list(tab)
    for a in range(size - 1, -1, -1):
        acc = cap[a]
        missing = (size - 1) & ~a
        while missing:
            low = missing & -missing
            acc &= cap[a | low]
            missing ^= low
        cap[a] = acc
    return cap


def _naive_cap(c: ConsequenceOperation, a: int) -> int:
    out = (1 << c.n) - 1
    for f in supermasks(a, (1 << c.n) - 1):
        out &= c.closure(f)
    return out


def _quotient_cap(c: DerivedConsequence, a: int) -> int:
    # F ⊇ A ranges over exactly the definable subsets of Mod(A), as Mod(F)
    x = c.frame.mod(a)
    out = (1 << c.n) - 1
    for d in c.frame.definable:
        if d & ~x == 0:
            out &= c.of_models(d)
    return out


def cap_supersets(c: ConsequenceOperation, a: FormulaSet) -> FormulaSet:
    """Meet of C(F) over every F ⊇ A."""
    check_width(a, c.n, "cap_supersets")
    if isinstance(c, DerivedConsequence):
        return _quotient_cap(c, a)
    return _naive_cap(c, a)


def k_operand(c: ConsequenceOperation, a: FormulaSet, b: FormulaSet) -> FormulaSet:
    """Meet of C(F) over every F with F ⊇ A or F ⊇ B."""
    return cap_supersets(c, a) & cap_supersets(c, b)


# --- property evaluation ---------------------------------------------------


def _names(formulas: Sequence[str], mask: int) -> list[str]:
    return [formulas[j] for j in members(mask)]


class _Eval:
    """Shared state for one property evaluation over a formula-set domain."""

    def __init__(self, c: ConsequenceOperation, frame: Optional[FiniteFrame], cs: Any):
        self.c = c
        self.n = c.n
        self.full = (1 << c.n) - 1
        self.formulas = c.formulas
        self.frame = frame
        self.cs = cs

    def names(self, mask: int) -> list[str]:
        return _names(self.formulas, mask)

    def fail(self, prop: CP, checked: int, **sets: Any) -> PropertyReport:
        witness = {}
        for key, value in sets.items():
            if isinstance(value, str):
                witness[key] = value
            else:
                witness[key] = self.names(value)
        return PropertyReport(prop.value, False, witness, checked)


class _Naive(_Eval):
    """Plain enumeration over every formula subset."""

    def __init__(self, c, frame, cs):
        super().__init__(c, frame, cs)
        self.tab = c.full_table()
        self._caps: Optional[list[int]] = None

    def cap(self, a: int) -> int:
        if self._caps is None:
            self._caps = _cap_table(self.tab, self.n)
        return self._caps[a]

    def reps(self) -> Iterator[int]:
        return iter(range(1 << self.n))

    def cum_pairs(self) -> Iterator[tuple[int, int]]:
        """(A, B) with A ⊆ B ⊆ C(A)."""
        tab = self.tab
        for a in range(1 << self.n):
            ca = tab[a]
            if a & ~ca:
                continue
            for s in submasks(ca & ~a):
                yield a, a | s

    def threshold_triples(self) -> Iterator[tuple[int, int, int]]:
        """(A, X, Y) with C(A) ⊆ X ⊆ Y, deduplicated on C(A)."""
        seen = set()
        for a in range(1 << self.n):
            ca = self.tab[a]
            if ca in seen:
                continue
            seen.add(ca)
            for x in supermasks(ca, self.full):
                for y in supermasks(x, self.full):
                    yield a, x, y


class _Quotient(_Eval):
    """Enumeration over the definable family of a derived operation's frame."""

    def __init__(self, c: DerivedConsequence, frame, cs):
        super().__init__(c, frame, cs)
        self.fr = c.frame

    def cap(self, a: int) -> int:
        return _quotient_cap(self.c, a)

    def reps(self) -> Iterator[int]:
        fr = self.fr
        return (fr.th(d) for d in fr.definable)

    def cum_pairs(self) -> Iterator[tuple[int, int]]:
        fr, c = self.fr, self.c
        for x in fr.definable:
            gx = c.of_models(x)
            a = fr.th(x) & gx
            if fr.mod(a) != x:
                # no A with Mod(A) = X lies inside C(A)
                continue
            hx = fr.mod(gx)
            reached = set()
            for z in fr.definable:
                if hx & ~z == 0 and x & z not in reached:
                    reached.add(x & z)
                    yield a, a | fr.th(z)

    def threshold_triples(self) -> Iterator[tuple[int, int, int]]:
        fr, c = self.fr, self.c
        seen = set()
        for w in fr.definable:
            hw = fr.mod(c.of_models(w))
            if hw in seen:
                continue
            seen.add(hw)
            a = fr.th(w)
            for u in fr.definable:
                if u & ~hw:
                    continue
                for v in fr.definable:
                    if v & ~u == 0:
                        yield a, fr.th(u), fr.th(v)


def _evaluate(ev: _Eval, prop: CP) -> PropertyReport:
    c = ev.c
    cl = c.closure
    full = ev.full
    checked = 0

    if prop is CP.INCLUSION:
        for a in ev.reps():
            checked += 1
            if a & ~cl(a):
                return ev.fail(prop, checked, A=a)
    elif prop is CP.IDEMPOTENCE:
        for a in ev.reps():
            checked += 1
            ca = cl(a)
            if cl(ca) != ca:
                return ev.fail(prop, checked, A=a)
    elif prop in (CP.CAUTIOUS_MONOTONICITY, CP.CONDITIONAL_MONOTONICITY, CP.CUMULATIVITY):
        for a, b in ev.cum_pairs():
            checked += 1
            ca, cb = cl(a), cl(b)
            if prop is CP.CAUTIOUS_MONOTONICITY:
                bad = ca & ~cb
            elif prop is CP.CONDITIONAL_MONOTONICITY:
                bad = cb & ~ca
            else:
                bad = ca != cb
            if bad:
                return ev.fail(prop, checked, A=a, B=b)
    elif prop is CP.THRESHOLD_MONOTONICITY:
        for a, x, y in ev.threshold_triples():
            checked += 1
            if cl(x) & ~cl(y):
                return ev.fail(prop, checked, A=a, X=x, Y=y)
    elif prop is CP.PROPERTY_E:
        reps = list(ev.reps())
        caps = {a: ev.cap(a) for a in reps}
        for a in reps:
            for b in reps:
                checked += 1
                lhs = cl(caps[a] & caps[b])
                rhs = cl(cl(a) | cl(b))
                if lhs & ~rhs:
                    return ev.fail(prop, checked, A=a, B=b)
    elif prop is CP.DISTRIBUTIVITY:
        fr = ev.frame
        reps = list(ev.reps())
        hulls = {a: fr.th(fr.mod(a)) for a in reps}
        for a in reps:
            for b in reps:
                checked += 1
                if cl(a) & cl(b) & ~cl(hulls[a] & hulls[b]):
                    return ev.fail(prop, checked, A=a, B=b)
    elif prop is CP.WEAK_COMPACTNESS:
        # over a finite language A itself is the finite subset, so every
        # instance with C(A) = L is discharged by B = A
        checked = sum(1 for a in ev.reps() if cl(a) == full)
    elif prop in CONNECTIVE:
        or_t, neg_t = ev.cs.or_table, ev.cs.neg_table
        names = ev.formulas
        for a in ev.reps():
            ca = cl(a)
            for i in range(ev.n):
                if prop is CP.NEG_LEFT_INTRO:
                    checked += 1
                    if cl(a | 1 << i | 1 << neg_t[i]) != full:
                        return ev.fail(prop, checked, A=a, a=names[i])
                    continue
                if prop is CP.NEG_LEFT_ELIM:
                    checked += 1
                    if cl(a | 1 << neg_t[i]) == full and not ca >> i & 1:
                        return ev.fail(prop, checked, A=a, a=names[i])
                    continue
                row = or_t[i]
                for j in range(ev.n):
                    checked += 1
                    k = row[j]
                    if prop is CP.OR_LEFT_INTRO:
                        bad = cl(a | 1 << i) & cl(a | 1 << j) & ~cl(a | 1 << k)
                    else:
                        bad = (ca >> i & 1 or ca >> j & 1) and not ca >> k & 1
                    if bad:
                        return ev.fail(prop, checked, A=a, a=names[i], b=names[j])
    else:  # pragma: no cover
        raise ValueError(prop)
    return PropertyReport(prop.value, True, None, checked)


def eval_consequence_property(
    c: ConsequenceOperation,
    prop: ConsequenceProperty,
    cs: Any = None,
    frame: Optional[FiniteFrame] = None,
    method: str = "auto",
) -> PropertyReport:
    """Exhaustively check ``prop`` on ``c``.

    ``cs`` is a connective structure (``or_table``/``neg_table``) for the four
    connective properties; ``frame`` supplies Mod/Th for DISTRIBUTIVITY when
    ``c`` is explicit.  ``method`` forces ``"naive"`` or ``"quotient"``
    evaluation; ``"auto"`` uses the quotient only for derived operations over
    more than ``NAIVE_MAX_FORMULAS`` formulas.
    """
    if prop in CONNECTIVE and cs is None:
        raise InputError(f"{prop.value} needs a connective structure")
    if cs is not None and len(cs.neg_table) != c.n:
        raise InputError("connective structure does not match the operation's formulas")
    if prop is CP.DISTRIBUTIVITY:
        if frame is None:
            if not isinstance(c, DerivedConsequence):
                raise InputError(
                    "distributivity needs a frame: build the canonical frame of this "
                    "operation first (bridge.canonical_frame) and pass it"
                )
            frame = c.frame
        if frame.formulas != c.formulas:
            raise InputError("distributivity: frame formulas do not match the operation")
    elif isinstance(c, DerivedConsequence):
        frame = c.frame

    if method == "auto":
        quotient = isinstance(c, DerivedConsequence) and c.n > NAIVE_MAX_FORMULAS
    elif method == "naive":
        quotient = False
    elif method == "quotient":
        if not isinstance(c, DerivedConsequence):
            raise InputError("quotient evaluation needs a derived operation")
        quotient = True
    else:
        raise InputError(f"unknown evaluation method {method!r}")

    if quotient:
        if prop is CP.DISTRIBUTIVITY and frame is not c.frame:
            quotient = False
    ev: _Eval = _Quotient(c, frame, cs) if quotient else _Naive(c, frame, cs)
    return _evaluate(ev, prop)
