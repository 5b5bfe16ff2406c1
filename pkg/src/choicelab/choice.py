"""Choice functions on model subsets and the choice-side property checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Optional, Sequence, Union

from .bits import check_width, members, supermasks
from .frame import MAX_TABLE_BITS, FiniteFrame, ModelSet
from .report import InputError, PropertyReport


class ChoiceProperty(Enum):
    CONTRACTION = "contraction"
    COHERENCE = "coherence"
    LOCAL_MONOTONICITY = "local-mono"
    EXPANSION = "expansion"
    ARROW = "arrow"
    DEFINABILITY_PRESERVING = "dp"
    HULL_COMPATIBILITY = "hull"
    NONEMPTY = "nonempty"


class Scope(Enum):
    ALL_SUBSETS = "all"
    DEFINABLE_ONLY = "definable"


UNARY = frozenset(
    {
        ChoiceProperty.CONTRACTION,
        ChoiceProperty.DEFINABILITY_PRESERVING,
        ChoiceProperty.HULL_COMPATIBILITY,
        ChoiceProperty.NONEMPTY,
    }
)
NESTED = frozenset(
    {ChoiceProperty.COHERENCE, ChoiceProperty.LOCAL_MONOTONICITY, ChoiceProperty.ARROW}
)
FRAME_DEPENDENT = frozenset(
    {ChoiceProperty.DEFINABILITY_PRESERVING, ChoiceProperty.HULL_COMPATIBILITY}
)


@dataclass(frozen=True)
class ExplicitChoice:
    """``table[X]`` is f(X); ``None`` marks a missing entry of a hand-built table."""

    n: int
    table: tuple[Optional[int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != 1 << self.n:
            raise InputError(
                f"choice table has {len(self.table)} entries, expected {1 << self.n}"
            )
        for x, v in enumerate(self.table):
            if v is not None:
                check_width(v, self.n, f"choice value at {x:#x}")

    @property
    def total(self) -> bool:
        return all(v is not None for v in self.table)


@dataclass(frozen=True)
class PreferentialChoice:
    """Minimal-element choice; an edge ``(x, y)`` means model ``x`` beats model ``y``."""

    n: int
    edges: frozenset[tuple[int, int]]
    beaten_by: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        edges = frozenset(self.edges)
        object.__setattr__(self, "edges", edges)
        beaten = [0] * self.n
        for x, y in edges:
            if not (0 <= x < self.n and 0 <= y < self.n):
                raise InputError(f"preference edge {(x, y)} out of range")
            if x == y:
                raise InputError(f"preference edge {(x, y)} is a self-pair")
            beaten[y] |= 1 << x
        object.__setattr__(self, "beaten_by", tuple(beaten))

    def choose(self, models: int) -> int:
        out = 0
        beaten = self.beaten_by
        for i in members(models):
            if not beaten[i] & models:
                out |= 1 << i
        return out


ChoiceFunction = Union[ExplicitChoice, PreferentialChoice]


def _check_frame(frame: FiniteFrame, f: ChoiceFunction) -> None:
    if f.n != frame.n_models:
        raise InputError(
            f"choice function is over {f.n} models but the frame has {frame.n_models}"
        )


def apply(frame: FiniteFrame, f: ChoiceFunction, models: ModelSet) -> ModelSet:
    _check_frame(frame, f)
    check_width(models, frame.n_models, "apply")
    if isinstance(f, PreferentialChoice):
        return f.choose(models)
    value = f.table[models]
    if value is None:
        raise InputError(f"choice table has no entry for {frame.model_names(models)}")
    return value


def choice_table(frame: FiniteFrame, f: ChoiceFunction) -> tuple[int, ...]:
    """f on every subset of the frame's models, indexed by bit set."""
    _check_frame(frame, f)
    if isinstance(f, ExplicitChoice):
        if not f.total:
            missing = f.table.index(None)
            raise InputError(f"choice table has no entry for {frame.model_names(missing)}")
        return f.table  # type: ignore[return-value]
    if f.n > MAX_TABLE_BITS:
        raise InputError(f"{f.n} models is too many to tabulate a choice function")
    return tuple(f.choose(x) for x in range(1 << f.n))


def to_explicit_choice(frame: FiniteFrame, f: ChoiceFunction) -> ExplicitChoice:
    return ExplicitChoice(frame.n_models, choice_table(frame, f))


def make_preferential(
    frame: FiniteFrame,
    edges: Iterable[Sequence[str]],
    require_strict_partial_order: bool = False,
) -> PreferentialChoice:
    pairs = set()
    for edge in edges:
        if len(edge) != 2:
            raise InputError(f"preference edge {list(edge)!r} must be a pair")
        x, y = frame.model_index(edge[0]), frame.model_index(edge[1])
        if x == y:
            raise InputError(f"preference edge ({edge[0]}, {edge[1]}) is a self-pair")
        pairs.add((x, y))
    if require_strict_partial_order:
        for x, y in sorted(pairs):
            for y2, z in sorted(pairs):
                if y2 == y and (x, z) not in pairs:
                    if x == z:
                        raise InputError(
                            f"preference is not irreflexive under transitivity: "
                            f"{frame.models[x]} beats {frame.models[y]} and back"
                        )
                    raise InputError(
                        f"preference is not transitive: ({frame.models[x]}, "
                        f"{frame.models[y]}) and ({frame.models[y]}, {frame.models[z]}) "
                        f"without ({frame.models[x]}, {frame.models[z]})"
                    )
    return PreferentialChoice(frame.n_models, frozenset(pairs))


# --- property evaluation -------------------------------------------------


def violates(
    prop: ChoiceProperty, t: Sequence[int], frame: FiniteFrame, x: int, y: int = 0
) -> bool:
    """True when the instance ``(x, y)`` of ``prop`` fails for the table ``t``."""
    if prop is ChoiceProperty.CONTRACTION:
        return bool(t[x] & ~x)
    if prop is ChoiceProperty.NONEMPTY:
        return bool(x) and not t[x]
    if prop is ChoiceProperty.DEFINABILITY_PRESERVING:
        return frame.hull(t[x]) != t[x]
    if prop is ChoiceProperty.HULL_COMPATIBILITY:
        return bool(t[x] & ~t[frame.hull(x)])
    if prop is ChoiceProperty.COHERENCE:
        return bool(x & t[y] & ~t[x])
    if prop is ChoiceProperty.LOCAL_MONOTONICITY:
        return not (t[y] & ~x) and bool(t[x] & ~t[y])
    if prop is ChoiceProperty.ARROW:
        meet = x & t[y]
        return bool(meet) and t[x] != meet
    if prop is ChoiceProperty.EXPANSION:
        return bool(t[x] & t[y] & ~t[x | y])
    raise ValueError(prop)


def domain(frame: FiniteFrame, prop: ChoiceProperty, scope: Scope) -> list[int]:
    if prop is ChoiceProperty.DEFINABILITY_PRESERVING or scope is Scope.DEFINABLE_ONLY:
        return sorted(frame.definable)
    return list(range(1 << frame.n_models))


def instances(
    frame: FiniteFrame, prop: ChoiceProperty, scope: Scope = Scope.ALL_SUBSETS
) -> Iterator[tuple[int, int]]:
    """Quantifier assignments in lexicographic (X, then Y) bit-set order."""
    dom = domain(frame, prop, scope)
    if prop in UNARY:
        for x in dom:
            yield x, 0
    elif prop in NESTED:
        if scope is Scope.ALL_SUBSETS:
            full = frame.all_models
            for x in dom:
                for y in supermasks(x, full):
                    yield x, y
        else:
            for x in dom:
                for y in dom:
                    if x & ~y == 0:
                        yield x, y
    else:
        for x in dom:
            for y in dom:
                yield x, y


def instance_count(frame: FiniteFrame, prop: ChoiceProperty, scope: Scope) -> int:
    """Closed-form size of the quantifier domain."""
    n = frame.n_models
    if prop is ChoiceProperty.DEFINABILITY_PRESERVING:
        return len(frame.definable)
    if scope is Scope.DEFINABLE_ONLY:
        d = len(frame.definable)
        if prop in UNARY:
            return d
        if prop in NESTED:
            fam = frame.definable
            return sum(1 for x in fam for y in fam if x & ~y == 0)
        return d * d
    if prop in UNARY:
        return 2**n
    if prop in NESTED:
        return 3**n
    return 4**n


def _witness(frame: FiniteFrame, prop: ChoiceProperty, x: int, y: int) -> dict:
    out = {"X": frame.model_names(x)}
    if prop not in UNARY:
        out["Y"] = frame.model_names(y)
    return out


def evaluate_table(
    frame: FiniteFrame,
    t: Sequence[int],
    prop: ChoiceProperty,
    scope: Scope = Scope.ALL_SUBSETS,
) -> PropertyReport:
    checked = 0
    for x, y in instances(frame, prop, scope):
        checked += 1
        if violates(prop, t, frame, x, y):
            return PropertyReport(prop.value, False, _witness(frame, prop, x, y), checked)
    return PropertyReport(prop.value, True, None, checked)


def eval_choice_property(
    frame: FiniteFrame,
    f: ChoiceFunction,
    prop: ChoiceProperty,
    scope: Scope = Scope.ALL_SUBSETS,
) -> PropertyReport:
    return evaluate_table(frame, choice_table(frame, f), prop, scope)


def table_satisfies(
    frame: FiniteFrame,
    t: Sequence[int],
    props: Iterable[ChoiceProperty],
    scope: Scope = Scope.ALL_SUBSETS,
) -> bool:
    for prop in props:
        for x, y in instances(frame, prop, scope):
            if violates(prop, t, frame, x, y):
                return False
    return True


def identity_choice(frame: FiniteFrame) -> ExplicitChoice:
    return ExplicitChoice(frame.n_models, tuple(range(1 << frame.n_models)))

