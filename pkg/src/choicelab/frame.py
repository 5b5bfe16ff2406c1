"""Finite satisfaction frames and the Mod/Th Galois connection.

Model sets and formula sets are plain ints: bit ``i`` stands for the ``i``-th
model (resp. formula) of the owning frame.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .bits import check_width, members
from .report import InputError

MAX_MODELS = 62
MAX_FORMULAS = 62
# full Mod/Th tables are only materialized below this many bits
MAX_TABLE_BITS = 20

ModelSet = int
FormulaSet = int


@dataclass(frozen=True)
class FiniteFrame:
    """Models, formulas and the satisfaction incidence ``sat[m][a]``."""

    models: tuple[str, ...]
    formulas: tuple[str, ...]
    sat: tuple[tuple[bool, ...], ...]
    formula_cap: int = field(default=MAX_FORMULAS, repr=False, compare=False)

    def __post_init__(self) -> None:
        models = tuple(self.models)
        formulas = tuple(self.formulas)
        sat = tuple(tuple(bool(v) for v in row) for row in self.sat)
        object.__setattr__(self, "models", models)
        object.__setattr__(self, "formulas", formulas)
        object.__setattr__(self, "sat", sat)

        if len(set(models)) != len(models):
            raise InputError("frame: duplicate model identifiers")
        if len(set(formulas)) != len(formulas):
            raise InputError("frame: duplicate formula identifiers")
        if len(models) > MAX_MODELS:
            raise InputError(f"frame: {len(models)} models exceeds the cap of {MAX_MODELS}")
        if len(formulas) > self.formula_cap:
            raise InputError(
                f"frame: {len(formulas)} formulas exceeds the cap of {self.formula_cap}"
            )
        if len(sat) != len(models):
            raise InputError(
                f"frame: satisfaction has {len(sat)} rows for {len(models)} models"
            )
        for i, row in enumerate(sat):
            if len(row) != len(formulas):
                raise InputError(
                    f"frame: satisfaction row {i} has {len(row)} entries, expected {len(formulas)}"
                )

        rows = []
        for row in sat:
            rows.append(sum(1 << j for j, v in enumerate(row) if v))
        ext = []
        for j in range(len(formulas)):
            ext.append(sum(1 << i for i, row in enumerate(sat) if row[j]))
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "ext", tuple(ext))
        object.__setattr__(self, "_model_index", {m: i for i, m in enumerate(models)})
        object.__setattr__(self, "_formula_index", {a: j for j, a in enumerate(formulas)})

    # rows[i]: formulas true at model i; ext[j]: models satisfying formula j
    rows: tuple[int, ...] = field(init=False, repr=False, compare=False)
    ext: tuple[int, ...] = field(init=False, repr=False, compare=False)

    @classmethod
    def from_rows(
        cls,
        models: Sequence[str],
        formulas: Sequence[str],
        rows: Sequence[int],
        formula_cap: int = MAX_FORMULAS,
    ) -> "FiniteFrame":
        """Build from per-model formula bit sets."""
        sat = tuple(tuple(bool(r >> j & 1) for j in range(len(formulas))) for r in rows)
        return cls(tuple(models), tuple(formulas), sat, formula_cap)

    @property
    def n_models(self) -> int:
        return len(self.models)

    @property
    def n_formulas(self) -> int:
        return len(self.formulas)

    @property
    def all_models(self) -> ModelSet:
        return (1 << len(self.models)) - 1

    @property
    def all_formulas(self) -> FormulaSet:
        return (1 << len(self.formulas)) - 1

    # unchecked fast paths; the module-level functions validate widths

    def mod(self, formulas: FormulaSet) -> ModelSet:
        out = self.all_models
        ext = self.ext
        while formulas and out:
            low = formulas & -formulas
            out &= ext[low.bit_length() - 1]
            formulas ^= low
        return out

    def th(self, models: ModelSet) -> FormulaSet:
        out = self.all_formulas
        rows = self.rows
        while models and out:
            low = models & -models
            out &= rows[low.bit_length() - 1]
            models ^= low
        return out

    def hull(self, models: ModelSet) -> ModelSet:
        return self.mod(self.th(models))

    @cached_property
    def mod_table(self) -> tuple[int, ...]:
        """``mod`` for every formula subset, indexed by the subset's bits."""
        n = self.n_formulas
        if n > MAX_TABLE_BITS:
            raise InputError(f"frame: {n} formulas is too many to tabulate Mod")
        table = [self.all_models] * (1 << n)
        for a in range(1, 1 << n):
            low = a & -a
            table[a] = table[a ^ low] & self.ext[low.bit_length() - 1]
        return tuple(table)

    @cached_property
    def th_table(self) -> tuple[int, ...]:
        n = self.n_models
        if n > MAX_TABLE_BITS:
            raise InputError(f"frame: {n} models is too many to tabulate Th")
        table = [self.all_formulas] * (1 << n)
        for x in range(1, 1 << n):
            low = x & -x
            table[x] = table[x ^ low] & self.rows[low.bit_length() - 1]
        return tuple(table)

    @cached_property
    def definable(self) -> tuple[int, ...]:
        return tuple(_definable_family(self))

    @cached_property
    def definable_set(self) -> frozenset[int]:
        return frozenset(self.definable)

    # identifier <-> bit set conversions

    def model_set(self, names: Iterable[str]) -> ModelSet:
        out = 0
        for name in names:
            try:
                out |= 1 << self._model_index[name]
            except KeyError:
                raise InputError(f"unknown model identifier {name!r}") from None
        return out

    def formula_set(self, names: Iterable[str]) -> FormulaSet:
        out = 0
        for name in names:
            try:
                out |= 1 << self._formula_index[name]
            except KeyError:
                raise InputError(f"unknown formula identifier {name!r}") from None
        return out

    def model_index(self, name: str) -> int:
        try:
            return self._model_index[name]
        except KeyError:
            raise InputError(f"unknown model identifier {name!r}") from None

    def model_names(self, mask: ModelSet) -> list[str]:
        return [self.models[i] for i in members(mask)]

    def formula_names(self, mask: FormulaSet) -> list[str]:
        return [self.formulas[j] for j in members(mask)]


def bare_frame(n: int) -> FiniteFrame:
    """Ground set ``1..n`` with no formulas (only the full set is definable)."""
    return FiniteFrame(tuple(str(i + 1) for i in range(n)), (), tuple(() for _ in range(n)))


def discrete_frame(n: int) -> FiniteFrame:
    """Ground set ``1..n`` where every subset is definable.

    Formula ``not-i`` holds everywhere except at model ``i``.
    """
    models = tuple(str(i + 1) for i in range(n))
    formulas = tuple(f"not-{m}" for m in models)
    sat = tuple(tuple(i != j for j in range(n)) for i in range(n))
    return FiniteFrame(models, formulas, sat)


def mod_of(frame: FiniteFrame, formulas: FormulaSet) -> ModelSet:
    check_width(formulas, frame.n_formulas, "mod_of")
    return frame.mod(formulas)


def th_of(frame: FiniteFrame, models: ModelSet) -> FormulaSet:
    check_width(models, frame.n_models, "th_of")
    return frame.th(models)


def definable_hull(frame: FiniteFrame, models: ModelSet) -> ModelSet:
    check_width(models, frame.n_models, "definable_hull")
    return frame.hull(models)


def is_definable(frame: FiniteFrame, models: ModelSet) -> bool:
    check_width(models, frame.n_models, "is_definable")
    return frame.hull(models) == models


def _definable_family(frame: FiniteFrame) -> list[int]:
    family = {frame.all_models}
    frontier = set(frame.ext) - family
    family |= frontier
    generators = set(frame.ext)
    while frontier:
        fresh = set()
        for d in frontier:
            for e in generators:
                meet = d & e
                if meet not in family:
                    fresh.add(meet)
        family |= fresh
        frontier = fresh
    return sorted(family, key=lambda d: (d.bit_count(), d))


def definable_family(frame: FiniteFrame) -> list[ModelSet]:
    """Every distinct Mod(A), ordered by (cardinality, bit value)."""
    return list(frame.definable)


def is_union_closed(frame: FiniteFrame) -> tuple[bool, Optional[tuple[ModelSet, ModelSet]]]:
    family = frame.definable
    closed = frame.definable_set
    for i, d1 in enumerate(family):
        for d2 in family[i:]:
            if d1 | d2 not in closed:
                return False, (d1, d2)
    return True, None
