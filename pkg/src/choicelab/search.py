"""Counterexample mining over choice tables.

Candidate tables are indexed in binary counting order: writing ``code(X)`` for
the value f(X) (packed onto the bits of X when Contraction is required), the
candidate index is the mixed-radix number whose least significant digit is
``code(∅)`` and whose most significant digit is ``code(M)``.  The search is a
depth-first walk from ``f(M)`` downwards that prunes any partial table already
violating a required property, so leaves are met in increasing index order and
the first witness found is the first in enumeration order.  Work is split
across processes by contiguous ranges of the top digit; the lowest range with
a witness wins, which reproduces the sequential answer.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional, Sequence

from .bits import compress, expand, popcount, submasks
from .choice import (
    FRAME_DEPENDENT,
    NESTED,
    UNARY,
    ChoiceProperty,
    ExplicitChoice,
    PreferentialChoice,
    Scope,
    evaluate_table,
    instances,
    table_satisfies,
    violates,
)
from .consequence import ConsequenceOperation
from .frame import FiniteFrame, bare_frame, discrete_frame
from .report import InputError, PropertyReport

CH = ChoiceProperty
MAX_MINE_MODELS = 5
MAX_MINE_FORMULAS = 3
MAX_STUDY_MODELS = 4
MAX_PREF_MODELS = 6


class FrameMode(Enum):
    NONE = "none"
    ALL_DEFINABLE = "all-definable"
    ENUMERATE_FRAMES = "enumerate"


@dataclass(frozen=True)
class MineConfig:
    max_models: int
    satisfy: tuple[ChoiceProperty, ...]
    violate: tuple[ChoiceProperty, ...]
    frame_mode: FrameMode = FrameMode.NONE
    max_formulas: int = 2
    exhaustive: bool = True
    seed: int = 0
    budget: int = 0
    jobs: int = 1
    min_models: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "satisfy", tuple(self.satisfy))
        object.__setattr__(self, "violate", tuple(self.violate))
        both = set(self.satisfy) & set(self.violate)
        if both:
            names = ", ".join(sorted(p.value for p in both))
            raise InputError(f"contradictory mining config: {names} both satisfied and violated")
        if not 0 <= self.min_models <= self.max_models <= MAX_MINE_MODELS:
            raise InputError(f"max_models must lie in {self.min_models}..{MAX_MINE_MODELS}")
        if not 0 <= self.max_formulas <= MAX_MINE_FORMULAS:
            raise InputError(f"max_formulas must lie in 0..{MAX_MINE_FORMULAS}")
        if self.frame_mode is FrameMode.NONE:
            bad = (set(self.satisfy) | set(self.violate)) & FRAME_DEPENDENT
            if bad:
                names = ", ".join(sorted(p.value for p in bad))
                raise InputError(f"{names} needs a frame: use frame mode all-definable or enumerate")
        if not self.exhaustive and self.budget <= 0:
            raise InputError("random mining needs a positive budget")
        if self.jobs < 1:
            raise InputError("jobs must be at least 1")

    @property
    def contraction_space(self) -> bool:
        return CH.CONTRACTION in self.satisfy


@dataclass(frozen=True)
class Witness:
    frame: Optional[FiniteFrame]
    ground: FiniteFrame
    choice: ExplicitChoice
    satisfied: tuple[ChoiceProperty, ...]
    violated: tuple[PropertyReport, ...]


@dataclass(frozen=True)
class MineResult:
    witness: Optional[Witness]
    # candidates accounted for, in enumeration order, up to the witness
    # (inclusive) or over the whole space when nothing was found
    visited: int
    space: int
    sizes: tuple[int, ...] = field(default=())


# --- candidate spaces ------------------------------------------------------


def _radices(n: int, contraction: bool) -> list[int]:
    return [1 << (popcount(x) if contraction else n) for x in range(1 << n)]


def space_size(n: int, contraction: bool) -> int:
    """Independent count of the candidate tables over ``n`` models."""
    if contraction:
        return 2 ** (n * 2 ** (n - 1)) if n else 1
    return 2 ** (n * 2**n)


def decode(index: int, n: int, contraction: bool) -> tuple[int, ...]:
    """The candidate table with the given index."""
    table = []
    for x, r in enumerate(_radices(n, contraction)):
        code = index % r
        index //= r
        table.append(expand(code, x) if contraction else code)
    return tuple(table)


def encode(table: Sequence[int], contraction: bool) -> int:
    n = (len(table) - 1).bit_length()
    index = 0
    for x in range(len(table) - 1, -1, -1):
        r = 1 << (popcount(x) if contraction else n)
        index = index * r + (compress(table[x], x) if contraction else table[x])
    return index


def frames_for(n: int, cfg: MineConfig) -> Iterator[FiniteFrame]:
    if cfg.frame_mode is FrameMode.NONE:
        yield bare_frame(n)
    elif cfg.frame_mode is FrameMode.ALL_DEFINABLE:
        yield discrete_frame(n)
    else:
        models = tuple(str(i + 1) for i in range(n))
        for l in range(cfg.max_formulas + 1):
            formulas = tuple(f"p{j + 1}" for j in range(l))
            for code in range(1 << (n * l)):
                rows = [(code >> (i * l)) & ((1 << l) - 1) for i in range(n)]
                yield FiniteFrame.from_rows(models, formulas, rows)


# --- pruned depth-first search --------------------------------------------


def _prune_lists(
    frame: FiniteFrame, props: Sequence[ChoiceProperty]
) -> list[list[tuple[ChoiceProperty, int, int]]]:
    """For each X, the instances whose smallest involved set is X."""
    lists: list[list[tuple[ChoiceProperty, int, int]]] = [[] for _ in range(1 << frame.n_models)]
    for prop in props:
        for x, y in instances(frame, prop, Scope.ALL_SUBSETS):
            key = x if prop in UNARY or prop in NESTED else min(x, y)
            lists[key].append((prop, x, y))
    return lists


def _search(
    frame: FiniteFrame,
    satisfy: tuple[ChoiceProperty, ...],
    violate: tuple[ChoiceProperty, ...],
    contraction: bool,
    top_lo: int,
    top_hi: int,
) -> tuple[Optional[int], Optional[tuple[int, ...]], int]:
    """DFS over top codes in ``[top_lo, top_hi)``; returns (index, table, accounted)."""
    n = frame.n_models
    radices = _radices(n, contraction)
    weights = [1] * (1 << n)
    for x in range(1, 1 << n):
        weights[x] = weights[x - 1] * radices[x - 1]
    checks = _prune_lists(frame, [p for p in satisfy if not (contraction and p is CH.CONTRACTION)])
    table = [0] * (1 << n)
    accounted = 0
    full = (1 << n) - 1

    def values(x: int) -> Iterator[tuple[int, int]]:
        if contraction:
            for code, v in enumerate(submasks(x)):
                yield code, v
        else:
            for v in range(1 << n):
                yield v, v

    def leaf_ok() -> bool:
        for prop in violate:
            for x, y in instances(frame, prop, Scope.ALL_SUBSETS):
                if violates(prop, table, frame, x, y):
                    break
            else:
                return False
        return True

    def walk(x: int, index: int) -> Optional[int]:
        nonlocal accounted
        for code, v in values(x):
            table[x] = v
            if any(violates(p, table, frame, a, b) for p, a, b in checks[x]):
                accounted += weights[x]
                continue
            at = index + code * weights[x]
            if x == 0:
                accounted += 1
                if leaf_ok():
                    return at
            else:
                found = walk(x - 1, at)
                if found is not None:
                    return found
        return None

    # top level, restricted to a range of codes
    x = full
    found_at = None
    for code, v in values(x):
        if not top_lo <= code < top_hi:
            continue
        table[x] = v
        if any(violates(p, table, frame, a, b) for p, a, b in checks[x]):
            accounted += weights[x]
            continue
        at = code * weights[x]
        if x == 0:
            accounted += 1
            if leaf_ok():
                found_at = at
                break
        else:
            found_at = walk(x - 1, at)
            if found_at is not None:
                break
    if found_at is None:
        return None, None, accounted
    return found_at, tuple(table), accounted


def _search_task(args):
    return _search(*args)


def _chunks(total: int, jobs: int) -> list[tuple[int, int]]:
    jobs = max(1, min(jobs, total))
    step, extra = divmod(total, jobs)
    out, lo = [], 0
    for i in range(jobs):
        hi = lo + step + (1 if i < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def _make_witness(
    cfg: MineConfig, frame: FiniteFrame, table: tuple[int, ...]
) -> Witness:
    violated = tuple(evaluate_table(frame, table, p) for p in cfg.violate)
    return Witness(
        None if cfg.frame_mode is FrameMode.NONE else frame,
        frame,
        ExplicitChoice(frame.n_models, table),
        cfg.satisfy,
        violated,
    )


def _mine_exhaustive(cfg: MineConfig, pool: Optional[ProcessPoolExecutor]) -> MineResult:
    offset = 0
    sizes = []
    for n in range(cfg.min_models, cfg.max_models + 1):
        per_frame = space_size(n, cfg.contraction_space)
        n_space = 0
        for frame in frames_for(n, cfg):
            top = 1 << n
            tasks = [
                (frame, cfg.satisfy, cfg.violate, cfg.contraction_space, lo, hi)
                for lo, hi in _chunks(top, cfg.jobs)
            ]
            if pool is None:
                results = map(_search_task, tasks)
            else:
                results = pool.map(_search_task, tasks)
            accounted = 0
            for index, table, part in results:
                if index is not None:
                    return MineResult(
                        _make_witness(cfg, frame, table),
                        offset + index + 1,
                        offset + per_frame,
                        tuple(sizes),
                    )
                accounted += part
            if accounted != per_frame:
                raise RuntimeError(
                    f"search accounted for {accounted} of {per_frame} candidates"
                )
            offset += per_frame
            n_space += per_frame
        sizes.append(n_space)
    return MineResult(None, offset, offset, tuple(sizes))


def _random_candidate(cfg: MineConfig, i: int) -> tuple[FiniteFrame, tuple[int, ...]]:
    rng = random.Random(f"{cfg.seed}:{i}")
    n = cfg.max_models
    if cfg.frame_mode is FrameMode.NONE:
        frame = bare_frame(n)
    elif cfg.frame_mode is FrameMode.ALL_DEFINABLE:
        frame = discrete_frame(n)
    else:
        l = rng.randrange(cfg.max_formulas + 1)
        rows = [rng.getrandbits(l) if l else 0 for _ in range(n)]
        frame = FiniteFrame.from_rows(
            tuple(str(i + 1) for i in range(n)), tuple(f"p{j + 1}" for j in range(l)), rows
        )
    if cfg.contraction_space:
        table = tuple(expand(rng.getrandbits(popcount(x)), x) if x else 0 for x in range(1 << n))
    else:
        table = tuple(rng.getrandbits(n) if n else 0 for _ in range(1 << n))
    return frame, table


def _random_task(args):
    cfg, lo, hi = args
    for i in range(lo, hi):
        frame, table = _random_candidate(cfg, i)
        if table_satisfies(frame, table, cfg.satisfy) and all(
            not evaluate_table(frame, table, p).holds for p in cfg.violate
        ):
            return i
    return None


def _mine_random(cfg: MineConfig, pool: Optional[ProcessPoolExecutor]) -> MineResult:
    tasks = [(cfg, lo, hi) for lo, hi in _chunks(cfg.budget, cfg.jobs)]
    results = pool.map(_random_task, tasks) if pool else map(_random_task, tasks)
    for i in results:
        if i is not None:
            frame, table = _random_candidate(cfg, i)
            return MineResult(_make_witness(cfg, frame, table), i + 1, cfg.budget)
    return MineResult(None, cfg.budget, cfg.budget)


def mine(cfg: MineConfig) -> MineResult:
    """First table meeting every ``satisfy`` property and failing every ``violate`` one."""
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            return _mine_exhaustive(cfg, pool) if cfg.exhaustive else _mine_random(cfg, pool)
    return _mine_exhaustive(cfg, None) if cfg.exhaustive else _mine_random(cfg, None)


def enumerate_tables(
    frame: FiniteFrame, satisfy: Sequence[ChoiceProperty]
) -> Iterator[tuple[int, ...]]:
    """Every Contraction-respecting table on ``frame`` meeting ``satisfy``, in index order."""
    n = frame.n_models
    checks = _prune_lists(frame, [p for p in satisfy if p is not CH.CONTRACTION])
    table = [0] * (1 << n)

    def walk(x: int) -> Iterator[tuple[int, ...]]:
        for v in submasks(x):
            table[x] = v
            if any(violates(p, table, frame, a, b) for p, a, b in checks[x]):
                continue
            if x == 0:
                yield tuple(table)
            else:
                yield from walk(x - 1)

    yield from walk((1 << n) - 1)


# --- studies ---------------------------------------------------------------

PROVISO = (
    "Contraction and Arrow force Expansion only when choices on nonempty sets "
    "are nonempty; with empty choices allowed a counterexample exists"
)


def study_arrow_expansion(max_models: int, jobs: int = 1) -> dict:
    if not 1 <= max_models <= MAX_STUDY_MODELS:
        raise InputError(f"max_models must lie in 1..{MAX_STUDY_MODELS}")
    studies = []
    for name, satisfy in (
        ("with-nonempty", (CH.CONTRACTION, CH.ARROW, CH.NONEMPTY)),
        ("without-nonempty", (CH.CONTRACTION, CH.ARROW)),
    ):
        cfg = MineConfig(max_models, satisfy, (CH.EXPANSION,), jobs=jobs)
        result = mine(cfg)
        studies.append(
            {
                "name": name,
                "satisfy": [p.value for p in satisfy],
                "violate": [CH.EXPANSION.value],
                "exhausted": result.witness is None,
                "visited": result.visited,
                "space": result.space,
                "witness": result.witness,
            }
        )
    return {"max_models": max_models, "studies": studies, "proviso": PROVISO}


@dataclass(frozen=True)
class PreferentialRepresentation:
    frame: FiniteFrame
    choice: PreferentialChoice
    orders_tried: int

    def edges(self) -> list[tuple[str, str]]:
        m = self.frame.models
        return [(m[x], m[y]) for x, y in sorted(self.choice.edges)]


def find_preferential_representation(
    c: ConsequenceOperation,
) -> tuple[Optional[PreferentialRepresentation], FiniteFrame, int]:
    """Search strict partial orders on the canonical models for one deriving ``c``.

    Returns (representation or None, canonical frame, orders tried).
    """
    from .bridge import canonical_frame
    from .proplang import enumerate_strict_partial_orders

    cf = canonical_frame(c)
    if cf.n_models > MAX_PREF_MODELS:
        raise InputError(
            f"canonical frame has {cf.n_models} theories; the order search is capped at "
            f"{MAX_PREF_MODELS}"
        )
    target = [c.closure(a) for a in range(1 << c.n)]
    mods = [cf.mod(a) for a in range(1 << c.n)]
    tried = 0
    for order in enumerate_strict_partial_orders(cf.n_models):
        tried += 1
        pref = PreferentialChoice(cf.n_models, order)
        if all(cf.th(pref.choose(x)) == want for x, want in zip(mods, target)):
            return PreferentialRepresentation(cf, pref, tried), cf, tried
    return None, cf, tried
