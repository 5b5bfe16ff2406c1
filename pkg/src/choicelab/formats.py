"""JSON file formats for frames, choice functions, consequence operations and witnesses."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .bits import members
from .choice import ChoiceFunction, ExplicitChoice, PreferentialChoice, make_preferential
from .consequence import MAX_EXPLICIT_FORMULAS, ConsequenceOperation, ExplicitConsequence
from .frame import MAX_TABLE_BITS, FiniteFrame
from .report import InputError

PathLike = Union[str, Path]


def read_json(path: PathLike) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputError(f"{path}: file not found") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def write_json(path: PathLike, obj: Any) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def _field(obj: Any, key: str, kind: type, where: str) -> Any:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected a JSON object")
    if key not in obj:
        raise InputError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise InputError(f"{where}: field {key!r} must be a {kind.__name__}")
    return value


def _names(value: Any, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise InputError(f"{where}: expected a list of identifier strings")
    return value


# --- frames ---------------------------------------------------------------


def frame_from_json(obj: Any) -> FiniteFrame:
    models = _names(_field(obj, "models", list, "frame"), "frame field 'models'")
    formulas = _names(_field(obj, "formulas", list, "frame"), "frame field 'formulas'")
    sat = _field(obj, "satisfaction", list, "frame")
    rows = []
    for i, row in enumerate(sat):
        if not isinstance(row, list):
            raise InputError(f"frame field 'satisfaction': row {i} is not a list")
        for v in row:
            if isinstance(v, bool) or v not in (0, 1) or isinstance(v, float):
                raise InputError(
                    f"frame field 'satisfaction': row {i} has entry {v!r}, expected 0 or 1"
                )
        rows.append(tuple(v == 1 for v in row))
    cap = max(62, len(formulas)) if all(f.startswith("tt:") for f in formulas) else 62
    return FiniteFrame(tuple(models), tuple(formulas), tuple(rows), formula_cap=cap)


def frame_to_json(frame: FiniteFrame) -> dict:
    return {
        "models": list(frame.models),
        "formulas": list(frame.formulas),
        "satisfaction": [[int(v) for v in row] for row in frame.sat],
    }


# --- choice functions -------------------------------------------------------


def choice_from_json(obj: Any, frame: FiniteFrame) -> ChoiceFunction:
    kind = _field(obj, "kind", str, "choice")
    if kind == "preference":
        strict = obj.get("strict", False)
        if not isinstance(strict, bool):
            raise InputError("choice field 'strict' must be true or false")
        edges = _field(obj, "edges", list, "choice")
        for e in edges:
            if not isinstance(e, list) or len(e) != 2 or not all(isinstance(v, str) for v in e):
                raise InputError(f"choice field 'edges': {e!r} is not a pair of model identifiers")
        return make_preferential(frame, edges, require_strict_partial_order=strict)
    if kind != "table":
        raise InputError(f"choice field 'kind' must be 'table' or 'preference', got {kind!r}")
    if frame.n_models > MAX_TABLE_BITS:
        raise InputError(f"{frame.n_models} models is too many for a choice table")
    default = obj.get("default", "none")
    if default not in ("identity", "none"):
        raise InputError(f"choice field 'default' must be 'identity' or 'none', got {default!r}")
    table: list = [None] * (1 << frame.n_models)
    for entry in _field(obj, "entries", list, "choice"):
        x = frame.model_set(_names(_field(entry, "set", list, "choice entry"), "choice entry 'set'"))
        v = frame.model_set(
            _names(_field(entry, "value", list, "choice entry"), "choice entry 'value'")
        )
        if table[x] is not None and table[x] != v:
            raise InputError(f"choice entries give two values for {frame.model_names(x)}")
        table[x] = v
    for x, v in enumerate(table):
        if v is None:
            if default == "identity":
                table[x] = x
            else:
                raise InputError(f"choice table has no entry for {frame.model_names(x)}")
    return ExplicitChoice(frame.n_models, tuple(table))


def choice_to_json(frame: FiniteFrame, f: ChoiceFunction) -> dict:
    if isinstance(f, PreferentialChoice):
        return {
            "kind": "preference",
            "strict": False,
            "edges": [[frame.models[x], frame.models[y]] for x, y in sorted(f.edges)],
        }
    return {
        "kind": "table",
        "entries": [
            {"set": frame.model_names(x), "value": frame.model_names(v)}
            for x, v in enumerate(f.table)
        ],
        "default": "none",
    }


# --- consequence operations ---------------------------------------------------


def consequence_from_json(obj: Any) -> ExplicitConsequence:
    formulas = _names(_field(obj, "formulas", list, "consequence"), "consequence field 'formulas'")
    if len(set(formulas)) != len(formulas):
        raise InputError("consequence: duplicate formula identifiers")
    if len(formulas) > MAX_EXPLICIT_FORMULAS:
        raise InputError(
            f"consequence: {len(formulas)} formulas exceeds the explicit cap of {MAX_EXPLICIT_FORMULAS}"
        )
    index = {a: j for j, a in enumerate(formulas)}

    def fset(names: list[str]) -> int:
        out = 0
        for a in names:
            if a not in index:
                raise InputError(f"consequence: unknown formula identifier {a!r}")
            out |= 1 << index[a]
        return out

    table: list = [None] * (1 << len(formulas))
    for entry in _field(obj, "entries", list, "consequence"):
        a = fset(_names(_field(entry, "set", list, "consequence entry"), "consequence entry 'set'"))
        v = fset(
            _names(_field(entry, "value", list, "consequence entry"), "consequence entry 'value'")
        )
        if table[a] is not None and table[a] != v:
            raise InputError(
                f"consequence entries give two values for {[formulas[j] for j in members(a)]}"
            )
        table[a] = v
    for a, v in enumerate(table):
        if v is None:
            raise InputError(
                f"consequence table has no entry for {[formulas[j] for j in members(a)]}"
            )
    return ExplicitConsequence(tuple(formulas), tuple(table))


def consequence_to_json(c: ConsequenceOperation) -> dict:
    if c.n > MAX_EXPLICIT_FORMULAS:
        raise InputError(f"{c.n} formulas is too many to write out a consequence table")
    names = c.formulas
    return {
        "formulas": list(names),
        "entries": [
            {
                "set": [names[j] for j in members(a)],
                "value": [names[j] for j in members(c.closure(a))],
            }
            for a in range(1 << c.n)
        ],
    }


# --- loaders ------------------------------------------------------------------


def load_frame(path: PathLike) -> FiniteFrame:
    return frame_from_json(read_json(path))


def load_choice(path: PathLike, frame: FiniteFrame) -> ChoiceFunction:
    return choice_from_json(read_json(path), frame)


def load_consequence(path: PathLike) -> ExplicitConsequence:
    return consequence_from_json(read_json(path))


def witness_to_json(w) -> dict:
    """Witness record of :mod:`choicelab.search`."""
    violated = [{"property": r.property, "witness": r.witness} for r in w.violated]
    return {
        "frame": frame_to_json(w.frame) if w.frame is not None else None,
        "choice": choice_to_json(w.ground, w.choice),
        "satisfied": [p.value for p in w.satisfied],
        "violated": violated[0] if len(violated) == 1 else violated,
    }
