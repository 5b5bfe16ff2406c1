"""Command-line front end.

Exit codes: 0 when every check holds, 1 when a violation or witness is found,
2 on input errors.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from . import __version__
from .bridge import (
    canonical_choice,
    canonical_frame,
    derive_consequence,
    verify_theorem1,
    verify_theorem2,
)
from .choice import ChoiceProperty, Scope, eval_choice_property
from .consequence import CONNECTIVE, ConsequenceProperty, eval_consequence_property
from .formats import (
    choice_to_json,
    consequence_to_json,
    dumps,
    frame_to_json,
    load_choice,
    load_consequence,
    load_frame,
    witness_to_json,
    write_json,
)
from .frame import is_union_closed
from .proplang import MAX_ATOMS, build_prop_frame, search_theorem3_completeness
from .report import InputError, PropertyReport, render_witness
from .search import (
    FrameMode,
    MineConfig,
    find_preferential_representation,
    mine,
    study_arrow_expansion,
)


@dataclass(frozen=True)
class RunResult:
    code: int
    payload: dict
    text: str

    def output(self, fmt: str) -> str:
        return dumps(self.payload) if fmt == "json" else self.text + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage errors take the exit-2 path with the others
        raise InputError(message)


def _parse_list(text: str, enum, what: str) -> list:
    out = []
    known = {e.value: e for e in enum}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if item not in known:
            raise InputError(f"unknown {what} {item!r}; expected one of {', '.join(known)}")
        out.append(known[item])
    return out


def _checks_result(reports: list[PropertyReport], extra: Optional[dict] = None) -> RunResult:
    ok = all(r.holds for r in reports)
    payload = dict(extra or {})
    payload["checks"] = [r.to_json() for r in reports]
    payload["overall"] = ok
    lines = [r.render() for r in reports] + [f"overall: {'true' if ok else 'false'}"]
    return RunResult(0 if ok else 1, payload, "\n".join(lines))


# --- subcommands ------------------------------------------------------------


def cmd_check_frame(args) -> RunResult:
    frame = load_frame(args.frame)
    fam = frame.definable
    info = {
        "models": len(frame.models),
        "formulas": len(frame.formulas),
        "definable_family": [frame.model_names(d) for d in fam],
    }
    reports = []
    if args.union_closed:
        ok, pair = is_union_closed(frame)
        witness = None if ok else {"X": frame.model_names(pair[0]), "Y": frame.model_names(pair[1])}
        reports.append(PropertyReport("union-closed", ok, witness, len(fam) * (len(fam) + 1) // 2))
    res = _checks_result(reports, info)
    head = [
        f"models: {info['models']}",
        f"formulas: {info['formulas']}",
        "definable: " + " ".join("{" + ",".join(d) + "}" for d in info["definable_family"]),
    ]
    return RunResult(res.code, res.payload, "\n".join(head + [res.text]))


def cmd_check_choice(args) -> RunResult:
    frame = load_frame(args.frame)
    f = load_choice(args.choice, frame)
    props = _parse_list(args.properties, ChoiceProperty, "choice property")
    scope = Scope(args.scope)
    return _checks_result([eval_choice_property(frame, f, p, scope) for p in props])


def _prop_frame_for(formulas: Sequence[str]):
    for k in range(MAX_ATOMS + 1):
        if len(formulas) == 1 << (1 << k):
            pf = build_prop_frame(k)
            if pf.frame.formulas == tuple(formulas):
                return pf
    return None


def cmd_check_consequence(args) -> RunResult:
    c = load_consequence(args.cons)
    props = _parse_list(args.properties, ConsequenceProperty, "consequence property")
    cs = None
    if any(p in CONNECTIVE for p in props):
        pf = _prop_frame_for(c.formulas)
        if pf is None:
            raise InputError(
                "connective properties need formulas named as truth tables (see prop-frame)"
            )
        cs = pf.cs
    frame = None
    if ConsequenceProperty.DISTRIBUTIVITY in props:
        frame = canonical_frame(c)
    return _checks_result([eval_consequence_property(c, p, cs, frame) for p in props])


def cmd_derive_c(args) -> RunResult:
    frame = load_frame(args.frame)
    f = load_choice(args.choice, frame)
    c = derive_consequence(frame, f)
    write_json(args.output, consequence_to_json(c))
    payload = {"written": [args.output], "formulas": len(c.formulas)}
    return RunResult(0, payload, f"wrote {args.output}")


def cmd_canonical(args) -> RunResult:
    c = load_consequence(args.cons)
    cf = canonical_frame(c, args.closed_only)
    f = canonical_choice(c, cf)
    frame_out, choice_out = args.output
    write_json(frame_out, frame_to_json(cf))
    write_json(choice_out, choice_to_json(cf, f))
    payload = {"written": [frame_out, choice_out], "theories": list(cf.models)}
    return RunResult(0, payload, f"wrote {frame_out} and {choice_out} ({len(cf.models)} theories)")


def _theorem_result(report) -> RunResult:
    return RunResult(0 if report.overall else 1, report.to_json(), report.render())


def cmd_theorem1(args) -> RunResult:
    return _theorem_result(verify_theorem1(load_consequence(args.cons), args.closed_only))


def cmd_theorem2(args) -> RunResult:
    frame = load_frame(args.frame)
    return _theorem_result(verify_theorem2(frame, load_choice(args.choice, frame)))


def cmd_theorem3(args) -> RunResult:
    pf = build_prop_frame(args.atoms)
    return _theorem_result(search_theorem3_completeness(pf, load_consequence(args.cons)))


def cmd_prop_frame(args) -> RunResult:
    pf = build_prop_frame(args.atoms)
    write_json(args.output, frame_to_json(pf.frame))
    payload = {
        "written": [args.output],
        "models": len(pf.frame.models),
        "formulas": len(pf.frame.formulas),
    }
    return RunResult(0, payload, f"wrote {args.output}")


def _witness_text(w: Optional[dict]) -> list[str]:
    if w is None:
        return ["witness: none"]
    lines = ["witness:"]
    if w["frame"] is not None:
        fr = w["frame"]
        lines.append("  frame models: " + ",".join(fr["models"]))
        lines.append("  frame formulas: " + ",".join(fr["formulas"]))
        for m, row in zip(fr["models"], fr["satisfaction"]):
            lines.append(f"  sat {m}: " + "".join(str(v) for v in row))
    for e in w["choice"]["entries"]:
        lines.append("  f({" + ",".join(e["set"]) + "}) = {" + ",".join(e["value"]) + "}")
    lines.append("  satisfied: " + ",".join(w["satisfied"]))
    violated = w["violated"] if isinstance(w["violated"], list) else [w["violated"]]
    for v in violated:
        lines.append(f"  violated: {v['property']} at {render_witness(v['witness'])}")
    return lines


def cmd_mine(args) -> RunResult:
    satisfy = _parse_list(args.satisfy, ChoiceProperty, "choice property")
    violate = _parse_list(args.violate, ChoiceProperty, "choice property")
    random_mode = args.random is not None
    if random_mode and args.exhaustive:
        raise InputError("--exhaustive and --random are mutually exclusive")
    if random_mode and args.budget is None:
        raise InputError("--random needs --budget")
    cfg = MineConfig(
        max_models=args.max_models,
        satisfy=tuple(satisfy),
        violate=tuple(violate),
        frame_mode=FrameMode(args.frame_mode),
        max_formulas=args.max_formulas,
        exhaustive=not random_mode,
        seed=args.random or 0,
        budget=args.budget or 0,
        jobs=args.jobs,
        min_models=args.min_models,
    )
    result = mine(cfg)
    witness = witness_to_json(result.witness) if result.witness else None
    payload = {
        "config": {
            "satisfy": [p.value for p in satisfy],
            "violate": [p.value for p in violate],
            "max_models": cfg.max_models,
            "max_formulas": cfg.max_formulas,
            "frame_mode": cfg.frame_mode.value,
            "mode": "random" if random_mode else "exhaustive",
            **({"seed": cfg.seed, "budget": cfg.budget} if random_mode else {}),
        },
        "space": result.space,
        "visited": result.visited,
        "exhausted": result.witness is None,
        "witness": witness,
    }
    lines = [f"space: {result.space}", f"visited: {result.visited}"] + _witness_text(witness)
    return RunResult(1 if witness else 0, payload, "\n".join(lines))


def cmd_study_arrow(args) -> RunResult:
    study = study_arrow_expansion(args.max_models, jobs=args.jobs)
    studies = []
    lines = [f"max models: {study['max_models']}"]
    found = False
    for s in study["studies"]:
        w = witness_to_json(s["witness"]) if s["witness"] else None
        found = found or w is not None
        studies.append({**s, "witness": w})
        lines.append(
            f"{s['name']}: satisfy {','.join(s['satisfy'])} violate {','.join(s['violate'])}: "
            + ("exhausted" if s["exhausted"] else "witness found")
            + f" (visited {s['visited']} of {s['space']})"
        )
        if w is not None:
            lines.extend(_witness_text(w)[1:])
    lines.append(f"proviso: {study['proviso']}")
    payload = {"max_models": study["max_models"], "studies": studies, "proviso": study["proviso"]}
    return RunResult(1 if found else 0, payload, "\n".join(lines))


def cmd_find_pref(args) -> RunResult:
    c = load_consequence(args.cons)
    rep, cf, tried = find_preferential_representation(c)
    edges = [list(e) for e in rep.edges()] if rep else None
    payload = {
        "found": rep is not None,
        "frame": frame_to_json(cf),
        "edges": edges,
        "orders_tried": tried,
    }
    if rep is None:
        text = f"no strict partial order on {len(cf.models)} theories represents C ({tried} tried)"
    else:
        shown = " ".join(f"{a}<{b}" for a, b in edges) or "(empty relation)"
        text = f"found after {tried} orders: {shown}"
    return RunResult(0 if rep else 1, payload, text)


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (mining only)")

    p = _Parser(prog="choicelab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("check-frame", cmd_check_frame, "list definable sets of a frame")
    sp.add_argument("frame")
    sp.add_argument("--union-closed", action="store_true")

    sp = add("check-choice", cmd_check_choice, "check choice-function properties")
    sp.add_argument("frame")
    sp.add_argument("choice")
    sp.add_argument("--properties", required=True)
    sp.add_argument("--scope", choices=("all", "definable"), default="all")

    sp = add("check-consequence", cmd_check_consequence, "check consequence properties")
    sp.add_argument("cons")
    sp.add_argument("--properties", required=True)

    sp = add("derive-c", cmd_derive_c, "write the consequence operation of a frame and choice")
    sp.add_argument("frame")
    sp.add_argument("choice")
    sp.add_argument("-o", "--output", required=True)

    sp = add("canonical", cmd_canonical, "write the canonical frame and choice of an operation")
    sp.add_argument("cons")
    sp.add_argument("-o", "--output", nargs=2, required=True, metavar=("FRAME_OUT", "CHOICE_OUT"))
    sp.add_argument("--closed-only", action="store_true", help="theories with C(T) ⊆ T")

    sp = add("theorem1", cmd_theorem1, "consequence operation to canonical choice model")
    sp.add_argument("cons")
    sp.add_argument("--closed-only", action="store_true")

    sp = add("theorem2", cmd_theorem2, "choice function to consequence operation")
    sp.add_argument("frame")
    sp.add_argument("choice")

    sp = add("theorem3", cmd_theorem3, "prime, negation-complete canonical construction")
    sp.add_argument("cons")
    sp.add_argument("--atoms", type=int, required=True)

    sp = add("prop-frame", cmd_prop_frame, "write the truth-table frame over K atoms")
    sp.add_argument("--atoms", type=int, required=True)
    sp.add_argument("-o", "--output", required=True)

    sp = add("mine", cmd_mine, "search for choice tables separating properties")
    sp.add_argument("--satisfy", default="")
    sp.add_argument("--violate", required=True)
    sp.add_argument("--max-models", type=int, required=True)
    sp.add_argument("--min-models", type=int, default=1)
    sp.add_argument("--max-formulas", type=int, default=2)
    sp.add_argument("--frame-mode", choices=[m.value for m in FrameMode], default="none")
    sp.add_argument("--exhaustive", action="store_true")
    sp.add_argument("--random", type=int, metavar="SEED")
    sp.add_argument("--budget", type=int)

    sp = add("study-arrow", cmd_study_arrow, "Arrow and Expansion with and without nonemptiness")
    sp.add_argument("--max-models", type=int, required=True)

    sp = add("find-pref", cmd_find_pref, "search for an injective preferential model")
    sp.add_argument("cons")
    return p


def run(argv: Sequence[str]) -> tuple[RunResult, str]:
    """Parse and dispatch; returns the result and the requested output format."""
    fmt = "text" if "--format=text" in argv or _format_flag(argv) == "text" else "json"
    try:
        args = build_parser().parse_args(list(argv))
        fmt = args.format
        return args.fn(args), fmt
    except InputError as exc:
        return RunResult(2, {"error": str(exc)}, f"error: {exc}"), fmt


def _format_flag(argv: Sequence[str]) -> Optional[str]:
    for i, a in enumerate(argv[:-1]):
        if a == "--format":
            return argv[i + 1]
    return None


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    result, fmt = run(argv)
    if result.code == 2:
        print(f"choicelab: {result.payload['error']}", file=sys.stderr)
        return 2
    sys.stdout.write(result.output(fmt))
    return result.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
