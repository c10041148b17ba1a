"""Command-line front end.

    wadgetree canonicalize a.dta b.dta -j 4 --format json
    wadgetree compare f01.dta f12.dta
    wadgetree build "C(w^[w+1])" -o f02.dta
    wadgetree compose "krep(0,1)" base.dta r0.dta r1.dta

Exit codes: 0 success, 1 usage error, 2 bad input, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from io import StringIO
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Optional

from .automaton import (AutomatonError, DetTreeAutomaton, export_dot, parse_automaton,
                        serialize_automaton)
from .builder import ComposeOp, build, compose_automata
from .canonical import CanonicalizationError, canonicalize, classify
from .names import NameError_, name_leq, name_parse
from .ordinals import Index, Order, OrdinalError
from .productivity import normalize
from .structure import SATURATED, StructureError, pattern_report

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
FORMATS = ("plain", "json", "dot")
PER_FILE = ("validate", "normalize", "productive", "patterns", "canonicalize", "classify",
            "export-dot")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------- rendering

def automaton_json(A: DetTreeAutomaton) -> dict:
    return {
        "alphabet": list(A.alphabet),
        "start": A.labels[A.initial],
        "states": [{"name": A.labels[q], "rank": A.ranks[q]} for q in A.states()],
        "transitions": [[A.labels[q], a, A.labels[l], A.labels[r]]
                        for q in A.states() for a, (l, r) in zip(A.alphabet, A.delta[q])],
    }


def _render_automaton(A: DetTreeAutomaton, fmt: str):
    if fmt == "dot":
        return export_dot(A)
    if fmt == "json":
        return automaton_json(A)
    return serialize_automaton(A)


def _index_text(i) -> str:
    return str(i) if i is not None else "none"


def _patterns_json(A: DetTreeAutomaton) -> dict:
    rep = pattern_report(A)
    N = normalize(A)
    label = N.automaton.labels
    weak = rep.max_weak_flower
    split = None
    if rep.split is not None:
        s = rep.split
        split = {"state": label[s.state], "letter": s.letter,
                 "left_profile": sorted(s.left_profile), "right_profile": sorted(s.right_profile)}
    return {
        "acc_replicated": sorted(label[q] for q in rep.acc_replicated),
        "admits_top0": rep.admits_top0,
        "admits_top1": rep.admits_top1,
        "admits_top2": rep.admits_top2,
        "max_flower": _index_text(rep.max_flower),
        "max_weak_flower": "saturated" if weak is SATURATED else _index_text(weak),
        "rej_replicated": sorted(label[q] for q in rep.rej_replicated),
        "split": split,
    }


def _plain_dict(d: dict) -> str:
    lines = []
    for k in sorted(d):
        v = d[k]
        if isinstance(v, list):
            v = " ".join(map(str, v)) if v and not isinstance(v[0], (dict, list)) else json.dumps(v, sort_keys=True)
        elif isinstance(v, dict):
            v = json.dumps(v, sort_keys=True)
        elif isinstance(v, bool):
            v = str(v).lower()
        elif v is None:
            v = "none"
        lines.append(f"{k}: {v}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- per-file commands

def _analyse(job: tuple[str, str, str]):
    """Runs in worker processes: returns (status, payload) with payload already rendered."""
    command, path, fmt = job
    try:
        with open(path, encoding="utf-8") as fh:
            A = parse_automaton(fh.read())
    except OSError as exc:
        return EXIT_INPUT, f"{path}: {exc.strerror}"
    except AutomatonError as exc:
        return EXIT_INPUT, f"{path}: {exc}"
    try:
        return EXIT_OK, _COMMANDS[command](A, fmt)
    except (AutomatonError, NameError_, OrdinalError) as exc:
        return EXIT_INPUT, f"{path}: {exc}"
    except (CanonicalizationError, StructureError, AssertionError, RecursionError) as exc:
        return EXIT_INTERNAL, f"{path}: internal error: {exc}"


def _cmd_validate(A, fmt):
    info = {"letters": len(A.alphabet), "states": A.size, "valid": True}
    return info if fmt == "json" else "ok\n"


def _cmd_normalize(A, fmt):
    return _render_automaton(normalize(A).automaton, fmt)


def _cmd_productive(A, fmt):
    N = normalize(A)
    names = [N.automaton.labels[q] for q in sorted(N.productive)]
    return {"productive": names} if fmt == "json" else " ".join(names) + "\n"


def _cmd_patterns(A, fmt):
    d = _patterns_json(A)
    return d if fmt == "json" else _plain_dict(d)


def _cmd_canonicalize(A, fmt):
    n = str(canonicalize(A))
    return {"canonical_name": n} if fmt == "json" else n + "\n"


def _cmd_classify(A, fmt):
    d = classify(A).to_json()
    return d if fmt == "json" else _plain_dict(d)


def _cmd_export_dot(A, fmt):
    return export_dot(A)


_COMMANDS: dict[str, Callable] = {
    "validate": _cmd_validate,
    "normalize": _cmd_normalize,
    "productive": _cmd_productive,
    "patterns": _cmd_patterns,
    "canonicalize": _cmd_canonicalize,
    "classify": _cmd_classify,
    "export-dot": _cmd_export_dot,
}


def _run_batch(command, paths, fmt, jobs) -> tuple[int, list]:
    work = [(command, p, fmt) for p in paths]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_analyse, work))
    else:
        results = [_analyse(w) for w in work]
    return max(code for code, _ in results), results


def _emit_batch(command, paths, fmt, results, out) -> None:
    if fmt == "json":
        items = []
        for path, (code, payload) in zip(paths, results):
            if code:
                items.append({"error": payload, "file": path})
            elif isinstance(payload, dict):
                items.append({"file": path, **payload})
            else:
                items.append({"file": path, "output": payload})
        doc = items[0] if len(items) == 1 else items
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        return
    for path, (code, payload) in zip(paths, results):
        if code:
            continue
        if len(paths) > 1:
            out.write(f"== {path}\n")
        out.write(payload)


# ---------------------------------------------------------------- other commands

_ORDER_TEXT = {Order.LT: "<", Order.EQ: "=", Order.GT: ">", Order.INCOMPARABLE: "incomparable"}
_KREP = re.compile(r"^krep\((\d+),(\d+)\)$")


def parse_op(text: str) -> ComposeOp:
    simple = {"or": ComposeOp.OR, "and": ComposeOp.AND, "oplus": ComposeOp.OPLUS,
              "arrow": ComposeOp.ARROW}
    if text in simple:
        return simple[text]
    m = _KREP.match(text)
    if m:
        try:
            return ComposeOp.krep(Index(int(m.group(1)), int(m.group(2))))
        except OrdinalError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"unknown operation {text!r} (or, and, oplus, arrow, krep(i,k))")


def _load(path: str) -> DetTreeAutomaton:
    with open(path, encoding="utf-8") as fh:
        return parse_automaton(fh.read())


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wadgetree", description="Wadge analysis of deterministic parity tree automata")
    p.add_argument("--format", choices=FORMATS, default="plain")
    p.add_argument("-o", "--output", help="write the result here instead of standard output")
    p.add_argument("-j", "--jobs", type=int, default=1, help="worker processes for batch commands")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in PER_FILE:
        s = sub.add_parser(name)
        s.add_argument("files", nargs="+")
    s = sub.add_parser("compare")
    s.add_argument("files", nargs=2)
    s = sub.add_parser("build")
    s.add_argument("name")
    s = sub.add_parser("compose")
    s.add_argument("op")
    s.add_argument("files", nargs="+")
    # options may also follow the subcommand
    for s in sub.choices.values():
        s.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
        s.add_argument("-o", "--output", default=argparse.SUPPRESS)
        s.add_argument("-j", "--jobs", type=int, default=argparse.SUPPRESS)
    return p


def _write(args, text: str) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _automaton_output(args, A: DetTreeAutomaton) -> str:
    r = _render_automaton(A, args.format)
    return json.dumps(r, sort_keys=True, indent=2) + "\n" if isinstance(r, dict) else r


def _dispatch(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    if args.command in PER_FILE:
        code, results = _run_batch(args.command, args.files, args.format, args.jobs)
        for c, payload in results:
            if c:
                print(payload, file=sys.stderr)
        buf = StringIO()
        _emit_batch(args.command, args.files, args.format, results, buf)
        _write(args, buf.getvalue())
        return code
    if args.command == "compare":
        a, b = (canonicalize(_load(f)) for f in args.files)
        rel = _ORDER_TEXT[name_leq(a, b)]
        if args.format == "json":
            _write(args, json.dumps({"left": str(a), "relation": rel, "right": str(b)},
                                    sort_keys=True, indent=2) + "\n")
        else:
            _write(args, rel + "\n")
        return EXIT_OK
    if args.command == "build":
        _write(args, _automaton_output(args, build(name_parse(args.name))))
        return EXIT_OK
    if args.command == "compose":
        op = parse_op(args.op)
        if len(args.files) != op.arity:
            raise UsageError(f"{op} takes {op.arity} automata, got {len(args.files)}")
        _write(args, _automaton_output(args, compose_automata(op, [_load(f) for f in args.files])))
        return EXIT_OK
    raise UsageError(f"unknown command {args.command}")


def run(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _dispatch(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    except (AutomatonError, NameError_, OrdinalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CanonicalizationError, StructureError, AssertionError, RecursionError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())
