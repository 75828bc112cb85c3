"""``synoptic`` command line: compile, run and check models.

Exit status: 0 success, 1 diagnostics, 2 run-time error, 3 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .core import ABSENT, EVENT, Machine, SimulationError, dump, kind_of
from .frontend import FrontendError, parse, validate
from .frontend.checks import Diagnostic
from .traces import TraceError, format_entry, parse_trace
from .trans import CyclicRegion, LabelOverflow, translate_model

OK, DIAGNOSTICS, RUNTIME, USAGE = 0, 1, 2, 3


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _color(stream) -> bool:
    mode = os.environ.get("SYNOPTIC_COLOR", "auto")
    return mode != "never" and stream.isatty()


def _report(path: str, diag: Diagnostic, stream) -> None:
    where = f"{path}:{diag.span}" if diag.span else path
    label = f"error[{diag.code}]"
    if _color(stream):
        label = f"\x1b[1;31m{label}\x1b[0m"
    stream.write(f"{where}: {label}: {diag.message}\n")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise _Usage(f"cannot read {path}: {err.strerror}") from None


def _front(path: str, stream):
    """Parse and validate; returns the model or ``None`` after reporting."""
    text = _read(path)
    try:
        model = parse(text)
    except FrontendError as err:
        _report(path, Diagnostic(err.code, err.message, err.span), stream)
        return None
    diags = validate(model)
    for d in diags:
        _report(path, d, stream)
    return None if diags else model


def _translate(path: str):
    model = _front(path, sys.stderr)
    if model is None:
        return None
    try:
        return translate_model(model)
    except (CyclicRegion, LabelOverflow) as err:
        code = "CyclicRegion" if isinstance(err, CyclicRegion) else "LabelOverflow"
        _report(path, Diagnostic(code, str(err), getattr(err, "span", None)), sys.stderr)
        return None


def cmd_compile(path: str, emit_ir: bool = False) -> int:
    tr = _translate(path)
    if tr is None:
        return DIAGNOSTICS
    out = sys.stdout
    out.write(str(tr.manifest))
    if emit_ir:
        out.write("\n")
        out.write(dump(tr.process))
    return OK


def cmd_run(path: str, trace_path: str, max_steps: int | None = None, tick: bool = False) -> int:
    tr = _translate(path)
    if tr is None:
        return DIAGNOSTICS
    try:
        names, instants = parse_trace(_read(trace_path))
    except TraceError as err:
        raise _Usage(f"{trace_path}: {err}") from None
    for n in names:
        if n not in tr.manifest.inputs:
            what = "an output, not an input" if n in tr.manifest.outputs else "not a signal of the model"
            raise _Usage(f"{trace_path}: {n!r} is {what}")
    for lineno, inst in enumerate(instants, start=2):
        for n, v in inst.items():
            want = tr.manifest.kind(n)
            if kind_of(v) != want:
                raise _Usage(f"{trace_path}: line {lineno}: {n!r} expects a value of kind {want}")
    if max_steps is not None:
        instants = instants[:max_steps]
    if tick:
        instants = [{**inst, tr.manifest.trigger: EVENT} for inst in instants]

    outputs = sorted(tr.manifest.outputs)
    out = sys.stdout
    out.write(" ".join(outputs) + "\n")
    machine = Machine(tr.process)
    state = machine.initial_state()
    for k, inst in enumerate(instants):
        try:
            result = machine.react(state, inst)
        except SimulationError as err:
            out.flush()
            sys.stderr.write(f"{path}: run-time {err.kind} error: {err.at(k)}\n")
            return RUNTIME
        state = result.state
        row = result.reaction
        out.write(" ".join(format_entry(n, row[n]) for n in outputs if row[n] is not ABSENT) + "\n")
    return OK


def cmd_check(path: str) -> int:
    model = _front(path, sys.stdout)
    return OK if model is not None else DIAGNOSTICS


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="synoptic", description="Compile and simulate Synoptic models.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    c = sub.add_parser("compile", help="print the interface manifest (and the kernel IR)")
    c.add_argument("file")
    c.add_argument("--emit-ir", action="store_true", help="also print the kernel process")
    r = sub.add_parser("run", help="simulate against a trace file")
    r.add_argument("file")
    r.add_argument("--trace", required=True)
    r.add_argument("--max-steps", type=int, default=None)
    r.add_argument("--tick", action="store_true", help="make 'trigger' present at every instant")
    k = sub.add_parser("check", help="parse and validate only")
    k.add_argument("file")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    # long actions give deeply nested single-assignment expressions
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20_000))
    try:
        if args.command == "compile":
            return cmd_compile(args.file, args.emit_ir)
        if args.command == "run":
            if args.max_steps is not None and args.max_steps < 0:
                raise _Usage("--max-steps must be non-negative")
            return cmd_run(args.file, args.trace, args.max_steps, args.tick)
        return cmd_check(args.file)
    except _Usage as err:
        sys.stderr.write(f"synoptic: {err}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
