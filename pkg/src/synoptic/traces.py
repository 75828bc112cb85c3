"""Text trace files.

The first line names the signals of the trace.  Each following line is one
instant: ``name=value`` for a present data signal, ``name!`` for a present
event.  Names left out of a line are absent at that instant.
"""

from __future__ import annotations

from .core import ABSENT, EVENT, format_value, parse_value


class TraceError(Exception):
    pass


def parse_trace(text: str) -> tuple[list[str], list[dict]]:
    lines = text.splitlines()
    if not lines:
        return [], []
    names = lines[0].split()
    if len(set(names)) != len(names):
        raise TraceError("line 1: duplicate signal in header")
    known = set(names)
    instants = []
    for lineno, line in enumerate(lines[1:], start=2):
        inst: dict = {}
        for entry in line.split():
            if entry.endswith("!"):
                name, value = entry[:-1], EVENT
            elif "=" in entry:
                name, raw = entry.split("=", 1)
                try:
                    value = parse_value(raw)
                except ValueError:
                    raise TraceError(f"line {lineno}: bad value {raw!r} for {name!r}") from None
            else:
                raise TraceError(f"line {lineno}: cannot read entry {entry!r}")
            if name not in known:
                raise TraceError(f"line {lineno}: signal {name!r} is not in the header")
            if name in inst:
                raise TraceError(f"line {lineno}: signal {name!r} given twice")
            inst[name] = value
        instants.append(inst)
    return names, instants


def format_entry(name: str, value) -> str:
    return f"{name}!" if value is EVENT else f"{name}={format_value(value)}"


def format_trace(names, reactions) -> str:
    names = sorted(names)
    out = [" ".join(names)]
    for r in reactions:
        out.append(" ".join(format_entry(n, r[n]) for n in names if r.get(n, ABSENT) is not ABSENT))
    return "\n".join(out) + "\n"
