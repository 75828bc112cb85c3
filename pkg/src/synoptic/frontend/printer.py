"""Canonical source rendering; ``parse(pretty_print(m)) == m``."""

from __future__ import annotations

from .syntax import (
    Assign,
    Automaton,
    Block,
    Dataflow,
    DelayConn,
    Emit,
    End,
    EventConn,
    Model,
    Nop,
    OpConn,
    Seq,
    Skip,
    spine,
)

INDENT = "  "


def _atom(v) -> str:
    if v is True:
        return "true"
    if v is False:
        return "false"
    return str(v)


def format_action(s) -> str:
    if isinstance(s, Nop):
        return ""
    if isinstance(s, Skip):
        return "skip"
    if isinstance(s, End):
        return "end"
    if isinstance(s, Emit):
        return f"{s.signal}!"
    if isinstance(s, Assign):
        return f"{s.target} = {_atom(s.left)} {s.op} {_atom(s.right)}"
    if isinstance(s, Seq):
        return "; ".join(format_action(x) for x in spine(s))
    text = f"if {s.cond} {_braced(s.then)}"
    if not isinstance(s.orelse, Nop):
        text += f" else {_braced(s.orelse)}"
    return text


def _braced(s) -> str:
    inner = format_action(s)
    return f"{{ {inner} }}" if inner else "{ }"


def _conn(c) -> str:
    if isinstance(c, DelayConn):
        return f"data {c.src} $ init {_atom(c.init)} -> {c.dst}"
    if isinstance(c, OpConn):
        return f"data {_atom(c.left)} {c.op} {_atom(c.right)} -> {c.dst}"
    assert isinstance(c, EventConn)
    return f"event {c.src} -> {c.dst}"


def _item(item, depth: int, out: list[str]) -> None:
    pad = INDENT * depth
    if isinstance(item, Block):
        out.append(f"{pad}block {item.name} {{")
        for i, child in enumerate(item.body):
            if i:
                out.append(f"{pad}{INDENT}||")
            _item(child, depth + 1, out)
        out.append(pad + "}")
    elif isinstance(item, Dataflow):
        out.append(f"{pad}dataflow {item.name} {{")
        out.extend(f"{pad}{INDENT}{_conn(c)}" for c in item.conns)
        out.append(pad + "}")
    else:
        _automaton(item, depth, out)


def _automaton(a: Automaton, depth: int, out: list[str]) -> None:
    pad = INDENT * depth
    out.append(f"{pad}automaton {a.name} {{")
    for s in a.states:
        head = ("initial " if s.initial else "") + f"state {s.name}"
        body = format_action(s.action)
        if isinstance(s.action, Nop):
            out.append(f"{pad}{INDENT}{head} {{ }}")
        else:
            out.append(f"{pad}{INDENT}{head} {{ do {{ {body} }} }}")
    for t in a.transitions:
        arrow = "->>" if t.delayed else "->"
        out.append(f"{pad}{INDENT}{t.source} {arrow} {t.target} on {t.guard}")
    out.append(pad + "}")


def pretty_print(m: Model) -> str:
    out: list[str] = []
    for i, b in enumerate(m.blocks):
        if i:
            out.append("||")
        _item(b, 0, out)
    return "\n".join(out) + "\n"
