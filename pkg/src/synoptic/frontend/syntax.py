"""Abstract syntax of Synoptic models.

Every node carries a ``span``; spans are excluded from equality so that
structurally identical trees compare equal wherever they came from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Union


@dataclass(frozen=True, order=True)
class Span:
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.line}:{self.col}"


def _span():
    return field(default=None, compare=False, repr=False)


# An operand is a signal name or an int/bool literal.
Operand = Union[str, int, bool]


def is_name(operand: Operand) -> bool:
    return isinstance(operand, str)


# -- actions -----------------------------------------------------------------


@dataclass(frozen=True)
class Nop:
    """The empty action."""

    span: Span | None = _span()


@dataclass(frozen=True)
class Skip:
    span: Span | None = _span()


@dataclass(frozen=True)
class End:
    """Synthetic terminator appended by the translation of ``do``."""

    span: Span | None = _span()


@dataclass(frozen=True)
class Emit:
    signal: str
    span: Span | None = _span()


@dataclass(frozen=True)
class Assign:
    target: str
    left: Operand
    op: str
    right: Operand
    span: Span | None = _span()


@dataclass(frozen=True)
class If:
    cond: str
    then: "Stmt"
    orelse: "Stmt" = Nop()
    span: Span | None = _span()


@dataclass(frozen=True)
class Seq:
    first: "Stmt"
    rest: "Stmt"
    span: Span | None = _span()


Stmt = Union[Nop, Skip, End, Emit, Assign, If, Seq]


def seq(*stmts: Stmt) -> Stmt:
    """Right-associated sequence; the empty sequence is ``Nop``."""
    if not stmts:
        return Nop()
    out = stmts[-1]
    for s in reversed(stmts[:-1]):
        out = Seq(s, out, span=s.span)
    return out


def spine(s: Stmt) -> list[Stmt]:
    """The statements of a sequence, left to right, without ``Seq`` nodes."""
    out, stack = [], [s]
    while stack:
        s = stack.pop()
        if isinstance(s, Seq):
            stack += [s.rest, s.first]
        else:
            out.append(s)
    return out


def walk_stmt(s: Stmt) -> Iterator[Stmt]:
    """Every node of ``s`` in pre-order."""
    stack = [s]
    while stack:
        s = stack.pop()
        yield s
        if isinstance(s, Seq):
            stack += [s.rest, s.first]
        elif isinstance(s, If):
            stack += [s.orelse, s.then]


# -- dataflow ----------------------------------------------------------------


@dataclass(frozen=True)
class DelayConn:
    """``data src $ init value -> dst``."""

    src: str
    init: int | bool
    dst: str
    span: Span | None = _span()


@dataclass(frozen=True)
class OpConn:
    """``data left op right -> dst``."""

    left: Operand
    op: str
    right: Operand
    dst: str
    span: Span | None = _span()


@dataclass(frozen=True)
class EventConn:
    """``event src -> dst``."""

    src: str
    dst: str
    span: Span | None = _span()


Conn = Union[DelayConn, OpConn, EventConn]


def conn_reads(c: Conn) -> list[str]:
    if isinstance(c, OpConn):
        return [o for o in (c.left, c.right) if is_name(o)]
    return [c.src]


@dataclass(frozen=True)
class Dataflow:
    name: str
    conns: tuple[Conn, ...] = ()
    span: Span | None = _span()


# -- automata ----------------------------------------------------------------


@dataclass(frozen=True)
class State:
    name: str
    action: Stmt = Nop()
    initial: bool = False
    span: Span | None = _span()


@dataclass(frozen=True)
class Transition:
    """``source -> target on guard`` (immediate) or ``source ->> target on guard``."""

    source: str
    target: str
    guard: str
    delayed: bool = False
    span: Span | None = _span()


@dataclass(frozen=True)
class Automaton:
    name: str
    states: tuple[State, ...] = ()
    transitions: tuple[Transition, ...] = ()
    span: Span | None = _span()

    @property
    def immediate(self) -> list[Transition]:
        return [t for t in self.transitions if not t.delayed]

    @property
    def delayed(self) -> list[Transition]:
        return [t for t in self.transitions if t.delayed]

    def ordered_states(self) -> list[State]:
        """States with the initial one first, the rest in declaration order."""
        initial = [s for s in self.states if s.initial][:1]
        return initial + [s for s in self.states if s not in initial]


# -- blocks ------------------------------------------------------------------


@dataclass(frozen=True)
class Block:
    name: str
    body: tuple[Union["Block", Dataflow, Automaton], ...] = ()
    span: Span | None = _span()


Item = Union[Block, Dataflow, Automaton]


@dataclass(frozen=True)
class Symbol:
    name: str
    kind: str
    role: str  # "input" or "output"


@dataclass(frozen=True)
class Model:
    blocks: tuple[Block, ...] = ()
    span: Span | None = _span()

    @cached_property
    def symbols(self) -> dict[str, Symbol]:
        from .checks import infer_symbols

        return infer_symbols(self)


def walk_items(items, path: tuple[str, ...] = ()) -> Iterator[tuple[tuple[str, ...], Item]]:
    """Yield ``(path, item)`` for every block, dataflow and automaton."""
    for item in items:
        yield path, item
        if isinstance(item, Block):
            yield from walk_items(item.body, path + (item.name,))


def automata(model: Model) -> Iterator[Automaton]:
    for _, item in walk_items(model.blocks):
        if isinstance(item, Automaton):
            yield item


def dataflows(model: Model) -> Iterator[Dataflow]:
    for _, item in walk_items(model.blocks):
        if isinstance(item, Dataflow):
            yield item
