"""Expressions, equations and process terms of the polychronous kernel.

A process is an equation, a composition of processes, or a restriction
``P / x`` hiding ``x``.  Restriction alpha-renames its bound signal to a
fresh name when built through :func:`restrict`, so composing processes
never captures a name.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .values import EVENT, format_value

ARITH_OPS = ("+", "-", "*")
COMPARE_OPS = ("=", "!=", "<", "<=")
LOGIC_OPS = ("and", "or")
OPERATORS = ARITH_OPS + COMPARE_OPS + LOGIC_OPS


# -- expressions -------------------------------------------------------------


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Const:
    value: object


@dataclass(frozen=True)
class Apply:
    op: str
    left: "Expr"
    right: "Expr"

    def __post_init__(self):
        if self.op not in OPERATORS:
            raise ValueError(f"unknown operator {self.op!r}")


@dataclass(frozen=True)
class Not:
    arg: "Expr"


@dataclass(frozen=True)
class When:
    """``data when cond``: ``data`` sampled where ``cond`` is present and true."""

    data: "Expr"
    cond: "Expr"


@dataclass(frozen=True)
class Default:
    """``left default right``: ``left`` where present, ``right`` otherwise."""

    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class EventOf:
    """``when e``: an event wherever ``e`` is present and not ``false``."""

    arg: "Expr"


@dataclass(frozen=True)
class BoolOf:
    """``?e``: converts an event to ``true``; booleans pass through."""

    arg: "Expr"


Expr = Union[Ref, Const, Apply, Not, When, Default, EventOf, BoolOf]

#: A guard that is never present (the constant ``0`` guard of a finished action).
NEVER = When(Const(EVENT), Const(False))


# -- equations and processes -------------------------------------------------


@dataclass(frozen=True)
class FunEq:
    target: str
    expr: Expr


@dataclass(frozen=True)
class DelayEq:
    """``target := source $ init init``."""

    target: str
    source: str
    init: object


@dataclass(frozen=True)
class SyncEq:
    """``left ^= right``: both signals share one clock."""

    left: str
    right: str


@dataclass(frozen=True)
class Compose:
    parts: tuple = ()


@dataclass(frozen=True)
class Restrict:
    body: "Process"
    name: str


Equation = Union[FunEq, DelayEq, SyncEq]
Process = Union[FunEq, DelayEq, SyncEq, Compose, Restrict]

EMPTY = Compose(())


def compose(*procs: Process) -> Process:
    """Parallel composition, dropping empty operands."""
    parts = tuple(p for p in procs if p != EMPTY)
    if len(parts) == 1:
        return parts[0]
    return Compose(parts)


def compose_all(procs: Iterable[Process]) -> Process:
    return compose(*procs)


class NameSupply:
    """Source of fresh signal names; one per compilation keeps dumps stable."""

    def __init__(self):
        self._counter = itertools.count(1)

    def fresh(self, base: str) -> str:
        return f"{base.split('~')[0]}~{next(self._counter)}"


_global_supply = NameSupply()


def restrict(body: Process, name: str, supply: NameSupply | None = None) -> Restrict:
    fresh = (supply or _global_supply).fresh(name)
    return Restrict(rename(body, {name: fresh}), fresh)


def restrict_all(body: Process, names: Iterable[str], supply: NameSupply | None = None) -> Process:
    for name in names:
        body = restrict(body, name, supply)
    return body


# -- traversal ---------------------------------------------------------------


def expr_refs(e: Expr) -> Iterator[str]:
    if isinstance(e, Ref):
        yield e.name
    elif isinstance(e, Const):
        return
    elif isinstance(e, (Apply, Default)):
        yield from expr_refs(e.left)
        yield from expr_refs(e.right)
    elif isinstance(e, When):
        yield from expr_refs(e.data)
        yield from expr_refs(e.cond)
    else:
        yield from expr_refs(e.arg)


def equation_signals(eq: Equation) -> Iterator[str]:
    if isinstance(eq, FunEq):
        yield eq.target
        yield from expr_refs(eq.expr)
    elif isinstance(eq, DelayEq):
        yield eq.target
        yield eq.source
    else:
        yield eq.left
        yield eq.right


def free_signals(p: Process) -> set[str]:
    if isinstance(p, Compose):
        out: set[str] = set()
        for part in p.parts:
            out |= free_signals(part)
        return out
    if isinstance(p, Restrict):
        return free_signals(p.body) - {p.name}
    return set(equation_signals(p))


def equations(p: Process) -> Iterator[Equation]:
    """Pre-order listing of the equations of ``p``."""
    if isinstance(p, Compose):
        for part in p.parts:
            yield from equations(part)
    elif isinstance(p, Restrict):
        yield from equations(p.body)
    else:
        yield p


def bound_signals(p: Process) -> set[str]:
    if isinstance(p, Compose):
        out: set[str] = set()
        for part in p.parts:
            out |= bound_signals(part)
        return out
    if isinstance(p, Restrict):
        return bound_signals(p.body) | {p.name}
    return set()


def rename_expr(e: Expr, mapping: dict[str, str]) -> Expr:
    if isinstance(e, Ref):
        return Ref(mapping.get(e.name, e.name))
    if isinstance(e, Const):
        return e
    if isinstance(e, Apply):
        return Apply(e.op, rename_expr(e.left, mapping), rename_expr(e.right, mapping))
    if isinstance(e, Default):
        return Default(rename_expr(e.left, mapping), rename_expr(e.right, mapping))
    if isinstance(e, When):
        return When(rename_expr(e.data, mapping), rename_expr(e.cond, mapping))
    return type(e)(rename_expr(e.arg, mapping))


def rename(p: Process, mapping: dict[str, str]) -> Process:
    if not mapping:
        return p
    if isinstance(p, Compose):
        return Compose(tuple(rename(q, mapping) for q in p.parts))
    if isinstance(p, Restrict):
        inner = {k: v for k, v in mapping.items() if k != p.name}
        return Restrict(rename(p.body, inner), p.name)
    if isinstance(p, FunEq):
        return FunEq(mapping.get(p.target, p.target), rename_expr(p.expr, mapping))
    if isinstance(p, DelayEq):
        return DelayEq(mapping.get(p.target, p.target), mapping.get(p.source, p.source), p.init)
    return SyncEq(mapping.get(p.left, p.left), mapping.get(p.right, p.right))


def shuffle(p: Process, rng: random.Random) -> Process:
    """Randomly reorder and re-associate every composition in ``p``."""
    if isinstance(p, Restrict):
        return Restrict(shuffle(p.body, rng), p.name)
    if not isinstance(p, Compose):
        return p
    parts = []
    for part in p.parts:
        part = shuffle(part, rng)
        if isinstance(part, Compose):
            parts.extend(part.parts)
        else:
            parts.append(part)
    rng.shuffle(parts)
    while len(parts) > 2 and rng.random() < 0.5:
        i = rng.randrange(len(parts) - 1)
        parts[i : i + 2] = [Compose(tuple(parts[i : i + 2]))]
    return Compose(tuple(parts))


# -- text dump ---------------------------------------------------------------


def format_expr(e: Expr, top: bool = True) -> str:
    if isinstance(e, Ref):
        return e.name
    if isinstance(e, Const):
        return format_value(e.value)
    if isinstance(e, Apply):
        text = f"{format_expr(e.left, False)} {e.op} {format_expr(e.right, False)}"
    elif isinstance(e, When):
        text = f"{format_expr(e.data, False)} when {format_expr(e.cond, False)}"
    elif isinstance(e, Default):
        text = f"{format_expr(e.left, False)} default {format_expr(e.right, False)}"
    elif isinstance(e, Not):
        text = f"not {format_expr(e.arg, False)}"
    elif isinstance(e, EventOf):
        text = f"when {format_expr(e.arg, False)}"
    else:
        text = f"?{format_expr(e.arg, False)}"
    return text if top else f"({text})"


def format_equation(eq: Equation) -> str:
    if isinstance(eq, FunEq):
        return f"{eq.target} := {format_expr(eq.expr)}"
    if isinstance(eq, DelayEq):
        return f"{eq.target} := {eq.source} $ init {format_value(eq.init)}"
    return f"{eq.left} ^= {eq.right}"


def dump(p: Process, indent: str = "  ") -> str:
    """One equation per line in pre-order; restrictions print as ``( ... ) / x``.

    Directly nested restrictions share one pair of parentheses:
    ``( ... ) / x / y``, innermost name first.
    """
    lines: list[str] = []

    def walk(q: Process, depth: int) -> None:
        pad = indent * depth
        if isinstance(q, Compose):
            for part in q.parts:
                walk(part, depth)
        elif isinstance(q, Restrict):
            names = []
            while isinstance(q, Restrict):
                names.append(q.name)
                q = q.body
            lines.append(pad + "(")
            walk(q, depth + 1)
            lines.append(f"{pad}) / " + " / ".join(reversed(names)))
        else:
            lines.append(pad + format_equation(q))

    walk(p, 0)
    return "\n".join(lines) + ("\n" if lines else "")
