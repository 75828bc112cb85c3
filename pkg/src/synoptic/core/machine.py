"""Instant-by-instant execution of a kernel process.

Each instant is solved by a constructive fixpoint.  Every signal starts
``UNKNOWN`` (inputs excepted) and is refined monotonically to ``ABSENT``,
``PRESENT`` (clock known, value pending) or a value, by its defining
equations and by the clock constraints (``^=`` and delays) it takes part
in.  A signal left undecided at the fixpoint is a causality error.  Delay
cells latch after the fixpoint, so a delay never feeds its own instant.
"""

from __future__ import annotations

from collections import OrderedDict, defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .process import (
    Apply,
    BoolOf,
    Const,
    Default,
    DelayEq,
    EventOf,
    FunEq,
    Not,
    Process,
    Ref,
    When,
    bound_signals,
    equation_signals,
    equations,
    expr_refs,
    format_equation,
    free_signals,
)
from .values import ABSENT, EVENT, INT_MAX, INT_MIN, PRESENT, UNKNOWN, format_value, is_value, kind_of, same_value

Reaction = dict
DelayState = dict


class SimulationError(Exception):
    """Base class of run-time errors; ``instant`` is set once known."""

    kind = "error"

    def __init__(self, message: str, signals: Iterable[str] = (), instant: int | None = None):
        self.detail = message
        self.signals = tuple(signals)
        self.instant = instant
        super().__init__(self._text())

    def _text(self) -> str:
        if self.instant is None:
            return self.detail
        return f"instant {self.instant}: {self.detail}"

    def at(self, instant: int) -> "SimulationError":
        self.instant = instant
        self.args = (self._text(),)
        return self


class CausalityError(SimulationError):
    kind = "causality"


class ClockError(SimulationError):
    kind = "clock"


class ConflictError(SimulationError):
    kind = "conflict"


class EvalError(SimulationError):
    kind = "eval"


def _truth(v) -> bool:
    if v is EVENT or v is True:
        return True
    if v is False:
        return False
    raise EvalError(f"expected a boolean or event, got {format_value(v)}")


def apply_op(op: str, a, b):
    if op in ("+", "-", "*", "<", "<="):
        if type(a) is not int or type(b) is not int:
            raise EvalError(f"operator {op!r} expects integers, got {format_value(a)} and {format_value(b)}")
        if op == "<":
            return a < b
        if op == "<=":
            return a <= b
        r = a + b if op == "+" else a - b if op == "-" else a * b
        if not INT_MIN <= r <= INT_MAX:
            raise EvalError(f"integer overflow in {a} {op} {b}")
        return r
    if op in ("=", "!="):
        if kind_of(a) != kind_of(b):
            raise EvalError(f"operator {op!r} compares {kind_of(a)} with {kind_of(b)}")
        return (a == b) == (op == "=")
    if type(a) is not bool or type(b) is not bool:
        raise EvalError(f"operator {op!r} expects booleans, got {format_value(a)} and {format_value(b)}")
    return (a and b) if op == "and" else (a or b)


def _lift(st, fn):
    if st is ABSENT or st is UNKNOWN or st is PRESENT:
        return st
    return fn(st)


def _not(v):
    if type(v) is not bool:
        raise EvalError(f"'not' expects a boolean, got {format_value(v)}")
    return not v


def _bool_of(v):
    if v is EVENT:
        return True
    if type(v) is bool:
        return v
    raise EvalError(f"'?' expects an event or boolean, got {format_value(v)}")


def evaluate(e, st: Mapping[str, object], strict: bool = False):
    """Three-valued evaluation; returns ``(status, clockless)``.

    Constants have no clock of their own and adapt to the operand they are
    combined with.  With ``strict`` the synchronous operands of an operator
    must agree on presence.
    """
    t = type(e)
    if t is Ref:
        return st[e.name], False
    if t is Const:
        return e.value, True
    if t is Apply:
        a, sa = evaluate(e.left, st, strict)
        b, sb = evaluate(e.right, st, strict)
        op = e.op
        if sa and sb:
            return apply_op(op, a, b), True
        if sa:
            return _lift(b, lambda v: apply_op(op, a, v)), False
        if sb:
            return _lift(a, lambda v: apply_op(op, v, b)), False
        if a is ABSENT or b is ABSENT:
            if strict and a is not b:
                raise ClockError(f"operands of {op!r} have mismatched presence")
            return ABSENT, False
        if a is UNKNOWN or b is UNKNOWN:
            return (UNKNOWN if a is b else PRESENT), False
        if a is PRESENT or b is PRESENT:
            return PRESENT, False
        return apply_op(op, a, b), False
    if t is When:
        c, cs = evaluate(e.cond, st, strict)
        if cs:
            return evaluate(e.data, st, strict) if _truth(c) else (ABSENT, False)
        if c is ABSENT:
            return ABSENT, False
        d, ds = evaluate(e.data, st, strict)
        if c is UNKNOWN or c is PRESENT:
            return (ABSENT if (d is ABSENT and not ds) else UNKNOWN), False
        if not _truth(c):
            return ABSENT, False
        return d, False
    if t is Default:
        a, sa = evaluate(e.left, st, strict)
        if sa:
            return a, True
        if a is ABSENT:
            return evaluate(e.right, st, strict)
        if a is UNKNOWN:
            b, sb = evaluate(e.right, st, strict)
            if sb or (b is not UNKNOWN and b is not ABSENT):
                return PRESENT, False
            return UNKNOWN, False
        return a, False
    if t is Not:
        a, sa = evaluate(e.arg, st, strict)
        return _lift(a, _not), sa
    if t is EventOf:
        a, sa = evaluate(e.arg, st, strict)
        if a is ABSENT:
            return ABSENT, False
        if a is UNKNOWN or a is PRESENT:
            return UNKNOWN, False
        if a is False:
            return ABSENT, False
        return EVENT, sa
    if t is BoolOf:
        a, sa = evaluate(e.arg, st, strict)
        return _lift(a, _bool_of), sa
    raise TypeError(f"not an expression: {e!r}")


def _refine(name: str, cur, info):
    if info is UNKNOWN or info is cur:
        return cur
    if cur is UNKNOWN:
        return info
    if cur is ABSENT or info is ABSENT:
        raise ClockError(f"signal {name} is required both present and absent", [name])
    if info is PRESENT:
        return cur
    if cur is PRESENT or same_value(cur, info):
        return info
    raise ConflictError(
        f"signal {name} receives conflicting values {format_value(cur)} and {format_value(info)}", [name]
    )


def _changed(old, new) -> bool:
    if old is new:
        return False
    return not (is_value(old) and is_value(new) and same_value(old, new))


@dataclass
class Instant:
    """Outcome of one reaction."""

    reaction: dict
    state: dict
    signals: dict = field(repr=False)
    definitions: dict = field(repr=False)


class Machine:
    """A process prepared for repeated execution."""

    def __init__(self, process: Process):
        self.process = process
        self.equations = list(equations(process))
        self.hidden = frozenset(bound_signals(process))
        self.observable = frozenset(free_signals(process))
        names: set[str] = set()
        self.defs: dict[str, list] = defaultdict(list)
        self.partners: dict[str, list[str]] = defaultdict(list)
        depends: dict[str, set[str]] = defaultdict(set)
        for eq in self.equations:
            names.update(equation_signals(eq))
            if isinstance(eq, FunEq):
                self.defs[eq.target].append(eq)
                depends[eq.target].update(expr_refs(eq.expr))
            elif isinstance(eq, DelayEq):
                self.defs[eq.target].append(eq)
                self._link(eq.target, eq.source, depends)
            else:
                self._link(eq.left, eq.right, depends)
        self.signals = sorted(names)
        self.inputs = frozenset(n for n in self.observable if n not in self.defs)
        self.outputs = frozenset(self.observable - self.inputs)
        self.delays = [eq for eq in self.equations if isinstance(eq, DelayEq)]
        self.dependents: dict[str, list[str]] = defaultdict(list)
        for target, srcs in depends.items():
            for src in srcs:
                self.dependents[src].append(target)
        self._solved = [n for n in self.signals if n not in self.inputs]

    def _link(self, a: str, b: str, depends) -> None:
        self.partners[a].append(b)
        self.partners[b].append(a)
        depends[a].add(b)
        depends[b].add(a)

    def initial_state(self) -> DelayState:
        return {eq: eq.init for eq in self.delays}

    def _resolve(self, name: str, st: dict, state: Mapping):
        cur = st[name]
        defs = self.defs.get(name)
        if defs:
            info, all_absent = UNKNOWN, True
            for d in defs:
                if type(d) is FunEq:
                    v, _ = evaluate(d.expr, st)
                else:
                    src = st[d.source]
                    if src is ABSENT or src is UNKNOWN:
                        v = src
                    else:
                        v = state.get(d, d.init)
                if v is ABSENT:
                    continue
                all_absent = False
                if v is UNKNOWN:
                    continue
                info = _refine(name, info, v)
            if all_absent:
                info = ABSENT
            cur = _refine(name, cur, info)
        for other in self.partners.get(name, ()):
            o = st[other]
            if o is UNKNOWN:
                continue
            cur = _refine(name, cur, ABSENT if o is ABSENT else PRESENT)
        return cur

    def react(self, state: Mapping, inputs: Mapping[str, object]) -> Instant:
        st = dict.fromkeys(self.signals, UNKNOWN)
        for name, v in inputs.items():
            if name not in self.inputs:
                raise ValueError(f"{name!r} is not an input signal of this process")
            if v is not ABSENT and not is_value(v):
                raise ValueError(f"bad value for {name!r}: {v!r}")
            st[name] = v
        for name in self.inputs:
            if st[name] is UNKNOWN:
                st[name] = ABSENT

        work = deque(self._solved)
        queued = set(work)
        while work:
            name = work.popleft()
            queued.discard(name)
            new = self._resolve(name, st, state)
            if _changed(st[name], new):
                st[name] = new
                for dep in self.dependents.get(name, ()):
                    if dep not in queued and dep not in self.inputs:
                        queued.add(dep)
                        work.append(dep)

        stuck = [n for n in self.signals if st[n] is UNKNOWN or st[n] is PRESENT]
        if stuck:
            shown = ", ".join(stuck[:8]) + (", ..." if len(stuck) > 8 else "")
            raise CausalityError(f"no constructive solution for {shown}", stuck)

        definitions: dict[str, int] = defaultdict(int)
        for eq in self.equations:
            if type(eq) is FunEq:
                v, _ = evaluate(eq.expr, st, strict=True)
                if v is not ABSENT:
                    definitions[eq.target] += 1
            else:
                a, b = (eq.target, eq.source) if type(eq) is DelayEq else (eq.left, eq.right)
                if (st[a] is ABSENT) != (st[b] is ABSENT):
                    raise ClockError(f"clocks differ in '{format_equation(eq)}'", [a, b])
                if type(eq) is DelayEq and st[a] is not ABSENT:
                    definitions[eq.target] += 1

        new_state = dict(state)
        for eq in self.delays:
            src = st[eq.source]
            if src is not ABSENT:
                new_state[eq] = src
        reaction = {n: st[n] for n in sorted(self.observable)}
        return Instant(reaction, new_state, st, dict(definitions))

    def run(self, trace: Iterable[Mapping[str, object]], state: Mapping | None = None) -> list[dict]:
        state = self.initial_state() if state is None else state
        out = []
        for k, inputs in enumerate(trace):
            try:
                inst = self.react(state, inputs)
            except SimulationError as err:
                raise err.at(k)
            out.append(inst.reaction)
            state = inst.state
        return out


_cache: "OrderedDict[int, tuple[Process, Machine]]" = OrderedDict()


def machine_for(p: Process) -> Machine:
    hit = _cache.get(id(p))
    if hit is not None and hit[0] is p:
        _cache.move_to_end(id(p))
        return hit[1]
    m = Machine(p)
    _cache[id(p)] = (p, m)
    if len(_cache) > 64:
        _cache.popitem(last=False)
    return m


def initial_state(p: Process) -> DelayState:
    return machine_for(p).initial_state()


def step(p: Process, state: DelayState | None, inputs: Mapping[str, object]) -> tuple[Reaction, DelayState]:
    """One reaction of ``p``; ``state=None`` starts from the initial delay cells."""
    m = machine_for(p)
    inst = m.react(m.initial_state() if state is None else state, inputs)
    return inst.reaction, inst.state


def run(p: Process, trace: Iterable[Mapping[str, object]]) -> list[Reaction]:
    """Fold :func:`step` over ``trace``; errors carry the failing instant."""
    return machine_for(p).run(trace)
