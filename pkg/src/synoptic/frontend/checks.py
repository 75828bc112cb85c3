"""Structural validation and symbol inference."""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    Assign,
    Automaton,
    Block,
    Dataflow,
    DelayConn,
    Emit,
    If,
    Model,
    OpConn,
    Span,
    Symbol,
    is_name,
    walk_items,
    walk_stmt,
)

TOP_TRIGGER = "trigger"
TOP_RESET = "reset"


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str
    span: Span | None = None

    def __str__(self) -> str:
        where = f"{self.span}: " if self.span else ""
        return f"{where}error[{self.code}]: {self.message}"


def _literal_kind(v) -> str:
    return "bool" if isinstance(v, bool) else "int"


def block_paths(m: Model) -> list[str]:
    return [".".join(path + (item.name,)) for path, item in walk_items(m.blocks) if isinstance(item, Block)]


def assigned_variables(m: Model) -> set[str]:
    """Variables written by some action."""
    out = set()
    for _, item in walk_items(m.blocks):
        if isinstance(item, Automaton):
            for st in item.states:
                out.update(s.target for s in walk_stmt(st.action) if isinstance(s, Assign))
    return out


def emitted_signals(m: Model) -> set[str]:
    out = set()
    for _, item in walk_items(m.blocks):
        if isinstance(item, Automaton):
            for st in item.states:
                out.update(s.signal for s in walk_stmt(st.action) if isinstance(s, Emit))
    return out


def connection_targets(m: Model) -> set[str]:
    return {c.dst for _, item in walk_items(m.blocks) if isinstance(item, Dataflow) for c in item.conns}


class _Kinds:
    def __init__(self):
        self.kinds: dict[str, str] = {}
        self.same: list[tuple[str, str, Span | None]] = []
        self.problems: list[Diagnostic] = []
        self.weak: dict[str, str] = {}

    def fix(self, name, kind: str, span) -> None:
        if not is_name(name):
            if _literal_kind(name) != kind:
                self.problems.append(Diagnostic("KindMismatch", f"literal {name!r} used as {kind}", span))
            return
        old = self.kinds.get(name)
        if old is None:
            self.kinds[name] = kind
        elif old != kind:
            self.problems.append(Diagnostic("KindMismatch", f"{name!r} used both as {old} and as {kind}", span))

    def unify(self, a, b, span) -> None:
        if is_name(a) and is_name(b):
            self.same.append((a, b, span))
        elif is_name(a):
            self.fix(a, _literal_kind(b), span)
        elif is_name(b):
            self.fix(b, _literal_kind(a), span)

    def operation(self, left, op: str, right, dst: str, span) -> None:
        if op in ("+", "-", "*"):
            for x in (left, right, dst):
                self.fix(x, "int", span)
            return
        self.fix(dst, "bool", span)
        if op in ("<", "<="):
            self.fix(left, "int", span)
            self.fix(right, "int", span)
        elif op in ("and", "or"):
            self.fix(left, "bool", span)
            self.fix(right, "bool", span)
        else:
            self.unify(left, right, span)

    def solve(self) -> dict[str, str]:
        changed = True
        while changed:
            changed = False
            for a, b, span in self.same:
                ka, kb = self.kinds.get(a), self.kinds.get(b)
                if ka and not kb:
                    self.kinds[b] = ka
                    changed = True
                elif kb and not ka:
                    self.kinds[a] = kb
                    changed = True
        for a, b, span in self.same:
            ka, kb = self.kinds.get(a), self.kinds.get(b)
            if ka and kb and ka != kb:
                self.problems.append(Diagnostic("KindMismatch", f"{a!r} ({ka}) compared with {b!r} ({kb})", span))
        return self.kinds


def _infer(m: Model):
    k = _Kinds()
    defined: set[str] = set()
    read: set[str] = set()
    for name in (TOP_TRIGGER, TOP_RESET):
        k.fix(name, "event", m.span)
    for path in block_paths(m):
        for suffix in ("trigger", "reset"):
            k.fix(f"{path}.{suffix}", "event", None)
            defined.add(f"{path}.{suffix}")
    for _, item in walk_items(m.blocks):
        if isinstance(item, Dataflow):
            for c in item.conns:
                defined.add(c.dst)
                if isinstance(c, DelayConn):
                    read.add(c.src)
                    k.fix(c.dst, _literal_kind(c.init), c.span)
                    k.fix(c.src, _literal_kind(c.init), c.span)
                elif isinstance(c, OpConn):
                    read.update(x for x in (c.left, c.right) if is_name(x))
                    k.operation(c.left, c.op, c.right, c.dst, c.span)
                else:
                    read.add(c.src)
                    k.fix(c.dst, "event", c.span)
                    k.weak.setdefault(c.src, "event")
        elif isinstance(item, Automaton):
            for st in item.states:
                for s in walk_stmt(st.action):
                    if isinstance(s, Assign):
                        defined.add(s.target)
                        read.update(x for x in (s.left, s.right) if is_name(x))
                        k.operation(s.left, s.op, s.right, s.target, s.span)
                    elif isinstance(s, Emit):
                        defined.add(s.signal)
                        k.fix(s.signal, "event", s.span)
                    elif isinstance(s, If):
                        read.add(s.cond)
                        k.fix(s.cond, "bool", s.span)
            for t in item.transitions:
                read.add(t.guard)
                k.fix(t.guard, "bool", t.span)
    kinds = k.solve()
    symbols = {}
    for name in sorted(defined | read | {TOP_TRIGGER, TOP_RESET}):
        kind = kinds.get(name) or k.weak.get(name, "int")
        role = "output" if name in defined else "input"
        symbols[name] = Symbol(name, kind, role)
    return symbols, k.problems


def infer_symbols(m: Model) -> dict[str, Symbol]:
    return _infer(m)[0]


def _check_unique(items, what: str, out: list[Diagnostic]) -> None:
    seen: set[str] = set()
    for item in items:
        if item.name in seen:
            out.append(Diagnostic("DuplicateName", f"duplicate {what} name {item.name!r}", item.span))
        seen.add(item.name)


def _check_automaton(a: Automaton, defined: set[str], out: list[Diagnostic]) -> None:
    from ..trans.regions import CyclicRegion, compute_regions

    _check_unique(a.states, "state", out)
    initial = [s for s in a.states if s.initial]
    if not initial:
        out.append(Diagnostic("MissingInitial", f"automaton {a.name!r} has no initial state", a.span))
    for extra in initial[1:]:
        out.append(
            Diagnostic("MultipleInitial", f"automaton {a.name!r} declares a second initial state {extra.name!r}", extra.span)
        )
    known = {s.name for s in a.states}
    endpoints_ok = True
    for t in a.transitions:
        for end in (t.source, t.target):
            if end not in known:
                endpoints_ok = False
                out.append(Diagnostic("UnknownState", f"transition refers to undeclared state {end!r}", t.span))
        if t.guard not in defined:
            out.append(
                Diagnostic(
                    "UnresolvedName",
                    f"guard {t.guard!r} is neither assigned by an action nor defined by a connection",
                    t.span,
                )
            )
    if endpoints_ok:
        try:
            compute_regions(a)
        except CyclicRegion as err:
            out.append(Diagnostic("CyclicRegion", str(err), err.span))


def validate(m: Model) -> list[Diagnostic]:
    """All structural problems of ``m``; empty when the model can be translated."""
    out: list[Diagnostic] = []
    _check_unique(m.blocks, "block", out)
    defined = assigned_variables(m) | connection_targets(m)
    dst_seen: dict[str, Span | None] = {}
    for _, item in walk_items(m.blocks):
        if isinstance(item, Block):
            _check_unique(item.body, "member", out)
        elif isinstance(item, Dataflow):
            for c in item.conns:
                if c.dst in dst_seen:
                    out.append(
                        Diagnostic("DuplicateDefinition", f"signal {c.dst!r} is defined by two connections", c.span)
                    )
                dst_seen[c.dst] = c.span
        else:
            _check_automaton(item, defined, out)
    out.extend(_infer(m)[1])
    return out
