"""Direct sequential interpreters used as test oracles.

They walk the surface syntax with a mutable store and never touch the
kernel, so agreement with the translated processes is meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from synoptic.frontend.syntax import Assign, Emit, End, If, Nop, Seq, Skip, is_name

OPS = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "and": lambda a, b: a and b,
    "or": lambda a, b: a or b,
}


def skips_in(a) -> int:
    if isinstance(a, Skip):
        return 1
    if isinstance(a, Seq):
        return skips_in(a.first) + skips_in(a.rest)
    if isinstance(a, If):
        return skips_in(a.then) + skips_in(a.orelse)
    return 0


class _Pause(Exception):
    def __init__(self, label: int):
        self.label = label


@dataclass
class ActionRun:
    store: dict
    inputs: dict = field(default_factory=dict)
    written: set = field(default_factory=set)
    emitted: set = field(default_factory=set)

    def value(self, o):
        if not is_name(o):
            return o
        if o in self.store:
            return self.store[o]
        return self.inputs[o]

    def execute(self, a, resume: int = 0):
        """Run ``a`` from just after its skip number ``resume``; returns the pause label or 0."""
        try:
            self._walk(a, 1, resume)
        except _Pause as p:
            return p.label
        return 0

    def _walk(self, a, base: int, resume: int) -> None:
        # ``base`` numbers the first skip inside ``a``; resume > 0 fast-forwards to that skip
        if resume:
            count = skips_in(a)
            if not base <= resume < base + count:
                return
            if isinstance(a, Skip):
                return
            if isinstance(a, Seq):
                first = skips_in(a.first)
                if resume < base + first:
                    self._walk(a.first, base, resume)
                    self._walk(a.rest, base + first, 0)
                else:
                    self._walk(a.rest, base + first, resume)
                return
            assert isinstance(a, If)
            n_then = skips_in(a.then)
            if resume < base + n_then:
                self._walk(a.then, base, resume)
            else:
                self._walk(a.orelse, base + n_then, resume)
            return
        if isinstance(a, (Nop, End)):
            return
        if isinstance(a, Skip):
            raise _Pause(base)
        if isinstance(a, Emit):
            self.emitted.add(a.signal)
        elif isinstance(a, Assign):
            self.store[a.target] = OPS[a.op](self.value(a.left), self.value(a.right))
            self.written.add(a.target)
        elif isinstance(a, Seq):
            self._walk(a.first, base, 0)
            self._walk(a.rest, base + skips_in(a.first), 0)
        elif isinstance(a, If):
            if self.value(a.cond):
                self._walk(a.then, base, 0)
            else:
                self._walk(a.orelse, base + skips_in(a.then), 0)
        else:
            raise TypeError(a)


def run_straight_line(action, traces_inputs, zeros):
    """Per instant: store after running ``action`` once from its start."""
    store = dict(zeros)
    out = []
    for inputs in traces_inputs:
        run = ActionRun(store, inputs)
        assert run.execute(action) == 0
        out.append((dict(store), set(run.written)))
    return out


class AutomatonOracle:
    """Reference semantics of one mode automaton driven once per trigger."""

    def __init__(self, automaton, zeros: dict):
        self.a = automaton
        self.states = [s.name for s in automaton.ordered_states()]
        self.index = {n: i for i, n in enumerate(self.states)}
        self.actions = {s.name: s.action for s in automaton.states}
        self.store = dict(zeros)
        self.current = self.states[0]
        self.labels = dict.fromkeys(self.states, 0)

    def react(self, inputs: dict, reset: bool):
        if reset:
            self.current = self.states[0]
            self.labels = dict.fromkeys(self.states, 0)
        start = self.current
        run = ActionRun(self.store, inputs)
        name = start
        visited = [name]
        while True:
            paused = run.execute(self.actions[name], self.labels[name])
            self.labels[name] = paused
            if paused:
                nxt = name
                break
            moved = next((t.target for t in self.a.transitions
                          if t.source == name and not t.delayed and run.value(t.guard)), None)
            if moved is None:
                nxt = next((t.target for t in self.a.transitions
                            if t.source == name and t.delayed and run.value(t.guard)), name)
                break
            name = moved
            visited.append(name)
        self.current = nxt
        return {
            "state": self.index[start],
            "next": self.index[nxt],
            "visited": visited,
            "store": dict(self.store),
            "written": set(run.written),
            "emitted": set(run.emitted),
        }
