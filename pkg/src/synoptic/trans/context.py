"""Per-compilation translation state.

Variables written by actions are stored through ``def`` and read back
through a memory cell ``x%pre`` holding the last stored value.  The cell is
clocked by the top trigger so a read never waits for ``x`` itself to tick.
Internal signal names carry a ``%`` that user identifiers cannot contain.
"""

from __future__ import annotations

from ..core import (
    Default,
    DelayEq,
    FunEq,
    NameSupply,
    Ref,
    Restrict,
    SyncEq,
    compose,
    rename,
    zero_of,
)
from ..frontend.checks import TOP_TRIGGER, assigned_variables, connection_targets
from ..frontend.syntax import Automaton, Block, Model, State, Stmt


def memory_name(x: str) -> str:
    return f"{x}%pre"


class Context:
    def __init__(self, model: Model | None = None, *, memory_clock: str = TOP_TRIGGER,
                 supply: NameSupply | None = None):
        self.supply = supply or NameSupply()
        self.memory_clock = memory_clock
        self.kinds: dict[str, str] = {}
        self.memorized: set[str] = set()
        self.conn_targets: set[str] = set()
        if model is not None:
            self.kinds = {n: s.kind for n, s in model.symbols.items()}
            self.memorized = assigned_variables(model)
            self.conn_targets = connection_targets(model)
        self.used_memory: set[str] = set()
        #: internal signal name -> fresh name it was restricted to
        self.probes: dict[str, str] = {}

    @classmethod
    def for_model(cls, model: Model, **kw) -> "Context":
        return cls(model, **kw)

    @classmethod
    def for_action(cls, action: Stmt, **kw) -> "Context":
        wrapper = Model((Block("_", (Automaton("_", (State("_", action, True),)),)),))
        return cls(wrapper, **kw)

    @classmethod
    def for_automaton(cls, a: Automaton, **kw) -> "Context":
        return cls(Model((Block("_", (a,)),)), **kw)

    def is_memorized(self, x: str) -> bool:
        return x in self.memorized

    def memory(self, x: str) -> str:
        self.used_memory.add(x)
        return memory_name(x)

    def restrict(self, p, names):
        """Hide ``names`` in ``p`` under fresh names, renaming in a single pass."""
        mapping = {name: self.supply.fresh(name) for name in names}
        p = rename(p, mapping)
        for name in names:
            p = Restrict(p, mapping[name])
        self.probes.update(mapping)
        return p

    def memory_cells(self, clock: str | None = None):
        clock = clock or self.memory_clock
        parts, hidden = [], []
        for x in sorted(self.used_memory):
            mem, pre = f"{x}%mem", memory_name(x)
            parts += [
                FunEq(mem, Default(Ref(x), Ref(pre))),
                DelayEq(pre, mem, zero_of(self.kinds.get(x, "int"))),
                SyncEq(mem, clock),
            ]
            hidden += [mem, pre]
        return parts, hidden

    def finish(self, p, clock: str | None = None):
        """Close ``p`` with the memory cells it reads, hiding them."""
        parts, hidden = self.memory_cells(clock)
        if not parts:
            return p
        return self.restrict(compose(p, *parts), hidden)
