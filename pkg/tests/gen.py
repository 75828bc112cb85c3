"""Random Synoptic models for property tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

GUARD_INPUTS = ("c0", "c1")


@dataclass
class AutomatonCase:
    source: str
    states: list[str]
    immediate: list[tuple[str, str, str]] = field(default_factory=list)
    delayed: list[tuple[str, str, str]] = field(default_factory=list)
    block: str = "Sys"
    name: str = "M"

    @property
    def prefix(self) -> str:
        return f"{self.block}.{self.name}"


def _action(r: random.Random, depth: int = 0) -> str:
    stmts = []
    for _ in range(r.randint(0 if depth else 0, 3)):
        pick = r.random()
        if pick < 0.25:
            stmts.append(f"e{r.randint(0, 2)}!")
        elif pick < 0.45:
            stmts.append("skip")
        elif pick < 0.65:
            stmts.append(f"n = n + {r.randint(1, 3)}")
        elif pick < 0.8:
            stmts.append(f"m = n < {r.randint(0, 6)}")
        elif depth < 2:
            cond = r.choice(GUARD_INPUTS + ("m",))
            then = _action(r, depth + 1)
            if r.random() < 0.5:
                stmts.append(f"if {cond} {{ {then} }} else {{ {_action(r, depth + 1)} }}")
            else:
                stmts.append(f"if {cond} {{ {then} }}")
    return "; ".join(stmts)


def automaton_case(r: random.Random, *, max_states: int = 4, cyclic: bool = False) -> AutomatonCase:
    """A block with a guard dataflow and one automaton.

    Immediate transitions follow a random order of the states, so they are
    acyclic unless ``cyclic`` asks for a back edge closing a loop.
    """
    n = r.randint(2 if cyclic else 1, max_states)
    states = [f"S{i}" for i in range(n)]
    actions = {s: _action(r) for s in states}
    if not any("n = n" in a for a in actions.values()):
        # reads of n need a writer, otherwise n would be an undriven input
        actions[states[-1]] = f"n = n + 1; {actions[states[-1]]}".rstrip("; ")
    guards = list(GUARD_INPUTS)
    if any("m = " in a for a in actions.values()):
        guards.append("m")
    guard_vars = {g for a in actions.values() for g in GUARD_INPUTS + ("m",) if f"if {g} " in a}
    if "m" in guard_vars and "m" not in guards:
        # an if on m needs m assigned somewhere: give the first state the assignment
        actions[states[0]] = f"m = n < 2; {actions[states[0]]}".rstrip("; ")
        guards.append("m")

    order = states[:]
    r.shuffle(order)
    imm, dly = [], []
    for i, a in enumerate(order):
        for b in order[i + 1:]:
            if r.random() < 0.35:
                imm.append((a, b, r.choice(guards)))
    if cyclic:
        i, j = sorted(r.sample(range(n), 2))
        path = order[i:j + 1]
        for a, b in zip(path, path[1:]):
            if not any(x == a and y == b for x, y, _ in imm):
                imm.append((a, b, r.choice(guards)))
        imm.append((path[-1], path[0], r.choice(guards)))
    for a in states:
        for b in states:
            if r.random() < 0.3:
                dly.append((a, b, r.choice(guards)))
    r.shuffle(imm)
    r.shuffle(dly)

    initial = r.choice(states)
    bodies = []
    for s in states:
        head = "initial state" if s == initial else "state"
        body = f"{{ do {{ {actions[s]} }} }}" if actions[s] else "{ }"
        bodies.append(f"    {head} {s} {body}")
    trans = [f"    {a} -> {b} on {g}" for a, b, g in imm] + [f"    {a} ->> {b} on {g}" for a, b, g in dly]
    src = "\n".join([
        "block Sys {",
        "  dataflow Inputs {",
        "    data i0 or false -> c0",
        "    data i1 and true -> c1",
        "  }",
        "  ||",
        "  automaton M {",
        *bodies,
        *trans,
        "  }",
        "}",
        "",
    ])
    ordered = [initial] + [s for s in states if s != initial]
    return AutomatonCase(src, ordered, imm, dly)


def input_trace(r: random.Random, length: int, reset_rate: float = 0.15) -> list[dict]:
    from synoptic.core import EVENT

    trace = []
    for _ in range(length):
        inst = {"trigger": EVENT, "i0": r.random() < 0.5, "i1": r.random() < 0.5}
        if r.random() < reset_rate:
            inst["reset"] = EVENT
        trace.append(inst)
    return trace
