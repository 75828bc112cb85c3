"""Blocks and whole models."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import EMPTY, FunEq, Machine, Ref, compose_all
from ..frontend.checks import TOP_RESET, TOP_TRIGGER
from ..frontend.syntax import Automaton, Block, Dataflow, Model
from .automata import translate_automaton
from .context import Context
from .dataflow import translate_dataflow


def translate_block(b: Block, parent_reset: str, parent_trigger: str, ctx: Context | None = None,
                    path: tuple[str, ...] = ()):
    """``b.trigger``/``b.reset`` follow the parent's unless a connection drives them."""
    ctx = ctx or Context(Model((b,)))
    if not b.body:
        return EMPTY
    full = ".".join(path + (b.name,))
    bt, br = f"{full}.trigger", f"{full}.reset"
    parts = []
    if bt not in ctx.conn_targets:
        parts.append(FunEq(bt, Ref(parent_trigger)))
    if br not in ctx.conn_targets:
        parts.append(FunEq(br, Ref(parent_reset)))
    for item in b.body:
        if isinstance(item, Block):
            parts.append(translate_block(item, br, bt, ctx, path + (b.name,)))
        elif isinstance(item, Dataflow):
            parts.append(translate_dataflow(item, br, bt, ctx))
        else:
            assert isinstance(item, Automaton)
            parts.append(translate_automaton(item, br, bt, ctx, prefix=f"{full}.{item.name}"))
    return compose_all(parts)


@dataclass
class Manifest:
    inputs: dict[str, str]
    outputs: dict[str, str]
    trigger: str = TOP_TRIGGER
    reset: str = TOP_RESET

    def lines(self) -> list[str]:
        rows = [f"input {n} : {k}" for n, k in self.inputs.items()]
        rows += [f"output {n} : {k}" for n, k in self.outputs.items()]
        return sorted(rows)

    def __str__(self) -> str:
        return "".join(line + "\n" for line in self.lines())

    def kind(self, name: str) -> str:
        return self.inputs.get(name) or self.outputs[name]


@dataclass
class Translation:
    process: object
    manifest: Manifest
    probes: dict[str, str] = field(default_factory=dict)

    def __iter__(self):
        return iter((self.process, self.manifest))


def translate_model(m: Model) -> Translation:
    """Translate a validated model against the top-level ``trigger``/``reset``."""
    ctx = Context.for_model(m)
    body = compose_all(translate_block(b, TOP_RESET, TOP_TRIGGER, ctx) for b in m.blocks)
    process = ctx.finish(body, TOP_TRIGGER)
    machine = Machine(process)
    symbols = m.symbols

    def kind(n: str) -> str:
        sym = symbols.get(n)
        return sym.kind if sym else "int"

    manifest = Manifest(
        inputs={n: kind(n) for n in sorted(machine.inputs | {TOP_TRIGGER, TOP_RESET})},
        outputs={n: kind(n) for n in sorted(machine.outputs)},
    )
    return Translation(process, manifest, dict(ctx.probes))
