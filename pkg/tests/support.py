"""Helpers shared by the test modules."""

from __future__ import annotations

import random
from pathlib import Path

from synoptic.core import ABSENT, EVENT, Machine
from synoptic.frontend import parse, validate
from synoptic.trans import translate_model

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
VALID = sorted(CORPUS.glob("*.syn"))
INVALID = sorted((CORPUS / "invalid").glob("*.syn"))


def compile_text(src: str):
    m = parse(src)
    diags = validate(m)
    assert not diags, [str(d) for d in diags]
    return translate_model(m)


def simulate(src: str, trace, *, hidden=False):
    """Run ``src`` on ``trace`` (list of input dicts); ``trigger`` defaults to present."""
    tr = compile_text(src)
    machine = Machine(tr.process)
    state = machine.initial_state()
    out = []
    for inst in trace:
        inst = {"trigger": EVENT, **inst}
        res = machine.react(state, inst)
        state = res.state
        out.append(res.signals if hidden else res.reaction)
    return out


def column(rows, name):
    return [r.get(name, ABSENT) for r in rows]


def present(v) -> bool:
    return v is not ABSENT


def rng(seed: int) -> random.Random:
    return random.Random(seed)
