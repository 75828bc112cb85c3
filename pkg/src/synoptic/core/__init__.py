"""The polychronous kernel: process terms and their reactive execution."""

from .machine import (
    CausalityError,
    ClockError,
    ConflictError,
    EvalError,
    Instant,
    Machine,
    SimulationError,
    evaluate,
    initial_state,
    machine_for,
    run,
    step,
)
from .process import (
    EMPTY,
    NEVER,
    OPERATORS,
    Apply,
    BoolOf,
    Compose,
    Const,
    Default,
    DelayEq,
    EventOf,
    FunEq,
    NameSupply,
    Not,
    Ref,
    Restrict,
    SyncEq,
    When,
    compose,
    compose_all,
    dump,
    equations,
    free_signals,
    rename,
    restrict,
    restrict_all,
    shuffle,
)
from .values import ABSENT, EVENT, format_value, kind_of, parse_value, zero_of

__all__ = [
    "ABSENT", "EVENT", "EMPTY", "NEVER", "OPERATORS",
    "Apply", "BoolOf", "Compose", "Const", "Default", "DelayEq", "EventOf", "FunEq",
    "Not", "Ref", "Restrict", "SyncEq", "When", "NameSupply",
    "CausalityError", "ClockError", "ConflictError", "EvalError", "SimulationError",
    "Instant", "Machine",
    "compose", "compose_all", "dump", "equations", "evaluate", "format_value",
    "free_signals", "initial_state", "kind_of", "machine_for", "parse_value",
    "rename", "restrict", "restrict_all", "run", "shuffle", "step", "zero_of",
]
