"""Concrete syntax, parser, printer and validator for Synoptic models."""

from .checks import Diagnostic, infer_symbols, validate
from .parser import DuplicateName, FrontendError, SynopticSyntaxError, UnknownState, parse, parse_action
from .printer import format_action, pretty_print
from .syntax import (
    Assign,
    Automaton,
    Block,
    Dataflow,
    DelayConn,
    Emit,
    End,
    EventConn,
    If,
    Model,
    Nop,
    OpConn,
    Seq,
    Skip,
    Span,
    State,
    Symbol,
    Transition,
    seq,
)

__all__ = [
    "Assign", "Automaton", "Block", "Dataflow", "DelayConn", "Diagnostic", "DuplicateName",
    "Emit", "End", "EventConn", "FrontendError", "If", "Model", "Nop", "OpConn", "Seq",
    "Skip", "Span", "State", "Symbol", "SynopticSyntaxError", "Transition", "UnknownState",
    "format_action", "infer_symbols", "parse", "parse_action", "pretty_print", "seq", "validate",
]
