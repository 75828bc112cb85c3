"""Tokenizer and recursive-descent parser for ``.syn`` sources."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    Assign,
    Automaton,
    Block,
    Dataflow,
    DelayConn,
    Emit,
    EventConn,
    If,
    Model,
    Nop,
    OpConn,
    Skip,
    Span,
    State,
    Transition,
    seq,
)


class FrontendError(Exception):
    code = "Error"

    def __init__(self, message: str, span: Span | None = None):
        self.message = message
        self.span = span
        where = f"{span}: " if span else ""
        super().__init__(f"{where}{message}")


class SynopticSyntaxError(FrontendError):
    code = "SyntaxError"


class DuplicateName(FrontendError):
    code = "DuplicateName"


class UnknownState(FrontendError):
    code = "UnknownState"


KEYWORDS = {
    "block", "dataflow", "automaton", "data", "event", "init", "initial",
    "state", "do", "skip", "if", "else", "on", "true", "false", "and", "or",
}

# normalised operator spellings
OP_SPELLINGS = {"+": "+", "-": "-", "*": "*", "=": "=", "!=": "!=", "≠": "!=",
                "<": "<", "<=": "<=", "≤": "<=", "and": "and", "or": "or"}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<int>\d+)
  | (?P<id>[A-Za-z_][A-Za-z0-9_]*(?:\.[A-Za-z_][A-Za-z0-9_]*)*)
  | (?P<sym>->>|->|\|\||!=|<=|[{};!=$<+\-*≠≤])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "id", "kw", "sym", "eof"
    text: str
    span: Span


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        span = Span(line, pos - line_start + 1)
        if m is None:
            raise SynopticSyntaxError(f"unexpected character {text[pos]!r}", span)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind != "ws":
            word = m.group()
            if kind == "id" and word in KEYWORDS:
                kind = "kw"
            tokens.append(Token(kind, word, span))
        pos = m.end()
    tokens.append(Token("eof", "", Span(line, pos - line_start + 1)))
    return tokens


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    # -- token helpers

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def at(self, text: str) -> bool:
        return self.tok.text == text and self.tok.kind in ("kw", "sym")

    def accept(self, text: str) -> Token | None:
        if self.at(text):
            t = self.tok
            self.pos += 1
            return t
        return None

    def expect(self, text: str) -> Token:
        t = self.accept(text)
        if t is None:
            self.fail(f"expected {text!r}")
        return t

    def fail(self, message: str):
        found = self.tok.text or "end of input"
        raise SynopticSyntaxError(f"{message}, found {found!r}", self.tok.span)

    def name(self) -> str:
        if self.tok.kind != "id":
            self.fail("expected an identifier")
        t = self.tok
        self.pos += 1
        return t.text

    def const(self):
        if self.accept("true"):
            return True
        if self.accept("false"):
            return False
        neg = self.accept("-") is not None
        if self.tok.kind != "int":
            self.fail("expected a constant")
        value = int(self.tok.text)
        self.pos += 1
        return -value if neg else value

    def operand(self):
        if self.tok.kind == "id":
            return self.name()
        return self.const()

    def operator(self) -> str:
        t = self.tok
        if t.text in OP_SPELLINGS and t.kind in ("sym", "kw"):
            self.pos += 1
            return OP_SPELLINGS[t.text]
        self.fail("expected an operator")

    # -- grammar

    def model(self) -> Model:
        start = self.tok.span
        blocks = []
        while self.tok.kind != "eof":
            if blocks:
                self.accept("||")
            if not self.at("block"):
                self.fail("expected 'block'")
            blocks.append(self.block())
        if not blocks:
            self.fail("expected at least one block")
        _unique(blocks, "block")
        return Model(tuple(blocks), span=start)

    def block(self) -> Block:
        span = self.expect("block").span
        name = self.name()
        self.expect("{")
        body = []
        while not self.at("}"):
            if body:
                self.accept("||")
            if self.at("block"):
                body.append(self.block())
            elif self.at("dataflow"):
                body.append(self.dataflow())
            elif self.at("automaton"):
                body.append(self.automaton())
            else:
                self.fail("expected 'block', 'dataflow' or 'automaton'")
        if not body:
            self.fail("a block needs at least one member")
        self.expect("}")
        _unique(body, "member")
        return Block(name, tuple(body), span=span)

    def dataflow(self) -> Dataflow:
        span = self.expect("dataflow").span
        name = self.name()
        self.expect("{")
        conns = []
        while not self.at("}"):
            if conns and (self.accept("||") or self.accept(";")):
                continue
            conns.append(self.conn())
        self.expect("}")
        return Dataflow(name, tuple(conns), span=span)

    def conn(self):
        span = self.tok.span
        if self.accept("event"):
            src = self.name()
            self.expect("->")
            return EventConn(src, self.name(), span=span)
        self.expect("data")
        if self.tok.kind == "id" and self.tokens[self.pos + 1].text == "$":
            src = self.name()
            self.expect("$")
            self.expect("init")
            init = self.const()
            self.expect("->")
            return DelayConn(src, init, self.name(), span=span)
        left = self.operand()
        op = self.operator()
        right = self.operand()
        self.expect("->")
        return OpConn(left, op, right, self.name(), span=span)

    def automaton(self) -> Automaton:
        span = self.expect("automaton").span
        name = self.name()
        self.expect("{")
        states = []
        while self.at("state") or self.at("initial"):
            states.append(self.state())
        if not states:
            self.fail("an automaton needs at least one state")
        trans = []
        while not self.at("}"):
            trans.append(self.transition())
        self.expect("}")
        _unique(states, "state")
        known = {s.name for s in states}
        for t in trans:
            for end in (t.source, t.target):
                if end not in known:
                    raise UnknownState(f"transition refers to undeclared state {end!r}", t.span)
        return Automaton(name, tuple(states), tuple(trans), span=span)

    def state(self) -> State:
        span = self.tok.span
        initial = self.accept("initial") is not None
        self.expect("state")
        name = self.name()
        self.expect("{")
        action = Nop()
        if self.accept("do"):
            self.expect("{")
            action = self.action()
            self.expect("}")
        self.expect("}")
        return State(name, action, initial, span=span)

    def transition(self) -> Transition:
        span = self.tok.span
        source = self.name()
        if self.accept("->>"):
            delayed = True
        else:
            self.expect("->")
            delayed = False
        target = self.name()
        self.expect("on")
        return Transition(source, target, self.name(), delayed, span=span)

    def action(self):
        stmts = []
        while not self.at("}") and self.tok.kind != "eof":
            stmts.append(self.stmt())
            if not self.accept(";"):
                break
        return seq(*stmts)

    def stmt(self):
        span = self.tok.span
        if self.accept("skip"):
            return Skip(span=span)
        if self.accept("if"):
            cond = self.name()
            self.expect("{")
            then = self.action()
            self.expect("}")
            orelse = Nop()
            if self.accept("else"):
                self.expect("{")
                orelse = self.action()
                self.expect("}")
            return If(cond, then, orelse, span=span)
        target = self.name()
        if self.accept("!"):
            return Emit(target, span=span)
        self.expect("=")
        left = self.operand()
        op = self.operator()
        right = self.operand()
        return Assign(target, left, op, right, span=span)


def _unique(items, what: str) -> None:
    seen: dict[str, object] = {}
    for item in items:
        if item.name in seen:
            raise DuplicateName(f"duplicate {what} name {item.name!r}", item.span)
        seen[item.name] = item


def parse(text: str) -> Model:
    """Parse a ``.syn`` source into a :class:`Model`."""
    return Parser(text).model()


def parse_action(text: str):
    """Parse a bare action (the body of a ``do { ... }``)."""
    p = Parser(text)
    a = p.action()
    if p.tok.kind != "eof":
        p.fail("unexpected trailing input")
    return a
