"""Dataflow connections as kernel equations."""

from __future__ import annotations

from ..core import Apply, Const, Default, DelayEq, EventOf, FunEq, Ref, SyncEq, When, compose, compose_all
from ..frontend.syntax import Dataflow, DelayConn, EventConn, OpConn, conn_reads, is_name
from .context import Context


def outputs_of(d: Dataflow) -> set[str]:
    return {c.dst for c in d.conns}


def inputs_of(d: Dataflow) -> set[str]:
    """Signals read by ``d`` that none of its connections define."""
    defined = outputs_of(d)
    return {x for c in d.conns for x in conn_reads(c) if x not in defined}


def _operand(o):
    return Ref(o) if is_name(o) else Const(o)


def translate_dataflow(d: Dataflow, r: str, t: str, ctx: Context | None = None):
    ctx = ctx or Context()
    parts = []
    for c in d.conns:
        if isinstance(c, DelayConn):
            last = f"{c.dst}%last"
            body = compose(
                FunEq(c.dst, Default(When(Const(c.init), Ref(r)), Ref(last))),
                DelayEq(last, c.src, c.init),
                SyncEq(c.dst, c.src),
            )
            parts.append(ctx.restrict(body, [last]))
        elif isinstance(c, OpConn):
            parts.append(FunEq(c.dst, Apply(c.op, _operand(c.left), _operand(c.right))))
        else:
            assert isinstance(c, EventConn)
            parts.append(FunEq(c.dst, EventOf(Ref(c.src))))
    for x in sorted(inputs_of(d)):
        # an event input is only present at some triggers: its clock is a subclock of t
        if ctx.kinds.get(x) == "event":
            sub = f"{x}%in"
            parts.append(ctx.restrict(compose(FunEq(sub, When(Ref(x), Ref(t))), SyncEq(x, sub)), [sub]))
        else:
            parts.append(SyncEq(x, t))
    return compose_all(parts)
