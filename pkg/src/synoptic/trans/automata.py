"""Mode automata as kernel processes.

The automaton keeps its current state index in ``s`` (synchronous with the
trigger) and computes the next one in ``s'``.  Per instant, the state in
``s`` runs its action from the label it stopped at; when the action
completes, the first enabled immediate transition starts the target's
action in the same instant.  The chain stops at a state that skips
(it stutters there), takes a delayed transition, or has nothing enabled
(it stays).  Transitions out of a state are tried in declaration order,
immediate ones first.
"""

from __future__ import annotations

from collections import defaultdict

from ..core import (
    Apply,
    BoolOf,
    Const,
    Default,
    DelayEq,
    EventOf,
    FunEq,
    Not,
    Ref,
    SyncEq,
    When,
    compose_all,
)
from ..frontend.syntax import Automaton
from .actions import branch_merge, define, restrict_env, translate_action, use
from .context import Context
from .regions import compute_regions


def _any(guards):
    out = guards[0]
    for g in guards[1:]:
        out = Default(out, g)
    return out


def _eq(x, k: int):
    return Apply("=", Ref(x), Const(k))


def translate_automaton(a: Automaton, r: str, t: str, ctx: Context | None = None, prefix: str | None = None):
    ctx = ctx or Context.for_automaton(a, memory_clock=t)
    prefix = prefix or a.name
    regions = compute_regions(a)
    index = {st.name: i for i, st in enumerate(a.ordered_states())}
    by_name = {st.name: st for st in a.states}

    s, nxt, nxt_pre = f"{prefix}%s", f"{prefix}%next", f"{prefix}%next.pre"
    parts = [
        SyncEq(t, s),
        SyncEq(nxt, t),
        FunEq(s, Default(When(Const(0), Ref(r)), Ref(nxt_pre))),
        DelayEq(nxt_pre, nxt, 0),
    ]
    hidden = [s, nxt, nxt_pre]

    def bind(name: str, expr):
        parts.append(FunEq(name, expr))
        hidden.append(name)
        return Ref(name)

    entries: dict[str, list] = defaultdict(list)
    next_states = []
    for name in regions.order:
        i, st = index[name], by_name[name]
        base = f"{prefix}.{name}"
        si, si_pre, lab = f"{base}%s", f"{base}%s.pre", f"{base}%lab"
        hidden += [si, si_pre, lab]
        # local label, cleared by the automaton reset
        parts += [
            SyncEq(si, t),
            DelayEq(si_pre, si, 0),
            FunEq(lab, Default(When(Const(0), Ref(r)), Ref(si_pre))),
        ]

        start = When(EventOf(_eq(s, i)), EventOf(_eq(lab, 0)))
        incoming = entries[name]
        if incoming:
            gi = bind(f"{base}%g", Default(start, _any([g for g, _ in incoming])))
            merged = branch_merge([(start, {})] + [(g, restrict_env(f, g)) for g, f in incoming], ctx)
            env = {x: bind(f"{base}%in{j}", e) for j, (x, e) in enumerate(merged.items())}
            entered = Default(BoolOf(_any([g for g, _ in incoming])), When(Const(False), Ref(t)))
            active = Apply("or", _eq(s, i), entered)
        else:
            gi = bind(f"{base}%g", start)
            env = {}
            active = _eq(s, i)

        res = translate_action(st.action, si, 0, gi, env, prev=Ref(lab), ctx=ctx)
        hidden += res.locals
        hi = bind(f"{base}%h", res.guard)
        fi = res.env
        parts += [
            res.process,
            FunEq(si, When(Const(0), hi)),
            FunEq(si, When(Ref(lab), EventOf(Not(active)))),
        ]

        rest = hi
        for k, tr in enumerate(a.transitions):
            if tr.source != name or tr.delayed:
                continue
            c = use(fi, hi, tr.guard, ctx)
            fire = bind(f"{base}%imm{k}", When(rest, c))
            rest = When(rest, Not(c))
            entries[tr.target].append((fire, fi))
        stop = bind(f"{base}%stop", rest)
        parts.append(define(stop, restrict_env(fi, stop), ctx))

        rest = stop
        choice = [When(Const(i), EventOf(Apply("!=", Ref(si), Const(0))))]
        for tr in a.transitions:
            if tr.source != name or not tr.delayed:
                continue
            c = use(fi, hi, tr.guard, ctx)
            choice.append(When(Const(index[tr.target]), When(rest, c)))
            rest = When(rest, Not(c))
        choice.append(When(Const(i), rest))
        next_states.append(_any(choice))

    parts.append(FunEq(nxt, _any(next_states)))
    return ctx.restrict(compose_all(parts), hidden)
