"""Actions in static single assignment form.

An action is cut into sections at each ``skip``.  Inside a section every
variable has one guarded definition, kept in an environment mapping the
variable to its defining expression; the environment is flushed into the
variable signals when the section ends.  A state signal ``s`` records the
label of the section to resume at the next trigger (``0``: start over).

Each assigned value, branch guard and merged definition is bound to its own
internal signal, so the expressions stay small however the action nests.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import (
    EMPTY,
    EVENT,
    NEVER,
    Apply,
    Const,
    Default,
    DelayEq,
    EventOf,
    FunEq,
    Not,
    Ref,
    SyncEq,
    When,
    compose,
    compose_all,
)
from ..frontend.syntax import Assign, Emit, End, If, Nop, Seq, Skip, Stmt, is_name, spine
from .context import Context

GuardedEnv = dict
MAX_LABEL = 2**16


class LabelOverflow(Exception):
    pass


@dataclass
class ActionResult:
    process: object
    label: int
    guard: object
    env: GuardedEnv
    #: internal signals the caller should restrict once it is done with ``env``
    locals: list[str] = field(default_factory=list)


def use(env: GuardedEnv, g, x: str, ctx: Context | None = None):
    """Current definition of ``x`` at guard ``g``.

    Falls back to the stored value of ``x`` sampled at ``g``.  Signals no
    action writes (model inputs, dataflow outputs) are read as they are.
    """
    if x in env:
        return env[x]
    if ctx is None or ctx.is_memorized(x):
        name = ctx.memory(x) if ctx else f"{x}%pre"
        return When(Ref(name), g)
    return When(Ref(x), g)


def define(g, env: GuardedEnv, ctx: Context | None = None):
    """Store every variable of ``env``: one ``x := use(x)`` per variable."""
    return compose_all(FunEq(x, use(env, g, x, ctx)) for x in sorted(env))


def env_merge(e: GuardedEnv, f: GuardedEnv) -> GuardedEnv:
    out = dict(e)
    for x, expr in f.items():
        out[x] = Default(e[x], expr) if x in e else expr
    return out


def restrict_env(env: GuardedEnv, g) -> GuardedEnv:
    return {x: When(e, g) for x, e in env.items()}


def branch_merge(branches, ctx: Context | None = None) -> GuardedEnv:
    """Merge environments reached under disjoint guards.

    A variable missing from a branch takes its stored value there, so the
    merged definition is present under every branch guard.
    """
    names: list[str] = []
    for _, env in branches:
        names += [x for x in env if x not in names]
    merged: GuardedEnv = {}
    for k, (guard, env) in enumerate(branches):
        part = {x: env[x] if x in env else use({}, guard, x, ctx) for x in names}
        merged = part if k == 0 else env_merge(merged, part)
    return merged


class _Sections:
    def __init__(self, s: str, prev, ctx: Context | None):
        self.s = s
        self.prev = prev
        self.ctx = ctx
        self.bindings: list[FunEq] = []

    def bind(self, kind: str, expr):
        if isinstance(expr, (Ref, Const)):
            return expr
        name = f"{self.s}.{kind}{len(self.bindings)}"
        self.bindings.append(FunEq(name, expr))
        return Ref(name)

    def operand(self, o, env, g):
        return use(env, g, o, self.ctx) if is_name(o) else Const(o)

    def run(self, a: Stmt, n: int, g, env: GuardedEnv) -> ActionResult:
        s = self.s
        if isinstance(a, Nop):
            return ActionResult(EMPTY, n, g, env)
        if isinstance(a, End):
            proc = compose(FunEq(s, When(Const(0), g)), define(g, env, self.ctx))
            return ActionResult(proc, 0, NEVER, {})
        if isinstance(a, Skip):
            if n + 1 > MAX_LABEL:
                raise LabelOverflow(f"action of {s} needs more than {MAX_LABEL} sections")
            proc = compose(FunEq(s, When(Const(n + 1), g)), define(g, env, self.ctx))
            resume = EventOf(Apply("=", self.prev, Const(n + 1)))
            return ActionResult(proc, n + 1, resume, {})
        if isinstance(a, Emit):
            return ActionResult(FunEq(a.signal, When(Const(EVENT), g)), n, g, env)
        if isinstance(a, Assign):
            e = self.bind("v", When(Apply(a.op, self.operand(a.left, env, g), self.operand(a.right, env, g)), g))
            out = {x: v for x, v in env.items() if x != a.target}
            out[a.target] = e
            return ActionResult(EMPTY, n, g, out)
        if isinstance(a, Seq):
            procs = []
            for part in spine(a):
                res = self.run(part, n, g, env)
                procs.append(res.process)
                n, g, env = res.label, res.guard, res.env
            return ActionResult(compose_all(procs), n, g, env)
        if isinstance(a, If):
            return self._if(a, n, g, env)
        raise TypeError(f"not an action: {a!r}")

    def _if(self, a: If, n: int, g, env: GuardedEnv) -> ActionResult:
        c = use(env, g, a.cond, self.ctx)
        ga, gb = self.bind("g", When(g, c)), self.bind("g", When(g, Not(c)))
        ra = self.run(a.then, n, ga, restrict_env(env, ga))
        rb = self.run(a.orelse, ra.label, gb, restrict_env(env, gb))
        ea, eb = dict(ra.env), dict(rb.env)
        for x in list(ea) + [x for x in eb if x not in ea]:
            if x not in ea:
                ea[x] = use(ea, ra.guard, x, self.ctx)
            if x not in eb:
                eb[x] = use(eb, rb.guard, x, self.ctx)
        merged = env_merge(ea, eb)
        if ra.guard is ga and rb.guard is gb:
            # untouched in both branches: keep the definition from before
            for x, e in env.items():
                if ea[x] == When(e, ga) and eb[x] == When(e, gb):
                    merged[x] = e
        merged = {x: e if x in env and e is env[x] else self.bind("v", e) for x, e in merged.items()}
        guard = self.bind("g", Default(ra.guard, rb.guard))
        return ActionResult(compose(ra.process, rb.process), rb.label, guard, merged)


def translate_action(a: Stmt, s: str, n: int, g, env: GuardedEnv, *, prev=None,
                     ctx: Context | None = None) -> ActionResult:
    """Translate ``a`` from section label ``n`` under guard ``g``.

    ``prev`` is the expression giving the label reached at the previous
    trigger (by default the signal ``s.pre``).
    """
    prev = Ref(f"{s}.pre") if prev is None else prev
    sections = _Sections(s, prev, ctx)
    res = sections.run(a, n, g, dict(env))
    res.process = compose(res.process, *sections.bindings)
    res.locals = [b.target for b in sections.bindings]
    return res


def translate_do(a: Stmt, r_out: str, t: str, *, ctx: Context | None = None, prefix: str = "do"):
    """``do a`` driven by trigger ``t``; ``r_out`` is true whenever the action is back at its start."""
    ctx = ctx or Context.for_action(a, memory_clock=t)
    s = f"{prefix}%s"
    sp = f"{s}.pre"
    start = EventOf(Apply("=", Ref(sp), Const(0)))
    res = translate_action(Seq(a, End()), s, 0, start, {}, prev=Ref(sp), ctx=ctx)
    body = compose(
        res.process,
        DelayEq(sp, s, 0),
        SyncEq(s, t),
        FunEq(r_out, Apply("=", Ref(s), Const(0))),
    )
    return ctx.restrict(body, [sp, s, *res.locals])


def standalone_action(a: Stmt, *, trigger: str = "trigger", done: str = "done"):
    """A closed process running ``a`` once per ``trigger``, with its memory cells."""
    ctx = Context.for_action(a, memory_clock=trigger)
    return ctx.finish(translate_do(a, done, trigger, ctx=ctx)), ctx
