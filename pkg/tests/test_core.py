"""Kernel: process terms, the reaction fixpoint and its error classes."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from synoptic.core.values import INT_MAX
from synoptic.core import (
    ABSENT,
    EMPTY,
    EVENT,
    Apply,
    CausalityError,
    ClockError,
    Compose,
    ConflictError,
    Const,
    Default,
    DelayEq,
    EvalError,
    FunEq,
    Machine,
    NameSupply,
    Ref,
    Restrict,
    SimulationError,
    SyncEq,
    When,
    compose,
    dump,
    equations,
    free_signals,
    restrict,
    run,
    shuffle,
    step,
)

values = st.one_of(st.just(ABSENT), st.integers(-50, 50))
flags = st.one_of(st.just(ABSENT), st.booleans())


def sum_eq(x="x", y="y", z="z"):
    return FunEq(x, Apply("+", Ref(y), Ref(z)))


class TestFreeSignals:
    def test_equation(self):
        assert free_signals(sum_eq()) == {"x", "y", "z"}

    def test_restriction_hides_name(self):
        assert free_signals(Restrict(sum_eq(), "y")) == {"x", "z"}

    def test_composition_is_union(self):
        p = Compose((SyncEq("a", "b"), DelayEq("c", "a", 0)))
        assert free_signals(p) == {"a", "b", "c"}

    def test_restrict_renames_fresh(self):
        supply = NameSupply()
        p = restrict(sum_eq(), "y", supply)
        q = restrict(sum_eq(), "y", supply)
        assert p.name != q.name
        assert free_signals(compose(p, q)) == {"x", "z"}


class TestStep:
    def test_when_true_samples(self):
        p = FunEq("x", When(Ref("y"), Ref("z")))
        reaction, _ = step(p, None, {"y": 5, "z": True})
        assert reaction["x"] == 5

    def test_when_false_is_absent(self):
        p = FunEq("x", When(Ref("y"), Ref("z")))
        reaction, _ = step(p, None, {"y": 5, "z": False})
        assert reaction["x"] is ABSENT

    def test_delay_first_instant(self):
        p = DelayEq("x", "y", 7)
        reaction, state = step(p, None, {"y": 3})
        assert reaction["x"] == 7
        assert list(state.values()) == [3]

    def test_constant_takes_clock_of_operand(self):
        p = FunEq("x", Apply("+", Ref("y"), Const(1)))
        assert [r["x"] for r in run(p, [{"y": 1}, {}, {"y": 4}])] == [2, ABSENT, 5]


class TestRun:
    def test_delay_column(self):
        p = DelayEq("x", "y", 0)
        assert [r["x"] for r in run(p, [{"y": 1}, {"y": 2}, {"y": 3}])] == [0, 1, 2]

    def test_empty_trace(self):
        assert run(DelayEq("x", "y", 0), []) == []

    def test_default(self):
        p = FunEq("x", Default(Ref("y"), Ref("z")))
        assert [r["x"] for r in run(p, [{"y": 1, "z": 2}, {"z": 2}])] == [1, 2]

    def test_restricted_signals_are_omitted(self):
        p = restrict(compose(FunEq("h", Apply("+", Ref("y"), Const(1))), FunEq("x", Ref("h"))), "h")
        (r,) = run(p, [{"y": 1}])
        assert r == {"x": 2, "y": 1}

    def test_error_carries_instant(self):
        p = SyncEq("a", "b")
        with pytest.raises(ClockError) as info:
            run(p, [{"a": 1, "b": 1}, {}, {"a": 1}])
        assert info.value.instant == 2
        assert "instant 2" in str(info.value)


class TestErrors:
    def test_sync_violation(self):
        with pytest.raises(ClockError):
            step(SyncEq("a", "b"), None, {"a": 1})

    def test_operand_presence_mismatch(self):
        with pytest.raises(ClockError):
            step(sum_eq(), None, {"y": 1})

    def test_conflicting_definitions(self):
        p = compose(FunEq("x", Ref("a")), FunEq("x", Ref("b")))
        with pytest.raises(ConflictError):
            step(p, None, {"a": 1, "b": 2})

    def test_agreeing_definitions(self):
        p = compose(FunEq("x", Ref("a")), FunEq("x", Ref("b")))
        reaction, _ = step(p, None, {"a": 1, "b": 1})
        assert reaction["x"] == 1

    def test_instantaneous_cycle(self):
        p = compose(FunEq("x", Apply("+", Ref("y"), Ref("u"))), FunEq("y", Apply("+", Ref("x"), Ref("u"))))
        with pytest.raises(CausalityError) as info:
            step(p, None, {"u": 1})
        assert set(info.value.signals) >= {"x", "y"}

    def test_cycle_through_delay_is_fine(self):
        p = compose(DelayEq("prev", "n", 0), FunEq("n", Apply("+", Ref("prev"), Ref("u"))))
        assert [r["n"] for r in run(p, [{"u": 1}] * 3)] == [1, 2, 3]

    def test_overflow(self):
        p = FunEq("x", Apply("+", Ref("y"), Const(1)))
        with pytest.raises(EvalError):
            step(p, None, {"y": INT_MAX})

    def test_kind_error(self):
        with pytest.raises(EvalError):
            step(FunEq("x", Apply("and", Ref("y"), Ref("z"))), None, {"y": 1, "z": True})

    def test_all_errors_share_a_base(self):
        for cls in (CausalityError, ClockError, ConflictError, EvalError):
            assert issubclass(cls, SimulationError)


class TestDump:
    def test_format(self):
        p = restrict(compose(DelayEq("x", "y", 0), SyncEq("x", "z"), FunEq("w", When(Ref("x"), Ref("c")))), "x", NameSupply())
        assert dump(p) == (
            "(\n"
            "  x~1 := y $ init 0\n"
            "  x~1 ^= z\n"
            "  w := x~1 when c\n"
            ") / x~1\n"
        )

    def test_empty(self):
        assert dump(EMPTY) == ""


@settings(max_examples=200, deadline=None)
@given(values, flags)
def test_clock_of_sampling(y, z):
    p = FunEq("x", When(Ref("y"), Ref("z")))
    reaction, _ = step(p, None, {"y": y, "z": z})
    if y is not ABSENT and z is True:
        assert reaction["x"] == y
    else:
        assert reaction["x"] is ABSENT


@settings(max_examples=200, deadline=None)
@given(values, values)
def test_clock_of_merge(y, z):
    p = FunEq("x", Default(Ref("y"), Ref("z")))
    reaction, _ = step(p, None, {"y": y, "z": z})
    assert (reaction["x"] is not ABSENT) == (y is not ABSENT or z is not ABSENT)
    if y is not ABSENT:
        assert reaction["x"] == y
    elif z is not ABSENT:
        assert reaction["x"] == z


@settings(max_examples=200, deadline=None)
@given(st.integers(-5, 5), st.lists(values, max_size=20))
def test_delay_recurrence(init, ys):
    out = run(DelayEq("x", "y", init), [{"y": y} for y in ys])
    last = init
    for y, r in zip(ys, out):
        if y is ABSENT:
            assert r["x"] is ABSENT
        else:
            assert r["x"] == last
            last = y


def _outcome(p, trace):
    try:
        return run(p, trace)
    except SimulationError as err:
        return type(err)


SYNC_TRACES = st.lists(st.fixed_dictionaries({"a": values, "b": values, "c": values}), max_size=8)


@settings(max_examples=150, deadline=None)
@given(SYNC_TRACES)
def test_sync_symmetry(trace):
    body = [FunEq("d", Apply("+", Ref("a"), Const(1))), DelayEq("e", "c", 0)]
    left = compose(SyncEq("a", "b"), SyncEq("e", "a"), *body)
    right = compose(SyncEq("b", "a"), SyncEq("a", "e"), *body)
    assert _outcome(left, trace) == _outcome(right, trace)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.fixed_dictionaries({"y": values}), max_size=10))
def test_restriction_soundness(trace):
    p = compose(FunEq("h", Apply("*", Ref("y"), Const(2))), DelayEq("x", "h", 1))
    hidden = restrict(p, "h")
    full, closed = _outcome(p, trace), _outcome(hidden, trace)
    if isinstance(full, list):
        assert closed == [{k: v for k, v in r.items() if k != "h"} for r in full]
    else:
        assert closed is full


def _counter_process():
    return compose(
        DelayEq("prev", "n", 0),
        FunEq("n", Default(When(Const(0), Ref("r")), Apply("+", Ref("prev"), Ref("u")))),
        SyncEq("n", "u"),
        FunEq("big", When(Ref("n"), Apply("<", Const(3), Ref("n")))),
        FunEq("out", Default(Ref("big"), Ref("n"))),
    )


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000),
       st.lists(st.fixed_dictionaries({"u": st.one_of(st.just(ABSENT), st.integers(0, 3)),
                                       "r": st.one_of(st.just(ABSENT), st.just(EVENT))}), max_size=10))
def test_shuffle_determinism(seed, trace):
    p = _counter_process()
    trace = [t for t in trace if not (t["r"] is not ABSENT and t["u"] is ABSENT)]
    expected = _outcome(p, trace)
    r = random.Random(seed)
    for _ in range(5):
        q = shuffle(p, r)
        assert sorted(map(repr, equations(q))) == sorted(map(repr, equations(p)))
        assert _outcome(q, trace) == expected


def test_machine_partitions_signals():
    m = Machine(restrict(_counter_process(), "prev"))
    assert m.inputs == {"u", "r"}
    assert m.outputs == {"n", "big", "out"}
    assert len(m.hidden) == 1
