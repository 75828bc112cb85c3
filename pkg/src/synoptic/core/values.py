"""Runtime values and per-instant presence statuses."""

from __future__ import annotations

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1


class _Token:
    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name

    def __reduce__(self):
        return self._name


#: The unit value carried by a present event.
EVENT = _Token("EVENT")
#: A signal with no value at this instant.
ABSENT = _Token("ABSENT")
#: Fixpoint status: presence not decided yet.
UNKNOWN = _Token("UNKNOWN")
#: Fixpoint status: known to be present, value not computed yet.
PRESENT = _Token("PRESENT")


def is_value(v) -> bool:
    return v is EVENT or type(v) is bool or type(v) is int


def kind_of(v) -> str:
    if v is EVENT:
        return "event"
    if type(v) is bool:
        return "bool"
    if type(v) is int:
        return "int"
    raise TypeError(f"not a value: {v!r}")


def same_value(a, b) -> bool:
    # True == 1 in Python; kinds must match too
    return type(a) is type(b) and a == b


def zero_of(kind: str):
    """Kind-correct initial memory: ``0`` for ints, ``false`` for booleans."""
    if kind == "bool":
        return False
    if kind == "event":
        return EVENT
    return 0


def format_value(v) -> str:
    if v is EVENT:
        return "event"
    if type(v) is bool:
        return "true" if v else "false"
    return str(v)


def parse_value(text: str):
    if text == "true":
        return True
    if text == "false":
        return False
    if text == "event":
        return EVENT
    return int(text)
