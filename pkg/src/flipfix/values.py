"""Runtime value model shared by the interpreter, feature encoder, and synthesizer.

MiniImp values map onto Python natives: int, float, bool, str, and list.
Two wrinkles need dedicated types:

* ``Char`` distinguishes character values from one-element strings.  It
  subclasses str so equality and ordering against literals work unchanged,
  but isinstance checks must test Char before str.
* ``ABSENT`` marks a variable that is in scope but has no value yet
  (declared without initializer, or a capture that failed to evaluate).
"""

from __future__ import annotations

from typing import Union


class Char(str):
    """A single character. Subclass of str; check isinstance(Char) first."""

    __slots__ = ()

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return f"Char({str.__repr__(self)})"


class _Absent:
    """Singleton sentinel for declared-but-unassigned variables."""

    _instance = None

    def __new__(cls) -> "_Absent":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "ABSENT"

    def __bool__(self) -> bool:
        return False


ABSENT = _Absent()

Value = Union[int, float, bool, Char, str, list]

_INT64_MASK = (1 << 64) - 1
_INT64_SIGN = 1 << 63


def wrap64(n: int) -> int:
    """Wrap an unbounded int into two's-complement 64-bit range."""
    n &= _INT64_MASK
    if n & _INT64_SIGN:
        n -= 1 << 64
    return n


def int_div(a: int, b: int) -> int:
    """Integer division truncating toward zero, wrapped to 64 bits."""
    q = abs(a) // abs(b)
    if (a < 0) != (b < 0):
        q = -q
    return wrap64(q)


def int_mod(a: int, b: int) -> int:
    """Remainder consistent with int_div: a == int_div(a,b)*b + int_mod(a,b)."""
    r = abs(a) % abs(b)
    if a < 0:
        r = -r
    return wrap64(r)


def deep_copy_value(v: Value) -> Value:
    """Copy a value so later mutation cannot alias. Only arrays are mutable."""
    if isinstance(v, list):
        return [deep_copy_value(x) for x in v]
    return v


def format_value(v: Value) -> str:
    """Render a value the way print() emits it."""
    if v is ABSENT:
        return "<absent>"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Char):
        return str(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, list):
        return "[" + ", ".join(format_value(x) for x in v) + "]"
    return str(v)
