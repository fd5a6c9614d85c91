"""Canonical value hashing used by the hash() intrinsic and feature encoding.

Strings fold code points through h = h*31 + c (mod 2^32), starting at 0.
Arrays fold per-element hashes through the same recurrence.  The final
result is reinterpreted as a signed 32-bit integer so it round-trips
through MiniImp int literals and comparisons.
"""

from __future__ import annotations

import struct

from .values import ABSENT, Char, Value

_U32 = (1 << 32) - 1


def _fold(h: int, code: int) -> int:
    return (h * 31 + code) & _U32


def _element_code(v: Value) -> int:
    if isinstance(v, bool):
        return 1 if v else 0
    if isinstance(v, Char):
        return ord(v)
    if isinstance(v, int):
        return v & _U32
    if isinstance(v, float):
        (bits,) = struct.unpack("<Q", struct.pack("<d", v))
        return (bits ^ (bits >> 32)) & _U32
    if isinstance(v, str):
        return value_hash_u32(v)
    if isinstance(v, list):
        return value_hash_u32(v)
    raise TypeError(f"unhashable value: {v!r}")


def value_hash_u32(v: Value) -> int:
    """Unsigned 32-bit hash of a string or array."""
    h = 0
    if isinstance(v, str) and not isinstance(v, Char):
        for ch in v:
            h = _fold(h, ord(ch))
        return h
    if isinstance(v, list):
        for x in v:
            h = _fold(h, _element_code(x))
        return h
    raise TypeError(f"hash() expects a string or array, got {v!r}")


def signed32(u: int) -> int:
    """Reinterpret an unsigned 32-bit value as signed."""
    u &= _U32
    if u >= 1 << 31:
        u -= 1 << 32
    return u


def value_hash(v: Value) -> int:
    """Signed 32-bit hash as returned by the hash() intrinsic."""
    return signed32(value_hash_u32(v))


def scalar_category(v: Value) -> int:
    """Categorical code for a scalar feature value."""
    if v is ABSENT:
        raise ValueError("absent value has no category")
    if isinstance(v, bool):
        return 1 if v else 0
    if isinstance(v, Char):
        return ord(v)
    if isinstance(v, int):
        return v
    if isinstance(v, (str, list)):
        return value_hash(v)
    raise TypeError(f"no categorical code for {v!r}")
