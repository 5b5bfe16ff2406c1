"""Small helpers for sets encoded as Python ints (bit i set = element i present)."""

from __future__ import annotations

from typing import Iterator


def popcount(mask: int) -> int:
    return mask.bit_count()


def members(mask: int) -> Iterator[int]:
    """Indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask`` in ascending numeric order, starting with 0."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def supermasks(mask: int, universe: int) -> Iterator[int]:
    """All supersets of ``mask`` inside ``universe``, ascending."""
    for extra in submasks(universe & ~mask):
        yield mask | extra


def compress(value: int, mask: int) -> int:
    """Pack the bits of ``value`` found at the positions of ``mask`` into the low bits."""
    out = 0
    for j, pos in enumerate(members(mask)):
        if value >> pos & 1:
            out |= 1 << j
    return out


def expand(code: int, mask: int) -> int:
    """Inverse of :func:`compress`: scatter the low bits of ``code`` onto ``mask``."""
    out = 0
    for j, pos in enumerate(members(mask)):
        if code >> j & 1:
            out |= 1 << pos
    return out


def check_width(mask: int, width: int, what: str) -> int:
    from .report import InputError

    if not isinstance(mask, int) or isinstance(mask, bool):
        raise InputError(f"{what}: expected an int bit set, got {type(mask).__name__}")
    if mask < 0 or mask >> width:
        raise InputError(f"{what}: bit set {mask:#x} does not fit width {width}")
    return mask
