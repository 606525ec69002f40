"""Element sets of a fixed ring, stored as Python ``int`` bitmasks.

Bit ``i`` set means element index ``i`` is a member.  Ints are immutable and
hashable, which makes them convenient keys when deduplicating ideals; the
numeric kernels work on boolean arrays, so conversions live here.
"""

from __future__ import annotations

from typing import Iterable

import numpy as np


def from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << int(i)
    return mask


def from_flags(flags: np.ndarray) -> int:
    packed = np.packbits(np.asarray(flags, dtype=np.bool_), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def to_flags(mask: int, width: int) -> np.ndarray:
    raw = np.frombuffer(mask.to_bytes((width + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:width].astype(np.bool_)


def to_indices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def size(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0
