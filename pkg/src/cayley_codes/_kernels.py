"""Bitmask exact-cover kernels.

Sets of group elements are Python ints (bit ``i`` = element index ``i``).
Nothing here knows about groups beyond precomputed tile masks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence


class SearchAborted(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass
class Budget:
    max_nodes: Optional[int] = None
    deadline: Optional[float] = None
    nodes: int = 0
    _tick: int = field(default=0, repr=False)

    def step(self) -> None:
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise SearchAborted("max-nodes")
        if self.deadline is not None:
            self._tick += 1
            if self._tick >= 256:
                self._tick = 0
                if time.monotonic() > self.deadline:
                    raise SearchAborted("time-budget")


def exact_cover_translates(
    n: int,
    tiles: Sequence[int],
    placements: Sequence[Sequence[int]],
    start: int = 0,
    chosen: Sequence[int] = (),
    budget: Optional[Budget] = None,
) -> Iterator[tuple[int, ...]]:
    """All sets of tile ids whose tiles partition ``{0..n-1}``.

    ``tiles[c]`` is the mask of tile ``c`` and ``placements[g]`` lists the
    tiles containing element ``g``.  Branches on the uncovered element with
    the fewest available tiles, least element first on ties.  ``start`` and
    ``chosen`` describe tiles already placed.
    """
    full = (1 << n) - 1
    budget = budget or Budget()
    chosen = list(chosen)

    def rec(covered: int):
        budget.step()
        if covered == full:
            yield tuple(sorted(chosen))
            return
        best_g, best = -1, None
        free = ~covered & full
        while free:
            low = free & -free
            g = low.bit_length() - 1
            free ^= low
            opts = [c for c in placements[g] if not tiles[c] & covered]
            if best is None or len(opts) < len(best):
                best_g, best = g, opts
                if len(opts) <= 1:
                    break
        for c in best:
            chosen.append(c)
            yield from rec(covered | tiles[c])
            chosen.pop()

    yield from rec(start)


def rotations(mask: int, n: int) -> list[int]:
    """``rotations(mask, n)[c]`` is the mask of the cyclic translate by ``c``."""
    full = (1 << n) - 1
    out = [mask]
    for c in range(1, n):
        out.append(((mask << c) | (mask >> (n - c))) & full)
    return out


def bits_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def cyclic_tiles_with_zero(n: int, bmask: int, tiles: Optional[list[int]] = None) -> bool:
    """Whether translates of ``bmask`` tile ``Z_n`` using the translate by 0.

    Branches on the least uncovered element, which is the classical order for
    cyclic tilings and is much cheaper per node than the minimum-count rule.
    """
    full = (1 << n) - 1
    if tiles is None:
        tiles = rotations(bmask, n)
    bl = bits_of(bmask)

    def rec(covered: int) -> bool:
        if covered == full:
            return True
        g = (~covered & (covered + 1)).bit_length() - 1
        for b in bl:
            t = tiles[(g - b) % n]
            if not t & covered and rec(covered | t):
                return True
        return False

    return rec(tiles[0])


def cyclic_symmetric_partners(n: int, cmask: int, with_zero: bool) -> list[int]:
    """Every inverse-closed ``B`` with ``B (+) C = Z_n``, as masks.

    ``B`` contains 0 when ``with_zero`` and avoids it otherwise. Each choice of
    a nonzero ``b`` also places ``-b``.
    """
    full = (1 << n) - 1
    tiles = rotations(cmask, n)
    cl = bits_of(cmask)
    out: list[int] = []

    def unit(b: int) -> Optional[tuple[int, int]]:
        nb = (-b) % n
        if nb == b:
            return tiles[b], 1 << b
        if tiles[b] & tiles[nb]:
            return None
        return tiles[b] | tiles[nb], (1 << b) | (1 << nb)

    units = [unit(b) for b in range(n)]

    def rec(covered: int, bmask: int):
        if covered == full:
            out.append(bmask)
            return
        g = (~covered & (covered + 1)).bit_length() - 1
        for c in cl:
            b = (g - c) % n
            if b == 0:
                continue
            u = units[b]
            if u is None or u[0] & covered:
                continue
            rec(covered | u[0], bmask | u[1])

    if with_zero:
        rec(tiles[0], 1)
    else:
        rec(0, 0)
    return out


def cyclic_complements_with_zero(n: int, bmask: int) -> list[int]:
    """Every ``C`` containing 0 with ``B (+) C = Z_n``, as masks."""
    full = (1 << n) - 1
    tiles = rotations(bmask, n)
    bl = bits_of(bmask)
    out: list[int] = []

    def rec(covered: int, cmask: int):
        if covered == full:
            out.append(cmask)
            return
        g = (~covered & (covered + 1)).bit_length() - 1
        for b in bl:
            c = (g - b) % n
            t = tiles[c]
            if not t & covered:
                rec(covered | t, cmask | (1 << c))

    rec(tiles[0], 1)
    return out


def cyclic_translates(n: int, cmask: int) -> set[int]:
    return set(rotations(cmask, n))
