"""Kauffman states on the surface and their homological data.

A state is an int mask: bit ``i`` set means a B-smoothing at crossing ``i``.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

from .gauss import Diagram
from .linalg import GF2Matrix, quotient_rank, rank_rows
from .surface import H1Presentation, RibbonSurface

# slot pairings, slots counterclockwise from the incoming under-dart
A_PAIRS = ((0, 1), (2, 3))
B_PAIRS = ((0, 3), (1, 2))

DEFAULT_MAX_CROSSINGS = 28


def _mate_table(pairs) -> tuple[int, int, int, int]:
    mate = [0] * 4
    for a, b in pairs:
        mate[a], mate[b] = b, a
    return tuple(mate)


A_MATE = _mate_table(A_PAIRS)
B_MATE = _mate_table(B_PAIRS)


class StateCapError(ValueError):
    """Too many crossings for exhaustive state enumeration."""


@dataclass(frozen=True)
class State:
    mask: int
    n: int
    cycles: tuple[int, ...]  # edge chains, crossingless circles excluded
    size: int  # |S|, circles included
    r: int

    @property
    def a(self) -> int:
        return self.n - self.b

    @property
    def b(self) -> int:
        return bin(self.mask).count("1")

    @property
    def k(self) -> int:
        return self.size - self.r

    def word(self) -> str:
        return "".join("B" if (self.mask >> i) & 1 else "A" for i in range(self.n))


def smooth(d: Diagram, mask: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Dart pairings at every crossing for the given state."""
    out = []
    for c in range(d.n):
        pairs = B_PAIRS if (mask >> c) & 1 else A_PAIRS
        out.append(tuple((4 * c + x, 4 * c + y) for x, y in pairs))
    return out


def state_cycles(d: Diagram, mask: int) -> list[int]:
    """Trace the state curves; each is returned as its set of edges."""
    nd = d.num_darts
    seen = bytearray(nd)
    partner, edge_of = d.partner, d.edge_of
    cycles = []
    for start in range(nd):
        if seen[start]:
            continue
        chain = 0
        x = start
        while not seen[x]:
            p = partner[x]
            seen[x] = seen[p] = 1
            chain |= 1 << edge_of[x]
            c = p >> 2
            mate = B_MATE if (mask >> c) & 1 else A_MATE
            x = (p & ~3) | mate[p & 3]
        cycles.append(chain)
    return cycles


def state_data(d: Diagram, surface: RibbonSurface, h1: H1Presentation, mask: int) -> State:
    cycles = state_cycles(d, mask)
    ne = d.num_edges
    r = quotient_rank(
        GF2Matrix(tuple(h1.b1_basis), ne), GF2Matrix(tuple(cycles), ne)
    )
    return State(mask, d.n, tuple(cycles), len(cycles) + d.n_circles, r)


def dual_state(mask: int, n: int) -> int:
    return ~mask & ((1 << n) - 1)


def seifert_state(d: Diagram) -> int:
    """A at positive crossings, B at negative ones."""
    return sum(1 << c for c, s in enumerate(d.signs) if s < 0)


def check_cap(d: Diagram, max_crossings: int | None) -> None:
    cap = DEFAULT_MAX_CROSSINGS if max_crossings is None else max_crossings
    if d.n > cap:
        raise StateCapError(f"{d.n} crossings exceeds the enumeration cap of {cap}")


def enumerate_states(
    d: Diagram,
    surface: RibbonSurface,
    h1: H1Presentation,
    max_crossings: int | None = None,
) -> Iterator[State]:
    """All 2^n states in increasing mask order."""
    check_cap(d, max_crossings)
    for mask in range(1 << d.n):
        yield state_data(d, surface, h1, mask)


# ---------------------------------------------------------------- fast path
#
# The bracket only needs the histogram of (a - b, k, r) over all states.
# Workers take disjoint mask ranges; histograms add, so the result does not
# depend on how the range is split.

def _tally_range(args) -> Counter:
    n, n_circles, partner, edge_of, projection, lo, hi = args
    nd = 4 * n
    tally: Counter = Counter()
    for mask in range(lo, hi):
        seen = bytearray(nd)
        size = n_circles
        pivots: dict[int, int] = {}
        for start in range(nd):
            if seen[start]:
                continue
            chain = 0
            x = start
            while not seen[x]:
                p = partner[x]
                seen[x] = seen[p] = 1
                chain |= 1 << edge_of[x]
                mate = B_MATE if (mask >> (p >> 2)) & 1 else A_MATE
                x = (p & ~3) | mate[p & 3]
            size += 1
            if projection:
                v = 0
                for j, phi in enumerate(projection):
                    if bin(phi & chain).count("1") & 1:
                        v |= 1 << j
                while v:
                    lead = v.bit_length() - 1
                    piv = pivots.get(lead)
                    if piv is None:
                        pivots[lead] = v
                        break
                    v ^= piv
        r = len(pivots)
        b = bin(mask).count("1")
        tally[(n - 2 * b, size - r, r)] += 1
    return tally


def worker_count() -> int:
    raw = os.environ.get("SURFJONES_WORKERS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def state_histogram(
    d: Diagram,
    h1: H1Presentation,
    workers: int | None = None,
    max_crossings: int | None = None,
) -> Counter:
    """Histogram of ``(a - b, k, r)`` over all states."""
    check_cap(d, max_crossings)
    total = 1 << d.n
    workers = worker_count() if workers is None else max(1, workers)
    base = (d.n, d.n_circles, d.partner, d.edge_of, h1.projection)
    if workers == 1 or total < 4096:
        return _tally_range(base + (0, total))
    chunk = -(-total // (workers * 4))
    jobs = [base + (lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    tally: Counter = Counter()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_tally_range, jobs):
            tally.update(part)
    return tally


def homological_rank(h1: H1Presentation, cycles) -> int:
    """Rank of the classes of ``cycles`` computed through the H_1 projection."""
    return rank_rows(h1.coordinates(c) for c in cycles)
