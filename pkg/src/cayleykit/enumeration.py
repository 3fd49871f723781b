"""Exhaustive brute-force oracles over all n^n mappings for small n.

Everything here is exact: counts are big integers, probability masses
are rationals, and no floating point is used.  The guards (n <= 8 for
counts, n <= 7 for the height pmf) keep full runs to a couple of
minutes at worst.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .bijection import prufer_decode, PruferSequence
from .core import Mapping

MAX_COUNT_N = 8
MAX_HEIGHT_N = 7


@dataclass(frozen=True)
class ExactCounts:
    """Exact tallies over all n^n mappings on [n]."""

    n: int
    total_mappings: int
    unique_cyclic: int
    labelled_trees: int
    by_cycle_count: dict[int, int]
    height_pmf: tuple[Fraction, ...] | None

    def to_json_dict(self) -> dict:
        d = {
            "n": self.n,
            "total": str(self.total_mappings),
            "unique_cyclic": str(self.unique_cyclic),
            "labelled_trees": str(self.labelled_trees),
            "by_cycle_count": {str(k): str(v) for k, v in sorted(self.by_cycle_count.items())},
        }
        if self.height_pmf is not None:
            d["height_pmf"] = [f"{p.numerator}/{p.denominator}" for p in self.height_pmf]
        return d


def enumerate_mappings(n: int, visitor: Callable[[Mapping], None]) -> None:
    """Invoke visitor once per mapping on [n], in lexicographic table order.

    Guarded to n <= 8 (8^8 is about 1.7e7 mappings); larger n is refused
    outright rather than silently grinding.
    """
    if not 1 <= n <= MAX_COUNT_N:
        raise ValueError(f"n={n} outside enumeration guard [1..{MAX_COUNT_N}]")
    for table in itertools.product(range(1, n + 1), repeat=n):
        visitor(Mapping(n, table))


def _cycle_stats(table0: tuple[int, ...], n: int) -> tuple[int, int, int]:
    """(num_cycles, num_cyclic, fixed_root) for a raw 0-based table.

    fixed_root is the unique cyclic vertex (0-based) when num_cyclic is
    1, else -1.  Lean enough to run over all 7^7 tables in seconds.
    """
    state = bytearray(n)
    num_cycles = 0
    num_cyclic = 0
    root = -1
    for s in range(n):
        if state[s]:
            continue
        walk = []
        v = s
        while state[v] == 0:
            state[v] = 1
            walk.append(v)
            v = table0[v]
        if state[v] == 1:
            num_cycles += 1
            root = v
            clen = 1
            w = table0[v]
            while w != v:
                clen += 1
                w = table0[w]
            num_cyclic += clen
        for w in walk:
            state[w] = 2
    if num_cyclic != 1:
        root = -1
    return num_cycles, num_cyclic, root


def _count_distinct_prufer_trees(n: int) -> int:
    """Decode every sequence in [n]^(n-2) and count distinct edge sets."""
    if n <= 2:
        return 1
    seen = set()
    for seq in itertools.product(range(1, n + 1), repeat=n - 2):
        edges = prufer_decode(PruferSequence(n, seq))
        seen.add(tuple(edges))
    return len(seen)


@lru_cache(maxsize=None)
def exact_counts(n: int) -> ExactCounts:
    """Exhaustively tally all n^n mappings.

    unique_cyclic counts mappings whose cyclic set is a single vertex;
    labelled_trees comes from Prufer-decode distinctness, a route that
    never looks at cycles, so the two counts check each other through
    the factor-of-n relation.  height_pmf (n <= 7 only) is the exact
    law of the height of a uniform vertex in a uniform rooted tree,
    tallied over every (rooted tree, vertex) pair.
    """
    if not 1 <= n <= MAX_COUNT_N:
        raise ValueError(f"n={n} outside enumeration guard [1..{MAX_COUNT_N}]")
    want_heights = n <= MAX_HEIGHT_N
    unique_cyclic = 0
    by_cycle_count: dict[int, int] = {}
    height_tally = [0] * n
    total = 0
    for table in itertools.product(range(n), repeat=n):
        total += 1
        num_cycles, num_cyclic, root = _cycle_stats(table, n)
        by_cycle_count[num_cycles] = by_cycle_count.get(num_cycles, 0) + 1
        if num_cyclic != 1:
            continue
        unique_cyclic += 1
        if not want_heights:
            continue
        # depths toward the fixed point, memoized along parent chains
        depth = [-1] * n
        depth[root] = 0
        for v in range(n):
            if depth[v] >= 0:
                continue
            chain = []
            w = v
            while depth[w] < 0:
                chain.append(w)
                w = table[w]
            d = depth[w]
            for u in reversed(chain):
                d += 1
                depth[u] = d
        for v in range(n):
            height_tally[depth[v]] += 1
    height_pmf = None
    if want_heights:
        pairs = unique_cyclic * n  # (rooted tree, vertex) pairs
        height_pmf = tuple(Fraction(c, pairs) for c in height_tally)
    return ExactCounts(
        n=n,
        total_mappings=total,
        unique_cyclic=unique_cyclic,
        labelled_trees=_count_distinct_prufer_trees(n),
        by_cycle_count=by_cycle_count,
        height_pmf=height_pmf,
    )


def exact_height_pmf(n: int) -> tuple[Fraction, ...]:
    """Exact law of the height of a uniform vertex in a uniform rooted tree.

    Entry h is the probability of height h, for h in 0..n-1; the mass
    sums to exactly 1.
    """
    if not 1 <= n <= MAX_HEIGHT_N:
        raise ValueError(f"n={n} outside height-pmf guard [1..{MAX_HEIGHT_N}]")
    pmf = exact_counts(n).height_pmf
    assert pmf is not None
    return pmf


def exact_collision_pmf(n: int) -> tuple[Fraction, ...]:
    """Law of the number of distinct uniform draws before the first repeat.

    P(C=k) = (k/n) * prod_{j=1}^{k-1} (1 - j/n) for k in 1..n: the first
    k draws are pairwise distinct and the next draw repeats one of the k
    values seen.  Entry k-1 of the result is P(C=k).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    probs = []
    running = Fraction(1)  # prod_{j=1}^{k-1} (1 - j/n)
    for k in range(1, n + 1):
        probs.append(running * Fraction(k, n))
        running *= Fraction(n - k, n)
    return tuple(probs)
