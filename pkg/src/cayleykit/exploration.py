"""Round-based edge-reveal exploration of a mapping's digraph.

The procedure repeatedly picks an unexplored start vertex and reveals
f(V), f(f(V)), ... until the walk lands on a vertex whose out-edge is
already revealed.  Each such round ends in one of three ways: the final
edge is a self loop, it closes back into the current round's path
(creating a new cycle either way), or it attaches to a vertex explored
in an earlier round (creating none).

Writing T_i for the cumulative number of explored vertices after round
i and K for the number of rounds, the mapping has a unique cyclic
vertex exactly when round 1 ends in a self loop and every later round
attaches to earlier rounds; the per-round chances of that are 1/T_1 and
T_{i-1}/T_i, whose product telescopes to 1/T_K = 1/n regardless of how
the rounds split up.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

from .core import Mapping, cycle_structure, unique_cyclic_vertex


class Closure(str, Enum):
    """How a round's final revealed edge terminated the walk."""

    SELF_LOOP = "SelfLoop"
    IN_ROUND = "InRound"
    PRIOR_ROUND = "PriorRound"


class SelectionStrategy:
    """Deterministic rule for choosing each round's start vertex.

    A strategy produces a preference order over [1..n]; each round
    starts at the first not-yet-explored vertex in that order.
    """

    def start_order(self, n: int) -> Sequence[int]:
        raise NotImplementedError


class SmallestLabel(SelectionStrategy):
    """Always start the next round at the smallest unexplored label."""

    def start_order(self, n: int) -> Sequence[int]:
        return range(1, n + 1)

    def __repr__(self):
        return "SmallestLabel()"


@dataclass(frozen=True)
class FixedOrder(SelectionStrategy):
    """Start rounds following a caller-supplied permutation of [1..n]."""

    order: tuple[int, ...]

    def start_order(self, n: int) -> Sequence[int]:
        if sorted(self.order) != list(range(1, n + 1)):
            raise ValueError(f"order is not a permutation of [1..{n}]")
        return self.order


@dataclass(frozen=True)
class SeededRandomOrder(SelectionStrategy):
    """Start rounds in a pseudorandom order determined by a seed."""

    seed: int

    def start_order(self, n: int) -> Sequence[int]:
        order = list(range(1, n + 1))
        random.Random(self.seed).shuffle(order)
        return order


@dataclass(frozen=True)
class RoundRecord:
    """One round of the procedure.

    ``path`` lists the vertices explored this round in reveal order
    (starting at the round's start vertex); ``closing_edge`` is the
    final revealed edge, whose source is the last path vertex.
    """

    index: int
    start: int
    path: tuple[int, ...]
    closing_edge: tuple[int, int]
    closure: Closure


@dataclass(frozen=True)
class ExplorationTrace:
    """Full record of an exploration: rounds, cumulative counts, K."""

    n: int
    rounds: tuple[RoundRecord, ...]
    T: tuple[int, ...]
    K: int

    def __post_init__(self):
        if self.K != len(self.rounds) or self.K != len(self.T):
            raise ValueError("K must equal the number of rounds and len(T)")
        if any(b <= a for a, b in zip(self.T, self.T[1:])):
            raise ValueError("T must be strictly increasing")
        if self.T and self.T[-1] != self.n:
            raise ValueError(f"T_K={self.T[-1]} must equal n={self.n}")

    def revealed_edges(self) -> list[tuple[int, int]]:
        """All revealed edges (v, f(v)) in reveal order."""
        out = []
        for r in self.rounds:
            for a, b in zip(r.path, r.path[1:]):
                out.append((a, b))
            out.append(r.closing_edge)
        return out

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "K": self.K,
            "T": list(self.T),
            "rounds": [
                {
                    "start": r.start,
                    "path": list(r.path),
                    "closing_edge": list(r.closing_edge),
                    "closure": r.closure.value,
                }
                for r in self.rounds
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "ExplorationTrace":
        try:
            rounds = tuple(
                RoundRecord(
                    index=i + 1,
                    start=int(r["start"]),
                    path=tuple(int(x) for x in r["path"]),
                    closing_edge=(int(r["closing_edge"][0]), int(r["closing_edge"][1])),
                    closure=Closure(r["closure"]),
                )
                for i, r in enumerate(d["rounds"])
            )
            return cls(int(d["n"]), rounds, tuple(int(t) for t in d["T"]), int(d["K"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"invalid trace JSON: {exc}") from exc


def explore(m: Mapping, strategy: SelectionStrategy | None = None) -> ExplorationTrace:
    """Run the reveal procedure on m and record the full trace.

    Deterministic given (m, strategy); every vertex lands in exactly one
    round's path, so the trace reconstructs the mapping edge for edge.
    """
    if strategy is None:
        strategy = SmallestLabel()
    n = m.n
    table = m.table
    round_of = [0] * n  # round index at which each vertex was explored
    order = iter(strategy.start_order(n))
    rounds: list[RoundRecord] = []
    T: list[int] = []
    total = 0
    while total < n:
        start = next(order)
        while round_of[start - 1]:
            start = next(order)
        i = len(rounds) + 1
        path = []
        v = start
        while True:
            path.append(v)
            round_of[v - 1] = i
            w = table[v - 1]
            if round_of[w - 1]:
                break
            v = w
        if w == v:
            closure = Closure.SELF_LOOP
        elif round_of[w - 1] == i:
            closure = Closure.IN_ROUND
        else:
            closure = Closure.PRIOR_ROUND
        total += len(path)
        T.append(total)
        rounds.append(RoundRecord(i, start, tuple(path), (v, w), closure))
    return ExplorationTrace(n, tuple(rounds), tuple(T), len(rounds))


def reconstruct_mapping(t: ExplorationTrace) -> Mapping:
    """Rebuild the explored mapping from the trace's revealed edges."""
    table = [0] * t.n
    for v, w in t.revealed_edges():
        table[v - 1] = w
    return Mapping(t.n, tuple(table))


def has_unique_cyclic_from_trace(t: ExplorationTrace) -> bool:
    """Trace-level criterion for a unique cyclic vertex.

    True exactly when round 1 closes with a self loop and every later
    round attaches to previously explored rounds; any in-round closure
    (or a later self loop) creates an extra cycle.
    """
    if t.rounds[0].closure is not Closure.SELF_LOOP:
        return False
    return all(r.closure is Closure.PRIOR_ROUND for r in t.rounds[1:])


def cycle_count_from_trace(t: ExplorationTrace) -> int:
    """Number of cycles seen by the trace: one per cycle-creating closure."""
    return sum(
        1 for r in t.rounds if r.closure in (Closure.SELF_LOOP, Closure.IN_ROUND)
    )


def telescoping_probability(T: Sequence[int]) -> Fraction:
    """Evaluate (1/T_1) * prod_{i>=2} T_{i-1}/T_i in exact arithmetic.

    The factors cancel pairwise, so the value is identically 1/T_K; the
    product is still computed factor by factor so that equality is a
    verified outcome rather than an assumption.
    """
    T = tuple(T)
    if not T:
        raise ValueError("T must be non-empty")
    if T[0] < 1 or any(b <= a for a, b in zip(T, T[1:])):
        raise ValueError("T must be positive and strictly increasing")
    prob = Fraction(1, T[0])
    for prev, cur in zip(T, T[1:]):
        prob *= Fraction(prev, cur)
    return prob


def conditional_event_probabilities(
    t: ExplorationTrace | Sequence[int],
) -> tuple[Fraction, ...]:
    """Per-round predicted chances of the unique-cyclic round events.

    Round 1 must close with a self loop (chance 1/T_1); round i >= 2
    must attach to the T_{i-1} previously explored vertices (chance
    T_{i-1}/T_i).  Accepts a trace or a bare cumulative-count sequence.
    """
    T = tuple(t.T) if isinstance(t, ExplorationTrace) else tuple(t)
    if not T:
        raise ValueError("T must be non-empty")
    probs = [Fraction(1, T[0])]
    for prev, cur in zip(T, T[1:]):
        probs.append(Fraction(prev, cur))
    return tuple(probs)


def trace_to_dot(t: ExplorationTrace, *, name: str = "trace") -> str:
    """DOT rendering of the explored digraph with reveal order as labels."""
    m = reconstruct_mapping(t)
    cs = cycle_structure(m)
    reveal_time = {edge: i + 1 for i, edge in enumerate(t.revealed_edges())}
    lines = [f"digraph {name} {{"]
    for v in range(1, t.n + 1):
        if cs.cyclic[v - 1]:
            lines.append(f"  {v} [peripheries=2];")
        else:
            lines.append(f"  {v};")
    for v in range(1, t.n + 1):
        w = m.table[v - 1]
        lines.append(f'  {v} -> {w} [label="{reveal_time[(v, w)]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def agrees_with_cycle_analysis(m: Mapping, strategy: SelectionStrategy) -> bool:
    """Cross-check the trace verdicts against direct cycle analysis."""
    t = explore(m, strategy)
    direct_unique = unique_cyclic_vertex(m) is not None
    direct_cycles = cycle_structure(m).num_cycles
    return (
        has_unique_cyclic_from_trace(t) == direct_unique
        and cycle_count_from_trace(t) == direct_cycles
    )
