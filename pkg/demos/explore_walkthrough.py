"""Walk through the round-based exploration of a mapping, step by step.

A mapping f: [n] -> [n] draws one out-edge per vertex.  We reveal those
edges lazily: pick an unexplored vertex, follow f until we land on
territory we have already seen, write down how the round ended, repeat.
The script prints every round, the cumulative counts T_i, and the
telescoping product of the per-round probabilities, which always
collapses to exactly 1/n.
"""

from fractions import Fraction

from cayleykit import (
    Mapping,
    SeededRandomOrder,
    SmallestLabel,
    conditional_event_probabilities,
    explore,
    mapping_to_dot,
    telescoping_probability,
)

# a hand-picked mapping on 10 vertices with two cycles: the loop at 7
# and the 3-cycle (2 5 9)
m = Mapping(10, (5, 5, 2, 7, 9, 4, 7, 3, 2, 6))
print("mapping table:", dict(enumerate(m.table, start=1)))

for strategy in (SmallestLabel(), SeededRandomOrder(7)):
    print(f"\n=== exploring with {strategy!r} ===")
    trace = explore(m, strategy)
    for r in trace.rounds:
        print(
            f"round {r.index}: start {r.start}, "
            f"path {'-'.join(map(str, r.path))}, "
            f"closing edge {r.closing_edge[0]}->{r.closing_edge[1]} "
            f"({r.closure.value})"
        )
    print("cumulative counts T:", trace.T, "rounds K:", trace.K)

    probs = conditional_event_probabilities(trace)
    pretty = " * ".join(str(p) for p in probs)
    product = Fraction(1)
    for p in probs:
        product *= p
    print(f"per-round unique-cyclic chances: {pretty} = {product}")
    assert product == telescoping_probability(trace.T) == Fraction(1, m.n)

# the round splits differ between strategies, the product never does
print("\nDOT of the functional graph (cyclic vertices doubled):\n")
print(mapping_to_dot(m))
