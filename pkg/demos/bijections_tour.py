"""A tour of the three bijections, on concrete examples.

1. Mappings with a unique cyclic vertex are rooted trees read off the
   function: parent(v) = f(v), the fixed point is the root.
2. Arbitrary mappings become doubly-rooted trees by rewriting the
   permutation on the cyclic set as a head-to-tail path (edge rewiring).
3. Labelled trees correspond to Prufer words in [n]^(n-2), which is how
   one counts n^(n-2) trees without ever sampling.
"""

import itertools

from cayleykit import (
    Mapping,
    PruferSequence,
    joyal_decode,
    joyal_encode,
    mapping_to_rooted_tree,
    prufer_decode,
    prufer_encode,
    rooted_tree_to_mapping,
    tree_to_dot,
)

print("=== 1. unique-cyclic mapping <-> rooted tree ===")
m = Mapping(6, (3, 3, 3, 2, 4, 5))
tree = mapping_to_rooted_tree(m)
print(f"table {m.table} has the single loop at {tree.root}")
print(f"tree: root={tree.root}, parent={tree.parent}")
assert rooted_tree_to_mapping(tree) == m
print("round trip returns the original table\n")

print("=== 2. any mapping <-> doubly-rooted tree ===")
m = Mapping(7, (4, 1, 2, 2, 7, 5, 5))  # cyclic set {1, 2, 4} u {5, 7}
d = joyal_encode(m)
print(f"table {m.table}")
print(f"spine {d.spine()} (head {d.head}, tail {d.tail}), parent={d.tree.parent}")
assert joyal_decode(d) == m
print("decoding rebuilds the mapping exactly")

# the rewiring is a bijection, so counting mappings counts the trees:
n = 4
images = {
    (joyal_encode(mm).tree.parent, joyal_encode(mm).head)
    for mm in (Mapping(n, t) for t in itertools.product(range(1, n + 1), repeat=n))
}
print(f"n={n}: {n}^{n} = {n**n} mappings hit {len(images)} distinct (tree, head) pairs\n")

print("=== 3. labelled tree <-> Prufer word ===")
edges = [(1, 3), (2, 3), (3, 4), (4, 5)]
word = prufer_encode(5, edges)
print(f"edges {edges} encode to {word.seq}")
assert prufer_decode(word) == sorted(edges)
print("decoding returns the same edges")

n = 5
all_trees = {
    tuple(prufer_decode(PruferSequence(n, seq)))
    for seq in itertools.product(range(1, n + 1), repeat=n - 2)
}
print(f"decoding all {n}^{n-2} = {n ** (n - 2)} words gives {len(all_trees)} distinct trees")

print("\nDOT of the rooted tree from part 1:\n")
print(tree_to_dot(mapping_to_rooted_tree(Mapping(6, (3, 3, 3, 2, 4, 5)))))
