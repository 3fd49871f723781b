"""Bijections between mappings, rooted trees, and tree codes.

Three correspondences, each with both directions and exact round-trip
guarantees:

* mappings with a unique cyclic vertex <-> rooted trees on [n], by
  reading parent pointers off the function (and back);
* arbitrary mappings <-> doubly-rooted trees (a tree plus an ordered
  head/tail pair), by rewriting the permutation induced on the cyclic
  set as a path, the classical edge-rewiring trick;
* labelled trees <-> Prufer sequences in [n]^(n-2), kept here as an
  independent counting witness for the number of trees.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .core import NO_PARENT, Mapping, RootedTree, cycle_structure, unique_cyclic_vertex


@dataclass(frozen=True)
class DoublyRootedTree:
    """A rooted tree with a distinguished head vertex.

    The parent-array root acts as the tail; head and tail may coincide.
    The head-to-tail parent path is the spine.
    """

    tree: RootedTree
    head: int

    def __post_init__(self):
        if not 1 <= self.head <= self.tree.n:
            raise ValueError(f"head {self.head} out of range [1..{self.tree.n}]")

    @property
    def n(self) -> int:
        return self.tree.n

    @property
    def tail(self) -> int:
        return self.tree.root

    def spine(self) -> tuple[int, ...]:
        """Vertices on the head-to-tail parent path, head first."""
        path = [self.head]
        while path[-1] != self.tail:
            path.append(self.tree.parent[path[-1] - 1])
        return tuple(path)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "head": self.head,
            "tail": self.tail,
            "parent": list(self.tree.parent),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "DoublyRootedTree":
        try:
            n = int(d["n"])
            head = int(d["head"])
            tail = int(d["tail"])
            parent = tuple(int(x) for x in d["parent"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"invalid doubly-rooted tree JSON: {exc}") from exc
        return cls(RootedTree(n, tail, parent), head)


@dataclass(frozen=True)
class PruferSequence:
    """A word of length max(n-2, 0) over [1..n]."""

    n: int
    seq: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not isinstance(self.seq, tuple):
            object.__setattr__(self, "seq", tuple(self.seq))
        expected = max(self.n - 2, 0)
        if len(self.seq) != expected:
            raise ValueError(
                f"sequence length {len(self.seq)}, expected {expected} for n={self.n}"
            )
        for x in self.seq:
            if not 1 <= x <= self.n:
                raise ValueError(f"sequence entry {x} out of range [1..{self.n}]")

    def to_json_dict(self) -> dict:
        return {"n": self.n, "seq": list(self.seq)}

    @classmethod
    def from_json_dict(cls, d: dict) -> "PruferSequence":
        try:
            return cls(int(d["n"]), tuple(int(x) for x in d["seq"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"invalid Prufer JSON: {exc}") from exc


def mapping_to_rooted_tree(m: Mapping) -> RootedTree:
    """Read a mapping with a unique cyclic vertex as a rooted tree.

    The unique cyclic vertex (a fixed point) becomes the root; every
    other vertex keeps f(v) as its parent, so all edges point toward
    the root.
    """
    root = unique_cyclic_vertex(m)
    if root is None:
        cs = cycle_structure(m)
        raise ValueError(
            f"mapping has {cs.num_cycles} cycles "
            f"({sum(cs.cyclic)} cyclic vertices); a unique cyclic vertex is required"
        )
    parent = list(m.table)
    parent[root - 1] = NO_PARENT
    return RootedTree(m.n, root, tuple(parent))


def rooted_tree_to_mapping(t: RootedTree) -> Mapping:
    """Inverse direction: the root becomes a fixed point."""
    table = list(t.parent)
    table[t.root - 1] = t.root
    return Mapping(t.n, tuple(table))


def joyal_encode(m: Mapping) -> DoublyRootedTree:
    """Rewire any mapping into a doubly-rooted tree.

    Let S = {s_1 < ... < s_k} be the cyclic set; f restricted to S is a
    permutation.  Its one-line notation (f(s_1), ..., f(s_k)) becomes
    the spine: head f(s_1), tail f(s_k), each spine vertex's parent the
    next one.  Non-cyclic vertices keep f(v) as parent.  The spine
    vertex set is exactly S, so the cyclic set survives the rewiring.
    """
    cs = cycle_structure(m)
    cyclic_sorted = cs.cyclic_vertices  # already in increasing order
    spine = tuple(m.table[s - 1] for s in cyclic_sorted)
    parent = list(m.table)
    for cur, nxt in zip(spine, spine[1:]):
        parent[cur - 1] = nxt
    parent[spine[-1] - 1] = NO_PARENT
    return DoublyRootedTree(RootedTree(m.n, spine[-1], tuple(parent)), spine[0])


def joyal_decode(d: DoublyRootedTree) -> Mapping:
    """Inverse rewiring: spine back to the cyclic permutation.

    Reading the spine as (q_1, ..., q_k) and its vertex set sorted as
    s_1 < ... < s_k, set f(s_j) = q_j; off the spine f(v) is the parent.
    """
    spine = d.spine()
    table = list(d.tree.parent)
    for s, q in zip(sorted(spine), spine):
        table[s - 1] = q
    return Mapping(d.n, tuple(table))


def _normalize_edges(n: int, edges) -> list[tuple[int, int]]:
    out = []
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (1 <= u <= n and 1 <= v <= n):
            raise ValueError(f"edge ({u},{v}) out of range [1..{n}]")
        if u == v:
            raise ValueError(f"not a tree: self-loop at {u}")
        out.append((u, v) if u < v else (v, u))
    return out


def _validate_tree(n: int, edges: list[tuple[int, int]]) -> None:
    if len(edges) != n - 1:
        raise ValueError(f"not a tree: {len(edges)} edges, expected {n - 1}")
    if len(set(edges)) != len(edges):
        raise ValueError("not a tree: duplicate edge")
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            raise ValueError(f"not a tree: cycle found through edge ({u},{v})")
        parent[ru] = rv
    roots = {find(v) for v in range(1, n + 1)}
    if len(roots) > 1:
        raise ValueError("not a tree: disconnected")


def prufer_encode(n: int, edges) -> PruferSequence:
    """Encode a labelled tree as its Prufer sequence.

    Smallest-leaf convention: repeatedly delete the lowest-labelled
    leaf and record its neighbour, until two vertices remain.
    """
    edges = _normalize_edges(n, edges)
    _validate_tree(n, edges)
    if n <= 2:
        return PruferSequence(n, ())
    adj: list[set[int]] = [set() for _ in range(n + 1)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    leaves = [v for v in range(1, n + 1) if len(adj[v]) == 1]
    heapq.heapify(leaves)
    seq = []
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        neighbour = adj[leaf].pop()
        seq.append(neighbour)
        adj[neighbour].discard(leaf)
        if len(adj[neighbour]) == 1:
            heapq.heappush(leaves, neighbour)
    return PruferSequence(n, tuple(seq))


def prufer_decode(p: PruferSequence) -> list[tuple[int, int]]:
    """Decode a Prufer sequence into a labelled tree's edge list.

    Degree-count decoding: a vertex's degree is one plus its number of
    occurrences; the lowest-labelled current leaf pairs with the next
    sequence entry.  Returns edges as sorted (min, max) pairs.
    """
    n = p.n
    if n == 1:
        return []
    degree = [1] * (n + 1)
    for x in p.seq:
        degree[x] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in p.seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x) if leaf < x else (x, leaf))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v) if u < v else (v, u))
    return sorted(edges)


def tree_edges(t: RootedTree) -> list[tuple[int, int]]:
    """Undirected edge list of a rooted tree, as sorted (min, max) pairs."""
    out = []
    for v in range(1, t.n + 1):
        if v != t.root:
            p = t.parent[v - 1]
            out.append((v, p) if v < p else (p, v))
    return sorted(out)
