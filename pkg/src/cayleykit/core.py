"""Mappings [n] -> [n], their functional digraphs, and rooted trees.

A mapping f on [n] = {1, ..., n} defines the directed graph with one
out-edge (v, f(v)) per vertex.  Every vertex's iterated walk eventually
enters a directed cycle; the vertices lying on cycles are the *cyclic*
vertices.  Mappings whose cyclic set is a single vertex r (necessarily a
fixed point) correspond to trees on [n] rooted at r with edges oriented
toward the root.
"""

from __future__ import annotations

from dataclasses import dataclass

#: Marker used in parent arrays (and their JSON form) for the root's slot.
NO_PARENT = 0


@dataclass(frozen=True)
class Mapping:
    """A total function f: [n] -> [n], stored as a 1-based lookup table.

    ``table[v-1]`` holds f(v).  Instances are immutable and validated on
    construction.
    """

    n: int
    table: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not isinstance(self.table, tuple):
            object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.n:
            raise ValueError(
                f"table has {len(self.table)} entries, expected n={self.n}"
            )
        for v, image in enumerate(self.table, start=1):
            if not 1 <= image <= self.n:
                raise ValueError(
                    f"table entry f({v})={image} out of range [1..{self.n}]"
                )

    def apply(self, v: int) -> int:
        """Return f(v) for a 1-based vertex v."""
        if not 1 <= v <= self.n:
            raise ValueError(f"vertex {v} out of range [1..{self.n}]")
        return self.table[v - 1]

    def edges(self) -> list[tuple[int, int]]:
        """All directed edges (v, f(v)) in vertex order."""
        return [(v, self.table[v - 1]) for v in range(1, self.n + 1)]

    def to_json_dict(self) -> dict:
        return {"n": self.n, "table": list(self.table)}

    @classmethod
    def from_json_dict(cls, d: dict) -> "Mapping":
        try:
            n = int(d["n"])
            table = tuple(int(x) for x in d["table"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"invalid mapping JSON: {exc}") from exc
        return cls(n, table)


@dataclass(frozen=True)
class CycleStructure:
    """Cyclic vertices and cycle decomposition of a mapping's digraph.

    ``cyclic[v-1]`` says whether v lies on a cycle; ``cycle_id[v-1]`` is
    the index into ``cycles`` for cyclic vertices and None otherwise.
    Each cycle is listed in traversal order, f(c_j) = c_{j+1 mod len}.
    """

    cyclic: tuple[bool, ...]
    cycle_id: tuple[int | None, ...]
    cycles: tuple[tuple[int, ...], ...]
    num_cycles: int

    @property
    def cyclic_vertices(self) -> tuple[int, ...]:
        return tuple(v for v in range(1, len(self.cyclic) + 1) if self.cyclic[v - 1])


@dataclass(frozen=True)
class RootedTree:
    """A tree on [n] with edges oriented toward a designated root.

    ``parent[v-1]`` is the parent of v, with ``NO_PARENT`` (0) in the
    root's slot.  Construction verifies that parent-following from every
    vertex reaches the root, i.e. the structure is a connected acyclic
    in-tree.
    """

    n: int
    root: int
    parent: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not isinstance(self.parent, tuple):
            object.__setattr__(self, "parent", tuple(self.parent))
        if not 1 <= self.root <= self.n:
            raise ValueError(f"root {self.root} out of range [1..{self.n}]")
        if len(self.parent) != self.n:
            raise ValueError(
                f"parent array has {len(self.parent)} entries, expected n={self.n}"
            )
        for v, p in enumerate(self.parent, start=1):
            if v == self.root:
                if p != NO_PARENT:
                    raise ValueError(f"root {v} must have parent marker {NO_PARENT}")
            elif not 1 <= p <= self.n:
                raise ValueError(f"parent of {v} is {p}, out of range [1..{self.n}]")
        # reached[v-1]: parent chain from v is known to end at the root
        reached = [False] * self.n
        reached[self.root - 1] = True
        for v in range(1, self.n + 1):
            chain = []
            w = v
            while not reached[w - 1]:
                chain.append(w)
                w = self.parent[w - 1]
                if len(chain) > self.n:
                    raise ValueError("parent pointers contain a cycle")
            for u in chain:
                reached[u - 1] = True

    def depth(self, v: int) -> int:
        """Edge-distance from v to the root (the root has depth 0)."""
        if not 1 <= v <= self.n:
            raise ValueError(f"vertex {v} out of range [1..{self.n}]")
        d = 0
        while v != self.root:
            v = self.parent[v - 1]
            d += 1
        return d

    def depths(self) -> list[int]:
        """Edge-distance to the root for every vertex, computed in O(n)."""
        out = [-1] * self.n
        out[self.root - 1] = 0
        for v in range(1, self.n + 1):
            chain = []
            w = v
            while out[w - 1] < 0:
                chain.append(w)
                w = self.parent[w - 1]
            d = out[w - 1]
            for u in reversed(chain):
                d += 1
                out[u - 1] = d
        return out

    def to_json_dict(self) -> dict:
        return {"n": self.n, "root": self.root, "parent": list(self.parent)}

    @classmethod
    def from_json_dict(cls, d: dict) -> "RootedTree":
        try:
            n = int(d["n"])
            root = int(d["root"])
            parent = tuple(int(x) for x in d["parent"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"invalid rooted-tree JSON: {exc}") from exc
        return cls(n, root, parent)


def iterate(m: Mapping, v: int, k: int) -> int:
    """Apply f to v exactly k times; k=0 returns v.

    Runs in O(min(k, n)): once the walk revisits a vertex the remaining
    steps are reduced modulo the cycle length.
    """
    if not 1 <= v <= m.n:
        raise ValueError(f"vertex {v} out of range [1..{m.n}]")
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    table = m.table
    first_seen: dict[int, int] = {}
    cur = v
    step = 0
    while step < k:
        if cur in first_seen:
            mu = first_seen[cur]
            lam = step - mu
            for _ in range((k - mu) % lam):
                cur = table[cur - 1]
            return cur
        first_seen[cur] = step
        cur = table[cur - 1]
        step += 1
    return cur


def cycle_structure(m: Mapping) -> CycleStructure:
    """Compute the cyclic set and cycle decomposition in O(n).

    Uses three-state marking (unvisited / on the current walk / finished):
    a walk that runs into its own tail has discovered a new cycle, a walk
    that hits finished territory contributes only tree vertices.
    """
    n = m.n
    table = m.table
    state = bytearray(n)  # 0 unvisited, 1 on current walk, 2 finished
    cyclic = [False] * n
    cycle_id: list[int | None] = [None] * n
    cycles: list[tuple[int, ...]] = []
    for s in range(1, n + 1):
        if state[s - 1]:
            continue
        walk = []
        v = s
        while state[v - 1] == 0:
            state[v - 1] = 1
            walk.append(v)
            v = table[v - 1]
        if state[v - 1] == 1:
            cyc = [v]
            w = table[v - 1]
            while w != v:
                cyc.append(w)
                w = table[w - 1]
            cid = len(cycles)
            cycles.append(tuple(cyc))
            for u in cyc:
                cyclic[u - 1] = True
                cycle_id[u - 1] = cid
        for w in walk:
            state[w - 1] = 2
    return CycleStructure(tuple(cyclic), tuple(cycle_id), tuple(cycles), len(cycles))


def unique_cyclic_vertex(m: Mapping) -> int | None:
    """Return the unique cyclic vertex, or None when there are several.

    A mapping has a single cyclic vertex r exactly when r is its only
    fixed point and no other cycle exists, so the check counts fixed
    points first and then walks the remaining vertices looking for a
    second cycle.  O(n), and cheap on the frequent rejection paths.
    """
    n = m.n
    table = m.table
    root = 0
    for v in range(1, n + 1):
        if table[v - 1] == v:
            if root:
                return None
            root = v
    if not root:
        return None
    state = bytearray(n)
    state[root - 1] = 2
    for s in range(1, n + 1):
        if state[s - 1]:
            continue
        walk = []
        v = s
        while state[v - 1] == 0:
            state[v - 1] = 1
            walk.append(v)
            v = table[v - 1]
        if state[v - 1] == 1:
            return None  # closed a second cycle
        for w in walk:
            state[w - 1] = 2
    return root


def mapping_to_dot(m: Mapping, *, name: str = "mapping") -> str:
    """DOT rendering of the functional digraph.

    Cyclic vertices get a doubled border so the core of each component
    stands out from the hanging trees.
    """
    cs = cycle_structure(m)
    lines = [f"digraph {name} {{"]
    for v in range(1, m.n + 1):
        if cs.cyclic[v - 1]:
            lines.append(f"  {v} [peripheries=2];")
        else:
            lines.append(f"  {v};")
    for v, w in m.edges():
        lines.append(f"  {v} -> {w};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def tree_to_dot(t: RootedTree, *, name: str = "tree") -> str:
    """DOT rendering of a rooted tree; the root is filled."""
    lines = [f"digraph {name} {{"]
    for v in range(1, t.n + 1):
        if v == t.root:
            lines.append(f"  {v} [style=filled, peripheries=2];")
        else:
            lines.append(f"  {v};")
    for v in range(1, t.n + 1):
        if v != t.root:
            lines.append(f"  {v} -> {t.parent[v - 1]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
