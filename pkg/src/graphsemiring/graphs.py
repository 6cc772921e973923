"""Finite graphs with optional loops and root sets, plus component bookkeeping.

Vertices are the dense integers 0..vertex_count-1.  An edge is an unordered
pair (u, v) with u <= v; a pair (v, v) is a loop.  All values are immutable
and every operation returns freshly numbered graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import SizeLimitExceeded

DEFAULT_VERTEX_CAP = 20_000


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[tuple[int, int]] = frozenset()
    allows_loops: bool = False
    roots: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        for u, v in self.edges:
            if u > v:
                raise ValueError(f"edge ({u},{v}) not normalized")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u == v and not self.allows_loops:
                raise ValueError(f"loop at {u} but allows_loops is false")
        for r in self.roots:
            if not 0 <= r < self.vertex_count:
                raise ValueError(f"root {r} out of range")

    @staticmethod
    def make(vertex_count: int,
             edges: Iterable[tuple[int, int]] = (),
             roots: Iterable[int] = (),
             allows_loops: bool = False) -> Graph:
        norm = frozenset(_normalize_edge(u, v) for u, v in edges)
        return Graph(vertex_count, norm, allows_loops, frozenset(roots))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def loop_vertices(self) -> frozenset[int]:
        return frozenset(u for u, v in self.edges if u == v)

    @property
    def loop_count(self) -> int:
        return len(self.loop_vertices)

    @property
    def nonloop_edge_count(self) -> int:
        return len(self.edges) - self.loop_count

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edges

    def neighbor_sets(self) -> list[set[int]]:
        """Non-loop adjacency lists."""
        nbrs: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            if u != v:
                nbrs[u].add(v)
                nbrs[v].add(u)
        return nbrs

    def degrees(self) -> list[int]:
        """Loops contribute 2 to the degree of their vertex."""
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency_count(self) -> int:
        """Number of ordered adjacent pairs; loops count once."""
        return 2 * self.nonloop_edge_count + self.loop_count

    def with_roots(self, roots: Iterable[int]) -> Graph:
        return Graph(self.vertex_count, self.edges, self.allows_loops,
                     frozenset(roots))

    def without_roots(self) -> Graph:
        return self.with_roots(())

    def __repr__(self):
        bits = [f"n={self.vertex_count}", f"m={self.edge_count}"]
        if self.roots:
            bits.append(f"roots={sorted(self.roots)}")
        if self.allows_loops:
            bits.append("loops")
        return f"Graph({', '.join(bits)})"


# Small named graphs, used throughout the tests and demos.

def empty_graph() -> Graph:
    return Graph(0)


def single_vertex(rooted: bool = False) -> Graph:
    return Graph.make(1, roots=(0,) if rooted else ())


def looped_vertex() -> Graph:
    return Graph.make(1, [(0, 0)], allows_loops=True)


def path_graph(n: int, roots: Iterable[int] = ()) -> Graph:
    return Graph.make(n, [(i, i + 1) for i in range(n - 1)], roots=roots)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph.make(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int, roots: Iterable[int] = ()) -> Graph:
    return Graph.make(n, [(i, j) for i in range(n) for j in range(i + 1, n)],
                      roots=roots)


def is_complete(g: Graph) -> bool:
    n = g.vertex_count
    return g.loop_count == 0 and g.nonloop_edge_count == n * (n - 1) // 2


def add_loops(g: Graph) -> Graph:
    edges = set(g.edges) | {(v, v) for v in range(g.vertex_count)}
    return Graph(g.vertex_count, frozenset(edges), True, g.roots)


def strip_loops(g: Graph) -> Graph:
    edges = frozenset(e for e in g.edges if e[0] != e[1])
    return Graph(g.vertex_count, edges, g.allows_loops, g.roots)


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Subgraph on `vertices`, renumbered densely in the given order."""
    index = {v: i for i, v in enumerate(vertices)}
    keep = set(vertices)
    edges = [(index[u], index[v]) for u, v in g.edges
             if u in keep and v in keep]
    roots = [index[r] for r in g.roots if r in keep]
    return Graph.make(len(vertices), edges, roots, g.allows_loops)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Image of g under vertex map v -> perm[v]."""
    edges = [(perm[u], perm[v]) for u, v in g.edges]
    roots = [perm[r] for r in g.roots]
    return Graph.make(g.vertex_count, edges, roots, g.allows_loops)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    shift = a.vertex_count
    edges = set(a.edges)
    edges.update((u + shift, v + shift) for u, v in b.edges)
    roots = set(a.roots)
    roots.update(r + shift for r in b.roots)
    return Graph(a.vertex_count + b.vertex_count, frozenset(edges),
                 a.allows_loops or b.allows_loops, frozenset(roots))


def split_components(g: Graph) -> list[Graph]:
    """Connected components as renumbered graphs, ordered by least vertex."""
    nbrs = g.neighbor_sets()
    seen = [False] * g.vertex_count
    out: list[Graph] = []
    for start in range(g.vertex_count):
        if seen[start]:
            continue
        queue = [start]
        seen[start] = True
        block = []
        while queue:
            v = queue.pop()
            block.append(v)
            for w in nbrs[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        out.append(induced_subgraph(g, sorted(block)))
    return out


def is_connected(g: Graph) -> bool:
    return g.vertex_count <= 1 or len(split_components(g)) == 1


def is_bipartite(g: Graph) -> bool:
    """True iff g has no loop and no odd cycle."""
    if g.loop_count:
        return False
    nbrs = g.neighbor_sets()
    color = [-1] * g.vertex_count
    for start in range(g.vertex_count):
        if color[start] >= 0:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for w in nbrs[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return False
    return True


@dataclass(frozen=True)
class GraphFamily:
    """Multiset of connected graphs; add is multiset union.

    `truncation` marks a family that stands for a degree-truncated infinite
    one: components of factorization degree beyond it are not represented.
    """

    members: tuple[tuple[Graph, int], ...] = ()
    truncation: int | None = None

    def __post_init__(self):
        for g, mult in self.members:
            if mult <= 0:
                raise ValueError("multiplicities must be positive")
            if not is_connected(g) or g.vertex_count == 0:
                raise ValueError("family members must be nonempty connected graphs")

    @staticmethod
    def from_graphs(graphs: Iterable[tuple[Graph, int]],
                    truncation: int | None = None) -> GraphFamily:
        merged: dict[Graph, int] = {}
        for g, mult in graphs:
            merged[g] = merged.get(g, 0) + mult
        grouped = _group_isomorphic(list(merged.items()))
        return GraphFamily(tuple(grouped), truncation)

    @property
    def is_empty(self) -> bool:
        return not self.members

    @property
    def component_count(self) -> int:
        return sum(m for _, m in self.members)

    @property
    def vertex_count(self) -> int:
        return sum(g.vertex_count * m for g, m in self.members)

    def add(self, other: GraphFamily) -> GraphFamily:
        trunc = _min_trunc(self.truncation, other.truncation)
        return GraphFamily.from_graphs(self.members + other.members, trunc)

    def scaled(self, k: int) -> GraphFamily:
        if k <= 0:
            raise ValueError("scale factor must be positive")
        return GraphFamily(tuple((g, m * k) for g, m in self.members),
                           self.truncation)

    def component_keys(self) -> dict[bytes, int]:
        """Canonical key -> multiplicity; needs components within canon bound."""
        from .canon import canonical_form
        out: dict[bytes, int] = {}
        for g, m in self.members:
            key = canonical_form(g)
            out[key] = out.get(key, 0) + m
        return out


def _min_trunc(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _group_isomorphic(items: list[tuple[Graph, int]]) -> list[tuple[Graph, int]]:
    """Merge isomorphic entries; canonical keys when small, search otherwise."""
    from .canon import DEFAULT_CANON_BOUND, canonical_form, isomorphism_search
    by_key: dict[bytes, list[int]] = {}
    big: list[int] = []
    graphs = [g for g, _ in items]
    merged_into = list(range(len(items)))
    for i, g in enumerate(graphs):
        if g.vertex_count <= DEFAULT_CANON_BOUND:
            by_key.setdefault(canonical_form(g), []).append(i)
        else:
            big.append(i)
    for idxs in by_key.values():
        for j in idxs[1:]:
            merged_into[j] = idxs[0]
    for pos, i in enumerate(big):
        for j in big[:pos]:
            if merged_into[j] == j and isomorphism_search(graphs[i], graphs[j]) is not None:
                merged_into[i] = j
                break
    counts: dict[int, int] = {}
    for j, (_, mult) in enumerate(items):
        counts[merged_into[j]] = counts.get(merged_into[j], 0) + mult
    out = [(graphs[i], counts[i]) for i in sorted(counts)]
    out.sort(key=lambda gm: _family_sort_key(gm[0]))
    return out


def _family_sort_key(g: Graph):
    from .canon import DEFAULT_CANON_BOUND, canonical_form
    if g.vertex_count <= DEFAULT_CANON_BOUND:
        return (g.vertex_count, 0, canonical_form(g))
    return (g.vertex_count, 1, bytes(sorted(g.degrees())[:64]))


def family_of(g: Graph) -> GraphFamily:
    """Multiset of connected components of g."""
    return GraphFamily.from_graphs((c, 1) for c in split_components(g))


def realize(f: GraphFamily, vertex_cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    """Disjoint union of all components, multiplicities included."""
    if f.vertex_count > vertex_cap:
        raise SizeLimitExceeded(
            f"family realizes to {f.vertex_count} vertices (cap {vertex_cap})")
    out = empty_graph()
    for g, mult in f.members:
        for _ in range(mult):
            out = disjoint_union(out, g)
    return out


def families_isomorphic(a: GraphFamily, b: GraphFamily) -> bool:
    from .canon import DEFAULT_CANON_BOUND, canonical_form, isomorphism_search
    if a.component_count != b.component_count:
        return False
    remaining = [[g, m] for g, m in b.members]
    for g, mult in a.members:
        small = g.vertex_count <= DEFAULT_CANON_BOUND
        key = canonical_form(g) if small else None
        found = False
        for entry in remaining:
            h, have = entry
            if have < mult or h.vertex_count != g.vertex_count:
                continue
            if small and h.vertex_count <= DEFAULT_CANON_BOUND:
                match = canonical_form(h) == key
            else:
                match = isomorphism_search(g, h) is not None
            if match:
                entry[1] -= mult
                found = True
                break
        if not found:
            return False
    return all(have == 0 for _, have in remaining)
