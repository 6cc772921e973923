"""Canonical forms and isomorphism for small rooted graphs.

Canonicalization refines an initial (degree, root, loop) coloring to a
stable partition, then backtracks over the partition-respecting labelings
and keeps the lexicographically least adjacency encoding.  Brute force is
capped per connected component; root sets and loops act as vertex colors,
so keys separate rooted from unrooted graphs and loops from plain vertices.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import SizeLimitExceeded
from .graphs import Graph, split_components

DEFAULT_CANON_BOUND = 10


def _refine(n: int, nbrs: list[set[int]], init: list) -> list[int]:
    """Stable color refinement; returns dense color ids ordered canonically."""
    ids = {c: i for i, c in enumerate(sorted(set(init)))}
    color = [ids[c] for c in init]
    ncolors = len(ids)
    while True:
        sigs = [(color[v], tuple(sorted(color[u] for u in nbrs[v])))
                for v in range(n)]
        ids = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ids[s] for s in sigs]
        if len(ids) == ncolors:
            return new
        color, ncolors = new, len(ids)


def _initial_colors(g: Graph) -> list:
    loops = g.loop_vertices
    deg = [0] * g.vertex_count
    for u, v in g.edges:
        if u != v:
            deg[u] += 1
            deg[v] += 1
    return [(v in g.roots, v in loops, deg[v]) for v in range(g.vertex_count)]


def _canon_connected(g: Graph) -> bytes:
    n = g.vertex_count
    if n == 0:
        return b"\x00\x00"
    nbrs = g.neighbor_sets()
    color = _refine(n, nbrs, _initial_colors(g))

    # Positions are filled cell by cell in canonical color order.
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(color):
        cells.setdefault(c, []).append(v)
    cell_of_pos: list[int] = []
    for c in sorted(cells):
        cell_of_pos.extend([c] * len(cells[c]))

    adj = [0] * n
    for u, v in g.edges:
        if u != v:
            adj[u] |= 1 << v
            adj[v] |= 1 << u

    # best[0:valid] is the least prefix seen so far; positions beyond are stale.
    best = [0] * n
    valid = 0
    placed = [0] * n  # position -> vertex
    pos_of = [-1] * n  # vertex -> position

    def dfs(pos: int):
        nonlocal valid
        for v in cells[cell_of_pos[pos]]:
            if pos_of[v] >= 0:
                continue
            row = 0
            a = adj[v]
            for p in range(pos):
                if a >> placed[p] & 1:
                    row |= 1 << p
            if valid > pos:
                if row > best[pos]:
                    continue
                if row < best[pos]:
                    best[pos] = row
                    valid = pos + 1
            else:
                best[pos] = row
                valid = pos + 1
            placed[pos] = v
            pos_of[v] = pos
            if pos + 1 < n:
                dfs(pos + 1)
            else:
                valid = n
            pos_of[v] = -1
        return

    dfs(0)
    assert valid == n

    bits = 0
    nbits = 0
    for i in range(n):
        bits |= best[i] << nbits
        nbits += i  # row i holds i adjacency bits (positions 0..i-1)
    # The loop and root masks are cell-constant, hence labeling-independent.
    loop_mask = 0
    root_mask = 0
    loops = g.loop_vertices
    final_order = _canonical_order_masks(n, cells, cell_of_pos, g, loops)
    loop_mask, root_mask = final_order
    bits |= loop_mask << nbits
    nbits += n
    bits |= root_mask << nbits
    nbits += n
    return n.to_bytes(2, "big") + bits.to_bytes((nbits + 7) // 8 or 1, "big")


def _canonical_order_masks(n, cells, cell_of_pos, g: Graph, loops):
    loop_mask = 0
    root_mask = 0
    used: dict[int, int] = {}
    for pos in range(n):
        c = cell_of_pos[pos]
        v = cells[c][used.get(c, 0)]
        used[c] = used.get(c, 0) + 1
        if v in loops:
            loop_mask |= 1 << pos
        if v in g.roots:
            root_mask |= 1 << pos
    return loop_mask, root_mask


@lru_cache(maxsize=200_000)
def _canon_cached(g: Graph, bound: int) -> bytes:
    comps = split_components(g)
    for c in comps:
        if c.vertex_count > bound:
            raise SizeLimitExceeded(
                f"component with {c.vertex_count} vertices exceeds canonical bound {bound}")
    if len(comps) == 1:
        return _canon_connected(comps[0])
    parts = sorted(_canon_connected(c) for c in comps)
    body = b"".join(len(p).to_bytes(2, "big") + p for p in parts)
    return b"\xff" + len(parts).to_bytes(2, "big") + body


def canonical_form(g: Graph, bound: int = DEFAULT_CANON_BOUND) -> bytes:
    """Key invariant under relabeling; distinguishes root sets and loops."""
    return _canon_cached(g, bound)


def is_isomorphic(a: Graph, b: Graph, bound: int = DEFAULT_CANON_BOUND) -> bool:
    """Rooted-graph isomorphism via canonical keys (within the size bound)."""
    if a.vertex_count != b.vertex_count or len(a.edges) != len(b.edges):
        return False
    return canonical_form(a, bound) == canonical_form(b, bound)


def graphs_isomorphic(a: Graph, b: Graph) -> bool:
    """Isomorphism for graphs of any size.

    Uses canonical keys when every component fits the canonical bound and
    falls back to explicit search otherwise.
    """
    small = all(c.vertex_count <= DEFAULT_CANON_BOUND
                for g in (a, b) for c in split_components(g))
    if small:
        return is_isomorphic(a, b)
    return isomorphism_search(a, b) is not None


def _profile(g: Graph):
    deg = g.degrees()
    loops = g.loop_vertices
    return (g.vertex_count, g.edge_count, len(loops), len(g.roots),
            tuple(sorted(deg)), tuple(sorted(deg[r] for r in g.roots)))


def invariant_profile(g: Graph):
    """Cheap isomorphism invariant: counts, degree data and refined colors."""
    n = g.vertex_count
    color = _refine(n, g.neighbor_sets(), _initial_colors(g))
    hist: dict[int, int] = {}
    for c in color:
        hist[c] = hist.get(c, 0) + 1
    return _profile(g) + (tuple(sorted(hist.items())),)


def distance_profile(g: Graph):
    """Sorted per-vertex spheres-of-each-radius signature.

    Splits most regular non-isomorphic pairs that color refinement cannot,
    at breadth-first-search cost.
    """
    n = g.vertex_count
    nbrs = g.neighbor_sets()
    rows = []
    for start in range(n):
        dist = [-1] * n
        dist[start] = 0
        frontier = [start]
        counts = []
        while frontier:
            counts.append(len(frontier))
            nxt = []
            for v in frontier:
                for w in nbrs[v]:
                    if dist[w] < 0:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        rows.append(tuple(counts))
    return tuple(sorted(rows))


def isomorphism_search(a: Graph, b: Graph,
                       node_budget: int = 50_000) -> list[int] | None:
    """Explicit isomorphism a -> b for graphs of any size, or None.

    Individualization-refinement: tentatively pair one vertex from the
    first non-singleton color class of each graph, re-refine both, and
    backtrack on color-histogram mismatch.  Refinement after each pairing
    is what lets non-isomorphic regular graphs be refuted quickly, where a
    single global refinement would never split anything.  Independent of
    canonical_form, and usable above its size bound.
    """
    n = a.vertex_count
    if n != b.vertex_count or len(a.edges) != len(b.edges):
        return None
    if _profile(a) != _profile(b):
        return None
    nbrs_a, nbrs_b = a.neighbor_sets(), b.neighbor_sets()
    base_a, base_b = _initial_colors(a), _initial_colors(b)
    adj_a = [0] * n
    for u, v in a.edges:
        adj_a[u] |= 1 << v
        adj_a[v] |= 1 << u
    adj_b = [0] * n
    for u, v in b.edges:
        adj_b[u] |= 1 << v
        adj_b[v] |= 1 << u
    budget = [node_budget]

    def refined(base, nbrs, pins):
        init = list(base)
        for i, v in enumerate(pins):
            init[v] = (i,)  # tuples sort after the (bool, bool, int) bases
        return _refine(n, nbrs, init)

    def rec(pins_a: list[int], pins_b: list[int]) -> list[int] | None:
        budget[0] -= 1
        if budget[0] <= 0:
            raise SizeLimitExceeded("isomorphism search budget exhausted")
        col_a = refined(base_a, nbrs_a, pins_a)
        col_b = refined(base_b, nbrs_b, pins_b)
        cells_a: dict[int, list[int]] = {}
        cells_b: dict[int, list[int]] = {}
        for v in range(n):
            cells_a.setdefault(col_a[v], []).append(v)
            cells_b.setdefault(col_b[v], []).append(v)
        if sorted((c, len(vs)) for c, vs in cells_a.items()) != \
                sorted((c, len(vs)) for c, vs in cells_b.items()):
            return None
        target = None
        for c in sorted(cells_a):
            if len(cells_a[c]) > 1:
                target = c
                break
        if target is None:
            mapping = [-1] * n
            for c, vs in cells_a.items():
                mapping[vs[0]] = cells_b[c][0]
            for v in range(n):
                img = 0
                for u in range(n):
                    if adj_a[v] >> u & 1:
                        img |= 1 << mapping[u]
                if img != adj_b[mapping[v]]:
                    return None
            return mapping
        v = cells_a[target][0]
        for w in cells_b[target]:
            result = rec(pins_a + [v], pins_b + [w])
            if result is not None:
                return result
        return None

    return rec([], [])
