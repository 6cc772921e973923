"""Memoized catalogs of small connected graphs, by domain flavor.

Connected simple graphs are generated by vertex extension: every graph on
n vertices arises from some graph on n-1 vertices plus a new vertex whose
neighborhood meets every old component.  Rooted and looped variants are
derived from the simple catalog by decorating and deduplicating on
canonical keys.  All lists are sorted by canonical key, so iteration order
is deterministic.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .canon import canonical_form
from .graphs import (Graph, disjoint_union, is_bipartite, is_connected,
                     single_vertex)

SIMPLE = "simple"  # connected, loopless, unrooted
SINGLE_ROOT = "single"  # connected, loopless, exactly one root
MULTI_ROOT = "multi"  # connected, loopless, nonempty root set
GAMMA0_NONBIP = "gamma0nb"  # connected, loops allowed, not bipartite

FLAVORS = (SIMPLE, SINGLE_ROOT, MULTI_ROOT, GAMMA0_NONBIP)


def _component_masks(g: Graph) -> list[int]:
    nbrs = g.neighbor_sets()
    seen = [False] * g.vertex_count
    masks = []
    for start in range(g.vertex_count):
        if seen[start]:
            continue
        mask = 0
        stack = [start]
        seen[start] = True
        while stack:
            v = stack.pop()
            mask |= 1 << v
            for w in nbrs[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        masks.append(mask)
    return masks


@lru_cache(maxsize=None)
def connected_simple(n: int) -> tuple[Graph, ...]:
    """All connected loopless graphs on n vertices, one per isomorphism class."""
    if n < 1:
        return ()
    if n == 1:
        return (single_vertex(),)
    found: dict[bytes, Graph] = {}
    for parent in all_simple(n - 1):
        comp_masks = _component_masks(parent)
        base_edges = set(parent.edges)
        for subset in range(1, 1 << (n - 1)):
            if any(not subset & m for m in comp_masks):
                continue
            edges = base_edges | {(i, n - 1)
                                  for i in range(n - 1) if subset >> i & 1}
            g = Graph(n, frozenset(edges))
            key = canonical_form(g)
            if key not in found:
                found[key] = g
    return tuple(found[k] for k in sorted(found))


@lru_cache(maxsize=None)
def all_simple(n: int) -> tuple[Graph, ...]:
    """All loopless graphs on n vertices up to isomorphism, assembled as
    multisets of connected ones; no dedup needed since the parts are."""
    if n == 0:
        return (Graph(0),)
    out: list[Graph] = []

    def build(remaining: int, max_size: int, max_index: int, acc: list[Graph]):
        if remaining == 0:
            g = Graph(0)
            for part in acc:
                g = disjoint_union(g, part)
            out.append(g)
            return
        for size in range(min(remaining, max_size), 0, -1):
            pool = connected_simple(size)
            start = max_index if size == max_size else len(pool) - 1
            for idx in range(start, -1, -1):
                acc.append(pool[idx])
                build(remaining - size, size, idx, acc)
                acc.pop()

    build(n, n, len(connected_simple(n)) - 1, [])
    return tuple(out)


@lru_cache(maxsize=None)
def connected_rooted(n: int, single: bool) -> tuple[Graph, ...]:
    found: dict[bytes, Graph] = {}
    for g in connected_simple(n):
        if single:
            choices = [(r,) for r in range(n)]
        else:
            choices = [c for k in range(1, n + 1)
                       for c in itertools.combinations(range(n), k)]
        for roots in choices:
            rooted = g.with_roots(roots)
            key = canonical_form(rooted)
            if key not in found:
                found[key] = rooted
    return tuple(found[k] for k in sorted(found))


@lru_cache(maxsize=None)
def connected_gamma0_nonbip(n: int) -> tuple[Graph, ...]:
    found: dict[bytes, Graph] = {}
    for g in connected_simple(n):
        for loopset in range(1 << n):
            edges = set(g.edges) | {(i, i) for i in range(n) if loopset >> i & 1}
            cand = Graph(n, frozenset(edges), True)
            if is_bipartite(cand):
                continue
            key = canonical_form(cand)
            if key not in found:
                found[key] = cand
    return tuple(found[k] for k in sorted(found))


def catalog(flavor: str, n: int) -> tuple[Graph, ...]:
    if flavor == SIMPLE:
        return connected_simple(n)
    if flavor == SINGLE_ROOT:
        return connected_rooted(n, True)
    if flavor == MULTI_ROOT:
        return connected_rooted(n, False)
    if flavor == GAMMA0_NONBIP:
        return connected_gamma0_nonbip(n)
    raise ValueError(f"unknown catalog flavor {flavor!r}")
