"""The six graph products, powers, and their lifts to component families.

Vertex (i, j) of a product of g and h is numbered i * |V(h)| + j, so that
repeated runs agree byte for byte after canonicalization.  The Cartesian
product is realized as the root-erased full-root hierarchical product, which
keeps a single implementation of that edge rule.
"""

from __future__ import annotations

from .errors import (EmptyRootSet, LoopsNotAllowed, NotSinglyRooted,
                     SizeLimitExceeded, UnsupportedDomain)
from .graphs import (DEFAULT_VERTEX_CAP, Graph, GraphFamily, _min_trunc,
                     disjoint_union, single_vertex, looped_vertex,
                     split_components)

CARTESIAN = "cartesian"
HIERARCHICAL = "hierarchical"
ROOTED_HIERARCHICAL = "rooted-hierarchical"
STRONG = "strong"
DIRECT = "direct"
LEX = "lex"
MODLEX = "modlex"

PRODUCT_OPS = (CARTESIAN, HIERARCHICAL, ROOTED_HIERARCHICAL, STRONG, DIRECT,
               LEX, MODLEX)

COMMUTATIVE_OPS = frozenset({CARTESIAN, STRONG, DIRECT})


def neutral_graph(op: str) -> Graph:
    if op == DIRECT:
        return looped_vertex()
    if op in (HIERARCHICAL, ROOTED_HIERARCHICAL):
        return single_vertex(rooted=True)
    return single_vertex()


def _check_rooted_components(g: Graph, single: bool) -> None:
    for comp in split_components(g):
        if not comp.roots:
            raise EmptyRootSet("every component needs a nonempty root set")
        if single and len(comp.roots) != 1:
            raise NotSinglyRooted("every component needs exactly one root")


def _hier_edges(g: Graph, h: Graph) -> set[tuple[int, int]]:
    nh = h.vertex_count
    edges: set[tuple[int, int]] = set()
    for i in range(g.vertex_count):
        base = i * nh
        for u, v in h.edges:
            edges.add((base + u, base + v))
    for u, v in g.edges:
        for r in h.roots:
            a, b = u * nh + r, v * nh + r
            edges.add((a, b) if a <= b else (b, a))
    return edges


def hierarchical(g: Graph, h: Graph) -> Graph:
    """Generalized rooted hierarchical product; roots multiply."""
    _check_rooted_components(g, single=False)
    _check_rooted_components(h, single=False)
    nh = h.vertex_count
    roots = frozenset(i * nh + j for i in g.roots for j in h.roots)
    return Graph(g.vertex_count * nh, frozenset(_hier_edges(g, h)),
                 g.allows_loops or h.allows_loops, roots)


def rooted_hierarchical(g: Graph, h: Graph) -> Graph:
    """Hierarchical product restricted to singly rooted components."""
    _check_rooted_components(g, single=True)
    _check_rooted_components(h, single=True)
    return hierarchical(g, h)


def cartesian(g: Graph, h: Graph) -> Graph:
    full_g = g.with_roots(range(g.vertex_count))
    full_h = h.with_roots(range(h.vertex_count))
    nh = h.vertex_count
    edges = _hier_edges(full_g, full_h)
    return Graph(g.vertex_count * nh, frozenset(edges),
                 g.allows_loops or h.allows_loops, frozenset())


def direct(g: Graph, h: Graph) -> Graph:
    nh = h.vertex_count
    edges: set[tuple[int, int]] = set()
    for u, v in g.edges:
        for x, y in h.edges:
            for a, b in ((u, v), (v, u)):
                p, q = a * nh + x, b * nh + y
                edges.add((p, q) if p <= q else (q, p))
    return Graph(g.vertex_count * nh, frozenset(edges), True, frozenset())


def strong(g: Graph, h: Graph) -> Graph:
    if g.loop_count or h.loop_count:
        raise LoopsNotAllowed("strong product is defined for loopless graphs")
    edges = set(cartesian(g, h).edges) | set(direct(g, h).edges)
    return Graph(g.vertex_count * h.vertex_count, frozenset(edges), False,
                 frozenset())


def lexicographic(g: Graph, h: Graph) -> Graph:
    nh = h.vertex_count
    edges: set[tuple[int, int]] = set()
    for u, v in g.edges:
        for x in range(nh):
            for y in range(nh):
                p, q = u * nh + x, v * nh + y
                edges.add((p, q) if p <= q else (q, p))
    for i in range(g.vertex_count):
        base = i * nh
        for x, y in h.edges:
            edges.add((base + x, base + y))
    return Graph(g.vertex_count * nh, frozenset(edges),
                 g.allows_loops or h.allows_loops, frozenset())


def modified_lexicographic(g: Graph, h: Graph) -> Graph:
    """Lexicographic product applied componentwise on both sides."""
    out = None
    for gi in split_components(g):
        for hj in split_components(h):
            block = lexicographic(gi, hj)
            out = block if out is None else disjoint_union(out, block)
    if out is None:
        out = Graph(0)
    return out


_DISPATCH = {
    CARTESIAN: cartesian,
    HIERARCHICAL: hierarchical,
    ROOTED_HIERARCHICAL: rooted_hierarchical,
    STRONG: strong,
    DIRECT: direct,
    LEX: lexicographic,
    MODLEX: modified_lexicographic,
}


def graph_product(op: str, g: Graph, h: Graph) -> Graph:
    try:
        fn = _DISPATCH[op]
    except KeyError:
        raise UnsupportedDomain(f"unknown product {op!r}") from None
    return fn(g, h)


def power(g: Graph, n: int, op: str,
          vertex_cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    """Left-associated n-fold product of g with itself."""
    if n < 1:
        raise ValueError("exponent must be positive")
    if g.vertex_count ** n > vertex_cap:
        raise SizeLimitExceeded(
            f"{g.vertex_count}^{n} vertices exceeds cap {vertex_cap}")
    out = g
    for _ in range(n - 1):
        out = graph_product(op, out, g)
    return out


def family_product(op: str, a: GraphFamily, b: GraphFamily) -> GraphFamily:
    """Distributes the product over components on both sides.

    Defined for every op except plain `lex`, which is not left distributive.
    """
    if op == LEX:
        raise UnsupportedDomain(
            "lexicographic product does not distribute over families; use modlex")
    pieces: list[tuple[Graph, int]] = []
    for g, mg in a.members:
        for h, mh in b.members:
            prod = graph_product(op, g, h)
            for comp in split_components(prod):
                pieces.append((comp, mg * mh))
    return GraphFamily.from_graphs(pieces, _min_trunc(a.truncation, b.truncation))


def family_power(op: str, f: GraphFamily, n: int) -> GraphFamily:
    if n < 1:
        raise ValueError("exponent must be positive")
    out = f
    for _ in range(n - 1):
        out = family_product(op, out, f)
    return out
