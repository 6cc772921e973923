"""Primality, prime registries, and factorization of connected graphs.

The registry enumerates primes size by size (deterministically, sorted by
canonical key within a size), so letter ranks never depend on the order in
which graphs were factored.  Factoring proceeds by searching sequences of
registered primes whose numeric invariants (vertex, edge, root and
adjacency counts) multiply out exactly to those of the input; surviving
sequences are multiplied back and checked by isomorphism, which also works
above the canonical-form bound.  Every match must reduce to one normal
form.
"""

from __future__ import annotations

from functools import lru_cache

from . import catalogs
from .canon import (DEFAULT_CANON_BOUND, canonical_form, graphs_isomorphic,
                    invariant_profile, is_isomorphic)
from .errors import (EmptyRootSet, FactorizationNotUnique, NotSinglyRooted,
                     LoopsNotAllowed, SizeLimitExceeded, UnsupportedDomain)
from .graphs import Graph, is_bipartite, is_complete, is_connected
from .monoid import Letter, LetterRegistry, Monomial, X, Y
from .products import (CARTESIAN, COMMUTATIVE_OPS, DIRECT, HIERARCHICAL, LEX,
                       MODLEX, PRODUCT_OPS, ROOTED_HIERARCHICAL, STRONG,
                       graph_product, neutral_graph)

FLAVOR_BY_OP = {
    CARTESIAN: catalogs.SIMPLE,
    STRONG: catalogs.SIMPLE,
    MODLEX: catalogs.SIMPLE,
    HIERARCHICAL: catalogs.MULTI_ROOT,
    ROOTED_HIERARCHICAL: catalogs.SINGLE_ROOT,
    DIRECT: catalogs.GAMMA0_NONBIP,
}

# Candidate-factor enumeration is exhaustive only up to these sizes.
DEFAULT_LETTER_CAP = {
    catalogs.SIMPLE: 8,
    catalogs.SINGLE_ROOT: 6,
    catalogs.MULTI_ROOT: 6,
    catalogs.GAMMA0_NONBIP: 6,
}


def _require_factorable_op(op: str) -> str:
    if op == LEX:
        raise UnsupportedDomain(
            "lexicographic product has no unique factorization here; use modlex")
    if op not in FLAVOR_BY_OP:
        raise UnsupportedDomain(f"unknown product {op!r}")
    return FLAVOR_BY_OP[op]


def check_domain(g: Graph, op: str) -> None:
    """Validate that a connected graph lies in op's factorization domain."""
    if g.vertex_count == 0 or not is_connected(g):
        raise UnsupportedDomain("factorization applies to nonempty connected graphs")
    flavor = _require_factorable_op(op)
    if op == DIRECT:
        if is_bipartite(g):
            raise UnsupportedDomain(
                "direct-product factorization needs a non-bipartite graph")
        return
    if g.loop_count:
        if op == STRONG:
            raise LoopsNotAllowed("strong product is defined for loopless graphs")
        raise UnsupportedDomain(f"loops are not supported under {op}")
    if op == HIERARCHICAL:
        if not g.roots:
            raise EmptyRootSet("hierarchical factors need a nonempty root set")
    elif op == ROOTED_HIERARCHICAL:
        if len(g.roots) != 1:
            raise NotSinglyRooted("rooted product needs exactly one root")
    elif g.roots:
        raise UnsupportedDomain(f"root sets are not supported under {op}")


def classify(p: Graph, op: str) -> str:
    """Commutation kind of a prime: y-letters commute, x-letters do not."""
    if op in COMMUTATIVE_OPS:
        return Y
    if op == HIERARCHICAL:
        return Y if len(p.roots) == p.vertex_count else X
    return X


@lru_cache(maxsize=None)
def _composite_keys(op: str, n: int) -> frozenset[bytes]:
    """Canonical keys of all n-vertex graphs that split as a nontrivial
    product of in-domain connected graphs."""
    flavor = FLAVOR_BY_OP[op]
    keys = set()
    for s in range(2, n):
        if n % s:
            continue
        t = n // s
        for a in catalogs.catalog(flavor, s):
            for b in catalogs.catalog(flavor, t):
                keys.add(canonical_form(graph_product(op, a, b)))
    return frozenset(keys)


def divisor_pairs(g: Graph, op: str,
                  factor_cap: int | None = None) -> list[tuple[Graph, Graph]]:
    """All ordered pairs (a, b) with a*b isomorphic to g, one per pair of
    isomorphism classes, trivial splits included."""
    check_domain(g, op)
    flavor = FLAVOR_BY_OP[op]
    cap = DEFAULT_LETTER_CAP[flavor] if factor_cap is None else factor_cap
    n = g.vertex_count
    neutral = neutral_graph(op)
    if n == 1:
        if not is_isomorphic(g, neutral):
            raise UnsupportedDomain("one-vertex graph is not the neutral element")
        return [(g, g)]
    key = canonical_form(g)
    pairs: list[tuple[Graph, Graph]] = [(neutral, g), (g, neutral)]
    seen = {(canonical_form(a), canonical_form(b)) for a, b in pairs}
    for s in range(2, n):
        if n % s:
            continue
        t = n // s
        if s > cap or t > cap:
            raise SizeLimitExceeded(
                f"cannot enumerate all {s}x{t} factor candidates (cap {cap})")
        for a in catalogs.catalog(flavor, s):
            for b in catalogs.catalog(flavor, t):
                if canonical_form(graph_product(op, a, b)) != key:
                    continue
                sig = (canonical_form(a), canonical_form(b))
                if sig not in seen:
                    seen.add(sig)
                    pairs.append((a, b))
    return pairs


def is_prime(g: Graph, op: str) -> bool:
    """Nontrivial and admitting only trivial divisor pairs."""
    check_domain(g, op)
    n = g.vertex_count
    if n < 2:
        return False
    flavor = FLAVOR_BY_OP[op]
    cap = DEFAULT_LETTER_CAP[flavor]
    for s in range(2, n):
        if n % s == 0 and (s > cap or n // s > cap):
            raise SizeLimitExceeded(
                f"primality of a {n}-vertex graph needs factors beyond the cap")
    return canonical_form(g) not in _composite_keys(op, n)


class PrimeRegistry(LetterRegistry):
    """Well-ordered alphabet of prime connected graphs for one product.

    Letters are y (commuting) or x (non-commuting); all y-letters precede
    all x-letters, and within a kind letters are ordered by (vertex count,
    canonical key).  Sizes are enumerated exhaustively in ascending order,
    so ranks are stable however the registry is grown.
    """

    def __init__(self, op: str, letter_cap: int | None = None):
        super().__init__()
        self.flavor = _require_factorable_op(op)
        self.op = op
        self.letter_cap = (DEFAULT_LETTER_CAP[self.flavor]
                           if letter_cap is None else letter_cap)
        self.neutral = neutral_graph(op)
        self._neutral_key = canonical_form(self.neutral)
        self._by_key: dict[bytes, Letter] = {}
        self._by_size: dict[int, list[Letter]] = {}
        self._stats: dict[Letter, _PrimeStats] = {}
        self._horizon = 1

    def ensure_size(self, size: int) -> None:
        if size <= self._horizon:
            return
        if size > self.letter_cap:
            raise SizeLimitExceeded(
                f"prime enumeration capped at {self.letter_cap} vertices")
        for s in range(self._horizon + 1, size + 1):
            batch = [g for g in catalogs.catalog(self.flavor, s)
                     if canonical_form(g) not in _composite_keys(self.op, s)]
            for g in batch:  # catalog order is already (size, key) ascending
                kind = classify(g, self.op)
                pool = self.letters_y if kind == Y else self.letters_x
                letter = Letter(kind, len(pool), payload=g)
                pool.append(letter)
                self._by_key[canonical_form(g)] = letter
                self._by_size.setdefault(s, []).append(letter)
            self._horizon = s

    def primes_of_size(self, size: int) -> list[Letter]:
        self.ensure_size(size)
        return self._by_size.get(size, [])

    def stats(self, letter: Letter) -> _PrimeStats:
        cached = self._stats.get(letter)
        if cached is None:
            cached = self._stats[letter] = _PrimeStats(letter.payload)
        return cached

    def letter_for(self, g: Graph) -> Letter:
        self.ensure_size(g.vertex_count)
        key = canonical_form(g)
        try:
            return self._by_key[key]
        except KeyError:
            raise UnsupportedDomain(
                f"{g!r} is not a registered prime under {self.op}") from None

    def graph_of(self, m: Monomial) -> Graph:
        """Left-associated product of the letter graphs."""
        out = self.neutral
        for letter in m.word:
            out = graph_product(self.op, out, letter.payload)
        return out

    def dump(self) -> str:
        lines = []
        for letter in self.letters_y + self.letters_x:
            g = letter.payload
            lines.append(f"{letter.kind} {letter.rank} {g.vertex_count} "
                         f"{canonical_form(g).hex()}")
        return "\n".join(lines)


# Numeric invariants that every product transports exactly: peeling a known
# left factor determines the invariants any cofactor must have.  Degree data
# moves through each product by an exact rule, so the cofactor's degree
# multiset can be *divided out*; failure of the division kills a branch
# before any graph is built.

def _divide_additive(total: tuple[int, ...],
                     part: tuple[int, ...]) -> tuple[int, ...] | None:
    """Sorted multiset r with {p + x : p in part, x in r} == total."""
    counts = dict()
    for d in total:
        counts[d] = counts.get(d, 0) + 1
    p0 = part[0]
    out = []
    remaining = len(total)
    while remaining:
        dmin = min(d for d, c in counts.items() if c > 0)
        r = dmin - p0
        if r < 0:
            return None
        for p in part:
            k = p + r
            if counts.get(k, 0) <= 0:
                return None
            counts[k] -= 1
        remaining -= len(part)
        out.append(r)
    return tuple(sorted(out))


def _divide_multiplicative(total: tuple[int, ...],
                           part: tuple[int, ...]) -> tuple[int, ...] | None:
    counts = dict()
    for d in total:
        counts[d] = counts.get(d, 0) + 1
    p0 = part[0]
    out = []
    remaining = len(total)
    while remaining:
        dmin = min(d for d, c in counts.items() if c > 0)
        if dmin % p0:
            return None
        r = dmin // p0
        for p in part:
            k = p * r
            if counts.get(k, 0) <= 0:
                return None
            counts[k] -= 1
        remaining -= len(part)
        out.append(r)
    return tuple(sorted(out))


def _divide_blockwise(total: tuple[int, ...], part: tuple[int, ...],
                      vr: int) -> tuple[int, ...] | None:
    """Division for degrees of the form p*vr + x with 0 <= x < vr."""
    part_counts: dict[int, int] = {}
    for p in part:
        part_counts[p] = part_counts.get(p, 0) + 1
    groups: dict[int, dict[int, int]] = {}
    for d in total:
        q, m = divmod(d, vr)
        grp = groups.setdefault(q, {})
        grp[m] = grp.get(m, 0) + 1
    if set(groups) != set(part_counts):
        return None
    base: tuple[int, ...] | None = None
    for q, grp in groups.items():
        k = part_counts[q]
        if sum(grp.values()) != k * vr:
            return None
        if any(c % k for c in grp.values()):
            return None
        cur = tuple(sorted(m for m, c in grp.items() for _ in range(c // k)))
        if base is None:
            base = cur
        elif base != cur:
            return None
    return base


class _PrimeStats:
    """Per-letter numbers consulted on every peel attempt."""

    __slots__ = ("v", "e", "degs", "dmin", "dmax", "roots", "root_degs",
                 "droot", "ncounts", "loops")

    def __init__(self, g: Graph):
        self.v = g.vertex_count
        self.e = g.edge_count
        degs = g.degrees()
        self.degs = tuple(sorted(degs))
        self.dmin = self.degs[0]
        self.dmax = self.degs[-1]
        self.roots = len(g.roots)
        self.root_degs = tuple(sorted(degs[r] for r in g.roots))
        self.droot = self.root_degs[0] if len(g.roots) == 1 else None
        loops = g.loop_vertices
        nbrs = g.neighbor_sets()
        self.ncounts = tuple(sorted(len(nbrs[v]) + (v in loops)
                                    for v in range(g.vertex_count)))
        self.loops = len(loops)


def _state_of(g: Graph, op: str):
    stats = _PrimeStats(g)
    if op == DIRECT:
        return (stats.ncounts, stats.loops)
    if op == HIERARCHICAL:
        return (stats.v, stats.e, stats.root_degs)
    if op == ROOTED_HIERARCHICAL:
        return (stats.degs, stats.droot)
    return stats.degs  # cartesian, strong, modlex


def _state_vertices(op: str, state) -> int:
    if op == DIRECT:
        return len(state[0])
    if op == HIERARCHICAL:
        return state[0]
    if op == ROOTED_HIERARCHICAL:
        return len(state[0])
    return len(state)


def _state_final(op: str, state) -> bool:
    """Whether the remaining cofactor is forced to be the neutral graph."""
    if op == DIRECT:
        ncounts, loops = state
        return ncounts == (1,) and loops in (None, 1)
    if op == HIERARCHICAL:
        return state[0] == 1
    if op == ROOTED_HIERARCHICAL:
        return state[0] == (0,)
    return state == (0,)


def _node_pre(op: str, state):
    """Aggregates shared by every peel attempt at one search node."""
    if op == DIRECT:
        ncounts, _ = state
        return (ncounts[0], ncounts[-1])
    if op == HIERARCHICAL:
        return ()
    if op == ROOTED_HIERARCHICAL:
        degs, droot = state
        return (sum(degs) // 2,)
    return (sum(state) // 2, state[0], state[-1])


def _quick_reject(op: str, state, pre, p: _PrimeStats, vr: int) -> bool:
    """Cheap necessary conditions, checked before multiset division."""
    if op == DIRECT:
        ncmin, ncmax = pre
        return ncmin % p.ncounts[0] or ncmax % p.ncounts[-1]
    if op == HIERARCHICAL:
        return False
    if op == ROOTED_HIERARCHICAL:
        e = pre[0]
        num = e - p.e
        return num < 0 or num % p.v or num // p.v > vr * (vr - 1) // 2
    e, dmin, dmax = pre
    if op == CARTESIAN:
        lo, hi = dmin - p.dmin, dmax - p.dmax
        if vr == 1:
            return lo or hi
        if not (1 <= lo and 1 <= hi <= vr - 1):
            return True
        num = e - p.e * vr
        return num < 0 or num % p.v
    if op == STRONG:
        if (dmin + 1) % (p.dmin + 1) or (dmax + 1) % (p.dmax + 1):
            return True
        num = e - p.e * vr
        return num < 0 or num % (p.v + 2 * p.e)
    if op == MODLEX:
        if vr == 1:
            return dmin != p.dmin or dmax != p.dmax
        return dmin // vr != p.dmin or dmax // vr != p.dmax
    return False


def _peel(op: str, state, p: _PrimeStats):
    """State of the cofactor forced by splitting p off on the left, or None."""
    if op == DIRECT:
        ncounts, loops = state
        vr = len(ncounts) // p.v
        if p.loops == 0:
            if loops:
                return None
            loops_r = None
        elif loops is None:
            loops_r = None
        elif loops % p.loops:
            return None
        else:
            loops_r = loops // p.loops
        if vr == 1:
            return ((1,), loops_r) if ncounts == p.ncounts else None
        rest = _divide_multiplicative(ncounts, p.ncounts)
        if rest is None or rest[0] == 0:
            return None
        return (rest, loops_r)

    if op == HIERARCHICAL:
        v, e, root_degs = state
        vr = v // p.v
        rest_roots = _divide_additive(root_degs, p.root_degs)
        if rest_roots is None:
            return None
        rr = len(rest_roots)
        if not 1 <= rr <= vr:
            return None
        num = e - p.e * rr
        if num < 0 or num % p.v:
            return None
        er = num // p.v
        if vr == 1:
            if er or rest_roots != (0,):
                return None
        elif not (vr - 1 <= er <= vr * (vr - 1) // 2) or rest_roots[0] < 1:
            return None
        return (vr, er, rest_roots)

    if op == ROOTED_HIERARCHICAL:
        degs, droot = state
        vr = len(degs) // p.v
        c = droot - p.droot
        if vr == 1:
            return ((0,), 0) if c == 0 and degs == p.degs else None
        if not 1 <= c <= vr - 1:
            return None
        # root column carries p shifted by c; other columns repeat p.v times
        counts: dict[int, int] = {}
        for d in degs:
            counts[d] = counts.get(d, 0) + 1
        for dp in p.degs:
            k = dp + c
            if counts.get(k, 0) <= 0:
                return None
            counts[k] -= 1
        rest = []
        for d, cnt in counts.items():
            if cnt % p.v:
                return None
            rest.extend([d] * (cnt // p.v))
        if len(rest) != vr - 1 or min(rest) < 1:
            return None
        return (tuple(sorted(rest + [c])), c)

    degs = state
    vr = len(degs) // p.v
    if op == CARTESIAN:
        if vr == 1:
            return (0,) if degs == p.degs else None
        rest = _divide_additive(degs, p.degs)
        if rest is None or rest[0] == 0:
            return None
        return rest
    if op == STRONG:
        if vr == 1:
            return (0,) if degs == p.degs else None
        shifted = _divide_multiplicative(tuple(d + 1 for d in degs),
                                         tuple(d + 1 for d in p.degs))
        if shifted is None or shifted[0] == 1:
            return None
        return tuple(d - 1 for d in shifted)
    if op == MODLEX:
        if vr == 1:
            return (0,) if degs == p.degs else None
        rest = _divide_blockwise(degs, p.degs, vr)
        if rest is None or rest[0] == 0:
            return None
        return rest
    raise UnsupportedDomain(f"unknown product {op!r}")


def factor_sequences(g: Graph, op: str,
                     reg: PrimeRegistry) -> list[tuple[Letter, ...]]:
    """Every sequence of registered primes whose product is isomorphic to g."""
    check_domain(g, op)
    target_profile = invariant_profile(g)
    target_dist = distance_profile(g)
    results: list[tuple[Letter, ...]] = []
    seq: list[Letter] = []

    def rec(state, prefix: Graph):
        if _state_final(op, state):
            if invariant_profile(prefix) == target_profile and \
                    distance_profile(prefix) == target_dist and \
                    graphs_isomorphic(prefix, g):
                results.append(tuple(seq))
            return
        v = _state_vertices(op, state)
        pre = _node_pre(op, state)
        for s in range(2, min(v, reg.letter_cap) + 1):
            if v % s:
                continue
            vr = v // s
            for letter in reg.primes_of_size(s):
                stats = reg.stats(letter)
                if _quick_reject(op, state, pre, stats, vr):
                    continue
                nxt = _peel(op, state, stats)
                if nxt is None:
                    continue
                seq.append(letter)
                rec(nxt, graph_product(op, prefix, letter.payload))
                seq.pop()

    rec(_state_of(g, op), reg.neutral)
    return results


def factor_connected(g: Graph, op: str, reg: PrimeRegistry) -> Monomial:
    """Normal-form word of primes multiplying back to g.

    All complete factorizations found must agree after sorting commuting
    runs; under modlex a complete-graph factor is rejected, since those are
    exactly the factors without unique decompositions.
    """
    if reg.op != op:
        raise UnsupportedDomain(f"registry is for {reg.op}, not {op}")
    check_domain(g, op)
    if g.vertex_count == 1:
        if is_isomorphic(g, reg.neutral):
            return reg.identity()
        raise UnsupportedDomain("one-vertex graph is not the neutral element")
    sequences = factor_sequences(g, op, reg)
    if not sequences:
        if g.vertex_count > reg.letter_cap:
            raise SizeLimitExceeded(
                f"no factorization into primes of at most {reg.letter_cap} "
                f"vertices; {g.vertex_count}-vertex input is beyond the "
                f"exhaustive range")
        raise UnsupportedDomain(
            f"{g!r} admits no prime factorization under {op}")
    if op == MODLEX:
        for s in sequences:
            for letter in s:
                if letter.payload.vertex_count > 1 and is_complete(letter.payload):
                    raise UnsupportedDomain(
                        "modified lexicographic factorization excludes "
                        "complete-graph factors")
    monomials = {reg.word(s) for s in sequences}
    if len(monomials) != 1:
        raise FactorizationNotUnique(
            f"{len(monomials)} distinct normal forms for {g!r} under {op}")
    return monomials.pop()
