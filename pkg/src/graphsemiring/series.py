"""Degree-truncated series over a well-ordered word monoid.

Coefficients come in three variants: "nat" (nonnegative integers), "int"
(integers, the ring of differences), and "ext" (naturals plus a saturating
infinity, written w).  Every series carries a degree bound; all results are
exact for terms up to that bound.  Comparison, cancellation and root
extraction require the strictly ordered variants and reject "ext".
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping

from .errors import (IncomparableVariant, NoRoot, NotDivisible,
                     RegistryMismatch, ZeroDivisor)
from .monoid import (LetterRegistry, Monomial, SyntheticRegistry, divisors,
                     left_quotient, monomial_nth_root, right_quotient)

NAT = "nat"
INT = "int"
EXT = "ext"
VARIANTS = (NAT, INT, EXT)


class _Omega:
    """Saturating infinite coefficient; a single shared instance."""

    __slots__ = ()

    def __repr__(self):
        return "w"


OMEGA = _Omega()


def _c_add(a, b):
    if a is OMEGA or b is OMEGA:
        return OMEGA
    return a + b


def _c_mul(a, b):
    if a is OMEGA:
        return OMEGA if b is OMEGA or b > 0 else 0
    if b is OMEGA:
        return OMEGA if a > 0 else 0
    return a * b


def _check_coeff(variant: str, c) -> None:
    if c is OMEGA:
        if variant != EXT:
            raise ValueError("w coefficient outside the extended variant")
        return
    if not isinstance(c, int):
        raise ValueError(f"bad coefficient {c!r}")
    if variant in (NAT, EXT) and c < 0:
        raise ValueError(f"negative coefficient {c} in variant {variant}")


class Series:
    """Finite-support map Monomial -> coefficient, truncated at `bound`."""

    __slots__ = ("registry", "variant", "bound", "coeffs")

    def __init__(self, registry: LetterRegistry, variant: str,
                 bound: int | None,
                 coeffs: Mapping[Monomial, object] | None = None):
        if variant not in VARIANTS:
            raise ValueError(f"unknown coefficient variant {variant!r}")
        if bound is not None and bound < 0:
            raise ValueError("degree bound must be nonnegative")
        self.registry = registry
        self.variant = variant
        self.bound = bound
        clean: dict[Monomial, object] = {}
        for m, c in (coeffs or {}).items():
            if m.registry is not registry:
                raise RegistryMismatch("term from a different registry")
            _check_coeff(variant, c)
            if c is OMEGA or c != 0:
                if bound is None or m.degree <= bound:
                    clean[m] = c
        self.coeffs = clean

    # construction helpers

    @staticmethod
    def zero(registry, variant=NAT, bound=None) -> Series:
        return Series(registry, variant, bound)

    @staticmethod
    def one(registry, variant=NAT, bound=None) -> Series:
        return Series(registry, variant, bound, {registry.identity(): 1})

    @staticmethod
    def term(monomial: Monomial, coeff=1, variant=NAT, bound=None) -> Series:
        return Series(monomial.registry, variant, bound, {monomial: coeff})

    # inspection

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> list[Monomial]:
        return sorted(self.coeffs, key=lambda m: m.key)

    def min_term(self) -> tuple[Monomial, object]:
        m = min(self.coeffs, key=lambda m: m.key)
        return m, self.coeffs[m]

    def __getitem__(self, m: Monomial):
        return self.coeffs.get(m, 0)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.registry is other.registry
                and self.variant == other.variant
                and self.bound == other.bound
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.registry), self.variant, self.bound,
                     frozenset((m, repr(c)) for m, c in self.coeffs.items())))

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for m in self.support():
            c = self.coeffs[m]
            cs = "w" if c is OMEGA else str(c)
            if m.is_identity:
                parts.append(cs)
            elif c is not OMEGA and c == 1:
                parts.append(m.render())
            elif c is not OMEGA and c == -1:
                parts.append(f"-{m.render()}")
            else:
                parts.append(f"{cs}*{m.render()}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Series({self.render()!r}, bound={self.bound})"

    # arithmetic

    def _compat(self, other: Series) -> tuple[str, int | None]:
        if self.registry is not other.registry:
            raise RegistryMismatch("series over different registries")
        if self.variant != other.variant:
            raise ValueError(
                f"variant mismatch: {self.variant} vs {other.variant}")
        if self.bound is None:
            bound = other.bound
        elif other.bound is None:
            bound = self.bound
        else:
            bound = min(self.bound, other.bound)
        return self.variant, bound

    def __add__(self, other: Series) -> Series:
        variant, bound = self._compat(other)
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            out[m] = _c_add(out.get(m, 0), c)
        return Series(self.registry, variant, bound, out)

    def __mul__(self, other: Series) -> Series:
        variant, bound = self._compat(other)
        out: dict[Monomial, object] = {}
        for ma, ca in self.coeffs.items():
            for mb, cb in other.coeffs.items():
                if bound is not None and ma.degree + mb.degree > bound:
                    continue
                m = ma * mb
                out[m] = _c_add(out.get(m, 0), _c_mul(ca, cb))
        return Series(self.registry, variant, bound, out)

    def __neg__(self) -> Series:
        if self.variant != INT:
            raise ValueError("negation requires the integer variant")
        return Series(self.registry, INT, self.bound,
                      {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other: Series) -> Series:
        return self + (-other)

    def __pow__(self, n: int) -> Series:
        if n < 0:
            raise ValueError("negative power")
        out = Series.one(self.registry, self.variant, self.bound)
        for _ in range(n):
            out = out * self
        return out

    def as_variant(self, variant: str) -> Series:
        return Series(self.registry, variant, self.bound, dict(self.coeffs))


def compare(f: Series, g: Series) -> int:
    """-1, 0 or 1 by the sign of the coefficient difference at the least
    monomial where f and g disagree."""
    if f.registry is not g.registry:
        raise RegistryMismatch("series over different registries")
    if EXT in (f.variant, g.variant):
        raise IncomparableVariant("extended coefficients are not ordered")
    if f.bound != g.bound:
        raise ValueError("comparison requires a common degree bound")
    diff: list[Monomial] = [m for m in f.coeffs if f[m] != g[m]]
    diff.extend(m for m in g.coeffs if m not in f.coeffs)
    if not diff:
        return 0
    m = min(diff, key=lambda m: m.key)
    return -1 if f[m] < g[m] else 1


def _to_int_dict(f: Series) -> dict[Monomial, int]:
    return dict(f.coeffs)


def cancel(p: Series, c: Series, side: str = "right") -> Series:
    """The unique f with f*c == p (right) or c*f == p (left), up to the
    degree bound.  Peels minimal terms, subtracting in integer arithmetic;
    a "nat" input demands a nonnegative quotient."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if EXT in (p.variant, c.variant):
        raise IncomparableVariant("cancellation needs nat or int coefficients")
    if p.registry is not c.registry:
        raise RegistryMismatch("series over different registries")
    if p.variant != c.variant:
        raise ValueError("variant mismatch")
    if c.is_zero:
        raise ZeroDivisor("cannot cancel the zero series")
    bound = p.bound if c.bound is None else (
        c.bound if p.bound is None else min(p.bound, c.bound))

    c_min, gamma = c.min_term()
    remainder = _to_int_dict(p)
    quotient: dict[Monomial, int] = {}
    while remainder:
        m_star = min(remainder, key=lambda m: m.key)
        if side == "right":
            u = right_quotient(m_star, c_min)
        else:
            u = left_quotient(m_star, c_min)
        if u is None:
            raise NotDivisible(
                f"minimal term {m_star.render()} has no factor through {c_min.render()}")
        q, rem = divmod(remainder[m_star], gamma)
        if rem:
            raise NotDivisible(
                f"coefficient at {m_star.render()} not divisible by {gamma}")
        quotient[u] = quotient.get(u, 0) + q
        for mc, cc in c.coeffs.items():
            mm = u * mc if side == "right" else mc * u
            if bound is not None and mm.degree > bound:
                continue
            new = remainder.get(mm, 0) - q * cc
            if new:
                remainder[mm] = new
            else:
                remainder.pop(mm, None)
    if p.variant == NAT and any(v < 0 for v in quotient.values()):
        raise NotDivisible("quotient has negative coefficients")
    return Series(p.registry, p.variant, bound, quotient)


def _int_nth_root(value: int, n: int) -> int | None:
    if value < 0:
        return None
    root = round(value ** (1.0 / n)) if value else 0
    for cand in (root - 1, root, root + 1):
        if cand >= 0 and cand ** n == value:
            return cand
    return None


def nth_root(h: Series, n: int) -> Series:
    """The unique f >= 0 with f**n == h up to the degree bound.

    With a positive constant term the coefficients are forced one by one in
    increasing monomial order.  With constant term zero, each step proposes
    the next unknown monomial from the minimal unexplained term and
    backtracks over the (rarely several) candidates; a full verification of
    f**n == h guards both paths.
    """
    if n < 1:
        raise ValueError("root index must be positive")
    if h.variant != NAT:
        raise IncomparableVariant("roots are extracted for nat coefficients")
    if n == 1 or h.is_zero:
        return h
    reg = h.registry
    one = reg.identity()
    c0 = h[one]
    if c0:
        f = _root_positive_constant(h, n, c0)
    else:
        f = _root_zero_constant(h, n)
    if f is None or (f ** n) != h:
        raise NoRoot(f"series has no exact {n}-th root up to the bound")
    return f


def _root_positive_constant(h: Series, n: int, c0: int) -> Series | None:
    reg = h.registry
    root0 = _int_nth_root(c0, n)
    if root0 is None:
        return None
    lead = n * root0 ** (n - 1)
    coeffs: dict[Monomial, int] = {reg.identity(): root0}
    # With nonnegative coefficients the support of f sits inside that of h.
    for m in h.support():
        if m.is_identity:
            continue
        partial = Series(reg, NAT, h.bound, coeffs)
        residual = h[m] - (partial ** n)[m]
        if residual == 0:
            continue
        q, rem = divmod(residual, lead)
        if rem or q < 0:
            return None
        coeffs[m] = q
    return Series(reg, NAT, h.bound, coeffs)


def _root_zero_constant(h: Series, n: int) -> Series | None:
    reg = h.registry
    min_m, min_c = h.min_term()
    try:
        a = monomial_nth_root(min_m, n)
    except NoRoot:
        return None
    ca = _int_nth_root(min_c, n)
    if ca is None:
        return None
    lead = ca ** (n - 1)

    def attempt(coeffs: dict[Monomial, int], depth: int) -> Series | None:
        if depth > 60:
            return None
        f = Series(reg, NAT, h.bound, coeffs)
        diff: dict[Monomial, int] = dict(h.coeffs)
        for m, c in (f ** n).coeffs.items():
            diff[m] = diff.get(m, 0) - c
        diff = {m: c for m, c in diff.items() if c}
        if not diff:
            return f
        w = min(diff, key=lambda m: m.key)
        rw = diff[w]
        if rw < 0:
            return None
        candidates: list[Monomial] = []
        for i in range(n):
            rest = left_quotient(w, a ** i)
            if rest is None:
                continue
            b = right_quotient(rest, a ** (n - 1 - i))
            if b is not None and b not in coeffs and a < b and b not in candidates:
                candidates.append(b)
        for b in candidates:
            k = sum((a ** i) * b * (a ** (n - 1 - i)) == w for i in range(n))
            q, rem = divmod(rw, k * lead)
            if rem or q <= 0:
                continue
            coeffs[b] = q
            found = attempt(coeffs, depth + 1)
            if found is not None:
                return found
            del coeffs[b]
        return None

    return attempt({a: ca}, 0)


def demo_counterexample(degree_bound: int,
                        seq_a: Iterable[int],
                        seq_b: Iterable[int]) -> dict:
    """Cardinal coefficients break roots and additive cancellation.

    Over one commuting generator g, builds H = w*g + s_2 g^2 + s_3 g^3 + ...
    for each sequence; the squares agree coefficient-wise whatever the
    sequences were, while w*g + g equals w*g + n*g for every n.
    """
    if degree_bound < 2:
        raise ValueError("degree bound must be at least 2")
    reg = SyntheticRegistry(1, 0)
    g = reg.word([reg.letters_y[0]])

    def build(seq: Iterable[int]) -> Series:
        vals = list(seq)
        if not vals or any(v <= 0 for v in vals):
            raise ValueError("sequences must consist of positive integers")
        coeffs: dict[Monomial, object] = {g: OMEGA}
        for d in range(2, degree_bound + 1):
            coeffs[g ** d] = vals[min(d - 2, len(vals) - 1)]
        return Series(reg, EXT, degree_bound, coeffs)

    h_a, h_b = build(seq_a), build(seq_b)
    sq_a, sq_b = h_a * h_a, h_b * h_b
    omega_tail = all(sq_a[g ** d] is OMEGA
                     for d in range(2, degree_bound + 1))
    lhs = Series(reg, EXT, degree_bound, {g: _c_add(OMEGA, 1)})
    rhs = Series(reg, EXT, degree_bound, {g: _c_add(OMEGA, 5)})
    return {
        "h_a": h_a.render(),
        "h_b": h_b.render(),
        "inputs_equal": h_a == h_b,
        "squares_equal": sq_a == sq_b,
        "square": sq_a.render(),
        "square_tail_all_omega": omega_tail,
        "additive_cancellation_fails": lhs == rhs,
        "bound": degree_bound,
    }
