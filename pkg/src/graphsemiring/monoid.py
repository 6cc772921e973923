"""Normal-form words over commuting (y) and non-commuting (x) letters.

Words live in the free product of a free abelian monoid on the y-letters
with a free monoid on the x-letters: inside a maximal run of y-letters the
order is immaterial, so runs are kept sorted.

The word order compares, in turn: total degree; number of x-letters; the
sorted multiset of y-letters; the sequence of x-letters; and finally the
distribution of y-letters into the slots between x-letters, where pushing
y-letters further left makes a word smaller.  Every stage is respected by
multiplication on both sides, which makes the whole order strictly
monotone (plain shortlex on normal forms is not: merging a y-run across a
multiplication can overtake the first point of difference).  The property
suite re-checks monotonicity on large random samples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import NoRoot, RegistryMismatch

Y = "y"
X = "x"


@dataclass(frozen=True)
class Letter:
    """Alphabet entry; ranks must be assigned in ascending well-order within
    each kind, since all word comparisons reduce to (kind, rank) pairs."""

    kind: str  # "y" commuting, "x" non-commuting
    rank: int  # position within its kind
    payload: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in (Y, X):
            raise ValueError(f"bad letter kind {self.kind!r}")

    @property
    def sort_key(self) -> tuple[int, int]:
        return (0 if self.kind == Y else 1, self.rank)

    @property
    def name(self) -> str:
        return f"{self.kind}{self.rank}"

    def __lt__(self, other: Letter) -> bool:
        return self.sort_key < other.sort_key


class LetterRegistry:
    """Owns a well-ordered alphabet; words from different registries never mix."""

    def __init__(self):
        self.letters_y: list[Letter] = []
        self.letters_x: list[Letter] = []

    def letter(self, kind: str, rank: int) -> Letter:
        pool = self.letters_y if kind == Y else self.letters_x
        if rank >= len(pool):
            raise KeyError(f"no letter {kind}{rank} in registry")
        return pool[rank]

    def identity(self) -> Monomial:
        return Monomial(self, ())

    def word(self, letters: Iterable[Letter]) -> Monomial:
        return Monomial(self, tuple(letters))


class SyntheticRegistry(LetterRegistry):
    """Abstract alphabet with ny commuting and nx non-commuting letters."""

    def __init__(self, ny: int, nx: int):
        super().__init__()
        self.letters_y = [Letter(Y, i) for i in range(ny)]
        self.letters_x = [Letter(X, i) for i in range(nx)]


def _normalize(word: Sequence[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    run: list[Letter] = []
    for letter in word:
        if letter.kind == Y:
            run.append(letter)
        else:
            run.sort(key=lambda l: l.sort_key)
            out.extend(run)
            run = []
            out.append(letter)
    run.sort(key=lambda l: l.sort_key)
    out.extend(run)
    return tuple(out)


def _word_key(word: tuple[Letter, ...]) -> tuple:
    """Order key: degree, x-count, y-multiset, x-sequence, y-slot layout.

    Slots are compared so that a heavier or larger y-load further to the
    left makes the word smaller; integer negation realizes the reversal.
    """
    xs = []
    slots: list[list[int]] = [[]]
    for letter in word:
        if letter.kind == Y:
            slots[-1].append(letter.rank)
        else:
            xs.append(letter.rank)
            slots.append([])
    ys = sorted(r for s in slots for r in s)
    slot_key = tuple((-len(s), tuple(-r for r in s)) for s in slots)
    return (len(word), len(xs), tuple(ys), tuple(xs), slot_key)


@dataclass(frozen=True)
class Monomial:
    registry: LetterRegistry = field(compare=False)
    word: tuple[Letter, ...] = ()
    key: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "word", _normalize(self.word))
        object.__setattr__(self, "key", _word_key(self.word))

    @property
    def degree(self) -> int:
        return len(self.word)

    @property
    def is_identity(self) -> bool:
        return not self.word

    def __mul__(self, other: Monomial) -> Monomial:
        _check_registry(self, other)
        return Monomial(self.registry, self.word + other.word)

    def __pow__(self, n: int) -> Monomial:
        if n < 0:
            raise ValueError("negative power")
        return Monomial(self.registry, self.word * n)

    def __lt__(self, other: Monomial) -> bool:
        _check_registry(self, other)
        return self.key < other.key

    def __le__(self, other: Monomial) -> bool:
        _check_registry(self, other)
        return self.key <= other.key

    def __hash__(self):
        return hash(self.key)

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.registry is other.registry and self.word == other.word

    def render(self) -> str:
        if not self.word:
            return "1"
        parts = []
        for letter, group in itertools.groupby(self.word):
            k = len(list(group))
            parts.append(letter.name if k == 1 else f"{letter.name}^{k}")
        return "".join(parts)

    def __repr__(self):
        return f"Monomial({self.render()})"


def _check_registry(a: Monomial, b: Monomial) -> None:
    if a.registry is not b.registry:
        raise RegistryMismatch("monomials from different registries")


def compare(a: Monomial, b: Monomial) -> int:
    """Shortlex comparison: -1, 0 or 1."""
    _check_registry(a, b)
    if a.key == b.key:
        return 0
    return -1 if a.key < b.key else 1


def _runs(word: tuple[Letter, ...]) -> tuple[list[list[Letter]], list[Letter]]:
    """Split into y-runs separated by x-letters; len(runs) == len(xs) + 1."""
    runs: list[list[Letter]] = [[]]
    xs: list[Letter] = []
    for letter in word:
        if letter.kind == Y:
            runs[-1].append(letter)
        else:
            xs.append(letter)
            runs.append([])
    return runs, xs


def _multiset_bipartitions(run: list[Letter]):
    """All (left, right) splits of a sorted multiset of commuting letters."""
    groups = [(k, len(list(g))) for k, g in itertools.groupby(run)]
    take_ranges = [range(c + 1) for _, c in groups]
    for takes in itertools.product(*take_ranges):
        left: list[Letter] = []
        right: list[Letter] = []
        for (letter, count), t in zip(groups, takes):
            left.extend([letter] * t)
            right.extend([letter] * (count - t))
        yield left, right


def divisors(m: Monomial) -> list[tuple[Monomial, Monomial]]:
    """All ordered pairs (u, v) with u * v == m; finite, includes both
    trivial splits.  A split between two x-letters is a plain cut; a split
    inside a y-run additionally distributes that run's multiset."""
    runs, xs = _runs(m.word)
    reg = m.registry
    out = []
    for k in range(len(xs) + 1):
        prefix: list[Letter] = []
        for i in range(k):
            prefix.extend(runs[i])
            prefix.append(xs[i])
        suffix: list[Letter] = []
        for i in range(k + 1, len(xs) + 1):
            suffix.append(xs[i - 1])
            suffix.extend(runs[i])
        for left, right in _multiset_bipartitions(runs[k]):
            u = Monomial(reg, tuple(prefix + left))
            v = Monomial(reg, tuple(right + suffix))
            out.append((u, v))
    return out


def left_quotient(m: Monomial, prefix: Monomial) -> Monomial | None:
    """The unique q with prefix * q == m, else None."""
    for u, v in divisors(m):
        if u == prefix:
            return v
    return None


def right_quotient(m: Monomial, suffix: Monomial) -> Monomial | None:
    """The unique q with q * suffix == m, else None."""
    for u, v in divisors(m):
        if v == suffix:
            return u
    return None


def monomial_nth_root(m: Monomial, n: int) -> Monomial:
    """The unique u with u**n == m; raises NoRoot when there is none."""
    if n < 1:
        raise ValueError("root index must be positive")
    if n == 1 or m.is_identity:
        return m
    if m.degree % n:
        raise NoRoot(f"degree {m.degree} not divisible by {n}")
    want = m.degree // n
    seen = set()
    for u, _ in divisors(m):
        if u.degree == want and u not in seen:
            seen.add(u)
            if u ** n == m:
                return u
    raise NoRoot(f"{m.render()} has no {n}-th root")
