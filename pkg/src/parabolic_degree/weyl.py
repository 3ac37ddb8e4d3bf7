"""Weyl group elements acting on the root lattice, reduced words, and
convex orders of positive roots attached to a parabolic subset.

An element is stored as the integer matrix whose ``j``-th column is
``w(alpha_j)`` in simple-root coordinates. Words use 1-based letters and are
read left to right as products, ``(i1, i2, ...) = s_i1 s_i2 ...``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator, Sequence

from .cartan import Matrix, RootSystem, Vector, reflect
from .exactla import rank_rational

logger = logging.getLogger(__name__)

LEVI_INTERNAL = "levi-internal"
LITERAL_PAPER = "literal-paper"
CONVENTIONS = (LEVI_INTERNAL, LITERAL_PAPER)

DEFAULT_GROUP_GUARD = 51840


class WeylError(ValueError):
    pass


def _identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True, eq=False)
class WeylElement:
    matrix: Matrix
    word: tuple[int, ...] | None = None

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(_matmul(self.matrix, other.matrix), word)

    def act(self, v: Sequence[int]) -> Vector:
        return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in self.matrix)

    @property
    def inverse_matrix(self) -> Matrix:
        # Weyl groups are finite, so w^-1 is a power of w
        n = len(self.matrix)
        ident = _identity(n)
        prev, cur = ident, self.matrix
        while cur != ident:
            prev, cur = cur, _matmul(cur, self.matrix)
        return prev

    def inverse(self) -> "WeylElement":
        word = tuple(reversed(self.word)) if self.word is not None else None
        return WeylElement(self.inverse_matrix, word)

    def is_identity(self) -> bool:
        return self.matrix == _identity(len(self.matrix))


def identity(rs: RootSystem) -> WeylElement:
    return WeylElement(_identity(rs.rank), ())


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    """``s_i`` for a 1-based index ``i``."""
    n = rs.rank
    if not 1 <= i <= n:
        raise WeylError(f"simple reflection index {i} out of range 1..{n}")
    cols = [reflect(rs.datum, i - 1, rs.simple_root(j + 1)) for j in range(n)]
    return WeylElement(tuple(tuple(cols[j][r] for j in range(n)) for r in range(n)), (i,))


def from_word(rs: RootSystem, word: Iterable[int]) -> WeylElement:
    w = identity(rs)
    for i in word:
        w = w * simple_reflection(rs, i)
    return w


def _is_negative(v: Sequence[int]) -> bool:
    return any(x < 0 for x in v)


def inversion_set(rs: RootSystem, w: WeylElement) -> list[Vector]:
    """Positive roots sent to negative roots by ``w``."""
    return [b for b in rs.positive_roots if _is_negative(w.act(b))]


def length(rs: RootSystem, w: WeylElement) -> int:
    return len(inversion_set(rs, w))


def right_descents(rs: RootSystem, w: WeylElement) -> list[int]:
    return [i for i in range(1, rs.rank + 1) if _is_negative(w.act(rs.simple_root(i)))]


def reduced_word(rs: RootSystem, w: WeylElement, seed: int | None = None) -> tuple[int, ...]:
    """Reduced word of ``w`` by stripping right descents.

    Without a seed the smallest descent is stripped each time; with a seed
    the descent is chosen at random, giving other reduced words.
    """
    rng = random.Random(seed) if seed is not None else None
    letters = []
    cur = WeylElement(w.matrix)
    while True:
        desc = right_descents(rs, cur)
        if not desc:
            break
        i = rng.choice(desc) if rng else desc[0]
        letters.append(i)
        cur = cur * simple_reflection(rs, i)
    return tuple(reversed(letters))


def longest_element(rs: RootSystem, support: Iterable[int] = None, seed: int | None = None) -> WeylElement:
    """Longest element of the parabolic subgroup generated by ``support``.

    Builds the word by appending ascents inside ``support`` until none is
    left; each step raises the length by one, so the word is reduced.
    """
    support = sorted(set(range(1, rs.rank + 1) if support is None else support))
    rng = random.Random(seed) if seed is not None else None
    w = identity(rs)
    while True:
        ascents = [i for i in support if not _is_negative(w.act(rs.simple_root(i)))]
        if not ascents:
            return w
        i = rng.choice(ascents) if rng else ascents[0]
        w = w * simple_reflection(rs, i)


@dataclass(frozen=True)
class ParabolicDatum:
    rs: RootSystem
    levi: tuple[int, ...]
    levi_positive_roots: tuple[Vector, ...]
    w0: WeylElement
    w0_levi: WeylElement
    wbar: WeylElement

    @property
    def h(self) -> int:
        return len(self.levi_positive_roots)

    @property
    def k(self) -> int:
        return self.rs.N - self.h

    @property
    def n(self) -> int:
        return self.rs.rank


def parabolic_datum(rs: RootSystem, levi: Iterable[int], seed: int | None = None) -> ParabolicDatum:
    """Assemble ``w0``, ``w0_levi`` and ``wbar = w0 * w0_levi^-1`` with reduced words.

    ``seed`` randomizes the descent choices for both factors.
    """
    levi = tuple(sorted(set(levi)))
    for i in levi:
        if not 1 <= i <= rs.rank:
            raise WeylError(f"levi index {i} out of range 1..{rs.rank}")
    mask = set(levi)
    levi_roots = tuple(
        b for b in rs.positive_roots if all(b[j] == 0 for j in range(rs.rank) if j + 1 not in mask)
    )
    w0 = longest_element(rs, None, seed)
    w0_levi = longest_element(rs, levi, None if seed is None else seed + 1)
    wbar_m = WeylElement(_matmul(w0.matrix, w0_levi.inverse_matrix))
    wbar = WeylElement(wbar_m.matrix, reduced_word(rs, wbar_m, None if seed is None else seed + 2))
    return ParabolicDatum(rs, levi, levi_roots, w0, w0_levi, wbar)


def coset_factorize(pd: ParabolicDatum) -> tuple[int, ...]:
    """Reduced word of ``w0`` whose last ``h`` letters spell ``w0_levi``."""
    word = pd.wbar.word + pd.w0_levi.word
    rs = pd.rs
    if (
        len(pd.w0_levi.word) != pd.h
        or len(pd.wbar.word) != pd.k
        or len(word) != rs.N
        or from_word(rs, word) != pd.w0
    ):
        raise AssertionError(
            f"coset factorization of w0 not length additive for {rs.datum.label}, levi={pd.levi}: "
            f"|wbar|={len(pd.wbar.word)}, |w0_levi|={len(pd.w0_levi.word)}, N={rs.N}"
        )
    return word


def convex_order(rs: RootSystem, word: Sequence[int]) -> list[Vector]:
    """``beta_t = s_{l_1} ... s_{l_{t-1}}(alpha_{l_t})`` along a word."""
    out = []
    prefix = identity(rs)
    for i in word:
        out.append(prefix.act(rs.simple_root(i)))
        prefix = prefix * simple_reflection(rs, i)
    return out


def is_reduced(rs: RootSystem, word: Sequence[int]) -> bool:
    return length(rs, from_word(rs, word)) == len(word)


@dataclass(frozen=True)
class BetaSequence:
    full: tuple[Vector, ...]
    levi: tuple[Vector, ...]
    complement: tuple[Vector, ...]
    convention: str
    word: tuple[int, ...]


def beta_sequence(pd: ParabolicDatum, word: Sequence[int] | None = None,
                  convention: str = LEVI_INTERNAL) -> BetaSequence:
    """Convex order of R+ from ``word`` and its Levi / complement sublists.

    Under ``levi-internal`` the Levi list is the convex order of the last
    ``h`` letters alone, which lands in the Levi positive roots. Under
    ``literal-paper`` it is prefixed by ``wbar`` and coincides with the tail
    of the full list.
    """
    if convention not in CONVENTIONS:
        raise WeylError(f"unknown convention {convention!r}; expected one of {CONVENTIONS}")
    rs = pd.rs
    word = tuple(coset_factorize(pd) if word is None else word)
    if len(word) != rs.N or not is_reduced(rs, word) or from_word(rs, word) != pd.w0:
        raise WeylError(f"{word} is not a reduced word of w0")
    k = pd.k
    full = convex_order(rs, word)
    levi_word = word[k:]
    if convention == LEVI_INTERNAL:
        levi = convex_order(rs, levi_word)
    else:
        wbar = from_word(rs, word[:k])
        levi = [wbar.act(b) for b in convex_order(rs, levi_word)]
    return BetaSequence(tuple(full), tuple(levi), tuple(full[:k]), convention, word)


def rank_w0_minus_w0levi(pd: ParabolicDatum) -> int:
    n = pd.n
    diff = [[pd.w0.matrix[i][j] - pd.w0_levi.matrix[i][j] for j in range(n)] for i in range(n)]
    return rank_rational(diff)


def group_order(rs: RootSystem) -> int:
    n = rs.rank
    return {
        "A": lambda: factorial(n + 1),
        "B": lambda: 2 ** n * factorial(n),
        "C": lambda: 2 ** n * factorial(n),
        "D": lambda: 2 ** (n - 1) * factorial(n),
        "E": lambda: {6: 51840, 7: 2903040, 8: 696729600}[n],
        "F": lambda: 1152,
        "G": lambda: 12,
    }[rs.family]()


class GroupTooLarge(WeylError):
    pass


def enumerate_group(rs: RootSystem, max_order_guard: int = DEFAULT_GROUP_GUARD) -> Iterator[WeylElement]:
    """Yield every element of W once, breadth first from the identity."""
    order = group_order(rs)
    if order > max_order_guard:
        raise GroupTooLarge(
            f"|W({rs.datum.label})| = {order} exceeds the guard {max_order_guard}"
        )
    gens = [simple_reflection(rs, i) for i in range(1, rs.rank + 1)]
    start = identity(rs)
    seen = {start.matrix}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            yield w
            for s in gens:
                u = w * s
                if u.matrix not in seen:
                    seen.add(u.matrix)
                    nxt.append(u)
        frontier = nxt
