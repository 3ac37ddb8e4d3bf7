"""Cartan data, positive roots and the invariant form for simple Lie types.

Simple roots follow Bourbaki numbering. Roots live in simple-root
coordinates, and the invariant form is ``(alpha_i|alpha_j) = d_i * c_ij``,
where ``c_ij = <alpha_i^vee, alpha_j>``. The reflection ``s_i`` sends
``alpha_j`` to ``alpha_j - c_ij * alpha_i``.

Bourbaki numbering of the non-simply-laced types:

* ``B_n``: ``alpha_n`` short, ``d = (2, ..., 2, 1)``
* ``C_n``: ``alpha_n`` long, ``d = (1, ..., 1, 2)``
* ``F_4``: ``alpha_1, alpha_2`` long, ``d = (2, 2, 1, 1)``
* ``G_2``: ``alpha_2`` long, ``d = (1, 3)``
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Sequence

Vector = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

FAMILIES = "ABCDEFG"

_RANK_RULES = {
    "A": ("n >= 1", lambda n: n >= 1),
    "B": ("n >= 2", lambda n: n >= 2),
    "C": ("n >= 2", lambda n: n >= 2),
    "D": ("n >= 3", lambda n: n >= 3),
    "E": ("n in {6, 7, 8}", lambda n: n in (6, 7, 8)),
    "F": ("n = 4", lambda n: n == 4),
    "G": ("n = 2", lambda n: n == 2),
}


class CartanError(ValueError):
    """Invalid family/rank combination."""


@dataclass(frozen=True)
class CartanDatum:
    family: str
    rank: int
    cartan: Matrix
    symmetrizers: Vector

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    @cached_property
    def gram(self) -> Matrix:
        """Matrix of the invariant form on simple roots, ``d_i * c_ij``."""
        n = self.rank
        return tuple(
            tuple(self.symmetrizers[i] * self.cartan[i][j] for j in range(n))
            for i in range(n)
        )


def _chain_edges(n):
    return [(i, i + 1) for i in range(n - 1)]


def _symmetric_form(family: str, n: int) -> list[list[int]]:
    # (alpha_i|alpha_j), normalized so that short roots have square length 2
    # (long roots in simply-laced types)
    sq = [2] * n
    edges: list[tuple[int, int]] = []
    if family == "A":
        edges = _chain_edges(n)
    elif family == "B":
        sq = [4] * (n - 1) + [2]
        edges = _chain_edges(n)
    elif family == "C":
        sq = [2] * (n - 1) + [4]
        edges = _chain_edges(n)
    elif family == "D":
        edges = _chain_edges(n - 1) + [(n - 3, n - 1)]
    elif family == "E":
        # Bourbaki: 1-3-4-5-6-(7-8), with 2 attached to 4
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
    elif family == "F":
        sq = [4, 4, 2, 2]
        edges = _chain_edges(4)
    elif family == "G":
        sq = [2, 6]
        edges = [(0, 1)]
    form = [[0] * n for _ in range(n)]
    for i in range(n):
        form[i][i] = sq[i]
    for i, j in edges:
        # adjacent nodes: (alpha_i|alpha_j) = -max(|alpha_i|^2, |alpha_j|^2) / 2
        v = -max(sq[i], sq[j]) // 2
        form[i][j] = form[j][i] = v
    return form


def build_cartan(family: str, n: int) -> CartanDatum:
    """Bourbaki Cartan matrix and minimal symmetrizers of a simple type."""
    family = family.upper()
    if family not in _RANK_RULES:
        raise CartanError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    rule, ok = _RANK_RULES[family]
    if not isinstance(n, int) or not ok(n):
        raise CartanError(f"type {family} requires {rule}, got n={n}")
    form = _symmetric_form(family, n)
    d = [form[i][i] // 2 for i in range(n)]
    g = 0
    for x in d:
        g = gcd(g, x)
    d = [x // g for x in d]
    cartan = tuple(
        tuple(2 * form[i][j] // form[i][i] for j in range(n)) for i in range(n)
    )
    return CartanDatum(family, n, cartan, tuple(d))


def parse_type(label: str) -> tuple[str, int]:
    """Split a type string such as ``"B3"`` into ``("B", 3)``."""
    label = label.strip()
    if len(label) < 2 or not label[1:].isdigit():
        raise CartanError(f"malformed type string {label!r}; expected e.g. 'A3' or 'G2'")
    return label[0].upper(), int(label[1:])


def reflect(datum: CartanDatum, i: int, v: Sequence[int]) -> Vector:
    """Apply ``s_i`` (0-based ``i``) to a vector in simple-root coordinates."""
    c = datum.cartan[i]
    coef = sum(c[j] * v[j] for j in range(datum.rank))
    out = list(v)
    out[i] -= coef
    return tuple(out)


@dataclass(frozen=True)
class RootSystem:
    datum: CartanDatum
    positive_roots: tuple[Vector, ...]
    highest: Vector
    _index: dict = field(default=None, repr=False, compare=False)

    @property
    def N(self) -> int:
        return len(self.positive_roots)

    @property
    def rank(self) -> int:
        return self.datum.rank

    @property
    def family(self) -> str:
        return self.datum.family

    def index(self, root: Sequence[int]) -> int:
        return self._index[tuple(root)]

    def is_positive_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._index

    def is_root(self, v: Sequence[int]) -> bool:
        v = tuple(v)
        return v in self._index or tuple(-x for x in v) in self._index

    def simple_root(self, i: int) -> Vector:
        """``alpha_i`` for a 1-based index."""
        return tuple(int(j == i - 1) for j in range(self.rank))


def positive_roots(datum: CartanDatum) -> RootSystem:
    """Close the simple roots under simple reflections, keeping positive images."""
    n = datum.rank
    simple = [tuple(int(j == i) for j in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                img = reflect(datum, i, beta)
                if all(x >= 0 for x in img) and img not in found:
                    found.add(img)
                    nxt.append(img)
        frontier = nxt
    roots = tuple(sorted(found, key=lambda r: (sum(r), tuple(-x for x in r))))
    highest = roots[-1]
    index = {r: k for k, r in enumerate(roots)}
    return RootSystem(datum, roots, highest, index)


def root_system(family: str, n: int) -> RootSystem:
    return positive_roots(build_cartan(family, n))


def inner_product(rs: RootSystem, v: Sequence[int], w: Sequence[int]) -> int:
    g = rs.datum.gram
    n = rs.rank
    return sum(v[i] * g[i][j] * w[j] for i in range(n) for j in range(n) if v[i] and w[j])


def weight_pairing(rs: RootSystem, i: int, beta: Sequence[int]) -> int:
    """``(omega_i|beta)`` for a 1-based index, using ``(omega_i|alpha_j) = delta_ij d_j``."""
    if not 1 <= i <= rs.rank:
        raise IndexError(f"simple-root index {i} out of range 1..{rs.rank}")
    return rs.datum.symmetrizers[i - 1] * beta[i - 1]


def is_good(rs: RootSystem, l: int) -> bool:
    """Odd, coprime to every highest-root coefficient, and to 3 in type G."""
    if l < 1 or l % 2 == 0:
        return False
    if any(gcd(l, a) != 1 for a in rs.highest):
        return False
    if rs.family == "G" and gcd(l, 3) != 1:
        return False
    return True
