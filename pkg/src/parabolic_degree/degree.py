"""Skew-symmetric commutation matrix of the degenerate parabolic quantum
group and the degree it determines.

Basis order of ``T`` is ``V+ (h) | V0 (n) | V- (N)``::

    T = [[ A_levi, -B_levi^t,  0 ],
         [ B_levi,  0,        -B ],
         [ 0,       B^t,      -A ]]

with ``A[i][j] = (beta_i|beta_j)`` above the diagonal, ``B[i][j] =
(omega_i|beta_j)`` and the Levi versions built from the Levi list.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from typing import Iterable

from . import cartan, exactla, weyl
from .cartan import RootSystem, inner_product, weight_pairing
from .weyl import LEVI_INTERNAL, BetaSequence, ParabolicDatum

logger = logging.getLogger(__name__)

REPORT_FIELDS = (
    "family", "rank", "levi", "l", "good", "N", "h", "k", "len_w0", "len_w0_levi", "s",
    "rank_T_rational", "rank_T_mod_l", "delta", "degree_exponent", "deg_tau_exponent",
    "identity_ok", "convention", "word",
)


@dataclass(frozen=True)
class DegreeMatrixBundle:
    A: list[list[int]]
    A_levi: list[list[int]]
    B: list[list[int]]
    B_levi: list[list[int]]
    T: list[list[int]]

    @property
    def dims(self) -> tuple[int, int, int]:
        """``(h, n, N)``."""
        return len(self.A_levi), len(self.B), len(self.A)

    @property
    def T1(self) -> list[list[int]]:
        """Rows of ``T`` outside the middle block row."""
        h, n, _ = self.dims
        return self.T[:h] + self.T[h + n:]

    @property
    def N_operator(self) -> list[list[int]]:
        h, n, _ = self.dims
        return self.T[h:h + n]


def commutation_matrix(rs: RootSystem, roots) -> list[list[int]]:
    m = len(roots)
    a = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            v = inner_product(rs, roots[i], roots[j])
            a[i][j] = v
            a[j][i] = -v
    return a


def pairing_matrix(rs: RootSystem, roots) -> list[list[int]]:
    return [[weight_pairing(rs, i, b) for b in roots] for i in range(1, rs.rank + 1)]


def assemble(pd: ParabolicDatum, betas: BetaSequence) -> DegreeMatrixBundle:
    rs = pd.rs
    if len(betas.full) != rs.N or len(betas.levi) != pd.h:
        raise ValueError(
            f"beta sequence sizes ({len(betas.full)}, {len(betas.levi)}) "
            f"do not match N={rs.N}, h={pd.h}"
        )
    A = commutation_matrix(rs, betas.full)
    A_levi = commutation_matrix(rs, betas.levi)
    B = pairing_matrix(rs, betas.full)
    B_levi = pairing_matrix(rs, betas.levi)
    h, n, N = pd.h, rs.rank, rs.N
    size = h + n + N
    T = [[0] * size for _ in range(size)]
    p0, pm = h, h + n
    for i in range(h):
        for j in range(h):
            T[i][j] = A_levi[i][j]
        for j in range(n):
            T[i][p0 + j] = -B_levi[j][i]
            T[p0 + j][i] = B_levi[j][i]
    for i in range(N):
        for j in range(N):
            T[pm + i][pm + j] = -A[i][j]
        for j in range(n):
            T[pm + i][p0 + j] = B[j][i]
            T[p0 + j][pm + i] = -B[j][i]
    return DegreeMatrixBundle(A, A_levi, B, B_levi, T)


@dataclass(frozen=True)
class DegreeReport:
    family: str
    rank: int
    levi: tuple[int, ...]
    l: int
    good: bool
    N: int
    h: int
    k: int
    len_w0: int
    len_w0_levi: int
    s: int
    rank_T_rational: int
    rank_T_mod_l: int
    delta: int
    degree_exponent: int
    deg_tau_exponent: int
    identity_ok: bool
    convention: str
    word: tuple[int, ...]
    # not serialized
    extrapolated: bool = False
    invariant_factors: tuple[int, ...] = ()

    @property
    def n(self) -> int:
        return self.rank

    @property
    def discrepancy(self) -> bool:
        """Good ``l`` but the rank of ``T`` mod ``l`` differs from ``delta``."""
        return self.good and self.rank_T_mod_l != self.delta

    def degree(self) -> int:
        """``l ** (delta / 2)`` as an exact integer."""
        return self.l ** self.degree_exponent

    def deg_tau(self) -> int:
        return self.l ** self.deg_tau_exponent

    def to_dict(self) -> dict:
        d = {name: getattr(self, name) for name in REPORT_FIELDS}
        d["levi"] = list(self.levi)
        d["word"] = list(self.word)
        return d


def validate_l(l: int) -> None:
    if not isinstance(l, int) or l < 3 or l % 2 == 0:
        raise ValueError(f"l must be an odd integer >= 3, got {l!r}")


def degree_report(family: str, n: int, levi: Iterable[int], l: int,
                  convention: str = LEVI_INTERNAL, word_seed: int | None = None) -> DegreeReport:
    validate_l(l)
    rs = cartan.root_system(family, n)
    pd = weyl.parabolic_datum(rs, levi, word_seed)
    return report_for(pd, l, convention)


def report_for(pd: ParabolicDatum, l: int, convention: str = LEVI_INTERNAL) -> DegreeReport:
    validate_l(l)
    rs = pd.rs
    word = weyl.coset_factorize(pd)
    betas = weyl.beta_sequence(pd, word, convention)
    bundle = assemble(pd, betas)
    len_w0 = weyl.length(rs, pd.w0)
    len_w0_levi = weyl.length(rs, pd.w0_levi)
    s = weyl.rank_w0_minus_w0levi(pd)
    rank_q = exactla.rank_rational(bundle.T)
    extrapolated = not exactla.is_prime(l)
    factors: tuple[int, ...] = ()
    if extrapolated:
        factors = tuple(exactla.smith_normal_form(bundle.T))
        rank_l = sum(1 for d in factors if gcd(d, l) == 1)
    else:
        rank_l = exactla.rank_mod_p(bundle.T, l)
    delta = len_w0 + len_w0_levi + s
    n = rs.rank
    good = cartan.is_good(rs, l)
    report = DegreeReport(
        family=rs.family, rank=n, levi=pd.levi, l=l, good=good,
        N=rs.N, h=pd.h, k=pd.k, len_w0=len_w0, len_w0_levi=len_w0_levi, s=s,
        rank_T_rational=rank_q, rank_T_mod_l=rank_l, delta=delta,
        degree_exponent=delta // 2, deg_tau_exponent=n - s,
        identity_ok=(pd.h + rs.N + n == delta + (n - s)),
        convention=convention, word=word, extrapolated=extrapolated,
        invariant_factors=factors,
    )
    if delta % 2:
        logger.error("odd delta=%d for %s levi=%s", delta, rs.datum.label, pd.levi)
    if report.discrepancy:
        logger.error(
            "rank of T mod %d is %d but l(w0)+l(w0_levi)+s = %d for %s levi=%s",
            l, rank_l, delta, rs.datum.label, pd.levi,
        )
    if extrapolated and good:
        logger.info("l=%d is composite; rank mod l taken from invariant factors", l)
    return report


def subsets(n: int) -> list[tuple[int, ...]]:
    """All subsets of ``1..n`` ordered by ascending bitmask (bit ``i-1`` is index ``i``)."""
    return [tuple(i + 1 for i in range(n) if mask >> i & 1) for mask in range(1 << n)]


def sweep_table(family: str, n: int, l: int, convention: str = LEVI_INTERNAL,
                word_seed: int | None = None) -> list[DegreeReport]:
    validate_l(l)
    rs = cartan.root_system(family, n)
    return [
        report_for(weyl.parabolic_datum(rs, levi, word_seed), l, convention)
        for levi in subsets(rs.rank)
    ]
