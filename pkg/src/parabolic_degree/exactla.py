"""Exact linear algebra over Z, Q and prime fields.

Matrices are plain row-major sequences of Python integers, so nothing here
can overflow. Numpy integer arrays are accepted and converted on entry.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

IntMatrix = Sequence[Sequence[int]]


def to_rows(m: IntMatrix) -> list[list[int]]:
    return [[int(x) for x in row] for row in m]


def shape(m: IntMatrix) -> tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    return rows, cols


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for q in range(3, isqrt(p) + 1, 2):
        if p % q == 0:
            return False
    return True


def rank_rational(m: IntMatrix) -> int:
    """Rank over Q by Bareiss fraction-free elimination."""
    a = to_rows(m)
    rows, cols = shape(a)
    r = 0
    prev = 1
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c + 1, cols):
                # exact division is guaranteed by Sylvester's identity
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
    return r


def _echelon_mod_p(a: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_p; returns (rows, pivot columns)."""
    rows, cols = shape(a)
    a = [[x % p for x in row] for row in a]
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_mod_p(m: IntMatrix, p: int) -> int:
    """Rank of ``m`` reduced modulo the prime ``p``."""
    if not is_prime(p):
        raise ValueError(
            f"{p} is not prime; rank over Z/{p} is not a field rank, "
            "use smith_normal_form / rank_coprime_to instead"
        )
    return len(_echelon_mod_p(to_rows(m), p)[1])


def kernel_basis_mod_p(m: IntMatrix, p: int) -> list[list[int]]:
    """Basis of the right kernel over F_p, entries in ``0..p-1``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    a = to_rows(m)
    cols = shape(a)[1]
    ech, pivots = _echelon_mod_p(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for row, pc in zip(ech, pivots):
            v[pc] = (-row[f]) % p
        basis.append(v)
    return basis


def smith_normal_form(m: IntMatrix) -> list[int]:
    """Nonzero invariant factors ``d_1 | d_2 | ...`` of an integer matrix.

    Plain unimodular row/column reduction, always pivoting on the entry of
    smallest absolute value in the remaining block.
    """
    a = to_rows(m)
    rows, cols = shape(a)
    diag = []
    t = 0
    while t < min(rows, cols):
        nonzero = [
            (abs(a[i][j]), i, j)
            for i in range(t, rows)
            for j in range(t, cols)
            if a[i][j]
        ]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    dirty = True
            if not dirty:
                # pivot must divide the whole remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                     if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                dirty = True
            # move the smallest nonzero entry of row/column t into the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, pi, pj = min(cands)
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def rank_coprime_to(m: IntMatrix, l: int) -> int:
    """Number of invariant factors that are units modulo ``l``.

    For prime ``l`` this equals :func:`rank_mod_p`; for composite ``l`` it is
    the rank of the free part of the reduction over ``Z/l``.
    """
    return sum(1 for d in smith_normal_form(m) if gcd(d, l) == 1)


def kernel_basis_rational(m: IntMatrix) -> list[list[Fraction]]:
    """Basis of the right kernel over Q, from the reduced row echelon form."""
    a = [[Fraction(x) for x in row] for row in to_rows(m)]
    rows, cols = shape(a)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    pivset = set(pivots)
    basis = []
    for f in (c for c in range(cols) if c not in pivset):
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -a[row_idx][f]
        basis.append(v)
    return basis


def clear_denominators(v: Sequence[Fraction]) -> list[int]:
    """Primitive integer vector proportional to ``v``."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def mat_vec(m: IntMatrix, v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def mat_mul(a: IntMatrix, b: IntMatrix) -> list[list[int]]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def transpose(m: IntMatrix) -> list[list[int]]:
    return [list(col) for col in zip(*m)]


def is_skew_symmetric(m: IntMatrix) -> bool:
    rows, cols = shape(m)
    return rows == cols and all(
        m[i][j] == -m[j][i] for i in range(rows) for j in range(rows)
    )
