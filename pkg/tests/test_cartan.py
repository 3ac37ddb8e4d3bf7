from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parabolic_degree import cartan
from parabolic_degree.cartan import CartanError, build_cartan, inner_product, is_good, weight_pairing

from conftest import ALL_TYPES_UP_TO_8, SMALL_TYPES


def minimal_symmetrizer(c):
    """Brute force: smallest positive d with d_i c_ij = d_j c_ji."""
    n = len(c)
    best = None
    for d in product(range(1, 5), repeat=n):
        if all(d[i] * c[i][j] == d[j] * c[j][i] for i in range(n) for j in range(n)):
            if best is None or sum(d) < sum(best):
                best = d
    return best


def classical_count(family, n):
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(n),
        "F": 24,
        "G": 6,
    }[family]


# Bourbaki tables of highest-root coefficients
HIGHEST = {
    ("E", 6): (1, 2, 2, 3, 2, 1),
    ("E", 7): (2, 2, 3, 4, 3, 2, 1),
    ("E", 8): (2, 3, 4, 6, 5, 4, 3, 2),
    ("F", 4): (2, 3, 4, 2),
    ("G", 2): (3, 2),
}


def highest_table(family, n):
    if family == "A":
        return (1,) * n
    if family == "B":
        return (1,) + (2,) * (n - 1)
    if family == "C":
        return (2,) * (n - 1) + (1,)
    if family == "D":
        return (1,) + (2,) * (n - 3) + (1, 1)
    return HIGHEST[family, n]


def test_a1():
    d = build_cartan("A", 1)
    assert d.cartan == ((2,),)
    assert d.symmetrizers == (1,)


def test_g2_bourbaki():
    d = build_cartan("G", 2)
    assert d.symmetrizers == (1, 3)
    assert d.cartan == ((2, -3), (-1, 2))
    g = d.gram
    assert g[0][1] == g[1][0] == -3


def test_b3_numbering():
    d = build_cartan("B", 3)
    assert d.cartan[2][1] == -2 and d.cartan[1][2] == -1
    assert d.symmetrizers == (2, 2, 1)


@pytest.mark.parametrize("family,n", ALL_TYPES_UP_TO_8)
def test_cartan_invariants(family, n):
    d = build_cartan(family, n)
    c = d.cartan
    for i in range(n):
        assert c[i][i] == 2
        for j in range(n):
            if i != j:
                assert c[i][j] <= 0
                assert (c[i][j] == 0) == (c[j][i] == 0)
    if n <= 8 and family in "BCFG" or n <= 5:
        assert d.symmetrizers == minimal_symmetrizer(c)
    assert all(
        d.symmetrizers[i] * c[i][j] == d.symmetrizers[j] * c[j][i]
        for i in range(n) for j in range(n)
    )


@pytest.mark.parametrize("family,n", [("E", 5), ("E", 9), ("F", 3), ("G", 3), ("B", 1),
                                      ("C", 1), ("D", 2), ("A", 0), ("X", 2)])
def test_invalid_rank_rejected(family, n):
    with pytest.raises(CartanError):
        build_cartan(family, n)


def test_invalid_rank_message_names_allowed():
    with pytest.raises(CartanError, match=r"6, 7, 8"):
        build_cartan("E", 5)


def test_parse_type():
    assert cartan.parse_type("B3") == ("B", 3)
    assert cartan.parse_type("g2") == ("G", 2)
    for bad in ("", "A", "3A", "Ax"):
        with pytest.raises(CartanError):
            cartan.parse_type(bad)


def test_inner_product_examples(root_systems):
    a2 = root_systems("A", 2)
    assert inner_product(a2, (1, 0), (1, 0)) == 2
    assert inner_product(a2, (1, 0), (0, 1)) == -1
    g2 = root_systems("G", 2)
    assert inner_product(g2, (0, 1), (0, 1)) == 6


def test_positive_roots_examples(root_systems):
    a2 = root_systems("A", 2)
    assert set(a2.positive_roots) == {(1, 0), (0, 1), (1, 1)}
    assert a2.N == 3 and a2.highest == (1, 1)
    b2 = root_systems("B", 2)
    assert b2.N == 4 and b2.highest == (1, 2)
    assert root_systems("A", 1).positive_roots == ((1,),)


@pytest.mark.parametrize("family,n", ALL_TYPES_UP_TO_8)
def test_root_count_and_highest(root_systems, family, n):
    rs = root_systems(family, n)
    assert rs.N == classical_count(family, n)
    assert len(set(rs.positive_roots)) == rs.N
    assert rs.highest == highest_table(family, n)
    # dominance: highest minus any positive root is nonnegative
    for b in rs.positive_roots:
        assert all(h >= x for h, x in zip(rs.highest, b))


@pytest.mark.parametrize("family,n", SMALL_TYPES + [("E", 6), ("E", 8)])
def test_reflection_closure(root_systems, family, n):
    rs = root_systems(family, n)
    for b in rs.positive_roots:
        for i in range(n):
            img = cartan.reflect(rs.datum, i, b)
            assert rs.is_root(img)
            if any(x < 0 for x in img):
                assert b == rs.simple_root(i + 1)


@pytest.mark.parametrize("family,n", ALL_TYPES_UP_TO_8)
def test_highest_root_is_long(root_systems, family, n):
    rs = root_systems(family, n)
    top = inner_product(rs, rs.highest, rs.highest)
    assert all(inner_product(rs, b, b) <= top for b in rs.positive_roots)


def test_weight_pairing_examples(root_systems):
    a2 = root_systems("A", 2)
    assert weight_pairing(a2, 1, (1, 0)) == 1
    assert weight_pairing(a2, 1, (1, 1)) == 1
    assert weight_pairing(root_systems("G", 2), 2, (0, 1)) == 3
    with pytest.raises(IndexError):
        weight_pairing(a2, 3, (1, 0))


def test_is_good_examples(root_systems):
    assert is_good(root_systems("A", 3), 5)
    assert not is_good(root_systems("G", 2), 9)
    assert not is_good(root_systems("G", 2), 3)
    assert is_good(root_systems("G", 2), 5)
    assert not is_good(root_systems("B", 3), 2)
    assert not is_good(root_systems("E", 8), 5)
    assert is_good(root_systems("E", 8), 7)


TYPES = st.sampled_from(ALL_TYPES_UP_TO_8)


@settings(max_examples=60, deadline=None)
@given(TYPES, st.data())
def test_inner_product_symmetric_and_reflection_invariant(root_systems, t, data):
    rs = root_systems(*t)
    n = rs.rank
    vec = st.lists(st.integers(-6, 6), min_size=n, max_size=n)
    v, w = data.draw(vec), data.draw(vec)
    assert inner_product(rs, v, w) == inner_product(rs, w, v)
    for i in range(n):
        sv = cartan.reflect(rs.datum, i, v)
        sw = cartan.reflect(rs.datum, i, w)
        assert inner_product(rs, sv, sw) == inner_product(rs, v, w)
