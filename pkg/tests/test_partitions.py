from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from supermacdonald.partitions import (
    Dominance, Partition, b_lambda, conjugate, contains, dominance_leq, east_south, format_partition,
    from_east_south, has_rectangle, in_Hnm, parse_partition, partitions_of, psum, rectangle, union,
    z_lambda,
)

Q, T = Fraction(49, 100), Fraction(1, 4)


@st.composite
def partitions(draw, max_weight=20):
    parts = draw(st.lists(st.integers(1, max_weight), max_size=max_weight))
    parts.sort(reverse=True)
    while sum(parts) > max_weight:
        parts.pop(0)
    return Partition(parts)


def test_normalization():
    assert Partition([2, 1, 0, 0]) == Partition([2, 1])
    assert Partition([]).length() == 0
    with pytest.raises(ValueError):
        Partition([1, 2])
    with pytest.raises(ValueError):
        Partition([2, -1])


def test_text_form():
    assert str(Partition([3, 2, 1])) == "3,2,1"
    assert str(Partition()) == ""
    assert parse_partition("") == Partition()
    assert parse_partition("1,3,2") == Partition([3, 2, 1])
    assert format_partition((2, 1)) == "2,1"


@pytest.mark.parametrize("lam, expected", [((), ()), ((3, 1), (2, 1, 1)), ((2, 1), (2, 1))])
def test_conjugate_examples(lam, expected):
    assert conjugate(Partition(lam)) == Partition(expected)


def test_dominance_examples():
    assert dominance_leq(Partition([1, 1, 1]), Partition([3])) is Dominance.LEQ
    assert dominance_leq(Partition([2, 2]), Partition([3, 1])) is Dominance.LEQ
    assert dominance_leq(Partition([3, 1]), Partition([2, 2])) is Dominance.GEQ
    assert dominance_leq(Partition([3, 1, 1, 1]), Partition([2, 2, 2])) is Dominance.INCOMPARABLE
    with pytest.raises(ValueError):
        dominance_leq(Partition([2]), Partition([1]))


def test_dominance_bruteforce():
    # partial sums compared by hand, including the reverse direction
    def sums(p, k):
        return [sum(p[:i]) for i in range(1, k + 1)]

    for lam in partitions_of(6):
        for mu in partitions_of(6):
            a, b = sums(lam.padded(6), 6), sums(mu.padded(6), 6)
            le = all(x <= y for x, y in zip(a, b))
            ge = all(x >= y for x, y in zip(a, b))
            got = dominance_leq(lam, mu)
            if le:
                assert got is Dominance.LEQ
            elif ge:
                assert got is Dominance.GEQ
            else:
                assert got is Dominance.INCOMPARABLE


def test_union_sum_contains():
    assert union(Partition([2, 1]), Partition([1])) == Partition([2, 1, 1])
    assert psum(Partition([2, 1]), Partition([1, 1])) == Partition([3, 2])
    assert contains(Partition([1, 1]), Partition([2, 1]))
    assert not contains(Partition([3]), Partition([2, 1]))


@pytest.mark.parametrize("lam, z", [((), 1), ((2, 1), 2), ((1, 1), 2), ((2, 2, 1), 8)])
def test_z_lambda(lam, z):
    assert z_lambda(Partition(lam)) == z


def test_b_lambda_examples():
    assert b_lambda(Partition(), Q, T) == 1
    assert b_lambda(Partition([1]), Q, T) == (1 - T) / (1 - Q)
    # (1,1): cells (1,1) and (2,1) straight from the cell product
    cell11 = (1 - Q**0 * T**2) / (1 - Q * T)
    cell21 = (1 - T) / (1 - Q)
    assert b_lambda(Partition([1, 1]), Q, T) == cell11 * cell21
    assert abs(b_lambda(Partition([1, 1]), 0.49, 0.25) - float(cell11 * cell21)) < 1e-15


def test_b_lambda_conjugate_duality():
    for d in range(9):
        for lam in partitions_of(d):
            assert b_lambda(lam, Q, T) * b_lambda(conjugate(lam), T, Q) == 1


def test_b_lambda_nongeneric():
    with pytest.raises(ZeroDivisionError):
        b_lambda(Partition([2]), Fraction(1), T)


def test_in_Hnm_examples():
    assert in_Hnm(Partition([2, 2, 2]), 1, 2)
    assert not in_Hnm(Partition([3, 3]), 1, 2)
    assert in_Hnm(Partition(), 3, 0)


def test_east_south_examples():
    e, s = east_south(Partition([3, 2, 1]), 1, 2)
    assert e == Partition([1]) and s == Partition([2, 1])
    assert east_south(rectangle(2, 3), 2, 3) == (Partition(), Partition())
    assert east_south(Partition([1]), 1, 1) == (Partition(), Partition())
    with pytest.raises(ValueError):
        east_south(Partition([1]), 2, 1)


def test_east_south_roundtrip():
    for n, m in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)]:
        for d in range(11):
            for lam in partitions_of(d):
                if in_Hnm(lam, n, m) and has_rectangle(lam, n, m):
                    e, s = east_south(lam, n, m)
                    assert len(e) <= n and len(s) <= m
                    # second line of the definition: s = (lam'_1 - n, ..., lam'_m - n)
                    lc = conjugate(lam)
                    assert s == Partition(lc.part(j) - n for j in range(1, m + 1))
                    assert from_east_south(e, s, n, m) == lam


@settings(max_examples=1000)
@given(partitions())
def test_conjugate_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert sum(conjugate(lam)) == sum(lam)


@settings(max_examples=300)
@given(partitions(12), partitions(12))
def test_union_conjugate_is_sum(lam, mu):
    if sum(lam) + sum(mu) <= 12:
        assert conjugate(union(lam, mu)) == psum(conjugate(lam), conjugate(mu))


def test_union_conjugate_exhaustive_small():
    for a in range(7):
        for b in range(7 - a):
            for lam in partitions_of(a):
                for mu in partitions_of(b):
                    assert conjugate(union(lam, mu)) == psum(conjugate(lam), conjugate(mu))
