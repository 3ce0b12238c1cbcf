import pytest

from dsforge.ackermann import SATURATED, Ackermann, ack, alpha, alpha1, row_inverse

from oracles import brute_ack


def test_examples():
    assert ack(1, 5) == 32
    assert ack(3, 1) == 2
    assert ack(2, 2) == 8
    assert ack(2, 3) == 2048
    assert ack(3, 2) == 16


def test_against_direct_recursion():
    pairs = [(1, j) for j in range(1, 30)] + [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (4, 1), (4, 2)]
    for i, j in pairs:
        assert ack(i, j) == brute_ack(i, j)


def test_row_inverse_examples():
    assert row_inverse(1, 8) == 3
    for i in range(1, 6):
        assert row_inverse(i, 2) == 1
    assert row_inverse(2, 9) == 3


def test_alpha_examples():
    assert alpha(8, 8) == 1
    assert alpha(9, 9) == 2
    assert alpha1(9) == 2
    for n in range(2, 7):
        assert alpha(n, 2) == 1


def test_saturation():
    assert ack(2, 4) == 2**2059
    assert ack(2, 5) is SATURATED
    assert ack(4, 3) is SATURATED
    assert SATURATED > 2**5000
    small = Ackermann(cap=1000)
    assert small.value(1, 9) == 512 and small.value(1, 10) is SATURATED
    with pytest.raises(ValueError):
        row_inverse(1, 2**5000)


def test_monotone_in_j():
    for i in range(1, 5):
        prev = 0
        for j in range(1, 12):
            v = ack(i, j)
            if v is SATURATED:
                break
            assert v > prev
            prev = v


def test_alpha_monotone():
    for m in (1, 2, 5, 9, 100, 5000, 10**6):
        vals = [alpha(n, m) for n in (1, 10, 100, 10**4, 10**6)]
        assert vals == sorted(vals, reverse=True)
    for n in (1, 10, 10**6):
        vals = [alpha(n, m) for m in (1, 2, 9, 100, 3000, 10**6)]
        assert vals == sorted(vals)


def test_errors():
    with pytest.raises(ValueError):
        ack(0, 1)
    with pytest.raises(ValueError):
        alpha(0, 3)
