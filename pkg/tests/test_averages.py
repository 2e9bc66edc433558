from fractions import Fraction
from math import ceil, floor

import pytest
from hypothesis import given, strategies as st

from goodrhythm import averages as av
from goodrhythm.core import Residue
from goodrhythm.errors import UsageError

ints = st.integers(-10_000, 10_000)


def test_av_floor():
    assert av.av_floor(3, 4) == 3
    assert av.av_floor(7, 14) == 10
    assert av.av_floor(-3, 2) == -1


@pytest.mark.parametrize("a,b,expected", [(3, 4, 4), (4, 7, 5), (7, 2, 5), (2, 3, 2), (1, 2, 2), (2, 1, 1)])
def test_av_fc_examples(a, b, expected):
    assert av.av_fc(a, b) == expected


def test_av_cf_examples():
    assert av.av_cf(2, 5) == 4
    assert av.av_cf(3, 3) == 3
    assert av.av_fc(4, 5) == 4 and av.av_cf(3, 4) == 3


@given(ints)
def test_equal_arguments(m):
    assert av.av_fc(m, m) == av.av_cf(m, m) == av.av_floor(m, m) == m


@given(ints, ints)
def test_fc_cf_against_rational_midpoint(a, b):
    mid = Fraction(a + b, 2)
    assert av.av_fc(a, b) == (floor(mid) if a % 2 == 0 else ceil(mid))
    assert av.av_cf(a, b) == (ceil(mid) if a % 2 == 0 else floor(mid))


@given(ints, ints)
def test_fc_between_and_unit_shift(p, q):
    assert min(p, q) <= av.av_fc(p, q) <= max(p, q)
    assert av.av_fc(p + 1, q + 1) == av.av_cf(p, q) + 1


@pytest.mark.parametrize("e,expected", [(7, 3), (0, 0), (15, 7)])
def test_discrete_sqrt(e, expected):
    assert av.discrete_sqrt(Residue(e, 16)).value == expected


@pytest.mark.parametrize("a,b,expected", [(14, 0, 15), (5, 5, 5), (12, 4, 0), (0, 3, 1), (3, 7, 5), (7, 14, 10)])
def test_av_z_and_av_mu(a, b, expected):
    assert av.av_z(Residue(a, 16), Residue(b, 16)).value == expected
    assert av.av_mu(Residue(a, 16), Residue(b, 16)).value == expected
    assert av.av_z_int(a, b, 16) == expected


def test_av_z_modulus_mismatch():
    with pytest.raises(UsageError):
        av.av_z(Residue(1, 16), Residue(1, 8))


@given(st.integers(2, 40).flatmap(lambda N: st.tuples(st.just(N), st.integers(0, N - 1), st.integers(0, N - 1))))
def test_av_z_lands_in_half_open_arc(c):
    N, a, b = c
    got = av.av_z_int(a, b, N)
    if a == b:
        assert got == a
    else:
        span = (b - a) % N
        assert (got - a) % N < span
