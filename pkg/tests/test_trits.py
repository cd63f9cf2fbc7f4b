from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cmbent import trits
from cmbent.errors import BadParameters, HalfPoint, OddInput, ZeroResidue
from cmbent.trits import TritVector, WeightRelation


def digit_sum(j: int, n: int) -> int:
    # independent route through numpy's base conversion
    return sum(int(c) for c in np.base_repr(j % (3**n - 1), 3))


def test_to_trits_examples():
    assert trits.to_trits(5, 3).digits == (2, 1, 0)
    assert str(trits.to_trits(5, 3)) == "012"
    assert trits.to_trits(-1, 3).digits == (1, 2, 2)
    assert trits.to_trits(26, 3).digits == (0, 0, 0)


def test_all_two_vector_rejected():
    with pytest.raises(ValueError):
        TritVector(3, (2, 2, 2))


@pytest.mark.parametrize("n", range(1, 9))
def test_wt_examples(n):
    assert trits.wt(0, n) == 0
    assert trits.wt(trits.half(n), n) == n


def test_wt_and_sigma_examples():
    assert trits.wt(-1, 3) == 5
    assert trits.sigma(0, 4) == 1
    # residues are reduced mod 3^n - 1, so 8 is 0 when n = 2; as 022 in n = 3 it is 2! 2!
    assert trits.sigma(8, 2) == 1
    assert trits.sigma(8, 3) == 4
    assert trits.sigma(4, 3) == 1


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_vectorised_weights_match_scalar(n):
    j = np.arange(-5, 3**n + 5)
    assert trits.wt_array(j, n).tolist() == [digit_sum(int(x), n) for x in j]
    assert trits.sigma_array(j, n).tolist() == [trits.sigma(int(x), n) for x in j]


@given(st.integers(1, 10), st.integers(-10**9, 10**9))
def test_rotation_invariance(n, j):
    # multiplying by 3 rotates the digits cyclically
    assert trits.wt(3 * j, n) == trits.wt(j, n)
    assert trits.sigma(3 * j, n) == trits.sigma(j, n)
    assert trits.to_trits(j, n).value == j % (3**n - 1)


# -- add with carry ------------------------------------------------------------


def test_add_with_carry_examples():
    z, c = trits.add_with_carry(trits.to_trits(0, 3), trits.to_trits(0, 3))
    assert z.value == 0 and c.bits == (0, 0, 0)
    z, c = trits.add_with_carry(trits.to_trits(13, 3), trits.to_trits(13, 3))
    assert z.value == 0 and c.bits == (1, 1, 1)
    z, c = trits.add_with_carry(trits.to_trits(1, 3), trits.to_trits(2, 3))
    assert z.digits == (0, 1, 0) and c.bits == (1, 0, 0)


def _carry_identity_holds(x: int, y: int, n: int) -> bool:
    z, c = trits.add_with_carry(trits.to_trits(x, n), trits.to_trits(y, n))
    return trits.wt(x, n) + trits.wt(y, n) == trits.wt(z.value, n) + 2 * c.weight


@pytest.mark.parametrize("n", range(1, 5))
def test_carry_identity_exhaustive(n):
    m = 3**n - 1
    for x, y in itertools.product(range(m), repeat=2):
        assert _carry_identity_holds(x, y, n)


@given(st.integers(2, 13).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 3**n - 2), st.integers(0, 3**n - 2))))
def test_carry_identity_property(args):
    n, x, y = args
    assert _carry_identity_holds(x, y, n)


# -- weight relations ----------------------------------------------------------


@pytest.mark.parametrize(
    "x,y,n,expected",
    [
        (1, 3, 3, WeightRelation.EQUAL),
        (2, 2, 2, WeightRelation.PLUS2),
        (13, 13, 3, WeightRelation.OTHER),
    ],
)
def test_eq_weight_condition_examples(x, y, n, expected):
    assert trits.eq_weight_condition(x, y, n) is expected


@pytest.mark.parametrize("n", range(1, 6))
def test_weight_relation_digit_criteria_exhaustive(n):
    # eq_weight_condition raises on any disagreement between the two routes
    m = 3**n - 1
    counts = {r: 0 for r in WeightRelation}
    for x, y in itertools.product(range(m), repeat=2):
        counts[trits.eq_weight_condition(x, y, n)] += 1
    assert counts[WeightRelation.EQUAL] > 0


def test_doubling_examples():
    with pytest.raises(HalfPoint):
        trits.doubling_cases(13, 3)
    with pytest.raises(ZeroResidue):
        trits.doubling_cases(0, 3)
    assert trits.doubling_cases(17, 3).eq
    assert not trits.doubling_cases(9, 3).eq


@pytest.mark.parametrize("n", range(1, 9))
def test_doubling_criteria_exhaustive(n):
    m = 3**n - 1
    for j in range(1, m):
        if j == trits.half(n):
            continue
        cases = trits.doubling_cases(j, n)
        gap = 2 * digit_sum(-j, n) - digit_sum(-2 * j, n)
        assert cases.eq == (gap == 0)
        assert cases.plus2 == (gap == 2)


@pytest.mark.parametrize(
    "value,n,expected",
    [(trits.pattern_100_1(2), 4, 14), (4, 2, 2), (0, 3, 0)],
)
def test_halving_examples(value, n, expected):
    assert trits.halving_patterns(trits.to_trits(value, n)).value == expected


@pytest.mark.parametrize("m", range(0, 6))
def test_halving_pattern_families(m):
    assert trits.pattern_100_1(m) // 2 == trits.pattern_1_2(m)
    assert trits.pattern_122_1(m) // 2 == trits.pattern_2s(m + 1)
    assert str(trits.to_trits(trits.pattern_2s(m + 1), m + 2)) == "0" + "2" * (m + 1)


def test_halving_odd_rejected():
    with pytest.raises(OddInput):
        trits.halving_patterns(trits.to_trits(5, 3))


# -- weight floor --------------------------------------------------------------


@pytest.mark.parametrize(
    "n,k,argmin",
    [(3, 1, {13}), (4, 3, {40}), (7, 5, {1093}), (5, 3, {121})],
)
def test_weight_floor_examples(n, k, argmin):
    scan = trits.weight_floor_scan(n, k)
    assert scan.min == n and scan.argmin == argmin


@pytest.mark.parametrize("n,k", [(6, 3), (4, 2), (5, 0)])
def test_bad_cm_parameters(n, k):
    with pytest.raises(BadParameters):
        trits.check_cm_parameters(n, k)


def test_valid_ks_period():
    # d mod 3^n - 1 repeats with period 2n in k
    for n in range(1, 8):
        m = 3**n - 1
        for k in trits.valid_ks(n):
            assert (3**k + 1) // 2 % m == (3 ** (k + 2 * n) + 1) // 2 % m
            assert math.gcd(n, k) == 1 and k % 2 == 1
