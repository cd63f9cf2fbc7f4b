from __future__ import annotations

import cmath

import pytest
from hypothesis import given, strategies as st

from cmbent.eisenstein import (
    I_SQRT3,
    OMEGA,
    ONE,
    PI,
    Eisenstein,
    UnitClass,
    classify_unit,
    e_add,
    e_mul,
    norm,
    omega_power,
    render_unit,
    unit_candidates,
)
from cmbent.errors import NormMismatch, NotRepresentable

ints = st.integers(-10**6, 10**6)
eis = st.builds(Eisenstein, ints, ints)


def test_omega_relations():
    assert e_mul(OMEGA, OMEGA) == Eisenstein(-1, -1)
    assert e_mul(OMEGA, e_mul(OMEGA, OMEGA)) == ONE
    assert e_add(ONE, OMEGA) == Eisenstein(1, 1)


@pytest.mark.parametrize("t,expected", [(0, (1, 0)), (1, (0, 1)), (2, (-1, -1)), (5, (-1, -1))])
def test_omega_power(t, expected):
    assert omega_power(t) == Eisenstein(*expected)


def test_norms():
    assert norm(Eisenstein(1, 2)) == 3
    assert norm(Eisenstein()) == 0
    assert norm(PI) == 3
    x = ONE
    for _ in range(7):
        x = x * PI
    assert norm(x) == 3**7


@given(eis, eis)
def test_norm_multiplicative(x, y):
    assert norm(x * y) == norm(x) * norm(y)


@given(eis, eis, eis)
def test_ring_axioms(x, y, z):
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x - x == Eisenstein()
    assert x * x.conjugate() == Eisenstein(norm(x), 0)


@given(st.builds(Eisenstein, st.integers(-1000, 1000), st.integers(-1000, 1000)))
def test_complex_embedding(x):
    assert abs(complex(x)) ** 2 == pytest.approx(norm(x), rel=1e-12, abs=1e-9)


def test_i_sqrt3():
    assert cmath.isclose(complex(I_SQRT3), 1j * 3**0.5)
    assert I_SQRT3 * I_SQRT3 == Eisenstein(-3, 0)


@pytest.mark.parametrize(
    "n,unit,expected",
    [(1, UnitClass(1, 0), (1, 2)), (2, UnitClass(0, 1), (0, 3)), (2, UnitClass(2, 0), (-3, 0))],
)
def test_render_unit(n, unit, expected):
    assert render_unit(n, unit) == Eisenstein(*expected)


def test_render_unit_parity():
    with pytest.raises(NotRepresentable):
        render_unit(1, UnitClass(0, 0))


def test_classify_unit_examples():
    assert classify_unit(1, Eisenstein(1, 2)) == UnitClass(1, 0)
    assert classify_unit(2, Eisenstein(-3, 0)) == UnitClass(2, 0)
    with pytest.raises(NormMismatch):
        classify_unit(2, Eisenstein(1, 1))


@pytest.mark.parametrize("n", range(1, 9))
def test_render_classify_inverse_on_all_twelve_classes(n):
    seen = set()
    for quarter in range(4):
        for g in range(3):
            u = UnitClass(quarter, g)
            if (quarter - n) % 2:
                with pytest.raises(NotRepresentable):
                    render_unit(n, u)
                continue
            x = render_unit(n, u)
            assert norm(x) == 3**n
            assert classify_unit(n, x) == u
            seen.add(x)
    assert len(seen) == len(unit_candidates(n)) == 6


@pytest.mark.parametrize("n", range(1, 6))
def test_every_element_of_norm_3n_is_a_candidate(n):
    # 3 ramifies in Z[w], so norm 3^n forces a unit times (1 - w)^n
    bound = 2 * 3 ** ((n + 1) // 2)
    found = [
        Eisenstein(a, b)
        for a in range(-bound, bound + 1)
        for b in range(-bound, bound + 1)
        if norm(Eisenstein(a, b)) == 3**n
    ]
    assert sorted(found, key=lambda x: (x.a, x.b)) == sorted(
        (render_unit(n, u) for u in unit_candidates(n)), key=lambda x: (x.a, x.b)
    )
    for x in found:
        classify_unit(n, x)

