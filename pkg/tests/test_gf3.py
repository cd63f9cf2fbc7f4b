from __future__ import annotations

import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st
from sympy import ZZ
from sympy.polys.galoistools import gf_mul, gf_rem

from cmbent import gf3
from cmbent.errors import (
    BadParameters,
    EtaOfZero,
    ModulusFileError,
    NotInSubfield,
    RejectDegree,
    RejectReducible,
    ZeroToNegativePower,
)


def _brute_irreducible(modulus) -> bool:
    """No monic factor of degree 1..n//2, by trial division over every candidate."""
    n = len(modulus) - 1
    f = [c % 3 for c in reversed(modulus)]
    for deg in range(1, n // 2 + 1):
        for tail in itertools.product(range(3), repeat=deg):
            g = [1, *tail]
            if not gf_rem(f, g, 3, ZZ):
                return False
    return True


def _sympy_mul(ctx, u, v):
    f = list(reversed(ctx.modulus))
    prod = gf_rem(gf_mul(list(reversed(u.coeffs)), list(reversed(v.coeffs)), 3, ZZ), f, 3, ZZ)
    coeffs = [int(c) % 3 for c in reversed(prod)]
    return tuple(coeffs + [0] * (ctx.n - len(coeffs)))


def elements(n):
    return st.integers(0, 3**n - 1)


# -- construction --------------------------------------------------------------


def test_ctx_new_degree_one():
    ctx = gf3.ctx_new(1)
    assert ctx.q == 3 and ctx.modulus == (1, 1)


def test_explicit_irreducible_cubic_accepted():
    ctx = gf3.ctx_new(3, [1, 2, 0, 1])
    assert ctx.q == 27


def test_x_cubed_rejected():
    with pytest.raises(RejectReducible):
        gf3.ctx_new(3, [0, 0, 0, 1])


@pytest.mark.parametrize(
    "n,modulus",
    [(3, (1, 0, 1, 0)), (1, (1, 1, 1)), (2, (0, 1, 3))],
    ids=["leading-zero", "wrong-length", "not-a-trit"],
)
def test_bad_degree_rejected(n, modulus):
    with pytest.raises(RejectDegree):
        gf3.FieldCtx(n, modulus)


@pytest.mark.parametrize("n", [0, 14])
def test_n_out_of_range(n):
    with pytest.raises(BadParameters):
        gf3.ctx_new(n)


@pytest.mark.parametrize("n", range(1, 14))
def test_builtin_moduli_are_irreducible_and_primitive(n):
    ctx = gf3.ctx_new(n)
    if n <= 8:
        assert _brute_irreducible(ctx.modulus)
    assert ctx.is_primitive(ctx.alpha)
    assert ctx.generator == ctx.alpha or n == 1


def test_rabin_test_matches_trial_division_on_every_small_polynomial():
    for n in range(1, 6):
        for tail in itertools.product(range(3), repeat=n):
            modulus = (*tail, 1)
            assert gf3.is_irreducible(modulus) == _brute_irreducible(modulus), modulus


def test_product_of_three_irreducibles_is_rejected():
    # (x+1)(x^2+1)(x^3+2x+1): x^(3^(6/r)) != x for r = 2, 3, yet reducible
    p = np.polynomial.polynomial.polymul
    m = p(p([1, 1], [1, 0, 1]), [1, 2, 0, 1]).astype(int) % 3
    assert len(m) == 7
    assert not gf3.is_irreducible(tuple(m))
    with pytest.raises(RejectReducible):
        gf3.ctx_new(6, tuple(m))


def test_modulus_file_round_trip(tmp_path):
    path = tmp_path / "moduli.txt"
    path.write_text("# custom\n2: 1 0 1\n\n3: 2 2 0 1  # x^3 + 2x + 2\n")
    table = gf3.load_modulus_file(path)
    assert table == {2: (1, 0, 1), 3: (2, 2, 0, 1)}
    assert gf3.ctx_new(2, table=table).modulus == (1, 0, 1)


@pytest.mark.parametrize("body", ["2 1 0 1\n", "2: 1 x 1\n", "2: 1 0 5\n"])
def test_modulus_file_errors(tmp_path, body):
    path = tmp_path / "bad.txt"
    path.write_text(body)
    with pytest.raises(ModulusFileError):
        gf3.load_modulus_file(path)


# -- arithmetic ----------------------------------------------------------------


def test_alpha_squared_is_minus_one_mod_x2_plus_1():
    ctx = gf3.ctx_new(2, [1, 0, 1])
    assert gf3.mul(ctx, ctx.alpha, ctx.alpha) == ctx.scalar(2)


@pytest.mark.parametrize("n", [1, 2, 3, 5, 7, 9, 13])
def test_mul_matches_sympy(n):
    ctx = gf3.ctx_new(n)
    rng = random.Random(n)
    for _ in range(200):
        u, v = (ctx.from_index(rng.randrange(ctx.q)) for _ in range(2))
        assert gf3.mul(ctx, u, v).coeffs == _sympy_mul(ctx, u, v)


@given(st.integers(1, 9).flatmap(lambda n: st.tuples(st.just(n), elements(n), elements(n), elements(n))))
def test_field_axioms(args):
    n, i, j, k = args
    ctx = gf3.ctx_new(n)
    u, v, w = ctx.from_index(i), ctx.from_index(j), ctx.from_index(k)
    assert u + (-u) == ctx.zero
    assert u * (v + w) == u * v + u * w
    assert (u * v) * w == u * (v * w)
    assert u * v == v * u
    if not u.is_zero():
        assert u * gf3.inverse(ctx, u) == ctx.one
        assert gf3.pow_(u, 0) == ctx.one
        assert gf3.pow_(u, ctx.order) == ctx.one
    assert gf3.pow_(u, ctx.q) == u
    assert gf3.pow_(u, 3) == gf3.frobenius(ctx, u) == u * u * u


def test_zero_to_negative_power():
    ctx = gf3.ctx_new(3)
    with pytest.raises(ZeroToNegativePower):
        gf3.pow_(ctx.zero, -1)
    with pytest.raises(ZeroDivisionError):
        gf3.inverse(ctx, ctx.zero)


def test_negative_power_is_inverse_power():
    ctx = gf3.ctx_new(5)
    u = ctx.from_index(100)
    assert gf3.pow_(u, -7) * gf3.pow_(u, 7) == ctx.one


# -- trace, subfield trace, eta ------------------------------------------------


@pytest.mark.parametrize("n", range(1, 8))
def test_trace_of_zero_and_one(n):
    ctx = gf3.ctx_new(n)
    assert gf3.trace(ctx, ctx.zero) == 0
    assert gf3.trace(ctx, ctx.one) == n % 3


def test_trace_alpha_mod_x2_plus_1():
    ctx = gf3.ctx_new(2, [1, 0, 1])
    assert gf3.trace(ctx, ctx.alpha) == 0


@pytest.mark.parametrize("n", range(1, 7))
def test_trace_linear_surjective_and_batch_consistent(n):
    ctx = gf3.ctx_new(n)
    scalar = np.array([gf3.trace(ctx, u) for u in ctx.elements()])
    assert set(scalar.tolist()) == {0, 1, 2}
    assert np.array_equal(scalar, gf3.batch_trace(ctx, np.arange(ctx.q)))
    # each value attained exactly q/3 times
    assert np.bincount(scalar).tolist() == [ctx.q // 3] * 3
    rng = random.Random(n)
    for _ in range(50):
        u, v = ctx.from_index(rng.randrange(ctx.q)), ctx.from_index(rng.randrange(ctx.q))
        c = rng.randrange(3)
        assert gf3.trace(ctx, u + v * c) == (gf3.trace(ctx, u) + c * gf3.trace(ctx, v)) % 3


def test_subfield_trace():
    ctx = gf3.ctx_new(4)
    for c in range(3):
        assert gf3.subfield_trace(ctx, ctx.scalar(c), 1) == ctx.scalar(c)
    u = ctx.from_index(57)
    assert gf3.subfield_trace(ctx, u, 4) == ctx.scalar(gf3.trace(ctx, u))
    # GF(9) inside GF(81) is the image of x -> x^10
    rng = random.Random(4)
    for _ in range(20):
        v = gf3.pow_(ctx.from_index(rng.randrange(1, ctx.q)), 10)
        assert gf3.subfield_trace(ctx, v, 2) == v + gf3.pow_(v, 3)
    with pytest.raises(NotInSubfield):
        gf3.subfield_trace(ctx, ctx.alpha, 2)
    with pytest.raises(BadParameters):
        gf3.subfield_trace(ctx, u, 3)


@pytest.mark.parametrize("n", range(1, 7))
def test_eta(n):
    ctx = gf3.ctx_new(n)
    values = {u.index: gf3.eta(ctx, u) for u in ctx.elements() if not u.is_zero()}
    assert sum(v == 1 for v in values.values()) == ctx.order // 2
    assert gf3.eta(ctx, ctx.one) == 1
    assert gf3.eta(ctx, ctx.generator) == -1
    squares = {gf3.mul(ctx, u, u).index for u in ctx.elements() if not u.is_zero()}
    assert squares == {i for i, v in values.items() if v == 1}
    if n <= 5:
        for i, j in itertools.product(values, repeat=2):
            prod = gf3.mul(ctx, ctx.from_index(i), ctx.from_index(j))
            assert values[prod.index] == values[i] * values[j]
    with pytest.raises(EtaOfZero):
        gf3.eta(ctx, ctx.zero)


# -- batch layer ---------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 4, 6, 8])
def test_batch_mul_routes_agree_with_scalar(n):
    ctx = gf3.ctx_new(n)
    rng = np.random.default_rng(n)
    x = rng.integers(0, ctx.q, 500)
    y = rng.integers(0, ctx.q, 500)
    x[:5] = 0
    table = gf3.batch_mul(ctx, x, y)
    assert np.array_equal(table, gf3.batch_mul_direct(ctx, x, y))
    for i, j, z in zip(x[:50], y[:50], table[:50]):
        assert gf3.mul(ctx, ctx.from_index(i), ctx.from_index(j)).index == z


@pytest.mark.parametrize("n,e", [(3, 5), (5, 122), (6, -3), (7, 0), (7, 2186), (4, 161)])
def test_batch_pow(n, e):
    ctx = gf3.ctx_new(n)
    x = np.arange(1 if e < 0 else 0, ctx.q)
    got = gf3.batch_pow(ctx, x, e)
    assert got.tolist() == [gf3.pow_(ctx.from_index(i), e).index for i in x]


def test_exp_log_tables_are_inverse(ctxs):
    ctx = ctxs(7)
    assert ctx.exp_table[0] == 1
    assert np.array_equal(ctx.log_table[ctx.exp_table], np.arange(ctx.order))
    assert ctx.log_table[0] == -1


def test_element_rendering():
    ctx = gf3.ctx_new(3)
    u = ctx.element([2, 0, 1])
    assert str(u) == "102" and u.index == 11
    with pytest.raises(ValueError):
        ctx.element([3, 0, 0])
