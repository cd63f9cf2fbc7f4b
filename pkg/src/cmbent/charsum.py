"""Gauss sums over small fields GF(3^n), in complex floating point.

This is the only module that uses floats.  Characters are indexed through the
context's generator g:  chi_m(g^j) = exp(2 pi i m j / (q - 1)),  chi_m(0) = 0.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gf3
from .errors import BadParameters, TooLarge, YZero
from .gf3 import FieldCtx, FieldElement

MAX_Q = 3**5
OMEGA3 = cmath.exp(2j * cmath.pi / 3)


def _check_size(ctx: FieldCtx) -> None:
    if ctx.q > MAX_Q:
        raise TooLarge(f"character sums are limited to q <= {MAX_Q}")


@dataclass(frozen=True)
class MultiplicativeCharacter:
    ctx: FieldCtx
    generator: FieldElement
    m: int

    def __post_init__(self) -> None:
        if not self.ctx.is_primitive(self.generator):
            raise BadParameters("generator must be primitive")
        object.__setattr__(self, "m", self.m % self.ctx.order)

    @classmethod
    def of(cls, ctx: FieldCtx, m: int) -> MultiplicativeCharacter:
        return cls(ctx, ctx.generator, m)

    @property
    def is_trivial(self) -> bool:
        return self.m == 0

    def values(self) -> np.ndarray:
        """chi(x) for every x in index order."""
        ctx = self.ctx
        # log to our generator = log to the context generator / log of our generator
        scale = pow(ctx.log(self.generator), -1, ctx.order)
        return _character_table(ctx, (self.m * scale) % ctx.order)

    def __call__(self, x: FieldElement) -> complex:
        return complex(self.values()[x.index])

    def conjugate(self) -> MultiplicativeCharacter:
        return MultiplicativeCharacter(self.ctx, self.generator, -self.m)

    def __pow__(self, e: int) -> MultiplicativeCharacter:
        return MultiplicativeCharacter(self.ctx, self.generator, self.m * e)


def _character_table(ctx: FieldCtx, m: int) -> np.ndarray:
    logs = ctx.log_table
    out = np.exp(2j * np.pi * m * (logs % ctx.order) / ctx.order)
    out[0] = 0
    return out


@lru_cache(maxsize=16)
def _additive_table(ctx: FieldCtx) -> np.ndarray:
    tr = gf3.batch_trace(ctx, np.arange(ctx.q, dtype=np.int64))
    return OMEGA3 ** tr.astype(np.float64)


def gauss_sum(chi: MultiplicativeCharacter) -> complex:
    """G(chi) = sum_x w^Tr(x) chi(x)."""
    _check_size(chi.ctx)
    return complex(np.dot(_additive_table(chi.ctx), chi.values()))


def all_gauss_sums(ctx: FieldCtx) -> np.ndarray:
    """G(chi_m) for m = 0 .. q - 2."""
    _check_size(ctx)
    return np.array([gauss_sum(MultiplicativeCharacter.of(ctx, m)) for m in range(ctx.order)])


def quadratic_gauss_value(n: int) -> complex:
    """(-1)^(n+1) i^n 3^(n/2)."""
    return (-1) ** (n + 1) * 1j**n * 3 ** (n / 2)


@dataclass
class CharsumReport:
    q: int
    max_abs_error: float
    identities: dict[str, float]
    tolerance: float

    @property
    def ok(self) -> bool:
        return self.max_abs_error <= self.tolerance

    def to_json(self) -> dict:
        return {"q": self.q, "max_abs_error": self.max_abs_error, "identities": dict(self.identities)}


def check_gauss_identities(ctx: FieldCtx, tol: float = 1e-9) -> CharsumReport:
    """Norm, trivial value, quadratic value, conjugation and Frobenius identities.

    The norm deviation is relative to q; the others are absolute.
    """
    _check_size(ctx)
    q, order = ctx.q, ctx.order
    g = all_gauss_sums(ctx)
    minus_one = gf3.neg(ctx, ctx.one)
    chi_minus_one = np.array([MultiplicativeCharacter.of(ctx, m)(minus_one) for m in range(order)])

    nontrivial = g[1:]
    norm_err = float(np.max(np.abs(np.abs(nontrivial) ** 2 - q)) / q) if order > 1 else 0.0
    trivial_err = float(abs(g[0] + 1))
    conj_err = float(max(abs(g[(-m) % order] - chi_minus_one[m] * g[m].conjugate()) for m in range(order)))
    frob_err = float(max(abs(g[(3 * m) % order] - g[m]) for m in range(order)))
    errors = {
        "norm_relative": norm_err,
        "trivial": trivial_err,
        "conjugate": conj_err,
        "frobenius": frob_err,
    }
    if order % 2 == 0:
        errors["quadratic"] = float(abs(g[order // 2] - quadratic_gauss_value(ctx.n)))
    return CharsumReport(q, max(errors.values()), errors, tol)


def check_inversion(ctx: FieldCtx, y: FieldElement, tol: float = 1e-8) -> CharsumReport:
    """w^Tr(y) against (1/(q-1)) sum_chi G(chi) conj(chi(y))."""
    _check_size(ctx)
    if y.is_zero():
        raise YZero("the inversion formula needs y != 0")
    g = all_gauss_sums(ctx)
    j = ctx.log(y)
    m = np.arange(ctx.order)
    conj_chi_y = np.exp(-2j * np.pi * m * j / ctx.order)
    rhs = complex(np.dot(g, conj_chi_y) / ctx.order)
    lhs = OMEGA3 ** gf3.trace(ctx, y)
    err = float(abs(lhs - rhs))
    return CharsumReport(ctx.q, err, {"inversion": err}, tol)
