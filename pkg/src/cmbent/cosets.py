"""Cyclotomic cosets modulo 3^n - 1 and trace-polynomial evaluation."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import gf3
from .errors import BadParameters, MalformedTerm, SizeMismatch
from .gf3 import FieldCtx, FieldElement


@dataclass(frozen=True)
class Coset:
    leader: int
    members: tuple[int, ...]  # s, 3s, 9s, ... in orbit order

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, j: object) -> bool:
        return j in self.members


def _orbit(s: int, n: int) -> tuple[int, ...]:
    m = 3**n - 1
    s %= m
    out, cur = [s], (3 * s) % m
    while cur != s:
        out.append(cur)
        cur = (3 * cur) % m
    return tuple(out)


@lru_cache(maxsize=None)
def _partition(n: int) -> tuple[Coset, ...]:
    m = 3**n - 1
    seen = np.zeros(m, dtype=bool)
    cosets = []
    for s in range(m):
        if seen[s]:
            continue
        orbit = _orbit(s, n)
        seen[list(orbit)] = True
        cosets.append(Coset(s, orbit))
    return tuple(cosets)


def cosets_mod(n: int) -> list[Coset]:
    """All cyclotomic cosets modulo 3^n - 1, sorted by leader."""
    if not 1 <= n <= gf3.MAX_N:
        raise BadParameters(f"n must lie in 1..{gf3.MAX_N}")
    return list(_partition(n))


def coset_of(j: int, n: int) -> Coset:
    orbit = _orbit(j, n)
    leader = min(orbit)
    start = orbit.index(leader)
    return Coset(leader, orbit[start:] + orbit[:start])


def coset_union(leaders: Sequence[int], n: int) -> frozenset[int]:
    out: set[int] = set()
    for s in leaders:
        out.update(_orbit(s, n))
    return frozenset(out)


# ---------------------------------------------------------------------------
# Trace polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TraceTerm:
    """Tr_1^(n_k)(coeff * x^exponent), n_k the size of the coset of exponent."""

    coeff: FieldElement
    exponent: int


@dataclass(frozen=True)
class TracePolynomial:
    terms: tuple[TraceTerm, ...] = ()
    constant: int = 0  # coefficient of x^(3^n - 1): 0 at x = 0, constant elsewhere
    labels: tuple[dict, ...] = field(default=(), compare=False)

    def validate(self, ctx: FieldCtx) -> None:
        for term in self.terms:
            if term.coeff.ctx != ctx:
                raise MalformedTerm("coefficient belongs to a different field")
            size = coset_of(term.exponent, ctx.n).size
            c = term.coeff
            if not c.is_zero() and gf3.pow_(c, 3**size) != c:
                raise MalformedTerm(
                    f"coefficient of x^{term.exponent} must lie in GF(3^{size})"
                )

    def to_json(self) -> list[dict]:
        out = []
        for i, term in enumerate(self.terms):
            ctx = term.coeff.ctx
            entry = {"exponent": term.exponent, "coeff_trits": list(term.coeff.coeffs)}
            if not term.coeff.is_zero():
                entry["coeff_power"] = ctx.log(term.coeff)
            if i < len(self.labels):
                entry.update(self.labels[i])
            out.append(entry)
        return out


def eval_trace_poly(ctx: FieldCtx, p: TracePolynomial, x: FieldElement) -> int:
    p.validate(ctx)
    total = 0
    for term in p.terms:
        size = coset_of(term.exponent, ctx.n).size
        value = gf3.mul(ctx, term.coeff, gf3.pow_(x, term.exponent))
        total += gf3.subfield_trace(ctx, value, size).coeffs[0]
    if p.constant and not x.is_zero():
        total += p.constant
    return total % 3


def trace_poly_table(ctx: FieldCtx, p: TracePolynomial) -> np.ndarray:
    """Values of p at every element, in index order (batch route)."""
    p.validate(ctx)
    x = np.arange(ctx.q, dtype=np.int64)
    total = np.zeros(ctx.q, dtype=np.int64)
    for term in p.terms:
        size = coset_of(term.exponent, ctx.n).size
        value = gf3.batch_mul(ctx, np.full(ctx.q, term.coeff.index), gf3.batch_pow(ctx, x, term.exponent))
        if size == ctx.n:
            total += gf3.batch_trace(ctx, value)
        else:
            acc = value
            partial = np.zeros(ctx.q, dtype=np.int64)
            for _ in range(size):
                partial = gf3.batch_add(ctx, partial, acc)
                acc = gf3.batch_pow(ctx, acc, 3)
            # the subfield trace lands in GF(3), where index == value
            if (partial > 2).any():
                raise MalformedTerm(f"subfield trace of x^{term.exponent} left GF(3)")
            total += partial
    if p.constant:
        total += np.where(x == 0, 0, p.constant)
    return (total % 3).astype(np.int8)


def pointwise_equal(ctx: FieldCtx, p: TracePolynomial, table: Sequence[int] | np.ndarray) -> bool:
    values = np.asarray(table)
    if values.shape != (ctx.q,):
        raise SizeMismatch(f"table has {values.size} entries, field has {ctx.q}")
    return bool(np.array_equal(trace_poly_table(ctx, p), values % 3))
