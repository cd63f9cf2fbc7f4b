"""Exact Walsh spectra of maps GF(3^n) -> GF(3).

    f^(lam) = sum_x w^(f(x) - Tr(lam x))

Values are kept as pairs of int64 arrays (a, b) meaning a + b w.  For
n <= 13 every partial sum is bounded by 3^n in absolute value per component,
far inside int64.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from . import gf3
from .eisenstein import Eisenstein, UnitClass, render_unit, unit_candidates
from .errors import BadParameters, NoMatch, SingularGram, TooLarge
from .gf3 import FieldCtx, FieldElement
from .trits import check_cm_parameters

NAIVE_MAX_N = 6


@dataclass(frozen=True, eq=False)
class FunctionTable:
    ctx: FieldCtx
    values: np.ndarray  # length q, trits, index order

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.int8) % 3
        if values.shape != (self.ctx.q,):
            raise ValueError(f"table must have {self.ctx.q} entries, got {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, ctx: FieldCtx, fn: Callable[[FieldElement], int]) -> FunctionTable:
        return cls(ctx, np.array([fn(x) for x in ctx.elements()], dtype=np.int64))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return self.ctx == other.ctx and np.array_equal(self.values, other.values)

    def __getitem__(self, index: int) -> int:
        return int(self.values[index])


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    ctx: FieldCtx
    a: np.ndarray
    b: np.ndarray

    def __getitem__(self, index: int) -> Eisenstein:
        return Eisenstein(int(self.a[index]), int(self.b[index]))

    def __len__(self) -> int:
        return len(self.a)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and np.array_equal(self.a, other.a)
            and np.array_equal(self.b, other.b)
        )

    @property
    def entries(self) -> list[Eisenstein]:
        return [Eisenstein(int(x), int(y)) for x, y in zip(self.a, self.b)]

    def norms(self) -> np.ndarray:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def parseval_ok(self) -> bool:
        return int(self.norms().sum()) == 3 ** (2 * self.ctx.n)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["lambda_index", "a", "b"])
        writer.writerows(zip(range(len(self.a)), self.a.tolist(), self.b.tolist()))
        return buf.getvalue()

    def to_json(self) -> list[dict[str, int]]:
        return [
            {"lambda_index": i, "a": x, "b": y}
            for i, (x, y) in enumerate(zip(self.a.tolist(), self.b.tolist()))
        ]


@dataclass(frozen=True, eq=False)
class BentReport:
    is_bent: bool
    weakly_regular: bool
    regular: bool
    unit: UnitClass | None = None
    dual: FunctionTable | None = None

    def to_json(self, include_dual: bool = True) -> dict:
        out = {
            "is_bent": self.is_bent,
            "weakly_regular": self.weakly_regular,
            "regular": self.regular,
            "unit": self.unit.to_json() if self.unit else None,
        }
        if include_dual:
            out["dual"] = self.dual.values.tolist() if self.dual is not None else None
        return out


def _check_parseval(s: WalshSpectrum) -> WalshSpectrum:
    if not s.parseval_ok():
        raise AssertionError("Parseval identity failed: transform is broken")
    return s


# ---------------------------------------------------------------------------
# Direct-sum oracle
# ---------------------------------------------------------------------------


@lru_cache(maxsize=8)
def _trace_product_matrix(ctx: FieldCtx) -> np.ndarray:
    """T[lam, x] = Tr(lam * x), built from scalar field arithmetic only."""
    elems = list(ctx.elements())
    out = np.zeros((ctx.q, ctx.q), dtype=np.int8)
    for i, lam in enumerate(elems):
        for j in range(i, ctx.q):
            t = gf3.trace(ctx, gf3.mul(ctx, lam, elems[j]))
            out[i, j] = out[j, i] = t
    out.setflags(write=False)
    return out


def walsh_naive(f: FunctionTable) -> WalshSpectrum:
    """Direct double sum over (lam, x); the oracle for :func:`walsh_fast`."""
    ctx = f.ctx
    if ctx.n > NAIVE_MAX_N:
        raise TooLarge(f"naive transform is limited to n <= {NAIVE_MAX_N}")
    tr = _trace_product_matrix(ctx).astype(np.int64)
    expo = (f.values.astype(np.int64)[None, :] - tr) % 3
    counts = [(expo == t).sum(axis=1).astype(np.int64) for t in range(3)]
    # c0 + c1 w + c2 w^2 with w^2 = -1 - w
    return _check_parseval(WalshSpectrum(ctx, counts[0] - counts[2], counts[1] - counts[2]))


# ---------------------------------------------------------------------------
# Fast transform
# ---------------------------------------------------------------------------


def _times_omega(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return -b, a - b


def _times_omega2(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return b - a, -a


def _butterfly(n: int, a: np.ndarray, b: np.ndarray, sign: int) -> tuple[np.ndarray, np.ndarray]:
    """G(y) = sum_x w^(sign * y.x) v(x) over (Z/3)^n, coordinate dot product."""
    a, b = a.copy(), b.copy()
    bound = max(int(np.abs(a).max()), int(np.abs(b).max()), 1)
    first, second = (_times_omega, _times_omega2) if sign > 0 else (_times_omega2, _times_omega)
    for i in range(n):
        shape = (3 ** (n - 1 - i), 3, 3**i)
        A, B = a.reshape(shape), b.reshape(shape)
        a0, a1, a2 = A[:, 0], A[:, 1], A[:, 2]
        b0, b1, b2 = B[:, 0], B[:, 1], B[:, 2]
        # y = 1: v0 + w^s v1 + w^2s v2 ; y = 2: v0 + w^2s v1 + w^s v2
        p1a, p1b = first(a1, b1)
        p2a, p2b = second(a2, b2)
        q1a, q1b = second(a1, b1)
        q2a, q2b = first(a2, b2)
        out_a = np.stack([a0 + a1 + a2, a0 + p1a + p2a, a0 + q1a + q2a], axis=1)
        out_b = np.stack([b0 + b1 + b2, b0 + p1b + p2b, b0 + q1b + q2b], axis=1)
        a, b = out_a.reshape(-1), out_b.reshape(-1)
    # each stage at most triples the bound, so |a|, |b| <= 2 * 3^n for unit inputs
    assert max(int(np.abs(a).max()), int(np.abs(b).max())) <= 2 * bound * 3**n
    return a, b


def _rank_mod3(m: np.ndarray) -> int:
    m = np.array(m, dtype=np.int64) % 3
    rank = 0
    for col in range(m.shape[1]):
        pivots = np.nonzero(m[rank:, col])[0]
        if not len(pivots):
            continue
        p = rank + pivots[0]
        m[[rank, p]] = m[[p, rank]]
        m[rank] = (m[rank] * m[rank, col]) % 3  # pivot becomes 1 (1*1, 2*2 = 4 = 1)
        for r in range(m.shape[0]):
            if r != rank and m[r, col]:
                m[r] = (m[r] - m[r, col] * m[rank]) % 3
        rank += 1
        if rank == m.shape[0]:
            break
    return rank


@lru_cache(maxsize=16)
def _gram_reindex(ctx: FieldCtx) -> np.ndarray:
    """Index of M.lam for every lam, so that Tr(lam x) = (M lam) . x."""
    gram = ctx.gram
    if _rank_mod3(gram) < ctx.n:
        raise SingularGram("trace form is degenerate; the modulus tables are wrong")
    y = (ctx.digit_table @ gram.T) % 3
    return gf3.batch_from_digits(ctx, y)


def walsh_fast(f: FunctionTable) -> WalshSpectrum:
    """n radix-3 butterfly stages over the additive group, then a Gram reindex."""
    ctx = f.ctx
    t = f.values.astype(np.int64)
    # w^t: t=0 -> 1, t=1 -> w, t=2 -> -1 - w
    a = np.select([t == 0, t == 1], [1, 0], default=-1).astype(np.int64)
    b = np.select([t == 0, t == 1], [0, 1], default=-1).astype(np.int64)
    ga, gb = _butterfly(ctx.n, a, b, sign=-1)
    idx = _gram_reindex(ctx)
    return _check_parseval(WalshSpectrum(ctx, ga[idx], gb[idx]))


def inverse_walsh(s: WalshSpectrum) -> FunctionTable:
    """Recover f from its spectrum: 3^n w^f(x) = sum_lam f^(lam) w^Tr(lam x)."""
    ctx = s.ctx
    ha, hb = _butterfly(ctx.n, s.a, s.b, sign=+1)
    idx = _gram_reindex(ctx)
    ha, hb = ha[idx], hb[idx]
    scale = 3**ctx.n
    if (ha % scale).any() or (hb % scale).any():
        raise ValueError("not the spectrum of a GF(3)-valued function")
    ua, ub = ha // scale, hb // scale
    out = np.full(ctx.q, -1, dtype=np.int64)
    out[(ua == 1) & (ub == 0)] = 0
    out[(ua == 0) & (ub == 1)] = 1
    out[(ua == -1) & (ub == -1)] = 2
    if (out < 0).any():
        raise ValueError("not the spectrum of a GF(3)-valued function")
    return FunctionTable(ctx, out)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


def bent_check(s: WalshSpectrum) -> bool:
    return bool((s.norms() == 3**s.ctx.n).all())


def unit_classes(s: WalshSpectrum) -> tuple[np.ndarray, np.ndarray]:
    """(quarter, g) of every entry; requires a bent spectrum."""
    n = s.ctx.n
    quarter = np.full(len(s), -1, dtype=np.int64)
    g = np.full(len(s), -1, dtype=np.int64)
    for u in unit_candidates(n):
        r = render_unit(n, u)
        hit = (s.a == r.a) & (s.b == r.b)
        quarter[hit] = u.quarter
        g[hit] = u.g
    if (quarter < 0).any():
        bad = int(np.argmax(quarter < 0))
        raise NoMatch(f"entry {bad} = {s[bad]} is not of bent shape")
    return quarter, g


def classify(s: WalshSpectrum) -> BentReport:
    if not bent_check(s):
        return BentReport(False, False, False)
    quarter, g = unit_classes(s)
    if not (quarter == quarter[0]).all():
        return BentReport(True, False, False)
    unit = UnitClass(int(quarter[0]), 0)
    return BentReport(True, True, unit.quarter == 0, unit, FunctionTable(s.ctx, g))


def cm_function(ctx: FieldCtx, a: FieldElement, k: int) -> FunctionTable:
    """Table of Tr(a x^d), d = (3^k + 1)/2."""
    d = check_cm_parameters(ctx.n, k)
    if a.is_zero():
        raise BadParameters("a must be nonzero")
    x = np.arange(ctx.q, dtype=np.int64)
    ax = gf3.batch_mul(ctx, np.full(ctx.q, a.index), gf3.batch_pow(ctx, x, d))
    return FunctionTable(ctx, gf3.batch_trace(ctx, ax))
