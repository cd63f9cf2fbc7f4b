"""Arithmetic in GF(3^n) for 1 <= n <= 13.

Elements are coefficient vectors over the polynomial basis 1, alpha, ...,
alpha^(n-1), constant term first.  The *index* of an element is
``sum(c[i] * 3**i)``; every whole-field table in this package is laid out
in index order (least significant coefficient varying fastest).

Two layers live here:

* scalar operations on :class:`FieldElement` (pure Python, used by the
  oracles and per-point checks);
* batch operations on numpy arrays of indices (used by the spectrum and dual
  pipelines).  Batch multiplication goes through exponent/logarithm index
  tables built once per context from its primitive element; an independent
  schoolbook route (:func:`batch_mul_direct`) is kept for cross-checking.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import (
    BadParameters,
    EtaOfZero,
    ModulusFileError,
    NotInSubfield,
    RejectDegree,
    RejectReducible,
    ZeroToNegativePower,
)

MAX_N = 13

# Monic primitive polynomials, constant term first.  For each n this is the
# primitive polynomial with the smallest index sum(c[i] * 3**i), so alpha
# itself generates the multiplicative group.
BUILTIN_MODULI: dict[int, tuple[int, ...]] = {
    1: (1, 1),
    2: (2, 1, 1),
    3: (1, 2, 0, 1),
    4: (2, 1, 0, 0, 1),
    5: (1, 2, 0, 0, 0, 1),
    6: (2, 1, 0, 0, 0, 0, 1),
    7: (1, 2, 1, 0, 0, 0, 0, 1),
    8: (2, 0, 0, 1, 0, 0, 0, 0, 1),
    9: (1, 0, 1, 2, 0, 0, 0, 0, 0, 1),
    10: (2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1),
    11: (1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1),
    12: (2, 2, 2, 1, 2, 0, 0, 0, 0, 0, 0, 0, 1),
    13: (1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1),
}


# ---------------------------------------------------------------------------
# Polynomials over GF(3), lists constant term first, used only for the
# irreducibility test.
# ---------------------------------------------------------------------------


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(a: list[int], m: list[int]) -> list[int]:
    a = _trim([x % 3 for x in a])
    dm = len(m) - 1
    inv_lead = m[-1]  # 1 and 2 are self-inverse mod 3
    while len(a) - 1 >= dm:
        c = (a[-1] * inv_lead) % 3
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % 3
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], m: list[int]) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_mod(prod, m)


def _x_pow_mod(e: int, m: list[int]) -> list[int]:
    result = _poly_mod([1], m)
    base = _poly_mod([0, 1], m)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m)
        base = _poly_mulmod(base, base, m)
        e >>= 1
    return result


def _poly_sub(a: list[int], b: list[int]) -> list[int]:
    size = max(len(a), len(b))
    a = a + [0] * (size - len(a))
    b = b + [0] * (size - len(b))
    return _trim([(x - y) % 3 for x, y in zip(a, b)])


def _poly_gcd(a: list[int], b: list[int]) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b)
    return a


def _prime_factors(m: int) -> list[int]:
    out, p = [], 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


def is_irreducible(modulus: Sequence[int]) -> bool:
    """Rabin's test: m | x^(3^n) - x and gcd(m, x^(3^(n/r)) - x) = 1 for primes r | n."""
    m = _trim([int(c) % 3 for c in modulus])
    n = len(m) - 1
    if n < 1:
        return False
    x = [0, 1]
    if _poly_sub(_x_pow_mod(3**n, m), _poly_mod(x, m)):
        return False
    for r in _prime_factors(n):
        g = _poly_gcd(m, _poly_sub(_x_pow_mod(3 ** (n // r), m), _poly_mod(x, m)))
        if len(g) > 1:
            return False
    return True


def load_modulus_file(path: str | os.PathLike) -> dict[int, tuple[int, ...]]:
    """Parse ``n: c0 c1 ... cn`` lines.  Blank lines and ``#`` comments are skipped."""
    table: dict[int, tuple[int, ...]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, sep, tail = line.partition(":")
            try:
                if not sep:
                    raise ValueError("missing ':'")
                n = int(head)
                trits = tuple(int(t) for t in tail.split())
            except ValueError as exc:
                raise ModulusFileError(f"{path}:{lineno}: {exc}") from None
            if any(t not in (0, 1, 2) for t in trits):
                raise ModulusFileError(f"{path}:{lineno}: coefficients must be trits")
            table[n] = trits
    return table


# ---------------------------------------------------------------------------
# Context and elements
# ---------------------------------------------------------------------------


class FieldCtx:
    """GF(3^n) defined by an irreducible ``modulus`` (n+1 trits, constant first).

    Immutable after construction; derived tables are computed lazily and
    cached on the instance.
    """

    def __init__(
        self,
        n: int,
        modulus: Sequence[int],
        generator: Sequence[int] | None = None,
    ) -> None:
        if not 1 <= n <= MAX_N:
            raise BadParameters(f"n must lie in 1..{MAX_N}, got {n}")
        modulus = tuple(int(c) for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] % 3 == 0:
            raise RejectDegree(
                f"modulus must have exactly {n + 1} trits with nonzero leading trit"
            )
        if any(c not in (0, 1, 2) for c in modulus):
            raise RejectDegree("modulus coefficients must be trits 0, 1, 2")
        if not is_irreducible(modulus):
            raise RejectReducible(f"modulus {modulus} is reducible over GF(3)")
        self.n = n
        self.modulus = modulus
        self.q = 3**n
        self.order = self.q - 1
        self._pow3 = tuple(3**i for i in range(n))
        self._reduction = self._reduction_rows()
        if generator is not None:
            g = self.element(generator)
            if not self.is_primitive(g):
                raise BadParameters(f"{g} is not a primitive element")
            self.__dict__["generator"] = g

    def _reduction_rows(self) -> tuple[tuple[int, ...], ...]:
        # alpha^m in the basis, for m = n .. 2n-2
        n, mod = self.n, self.modulus
        lead = mod[-1]
        row = [(-lead * c) % 3 for c in mod[:n]]  # alpha^n
        rows = []
        for _ in range(n - 1):
            rows.append(tuple(row))
            top = row[-1]
            row = [0] + row[:-1]
            if top:
                row = [(r + top * s) % 3 for r, s in zip(row, rows[0])]
        rows.append(tuple(row))
        return tuple(rows[: max(n - 1, 0)])

    def __repr__(self) -> str:
        return f"FieldCtx(n={self.n}, modulus={list(self.modulus)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FieldCtx):
            return NotImplemented
        return self.n == other.n and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash((self.n, self.modulus))

    # -- constructors -------------------------------------------------------

    def element(self, coeffs: Iterable[int]) -> FieldElement:
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != self.n or any(c not in (0, 1, 2) for c in coeffs):
            raise ValueError(f"expected {self.n} trits, got {coeffs}")
        return _elem(self, coeffs)

    def from_index(self, index: int) -> FieldElement:
        index = int(index)
        if not 0 <= index < self.q:
            raise ValueError(f"index {index} out of range for q={self.q}")
        return _elem(self, tuple((index // p) % 3 for p in self._pow3))

    def scalar(self, c: int) -> FieldElement:
        """Embed c in GF(3)."""
        return _elem(self, (c % 3,) + (0,) * (self.n - 1))

    @cached_property
    def zero(self) -> FieldElement:
        return self.scalar(0)

    @cached_property
    def one(self) -> FieldElement:
        return self.scalar(1)

    @cached_property
    def alpha(self) -> FieldElement:
        """Residue class of x; equals the constant -m0/m1 when n == 1."""
        if self.n == 1:
            return self.scalar(-self.modulus[0] * self.modulus[1])
        return self.from_index(3)

    def elements(self) -> Iterator[FieldElement]:
        for i in range(self.q):
            yield self.from_index(i)

    # -- derived structure --------------------------------------------------

    def is_primitive(self, g: FieldElement) -> bool:
        if g.is_zero():
            return False
        return all(pow_(g, self.order // r) != self.one for r in _prime_factors(self.order))

    @cached_property
    def generator(self) -> FieldElement:
        """Smallest-index primitive element."""
        for i in range(1, self.q):
            g = self.from_index(i)
            if self.is_primitive(g):
                return g
        raise AssertionError("a finite field always has a primitive element")

    @cached_property
    def basis_traces(self) -> np.ndarray:
        """Tr(alpha^i) for i < n; Tr(u) = <coeffs(u), basis_traces> mod 3."""
        t = [trace(self, self.from_index(3**i)) for i in range(self.n)]
        return np.array(t, dtype=np.int64)

    @cached_property
    def gram(self) -> np.ndarray:
        """Gram matrix of the trace form, M[i][j] = Tr(alpha^i alpha^j)."""
        basis = [self.from_index(3**i) for i in range(self.n)]
        return np.array(
            [[trace(self, mul(self, bi, bj)) for bj in basis] for bi in basis],
            dtype=np.int64,
        )

    @cached_property
    def digit_table(self) -> np.ndarray:
        """(q, n) array of the coefficient vectors of every element, in index order."""
        return batch_digits(self, np.arange(self.q, dtype=np.int64))

    @cached_property
    def _reduction_matrix(self) -> np.ndarray:
        return np.array(self._reduction, dtype=np.int64).reshape(max(self.n - 1, 0), self.n)

    @cached_property
    def exp_table(self) -> np.ndarray:
        """exp_table[e] = index of generator^e, for 0 <= e < q-1."""
        g = self.generator
        order = self.order
        step = max(1, math.isqrt(order))
        baby, cur = [], self.one
        for _ in range(step):
            baby.append(cur.index)
            cur = mul(self, cur, g)
        giant_step, giant, cur = cur, [], self.one
        for _ in range(-(-order // step)):
            giant.append(cur.index)
            cur = mul(self, cur, giant_step)
        left = np.repeat(np.array(giant, dtype=np.int64), step)
        right = np.tile(np.array(baby, dtype=np.int64), len(giant))
        table = batch_mul_direct(self, left, right)[:order]
        if len(np.unique(table)) != order or 0 in table:
            raise AssertionError("generator table is not a permutation of the unit group")
        table.setflags(write=False)
        return table

    @cached_property
    def log_table(self) -> np.ndarray:
        """log_table[i] = discrete log of element i to the generator; entry 0 is -1."""
        log = np.full(self.q, -1, dtype=np.int64)
        log[self.exp_table] = np.arange(self.order, dtype=np.int64)
        log.setflags(write=False)
        return log

    def log(self, u: FieldElement) -> int:
        if u.is_zero():
            raise ValueError("log of zero")
        return int(self.log_table[u.index])


def ctx_new(
    n: int,
    modulus: Sequence[int] | str = "builtin",
    table: dict[int, tuple[int, ...]] | None = None,
) -> FieldCtx:
    """Build a validated context; ``"builtin"`` consults ``table`` then :data:`BUILTIN_MODULI`."""
    if isinstance(modulus, str):
        if modulus != "builtin":
            raise ValueError(f"unknown modulus selector {modulus!r}")
        if table and n in table:
            modulus = table[n]
        elif n in BUILTIN_MODULI:
            modulus = BUILTIN_MODULI[n]
        else:
            raise BadParameters(f"no builtin modulus for n={n}")
    return FieldCtx(n, modulus)


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldCtx = field(repr=False)
    coeffs: tuple[int, ...]

    @property
    def index(self) -> int:
        return sum(c * p for c, p in zip(self.coeffs, self.ctx._pow3))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def in_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def __str__(self) -> str:
        return "".join(str(c) for c in reversed(self.coeffs))

    def __add__(self, other: FieldElement) -> FieldElement:
        return add(self.ctx, self, other)

    def __sub__(self, other: FieldElement) -> FieldElement:
        return sub(self.ctx, self, other)

    def __neg__(self) -> FieldElement:
        return neg(self.ctx, self)

    def __mul__(self, other: FieldElement | int) -> FieldElement:
        if isinstance(other, int):
            other = self.ctx.scalar(other)
        return mul(self.ctx, self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: FieldElement) -> FieldElement:
        return mul(self.ctx, self, inverse(self.ctx, other))

    def __pow__(self, e: int) -> FieldElement:
        return pow_(self, e)


def _elem(ctx: FieldCtx, coeffs: tuple[int, ...]) -> FieldElement:
    # unchecked constructor for internal results
    el = object.__new__(FieldElement)
    object.__setattr__(el, "ctx", ctx)
    object.__setattr__(el, "coeffs", coeffs)
    return el


# ---------------------------------------------------------------------------
# Scalar operations
# ---------------------------------------------------------------------------


def add(ctx: FieldCtx, u: FieldElement, v: FieldElement) -> FieldElement:
    return _elem(ctx, tuple((a + b) % 3 for a, b in zip(u.coeffs, v.coeffs)))


def sub(ctx: FieldCtx, u: FieldElement, v: FieldElement) -> FieldElement:
    return _elem(ctx, tuple((a - b) % 3 for a, b in zip(u.coeffs, v.coeffs)))


def neg(ctx: FieldCtx, u: FieldElement) -> FieldElement:
    return _elem(ctx, tuple((-a) % 3 for a in u.coeffs))


def mul(ctx: FieldCtx, u: FieldElement, v: FieldElement) -> FieldElement:
    n = ctx.n
    if n == 1:
        return _elem(ctx, ((u.coeffs[0] * v.coeffs[0]) % 3,))
    prod = [0] * (2 * n - 1)
    for i, a in enumerate(u.coeffs):
        if a:
            for j, b in enumerate(v.coeffs):
                prod[i + j] += a * b
    low = prod[:n]
    for m in range(n, 2 * n - 1):
        c = prod[m] % 3
        if c:
            low = [x + c * r for x, r in zip(low, ctx._reduction[m - n])]
    return _elem(ctx, tuple(x % 3 for x in low))


def pow_(u: FieldElement, e: int) -> FieldElement:
    """Square-and-multiply; negative exponents go through the inverse."""
    ctx = u.ctx
    if e < 0:
        if u.is_zero():
            raise ZeroToNegativePower("zero has no inverse")
        u = inverse(ctx, u)
        e = -e
    if e >= ctx.order and not u.is_zero():
        e %= ctx.order
    result, base = ctx.one, u
    while e:
        if e & 1:
            result = mul(ctx, result, base)
        base = mul(ctx, base, base)
        e >>= 1
    return result


def power(ctx: FieldCtx, u: FieldElement, e: int) -> FieldElement:
    return pow_(u, e)


def inverse(ctx: FieldCtx, u: FieldElement) -> FieldElement:
    if u.is_zero():
        raise ZeroToNegativePower("zero has no inverse")
    return pow_(u, ctx.q - 2)


def frobenius(ctx: FieldCtx, u: FieldElement, times: int = 1) -> FieldElement:
    for _ in range(times % ctx.n):
        u = pow_(u, 3)
    return u


def trace(ctx: FieldCtx, u: FieldElement) -> int:
    """Absolute trace u + u^3 + ... + u^(3^(n-1)), returned as 0, 1 or 2."""
    total, conj = ctx.zero, u
    for _ in range(ctx.n):
        total = add(ctx, total, conj)
        conj = pow_(conj, 3)
    if not total.in_prime_field():
        raise AssertionError("trace left GF(3); modulus tables are corrupt")
    return total.coeffs[0]


def subfield_trace(ctx: FieldCtx, u: FieldElement, m: int) -> FieldElement:
    """Trace from GF(3^m) down to GF(3) of an element lying in GF(3^m)."""
    if m < 1 or ctx.n % m:
        raise BadParameters(f"m={m} does not divide n={ctx.n}")
    conj = pow_(u, 3**m) if not u.is_zero() else u
    if conj != u:
        raise NotInSubfield(f"{u} does not lie in GF(3^{m})")
    total, conj = ctx.zero, u
    for _ in range(m):
        total = add(ctx, total, conj)
        conj = pow_(conj, 3)
    return total


def eta(ctx: FieldCtx, u: FieldElement) -> int:
    """Quadratic character: +1 on nonzero squares, -1 on non-squares."""
    if u.is_zero():
        raise EtaOfZero("eta is undefined at 0")
    r = pow_(u, ctx.order // 2)
    if r == ctx.one:
        return 1
    if r == neg(ctx, ctx.one):
        return -1
    raise AssertionError("u^((q-1)/2) must be +-1")


# ---------------------------------------------------------------------------
# Batch operations on index arrays
# ---------------------------------------------------------------------------


def batch_digits(ctx: FieldCtx, idx: np.ndarray) -> np.ndarray:
    idx = np.asarray(idx, dtype=np.int64)
    pow3 = np.array(ctx._pow3, dtype=np.int64)
    return (idx[..., None] // pow3) % 3


def batch_from_digits(ctx: FieldCtx, digits: np.ndarray) -> np.ndarray:
    pow3 = np.array(ctx._pow3, dtype=np.int64)
    return (np.asarray(digits, dtype=np.int64) % 3) @ pow3


def batch_add(ctx: FieldCtx, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return batch_from_digits(ctx, batch_digits(ctx, x) + batch_digits(ctx, y))


def batch_scale(ctx: FieldCtx, x: np.ndarray, c: int) -> np.ndarray:
    """Multiply by the prime-field constant c."""
    return batch_from_digits(ctx, batch_digits(ctx, x) * (c % 3))


def batch_mul_direct(ctx: FieldCtx, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Schoolbook product of digit vectors followed by reduction; no tables."""
    a = batch_digits(ctx, x)
    b = batch_digits(ctx, y)
    n = ctx.n
    prod = np.zeros(a.shape[:-1] + (2 * n - 1,), dtype=np.int64)
    for i in range(n):
        prod[..., i : i + n] += a[..., i : i + 1] * b
    low = prod[..., :n]
    if n > 1:
        low = low + (prod[..., n:] % 3) @ ctx._reduction_matrix
    return batch_from_digits(ctx, low)


def batch_mul(ctx: FieldCtx, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    log = ctx.log_table
    out = ctx.exp_table[(log[x] + log[y]) % ctx.order]
    return np.where((x == 0) | (y == 0), 0, out)


def batch_pow(ctx: FieldCtx, x: np.ndarray, e: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    zero = x == 0
    if e < 0 and zero.any():
        raise ZeroToNegativePower("zero has no inverse")
    out = ctx.exp_table[(ctx.log_table[x] * (e % ctx.order)) % ctx.order]
    if e == 0:
        return np.ones_like(x)
    return np.where(zero, 0, out)


def batch_trace(ctx: FieldCtx, x: np.ndarray) -> np.ndarray:
    return (batch_digits(ctx, x) @ ctx.basis_traces) % 3
