"""Exponent-set and three-term descriptions of the dual of Tr(a x^d), d = (3^k + 1)/2.

Three independent descriptions of the dual g are provided:

* the table read off the Walsh spectrum (``walsh.classify``);
* the exponent-set formula
      g(lam) = eta(a) * sum_{j in S} sigma(j) sigma(-jd) (a / lam^d)^j,
  S = {0 < j < 3^n - 1 : wt(j) + wt(-jd) = n + 1}, with g(0) = 0;
* for n = 3t+1 or n = 3t+2 with k = 2t+1, t >= 2, a closed three-term
  trace polynomial.

Both exponent forms are written for sum_x w^Tr(a x^d + lam x), while the
transform pairs f(x) with -Tr(lam x).  Since d is even every exponent of lam
below is even, so g(-lam) = g(lam) and the two conventions coincide.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import gf3
from .cosets import TracePolynomial, TraceTerm, coset_of, coset_union
from .eisenstein import UnitClass
from .errors import BadParameters, LemmaViolation, NotCovered, NotInPrimeField
from .gf3 import FieldCtx, FieldElement
from .trits import check_cm_parameters, half, modulus, sigma, sigma_array, wt, wt_array


@dataclass(frozen=True)
class CmParams:
    n: int
    k: int
    a: FieldElement

    def __post_init__(self) -> None:
        d = check_cm_parameters(self.n, self.k)
        if self.a.ctx.n != self.n:
            raise BadParameters("a does not belong to GF(3^n)")
        if self.a.is_zero():
            raise BadParameters("a must be nonzero")
        if math.gcd(d, modulus(self.n)) != 2:
            raise LemmaViolation("gcd(d, 3^n - 1) != 2")

    @property
    def d(self) -> int:
        return (3**self.k + 1) // 2

    @property
    def ctx(self) -> FieldCtx:
        return self.a.ctx

    @property
    def eta(self) -> int:
        return gf3.eta(self.ctx, self.a)


@dataclass(frozen=True)
class ExponentSet:
    n: int
    k: int
    members: tuple[int, ...]
    coset_leaders: tuple[int, ...]
    per_coset: dict[int, tuple[int, int]] = field(compare=False)  # leader -> (sigma(j), sigma(-jd))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, j: object) -> bool:
        return j in set(self.members)

    def coefficient(self, j: int) -> int:
        """sigma(j) sigma(-jd) mod 3."""
        s1, s2 = self.per_coset[coset_of(j, self.n).leader]
        return (s1 * s2) % 3

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "S_size": len(self.members),
            "members": list(self.members),
            "leaders": list(self.coset_leaders),
            "sigma": {str(s): list(v) for s, v in sorted(self.per_coset.items())},
        }


def enumerate_s(n: int, k: int) -> ExponentSet:
    """Exhaustive scan for S, grouped into cyclotomic cosets."""
    d = check_cm_parameters(n, k)
    m = modulus(n)
    j = np.arange(1, m, dtype=np.int64)
    mjd = (-j * (d % m)) % m
    hit = wt_array(j, n) + wt_array(mjd, n) == n + 1
    members = j[hit]
    s_j = sigma_array(members, n)
    s_mjd = sigma_array(mjd[hit], n)

    member_set = set(members.tolist())
    per_coset: dict[int, tuple[int, int]] = {}
    for jj, a, b in zip(members.tolist(), s_j.tolist(), s_mjd.tolist()):
        leader = coset_of(jj, n).leader
        if leader not in per_coset:
            if not set(coset_of(jj, n).members) <= member_set:
                raise LemmaViolation(f"S is not a union of cosets at j={jj}")
            per_coset[leader] = (a, b)
        elif per_coset[leader] != (a, b):
            raise LemmaViolation(f"sigma values vary on the coset of {leader}")
    return ExponentSet(n, k, tuple(members.tolist()), tuple(sorted(per_coset)), per_coset)


class Case(enum.Enum):
    CASE_3T1 = "Case3t1"
    CASE_3T2 = "Case3t2"


@dataclass(frozen=True)
class CaseUVW:
    case_tag: Case
    t: int
    u: int
    v: int
    w: int


# (sigma(u), sigma(v), sigma(w), sigma(-ud), sigma(-vd), sigma(-wd))
_EXPECTED_SIGMAS = {
    Case.CASE_3T1: (1, 2, 2, 2, 1, 2),
    Case.CASE_3T2: (1, 2, 2, 2, 2, 1),
}


def _family(n: int, k: int) -> tuple[Case, int]:
    check_cm_parameters(n, k)
    t, r = divmod(k - 1, 2)
    if t >= 2 and n == 3 * t + 1:
        return Case.CASE_3T1, t
    if t >= 2 and n == 3 * t + 2:
        return Case.CASE_3T2, t
    raise NotCovered(f"(n, k) = ({n}, {k}) is outside the n = 3t+1, 3t+2 families with k = 2t+1, t >= 2")


def uvw_values(case: Case, t: int) -> tuple[int, int, int]:
    n = 3 * t + 1 if case is Case.CASE_3T1 else 3 * t + 2
    h = half(n)
    if case is Case.CASE_3T1:
        return (
            h - 3 ** (3 * t) - 3 ** (2 * t) - 3**t,
            h - 3 ** (3 * t) - 3 ** (2 * t) + 3 ** (t - 1),
            h - 3 ** (3 * t) - 3 ** (2 * t - 1) + 3 ** (t - 1),
        )
    return (
        h - 3 ** (3 * t + 1) - 3 ** (2 * t + 1) - 3**t,
        h - 3 ** (3 * t + 1) - 3 ** (2 * t + 1) + 3**t,
        h - 3 ** (3 * t + 1) - 3 ** (2 * t) + 3 ** (t - 1),
    )


def case_uvw(n: int, k: int) -> CaseUVW:
    case, t = _family(n, k)
    u, v, w = uvw_values(case, t)
    d = (3**k + 1) // 2
    got = tuple(sigma(x, n) for x in (u, v, w)) + tuple(sigma(-x * d, n) for x in (u, v, w))
    if got != _EXPECTED_SIGMAS[case]:
        raise LemmaViolation(f"sigma values {got} differ from {_EXPECTED_SIGMAS[case]}")
    return CaseUVW(case, t, u, v, w)


# ---------------------------------------------------------------------------
# The exponent-set formula
# ---------------------------------------------------------------------------


def universal_dual(params: CmParams, s: ExponentSet, lam: FieldElement) -> int:
    """Evaluate g(lam) from S, the sum taken in GF(3^n)."""
    ctx = params.ctx
    if (s.n, s.k) != (params.n, params.k):
        raise BadParameters("exponent set was built for different (n, k)")
    if lam.is_zero():
        return 0
    base = gf3.mul(ctx, params.a, gf3.pow_(lam, -params.d))
    total = ctx.zero
    for j in s.members:
        c = s.coefficient(j)
        term = gf3.pow_(base, j)
        total = gf3.add(ctx, total, term if c == 1 else gf3.neg(ctx, term))
    if params.eta == -1:
        total = gf3.neg(ctx, total)
    if not total.in_prime_field():
        raise NotInPrimeField(f"g({lam}) = {total} is not in GF(3)")
    return total.coeffs[0]


def universal_dual_table(params: CmParams, s: ExponentSet) -> np.ndarray:
    """g(lam) for every lam in index order (batch route)."""
    ctx = params.ctx
    if (s.n, s.k) != (params.n, params.k):
        raise BadParameters("exponent set was built for different (n, k)")
    lam = np.arange(1, ctx.q, dtype=np.int64)
    base_log = (ctx.log(params.a) - params.d * ctx.log_table[lam]) % ctx.order
    acc = np.zeros((len(lam), ctx.n), dtype=np.int64)
    for j in s.members:
        term = ctx.exp_table[(base_log * (j % ctx.order)) % ctx.order]
        acc += s.coefficient(j) * gf3.batch_digits(ctx, term)
    acc = (acc * params.eta) % 3
    if acc[:, 1:].any():
        bad = int(lam[np.argmax(acc[:, 1:].any(axis=1))])
        raise NotInPrimeField(f"g at element {bad} is not in GF(3)")
    return np.concatenate([[0], acc[:, 0]]).astype(np.int8)


# ---------------------------------------------------------------------------
# Closed forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClosedTerm:
    """sign * a^a_power * lam^lam_power inside the trace, a_power reduced mod 3^n - 1."""

    sign: int
    a_power: int
    lam_power: int


def closed_form_terms(n: int, k: int) -> tuple[ClosedTerm, ...]:
    case, t = _family(n, k)
    return _closed_terms(case, t)


def _closed_terms(case: Case, t: int) -> tuple[ClosedTerm, ...]:
    n = 3 * t + 1 if case is Case.CASE_3T1 else 3 * t + 2
    m = modulus(n)
    if case is Case.CASE_3T1:
        raw = (
            (-1, 3 ** (2 * t + 1) + 3 ** (t + 1) + 1, 3 ** (2 * t + 1) + 3 ** (t + 1) + 2),
            (-1, -(3 ** (2 * t)) + 3**t + 1, 3 ** (2 * t) + 1),
            (+1, -(3 ** (2 * t + 1)) + 3 ** (t + 1) + 1, 2),
        )
    else:
        raw = (
            (-1, 3 ** (2 * t + 2) - 3 ** (t + 1) + 3, 3 ** (2 * t + 2) + 1),
            (-1, 3 ** (2 * t + 2) + 3 ** (t + 1) + 1, 2 * 3 ** (2 * t + 1) + 3 ** (t + 1) + 1),
            (+1, -(3 ** (2 * t + 2)) + 3 ** (t + 1) + 3, 2),
        )
    # lam^e / a^c  ->  a^(-c mod 3^n - 1) lam^e
    return tuple(ClosedTerm(sign, (-c) % m, e) for sign, c, e in raw)


def closed_form_dual(params: CmParams) -> TracePolynomial:
    return _instantiate(params, closed_form_terms(params.n, params.k))


def three_term_terms_any_t(n: int, k: int) -> tuple[ClosedTerm, ...]:
    """The same three-term shape without the t >= 2 restriction (n in {4, 5} at t = 1)."""
    check_cm_parameters(n, k)
    t = (k - 1) // 2
    if n == 3 * t + 1:
        return _closed_terms(Case.CASE_3T1, t)
    if n == 3 * t + 2:
        return _closed_terms(Case.CASE_3T2, t)
    raise NotCovered(f"(n, k) = ({n}, {k}) has no three-term shape")


def absolute_trace_table(params: CmParams, terms: tuple[ClosedTerm, ...]) -> np.ndarray:
    """Tr(sum sign a^a_power lam^lam_power) at every lam, absolute trace of the whole sum.

    Differs from the coset-wise trace representation only when some exponent
    lies in a coset smaller than n.
    """
    ctx = params.ctx
    lam = np.arange(ctx.q, dtype=np.int64)
    acc = np.zeros(ctx.q, dtype=np.int64)
    for term in terms:
        coeff = gf3.pow_(params.a, term.a_power)
        if term.sign < 0:
            coeff = gf3.neg(ctx, coeff)
        value = gf3.batch_mul(ctx, np.full(ctx.q, coeff.index), gf3.batch_pow(ctx, lam, term.lam_power))
        acc = gf3.batch_add(ctx, acc, value)
    return gf3.batch_trace(ctx, acc).astype(np.int8)


def _instantiate(params: CmParams, terms: tuple[ClosedTerm, ...]) -> TracePolynomial:
    ctx = params.ctx
    out, labels = [], []
    for term in terms:
        coeff = gf3.pow_(params.a, term.a_power)
        if term.sign < 0:
            coeff = gf3.neg(ctx, coeff)
        out.append(TraceTerm(coeff, term.lam_power))
        labels.append({"sign": term.sign, "a_power": term.a_power})
    return TracePolynomial(tuple(out), 0, tuple(labels))


# ---------------------------------------------------------------------------
# Regularity and the case lemmas
# ---------------------------------------------------------------------------


def cm_unit_quarter(n: int, eta_a: int) -> int:
    """(-1)^(n+1) eta(a) i^n as a power of i."""
    return (2 * (n + 1) + (0 if eta_a == 1 else 2) + n) % 4


@dataclass(frozen=True)
class Regularity:
    regular_guaranteed: bool
    unit: UnitClass


def regularity(params: CmParams) -> Regularity:
    q = cm_unit_quarter(params.n, params.eta)
    return Regularity(q == 0, UnitClass(q, 0))


def _conditions(j: int, n: int, k: int) -> tuple[bool, bool]:
    d = (3**k + 1) // 2
    c = 3**k + 1
    left = wt(j, n) + wt(3**k * j, n) - wt(c * j, n)
    right = 2 * wt(-j * d, n) - wt(-c * j, n)
    return (left == 0 and right == 2), (left == 2 and right == 0)


@dataclass(frozen=True)
class CaseLemmaReport:
    n: int
    k: int
    case_tag: Case
    condition1: frozenset[int]
    condition2: frozenset[int]
    condition1_leaders: tuple[int, ...]
    condition2_leaders: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "case": self.case_tag.value,
            "condition1_size": len(self.condition1),
            "condition2_size": len(self.condition2),
            "condition1_leaders": list(self.condition1_leaders),
            "condition2_leaders": list(self.condition2_leaders),
        }


def verify_case_lemmas(n: int, k: int, s: ExponentSet | None = None) -> CaseLemmaReport:
    """Split S by the two weight sub-conditions and match each part to its coset union."""
    uvw = case_uvw(n, k)
    s = s if s is not None else enumerate_s(n, k)
    cond1, cond2 = set(), set()
    for j in s.members:
        c1, c2 = _conditions(j, n, k)
        if c1 == c2:
            raise LemmaViolation(f"j={j} satisfies {'both' if c1 else 'neither'} sub-condition")
        (cond1 if c1 else cond2).add(j)
    if uvw.case_tag is Case.CASE_3T1:
        want1, want2 = coset_union([uvw.u, uvw.w], n), coset_union([uvw.v], n)
    else:
        want1, want2 = coset_union([uvw.u, uvw.v], n), coset_union([uvw.w], n)
    if cond1 != want1 or cond2 != want2:
        raise LemmaViolation(f"sub-condition partition of S does not match the coset unions for ({n}, {k})")
    if set(s.members) != want1 | want2:
        raise LemmaViolation("S differs from C_u | C_v | C_w")

    def leaders(js: set[int]) -> tuple[int, ...]:
        return tuple(sorted({coset_of(j, n).leader for j in js}))

    return CaseLemmaReport(n, k, uvw.case_tag, frozenset(cond1), frozenset(cond2), leaders(cond1), leaders(cond2))
