"""Base-3 digit combinatorics for residues modulo 3^n - 1.

Digits are stored least significant first (``digits[i]`` multiplies 3^i);
:meth:`TritVector.__str__` renders most significant first.  Every function
accepts arbitrary integers and reduces them into [0, 3^n - 1) first.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import BadParameters, HalfPoint, LemmaViolation, OddInput, ZeroResidue


def modulus(n: int) -> int:
    return 3**n - 1


def half(n: int) -> int:
    """(3^n - 1)/2, the all-ones vector."""
    return (3**n - 1) // 2


@dataclass(frozen=True)
class TritVector:
    n: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.digits) != self.n or any(d not in (0, 1, 2) for d in self.digits):
            raise ValueError(f"expected {self.n} trits, got {self.digits}")
        if all(d == 2 for d in self.digits):
            raise ValueError("the all-2 vector is not a residue mod 3^n - 1")

    @property
    def value(self) -> int:
        return sum(d * 3**i for i, d in enumerate(self.digits))

    def __str__(self) -> str:
        return "".join(str(d) for d in reversed(self.digits))


@dataclass(frozen=True)
class CarryVector:
    bits: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(self.bits)


def _digits(j: int, n: int) -> tuple[int, ...]:
    j %= modulus(n)
    out = []
    for _ in range(n):
        j, r = divmod(j, 3)
        out.append(r)
    return tuple(out)


def to_trits(j: int, n: int) -> TritVector:
    if n < 1:
        raise BadParameters("n must be positive")
    return TritVector(n, _digits(j, n))


def wt(j: int, n: int) -> int:
    return sum(_digits(j, n))


def sigma(j: int, n: int) -> int:
    return math.prod(math.factorial(d) for d in _digits(j, n))


# -- vectorised counterparts used by the scans ------------------------------


def digits_array(values: np.ndarray, n: int) -> np.ndarray:
    v = np.asarray(values, dtype=np.int64) % modulus(n)
    pow3 = 3 ** np.arange(n, dtype=np.int64)
    return (v[..., None] // pow3) % 3


def wt_array(values: np.ndarray, n: int) -> np.ndarray:
    return digits_array(values, n).sum(axis=-1)


def sigma_array(values: np.ndarray, n: int) -> np.ndarray:
    # 0! = 1! = 1, 2! = 2
    return np.where(digits_array(values, n) == 2, 2, 1).prod(axis=-1)


# -- add with carry ----------------------------------------------------------


def add_with_carry(x: TritVector, y: TritVector) -> tuple[TritVector, CarryVector]:
    """Cyclic addition: z_i + 3 c_i = x_i + y_i + c_(i-1), indices mod n.

    Summing the recurrence gives x + y = z + c_(n-1) (3^n - 1), so the
    wrap-around carry is 1 exactly when x + y >= 3^n - 1.
    """
    if x.n != y.n:
        raise ValueError("operands must have the same length")
    n = x.n
    total = x.value + y.value
    carry_in = 1 if total >= modulus(n) else 0
    z, c = [], []
    for i in range(n):
        s = x.digits[i] + y.digits[i] + carry_in
        z.append(s % 3)
        carry_in = s // 3
        c.append(carry_in)
    if c[-1] != (1 if total >= modulus(n) else 0):
        raise LemmaViolation("cyclic carry sequence is inconsistent")
    zv = TritVector(n, tuple(z))
    if zv.value != total % modulus(n):
        raise LemmaViolation("add_with_carry result disagrees with modular sum")
    return zv, CarryVector(tuple(c))


class WeightRelation(enum.Enum):
    EQUAL = "Equal"  # wt(x) + wt(y) == wt(x + y)
    PLUS2 = "Plus2"  # wt(x) + wt(y) == wt(x + y) + 2
    OTHER = "Other"


def _digit_relation(xd: tuple[int, ...], yd: tuple[int, ...]) -> WeightRelation:
    n = len(xd)
    s = [a + b for a, b in zip(xd, yd)]
    if all(v <= 2 for v in s) and any(v < 2 for v in s):
        return WeightRelation.EQUAL
    if all(v == 2 for v in s):
        # x + y = 3^n - 1 wraps to 0 and loses 2n; that is +2 only when n = 1
        return WeightRelation.PLUS2 if n == 1 else WeightRelation.OTHER
    for j in range(n):
        nxt = (j + 1) % n
        if s[j] >= 3 and s[nxt] <= 1 and all(
            s[i] <= 2 for i in range(n) if i not in (j, nxt)
        ):
            return WeightRelation.PLUS2
    return WeightRelation.OTHER


def eq_weight_condition(x: int, y: int, n: int) -> WeightRelation:
    """Classify wt(x) + wt(y) against wt(x + y), by weights and by digit pattern.

    The two routes must agree; a disagreement raises :class:`LemmaViolation`.
    """
    gap = wt(x, n) + wt(y, n) - wt(x + y, n)
    direct = {0: WeightRelation.EQUAL, 2: WeightRelation.PLUS2}.get(gap, WeightRelation.OTHER)
    by_digits = _digit_relation(_digits(x, n), _digits(y, n))
    if direct is not by_digits:
        raise LemmaViolation(f"x={x}, y={y}, n={n}: weights say {direct}, digits say {by_digits}")
    return direct


@dataclass(frozen=True)
class DoublingCases:
    eq: bool  # 2 wt(-j) == wt(-2j)
    plus2: bool  # 2 wt(-j) == wt(-2j) + 2


def doubling_cases(j: int, n: int) -> DoublingCases:
    """Whether doubling -j preserves weight, or loses exactly 2.

    Digit criteria: eq iff every digit of j is nonzero; plus2 iff -j has a
    single 2 followed (cyclically, upward) by a 0 with all other digits <= 1.
    """
    jr = j % modulus(n)
    if jr == half(n):
        raise HalfPoint(f"j = (3^{n}-1)/2 is excluded")
    if jr == 0:
        raise ZeroResidue("j = 0 is excluded: -j has no digit complement")
    jd = _digits(jr, n)
    neg = tuple(2 - d for d in jd)
    gap = 2 * wt(-jr, n) - wt(-2 * jr, n)

    eq_digits = all(d != 0 for d in jd)
    plus2_digits = any(
        neg[i] == 2
        and neg[(i + 1) % n] == 0
        and all(neg[m] <= 1 for m in range(n) if m not in (i, (i + 1) % n))
        for i in range(n)
    )
    if eq_digits != (gap == 0) or plus2_digits != (gap == 2):
        raise LemmaViolation(f"doubling criteria disagree with weights at j={j}, n={n}")
    return DoublingCases(eq=eq_digits, plus2=plus2_digits)


def halving_patterns(h: TritVector) -> TritVector:
    """h / 2 for even h, as a digit vector of the same length."""
    if h.value % 2:
        raise OddInput(f"{h} is odd")
    return TritVector(h.n, _digits(h.value // 2, h.n))


def pattern_100_1(m: int) -> int:
    """Value of the digit string 1 0^m 1 (most significant first)."""
    return 3 ** (m + 1) + 1


def pattern_1_2(m: int) -> int:
    """Value of 1^m 2: the half of 1 0^m 1."""
    return 2 + sum(3**i for i in range(1, m + 1))


def pattern_122_1(m: int) -> int:
    """Value of 1 2^m 1."""
    return 3 ** (m + 1) + sum(2 * 3**i for i in range(1, m + 1)) + 1


def pattern_2s(m: int) -> int:
    """Value of 2^m, the half of 1 2^(m-1) 1."""
    return 3**m - 1


# -- CM exponent parameters and the weight floor ----------------------------


def check_cm_parameters(n: int, k: int) -> int:
    """Validate (n, k) and return d = (3^k + 1)/2."""
    if n < 1 or k < 1 or k % 2 == 0 or math.gcd(n, k) != 1:
        raise BadParameters(f"need n >= 1, k odd positive and gcd(n, k) = 1; got n={n}, k={k}")
    return (3**k + 1) // 2


def valid_ks(n: int) -> list[int]:
    """Odd k in [1, 2n) coprime to n.  d mod 3^n - 1 has period 2n in k."""
    return [k for k in range(1, 2 * n, 2) if math.gcd(n, k) == 1]


@dataclass(frozen=True)
class FloorScan:
    n: int
    k: int
    min: int
    argmin: frozenset[int]

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "min": self.min, "argmin": sorted(self.argmin)}


def weight_floor_scan(n: int, k: int) -> FloorScan:
    """min of wt(j) + wt(-jd) over 0 < j < 3^n - 1, with all minimisers."""
    d = check_cm_parameters(n, k)
    m = modulus(n)
    j = np.arange(1, m, dtype=np.int64)
    total = wt_array(j, n) + wt_array((-j * (d % m)) % m, n)
    lo = int(total.min())
    return FloorScan(n, k, lo, frozenset(int(v) for v in j[total == lo]))
