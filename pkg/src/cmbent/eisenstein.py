"""Exact arithmetic in Z[w], w = exp(2 pi i / 3), basis {1, w}.

Every Walsh value of a ternary bent function has the shape
i^quarter * w^g * 3^(n/2), and all of these lie in Z[w] because
i * sqrt(3) = w - w^2 = 1 + 2w.  :func:`render_unit` and
:func:`classify_unit` convert between the two descriptions.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoMatch, NormMismatch, NotRepresentable


@dataclass(frozen=True)
class Eisenstein:
    """a + b*w with w^2 = -1 - w."""

    a: int = 0
    b: int = 0

    def __add__(self, other: Eisenstein) -> Eisenstein:
        return Eisenstein(self.a + other.a, self.b + other.b)

    def __sub__(self, other: Eisenstein) -> Eisenstein:
        return Eisenstein(self.a - other.a, self.b - other.b)

    def __neg__(self) -> Eisenstein:
        return Eisenstein(-self.a, -self.b)

    def __mul__(self, other: Eisenstein | int) -> Eisenstein:
        if isinstance(other, int):
            return Eisenstein(self.a * other, self.b * other)
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2
        bd = self.b * other.b
        return Eisenstein(self.a * other.a - bd, self.a * other.b + self.b * other.a - bd)

    __rmul__ = __mul__

    def conjugate(self) -> Eisenstein:
        # w -> w^2 = -1 - w
        return Eisenstein(self.a - self.b, -self.b)

    def norm(self) -> int:
        return norm(self)

    def to_json(self) -> dict[str, int]:
        return {"a": self.a, "b": self.b}

    def __complex__(self) -> complex:
        return complex(self.a - self.b / 2, self.b * 3**0.5 / 2)


ZERO = Eisenstein(0, 0)
ONE = Eisenstein(1, 0)
OMEGA = Eisenstein(0, 1)
PI = Eisenstein(-1, 1)  # w - 1
I_SQRT3 = Eisenstein(1, 2)  # w - w^2


def e_add(x: Eisenstein, y: Eisenstein) -> Eisenstein:
    return x + y


def e_sub(x: Eisenstein, y: Eisenstein) -> Eisenstein:
    return x - y


def e_mul(x: Eisenstein, y: Eisenstein) -> Eisenstein:
    return x * y


def norm(x: Eisenstein) -> int:
    """|a + b w|^2 = a^2 - a b + b^2."""
    return x.a * x.a - x.a * x.b + x.b * x.b


_OMEGA_POWERS = (ONE, OMEGA, Eisenstein(-1, -1))


def omega_power(t: int) -> Eisenstein:
    return _OMEGA_POWERS[t % 3]


@dataclass(frozen=True)
class UnitClass:
    """Encodes the value i^quarter * w^g * 3^(n/2)."""

    quarter: int
    g: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "quarter", self.quarter % 4)
        object.__setattr__(self, "g", self.g % 3)

    def to_json(self) -> dict[str, int]:
        return {"quarter": self.quarter, "g": self.g}


def render_unit(n: int, u: UnitClass) -> Eisenstein:
    if (u.quarter - n) % 2:
        raise NotRepresentable(
            f"i^{u.quarter} * 3^({n}/2) is not in Z[w] (parity of quarter must match n)"
        )
    if n % 2 == 0:
        # i^quarter is +-1
        base = Eisenstein(3 ** (n // 2) * (1 if u.quarter == 0 else -1), 0)
    else:
        # i^quarter * sqrt(3) = i^(quarter-1) * (1 + 2w), i^(quarter-1) = +-1
        sign = 1 if u.quarter == 1 else -1
        base = I_SQRT3 * (sign * 3 ** ((n - 1) // 2))
    return base * omega_power(u.g)


def unit_candidates(n: int) -> list[UnitClass]:
    return [UnitClass(q, g) for q in range(4) if (q - n) % 2 == 0 for g in range(3)]


def classify_unit(n: int, x: Eisenstein) -> UnitClass:
    if norm(x) != 3**n:
        raise NormMismatch(f"norm {norm(x)} != 3^{n}")
    for u in unit_candidates(n):
        if render_unit(n, u) == x:
            return u
    raise NoMatch(f"{x} has norm 3^{n} but is not of the form i^q w^g 3^(n/2)")
