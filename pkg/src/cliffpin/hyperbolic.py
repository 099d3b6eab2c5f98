"""Exact split-complex (hyperbolic) numbers x + j y with j^2 = +1."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ZeroDivisorError

Number = Union[int, Fraction]


@dataclass(frozen=True)
class Hyperbolic:
    x: Fraction
    y: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    @classmethod
    def j(cls) -> "Hyperbolic":
        return cls(0, 1)

    @classmethod
    def from_split(cls, plus, minus) -> "Hyperbolic":
        """Inverse of :meth:`split`."""
        plus, minus = Fraction(plus), Fraction(minus)
        return cls((plus + minus) / 2, (plus - minus) / 2)

    def _coerce(self, other) -> "Hyperbolic":
        if isinstance(other, Hyperbolic):
            return other
        if isinstance(other, (int, Fraction)):
            return Hyperbolic(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Hyperbolic(self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return Hyperbolic(-self.x, -self.y)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Hyperbolic(self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Hyperbolic(self.x * o.x + self.y * o.y, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def conj(self) -> "Hyperbolic":
        return Hyperbolic(self.x, -self.y)

    def modulus(self) -> Fraction:
        """M(z) = z conj(z) = x^2 - y^2."""
        return self.x * self.x - self.y * self.y

    def is_invertible(self) -> bool:
        return self.modulus() != 0

    def inverse(self) -> "Hyperbolic":
        m = self.modulus()
        if m == 0:
            raise ZeroDivisorError(f"{self} is a zero divisor")
        c = self.conj()
        return Hyperbolic(c.x / m, c.y / m)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def split(self) -> tuple[Fraction, Fraction]:
        """The algebra isomorphism to R x R: x + j y -> (x + y, x - y)."""
        return self.x + self.y, self.x - self.y

    def __str__(self) -> str:
        return f"{self.x} + {self.y}j" if self.y >= 0 else f"{self.x} - {-self.y}j"


def hyp_product(a: Hyperbolic, b: Hyperbolic) -> Hyperbolic:
    return a * b


def hyp_conj(a: Hyperbolic) -> Hyperbolic:
    return a.conj()


def hyp_modulus(a: Hyperbolic) -> Fraction:
    return a.modulus()


@dataclass(frozen=True)
class Component:
    label: str | None  # "++", "+-", "-+", "--" or None for zero divisors
    is_unit: bool

    def __str__(self) -> str:
        if self.label is None:
            return "not invertible"
        return self.label if self.is_unit else f"{self.label} (not a unit)"


def unit_component(z: Hyperbolic) -> Component:
    """Sign pattern of the split coordinates, and whether |M(z)| = 1."""
    plus, minus = z.split()
    if plus == 0 or minus == 0:
        return Component(None, False)
    label = ("+" if plus > 0 else "-") + ("+" if minus > 0 else "-")
    return Component(label, abs(z.modulus()) == 1)


def parse_hyperbolic(text: str) -> Hyperbolic:
    """Parse "x,y" or "x" (rationals like 3/2 allowed)."""
    from .errors import InputError

    parts = [t.strip() for t in text.split(",")]
    if len(parts) not in (1, 2) or not all(parts):
        raise InputError(f"cannot parse hyperbolic number {text!r}; use x,y")
    try:
        vals = [Fraction(t) for t in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse hyperbolic number {text!r}") from exc
    return Hyperbolic(*vals)
