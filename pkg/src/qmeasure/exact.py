"""Exact scalar arithmetic: rational parsing and complex numbers over the rationals.

Every numeric quantity in this package is an exact rational.  Preclusion is
the predicate ``measure == 0`` and approximate preclusion is ``measure < eps``;
both are meaningless under floating point, so floats are rejected at every
boundary instead of being silently converted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def parse_rational(value) -> Fraction:
    """Parse an exact rational from an int, a Fraction, or a string like "3/4".

    Decimal strings ("0.001") are accepted because they are exact; float
    objects are rejected because their binary value is not what was written.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise TypeError(
        f"expected int, Fraction, or 'p/q' string, got {type(value).__name__}"
    )


def format_rational(value: Fraction) -> str:
    """Render a rational as "p/q" (or "p" for integers)."""
    return str(value)


def ceil_rational(value: Fraction) -> int:
    """Least integer greater than or equal to ``value``."""
    return -((-value.numerator) // value.denominator)


@dataclass(frozen=True)
class ComplexRational:
    """A complex number with exact rational real and imaginary parts."""

    real: Fraction
    imag: Fraction

    @classmethod
    def of(cls, real, imag=0) -> "ComplexRational":
        return cls(parse_rational(real), parse_rational(imag))

    def __add__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(self.real + other.real, self.imag + other.imag)

    def __sub__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(self.real - other.real, self.imag - other.imag)

    def __mul__(self, other: "ComplexRational") -> "ComplexRational":
        return ComplexRational(
            self.real * other.real - self.imag * other.imag,
            self.real * other.imag + self.imag * other.real,
        )

    def conjugate(self) -> "ComplexRational":
        return ComplexRational(self.real, -self.imag)

    @property
    def is_zero(self) -> bool:
        return self.real == 0 and self.imag == 0

    @property
    def is_real(self) -> bool:
        return self.imag == 0

    def __repr__(self) -> str:
        return f"({self.real}{'+' if self.imag >= 0 else ''}{self.imag}i)"


CZERO = ComplexRational(Fraction(0), Fraction(0))
CONE = ComplexRational(Fraction(1), Fraction(0))
