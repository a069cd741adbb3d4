"""Exact rational coordinate handling.

All geometry in this package runs on `fractions.Fraction`; floats are
rejected at every input boundary so predicates never see rounding noise.
"""

from __future__ import annotations

from fractions import Fraction


def to_fraction(value: int | str | Fraction) -> Fraction:
    """Convert an exact numeric input to a Fraction.

    Accepts ints, Fractions, and strings in integer ("3"), decimal
    ("-0.25") or fraction ("7/3") form. Floats are refused: they carry
    binary rounding and would poison the exact predicates downstream.
    """
    if isinstance(value, bool):
        raise ValueError("booleans are not coordinates")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact number: {value!r}") from exc
    raise ValueError(
        f"inexact numeric type {type(value).__name__}; use an int or a string"
    )


def format_fraction(value: Fraction) -> str:
    """Render a Fraction exactly.

    Values whose denominator has only factors 2 and 5 get a finite
    decimal expansion ("3/2" -> "1.5"); everything else is emitted as
    "p/q" so round-trips stay lossless.
    """
    value = Fraction(value)
    num, den = value.numerator, value.denominator
    if den == 1:
        return str(num)
    twos = 0
    d = den
    while d % 2 == 0:
        d //= 2
        twos += 1
    fives = 0
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return f"{num}/{den}"
    k = max(twos, fives)
    scaled = abs(num) * (10**k // den)
    digits = str(scaled).rjust(k + 1, "0")
    whole, frac = digits[:-k], digits[-k:].rstrip("0")
    sign = "-" if num < 0 else ""
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"
