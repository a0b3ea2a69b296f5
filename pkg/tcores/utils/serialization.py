# Wire formats shared by the library types and the CLI.
# Integers travel as decimal strings, rationals as "num/den" strings so that
# exact values survive shells, spreadsheets and JSON parsers.

from fractions import Fraction
from numbers import Rational
from typing import Union

from tcores.exceptions import ValidationError

Exact = Union[int, Fraction]


def format_rational(value: Exact) -> str:
    """Render an exact rational as ``"num/den"`` (integers get ``/1``)."""
    frac = Fraction(value)
    return f"{frac.numerator}/{frac.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`; also accepts a bare integer."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"Not a rational literal: {text!r}") from None


def format_coefficient(value: Exact) -> str:
    """Integers as decimal strings, other rationals as ``"num/den"``."""
    if isinstance(value, int) or (isinstance(value, Rational) and value.denominator == 1):
        return str(int(value))
    return format_rational(value)


def parse_coefficient(text: str) -> Exact:
    value = parse_rational(text)
    return int(value) if value.denominator == 1 else value
