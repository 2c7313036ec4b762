"""Exact rational exponents and rounding of float estimates onto them.

Exponents are `fractions.Fraction` values throughout: arbitrary-precision
integers in numerator and denominator, always stored reduced with a positive
denominator, so exponents such as 1/7 survive every algebraic step exactly.
"""

from fractions import Fraction

from .errors import NoRationalNearby

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact Fraction.

    Floats are rejected: converting a float silently would launder rounding
    error into the exact layer.  Use :func:`rational_round` for measured
    values.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational exponent")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Serialize as "p/q", or just "p" for integers (so 1/1 prints as "1")."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rational_round(x: float, max_den: int, tol: float) -> Fraction:
    """Round a float onto the nearest fraction with denominator <= max_den.

    Uses the continued-fraction best approximation (the closest p/q with
    q <= max_den).  Raises NoRationalNearby when even that best candidate
    is farther than ``tol`` from ``x``.
    """
    if max_den < 1:
        raise ValueError("max_den must be >= 1")
    if not tol > 0:
        raise ValueError("tol must be positive")
    best = Fraction(x).limit_denominator(max_den)
    if abs(x - float(best)) > tol:
        raise NoRationalNearby(
            f"nearest fraction with denominator <= {max_den} to {x} is "
            f"{format_rational(best)}, off by {abs(x - float(best)):.3g} > {tol:g}"
        )
    return best


def simplest_rational_within(x: float, max_den: int, tol: float) -> Fraction:
    """The smallest-denominator fraction within ``tol`` of ``x``.

    Differs from :func:`rational_round` by preferring simplicity over
    proximity: a biased estimate of 1/2 rounds to 1/2 even when some
    larger-denominator fraction happens to lie closer.
    """
    if max_den < 1:
        raise ValueError("max_den must be >= 1")
    if not tol > 0:
        raise ValueError("tol must be positive")
    for q in range(1, max_den + 1):
        p = round(x * q)
        if abs(x - p / q) <= tol:
            return Fraction(p, q)
    raise NoRationalNearby(
        f"no fraction with denominator <= {max_den} within {tol:g} of {x}")
