"""Exact rational scalars and small helpers shared across the package.

Every quantity in this library is a ``fractions.Fraction``: arbitrary
precision, always in lowest terms with a positive denominator.  Floats are
rejected everywhere so no rounding can sneak in.
"""

from __future__ import annotations

import math
import re
from decimal import Decimal, localcontext
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" (q > 0) exactly; anything else is an error."""
    token = text.strip()
    m = _RATIONAL_RE.fullmatch(token)
    if not m:
        raise ValueError(f"not an exact rational: {text!r}")
    if "/" in token and int(token.split("/")[1]) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(token)


def format_rational(q) -> str:
    """Render as "p/q", or "p" when the denominator is 1."""
    return str(as_rational(q))


def decimal_str(q, digits: int = 20) -> str:
    """Decimal approximation with the given number of significant digits."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    q = as_rational(q)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(q.numerator) / Decimal(q.denominator)
    return str(d)


def pow2(k: int) -> Fraction:
    """2**k as an exact Fraction, k may be negative."""
    if k >= 0:
        return Fraction(1 << k)
    return Fraction(1, 1 << (-k))


def floor_frac(q) -> int:
    return math.floor(as_rational(q))


def ceil_frac(q) -> int:
    return math.ceil(as_rational(q))


def floor_log2(q) -> int:
    """Largest e with 2**e <= q, for q > 0. Exact integer arithmetic."""
    q = as_rational(q)
    if q <= 0:
        raise ValueError("floor_log2 requires a positive argument")
    e = q.numerator.bit_length() - q.denominator.bit_length()
    # q is within a factor of two of 2**e; settle the boundary exactly.
    if q < pow2(e):
        e -= 1
    if q >= pow2(e + 1):
        e += 1
    return e


def _is_pow2_int(m: int) -> bool:
    return m > 0 and (m & (m - 1)) == 0


def is_dyadic(q) -> bool:
    """True iff the denominator (in lowest terms) is a power of two."""
    return _is_pow2_int(as_rational(q).denominator)


def is_power_of_two(q) -> bool:
    """True iff q equals 2**k for some integer k (possibly negative)."""
    q = as_rational(q)
    return q > 0 and _is_pow2_int(q.numerator) and _is_pow2_int(q.denominator)


def parse_two_column(text: str) -> list[tuple[Fraction, Fraction]]:
    """Parse two whitespace-separated exact rationals per line.

    Blank lines and lines starting with '#' are skipped.  Used for point-pair
    lists and for table-backed oracles.
    """
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"line {lineno}: expected two columns, got {len(fields)}")
        try:
            pairs.append((parse_rational(fields[0]), parse_rational(fields[1])))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    return pairs
