"""Quasi-isometry constants, the defining inequality, and triviality decisions.

A map f is a C-quasi-isometry when

    C^{-1}|x - y| - C  <=  |f(x) - f(y)|  <=  C|x - y| + C

for all x, y.  Bounded slopes give such a C directly: if every slope lies in
(1/M, M) in absolute value then the map is M-bi-Lipschitz between breakpoints
and the inequality holds with C = M.  Everything here is exact; booleans are
decided with no tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .plmaps import FinitePLMap, Interval, slope_set
from .rationals import as_rational

# Fixed margin so the strict bounds M^{-1} < |slope| < M hold; any factor > 1
# works, 2 keeps results deterministic.
SLOPE_MARGIN = Fraction(2)


@dataclass(frozen=True)
class SlopeBound:
    """M > 1 with M^{-1} < |slope| < M for every certified slope."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", as_rational(self.value))
        if self.value <= 1:
            raise ValueError("slope bound must exceed 1")


@dataclass(frozen=True)
class QIConstant:
    """C > 1 for which the quasi-isometry inequality is guaranteed."""

    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", as_rational(self.value))
        if self.value <= 1:
            raise ValueError("quasi-isometry constant must exceed 1")


def slope_bound(f: FinitePLMap) -> SlopeBound:
    """Least peak of |slope| and 1/|slope| over the slope set, times the margin."""
    peak = Fraction(0)
    for s in slope_set(f):
        peak = max(peak, abs(s), 1 / abs(s))
    return SlopeBound(SLOPE_MARGIN * peak)


def qi_constant_from_slopes(f: FinitePLMap) -> QIConstant:
    """A constant C = M from the slope bound; the inequality holds with it."""
    return QIConstant(slope_bound(f).value)


def point_eval(obj):
    """Adapter from the accepted map-like objects to a plain x -> f(x) callable."""
    if isinstance(obj, FinitePLMap):
        return obj.evaluate
    ev = getattr(obj, "eval", None)
    if callable(ev):
        return ev
    ev = getattr(obj, "evaluate", None)
    if callable(ev):
        return ev
    if callable(obj):
        return obj
    raise TypeError(f"not point-evaluable: {obj!r}")


def _c_value(c) -> Fraction:
    value = c.value if isinstance(c, QIConstant) else as_rational(c)
    if value <= 1:
        raise ValueError("quasi-isometry constant must exceed 1")
    return value


def first_qi_violation(mapping, c, pairs):
    """First pair violating the inequality, or None when all pairs pass."""
    ev = point_eval(mapping)
    c = _c_value(c)
    for x, y in pairs:
        x, y = as_rational(x), as_rational(y)
        d = abs(x - y)
        dp = abs(ev(x) - ev(y))
        if not (d / c - c <= dp <= c * d + c):
            return (x, y)
    return None


def verify_qi_inequality(mapping, c, pairs) -> bool:
    """Exact check of the inequality at every supplied pair."""
    return first_qi_violation(mapping, c, pairs) is None


class TrivialityVerdict(NamedTuple):
    trivial: bool
    reason: str


def triviality_verdict(f: FinitePLMap) -> TrivialityVerdict:
    """Decide sup|f - id| < infinity for an eventually-linear map.

    Exactly decidable: with both end slopes equal to 1 the displacement is
    eventually constant on both ends and continuous between, hence bounded.
    Orientation-reversing maps are rejected with a reason (their displacement
    is automatically unbounded).
    """
    if f.orientation < 0:
        return TrivialityVerdict(False, "orientation-reversing")
    if f.left_slope == 1 and f.right_slope == 1:
        return TrivialityVerdict(True, "end slopes 1: displacement eventually constant")
    return TrivialityVerdict(False, "an end slope differs from 1")


def is_trivial_qi(f: FinitePLMap) -> bool:
    return triviality_verdict(f).trivial


def displacement_sup(f: FinitePLMap, window: Interval) -> Fraction:
    """Exact max of |f(x) - x| over the window.

    f - id is PL, so the max is attained at a breakpoint or window endpoint;
    a finite scan suffices.
    """
    points = [window.lo, window.hi]
    points.extend(b for b in f.breakpoints if window.lo < b < window.hi)
    return max(abs(f.evaluate(x) - x) for x in points)


def iterate_displacement(f: FinitePLMap, a, k: int) -> tuple[Fraction, Fraction]:
    """(|f(a) - a|, |f^k(a) - a|); the second strictly exceeds the first
    whenever f is orientation-preserving, f(a) != a and k >= 2."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    if f.orientation < 0:
        raise ValueError("iterate displacement requires an orientation-preserving map")
    a = as_rational(a)
    x = f.evaluate(a)
    first = abs(x - a)
    for _ in range(k - 1):
        x = f.evaluate(x)
    return first, abs(x - a)
