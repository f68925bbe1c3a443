"""Piecewise-linear homeomorphisms of the real line with finite breakpoint sets.

A map is stored in canonical form: a strictly increasing tuple of breakpoints,
the value at each breakpoint, and the two end slopes.  Breakpoints where the
slope does not actually change are pruned at construction, and a map with no
breakpoints degenerates to an affine map carrying an explicit intercept.
Canonical forms are unique, so structural equality decides pointwise equality.

All maps are immutable after construction and safe to share between threads.
"""

from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .rationals import as_rational, format_rational


class InvalidMapError(ValueError):
    """Raised when data does not describe a PL homeomorphism of the line."""


class MapParseError(ValueError):
    """Raised on malformed serialized-map text, with 1-based position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval: lo={self.lo} > hi={self.hi}")

    def __contains__(self, x) -> bool:
        return self.lo <= as_rational(x) <= self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


# Sentinels returned by support() for the two non-interval outcomes.
EMPTY_SUPPORT = "empty"
UNBOUNDED_SUPPORT = "unbounded"


class FinitePLMap:
    """A PL homeomorphism of the line, exact everywhere.

    ``breakpoints``/``values`` list the graph at every genuine slope change;
    ``left_slope``/``right_slope`` extend the first and last segments to the
    ends of the line.  For affine maps (no breakpoints) ``intercept`` fixes
    the line, and the two end slopes coincide.
    """

    __slots__ = ("breakpoints", "values", "left_slope", "right_slope",
                 "intercept", "segment_slopes")

    def __init__(self, breakpoints=(), values=(), left_slope=1,
                 right_slope=None, intercept=None):
        bps = tuple(as_rational(b) for b in breakpoints)
        vals = tuple(as_rational(v) for v in values)
        ls = as_rational(left_slope)
        rs = as_rational(right_slope) if right_slope is not None else ls
        if len(bps) != len(vals):
            raise InvalidMapError("breakpoints and values differ in length")
        if ls == 0 or rs == 0:
            raise InvalidMapError("end slopes must be nonzero")
        if any(bps[i] >= bps[i + 1] for i in range(len(bps) - 1)):
            raise InvalidMapError("breakpoints must be strictly increasing")

        if not bps:
            if ls != rs:
                raise InvalidMapError("affine map needs equal end slopes")
            if intercept is None:
                raise InvalidMapError("affine map needs an intercept")
            self._store((), (), ls, rs, as_rational(intercept), ())
            return
        if intercept is not None:
            raise InvalidMapError("intercept is only valid without breakpoints")

        segs = tuple((vals[i + 1] - vals[i]) / (bps[i + 1] - bps[i])
                     for i in range(len(bps) - 1))
        orient = ls > 0
        for s in (ls, *segs, rs):
            if s == 0 or (s > 0) != orient:
                raise InvalidMapError(
                    "not a homeomorphism: all slopes must be nonzero and share one sign")

        def before(i):
            return ls if i == 0 else segs[i - 1]

        def after(i):
            return rs if i == len(bps) - 1 else segs[i]

        keep = [i for i in range(len(bps)) if before(i) != after(i)]
        if not keep:
            # Everything collinear: the map is affine.
            self._store((), (), ls, rs, vals[0] - ls * bps[0], ())
            return
        if len(keep) != len(bps):
            bps = tuple(bps[i] for i in keep)
            vals = tuple(vals[i] for i in keep)
            segs = tuple((vals[i + 1] - vals[i]) / (bps[i + 1] - bps[i])
                         for i in range(len(bps) - 1))
        self._store(bps, vals, ls, rs, None, segs)

    def _store(self, bps, vals, ls, rs, intercept, segs):
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "left_slope", ls)
        object.__setattr__(self, "right_slope", rs)
        object.__setattr__(self, "intercept", intercept)
        object.__setattr__(self, "segment_slopes", segs)

    def __setattr__(self, name, value):
        raise AttributeError("FinitePLMap is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def affine(cls, slope, intercept) -> "FinitePLMap":
        return cls((), (), slope, slope, intercept)

    @classmethod
    def identity(cls) -> "FinitePLMap":
        return cls.affine(1, 0)

    @classmethod
    def from_pairs(cls, pairs, left_slope, right_slope) -> "FinitePLMap":
        pairs = sorted((as_rational(x), as_rational(y)) for x, y in pairs)
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs),
                   left_slope, right_slope)

    # -- basic queries -----------------------------------------------------

    @property
    def is_affine(self) -> bool:
        return not self.breakpoints

    @property
    def orientation(self) -> int:
        return 1 if self.left_slope > 0 else -1

    def evaluate(self, x) -> Fraction:
        """f(x), by exact interpolation / end-slope extension."""
        x = as_rational(x)
        if not self.breakpoints:
            return self.left_slope * x + self.intercept
        bps, vals = self.breakpoints, self.values
        if x <= bps[0]:
            return vals[0] + self.left_slope * (x - bps[0])
        if x >= bps[-1]:
            return vals[-1] + self.right_slope * (x - bps[-1])
        i = bisect_right(bps, x) - 1
        return vals[i] + self.segment_slopes[i] * (x - bps[i])

    __call__ = evaluate

    def inverse_evaluate(self, y) -> Fraction:
        """The unique x with f(x) = y."""
        y = as_rational(y)
        if not self.breakpoints:
            return (y - self.intercept) / self.left_slope
        bps, vals = self.breakpoints, self.values
        if self.orientation > 0:
            if y <= vals[0]:
                return bps[0] + (y - vals[0]) / self.left_slope
            if y >= vals[-1]:
                return bps[-1] + (y - vals[-1]) / self.right_slope
            i = bisect_right(vals, y) - 1
        else:
            if y >= vals[0]:
                return bps[0] + (y - vals[0]) / self.left_slope
            if y <= vals[-1]:
                return bps[-1] + (y - vals[-1]) / self.right_slope
            i = next(j for j in range(len(vals) - 1) if vals[j + 1] < y <= vals[j])
        return bps[i] + (y - vals[i]) / self.segment_slopes[i]

    # -- structural equality / hashing --------------------------------------

    def _key(self):
        return (self.breakpoints, self.values, self.left_slope,
                self.right_slope, self.intercept)

    def __eq__(self, other):
        if not isinstance(other, FinitePLMap):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.is_affine:
            return (f"FinitePLMap.affine({self.left_slope!s}, {self.intercept!s})")
        pairs = ", ".join(f"({b!s}, {v!s})" for b, v in zip(self.breakpoints, self.values))
        return (f"FinitePLMap[{pairs}; left_slope={self.left_slope!s}, "
                f"right_slope={self.right_slope!s}]")


IDENTITY = FinitePLMap.identity()


def evaluate(f: FinitePLMap, x) -> Fraction:
    return f.evaluate(x)


def compose(f: FinitePLMap, g: FinitePLMap) -> FinitePLMap:
    """Exact f o g in canonical form.

    Candidate breakpoints are B(g) together with g^{-1}(B(f)); the composite
    is linear between consecutive candidates, so interpolation through the
    images is exact and canonicalization prunes the spurious ones.
    """
    cands = set(g.breakpoints)
    cands.update(g.inverse_evaluate(b) for b in f.breakpoints)
    if g.orientation > 0:
        ls = f.left_slope * g.left_slope
        rs = f.right_slope * g.right_slope
    else:
        ls = f.right_slope * g.left_slope
        rs = f.left_slope * g.right_slope
    if not cands:
        # affine o affine
        return FinitePLMap.affine(ls, f.evaluate(g.evaluate(Fraction(0))))
    bps = tuple(sorted(cands))
    vals = tuple(f.evaluate(g.evaluate(b)) for b in bps)
    return FinitePLMap(bps, vals, ls, rs)


def invert(f: FinitePLMap) -> FinitePLMap:
    """Exact inverse: breakpoints become values, slopes become reciprocals."""
    if f.is_affine:
        return FinitePLMap.affine(1 / f.left_slope, -f.intercept / f.left_slope)
    if f.orientation > 0:
        return FinitePLMap(f.values, f.breakpoints,
                           1 / f.left_slope, 1 / f.right_slope)
    return FinitePLMap(tuple(reversed(f.values)), tuple(reversed(f.breakpoints)),
                       1 / f.right_slope, 1 / f.left_slope)


def slope_set(f: FinitePLMap) -> frozenset:
    """The slope set: every segment slope plus both end slopes."""
    return frozenset((f.left_slope, f.right_slope, *f.segment_slopes))


def breakpoint_set(f: FinitePLMap) -> tuple:
    """The breakpoints, strictly increasing; empty for affine maps."""
    return f.breakpoints


def support(f: FinitePLMap):
    """Smallest closed interval containing every moved point.

    Returns EMPTY_SUPPORT for the identity and UNBOUNDED_SUPPORT when either
    end of the line is moved (end slope != 1, or a nonzero end translation).
    """
    if f.is_affine:
        if f.left_slope == 1 and f.intercept == 0:
            return EMPTY_SUPPORT
        return UNBOUNDED_SUPPORT
    if f.left_slope != 1 or f.right_slope != 1:
        return UNBOUNDED_SUPPORT
    if f.values[0] != f.breakpoints[0] or f.values[-1] != f.breakpoints[-1]:
        return UNBOUNDED_SUPPORT
    # Canonical form: the slope changes just inside both ends, so the hull of
    # the moved set is exactly the breakpoint span.
    return Interval(f.breakpoints[0], f.breakpoints[-1])


def equals(f: FinitePLMap, g: FinitePLMap) -> bool:
    """Pointwise equality, decided structurally on canonical forms."""
    return f == g


def map_power(f: FinitePLMap, k: int) -> FinitePLMap:
    """f composed with itself k times; negative k uses the inverse."""
    if k < 0:
        return map_power(invert(f), -k)
    out = IDENTITY
    for _ in range(k):
        out = compose(f, out)
    return out


# -- serialization ----------------------------------------------------------
#
# Text format, one item per line:
#     (x, f(x))          one line per breakpoint, in increasing order
#     left_slope p/q
#     right_slope p/q
#     intercept p/q      only for maps with no breakpoints
#
# Rationals are rendered "p/q", or "p" when the denominator is 1.  The
# round-trip serialize -> parse -> serialize is byte-identical.

_RAT_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def serialize_map(f: FinitePLMap) -> str:
    lines = [f"({format_rational(b)}, {format_rational(v)})"
             for b, v in zip(f.breakpoints, f.values)]
    lines.append(f"left_slope {format_rational(f.left_slope)}")
    lines.append(f"right_slope {format_rational(f.right_slope)}")
    if f.is_affine:
        lines.append(f"intercept {format_rational(f.intercept)}")
    return "\n".join(lines) + "\n"


def _rat_at(line: str, pos: int, lineno: int) -> tuple[Fraction, int]:
    m = _RAT_RE.match(line, pos)
    if not m:
        raise MapParseError("expected a rational 'p' or 'p/q'", lineno, pos + 1)
    token = m.group()
    if "/" in token and int(token.split("/")[1]) == 0:
        raise MapParseError("zero denominator", lineno, pos + 1)
    return Fraction(token), m.end()


def _expect(line: str, pos: int, literal: str, lineno: int) -> int:
    while pos < len(line) and line[pos] == " ":
        pos += 1
    if not line.startswith(literal, pos):
        raise MapParseError(f"expected {literal!r}", lineno, pos + 1)
    return pos + len(literal)


def parse_map(text: str) -> FinitePLMap:
    """Parse the serialized form back into a canonical FinitePLMap."""
    pairs: list[tuple[Fraction, Fraction]] = []
    fields: dict[str, Fraction] = {}
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.rstrip()
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.startswith("("):
            pos = line.index("(") + 1
            x, pos = _rat_at(line, _skip_spaces(line, pos), lineno)
            pos = _expect(line, pos, ",", lineno)
            y, pos = _rat_at(line, _skip_spaces(line, pos), lineno)
            pos = _expect(line, pos, ")", lineno)
            if line[pos:].strip():
                raise MapParseError("trailing text after pair", lineno, pos + 1)
            pairs.append((x, y))
            continue
        m = re.match(r"(left_slope|right_slope|intercept)\s+", line)
        if not m:
            raise MapParseError("expected '(x, y)' pair or a slope/intercept field",
                                lineno, 1)
        value, pos = _rat_at(line, m.end(), lineno)
        if line[pos:].strip():
            raise MapParseError("trailing text after field", lineno, pos + 1)
        name = m.group(1)
        if name in fields:
            raise MapParseError(f"duplicate field {name}", lineno, 1)
        fields[name] = value
    for required in ("left_slope", "right_slope"):
        if required not in fields:
            raise MapParseError(f"missing field {required}", last_line + 1, 1)
    if not pairs and "intercept" not in fields:
        raise MapParseError("map without pairs needs an intercept",
                            last_line + 1, 1)
    if pairs and "intercept" in fields:
        raise MapParseError("intercept is only valid without pairs", last_line, 1)
    return FinitePLMap(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs),
                       fields["left_slope"], fields["right_slope"],
                       fields.get("intercept"))


def _skip_spaces(line: str, pos: int) -> int:
    while pos < len(line) and line[pos] == " ":
        pos += 1
    return pos
