"""Symbolic maps with infinitely many breakpoints: the embedding machinery.

Three ingredients:

* ``h1`` squeezes the line into (0,1): h1(n) = 1 - 1/(n+2) for integers
  n >= 0, linear between integers, with h1(-x) = 1 - h1(x).
* ``h0`` stretches dyadically: the identity on [-1,1], mapping [n, n+1]
  linearly onto [2^(n-1), 2^n] for n >= 1, odd on the negatives.
* periodic lifts of degree-one circle maps: f(x + n) = f(x) + n, described
  by their core on [0,1] with core(1) = core(0) + 1.

``eta_embed`` turns a compactly supported PL map into an integer-fixing
periodic lift; ``psi_conjugate`` conjugates a lift by h0, which magnifies any
nontrivial behaviour into unbounded displacement (the growth formula makes
the divergence exact).  Everything evaluates exactly at rationals, and
breakpoints can be enumerated exactly inside any bounded window.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .plmaps import (EMPTY_SUPPORT, UNBOUNDED_SUPPORT, FinitePLMap, Interval,
                     InvalidMapError, support)
from .rationals import as_rational, ceil_frac, floor_frac, floor_log2, pow2


class DomainError(ValueError):
    """An evaluation outside a map's domain (e.g. h1 inverse outside (0,1))."""


class ClosedFormMismatch(RuntimeError):
    """Direct evaluation disagreed with the growth closed form (an internal bug)."""


# -- the two reference homeomorphisms ----------------------------------------

def h1_eval(x) -> Fraction:
    """The squeeze onto (0,1)."""
    x = as_rational(x)
    if x < 0:
        return 1 - h1_eval(-x)
    n = floor_frac(x)
    t = x - n
    lo = 1 - Fraction(1, n + 2)
    if t == 0:
        return lo
    hi = 1 - Fraction(1, n + 3)
    return lo + t * (hi - lo)


def h1_inverse_eval(y) -> Fraction:
    """Inverse of the squeeze; defined only on (0,1)."""
    y = as_rational(y)
    if y <= 0 or y >= 1:
        raise DomainError(f"h1 inverse is defined on (0,1) only, got {y}")
    if y < Fraction(1, 2):
        return -h1_inverse_eval(1 - y)
    n = floor_frac(1 / (1 - y)) - 2
    lo = 1 - Fraction(1, n + 2)
    hi = 1 - Fraction(1, n + 3)
    return n + (y - lo) / (hi - lo)


def h0_eval(x) -> Fraction:
    """The dyadic stretch: identity on [-1,1], [n,n+1] -> [2^(n-1), 2^n]."""
    x = as_rational(x)
    if x < 0:
        return -h0_eval(-x)
    if x <= 1:
        return x
    n = floor_frac(x)
    return pow2(n - 1) * (x - n + 1)


def h0_inverse_eval(y) -> Fraction:
    """Inverse of the dyadic stretch."""
    y = as_rational(y)
    if y < 0:
        return -h0_inverse_eval(-y)
    if y <= 1:
        return y
    n = floor_log2(y) + 1
    return n - 1 + y / pow2(n - 1)


def _h0_slope_exponent(x) -> int:
    """e with h0'(x) = 2^e on the segment containing x (x not a break)."""
    return max(0, floor_frac(abs(as_rational(x))) - 1)


# -- symbolic maps ------------------------------------------------------------

class StructuredMap:
    """A symbolic homeomorphism: exact pointwise evaluation, exact inverse
    evaluation, and finite exact breakpoint enumeration in bounded windows."""

    def eval(self, x) -> Fraction:
        raise NotImplementedError

    def eval_inverse(self, y) -> Fraction:
        raise NotImplementedError

    def inverse(self) -> "StructuredMap":
        raise NotImplementedError

    def breakpoints_in(self, window: Interval) -> list[Fraction]:
        raise NotImplementedError

    def __call__(self, x) -> Fraction:
        return self.eval(x)


class H0Map(StructuredMap):
    def eval(self, x):
        return h0_eval(x)

    def eval_inverse(self, y):
        return h0_inverse_eval(y)

    def inverse(self):
        return H0InverseMap()

    def breakpoints_in(self, window):
        # slope changes at integers of absolute value >= 2
        out = [Fraction(n) for n in range(ceil_frac(window.lo), floor_frac(window.hi) + 1)
               if abs(n) >= 2]
        return out

    def __eq__(self, other):
        return isinstance(other, H0Map)

    def __hash__(self):
        return hash(H0Map)


class H0InverseMap(StructuredMap):
    def eval(self, x):
        return h0_inverse_eval(x)

    def eval_inverse(self, y):
        return h0_eval(y)

    def inverse(self):
        return H0Map()

    def breakpoints_in(self, window):
        # breaks at +-2^k, k >= 1
        out = []
        k = 1
        while True:
            p = pow2(k)
            if p > max(abs(window.lo), abs(window.hi)):
                break
            for cand in (-p, p):
                if cand in window:
                    out.append(cand)
            k += 1
        return sorted(out)

    def __eq__(self, other):
        return isinstance(other, H0InverseMap)

    def __hash__(self):
        return hash(H0InverseMap)


class H1Map(StructuredMap):
    def eval(self, x):
        return h1_eval(x)

    def eval_inverse(self, y):
        return h1_inverse_eval(y)

    def inverse(self):
        return H1InverseMap()

    def breakpoints_in(self, window):
        # slope changes at every nonzero integer (slopes match across 0)
        return [Fraction(n) for n in range(ceil_frac(window.lo), floor_frac(window.hi) + 1)
                if n != 0]

    def __eq__(self, other):
        return isinstance(other, H1Map)

    def __hash__(self):
        return hash(H1Map)


class H1InverseMap(StructuredMap):
    def eval(self, x):
        return h1_inverse_eval(x)

    def eval_inverse(self, y):
        return h1_eval(y)

    def inverse(self):
        return H1Map()

    def breakpoints_in(self, window):
        # Breaks at h1(n), n != 0, accumulating at 0 and 1: the window must
        # stay strictly inside (0,1) for the enumeration to be finite.
        if window.lo <= 0 or window.hi >= 1:
            raise DomainError("h1 inverse breakpoints: window must lie inside (0,1)")
        lo_n = floor_frac(h1_inverse_eval(window.lo))
        hi_n = ceil_frac(h1_inverse_eval(window.hi))
        return [h1_eval(n) for n in range(lo_n, hi_n + 1)
                if n != 0 and h1_eval(n) in window]

    def __eq__(self, other):
        return isinstance(other, H1InverseMap)

    def __hash__(self):
        return hash(H1InverseMap)


class FinitePart(StructuredMap):
    """A FinitePLMap wrapped as a symbolic map."""

    def __init__(self, pl_map: FinitePLMap):
        self.pl_map = pl_map

    def eval(self, x):
        return self.pl_map.evaluate(x)

    def eval_inverse(self, y):
        return self.pl_map.inverse_evaluate(y)

    def inverse(self):
        from .plmaps import invert
        return FinitePart(invert(self.pl_map))

    def breakpoints_in(self, window):
        return [b for b in self.pl_map.breakpoints if b in window]

    def __eq__(self, other):
        return isinstance(other, FinitePart) and self.pl_map == other.pl_map

    def __hash__(self):
        return hash((FinitePart, self.pl_map))


class LiftCore:
    """PL data of a degree-one circle map on [0,1]: core(1) = core(0) + 1.

    Endpoints 0 and 1 are always listed; interior points are pruned to
    genuine slope changes.
    """

    __slots__ = ("points", "values", "slopes")

    def __init__(self, points, values):
        pts = tuple(as_rational(p) for p in points)
        vals = tuple(as_rational(v) for v in values)
        if len(pts) != len(vals) or len(pts) < 2:
            raise InvalidMapError("core needs matching point/value lists of length >= 2")
        if pts[0] != 0 or pts[-1] != 1:
            raise InvalidMapError("core points must start at 0 and end at 1")
        if any(pts[i] >= pts[i + 1] for i in range(len(pts) - 1)):
            raise InvalidMapError("core points must be strictly increasing")
        if any(vals[i] >= vals[i + 1] for i in range(len(vals) - 1)):
            raise InvalidMapError("core values must be strictly increasing")
        if vals[-1] != vals[0] + 1:
            raise InvalidMapError("core must satisfy core(1) = core(0) + 1")
        slopes = [(vals[i + 1] - vals[i]) / (pts[i + 1] - pts[i])
                  for i in range(len(pts) - 1)]
        keep = [0] + [i for i in range(1, len(pts) - 1)
                      if slopes[i - 1] != slopes[i]] + [len(pts) - 1]
        pts = tuple(pts[i] for i in keep)
        vals = tuple(vals[i] for i in keep)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "slopes", tuple(
            (vals[i + 1] - vals[i]) / (pts[i + 1] - pts[i])
            for i in range(len(pts) - 1)))

    def __setattr__(self, name, value):
        raise AttributeError("LiftCore is immutable")

    @classmethod
    def identity(cls) -> "LiftCore":
        return cls((0, 1), (0, 1))

    @classmethod
    def translation(cls, k: int) -> "LiftCore":
        return cls((0, 1), (k, k + 1))

    def eval(self, t) -> Fraction:
        t = as_rational(t)
        if not 0 <= t <= 1:
            raise DomainError(f"core evaluation outside [0,1]: {t}")
        if t == 1:
            return self.values[-1]
        i = bisect_right(self.points, t) - 1
        return self.values[i] + self.slopes[i] * (t - self.points[i])

    def eval_inverse(self, v) -> Fraction:
        v = as_rational(v)
        if not self.values[0] <= v <= self.values[-1]:
            raise DomainError(f"core inverse outside [{self.values[0]}, {self.values[-1]}]: {v}")
        if v == self.values[-1]:
            return Fraction(1)
        i = bisect_right(self.values, v) - 1
        return self.points[i] + (v - self.values[i]) / self.slopes[i]

    @property
    def wrap_break(self) -> bool:
        """Whether the periodic extension breaks at the integers."""
        return self.slopes[0] != self.slopes[-1]

    def __eq__(self, other):
        if not isinstance(other, LiftCore):
            return NotImplemented
        return (self.points, self.values) == (other.points, other.values)

    def __hash__(self):
        return hash((self.points, self.values))

    def __repr__(self):
        pairs = ", ".join(f"({p!s}, {v!s})" for p, v in zip(self.points, self.values))
        return f"LiftCore[{pairs}]"


class PeriodicLift(StructuredMap):
    """The bi-infinite periodic extension of a core: f(x + n) = f(x) + n.

    Boundedness |f(x) - x| <= |f(0)| + 1 holds automatically: on [0,1) the
    value stays inside [core(0), core(0) + 1].
    """

    def __init__(self, core: LiftCore):
        self.core = core

    def eval(self, x):
        x = as_rational(x)
        n = floor_frac(x)
        return self.core.eval(x - n) + n

    def eval_inverse(self, y):
        y = as_rational(y)
        n = floor_frac(y - self.core.values[0])
        return self.core.eval_inverse(y - n) + n

    def inverse(self):
        cands = {Fraction(0), Fraction(1)}
        for v in self.core.values[:-1]:
            cands.add(v - floor_frac(v))
        pts = sorted(cands)
        return PeriodicLift(LiftCore(pts, [self.eval_inverse(p) for p in pts]))

    def breakpoints_in(self, window):
        interior = self.core.points[1:-1]
        wrap = self.core.wrap_break
        out = []
        for k in range(floor_frac(window.lo), floor_frac(window.hi) + 1):
            if wrap and Fraction(k) in window:
                out.append(Fraction(k))
            for p in interior:
                if (k + p) in window:
                    out.append(k + p)
        return sorted(out)

    def __eq__(self, other):
        if not isinstance(other, PeriodicLift):
            return NotImplemented
        return self.core == other.core

    def __hash__(self):
        return hash((PeriodicLift, self.core))

    def __repr__(self):
        return f"PeriodicLift({self.core!r})"


class Composite(StructuredMap):
    """Composition of symbolic maps: Composite((u, v, w)) is x -> u(v(w(x)))."""

    def __init__(self, maps):
        self.maps = tuple(maps)
        if not self.maps:
            raise ValueError("empty composite")

    def eval(self, x):
        x = as_rational(x)
        for m in reversed(self.maps):
            x = m.eval(x)
        return x

    def eval_inverse(self, y):
        y = as_rational(y)
        for m in self.maps:
            y = m.eval_inverse(y)
        return y

    def inverse(self):
        return Composite(tuple(m.inverse() for m in reversed(self.maps)))

    @staticmethod
    def _candidates(maps, window):
        first_applied = maps[-1]
        out = set(first_applied.breakpoints_in(window))
        if len(maps) > 1:
            a = first_applied.eval(window.lo)
            b = first_applied.eval(window.hi)
            image = Interval(min(a, b), max(a, b))
            for c in Composite._candidates(maps[:-1], image):
                out.add(first_applied.eval_inverse(c))
        return out

    def breakpoints_in(self, window):
        # Work on a padded window so every candidate inside the requested one
        # has break-free neighbourhoods on both sides, then keep the
        # candidates where the exact gap slopes actually differ.
        pad = Interval(window.lo - 1, window.hi + 1)
        cands = sorted(c for c in self._candidates(self.maps, pad)
                       if pad.lo < c < pad.hi)
        fence = [pad.lo] + cands + [pad.hi]
        vals = [self.eval(t) for t in fence]
        out = []
        for i in range(1, len(fence) - 1):
            left = (vals[i] - vals[i - 1]) / (fence[i] - fence[i - 1])
            right = (vals[i + 1] - vals[i]) / (fence[i + 1] - fence[i])
            if left != right and fence[i] in window:
                out.append(fence[i])
        return out

    def __eq__(self, other):
        if not isinstance(other, Composite):
            return NotImplemented
        return self.maps == other.maps

    def __hash__(self):
        return hash((Composite, self.maps))

    def __repr__(self):
        return f"Composite({self.maps!r})"


def lift_from_circle_core(core) -> PeriodicLift:
    """Periodic extension of a core given as a LiftCore or (point, value) pairs."""
    if not isinstance(core, LiftCore):
        pairs = sorted((as_rational(p), as_rational(v)) for p, v in core)
        core = LiftCore(tuple(p for p, _ in pairs), tuple(v for _, v in pairs))
    return PeriodicLift(core)


def compose_lifts(a: PeriodicLift, b: PeriodicLift) -> PeriodicLift:
    """The periodic lift of the composed circle maps: x -> a(b(x))."""
    cands = {Fraction(0), Fraction(1)}
    cands.update(b.core.points[1:-1])
    image = Interval(b.core.values[0], b.core.values[-1])
    for beta in a.breakpoints_in(image):
        cands.add(b.eval_inverse(beta))
    pts = sorted(c for c in cands if 0 <= c <= 1)
    return PeriodicLift(LiftCore(pts, [a.eval(b.eval(p)) for p in pts]))


class EtaEmbed(PeriodicLift):
    """The integer-fixing periodization of a compactly supported PL map.

    Between consecutive integers the map acts by the h1-conjugate of the
    inner map: x -> n + h1(f(h1^{-1}(x - n))) for n < x < n+1, and fixes
    every integer.
    """

    def __init__(self, inner: FinitePLMap):
        sup = support(inner)
        if sup is UNBOUNDED_SUPPORT or sup == UNBOUNDED_SUPPORT:
            raise DomainError("eta requires a compactly supported map")
        self.inner = inner
        if sup == EMPTY_SUPPORT:
            super().__init__(LiftCore.identity())
            return
        lo_int = floor_frac(sup.lo) - 1
        hi_int = ceil_frac(sup.hi) + 1
        cands = {Fraction(0), Fraction(1)}
        for m in range(lo_int, hi_int + 1):
            cands.add(h1_eval(m))
            cands.add(h1_eval(inner.inverse_evaluate(m)))
        for b in inner.breakpoints:
            cands.add(h1_eval(b))
        pts = sorted(cands)
        vals = []
        for p in pts:
            if p == 0 or p == 1:
                vals.append(p)
            else:
                vals.append(h1_eval(inner.evaluate(h1_inverse_eval(p))))
        super().__init__(LiftCore(pts, vals))

    def __repr__(self):
        return f"EtaEmbed({self.inner!r})"


def eta_embed(f: FinitePLMap) -> EtaEmbed:
    """Embed a compactly supported PL map as an integer-fixing periodic lift."""
    return EtaEmbed(f)


def psi_conjugate(lift: PeriodicLift) -> Composite:
    """Conjugate a periodic lift by the dyadic stretch: h0 o lift o h0^{-1}."""
    if not isinstance(lift, PeriodicLift):
        raise TypeError("psi_conjugate expects a PeriodicLift (or EtaEmbed)")
    return Composite((H0Map(), lift, H0InverseMap()))


# -- growth witnesses ----------------------------------------------------------

@dataclass(frozen=True)
class GrowthWitness:
    """A point x in [0,1) moved by the lift, split as lift(x) = k + y.

    When the lift moves x downward the witness refers to the inverse lift
    (which moves the same x upward); ``inverted`` records that.  q bounds the
    dyadic-exponent jump of the h0-conjugate: q = floor(|lift(0)|) + 2.
    """

    x: Fraction
    k: int
    y: Fraction
    q: int
    inverted: bool = False


def witness_from_point(lift: PeriodicLift, x) -> GrowthWitness | None:
    x = as_rational(x)
    if not 0 <= x < 1:
        raise ValueError("witness probes must lie in [0,1)")
    if lift.eval(x) == x:
        return None
    target, inverted = (lift, False) if lift.eval(x) > x else (lift.inverse(), True)
    val = target.eval(x)
    k = floor_frac(val)
    q = floor_frac(abs(target.eval(Fraction(0)))) + 2
    return GrowthWitness(x=x, k=k, y=val - k, q=q, inverted=inverted)


def find_growth_witness(lift: PeriodicLift, probes) -> GrowthWitness | None:
    """First probe the lift moves, packaged as a witness; None if all fixed."""
    for p in probes:
        w = witness_from_point(lift, p)
        if w is not None:
            return w
    return None


def default_probes(lift: PeriodicLift) -> list[Fraction]:
    """Core breakpoints and segment midpoints: a nontrivial lift moves one."""
    pts = list(lift.core.points)
    probes = pts[:-1] + [(pts[i] + pts[i + 1]) / 2 for i in range(len(pts) - 1)]
    return sorted(set(probes))


def growth_formula(lift: PeriodicLift, witness: GrowthWitness, n: int) -> Fraction:
    """Displacement of the h0-conjugate at 2^n * (1 + x).

    Evaluates directly through the conjugate and checks it against the closed
    form 2^(n+k) + 2^(n+k) * y before returning the displacement.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    target = lift.inverse() if witness.inverted else lift
    point = pow2(n) * (1 + witness.x)
    direct = psi_conjugate(target).eval(point)
    closed = pow2(n + witness.k) * (1 + witness.y)
    if direct != closed:
        raise ClosedFormMismatch(
            f"direct evaluation {direct} != closed form {closed} at n={n}")
    return direct - point


def growth_table(lift: PeriodicLift, witness: GrowthWitness | None,
                 n_max: int) -> list[tuple[int, Fraction, Fraction, Fraction]]:
    """Rows (n, point, conjugate value, displacement) for n = 1..n_max.

    Without a witness the table is taken along the points 2^n themselves
    (displacement identically zero for a trivial lift).
    """
    rows = []
    if witness is None:
        f0 = psi_conjugate(lift)
        for n in range(1, n_max + 1):
            point = pow2(n)
            value = f0.eval(point)
            rows.append((n, point, value, value - point))
        return rows
    for n in range(1, n_max + 1):
        point = pow2(n) * (1 + witness.x)
        disp = growth_formula(lift, witness, n)
        rows.append((n, point, point + disp, disp))
    return rows


def conjugate_slope_bounds(lift: PeriodicLift) -> Interval:
    """Open interval (2^-q * m, 2^q * M) trapping every slope of the conjugate,
    where m, M bound the lift slopes and q = floor(|lift(0)|) + 2."""
    m = min(lift.core.slopes)
    big = max(lift.core.slopes)
    if m <= 0:
        raise ValueError("lift must be orientation-preserving")
    q = floor_frac(abs(lift.core.values[0])) + 2
    return Interval(pow2(-q) * m, pow2(q) * big)


def exact_local_slope(smap: StructuredMap, x) -> Fraction:
    """Exact slope of the segment of smap whose interior contains x.

    x must not itself be a breakpoint.
    """
    x = as_rational(x)
    window = Interval(x - 1, x + 1)
    breaks = smap.breakpoints_in(window)
    if x in breaks:
        raise ValueError(f"{x} is a breakpoint; sample inside a segment")
    fence = [window.lo] + breaks + [window.hi]
    for a, b in zip(fence, fence[1:]):
        if a < x < b:
            return (smap.eval(b) - smap.eval(a)) / (b - a)
    raise AssertionError("unreachable: x inside the window by construction")
