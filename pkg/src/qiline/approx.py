"""Bounded-slope PL representatives of black-box quasi-isometries.

The construction: scan for the smallest integers 0 = x_0 < x_1 < ... (and
symmetrically downward) along which the oracle is strictly increasing, thin
the scan to y_k = x_{C^3 k}, and interpolate the oracle linearly through the
points (y_k, f(y_k)).  A monotone witness always exists within 4C^2 steps for
an honest C-quasi-isometry that preserves the ends of the line, which bounds
the grid gaps by 4C^5 and traps every slope of the interpolant in
[1/C - 1/C^2, C + 1/C^2].
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Callable, Mapping

from .plmaps import FinitePLMap, Interval
from .qi import first_qi_violation, qi_constant_from_slopes
from .rationals import as_rational, ceil_frac


class OracleContractError(Exception):
    """An oracle failed to behave like the C-quasi-isometry it declared."""


class ScanExceeded(OracleContractError):
    """No monotone witness within 4C^2 steps: the oracle violates its contract."""

    def __init__(self, x: int, direction: str, max_steps: int, c: int):
        super().__init__(
            f"no monotone witness {direction} from x={x} within {max_steps} "
            f"steps (= 4C^2 for C={c}); the oracle is not an end-preserving "
            f"C-quasi-isometry")
        self.x = x
        self.direction = direction
        self.max_steps = max_steps
        self.c = c


class SlopeOutOfRange(OracleContractError):
    def __init__(self, slope: Fraction, c: int):
        lo, hi = slope_interval(c)
        super().__init__(f"interpolant slope {slope} outside [{lo}, {hi}] for C={c}")
        self.slope = slope


class TableDomainError(OracleContractError):
    def __init__(self, x: int):
        super().__init__(f"table oracle has no entry for integer {x}")
        self.x = x


class InvalidOracleError(OracleContractError):
    pass


@dataclass(frozen=True)
class QIOracle:
    """A pure integer-to-rational evaluation with a declared constant C >= 2."""

    eval_fn: Callable[[int], Fraction]
    c: int
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.c, int) or self.c < 2:
            raise InvalidOracleError(f"declared C must be an integer >= 2, got {self.c}")

    def eval(self, x: int) -> Fraction:
        return as_rational(self.eval_fn(int(x)))


def validate_oracle(oracle: QIOracle, pairs: int = 200, span: int = 10**4,
                    seed: int = 0) -> None:
    """Brute-force the quasi-isometry inequality on seeded random integer pairs."""
    rng = random.Random((seed, oracle.name, oracle.c))
    sample = [(rng.randint(-span, span), rng.randint(-span, span))
              for _ in range(pairs)]
    bad = first_qi_violation(oracle, Fraction(oracle.c), sample)
    if bad is not None:
        raise InvalidOracleError(
            f"oracle {oracle.name or '<anonymous>'} violates the inequality for "
            f"C={oracle.c} at pair {bad}")


# -- built-in oracle families ------------------------------------------------

def identity_oracle(c: int = 2) -> QIOracle:
    return QIOracle(lambda x: Fraction(x), c, name="identity")


def pl_map_oracle(f: FinitePLMap, c: int | None = None, validate: bool = True) -> QIOracle:
    """Any increasing FinitePLMap restricted to the integers.

    When c is omitted it is derived from the slope bound, rounded up to an
    integer >= 2.
    """
    if f.orientation < 0:
        raise InvalidOracleError(
            "oracle must preserve the ends of the line; compose with negation first")
    if c is None:
        c = max(2, ceil_frac(qi_constant_from_slopes(f).value))
    oracle = QIOracle(f.evaluate, c, name="pl")
    if validate:
        validate_oracle(oracle)
    return oracle


def sqrt_drift_oracle(c: int = 2, validate: bool = True) -> QIOracle:
    """x + floor(sqrt(|x|)) * sign(x); a 2-quasi-isometry."""

    def ev(x: int) -> Fraction:
        s = isqrt(abs(x))
        return Fraction(x + (s if x > 0 else -s if x < 0 else 0))

    oracle = QIOracle(ev, c, name="sqrt-drift")
    if validate:
        validate_oracle(oracle)
    return oracle


def bounded_noise_oracle(radius: int, seed: int = 0, c: int | None = None,
                         validate: bool = True) -> QIOracle:
    """x + r(x) with |r(x)| <= radius, r seeded and pure; C = 2*radius + 1.

    The noise is derived from a hash so repeated evaluation is deterministic
    across runs and platforms.
    """
    if radius < 0:
        raise InvalidOracleError("noise radius must be nonnegative")
    if c is None:
        c = 2 * radius + 1
    width = 2 * radius + 1

    def ev(x: int) -> Fraction:
        digest = hashlib.sha256(f"{seed}:{x}".encode()).digest()
        r = int.from_bytes(digest[:8], "big") % width - radius
        return Fraction(x + r)

    oracle = QIOracle(ev, max(c, 2), name=f"noise({radius},seed={seed})")
    if validate:
        validate_oracle(oracle)
    return oracle


def block_swap_oracle(c: int = 3, validate: bool = True) -> QIOracle:
    """Swap each even integer with its odd successor: 2m <-> 2m+1."""

    def ev(x: int) -> Fraction:
        return Fraction(x + 1 if x % 2 == 0 else x - 1)

    oracle = QIOracle(ev, c, name="block-swap")
    if validate:
        validate_oracle(oracle)
    return oracle


def table_oracle(table: Mapping[int, Fraction], c: int) -> QIOracle:
    """Evaluation by finite lookup table; querying a missing integer is an error."""
    fixed = {int(k): as_rational(v) for k, v in table.items()}

    def ev(x: int) -> Fraction:
        try:
            return fixed[x]
        except KeyError:
            raise TableDomainError(x) from None

    return QIOracle(ev, c, name="table")


def negated(oracle: QIOracle) -> QIOracle:
    """x -> -f(x): turns an end-reversing oracle into an end-preserving one."""
    return QIOracle(lambda x: -oracle.eval(x), oracle.c,
                    name=f"negated({oracle.name})")


# -- the grid and the interpolant ---------------------------------------------

def monotone_witness_up(oracle: QIOracle, x: int) -> int:
    """Smallest integer y > x with f(y) > f(x); guaranteed y - x <= 4C^2."""
    fx = oracle.eval(x)
    limit = 4 * oracle.c ** 2
    for step in range(1, limit + 1):
        if oracle.eval(x + step) > fx:
            return x + step
    raise ScanExceeded(x, "up", limit, oracle.c)


def monotone_witness_down(oracle: QIOracle, x: int) -> int:
    """Greatest integer v < x with f(v) < f(x); guaranteed x - v <= 4C^2."""
    fx = oracle.eval(x)
    limit = 4 * oracle.c ** 2
    for step in range(1, limit + 1):
        if oracle.eval(x - step) < fx:
            return x - step
    raise ScanExceeded(x, "down", limit, oracle.c)


@dataclass(frozen=True)
class ApproximationGrid:
    """The monotone scan x_k (|k| <= N*C^3), its thinning y_k = x_{C^3 k}
    (|k| <= N), and the oracle values along the y's."""

    c: int
    n: int
    xs: tuple[int, ...]
    ys: tuple[int, ...]
    f_values: tuple[Fraction, ...] = field(repr=False)

    def __post_init__(self):
        step = self.c ** 3
        if len(self.xs) != 2 * self.n * step + 1 or len(self.ys) != 2 * self.n + 1:
            raise ValueError("grid sequences have inconsistent lengths")
        if len(self.f_values) != len(self.ys):
            raise ValueError("grid values have inconsistent length")
        cap = 4 * self.c ** 2
        for a, b in zip(self.xs, self.xs[1:]):
            if not 1 <= b - a <= cap:
                raise ValueError(f"scan step {b - a} outside [1, {cap}]")
        if tuple(self.xs[::step]) != self.ys:
            raise ValueError("y sequence is not the C^3-thinning of the x sequence")
        lo, hi = step, 4 * self.c ** 5
        for a, b in zip(self.ys, self.ys[1:]):
            if not lo <= b - a <= hi:
                raise ValueError(f"grid gap {b - a} outside [{lo}, {hi}]")

    def x(self, k: int) -> int:
        return self.xs[k + self.n * self.c ** 3]

    def y(self, k: int) -> int:
        return self.ys[k + self.n]

    def f_at_y(self, k: int) -> Fraction:
        return self.f_values[k + self.n]

    @property
    def span(self) -> Interval:
        return Interval(self.ys[0], self.ys[-1])


def build_grid(oracle: QIOracle, n: int) -> ApproximationGrid:
    """Run the witness scans out to |k| = N*C^3 and thin to the y grid."""
    if n < 1:
        raise ValueError("window size N must be >= 1")
    reach = n * oracle.c ** 3
    ups = [0]
    for _ in range(reach):
        ups.append(monotone_witness_up(oracle, ups[-1]))
    downs = [0]
    for _ in range(reach):
        downs.append(monotone_witness_down(oracle, downs[-1]))
    xs = tuple(reversed(downs[1:])) + tuple(ups)
    ys = xs[::oracle.c ** 3]
    f_values = tuple(oracle.eval(y) for y in ys)
    return ApproximationGrid(c=oracle.c, n=n, xs=xs, ys=ys, f_values=f_values)


def slope_interval(c: int) -> tuple[Fraction, Fraction]:
    """[1/C - 1/C^2, C + 1/C^2]: where every interpolant slope must land."""
    c = Fraction(c)
    return (1 / c - 1 / c**2, c + 1 / c**2)


def pl_approximate_from_grid(grid: ApproximationGrid) -> FinitePLMap:
    """Linear interpolation through (y_k, f(y_k)), end segments extended."""
    bps = tuple(Fraction(y) for y in grid.ys)
    vals = grid.f_values
    ls = (vals[1] - vals[0]) / (bps[1] - bps[0])
    rs = (vals[-1] - vals[-2]) / (bps[-1] - bps[-2])
    g = FinitePLMap(bps, vals, ls, rs)
    lo, hi = slope_interval(grid.c)
    for s in sorted({ls, rs, *g.segment_slopes}):
        if not lo <= s <= hi:
            raise SlopeOutOfRange(s, grid.c)
    return g


def approximate_with_grid(oracle: QIOracle, n: int) -> tuple[FinitePLMap, ApproximationGrid]:
    grid = build_grid(oracle, n)
    return pl_approximate_from_grid(grid), grid


def pl_approximate(oracle: QIOracle, n: int) -> FinitePLMap:
    """The bounded-slope PL map agreeing with the oracle on the y grid."""
    return approximate_with_grid(oracle, n)[0]


def agreement_bound(c: int) -> Fraction:
    """Derived bound on sup|oracle - interpolant| over the grid span.

    Between consecutive y's, both maps stay within C*gap + C of the shared
    value at the nearer grid point, and gaps are at most 4C^5.
    """
    return Fraction(2 * c * 4 * c**5 + 2 * c)


def agreement_report(oracle: QIOracle, g: FinitePLMap,
                     grid: ApproximationGrid) -> Fraction:
    """Exact sup of |oracle - g| over the integers in the grid span."""
    worst = Fraction(0)
    for t in range(grid.ys[0], grid.ys[-1] + 1):
        gap = abs(oracle.eval(t) - g.evaluate(t))
        if gap > worst:
            worst = gap
    return worst
