"""Thompson's group F as exact dyadic PL maps of [0,1].

Generators use the standard realization supported in the unit interval:

    x0: t/2 on [0,1/2],  t - 1/4 on [1/2,3/4],  2t - 1 on [3/4,1]
    x1: identity on [0,1/2], a half-scale copy of x0 on [1/2,1]
    xn (n >= 2): the conjugate x0^{-(n-1)} o x1 o x0^{n-1}

Words multiply left-to-right (the first letter acts first), so the word
"xi xj xi^-1" realizes as the map xi^{-1} o xj o xi; with that convention all
defining relations  xi xj xi^{-1} = x_{j+1}  (i < j)  hold as exact map
equalities, which the relation checker verifies rather than assumes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lifts import Composite, EtaEmbed, eta_embed, find_growth_witness, h1_eval, psi_conjugate
from .plmaps import (EMPTY_SUPPORT, FinitePLMap, IDENTITY, Interval, compose,
                     invert, map_power, slope_set, support)
from .rationals import is_dyadic, is_power_of_two


class WordParseError(ValueError):
    pass


@dataclass(frozen=True)
class ThompsonWord:
    """A freely reduced word in the generators; letters are (index, +-1)."""

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        reduced: list[tuple[int, int]] = []
        for idx, exp in self.letters:
            if idx < 0 or exp not in (1, -1):
                raise ValueError(f"bad letter ({idx}, {exp})")
            if reduced and reduced[-1] == (idx, -exp):
                reduced.pop()
            else:
                reduced.append((idx, exp))
        object.__setattr__(self, "letters", tuple(reduced))

    def __mul__(self, other: "ThompsonWord") -> "ThompsonWord":
        return ThompsonWord(self.letters + other.letters)

    def inverse(self) -> "ThompsonWord":
        return ThompsonWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "<empty>"
        return " ".join(f"x{i}" if e == 1 else f"x{i}^-1" for i, e in self.letters)


_LETTER_RE = re.compile(r"x(\d+)(?:\^(-?\d+))?$")


def parse_word(text: str) -> ThompsonWord:
    """Parse words like "x0 x1 x0^-1"; exponents expand into single letters."""
    letters: list[tuple[int, int]] = []
    for token in text.split():
        m = _LETTER_RE.fullmatch(token)
        if not m:
            raise WordParseError(f"bad word letter {token!r} (expected e.g. x0, x1^-1)")
        idx = int(m.group(1))
        power = int(m.group(2)) if m.group(2) is not None else 1
        sign = 1 if power > 0 else -1
        letters.extend((idx, sign) for _ in range(abs(power)))
    return ThompsonWord(tuple(letters))


@lru_cache(maxsize=None)
def generator(i: int) -> FinitePLMap:
    """The standard PL realization of the i-th generator."""
    if i < 0:
        raise ValueError("generator index must be nonnegative")
    half = Fraction(1, 2)
    if i == 0:
        return FinitePLMap(
            (0, half, Fraction(3, 4), 1),
            (0, Fraction(1, 4), half, 1),
            1, 1)
    if i == 1:
        return FinitePLMap(
            (half, Fraction(3, 4), Fraction(7, 8), 1),
            (half, Fraction(5, 8), Fraction(3, 4), 1),
            1, 1)
    conj = map_power(generator(0), i - 1)
    return compose(invert(conj), compose(generator(1), conj))


def realize(word: ThompsonWord) -> FinitePLMap:
    """The exact PL map of a word; letters act left-to-right."""
    out = IDENTITY
    for idx, exp in word.letters:
        g = generator(idx)
        if exp < 0:
            g = invert(g)
        out = compose(g, out)
    return out


def check_relation(i: int, j: int) -> bool:
    """Whether the word xi xj xi^-1 realizes the same map as x_{j+1}."""
    if not 0 <= i < j:
        raise ValueError("relation check requires 0 <= i < j")
    word = ThompsonWord(((i, 1), (j, 1), (i, -1)))
    return realize(word) == generator(j + 1)


@dataclass(frozen=True)
class DyadicCertificate:
    breakpoints_dyadic: bool
    slopes_powers_of_two: bool
    support_in_unit_interval: bool

    @property
    def ok(self) -> bool:
        return (self.breakpoints_dyadic and self.slopes_powers_of_two
                and self.support_in_unit_interval)


def certify_dyadic(f: FinitePLMap) -> DyadicCertificate:
    """Check dyadic breakpoints, power-of-two slopes, and support within [0,1]."""
    sup = support(f)
    if sup == EMPTY_SUPPORT:
        in_unit = True
    elif isinstance(sup, Interval):
        in_unit = 0 <= sup.lo and sup.hi <= 1
    else:
        in_unit = False
    return DyadicCertificate(
        breakpoints_dyadic=all(is_dyadic(b) for b in f.breakpoints),
        slopes_powers_of_two=all(is_power_of_two(s) for s in slope_set(f)),
        support_in_unit_interval=in_unit)


def word_problem(word: ThompsonWord) -> bool:
    """True iff the word realizes the identity map."""
    return realize(word) == IDENTITY


def embed_to_qi(word: ThompsonWord) -> Composite:
    """The quasi-isometry representative of a word: psi(eta(realize(word)))."""
    return psi_conjugate(eta_embed(realize(word)))


def dyadic_probes(max_denominator: int) -> list[Fraction]:
    """h1-images of the dyadics k/max_denominator in [0,1]."""
    return [h1_eval(Fraction(k, max_denominator)) for k in range(max_denominator + 1)]


def embed_growth_witness(word: ThompsonWord, start_denominator: int = 16):
    """(eta lift, growth witness) for a nontrivial word; (lift, None) for the identity.

    Probes are h1-images of dyadics; the denominator bound doubles until a
    moved probe appears (the moved set of a nontrivial word is open, so some
    dyadic is moved and the search terminates).
    """
    f = realize(word)
    lift = eta_embed(f)
    if f == IDENTITY:
        return lift, None
    den = start_denominator
    while den <= 1 << 20:
        witness = find_growth_witness(lift, dyadic_probes(den))
        if witness is not None:
            return lift, witness
        den *= 2
    raise RuntimeError(f"no growth witness found for nontrivial word {word}")
