"""Numerical divisor calculus on an even Picard lattice.

Everything here is lattice arithmetic about divisor classes: the genus
formula g = c.c/2 + 1, nodal classes (square -2), an effectivity decision
for classes of square >= -2 against a fixed ample class, and ampleness
certificates in the style of the Nakai-Moishezon criterion.

A certificate is only as strong as its hypotheses.  Positivity of s.s and of
every pairing s . s_i and s . (s - s_i) is decided exactly; the section
existence h0(s - s_i) > 0 is not lattice-decidable, so it is recorded as an
explicit assumption (sanity-checked by (s - s_i)^2 >= -2) instead of being
silently claimed.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .errors import (
    AmbiguousZeroPairing,
    GensDoNotSpan,
    OddSelfIntersection,
    SquareTooNegative,
)
from .lattices import Lattice, pair
from .matrices import IntMatrix, snf


@dataclass(frozen=True)
class DivisorClass:
    """A divisor class in a fixed Picard basis."""

    coords: tuple[int, ...]

    @classmethod
    def of(cls, *coords: int) -> "DivisorClass":
        return cls(tuple(coords))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-x for x in self.coords))

    def minus(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(a - b for a, b in zip(self.coords, other.coords)))

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)


class Effectivity(Enum):
    EFFECTIVE = "effective"
    ANTI_EFFECTIVE = "anti-effective"
    ZERO = "zero"


@dataclass(frozen=True)
class Verdict:
    passed: bool
    reason: Optional[str] = None


@dataclass(frozen=True)
class AmpleCertificate:
    """Exact positivity data for one candidate ample class.

    pair_checks holds one triple (i, s.s_i, s.(s-s_i)) per generator,
    1-based.  verdict.passed requires s.s > 0 and strict positivity of every
    listed pairing, with each (s - s_i)^2 >= -2 so the assumed section
    existence is at least numerically consistent.
    """

    s: DivisorClass
    self_int: int
    pair_checks: tuple[tuple[int, int, int], ...]
    assumptions: tuple[str, ...]
    verdict: Verdict


def genus(lattice: Lattice, c: DivisorClass) -> int:
    """The arithmetic genus c.c/2 + 1 of a class on an even lattice.

    >>> genus(Lattice(IntMatrix.from_rows([[-2]])), DivisorClass.of(1))
    0
    """
    square = pair(lattice, c.coords, c.coords)
    if square % 2 != 0:
        raise OddSelfIntersection(f"self-intersection {square} is odd")
    return square // 2 + 1


def is_nodal_class(lattice: Lattice, c: DivisorClass) -> bool:
    """True iff the class has self-intersection -2."""
    return pair(lattice, c.coords, c.coords) == -2


def effectivity(lattice: Lattice, c: DivisorClass, ample: DivisorClass) -> Effectivity:
    """Decide whether c or -c is effective, against a certified ample class.

    Valid for c = 0 or c.c >= -2, where one of the two is effective; the
    ample class then separates them by the sign of the pairing.
    """
    if c.is_zero:
        return Effectivity.ZERO
    square = pair(lattice, c.coords, c.coords)
    if square < -2:
        raise SquareTooNegative(f"square {square} < -2 leaves effectivity undecided")
    p = pair(lattice, ample.coords, c.coords)
    if p > 0:
        return Effectivity.EFFECTIVE
    if p < 0:
        return Effectivity.ANTI_EFFECTIVE
    raise AmbiguousZeroPairing(
        "nonzero class pairs to zero with the ample class"
    )


def nakai_certificate(
    lattice: Lattice, s: DivisorClass, gens: Sequence[DivisorClass]
) -> AmpleCertificate:
    """Certify ampleness of s against effective generators of the lattice."""
    gen_matrix = IntMatrix.from_cols([list(g.coords) for g in gens])
    if snf(gen_matrix).rank < lattice.rank:
        raise GensDoNotSpan("generators do not span the lattice over Q")

    self_int = pair(lattice, s.coords, s.coords)
    checks = []
    assumptions = []
    reason = None
    if self_int <= 0:
        reason = f"s.s = {self_int} is not positive"
    for i, g in enumerate(gens, start=1):
        with_gen = pair(lattice, s.coords, g.coords)
        residual = s.minus(g)
        with_residual = pair(lattice, s.coords, residual.coords)
        checks.append((i, with_gen, with_residual))
        residual_square = pair(lattice, residual.coords, residual.coords)
        assumptions.append(
            f"h0(s - s{i}) > 0 assumed; (s - s{i})^2 = {residual_square}"
        )
        if reason is None and with_gen <= 0:
            reason = f"s . s{i} = {with_gen} is not positive"
        elif reason is None and with_residual <= 0:
            reason = f"s . (s - s{i}) = {with_residual} is not positive"
        elif reason is None and residual_square < -2:
            reason = f"(s - s{i})^2 = {residual_square} < -2 cannot be effective"
    verdict = Verdict(passed=reason is None, reason=reason)
    return AmpleCertificate(
        s=s,
        self_int=self_int,
        pair_checks=tuple(checks),
        assumptions=tuple(assumptions),
        verdict=verdict,
    )
