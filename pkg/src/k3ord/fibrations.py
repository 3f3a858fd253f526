"""Section groups of elliptic fibrations and their twist bookkeeping.

The group of sections of an elliptically fibred surface is modeled as

    Z^r  +  Z/m_1 + ... + Z/m_k  +  E^e,

where each E is a symbolic divisible group standing for the points of
an elliptic curve: the only facts encoded are that multiplication by
any m >= 1 is surjective and that the m-torsion is (Z/m)^2.  No curve
arithmetic over a field happens here.

Supported endomorphisms are block diagonal: an integer matrix on the
free part, a multiplier on each finite cyclic summand, and a signed
permutation of the elliptic summands.  For a cyclic group acting
through such an endomorphism the module computes H^1 componentwise
(Shapiro's lemma reduces a permutation cycle to the single summand it
wraps around), decides the cocycle and coboundary conditions for
twisting the action, maps section symbols to line-bundle expressions,
and adds numerical sections on the rank-ten elliptic model.
"""

import math
from dataclasses import dataclass
from typing import Optional, Union

from .cohomology import CohResult, GLattice, h1
from .divisors import DivisorClass
from .errors import (
    DimensionMismatch,
    NotANumericalSection,
    UnsupportedAction,
    UnsupportedParameter,
)
from .lattices import Lattice, pair
from .matrices import IntMatrix, solve_integer
from .orders import surface_rational_elliptic

ZERO_POINT = "e0"


@dataclass(frozen=True)
class AbGroupModel:
    """Shape of a section group: free rank, finite moduli, elliptic summands."""

    free_rank: int = 0
    finite_cyclic: tuple[int, ...] = ()
    elliptic_count: int = 0

    def __post_init__(self):
        if self.free_rank < 0 or self.elliptic_count < 0:
            raise UnsupportedParameter("summand counts must be nonnegative")
        for m in self.finite_cyclic:
            if m < 2:
                raise UnsupportedParameter(
                    f"finite cyclic modulus must be at least 2, got {m}"
                )


@dataclass(frozen=True)
class BlockEndo:
    """A block-diagonal endomorphism generating a cyclic action of the given order.

    elliptic_action lists one (sign, image) pair per elliptic summand:
    summand i is sent to summand image with the given sign.  Anything
    that is not a signed permutation, or whose order-th power is not
    the identity, is refused outright.
    """

    free_action: IntMatrix
    finite_action: tuple[int, ...]
    elliptic_action: tuple[tuple[int, int], ...]
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise UnsupportedParameter(f"order must be positive, got {self.order}")
        if not self.free_action.is_square:
            raise DimensionMismatch("free action must be square")
        power = IntMatrix.identity(self.free_action.rows)
        for _ in range(self.order):
            power = self.free_action @ power
        if power != IntMatrix.identity(self.free_action.rows):
            raise UnsupportedAction(
                f"free action is not periodic of order {self.order}"
            )
        e = len(self.elliptic_action)
        images = [image for _, image in self.elliptic_action]
        if sorted(images) != list(range(e)):
            raise UnsupportedAction("elliptic images must form a permutation")
        for sign, _ in self.elliptic_action:
            if sign not in (1, -1):
                raise UnsupportedAction(f"elliptic sign must be +-1, got {sign}")
        for cycle in _cycles(images):
            net = 1
            for i in cycle:
                net *= self.elliptic_action[i][0]
            length = len(cycle)
            if self.order % length != 0:
                raise UnsupportedAction(
                    "an elliptic cycle length must divide the order"
                )
            if net == -1 and (self.order // length) % 2 != 0:
                raise UnsupportedAction(
                    "a sign-reversing cycle needs even order on its summand"
                )


def _cycles(images: list[int]) -> list[list[int]]:
    """Cycle decomposition of a permutation given as an image list."""
    seen = [False] * len(images)
    cycles = []
    for start in range(len(images)):
        if seen[start]:
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i)
            i = images[i]
        cycles.append(cycle)
    return cycles


def trivial_endo(model: AbGroupModel, order: int) -> BlockEndo:
    """The identity on every block, declared with the given order."""
    return BlockEndo(
        free_action=IntMatrix.identity(model.free_rank),
        finite_action=(1,) * len(model.finite_cyclic),
        elliptic_action=tuple((1, i) for i in range(model.elliptic_count)),
        order=order,
    )


def negation_endo(model: AbGroupModel, order: int = 2) -> BlockEndo:
    """Negation on every block: the fibrewise inverse action."""
    return BlockEndo(
        free_action=IntMatrix.identity(model.free_rank).scale(-1),
        finite_action=tuple(m - 1 for m in model.finite_cyclic),
        elliptic_action=tuple((-1, i) for i in range(model.elliptic_count)),
        order=order,
    )


@dataclass(frozen=True)
class TorsionPoint:
    """An integer multiple of one named point of declared exact order."""

    symbol: str
    order: int
    mult: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise UnsupportedParameter(
                f"a point's exact order must be positive, got {self.order}"
            )


def _reduce_point(point: Optional[TorsionPoint]) -> Optional[TorsionPoint]:
    if point is None or point.mult % point.order == 0:
        return None
    return TorsionPoint(point.symbol, point.order, point.mult % point.order)


def _add_points(
    a: Optional[TorsionPoint], b: Optional[TorsionPoint]
) -> Optional[TorsionPoint]:
    a = _reduce_point(a)
    b = _reduce_point(b)
    if a is None:
        return b
    if b is None:
        return a
    if a.symbol != b.symbol or a.order != b.order:
        raise UnsupportedAction(
            f"cannot add unrelated symbolic points {a.symbol} and {b.symbol}"
        )
    return _reduce_point(TorsionPoint(a.symbol, a.order, a.mult + b.mult))


def _scale_point(
    point: Optional[TorsionPoint], factor: int
) -> Optional[TorsionPoint]:
    if point is None:
        return None
    return _reduce_point(
        TorsionPoint(point.symbol, point.order, factor * point.mult)
    )


@dataclass(frozen=True)
class GroupElement:
    """An element of a section-group model, in block coordinates.

    Elliptic coordinates are symbolic torsion points (or None for the
    zero point); arithmetic on them stays within the multiples of any
    one named point.
    """

    model: AbGroupModel
    free: tuple[int, ...] = ()
    finite: tuple[int, ...] = ()
    elliptic: tuple[Optional[TorsionPoint], ...] = ()

    def __post_init__(self):
        if (
            len(self.free) != self.model.free_rank
            or len(self.finite) != len(self.model.finite_cyclic)
            or len(self.elliptic) != self.model.elliptic_count
        ):
            raise DimensionMismatch(
                "element coordinates do not match the model shape"
            )
        object.__setattr__(
            self,
            "finite",
            tuple(
                c % m for c, m in zip(self.finite, self.model.finite_cyclic)
            ),
        )
        object.__setattr__(
            self, "elliptic", tuple(_reduce_point(p) for p in self.elliptic)
        )

    @classmethod
    def zero(cls, model: AbGroupModel) -> "GroupElement":
        return cls(
            model,
            (0,) * model.free_rank,
            (0,) * len(model.finite_cyclic),
            (None,) * model.elliptic_count,
        )

    @property
    def is_zero(self) -> bool:
        return (
            all(c == 0 for c in self.free)
            and all(c == 0 for c in self.finite)
            and all(p is None for p in self.elliptic)
        )

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if self.model != other.model:
            raise DimensionMismatch("elements live in different models")
        return GroupElement(
            self.model,
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.finite, other.finite)),
            tuple(
                _add_points(a, b)
                for a, b in zip(self.elliptic, other.elliptic)
            ),
        )


def _check_compat(model: AbGroupModel, endo: BlockEndo) -> None:
    if (
        endo.free_action.rows != model.free_rank
        or len(endo.finite_action) != len(model.finite_cyclic)
        or len(endo.elliptic_action) != model.elliptic_count
    ):
        raise DimensionMismatch("endomorphism blocks do not match the model")
    for u, m in zip(endo.finite_action, model.finite_cyclic):
        if pow(u, endo.order, m) != 1 % m:
            raise UnsupportedAction(
                f"multiplier {u} is not periodic of order {endo.order} mod {m}"
            )


def apply_endo(endo: BlockEndo, x: GroupElement) -> GroupElement:
    """Image of an element under one application of the endomorphism."""
    model = x.model
    _check_compat(model, endo)
    free = (
        endo.free_action.mul_vec(x.free) if model.free_rank else ()
    )
    finite = tuple(
        (u * c) % m
        for u, c, m in zip(endo.finite_action, x.finite, model.finite_cyclic)
    )
    elliptic: list[Optional[TorsionPoint]] = [None] * model.elliptic_count
    for i, (sign, image) in enumerate(endo.elliptic_action):
        elliptic[image] = _scale_point(x.elliptic[i], sign)
    return GroupElement(model, tuple(free), finite, tuple(elliptic))


def norm_element(endo: BlockEndo, x: GroupElement) -> GroupElement:
    """The norm x + sigma x + ... + sigma^(n-1) x."""
    total = x
    current = x
    for _ in range(endo.order - 1):
        current = apply_endo(endo, current)
        total = total + current
    return total


def cocycle_check(endo: BlockEndo, s: GroupElement) -> bool:
    """True iff the norm annihilates s, so s can twist the cyclic action.

    >>> model = AbGroupModel(elliptic_count=1)
    >>> s = GroupElement(model, elliptic=(TorsionPoint("eps", 3),))
    >>> cocycle_check(trivial_endo(model, 3), s)
    True
    """
    return norm_element(endo, s).is_zero


def coboundary_check(endo: BlockEndo, s: GroupElement) -> bool:
    """True iff s = t - sigma(t) for some t, i.e. the twist class is trivial.

    Decided blockwise: an integer solve on the free part, a gcd
    condition on each finite summand, and a walk around each elliptic
    cycle.  On a cycle whose net sign is -1 the equation 2t = (cycle
    sum) is always solvable because the group is 2-divisible; on a
    net-positive cycle the signed sum of the coordinates must vanish.
    """
    model = s.model
    _check_compat(model, endo)
    if model.free_rank:
        diff = IntMatrix.identity(model.free_rank) - endo.free_action
        if solve_integer(diff, list(s.free)) is None:
            return False
    for u, c, m in zip(endo.finite_action, s.finite, model.finite_cyclic):
        g = math.gcd((1 - u) % m, m)
        if c % g != 0:
            return False
    images = [image for _, image in endo.elliptic_action]
    signs = {i: sign for i, (sign, _) in enumerate(endo.elliptic_action)}
    for cycle in _cycles(images):
        net = 1
        accumulated: Optional[TorsionPoint] = None
        # walk x_{image(i)} = s_{image(i)} + sign(i) x_i around the cycle
        for i in cycle:
            accumulated = _add_points(
                _scale_point(accumulated, signs[i]), s.elliptic[images[i]]
            )
            net *= signs[i]
        if net == 1 and _reduce_point(accumulated) is not None:
            return False
    return True


# --- structured cohomology --------------------------------------------------------


@dataclass(frozen=True)
class StructuredH1:
    """H^1 of a cyclic action on a section-group model, block by block.

    invariant_factors normalizes the combined torsion; the per-block
    fields keep the provenance (free classes come with generator
    vectors through free_part).
    """

    invariant_factors: tuple[int, ...]
    free_rank: int
    free_part: CohResult
    finite_factors: tuple[int, ...]
    elliptic_factors: tuple[int, ...]

    @property
    def group_order(self) -> int:
        total = 1
        for d in self.invariant_factors:
            total *= d
        return total


def _prime_powers(n: int) -> dict[int, int]:
    powers = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            powers[p] = powers.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        powers[n] = powers.get(n, 0) + 1
    return powers


def _invariant_chain(orders: list[int]) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of a direct sum of cyclic groups."""
    by_prime: dict[int, list[int]] = {}
    for n in orders:
        for p, k in _prime_powers(n).items():
            by_prime.setdefault(p, []).append(k)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = []
    for position in range(length):
        d = 1
        for p, exps in by_prime.items():
            exps_sorted = sorted(exps, reverse=True)
            if position < len(exps_sorted):
                d *= p ** exps_sorted[position]
        factors.append(d)
    return tuple(sorted(factors))


def h1_structured(model: AbGroupModel, endo: BlockEndo) -> StructuredH1:
    """H^1 of the cyclic group generated by endo, acting on the model.

    >>> model = AbGroupModel(elliptic_count=1)
    >>> h1_structured(model, trivial_endo(model, 4)).invariant_factors
    (4, 4)
    """
    _check_compat(model, endo)
    if model.free_rank:
        rank = model.free_rank
        ambient = Lattice(IntMatrix.zeros(rank, rank))
        free_part = h1(GLattice(ambient, endo.free_action, endo.order))
    else:
        free_part = CohResult((), 0, ())
    finite_factors = []
    for u, m in zip(endo.finite_action, model.finite_cyclic):
        norm = sum(pow(u, i, m) for i in range(endo.order)) % m
        kernel_size = math.gcd(norm, m)
        image_size = m // math.gcd((1 - u) % m, m)
        size = kernel_size // image_size
        if size > 1:
            finite_factors.append(size)
    elliptic_factors = []
    images = [image for _, image in endo.elliptic_action]
    for cycle in _cycles(images):
        net = 1
        for i in cycle:
            net *= endo.elliptic_action[i][0]
        m = endo.order // len(cycle)
        if net == 1 and m > 1:
            elliptic_factors.extend((m, m))
    combined = _invariant_chain(
        list(free_part.invariant_factors)
        + finite_factors
        + elliptic_factors
    )
    return StructuredH1(
        invariant_factors=combined,
        free_rank=free_part.free_rank,
        free_part=free_part,
        finite_factors=tuple(finite_factors),
        elliptic_factors=tuple(elliptic_factors),
    )


# --- section symbols and their line bundles ---------------------------------------


@dataclass(frozen=True)
class ZeroSection:
    pass


@dataclass(frozen=True)
class Horizontal:
    """The constant section through a named point of the fibre curve."""

    point: str


@dataclass(frozen=True)
class Vertical:
    """A full fibre over a named base point; not a section."""

    point: str


@dataclass(frozen=True)
class Graph:
    """The graph of a named nonconstant morphism from the base to the fibre."""

    name: str
    degree: int
    preimages_of_zero: int

    def __post_init__(self):
        if self.degree < 1:
            raise UnsupportedParameter("a graph needs degree at least 1")
        if not 1 <= self.preimages_of_zero <= self.degree:
            raise UnsupportedParameter(
                "the zero fibre has between 1 and degree preimages"
            )


SectionExpr = Union[ZeroSection, Horizontal, Graph]


@dataclass(frozen=True)
class FormalDivisor:
    """An integer combination of named divisor symbols."""

    terms: tuple[tuple[int, str], ...]

    @property
    def is_trivial(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "O"
        parts = []
        for coeff, symbol in self.terms:
            if coeff == 1:
                chunk = symbol
            elif coeff == -1:
                chunk = f"-{symbol}"
            else:
                chunk = f"{coeff}*{symbol}"
            if parts and not chunk.startswith("-"):
                parts.append(f"+ {chunk}")
            elif parts:
                parts.append(f"- {chunk[1:]}")
            else:
                parts.append(chunk)
        return " ".join(parts)


def section_line_bundle(
    s: SectionExpr, model: AbGroupModel
) -> FormalDivisor:
    """Line bundle attached to a section: the class of S - S_0 - D_S.

    Works on the three section symbols: the zero section gives the
    trivial class, a horizontal section S = {e} x C gives S - {e0} x C,
    and the graph of a degree-d morphism gives the graph minus the zero
    horizontal section minus the fibres over the preimages of the zero
    point.

    >>> str(section_line_bundle(Graph("id", 1, 1), AbGroupModel(
    ...     free_rank=1, elliptic_count=1)))
    'graph(id) - horizontal(e0) - vertical(id^-1(e0))'
    """
    if isinstance(s, ZeroSection):
        return FormalDivisor(())
    if isinstance(s, Horizontal):
        if model.elliptic_count < 1:
            raise UnsupportedParameter(
                "horizontal sections need an elliptic summand in the model"
            )
        if s.point == ZERO_POINT:
            return FormalDivisor(())
        return FormalDivisor(
            (
                (1, f"horizontal({s.point})"),
                (-1, f"horizontal({ZERO_POINT})"),
            )
        )
    if isinstance(s, Graph):
        if model.free_rank < 1:
            raise UnsupportedParameter(
                "graph sections need a free summand in the model"
            )
        return FormalDivisor(
            (
                (1, f"graph({s.name})"),
                (-1, f"horizontal({ZERO_POINT})"),
                (-s.preimages_of_zero, f"vertical({s.name}^-1({ZERO_POINT}))"),
            )
        )
    raise UnsupportedParameter(
        f"{type(s).__name__} is not a section symbol"
    )


# --- the group law on numerical sections -------------------------------------------


def mw_sum_rational_elliptic(
    c1: DivisorClass, c2: DivisorClass, s0: DivisorClass
) -> DivisorClass:
    """Sum of two sections of the rational elliptic fibration, as classes.

    On the plane blown up in nine points, with zero section s0 and
    fibre class F = -K, two numerical sections add up to

        c1 + c2 - s0 + alpha F,   alpha = (c1 + c2).s0 - c1.c2 + 1.

    Every input must satisfy the numerical section conditions
    c^2 = -1 and c.F = 1; the output satisfies them again.
    """
    model = surface_rational_elliptic()
    lattice = model.pic
    fibre = tuple(int(-c) for c in model.k_class.coords)
    classes = {"c1": c1, "c2": c2, "s0": s0}
    for name, cls in classes.items():
        if len(cls.coords) != 10:
            raise DimensionMismatch(
                f"{name} must live on the rank-10 model"
            )
        if pair(lattice, cls.coords, cls.coords) != -1:
            raise NotANumericalSection(f"{name} has square != -1")
        if pair(lattice, cls.coords, fibre) != 1:
            raise NotANumericalSection(f"{name} does not meet the fibre once")
    both = tuple(a + b for a, b in zip(c1.coords, c2.coords))
    alpha = (
        pair(lattice, both, s0.coords)
        - pair(lattice, c1.coords, c2.coords)
        + 1
    )
    coords = tuple(
        a + b - c + alpha * f
        for a, b, c, f in zip(c1.coords, c2.coords, s0.coords, fibre)
    )
    return DivisorClass(coords)
