# services/lset.py

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Dict, FrozenSet, Iterable, Mapping, Sequence, Tuple

import numpy as np

from services.group import FiniteGroup, GroupHomomorphism
from services.lattice import FiniteLattice
from utils.errors import CarrierMismatch, LatticeMismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LSubset:
    """A map from the carrier of `group` into `lattice`, stored densely by element index."""

    group: FiniteGroup
    lattice: FiniteLattice
    values: Tuple[int, ...]

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)

    def __call__(self, x: int) -> int:
        return self.values[x]

    def with_values(self, values) -> "LSubset":
        return LSubset(self.group, self.lattice, tuple(int(v) for v in values))

    @property
    def tip(self) -> int:
        return self.lattice.sup_of_set(self.values)

    @property
    def tail(self) -> int:
        return self.lattice.inf_of_set(self.values)

    @property
    def image(self) -> FrozenSet[int]:
        return frozenset(self.values)

    @property
    def is_constant(self) -> bool:
        return len(self.image) == 1

    def sort_key(self) -> Tuple[int, ...]:
        return self.values

    def describe(self) -> Dict[str, str]:
        names = self.lattice.elements
        return {self.group.names[x]: names[v] for x, v in enumerate(self.values)}

    def __repr__(self) -> str:
        body = ", ".join(f"{k}:{v}" for k, v in self.describe().items())
        return f"LSubset<{self.group.name}/{self.lattice.name}>({body})"


@dataclass(frozen=True, order=True)
class LPoint:
    """The L-point a_x: value `value` at element `at`, bottom elsewhere."""

    at: int
    value: int

    def as_lsubset(self, group: FiniteGroup, lattice: FiniteLattice) -> LSubset:
        return make_lpoint(group, lattice, self.value, self.at)

    def inside(self, mu: LSubset) -> bool:
        return mu.lattice.leq(self.value, mu.values[self.at])

    def label(self, group: FiniteGroup, lattice: FiniteLattice) -> str:
        return f"{lattice.elements[self.value]}@{group.names[self.at]}"


def make_lsubset(
    group: FiniteGroup,
    lattice: FiniteLattice,
    assignments: Mapping,
    default,
) -> LSubset:
    base = lattice.element(default)
    values = [base] * group.order
    for key, value in assignments.items():
        values[group.element(key)] = lattice.element(value)
    return LSubset(group, lattice, tuple(values))


def make_lpoint(group: FiniteGroup, lattice: FiniteLattice, a, x) -> LSubset:
    values = [lattice.bottom] * group.order
    values[group.element(x)] = lattice.element(a)
    return LSubset(group, lattice, tuple(values))


def constant(group: FiniteGroup, lattice: FiniteLattice, c) -> LSubset:
    return LSubset(group, lattice, (lattice.element(c),) * group.order)


def characteristic(group: FiniteGroup, lattice: FiniteLattice, members: Iterable[int]) -> LSubset:
    """1_A: top on A, bottom elsewhere."""
    members = set(members)
    return LSubset(
        group,
        lattice,
        tuple(lattice.top if x in members else lattice.bottom for x in group.elements),
    )


def chi(group: FiniteGroup, lattice: FiniteLattice, points: Iterable[LPoint]) -> LSubset:
    """Union of L-points: at x the join of every a with a_x in the set, bottom otherwise."""
    values = [lattice.bottom] * group.order
    for p in points:
        values[p.at] = lattice.join(values[p.at], p.value)
    return LSubset(group, lattice, tuple(values))


def tip_tail(mu: LSubset) -> Tuple[int, int]:
    return mu.tip, mu.tail


def check_carrier(*subsets: LSubset) -> None:
    first = subsets[0]
    for other in subsets[1:]:
        if other.lattice is not first.lattice:
            raise LatticeMismatch(f"L-subsets take values in different lattices ({first.lattice.name}, {other.lattice.name})")
        if other.group is not first.group:
            raise CarrierMismatch(f"L-subsets live on different groups ({first.group.name}, {other.group.name})")


def union(mu: LSubset, eta: LSubset) -> LSubset:
    check_carrier(mu, eta)
    return mu.with_values(mu.lattice.join_table[mu.array, eta.array])


def intersection(mu: LSubset, eta: LSubset) -> LSubset:
    check_carrier(mu, eta)
    return mu.with_values(mu.lattice.meet_table[mu.array, eta.array])


def union_all(subsets: Sequence[LSubset]) -> LSubset:
    return reduce(union, subsets)


def intersection_all(subsets: Sequence[LSubset]) -> LSubset:
    return reduce(intersection, subsets)


def contains(mu: LSubset, eta: LSubset) -> bool:
    """eta ⊆ mu, i.e. eta(x) <= mu(x) everywhere."""
    check_carrier(mu, eta)
    return bool(mu.lattice.leq_table[eta.array, mu.array].all())


def is_subset(eta: LSubset, mu: LSubset) -> bool:
    return contains(mu, eta)


def equal(mu: LSubset, eta: LSubset) -> bool:
    check_carrier(mu, eta)
    return mu.values == eta.values


def pointwise(kind: str, mu: LSubset, eta: LSubset):
    if kind == "union":
        return union(mu, eta)
    if kind == "intersection":
        return intersection(mu, eta)
    if kind == "contains":
        return contains(mu, eta)
    if kind == "equal":
        return equal(mu, eta)
    raise ValueError(f"unknown pointwise operation {kind!r}")


def level(mu: LSubset, a: int, strong: bool = False) -> FrozenSet[int]:
    """{x : mu(x) >= a}, or {x : mu(x) > a} when strong; incomparable values are excluded."""
    lattice = mu.lattice
    above = lattice.leq_table[a, mu.array]
    if strong:
        above &= mu.array != a
    return frozenset(int(x) for x in np.flatnonzero(above))


def set_product(mu: LSubset, eta: LSubset) -> LSubset:
    """(mu ∘ eta)(x) = join over x = y z of mu(y) ∧ eta(z)."""
    check_carrier(mu, eta)
    lattice, group = mu.lattice, mu.group
    # row y, column x: mu(y) ∧ eta(y^-1 x)
    terms = lattice.meet_table[mu.array[:, None], eta.array[group.ldiv_table]]
    return mu.with_values(lattice.join_reduce(terms, axis=0))


def transport(f: GroupHomomorphism, direction: str, mu: LSubset) -> LSubset:
    lattice = mu.lattice
    if direction == "image":
        if mu.group is not f.source:
            raise CarrierMismatch(f"image needs an L-subset of {f.source.name}, got one of {mu.group.name}")
        fiber = f.array[None, :] == np.arange(f.target.order)[:, None]
        terms = np.where(fiber, mu.array[None, :], lattice.bottom)
        return LSubset(f.target, lattice, tuple(int(v) for v in lattice.join_reduce(terms, axis=1)))
    if direction == "preimage":
        if mu.group is not f.target:
            raise CarrierMismatch(f"preimage needs an L-subset of {f.target.name}, got one of {mu.group.name}")
        return LSubset(f.source, lattice, tuple(int(v) for v in mu.array[f.array]))
    raise ValueError(f"unknown direction {direction!r}")


def has_sup_property(mu: LSubset) -> bool:
    """
    Every subset of the image attains its join at one of its members.
    For a finite image this happens exactly when the image is a chain.
    """
    image = np.fromiter(mu.image, dtype=np.int64)
    leq = mu.lattice.leq_table[np.ix_(image, image)]
    return bool((leq | leq.T).all())


def points_of(mu: LSubset, skip_bottom: bool = True) -> Tuple[LPoint, ...]:
    bottom = mu.lattice.bottom
    return tuple(LPoint(x, v) for x, v in enumerate(mu.values) if not (skip_bottom and v == bottom))


def lsubset_from_levels(group: FiniteGroup, lattice: FiniteLattice, levels: Mapping[int, Iterable[int]]) -> LSubset:
    """x ↦ join of every a whose level contains x."""
    values = [lattice.bottom] * group.order
    for a, members in levels.items():
        for x in members:
            values[x] = lattice.join(values[x], a)
    return LSubset(group, lattice, tuple(values))


def reconstruct(mu: LSubset) -> LSubset:
    """Rebuild mu from its levels."""
    levels = {a: level(mu, a) for a in range(len(mu.lattice))}
    return lsubset_from_levels(mu.group, mu.lattice, levels)
