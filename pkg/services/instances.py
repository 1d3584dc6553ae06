# services/instances.py
"""
Seeded random instances for the verification suites: groups and lattices drawn from the
fixture pool (plus derived subgroups and sublattices) and random L-subsets on them.
Everything is a function of the random source passed in, so a case replays exactly.
"""

import logging
import random
from typing import List, Optional

from services.group import (
    FiniteGroup,
    GroupHomomorphism,
    direct_product,
    extend_homomorphism,
    inner_automorphism,
    subgroup_as_group,
    trivial_homomorphism,
)
from services.lattice import FiniteLattice, interval_sublattice
from services.lgroup import generated
from services.lset import LPoint, LSubset, chi, constant, union
from utils.fixtures import FixtureLoader

logger = logging.getLogger(__name__)

GROUP_POOL = ("z1", "z2", "z4", "z6", "s3", "d8", "q8", "a4", "d12")
CHAIN_POOL = ("chain2", "chain3", "chain4")
DISTRIBUTIVE_POOL = CHAIN_POOL + ("l3", "square")
# non-distributive negative control
CONTROL_POOL = ("m3",)


class InstancePool:
    def __init__(self, loader: Optional[FixtureLoader] = None):
        loader = loader or FixtureLoader()
        self.groups = {name: loader.group(name) for name in GROUP_POOL}
        self.lattices = {name: loader.lattice(name) for name in DISTRIBUTIVE_POOL + CONTROL_POOL}
        self.v4 = direct_product(self.groups["z2"], self.groups["z2"], "v4")

    # --- carriers ---

    def group(self, rng: random.Random, max_order: int = 12) -> FiniteGroup:
        names = [n for n in GROUP_POOL if self.groups[n].order <= max_order]
        roll = rng.random()
        if roll < 0.1:
            return self.v4
        if roll < 0.25:
            parent = self.groups[rng.choice(names)]
            subs = [h for h in parent.all_subgroups() if 1 < len(h) < parent.order]
            if subs:
                return subgroup_as_group(parent, rng.choice(subs))
        return self.groups[rng.choice(names)]

    def lattice(self, rng: random.Random, kind: str = "distributive", max_size: int = 6) -> FiniteLattice:
        """kind: chain, distributive, or any (which also draws the non-distributive control)."""
        if kind == "chain":
            names = CHAIN_POOL
        elif kind == "distributive":
            names = DISTRIBUTIVE_POOL
        elif kind == "any":
            names = DISTRIBUTIVE_POOL + CONTROL_POOL
        else:
            raise ValueError(f"unknown lattice kind {kind!r}")
        names = [n for n in names if len(self.lattices[n]) <= max_size]
        lattice = self.lattices[rng.choice(names)]
        if kind != "chain" and not lattice.is_chain and rng.random() < 0.2:
            # a random interval with at least two elements
            pairs = [(lo, hi) for lo, hi in lattice.covers()]
            pairs += [(lattice.bottom, x) for x in range(len(lattice)) if x != lattice.bottom]
            lo, hi = rng.choice(sorted(pairs))
            return interval_sublattice(lattice, lo, hi)
        return lattice

    # --- L-subsets ---

    def lsubset(self, rng: random.Random, group: FiniteGroup, lattice: FiniteLattice, below: Optional[LSubset] = None) -> LSubset:
        if below is None:
            values = [rng.randrange(len(lattice)) for _ in group.elements]
        else:
            values = [rng.choice(lattice.down_set(below.values[x])) for x in group.elements]
        return LSubset(group, lattice, tuple(values))

    def point(self, rng: random.Random, mu: LSubset) -> LPoint:
        """A random L-point inside mu, away from the bottom when mu allows it."""
        lattice = mu.lattice
        spots = [x for x in mu.group.elements if mu.values[x] != lattice.bottom] or list(mu.group.elements)
        x = rng.choice(spots)
        values = [a for a in lattice.down_set(mu.values[x]) if a != lattice.bottom] or [lattice.bottom]
        return LPoint(x, rng.choice(values))

    def lsubgroup(self, rng: random.Random, group: FiniteGroup, lattice: FiniteLattice, below: Optional[LSubset] = None) -> LSubset:
        """
        Random box walk: generate the union of a few random L-points (and sometimes a
        constant floor) inside `below`. Needs a distributive lattice.
        """
        top = below if below is not None else constant(group, lattice, lattice.top)
        points = [self.point(rng, top) for _ in range(rng.randint(0, min(3, group.order)))]
        seed = chi(group, lattice, points)
        if rng.random() < 0.3:
            seed = union(seed, constant(group, lattice, rng.choice(lattice.down_set(top.tail))))
        return generated(seed, top)

    def layered(self, rng: random.Random, group: FiniteGroup, lattice: FiniteLattice, normal: bool = False) -> LSubset:
        """
        Nested subgroups G = H0 > H1 > ... carrying an ascending chain of values.
        An L-subgroup in any lattice; every layer is normal when `normal` is set.
        """
        subgroups = group.all_subgroups()
        if normal:
            subgroups = [h for h in subgroups if group.is_normal_subgroup(h)]
        layers = [frozenset(group.elements)]
        for _ in range(rng.randint(0, 3)):
            smaller = [h for h in subgroups if h < layers[-1]]
            if not smaller:
                break
            layers.append(rng.choice(smaller))
        chain = [rng.randrange(len(lattice))]
        for _ in layers[1:]:
            chain.append(rng.choice([w for w in range(len(lattice)) if lattice.leq(chain[-1], w)]))
        values = [chain[0]] * group.order
        for depth, layer in enumerate(layers):
            for x in layer:
                values[x] = chain[depth]
        return LSubset(group, lattice, tuple(values))

    def perturbed(self, rng: random.Random, mu: LSubset) -> LSubset:
        values = list(mu.values)
        values[rng.randrange(len(values))] = rng.randrange(len(mu.lattice))
        return mu.with_values(values)

    def chain_valued(self, rng: random.Random, group: FiniteGroup, lattice: FiniteLattice) -> LSubset:
        """Values from one random maximal chain of the lattice, so the image is a chain."""
        upper = {x: [] for x in range(len(lattice))}
        for lo, hi in lattice.covers():
            upper[lo].append(hi)
        chain = [lattice.bottom]
        while upper[chain[-1]]:
            chain.append(rng.choice(upper[chain[-1]]))
        return LSubset(group, lattice, tuple(rng.choice(chain) for _ in group.elements))

    # --- maps ---

    def homomorphism(self, rng: random.Random, source: FiniteGroup, tries: int = 12) -> GroupHomomorphism:
        """Inner automorphisms, or random generator images into a pool group."""
        if rng.random() < 0.3:
            return inner_automorphism(source, rng.randrange(source.order))
        target = source if rng.random() < 0.3 else self.group(rng)
        gens: List[int] = source.generating_set()
        for _ in range(tries):
            images = {g: rng.randrange(target.order) for g in gens}
            f = extend_homomorphism(source, target, images)
            if f is not None:
                return f
        logger.debug("no random homomorphism %s -> %s found, using the trivial one", source.name, target.name)
        return trivial_homomorphism(source, target)
