# services/maxfrat.py

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from math import prod
from typing import List, Optional, Sequence, Tuple

import numpy as np

from models import (
    ConditionReport,
    EnumerationBudget,
    EnumerationResult,
    FrattiniResult,
    GeneratingSet,
    MaximalityCertificate,
)
from services.lgroup import generated, is_lsubgroup, is_lsubgroup_of
from services.lset import (
    LPoint,
    LSubset,
    check_carrier,
    chi,
    constant,
    contains,
    intersection_all,
    set_product,
    union,
)
from utils.errors import BudgetExceeded, NoWitness, NotAnLSubgroup, PointNotInside

logger = logging.getLogger(__name__)

# flush the per-worker node count into the shared counter this often
_FLUSH_EVERY = 256


class _SharedCounter:
    """Budget counter shared by the box workers; once exceeded it stays exceeded."""

    def __init__(self, limit: int):
        self.limit = limit
        self.count = 0
        self.exceeded = False
        self._lock = threading.Lock()

    def add(self, n: int) -> bool:
        with self._lock:
            self.count += n
            if self.count > self.limit:
                self.exceeded = True
            return not self.exceeded


class _BoxSearch:
    def __init__(self, lo: LSubset, hi: LSubset, check: bool, budget: EnumerationBudget):
        group, lattice = lo.group, lo.lattice
        self.n = group.order
        self.check = check
        self.budget = budget
        self.intervals = [lattice.interval(lo.values[x], hi.values[x]) for x in group.elements]
        # identity first, then the narrowest intervals
        rest = sorted((x for x in group.elements if x != group.identity), key=lambda x: (len(self.intervals[x]), x))
        self.order = [group.identity] + rest
        self.mul = group.mul_rows
        self.inv = group.inv_list
        self.meet = lattice.meet_rows
        self.leq = lattice.leq_rows
        self.counter = _SharedCounter(budget.max_candidates)
        self.results_lock = threading.Lock()
        self.result_count = 0
        self.truncated = False

    def _consistent(self, assigned: List[int], placed: List[int], z: int, v: int) -> bool:
        mul, inv, meet, leq = self.mul, self.inv, self.meet, self.leq
        w = assigned[inv[z]]
        if w >= 0 and w != v:
            return False
        for x in placed:
            tx = assigned[x]
            m = meet[v][tx]
            tp = assigned[mul[z][x]]
            if tp >= 0 and not leq[m][tp]:
                return False
            tp = assigned[mul[x][z]]
            if tp >= 0 and not leq[m][tp]:
                return False
            # x * y = z
            ty = assigned[mul[inv[x]][z]]
            if ty >= 0 and not leq[meet[tx][ty]][v]:
                return False
        return True

    def run(self, first_value: int) -> List[Tuple[int, ...]]:
        assigned = [-1] * self.n
        placed: List[int] = []
        found: List[Tuple[int, ...]] = []
        pending = [0]

        def tick() -> bool:
            pending[0] += 1
            if pending[0] >= _FLUSH_EVERY:
                n, pending[0] = pending[0], 0
                return self.counter.add(n)
            return not self.counter.exceeded

        def place(depth: int, z: int, v: int) -> bool:
            if not tick():
                return False
            assigned[z] = v
            placed.append(z)
            ok = True
            if not self.check or self._consistent(assigned, placed, z, v):
                ok = descend(depth + 1)
            placed.pop()
            assigned[z] = -1
            return ok

        def descend(depth: int) -> bool:
            if depth == self.n:
                with self.results_lock:
                    if self.result_count >= self.budget.max_results:
                        self.truncated = True
                        return False
                    self.result_count += 1
                found.append(tuple(assigned))
                return True
            z = self.order[depth]
            for v in self.intervals[z]:
                if not place(depth, z, v):
                    return False
            return True

        place(0, self.order[0], first_value)
        self.counter.add(pending[0])
        return found


def enumerate_box(
    lo: LSubset,
    hi: LSubset,
    filter: str = "lsubgroup",
    budget: Optional[EnumerationBudget] = None,
) -> EnumerationResult:
    """
    Every theta with lo(x) <= theta(x) <= hi(x), optionally only the L-subgroups,
    found by a pruned depth-first search. Partial results come back with complete=False.
    """
    check_carrier(lo, hi)
    if filter not in ("lsubgroup", "lsubgroup_of_hi", "none"):
        raise ValueError(f"unknown box filter {filter!r}")
    budget = budget or EnumerationBudget()
    search = _BoxSearch(lo, hi, filter != "none", budget)
    box_size = prod(len(i) for i in search.intervals)
    first_values = search.intervals[search.order[0]]

    if budget.threads > 1 and len(first_values) > 1:
        with ThreadPoolExecutor(max_workers=budget.threads) as pool:
            chunks = list(pool.map(search.run, first_values))
    else:
        chunks = [search.run(v) for v in first_values]

    rows = sorted(row for chunk in chunks for row in chunk)
    complete = not (search.counter.exceeded or search.truncated)
    if not complete:
        logger.warning("box enumeration stopped early after %d candidates", search.counter.count)
    members = [lo.with_values(row) for row in rows]
    return EnumerationResult(members, search.counter.count, box_size, complete)


def _require_complete(result: EnumerationResult, what: str) -> EnumerationResult:
    if not result.complete:
        raise BudgetExceeded(f"{what}: budget exhausted after {result.candidates} candidates", result, field="--budget")
    return result


def _require_member(eta: LSubset, mu: LSubset, what: str) -> None:
    if not is_lsubgroup_of(eta, mu):
        raise NotAnLSubgroup(f"{what}: the first argument is not an L-subgroup of the ambient L-subgroup")


def all_lsubgroups(mu: LSubset, budget: Optional[EnumerationBudget] = None) -> List[LSubset]:
    bottom = constant(mu.group, mu.lattice, mu.lattice.bottom)
    return _require_complete(enumerate_box(bottom, mu, "lsubgroup", budget), "all_lsubgroups").members


def containment_rows(members: Sequence[LSubset]) -> np.ndarray:
    """below[i, j] is True when members[i] ⊆ members[j]."""
    if not members:
        return np.zeros((0, 0), dtype=bool)
    leq = members[0].lattice.leq_table
    values = np.array([m.values for m in members], dtype=np.int64)
    return np.array([leq[row[None, :], values].all(axis=1) for row in values], dtype=bool)


def coatoms(members: Sequence[LSubset], mu: LSubset) -> List[LSubset]:
    """Members other than mu that no other such member strictly contains."""
    rest = [m for m in members if m.values != mu.values]
    below = containment_rows(rest)
    tops = []
    for i, m in enumerate(rest):
        strictly_above = below[i].copy()
        strictly_above[i] = False
        if not strictly_above.any():
            tops.append(m)
    return tops


def all_maximal(
    mu: LSubset,
    budget: Optional[EnumerationBudget] = None,
    members: Optional[List[LSubset]] = None,
) -> List[LSubset]:
    # maximal = proper (non-constant) coatoms of L(mu)
    members = members if members is not None else all_lsubgroups(mu, budget)
    return [m for m in coatoms(members, mu) if not m.is_constant]


def coatoms_proper(mu: LSubset, members: Sequence[LSubset]) -> bool:
    """True when every coatom of L(mu) is non-constant, so maximal and coatom coincide."""
    return all(not m.is_constant for m in coatoms(members, mu))


def is_maximal(eta: LSubset, mu: LSubset, budget: Optional[EnumerationBudget] = None) -> MaximalityCertificate:
    _require_member(eta, mu, "is_maximal")
    if eta.is_constant:
        return MaximalityCertificate(eta, mu, False, reason="not proper: constant")
    if eta.values == mu.values:
        return MaximalityCertificate(eta, mu, False, reason="not proper: equals the ambient L-subgroup")
    box = _require_complete(enumerate_box(eta, mu, "lsubgroup", budget), "is_maximal")
    between = [m for m in box.members if m.values not in (eta.values, mu.values)]
    cert = MaximalityCertificate(
        eta,
        mu,
        not between,
        strict_intermediate=between[0] if between else None,
        reason="" if not between else "strict intermediate L-subgroup",
        box_size=box.box_size,
        survivors=len(box.members),
    )
    logger.debug("is_maximal: box %d, survivors %d", cert.box_size, cert.survivors)
    return cert


def _generates_with(theta: LSubset, p: LPoint, mu: LSubset) -> bool:
    point = chi(mu.group, mu.lattice, [p])
    return generated(union(theta, point)).values == mu.values


def _nongenerator_union(mu: LSubset, tops: Sequence[LSubset]) -> LSubset:
    lattice = mu.lattice
    values = []
    for x in mu.group.elements:
        best = lattice.bottom
        # non-generators at x form a down-set of mu(x)
        for a in lattice.down_set(mu.values[x]):
            if not any(_generates_with(t, LPoint(x, a), mu) for t in tops):
                best = lattice.join(best, a)
        values.append(best)
    return mu.with_values(values)


def is_nongenerator(p: LPoint, mu: LSubset, budget: Optional[EnumerationBudget] = None) -> bool:
    if not p.inside(mu):
        raise PointNotInside("the L-point is not inside the ambient L-subgroup")
    # <theta, a_x> = mu is monotone in theta, so the coatoms of L(mu) are enough
    tops = coatoms(all_lsubgroups(mu, budget), mu)
    return not any(_generates_with(t, p, mu) for t in tops)


def frattini(mu: LSubset, budget: Optional[EnumerationBudget] = None, via: str = "enumeration") -> FrattiniResult:
    if via not in ("enumeration", "nongenerators", "both"):
        raise ValueError(f"unknown frattini path {via!r}")
    members = all_lsubgroups(mu, budget)
    tops = coatoms(members, mu)
    maximal = [m for m in tops if not m.is_constant]
    result = FrattiniResult(phi=None, nongenerators=None, via=via, maximal=maximal)
    if via in ("enumeration", "both"):
        result.phi = intersection_all(maximal) if maximal else mu
    if via in ("nongenerators", "both"):
        result.nongenerators = _nongenerator_union(mu, tops)
    if via == "both":
        result.contained = contains(result.phi, result.nongenerators)
        result.agree = result.phi.values == result.nongenerators.values
        if not result.contained:
            logger.error("non-generator union is not inside the Frattini L-subgroup of %r", mu)
    return result


def generating_points(
    mu: LSubset,
    k_max: Optional[int] = None,
    budget: Optional[EnumerationBudget] = None,
) -> GeneratingSet:
    if not is_lsubgroup(mu).verdict:
        raise NotAnLSubgroup("generating_points needs an L-subgroup")
    group, lattice = mu.group, mu.lattice
    budget = budget or EnumerationBudget()

    # 1) greedy ascent, identity last since the tip lands there anyway
    order = [x for x in group.elements if x != group.identity] + [group.identity]
    points: List[LPoint] = []
    current = generated(chi(group, lattice, points))
    while current.values != mu.values:
        missing = [x for x in order if not lattice.leq(mu.values[x], current.values[x])]
        if not missing:
            break
        points.append(LPoint(missing[0], mu.values[missing[0]]))
        current = generated(chi(group, lattice, points))
    result = GeneratingSet(sorted(points), mu, current.values == mu.values)
    if k_max is None:
        return result

    # 2) smallest witness; full values mu(x) dominate any smaller point at x
    candidates = [LPoint(x, v) for x, v in enumerate(mu.values) if v != lattice.bottom]
    tried = 0
    for k in range(0, min(k_max, len(candidates)) + 1):
        for combo in combinations(candidates, k):
            tried += 1
            if tried > budget.max_candidates:
                raise BudgetExceeded(f"generating_points: budget exhausted after {tried - 1} point sets", result, field="--budget")
            if generated(chi(group, lattice, combo)).values == mu.values:
                result.minimum = list(combo)
                result.minimum_complete = True
                return result
    return result


def maximal_condition_report(mu: LSubset, budget: Optional[EnumerationBudget] = None) -> ConditionReport:
    members = all_lsubgroups(mu, budget)
    heights = mu.lattice.heights
    # strict containment increases the summed heights, so this is a topological order
    members = sorted(members, key=lambda m: (int(heights[m.array].sum()), m.values))
    below = containment_rows(members)
    longest = [1] * len(members)
    for i in range(len(members)):
        for j in range(i):
            if below[j, i] and members[j].values != members[i].values:
                longest[i] = max(longest[i], longest[j] + 1)
    return ConditionReport(count=len(members), longest_chain=max(longest, default=0))


def zorn_witness(theta: LSubset, p: LPoint, mu: LSubset, budget: Optional[EnumerationBudget] = None) -> LSubset:
    """An L-subgroup above theta avoiding p, maximal among those that avoid p."""
    _require_member(theta, mu, "zorn_witness")
    if not p.inside(mu):
        raise PointNotInside("the L-point is not inside the ambient L-subgroup")
    if p.inside(theta):
        raise NoWitness("the L-point already lies in the starting L-subgroup")
    box = _require_complete(enumerate_box(theta, mu, "lsubgroup", budget), "zorn_witness")
    avoiding = [m for m in box.members if not p.inside(m)]
    rows = containment_rows(avoiding)
    # maximal among the avoiding members: nothing else avoiding lies strictly above
    witnesses = [
        m for i, m in enumerate(avoiding)
        if not any(rows[i, j] and avoiding[j].values != m.values for j in range(len(avoiding)))
    ]
    return min(witnesses, key=LSubset.sort_key)


def maximal_containing(eta: LSubset, mu: LSubset, budget: Optional[EnumerationBudget] = None) -> LSubset:
    _require_member(eta, mu, "maximal_containing")
    if eta.values == mu.values:
        raise NoWitness("mu itself is not contained in a maximal L-subgroup of mu")
    if is_maximal(eta, mu, budget).verdict:
        return eta

    # 1) walk past the generating points one at a time
    current = eta
    for p in generating_points(mu, budget=budget).points:
        if p.inside(current):
            continue
        current = zorn_witness(current, p, mu, budget)
        if is_maximal(current, mu, budget).verdict:
            return current

    # 2) exact fallback: the least proper coatom above eta
    box = _require_complete(enumerate_box(eta, mu, "lsubgroup", budget), "maximal_containing")
    found = [m for m in coatoms(box.members, mu) if not m.is_constant]
    if not found:
        raise NoWitness("no maximal L-subgroup of mu contains the given L-subgroup")
    logger.info("maximal_containing fell back to the exact box search")
    return min(found, key=LSubset.sort_key)


def frattini_product_check(eta: LSubset, mu: LSubset, budget: Optional[EnumerationBudget] = None) -> bool:
    phi = frattini(mu, budget).phi
    return set_product(eta, phi).values == mu.values
