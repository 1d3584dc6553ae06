# services/lgroup.py

import logging
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from models import CentralChain, ClosureSeries, LSubgroupWitness
from services.lattice import FiniteLattice
from services.lset import LPoint, LSubset, check_carrier, contains, level
from utils.errors import (
    BudgetExceeded,
    NotAChain,
    NotAnLSubgroup,
    NotContained,
    NotDistributive,
    TipEqualsTail,
)

logger = logging.getLogger(__name__)


# --- membership ---

def is_lsubgroup(mu: LSubset, mode: str = "pointwise") -> LSubgroupWitness:
    if mode == "pointwise":
        return _pointwise(mu)
    if mode == "levels":
        return _by_levels(mu, strong=False)
    if mode == "strong-levels":
        if not mu.lattice.is_chain:
            raise NotAChain(f"strong-levels mode needs a chain, {mu.lattice.name} is not one")
        return _by_levels(mu, strong=True)
    raise ValueError(f"unknown mode {mode!r}")


def _pointwise(mu: LSubset) -> LSubgroupWitness:
    group, lattice = mu.group, mu.lattice
    v = mu.array
    lhs = v[group.mul_table]
    rhs = lattice.meet_table[v[:, None], v[None, :]]
    bad = np.argwhere(~lattice.leq_table[rhs, lhs])
    if len(bad):
        x, y = (int(i) for i in bad[0])
        return LSubgroupWitness(mu, False, "pointwise", ("pair", x, y))
    flipped = np.flatnonzero(v[group.inv_table] != v)
    if len(flipped):
        x = int(flipped[0])
        return LSubgroupWitness(mu, False, "pointwise", ("inverse", x, x))
    return LSubgroupWitness(mu, True, "pointwise")


def _by_levels(mu: LSubset, strong: bool) -> LSubgroupWitness:
    mode = "strong-levels" if strong else "levels"
    checked: Dict[FrozenSet[int], bool] = {}
    for a in range(len(mu.lattice)):
        members = level(mu, a, strong=strong)
        if not members:
            continue
        if members not in checked:
            checked[members] = mu.group.is_subgroup(members)
        if not checked[members]:
            return LSubgroupWitness(mu, False, mode, ("level", a, -1))
    return LSubgroupWitness(mu, True, mode)


def is_lsubgroup_of(eta: LSubset, mu: LSubset) -> bool:
    check_carrier(eta, mu)
    return contains(mu, eta) and _pointwise(eta).verdict


def is_proper(eta: LSubset, mu: LSubset) -> bool:
    return is_lsubgroup_of(eta, mu) and not eta.is_constant and eta.values != mu.values


def _require_member(eta: LSubset, mu: LSubset, what: str) -> None:
    if not is_lsubgroup_of(eta, mu):
        raise NotAnLSubgroup(f"{what}: the first argument is not an L-subgroup of the ambient L-subgroup")


# --- normality ---

def is_normal(kind: str, eta: LSubset, mu: Optional[LSubset] = None) -> bool:
    group, lattice = eta.group, eta.lattice
    v = eta.array
    if kind == "in-group":
        return bool((v[group.mul_table] == v[group.mul_table.T]).all())
    if kind == "in-lgroup":
        if mu is None:
            raise ValueError("in-lgroup normality needs the ambient L-subgroup")
        _require_member(eta, mu, "is_normal")
        # rows y, columns x: eta(y x y^-1) >= eta(x) ∧ mu(y)
        lhs = v[group.conj_table]
        rhs = lattice.meet_table[mu.array[:, None], v[None, :]]
        return bool(lattice.leq_table[rhs, lhs].all())
    raise ValueError(f"unknown normality kind {kind!r}")


def is_normal_by_levels(kind: str, eta: LSubset, mu: Optional[LSubset] = None) -> bool:
    """Level form: every non-empty level of eta is normal in G (in-group) or in the matching level of mu."""
    group = eta.group
    for a in range(len(eta.lattice)):
        members = level(eta, a)
        if not members:
            continue
        if kind == "in-group":
            if not (group.is_subgroup(members) and group.is_normal_subgroup(members)):
                return False
        else:
            outer = np.fromiter(level(mu, a), dtype=np.int64)
            inner = np.fromiter(members, dtype=np.int64)
            if not np.isin(group.conj_table[np.ix_(outer, inner)], inner).all():
                return False
    return True


def trivial_lsubgroup(eta: LSubset, floor: Optional[int] = None) -> LSubset:
    """Tip at the identity, tail (or `floor`) elsewhere."""
    rest = eta.tail if floor is None else floor
    values = [rest] * eta.group.order
    values[eta.group.identity] = eta.tip
    return eta.with_values(values)


# --- generation ---

def generated(eta: LSubset, mu: Optional[LSubset] = None) -> LSubset:
    """<eta>(x) = join of every a <= tip(eta) with x in the subgroup generated by the level eta_a."""
    if mu is not None:
        check_carrier(eta, mu)
        if not contains(mu, eta):
            raise NotContained("cannot generate inside an L-subgroup that does not contain the input")
    group, lattice = eta.group, eta.lattice
    v = eta.array
    values = np.full(group.order, lattice.bottom, dtype=np.int64)
    for a in lattice.down_set(eta.tip):
        members = np.flatnonzero(lattice.leq_table[a, v])
        closure = group.generated_subgroup(members.tolist())
        idx = np.fromiter(closure, dtype=np.int64)
        values[idx] = lattice.join_table[values[idx], a]
    return eta.with_values(values)


def coset(side: str, p: LPoint, eta: LSubset) -> LSubset:
    """a_x ∘ eta (left) or eta ∘ a_x (right), in closed form."""
    group, lattice = eta.group, eta.lattice
    v = eta.array
    if side == "left":
        shifted = v[group.ldiv_table[p.at]]
    elif side == "right":
        shifted = v[group.mul_table[:, group.inv(p.at)]]
    else:
        raise ValueError(f"unknown side {side!r}")
    return eta.with_values(lattice.meet_table[p.value, shifted])


def _commuting_values(eta: LSubset, x: int, candidates: np.ndarray) -> np.ndarray:
    """Mask over `candidates`: which a make a_x ∘ eta = eta ∘ a_x."""
    group, lattice = eta.group, eta.lattice
    v = eta.array
    left = lattice.meet_table[candidates[:, None], v[group.ldiv_table[x]][None, :]]
    right = lattice.meet_table[candidates[:, None], v[group.mul_table[:, group.inv(x)]][None, :]]
    return (left == right).all(axis=1)


def normalizer(eta: LSubset, mu: LSubset) -> LSubset:
    _require_member(eta, mu, "normalizer")
    lattice = eta.lattice
    values = []
    for x in eta.group.elements:
        candidates = np.asarray(lattice.down_set(mu.values[x]), dtype=np.int64)
        commuting = candidates[_commuting_values(eta, x, candidates)]
        best = lattice.sup_of_set(commuting.tolist())
        if not _commuting_values(eta, x, np.asarray([best]))[0]:
            raise NotDistributive(
                f"normalizer: the join of commuting points at {eta.group.names[x]} does not commute "
                f"(lattice {lattice.name} is not distributive)"
            )
        values.append(best)
    return eta.with_values(values)


def is_in_normalizer(p: LPoint, eta: LSubset) -> bool:
    return bool(_commuting_values(eta, p.at, np.asarray([p.value]))[0])


# --- commutators and central chains ---

def _scatter_join(lattice: FiniteLattice, targets: np.ndarray, terms: np.ndarray, size: int) -> Tuple[List[int], List[bool]]:
    acc = [lattice.bottom] * size
    hit = [False] * size
    join = lattice.join_rows
    for x, t in zip(targets.ravel().tolist(), terms.ravel().tolist()):
        acc[x] = join[acc[x]][t]
        hit[x] = True
    return acc, hit


def commutator(
    eta: LSubset,
    theta: LSubset,
    mu: Optional[LSubset] = None,
    want: str = "lsubset",
    floor: Optional[int] = None,
) -> LSubset:
    """
    (eta, theta)(x) = join of eta(y) ∧ theta(z) over x = [y, z]; elsewhere
    tail(eta) ∧ tail(theta), or `floor` when given. The lsubgroup form generates it.
    """
    if mu is not None:
        check_carrier(eta, theta, mu)
    else:
        check_carrier(eta, theta)
    group, lattice = eta.group, eta.lattice
    otherwise = lattice.meet(eta.tail, theta.tail) if floor is None else floor
    terms = lattice.meet_table[eta.array[:, None], theta.array[None, :]]
    acc, hit = _scatter_join(lattice, group.comm_table, terms, group.order)
    raw = eta.with_values([a if h else otherwise for a, h in zip(acc, hit)])
    if want == "lsubset":
        return raw
    if want == "lsubgroup":
        return generated(raw)
    raise ValueError(f"unknown commutator form {want!r}")


def _step_limit(mu: LSubset, max_steps: Optional[int]) -> int:
    return max_steps if max_steps is not None else mu.group.order * len(mu.lattice)


def central_chain(mu: LSubset, floor: Optional[int] = None, max_steps: Optional[int] = None) -> CentralChain:
    if not _pointwise(mu).verdict:
        raise NotAnLSubgroup("central chain needs an L-subgroup")
    trivial = trivial_lsubgroup(mu, floor)
    limit = _step_limit(mu, max_steps)
    stages = [mu]
    while True:
        current = stages[-1]
        if current.values == trivial.values:
            return CentralChain(stages, True, len(stages) - 1, True)
        nxt = commutator(current, mu, mu, "lsubgroup", floor)
        if nxt.values == current.values:
            return CentralChain(stages, True, None, False)
        if len(stages) > limit:
            raise BudgetExceeded(f"central chain did not settle within {limit} steps", CentralChain(stages, False, None, False))
        stages.append(nxt)


def nilpotency_class(mu: LSubset, floor: Optional[int] = None) -> Optional[int]:
    rest = mu.tail if floor is None else floor
    if mu.tip == rest:
        raise TipEqualsTail("nilpotency needs the tip to differ from the tail")
    return central_chain(mu, floor).class_index


def normalizer_chain(eta: LSubset, mu: LSubset, max_steps: Optional[int] = None) -> List[LSubset]:
    _require_member(eta, mu, "normalizer_chain")
    limit = _step_limit(mu, max_steps)
    stages = [eta]
    while len(stages) <= limit:
        nxt = normalizer(stages[-1], mu)
        if nxt.values == stages[-1].values:
            return stages
        stages.append(nxt)
    raise BudgetExceeded(f"normalizer chain did not settle within {limit} steps", stages)


# --- normal closures ---

def conjugate_closure(eta: LSubset, mu: LSubset, want: str = "closure") -> LSubset:
    _require_member(eta, mu, "conjugate_closure")
    group, lattice = eta.group, eta.lattice
    # rows z, columns y: z y z^-1 carries eta(y) ∧ mu(z)
    terms = lattice.meet_table[mu.array[:, None], eta.array[None, :]]
    acc, _ = _scatter_join(lattice, group.conj_table, terms, group.order)
    conjugate = eta.with_values(acc)
    if want == "conjugate":
        return conjugate
    if want == "closure":
        return generated(conjugate, mu)
    raise ValueError(f"unknown form {want!r}")


def closure_series(eta: LSubset, mu: LSubset, max_steps: Optional[int] = None) -> ClosureSeries:
    _require_member(eta, mu, "closure_series")
    limit = _step_limit(mu, max_steps)
    stages = [mu]
    while True:
        current = stages[-1]
        if current.values == eta.values:
            return ClosureSeries(stages, True, True)
        nxt = conjugate_closure(eta, current, "closure")
        if nxt.values == current.values:
            return ClosureSeries(stages, True, False)
        if len(stages) > limit:
            raise BudgetExceeded(f"closure series did not settle within {limit} steps", ClosureSeries(stages, False, False))
        stages.append(nxt)
