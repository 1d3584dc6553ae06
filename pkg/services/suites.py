# services/suites.py
"""
Verification suites: each one draws seeded random instances and checks one result of the
theory on them. A case is replayed exactly by (suite, seed, case index).
"""

import json
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from models import EnumerationBudget
from schemas.report import LSubsetOut, SuiteEntry, SuiteListing, VerificationReport, Violation
from services.group import FiniteGroup, GroupHomomorphism
from services.instances import InstancePool
from services.lattice import FiniteLattice
from services.lgroup import (
    closure_series,
    conjugate_closure,
    coset,
    generated,
    is_lsubgroup,
    is_lsubgroup_of,
    is_normal,
    is_normal_by_levels,
    nilpotency_class,
    normalizer,
    normalizer_chain,
    trivial_lsubgroup,
)
from services.lset import (
    LPoint,
    LSubset,
    characteristic,
    chi,
    constant,
    contains,
    has_sup_property,
    intersection,
    intersection_all,
    level,
    reconstruct,
    set_product,
    transport,
    union,
    union_all,
)
from services.maxfrat import (
    all_lsubgroups,
    all_maximal,
    coatoms_proper,
    containment_rows,
    enumerate_box,
    frattini,
    frattini_product_check,
    generating_points,
    is_maximal,
    is_nongenerator,
    maximal_condition_report,
    maximal_containing,
    zorn_witness,
)
from utils import config
from utils.errors import BudgetExceeded, NoWitness, UnknownSuite
from utils.fixtures import FixtureLoader

logger = logging.getLogger(__name__)

# enumeration-heavy suites stay on small carriers
SMALL_GROUP = 8
SMALL_LATTICE = 4


class SkipCase(Exception):
    """The drawn instance does not meet the hypotheses; the case is not counted as checked."""


def serialize(value: Any) -> Any:
    if isinstance(value, LSubset):
        return LSubsetOut.of(value).model_dump()
    if isinstance(value, (FiniteGroup, FiniteLattice)):
        return value.name
    if isinstance(value, GroupHomomorphism):
        return {
            "source": value.source.name,
            "target": value.target.name,
            "images": [value.target.names[y] for y in value.images],
        }
    if isinstance(value, (list, tuple)):
        return [serialize(v) for v in value]
    if isinstance(value, np.integer):
        return int(value)
    return value


@dataclass
class CaseContext:
    suite_id: str
    seed: int
    case: int
    pool: InstancePool
    budget: EnumerationBudget
    rng: random.Random = field(init=False)
    violations: List[Violation] = field(default_factory=list)

    def __post_init__(self):
        self.rng = random.Random(f"{self.suite_id}:{self.seed}:{self.case}")

    def expect(self, prop: str, holds: bool, **inputs: Any) -> bool:
        if not holds:
            payload = {k: serialize(v) for k, v in inputs.items()}
            payload["replay"] = f"verify {self.suite_id} --seed {self.seed} --case {self.case}"
            self.violations.append(Violation(case=self.case, property=prop, inputs=payload))
            logger.warning("%s case %d: %s fails", self.suite_id, self.case, prop)
        return holds

    def skip(self, reason: str = ""):
        raise SkipCase(reason)

    # shorthands for the common draws

    def small(self, kind: str = "distributive") -> Tuple[FiniteGroup, FiniteLattice]:
        return self.pool.group(self.rng, SMALL_GROUP), self.pool.lattice(self.rng, kind, SMALL_LATTICE)

    def carrier(self, kind: str = "distributive") -> Tuple[FiniteGroup, FiniteLattice]:
        return self.pool.group(self.rng), self.pool.lattice(self.rng, kind)

    def lsubgroup(self, group: FiniteGroup, lattice: FiniteLattice, below: Optional[LSubset] = None) -> LSubset:
        return self.pool.lsubgroup(self.rng, group, lattice, below)

    def members(self, mu: LSubset) -> List[LSubset]:
        return all_lsubgroups(mu, self.budget)


@dataclass(frozen=True)
class Suite:
    suite_id: str
    result: str
    description: str
    check: Callable[[CaseContext], None]


SUITES: Dict[str, Suite] = {}


def suite(suite_id: str, result: str, description: str):
    def decorator(func: Callable[[CaseContext], None]) -> Callable[[CaseContext], None]:
        SUITES[suite_id] = Suite(suite_id, result, description, func)
        return func

    return decorator


def same(mu: LSubset, eta: LSubset) -> bool:
    return mu.values == eta.values


def with_tip_at_identity(eta: LSubset, tip: int) -> LSubset:
    values = list(eta.values)
    values[eta.group.identity] = eta.lattice.join(values[eta.group.identity], tip)
    return eta.with_values(values)


def regular_ambient(mu: LSubset, members: List[LSubset]) -> bool:
    """Every coatom of L(mu) is non-constant and reaches the tip of mu."""
    if not coatoms_proper(mu, members):
        return False
    return all(m.tip == mu.tip for m in all_maximal(mu, members=members))


def ascending_walk(rng: random.Random, members: List[LSubset], start: int) -> List[LSubset]:
    """Random strictly ascending chain in `members` from members[start] to a maximal element."""
    below = containment_rows(members)
    chain = [start]
    while True:
        i = chain[-1]
        above = [j for j in range(len(members)) if below[i, j] and not below[j, i]]
        if not above:
            return [members[k] for k in chain]
        chain.append(rng.choice(above))


# --- level characterizations ---


def _mixed(ctx: CaseContext, group: FiniteGroup, lattice: FiniteLattice) -> LSubset:
    roll = ctx.rng.random()
    if roll < 0.3:
        return ctx.pool.lsubset(ctx.rng, group, lattice)
    mu = ctx.pool.layered(ctx.rng, group, lattice, normal=ctx.rng.random() < 0.3)
    return ctx.pool.perturbed(ctx.rng, mu) if roll < 0.65 else mu


@suite("lev_gp", 'Theorem "lev_gp"', "an L-subset is an L-subgroup iff every non-empty level is a subgroup")
def check_lev_gp(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("any")
    mu = _mixed(ctx, group, lattice)
    pointwise = is_lsubgroup(mu, "pointwise").verdict
    levels = is_lsubgroup(mu, "levels").verdict
    ctx.expect("pointwise == levels", pointwise == levels, mu=mu, pointwise=pointwise, levels=levels)


@suite("lev_sgp", 'Theorem "lev_sgp"', "on a chain, L-subgroups are exactly the L-subsets with subgroup strong levels")
def check_lev_sgp(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("chain")
    mu = _mixed(ctx, group, lattice)
    pointwise = is_lsubgroup(mu, "pointwise").verdict
    strong = is_lsubgroup(mu, "strong-levels").verdict
    ctx.expect("pointwise == strong-levels", pointwise == strong, mu=mu, pointwise=pointwise, strong=strong)


def _lsubgroup_any(ctx: CaseContext, group: FiniteGroup, lattice: FiniteLattice) -> LSubset:
    if lattice.distributive and ctx.rng.random() < 0.5:
        return ctx.lsubgroup(group, lattice)
    return ctx.pool.layered(ctx.rng, group, lattice, normal=ctx.rng.random() < 0.5)


@suite("lev_norgp", 'Theorem "lev_norgp"', "mu(xy) = mu(yx) iff every non-empty level is a normal subgroup")
def check_lev_norgp(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("any")
    mu = _lsubgroup_any(ctx, group, lattice)
    pointwise = is_normal("in-group", mu)
    levels = is_normal_by_levels("in-group", mu)
    ctx.expect("pointwise == levels", pointwise == levels, mu=mu, pointwise=pointwise, levels=levels)


@suite("lev_norsgp", 'Theorem "lev_norsgp"', "eta is normal in mu iff every level of eta is normal in the level of mu")
def check_lev_norsgp(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("any")
    mu = _lsubgroup_any(ctx, group, lattice)
    eta = intersection(mu, _lsubgroup_any(ctx, group, lattice))
    if lattice.distributive and ctx.rng.random() < 0.3:
        eta = conjugate_closure(eta, mu)
    pointwise = is_normal("in-lgroup", eta, mu)
    levels = is_normal_by_levels("in-lgroup", eta, mu)
    ctx.expect("pointwise == levels", pointwise == levels, eta=eta, mu=mu, pointwise=pointwise, levels=levels)


@suite("level_reconstruct", "Level decomposition", "levels are antitone, rebuild the L-subset, and the sup-property means a chain image")
def check_level_reconstruct(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("distributive")
    mu = ctx.pool.lsubset(ctx.rng, group, lattice) if ctx.rng.random() < 0.5 else ctx.pool.chain_valued(ctx.rng, group, lattice)
    ctx.expect("reconstruct(mu) == mu", same(reconstruct(mu), mu), mu=mu)
    a, b = ctx.rng.randrange(len(lattice)), ctx.rng.randrange(len(lattice))
    if lattice.leq(a, b):
        ctx.expect("a <= b implies mu_b ⊆ mu_a", level(mu, b) <= level(mu, a), mu=mu, a=lattice.elements[a], b=lattice.elements[b])
    ctx.expect("strong level ⊆ level", level(mu, a, strong=True) <= level(mu, a), mu=mu, a=lattice.elements[a])
    image = sorted(mu.image)
    if len(image) <= 4:
        attained = all(
            lattice.sup_of_set(s) in s
            for k in range(1, len(image) + 1)
            for s in combinations(image, k)
        )
        ctx.expect("sup-property == exhaustive subset check", has_sup_property(mu) == attained, mu=mu)


# --- generation and transport ---


@suite("gen_closure", 'Theorem "gen"', "generation is a closure operator and equals the intersection of all L-subgroups above")
def check_gen_closure(ctx: CaseContext) -> None:
    group, lattice = ctx.small()
    mu = ctx.lsubgroup(group, lattice)
    eta = ctx.pool.lsubset(ctx.rng, group, lattice, below=mu)
    theta = union(eta, ctx.pool.lsubset(ctx.rng, group, lattice, below=mu))
    gen_eta = generated(eta, mu)
    gen_theta = generated(theta, mu)
    ctx.expect("eta ⊆ <eta>", contains(gen_eta, eta), eta=eta, mu=mu)
    ctx.expect("<eta> is an L-subgroup of mu", is_lsubgroup_of(gen_eta, mu), eta=eta, mu=mu)
    ctx.expect("eta ⊆ theta implies <eta> ⊆ <theta>", contains(gen_theta, gen_eta), eta=eta, theta=theta, mu=mu)
    ctx.expect("<<eta>> == <eta>", same(generated(gen_eta, mu), gen_eta), eta=eta, mu=mu)
    if len(lattice) <= 3:
        above = [m for m in ctx.members(mu) if contains(m, eta)]
        ctx.expect("<eta> == meet of the L-subgroups above eta", same(intersection_all(above), gen_eta), eta=eta, mu=mu)


@suite("gen_sup", 'Theorem "gen_sup"', "for eta with the sup-property, <eta_b> = <eta>_b for every b up to the tip")
def check_gen_sup(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("distributive")
    eta = ctx.pool.chain_valued(ctx.rng, group, lattice)
    if not has_sup_property(eta):
        ctx.skip("no sup-property")
    gen = generated(eta)
    for b in lattice.down_set(eta.tip):
        lhs = group.generated_subgroup(level(eta, b))
        if not ctx.expect("<eta_b> == <eta>_b", lhs == level(gen, b), eta=eta, b=lattice.elements[b]):
            return


@suite("gen_hom", 'Theorem "gen_hom"', "generation commutes with images, and with preimages under surjections")
def check_gen_hom(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("distributive")
    f = ctx.pool.homomorphism(ctx.rng, group)
    eta = ctx.pool.lsubset(ctx.rng, group, lattice)
    ctx.expect(
        "<f(eta)> == f(<eta>)",
        same(generated(transport(f, "image", eta)), transport(f, "image", generated(eta))),
        f=f,
        eta=eta,
    )
    if f.is_surjective:
        theta = ctx.pool.lsubset(ctx.rng, f.target, lattice)
        theta = with_tip_at_identity(theta, theta.tip)
        ctx.expect(
            "<f^-1(theta)> == f^-1(<theta>)",
            same(generated(transport(f, "preimage", theta)), transport(f, "preimage", generated(theta))),
            f=f,
            theta=theta,
        )


@suite("hom_gp", 'Theorem "hom_gp"', "images and preimages of L-subgroups are L-subgroups")
def check_hom_gp(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("distributive")
    f = ctx.pool.homomorphism(ctx.rng, group)
    mu = ctx.lsubgroup(group, lattice)
    nu = ctx.lsubgroup(f.target, lattice)
    ctx.expect("f(mu) is an L-subgroup", is_lsubgroup(transport(f, "image", mu)).verdict, f=f, mu=mu)
    ctx.expect("f^-1(nu) is an L-subgroup", is_lsubgroup(transport(f, "preimage", nu)).verdict, f=f, nu=nu)


@suite("hom_laws", 'Proposition "hom"', "transport laws for unions, intersections and the image/preimage adjunction")
def check_hom_laws(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("distributive")
    f = ctx.pool.homomorphism(ctx.rng, group)
    mu, eta = ctx.pool.lsubset(ctx.rng, group, lattice), ctx.pool.lsubset(ctx.rng, group, lattice)
    nu = ctx.pool.lsubset(ctx.rng, f.target, lattice)

    def image(s):
        return transport(f, "image", s)

    def pre(s):
        return transport(f, "preimage", s)

    ctx.expect("f(mu ∪ eta) == f(mu) ∪ f(eta)", same(image(union(mu, eta)), union(image(mu), image(eta))), f=f, mu=mu, eta=eta)
    ctx.expect("f(mu ∩ eta) ⊆ f(mu) ∩ f(eta)", contains(intersection(image(mu), image(eta)), image(intersection(mu, eta))), f=f, mu=mu, eta=eta)
    ctx.expect("mu ⊆ f^-1(f(mu))", contains(pre(image(mu)), mu), f=f, mu=mu)
    ctx.expect("f(f^-1(nu)) ⊆ nu", contains(nu, image(pre(nu))), f=f, nu=nu)
    ctx.expect("f(mu) ⊆ nu iff mu ⊆ f^-1(nu)", contains(nu, image(mu)) == contains(pre(nu), mu), f=f, mu=mu, nu=nu)
    if f.is_injective:
        ctx.expect("injective: f^-1(f(mu)) == mu", same(pre(image(mu)), mu), f=f, mu=mu)
        # nu cut down to the image of f
        on_image = intersection(nu, image(constant(group, lattice, lattice.top)))
        ctx.expect(
            "injective: nu ⊆ f(mu) iff f^-1(nu) ⊆ mu",
            contains(image(mu), on_image) == contains(mu, pre(on_image)),
            f=f,
            mu=mu,
            nu=on_image,
        )
    if f.is_surjective:
        ctx.expect("surjective: f(f^-1(nu)) == nu", same(image(pre(nu)), nu), f=f, nu=nu)


@suite("set_product_assoc", "Associativity of the set product", "(mu ∘ eta) ∘ theta == mu ∘ (eta ∘ theta)")
def check_set_product_assoc(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("distributive")
    mu, eta, theta = (ctx.pool.lsubset(ctx.rng, group, lattice) for _ in range(3))
    ctx.expect(
        "(mu ∘ eta) ∘ theta == mu ∘ (eta ∘ theta)",
        same(set_product(set_product(mu, eta), theta), set_product(mu, set_product(eta, theta))),
        mu=mu,
        eta=eta,
        theta=theta,
    )


# --- normalizers and normal closures ---


def _member_pair(ctx: CaseContext, group: FiniteGroup, lattice: FiniteLattice, normal_bias: float = 0.3) -> Tuple[LSubset, LSubset]:
    mu = ctx.lsubgroup(group, lattice)
    eta = ctx.lsubgroup(group, lattice, below=mu)
    if ctx.rng.random() < normal_bias:
        eta = conjugate_closure(eta, mu)
    return eta, mu


@suite("lpt_norm", 'Lemma "lpt_norm"', "theta ⊆ N(eta) when conjugating points of eta by points of theta stays in eta")
def check_lpt_norm(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("distributive")
    eta, mu = _member_pair(ctx, group, lattice, normal_bias=0.5)
    theta = ctx.lsubgroup(group, lattice, below=mu)
    # a_x ∘ b_y ∘ a_x^-1 = (a ∧ b)_{x y x^-1} lies in eta for every a_x in theta, b_y in eta
    conj = eta.array[group.conj_table]
    bound = lattice.meet_table[theta.array[:, None], eta.array[None, :]]
    if not lattice.leq_table[bound, conj].all():
        ctx.skip("hypothesis fails")
    ctx.expect("theta ⊆ N(eta)", contains(normalizer(eta, mu), theta), eta=eta, theta=theta, mu=mu)


@suite("normalizer", "Normalizer characterization", "N(eta) holds exactly the commuting points, eta is normal in N(eta), N(eta) = mu iff eta is normal")
def check_normalizer(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("distributive")
    eta, mu = _member_pair(ctx, group, lattice)
    n = normalizer(eta, mu)
    ctx.expect("N(eta) is an L-subgroup of mu", is_lsubgroup_of(n, mu), eta=eta, mu=mu)
    ctx.expect("eta ⊆ N(eta)", contains(n, eta), eta=eta, mu=mu)
    ctx.expect("eta normal in N(eta)", is_normal("in-lgroup", eta, n), eta=eta, mu=mu)
    normal = is_normal("in-lgroup", eta, mu)
    ctx.expect("N(eta) == mu iff eta normal in mu", same(n, mu) == normal, eta=eta, mu=mu)
    for x in group.elements:
        for a in lattice.down_set(mu.values[x]):
            p = LPoint(x, a)
            commutes = same(coset("left", p, eta), coset("right", p, eta))
            if not ctx.expect("a_x commutes with eta iff a_x ∈ N(eta)", commutes == p.inside(n), eta=eta, mu=mu, point=p.label(group, lattice)):
                break
    p = ctx.pool.point(ctx.rng, mu)
    lp = p.as_lsubset(group, lattice)
    ctx.expect("left coset == a_x ∘ eta", same(coset("left", p, eta), set_product(lp, eta)), eta=eta, point=p.label(group, lattice))
    ctx.expect("right coset == eta ∘ a_x", same(coset("right", p, eta), set_product(eta, lp)), eta=eta, point=p.label(group, lattice))


@suite("int_nor", 'Proposition "int_nor"', "eta normal in mu and theta in L(mu) give eta ∩ theta normal in theta")
def check_int_nor(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("distributive")
    mu = ctx.lsubgroup(group, lattice)
    eta = conjugate_closure(ctx.lsubgroup(group, lattice, below=mu), mu)
    theta = ctx.lsubgroup(group, lattice, below=mu)
    ctx.expect("eta ∩ theta normal in theta", is_normal("in-lgroup", intersection(eta, theta), theta), eta=eta, theta=theta, mu=mu)


@suite("nor_nc", 'Theorem "nor_nc"', "eta is normal in mu iff its normal closure is eta; the closure is the least normal L-subgroup above eta")
def check_nor_nc(ctx: CaseContext) -> None:
    group, lattice = ctx.small()
    eta, mu = _member_pair(ctx, group, lattice)
    closure = conjugate_closure(eta, mu)
    normal = is_normal("in-lgroup", eta, mu)
    ctx.expect("eta normal iff closure == eta", normal == same(closure, eta), eta=eta, mu=mu)
    ctx.expect("closure contains eta", contains(closure, eta), eta=eta, mu=mu)
    ctx.expect("closure normal in mu", is_normal("in-lgroup", closure, mu), eta=eta, mu=mu)
    if len(lattice) <= 3:
        normal_above = [m for m in ctx.members(mu) if contains(m, eta) and is_normal("in-lgroup", m, mu)]
        ctx.expect("closure == meet of the normal L-subgroups above eta", same(intersection_all(normal_above), closure), eta=eta, mu=mu)


@suite("chain_nc", 'Lemma "chain_nc"', "a normal chain from eta up to mu exists iff the normal closure series reaches eta")
def check_chain_nc(ctx: CaseContext) -> None:
    group, lattice = ctx.pool.group(ctx.rng, SMALL_GROUP), ctx.pool.lattice(ctx.rng, "distributive", 3)
    eta, mu = _member_pair(ctx, group, lattice, normal_bias=0.0)
    members = ctx.members(mu)
    index = {m.values: i for i, m in enumerate(members)}
    below = containment_rows(members)
    # walk up along "normal in the next one"
    seen, frontier = {index[eta.values]}, [index[eta.values]]
    while frontier:
        i = frontier.pop()
        for j in np.flatnonzero(below[i]).tolist():
            if j not in seen and j != i and is_normal("in-lgroup", members[i], members[j]):
                seen.add(j)
                frontier.append(j)
    chain_exists = index[mu.values] in seen
    series = closure_series(eta, mu)
    ctx.expect("normal chain exists iff the series reaches eta", chain_exists == series.reached_eta, eta=eta, mu=mu)


@suite("subnormal", 'Lemma "subnormal"', "in a nilpotent mu the normalizer chain of an eta with the same tip and tail reaches mu")
def check_subnormal(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("distributive")
    mu = ctx.lsubgroup(group, lattice)
    klass = None if mu.tip == mu.tail else nilpotency_class(mu)
    if klass is None:
        ctx.skip("mu is not nilpotent")
    eta = union(ctx.lsubgroup(group, lattice, below=mu), trivial_lsubgroup(mu))
    if eta.tip != mu.tip or eta.tail != mu.tail:
        ctx.skip("tips or tails differ")
    stages = normalizer_chain(eta, mu)
    ctx.expect("normalizer chain ends at mu", same(stages[-1], mu), eta=eta, mu=mu)
    ctx.expect(
        "normalizer chain reaches mu within the nilpotency class",
        len(stages) - 1 <= klass,
        eta=eta,
        mu=mu,
        steps=len(stages) - 1,
        nilpotency_class=klass,
    )
    ctx.expect(
        "normalizer chain strictly ascends",
        all(contains(b, a) and not same(a, b) for a, b in zip(stages, stages[1:])),
        eta=eta,
        mu=mu,
    )


# --- maximal condition and finite generation ---


@suite("nil_max", 'Theorem "nil_max"', "maximal L-subgroups of a nilpotent mu with mu's tip and tail are normal")
def check_nil_max(ctx: CaseContext) -> None:
    group, lattice = ctx.small()
    mu = ctx.lsubgroup(group, lattice)
    if mu.tip == mu.tail or nilpotency_class(mu) is None:
        ctx.skip("mu is not nilpotent")
    for m in all_maximal(mu, ctx.budget):
        if m.tip == mu.tip and m.tail == mu.tail:
            ctx.expect("maximal member is normal in mu", is_normal("in-lgroup", m, mu), maximal=m, mu=mu)


@suite("mcon_chain", 'Theorem "mcon_chain"', "ascending chains of L-subgroups are finite and every family has a maximal member")
def check_mcon_chain(ctx: CaseContext) -> None:
    group, lattice = ctx.small()
    mu = ctx.lsubgroup(group, lattice)
    members = ctx.members(mu)
    report = maximal_condition_report(mu, ctx.budget)
    ctx.expect("report counts L(mu)", report.count == len(members), mu=mu)
    chain = ascending_walk(ctx.rng, members, ctx.rng.randrange(len(members)))
    ctx.expect("ascending chain ends at mu", same(chain[-1], mu), mu=mu, chain=chain)
    ctx.expect("ascending chain within longest_chain", len(chain) <= report.longest_chain, mu=mu, chain=chain)
    family = ctx.rng.sample(members, ctx.rng.randint(1, len(members)))
    rows = containment_rows(family)
    has_top = any(not any(rows[i, j] and not rows[j, i] for j in range(len(family))) for i in range(len(family)))
    ctx.expect("family has a maximal member", has_top, mu=mu, family=family)


@suite("mcon_subgp", 'Theorem "mcon_subgp"', "an L-subgroup of mu has no longer chains than mu")
def check_mcon_subgp(ctx: CaseContext) -> None:
    group, lattice = ctx.small()
    mu = ctx.lsubgroup(group, lattice)
    eta = ctx.lsubgroup(group, lattice, below=mu)
    outer = maximal_condition_report(mu, ctx.budget)
    inner = maximal_condition_report(eta, ctx.budget)
    ctx.expect("longest chain of eta <= that of mu", inner.longest_chain <= outer.longest_chain, eta=eta, mu=mu)
    ctx.expect("|L(eta)| <= |L(mu)|", inner.count <= outer.count, eta=eta, mu=mu)


@suite("max_fin", 'Theorem "max_fin"', "on a chain, every L-subgroup of mu is generated by finitely many L-points")
def check_max_fin(ctx: CaseContext) -> None:
    group, lattice = ctx.small("chain")
    mu = ctx.lsubgroup(group, lattice)
    members = ctx.members(mu)
    for theta in ctx.rng.sample(members, min(6, len(members))):
        gens = generating_points(theta, budget=ctx.budget)
        ctx.expect("greedy generation completes", gens.complete, theta=theta)
        ctx.expect("points lie in theta", all(p.inside(theta) for p in gens.points), theta=theta)
        ctx.expect(
            "points generate theta",
            same(generated(chi(group, lattice, gens.points)), theta),
            theta=theta,
            points=gens.labels(),
        )


@suite("char_fgen", "Finite generation of characteristic functions", "1_H is generated by the points 1_x of a generating set of H, and back")
def check_char_fgen(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("distributive")
    for h in group.all_subgroups():
        target = characteristic(group, lattice, h)
        gens = group.generating_set(h) or [group.identity]
        points = [LPoint(x, lattice.top) for x in gens]
        ctx.expect("<1_x : x in S> == 1_H", same(generated(chi(group, lattice, points)), target), group=group, subgroup=sorted(h))
        found = generating_points(target, budget=ctx.budget).points
        ctx.expect(
            "carriers of the extracted points generate H",
            group.generated_subgroup([p.at for p in found]) == h,
            group=group,
            subgroup=sorted(h),
        )


@suite("fgen_chain", 'Lemma "fgen_chain"', "an ascending chain whose union is a finitely generated mu reaches mu")
def check_fgen_chain(ctx: CaseContext) -> None:
    group, lattice = ctx.small("chain")
    mu = ctx.lsubgroup(group, lattice)
    members = ctx.members(mu)
    chain = ascending_walk(ctx.rng, members, ctx.rng.randrange(len(members)))
    ctx.expect("union of the chain is its last member", same(union_all(chain), chain[-1]), chain=chain)
    points = generating_points(mu, budget=ctx.budget).points
    reach = max((min(i for i, c in enumerate(chain) if p.inside(c)) for p in points), default=0)
    ctx.expect("the member holding every generator is mu", same(chain[reach], mu), mu=mu, chain=chain)


@suite("union_subgp", 'Lemma "union_subgp"', "on a chain, the union of an ascending sequence of L-subgroups is an L-subgroup")
def check_union_subgp(ctx: CaseContext) -> None:
    group, lattice = ctx.small("chain")
    mu = ctx.lsubgroup(group, lattice)
    members = ctx.members(mu)
    chain = ascending_walk(ctx.rng, members, ctx.rng.randrange(len(members)))
    prefix = chain[: ctx.rng.randint(1, len(chain))]
    joined = union_all(prefix)
    ctx.expect("union is an L-subgroup", is_lsubgroup(joined).verdict, chain=prefix)
    ctx.expect("union is an L-subgroup of mu", is_lsubgroup_of(joined, mu), chain=prefix, mu=mu)


# --- Frattini L-subgroups ---


@suite("frat_lambda", 'Theorem "frat"', "the union of non-generators is an L-subgroup inside Phi(mu), equal to it when all coatoms are proper")
def check_frat_lambda(ctx: CaseContext) -> None:
    group, lattice = ctx.small()
    mu = ctx.lsubgroup(group, lattice)
    result = frattini(mu, ctx.budget, "both")
    lam = result.nongenerators
    ctx.expect("lambda is an L-subgroup", is_lsubgroup(lam).verdict, mu=mu)
    ctx.expect("lambda ⊆ Phi(mu)", result.contained, mu=mu, phi=result.phi, nongenerators=lam)
    if coatoms_proper(mu, ctx.members(mu)):
        ctx.expect("lambda == Phi(mu)", result.agree, mu=mu, phi=result.phi, nongenerators=lam)
    if ctx.rng.random() < 0.25:
        p = ctx.pool.point(ctx.rng, mu)
        ctx.expect(
            "is_nongenerator agrees with lambda",
            is_nongenerator(p, mu, ctx.budget) == p.inside(lam),
            mu=mu,
            point=p.label(group, lattice),
        )


@suite("fra_nor", 'Theorem "fra_nor"', "Phi(mu) is normal in mu when mu is normal in G")
def check_fra_nor(ctx: CaseContext) -> None:
    group, lattice = ctx.small()
    mu = conjugate_closure(ctx.lsubgroup(group, lattice), constant(group, lattice, lattice.top))
    if not is_normal("in-group", mu):
        ctx.skip("mu is not normal in G")
    phi = frattini(mu, ctx.budget).phi
    ctx.expect("Phi(mu) normal in mu", is_normal("in-lgroup", phi, mu), mu=mu, phi=phi)


@suite("max_exists", "Existence of maximal L-subgroups", "mu with tip != tail and mu != its trivial L-subgroup has a maximal L-subgroup")
def check_max_exists(ctx: CaseContext) -> None:
    group, lattice = ctx.small()
    mu = ctx.lsubgroup(group, lattice)
    if mu.tip == mu.tail or same(mu, trivial_lsubgroup(mu)):
        ctx.skip("degenerate mu")
    ctx.expect("mu has a maximal L-subgroup", bool(all_maximal(mu, ctx.budget)), mu=mu)


@suite("fgn_frat", 'Theorem "fgn_frat"', "eta ∘ Phi(mu) = mu forces eta = mu")
def check_fgn_frat(ctx: CaseContext) -> None:
    group, lattice = ctx.small()
    mu = ctx.lsubgroup(group, lattice)
    members = ctx.members(mu)
    if not coatoms_proper(mu, members):
        ctx.skip("a coatom of L(mu) is constant")
    phi = frattini(mu, ctx.budget).phi
    for eta in members:
        full = same(set_product(eta, phi), mu)
        if not ctx.expect("eta ∘ Phi(mu) == mu implies eta == mu", not full or same(eta, mu), eta=eta, mu=mu, phi=phi):
            return
    eta = ctx.rng.choice(members)
    ctx.expect(
        "frattini_product_check true implies eta == mu",
        not frattini_product_check(eta, mu, ctx.budget) or same(eta, mu),
        eta=eta,
        mu=mu,
    )


@suite("zrn", 'Lemma "zrn"', "above theta there is an L-subgroup maximal among those avoiding a point")
def check_zrn(ctx: CaseContext) -> None:
    group, lattice = ctx.small()
    mu = ctx.lsubgroup(group, lattice)
    theta = ctx.lsubgroup(group, lattice, below=mu)
    outside = [LPoint(x, a) for x in group.elements for a in lattice.down_set(mu.values[x]) if not LPoint(x, a).inside(theta)]
    if not outside:
        ctx.skip("theta == mu")
    p = ctx.rng.choice(outside)
    label = p.label(group, lattice)
    eta = zorn_witness(theta, p, mu, ctx.budget)
    ctx.expect("witness contains theta", contains(eta, theta), theta=theta, mu=mu, point=label)
    ctx.expect("witness avoids the point", not p.inside(eta), theta=theta, mu=mu, point=label)
    ctx.expect("witness is an L-subgroup of mu", is_lsubgroup_of(eta, mu), theta=theta, mu=mu, point=label)
    larger = [m for m in enumerate_box(eta, mu, "lsubgroup", ctx.budget).members if not same(m, eta)]
    ctx.expect("every strictly larger L-subgroup holds the point", all(p.inside(m) for m in larger), theta=theta, mu=mu, point=label)
    try:
        zorn_witness(theta, LPoint(group.identity, lattice.bottom), mu, ctx.budget)
        raised = False
    except NoWitness:
        raised = True
    ctx.expect("a point already in theta has no witness", raised, theta=theta, mu=mu)


@suite("max_prp", 'Theorem "max_prp"', "every proper L-subgroup of mu lies in a maximal L-subgroup")
def check_max_prp(ctx: CaseContext) -> None:
    group, lattice = ctx.small()
    mu = ctx.lsubgroup(group, lattice)
    members = ctx.members(mu)
    if not coatoms_proper(mu, members):
        ctx.skip("a coatom of L(mu) is constant")
    proper = [m for m in members if not m.is_constant and not same(m, mu)]
    if not proper:
        ctx.skip("no proper L-subgroup")
    eta = ctx.rng.choice(proper)
    found = maximal_containing(eta, mu, ctx.budget)
    ctx.expect("certificate contains eta", contains(found, eta), eta=eta, mu=mu)
    ctx.expect("certificate is maximal", is_maximal(found, mu, ctx.budget).verdict, eta=eta, mu=mu, found=found)


def _normal_full_tip(ctx: CaseContext, mu: LSubset) -> LSubset:
    group, lattice = mu.group, mu.lattice
    seed = with_tip_at_identity(ctx.lsubgroup(group, lattice, below=mu), mu.tip)
    return conjugate_closure(generated(seed, mu), mu)


@suite("prp_pro", 'Lemma "prp_pro"', "normal eta with mu's tip lies in Phi(mu) iff no L-subgroup other than mu completes it to mu")
def check_prp_pro(ctx: CaseContext) -> None:
    group, lattice = ctx.small()
    mu = ctx.lsubgroup(group, lattice)
    members = ctx.members(mu)
    if not regular_ambient(mu, members):
        ctx.skip("a coatom of L(mu) is constant or misses the tip")
    eta = _normal_full_tip(ctx, mu)
    maximal = all_maximal(mu, members=members)
    phi = intersection_all(maximal) if maximal else mu
    inside = contains(phi, eta)
    completes = any(same(set_product(eta, theta), mu) for theta in members if not same(theta, mu))
    ctx.expect("eta ⊆ Phi(mu) iff no theta != mu has eta ∘ theta == mu", inside != completes, eta=eta, mu=mu, phi=phi)


@suite("int_pro", 'Lemma "int_pro"', "eta ∩ (theta ∘ sigma) == (eta ∩ theta) ∘ sigma for sigma ⊆ eta")
def check_int_pro(ctx: CaseContext) -> None:
    group, lattice = ctx.carrier("distributive")
    eta = ctx.lsubgroup(group, lattice)
    sigma = ctx.lsubgroup(group, lattice, below=eta)
    theta = ctx.pool.lsubset(ctx.rng, group, lattice)
    ctx.expect(
        "eta ∩ (theta ∘ sigma) == (eta ∩ theta) ∘ sigma",
        same(intersection(eta, set_product(theta, sigma)), set_product(intersection(eta, theta), sigma)),
        eta=eta,
        theta=theta,
        sigma=sigma,
    )


@suite("frat_sub", "Frattini L-subgroups of L-subgroups", "a normal sigma with mu's tip inside Phi(eta) for some eta lies in Phi(mu)")
def check_frat_sub(ctx: CaseContext) -> None:
    group, lattice = ctx.small()
    mu = ctx.lsubgroup(group, lattice)
    members = ctx.members(mu)
    if not regular_ambient(mu, members):
        ctx.skip("a coatom of L(mu) is constant or misses the tip")
    eta = generated(with_tip_at_identity(ctx.lsubgroup(group, lattice, below=mu), mu.tip), mu)
    if not coatoms_proper(eta, ctx.members(eta)):
        ctx.skip("a coatom of L(eta) is constant")
    phi_eta = frattini(eta, ctx.budget).phi
    candidates = [
        s for s in ctx.members(phi_eta) if s.tip == mu.tip and is_normal("in-lgroup", s, mu)
    ]
    if not candidates:
        ctx.skip("no normal sigma inside Phi(eta)")
    sigma = ctx.rng.choice(candidates)
    maximal = all_maximal(mu, members=members)
    phi = intersection_all(maximal) if maximal else mu
    ctx.expect("sigma ⊆ Phi(mu)", contains(phi, sigma), sigma=sigma, eta=eta, mu=mu)


# --- runner ---


@dataclass
class _CaseOutcome:
    checked: bool
    partial: bool
    violations: List[Violation]


def list_suites() -> SuiteListing:
    return SuiteListing(suites=[SuiteEntry(suite_id=s.suite_id, result=s.result, description=s.description) for s in SUITES.values()])


def run_suite(
    suite_id: str,
    seed: Optional[int] = None,
    cases: Optional[int] = None,
    budget: Optional[int] = None,
    threads: Optional[int] = None,
    case: Optional[int] = None,
    loader: Optional[FixtureLoader] = None,
) -> VerificationReport:
    if suite_id not in SUITES:
        raise UnknownSuite(suite_id)
    entry = SUITES[suite_id]
    seed = config.SEED if seed is None else seed
    cases = config.CASES if cases is None else cases
    budget = config.BUDGET if budget is None else budget
    threads = config.THREADS if threads is None else threads
    pool = InstancePool(loader)
    indices = [case] if case is not None else list(range(cases))
    case_budget = EnumerationBudget(max_candidates=budget, max_results=budget, threads=1)

    def run_one(i: int) -> _CaseOutcome:
        ctx = CaseContext(suite_id, seed, i, pool, case_budget)
        try:
            entry.check(ctx)
        except SkipCase:
            return _CaseOutcome(False, False, ctx.violations)
        except BudgetExceeded as err:
            logger.warning("%s case %d: %s", suite_id, i, err.detail)
            return _CaseOutcome(False, True, ctx.violations)
        return _CaseOutcome(True, False, ctx.violations)

    started = time.perf_counter()
    if threads > 1 and len(indices) > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            outcomes = list(executor.map(run_one, indices))
    else:
        outcomes = [run_one(i) for i in indices]
    elapsed = int((time.perf_counter() - started) * 1000)

    violations = sorted(
        (v for o in outcomes for v in o.violations),
        key=lambda v: (v.case, v.property, json.dumps(v.inputs, sort_keys=True)),
    )
    report = VerificationReport(
        suite_id=suite_id,
        result=entry.result,
        seed=seed,
        cases_run=len(indices),
        cases_checked=sum(o.checked for o in outcomes),
        violations=violations,
        budget_status="partial" if any(o.partial for o in outcomes) else "complete",
        elapsed_ms=elapsed,
    )
    logger.info(
        "%s: %d cases, %d checked, %d violations (%s)",
        suite_id,
        report.cases_run,
        report.cases_checked,
        len(violations),
        report.budget_status,
    )
    return report
