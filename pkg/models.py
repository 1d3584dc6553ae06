# models.py

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from services.lset import LPoint, LSubset


@dataclass
class LSubgroupWitness:
    subject: LSubset
    verdict: bool
    mode: str
    # ("pair", x, y), ("inverse", x, x) or ("level", a, -1)
    counterexample: Optional[Tuple[str, int, int]] = None

    def describe(self) -> Optional[str]:
        if self.counterexample is None:
            return None
        kind, first, second = self.counterexample
        names = self.subject.group.names
        if kind == "level":
            return f"level {self.subject.lattice.elements[first]} is not a subgroup"
        if kind == "inverse":
            return f"value at {names[first]} differs from its inverse"
        return f"pair ({names[first]}, {names[second]})"


@dataclass
class CentralChain:
    stages: List[LSubset]
    stabilized: bool
    class_index: Optional[int]
    reached_trivial: bool


@dataclass
class ClosureSeries:
    stages: List[LSubset]
    stabilized: bool
    reached_eta: bool


@dataclass
class EnumerationBudget:
    max_candidates: int = 1_000_000
    max_results: int = 1_000_000
    threads: int = 1

    def __post_init__(self):
        if self.max_candidates <= 0 or self.max_results <= 0 or self.threads <= 0:
            raise ValueError("budget fields must be positive")


@dataclass
class EnumerationResult:
    members: List[LSubset]
    candidates: int
    box_size: int
    complete: bool


@dataclass
class GeneratingSet:
    points: List[LPoint]
    target: LSubset
    complete: bool
    minimum: Optional[List[LPoint]] = None
    minimum_complete: bool = False

    def labels(self, points: Optional[List[LPoint]] = None) -> List[str]:
        group, lattice = self.target.group, self.target.lattice
        return [p.label(group, lattice) for p in (self.points if points is None else points)]


@dataclass
class MaximalityCertificate:
    subject: LSubset
    ambient: LSubset
    verdict: bool
    strict_intermediate: Optional[LSubset] = None
    reason: str = ""
    box_size: int = 0
    survivors: int = 0


@dataclass
class FrattiniResult:
    phi: Optional[LSubset]
    nongenerators: Optional[LSubset]
    via: str
    maximal: List[LSubset] = field(default_factory=list)
    # lambda ⊆ Phi, and lambda == Phi (only when both paths ran)
    contained: Optional[bool] = None
    agree: Optional[bool] = None

    @property
    def value(self) -> LSubset:
        return self.phi if self.phi is not None else self.nongenerators


@dataclass
class ConditionReport:
    count: int
    longest_chain: int
