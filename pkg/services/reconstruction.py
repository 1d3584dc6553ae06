# services/reconstruction.py
"""
Bounded search for a 14-element distributive lattice carrying the S4 nilpotent example.

Only a handful of identities between named elements are known, so the search ranges over
down-set lattices of small posets and tries to place the named elements so that every
identity holds. A solution is one lattice compatible with the identities, nothing more.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from services.lattice import FiniteLattice, downset_lattice

logger = logging.getLogger(__name__)

TARGET_SIZE = 14

# named elements first, the rest fill in canonical order
CONSTRAINED = ("l0", "u1", "d1", "a1", "b1", "c1", "f0", "b0")
FILLER = ("a0", "c0", "d0", "u0", "l1", "f1")
LABELS = ("l0", "f0", "a0", "b0", "c0", "d0", "u0", "l1", "f1", "a1", "b1", "c1", "d1", "u1")


@dataclass
class ReconstructionResult:
    lattices: List[FiniteLattice] = field(default_factory=list)
    posets_examined: int = 0
    complete: bool = True

    @property
    def satisfiable(self) -> bool:
        return bool(self.lattices)


def check_constraints(lattice: FiniteLattice) -> List[str]:
    """Names of the constraints `lattice` breaks; empty when it can host the S4 example."""
    missing = [label for label in CONSTRAINED if label not in lattice.index]
    if missing:
        return [f"missing element {label}" for label in missing]
    e = lattice.index
    U, D, A, B, C, F, B0, L0 = (e[k] for k in ("u1", "d1", "a1", "b1", "c1", "f0", "b0", "l0"))
    meet, join, leq = lattice.meet, lattice.join, lattice.leq
    failed = []
    if len(lattice) != TARGET_SIZE:
        failed.append(f"size {len(lattice)} != {TARGET_SIZE}")
    if lattice.top != U:
        failed.append("u1 is not the top")
    if lattice.bottom != L0:
        failed.append("l0 is not the bottom")
    if not lattice.distributive:
        failed.append("not distributive")
    for name, x in (("a1", A), ("b1", B), ("c1", C)):
        if meet(x, D) != x:
            failed.append(f"{name} ∧ d1 != {name}")
    pair_meets = [meet(A, B), meet(A, C), meet(B, C)]
    if not all(leq(m, F) for m in pair_meets):
        failed.append("pairwise meets of a1, b1, c1 not below f0")
    if join(join(pair_meets[0], pair_meets[1]), pair_meets[2]) != F:
        failed.append("join of pairwise meets of a1, b1, c1 != f0")
    if not (leq(F, B0) and leq(B0, B) and B0 != B and len(lattice.interval(B0, B)) == 2):
        failed.append("b1 does not cover b0 above f0")
    if not all(leq(x, D) for x in (A, B, C)) or not leq(D, U):
        failed.append("d1 is not above a1, b1, c1")
    return failed


def _naturally_labelled_posets(k: int) -> Iterator[List[int]]:
    """below[j] = bitmask of points under j, only points i < j, transitively closed."""

    def extend(below: List[int]) -> Iterator[List[int]]:
        j = len(below)
        if j == k:
            yield list(below)
            return
        for mask in range(1 << j):
            # down-closed: whatever sits under a member also sits under j
            if all(below[i] & ~mask == 0 for i in range(j) if mask >> i & 1):
                below.append(mask)
                yield from extend(below)
                below.pop()

    yield from extend([])


def _downsets(k: int, below: Sequence[int]) -> List[int]:
    return [
        d for d in range(1 << k)
        if all(below[j] & ~d == 0 for j in range(k) if d >> j & 1)
    ]


def _place_labels(downsets: List[int]) -> Optional[Dict[str, int]]:
    """Assign the constrained labels to down-sets; None when impossible."""
    full = max(downsets, key=lambda d: bin(d).count("1"))
    empty = 0
    inner = [d for d in downsets if d not in (full, empty)]

    def sub(a: int, b: int) -> bool:
        return a & ~b == 0

    def covers(lo: int, hi: int) -> bool:
        return lo != hi and sub(lo, hi) and not any(
            d not in (lo, hi) and sub(lo, d) and sub(d, hi) for d in downsets
        )

    lower_covers = {d: [c for c in inner if covers(c, d)] for d in inner}

    for D in inner:
        below_d = [x for x in inner if x != D and sub(x, D)]
        for B in below_d:
            if not lower_covers[B]:
                continue
            for A in below_d:
                if A == B:
                    continue
                # a1 and c1 play symmetric roles
                for C in below_d:
                    if C <= A or C == B:
                        continue
                    F = (A & B) | (A & C) | (B & C)
                    if F in (empty, A, B, C):
                        continue
                    for B0 in lower_covers[B]:
                        if B0 not in (F, A, C) and sub(F, B0):
                            return {"l0": empty, "u1": full, "d1": D, "a1": A, "b1": B, "c1": C, "f0": F, "b0": B0}
    return None


def _label_lattice(downsets: List[int], placed: Dict[str, int], name: str) -> Optional[FiniteLattice]:
    taken = set(placed.values())
    if len(taken) != len(placed):
        return None
    rest = sorted((d for d in downsets if d not in taken), key=lambda d: (bin(d).count("1"), d))
    if len(rest) != len(FILLER):
        return None
    by_label = dict(placed)
    by_label.update(zip(FILLER, rest))
    return downset_lattice(name, LABELS, [by_label[label] for label in LABELS])


def search_reconstructions(max_points: int = 6, limit: int = 1) -> ReconstructionResult:
    """
    Enumerate naturally labelled posets with up to `max_points` points whose down-set
    lattice has 14 elements, and keep those where the constrained labels can be placed.
    """
    result = ReconstructionResult()
    for k in range(1, max_points + 1):
        for below in _naturally_labelled_posets(k):
            downsets = _downsets(k, below)
            if len(downsets) != TARGET_SIZE:
                continue
            result.posets_examined += 1
            placed = _place_labels(downsets)
            if placed is None:
                continue
            lattice = _label_lattice(downsets, placed, f"reconstructed{len(result.lattices) + 1}")
            if lattice is None or check_constraints(lattice):
                continue
            result.lattices.append(lattice)
            logger.info("found a compatible lattice from a %d-point poset", k)
            if len(result.lattices) >= limit:
                result.complete = False
                return result
    if not result.lattices:
        logger.warning("no %d-element lattice satisfies the constraints", TARGET_SIZE)
    return result
