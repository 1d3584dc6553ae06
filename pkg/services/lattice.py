# services/lattice.py

import logging
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from utils.errors import (
    DuplicateElement,
    LatticeTooLarge,
    NoJoin,
    NoMeet,
    NotComparable,
    OrderCycle,
    UnknownElement,
)

logger = logging.getLogger(__name__)

MAX_LATTICE_SIZE = 64


class FiniteLattice:
    """
    A finite bounded lattice. Elements are addressed by their index in
    `elements` (file order), and every query is a table lookup.
    """

    def __init__(self, name: str, elements: Sequence[str], leq: np.ndarray):
        n = len(elements)
        self.name = name
        self.elements: Tuple[str, ...] = tuple(elements)
        self.index: Dict[str, int] = {e: i for i, e in enumerate(self.elements)}

        self.leq_table = leq.astype(bool)
        self.join_table = _bound_table(self.elements, self.leq_table, upper=True)
        self.meet_table = _bound_table(self.elements, self.leq_table, upper=False)
        for table in (self.leq_table, self.join_table, self.meet_table):
            table.setflags(write=False)

        # least element is below everything, greatest above
        self.bottom = int(np.flatnonzero(self.leq_table.all(axis=1))[0])
        self.top = int(np.flatnonzero(self.leq_table.all(axis=0))[0])

        # plain lists for the scalar hot loops in the enumeration code
        self.leq_rows: List[List[bool]] = self.leq_table.tolist()
        self.meet_rows: List[List[int]] = self.meet_table.tolist()
        self.join_rows: List[List[int]] = self.join_table.tolist()

        # |down-set of x|, strictly monotone along the order
        self.heights = self.leq_table.sum(axis=0).astype(np.int64)

        self.distributivity_witness = _distributivity_witness(self.meet_table, self.join_table)
        self.distributive = self.distributivity_witness is None
        if not self.distributive:
            x, y, z = (self.elements[i] for i in self.distributivity_witness)
            logger.warning("lattice %s is not distributive: witness (%s, %s, %s)", name, x, y, z)

        self._intervals: Dict[Tuple[int, int], Tuple[int, ...]] = {}
        logger.debug("loaded lattice %s with %d elements", name, n)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteLattice({self.name!r}, size={len(self)})"

    # --- element addressing ---

    def element(self, label) -> int:
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= int(label) < len(self):
                return int(label)
            raise UnknownElement(label, f"lattice {self.name}")
        try:
            return self.index[str(label)]
        except KeyError:
            raise UnknownElement(label, f"lattice {self.name}")

    def name_of(self, i: int) -> str:
        return self.elements[i]

    # --- order and bounds ---

    def leq(self, x: int, y: int) -> bool:
        return self.leq_rows[x][y]

    def meet(self, x: int, y: int) -> int:
        return self.meet_rows[x][y]

    def join(self, x: int, y: int) -> int:
        return self.join_rows[x][y]

    def lattice_ops(self, kind: str, x: int, y: int):
        if kind == "meet":
            return self.meet(x, y)
        if kind == "join":
            return self.join(x, y)
        if kind == "leq":
            return self.leq(x, y)
        raise ValueError(f"unknown lattice operation {kind!r}")

    def sup_of_set(self, values: Iterable[int]) -> int:
        acc = self.bottom
        for v in values:
            acc = self.join_rows[acc][v]
        return acc

    def inf_of_set(self, values: Iterable[int]) -> int:
        acc = self.top
        for v in values:
            acc = self.meet_rows[acc][v]
        return acc

    def join_reduce(self, rows: np.ndarray, axis: int = 0) -> np.ndarray:
        """Join a 2-D array of element indices along `axis`."""
        rows = np.moveaxis(np.asarray(rows), axis, 0)
        acc = np.full(rows.shape[1:], self.bottom, dtype=np.int64)
        for row in rows:
            acc = self.join_table[acc, row]
        return acc

    def meet_reduce(self, rows: np.ndarray, axis: int = 0) -> np.ndarray:
        rows = np.moveaxis(np.asarray(rows), axis, 0)
        acc = np.full(rows.shape[1:], self.top, dtype=np.int64)
        for row in rows:
            acc = self.meet_table[acc, row]
        return acc

    def interval(self, lo: int, hi: int) -> Tuple[int, ...]:
        key = (lo, hi)
        cached = self._intervals.get(key)
        if cached is not None:
            return cached
        if not self.leq_rows[lo][hi]:
            raise NotComparable(self.elements[lo], self.elements[hi])
        members = tuple(int(c) for c in np.flatnonzero(self.leq_table[lo] & self.leq_table[:, hi]))
        self._intervals[key] = members
        return members

    def down_set(self, x: int) -> Tuple[int, ...]:
        return self.interval(self.bottom, x)

    # --- shape ---

    @property
    def is_chain(self) -> bool:
        return bool((self.leq_table | self.leq_table.T).all())

    def chain_properties(self) -> Dict[str, bool]:
        # a finite lattice is upper well ordered exactly when it is a chain
        chain = self.is_chain
        return {"is_chain": chain, "is_upper_well_ordered": chain}

    def is_distributive(self) -> Tuple[bool, Optional[Tuple[str, str, str]]]:
        if self.distributive:
            return True, None
        return False, tuple(self.elements[i] for i in self.distributivity_witness)

    def covers(self) -> List[Tuple[int, int]]:
        pairs = []
        for x, y in product(range(len(self)), repeat=2):
            if x != y and self.leq_rows[x][y] and len(self.interval(x, y)) == 2:
                pairs.append((x, y))
        return pairs


def _bound_table(elements: Sequence[str], leq: np.ndarray, upper: bool) -> np.ndarray:
    n = len(elements)
    rel = leq if upper else leq.T
    table = np.zeros((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(x, n):
            # common upper (lower) bounds, then the one below (above) all the others
            bounds = np.flatnonzero(rel[x] & rel[y])
            least = [z for z in bounds if rel[z, bounds].all()]
            if not least:
                error = NoJoin if upper else NoMeet
                raise error(elements[x], elements[y])
            table[x, y] = table[y, x] = least[0]
    return table


def _distributivity_witness(meet: np.ndarray, join: np.ndarray) -> Optional[Tuple[int, int, int]]:
    n = meet.shape[0]
    x = np.arange(n)[:, None, None]
    lhs = meet[x, join[None, :, :]]
    rhs = join[meet[:, :, None], meet[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        return tuple(int(i) for i in bad[0])
    return None


def build_lattice(name: str, elements: Sequence[str], le_pairs: Iterable[Sequence[str]]) -> FiniteLattice:
    """Close the given <= pairs (covers or arbitrary pairs) and validate the result is a lattice."""
    elements = [str(e) for e in elements]
    n = len(elements)
    if n == 0:
        raise LatticeTooLarge("a lattice needs at least one element")
    if n > MAX_LATTICE_SIZE:
        raise LatticeTooLarge(f"lattice {name} has {n} elements (limit {MAX_LATTICE_SIZE})")
    index: Dict[str, int] = {}
    for i, e in enumerate(elements):
        if e in index:
            raise DuplicateElement(e)
        index[e] = i

    leq = np.eye(n, dtype=bool)
    for pair in le_pairs:
        lo, hi = pair
        if lo not in index:
            raise UnknownElement(lo, f"lattice {name}")
        if hi not in index:
            raise UnknownElement(hi, f"lattice {name}")
        leq[index[lo], index[hi]] = True

    # reflexive-transitive closure (Warshall)
    for k in range(n):
        leq |= np.outer(leq[:, k], leq[k, :])

    cycle = np.argwhere(leq & leq.T & ~np.eye(n, dtype=bool))
    if len(cycle):
        i, j = cycle[0]
        raise OrderCycle(elements[i], elements[j])

    return FiniteLattice(name, elements, leq)


def chain_lattice(n: int, name: Optional[str] = None) -> FiniteLattice:
    labels = [str(i) for i in range(n)]
    return build_lattice(name or f"chain{n}", labels, zip(labels, labels[1:]))


def product_lattice(left: FiniteLattice, right: FiniteLattice, name: Optional[str] = None) -> FiniteLattice:
    pairs = list(product(range(len(left)), range(len(right))))
    labels = [f"{left.elements[a]}.{right.elements[b]}" for a, b in pairs]
    leq = np.array(
        [[left.leq(a, c) and right.leq(b, d) for c, d in pairs] for a, b in pairs],
        dtype=bool,
    )
    return FiniteLattice(name or f"{left.name}x{right.name}", labels, leq)


def interval_sublattice(lattice: FiniteLattice, lo: int, hi: int, name: Optional[str] = None) -> FiniteLattice:
    members = list(lattice.interval(lo, hi))
    leq = lattice.leq_table[np.ix_(members, members)]
    labels = [lattice.elements[i] for i in members]
    label = name or f"{lattice.name}[{lattice.elements[lo]},{lattice.elements[hi]}]"
    return FiniteLattice(label, labels, leq)


def downset_lattice(name: str, labels: Sequence[str], downsets: Sequence[int]) -> FiniteLattice:
    """Lattice of down-sets given as bitmasks, ordered by inclusion."""
    leq = np.array([[(a & ~b) == 0 for b in downsets] for a in downsets], dtype=bool)
    return FiniteLattice(name, labels, leq)
