# services/group.py

import json
import logging
from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from utils.errors import (
    BadPermutation,
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotAssociative,
    NotClosedTable,
    OrderCap,
    UnknownElement,
)

logger = logging.getLogger(__name__)

MAX_GROUP_ORDER = 10080
MAX_SUBGROUP_SEARCH_ORDER = 200

# subgroups are plain frozensets of element indices
Subgroup = FrozenSet[int]


class FiniteGroup:
    """
    A finite group held as a multiplication table. Index 0 is the identity.
    Permutation groups also keep their 1-based image arrays for display and lookup.
    """

    def __init__(
        self,
        name: str,
        table: np.ndarray,
        aliases: Optional[Mapping[str, int]] = None,
        permutations: Optional[Sequence[Tuple[int, ...]]] = None,
    ):
        n = table.shape[0]
        self.name = name
        self.order = n
        self.identity = 0
        self.mul_table = table.astype(np.int64)
        self.inv_table = np.argmax(self.mul_table == self.identity, axis=1).astype(np.int64)
        # ldiv[y, x] = y^-1 x ; conj[y, x] = y x y^-1 ; comm[y, z] = y z y^-1 z^-1
        self.ldiv_table = self.mul_table[self.inv_table[:, None], np.arange(n)[None, :]]
        self.conj_table = self.mul_table[self.mul_table, self.inv_table[:, None]]
        self.comm_table = self.mul_table[self.conj_table, self.inv_table[None, :]]
        for t in (self.mul_table, self.inv_table, self.ldiv_table, self.conj_table, self.comm_table):
            t.setflags(write=False)

        self.mul_rows: List[List[int]] = self.mul_table.tolist()
        self.inv_list: List[int] = self.inv_table.tolist()

        self.permutations = tuple(permutations) if permutations is not None else None
        self._perm_index = (
            {p: i for i, p in enumerate(self.permutations)} if self.permutations is not None else {}
        )
        self.aliases: Dict[str, int] = dict(aliases or {})
        self.names: Tuple[str, ...] = tuple(self._display_name(i) for i in range(n))
        self._closures: Dict[FrozenSet[int], Subgroup] = {}
        self._subgroups: Optional[List[Subgroup]] = None

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    def _display_name(self, i: int) -> str:
        for label, j in self.aliases.items():
            if j == i:
                return label
        if self.permutations is not None:
            return "[" + ",".join(str(v) for v in self.permutations[i]) + "]"
        return str(i)

    @property
    def elements(self) -> range:
        return range(self.order)

    def element(self, label) -> int:
        """Resolve an alias, a table index or a permutation image array."""
        if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
            if 0 <= int(label) < self.order:
                return int(label)
            raise UnknownElement(label, f"group {self.name}")
        text = str(label).strip()
        if text in self.aliases:
            return self.aliases[text]
        if text.isdigit() and int(text) < self.order:
            return int(text)
        if text.startswith("[") and self.permutations is not None:
            try:
                image = tuple(int(v) for v in json.loads(text))
            except (ValueError, TypeError):
                raise UnknownElement(label, f"group {self.name}")
            if image in self._perm_index:
                return self._perm_index[image]
        raise UnknownElement(label, f"group {self.name}")

    def name_of(self, i: int) -> str:
        return self.names[i]

    # --- arithmetic ---

    def mul(self, x: int, y: int) -> int:
        return self.mul_rows[x][y]

    def inv(self, x: int) -> int:
        return self.inv_list[x]

    def conj(self, x: int, y: int) -> int:
        """x y x^-1"""
        return int(self.conj_table[x, y])

    def comm(self, x: int, y: int) -> int:
        """x y x^-1 y^-1"""
        return int(self.comm_table[x, y])

    def group_arithmetic(self, kind: str, x: int, y: Optional[int] = None) -> int:
        if kind == "inv":
            return self.inv(x)
        if y is None:
            raise ValueError(f"{kind} needs two elements")
        if kind == "mul":
            return self.mul(x, y)
        if kind == "conj":
            return self.conj(x, y)
        if kind == "comm":
            return self.comm(x, y)
        raise ValueError(f"unknown group operation {kind!r}")

    @property
    def is_abelian(self) -> bool:
        return bool((self.mul_table == self.mul_table.T).all())

    # --- subgroups ---

    def generated_subgroup(self, generators: Iterable[int]) -> Subgroup:
        key = frozenset(int(g) for g in generators)
        cached = self._closures.get(key)
        if cached is not None:
            return cached
        members = {self.identity}
        queue = deque([self.identity])
        gens = sorted(key)
        while queue:
            x = queue.popleft()
            row = self.mul_rows[x]
            for g in gens:
                y = row[g]
                if y not in members:
                    members.add(y)
                    queue.append(y)
        result = frozenset(members)
        self._closures[key] = result
        return result

    def is_subgroup(self, members: Iterable[int]) -> bool:
        m = np.fromiter(set(members), dtype=np.int64)
        if len(m) == 0:
            return False
        # finite and closed under products is enough
        return bool(np.isin(self.mul_table[np.ix_(m, m)], m).all())

    def all_subgroups(self) -> List[Subgroup]:
        """Every subgroup, as joins of cyclic subgroups closed to a fixpoint."""
        if self._subgroups is not None:
            return list(self._subgroups)
        if self.order > MAX_SUBGROUP_SEARCH_ORDER:
            raise OrderCap(f"subgroup search is limited to order {MAX_SUBGROUP_SEARCH_ORDER}, {self.name} has {self.order}")
        cyclic = {self.generated_subgroup([x]) for x in self.elements}
        found = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            fresh = set()
            for h in frontier:
                for c in cyclic:
                    if c <= h:
                        continue
                    joined = self.generated_subgroup(h | c)
                    if joined not in found:
                        fresh.add(joined)
            found |= fresh
            frontier = fresh
        self._subgroups = sorted(found, key=subgroup_key)
        logger.debug("group %s has %d subgroups", self.name, len(self._subgroups))
        return list(self._subgroups)

    def is_normal_subgroup(self, members: Iterable[int]) -> bool:
        h = np.fromiter(set(members), dtype=np.int64)
        return bool(np.isin(self.conj_table[:, h], h).all())

    def generating_set(self, members: Optional[Iterable[int]] = None) -> List[int]:
        """Greedy generators: add the first element not yet reached."""
        target = frozenset(self.elements if members is None else members)
        gens: List[int] = []
        current = self.generated_subgroup(gens)
        for x in sorted(target):
            if x not in current:
                gens.append(x)
                current = self.generated_subgroup(gens)
            if current == target:
                break
        return gens


def subgroup_key(h: Subgroup) -> Tuple[int, Tuple[int, ...]]:
    return len(h), tuple(sorted(h))


def sorted_members(h: Iterable[int]) -> List[int]:
    return sorted(int(x) for x in h)


def validate_table(name: str, table: np.ndarray) -> None:
    n = table.shape[0]
    if table.ndim != 2 or table.shape[1] != n:
        raise NotClosedTable(f"{name}: Cayley table must be square")
    if table.min() < 0 or table.max() >= n:
        raise NotClosedTable(f"{name}: table entries must lie in 0..{n - 1}")
    idx = np.arange(n)
    # 1) identity at index 0
    if not ((table[0] == idx).all() and (table[:, 0] == idx).all()):
        raise NoIdentity(f"{name}: element 0 is not a two-sided identity")
    # 2) inverses
    for x in range(n):
        right = np.flatnonzero(table[x] == 0)
        if len(right) == 0 or table[right[0], x] != 0:
            raise NoInverse(f"{name}: element {x} has no two-sided inverse")
    # 3) associativity, one left factor at a time
    for a in range(n):
        lhs = table[table[a][:, None], idx[None, :]]
        rhs = table[a][table]
        if not (lhs == rhs).all():
            b, c = np.argwhere(lhs != rhs)[0]
            raise NotAssociative(f"{name}: ({a}*{b})*{c} != {a}*({b}*{c})")


def group_from_table(name: str, table: Sequence[Sequence[int]], aliases: Optional[Mapping[str, int]] = None) -> FiniteGroup:
    if any(len(row) != len(table) for row in table):
        raise NotClosedTable(f"{name}: Cayley table must be square")
    arr = np.asarray(table, dtype=np.int64)
    if arr.ndim != 2:
        raise NotClosedTable(f"{name}: Cayley table must be a list of rows")
    if arr.shape[0] > MAX_GROUP_ORDER:
        raise OrderCap(f"{name}: order {arr.shape[0]} exceeds {MAX_GROUP_ORDER}")
    validate_table(name, arr)
    return FiniteGroup(name, arr, aliases)


def _check_permutation(name: str, image: Sequence[int], degree: int) -> Tuple[int, ...]:
    perm = tuple(int(v) for v in image)
    if len(perm) != degree or sorted(perm) != list(range(1, degree + 1)):
        raise BadPermutation(f"{name}: {list(image)} is not a permutation of 1..{degree}")
    return perm


def group_from_permutations(
    name: str,
    degree: int,
    generators: Sequence[Sequence[int]],
    aliases: Optional[Mapping[str, Sequence[int]]] = None,
) -> FiniteGroup:
    """Close the generators under composition; x*y applies y first, then x."""
    gens = [_check_permutation(name, g, degree) for g in generators]
    identity = tuple(range(1, degree + 1))

    # BFS from the identity, generators in file order
    perms = [identity]
    seen = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(x[g[i] - 1] for i in range(degree))
            if y not in seen:
                if len(perms) >= MAX_GROUP_ORDER:
                    raise OrderCap(f"{name}: order exceeds {MAX_GROUP_ORDER}")
                seen[y] = len(perms)
                perms.append(y)
                queue.append(y)

    n = len(perms)
    arr = np.asarray(perms, dtype=np.int64) - 1
    weights = degree ** np.arange(degree, dtype=np.int64)
    codes = arr @ weights
    order = np.argsort(codes)
    sorted_codes = codes[order]
    table = np.empty((n, n), dtype=np.int32 if n > 2000 else np.int64)
    for i in range(n):
        composed = arr[i][arr]
        table[i] = order[np.searchsorted(sorted_codes, composed @ weights)]

    resolved: Dict[str, int] = {}
    for label, image in (aliases or {}).items():
        perm = _check_permutation(name, image, degree)
        if perm not in seen:
            raise UnknownElement(label, f"group {name}")
        resolved[label] = seen[perm]
    logger.debug("closed %d generators of %s to order %d", len(gens), name, n)
    return FiniteGroup(name, table, resolved, perms)


def cyclic_group(n: int, name: Optional[str] = None) -> FiniteGroup:
    idx = np.arange(n)
    return FiniteGroup(name or f"z{n}", (idx[:, None] + idx[None, :]) % n)


def direct_product(left: FiniteGroup, right: FiniteGroup, name: Optional[str] = None) -> FiniteGroup:
    pairs = list(product(left.elements, right.elements))
    index = {p: i for i, p in enumerate(pairs)}
    table = np.array(
        [[index[(left.mul(a, c), right.mul(b, d))] for c, d in pairs] for a, b in pairs],
        dtype=np.int64,
    )
    return FiniteGroup(name or f"{left.name}x{right.name}", table)


def subgroup_as_group(group: FiniteGroup, members: Iterable[int], name: Optional[str] = None) -> FiniteGroup:
    """Re-index a subgroup as a group in its own right, identity first."""
    elems = sorted_members(members)
    index = {x: i for i, x in enumerate(elems)}
    table = np.array([[index[group.mul(x, y)] for y in elems] for x in elems], dtype=np.int64)
    aliases = {group.names[x]: i for x, i in index.items()}
    perms = [group.permutations[x] for x in elems] if group.permutations is not None else None
    return FiniteGroup(name or f"{group.name}<{len(elems)}>", table, aliases, perms)


@dataclass(frozen=True)
class GroupHomomorphism:
    source: FiniteGroup
    target: FiniteGroup
    images: Tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.source.order:
            raise NotAHomomorphism(f"homomorphism {self.source.name} -> {self.target.name} needs {self.source.order} images")
        f = np.asarray(self.images, dtype=np.int64)
        if f.min() < 0 or f.max() >= self.target.order:
            raise NotAHomomorphism("image index out of range")
        lhs = f[self.source.mul_table]
        rhs = self.target.mul_table[f[:, None], f[None, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            x, y = (self.source.names[i] for i in bad[0])
            raise NotAHomomorphism(f"f({x}*{y}) != f({x})*f({y})")

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=np.int64)

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == self.source.order

    @property
    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.target.order

    def __call__(self, x: int) -> int:
        return self.images[x]


def apply_homomorphism(f: GroupHomomorphism, direction: str, members: Iterable[int]) -> Subgroup:
    members = set(members)
    if direction == "image":
        return frozenset(f.images[x] for x in members)
    if direction == "preimage":
        return frozenset(x for x in f.source.elements if f.images[x] in members)
    raise ValueError(f"unknown direction {direction!r}")


def identity_homomorphism(group: FiniteGroup) -> GroupHomomorphism:
    return GroupHomomorphism(group, group, tuple(group.elements))


def inner_automorphism(group: FiniteGroup, g: int) -> GroupHomomorphism:
    return GroupHomomorphism(group, group, tuple(int(v) for v in group.conj_table[g]))


def trivial_homomorphism(source: FiniteGroup, target: FiniteGroup) -> GroupHomomorphism:
    return GroupHomomorphism(source, target, (target.identity,) * source.order)


def extend_homomorphism(
    source: FiniteGroup, target: FiniteGroup, generator_images: Mapping[int, int]
) -> Optional[GroupHomomorphism]:
    """Extend images of generators along a BFS; None when they define no homomorphism."""
    images: Dict[int, int] = {source.identity: target.identity}
    queue = deque([source.identity])
    gens = list(generator_images.items())
    while queue:
        x = queue.popleft()
        for g, gy in gens:
            y = source.mul(x, g)
            value = target.mul(images[x], gy)
            if y in images:
                if images[y] != value:
                    return None
            else:
                images[y] = value
                queue.append(y)
    if len(images) != source.order:
        return None
    try:
        return GroupHomomorphism(source, target, tuple(images[x] for x in source.elements))
    except NotAHomomorphism:
        return None
