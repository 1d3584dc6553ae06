# utils/fixtures.py

import json
import logging
import threading
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Tuple, Union

from pydantic import ValidationError

from schemas.fixtures import GroupFile, LatticeFile, LSubsetFile
from services.group import FiniteGroup, group_from_permutations, group_from_table
from services.lattice import FiniteLattice, build_lattice
from services.lset import LPoint, LSubset, make_lsubset
from utils.config import FIXTURES_DIR
from utils.errors import BadPointSyntax, FixtureNotFound, InputError, UnknownElement

logger = logging.getLogger(__name__)


def validation_detail(source: str, err: ValidationError) -> str:
    parts = []
    for item in err.errors():
        where = ".".join(str(p) for p in item["loc"]) or "(root)"
        parts.append(f"{where}: {item['msg']}")
    return f"{source}: " + "; ".join(parts)


def error_field(err: ValidationError) -> Optional[str]:
    """Dotted location of the first failing field, e.g. "table.1"."""
    errors = err.errors()
    if not errors or not errors[0]["loc"]:
        return None
    return ".".join(str(p) for p in errors[0]["loc"])


def _validate(model, data: Any, source: str):
    try:
        return model.model_validate(data)
    except ValidationError as err:
        raise InputError(validation_detail(source, err), field=error_field(err))


def load_lattice(data: Union[Mapping, LatticeFile], source: str = "lattice") -> FiniteLattice:
    parsed = data if isinstance(data, LatticeFile) else _validate(LatticeFile, data, source)
    return build_lattice(parsed.name, parsed.elements, parsed.le)


def _permutation_alias(name: str, label: str, value: Union[int, str]) -> List[int]:
    if isinstance(value, int):
        raise UnknownElement(label, f"group {name} (permutation aliases are image arrays)")
    try:
        image = json.loads(value)
    except ValueError:
        raise UnknownElement(value, f"group {name} alias {label}")
    if not isinstance(image, list):
        raise UnknownElement(value, f"group {name} alias {label}")
    return [int(v) for v in image]


def load_group(data: Union[Mapping, GroupFile], source: str = "group") -> FiniteGroup:
    parsed = data if isinstance(data, GroupFile) else _validate(GroupFile, data, source)
    if parsed.kind == "cayley":
        aliases: Dict[str, int] = {}
        for label, value in parsed.aliases.items():
            if isinstance(value, str) and not value.isdigit():
                raise UnknownElement(value, f"group {parsed.name} alias {label}")
            aliases[label] = int(value)
            if not 0 <= aliases[label] < len(parsed.table):
                raise UnknownElement(value, f"group {parsed.name} alias {label}")
        return group_from_table(parsed.name, parsed.table, aliases)
    aliases_perm = {label: _permutation_alias(parsed.name, label, value) for label, value in parsed.aliases.items()}
    return group_from_permutations(parsed.name, parsed.degree, parsed.generators, aliases_perm)


def split_points(text: str) -> List[str]:
    """Split on commas that are not inside [...] image arrays."""
    items, depth, current = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            items.append("".join(current))
            current = []
        else:
            current.append(ch)
    items.append("".join(current))
    return [item.strip() for item in items if item.strip()]


def parse_points(text: str, group: FiniteGroup, lattice: FiniteLattice) -> List[LPoint]:
    points = []
    for item in split_points(text):
        if "@" not in item:
            raise BadPointSyntax(f"point {item!r} is not of the form value@element")
        value, at = item.split("@", 1)
        points.append(LPoint(group.element(at.strip()), lattice.element(value.strip())))
    return points


class FixtureLoader:
    """Resolves fixture references and caches what it has loaded."""

    def __init__(self, root: Optional[Union[str, Path]] = None):
        self.root = Path(root) if root is not None else FIXTURES_DIR
        self._lattices: Dict[Path, FiniteLattice] = {}
        self._groups: Dict[Path, FiniteGroup] = {}
        self._lock = threading.Lock()

    def resolve(self, ref: Union[str, Path], base: Optional[Path] = None) -> Path:
        ref = str(ref)
        candidates = [Path(ref)]
        if base is not None:
            candidates += [base / ref, base / f"{ref}.json"]
        candidates += [self.root / ref, self.root / f"{ref}.json"]
        for path in candidates:
            if path.is_file():
                return path.resolve()
        raise FixtureNotFound(f"cannot find fixture {ref!r} (fixture root {self.root})", field=ref)

    def read(self, path: Path) -> Any:
        try:
            with open(path, encoding="utf-8") as fh:
                return json.load(fh)
        except json.JSONDecodeError as err:
            raise InputError(f"{path.name}: invalid JSON ({err.msg} at line {err.lineno})", field=str(path))
        except UnicodeDecodeError as err:
            raise InputError(f"{path.name}: not UTF-8 text (byte {err.start})", field=str(path))
        except OSError as err:
            raise FixtureNotFound(f"{path}: {err.strerror}", field=str(path))

    def lattice(self, ref: Union[str, Path], base: Optional[Path] = None) -> FiniteLattice:
        path = self.resolve(ref, base)
        with self._lock:
            if path not in self._lattices:
                self._lattices[path] = load_lattice(self.read(path), path.name)
                logger.debug("loaded lattice fixture %s", path)
            return self._lattices[path]

    def group(self, ref: Union[str, Path], base: Optional[Path] = None) -> FiniteGroup:
        path = self.resolve(ref, base)
        with self._lock:
            if path not in self._groups:
                self._groups[path] = load_group(self.read(path), path.name)
                logger.debug("loaded group fixture %s", path)
            return self._groups[path]

    def lsubset(self, ref: Union[str, Path]) -> LSubset:
        path = self.resolve(ref)
        parsed = _validate(LSubsetFile, self.read(path), path.name)
        group = self.group(parsed.group, path.parent)
        lattice = self.lattice(parsed.lattice, path.parent)
        return make_lsubset(group, lattice, parsed.values, parsed.default)

    def lsubset_pair(self, eta_ref: Union[str, Path], mu_ref: Union[str, Path]) -> Tuple[LSubset, LSubset]:
        return self.lsubset(eta_ref), self.lsubset(mu_ref)
