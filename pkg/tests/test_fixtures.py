import json

import pytest

from utils.errors import BadPointSyntax, FixtureNotFound, InputError, UnknownElement
from utils.fixtures import FixtureLoader, load_group, load_lattice, parse_points, split_points


def write(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_split_points_keeps_image_arrays():
    assert split_points("b@[3,4,1,2], c@s") == ["b@[3,4,1,2]", "c@s"]
    assert split_points(" ,a@e,, ") == ["a@e"]


def test_parse_points(d8, l3):
    points = parse_points("b@r2,c@[2,1,4,3]", d8, l3)
    assert [p.label(d8, l3) for p in points] == ["b@r2", "c@s"]
    with pytest.raises(BadPointSyntax):
        parse_points("b-r2", d8, l3)
    with pytest.raises(UnknownElement):
        parse_points("z@r2", d8, l3)


def test_lattice_schema_errors():
    with pytest.raises(InputError) as err:
        load_lattice({"name": "x", "elements": ["a", "a"]})
    assert "unique" in err.value.detail
    with pytest.raises(InputError):
        load_lattice({"name": "x", "elements": ["a@b"]})


def test_group_schema_errors():
    with pytest.raises(InputError):
        load_group({"name": "g", "kind": "cayley"})
    with pytest.raises(InputError):
        load_group({"name": "g", "kind": "permutation", "generators": [[1]]})
    with pytest.raises(UnknownElement):
        load_group({"name": "g", "kind": "cayley", "table": [[0, 1], [1, 0]], "aliases": {"t": "one"}})


def test_missing_and_broken_files(tmp_path):
    loader = FixtureLoader(tmp_path)
    with pytest.raises(FixtureNotFound):
        loader.lattice("nowhere")
    (tmp_path / "broken.json").write_text("{", encoding="utf-8")
    with pytest.raises(InputError):
        loader.lattice("broken")


def test_ragged_table_names_the_field():
    with pytest.raises(InputError) as err:
        load_group({"name": "g", "kind": "cayley", "table": [[0, 1], [1]]})
    assert err.value.field == "table"
    assert "row 1 has 1 entries" in err.value.detail


def test_non_utf8_file_is_an_input_error(tmp_path):
    path = tmp_path / "latin.json"
    path.write_bytes(b'{"name": "\xff\xfe"}')
    with pytest.raises(InputError) as err:
        FixtureLoader(tmp_path).lattice("latin")
    assert "not UTF-8" in err.value.detail
    assert err.value.field == str(path.resolve())


def test_lsubset_resolves_next_to_its_file(tmp_path):
    write(tmp_path / "two.json", {"name": "two", "elements": ["lo", "hi"], "le": [["lo", "hi"]]})
    write(tmp_path / "c2.json", {"name": "c2", "kind": "cayley", "table": [[0, 1], [1, 0]], "aliases": {"e": 0, "g": 1}})
    path = write(tmp_path / "mu.json", {"group": "c2", "lattice": "two", "default": "lo", "values": {"e": "hi"}})
    mu = FixtureLoader(tmp_path / "elsewhere").lsubset(str(path))
    assert mu.describe() == {"e": "hi", "g": "lo"}


def test_loader_caches(loader):
    assert loader.group("d8") is loader.group("d8.json")
    assert loader.lattice("l3") is loader.lattice("l3")
