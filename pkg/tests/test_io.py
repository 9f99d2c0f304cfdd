import json

import pytest

from exact_lattice.core import StructuralError
from exact_lattice.core.io import dump_universe, load_universe, universe_from_json, universe_to_json
from exact_lattice.dvr import DvrUniverse
from exact_lattice.enomoto import ModelUniverse, a3_model


@pytest.mark.parametrize("make", [lambda: DvrUniverse(2, 2, 1), lambda: ModelUniverse(a3_model())])
def test_roundtrip(make, tmp_path):
    u = make()
    path = tmp_path / "u.json"
    dump_universe(u, path)
    v = load_universe(path)
    assert v.pool == u.pool
    assert universe_to_json(v) == json.loads(path.read_text())


def test_schema_fields():
    d = universe_to_json(DvrUniverse(2, 1, 1))
    assert set(d) == {"kind", "params", "objects", "homs", "ses"}
    assert [o["id"] for o in d["objects"]] == ["R/P", "R/P^2", "R"]
    h = next(h for h in d["homs"] if (h["src"], h["dst"]) == ("R/P", "R/P^2"))
    assert h["group"] == [2] and h["generators"] == [[["2"]]]
    s = next(s for s in d["ses"] if (s["C"], s["A"], s["class"]) == ("R/P", "R/P", [1]))
    assert s["B"] == ["R/P^2"]


def test_edited_file_is_rejected():
    d = universe_to_json(DvrUniverse(2, 1, 1))
    d["ses"][1]["B"] = ["R"]
    with pytest.raises(StructuralError):
        universe_from_json(d)
    with pytest.raises(StructuralError):
        universe_from_json({"kind": "torus"})
