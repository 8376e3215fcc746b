import json

import pytest

from critatlas import cylgen as C
from critatlas.catalog import CatalogStore, ManifestMismatch, UnknownFamily, to_dot
from critatlas.embed import canonical_key, marked_cycle, parse_rotg


@pytest.fixture
def filled(tmp_path):
    st = CatalogStore(tmp_path)
    for n in range(4):
        st.put("cyl/classc", C.class_c(n), "build", {"n": n, "class_c": True})
    st.save("cyl/classc", ["n", "class_c"])
    return st


def test_put_deduplicates_by_key():
    st = CatalogStore("unused")
    assert st.put("f", C.shared_edge_pair(3, 4), "a")
    assert not st.put("f", C.shared_edge_pair(3, 4).with_roles_swapped(), "b")
    (_, e), = st.entries("f")
    assert e.provenance == ["a", "b"]


def test_save_and_load_roundtrip(filled, tmp_path):
    back = CatalogStore(tmp_path)
    keys = back.keys("cyl/classc")
    assert keys == filled.keys("cyl/classc")
    metas = [e.meta for _, e in back.entries("cyl/classc")]
    assert sorted(m["n"] for m in metas) == ["0", "1", "2", "3"]
    assert all(m["class_c"] == "1" for m in metas)
    man = back.manifest()
    assert man["cyl/classc.rotg"][1] == 4


def test_flipped_byte_is_detected(filled, tmp_path):
    path = tmp_path / "cyl" / "classc.rotg"
    data = bytearray(path.read_bytes())
    i = data.index(b"mark")
    data[i] ^= 0x20
    path.write_bytes(bytes(data))
    with pytest.raises(ManifestMismatch):
        CatalogStore(tmp_path).load("cyl/classc")


def test_unknown_family(tmp_path):
    with pytest.raises(UnknownFamily):
        CatalogStore(tmp_path).keys("disk/K99")


def test_export_formats(filled, tmp_path):
    out = tmp_path / "out"
    rotg = filled.export("cyl/classc", "rotg", out)
    assert [canonical_key(g) for g in parse_rotg(rotg.read_text())] == filled.keys("cyl/classc")
    recs = json.loads(filled.export("cyl/classc", "json", out).read_text())
    assert [r["key"] for r in recs] == [k.hex() for k in filled.keys("cyl/classc")]
    assert {r["n"] for r in recs} == {4, 7, 10, 13}
    dot = filled.export("cyl/classc", "dot", out).read_text()
    assert dot.count("graph g") == 4
    with pytest.raises(ValueError):
        filled.export("cyl/classc", "svg", out)


def test_dot_of_two_squares_sharing_an_edge():
    dot = to_dot(C.shared_edge_pair(4, 4), "z1")
    lines = dot.splitlines()
    assert sum(1 for ln in lines if ln.strip().rstrip(";").isdigit()) == 6
    assert sum(1 for ln in lines if " -- " in ln) == 7
    assert "blue" in dot and "red" in dot


def test_disk_dot_marks_boundary():
    dot = to_dot(marked_cycle(5))
    assert dot.count("penwidth") == 5
