import numpy as np
import pytest

from polyflex import io as pio
from polyflex.constructions import DEFAULT_PARAMS, FOOTNOTE_PARAMS


def test_edge_key_roundtrip():
    assert pio.edge_key("B", "A'") == pio.edge_key("A'", "B") == "A'|B"
    assert pio.split_edge_key("A'|B") == ("A'", "B")
    with pytest.raises(pio.IOFormatError):
        pio.split_edge_key("no-separator")


def test_params_roundtrip():
    for p in (DEFAULT_PARAMS, FOOTNOTE_PARAMS):
        assert pio.params_from_doc(pio.params_to_doc(p)) == p


def test_params_doc_defaults_base_shape():
    doc = pio.params_to_doc(DEFAULT_PARAMS)
    del doc["base_shape"]
    assert pio.params_from_doc(doc).base_shape == 0.75


def test_params_doc_errors_name_path():
    doc = pio.params_to_doc(DEFAULT_PARAMS)
    del doc["l"]
    with pytest.raises(pio.IOFormatError, match="params: missing field 'l'"):
        pio.params_from_doc(doc)
    doc = pio.params_to_doc(DEFAULT_PARAMS)
    doc["h"] = [1.0, 2.0]
    with pytest.raises(pio.IOFormatError, match="params.h"):
        pio.params_from_doc(doc)
    with pytest.raises(pio.IOFormatError, match="format"):
        pio.params_from_doc({"l": [1, 2, 3, 4, 5], "h": [1, 2, 3]})
    with pytest.raises(pio.IOFormatError, match="format"):
        pio.params_from_doc({"format": "polyflex/999", "l": [1] * 5, "h": [1] * 3})


def test_mesh_roundtrip_exact(default_build):
    doc = pio.mesh_to_doc(default_build.mesh, default_build.config)
    mesh, cfg = pio.mesh_from_doc(doc)
    assert mesh.vertices == default_build.mesh.vertices
    assert mesh.faces == default_build.mesh.faces
    for v in mesh.vertices:
        assert np.array_equal(cfg[v], default_build.config[v])  # repr round-trips floats


def test_mesh_doc_errors():
    with pytest.raises(pio.IOFormatError, match="vertices"):
        pio.mesh_from_doc({"format": pio.FORMAT, "vertices": [], "faces": []})
    base = {
        "format": pio.FORMAT,
        "vertices": [
            {"id": "a", "xyz": [0, 0, 0]},
            {"id": "a", "xyz": [1, 0, 0]},
        ],
        "faces": [],
    }
    with pytest.raises(pio.IOFormatError, match=r"vertices\[1\].id: duplicate"):
        pio.mesh_from_doc(base)
    bad_face = {
        "format": pio.FORMAT,
        "vertices": [{"id": "a", "xyz": [0, 0, 0]}],
        "faces": [["a", "b", "c"]],
    }
    with pytest.raises(pio.IOFormatError, match=r"faces\[0\]: unknown vertex"):
        pio.mesh_from_doc(bad_face)
    short_xyz = {
        "format": pio.FORMAT,
        "vertices": [{"id": "a", "xyz": [0, 0]}],
        "faces": [],
    }
    with pytest.raises(pio.IOFormatError, match=r"vertices\[0\].xyz"):
        pio.mesh_from_doc(short_xyz)


def test_trajectory_doc_roundtrip(octa_traj):
    doc = pio.trajectory_to_doc(octa_traj)
    assert pio.check_trajectory_doc(doc) is doc
    assert doc["driving"] == pio.edge_key(*octa_traj.driving)
    assert len(doc["samples"]) == len(octa_traj.samples)
    s0 = doc["samples"][0]
    # intersections were not tracked on this trajectory
    assert s0["intersections"] == -1
    assert set(s0["folds"]) == {pio.edge_key(u, v) for (u, v) in octa_traj.mesh.edges}


def test_trajectory_doc_validation_errors(octa_traj):
    doc = pio.trajectory_to_doc(octa_traj)
    doc["samples"][3] = {**doc["samples"][3], "config": {}}
    with pytest.raises(pio.IOFormatError, match=r"samples\[3\].config"):
        pio.check_trajectory_doc(doc)
    doc = pio.trajectory_to_doc(octa_traj)
    doc["driving"] = "AB"
    with pytest.raises(pio.IOFormatError):
        pio.check_trajectory_doc(doc)


def test_export_obj(default_build):
    text = pio.export_obj(default_build.mesh, default_build.config)
    lines = text.strip().splitlines()
    v_lines = [l for l in lines if l.startswith("v ")]
    f_lines = [l for l in lines if l.startswith("f ")]
    assert len(v_lines) == 8 and len(f_lines) == 12
    # faces are 1-based indices into the vertex list
    for l in f_lines:
        ids = [int(tok) for tok in l.split()[1:]]
        assert all(1 <= i <= 8 for i in ids)
    x = float(v_lines[0].split()[1])
    assert x == float(repr(x))


def test_dump_and_load(tmp_path, default_build):
    doc = pio.mesh_to_doc(default_build.mesh, default_build.config)
    path = tmp_path / "mesh.json"
    pio.dump_doc(doc, path)
    assert pio.load_doc(path) == doc
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    with pytest.raises(pio.IOFormatError, match="not valid JSON"):
        pio.load_doc(bad)
