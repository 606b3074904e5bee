"""Code description files: round trips, stability, tamper detection."""

import json

import pytest

from locq import (
    CodeFormatError,
    build_gen_rep,
    build_gen_surface,
    build_planar_surface,
    subdivide,
    toric_square_complex,
)
from locq.io import dumps_code, load_code, save_code


@pytest.fixture(scope="module")
def codes():
    return {
        "gen-rep": build_gen_rep(3, 5),
        "gen-surface": build_gen_surface(build_gen_rep(3, 3), build_gen_rep(2, 3)),
        "planar": build_planar_surface(3),
        "subdivided": subdivide(toric_square_complex(3, 3), 3),
    }


def test_round_trip_all_kinds(codes, tmp_path):
    for kind, code in codes.items():
        path = tmp_path / f"{kind}.json"
        save_code(code, path)
        loaded = load_code(path)
        assert loaded.graph.edges == code.graph.edges
        assert loaded.graph.interior == code.graph.interior


def test_serialization_byte_stable(codes):
    for code in codes.values():
        assert dumps_code(code) == dumps_code(code)


def test_payload_contents(codes):
    payload = json.loads(dumps_code(codes["subdivided"]))
    assert payload["format_version"] == 1
    assert payload["kind"] == "subdivided"
    assert {"vertices", "hyperedges", "maps", "outer_hx", "outer_hz"} <= payload.keys()
    assert payload["vertices"][0]["region"][0] in ("S", "T", "U")
    assert all(isinstance(row, list) for row in payload["outer_hx"])


def test_tampered_structure_rejected(codes, tmp_path):
    path = tmp_path / "code.json"
    save_code(codes["gen-rep"], path)
    payload = json.loads(path.read_text())
    payload["hyperedges"][2]["vertices"] = [0, 5]
    path.write_text(json.dumps(payload))
    with pytest.raises(CodeFormatError):
        load_code(path)


def test_unknown_version_rejected(codes, tmp_path):
    path = tmp_path / "code.json"
    save_code(codes["gen-rep"], path)
    payload = json.loads(path.read_text())
    payload["format_version"] = 99
    path.write_text(json.dumps(payload))
    with pytest.raises(CodeFormatError):
        load_code(path)


def test_garbage_rejected(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("not json at all")
    with pytest.raises(CodeFormatError):
        load_code(path)
