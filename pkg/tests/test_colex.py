"""Lattice generators, validation, and serialization.

The counting oracle re-derives faces by an independent traversal of the
rotation system (next-dart bookkeeping written from scratch here) before
comparing Euler characteristics and per-color counts.
"""

import json

import pytest

from colorsurf.colex import (
    COLORS,
    Color,
    build_hexagonal_torus,
    build_square_octagon_torus,
    colex_fingerprint,
    colex_to_json,
    load_colex,
    save_colex,
    validate_colex,
)
from colorsurf.errors import ColexFormatError, ColexValidationError, LatticeDimensionError


def oracle_face_count(g):
    """Exhaustive face traversal, independent of the library's tracer."""
    succ = {}
    for v, rot in enumerate(g.rotation):
        for i, e in enumerate(rot):
            succ[(v, e)] = rot[(i + 1) % len(rot)]
    visited = set()
    faces = 0
    for v, rot in enumerate(g.rotation):
        for e in rot:
            if (v, e) in visited:
                continue
            faces += 1
            cur = (v, e)
            while cur not in visited:
                visited.add(cur)
                v0, e0 = cur
                u, w, _ = g.edges[e0]
                head = w if u == v0 else u
                cur = (head, succ[(head, e0)])
    return faces


@pytest.mark.parametrize(
    "rows,cols,V,E,F",
    [(3, 3, 18, 27, 9), (6, 3, 36, 54, 18), (6, 6, 72, 108, 36)],
)
def test_hexagonal_counts(rows, cols, V, E, F):
    g = build_hexagonal_torus(rows, cols)
    assert (g.n, g.n_edges, g.n_faces) == (V, E, F)
    assert oracle_face_count(g) == F
    assert g.n - g.n_edges + g.n_faces == 0  # torus
    counts = g.face_counts()
    assert counts[Color.R] == counts[Color.G] == counts[Color.B] == F // 3
    assert all(len(b) == 6 for b, _ in g.faces)
    assert validate_colex(g).ok


def test_hexagonal_rejects_bad_dimensions():
    with pytest.raises(LatticeDimensionError):
        build_hexagonal_torus(2, 3)
    with pytest.raises(LatticeDimensionError, match="colorable"):
        build_hexagonal_torus(4, 3)
    with pytest.raises(LatticeDimensionError, match="colorable"):
        build_hexagonal_torus(3, 5)


def test_square_octagon_counts():
    g = build_square_octagon_torus(2)
    lens = sorted(len(b) // 2 for b, _ in g.faces)
    assert set(lens) == {2, 4}
    assert g.n - g.n_edges + g.n_faces == 0
    assert validate_colex(g).ok

    g4 = build_square_octagon_torus(4)
    assert g4.n_edges == 3 * g4.n // 2
    assert oracle_face_count(g4) == g4.n_faces
    for c in COLORS:
        seen = [0] * g4.n
        for f in g4.faces_of_color(c):
            for v in g4.faces[f][0]:
                seen[v] += 1
        assert all(s == 1 for s in seen)


def test_square_octagon_rejects_bad_dimensions():
    with pytest.raises(LatticeDimensionError):
        build_square_octagon_torus(1)
    with pytest.raises(LatticeDimensionError, match="even"):
        build_square_octagon_torus(3)


def test_color_edge_counts(all_lattices):
    for g in all_lattices.values():
        assert g.n % 2 == 0
        for c in COLORS:
            assert len(g.edges_of_color(c)) == g.n // 2
        # faces of the third color cover every vertex exactly once
        for c in COLORS:
            cover = sum(len(g.faces[f][0]) for f in g.faces_of_color(c))
            assert cover == g.n


def test_validator_flags_recolored_edge(hex33):
    edges = list(hex33.edges)
    u, v, c = edges[0]
    edges[0] = (u, v, c.next)
    bad = hex33.__class__(
        n=hex33.n,
        edges=tuple(edges),
        faces=hex33.faces,
        rotation=hex33.rotation,
        genus=hex33.genus,
    )
    rep = validate_colex(bad)
    assert not rep.ok
    assert any(c.name == "edge-coloring" and not c.passed for c in rep.checks)


def test_validator_flags_doubled_edge(hex33):
    edges = list(hex33.edges)
    edges.append(edges[0])
    bad = hex33.__class__(
        n=hex33.n,
        edges=tuple(edges),
        faces=hex33.faces,
        rotation=hex33.rotation,
        genus=hex33.genus,
    )
    rep = validate_colex(bad)
    failed = {c.name for c in rep.checks if not c.passed}
    assert "no-parallel-edges" in failed


def test_validator_flags_wrong_genus(hex33):
    bad = hex33.__class__(
        n=hex33.n,
        edges=hex33.edges,
        faces=hex33.faces,
        rotation=hex33.rotation,
        genus=0,
    )
    rep = validate_colex(bad)
    assert any(c.name == "euler-characteristic" and not c.passed for c in rep.checks)


def test_json_roundtrip(all_lattices):
    for g in all_lattices.values():
        doc = save_colex(g)
        g2 = load_colex(doc)
        assert g2 == g
        assert colex_fingerprint(g2) == colex_fingerprint(g)
        g3 = load_colex(colex_to_json(g))
        assert g3 == g


def test_load_reports_missing_face_color(hex33):
    doc = save_colex(hex33)
    del doc["faces"][4]["color"]
    with pytest.raises(ColexFormatError, match="face 4"):
        load_colex(doc)


def test_load_reports_bad_fields(hex33):
    doc = save_colex(hex33)
    doc.pop("rotation")
    with pytest.raises(ColexFormatError, match="rotation"):
        load_colex(doc)
    with pytest.raises(ColexFormatError, match="JSON"):
        load_colex("{not json")
    doc2 = save_colex(hex33)
    doc2["edges"][3] = [0, 1]
    with pytest.raises(ColexFormatError, match="edge 3"):
        load_colex(doc2)


def test_load_runs_validation(hex33):
    doc = save_colex(hex33)
    doc["genus"] = 0  # Euler characteristic no longer matches
    with pytest.raises(ColexValidationError, match="euler"):
        load_colex(doc)
    assert load_colex(doc, validate=False).genus == 0


def test_serialization_is_deterministic(hex33):
    assert colex_to_json(hex33) == colex_to_json(build_hexagonal_torus(3, 3))
    assert json.loads(colex_to_json(hex33)) == save_colex(hex33)
