"""Map construction and the structural verification suites."""

import numpy as np
import pytest

from colorsurf.codemap import (
    ChargeAssignment,
    MapConventions,
    build_artifact,
    build_frames,
    build_map,
    hopping_operator,
    load_map_file,
    recursion_images,
    save_map_file,
    single_qubit_image_table,
    verify_all,
    verify_commutation,
    verify_counting,
    verify_equivalence,
    verify_hopper_independence,
    verify_invertibility,
    verify_stabilizer_images,
)
from colorsurf.colex import COLORS, Color
from colorsurf.errors import ConventionError, MapFileError
from colorsurf.stabilizers import color_space
from colorsurf.symplectic import (
    Gf2Matrix,
    PauliOp,
    apply,
    is_symplectic,
    rank,
    symplectic_product,
)

LATTICE_NAMES = ["hex33", "hex63", "hex66", "sqoct2", "sqoct4"]


def test_charge_assignment_pairing():
    ca = ChargeAssignment(Color.R)
    assert ca.electric_1 == ("electric", Color.R)
    assert ca.magnetic_1 == ("magnetic", Color.G)
    assert ca.electric_2 == ("magnetic", Color.R)
    assert ca.magnetic_2 == ("electric", Color.G)


def test_hopping_operator_forms(hex33):
    space = color_space(hex33)
    redges = hex33.edges_of_color(Color.R)
    u, v, _ = hex33.edges[redges[0]]
    elec = hopping_operator(hex33, (u, v), "electric", Color.R)
    assert elec == PauliOp.from_support(space, zs=(u, v))
    mag = hopping_operator(hex33, (u, v), "magnetic", Color.R)
    assert mag == PauliOp.from_support(space, xs=(u, v))
    with pytest.raises(ConventionError, match="colored"):
        hopping_operator(hex33, (u, v), "electric", Color.G)
    with pytest.raises(ConventionError, match="charge"):
        hopping_operator(hex33, (u, v), "vortex", Color.R)


def test_face_movers_compose_to_stabilizer(hex33, hex33_art):
    """Product of the c-edge electric movers around a c''-face = B_f^Z."""
    space = color_space(hex33)
    for frame in hex33_art.frames:
        acc = PauliOp.identity(space)
        for i in range(1, frame.ell + 1):
            u, v = frame.vertices[2 * i - 2], frame.vertices[2 * i - 1]
            acc = acc * hopping_operator(hex33, (u, v), "electric", Color.R)
        assert acc == PauliOp.from_support(space, zs=hex33.faces[frame.face][0])


def test_conventions_default_and_validation(hex33):
    conv = MapConventions.default(hex33, Color.R)
    assert all(1 <= m <= 3 for _, m in conv.dep_x_index)
    assert all(g == "I" for _, g in conv.split_x_g)
    # malformed m rejected
    bad = MapConventions(
        conv.color,
        conv.base_vertex,
        tuple((f, 99) for f, _ in conv.dep_x_index),
        conv.split_x_g,
        conv.split_z_g,
    )
    from colorsurf.contraction import contract

    sg = contract(hex33, Color.R)
    with pytest.raises(ConventionError, match="not in 1"):
        build_frames(hex33, sg, bad)
    # base vertex whose outgoing edge has the wrong color rejected
    f0, v1 = conv.base_vertex[0]
    face_boundary = hex33.faces[f0][0]
    pos = face_boundary.index(v1)
    wrong = face_boundary[(pos + 1) % len(face_boundary)]
    bad2 = MapConventions(
        conv.color,
        ((f0, wrong),) + conv.base_vertex[1:],
        conv.dep_x_index,
        conv.split_x_g,
        conv.split_z_g,
    )
    with pytest.raises(ConventionError, match="must start"):
        build_frames(hex33, sg, bad2)


def test_incompatible_splitter_factors_rejected(hex33):
    conv = MapConventions.default(hex33, Color.R)
    f0 = conv.split_x_g[0][0]
    bad = MapConventions(
        conv.color,
        conv.base_vertex,
        conv.dep_x_index,
        ((f0, "BX"),) + conv.split_x_g[1:],
        conv.split_z_g,  # gz=I is incompatible with gx=BX
    )
    from colorsurf.contraction import contract

    with pytest.raises(ConventionError, match="commute"):
        build_frames(hex33, contract(hex33, Color.R), bad)


def test_conventions_json_roundtrip(hex33):
    conv = MapConventions.random(hex33, Color.G, seed=5)
    doc = conv.to_jsonable()
    assert MapConventions.from_jsonable(doc) == conv


def test_mover_independence_count(default_artifacts):
    """Per face: exactly 4L-2 of the 4L edge movers are independent."""
    for art in default_artifacts.values():
        rep = verify_hopper_independence(art)
        assert rep.ok, str(rep)


def test_build_map_invertible_symplectic_all(default_artifacts):
    for (name, cval), art in default_artifacts.items():
        assert rank(art.map.matrix) == 2 * art.n, (name, cval)
        assert is_symplectic(art.map), (name, cval)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_random_conventions_verify(hex33, sqoct2, seed):
    for g in (hex33, sqoct2):
        for c in COLORS:
            conv = MapConventions.random(g, c, seed=seed)
            art = build_artifact(g, c, conv)
            rep = verify_equivalence(art)
            assert rep.ok, f"{c}: {[str(f) for f in rep.failures]}"


def test_dependent_mover_images(hex33_art):
    """The two dependent movers' images follow from the independent ones.

    Z-mover on (v_2L, v_1): edge-pair X on copy 2 times the face plaquette
    on copy 1 (weight L/2 + 2); X-mover on (v_2m, v_2m+1): edge-pair X on
    copy 1 times the plaquette on copy 2.
    """
    art = hex33_art
    m = art.map
    space = m.domain
    n, n1 = art.n, art.n1
    for frame in art.frames:
        L = 2 * frame.ell
        tau = frame.tau
        dep_z = PauliOp.from_support(space, zs=(frame.vertices[L - 1], frame.vertices[0]))
        img = apply(m, dep_z)
        want = np.zeros(2 * n, dtype=np.uint8)
        want[n1 + tau[0]] ^= 1  # X on copy 2
        want[n1 + tau[L - 1]] ^= 1
        for i in range(1, frame.ell + 1):
            want[n + tau[2 * i - 1]] ^= 1  # Z plaquette on copy 1
        assert img == PauliOp.from_vector(m.codomain, want)
        assert img.weight == frame.ell + 2

        a, b = frame.vertices[2 * frame.m - 1], frame.vertices[(2 * frame.m) % L]
        dep_x = PauliOp.from_support(space, xs=(a, b))
        img_x = apply(m, dep_x)
        want_x = np.zeros(2 * n, dtype=np.uint8)
        want_x[tau[2 * frame.m - 1]] ^= 1  # X pair on copy 1
        want_x[tau[(2 * frame.m) % L]] ^= 1
        for i in range(1, frame.ell + 1):
            want_x[n + n1 + tau[2 * i - 1]] ^= 1  # Z plaquette on copy 2
        assert img_x == PauliOp.from_vector(m.codomain, want_x)


def test_image_separation(hex33_art):
    """Electric movers on c-edges act as copy-1 Z; magnetic as copy-2 Z."""
    art = hex33_art
    for frame in art.frames:
        for i in range(1, frame.ell + 1):
            u, v = frame.vertices[2 * i - 2], frame.vertices[2 * i - 1]
            e_img = apply(art.map, hopping_operator(art.colex, (u, v), "electric", art.color))
            c1, c2 = art.split(e_img)
            assert c2.is_identity and not c1.x.any() and c1.z.sum() == 1
            m_img = apply(art.map, hopping_operator(art.colex, (u, v), "magnetic", art.color))
            d1, d2 = art.split(m_img)
            assert d1.is_identity and not d2.x.any() and d2.z.sum() == 1


def test_splitter_anticommutation_ledger(hex33_art):
    """The splitter preimages anticommute exactly with their partner movers."""
    art = hex33_art
    m = art.map
    space = m.domain
    for frame in art.frames:
        x1 = PauliOp.single(space, frame.vertices[0], "X")
        z_first = PauliOp.from_support(
            space, zs=(frame.vertices[0], frame.vertices[1])
        )
        assert symplectic_product(x1, z_first) == 1
        img_pair = apply(m, z_first)
        img_x1 = apply(m, x1)
        assert symplectic_product(img_x1, img_pair) == 1
        z2m = PauliOp.single(space, frame.vertices[2 * frame.m - 1], "Z")
        partner = PauliOp.from_support(
            space,
            xs=(frame.vertices[2 * frame.m - 2], frame.vertices[2 * frame.m - 1]),
        )
        assert symplectic_product(z2m, partner) == 1
        assert symplectic_product(apply(m, z2m), apply(m, partner)) == 1


def test_single_qubit_images_match_recursions(hex33_art):
    rows = single_qubit_image_table(hex33_art)
    assert len(rows) == 2 * hex33_art.n
    assert all(r.stabilizer_equiv for r in rows)
    assert all(r.exact for r in rows)  # the closed forms hold exactly here


def test_recursion_images_standalone(hex33_art):
    """Seed row of the recursion: X on v1's edge image, copy 1."""
    art = hex33_art
    frame = art.frames[0]
    rec = recursion_images(frame, art.n, art.n1)
    want = np.zeros(2 * art.n, dtype=np.uint8)
    want[frame.tau[0]] = 1
    assert np.array_equal(rec[(frame.vertices[0], "X")], want)


def test_syndrome_equivalence_of_images(hex33_art):
    """Images commute with image stabilizers exactly as preimages did."""
    art = hex33_art
    m = art.map
    gens = art.color_code.generators
    gen_imgs = art.color_gen_images
    for q in range(art.n):
        for kind in ("X", "Z"):
            p = PauliOp.single(m.domain, q, kind)
            img = apply(m, p)
            for gsrc, gimg in zip(gens, gen_imgs):
                assert symplectic_product(p, gsrc) == symplectic_product(img, gimg)


def test_verify_counting_and_equivalence(hex33_art, sqoct2_art):
    for art in (hex33_art, sqoct2_art):
        assert verify_counting(art).ok
        rep = verify_equivalence(art)
        assert rep.ok, str(rep)


def test_verify_flags_tampered_map(hex33):
    art = build_artifact(hex33, Color.R)
    art.map.matrix.data[3] = 0  # zero a row: no longer invertible/symplectic
    assert not verify_invertibility(art).ok
    rep = verify_commutation(art)
    assert not rep.ok
    assert any("form-preserved" in c.name and not c.passed for c in rep.checks)


def test_verify_stabilizer_images_flags_tampering(hex33):
    """A corrupted map matrix must fail the image checks.

    The artifact caches its generator images, so the tampered matrix goes
    into a fresh artifact (artifacts are treated as immutable).
    """
    from colorsurf.codemap import MapArtifact
    from colorsurf.symplectic import SymplecticMap

    art = build_artifact(hex33, Color.R)
    data = art.map.matrix.data.copy()
    data[0] = 0  # kill the x-output of the first pair qubit
    tampered = SymplecticMap(
        Gf2Matrix(2 * art.n, 2 * art.n, data),
        art.map.domain,
        art.map.codomain,
        art.n1,
    )
    bad = MapArtifact(
        art.colex, art.conventions, art.sg, art.frames, tampered, art.basis_change
    )
    rep = verify_stabilizer_images(bad)
    assert not rep.ok


def test_parameter_additivity(default_artifacts):
    for art in default_artifacts.values():
        k_color = art.color_code.k
        assert k_color == 2 * art.surface_code_single.k == 4


def test_map_file_roundtrip(tmp_path, hex33):
    conv = MapConventions.random(hex33, Color.G, seed=9)
    art = build_artifact(hex33, Color.G, conv)
    path = tmp_path / "map.bin"
    save_map_file(art, str(path))
    loaded = load_map_file(str(path))
    assert loaded.map == art.map
    assert loaded.conventions == art.conventions
    assert loaded.basis_change == art.basis_change
    assert loaded.colex == art.colex
    assert verify_all(loaded).ok


def test_map_file_mismatch_detected(tmp_path, hex33, hex66):
    from colorsurf.codemap import check_map_matches_colex

    art = build_artifact(hex33, Color.R)
    path = tmp_path / "map.bin"
    save_map_file(art, str(path))
    loaded = load_map_file(str(path))
    with pytest.raises(MapFileError, match="different lattice"):
        check_map_matches_colex(loaded, hex66)


def test_map_file_rejects_garbage(tmp_path):
    path = tmp_path / "bad.bin"
    path.write_bytes(b"not a map artifact")
    with pytest.raises(MapFileError, match="magic"):
        load_map_file(str(path))


def test_basis_change_pushes_syndromes(hex33_art):
    """basis_change rows rebuild every canonical generator from images."""
    art = hex33_art
    got = art.basis_change @ art.image_gen_matrix
    assert got == art.pair_gen_matrix
