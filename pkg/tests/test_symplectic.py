"""Binary symplectic algebra: products, GF(2) matrices, map application."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from colorsurf.errors import SingularMatrixError, SpaceMismatchError
from colorsurf.symplectic import (
    Gf2Matrix,
    PauliOp,
    Space,
    SymplecticMap,
    apply,
    invert,
    is_symplectic,
    preimage,
    rank,
    solve,
    symplectic_form,
    symplectic_product,
)

SP4 = Space("test", 4)


def test_single_qubit_anticommutation():
    assert symplectic_product(PauliOp.single(SP4, 0, "X"), PauliOp.single(SP4, 0, "Z")) == 1
    assert symplectic_product(PauliOp.single(SP4, 0, "X"), PauliOp.single(SP4, 1, "Z")) == 0


def test_odd_overlap_anticommutes():
    zz = PauliOp.from_support(SP4, zs=(0, 1))
    xx = PauliOp.from_support(SP4, xs=(1, 2))
    assert symplectic_product(zz, xx) == 1
    xx2 = PauliOp.from_support(SP4, xs=(0, 1))
    assert symplectic_product(zz, xx2) == 0


def test_space_mismatch_rejected():
    other = Space("other", 4)
    with pytest.raises(SpaceMismatchError):
        symplectic_product(PauliOp.identity(SP4), PauliOp.identity(other))
    with pytest.raises(SpaceMismatchError):
        PauliOp.identity(SP4) * PauliOp.identity(other)


def test_pauli_string_roundtrip():
    p = PauliOp.from_string(SP4, "IXZY")
    assert p.to_string() == "IXZY"
    assert p.weight == 3
    assert (p * p).is_identity
    with pytest.raises(ValueError):
        PauliOp.from_string(SP4, "IXQZ")
    with pytest.raises(ValueError):
        PauliOp.from_string(SP4, "IX")


def test_identity_iff_zero_bits():
    p = PauliOp.identity(SP4)
    assert p.is_identity and p.weight == 0
    assert PauliOp.single(SP4, 2, "Y").weight == 1


def test_rank_and_invert_identity():
    eye = Gf2Matrix.identity(4)
    assert rank(eye) == 4
    assert invert(eye) == eye


def test_rank_with_equal_rows():
    m = Gf2Matrix.from_dense([[1, 0, 1], [1, 0, 1], [0, 1, 0]])
    assert rank(m) == 2
    with pytest.raises(SingularMatrixError):
        invert(Gf2Matrix.from_dense([[1, 1], [1, 1]]))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_invert_roundtrip_random(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 12))
    while True:
        dense = rng.integers(0, 2, size=(n, n)).astype(np.uint8)
        m = Gf2Matrix.from_dense(dense)
        if rank(m) == n:
            break
    inv = invert(m)
    assert inv @ m == Gf2Matrix.identity(n)
    assert m @ inv == Gf2Matrix.identity(n)


def test_solve_consistent_and_inconsistent():
    m = Gf2Matrix.from_dense([[1, 1, 0], [0, 1, 1]])
    x = solve(m, np.array([1, 0], dtype=np.uint8))
    assert x is not None
    assert np.array_equal(m.mat_vec(x), [1, 0])
    # inconsistent: duplicate equation with conflicting rhs
    m2 = Gf2Matrix.from_dense([[1, 0], [1, 0]])
    assert solve(m2, np.array([1, 0], dtype=np.uint8)) is None
    # matrix rhs
    rhs = np.array([[1, 0], [0, 1]], dtype=np.uint8)
    xs = solve(m, rhs)
    assert xs is not None and xs.shape == (3, 2)


def _swap_map(n):
    zero = np.zeros((n, n), dtype=np.uint8)
    eye = np.eye(n, dtype=np.uint8)
    mat = Gf2Matrix.from_dense(np.block([[zero, eye], [eye, zero]]))
    sp = Space("swap", n)
    return SymplecticMap(mat, sp, Space("swap-out", n), n // 2)


def test_is_symplectic_cases():
    n = 3
    sp = Space("idmap", n)
    ident = SymplecticMap(Gf2Matrix.identity(2 * n), sp, Space("idmap-out", n), 1)
    assert is_symplectic(ident)
    assert is_symplectic(_swap_map(4))
    broken = Gf2Matrix.identity(2 * n)
    broken.data[0] = 0
    assert not is_symplectic(SymplecticMap(broken, sp, Space("idmap-out", n), 1))


def test_apply_linearity_and_roundtrip(hex33_art):
    m = hex33_art.map
    dom = m.domain
    ident = PauliOp.identity(dom)
    assert apply(m, ident).is_identity
    rng = np.random.default_rng(101)
    for _ in range(100):
        a = PauliOp.from_vector(dom, rng.integers(0, 2, size=2 * dom.n).astype(np.uint8))
        b = PauliOp.from_vector(dom, rng.integers(0, 2, size=2 * dom.n).astype(np.uint8))
        assert apply(m, a * b) == apply(m, a) * apply(m, b)
        assert preimage(m, apply(m, a)) == a
        assert symplectic_product(a, b) == symplectic_product(apply(m, a), apply(m, b))


def test_apply_rejects_wrong_space(hex33_art):
    with pytest.raises(SpaceMismatchError):
        apply(hex33_art.map, PauliOp.identity(Space("nope", hex33_art.n)))
    with pytest.raises(SpaceMismatchError):
        preimage(hex33_art.map, PauliOp.identity(hex33_art.map.domain))


def test_symplectic_form_shape():
    lam = symplectic_form(3)
    dense = lam.to_dense()
    assert dense.shape == (6, 6)
    assert np.array_equal(dense[:3, 3:], np.eye(3, dtype=np.uint8))
    assert np.array_equal(dense[3:, :3], np.eye(3, dtype=np.uint8))
    assert not dense[:3, :3].any() and not dense[3:, 3:].any()


def test_matrix_dump_and_eq():
    m = Gf2Matrix.from_dense([[1, 0], [1, 1]])
    assert m.dump().splitlines() == ["10", "11"]
    assert m == Gf2Matrix.from_dense([[1, 0], [1, 1]])
    assert m != Gf2Matrix.from_dense([[1, 1], [1, 1]])
