"""Stabilizer generator sets for color codes and surface codes.

Generator lists are kept over-complete, one per face (or vertex) with
provenance, because decoding and the verification suites need to know which
face each generator came from.  Reduced bases are derived on demand.

Generator order is fixed and documented:
  color code:   all B_f^X in face order, then all B_f^Z in face order;
  surface code: all A_v in vertex order, then all B_f in face order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .colex import Colex, colex_fingerprint
from .contraction import SurfaceGraph
from .symplectic import Gf2Matrix, PauliOp, Space, rank as gf2_rank

_MAX_DISTANCE_QUBITS = 24


def color_space(g: Colex) -> Space:
    return Space(f"colex:{colex_fingerprint(g)[:12]}", g.n)


def surface_space(sg: SurfaceGraph) -> Space:
    return Space(
        f"tau[{sg.color.value}]:{sg.parent_fingerprint[:12]}", sg.n_edges
    )


@dataclass(frozen=True, eq=False)
class StabilizerCode:
    """Ordered generators over a qubit space, with per-generator provenance."""

    space: Space
    generators: tuple[PauliOp, ...]
    kind: str  # "color" | "surface"
    provenance: tuple[tuple[str, int], ...]

    def __post_init__(self):
        if len(self.generators) != len(self.provenance):
            raise ValueError("provenance must parallel the generator list")

    @property
    def n(self) -> int:
        return self.space.n

    def generator_matrix(self) -> Gf2Matrix:
        """Rows are (x|z) vectors of the generators."""
        dense = np.stack([p.vector() for p in self.generators])
        return Gf2Matrix.from_dense(dense)

    def syndrome_matrix(self) -> Gf2Matrix:
        """Rows are (z|x) vectors: syndrome(e) = S . (x_e|z_e)."""
        dense = np.stack([np.concatenate([p.z, p.x]) for p in self.generators])
        return Gf2Matrix.from_dense(dense)

    def rank(self) -> int:
        return gf2_rank(self.generator_matrix())

    @property
    def k(self) -> int:
        return self.n - self.rank()


def color_code(g: Colex) -> StabilizerCode:
    """X- and Z-type face generators of the color code hosted by g."""
    space = color_space(g)
    gens: list[PauliOp] = []
    prov: list[tuple[str, int]] = []
    for kind in ("X", "Z"):
        for f, (boundary, _) in enumerate(g.faces):
            if kind == "X":
                gens.append(PauliOp.from_support(space, xs=boundary))
            else:
                gens.append(PauliOp.from_support(space, zs=boundary))
            prov.append((kind, f))
    return StabilizerCode(space, tuple(gens), "color", tuple(prov))


def surface_code(sg: SurfaceGraph) -> StabilizerCode:
    """Vertex (X-type) and face (Z-type) generators on the edges of sg.

    Incidences are counted with multiplicity mod 2: a self-loop contributes
    nothing to its vertex star and an edge traversed twice by one face
    boundary contributes nothing to that face's generator.
    """
    space = surface_space(sg)
    gens: list[PauliOp] = []
    prov: list[tuple[str, int]] = []
    for v in range(sg.n_vertices):
        x = np.zeros(space.n, dtype=np.uint8)
        for d in sg.rotation[v]:
            x[d // 2] ^= 1
        gens.append(PauliOp(space, x, np.zeros(space.n, dtype=np.uint8)))
        prov.append(("A", v))
    for fidx, (_, _, cycle_edges, _) in enumerate(sg.faces):
        z = np.zeros(space.n, dtype=np.uint8)
        for e in cycle_edges:
            z[e] ^= 1
        gens.append(PauliOp(space, np.zeros(space.n, dtype=np.uint8), z))
        prov.append(("B", fidx))
    return StabilizerCode(space, tuple(gens), "surface", tuple(prov))


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int | None  # None = not computed (too large for exhaustive search)


class EchelonBasis:
    """Row-reduced GF(2) basis supporting fast membership and reduction."""

    def __init__(self, m: Gf2Matrix):
        data = m.data.copy()
        pivots = K.row_reduce(data, m.cols)
        self.cols = m.cols
        self.pivots = pivots
        self.rows = data[: len(pivots)].copy()
        self._pivot_words = [(c >> 6, np.uint64(1) << np.uint64(c & 63)) for c in pivots]

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce_packed(self, vec: np.ndarray) -> np.ndarray:
        out = vec.copy()
        for r, (w, bit) in enumerate(self._pivot_words):
            if out[w] & bit:
                out ^= self.rows[r]
        return out

    def contains_packed(self, vec: np.ndarray) -> bool:
        return not self.reduce_packed(vec).any()

    def contains(self, bits: np.ndarray) -> bool:
        return self.contains_packed(K.pack_vec(bits))


def nullspace(m: Gf2Matrix) -> Gf2Matrix:
    """Basis of {x : m x = 0}, one row per free column (deterministic)."""
    data = m.data.copy()
    pivots = K.row_reduce(data, m.cols)
    dense = K.unpack_rows(data, m.cols)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = np.zeros((len(free), m.cols), dtype=np.uint8)
    for t, c in enumerate(free):
        basis[t, c] = 1
        for r, pc in enumerate(pivots):
            if dense[r, c]:
                basis[t, pc] = 1
    return Gf2Matrix.from_dense(basis) if free else Gf2Matrix(0, m.cols)


def logical_basis(code: StabilizerCode) -> list[PauliOp]:
    """2k operators spanning centralizer / stabilizer, by deterministic rank search.

    Representatives are fully reduced against the stabilizer row space, so
    the basis is a pure function of the generator list.
    """
    cent = nullspace(code.syndrome_matrix())
    stab = EchelonBasis(code.generator_matrix())
    out: list[PauliOp] = []
    twon = 2 * code.n
    picked = np.zeros((0, K.words_for(twon)), dtype=np.uint64)
    picked_pivots: list[int] = []
    for row in cent.to_dense():
        vec = stab.reduce_packed(K.pack_vec(row))
        # reduce against already-picked logicals to test independence
        probe = vec.copy()
        for r, c in enumerate(picked_pivots):
            if K.get_bit(probe, c):
                probe ^= picked[r]
        if not probe.any():
            continue
        pivot = next(j for j in range(twon) if K.get_bit(probe, j))
        picked = np.vstack([picked, probe[None, :]])
        picked_pivots.append(pivot)
        out.append(PauliOp.from_vector(code.space, K.unpack_vec(vec, twon)))
    return out


def pauli_weights_packed(words: np.ndarray, n: int) -> np.ndarray:
    """Pauli weights of single-word packed (x|z) vectors (needs 2n <= 64)."""
    x = words & np.uint64((1 << n) - 1)
    z = (words >> np.uint64(n)) & np.uint64((1 << n) - 1)
    return np.bitwise_count(x | z)


def distance(code: StabilizerCode) -> int | None:
    """Exact distance by exhaustive coset search; None when n > 24."""
    if code.n > _MAX_DISTANCE_QUBITS:
        return None
    logicals = logical_basis(code)
    if not logicals:
        return None  # no logical qubits: distance undefined
    stab = EchelonBasis(code.generator_matrix())
    group = np.zeros(1, dtype=np.uint64)
    for row in stab.rows:
        group = np.concatenate([group, group ^ row[0]])
    best = None
    logical_words = [K.pack_vec(p.vector())[0] for p in logicals]
    for mask in range(1, 1 << len(logical_words)):
        rep = np.uint64(0)
        for i, w in enumerate(logical_words):
            if (mask >> i) & 1:
                rep ^= w
        weights = pauli_weights_packed(group ^ rep, code.n)
        w = int(weights.min())
        best = w if best is None else min(best, w)
    return best


def code_params(code: StabilizerCode) -> CodeParams:
    return CodeParams(n=code.n, k=code.k, d=distance(code))


def surface_css_logicals(sg: SurfaceGraph) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """X-type and Z-type logical representatives of the surface code on sg.

    Returned as 0/1 edge-support vectors: X-logicals meet every face
    boundary evenly (cocycles modulo vertex stars), Z-logicals every vertex
    star evenly (cycles modulo face boundaries).
    """
    ne = sg.n_edges
    vert_rows = np.zeros((sg.n_vertices, ne), dtype=np.uint8)
    for v in range(sg.n_vertices):
        for d in sg.rotation[v]:
            vert_rows[v, d // 2] ^= 1
    face_rows = np.zeros((sg.n_faces, ne), dtype=np.uint8)
    for fidx, (_, _, cycle_edges, _) in enumerate(sg.faces):
        for e in cycle_edges:
            face_rows[fidx, e] ^= 1

    def quotient(null_of: np.ndarray, modulo: np.ndarray) -> list[np.ndarray]:
        kernel = nullspace(Gf2Matrix.from_dense(null_of))
        sub = EchelonBasis(Gf2Matrix.from_dense(modulo))
        reps: list[np.ndarray] = []
        picked = np.zeros((0, K.words_for(ne)), dtype=np.uint64)
        pivots: list[int] = []
        for row in kernel.to_dense():
            vec = sub.reduce_packed(K.pack_vec(row))
            probe = vec.copy()
            for r, c in enumerate(pivots):
                if K.get_bit(probe, c):
                    probe ^= picked[r]
            if not probe.any():
                continue
            pivots.append(next(j for j in range(ne) if K.get_bit(probe, j)))
            picked = np.vstack([picked, probe[None, :]])
            reps.append(K.unpack_vec(vec, ne))
        return reps

    lx = quotient(face_rows, vert_rows)
    lz = quotient(vert_rows, face_rows)
    return lx, lz
