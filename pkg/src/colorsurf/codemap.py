"""Construction and verification of the color-to-surface symplectic map.

The map is assembled face by face over the faces of the third color c''
(with contraction color c and its cyclic successor c'):

  * boundary vertices of each c''-face are labeled v_1 .. v_{2L} following
    the stored face orientation, starting so that (v_1, v_2) is a c-edge;
  * the two-qubit charge movers along the face's edges get fixed images on
    the two surface-code copies (Z-pairs on c-edges map to single edge Z's,
    X-pairs on c'-edges map to edge-pair X's, with one mover of each type
    left dependent);
  * two single-qubit splitters complete a basis of the face's local Pauli
    group, and every single-qubit image follows by GF(2) elimination.

The dependent-mover positions, the base vertex, and the optional stabilizer
factors g on the splitters are conventions; any valid choice produces an
invertible, commutation-preserving map, and the verification suite is
convention-independent.  A second, recursion-based construction of the same
single-qubit images is kept as an independent cross-check.
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels as K
from .colex import Color, Colex, colex_fingerprint, load_colex, save_colex
from .contraction import SurfaceGraph, contract, surface_dual_check
from .errors import (
    ColexValidationError,
    ConventionError,
    MapConsistencyError,
    MapFileError,
    SingularMatrixError,
)
from .report import ValidationReport
from .stabilizers import (
    EchelonBasis,
    StabilizerCode,
    color_code,
    color_space,
    surface_code,
)
from .symplectic import (
    Gf2Matrix,
    PauliOp,
    Space,
    SymplecticMap,
    apply,
    invert,
    is_symplectic,
    rank,
    solve,
    symplectic_product,
)

SPLIT_X_CHOICES = ("I", "BX", "BY", "BZ")
SPLIT_Z_CHOICES = ("I", "BX", "BY", "BZ")

# The splitter factors are not independent: their composites must commute
# because the splitter images land on different copies.  The X-splitter
# factor drawn first fixes which Z-splitter factors remain available.
COMPATIBLE_SPLIT_Z = {
    "I": ("I", "BX"),
    "BZ": ("I", "BX"),
    "BX": ("BZ", "BY"),
    "BY": ("BZ", "BY"),
}


@dataclass(frozen=True)
class ChargeAssignment:
    """How the four independent color-code charges land on the two copies.

    Electric/magnetic excitations on c-faces become the electric charges of
    copies 1 and 2; the magnetic/electric excitations on c'-faces become
    their magnetic partners.  This is the unique pairing compatible with
    the commutation relations of the charge movers.
    """

    color: Color

    @property
    def electric_1(self) -> tuple[str, Color]:
        return ("electric", self.color)

    @property
    def magnetic_1(self) -> tuple[str, Color]:
        return ("magnetic", self.color.next)

    @property
    def electric_2(self) -> tuple[str, Color]:
        return ("magnetic", self.color)

    @property
    def magnetic_2(self) -> tuple[str, Color]:
        return ("electric", self.color.next)


def hopping_operator(
    g: Colex, edge: tuple[int, int], charge: str, color: Color
) -> PauliOp:
    """Two-qubit Pauli moving a charge of the given color along an edge.

    The edge must carry the charge's color (a c-colored edge is the one
    joining two c-colored faces).  Electric movers are Z-type, magnetic
    movers X-type; both are supported exactly on the edge's endpoints.
    """
    u, v = edge
    e = g.boundary_edge(u, v)
    actual = g.edges[e][2]
    if actual is not color:
        raise ConventionError(
            f"edge ({u},{v}) is {actual}-colored; a {color}-charge cannot move along it"
        )
    space = color_space(g)
    if charge == "electric":
        return PauliOp.from_support(space, zs=(u, v))
    if charge == "magnetic":
        return PauliOp.from_support(space, xs=(u, v))
    raise ConventionError(f"charge must be 'electric' or 'magnetic', got {charge!r}")


# ---------------------------------------------------------------------------
# Conventions and face frames
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MapConventions:
    """Per-face choices that pin the map down exactly.

    For every c''-face: which boundary vertex is v_1 (its outgoing stored
    edge must be c-colored), the index m of the c'-edge (v_2m, v_2m+1)
    carrying the dependent X-type mover (the dependent Z-type mover is
    always on (v_2L, v_1)), and the stabilizer factors g on the two
    splitters.
    """

    color: Color
    base_vertex: tuple[tuple[int, int], ...]
    dep_x_index: tuple[tuple[int, int], ...]
    split_x_g: tuple[tuple[int, str], ...]
    split_z_g: tuple[tuple[int, str], ...]

    def base_vertex_map(self) -> dict[int, int]:
        return dict(self.base_vertex)

    def dep_x_map(self) -> dict[int, int]:
        return dict(self.dep_x_index)

    def gx_map(self) -> dict[int, str]:
        return dict(self.split_x_g)

    def gz_map(self) -> dict[int, str]:
        return dict(self.split_z_g)

    @staticmethod
    def _cc_faces(g: Colex, color: Color):
        return g.faces_of_color(color.next.next)

    @classmethod
    def default(cls, g: Colex, color: Color) -> "MapConventions":
        """Deterministic defaults: lowest valid base vertex, m = L, g = I."""
        base, depx, gxs, gzs = [], [], [], []
        for f in cls._cc_faces(g, color):
            boundary, _ = g.faces[f]
            starts = _valid_starts(g, f, color)
            base.append((f, min(boundary[t] for t in starts)))
            depx.append((f, len(boundary) // 2))
            gxs.append((f, "I"))
            gzs.append((f, "I"))
        return cls(color, tuple(base), tuple(depx), tuple(gxs), tuple(gzs))

    @classmethod
    def random(cls, g: Colex, color: Color, seed: int) -> "MapConventions":
        """Seeded random valid conventions (for convention-independence tests)."""
        rng = np.random.default_rng(seed)
        base, depx, gxs, gzs = [], [], [], []
        for f in cls._cc_faces(g, color):
            boundary, _ = g.faces[f]
            starts = _valid_starts(g, f, color)
            t = starts[rng.integers(0, len(starts))]
            base.append((f, boundary[t]))
            depx.append((f, 1 + int(rng.integers(0, len(boundary) // 2))))
            gx = SPLIT_X_CHOICES[rng.integers(0, 4)]
            gxs.append((f, gx))
            gzs.append((f, COMPATIBLE_SPLIT_Z[gx][rng.integers(0, 2)]))
        return cls(color, tuple(base), tuple(depx), tuple(gxs), tuple(gzs))

    def to_jsonable(self) -> dict:
        faces = {}
        depx, gx, gz = self.dep_x_map(), self.gx_map(), self.gz_map()
        for f, v1 in self.base_vertex:
            faces[str(f)] = {"v1": v1, "m": depx[f], "gx": gx[f], "gz": gz[f]}
        return {"color": self.color.value, "faces": faces}

    @classmethod
    def from_jsonable(cls, doc: dict) -> "MapConventions":
        color = Color.parse(doc["color"])
        base, depx, gxs, gzs = [], [], [], []
        for key, rec in doc["faces"].items():
            f = int(key)
            base.append((f, int(rec["v1"])))
            depx.append((f, int(rec["m"])))
            gxs.append((f, str(rec["gx"])))
            gzs.append((f, str(rec["gz"])))
        base.sort()
        depx.sort()
        gxs.sort()
        gzs.sort()
        return cls(color, tuple(base), tuple(depx), tuple(gxs), tuple(gzs))


def _valid_starts(g: Colex, f: int, color: Color) -> list[int]:
    """Boundary positions whose outgoing stored edge is c-colored."""
    boundary, _ = g.faces[f]
    out = []
    for t in range(len(boundary)):
        e = g.boundary_edge(boundary[t], boundary[(t + 1) % len(boundary)])
        if g.edges[e][2] is color:
            out.append(t)
    return out


@dataclass(frozen=True)
class FaceFrame:
    """A c''-face with its boundary labeled v_1..v_2L per the conventions.

    vertices[p] is v_{p+1}; tau[p] is the surface-edge id of that vertex's
    c-edge (so tau[2i-2] == tau[2i-1]: c-edge endpoints share their image).
    """

    face: int
    vertices: tuple[int, ...]
    tau: tuple[int, ...]
    m: int
    gx: str
    gz: str

    @property
    def ell(self) -> int:
        return len(self.vertices) // 2


def build_frames(g: Colex, sg: SurfaceGraph, conv: MapConventions) -> list[FaceFrame]:
    if conv.color is not sg.color:
        raise ConventionError(
            f"conventions are for color {conv.color}, surface graph for {sg.color}"
        )
    cc = conv.color.next.next
    faces = g.faces_of_color(cc)
    base = conv.base_vertex_map()
    depx = conv.dep_x_map()
    gxm = conv.gx_map()
    gzm = conv.gz_map()
    missing = [f for f in faces if f not in base or f not in depx]
    if missing:
        raise ConventionError(f"conventions missing entries for {cc}-face {missing[0]}")
    frames = []
    for f in faces:
        boundary, _ = g.faces[f]
        v1 = base[f]
        if v1 not in boundary:
            raise ConventionError(f"base vertex {v1} is not on face {f}")
        t0 = boundary.index(v1)
        verts = boundary[t0:] + boundary[:t0]
        first_edge = g.boundary_edge(verts[0], verts[1])
        if g.edges[first_edge][2] is not conv.color:
            raise ConventionError(
                f"base vertex {v1} of face {f} starts a "
                f"{g.edges[first_edge][2]}-colored edge; must start a {conv.color}-edge"
            )
        ell = len(verts) // 2
        m = depx[f]
        if not (1 <= m <= ell):
            raise ConventionError(f"face {f}: dependent X index {m} not in 1..{ell}")
        gx = gxm.get(f, "I")
        gz = gzm.get(f, "I")
        if gx not in SPLIT_X_CHOICES:
            raise ConventionError(f"face {f}: X-splitter factor {gx!r} not in {SPLIT_X_CHOICES}")
        if gz not in SPLIT_Z_CHOICES:
            raise ConventionError(f"face {f}: Z-splitter factor {gz!r} not in {SPLIT_Z_CHOICES}")
        if gz not in COMPATIBLE_SPLIT_Z[gx]:
            raise ConventionError(
                f"face {f}: splitter factors (gx={gx}, gz={gz}) do not commute as a "
                f"pair; with gx={gx} the Z-splitter factor must be one of "
                f"{COMPATIBLE_SPLIT_Z[gx]}"
            )
        tau = tuple(sg.tau_vertex[w] for w in verts)
        frames.append(FaceFrame(f, verts, tau, m, gx, gz))
    return frames


# ---------------------------------------------------------------------------
# Map assembly
# ---------------------------------------------------------------------------

def pair_space(sg: SurfaceGraph) -> Space:
    return Space(
        f"tau[{sg.color.value}]^2:{sg.parent_fingerprint[:12]}", 2 * sg.n_edges
    )


def _pair_x(vec: np.ndarray, n: int, n1: int, copy: int, edge: int) -> None:
    vec[edge if copy == 1 else n1 + edge] ^= 1


def _pair_z(vec: np.ndarray, n: int, n1: int, copy: int, edge: int) -> None:
    vec[n + (edge if copy == 1 else n1 + edge)] ^= 1


def _face_basis(frame: FaceFrame, n: int, n1: int):
    """Local basis rows (4L x 4L) and their global image rows (4L x 2n).

    Local coordinates: position p carries x at p and z at 2L+p.
    Basis order: Z-movers on c-edges, X-movers on c-edges, Z-movers on
    c'-edges (skipping the dependent (v_2L, v_1)), X-movers on c'-edges
    (skipping index m), X-splitter, Z-splitter.
    """
    L = 2 * frame.ell
    dim = 2 * L
    tau = frame.tau
    basis = []
    images = []

    def local(xs=(), zs=()):
        row = np.zeros(dim, dtype=np.uint8)
        for p in xs:
            row[p] ^= 1
        for p in zs:
            row[L + p] ^= 1
        return row

    def image(x_hits=(), z_hits=()):
        row = np.zeros(2 * n, dtype=np.uint8)
        for copy, e in x_hits:
            _pair_x(row, n, n1, copy, e)
        for copy, e in z_hits:
            _pair_z(row, n, n1, copy, e)
        return row

    for i in range(1, frame.ell + 1):
        a, b = 2 * i - 2, 2 * i - 1
        basis.append(local(zs=(a, b)))
        images.append(image(z_hits=[(1, tau[b])]))
    for i in range(1, frame.ell + 1):
        a, b = 2 * i - 2, 2 * i - 1
        basis.append(local(xs=(a, b)))
        images.append(image(z_hits=[(2, tau[b])]))
    for i in range(1, frame.ell):
        a, b = 2 * i - 1, 2 * i
        basis.append(local(zs=(a, b)))
        images.append(image(x_hits=[(2, tau[a]), (2, tau[b])]))
    for i in range(1, frame.ell + 1):
        if i == frame.m:
            continue
        a, b = 2 * i - 1, (2 * i) % L
        basis.append(local(xs=(a, b)))
        images.append(image(x_hits=[(1, tau[a]), (1, tau[b])]))

    all_pos = tuple(range(L))
    gx_extra = {
        "I": local(),
        "BX": local(xs=all_pos),
        "BY": local(xs=all_pos, zs=all_pos),
        "BZ": local(zs=all_pos),
    }
    basis.append(local(xs=(0,)) ^ gx_extra[frame.gx])
    images.append(image(x_hits=[(1, tau[0])]))
    basis.append(local(zs=(2 * frame.m - 1,)) ^ gx_extra[frame.gz])
    images.append(image(x_hits=[(2, tau[2 * frame.m - 1])]))

    return np.stack(basis), np.stack(images)


def _sp_gram(rows: np.ndarray, nq: int) -> np.ndarray:
    """Pairwise symplectic products of (x|z) rows over nq qubits."""
    x, z = rows[:, :nq].astype(np.int64), rows[:, nq:].astype(np.int64)
    return (x @ z.T + z @ x.T) % 2


def _assemble_matrix(g: Colex, frames: list[FaceFrame], n1: int) -> np.ndarray:
    n = g.n
    M = np.zeros((2 * n, 2 * n), dtype=np.uint8)
    written = np.zeros(n, dtype=bool)
    for frame in frames:
        basis, images = _face_basis(frame, n, n1)
        if not np.array_equal(_sp_gram(basis, 2 * frame.ell), _sp_gram(images, n)):
            raise MapConsistencyError(
                f"face {frame.face}: mover/splitter images do not reproduce the "
                "commutation pattern of their preimages"
            )
        bmat = Gf2Matrix.from_dense(basis)
        try:
            binv = invert(bmat)
        except SingularMatrixError as exc:
            raise MapConsistencyError(
                f"face {frame.face}: local mover basis is singular ({exc}); "
                "this indicates a construction bug"
            ) from exc
        single_images = (binv @ Gf2Matrix.from_dense(images)).to_dense()
        L = 2 * frame.ell
        for p, w in enumerate(frame.vertices):
            if written[w]:
                raise MapConsistencyError(f"vertex {w} covered by two faces")
            written[w] = True
            M[:, w] = single_images[p]
            M[:, n + w] = single_images[L + p]
    if not written.all():
        missing = int(np.nonzero(~written)[0][0])
        raise MapConsistencyError(f"vertex {missing} not covered by any face")
    return M


def build_map(g: Colex, conv: MapConventions) -> SymplecticMap:
    """Construct the symplectic map for g under the given conventions."""
    sg = contract(g, conv.color)
    frames = build_frames(g, sg, conv)
    M = _assemble_matrix(g, frames, sg.n_edges)
    return SymplecticMap(
        matrix=Gf2Matrix.from_dense(M),
        domain=color_space(g),
        codomain=pair_space(sg),
        n1=sg.n_edges,
    )


# ---------------------------------------------------------------------------
# Recursion-based images (independent of the solver)
# ---------------------------------------------------------------------------

def recursion_images(frame: FaceFrame, n: int, n1: int) -> dict[tuple[int, str], np.ndarray]:
    """Single-qubit images from the per-face recurrences, as (x|z) vectors.

    This is a direct transcription of the closed-form recursions seeded at
    v_1 (and, when m < L/2, at v_2L for the X side), with the splitter
    stabilizer factors folded in through their mover-product images.  It
    never consults the assembled matrix, so it cross-checks the solver.
    """
    L = 2 * frame.ell
    tau = frame.tau
    m = frame.m

    def zero():
        return np.zeros(2 * n, dtype=np.uint8)

    def x_on(copy, e):
        v = zero()
        _pair_x(v, n, n1, copy, e)
        return v

    def z_on(copy, e):
        v = zero()
        _pair_z(v, n, n1, copy, e)
        return v

    # Images of the face stabilizers, straight from the c-edge movers.
    plaq1 = zero()
    plaq2 = zero()
    for i in range(1, frame.ell + 1):
        plaq1 ^= z_on(1, tau[2 * i - 1])
        plaq2 ^= z_on(2, tau[2 * i - 1])
    g_image = {"I": zero(), "BX": plaq2, "BZ": plaq1, "BY": plaq1 ^ plaq2}

    imgZ: dict[int, np.ndarray] = {}
    imgX: dict[int, np.ndarray] = {}

    seed = x_on(2, tau[0]) ^ g_image[frame.gz]
    for i in range(1, m + 1):
        seed = seed ^ z_on(1, tau[2 * i - 1])
    imgZ[0] = seed
    for p in range(1, L):
        if p % 2 == 1:  # v_{2j} from v_{2j-1}
            imgZ[p] = imgZ[p - 1] ^ z_on(1, tau[p])
        else:  # v_{2j-1} from v_{2j-2}
            imgZ[p] = imgZ[p - 1] ^ x_on(2, tau[p - 1]) ^ x_on(2, tau[p])

    imgX[0] = x_on(1, tau[0]) ^ g_image[frame.gx]
    for p in range(1, 2 * m):
        if p % 2 == 1:
            imgX[p] = imgX[p - 1] ^ z_on(2, tau[p])
        else:
            imgX[p] = imgX[p - 1] ^ x_on(1, tau[p - 1]) ^ x_on(1, tau[p])
    if m < frame.ell:
        imgX[L - 1] = x_on(1, tau[L - 1]) ^ g_image[frame.gx]
        imgX[L - 2] = imgX[L - 1] ^ z_on(2, tau[L - 1])
        for p in range(L - 3, 2 * m - 1, -1):
            if p % 2 == 0:  # odd label v_{2j-1}: step back through the c-edge
                imgX[p] = imgX[p + 1] ^ z_on(2, tau[p + 1])
            else:  # even label v_{2j}: step back through the c'-edge pair
                imgX[p] = imgX[p + 1] ^ x_on(1, tau[p]) ^ x_on(1, tau[p + 1])

    out: dict[tuple[int, str], np.ndarray] = {}
    for p, w in enumerate(frame.vertices):
        out[(w, "X")] = imgX[p]
        out[(w, "Z")] = imgZ[p]
    return out


# ---------------------------------------------------------------------------
# The built artifact: map + codes + syndrome basis change
# ---------------------------------------------------------------------------

class MapArtifact:
    """Everything produced by one build: lattice, contraction, map, codes.

    The basis change expresses each canonical surface generator (both
    copies) as the GF(2) combination of color-generator images with the
    same syndrome action, so color syndromes push forward by one
    matrix-vector product.
    """

    def __init__(
        self,
        colex: Colex,
        conventions: MapConventions,
        sg: SurfaceGraph,
        frames: list[FaceFrame],
        smap: SymplecticMap,
        basis_change: Gf2Matrix,
    ):
        self.colex = colex
        self.conventions = conventions
        self.color = conventions.color
        self.sg = sg
        self.frames = frames
        self.map = smap
        self.basis_change = basis_change

    @cached_property
    def color_code(self) -> StabilizerCode:
        return color_code(self.colex)

    @cached_property
    def surface_code_single(self) -> StabilizerCode:
        return surface_code(self.sg)

    @property
    def n(self) -> int:
        return self.colex.n

    @property
    def n1(self) -> int:
        return self.sg.n_edges

    @cached_property
    def pair_generators(self) -> tuple[PauliOp, ...]:
        """copy-1 A_v, copy-1 B_f, copy-2 A_v, copy-2 B_f."""
        out = []
        for copy in (1, 2):
            for p in self.surface_code_single.generators:
                out.append(self.embed(p, copy))
        return tuple(out)

    @cached_property
    def pair_provenance(self) -> tuple[tuple[int, str, int], ...]:
        out = []
        for copy in (1, 2):
            for tag, idx in self.surface_code_single.provenance:
                out.append((copy, tag, idx))
        return tuple(out)

    def embed(self, p: PauliOp, copy: int) -> PauliOp:
        """Lift a single-copy operator onto the pair space."""
        n1 = self.n1
        x = np.zeros(2 * n1, dtype=np.uint8)
        z = np.zeros(2 * n1, dtype=np.uint8)
        sl = slice(0, n1) if copy == 1 else slice(n1, 2 * n1)
        x[sl] = p.x
        z[sl] = p.z
        return PauliOp(self.map.codomain, x, z)

    def split(self, p: PauliOp) -> tuple[PauliOp, PauliOp]:
        """Split a pair-space operator into its two single-copy parts."""
        n1 = self.n1
        space = self.surface_code_single.space
        return (
            PauliOp(space, p.x[:n1], p.z[:n1]),
            PauliOp(space, p.x[n1:], p.z[n1:]),
        )

    @cached_property
    def color_gen_images(self) -> tuple[PauliOp, ...]:
        return tuple(apply(self.map, p) for p in self.color_code.generators)

    @cached_property
    def pair_gen_matrix(self) -> Gf2Matrix:
        dense = np.stack([p.vector() for p in self.pair_generators])
        return Gf2Matrix.from_dense(dense)

    @cached_property
    def image_gen_matrix(self) -> Gf2Matrix:
        dense = np.stack([p.vector() for p in self.color_gen_images])
        return Gf2Matrix.from_dense(dense)

    @cached_property
    def pair_stab_echelon(self) -> EchelonBasis:
        return EchelonBasis(self.pair_gen_matrix)

    @cached_property
    def color_stab_echelon(self) -> EchelonBasis:
        return EchelonBasis(self.color_code.generator_matrix())

    def fingerprint(self) -> str:
        return colex_fingerprint(self.colex)


def _compute_basis_change(art_images: Gf2Matrix, pair_gens: Gf2Matrix) -> Gf2Matrix:
    """Rows: each pair generator as a combination of color-generator images."""
    sol = solve(art_images.transpose(), pair_gens.to_dense().T)
    if sol is None:
        raise MapConsistencyError(
            "surface generators are not spanned by the color-generator images"
        )
    return Gf2Matrix.from_dense(sol.T)


def build_artifact(
    g: Colex,
    color: Color = Color.R,
    conventions: MapConventions | None = None,
) -> MapArtifact:
    """Contract, build the map, and precompute the syndrome basis change."""
    if conventions is None:
        conventions = MapConventions.default(g, color)
    elif conventions.color is not color:
        raise ConventionError(
            f"conventions carry color {conventions.color}, requested {color}"
        )
    sg = contract(g, color)
    frames = build_frames(g, sg, conventions)
    M = _assemble_matrix(g, frames, sg.n_edges)
    smap = SymplecticMap(
        matrix=Gf2Matrix.from_dense(M),
        domain=color_space(g),
        codomain=pair_space(sg),
        n1=sg.n_edges,
    )
    art = MapArtifact(g, conventions, sg, frames, smap, Gf2Matrix(0, 0))
    art.basis_change = _compute_basis_change(art.image_gen_matrix, art.pair_gen_matrix)
    return art


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------

def verify_counting(art: MapArtifact) -> ValidationReport:
    """Vertex/edge/face counts of the contraction, plus the dual checks."""
    rep = ValidationReport()
    g, sg = art.colex, art.sg
    fc = g.face_counts()
    c = art.color
    cp, cpp = c.others()
    rep.add(
        "vertices-count",
        sg.n_vertices == fc[c],
        f"|V| = {sg.n_vertices}, {c}-faces = {fc[c]}",
    )
    rep.add(
        "edges-count",
        sg.n_edges == g.n // 2,
        f"|E| = {sg.n_edges}, n/2 = {g.n // 2}",
    )
    rep.add(
        "faces-count",
        sg.n_faces == fc[cp] + fc[cpp],
        f"|F| = {sg.n_faces}, {cp}+{cpp} faces = {fc[cp] + fc[cpp]}",
    )
    rep.extend(surface_dual_check(sg), prefix="dual/")
    return rep


def _hopper_vectors(art: MapArtifact, frame: FaceFrame):
    """(x|z) vectors of all 4L elementary movers along the face's edges."""
    n = art.n
    L = 2 * frame.ell
    rows = []
    for t in range(L):
        a, b = frame.vertices[t], frame.vertices[(t + 1) % L]
        for kind in ("Z", "X"):
            vec = np.zeros(2 * n, dtype=np.uint8)
            if kind == "Z":
                vec[n + a] ^= 1
                vec[n + b] ^= 1
            else:
                vec[a] ^= 1
                vec[b] ^= 1
            rows.append(vec)
    return np.stack(rows)


def verify_hopper_independence(art: MapArtifact) -> ValidationReport:
    """Per c''-face: exactly 4L-2 of the 4L elementary movers are independent."""
    rep = ValidationReport()
    mt = art.map.matrix.transpose()
    for frame in art.frames:
        L = 2 * frame.ell
        rows = _hopper_vectors(art, frame)
        dom_rank = rank(Gf2Matrix.from_dense(rows))
        img_rows = K.matmul(K.pack_rows(rows), 2 * art.n, mt.data)
        img_rank = len(K.row_reduce(img_rows, 2 * art.n))
        want = 2 * L - 2
        rep.add(
            f"face-{frame.face}-mover-rank",
            dom_rank == want and img_rank == want,
            f"domain rank {dom_rank}, image rank {img_rank}, expected {want}",
        )
    return rep


def verify_invertibility(art: MapArtifact) -> ValidationReport:
    rep = ValidationReport()
    r = rank(art.map.matrix)
    rep.add("matrix-rank", r == 2 * art.n, f"rank {r} of {2 * art.n}")
    return rep


def verify_commutation(
    art: MapArtifact, samples: int = 1000, seed: int = 2024, exhaustive_limit: int = 200
) -> ValidationReport:
    """The form-preservation identity, plus pairwise product preservation.

    The matrix identity M Lambda M^T = Lambda is checked exactly; on top of
    it, products are re-verified operator by operator on the full
    single-qubit basis (when 2n is small enough) and on seeded random
    pairs, which exercises apply() rather than the matrix algebra.
    """
    rep = ValidationReport()
    m = art.map
    rep.add("form-preserved", is_symplectic(m), "M Lambda M^T = Lambda")

    n = art.n
    basis = []
    for q in range(n):
        basis.append(PauliOp.single(m.domain, q, "X"))
    for q in range(n):
        basis.append(PauliOp.single(m.domain, q, "Z"))
    if 2 * n <= exhaustive_limit:
        images = [apply(m, p) for p in basis]
        bad = None
        for i in range(2 * n):
            for j in range(i + 1):
                if symplectic_product(basis[i], basis[j]) != symplectic_product(
                    images[i], images[j]
                ):
                    bad = (i, j)
                    break
            if bad:
                break
        rep.add(
            "single-qubit-pairs",
            bad is None,
            "all basis pairs preserved" if bad is None else f"pair {bad} changed",
        )
    rng = np.random.default_rng(seed)
    bad = None
    for t in range(samples):
        va = rng.integers(0, 2, size=2 * n).astype(np.uint8)
        vb = rng.integers(0, 2, size=2 * n).astype(np.uint8)
        a = PauliOp.from_vector(m.domain, va)
        b = PauliOp.from_vector(m.domain, vb)
        if symplectic_product(a, b) != symplectic_product(apply(m, a), apply(m, b)):
            bad = t
            break
    rep.add(
        "random-pairs",
        bad is None,
        f"{samples} seeded pairs preserved" if bad is None else f"pair #{bad} changed",
    )
    return rep


def _plaquette_vec(art: MapArtifact, copy: int, face_idx: int) -> np.ndarray:
    n, n1 = art.n, art.n1
    vec = np.zeros(2 * n, dtype=np.uint8)
    for e in art.sg.faces[face_idx][2]:
        _pair_z(vec, n, n1, copy, e)
    return vec


def _vertex_op_vec(art: MapArtifact, copy: int, v: int) -> np.ndarray:
    n, n1 = art.n, art.n1
    vec = np.zeros(2 * n, dtype=np.uint8)
    for d in art.sg.rotation[v]:
        _pair_x(vec, n, n1, copy, d // 2)
    return vec


def verify_stabilizer_images(art: MapArtifact) -> ValidationReport:
    """Color generators land in the surface stabilizer group, in known shapes.

    Non-c faces map to the exact plaquette of their image face (Z-type on
    copy 1, X-type to the copy-2 plaquette); c-faces map to the vertex
    operator at their image vertex times plaquettes on the other copy.
    """
    rep = ValidationReport()
    g = art.colex
    membership_ok = True
    member_detail = ""
    for (kind, f), img in zip(art.color_code.provenance, art.color_gen_images):
        if not art.pair_stab_echelon.contains(img.vector()):
            membership_ok = False
            member_detail = f"image of B^{kind} at face {f} is not a stabilizer"
            break
    rep.add("images-in-stabilizer-group", membership_ok, member_detail)

    surf_vertex_of_cface = {pf: i for i, pf in enumerate(art.sg.vertex_parent)}
    surf_face_of_parent = {rec[0]: i for i, rec in enumerate(art.sg.faces)}

    plaq1_rows = np.stack(
        [_plaquette_vec(art, 1, i) for i in range(art.sg.n_faces)]
    )
    plaq2_rows = np.stack(
        [_plaquette_vec(art, 2, i) for i in range(art.sg.n_faces)]
    )
    plaq1_ech = EchelonBasis(Gf2Matrix.from_dense(plaq1_rows))
    plaq2_ech = EchelonBasis(Gf2Matrix.from_dense(plaq2_rows))

    exact_ok, exact_detail = True, ""
    cface_ok, cface_detail = True, ""
    for (kind, f), img in zip(art.color_code.provenance, art.color_gen_images):
        if g.faces[f][1] is not art.color:
            fidx = surf_face_of_parent[f]
            want = _plaquette_vec(art, 1 if kind == "Z" else 2, fidx)
            if exact_ok and not np.array_equal(img.vector(), want):
                exact_ok = False
                exact_detail = f"B^{kind} at non-contracted face {f} is not the exact plaquette"
        else:
            vimg = surf_vertex_of_cface[f]
            star_copy = 2 if kind == "Z" else 1
            residue = img.vector() ^ _vertex_op_vec(art, star_copy, vimg)
            ech = plaq1_ech if kind == "Z" else plaq2_ech
            if cface_ok and not ech.contains(residue):
                cface_ok = False
                cface_detail = (
                    f"B^{kind} at contracted face {f} is not vertex-op times plaquettes"
                )
    rep.add("non-contracted-faces-exact-plaquettes", exact_ok, exact_detail)
    rep.add("contracted-faces-vertex-operators", cface_ok, cface_detail)

    # Two-way row-space equality of the image group and the canonical group.
    ra = rank(art.image_gen_matrix)
    rb = rank(art.pair_gen_matrix)
    stacked = Gf2Matrix.from_dense(
        np.vstack([art.image_gen_matrix.to_dense(), art.pair_gen_matrix.to_dense()])
    )
    rc = rank(stacked)
    rep.add(
        "rowspace-equality",
        ra == rb == rc,
        f"image rank {ra}, canonical rank {rb}, joint rank {rc}",
    )
    return rep


def verify_equivalence(art: MapArtifact) -> ValidationReport:
    """Aggregate check: the built map realizes the code equivalence."""
    rep = ValidationReport()
    rep.extend(verify_counting(art), prefix="counting/")
    rep.extend(verify_hopper_independence(art), prefix="movers/")
    rep.extend(verify_invertibility(art), prefix="invertibility/")
    rep.extend(verify_commutation(art), prefix="commutation/")
    rep.extend(verify_stabilizer_images(art), prefix="stabilizers/")

    k_color = art.color_code.k
    k_single = art.surface_code_single.k
    n_pair = 2 * art.n1
    rank_pair = rank(art.pair_gen_matrix)
    k_pair = n_pair - rank_pair
    rep.add(
        "parameter-additivity",
        k_color == k_pair == 2 * k_single,
        f"k_color = {k_color}, k_pair = {k_pair}, per-copy k = {k_single}",
    )

    want = art.pair_gen_matrix
    got = art.basis_change @ art.image_gen_matrix
    rep.add(
        "basis-change-consistency",
        got == want,
        "basis change reproduces every canonical generator",
    )
    return rep


def verify_all(art: MapArtifact) -> ValidationReport:
    return verify_equivalence(art)


# ---------------------------------------------------------------------------
# Single-qubit image table (solver vs recursion)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ImageRow:
    vertex: int
    sigma: str
    image: PauliOp
    recursion: PauliOp
    exact: bool
    stabilizer_equiv: bool


def single_qubit_image_table(art: MapArtifact) -> list[ImageRow]:
    """Compare every single-qubit image against the recursion construction.

    exact marks literal equality; stabilizer_equiv marks equality up to
    multiplication by surface stabilizers (which is all the structural
    guarantees need).  A discrepancy in exact with stabilizer_equiv still
    true is logged by callers, not treated as a failure.
    """
    rows = []
    m = art.map
    for frame in art.frames:
        rec = recursion_images(frame, art.n, art.n1)
        for w in frame.vertices:
            for sigma in ("X", "Z"):
                img = apply(m, PauliOp.single(m.domain, w, sigma))
                rvec = rec[(w, sigma)]
                rop = PauliOp.from_vector(m.codomain, rvec)
                exact = img == rop
                equiv = exact or art.pair_stab_echelon.contains(img.vector() ^ rvec)
                rows.append(ImageRow(w, sigma, img, rop, exact, equiv))
    return rows


# ---------------------------------------------------------------------------
# Map artifact file (binary)
# ---------------------------------------------------------------------------

MAP_MAGIC = b"CSURFMAP"
MAP_FORMAT_VERSION = 1


def save_map_file(art: MapArtifact, path: str) -> None:
    """header (JSON) + bit-packed map matrix + bit-packed basis change."""
    header = {
        "format_version": MAP_FORMAT_VERSION,
        "color": art.color.value,
        "n": art.n,
        "n1": art.n1,
        "matrix_rows": 2 * art.n,
        "matrix_cols": 2 * art.n,
        "basis_change_rows": art.basis_change.rows,
        "basis_change_cols": art.basis_change.cols,
        "conventions": art.conventions.to_jsonable(),
        "colex": save_colex(art.colex),
        "colex_fingerprint": art.fingerprint(),
    }
    blob = json.dumps(header, sort_keys=True).encode()
    with open(path, "wb") as fh:
        fh.write(MAP_MAGIC)
        fh.write(struct.pack("<II", MAP_FORMAT_VERSION, len(blob)))
        fh.write(blob)
        fh.write(art.map.matrix.data.tobytes())
        fh.write(art.basis_change.data.tobytes())


def load_map_file(path: str) -> MapArtifact:
    with open(path, "rb") as fh:
        raw = fh.read()
    if raw[: len(MAP_MAGIC)] != MAP_MAGIC:
        raise MapFileError(f"{path} is not a map artifact (bad magic)")
    off = len(MAP_MAGIC)
    version, hlen = struct.unpack_from("<II", raw, off)
    if version != MAP_FORMAT_VERSION:
        raise MapFileError(f"unsupported map format version {version}")
    off += 8
    try:
        header = json.loads(raw[off : off + hlen])
    except json.JSONDecodeError as exc:
        raise MapFileError(f"corrupt map header: {exc}") from None
    off += hlen

    try:
        g = load_colex(header["colex"])
    except ColexValidationError as exc:
        raise MapFileError(f"embedded lattice is invalid: {exc}") from None
    fp = colex_fingerprint(g)
    if fp != header.get("colex_fingerprint"):
        raise MapFileError("embedded lattice does not match its fingerprint")
    conv = MapConventions.from_jsonable(header["conventions"])
    color = Color.parse(header["color"])
    if conv.color is not color:
        raise MapFileError("convention color disagrees with map color")

    n = header["n"]
    if n != g.n:
        raise MapFileError(f"map is for n={n}, lattice has n={g.n}")
    rows = header["matrix_rows"]
    words = K.words_for(header["matrix_cols"])
    need = rows * words * 8
    mat_blob = raw[off : off + need]
    if len(mat_blob) != need:
        raise MapFileError("map matrix truncated")
    off += need
    mdata = np.frombuffer(mat_blob, dtype=np.uint64).reshape(rows, words).copy()
    bc_rows = header["basis_change_rows"]
    bc_words = K.words_for(header["basis_change_cols"]) if header["basis_change_cols"] else 1
    need = bc_rows * bc_words * 8
    bc_blob = raw[off : off + need]
    if len(bc_blob) != need:
        raise MapFileError("basis change truncated")
    bc_data = np.frombuffer(bc_blob, dtype=np.uint64).reshape(bc_rows, bc_words).copy()

    sg = contract(g, color)
    frames = build_frames(g, sg, conv)
    smap = SymplecticMap(
        matrix=Gf2Matrix(rows, header["matrix_cols"], mdata),
        domain=color_space(g),
        codomain=pair_space(sg),
        n1=sg.n_edges,
    )
    basis_change = Gf2Matrix(bc_rows, header["basis_change_cols"], bc_data)
    return MapArtifact(g, conv, sg, frames, smap, basis_change)


def check_map_matches_colex(art: MapArtifact, g: Colex) -> None:
    if art.fingerprint() != colex_fingerprint(g):
        raise MapFileError(
            "map artifact was built for a different lattice "
            f"(map fingerprint {art.fingerprint()[:12]}, "
            f"lattice fingerprint {colex_fingerprint(g)[:12]})"
        )
