"""Decode color-code errors through the map with per-copy matching.

Pipeline: extract the color-code syndrome, push it through the cached
basis change onto the two surface-code copies, decode each copy's vertex
and face defects as independent minimum-weight matchings, and pull the
combined correction back through the map's inverse.

Matching runs on hop-count shortest paths.  On multigraphs (small
lattices) several shortest paths between matched defects can differ by a
homologically nontrivial cycle; any of them reproduces the syndrome, but
they lift to different logical classes.  The decoder therefore enumerates
the shortest-path homology classes per matched pair (tracked against the
copy's logical operators during BFS) and keeps the combination whose
lifted color correction has minimum weight.  On simple graphs there is
almost always a single class and this costs nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .codemap import MapArtifact
from .contraction import SurfaceGraph
from .errors import DecodeFaultError, MapConsistencyError, SpaceMismatchError
from .matching import greedy_min_weight_matching, min_weight_perfect_matching
from .stabilizers import (
    EchelonBasis,
    StabilizerCode,
    logical_basis,
    surface_css_logicals,
)
from .symplectic import PauliOp

MAX_CLASS_COMBOS = 4096


@dataclass(frozen=True, eq=False)
class Syndrome:
    """One bit per generator of the referenced code, in generator order."""

    code: StabilizerCode
    bits: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "bits", np.ascontiguousarray(self.bits, dtype=np.uint8) & 1)
        if self.bits.shape != (len(self.code.generators),):
            raise ValueError(
                f"syndrome length {self.bits.shape} does not match "
                f"{len(self.code.generators)} generators"
            )

    @property
    def is_trivial(self) -> bool:
        return not self.bits.any()


@dataclass(frozen=True, eq=False)
class DecodeOutcome:
    correction: PauliOp
    success: bool | None  # None when the true error is unknown
    logical_class: int | None


def extract_syndrome(code: StabilizerCode, e: PauliOp) -> Syndrome:
    """Commutation pattern of e against every generator."""
    if e.space != code.space:
        raise SpaceMismatchError(f"error on {e.space}, code on {code.space}")
    bits = code.syndrome_matrix().mat_vec(e.vector())
    return Syndrome(code, bits)


# ---------------------------------------------------------------------------
# Per-copy matching with homology-class tracking
# ---------------------------------------------------------------------------

class _MatchGraph:
    """BFS tables on a node/link multigraph with per-link class labels.

    States are (node, class) pairs; class is the XOR of link labels along
    the walk, measured against the copy's logical operators, so two walks
    between the same nodes get the same class iff they differ by a
    stabilizer cycle.
    """

    def __init__(self, n_nodes: int, links: list[tuple[int, int]], labels: list[int], n_label_bits: int):
        self.n_nodes = n_nodes
        self.links = links
        self.labels = labels
        self.radix = 1 << n_label_bits
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n_nodes)]
        for idx, (a, b) in enumerate(links):
            adj[a].append((idx, b))
            if a != b:
                adj[b].append((idx, a))
        for row in adj:
            row.sort()
        self.adj = adj
        self._tables: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def _bfs(self, src: int) -> tuple[np.ndarray, np.ndarray]:
        if src in self._tables:
            return self._tables[src]
        radix = self.radix
        size = self.n_nodes * radix
        dist = np.full(size, -1, dtype=np.int32)
        parent = np.full(size, -1, dtype=np.int64)  # encodes (prev_state, link)
        start = src * radix
        dist[start] = 0
        frontier = [start]
        while frontier:
            nxt = []
            for s in frontier:
                node, cls = divmod(s, radix)
                for idx, other in self.adj[node]:
                    t = other * radix + (cls ^ self.labels[idx])
                    if dist[t] < 0:
                        dist[t] = dist[s] + 1
                        parent[t] = s * (1 << 20) + idx
                        nxt.append(t)
            frontier = nxt
        self._tables[src] = (dist, parent)
        return dist, parent

    def distance(self, a: int, b: int) -> int:
        dist, _ = self._bfs(a)
        sl = dist[b * self.radix : (b + 1) * self.radix]
        valid = sl[sl >= 0]
        if valid.size == 0:
            raise DecodeFaultError(f"nodes {a} and {b} are disconnected")
        return int(valid.min())

    def class_paths(self, a: int, b: int, slack: int = 0) -> list[np.ndarray]:
        """One link-set per homology class, for classes within slack of optimal.

        Each set is a 0/1 vector over links (XOR of a shortest walk in its
        class); entries are ordered by (length, class index), so the first
        is a canonical minimum-distance choice.
        """
        dist, parent = self._bfs(a)
        sl = dist[b * self.radix : (b + 1) * self.radix]
        valid = sl[sl >= 0]
        dmin = int(valid.min()) if valid.size else -1
        if dmin < 0:
            raise DecodeFaultError(f"nodes {a} and {b} are disconnected")
        chosen = []
        for cls in range(self.radix):
            d = int(sl[cls])
            if 0 <= d <= dmin + slack:
                chosen.append((d, cls))
        chosen.sort()
        out = []
        for _d, cls in chosen:
            vec = np.zeros(len(self.links), dtype=np.uint8)
            s = b * self.radix + cls
            while s != a * self.radix:
                enc = parent[s]
                prev, idx = divmod(enc, 1 << 20)
                vec[idx] ^= 1
                s = prev
            out.append(vec)
        return out


class SurfaceDecoder:
    """Matching decoder for one surface-code copy.

    Vertex defects (X-type generators, flagged by Z errors) are matched on
    the graph itself; face defects (Z-type generators, flagged by X
    errors) on its dual.  Weights are hop counts of shortest paths.
    """

    def __init__(self, sg: SurfaceGraph):
        self.sg = sg
        lx, lz = surface_css_logicals(sg)
        self.logicals_x = lx
        self.logicals_z = lz
        primal_labels = [
            sum((int(vec[e]) << i) for i, vec in enumerate(lx))
            for e in range(sg.n_edges)
        ]
        self.primal = _MatchGraph(
            sg.n_vertices, list(sg.edges), primal_labels, len(lx)
        )
        sides: list[list[int]] = [[] for _ in range(sg.n_edges)]
        for fidx, (_, _, cycle_edges, _) in enumerate(sg.faces):
            for e in cycle_edges:
                sides[e].append(fidx)
        dual_links = []
        for e, fs in enumerate(sides):
            if len(fs) != 2:
                raise DecodeFaultError(f"edge {e} lies on {len(fs)} faces")
            dual_links.append((fs[0], fs[1]))
        dual_labels = [
            sum((int(vec[e]) << i) for i, vec in enumerate(lz))
            for e in range(sg.n_edges)
        ]
        self.dual = _MatchGraph(sg.n_faces, dual_links, dual_labels, len(lz))

    def match(
        self, defects: list[int], side: str, method: str = "exact", slack: int = 0
    ) -> list[tuple[int, int, list[np.ndarray]]]:
        """Pair up defects; per pair, the candidate correction edge sets.

        Returns (a, b, options) triples; options cover each homology class
        whose shortest connection is within slack of the pair's distance,
        canonical order.  Raises DecodeFaultError on an odd defect count
        (impossible for genuine errors on a closed surface).
        """
        if len(defects) % 2 != 0:
            raise DecodeFaultError(
                f"odd defect count {len(defects)} on the {side} side"
            )
        if not defects:
            return []
        graph = self.primal if side == "primal" else self.dual
        k = len(defects)
        weights = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(i + 1, k):
                d = graph.distance(defects[i], defects[j])
                weights[i][j] = weights[j][i] = d
        if method == "greedy":
            pairs = greedy_min_weight_matching(weights)
        else:
            pairs = min_weight_perfect_matching(weights)
        out = []
        for (i, j) in pairs:
            a, b = defects[i], defects[j]
            out.append((a, b, graph.class_paths(a, b, slack)))
        return out


def mwpm_decode(sg: SurfaceGraph, syn: Syndrome, method: str = "exact") -> PauliOp:
    """Single-copy decode: a correction whose syndrome equals syn.

    Ambiguous equal-weight path classes resolve to the canonical (first)
    class; use the full color decoder for lift-aware selection.
    """
    dec = SurfaceDecoder(sg)
    nv = sg.n_vertices
    bits = syn.bits
    vertex_defects = [v for v in range(nv) if bits[v]]
    face_defects = [f for f in range(sg.n_faces) if bits[nv + f]]
    x = np.zeros(sg.n_edges, dtype=np.uint8)
    z = np.zeros(sg.n_edges, dtype=np.uint8)
    for _, _, options in dec.match(vertex_defects, "primal", method):
        z ^= options[0]
    for _, _, options in dec.match(face_defects, "dual", method):
        x ^= options[0]
    return PauliOp(syn.code.space, x, z)


# ---------------------------------------------------------------------------
# Full pipeline
# ---------------------------------------------------------------------------

class ColorDecoder:
    """Precomputed decoding context for one map artifact.

    class_slack bounds how far above a matched pair's distance the decoder
    still considers alternative homology classes; on simple contraction
    graphs one class usually survives and decoding takes the fast path.
    """

    def __init__(
        self,
        art: MapArtifact,
        method: str = "exact",
        max_combos: int = MAX_CLASS_COMBOS,
        class_slack: int = 2,
        logical_shifts: bool | None = None,
    ):
        self.art = art
        self.method = method
        self.max_combos = max_combos
        self.class_slack = class_slack
        self.surface = SurfaceDecoder(art.sg)
        self.n = art.n
        self.n1 = art.n1
        self._syn_matrix = art.color_code.syndrome_matrix().data
        self._bc = art.basis_change.data
        self._bc_cols = art.basis_change.cols
        self._minv_rows = art.map.inverse_matrix.data
        self._minvT = art.map.inverse_matrix.transpose().data
        self._gen_dense = np.stack([p.vector() for p in art.color_code.generators])
        self._logicals = logical_basis(art.color_code)
        self._logical_rows = (
            np.stack(
                [K.pack_vec(np.concatenate([p.z, p.x])) for p in self._logicals]
            )
            if self._logicals
            else np.zeros((0, K.words_for(2 * self.n)), dtype=np.uint64)
        )
        # Images of the logicals, swapped for products: the class of a lifted
        # correction can be read off the pair-space vector directly because
        # the map preserves commutation.
        from .symplectic import apply as _apply

        self._pair_logical_rows = (
            np.stack(
                [
                    K.pack_vec(np.concatenate([q.z, q.x]))
                    for q in (_apply(art.map, p) for p in self._logicals)
                ]
            )
            if self._logicals
            else np.zeros((0, K.words_for(2 * self.n)), dtype=np.uint64)
        )
        self._group_table = self._build_group_table()
        self._shift_pairs = self._build_shift_table()
        if logical_shifts is None:
            logical_shifts = self._images_hide_logicals()
        self.logical_shifts = logical_shifts

    _EXACT_GROUP_LIMIT = 16

    def _build_group_table(self) -> np.ndarray | None:
        """Packed table of the whole stabilizer group, when small enough.

        With the table, class ranking uses exact coset-minimum weights; it
        needs single-word packing (2n <= 64) and 2^(n-k) manageable.
        """
        if 2 * self.n > 64:
            return None
        ech = EchelonBasis(self.art.color_code.generator_matrix())
        if ech.rank > self._EXACT_GROUP_LIMIT:
            return None
        table = np.zeros(1, dtype=np.uint64)
        for row in ech.rows:
            table = np.concatenate([table, table ^ row[0]])
        return table

    def _build_shift_table(self) -> np.ndarray:
        """Pair-space logical representatives of the two copies."""
        vecs = []
        for copy in (1, 2):
            for v in self.surface.logicals_x:
                vecs.append(self._embed_correction(copy, None, v.astype(np.uint8)))
            for v in self.surface.logicals_z:
                vecs.append(self._embed_correction(copy, v.astype(np.uint8), None))
        if not vecs:
            return np.zeros((0, 2 * self.n), dtype=np.uint8)
        return np.stack(vecs)

    def _copy_part_invisible(self, vec: np.ndarray, copy: int) -> bool:
        """True if the copy-part of a pair vector has zero syndrome but a
        nonzero pairing with the copy's logical operators."""
        n, n1 = self.n, self.n1
        off = 0 if copy == 1 else n1
        x = vec[off : off + n1]
        z = vec[n + off : n + off + n1]
        sg = self.art.sg
        for v in range(sg.n_vertices):
            acc = 0
            for d in sg.rotation[v]:
                acc ^= z[d // 2]
            if acc:
                return False
        for _, _, cycle_edges, _ in sg.faces:
            acc = 0
            for e in cycle_edges:
                acc ^= x[e]
            if acc:
                return False
        for lvec in self.surface.logicals_x:
            if int((z & lvec).sum()) & 1:
                return True
        for lvec in self.surface.logicals_z:
            if int((x & lvec).sum()) & 1:
                return True
        return False

    def _images_hide_logicals(self) -> bool:
        """Does any single-qubit image carry an undetectable logical part?

        On very small multigraph contractions the image of a weight-1 error
        can contain a zero-syndrome nontrivial cycle on one copy; matching
        alone can never supply that component, so the decoder must consider
        logical shifts.
        """
        dense = self.art.map.matrix.to_dense()
        for col in range(2 * self.n):
            vec = dense[:, col]
            for copy in (1, 2):
                if self._copy_part_invisible(vec, copy):
                    return True
        return False

    def _pauli_weight(self, vec: np.ndarray) -> int:
        n = self.n
        return int(np.count_nonzero(vec[:n] | vec[n:]))

    def _reduce_weight(self, vec: np.ndarray) -> np.ndarray:
        """Minimum-weight representative of vec's stabilizer coset.

        Exact (full group table) on small codes; greedy descent over the
        generators otherwise.  Either way the class is preserved.
        """
        n = self.n
        if self._group_table is not None:
            word = int(K.pack_vec(vec)[0])
            idx, _w = K.coset_min_weight(self._group_table, word, n)
            return K.unpack_vec(
                self._group_table[idx : idx + 1] ^ np.uint64(word), 2 * n
            )
        return self._greedy_reduce(vec)

    def _greedy_reduce(self, vec: np.ndarray) -> np.ndarray:
        n = self.n
        cur = vec
        cur_w = self._pauli_weight(cur)
        while True:
            cands = cur[None, :] ^ self._gen_dense
            weights = np.count_nonzero(cands[:, :n] | cands[:, n:], axis=1)
            best = int(weights.argmin())
            if int(weights[best]) >= cur_w:
                return cur
            cur = cands[best]
            cur_w = int(weights[best])

    # -- syndrome plumbing -------------------------------------------------

    def color_syndrome_bits(self, e: PauliOp) -> np.ndarray:
        if e.space != self.art.color_code.space:
            raise SpaceMismatchError(
                f"error on {e.space}, code on {self.art.color_code.space}"
            )
        return K.mat_vec_parity(self._syn_matrix, K.pack_vec(e.vector()))

    def push_bits(self, color_bits: np.ndarray) -> np.ndarray:
        return K.mat_vec_parity(self._bc, K.pack_vec(color_bits))

    # -- lifting -----------------------------------------------------------

    def _lift_vec(self, pair_vec: np.ndarray) -> np.ndarray:
        """(x|z) color-space vector of the preimage of a pair-space vector."""
        return K.mat_vec_parity(self._minv_rows, K.pack_vec(pair_vec))

    def _embed_correction(self, copy: int, z_edges: np.ndarray | None, x_edges: np.ndarray | None) -> np.ndarray:
        n, n1 = self.n, self.n1
        vec = np.zeros(2 * n, dtype=np.uint8)
        off = 0 if copy == 1 else n1
        if x_edges is not None:
            vec[off : off + n1] ^= x_edges
        if z_edges is not None:
            vec[n + off : n + off + n1] ^= z_edges
        return vec

    # -- decoding ----------------------------------------------------------

    def decode_bits(self, color_bits: np.ndarray) -> tuple[PauliOp, PauliOp]:
        """(color correction, pair-space correction) for a syndrome bit vector."""
        pair_bits = self.push_bits(color_bits)
        ns = len(self.art.surface_code_single.generators)
        nv = self.art.sg.n_vertices
        nf = self.art.sg.n_faces

        option_vecs: list[list[np.ndarray]] = []
        for copy in (1, 2):
            bits = pair_bits[(copy - 1) * ns : copy * ns]
            vertex_defects = [v for v in range(nv) if bits[v]]
            face_defects = [f for f in range(nf) if bits[nv + f]]
            for _, _, options in self.surface.match(
                vertex_defects, "primal", self.method, self.class_slack
            ):
                option_vecs.append(
                    [self._embed_correction(copy, opt, None) for opt in options]
                )
            for _, _, options in self.surface.match(
                face_defects, "dual", self.method, self.class_slack
            ):
                option_vecs.append(
                    [self._embed_correction(copy, None, opt) for opt in options]
                )

        n = self.n
        if not option_vecs:
            best_pair = np.zeros(2 * n, dtype=np.uint8)
            best_color = np.zeros(2 * n, dtype=np.uint8)
        else:
            # Cap the enumeration, forcing the canonical option past the budget.
            sizes = []
            budget = self.max_combos
            for opts in option_vecs:
                take = len(opts) if budget >= len(opts) else 1
                if take > 1:
                    budget //= take
                sizes.append(take)

            if all(s == 1 for s in sizes) and not self.logical_shifts:
                best_pair = np.zeros(2 * n, dtype=np.uint8)
                for opts in option_vecs:
                    best_pair = best_pair ^ opts[0]
                best_color = self._lift_vec(best_pair)
            else:
                # Rank candidates by reduced lifted weight, one winner per
                # logical class (classes are read off the pair vectors via
                # the logical images; the lift happens in one batched
                # matmul).  With the exact group table the reduced weight
                # is a class function; with the greedy fallback each
                # candidate is reduced individually.
                pair_mat = np.asarray(option_vecs[0][: sizes[0]], dtype=np.uint8)
                for opts, take in zip(option_vecs[1:], sizes[1:]):
                    block = np.asarray(opts[:take], dtype=np.uint8)
                    pair_mat = (pair_mat[:, None, :] ^ block[None, :, :]).reshape(
                        -1, 2 * n
                    )
                best_pair, best_color, best_key, ranked, reps = self._rank_candidates(
                    pair_mat
                )

                if self.logical_shifts and best_key >= 2 and len(self._shift_pairs):
                    # Some corrections live in a zero-syndrome logical class
                    # that matching cannot produce; fold logical shifts into
                    # the candidate set and re-rank.
                    nshift = len(self._shift_pairs)
                    rep_mat = np.stack(list(reps.values()))
                    budget = max(2, self.max_combos // max(1, len(rep_mat)))
                    masks = range(1, min(1 << nshift, budget))
                    shift_rows = []
                    for mask in masks:
                        shift_vec = np.zeros(2 * n, dtype=np.uint8)
                        for i in range(nshift):
                            if (mask >> i) & 1:
                                shift_vec ^= self._shift_pairs[i]
                        shift_rows.append(shift_vec)
                    if shift_rows:
                        cand = (
                            np.stack(shift_rows)[:, None, :] ^ rep_mat[None, :, :]
                        ).reshape(-1, 2 * n)
                        s_pair, s_color, s_key, _r, _p = self._rank_candidates(
                            cand, skip_classes=set(ranked)
                        )
                        if s_key is not None and s_key < best_key:
                            best_pair, best_color, best_key = s_pair, s_color, s_key

        correction = PauliOp.from_vector(self.art.color_code.space, best_color)
        pair_corr = PauliOp.from_vector(self.art.map.codomain, best_pair)

        got = K.mat_vec_parity(self._syn_matrix, K.pack_vec(best_color))
        if not np.array_equal(got, color_bits & 1):
            raise MapConsistencyError(
                "lifted correction does not reproduce the input syndrome"
            )
        return correction, pair_corr

    def logical_class_bits(self, residual: PauliOp) -> int:
        """Class id of a zero-syndrome residual against the logical basis."""
        vec = K.pack_vec(residual.vector())
        bits = K.mat_vec_parity(self._logical_rows, vec) if len(self._logical_rows) else []
        out = 0
        for i, b in enumerate(bits):
            out |= int(b) << i
        return out

    def _pair_class_bits(self, pair_vec: np.ndarray) -> int:
        """Class id of a pair-space vector's lift, without lifting."""
        if not len(self._pair_logical_rows):
            return 0
        vec = K.pack_vec(pair_vec)
        bits = K.mat_vec_parity(self._pair_logical_rows, vec)
        out = 0
        for i, b in enumerate(bits):
            out |= int(b) << i
        return out

    def _class_keys(self, packed: np.ndarray) -> np.ndarray:
        """Class ids for a batch of packed pair-space vectors."""
        if not len(self._pair_logical_rows):
            return np.zeros(len(packed), dtype=np.int64)
        bits = (
            np.bitwise_count(packed[:, None, :] & self._pair_logical_rows[None, :, :])
            .sum(axis=2)
            .astype(np.int64)
            & 1
        )
        powers = 1 << np.arange(bits.shape[1], dtype=np.int64)
        return bits @ powers

    def _rank_candidates(self, pair_mat: np.ndarray, skip_classes=None):
        """Best (pair vec, reduced lift, weight) over candidate rows.

        Also returns per-class weights and first-seen representatives for
        the logical-shift follow-up.  With the exact group table only the
        first row of each class is evaluated (the reduced weight is a class
        function); the greedy path evaluates every row.
        """
        n = self.n
        exact = self._group_table is not None
        packed = K.pack_rows(pair_mat)
        keys = self._class_keys(packed)
        if skip_classes is None:
            skip_classes = ()
        keep: list[int] = []
        seen: set[int] = set()
        for r in range(len(keys)):
            cls = int(keys[r])
            if cls in skip_classes:
                continue
            if exact:
                if cls in seen:
                    continue
                seen.add(cls)
            keep.append(r)
        if not keep:
            return None, None, None, {}, {}
        sel = np.ascontiguousarray(packed[keep])
        lift_packed = K.matmul(sel, 2 * n, self._minvT)
        ranked: dict[int, int] = {}
        reps: dict[int, np.ndarray] = {}
        if exact:
            # Candidates here always carry a nonzero syndrome, so their
            # reduced weight is >= 1 and the early exit at 1 stays exact.
            idxs, ws = K.coset_min_weight_many(
                self._group_table, lift_packed[:, 0], n, 1
            )
            best_local = int(np.argmin(ws))
            best_key = int(ws[best_local])
            best_pair = pair_mat[keep[best_local]]
            word = lift_packed[best_local : best_local + 1, 0]
            best_color = K.unpack_vec(
                self._group_table[idxs[best_local] : idxs[best_local] + 1] ^ word, 2 * n
            )
            for i, r in enumerate(keep):
                cls = int(keys[r])
                ranked[cls] = int(ws[i])
                reps[cls] = pair_mat[r]
        else:
            lift_dense = K.unpack_rows(lift_packed, 2 * n)
            best_key = None
            best_pair = None
            best_color = None
            for i, r in enumerate(keep):
                dense = self._greedy_reduce(lift_dense[i])
                w = self._pauli_weight(dense)
                cls = int(keys[r])
                if cls not in ranked or w < ranked[cls]:
                    ranked[cls] = w
                    reps[cls] = pair_mat[r]
                if best_key is None or w < best_key:
                    best_key = w
                    best_pair = pair_mat[r]
                    best_color = dense
        return best_pair, best_color, best_key, ranked, reps

    def decode_error(self, e: PauliOp) -> DecodeOutcome:
        bits = self.color_syndrome_bits(e)
        correction, _ = self.decode_bits(bits)
        residual = e * correction
        cls = self.logical_class_bits(residual)
        return DecodeOutcome(correction=correction, success=cls == 0, logical_class=cls)

    def decode_syndrome(self, syn: Syndrome) -> DecodeOutcome:
        if syn.code.space != self.art.color_code.space:
            raise SpaceMismatchError("syndrome belongs to a different code")
        correction, _ = self.decode_bits(syn.bits)
        return DecodeOutcome(correction=correction, success=None, logical_class=None)


def push_syndrome(art: MapArtifact, color_syn: Syndrome) -> tuple[Syndrome, Syndrome]:
    """Surface-code syndromes of the pushed error, one per copy.

    Equals extract_syndrome(surface code, apply(map, error)) for any error
    with the given color syndrome; computed with the cached basis change.
    """
    if color_syn.code.space != color_space_of(art):
        raise SpaceMismatchError("syndrome does not belong to this artifact's code")
    bits = K.mat_vec_parity(art.basis_change.data, K.pack_vec(color_syn.bits))
    ns = len(art.surface_code_single.generators)
    code = art.surface_code_single
    return Syndrome(code, bits[:ns]), Syndrome(code, bits[ns:])


def color_space_of(art: MapArtifact):
    return art.color_code.space


def decode_color(
    art: MapArtifact,
    syn: Syndrome,
    error: PauliOp | None = None,
    method: str = "exact",
) -> DecodeOutcome:
    """Decode a color-code syndrome; grade success when the error is known."""
    dec = ColorDecoder(art, method=method)
    if error is not None:
        got = dec.color_syndrome_bits(error)
        if not np.array_equal(got, syn.bits):
            raise ValueError("provided error does not produce the provided syndrome")
        return dec.decode_error(error)
    return dec.decode_syndrome(syn)
