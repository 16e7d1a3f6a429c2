"""Contraction of all faces of one color, yielding the surface-code graph.

Contracting every c-colored face of a colex (together with the boundary
edges of those faces) leaves a multigraph whose vertices are the c-faces,
whose edges are the c-colored edges, and whose faces are the remaining
two colors' faces.  The result may contain parallel edges and self-loops;
the representation keeps them distinct, which is why face boundaries are
stored as edge sequences and rotations as dart sequences (dart 2k+side,
side 0 anchored at the edge's first endpoint).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .colex import Color, Colex, colex_fingerprint, validate_colex
from .errors import ColexValidationError
from .report import ValidationReport


@dataclass(frozen=True)
class SurfaceGraph:
    """Multigraph with faces, labeled by the parent colex it came from.

    vertex v corresponds to parent c-face vertex_parent[v]; edge k to parent
    c-edge edge_parent[k]; face record (parent_face, color, edge cycle,
    vertex cycle) to each non-c parent face.  tau_vertex maps every parent
    vertex to the surface edge its unique c-edge became.
    """

    color: Color
    genus: int
    n_vertices: int
    edges: tuple[tuple[int, int], ...]
    edge_parent: tuple[int, ...]
    vertex_parent: tuple[int, ...]
    faces: tuple[tuple[int, Color, tuple[int, ...], tuple[int, ...]], ...]
    rotation: tuple[tuple[int, ...], ...]
    tau_vertex: tuple[int, ...]
    parent_fingerprint: str = field(default="", compare=False)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def surface_vertex_of_cface(self, parent_face: int) -> int:
        return self.vertex_parent.index(parent_face)

    def surface_edge_of_cedge(self, parent_edge: int) -> int:
        return self.edge_parent.index(parent_edge)

    def surface_face_of_parent(self, parent_face: int) -> int:
        for k, (pf, _, _, _) in enumerate(self.faces):
            if pf == parent_face:
                return k
        raise KeyError(f"parent face {parent_face} has no image face")

    def incident_edges(self, v: int) -> list[int]:
        """Edge ids at v, with multiplicity (self-loops appear twice)."""
        return [d // 2 for d in self.rotation[v]]


def contract(g: Colex, c: Color) -> SurfaceGraph:
    """Collapse every c-colored face of g to a single vertex.

    The rotation around a collapsed face is the splice of the outgoing
    c-edge darts in the face's stored (counter-clockwise) boundary order,
    which keeps the embedding orientable and faces well-defined even when
    the result has parallel edges.
    """
    rep = validate_colex(g)
    if not rep.ok:
        first = rep.failures[0]
        raise ColexValidationError(
            f"cannot contract invalid colex (check '{first.name}': {first.detail})"
        )

    cfaces = g.faces_of_color(c)
    vid_of_cface = {f: i for i, f in enumerate(cfaces)}
    cface_of_vertex = g.vertex_face_of_color(c)
    cedge_of_vertex = g.vertex_edge_of_color(c)

    cedges = g.edges_of_color(c)
    sid_of_cedge = {e: k for k, e in enumerate(cedges)}
    s_edges = []
    for e in cedges:
        u, v, _ = g.edges[e]
        s_edges.append((vid_of_cface[cface_of_vertex[u]], vid_of_cface[cface_of_vertex[v]]))

    # Image faces: the c-edges of each non-c face, in boundary order.  The
    # vertex entered after each c-edge is the c-face of that edge's forward
    # endpoint.
    s_faces = []
    for f, (boundary, col) in enumerate(g.faces):
        if col is c:
            continue
        cycle_edges = []
        cycle_vertices = []
        m = len(boundary)
        for t in range(m):
            a, b = boundary[t], boundary[(t + 1) % m]
            e = g.boundary_edge(a, b)
            if g.edges[e][2] is c:
                cycle_edges.append(sid_of_cedge[e])
                cycle_vertices.append(vid_of_cface[cface_of_vertex[b]])
        s_faces.append((f, col, tuple(cycle_edges), tuple(cycle_vertices)))

    # Rotation at a collapsed face: outgoing c-edge darts in reversed
    # boundary order.  Face orbits are traced by "reverse, next in
    # rotation", which winds opposite to the stored boundary lists, so the
    # reversal keeps the contracted map on the parent's orientation.
    s_rotation = []
    for f in cfaces:
        boundary, _ = g.faces[f]
        darts = []
        for w in reversed(boundary):
            e = cedge_of_vertex[w]
            k = sid_of_cedge[e]
            u, v, _ = g.edges[e]
            darts.append(2 * k if u == w else 2 * k + 1)
        s_rotation.append(tuple(darts))

    tau_vertex = tuple(sid_of_cedge[cedge_of_vertex[v]] for v in range(g.n))

    return SurfaceGraph(
        color=c,
        genus=g.genus,
        n_vertices=len(cfaces),
        edges=tuple(s_edges),
        edge_parent=tuple(cedges),
        vertex_parent=tuple(cfaces),
        faces=tuple(s_faces),
        rotation=tuple(s_rotation),
        tau_vertex=tau_vertex,
        parent_fingerprint=colex_fingerprint(g),
    )


def _orbits_from_dart_rows(rotation: tuple[tuple[int, ...], ...], n_darts: int):
    """Orbits of (reverse, then next-counter-clockwise), or None if malformed."""
    anchor = [-1] * n_darts
    nxt = [-1] * n_darts
    for v, row in enumerate(rotation):
        k = len(row)
        for i, d in enumerate(row):
            if d < 0 or d >= n_darts or anchor[d] != -1:
                return None
            anchor[d] = v
            nxt[d] = row[(i + 1) % k]
    if any(a == -1 for a in anchor):
        return None
    seen = [False] * n_darts
    orbits = []
    for start in range(n_darts):
        if seen[start]:
            continue
        orbit = []
        d = start
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = nxt[d ^ 1]
        if d != start:
            return None
        orbits.append(orbit)
    return orbits


def _canonical_edge_cycle(cycle) -> tuple[int, ...]:
    """Rotation-invariant key for an edge cycle (direction preserved)."""
    cycle = tuple(cycle)
    if not cycle:
        return cycle
    best = None
    for s in range(len(cycle)):
        cand = cycle[s:] + cycle[:s]
        if best is None or cand < best:
            best = cand
    return best


def surface_dual_check(sg: SurfaceGraph) -> ValidationReport:
    """Sanity checks that the contraction result can host a surface code."""
    rep = ValidationReport()

    ok, detail = True, ""
    for v, (u, w) in enumerate(sg.edges):
        if not (0 <= u < sg.n_vertices and 0 <= w < sg.n_vertices):
            ok, detail = False, f"edge {v} endpoint out of range"
            break
    rep.add("edge-endpoints", ok, detail)

    use = [0] * sg.n_edges
    for _, _, cycle_edges, _ in sg.faces:
        for k in cycle_edges:
            use[k] += 1
    bad = [k for k, cnt in enumerate(use) if cnt != 2]
    rep.add(
        "edge-face-incidence",
        not bad,
        "" if not bad else f"edge {bad[0]} lies on {use[bad[0]]} face boundaries",
    )

    ok, detail = True, ""
    for fidx, (pf, _, cycle_edges, cycle_vertices) in enumerate(sg.faces):
        if len(cycle_edges) != len(cycle_vertices) or not cycle_edges:
            ok, detail = False, f"face {fidx} (parent {pf}) has mismatched cycle lengths"
            break
        m = len(cycle_edges)
        for i in range(m):
            prev_v = cycle_vertices[i - 1]
            cur_v = cycle_vertices[i]
            u, w = sg.edges[cycle_edges[i]]
            if {u, w} != {prev_v, cur_v} and not (u == w == prev_v == cur_v):
                ok = False
                detail = f"face {fidx} boundary does not close at edge {cycle_edges[i]}"
                break
        if not ok:
            break
    rep.add("face-boundary-closure", ok, detail)

    # Dart partition: every dart anchored exactly once, at the right vertex.
    ok, detail = True, ""
    seen = {}
    for v, row in enumerate(sg.rotation):
        for d in row:
            if d in seen:
                ok, detail = False, f"dart {d} anchored at vertices {seen[d]} and {v}"
                break
            seen[d] = v
            u, w = sg.edges[d // 2]
            want = u if d % 2 == 0 else w
            if want != v:
                ok, detail = False, f"dart {d} anchored at {v}, endpoint is {want}"
                break
        if not ok:
            break
    if ok and len(seen) != 2 * sg.n_edges:
        ok, detail = False, f"{len(seen)} darts anchored, expected {2 * sg.n_edges}"
    rep.add("rotation-darts", ok, detail)

    # Faces derived from the rotation must agree with the stored face images.
    orbits = _orbits_from_dart_rows(sg.rotation, 2 * sg.n_edges) if ok else None
    if orbits is None:
        rep.add("rotation-face-agreement", False, "skipped: rotation unusable")
    else:
        derived = sorted(_canonical_edge_cycle([d // 2 for d in orbit]) for orbit in orbits)
        stored = sorted(_canonical_edge_cycle(cycle) for _, _, cycle, _ in sg.faces)
        rep.add(
            "rotation-face-agreement",
            derived == stored,
            "" if derived == stored else "stored faces differ from rotation orbits",
        )

    chi = sg.n_vertices - sg.n_edges + sg.n_faces
    expected = 2 - 2 * sg.genus
    rep.add(
        "euler-genus",
        chi == expected,
        "" if chi == expected else f"V-E+F = {chi}, expected {expected}",
    )

    ok, detail = True, ""
    if sorted(sg.vertex_parent) != sorted(set(sg.vertex_parent)):
        ok, detail = False, "vertex_parent has duplicates"
    elif sorted(sg.edge_parent) != sorted(set(sg.edge_parent)):
        ok, detail = False, "edge_parent has duplicates"
    else:
        hits = [0] * sg.n_edges
        for v, e in enumerate(sg.tau_vertex):
            if not (0 <= e < sg.n_edges):
                ok, detail = False, f"tau_vertex[{v}] = {e} is not a surface edge"
                break
            hits[e] += 1
        if ok:
            # every surface edge is the image of exactly its parent edge's
            # two endpoints
            bad = [e for e, h in enumerate(hits) if h != 2]
            if bad:
                ok = False
                detail = f"surface edge {bad[0]} has {hits[bad[0]]} vertex preimages"
    rep.add("tables-invert", ok, detail)

    return rep


def save_surface(sg: SurfaceGraph) -> dict:
    """JSON-ready document mirroring the colex schema plus the tables."""
    return {
        "format": "surface-v1",
        "color": sg.color.value,
        "genus": sg.genus,
        "vertices": sg.n_vertices,
        "edges": [list(e) for e in sg.edges],
        "edge_parent": list(sg.edge_parent),
        "vertex_parent": list(sg.vertex_parent),
        "faces": [
            {
                "parent": pf,
                "color": col.value,
                "edges": list(cycle_edges),
                "vertices": list(cycle_vertices),
            }
            for (pf, col, cycle_edges, cycle_vertices) in sg.faces
        ],
        "rotation": [list(r) for r in sg.rotation],
        "tau_vertex": list(sg.tau_vertex),
        "parent_fingerprint": sg.parent_fingerprint,
    }
