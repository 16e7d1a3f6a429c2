"""Three-colored trivalent lattices (2-colexes) on closed orientable surfaces.

A colex is stored as a combinatorial map: edges plus a rotation system (the
counter-clockwise cyclic order of the three edges at each vertex).  Faces are
derived by tracing the orbit that keeps the face on the left of each directed
edge, so stored face boundaries all run counter-clockwise with respect to one
global orientation.  Boundaries and parallel edges are rejected.
"""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass, field

from .errors import ColexFormatError, ColexValidationError, LatticeDimensionError
from .report import ValidationReport


class Color(enum.Enum):
    R = "r"
    G = "g"
    B = "b"

    @classmethod
    def parse(cls, text: str) -> "Color":
        try:
            return cls(text.lower())
        except ValueError:
            raise ColexFormatError(f"invalid color {text!r}; expected r, g or b") from None

    @property
    def next(self) -> "Color":
        """Cyclic successor: r -> g -> b -> r."""
        order = [Color.R, Color.G, Color.B]
        return order[(order.index(self) + 1) % 3]

    def others(self) -> tuple["Color", "Color"]:
        """The ordered pair (c', c'') determined by the cyclic convention."""
        return (self.next, self.next.next)

    def __str__(self) -> str:
        return self.value


COLORS = (Color.R, Color.G, Color.B)


@dataclass(frozen=True)
class Colex:
    """A 2-colex: vertices 0..n-1, colored edges, faces, rotation system.

    rotation[v] lists the ids of the three edges at v in counter-clockwise
    order.  faces[k] = (boundary vertex cycle, face color); boundaries are
    the left-of-dart orbits of the rotation system.
    """

    n: int
    edges: tuple[tuple[int, int, Color], ...]
    faces: tuple[tuple[tuple[int, ...], Color], ...]
    rotation: tuple[tuple[int, int, int], ...]
    genus: int = 1
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    def edge_color(self, e: int) -> Color:
        return self.edges[e][2]

    def edges_of_color(self, c: Color) -> list[int]:
        return [e for e, (_, _, col) in enumerate(self.edges) if col is c]

    def faces_of_color(self, c: Color) -> list[int]:
        return [f for f, (_, col) in enumerate(self.faces) if col is c]

    def face_counts(self) -> dict[Color, int]:
        counts = {c: 0 for c in COLORS}
        for _, col in self.faces:
            counts[col] += 1
        return counts

    def vertex_edges(self) -> list[list[int]]:
        """Incident edge ids per vertex, from the edge list."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for e, (u, v, _) in enumerate(self.edges):
            inc[u].append(e)
            inc[v].append(e)
        return inc

    def vertex_face_of_color(self, c: Color) -> list[int]:
        """For each vertex, the id of the unique c-colored face containing it."""
        out = [-1] * self.n
        for f, (boundary, col) in enumerate(self.faces):
            if col is c:
                for v in boundary:
                    out[v] = f
        return out

    def vertex_edge_of_color(self, c: Color) -> list[int]:
        """For each vertex, the id of its unique c-colored edge."""
        out = [-1] * self.n
        for e, (u, v, col) in enumerate(self.edges):
            if col is c:
                out[u] = e
                out[v] = e
        return out

    def boundary_edge(self, u: int, v: int) -> int:
        """The edge id joining u and v (colexes have no parallel edges)."""
        for e in self.rotation[u]:
            a, b, _ = self.edges[e]
            if (a, b) in ((u, v), (v, u)):
                return e
        raise KeyError(f"no edge between vertices {u} and {v}")


# ---------------------------------------------------------------------------
# Dart bookkeeping: dart 2e points along edge e from its first endpoint,
# dart 2e+1 the other way.  The face permutation is "reverse, then take the
# next edge counter-clockwise at the new anchor", which keeps the traced
# face on the left, running counter-clockwise.
# ---------------------------------------------------------------------------

def _darts_at_vertices(edges, rotation):
    """rotation lists per vertex as darts anchored there; None if malformed."""
    darts = []
    for v, rot in enumerate(rotation):
        row = []
        for e in rot:
            u, w, _ = edges[e]
            if u == v:
                row.append(2 * e)
            elif w == v:
                row.append(2 * e + 1)
            else:
                return None
        darts.append(row)
    return darts


def trace_faces(n: int, edges, rotation) -> list[list[int]] | None:
    """Face orbits as dart lists; None when the rotation system is malformed.

    Each dart appears in exactly one orbit; orbits are emitted in order of
    their smallest dart, each starting at that dart.
    """
    dart_rows = _darts_at_vertices(edges, rotation)
    if dart_rows is None:
        return None
    n_darts = 2 * len(edges)
    anchor = [0] * n_darts
    next_at_anchor = [0] * n_darts
    for v, row in enumerate(dart_rows):
        k = len(row)
        for idx, d in enumerate(row):
            anchor[d] = v
            next_at_anchor[d] = row[(idx + 1) % k]
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
            d = next_at_anchor[d ^ 1]  # reverse, then next CCW
        if d != start:
            return None
        orbits.append(orbit)
    return orbits


def orbit_vertices(orbit: list[int], edges) -> list[int]:
    out = []
    for d in orbit:
        u, v, _ = edges[d // 2]
        out.append(u if d % 2 == 0 else v)
    return out


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_colex(g: Colex) -> ValidationReport:
    """Check every structural invariant; failures name the first offender."""
    rep = ValidationReport()
    edges, rotation, faces = g.edges, g.rotation, g.faces

    ok = True
    detail = ""
    for e, (u, v, _) in enumerate(edges):
        if not (0 <= u < g.n and 0 <= v < g.n):
            ok, detail = False, f"edge {e} endpoint out of range"
            break
        if u == v:
            ok, detail = False, f"edge {e} is a self-loop at vertex {u}"
            break
    rep.add("edge-endpoints", ok, detail)

    seen_pairs: dict[tuple[int, int], int] = {}
    ok, detail = True, ""
    for e, (u, v, _) in enumerate(edges):
        key = (min(u, v), max(u, v))
        if key in seen_pairs:
            ok = False
            detail = f"edges {seen_pairs[key]} and {e} both join vertices {key}"
            break
        seen_pairs[key] = e
    rep.add("no-parallel-edges", ok, detail)

    inc = g.vertex_edges()
    ok, detail = True, ""
    for v, lst in enumerate(inc):
        if len(lst) != 3:
            ok, detail = False, f"vertex {v} has degree {len(lst)}"
            break
    rep.add("trivalent", ok, detail)

    ok, detail = True, ""
    if len(rotation) != g.n:
        ok, detail = False, f"rotation has {len(rotation)} entries for {g.n} vertices"
    else:
        for v, rot in enumerate(rotation):
            if sorted(rot) != sorted(inc[v]):
                ok, detail = False, f"rotation at vertex {v} is not its incident edge set"
                break
    rep.add("rotation-consistency", ok, detail)

    ok, detail = True, ""
    for v, lst in enumerate(inc):
        cols = {edges[e][2] for e in lst}
        if len(lst) == 3 and len(cols) != 3:
            ok, detail = False, f"vertex {v} sees colors {sorted(c.value for c in cols)}"
            break
    rep.add("edge-coloring", ok, detail)

    structural_ok = rep.ok
    orbits = trace_faces(g.n, edges, rotation) if structural_ok else None

    if orbits is None:
        rep.add("two-cell-embedding", False, "skipped: rotation system unusable")
        rep.add("face-consistency", False, "skipped")
        rep.add("face-colors", False, "skipped")
        rep.add("face-color-disjoint", False, "skipped")
        rep.add("euler-characteristic", False, "skipped")
        return rep

    rep.add("two-cell-embedding", True, "")

    derived = {}
    for orbit in orbits:
        verts = tuple(orbit_vertices(orbit, edges))
        derived[_canonical_cycle(verts)] = verts
    ok, detail = True, ""
    if len(faces) != len(orbits):
        ok = False
        detail = f"{len(faces)} stored faces, {len(orbits)} derived from rotation"
    else:
        for fid, (boundary, _) in enumerate(faces):
            if _canonical_cycle(boundary) not in derived:
                ok, detail = False, f"face {fid} does not match any rotation orbit"
                break
    rep.add("face-consistency", ok, detail)

    ok, detail = True, ""
    for fid, (boundary, col) in enumerate(faces):
        if len(boundary) % 2 != 0 or len(boundary) < 4:
            ok, detail = False, f"face {fid} has odd or short boundary {len(boundary)}"
            break
        bcolors = []
        closed = list(boundary) + [boundary[0]]
        try:
            for a, b in zip(closed, closed[1:]):
                bcolors.append(edges[g.boundary_edge(a, b)][2])
        except KeyError:
            ok, detail = False, f"face {fid} boundary is not an edge cycle"
            break
        if col in bcolors:
            ok, detail = False, f"face {fid} ({col}) has a {col}-colored boundary edge"
            break
        expected = set(COLORS) - {col}
        if set(bcolors) != expected or any(
            bcolors[i] == bcolors[(i + 1) % len(bcolors)] for i in range(len(bcolors))
        ):
            ok, detail = False, f"face {fid} boundary colors do not alternate"
            break
    rep.add("face-colors", ok, detail)

    ok, detail = True, ""
    for c in COLORS:
        hits = [0] * g.n
        for boundary, col in faces:
            if col is c:
                for v in boundary:
                    hits[v] += 1
        bad = [v for v, h in enumerate(hits) if h != 1]
        if bad:
            ok = False
            detail = f"vertex {bad[0]} lies on {hits[bad[0]]} {c}-colored faces"
            break
    rep.add("face-color-disjoint", ok, detail)

    chi = g.n - len(edges) + len(faces)
    expected_chi = 2 - 2 * g.genus
    rep.add(
        "euler-characteristic",
        chi == expected_chi,
        "" if chi == expected_chi else f"V-E+F = {chi}, expected {expected_chi} for genus {g.genus}",
    )
    return rep


def _canonical_cycle(cycle) -> tuple[int, ...]:
    """Rotate a vertex cycle to start at its smallest element."""
    cycle = tuple(cycle)
    if not cycle:
        return cycle
    k = cycle.index(min(cycle))
    return cycle[k:] + cycle[:k]


def _faces_with_colors(n, edges, rotation):
    """Derive faces from the rotation system and color each by the missing color."""
    orbits = trace_faces(n, edges, rotation)
    if orbits is None:
        raise ColexValidationError("rotation system does not define a combinatorial map")
    faces = []
    for orbit in orbits:
        verts = tuple(orbit_vertices(orbit, edges))
        cols = {edges[d // 2][2] for d in orbit}
        if len(cols) != 2:
            raise ColexValidationError(
                f"face {verts} has boundary colors {sorted(c.value for c in cols)}"
            )
        (missing,) = set(COLORS) - cols
        faces.append((verts, missing))
    return tuple(faces)


# ---------------------------------------------------------------------------
# Lattice generators
# ---------------------------------------------------------------------------

def build_hexagonal_torus(rows: int, cols: int) -> Colex:
    """Hexagonal (6.6.6) lattice on the torus: rows x cols hexagons.

    Vertices sit on two sublattices per cell; faces are colored by the cell
    diagonal (row - col) mod 3, which is the proper 3-coloring for this
    indexing, so both dimensions must be multiples of 3.
    """
    if rows < 3 or cols < 3:
        raise LatticeDimensionError(
            f"hexagonal torus needs rows, cols >= 3, got ({rows}, {cols})"
        )
    if rows % 3 != 0 or cols % 3 != 0:
        raise LatticeDimensionError(
            "hexagonal torus is 3-face-colorable only when rows and cols are "
            f"multiples of 3, got ({rows}, {cols})"
        )

    def A(i, j):
        return 2 * ((i % rows) * cols + (j % cols))

    def B(i, j):
        return A(i, j) + 1

    def e_v(i, j):
        return 3 * ((i % rows) * cols + (j % cols))

    def e_r(i, j):
        return e_v(i, j) + 1

    def e_l(i, j):
        return e_v(i, j) + 2

    n = 2 * rows * cols
    edges: list[tuple[int, int, Color] | None] = [None] * (3 * rows * cols)
    palette = COLORS
    for i in range(rows):
        for j in range(cols):
            t = i - j
            edges[e_v(i, j)] = (A(i, j), B(i, j), palette[(t + 1) % 3])
            edges[e_r(i, j)] = (B(i, j), A(i, j + 1), palette[(t + 2) % 3])
            edges[e_l(i, j)] = (B(i, j), A(i - 1, j + 1), palette[t % 3])
    rotation: list[tuple[int, int, int] | None] = [None] * n
    for i in range(rows):
        for j in range(cols):
            rotation[A(i, j)] = (e_v(i, j), e_r(i, j - 1), e_l(i + 1, j - 1))
            rotation[B(i, j)] = (e_r(i, j), e_l(i, j), e_v(i, j))
    edges_t = tuple(edges)  # type: ignore[arg-type]
    rotation_t = tuple(rotation)  # type: ignore[arg-type]
    faces = _faces_with_colors(n, edges_t, rotation_t)
    return Colex(
        n=n,
        edges=edges_t,
        faces=faces,
        rotation=rotation_t,
        genus=1,
        meta={"family": "hex", "rows": rows, "cols": cols},
    )


def build_square_octagon_torus(d: int) -> Colex:
    """Square-octagon (4.8.8) lattice on the torus: d x d small squares.

    Small squares take one color; octagons checkerboard the other two, so d
    must be even.  Vertex dirs per square: 0=E, 1=N, 2=W, 3=S.
    """
    if d < 2:
        raise LatticeDimensionError(f"square-octagon torus needs d >= 2, got {d}")
    if d % 2 != 0:
        raise LatticeDimensionError(
            f"square-octagon octagons are 2-colorable only for even d, got {d}"
        )

    def vid(i, j, k):
        return ((i % d) * d + (j % d)) * 4 + k

    def eid(i, j, k):
        return ((i % d) * d + (j % d)) * 6 + k

    E, N, W, S = 0, 1, 2, 3
    EN, NW, WS, SE, BR_E, BR_N = 0, 1, 2, 3, 4, 5
    n = 4 * d * d
    edges: list[tuple[int, int, Color] | None] = [None] * (6 * d * d)
    oct_color = {0: Color.G, 1: Color.B}
    for i in range(d):
        for j in range(d):
            p = (i + j) % 2
            edges[eid(i, j, EN)] = (vid(i, j, E), vid(i, j, N), oct_color[1 - p])
            edges[eid(i, j, NW)] = (vid(i, j, N), vid(i, j, W), oct_color[p])
            edges[eid(i, j, WS)] = (vid(i, j, W), vid(i, j, S), oct_color[1 - p])
            edges[eid(i, j, SE)] = (vid(i, j, S), vid(i, j, E), oct_color[p])
            edges[eid(i, j, BR_E)] = (vid(i, j, E), vid(i + 1, j, W), Color.R)
            edges[eid(i, j, BR_N)] = (vid(i, j, N), vid(i, j + 1, S), Color.R)
    rotation: list[tuple[int, int, int] | None] = [None] * n
    for i in range(d):
        for j in range(d):
            rotation[vid(i, j, E)] = (eid(i, j, BR_E), eid(i, j, EN), eid(i, j, SE))
            rotation[vid(i, j, N)] = (eid(i, j, BR_N), eid(i, j, NW), eid(i, j, EN))
            rotation[vid(i, j, W)] = (eid(i, j, NW), eid(i - 1, j, BR_E), eid(i, j, WS))
            rotation[vid(i, j, S)] = (eid(i, j, SE), eid(i, j, WS), eid(i, j - 1, BR_N))
    edges_t = tuple(edges)  # type: ignore[arg-type]
    rotation_t = tuple(rotation)  # type: ignore[arg-type]
    faces = _faces_with_colors(n, edges_t, rotation_t)
    return Colex(
        n=n,
        edges=edges_t,
        faces=faces,
        rotation=rotation_t,
        genus=1,
        meta={"family": "sqoct", "rows": d, "cols": d},
    )


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------

FORMAT_TAG = "colex-v1"


def save_colex(g: Colex) -> dict:
    """JSON-ready document; indices are preserved exactly."""
    return {
        "format": FORMAT_TAG,
        "genus": g.genus,
        "vertices": g.n,
        "edges": [[u, v, c.value] for (u, v, c) in g.edges],
        "faces": [
            {"color": c.value, "boundary": list(boundary)} for (boundary, c) in g.faces
        ],
        "rotation": [list(rot) for rot in g.rotation],
        "meta": dict(g.meta),
    }


def colex_to_json(g: Colex) -> str:
    return json.dumps(save_colex(g), indent=1, sort_keys=True)


def colex_fingerprint(g: Colex) -> str:
    doc = save_colex(g)
    doc.pop("meta", None)
    blob = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def load_colex(doc, validate: bool = True) -> Colex:
    """Parse a colex document (dict or JSON text) and validate it.

    Raises ColexFormatError for schema problems (naming the offending
    field) and ColexValidationError when a structural invariant fails.
    """
    if isinstance(doc, (str, bytes)):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ColexFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ColexFormatError("document root must be an object")

    for key in ("genus", "vertices", "edges", "faces", "rotation"):
        if key not in doc:
            raise ColexFormatError(f"missing field {key!r}")
    genus = doc["genus"]
    n = doc["vertices"]
    if not isinstance(genus, int) or genus < 0:
        raise ColexFormatError("'genus' must be a non-negative integer")
    if not isinstance(n, int) or n <= 0:
        raise ColexFormatError("'vertices' must be a positive integer")

    edges = []
    for idx, item in enumerate(doc["edges"]):
        if not (isinstance(item, (list, tuple)) and len(item) == 3):
            raise ColexFormatError(f"edge {idx} must be [u, v, color]")
        u, v, c = item
        if not (isinstance(u, int) and isinstance(v, int)):
            raise ColexFormatError(f"edge {idx} endpoints must be integers")
        edges.append((u, v, Color.parse(str(c))))

    faces = []
    for idx, item in enumerate(doc["faces"]):
        if not isinstance(item, dict):
            raise ColexFormatError(f"face {idx} must be an object")
        if "color" not in item:
            raise ColexFormatError(f"face {idx} is missing its color")
        if "boundary" not in item:
            raise ColexFormatError(f"face {idx} is missing its boundary")
        boundary = item["boundary"]
        if not (isinstance(boundary, list) and all(isinstance(v, int) for v in boundary)):
            raise ColexFormatError(f"face {idx} boundary must be a list of vertex ids")
        faces.append((tuple(boundary), Color.parse(str(item["color"]))))

    rotation = []
    for idx, item in enumerate(doc["rotation"]):
        if not (isinstance(item, (list, tuple)) and len(item) == 3):
            raise ColexFormatError(f"rotation entry {idx} must list exactly 3 edge ids")
        if not all(isinstance(e, int) and 0 <= e < len(edges) for e in item):
            raise ColexFormatError(f"rotation entry {idx} has an invalid edge id")
        rotation.append(tuple(item))
    if len(rotation) != n:
        raise ColexFormatError(
            f"rotation has {len(rotation)} entries but 'vertices' is {n}"
        )

    meta = doc.get("meta", {})
    g = Colex(
        n=n,
        edges=tuple(edges),
        faces=tuple(faces),
        rotation=tuple(rotation),
        genus=genus,
        meta=dict(meta) if isinstance(meta, dict) else {},
    )
    if validate:
        rep = validate_colex(g)
        if not rep.ok:
            first = rep.failures[0]
            raise ColexValidationError(
                f"colex validation failed at check '{first.name}': {first.detail}"
            )
    return g
