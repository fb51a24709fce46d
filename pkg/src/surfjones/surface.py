"""The closed surface carrying a diagram, and its mod 2 homology.

Faces are traced with ``next = rot_succ(partner(x))``: the walk turns right
at every crossing, so each face lies to the right of its walk.  The corner
between slots ``s`` and ``s+1`` of a crossing belongs to the face containing
the dart in slot ``s+1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .gauss import Diagram
from .linalg import GF2Matrix, extend_basis, echelon, inverse, kernel, parity


@dataclass(frozen=True, eq=False)
class RibbonSurface:
    diagram: Diagram
    faces: tuple[tuple[int, ...], ...]
    face_of: tuple[int, ...]
    # connected pieces: (crossings, edge indices, face indices)
    pieces: tuple[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]], ...]

    @property
    def n(self) -> int:
        return self.diagram.n

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    @property
    def euler_characteristic(self) -> int:
        # crossingless circles each add a sphere
        return self.n - 2 * self.n + self.num_faces + 2 * self.diagram.n_circles

    @cached_property
    def piece_genera(self) -> tuple[int, ...]:
        out = []
        for crossings, edges, faces in self.pieces:
            chi = len(crossings) - len(edges) + len(faces)
            out.append((2 - chi) // 2)
        return tuple(out)

    @property
    def genus(self) -> int:
        return sum(self.piece_genera)

    @property
    def num_pieces(self) -> int:
        return len(self.pieces) + self.diagram.n_circles

    def corner_face(self, crossing: int, quadrant: int) -> int:
        """Face containing the corner between slots ``quadrant`` and ``quadrant+1``."""
        return self.face_of[4 * crossing + (quadrant + 1) % 4]

    def face_edge_vector(self, f: int) -> int:
        v = 0
        for x in self.faces[f]:
            v ^= 1 << self.diagram.edge_of[x]
        return v

    def dump(self) -> str:
        b0 = self.num_pieces
        lines = [
            f"genus {self.genus}",
            f"betti {b0} {2 * self.genus} {b0}",
            f"faces {self.num_faces}",
        ]
        for i, face in enumerate(self.faces):
            lines.append(f"face {i}: " + " ".join(map(str, face)))
        return "\n".join(lines)


def build_surface(d: Diagram) -> RibbonSurface:
    nd = d.num_darts
    face_of = [-1] * nd
    faces = []
    for start in range(nd):
        if face_of[start] >= 0:
            continue
        walk = []
        x = start
        while face_of[x] < 0:
            face_of[x] = len(faces)
            walk.append(x)
            x = Diagram.rot_succ(d.partner[x])
        faces.append(tuple(walk))

    # connected pieces of the 4-valent graph
    parent = list(range(d.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in d.edges:
        a, b = find(e.tail >> 2), find(e.head >> 2)
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots = sorted({find(c) for c in range(d.n)})
    pieces = []
    for root in roots:
        cs = tuple(c for c in range(d.n) if find(c) == root)
        es = tuple(i for i, e in enumerate(d.edges) if find(e.tail >> 2) == root)
        fs = tuple(i for i, f in enumerate(faces) if find(f[0] >> 2) == root)
        pieces.append((cs, es, fs))
    return RibbonSurface(d, tuple(faces), tuple(face_of), tuple(pieces))


@dataclass(frozen=True, eq=False)
class H1Presentation:
    """Mod 2 chain complex of the surface with a fixed basis of H_1.

    Edge chains are ints with bit ``e`` for edge ``e``.  ``cycle_basis`` are
    representatives of a basis of H_1; ``projection[j]`` is an edge cochain
    whose parity against a cycle gives its ``j``-th coordinate.
    """

    surface: RibbonSurface
    boundary1: GF2Matrix  # vertices x edges
    boundary2: GF2Matrix  # edges x faces
    z1_basis: tuple[int, ...]
    b1_basis: tuple[int, ...]
    cycle_basis: tuple[int, ...]
    projection: tuple[int, ...]

    @property
    def num_edges(self) -> int:
        return self.boundary1.ncols

    @property
    def dim(self) -> int:
        return len(self.cycle_basis)

    def is_cycle(self, chain: int) -> bool:
        return self.boundary1.apply(chain) == 0

    def coordinates(self, chain: int) -> int:
        """H_1 coordinates of a cycle as a bit vector (no cycle check)."""
        out = 0
        for j, p in enumerate(self.projection):
            if parity(p & chain):
                out |= 1 << j
        return out


def homology(s: RibbonSurface) -> H1Presentation:
    d = s.diagram
    ne = d.num_edges
    vertex_rows = [0] * d.n
    for i, e in enumerate(d.edges):
        vertex_rows[e.tail >> 2] ^= 1 << i
        vertex_rows[e.head >> 2] ^= 1 << i
    d1 = GF2Matrix(tuple(vertex_rows), ne)
    face_vectors = [s.face_edge_vector(f) for f in range(s.num_faces)]
    d2 = GF2Matrix(tuple(face_vectors), ne).transpose()

    z1 = kernel(d1)
    b1 = echelon(face_vectors)
    reps = extend_basis(b1, z1)

    # cocycles: edge functionals killing every face boundary, modulo vertex stars
    cocycles = kernel(GF2Matrix(tuple(face_vectors), ne))
    coboundaries = echelon(vertex_rows)
    cobasis = extend_basis(coboundaries, cocycles)
    g2 = len(reps)
    if len(cobasis) != g2:
        raise RuntimeError("homology and cohomology dimensions disagree")
    pairing = GF2Matrix(
        tuple(
            sum(parity(phi & h) << j for j, h in enumerate(reps)) for phi in cobasis
        ),
        g2,
    )
    inv = inverse(pairing) if g2 else GF2Matrix((), 0)
    projection = []
    for j in range(g2):
        p = 0
        for i in range(g2):
            if (inv.rows[j] >> i) & 1:
                p ^= cobasis[i]
        projection.append(p)
    return H1Presentation(
        s, d1, d2, tuple(z1), tuple(b1), tuple(reps), tuple(projection)
    )


def cycle_class(h: H1Presentation, cyc: int) -> int:
    """Coordinates of the class of ``cyc`` in the fixed H_1 basis."""
    if not h.is_cycle(cyc):
        raise ValueError("chain is not a cycle")
    return h.coordinates(cyc)


def is_checkerboard(s: RibbonSurface) -> bool:
    """Two-colour the faces so the faces on either side of each edge differ."""
    d = s.diagram
    colour = [-1] * s.num_faces
    adj: list[list[int]] = [[] for _ in range(s.num_faces)]
    for e in d.edges:
        f, g = s.face_of[e.tail], s.face_of[e.head]
        if f == g:
            return False
        adj[f].append(g)
        adj[g].append(f)
    for root in range(s.num_faces):
        if colour[root] >= 0:
            continue
        colour[root] = 0
        stack = [root]
        while stack:
            f = stack.pop()
            for g in adj[f]:
                if colour[g] < 0:
                    colour[g] = 1 - colour[f]
                    stack.append(g)
                elif colour[g] == colour[f]:
                    return False
    return True


def nugatory_crossings(d: Diagram, s: RibbonSurface, h: H1Presentation) -> set[int]:
    """Crossings admitting a separating curve through opposite corners.

    For the corner pair (q, q+2) the curve runs inside the common face and
    crosses the crossing beside the darts in slots q+1 and q+2, so its
    intersection with a cycle z is z(edge(q+1)) + z(edge(q+2)).
    """
    out = set()
    for c in range(d.n):
        for q in (0, 1):
            if s.corner_face(c, q) != s.corner_face(c, q + 2):
                continue
            e1 = d.edge_of[4 * c + (q + 1) % 4]
            e2 = d.edge_of[4 * c + (q + 2) % 4]
            if all(((z >> e1) ^ (z >> e2)) & 1 == 0 for z in h.cycle_basis):
                out.add(c)
                break
    return out


def is_reduced(d: Diagram, s: RibbonSurface, h: H1Presentation) -> bool:
    return not nugatory_crossings(d, s, h)
