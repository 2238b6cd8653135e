"""Ideal triangulations of punctured surfaces and normal-coordinate combinatorics.

Conventions (used throughout the engine):

* A triangulation is a list of triangles; each triangle is an ordered triple
  of edge ids giving its sides in counterclockwise order.  Every edge id
  occurs in exactly two side slots globally; the two occurrences are glued
  with reversed orientation (the surface is oriented, all triangles ccw).
* Inside a triangle, side j runs ccw from corner (j+1)%3 to corner (j+2)%3,
  so corner k is flanked by sides k+1 and k+2 and is opposite side k.
* A normal multicurve is a vector of edge weights.  In a triangle with side
  weights (a, b, c) the number of arcs cutting off corner k is
  (w[k+1] + w[k+2] - w[k]) / 2; admissibility is non-negativity of these
  corner counts plus parity of a + b + c.
* Strand positions along side j are numbered 0 .. w-1 from the start corner
  (j+1); positions glue across an edge by p <-> w-1-p.
* A closed path is a word: a cyclic tuple of side-slot crossings (t, j),
  each meaning "leave triangle t through its side j".  Words are freely
  reduced by cancelling a crossing followed immediately by its partner slot;
  a reduced word meets every edge minimally, so its crossing counts are
  normal coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass


class TriangulationError(ValueError):
    pass


@dataclass(frozen=True)
class TracedComponent:
    """One component of a traced multicurve."""

    vector: tuple[int, ...]
    word: tuple[tuple[int, int], ...]
    arcs: tuple[tuple[int, int, int], ...]  # (triangle, corner, depth), word-aligned
    peripheral_vertex: int | None  # vertex label if vertex-linking, else None


class Triangulation:
    """Immutable labelled ideal triangulation with tracked vertex labels."""

    __slots__ = (
        "tri",
        "nedges",
        "vlabels",
        "_partner",
        "_slots",
        "_corner_vertex",
        "_peripheral_vectors",
        "_hash",
    )

    @staticmethod
    def corner_vertex_static(vlabels, t, k):
        return vlabels[3 * t + k]

    def __init__(self, tri, nedges, vlabels=None):
        self.tri = tuple(tuple(t) for t in tri)
        self.nedges = nedges
        slots = {}
        for t, sides in enumerate(self.tri):
            if len(sides) != 3:
                raise TriangulationError("triangles need exactly three sides")
            for j, e in enumerate(sides):
                slots.setdefault(e, []).append((t, j))
        if sorted(slots) != list(range(nedges)) or any(len(v) != 2 for v in slots.values()):
            raise TriangulationError("every edge id must occur in exactly two side slots")
        self._slots = {e: tuple(v) for e, v in slots.items()}
        partner = {}
        for e, (s1, s2) in self._slots.items():
            partner[s1] = s2
            partner[s2] = s1
        self._partner = partner
        orbits = self._corner_orbits()
        if vlabels is None:
            vlabels = [0] * (3 * len(self.tri))
            for label, orbit in enumerate(sorted(orbits, key=min)):
                for c in orbit:
                    vlabels[c] = label
            vlabels = tuple(vlabels)
        else:
            vlabels = tuple(vlabels)
            for orbit in orbits:
                if len({vlabels[c] for c in orbit}) != 1:
                    raise TriangulationError("vertex labels do not respect corner orbits")
        self.vlabels = vlabels
        self._corner_vertex = vlabels
        peripheral = {}
        for v in set(vlabels):
            pv = [0] * nedges
            for t, sides in enumerate(self.tri):
                for j, e in enumerate(sides):
                    # Side j runs from corner j+1 to corner j+2; count ends at v.
                    pv[e] += (self.corner_vertex_static(vlabels, t, (j + 1) % 3) == v) + (
                        self.corner_vertex_static(vlabels, t, (j + 2) % 3) == v
                    )
            # Each edge end is seen from both of its side slots.
            peripheral[tuple(w // 2 for w in pv)] = v
        self._peripheral_vectors = peripheral
        self._hash = hash((self.tri, self.vlabels))

    # -- basic structure ---------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Triangulation) and self.tri == other.tri and self.vlabels == other.vlabels

    def __hash__(self):
        return self._hash

    @property
    def ntriangles(self):
        return len(self.tri)

    @property
    def nvertices(self):
        return len(set(self.vlabels))

    def partner(self, slot):
        """The other side slot glued to the same edge."""
        return self._partner[slot]

    def edge_slots(self, e):
        return self._slots[e]

    def corner_vertex(self, t, k):
        return self._corner_vertex[3 * t + k]

    def _corner_orbits(self):
        # Rotating around a vertex: from corner (t, k) cross side k+1 into the
        # partner slot (t', j'); the next corner in the fan is (t', j'+1).
        seen = set()
        orbits = []
        for t in range(len(self.tri)):
            for k in range(3):
                if 3 * t + k in seen:
                    continue
                orbit = []
                cur = (t, k)
                while 3 * cur[0] + cur[1] not in seen:
                    orbit.append(3 * cur[0] + cur[1])
                    seen.add(3 * cur[0] + cur[1])
                    t2, j2 = self._partner[(cur[0], (cur[1] + 1) % 3)]
                    cur = (t2, (j2 + 1) % 3)
                orbits.append(orbit)
        return orbits

    def euler_characteristic(self):
        return self.nvertices - self.nedges + self.ntriangles

    # -- normal coordinates ------------------------------------------------

    def corner_count(self, vec, t, k):
        s = self.tri[t]
        return (vec[s[(k + 1) % 3]] + vec[s[(k + 2) % 3]] - vec[s[k]]) // 2

    def check_admissible(self, vec):
        """Raise TriangulationError unless vec is an admissible weight vector."""
        if len(vec) != self.nedges:
            raise TriangulationError("weight vector has wrong length")
        if any(w < 0 for w in vec):
            raise TriangulationError("negative edge weight")
        for t in range(len(self.tri)):
            a, b, c = (vec[e] for e in self.tri[t])
            if (a + b + c) % 2:
                raise TriangulationError(f"odd weight sum in triangle {t}")
            for k in range(3):
                if self.corner_count(vec, t, k) < 0:
                    raise TriangulationError(f"triangle inequality fails in triangle {t}")

    def is_admissible(self, vec):
        try:
            self.check_admissible(vec)
        except TriangulationError:
            return False
        return True

    # -- tracing -----------------------------------------------------------

    def _arc_at(self, vec, t, j, p):
        """Arc (t, k, m) with an endpoint at position p on side (t, j).

        Also returns the traversal direction implied by entering there:
        +1 if the entered endpoint is on side k+1 (so we exit via k+2).
        """
        ca = self.corner_count(vec, t, (j + 1) % 3)
        if p < ca:
            # Arc around the start corner j+1 of this side; we entered via the
            # side that is this corner's k+2 (= j), so we exit via k+1.
            return (t, (j + 1) % 3, p), -1
        w = vec[self.tri[t][j]]
        return (t, (j + 2) % 3, w - 1 - p), +1

    def _arc_endpoint(self, vec, t, k, m, direction):
        """Exit slot and position for arc (t, k, m) moving in direction d."""
        if direction == +1:
            return (t, (k + 2) % 3), m
        return (t, (k + 1) % 3), vec[self.tri[t][(k + 1) % 3]] - 1 - m

    def trace(self, vec):
        """Decompose an admissible vector into traced components.

        Components are returned sorted by (vector, word) for determinism.
        """
        self.check_admissible(vec)
        visited = set()
        components = []
        for t0 in range(len(self.tri)):
            for k0 in range(3):
                for m0 in range(self.corner_count(vec, t0, k0)):
                    if (t0, k0, m0) in visited:
                        continue
                    arcs = []
                    word = []
                    arc, direction = (t0, k0, m0), +1
                    while arc not in visited:
                        visited.add(arc)
                        arcs.append(arc)
                        slot, pos = self._arc_endpoint(vec, *arc, direction)
                        word.append(slot)
                        t2, j2 = self.partner(slot)
                        w = vec[self.tri[slot[0]][slot[1]]]
                        arc, direction = self._arc_at(vec, t2, j2, w - 1 - pos)
                    cvec = [0] * self.nedges
                    for t, j in word:
                        cvec[self.tri[t][j]] += 1
                    peripheral = self._peripheral_vectors.get(tuple(cvec))
                    components.append(
                        TracedComponent(tuple(cvec), tuple(word), tuple(arcs), peripheral)
                    )
        components.sort(key=lambda c: (c.vector, c.word))
        return components

    # -- words ---------------------------------------------------------------

    def reduce_word(self, word):
        """Cyclic free reduction: drop a crossing followed by its partner slot."""
        stack = []
        for c in word:
            if stack and c == self.partner(stack[-1]):
                stack.pop()
            else:
                stack.append(c)
        while len(stack) >= 2 and stack[0] == self.partner(stack[-1]):
            stack.pop()
            stack.pop(0)
        return tuple(stack)

    def word_vector(self, word):
        vec = [0] * self.nedges
        for t, j in word:
            vec[self.tri[t][j]] += 1
        return tuple(vec)

    def word_is_closed(self, word):
        """Check that consecutive crossings are compatible (cyclically)."""
        for i, (t, j) in enumerate(word):
            t2, _ = self.partner((t, j))
            if word[(i + 1) % len(word)][0] != t2:
                return False
        return True

    # -- flips ---------------------------------------------------------------

    def flippable(self, e):
        (t1, _), (t2, _) = self._slots[e]
        return t1 != t2

    def flip(self, e):
        """The triangulation after flipping edge e (same edge ids, new gluing)."""
        (t1, j1), (t2, j2) = self._slots[e]
        if t1 == t2:
            raise TriangulationError(f"edge {e} is not flippable")
        tri = [list(t) for t in self.tri]
        p_edge = self.tri[t1][(j1 + 1) % 3]
        q_edge = self.tri[t1][(j1 + 2) % 3]
        r_edge = self.tri[t2][(j2 + 1) % 3]
        s_edge = self.tri[t2][(j2 + 2) % 3]
        tri[t1][j1] = e
        tri[t1][(j1 + 1) % 3] = q_edge
        tri[t1][(j1 + 2) % 3] = r_edge
        tri[t2][j2] = e
        tri[t2][(j2 + 1) % 3] = s_edge
        tri[t2][(j2 + 2) % 3] = p_edge
        new = Triangulation(tri, self.nedges, vlabels=self._match_vertices(tri, (t1, t2)))
        return new

    def _match_vertices(self, newtri, flipped):
        """Transport vertex labels through a flip by matching unmoved corners."""
        scratch = Triangulation(newtri, self.nedges)
        orbits = scratch._corner_orbits()
        labels = [None] * (3 * len(newtri))
        used = set()
        unmatched = []
        for orbit in sorted(orbits, key=min):
            cand = {self.vlabels[c] for c in orbit if c // 3 not in flipped}
            if len(cand) > 1:
                raise TriangulationError("vertex tracking failed across flip")
            if cand:
                label = cand.pop()
                used.add(label)
                for c in orbit:
                    labels[c] = label
            else:
                unmatched.append(orbit)
        free = sorted(set(self.vlabels) - used)
        if len(free) != len(unmatched):
            raise TriangulationError("vertex tracking failed across flip")
        for label, orbit in zip(free, unmatched):
            for c in orbit:
                labels[c] = label
        return tuple(labels)

    def flip_vector(self, e, vec):
        """Transport normal coordinates through the flip of edge e."""
        (t1, j1), (t2, j2) = self._slots[e]
        if t1 == t2:
            raise TriangulationError(f"edge {e} is not flippable")
        p = vec[self.tri[t1][(j1 + 1) % 3]]
        q = vec[self.tri[t1][(j1 + 2) % 3]]
        r = vec[self.tri[t2][(j2 + 1) % 3]]
        s = vec[self.tri[t2][(j2 + 2) % 3]]
        out = list(vec)
        out[e] = max(p + r, q + s) - vec[e]
        return tuple(out)

    def key(self):
        return (self.tri, self.vlabels)


# -- standard triangulations ------------------------------------------------


def _once_punctured_torus():
    # Unit square with both pairs of sides identified, diagonal from (0,0) to
    # (1,1); edges 0 horizontal, 1 vertical, 2 diagonal.  The curve of slope
    # p/q has weights (|p|, |q|, |p - q|).
    return Triangulation([(0, 1, 2), (2, 0, 1)], 3)


def _punctured_sphere(p):
    # Bipyramid over a (p-2)-gon: apexes N, S and equator vertices.  Vertices
    # are N=0, S=1, equator 2..p-1; edge ids: N-spokes, S-spokes, equator.
    n = p - 2
    if n < 2:
        raise TriangulationError("punctured sphere needs at least 4 punctures")
    north = {i: i for i in range(n)}  # N to equator vertex 2+i
    south = {i: n + i for i in range(n)}
    equator = {i: 2 * n + i for i in range(n)}  # between 2+i and 2+(i+1)%n
    tri = []
    for i in range(n):
        j = (i + 1) % n
        tri.append((equator[i], north[j], north[i]))
        tri.append((equator[i], south[i], south[j]))
    return Triangulation(tri, 3 * n)


def _twice_punctured_torus():
    # Two unit squares side by side spanning a torus, both diagonals drawn;
    # punctures at integer points with even/odd x.  Edges: 0, 1 horizontal
    # halves, 2, 3 vertical loops, 4, 5 diagonals.
    tri = [(3, 4, 0), (0, 2, 4), (2, 5, 1), (1, 3, 5)]
    return Triangulation(tri, 6)


_STANDARD = {}


def standard_triangulation(genus, punctures):
    """The fixed ideal triangulation used for normal coordinates on S_{g,p}."""
    key = (genus, punctures)
    if key not in _STANDARD:
        if key == (1, 1):
            t = _once_punctured_torus()
        elif key == (1, 2):
            t = _twice_punctured_torus()
        elif genus == 0 and punctures >= 4:
            t = _punctured_sphere(punctures)
        else:
            raise TriangulationError(
                f"no curve representation for S_{{{genus},{punctures}}}"
            )
        expected_chi = 2 - 2 * genus - 0
        if t.nvertices != punctures or t.euler_characteristic() != expected_chi:
            raise TriangulationError("standard triangulation failed validation")
        _STANDARD[key] = t
    return _STANDARD[key]


def slope_vector(p, q):
    """Normal coordinates of the slope p/q on the once-punctured torus."""
    return (abs(p), abs(q), abs(p - q))


def vector_slope(vec):
    """Inverse of slope_vector; None if the vector is not a single slope."""
    from math import gcd

    a, b, c = vec
    if c == abs(a - b):
        p, q = a, b
    elif c == a + b and a and b:
        p, q = -a, b
    else:
        return None
    if p == 0 and q == 0:
        return None
    if gcd(abs(p), abs(q)) != 1:
        return None
    return (p, q)
