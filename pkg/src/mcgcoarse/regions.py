"""Complementary regions of a normal multicurve.

Cutting a triangulation along the strands of a multicurve splits every
triangle into corner stacks and one central piece; gluing the pieces across
edge segments yields the complementary regions.  Each region is classified
by genus, boundary circles (sides of the multicurve components) and interior
punctures, which is enough to identify pieces of a partition across
retriangulations by flips.
"""

from __future__ import annotations

from dataclasses import dataclass

from .triangulation import TriangulationError


CENTRAL = ("central",)


def _local_region_of_segment(tri, vec, corner_counts, t, j, s):
    """Local region touching segment s (0..w) of side j in triangle t."""
    ca = corner_counts[t][(j + 1) % 3]
    cb = corner_counts[t][(j + 2) % 3]
    w = ca + cb
    if s < ca:
        return ("corner", (j + 1) % 3, s)
    if s > w - cb:
        return ("corner", (j + 2) % 3, w - s)
    return CENTRAL


@dataclass(frozen=True)
class Region:
    """One complementary piece of a multicurve (before discarding S_{0,3}s)."""

    index: int
    genus: int
    boundary: tuple[tuple[int, int], ...]  # (component index, side 0=left/1=right)
    interior_punctures: frozenset[int]  # vertex labels

    @property
    def punctures(self):
        """Boundary circles and interior punctures, conflated."""
        return len(self.boundary) + len(self.interior_punctures)

    @property
    def complexity(self):
        return 3 * self.genus - 3 + self.punctures

    def key(self):
        """Flip-invariant identity of the piece inside its partition."""
        return (self.genus, self.punctures, self.interior_punctures, tuple(sorted(self.boundary)))


class RegionDecomposition:
    """Regions of T cut along the multicurve vec, with lookup helpers."""

    def __init__(self, T, vec):
        T.check_admissible(vec)
        self.T = T
        self.vec = tuple(vec)
        self.components = T.trace(vec)
        if any(c.peripheral_vertex is not None for c in self.components):
            raise TriangulationError("multicurve has peripheral components")
        counts = [[T.corner_count(vec, t, k) for k in range(3)] for t in range(T.ntriangles)]
        self._counts = counts

        # Enumerate local regions and union-find them across edge segments.
        locals_ = []
        index = {}
        for t in range(T.ntriangles):
            for k in range(3):
                for d in range(counts[t][k]):
                    index[(t, ("corner", k, d))] = len(locals_)
                    locals_.append((t, ("corner", k, d)))
            index[(t, CENTRAL)] = len(locals_)
            locals_.append((t, CENTRAL))
        parent = list(range(len(locals_)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[ry] = rx

        gluings = []
        seen_slots = set()
        for e in range(T.nedges):
            (t1, j1), (t2, j2) = T.edge_slots(e)
            if (t1, j1) in seen_slots:
                continue
            seen_slots.add((t1, j1))
            seen_slots.add((t2, j2))
            w = vec[e]
            for s in range(w + 1):
                a = index[(t1, _local_region_of_segment(T.tri, vec, counts, t1, j1, s))]
                b = index[(t2, _local_region_of_segment(T.tri, vec, counts, t2, j2, w - s))]
                union(a, b)
                gluings.append((a, b))

        roots = sorted({find(x) for x in range(len(locals_))})
        root_index = {r: i for i, r in enumerate(roots)}
        self._local_to_region = {
            locals_[x]: root_index[find(x)] for x in range(len(locals_))
        }
        nregions = len(roots)

        pieces = [0] * nregions
        for x in range(len(locals_)):
            pieces[root_index[find(x)]] += 1
        glue_count = [0] * nregions
        for a, _b in gluings:
            glue_count[root_index[find(a)]] += 1

        # Interior punctures: all corners of a vertex must fall in one region.
        vertex_region = {}
        for t in range(T.ntriangles):
            for k in range(3):
                loc = ("corner", k, 0) if counts[t][k] > 0 else CENTRAL
                r = self._local_to_region[(t, loc)]
                v = T.corner_vertex(t, k)
                if vertex_region.setdefault(v, r) != r:
                    raise TriangulationError("puncture meets two regions")
        interior = {r: set() for r in range(nregions)}
        for v, r in vertex_region.items():
            interior[r].add(v)

        # Boundary circles: each multicurve component has a left and a right
        # side; all arcs of a component see one region per side.
        self._circle_region = {}
        for ci, comp in enumerate(self.components):
            # Traversal direction per arc: trace exits arc (t,k,m) via side
            # k+2 when moving "+1"; reconstruct directions from the word.
            for side in (0, 1):
                self._circle_region[(ci, side)] = None
            for pos, (t, k, m) in enumerate(comp.arcs):
                exit_slot = comp.word[pos]
                direction = +1 if exit_slot == (t, (k + 2) % 3) else -1
                toward = ("corner", k, m)
                away = ("corner", k, m + 1) if m + 1 < counts[t][k] else CENTRAL
                # Moving k+1 -> k+2 keeps the cut corner on the right.
                right_loc, left_loc = (toward, away) if direction == +1 else (away, toward)
                for side, loc in ((0, left_loc), (1, right_loc)):
                    r = self._local_to_region[(t, loc)]
                    prev = self._circle_region[(ci, side)]
                    if prev is None:
                        self._circle_region[(ci, side)] = r
                    elif prev != r:
                        raise TriangulationError("component side meets two regions")

        boundary = {r: [] for r in range(nregions)}
        for (ci, side), r in self._circle_region.items():
            boundary[r].append((ci, side))

        self.regions = []
        for r in range(nregions):
            b = len(boundary[r])
            # Cells of the compact piece: local regions, gluing segments and
            # boundary arc sides, interior punctures and boundary corner
            # copies; the arc sides cancel against their endpoints.
            chi = pieces[r] - glue_count[r] + len(interior[r])
            genus2 = 2 - b - chi
            if genus2 < 0 or genus2 % 2:
                raise TriangulationError("inconsistent region Euler characteristic")
            self.regions.append(
                Region(r, genus2 // 2, tuple(sorted(boundary[r])), frozenset(interior[r]))
            )

    def region_of_circle(self, component_index, side):
        """Region adjacent to the given side (0 left, 1 right) of a component."""
        return self.regions[self._circle_region[(component_index, side)]]

    def region_of_local(self, t, loc):
        return self.regions[self._local_to_region[(t, loc)]]

    def region_of_disjoint_curve(self, xvec):
        """Region containing a curve disjoint from the multicurve.

        The curve must be connected, essential, and not parallel to any
        component of the cutting multicurve.
        """
        total = tuple(a + b for a, b in zip(self.vec, xvec))
        joint = self.T.trace(total)
        remaining = [list(c.vector) for c in self.components]
        delta_comps = []
        x_comps = []
        for comp in joint:
            v = list(comp.vector)
            if v in remaining:
                remaining.remove(v)
                delta_comps.append(comp)
            else:
                x_comps.append(comp)
        if remaining or not x_comps:
            raise TriangulationError("curve is parallel to the cutting multicurve")
        delta_depths = {}
        for comp in delta_comps:
            for (t, k, m) in comp.arcs:
                delta_depths.setdefault((t, k), set()).add(m)
        region = None
        for comp in x_comps:
            for (t, k, m) in comp.arcs:
                d = sum(1 for dm in delta_depths.get((t, k), ()) if dm < m)
                ck = self._counts[t][k]
                loc = ("corner", k, d) if d < ck else CENTRAL
                r = self._local_to_region[(t, loc)]
                if region is None:
                    region = r
                elif region != r:
                    raise TriangulationError("curve meets two regions")
        return self.regions[region]
