"""Isotopy classes of essential multicurves and their exact operations.

On complexity-one surfaces curves are reduced slopes (the Farey fast path);
everywhere else they are normal coordinates on the fixed triangulation of
the surface.  All operations are exact integer computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from . import kernels
from .regions import RegionDecomposition
from .shortpos import core_crossings, shorten, twist_word
from .surface import DomainError, Surface, complexity
from .triangulation import (
    TriangulationError,
    slope_vector,
    standard_triangulation,
    vector_slope,
)


def twist_step(surface):
    """Intersection of adjacent curves: 1 on the torus side, 2 on spheres."""
    return 1 if surface.genus >= 1 else 2


@dataclass(frozen=True, order=True)
class MultiCurve:
    """An isotopy class of essential simple closed multicurves."""

    surface: Surface
    slope: tuple[int, int] | None = None
    mult: int = 0
    coords: tuple[int, ...] | None = None

    @property
    def kind(self):
        return "slope" if self.slope is not None or self.coords is None else "normal"

    def is_empty(self):
        if self.coords is not None:
            return not any(self.coords)
        return self.slope is None

    def is_connected(self):
        if self.is_empty():
            return False
        if self.slope is not None:
            return self.mult == 1
        return len(self.components()) == 1

    def components(self):
        """Connected components, parallel copies repeated."""
        if self.is_empty():
            return []
        if self.slope is not None:
            one = MultiCurve(self.surface, slope=self.slope, mult=1)
            return [one] * self.mult
        return [
            MultiCurve(self.surface, coords=v)
            for v in _traced_component_vectors(self.surface, self.coords)
        ]

    def component_classes(self):
        """Distinct component classes, deterministic order."""
        seen = []
        for c in self.components():
            if c not in seen:
                seen.append(c)
        return sorted(seen)

    def canonical_key(self):
        if self.slope is not None:
            return ("slope", self.slope, self.mult)
        if self.coords is not None:
            return ("normal", self.coords)
        return ("empty",)

    def to_json(self):
        out = {"surface": self.surface.to_json()}
        if self.is_empty():
            out["repr"] = "slope" if complexity(self.surface) == 1 else "normal"
            out["coords"] = (
                "" if out["repr"] == "slope" else [0] * _std(self.surface).nedges
            )
            return out
        if self.slope is not None:
            if self.mult != 1:
                raise DomainError("cannot serialize parallel slope copies")
            out["repr"] = "slope"
            out["coords"] = f"{self.slope[0]}/{self.slope[1]}"
        else:
            out["repr"] = "normal"
            out["coords"] = list(self.coords)
        return out

    @classmethod
    def from_json(cls, data):
        surface = Surface.from_json(data["surface"])
        if data["repr"] == "slope":
            text = data["coords"]
            if text == "":
                return empty_curve(surface)
            p, _, q = text.partition("/")
            return from_slope(surface, int(p), int(q) if q else 1)
        return normalize(surface, [int(x) for x in data["coords"]])

    def __repr__(self):
        if self.is_empty():
            return f"MultiCurve(empty on {self.surface!r})"
        if self.slope is not None:
            m = f" x{self.mult}" if self.mult != 1 else ""
            return f"MultiCurve({self.slope[0]}/{self.slope[1]}{m} on {self.surface!r})"
        return f"MultiCurve({list(self.coords)} on {self.surface!r})"


def _std(surface):
    if surface.punctures == 0:
        raise DomainError("closed surfaces have no curve representation here")
    return standard_triangulation(surface.genus, surface.punctures)


def empty_curve(surface):
    if complexity(surface) == 1:
        return MultiCurve(surface)
    return MultiCurve(surface, coords=(0,) * _std(surface).nedges)


def from_slope(surface, p, q):
    if complexity(surface) != 1:
        raise DomainError("slope representation needs a complexity-one surface")
    return MultiCurve(surface, slope=kernels.slope_reduce(p, q), mult=1)


@lru_cache(maxsize=None)
def _traced_component_vectors(surface, coords):
    T = _std(surface)
    return tuple(c.vector for c in T.trace(coords))


def normalize(surface, raw):
    """Canonical multicurve from raw normal coordinates.

    Verifies the triangle inequalities and parity, strips peripheral
    components, and returns the canonical representative (slope form on
    complexity-one surfaces).
    """
    T = _std(surface)
    raw = tuple(int(x) for x in raw)
    try:
        T.check_admissible(raw)
    except TriangulationError as exc:
        raise DomainError(f"malformed coordinates: {exc}") from exc
    comps = [c for c in T.trace(raw) if c.peripheral_vertex is None]
    vec = [0] * T.nedges
    for c in comps:
        for e, w in enumerate(c.vector):
            vec[e] += w
    vec = tuple(vec)
    if complexity(surface) == 1:
        if not any(vec):
            return MultiCurve(surface)
        classes = {c.vector for c in comps}
        if len(classes) != 1:
            raise DomainError("distinct slopes cannot be disjoint")
        if surface.genus == 1:
            slope = vector_slope(next(iter(classes)))
        else:
            slope = _sphere_vector_slope(surface, next(iter(classes)))
        if slope is None:
            raise DomainError("vector is not a slope curve")
        return MultiCurve(surface, slope=slope, mult=len(comps))
    return MultiCurve(surface, coords=vec)


def intersection_number(a, b):
    """Geometric (minimal) intersection number of two multicurves."""
    if a.surface != b.surface:
        raise DomainError("curves live on different surfaces")
    if a.is_empty() or b.is_empty():
        return 0
    if a.slope is not None:
        d = kernels.slope_det(*a.slope, *b.slope)
        return a.mult * b.mult * twist_step(a.surface) * abs(d)
    if a == b:
        return 0
    if disjoint(a, b):
        return 0
    T = _std(a.surface)
    total = 0
    for vec in _traced_component_vectors(a.surface, a.coords):
        sp = shorten(T, vec)
        pushed = sp.push(b.coords)
        for comp in sp.tri.trace(pushed):
            total += core_crossings(sp.tri, sp.annulus, comp.word)
    return total


def disjoint(a, b):
    """Exact disjointness test: the union must trace to the disjoint union."""
    if a.surface != b.surface:
        raise DomainError("curves live on different surfaces")
    if a.is_empty() or b.is_empty():
        return True
    if a.slope is not None:
        return a.slope == b.slope
    merged = sorted(
        _traced_component_vectors(a.surface, a.coords)
        + _traced_component_vectors(b.surface, b.coords)
    )
    total = tuple(x + y for x, y in zip(a.coords, b.coords))
    return sorted(_traced_component_vectors(a.surface, total)) == merged


def union(a, b):
    """The multicurve a + b; the parts must be disjoint."""
    if not disjoint(a, b):
        raise DomainError("union of intersecting curves")
    if a.is_empty():
        return b
    if b.is_empty():
        return a
    if a.slope is not None:
        return MultiCurve(a.surface, slope=a.slope, mult=a.mult + b.mult)
    return MultiCurve(a.surface, coords=tuple(x + y for x, y in zip(a.coords, b.coords)))


def dehn_twist(a, c, n):
    """Image of a under the n-th power of the left Dehn twist about c."""
    if a.surface != c.surface:
        raise DomainError("curves live on different surfaces")
    if not c.is_connected():
        raise DomainError("can only twist about a connected curve")
    if n == 0 or a.is_empty():
        return a
    if a.slope is not None:
        return MultiCurve(
            a.surface,
            slope=kernels.twist_slope(*a.slope, *c.slope, n, twist_step(a.surface)),
            mult=a.mult,
        )
    T = _std(a.surface)
    sp = shorten(T, c.coords)
    pushed = sp.push(a.coords)
    out = [0] * T.nedges
    for comp in sp.tri.trace(pushed):
        w2 = twist_word(sp.tri, sp.annulus, comp.word, n)
        for e, w in enumerate(sp.tri.word_vector(w2)):
            out[e] += w
    result = MultiCurve(a.surface, coords=sp.pull(tuple(out)))
    return result


@lru_cache(maxsize=None)
def _enumerate_normal(surface, cap):
    """Connected essential normal vectors of total weight at most cap."""
    T = _std(surface)
    ne = T.nedges
    tri_by_last = [[] for _ in range(ne)]
    for t, sides in enumerate(T.tri):
        tri_by_last[max(sides)].append(t)
    out = []
    vec = [0] * ne

    def admissible_triangle(t):
        a, b, c = (vec[e] for e in T.tri[t])
        return (a + b + c) % 2 == 0 and a <= b + c and b <= a + c and c <= a + b

    def rec(i, budget):
        if i == ne:
            if any(vec):
                v = tuple(vec)
                comps = T.trace(v)
                if len(comps) == 1 and comps[0].peripheral_vertex is None:
                    out.append(v)
            return
        for w in range(budget + 1):
            vec[i] = w
            if all(admissible_triangle(t) for t in tri_by_last[i]):
                rec(i + 1, budget - w)
        vec[i] = 0

    rec(0, cap)
    out.sort()
    return tuple(out)


def enumerate_curves(surface, cap):
    """All connected essential curves with weight (or slope height) <= cap."""
    if cap < 0:
        raise DomainError("cap must be non-negative")
    if complexity(surface) == 1:
        slopes = []
        for q in range(0, cap + 1):
            for p in range(-cap, cap + 1):
                if q == 0 and (p, q) != (1, 0):
                    continue
                if gcd(abs(p), q) != 1 and (p, q) != (1, 0):
                    continue
                slopes.append((max(abs(p), q), q, p))
        slopes.sort()
        return [
            MultiCurve(surface, slope=(p, q), mult=1) for (_h, q, p) in slopes
        ]
    return [
        MultiCurve(surface, coords=v) for v in _enumerate_normal(surface, cap)
    ]


@lru_cache(maxsize=None)
def _region_decomposition_cached(surface, coords):
    return RegionDecomposition(_std(surface), coords)


def region_decomposition(delta):
    if delta.coords is None:
        raise DomainError("region decomposition needs normal coordinates")
    return _region_decomposition_cached(delta.surface, delta.coords)


def curve_region(delta, x):
    """The complementary region of delta containing the curve x."""
    rd = region_decomposition(delta)
    try:
        return rd.region_of_disjoint_curve(x.coords)
    except TriangulationError as exc:
        raise DomainError(str(exc)) from exc


# -- complexity-one sphere slopes --------------------------------------------


@lru_cache(maxsize=None)
def _sphere_chart_basis(surface):
    """Basis (u, v, w) of slope curves ∞, 0, 1 on a four-holed sphere."""
    T = _std(surface)
    pool = _enumerate_normal(surface, 8)
    u = pool[0]
    step = 2

    def inter(x, y):
        a = MultiCurve(surface, coords=x)
        b = MultiCurve(surface, coords=y)
        return intersection_number(a, b)

    v = next(x for x in pool if inter(u, x) == step)
    w = next(x for x in pool if inter(u, x) == step and inter(v, x) == step)
    return u, v, w


def _sphere_vector_slope(surface, vec):
    u, v, w = _sphere_chart_basis(surface)
    a = MultiCurve(surface, coords=vec)
    step = 2
    iu = intersection_number(a, MultiCurve(surface, coords=u))
    iv = intersection_number(a, MultiCurve(surface, coords=v))
    iw = intersection_number(a, MultiCurve(surface, coords=w))
    if iu % step or iv % step or iw % step:
        return None
    q, p_abs, r = iu // step, iv // step, iw // step
    if q == 0:
        return (1, 0) if p_abs == 1 else None
    if p_abs == 0:
        return (0, 1) if q == 1 else None
    if r == abs(p_abs - q):
        return (p_abs, q)
    if r == p_abs + q:
        return (-p_abs, q)
    return None
