"""Curve-complex distances: exact in the Farey cases, certified intervals above."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import kernels
from .curves import MultiCurve, disjoint, enumerate_curves, intersection_number
from .surface import DomainError, complexity


@dataclass(frozen=True, order=True)
class DistanceBound:
    """Interval [lo, hi] for a distance; hi None means unbounded."""

    lo: int
    hi: int | None
    exact: bool

    def __post_init__(self):
        if self.lo < 0:
            raise DomainError("distance lower bound must be non-negative")
        if self.hi is not None and self.lo > self.hi:
            raise DomainError("distance interval is inverted")
        if self.exact and self.lo != self.hi:
            raise DomainError("exact distance needs lo == hi")

    @classmethod
    def exactly(cls, d):
        return cls(d, d, True)

    def to_json(self):
        return {"lo": self.lo, "hi": "inf" if self.hi is None else self.hi, "exact": self.exact}

    @classmethod
    def from_json(cls, data):
        hi = data["hi"]
        return cls(int(data["lo"]), None if hi == "inf" else int(hi), bool(data["exact"]))


@dataclass(frozen=True, order=True)
class AnnularPoint:
    """Coordinate in an annular complex (an integer twisting number)."""

    twist: int


def farey_distance(a, b, torus_type=True):
    """Exact distance in the Farey graph between two slopes.

    Accepts slope pairs or slope-represented curves; the torus and
    four-holed-sphere Farey graphs are isometric, so torus_type only
    documents intent.
    """
    del torus_type
    pa = a.slope if isinstance(a, MultiCurve) else tuple(a)
    pb = b.slope if isinstance(b, MultiCurve) else tuple(b)
    if pa is None or pb is None:
        raise DomainError("farey distance needs slope curves")
    return kernels.farey_distance(*pa, *pb)


def annular_distance(x, y):
    """Distance in an annular complex: 0 when equal, else 1 + twist gap."""
    tx = x.twist if isinstance(x, AnnularPoint) else int(x)
    ty = y.twist if isinstance(y, AnnularPoint) else int(y)
    return 0 if tx == ty else 1 + abs(tx - ty)


def _log2_ceil(n):
    return (n - 1).bit_length()


@lru_cache(maxsize=None)
def _pool_adjacency(surface, cap):
    pool = tuple(enumerate_curves(surface, cap))
    adj = {i: [] for i in range(len(pool))}
    for i in range(len(pool)):
        for j in range(i + 1, len(pool)):
            if disjoint(pool[i], pool[j]):
                adj[i].append(j)
                adj[j].append(i)
    return pool, adj


def _bfs_upper(surface, alpha, beta, cap):
    """BFS distance through the enumerated curve pool; None if not found."""
    pool, adj = _pool_adjacency(surface, cap)
    nodes = list(pool)
    index = {c: i for i, c in enumerate(nodes)}
    graph = {i: list(adj[i]) for i in range(len(pool))}
    for extra in (alpha, beta):
        if extra not in index:
            k = len(nodes)
            index[extra] = k
            nodes.append(extra)
            graph[k] = []
            for i in range(k):
                if disjoint(nodes[i], extra):
                    graph[k].append(i)
                    graph[i].append(k)
    start, goal = index[alpha], index[beta]
    dist = {start: 0}
    frontier = [start]
    while frontier:
        nxt = []
        for u in frontier:
            for v in graph[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    if v == goal:
                        return dist[v]
                    nxt.append(v)
        frontier = nxt
    return dist.get(goal)


def cc_distance(surface, alpha, beta, search_cap=8):
    """Distance in the curve complex: exact on complexity-one surfaces,
    otherwise a certified interval."""
    if alpha.surface != surface or beta.surface != surface:
        raise DomainError("curves live on a different surface")
    if not (alpha.is_connected() and beta.is_connected()):
        raise DomainError("curve-complex distance needs connected essential curves")
    if complexity(surface) < 1:
        raise DomainError("surface has no curve complex")
    if alpha == beta:
        return DistanceBound.exactly(0)
    if complexity(surface) == 1:
        return DistanceBound.exactly(farey_distance(alpha, beta))
    if disjoint(alpha, beta):
        return DistanceBound.exactly(1)
    lo = 2
    inter = intersection_number(alpha, beta)
    hi = 2 * _log2_ceil(inter) + 2 if inter >= 1 else None
    bfs = _bfs_upper(surface, alpha, beta, search_cap)
    if bfs is not None:
        hi = bfs if hi is None else min(hi, bfs)
    from .constants import constants_for

    gate = constants_for(surface).bgi
    if hi is not None and hi > 2 and gate is not None:
        if _projection_gap(surface, alpha, beta) > gate:
            lo = 3
    if hi is not None and lo > hi:
        lo = hi
    return DistanceBound(lo, hi, hi is not None and lo == hi)


def _projection_gap(surface, alpha, beta):
    """Largest lower bound over small domains of the projection distance."""
    from .projections import proj_distance
    from .surface import annulus_piece, partition

    best = 0
    for c in enumerate_curves(surface, 5):
        domains = [annulus_piece(c)]
        domains += partition(surface, c).non_annular()
        for Y in domains:
            try:
                d = proj_distance(alpha, beta, Y)
            except DomainError:
                continue
            best = max(best, d.lo)
    return best
