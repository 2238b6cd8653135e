"""Farey coordinates on complexity-one pieces, and slope realization.

A complexity-one piece (one-holed torus or four-holed sphere cut out of a
larger surface) carries a Farey graph of curves.  A chart fixes three
reference curves in the roles of the slopes infinity, 0 and 1 and reads off
the slope of any curve in the piece from intersection numbers with them.
Twists about the reference curves act on slopes by parabolic matrices, so a
Euclidean descent through those actions realises any slope as an exact
curve; Farey completions (the two neighbours of an edge) are realised
mediants.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .curves import (
    MultiCurve,
    curve_region,
    dehn_twist,
    disjoint,
    enumerate_curves,
    intersection_number,
)
from .shortpos import cut_arcs, passages, shorten, surgery_closures
from .surface import DomainError, complexity
from .triangulation import standard_triangulation


def piece_step(piece):
    """Minimal intersection of adjacent curves in the piece: 1 torus, 2 sphere."""
    return 1 if piece.genus >= 1 else 2


def in_piece(delta, piece, x):
    """Whether the connected curve x lies in the given piece of the partition
    along delta (boundary-parallel curves do not count)."""
    if not x.is_connected():
        raise DomainError("piece membership is for connected curves")
    if not disjoint(delta, x):
        return False
    if x in delta.component_classes():
        return False
    if complexity(x.surface) == 1:
        return False
    region = curve_region(delta, x)
    return (region.genus, region.punctures, region.interior_punctures) == piece.piece_key()


@lru_cache(maxsize=None)
def _pool(surface, cap):
    return tuple(enumerate_curves(surface, cap))


def curves_in_piece(delta, piece, cap):
    """Enumerated curves of the ambient surface lying in the piece."""
    return [x for x in _pool(delta.surface, cap) if in_piece(delta, piece, x)]


def closure_candidates(gamma, x):
    """Essential curves from closing single arcs of x along gamma (the two
    surgery directions; all results are disjoint from gamma)."""
    T = standard_triangulation(gamma.surface.genus, gamma.surface.punctures)
    sp = shorten(T, gamma.coords)
    pushed = sp.push(x.coords)
    out = set()
    for comp in sp.tri.trace(pushed):
        for arc in cut_arcs(sp.tri, sp.annulus, comp.word):
            for w in surgery_closures(sp.tri, sp.annulus, arc):
                vec = sp.tri.word_vector(w)
                traced = sp.tri.trace(vec)
                if len(traced) != 1 or traced[0].peripheral_vertex is not None:
                    continue
                if vec == sp.core:
                    continue
                out.add(MultiCurve(gamma.surface, coords=sp.pull(vec)))
    return sorted(out)


@dataclass(frozen=True)
class PieceChart:
    """Slope coordinates on the curves inside a complexity-one piece.

    orientation records which of the two mirror identifications the chart
    landed on; the parabolic action formulas below absorb it.
    """

    delta: MultiCurve
    piece: object
    step: int
    u: MultiCurve  # slope 1/0
    v: MultiCurve  # slope 0/1
    w: MultiCurve  # slope 1/1
    orientation: int

    def basis(self):
        return ((1, 0), (0, 1), (1, 1)), (self.u, self.v, self.w)

    def slope_of(self, x):
        step = self.step
        iu = intersection_number(x, self.u)
        iv = intersection_number(x, self.v)
        iw = intersection_number(x, self.w)
        if iu % step or iv % step or iw % step:
            raise DomainError("curve does not lie in the chart's piece")
        q, p, r = iu // step, iv // step, iw // step
        if q == 0:
            if p == 1:
                return (1, 0)
            raise DomainError("chart slope extraction failed")
        if p == 0:
            if q == 1:
                return (0, 1)
            raise DomainError("chart slope extraction failed")
        if r == abs(p - q):
            return (p, q)
        if r == p + q:
            return (-p, q)
        raise DomainError("chart slope extraction failed")

    def twist_action(self, core_slope, s, n):
        """Chart slope of the n-th twist about a curve of slope core_slope."""
        d = core_slope[0] * s[1] - core_slope[1] * s[0]
        k = self.orientation * n * self.step * d
        return _reduce(s[0] - k * core_slope[0], s[1] - k * core_slope[1])


def _reduce(p, q):
    if p == 0 and q == 0:
        raise DomainError("zero slope vector")
    if q == 0:
        return (1, 0)
    if p == 0:
        return (0, 1)
    g = gcd(abs(p), abs(q))
    p, q = p // g, q // g
    if q < 0:
        p, q = -p, -q
    return (p, q)


def _chart_key(delta, piece):
    return (delta.surface, delta.canonical_key(), piece.piece_key())


_CHARTS = {}


def chart_for(delta, piece, seeds=(), cap=8):
    """Build (and cache) a chart for a complexity-one piece of sigma(delta).

    The reference pair is taken from the enumeration pool when possible;
    seeds (known in-piece curves, e.g. a base curve with its transversal)
    are the fallback when the piece is too deep for the pool.
    """
    key = _chart_key(delta, piece)
    chart = _CHARTS.get(key)
    if chart is not None:
        return chart
    step = piece_step(piece)
    candidates = []
    for c in (6, cap):
        candidates = list(curves_in_piece(delta, piece, c))
        if len(candidates) >= 2:
            break
    candidates = sorted(set(candidates) | {s for s in seeds if in_piece(delta, piece, s)})
    pair = None
    for i, u in enumerate(candidates):
        for v in candidates[i + 1 :]:
            if intersection_number(u, v) == step:
                pair = (u, v)
                break
        if pair:
            break
    if pair is None:
        raise DomainError("no adjacent curve pair found in the piece")
    u, v = pair
    w = edge_completions(u, v, step)[0]
    probe = dehn_twist(v, u, 1)
    iw_probe = intersection_number(probe, w) // step
    # T_u(v) has slope -step/1 or +step/1 depending on the mirror; its
    # distance from 1/1 distinguishes them: |det(1/1, ±step/1)| = step -+ 1.
    if iw_probe == step + 1:
        orientation = 1
    elif iw_probe == step - 1:
        orientation = -1
    else:
        raise DomainError("chart orientation probe failed")
    chart = PieceChart(
        delta=delta, piece=piece, step=step, u=u, v=v, w=w, orientation=orientation
    )
    _CHARTS[key] = chart
    return chart


def _height(s):
    return abs(s[0]) + abs(s[1])


_SEEDS = {(1, 0): "u", (0, 1): "v", (1, 1): "w"}


def realize_slope(chart, target):
    """The curve in the piece with the given chart slope.

    Reduces the slope to one of the three reference slopes by parabolic
    moves (twists about reference curves) and replays the inverse twists on
    the reference curve.
    """
    s = _reduce(*target)
    slopes, curves = chart.basis()
    moves = []
    guard = 0
    while s not in _SEEDS:
        guard += 1
        if guard > 200:
            raise DomainError("slope reduction did not terminate")
        best = None
        seed_hit = None
        for bi, bs in enumerate(slopes):
            d = bs[0] * s[1] - bs[1] * s[0]
            if d == 0:
                continue
            # Optimal twist powers bracket the real minimiser of the height.
            denom = chart.step * d
            for k in _candidate_powers(s, bs, denom):
                if k == 0:
                    continue
                s2 = chart.twist_action(bs, s, k)
                if s2 in _SEEDS and seed_hit is None:
                    seed_hit = (bi, k, s2)
                h = _height(s2)
                if best is None or (h, bi, k) < best[:3]:
                    best = (h, bi, k, s2)
        if seed_hit is not None:
            bi, k, s = seed_hit
        elif best is not None and best[0] < _height(s):
            _, bi, k, s = best
        else:
            raise DomainError("slope reduction stalled")
        moves.append((bi, k))
    x = curves[{"u": 0, "v": 1, "w": 2}[_SEEDS[s]]]
    for bi, k in reversed(moves):
        x = dehn_twist(x, curves[bi], -k)
    return x


def _candidate_powers(s, core, denom):
    # The height of s - k*denom*core is roughly minimised near the rational
    # solutions for p and q separately; try the floors and ceilings of both.
    out = set()
    for num, cden in ((s[0], denom * core[0]), (s[1], denom * core[1])):
        if cden:
            k = num // cden
            out.update((k - 1, k, k + 1))
    out.update((-1, 1))
    return sorted(out)


def single_wrap_candidates(gamma, t):
    """Curves obtained by inserting one full wrap about gamma at exactly one
    of t's core crossings (the half-twist images, where defined)."""
    surface = gamma.surface
    T = standard_triangulation(surface.genus, surface.punctures)
    sp = shorten(T, gamma.coords)
    out = set()
    for comp in sp.tri.trace(sp.push(t.coords)):
        ps = passages(sp.tri, sp.annulus, comp.word)
        if ps is None:
            continue
        entries = [(p.entry_idx, p.entry_tri) for p in ps if p.crossing]
        for ei, etri in entries:
            for wrap in (sp.annulus.east_wrap(etri), sp.annulus.west_wrap(etri)):
                word = []
                for i, c in enumerate(comp.word):
                    word.append(c)
                    if i == ei:
                        word.extend(wrap)
                red = sp.tri.reduce_word(tuple(word))
                if not red:
                    continue
                vec = sp.tri.word_vector(red)
                traced = sp.tri.trace(vec)
                if len(traced) != 1 or traced[0].peripheral_vertex is not None:
                    continue
                if vec == sp.core:
                    continue
                out.add(MultiCurve(surface, coords=sp.pull(vec)))
    return sorted(out)


def edge_completions(gamma, t, step):
    """The two curves adjacent to both ends of the Farey edge (gamma, t)."""
    if intersection_number(gamma, t) != step:
        raise DomainError("edge completions need an adjacent pair")
    if step == 1:
        out = sorted({dehn_twist(t, gamma, 1), dehn_twist(t, gamma, -1)})
    else:
        out = sorted(
            c
            for c in single_wrap_candidates(gamma, t)
            if intersection_number(c, gamma) == step and intersection_number(c, t) == step
        )
    if len(out) != 2:
        raise DomainError(f"expected two Farey completions, found {len(out)}")
    return out


def adjacent_slope(s):
    """Some slope at determinant one from s."""
    p, q = s
    if q == 0:
        return (0, 1)
    g, a, b = _egcd(p, q)
    if g != 1:
        raise DomainError("slope is not reduced")
    # p*a + q*b = 1, so det((p,q),(-b,a)) = p*a + q*b = 1.
    return _reduce(-b, a)


def _egcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t
