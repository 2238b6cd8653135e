"""Short positions of curves and the operations done there.

A connected essential curve is *short* when it crosses exactly two edges
once each; the two triangles it meets then form an annulus around it with
two interior edges and two boundary sides.  Every operation that needs a
pair of curves in minimal position (intersection counts, twists, annular
twisting numbers, projection surgeries) is computed by flipping the curve
short, transporting the other data along the flips, working in the annulus,
and transporting back.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .triangulation import Triangulation, TriangulationError

_SHORTEN_CACHE = {}
_FLIP_CACHE = {}
_SEARCH_CAP = 200_000


def _flip(T, e):
    key = (T, e)
    out = _FLIP_CACHE.get(key)
    if out is None:
        out = T.flip(e)
        _FLIP_CACHE[key] = out
    return out


def is_short(vec):
    return sorted(vec, reverse=True)[:3] == [1, 1, 0] if len(vec) >= 3 else False


@dataclass(frozen=True)
class Annulus:
    """Two-triangle annulus around a short curve.

    ta/tb are the triangles, fa/fb their boundary sides (edge ids), and the
    four door slots walk around the annulus: crossing east_a from ta lands in
    tb, east_b returns to ta having passed both interior edges.
    """

    ta: int
    tb: int
    e1: int
    e2: int
    fa: int
    fb: int
    east_a: tuple[int, int]
    east_b: tuple[int, int]
    west_a: tuple[int, int]
    west_b: tuple[int, int]

    @property
    def interior_slots(self):
        return {self.east_a, self.east_b, self.west_a, self.west_b}

    def east_wrap(self, tri):
        return (self.east_a, self.east_b) if tri == self.ta else (self.east_b, self.east_a)

    def west_wrap(self, tri):
        return (self.west_a, self.west_b) if tri == self.ta else (self.west_b, self.west_a)


class ShortPosition:
    """A curve flipped short, with transport of other curves along the way."""

    def __init__(self, base, vec):
        self.base = base
        self.vec = tuple(vec)
        flips, tris = _shorten_search(base, self.vec)
        self.flips = flips
        self._tris = tris  # triangulations along the way, len(flips) + 1
        self.tri = tris[-1]
        core = self.vec
        for e, T in zip(flips, tris):
            core = T.flip_vector(e, core)
        self.core = core
        self.annulus = _annulus_of(self.tri, core)

    def push(self, vec):
        """Transport a weight vector from the base triangulation to short position."""
        for e, T in zip(self.flips, self._tris):
            vec = T.flip_vector(e, vec)
        return tuple(vec)

    def pull(self, vec):
        """Transport a weight vector from short position back to the base."""
        for e, T in zip(reversed(self.flips), reversed(self._tris[1:])):
            vec = T.flip_vector(e, vec)
        return tuple(vec)


def shorten(T, vec):
    key = (T, tuple(vec))
    sp = _SHORTEN_CACHE.get(key)
    if sp is None:
        sp = ShortPosition(T, vec)
        _SHORTEN_CACHE[key] = sp
    return sp


def _shorten_search(T0, vec0):
    """Best-first flip search reducing the curve's total weight to two."""
    if is_short(vec0):
        return (), (T0,)
    counter = 0
    heap = [(sum(vec0), 0, counter, T0, tuple(vec0), ())]
    seen = {(T0, tuple(vec0))}
    while heap:
        if len(seen) > _SEARCH_CAP:
            raise TriangulationError("shortening search exceeded state cap")
        weight, depth, _, T, vec, flips = heapq.heappop(heap)
        for e in range(T.nedges):
            if not T.flippable(e):
                continue
            T2 = _flip(T, e)
            v2 = T.flip_vector(e, vec)
            state = (T2, v2)
            if state in seen:
                continue
            seen.add(state)
            flips2 = flips + (e,)
            if is_short(v2):
                tris = [T0]
                for f in flips2[:-1]:
                    tris.append(_flip(tris[-1], f))
                tris.append(T2)
                return flips2, tuple(tris)
            counter += 1
            heapq.heappush(heap, (sum(v2), depth + 1, counter, T2, v2, flips2))
    raise TriangulationError("curve cannot be shortened")


def _annulus_of(T, core):
    comps = T.trace(core)
    if len(comps) != 1 or comps[0].peripheral_vertex is not None:
        raise TriangulationError("short vector is not a single essential curve")
    (ta, ka, _), (tb, kb, _) = comps[0].arcs
    if ta == tb:
        raise TriangulationError("degenerate short position")
    fa = T.tri[ta][ka]
    fb = T.tri[tb][kb]
    east_a = (ta, (ka + 1) % 3)
    west_a = (ta, (ka + 2) % 3)
    x_edge = T.tri[ta][(ka + 1) % 3]
    y_edge = T.tri[ta][(ka + 2) % 3]
    tb_slots = [(tb, (kb + 1) % 3), (tb, (kb + 2) % 3)]
    tb_edges = [T.tri[t][j] for t, j in tb_slots]
    if sorted(tb_edges) != sorted([x_edge, y_edge]):
        raise TriangulationError("annulus interior edges mismatch")
    east_b = tb_slots[tb_edges.index(y_edge)]
    west_b = tb_slots[tb_edges.index(x_edge)]
    if T.partner(east_a)[0] != tb or T.partner(east_b)[0] != ta:
        raise TriangulationError("annulus door structure mismatch")
    e1, e2 = sorted((x_edge, y_edge))
    return Annulus(ta, tb, e1, e2, fa, fb, east_a, east_b, west_a, west_b)


@dataclass(frozen=True)
class Passage:
    """One visit of a word to the annulus."""

    entry_idx: int  # index of the external crossing entering the annulus
    exit_idx: int  # index of the external crossing leaving it
    entry_tri: int
    exit_tri: int
    run: tuple[int, ...]  # indices of interior crossings between them
    span: int  # signed east displacement of the run

    @property
    def crossing(self):
        return self.entry_tri != self.exit_tri


def passages(T, ann, word):
    """Passages of a reduced closed word through the annulus.

    Returns None when the word stays inside the annulus (a core-parallel
    component).
    """
    interior = ann.interior_slots
    ext = [i for i, c in enumerate(word) if c not in interior]
    if not ext:
        return None
    east = (ann.east_a, ann.east_b)
    out = []
    n = len(word)
    for idx, i in enumerate(ext):
        j = ext[(idx + 1) % len(ext)]
        run = []
        k = (i + 1) % n
        while k != j:
            run.append(k)
            k = (k + 1) % n
        dest = T.partner(word[i])[0]
        if dest not in (ann.ta, ann.tb):
            if run:
                raise TriangulationError("interior run without annulus entry")
            continue
        src = word[j][0]
        if src not in (ann.ta, ann.tb):
            raise TriangulationError("annulus exit mismatch")
        span = sum(1 if word[k] in east else -1 for k in run)
        out.append(Passage(i, j, dest, src, tuple(run), span))
    return out


def core_crossings(T, ann, word):
    """Geometric intersection of the word's curve with the annulus core."""
    ps = passages(T, ann, word)
    if ps is None:
        return 0
    return sum(1 for p in ps if p.crossing)


def _wrap_positive(ann, tri):
    """Insertion wrap of the positive (left) twist for a passage entering at tri.

    The drift of a twisted strand is to one fixed side of its heading, so the
    spatial insertion direction depends on which boundary side the passage
    entered through; this combination is orientation-intrinsic.  The global
    handedness is pinned by the once-punctured-torus regression vector
    twist(1/0 about 0/1) = 1/1.
    """
    return ann.east_wrap(tri) if tri == ann.ta else ann.west_wrap(tri)


def _wrap_negative(ann, tri):
    return ann.west_wrap(tri) if tri == ann.ta else ann.east_wrap(tri)


def twist_word(T, ann, word, n):
    """Word of the curve after n positive twists about the annulus core."""
    if n == 0:
        return T.reduce_word(word)
    ps = passages(T, ann, word)
    if ps is None:
        return T.reduce_word(word)
    entries = {p.entry_idx: p.entry_tri for p in ps if p.crossing}
    wrap_of = _wrap_positive if n > 0 else _wrap_negative
    out = []
    for i, c in enumerate(word):
        out.append(c)
        if i in entries:
            out.extend(wrap_of(ann, entries[i]) * abs(n))
    return T.reduce_word(tuple(out))


def spans(T, ann, word):
    """Per-passage twisting spans, normalised to be traversal-independent.

    Each crossing passage contributes its east displacement as seen entering
    from the ta side; a positive twist shifts every span by exactly -2n.
    """
    ps = passages(T, ann, word)
    if ps is None:
        return []
    return [p.span if p.entry_tri == ann.ta else -p.span for p in ps if p.crossing]


@dataclass(frozen=True)
class CutArc:
    """One arc of the curve cut along the annulus core."""

    side_tri: int  # ta or tb: the boundary side the arc lives on leaving...
    start_tri: int  # entry triangle of the passage whose core cut starts the arc
    end_tri: int  # entry triangle of the next crossing passage
    start_side: int  # exit triangle of the starting passage (circle left on)
    end_side: int  # entry-circle triangle of the ending passage
    core_word: tuple  # word from just after the start entry to the next entry
    ext_word: tuple  # word strictly outside the annulus between the passages
    d_out: tuple  # external crossing leaving the annulus
    d_in: tuple  # external crossing re-entering it


def cut_arcs(T, ann, word):
    """Arcs of the curve between consecutive core crossings."""
    ps = passages(T, ann, word)
    if ps is None:
        return []
    crossing = [p for p in ps if p.crossing]
    if not crossing:
        return []
    n = len(word)
    arcs = []
    for idx, p in enumerate(crossing):
        pn = crossing[(idx + 1) % len(crossing)]
        core_word = []
        k = (p.entry_idx + 1) % n
        while True:
            core_word.append(word[k])
            if k == pn.entry_idx:
                break
            k = (k + 1) % n
        ext_word = []
        k = (p.exit_idx + 1) % n
        while k != pn.entry_idx:
            ext_word.append(word[k])
            k = (k + 1) % n
        arcs.append(
            CutArc(
                side_tri=p.exit_tri,
                start_tri=p.entry_tri,
                end_tri=pn.entry_tri,
                start_side=p.exit_tri,
                end_side=T.partner(word[pn.entry_idx])[0],
                core_word=tuple(core_word),
                ext_word=tuple(ext_word),
                d_out=word[p.exit_idx],
                d_in=word[pn.entry_idx],
            )
        )
    return arcs


def _rev(T, word):
    return tuple(T.partner(c) for c in reversed(word))


def surgery_closures(T, ann, arc):
    """Curves obtained by closing one cut arc along the annulus core.

    For an arc returning to the side it left on this is the classical pair
    of surgery directions; for an arc connecting the two sides of a
    nonseparating core it is the boundary of a neighborhood of the arc and
    both boundary circles.
    """
    words = []
    if arc.start_side == arc.end_side:
        if arc.end_tri == arc.start_tri:
            segs = [(), ann.east_wrap(arc.end_tri)]
        else:
            # One interior door either way around joins end_tri to start_tri.
            east = ann.east_wrap(arc.end_tri)[0]
            west = ann.west_wrap(arc.end_tri)[0]
            segs = [(east,), (west,)]
        for seg in segs:
            words.append(T.reduce_word(arc.core_word + seg))
    else:
        d_in, d_out = arc.d_in, arc.d_out
        x_in = T.partner(d_in)[0]
        x_out = d_out[0]
        for wrap_in in (ann.east_wrap(x_in), ann.west_wrap(x_in)):
            for wrap_out in (ann.east_wrap(x_out), ann.west_wrap(x_out)):
                if d_in == d_out and not arc.ext_word:
                    w = (d_in,) + wrap_in + (T.partner(d_in),) + wrap_out
                else:
                    w = (
                        arc.ext_word
                        + (d_in,)
                        + wrap_in
                        + (T.partner(d_in),)
                        + _rev(T, arc.ext_word)
                        + (T.partner(d_out),)
                        + wrap_out
                        + (d_out,)
                    )
                red = T.reduce_word(w)
                if red and core_crossings(T, ann, red) == 0:
                    words.append(red)
    out = []
    seen = set()
    for w in words:
        if not w:
            continue
        vec = T.word_vector(w)
        if vec in seen:
            continue
        seen.add(vec)
        out.append(w)
    return out
