"""Subsurface projections: arc surgery, annular twisting numbers, projection
distances, and the consistency (min-projection) scanner."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .charts import chart_for
from .constants import CoarseConstants, constants_for  # noqa: F401  (re-export)
from .curve_complex import AnnularPoint, DistanceBound, annular_distance, cc_distance
from .curves import (
    MultiCurve,
    dehn_twist,
    disjoint,
    enumerate_curves,
    intersection_number,
    twist_step,
)
from .regions import CENTRAL, RegionDecomposition
from .shortpos import cut_arcs, passages, shorten, spans, surgery_closures
from .surface import DomainError, annulus_piece, complexity, partition
from .triangulation import standard_triangulation


@dataclass(frozen=True)
class ProjectionImage:
    """Curves of a subsurface projection; empty marks a missed subsurface."""

    piece: object
    curves: tuple[MultiCurve, ...]

    def is_empty(self):
        return not self.curves


def _marking_base(obj):
    from .markings import Marking

    if isinstance(obj, Marking):
        return obj.base
    return obj


_FRAMES = {}


def canonical_frame(core):
    """Deterministic frame curve crossing the core (zero-twist section)."""
    frame = _FRAMES.get(core)
    if frame is not None:
        return frame
    for cap in (4, 6, 8, 10, 12):
        for x in enumerate_curves(core.surface, cap):
            if intersection_number(x, core) > 0:
                _FRAMES[core] = x
                return x
    raise DomainError("no frame curve found crossing the core")


def _piece_boundary(piece):
    core = piece.core
    if isinstance(core, tuple):
        raise DomainError("projection pieces here have a single boundary curve")
    return core


_PROJ_CACHE = {}


def subsurface_projection(obj, piece):
    """Projection to a non-annular piece by surgering essential arcs along
    the boundary, both surgery directions."""
    gamma = _marking_base(obj)
    if piece.kind == "annulus":
        raise DomainError("use annular_twist for annular pieces")
    if piece.kind == "full":
        return ProjectionImage(piece, tuple(gamma.component_classes()))
    if complexity(gamma.surface) == 1:
        raise DomainError("complexity-one surfaces have no non-annular pieces")
    key = (gamma, piece)
    cached = _PROJ_CACHE.get(key)
    if cached is not None:
        return cached
    c = _piece_boundary(piece)
    T = standard_triangulation(gamma.surface.genus, gamma.surface.punctures)
    sp = shorten(T, c.coords)
    rd = RegionDecomposition(sp.tri, sp.core)
    target = piece.piece_key()

    def region_matches(region):
        return (region.genus, region.punctures, region.interior_punctures) == target

    def side_region(tri):
        return rd.region_of_local(tri, CENTRAL)

    out = set()
    pushed = sp.push(gamma.coords)
    for comp in sp.tri.trace(pushed):
        if comp.vector == sp.core:
            continue
        ps = passages(sp.tri, sp.annulus, comp.word)
        if ps is None:
            continue  # core-parallel component
        if not any(p.crossing for p in ps):
            region = rd.region_of_disjoint_curve(comp.vector)
            if region_matches(region):
                out.add(MultiCurve(gamma.surface, coords=sp.pull(comp.vector)))
            continue
        for arc in cut_arcs(sp.tri, sp.annulus, comp.word):
            if not region_matches(side_region(arc.start_side)):
                continue
            for word in surgery_closures(sp.tri, sp.annulus, arc):
                vec = sp.tri.word_vector(word)
                traced = sp.tri.trace(vec)
                if len(traced) != 1 or traced[0].peripheral_vertex is not None:
                    continue
                if vec == sp.core:
                    continue
                out.add(MultiCurve(gamma.surface, coords=sp.pull(vec)))
    image = ProjectionImage(piece, tuple(sorted(out)))
    _PROJ_CACHE[key] = image
    return image


def _max_span(sp, vec):
    best = None
    for comp in sp.tri.trace(vec):
        ss = spans(sp.tri, sp.annulus, comp.word)
        for s in ss:
            if best is None or s > best:
                best = s
    return best


def annular_twist(obj, core, frame=None):
    """Integer twisting of a curve or marking about a core curve, measured
    against the frame; shifts by exactly n under the n-th twist."""
    if not core.is_connected():
        raise DomainError("annular projection needs a connected core")
    if frame is None:
        frame = canonical_frame(core)
    from .markings import Marking

    if isinstance(obj, Marking):
        if core in obj.base_classes():
            gamma = obj.transversal_of(core)
        else:
            gamma = obj.base
            if disjoint(gamma, core):
                raise DomainError("marking misses the annulus entirely")
    else:
        gamma = obj
        if gamma.is_empty() or disjoint(gamma, core):
            raise DomainError("curve misses the annulus; projection is empty")
    if intersection_number(frame, core) == 0:
        raise DomainError("frame must cross the core")
    if complexity(core.surface) == 1:
        step = twist_step(core.surface)
        tw = kernels_annular(gamma.slope, core.slope, frame.slope, step)
        return AnnularPoint(tw)
    T = standard_triangulation(core.surface.genus, core.surface.punctures)
    sp = shorten(T, core.coords)
    raw_g = _max_span(sp, sp.push(gamma.coords))
    raw_f = _max_span(sp, sp.push(frame.coords))
    if raw_g is None or raw_f is None:
        raise DomainError("curve does not cross the annulus core")
    return AnnularPoint((raw_g - raw_f) // 2)


def kernels_annular(slope, core, frame, step):
    from . import kernels

    return kernels.annular_coord(*slope, *core, *frame, step)


def proj_distance(mu, nu, piece):
    """Projection distance in a piece: the diameter of the union of the two
    projection images (exact on annuli and complexity-one pieces)."""
    if piece.kind == "annulus":
        frame = canonical_frame(piece.core)
        x = annular_twist(mu, piece.core, frame)
        y = annular_twist(nu, piece.core, frame)
        return DistanceBound.exactly(annular_distance(x, y))
    if piece.kind == "full":
        a = _marking_base(mu).component_classes()
        b = _marking_base(nu).component_classes()
        every = a + b
        lo, hi, exact = 0, 0, True
        surface = every[0].surface
        for i in range(len(every)):
            for j in range(i + 1, len(every)):
                d = cc_distance(surface, every[i], every[j])
                lo = max(lo, d.lo)
                hi = None if (hi is None or d.hi is None) else max(hi, d.hi)
                exact = exact and d.exact
        if hi is not None and lo > hi:
            lo = hi
        return DistanceBound(lo, hi, exact and hi is not None and lo == hi)
    image_a = subsurface_projection(mu, piece)
    image_b = subsurface_projection(nu, piece)
    if image_a.is_empty() or image_b.is_empty():
        raise DomainError("projection distance undefined: an image is empty")
    chart = chart_for(_piece_boundary(piece), piece)
    slopes = [chart.slope_of(x) for x in image_a.curves + image_b.curves]
    from . import kernels

    best = 0
    for i in range(len(slopes)):
        for j in range(i + 1, len(slopes)):
            best = max(best, kernels.farey_distance(*slopes[i], *slopes[j]))
    return DistanceBound.exactly(best)


def projection_diameter(image):
    """Internal diameter of a non-annular projection image."""
    if image.piece.kind != "piece":
        raise DomainError("diameter is defined for proper piece images")
    if len(image.curves) <= 1:
        return 0
    chart = chart_for(_piece_boundary(image.piece), image.piece)
    from . import kernels

    slopes = [chart.slope_of(x) for x in image.curves]
    best = 0
    for i in range(len(slopes)):
        for j in range(i + 1, len(slopes)):
            best = max(best, kernels.farey_distance(*slopes[i], *slopes[j]))
    return best


# -- domain pools and the consistency scan -----------------------------------


def scan_cap(surface):
    return 6


def domains_for(surface, cap=None):
    """Annuli and complexity-one pieces over the enumerated curve pool."""
    cap = scan_cap(surface) if cap is None else cap
    out = []
    for c in enumerate_curves(surface, cap):
        out.append(annulus_piece(c))
        if complexity(surface) >= 2:
            out.extend(partition(surface, c).non_annular())
    return out


def domain_boundary(piece):
    if piece.kind == "annulus":
        return piece.core
    return _piece_boundary(piece)


def domains_overlap(y, z):
    """Overlapping domains: they intersect and neither is nested in the other."""
    return intersection_number(domain_boundary(y), domain_boundary(z)) > 0


def random_marking(surface, rng, twist_range=5):
    """Deterministic random marking: pool pants base plus twisted transversals."""
    from .markings import validate_marking
    from .curves import union

    bases = _pants_bases(surface)
    base = bases[rng.randrange(len(bases))]
    trans = []
    from .markings import transversal_piece
    from .charts import curves_in_piece, in_piece, piece_step

    for gamma in base.component_classes():
        t0 = _default_transversal(base, gamma)
        k = rng.randint(-twist_range, twist_range)
        trans.append(dehn_twist(t0, gamma, k))
    return validate_marking(surface, base, tuple(trans))


_BASES = {}


def _pants_bases(surface):
    bases = _BASES.get(surface)
    if bases is not None:
        return bases
    pool = enumerate_curves(surface, scan_cap(surface))
    need = complexity(surface)
    out = []
    if need == 1:
        out = [c for c in pool]
    else:
        for i in range(len(pool)):
            for j in range(i + 1, len(pool)):
                if disjoint(pool[i], pool[j]):
                    from .curves import union

                    out.append(union(pool[i], pool[j]))
    if not out:
        raise DomainError("no pants bases found in the enumeration pool")
    _BASES[surface] = out
    return out


_DEFAULT_TRANSVERSALS = {}


def _default_transversal(base, gamma):
    key = (base, gamma)
    t = _DEFAULT_TRANSVERSALS.get(key)
    if t is not None:
        return t
    if complexity(base.surface) == 1:
        for cand in enumerate_curves(base.surface, 3):
            if intersection_number(cand, gamma) == twist_step(base.surface):
                _DEFAULT_TRANSVERSALS[key] = cand
                return cand
        raise DomainError("no transversal found")
    from .charts import adjacent_slope, realize_slope
    from .markings import base_minus, transversal_piece

    piece = transversal_piece(base, gamma)
    rest = base_minus(base, gamma)
    chart = chart_for(rest, piece)
    t = realize_slope(chart, adjacent_slope(chart.slope_of(gamma)))
    _DEFAULT_TRANSVERSALS[key] = t
    return t


def behrstock_scan(surface, n_samples, seed):
    """Sample overlapping domain pairs against random markings and record
    the min-projection statistic (deterministic per seed)."""
    if n_samples < 0:
        raise DomainError("sample count must be non-negative")
    rng = random.Random(seed)
    domains = domains_for(surface)
    pairs = [
        (y, z)
        for i, y in enumerate(domains)
        for z in domains[i + 1 :]
        if domains_overlap(y, z)
    ]
    histogram = {}
    max_min = None
    for _ in range(n_samples):
        mu = random_marking(surface, rng)
        y, z = pairs[rng.randrange(len(pairs))]
        dy = proj_distance(domain_boundary(z), mu, y).lo
        dz = proj_distance(domain_boundary(y), mu, z).lo
        value = min(dy, dz)
        histogram[value] = histogram.get(value, 0) + 1
        if max_min is None or value > max_min:
            max_min = value
    return {
        "surface": surface.to_json(),
        "samples": n_samples,
        "seed": seed,
        "max_min": max_min,
        "histogram": {str(k): v for k, v in sorted(histogram.items())},
        "constants": constants_for(surface).to_json(),
    }
