"""Clean markings, their elementary moves, balls, distances and projections.

A marking is a pants decomposition together with one clean transversal per
base curve.  Twist moves replace a transversal by a Farey neighbour of the
pair (base, transversal) inside its complexity-one piece; flip moves swap a
base curve with its transversal and resurger the other transversals.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import kernels
from .charts import (
    adjacent_slope,
    chart_for,
    closure_candidates,
    edge_completions,
    in_piece,
    piece_step,
    realize_slope,
)
from .curve_complex import AnnularPoint, DistanceBound
from .curves import (
    MultiCurve,
    disjoint,
    empty_curve,
    intersection_number,
    twist_step,
    union,
)
from .surface import DomainError, complexity, partition


@dataclass(frozen=True, order=True)
class Marking:
    """A complete clean marking: pants base plus one transversal per curve."""

    surface: object
    base: MultiCurve
    transversals: tuple[MultiCurve, ...]  # aligned with base.component_classes()

    def base_classes(self):
        return self.base.component_classes()

    def transversal_of(self, gamma):
        for g, t in zip(self.base_classes(), self.transversals):
            if g == gamma:
                return t
        raise DomainError("curve is not in the base")

    def pants_vertex_curves(self):
        return self.base

    def to_json(self):
        return {
            "base": [g.to_json() for g in self.base_classes()],
            "transversals": {
                str(i): t.to_json() for i, t in enumerate(self.transversals)
            },
        }

    @classmethod
    def from_json(cls, data):
        from .curves import from_slope, normalize  # noqa: F401

        base_curves = [MultiCurve.from_json(c) for c in data["base"]]
        surface = base_curves[0].surface
        base = base_curves[0]
        for c in base_curves[1:]:
            base = union(base, c)
        trans = [
            MultiCurve.from_json(data["transversals"][str(i)])
            for i in range(len(base_curves))
        ]
        return validate_marking(surface, base, trans)

    def __repr__(self):
        parts = ", ".join(
            f"{g!r}~{t!r}" for g, t in zip(self.base_classes(), self.transversals)
        )
        return f"Marking({parts})"


def base_minus(base, gamma):
    """The base multicurve with one class removed."""
    rest = empty_curve(base.surface)
    for g in base.component_classes():
        if g != gamma:
            rest = union(rest, g)
    return rest


@lru_cache(maxsize=None)
def transversal_piece(base, gamma):
    """The complexity-one piece filled by gamma and its transversal."""
    rest = base_minus(base, gamma)
    if rest.is_empty():
        from .surface import full_piece

        return full_piece(base.surface)
    pieces = partition(base.surface, rest).non_annular()
    if len(pieces) != 1:
        raise DomainError("base minus one curve should leave one non-annular piece")
    return pieces[0]


def validate_marking(surface, base, transversals):
    """Canonical marking from candidate data, or a detailed violation."""
    if base.surface != surface:
        raise DomainError("base lives on a different surface")
    classes = base.component_classes()
    if len(classes) != complexity(surface):
        raise DomainError(
            f"base has {len(classes)} distinct curves, need {complexity(surface)}"
        )
    if len(base.components()) != len(classes):
        raise DomainError("base has parallel components")
    transversals = tuple(transversals)
    if len(transversals) != len(classes):
        raise DomainError("need exactly one transversal per base curve")
    for gamma, t in zip(classes, transversals):
        if t.surface != surface:
            raise DomainError("transversal lives on a different surface")
        if not t.is_connected():
            raise DomainError("transversal must be a connected curve")
        if complexity(surface) == 1:
            step = twist_step(surface)
            if intersection_number(gamma, t) != step:
                raise DomainError(
                    f"transversal meets base {intersection_number(gamma, t)} times, need {step}"
                )
            continue
        rest = base_minus(base, gamma)
        if not disjoint(t, rest):
            raise DomainError("transversal crosses the rest of the base")
        piece = transversal_piece(base, gamma)
        if not in_piece(rest, piece, t):
            raise DomainError("transversal is not in the piece filled with its base curve")
        step = piece_step(piece)
        got = intersection_number(gamma, t)
        if got != step:
            raise DomainError(f"transversal meets its base curve {got} times, need {step}")
    return Marking(surface=surface, base=base, transversals=transversals)


def _slope_completions(surface, gamma, t):
    """The two Farey completions of an adjacent slope pair."""
    (pg, qg), (pt, qt) = gamma.slope, t.slope
    out = {
        MultiCurve(surface, slope=kernels.slope_reduce(pg + pt, qg + qt), mult=1),
        MultiCurve(surface, slope=kernels.slope_reduce(pg - pt, qg - qt), mult=1),
    }
    return sorted(out)


def twist_moves(mu, gamma):
    """Markings obtained by the two twist moves at one base curve."""
    t = mu.transversal_of(gamma)
    if complexity(mu.surface) == 1:
        cands = _slope_completions(mu.surface, gamma, t)
    else:
        piece = transversal_piece(mu.base, gamma)
        cands = edge_completions(gamma, t, piece_step(piece))
    out = []
    for x in cands:
        trans = tuple(
            x if g == gamma else mu.transversal_of(g) for g in mu.base_classes()
        )
        out.append(validate_marking(mu.surface, mu.base, trans))
    return out


def flip_moves(mu, gamma):
    """Markings obtained by flipping one base curve with its transversal."""
    t = mu.transversal_of(gamma)
    if complexity(mu.surface) == 1:
        return [validate_marking(mu.surface, t, (gamma,))]
    new_base = union(base_minus(mu.base, gamma), t)
    others = [g for g in mu.base_classes() if g != gamma]
    choices = []
    for g in others:
        told = mu.transversal_of(g)
        cands = []
        if disjoint(told, t):
            cands = [told]
        else:
            cands = closure_candidates(t, told)
        piece = transversal_piece(new_base, g)
        rest = base_minus(new_base, g)
        step = piece_step(piece)
        valid = [
            x
            for x in cands
            if disjoint(x, rest)
            and in_piece(rest, piece, x)
            and intersection_number(g, x) == step
        ]
        if not valid:
            return []
        choices.append(sorted(set(valid)))

    out = set()
    def build(i, acc):
        if i == len(others):
            trans = []
            for g in new_base.component_classes():
                if g == t:
                    trans.append(gamma)
                else:
                    trans.append(acc[others.index(g)])
            out.add(validate_marking(mu.surface, new_base, tuple(trans)))
            return
        for x in choices[i]:
            build(i + 1, acc + [x])

    build(0, [])
    return sorted(out)


_MOVES_CACHE = {}


def elementary_moves(mu):
    """All markings one twist or flip move away, duplicate-free."""
    cached = _MOVES_CACHE.get(mu)
    if cached is not None:
        return list(cached)
    out = set()
    for gamma in mu.base_classes():
        out.update(twist_moves(mu, gamma))
        out.update(flip_moves(mu, gamma))
    out.discard(mu)
    result = sorted(out)
    _MOVES_CACHE[mu] = tuple(result)
    return result


@dataclass
class Ball:
    """A BFS ball in the marking graph."""

    center: Marking
    radius: int
    distances: dict
    adjacency: dict
    complete: bool

    def __len__(self):
        return len(self.distances)


def marking_ball(mu0, radius, node_cap=100_000):
    """BFS ball with exact distances; flagged partial if the cap is hit."""
    if radius < 0:
        raise DomainError("radius must be non-negative")
    distances = {mu0: 0}
    adjacency = {}
    frontier = [mu0]
    complete = True
    for r in range(1, radius + 1):
        nxt = []
        for mu in frontier:
            nbrs = elementary_moves(mu)
            adjacency[mu] = tuple(nbrs)
            for nu in nbrs:
                if nu not in distances:
                    distances[nu] = r
                    nxt.append(nu)
            if len(distances) > node_cap:
                return Ball(mu0, radius, distances, adjacency, False)
        frontier = nxt
    for mu in frontier:
        if mu not in adjacency:
            adjacency[mu] = tuple(elementary_moves(mu))
    return Ball(mu0, radius, distances, adjacency, complete)


def marking_distance(mu, nu, cap=10_000):
    """Exact distance by bidirectional BFS when found within cap nodes,
    otherwise a threshold-sum lower bound with unbounded upper end."""
    if mu.surface != nu.surface:
        raise DomainError("markings live on different surfaces")
    if mu == nu:
        return DistanceBound.exactly(0)
    front_a = {mu: 0}
    front_b = {nu: 0}
    border_a, border_b = [mu], [nu]
    da = db = 0
    while len(front_a) + len(front_b) <= cap and border_a and border_b:
        if len(border_a) <= len(border_b):
            da += 1
            nxt = []
            for m in border_a:
                for x in elementary_moves(m):
                    if x in front_b:
                        return DistanceBound.exactly(da + front_b[x])
                    if x not in front_a:
                        front_a[x] = da
                        nxt.append(x)
            border_a = nxt
        else:
            db += 1
            nxt = []
            for m in border_b:
                for x in elementary_moves(m):
                    if x in front_a:
                        return DistanceBound.exactly(db + front_a[x])
                    if x not in front_b:
                        front_b[x] = db
                        nxt.append(x)
            border_b = nxt
    from .coarse import threshold_sum
    from .constants import constants_for

    cc = constants_for(mu.surface)
    sigma = threshold_sum(mu, nu, cc.k, 6).total
    lo = max(da + db, -(-sigma // cc.a) - cc.b, 0)
    return DistanceBound(lo, None, False)


# -- projections of markings to pieces ---------------------------------------


@dataclass(frozen=True, order=True)
class PieceMarking:
    """A clean marking of a complexity-one piece, as ambient curves."""

    piece_key: tuple
    base: MultiCurve
    transversal: MultiCurve


def slope_marking_distance(step, m1, m2, cap=200_000):
    """Exact distance in the marking graph of a complexity-one surface,
    markings given as (base slope, transversal slope) pairs."""

    def moves(mk):
        (bg, tg) = mk
        out = []
        for sgn in (1, -1):
            cand = kernels.slope_reduce(bg[0] + sgn * tg[0], bg[1] + sgn * tg[1])
            out.append((bg, cand))
        out.append((tg, bg))
        return out

    a = (kernels.slope_reduce(*m1[0]), kernels.slope_reduce(*m1[1]))
    b = (kernels.slope_reduce(*m2[0]), kernels.slope_reduce(*m2[1]))
    if a == b:
        return 0
    front_a = {a: 0}
    front_b = {b: 0}
    border_a, border_b = [a], [b]
    da = db = 0
    while border_a and border_b:
        if len(front_a) + len(front_b) > cap:
            raise DomainError("slope marking distance exceeded the search cap")
        if len(border_a) <= len(border_b):
            da += 1
            nxt = []
            for m in border_a:
                for x in moves(m):
                    if x in front_b:
                        return da + front_b[x]
                    if x not in front_a:
                        front_a[x] = da
                        nxt.append(x)
            border_a = nxt
        else:
            db += 1
            nxt = []
            for m in border_b:
                for x in moves(m):
                    if x in front_a:
                        return db + front_a[x]
                    if x not in front_b:
                        front_b[x] = db
                        nxt.append(x)
            border_b = nxt
    raise DomainError("slope marking graph search exhausted")


def piece_marking_distance(delta, piece, pm1, pm2):
    """Marking-graph distance inside a piece, via its chart slopes."""
    chart = chart_for(delta, piece)
    a = (chart.slope_of(pm1.base), chart.slope_of(pm1.transversal))
    b = (chart.slope_of(pm2.base), chart.slope_of(pm2.transversal))
    return slope_marking_distance(chart.step, a, b)


def _transversal_candidates(delta, piece, alpha, target):
    """Valid transversals of alpha in the piece with twisting near target."""
    from .curves import dehn_twist
    from .projections import annular_twist, canonical_frame

    step = piece_step(piece)
    chart = chart_for(delta, piece)
    s_alpha = chart.slope_of(alpha)
    s0 = adjacent_slope(s_alpha)
    reps = [realize_slope(chart, s0)]
    if step == 2:
        # The fan around alpha has two twist orbits; realise the other one.
        s1 = s0[0] + s_alpha[0], s0[1] + s_alpha[1]
        reps.append(realize_slope(chart, s1))
    frame = canonical_frame(alpha)
    out = {}
    for rep in reps:
        tw_rep = annular_twist(rep, alpha, frame).twist
        for k in range(target - tw_rep - 1, target - tw_rep + 2):
            x = dehn_twist(rep, alpha, k)
            if not (disjoint(x, delta) and in_piece(delta, piece, x)):
                continue
            if intersection_number(alpha, x) != step:
                continue
            out[x] = abs(annular_twist(x, alpha, frame).twist - target)
    if not out:
        raise DomainError("no valid transversal near the target twisting")
    best = min(out.values())
    return sorted(x for x, d in out.items() if d == best)


def marking_projection(mu, piece):
    """Project a marking to a piece: the full marking for the whole surface,
    an annular coordinate for annuli, and a clean piece marking otherwise.

    Returns (canonical choice, tuple of all choices).
    """
    from .projections import annular_twist, canonical_frame, subsurface_projection

    if piece.kind == "full":
        return mu, (mu,)
    if piece.kind == "annulus":
        pt = annular_twist(mu, piece.core, canonical_frame(piece.core))
        return pt, (pt,)
    delta = piece.core if isinstance(piece.core, MultiCurve) else piece.core[0]
    image = subsurface_projection(mu, piece)
    if not image.curves:
        raise DomainError("marking projects emptily; marking is malformed")
    choices = []
    for alpha in image.curves:
        tau = annular_twist(mu, alpha, canonical_frame(alpha)).twist
        for x in _transversal_candidates(delta, piece, alpha, tau):
            choices.append(
                PieceMarking(piece_key=piece.piece_key(), base=alpha, transversal=x)
            )
    choices = sorted(set(choices))
    return choices[0], tuple(choices)
