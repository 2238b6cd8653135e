"""Pure-Python slope kernel: reduced rationals, determinants, twists, Farey distance.

This is the fallback twin of the compiled extension ``_kernel``; both expose
the same functions with identical semantics on arbitrary-precision integers.
Slopes are pairs (p, q) with q >= 0, gcd(|p|, q) = 1 and infinity = (1, 0).
"""

from math import gcd


def slope_reduce(p, q):
    """Canonical form of the rational p/q (q >= 0, coprime, infinity = 1/0)."""
    if p == 0 and q == 0:
        raise ValueError("slope 0/0 is not a curve")
    if q == 0:
        return (1, 0)
    if p == 0:
        return (0, 1)
    g = gcd(abs(p), abs(q))
    p, q = p // g, q // g
    if q < 0:
        p, q = -p, -q
    return (p, q)


def slope_det(p1, q1, p2, q2):
    """Determinant p1*q2 - q1*p2; |det| is the Farey intersection pairing."""
    return p1 * q2 - q1 * p2


def twist_slope(p, q, cp, cq, n, step):
    """Image of p/q under the n-th power of the twist about cp/cq.

    step is 1 on four-times-punctured-torus-type (one-holed torus) surfaces
    and 2 on four-holed spheres, where the full twist is a double parabolic.
    Left twists are positive; the convention is pinned by the regression
    vector twist(1/0 about 0/1, n=1) = 1/1.
    """
    d = slope_det(cp, cq, p, q)
    return slope_reduce(p - n * step * d * cp, q - n * step * d * cq)


def _unimodular_to_infinity(rp, rq):
    """A matrix (a,b,c,d), det 1, sending the reduced slope rp/rq to 1/0."""
    # Solve rp*y - rq*x = 1 by extended gcd, then rows (y, -x), (-rq, rp).
    old_r, r = rp, rq
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
        old_t, t = t, old_t - quo * t
    # old_r = gcd = rp*old_s + rq*old_t; gcd is 1 up to sign.
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    # rp*old_s + rq*old_t = 1  ->  y = old_s, x = -old_t.
    return (old_s, old_t, -rq, rp)


def _dist_to_infinity(p, q, memo):
    """Exact Farey-graph distance from p/q to 1/0.

    Every path from a mediant to infinity passes through one of its two
    Stern-Brocot parents (the edge between them separates), so
    d = 1 + min over parents, with denominators strictly decreasing.
    """
    if q == 0:
        return 0
    if q == 1:
        return 1
    stack = [(p, q)]
    while stack:
        tp, tq = stack[-1]
        if (tp, tq) in memo:
            stack.pop()
            continue
        s1 = pow(tp, -1, tq)  # parent denominators: s1 and tq - s1
        r1 = (tp * s1 - 1) // tq
        s2 = tq - s1
        r2 = (tp * s2 + 1) // tq
        par = []
        for rp, rq in ((r1, s1), (r2, s2)):
            if rq == 0:
                par.append(0)
            elif rq == 1:
                par.append(1)
            elif (rp, rq) in memo:
                par.append(memo[(rp, rq)])
            else:
                par.append(None)
                stack.append((rp, rq))
        if par[0] is not None and par[1] is not None:
            memo[(tp, tq)] = 1 + min(par)
            stack.pop()
    return memo[(p, q)]


_FAREY_MEMO = {}


def farey_distance(ap, aq, bp, bq):
    """Exact distance between two slopes in the Farey graph."""
    ap, aq = slope_reduce(ap, aq)
    bp, bq = slope_reduce(bp, bq)
    if (ap, aq) == (bp, bq):
        return 0
    if abs(slope_det(ap, aq, bp, bq)) == 1:
        return 1
    ma, mb, mc, md = _unimodular_to_infinity(bp, bq)
    p, q = slope_reduce(ma * ap + mb * aq, mc * ap + md * aq)
    return _dist_to_infinity(p, q, _FAREY_MEMO)


def annular_coord(p, q, cp, cq, fp, fq, step):
    """Integer twisting of slope p/q about cp/cq, measured against frame fp/fq.

    Both the curve and the frame must cross the core slope. Shifts by exactly
    n under twist_slope(..., n, step).
    """
    ma, mb, mc, md = _unimodular_to_infinity(cp, cq)

    def coord(xp, xq):
        up, uq = ma * xp + mb * xq, mc * xp + md * xq
        if uq == 0:
            raise ValueError("curve does not cross the annulus core")
        if uq < 0:
            up, uq = -up, -uq
        return -(up // (step * uq))

    return coord(p, q) - coord(fp, fq)
