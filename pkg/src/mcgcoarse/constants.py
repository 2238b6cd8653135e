"""Committed coarse constants, estimated by seeded scans and pinned here.

The uniform constants of the coarse machinery (projection bounds, the
threshold, the quasi-isometry constants of the distance formula) are not
derivable in closed form; they are estimated once by the deterministic
estimation runs in scripts/pin_constants.py and committed below.  The
regression tests assert that re-running the scans stays within these values.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CoarseConstants:
    """Pinned constants for one surface.

    m1:        Largest observed min-projection value for overlapping domain
               pairs (the consistency constant).
    m2:        Large-links constant; recorded for completeness, never
               estimated (its consumer is out of desk scale).
    d_marking: Bound on the diameter of a marking's projection to any domain.
    d_shared:  Bound on the projection diameter of marking pairs sharing a
               base curve crossing the domain.
    k:         Committed threshold for distance-formula sums.
    a, b:      Fitted quasi-isometry constants at threshold k.
    lipschitz: Marking-projection Lipschitz constant on marking-graph edges.
    bgi:       Gate for the projection-based curve-complex lower bound
               (None disables the bound).
    """

    m1: int
    d_marking: int
    d_shared: int
    k: int
    a: int
    b: int
    lipschitz: int
    bgi: int | None = None
    m2: int | None = None

    @property
    def kprime(self):
        return max(self.m1 + self.d_marking, 2)

    def to_json(self):
        return {
            "M1": self.m1,
            "M2": self.m2,
            "D": self.d_marking,
            "D_shared": self.d_shared,
            "K": self.k,
            "a": self.a,
            "b": self.b,
            "Kprime": self.kprime,
            "lipschitz": self.lipschitz,
        }


# Placeholder values; re-pinned by scripts/pin_constants.py before release.
_REGISTRY = {
    (1, 1): CoarseConstants(m1=4, d_marking=2, d_shared=4, k=4, a=1, b=8, lipschitz=4),
    (0, 4): CoarseConstants(m1=4, d_marking=2, d_shared=4, k=4, a=1, b=8, lipschitz=4),
    (0, 5): CoarseConstants(m1=6, d_marking=3, d_shared=6, k=8, a=2, b=10, lipschitz=6),
    (1, 2): CoarseConstants(m1=6, d_marking=3, d_shared=6, k=8, a=2, b=10, lipschitz=6),
}

_DEFAULT = CoarseConstants(m1=8, d_marking=4, d_shared=8, k=12, a=2, b=12, lipschitz=8)


def constants_for(surface):
    return _REGISTRY.get((surface.genus, surface.punctures), _DEFAULT)
