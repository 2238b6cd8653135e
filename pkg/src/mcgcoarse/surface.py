"""Surface types, complexity and rank formulas, partitions along multicurves."""

from __future__ import annotations

from dataclasses import dataclass, field


class DomainError(ValueError):
    """Invalid topological input (bad surface, inessential curve, ...)."""


@dataclass(frozen=True, order=True)
class Surface:
    """Orientable surface of finite type; boundary and punctures conflated."""

    genus: int
    punctures: int

    def __post_init__(self):
        g, p = self.genus, self.punctures
        if g < 0 or p < 0:
            raise DomainError("genus and punctures must be non-negative")
        if 3 * g - 3 + p < 1 and (g, p) not in ((0, 3), (0, 2)):
            raise DomainError(f"surface S_{{{g},{p}}} is not admitted")

    @property
    def is_annulus(self):
        return (self.genus, self.punctures) == (0, 2)

    @property
    def is_pants(self):
        return (self.genus, self.punctures) == (0, 3)

    def to_json(self):
        return {"g": self.genus, "p": self.punctures}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["g"]), int(data["p"]))


def complexity(surface):
    """Number of curves in a pants decomposition: 3g - 3 + p."""
    return 3 * surface.genus - 3 + surface.punctures


def rank(obj):
    """Largest rank of an abelian subgroup of the mapping class group.

    Accepts a Surface, a SubsurfacePiece, or a list of pieces (additive
    over disjoint unions; one for each annulus).
    """
    if isinstance(obj, (list, tuple)):
        return sum(rank(x) for x in obj)
    if isinstance(obj, SubsurfacePiece):
        if obj.kind == "annulus":
            return 1
        return rank(Surface(obj.genus, obj.punctures))
    if isinstance(obj, Surface):
        if obj.is_annulus:
            return 1
        if obj.is_pants:
            raise DomainError("rank is undefined for S_{0,3}")
        return complexity(obj)
    raise TypeError(f"cannot take rank of {obj!r}")


def pants_rank(surface):
    """Number of non-annular factors a partition can have: floor((3g+p-2)/2)."""
    return (3 * surface.genus + surface.punctures - 2) // 2


@dataclass(frozen=True)
class SubsurfacePiece:
    """A piece of a partition: an annulus around a curve, a complementary
    component, or the full surface."""

    parent: Surface
    kind: str  # "annulus" | "piece" | "full"
    core: object = None  # annulus core or the boundary multicurve of a piece
    genus: int = 0
    punctures: int = 0
    interior_punctures: frozenset = field(default_factory=frozenset)
    ncircles: int = 0

    def __post_init__(self):
        if self.kind not in ("annulus", "piece", "full"):
            raise DomainError(f"unknown piece kind {self.kind!r}")
        if self.kind == "piece" and (self.genus, self.punctures) == (0, 3):
            raise DomainError("S_{0,3} pieces carry no curve complex")

    @property
    def is_annular(self):
        return self.kind == "annulus"

    def surface_type(self):
        if self.kind == "annulus":
            return Surface(0, 2)
        if self.kind == "full":
            return self.parent
        return Surface(self.genus, self.punctures)

    def piece_key(self):
        return (self.genus, self.punctures, self.interior_punctures)

    def __repr__(self):
        if self.kind == "annulus":
            return f"Annulus({self.core!r})"
        if self.kind == "full":
            return f"FullSurface({self.parent!r})"
        return (
            f"Piece(S_{{{self.genus},{self.punctures}}} of {self.parent!r},"
            f" punctures={sorted(self.interior_punctures)})"
        )


@dataclass(frozen=True)
class Partition:
    """The partition of a surface along a multicurve: annuli around the
    components plus the complementary pieces that are not S_{0,3}."""

    source: object  # the multicurve
    pieces: tuple[SubsurfacePiece, ...]

    def __len__(self):
        return len(self.pieces)

    def __iter__(self):
        return iter(self.pieces)

    def annuli(self):
        return [p for p in self.pieces if p.kind == "annulus"]

    def non_annular(self):
        return [p for p in self.pieces if p.kind == "piece"]


def full_piece(surface):
    return SubsurfacePiece(parent=surface, kind="full")


def annulus_piece(core):
    if not core.is_connected():
        raise DomainError("annulus core must be a connected curve")
    return SubsurfacePiece(parent=core.surface, kind="annulus", core=core)


def partition(surface, delta):
    """Complementary pieces of the multicurve plus one annulus per component,
    with S_{0,3} components silently discarded."""
    from . import curves as _curves

    if delta.surface != surface:
        raise DomainError("multicurve lives on a different surface")
    if delta.is_empty():
        raise DomainError("cannot partition along an empty multicurve")
    classes = delta.component_classes()
    if len(classes) != len(delta.components()):
        raise DomainError("partition needs a multicurve without parallel components")
    pieces = [annulus_piece(c) for c in classes]
    if complexity(surface) == 1:
        # Complementary pieces of a curve on a complexity-one surface are
        # three-holed spheres; only the annulus survives.
        return Partition(delta, tuple(pieces))
    rd = _curves.region_decomposition(delta)
    for region in rd.regions:
        if (region.genus, region.punctures) == (0, 3):
            continue
        boundary_classes = sorted({classes[ci].canonical_key() for ci, _ in region.boundary})
        boundary = tuple(
            c for c in classes if c.canonical_key() in set(boundary_classes)
        )
        pieces.append(
            SubsurfacePiece(
                parent=surface,
                kind="piece",
                core=boundary if len(boundary) > 1 else boundary[0],
                genus=region.genus,
                punctures=region.punctures,
                interior_punctures=region.interior_punctures,
                ncircles=len(region.boundary),
            )
        )
    pieces.sort(key=_piece_sort_key)
    return Partition(delta, tuple(pieces))


def _piece_sort_key(piece):
    if piece.kind == "annulus":
        return (0, piece.core.canonical_key())
    return (1, piece.genus, piece.punctures, tuple(sorted(piece.interior_punctures)))
