"""Bound quivers over GF(2) and the path bases of their indecomposable projectives."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from recolle.gf2 import BitMatrix, Subspace, image_and_cokernel

Path = tuple[str, ...]
"""Arrow names in the order they are traversed (first applied first)."""


def word(composite: str) -> Path:
    """Read a composite written right-to-left (``"PH"`` means P after H)."""
    return tuple(reversed(composite))


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class BoundQuiver:
    """A quiver with homogeneous relations whose path algebra is finite-dimensional.

    ``relations`` holds formal sums of paths; each path is a tuple of arrow
    names in traversal order.  ``nilpotency_bound`` is a length at which every
    path already lies in the relation ideal; this is checked on construction.
    """

    name: str
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[Path, ...], ...]
    nilpotency_bound: int

    def __post_init__(self) -> None:
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValueError("arrow names must be distinct")
        for a in self.arrows:
            if a.source not in self.vertices or a.target not in self.vertices:
                raise ValueError(f"arrow {a.name} has an unknown endpoint")
        for rel in self.relations:
            if not rel:
                raise ValueError("empty relation")
            ends = {(self.path_source(p), self.path_target(p)) for p in rel}
            lengths = {len(p) for p in rel}
            if len(ends) != 1:
                raise ValueError(f"relation {rel} mixes endpoints")
            if len(lengths) != 1:
                raise ValueError(f"relation {rel} is not homogeneous")
            if min(lengths) < 2:
                raise ValueError(f"relation {rel} has a path of length < 2")
        self._check_nilpotent()

    # paths

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def arrow(self, name: str) -> Arrow:
        return self.arrows[self.arrow_index[name]]

    def path_source(self, p: Path) -> str:
        return self.arrow(p[0]).source

    def path_target(self, p: Path) -> str:
        return self.arrow(p[-1]).target

    def is_composable(self, p: Path) -> bool:
        return all(self.arrow(a).target == self.arrow(b).source for a, b in zip(p, p[1:]))

    def paths(self, source: str, target: str, length: int) -> list[Path]:
        """All paths of exactly ``length`` arrows from ``source`` to ``target``."""
        if length == 0:
            return [()] if source == target else []
        frontier: list[tuple[Path, str]] = [((), source)]
        for _ in range(length):
            frontier = [(p + (a.name,), a.target) for p, end in frontier
                        for a in self.arrows if a.source == end]
        return [p for p, end in frontier if end == target]

    def ideal_part(self, source: str, target: str, length: int) -> tuple[list[Path], Subspace]:
        """Paths of the given length and the relation ideal inside their span."""
        paths = self.paths(source, target, length)
        index = {p: i for i, p in enumerate(paths)}
        gens = []
        for rel in self.relations:
            rlen = len(rel[0])
            rs, rt = self.path_source(rel[0]), self.path_target(rel[0])
            for before in range(length - rlen + 1):
                after = length - rlen - before
                for p in self.paths(source, rs, before):
                    for q in self.paths(rt, target, after):
                        v = 0
                        for r in rel:
                            v ^= 1 << index[p + r + q]
                        gens.append(v)
        return paths, Subspace.span(len(paths), gens)

    def _check_nilpotent(self) -> None:
        for s in self.vertices:
            for t in self.vertices:
                paths, ideal = self.ideal_part(s, t, self.nilpotency_bound)
                if ideal.dim != len(paths):
                    raise ValueError(
                        f"{self.name}: paths of length {self.nilpotency_bound} "
                        f"from {s} to {t} survive the relations")

    def opposite(self) -> BoundQuiver:
        name = self.name[:-3] if self.name.endswith("^op") else self.name + "^op"
        return BoundQuiver(
            name,
            self.vertices,
            tuple(Arrow(a.name, a.target, a.source) for a in self.arrows),
            tuple(tuple(tuple(reversed(p)) for p in rel) for rel in self.relations),
            self.nilpotency_bound,
        )

    @cached_property
    def projective_bases(self) -> dict[str, "PathBasis"]:
        return {v: PathBasis(self, v) for v in self.vertices}


class PathBasis:
    """Paths out of a vertex modulo relations: the basis of its indecomposable projective.

    For every target vertex and length, the surviving coordinates are the
    paths that are not pivots of the ideal, and any path reduces to them
    through the canonical cokernel projection.
    """

    def __init__(self, quiver: BoundQuiver, start: str):
        self.quiver = quiver
        self.start = start
        # per (target, length): (paths, projection onto quotient coordinates)
        self._graded: dict[tuple[str, int], tuple[dict[Path, int], BitMatrix]] = {}
        self.basis: dict[str, list[Path]] = {w: [] for w in quiver.vertices}
        self._offset: dict[tuple[str, int], int] = {}
        for length in range(quiver.nilpotency_bound):
            for w in quiver.vertices:
                paths, ideal = quiver.ideal_part(start, w, length)
                incl = ideal.inclusion()
                _, qdim, proj = image_and_cokernel(incl)
                pivots = set(ideal.pivots)
                self._graded[(w, length)] = ({p: i for i, p in enumerate(paths)}, proj)
                self._offset[(w, length)] = len(self.basis[w])
                self.basis[w].extend(p for i, p in enumerate(paths) if i not in pivots)

    def dim(self, w: str) -> int:
        return len(self.basis[w])

    def coordinates(self, p: Path, w: str) -> int:
        """Coordinates at vertex ``w`` of the class of path ``p`` from the start vertex."""
        length = len(p)
        if length >= self.quiver.nilpotency_bound:
            return 0
        index, proj = self._graded[(w, length)]
        v = proj.apply(1 << index[p])
        return v << self._offset[(w, length)]

    def arrow_matrix(self, arrow: Arrow) -> BitMatrix:
        """Action of ``arrow`` by path extension, as a matrix between vertex spaces."""
        cols = [self.coordinates(p + (arrow.name,), arrow.target)
                for p in self.basis[arrow.source]]
        return BitMatrix.from_columns(self.dim(arrow.target), cols)


def _quiver(name, vertices, arrows, relations, bound) -> BoundQuiver:
    return BoundQuiver(name, tuple(vertices), tuple(Arrow(*a) for a in arrows),
                       tuple(tuple(word(w) for w in rel) for rel in relations), bound)


VECT = _quiver("vect", ["v"], [], [], 1)
SIGMA2 = _quiver("sigma2", ["x"], [("u", "x", "x")], [["uu"]], 2)
QUAD_FREE = _quiver("quad_free", ["v1", "v2"], [("H", "v1", "v2"), ("P", "v2", "v1")],
                    [["PHP"], ["HPH"]], 3)
QUAD_VECT = _quiver("quad_vect", ["v1", "v2"], [("H", "v1", "v2"), ("P", "v2", "v1")],
                    [["PHP"], ["HPH"], ["PH"]], 3)

QUIVERS: dict[str, BoundQuiver] = {q.name: q for q in (VECT, SIGMA2, QUAD_FREE, QUAD_VECT)}
