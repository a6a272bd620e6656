"""Lattice points, adjacency relations and digital images.

A digital image is a finite set of points of Z^n together with an adjacency
relation, i.e. a finite simple graph whose vertices happen to be lattice
points.  Points are plain tuples of ints; tuple comparison gives the
lexicographic order used everywhere for deterministic output.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence, Union

from .errors import InputError

Point = tuple[int, ...]


@dataclass(frozen=True)
class Verdict:
    """A yes/no answer with an optional witness.  Truthy iff ``holds``."""

    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds


def as_point(coords: Iterable[int]) -> Point:
    """Coerce a coordinate sequence to a Point, rejecting non-integers."""
    try:
        pt = tuple(coords)
    except TypeError:
        raise InputError(f"point must be a sequence of integers, got {coords!r}") from None
    if not pt:
        raise InputError("point must have at least one coordinate")
    for c in pt:
        if isinstance(c, bool) or not isinstance(c, int):
            raise InputError(f"non-integer coordinate {c!r} in point {pt!r}")
    return pt


def _check_dim(p: Point, dim: int) -> None:
    if len(p) != dim:
        raise InputError(f"point {p} has dimension {len(p)}, expected {dim}")


@dataclass(frozen=True)
class CU:
    """The c_u adjacency on Z^n: at most u coordinates differ, each by exactly 1."""

    u: int
    ambient_dim: int

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise InputError(f"ambient dimension must be positive, got {self.ambient_dim}")
        if not 1 <= self.u <= self.ambient_dim:
            raise InputError(f"c_u needs 1 <= u <= {self.ambient_dim}, got u={self.u}")

    def adjacent(self, a: Point, b: Point) -> bool:
        _check_dim(a, self.ambient_dim)
        _check_dim(b, self.ambient_dim)
        moved = 0
        for x, y in zip(a, b):
            if x != y:
                if abs(x - y) != 1:
                    return False
                moved += 1
        return 0 < moved <= self.u


@dataclass(frozen=True)
class Explicit:
    """Adjacency given as an explicit set of unordered pairs."""

    edges: frozenset[frozenset[Point]]
    ambient_dim: int

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise InputError(f"ambient dimension must be positive, got {self.ambient_dim}")
        for e in self.edges:
            if len(e) != 2:
                raise InputError(f"self-loop or malformed edge {sorted(e)}")
            for p in e:
                _check_dim(p, self.ambient_dim)

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[Iterable[int]]], ambient_dim: int) -> Explicit:
        edges = set()
        for pair in pairs:
            if len(pair) != 2:
                raise InputError(f"edge must have two endpoints, got {pair!r}")
            a, b = as_point(pair[0]), as_point(pair[1])
            if a == b:
                raise InputError(f"self-loop at {a}")
            edges.add(frozenset((a, b)))
        return cls(frozenset(edges), ambient_dim)

    def adjacent(self, a: Point, b: Point) -> bool:
        _check_dim(a, self.ambient_dim)
        _check_dim(b, self.ambient_dim)
        return a != b and frozenset((a, b)) in self.edges

    def sorted_edges(self) -> list[tuple[Point, Point]]:
        return sorted(tuple(sorted(e)) for e in self.edges)


@dataclass(frozen=True)
class NPU:
    """Normal product adjacency NP_u(k_1, ..., k_v) on flattened product points.

    Two product points are adjacent when they differ, every factor in which
    they differ is factor-adjacent, and at most u factors differ.
    """

    u: int
    factors: tuple[Adjacency, ...]

    def __post_init__(self):
        if not self.factors:
            raise InputError("NP_u needs at least one factor")
        if not 1 <= self.u <= len(self.factors):
            raise InputError(f"NP_u needs 1 <= u <= {len(self.factors)}, got u={self.u}")

    @property
    def arity(self) -> tuple[int, ...]:
        return tuple(f.ambient_dim for f in self.factors)

    @property
    def ambient_dim(self) -> int:
        return sum(self.arity)

    def split(self, p: Point) -> list[Point]:
        _check_dim(p, self.ambient_dim)
        out, i = [], 0
        for n in self.arity:
            out.append(p[i:i + n])
            i += n
        return out

    def adjacent(self, a: Point, b: Point) -> bool:
        moved = 0
        for rel, x, y in zip(self.factors, self.split(a), self.split(b)):
            if x != y:
                if not rel.adjacent(x, y):
                    return False
                moved += 1
        return 0 < moved <= self.u


Adjacency = Union[CU, Explicit, NPU]


def adjacent(a: Point, b: Point, rel: Adjacency) -> bool:
    return rel.adjacent(a, b)


def adjacent_or_equal(a: Point, b: Point, rel: Adjacency) -> bool:
    _check_dim(a, rel.ambient_dim)
    _check_dim(b, rel.ambient_dim)
    return a == b or rel.adjacent(a, b)


@dataclass(frozen=True)
class DigitalImage:
    """A finite digital image (X, kappa).

    Points are stored sorted; ``index`` maps each point to its position and
    ``nbrs[i]`` holds the indices adjacent to point ``i``.
    """

    points: tuple[Point, ...]
    adjacency: Adjacency
    index: dict = field(init=False, repr=False, compare=False, hash=False)
    nbrs: tuple = field(init=False, repr=False, compare=False, hash=False)
    closed: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, points: Iterable[Iterable[int]], adjacency: Adjacency):
        pts = [as_point(p) for p in points]
        if not pts:
            raise InputError("digital image must be non-empty")
        dim = adjacency.ambient_dim
        for p in pts:
            _check_dim(p, dim)
        if len(set(pts)) != len(pts):
            dups = sorted({p for p in pts if pts.count(p) > 1})
            raise InputError(f"duplicate points: {dups}")
        pts.sort()
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "adjacency", adjacency)
        object.__setattr__(self, "index", {p: i for i, p in enumerate(pts)})
        nbrs = [set() for _ in pts]
        for i, j in itertools.combinations(range(len(pts)), 2):
            if adjacency.adjacent(pts[i], pts[j]):
                nbrs[i].add(j)
                nbrs[j].add(i)
        object.__setattr__(self, "nbrs", tuple(frozenset(s) for s in nbrs))
        object.__setattr__(self, "closed", tuple(frozenset(s | {i}) for i, s in enumerate(nbrs)))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return p in self.index

    @property
    def dim(self) -> int:
        return self.adjacency.ambient_dim

    def idx(self, p: Point) -> int:
        try:
            return self.index[p]
        except (KeyError, TypeError):
            raise InputError(f"point {p!r} is not in the image") from None

    def edges(self) -> list[tuple[Point, Point]]:
        """Adjacent pairs (a, b) with a < b, in lexicographic order."""
        return [(self.points[i], self.points[j])
                for i in range(len(self)) for j in sorted(self.nbrs[i]) if i < j]


def interval(a: int, b: int) -> DigitalImage:
    """The digital interval ([a, b]_Z, c_1)."""
    if a > b:
        raise InputError(f"empty interval [{a}, {b}]")
    return DigitalImage([(z,) for z in range(a, b + 1)], CU(1, 1))


def box(sizes: Sequence[int], u: int) -> DigitalImage:
    """The box [0, s_1 - 1] x ... x [0, s_n - 1] with c_u adjacency."""
    pts = itertools.product(*(range(s) for s in sizes))
    return DigitalImage(pts, CU(u, len(sizes)))


def neighbors(x: Point, img: DigitalImage) -> list[Point]:
    return [img.points[j] for j in sorted(img.nbrs[img.idx(x)])]


def component_count(img: DigitalImage, subset: Iterable[int] | None = None) -> int:
    """Number of connected components of the subgraph induced on ``subset`` (indices)."""
    todo = set(range(len(img))) if subset is None else set(subset)
    count = 0
    while todo:
        count += 1
        queue = deque([todo.pop()])
        while queue:
            i = queue.popleft()
            for j in img.nbrs[i] & todo:
                todo.discard(j)
                queue.append(j)
    return count


def is_connected(img: DigitalImage) -> bool:
    return component_count(img) == 1


def is_connected_subset(img: DigitalImage, subset: Iterable[int]) -> bool:
    """True iff the non-empty index set ``subset`` induces a connected subgraph."""
    return component_count(img, subset) == 1


def is_dominating(d_set: Iterable[Point], img: DigitalImage) -> bool:
    dom = {img.idx(as_point(p)) for p in d_set}
    return all(img.closed[i] & dom for i in range(len(img)))
