"""Digital maps, continuity, exhaustive enumeration and universality.

Every exhaustive decision in this module runs on one backtracking kernel,
``_search``.  It assigns images vertex by vertex in lexicographic order,
tries codomain points in lexicographic order, and prunes a branch as soon as
an already-assigned adjacent pair is sent to a pair that is neither adjacent
nor equal.  Tables therefore come out in lexicographic order and witnesses
are reproducible: the lexicographically least one, except for strict
universality (see ``is_universal``).
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

from .core import DigitalImage, Point, Verdict, as_point, is_connected_subset
from .errors import BudgetError, InputError

DEFAULT_MAX_MAPS = 10**7
DEFAULT_MAX_NODES = 10**8


@dataclass(frozen=True)
class EnumerationBudget:
    max_maps: int = DEFAULT_MAX_MAPS
    max_nodes: int = DEFAULT_MAX_NODES

    def __post_init__(self):
        if self.max_maps < 1 or self.max_nodes < 1:
            raise InputError("budget caps must be >= 1")


@dataclass(frozen=True)
class DigitalMap:
    """A total function between two digital images.

    Stored as ``images``: for the i-th domain point, the codomain index of its
    image.  Equality is pointwise table equality (plus equal domain/codomain).
    """

    domain: DigitalImage
    codomain: DigitalImage
    images: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.images) != len(self.domain):
            raise InputError(f"map table has {len(self.images)} entries for "
                             f"{len(self.domain)} domain points")
        n = len(self.codomain)
        for i in self.images:
            if not 0 <= i < n:
                raise InputError(f"codomain index {i} out of range")

    @classmethod
    def from_table(cls, domain: DigitalImage, codomain: DigitalImage,
                   table: Mapping[Any, Any]) -> DigitalMap:
        tab = {as_point(k): as_point(v) for k, v in table.items()}
        missing = [p for p in domain.points if p not in tab]
        if missing:
            raise InputError(f"map is not total: no value for {missing[0]}")
        extra = sorted(set(tab) - set(domain.points))
        if extra:
            raise InputError(f"map has value for {extra[0]}, which is not in the domain")
        return cls(domain, codomain, tuple(codomain.idx(tab[p]) for p in domain.points))

    @classmethod
    def from_function(cls, domain: DigitalImage, codomain: DigitalImage,
                      fn: Callable[[Point], Point]) -> DigitalMap:
        return cls.from_table(domain, codomain, {p: fn(p) for p in domain.points})

    @classmethod
    def identity(cls, img: DigitalImage) -> DigitalMap:
        return cls(img, img, tuple(range(len(img))))

    @classmethod
    def constant(cls, domain: DigitalImage, codomain: DigitalImage, value: Point) -> DigitalMap:
        j = codomain.idx(as_point(value))
        return cls(domain, codomain, (j,) * len(domain))

    def __call__(self, p: Point) -> Point:
        return self.codomain.points[self.images[self.domain.idx(p)]]

    @property
    def table(self) -> dict[Point, Point]:
        cod = self.codomain.points
        return {p: cod[j] for p, j in zip(self.domain.points, self.images)}

    def pairs(self) -> list[tuple[Point, Point]]:
        return list(self.table.items())

    @property
    def is_self_map(self) -> bool:
        return self.domain == self.codomain

    def image_set(self) -> list[Point]:
        return [self.codomain.points[j] for j in sorted(set(self.images))]


def _require_self_map(f: DigitalMap) -> None:
    if not f.is_self_map:
        raise InputError("operation needs a self-map (domain == codomain)")


def is_continuous(f: DigitalMap) -> Verdict:
    """Adjacent points must go to adjacent-or-equal points.

    On failure the witness is the first offending adjacent pair (x, y).
    """
    X, Y = f.domain, f.codomain
    for i in range(len(X)):
        fi = f.images[i]
        for j in sorted(X.nbrs[i]):
            if j > i and f.images[j] not in Y.closed[fi]:
                return Verdict(False, (X.points[i], X.points[j]))
    return Verdict(True)


MAX_CONNECTIVITY_POINTS = 15


def is_continuous_by_connectivity(f: DigitalMap) -> bool:
    """Continuity checked from the definition: connected subsets have connected images.

    Enumerates every subset of the domain, so the domain is capped at 15 points.
    """
    X, Y = f.domain, f.codomain
    n = len(X)
    if n > MAX_CONNECTIVITY_POINTS:
        raise BudgetError(f"connectivity check limited to {MAX_CONNECTIVITY_POINTS} "
                          f"domain points, got {n}")
    for r in range(1, n + 1):
        for subset in itertools.combinations(range(n), r):
            if is_connected_subset(X, subset):
                if not is_connected_subset(Y, {f.images[i] for i in subset}):
                    return False
    return True


def compose(g: DigitalMap, f: DigitalMap) -> DigitalMap:
    """g after f."""
    if f.codomain != g.domain:
        raise InputError("cannot compose: codomain of f differs from domain of g")
    return DigitalMap(f.domain, g.codomain, tuple(g.images[j] for j in f.images))


def fixed_points(f: DigitalMap) -> list[Point]:
    _require_self_map(f)
    return [p for i, p in enumerate(f.domain.points) if f.images[i] == i]


def approximate_fixed_points(f: DigitalMap) -> list[Point]:
    _require_self_map(f)
    X = f.domain
    return [p for i, p in enumerate(X.points) if f.images[i] in X.closed[i]]


def strictly_adjacent_points(f: DigitalMap) -> list[Point]:
    """Points x with f(x) adjacent to (and distinct from) x."""
    _require_self_map(f)
    X = f.domain
    return [p for i, p in enumerate(X.points) if f.images[i] in X.nbrs[i]]


def is_inverse(f: DigitalMap, g: DigitalMap) -> bool:
    return (f.domain == g.codomain and f.codomain == g.domain
            and all(g.images[f.images[i]] == i for i in range(len(f.domain)))
            and all(f.images[g.images[j]] == j for j in range(len(g.domain))))


def inverse(f: DigitalMap) -> DigitalMap:
    if len(set(f.images)) != len(f.images) or len(f.domain) != len(f.codomain):
        raise InputError("map is not a bijection")
    inv = [0] * len(f.images)
    for i, j in enumerate(f.images):
        inv[j] = i
    return DigitalMap(f.codomain, f.domain, tuple(inv))


# -- enumeration kernel -----------------------------------------------------

class _Counter:
    __slots__ = ("maps", "nodes")

    def __init__(self):
        self.maps = 0
        self.nodes = 0


def _search(X: DigitalImage, Y: DigitalImage, budget: EnumerationBudget,
            allowed: Sequence[Iterable[int]] | None = None,
            prefix: tuple[int, ...] = (),
            counter: _Counter | None = None) -> Iterator[tuple[int, ...]]:
    """Yield image tuples of all continuous maps X -> Y in lexicographic order.

    ``allowed[i]`` restricts the codomain indices tried at vertex i.  ``prefix``
    fixes the first len(prefix) values (used to split work between processes).
    """
    n, m = len(X), len(Y)
    counter = counter or _Counter()
    earlier = [sorted(j for j in X.nbrs[i] if j < i) for i in range(n)]
    full = range(m)
    choices = [sorted(set(allowed[i])) if allowed is not None else full for i in range(n)]
    closedY = Y.closed
    assign = list(prefix) + [0] * (n - len(prefix))

    for i, v in enumerate(prefix):
        if v not in set(choices[i]) or any(v not in closedY[assign[j]] for j in earlier[i]):
            return

    def rec(i: int):
        if i == n:
            counter.maps += 1
            if counter.maps > budget.max_maps:
                raise BudgetError(f"more than {budget.max_maps} maps", counter.maps - 1, counter.nodes)
            yield tuple(assign)
            return
        nb = earlier[i]
        if nb:
            cand = closedY[assign[nb[0]]]
            for j in nb[1:]:
                cand = cand & closedY[assign[j]]
            cands = [v for v in choices[i] if v in cand]
        else:
            cands = choices[i]
        for v in cands:
            counter.nodes += 1
            if counter.nodes > budget.max_nodes:
                raise BudgetError(f"more than {budget.max_nodes} search nodes",
                                  counter.maps, counter.nodes)
            assign[i] = v
            yield from rec(i + 1)

    yield from rec(len(prefix))


def _branch_worker(args):
    X, Y, budget, first = args
    return list(_search(X, Y, budget, prefix=(first,)))


def enumerate_continuous(X: DigitalImage, Y: DigitalImage,
                         budget: EnumerationBudget | None = None,
                         workers: int = 1) -> Iterator[DigitalMap]:
    """Every continuous map X -> Y exactly once, in lexicographic table order.

    With ``workers > 1`` the top-level branches (value of the first vertex) run
    in separate processes; each branch gets the full budget and the merged
    stream is still in canonical order, with the map cap applied to the total.
    """
    budget = budget or EnumerationBudget()
    if workers <= 1 or len(Y) < 2:
        for images in _search(X, Y, budget):
            yield DigitalMap(X, Y, images)
        return
    total = 0
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for chunk in pool.map(_branch_worker, [(X, Y, budget, v) for v in range(len(Y))]):
            for images in chunk:
                total += 1
                if total > budget.max_maps:
                    raise BudgetError(f"more than {budget.max_maps} maps", total - 1)
                yield DigitalMap(X, Y, images)


def count_continuous(X: DigitalImage, Y: DigitalImage,
                     budget: EnumerationBudget | None = None, workers: int = 1) -> int:
    return sum(1 for _ in enumerate_continuous(X, Y, budget, workers))


def _counterexample(f: DigitalMap, strict: bool, budget: EnumerationBudget) -> DigitalMap | None:
    """A continuous g != f with g(x) never (strictly adjacent | adjacent-or-equal) to f(x).

    Among all such g, returns one agreeing with f at the fewest points, the
    lexicographically least on ties.  In the non-strict case agreement is
    impossible, so this is simply the first one found.
    """
    Y = f.codomain
    bad = Y.nbrs if strict else Y.closed
    allowed = [[v for v in range(len(Y)) if v not in bad[fi]] for fi in f.images]
    best, best_agree = None, None
    for images in _search(f.domain, Y, budget, allowed):
        if images == f.images:
            continue
        agree = sum(a == b for a, b in zip(images, f.images))
        if best is None or agree < best_agree:
            best, best_agree = images, agree
            if agree == 0:
                break
    return None if best is None else DigitalMap(f.domain, Y, best)


def is_universal(f: DigitalMap, budget: EnumerationBudget | None = None) -> Verdict:
    """Every continuous g != f has some x with f(x) strictly adjacent to g(x).

    On failure the witness is a violating continuous g that agrees with f at
    as few points as possible (lexicographically least among those).  When f
    is the only continuous map the property holds vacuously.
    """
    if not is_continuous(f):
        raise InputError("universality is only defined for continuous maps")
    g = _counterexample(f, strict=True, budget=budget or EnumerationBudget())
    return Verdict(g is None, g)


def is_weakly_universal(f: DigitalMap, budget: EnumerationBudget | None = None) -> Verdict:
    """Every continuous g != f has some x with f(x) adjacent or equal to g(x)."""
    if not is_continuous(f):
        raise InputError("weak universality is only defined for continuous maps")
    g = _counterexample(f, strict=False, budget=budget or EnumerationBudget())
    return Verdict(g is None, g)


def has_afpp(X: DigitalImage, budget: EnumerationBudget | None = None) -> Verdict:
    """Does every continuous self-map of X have an approximate fixed point?

    Searches the continuous self-maps with the approximate-fixed-point test
    pushed into the pruning: vertex x may only take values outside its closed
    neighbourhood.  The witness, if any, is the least continuous self-map with
    no approximate fixed point.
    """
    budget = budget or EnumerationBudget()
    allowed = [[v for v in range(len(X)) if v not in X.closed[i]] for i in range(len(X))]
    for images in _search(X, X, budget, allowed):
        return Verdict(False, DigitalMap(X, X, images))
    return Verdict(True)


def has_afpp_by_enumeration(X: DigitalImage, budget: EnumerationBudget | None = None) -> Verdict:
    """Same question as ``has_afpp``, answered by filtering the full enumeration."""
    for f in enumerate_continuous(X, X, budget):
        if not approximate_fixed_points(f):
            return Verdict(False, f)
    return Verdict(True)


def is_isomorphism(f: DigitalMap) -> bool:
    """Bijective, continuous, with continuous inverse."""
    if len(f.domain) != len(f.codomain) or len(set(f.images)) != len(f.images):
        return False
    return bool(is_continuous(f)) and bool(is_continuous(inverse(f)))


def find_isomorphism(X: DigitalImage, Y: DigitalImage,
                     budget: EnumerationBudget | None = None) -> DigitalMap | None:
    """Least isomorphism X -> Y in table order, or None."""
    budget = budget or EnumerationBudget()
    if len(X) != len(Y):
        return None
    if sorted(len(s) for s in X.nbrs) != sorted(len(s) for s in Y.nbrs):
        return None
    n = len(X)
    earlier = [sorted(j for j in X.nbrs[i] if j < i) for i in range(n)]
    earlier_non = [[j for j in range(i) if j not in X.nbrs[i]] for i in range(n)]
    assign = [0] * n
    used = [False] * n
    nodes = 0

    def rec(i: int) -> bool:
        nonlocal nodes
        if i == n:
            return True
        for v in range(n):
            if used[v] or len(Y.nbrs[v]) != len(X.nbrs[i]):
                continue
            nodes += 1
            if nodes > budget.max_nodes:
                raise BudgetError(f"more than {budget.max_nodes} search nodes", 0, nodes)
            if any(v not in Y.nbrs[assign[j]] for j in earlier[i]):
                continue
            if any(v in Y.nbrs[assign[j]] for j in earlier_non[i]):
                continue
            assign[i] = v
            used[v] = True
            if rec(i + 1):
                return True
            used[v] = False
        return False

    return DigitalMap(X, Y, tuple(assign)) if rec(0) else None


def all_functions(X: DigitalImage, Y: DigitalImage) -> Iterator[DigitalMap]:
    """Every function X -> Y, continuous or not, in table order (|Y|^|X| of them)."""
    for images in itertools.product(range(len(Y)), repeat=len(X)):
        yield DigitalMap(X, Y, images)
