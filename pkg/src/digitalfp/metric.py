"""Digital metric spaces (X, d, kappa) with exact distance arithmetic.

l_1, l_inf and table metrics produce ``Fraction`` values.  Other l_p
distances are rational when the p-th root happens to be exact and sympy
radicals otherwise.  All comparisons go through ``sign``, so strict
inequalities such as ``d(Tx, Ty) > k d(x, y)`` are never decided by rounding.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Any, NamedTuple, Sequence, Union

from .core import DigitalImage, Point, Verdict, as_point
from .errors import InputError

Number = Any  # Fraction, or a sympy expression for irrational l_p distances


def as_fraction(x: Any) -> Fraction:
    """Parse an int, Fraction or 'P/Q' string into a Fraction."""
    if isinstance(x, bool):
        raise InputError(f"not a rational number: {x!r}")
    if isinstance(x, float):
        raise InputError(f"floats are not accepted, write {x!r} as P/Q")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {x!r}") from None


def sign(x: Number) -> int:
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    import sympy
    x = sympy.sympify(x)
    if x.is_Rational:
        return (x.p > 0) - (x.p < 0)
    approx = x.evalf(60)
    if abs(approx) > sympy.Float("1e-45"):
        return 1 if approx > 0 else -1
    t = sympy.Dummy("t")
    if sympy.minimal_polynomial(x, t) == t:
        return 0
    approx = x.evalf(1000)
    return 1 if approx > 0 else -1


def compare(a: Number, b: Number) -> int:
    return sign(a - b)


def num_min(values):
    return min(values, key=cmp_to_key(compare))


def num_max(values):
    return max(values, key=cmp_to_key(compare))


def to_json_number(x: Number) -> int | str:
    """Ints stay ints; other rationals become 'P/Q'; radicals their sympy string."""
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    import sympy
    x = sympy.nsimplify(x) if not isinstance(x, sympy.Basic) else x
    if x.is_Rational:
        return to_json_number(Fraction(int(x.p), int(x.q)))
    return str(x)


def _exact_root(s: int, p: int) -> int | None:
    r = round(s ** (1.0 / p))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** p == s:
            return c
    return None


@dataclass(frozen=True)
class LP:
    """The l_p metric, p a positive integer or ``math.inf``."""

    p: Union[int, float]

    def __post_init__(self):
        if self.p != math.inf and (isinstance(self.p, bool) or not isinstance(self.p, int) or self.p < 1):
            raise InputError(f"l_p needs an integer p >= 1 or inf, got {self.p!r}")

    def __call__(self, a: Point, b: Point) -> Number:
        diffs = [abs(x - y) for x, y in zip(a, b)]
        if self.p == 1:
            return Fraction(sum(diffs))
        if self.p == math.inf:
            return Fraction(max(diffs))
        s = sum(d ** self.p for d in diffs)
        r = _exact_root(s, self.p)
        if r is not None:
            return Fraction(r)
        import sympy
        return sympy.root(sympy.Integer(s), self.p)

    def to_json(self) -> dict:
        return {"type": "l_p", "p": "inf" if self.p == math.inf else self.p}


@dataclass(frozen=True)
class TableMetric:
    """An explicit distance matrix over ``points`` (in sorted order).

    The metric axioms are checked exactly at construction.
    """

    points: tuple[Point, ...]
    entries: tuple[tuple[Fraction, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        pts = list(self.points)
        if pts != sorted(pts) or len(set(pts)) != len(pts):
            raise InputError("table metric points must be distinct and sorted")
        n = len(pts)
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise InputError(f"table metric must be a {n}x{n} matrix")
        d = self.entries
        for i in range(n):
            if d[i][i] != 0:
                raise InputError(f"table metric: d(x,x) != 0 at {pts[i]}")
            for j in range(n):
                if d[i][j] < 0:
                    raise InputError(f"table metric: negative entry at ({pts[i]}, {pts[j]})")
                if d[i][j] != d[j][i]:
                    raise InputError(f"table metric: not symmetric at ({pts[i]}, {pts[j]})")
                if i != j and d[i][j] == 0:
                    raise InputError(f"table metric: zero distance between distinct "
                                     f"points {pts[i]}, {pts[j]}")
        for i, j, k in itertools.product(range(n), repeat=3):
            if d[i][k] > d[i][j] + d[j][k]:
                raise InputError(f"table metric: triangle inequality fails for "
                                 f"{pts[i]}, {pts[j]}, {pts[k]}")
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(pts)})

    @classmethod
    def from_rows(cls, points: Sequence[Point], rows: Sequence[Sequence[Any]]) -> TableMetric:
        return cls(tuple(points), tuple(tuple(as_fraction(v) for v in row) for row in rows))

    def __call__(self, a: Point, b: Point) -> Fraction:
        try:
            return self.entries[self._index[a]][self._index[b]]
        except KeyError:
            raise InputError(f"table metric has no entry for {a} or {b}") from None

    def to_json(self) -> dict:
        return {"type": "table",
                "entries": [[to_json_number(v) for v in row] for row in self.entries]}


Metric = Union[LP, TableMetric]


@dataclass(frozen=True)
class DigitalMetricSpace:
    image: DigitalImage
    metric: Metric

    def __post_init__(self):
        if isinstance(self.metric, TableMetric) and self.metric.points != self.image.points:
            raise InputError("table metric points do not match the image points")

    def __len__(self) -> int:
        return len(self.image)

    @property
    def points(self) -> tuple[Point, ...]:
        return self.image.points

    def d(self, x: Point, y: Point) -> Number:
        return self.metric(x, y)


def distance(s: DigitalMetricSpace, x: Point, y: Point) -> Number:
    x, y = as_point(x), as_point(y)
    s.image.idx(x)
    s.image.idx(y)
    return s.metric(x, y)


class Attained(NamedTuple):
    value: Number
    pair: tuple[Point, Point]


def _extreme_pair(s: DigitalMetricSpace, pairs, pick) -> Attained:
    best = None
    for x, y in pairs:
        v = s.d(x, y)
        if best is None or pick(compare(v, best.value)):
            best = Attained(v, (x, y))
    return best


def min_gap(s: DigitalMetricSpace) -> Attained:
    """Least distance between distinct points, with the first pair attaining it."""
    if len(s) < 2:
        raise InputError("min_gap needs at least two points")
    return _extreme_pair(s, itertools.combinations(s.points, 2), lambda c: c < 0)


def diameter(s: DigitalMetricSpace) -> Attained:
    if len(s) < 2:
        p = s.points[0]
        return Attained(Fraction(0), (p, p))
    return _extreme_pair(s, itertools.combinations(s.points, 2), lambda c: c > 0)


def adjacency_gap_stats(s: DigitalMetricSpace) -> tuple[Attained, Attained]:
    """(d0, d1): least and greatest distance between adjacent points."""
    edges = s.image.edges()
    if not edges:
        raise InputError("image has no adjacent pair")
    return (_extreme_pair(s, edges, lambda c: c < 0),
            _extreme_pair(s, edges, lambda c: c > 0))


# -- sequences --------------------------------------------------------------

@dataclass(frozen=True)
class PointSequence:
    """An observed finite prefix of a sequence of points.

    ``cap`` is the generation bound used to produce it, if any.
    """

    terms: tuple[Point, ...]
    cap: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(as_point(t) for t in self.terms))

    def __len__(self) -> int:
        return len(self.terms)


def mod4_sequence(length: int) -> PointSequence:
    """0, 0, 1, 1, 0, 0, 1, 1, ... as one-dimensional points."""
    return PointSequence(tuple((0,) if n % 4 in (0, 1) else (1,) for n in range(length)), length)


def _tail_start(terms: Sequence[Point]) -> int:
    m = len(terms) - 1
    while m > 0 and terms[m - 1] == terms[-1]:
        m -= 1
    return m


def is_eventually_constant(seq: PointSequence) -> Verdict:
    """Has the observed prefix settled on its final value?

    The witness is the least index m from which the prefix is constant.  The
    prefix counts as settled only when that constant tail is more than half
    of what was observed (2m < len); a final run that is no longer than the
    part before it is not evidence of stabilization.  Under this rule the
    period-4 sequence 0, 0, 1, 1, ... is never settled, while any orbit that
    reaches a fixed point is settled once it is at least twice as long as its
    pre-fixed part.
    """
    if not seq.terms:
        raise InputError("empty sequence")
    m = _tail_start(seq.terms)
    return Verdict(2 * m < len(seq.terms), m)


def even_odd_gaps(seq: PointSequence, s: DigitalMetricSpace) -> list[Number]:
    """d(y_{2n}, y_{2n+1}) for every complete pair in the prefix."""
    t = seq.terms
    return [distance(s, t[2 * n], t[2 * n + 1]) for n in range(len(t) // 2)]


@dataclass(frozen=True)
class CauchyReport:
    threshold: Number
    tail_sups: tuple[Number, ...]   # tail_sups[n] = sup_{i,j >= n} d(x_i, x_j), 2n < len
    cauchy: Verdict                 # witness: first tail start with sup < threshold
    eventually_constant: Verdict
    min_gap: Number | None
    proposition_holds: bool         # (min_gap >= threshold and cauchy) => eventually constant

    def to_json(self) -> dict:
        return {
            "threshold": to_json_number(self.threshold),
            "tail_sups": [to_json_number(v) for v in self.tail_sups],
            "cauchy_at_threshold": self.cauchy.holds,
            "cauchy_tail_start": self.cauchy.witness,
            "eventually_constant": self.eventually_constant.holds,
            "stabilization_index": self.eventually_constant.witness,
            "min_gap": None if self.min_gap is None else to_json_number(self.min_gap),
            "proposition_holds": self.proposition_holds,
        }


def cauchy_modulus(seq: PointSequence, s: DigitalMetricSpace,
                   threshold: Number | None = None) -> CauchyReport:
    """Thresholded tail analysis of a finite prefix.

    A prefix is reported "Cauchy at threshold a" when some tail that still
    holds more than half of the observed terms has all pairwise distances
    below a.  This is a finite stand-in for the analytic property and is
    reported as such.  The default threshold is the space's min gap.
    """
    if not seq.terms:
        raise InputError("empty sequence")
    for t in seq.terms:
        s.image.idx(t)
    gap = min_gap(s).value if len(s) >= 2 else None
    if threshold is None:
        threshold = gap if gap is not None else Fraction(1)
    if sign(threshold) <= 0:
        raise InputError("threshold must be positive")
    terms = seq.terms
    n_terms = len(terms)
    # suffix sups, computed right to left over the set of values seen so far
    sups = [Fraction(0)] * n_terms
    seen: list[Point] = []
    current: Number = Fraction(0)
    for i in range(n_terms - 1, -1, -1):
        x = terms[i]
        if x not in seen:
            for y in seen:
                v = s.d(x, y)
                if compare(v, current) > 0:
                    current = v
            seen.append(x)
        sups[i] = current
    starts = [n for n in range(n_terms) if 2 * n < n_terms]
    tail_sups = tuple(sups[n] for n in starts)
    first = next((n for n in starts if compare(sups[n], threshold) < 0), None)
    cauchy = Verdict(first is not None, first)
    ev = is_eventually_constant(seq)
    premise = cauchy.holds and (gap is None or compare(gap, threshold) >= 0)
    return CauchyReport(threshold, tail_sups, cauchy, ev, gap, (not premise) or ev.holds)
