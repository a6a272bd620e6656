"""Hypothesis validators and constructive solvers for fixed-point theorems
on finite digital metric spaces.

Each entry point returns a ``TheoremReport``: the verdict on every
hypothesis (with the first violating point or pair), and, only when all of
them hold, the verdict on the conclusion.  Solvers also re-derive their
answer by exhaustive scan and record the comparison.  A report whose
hypotheses all hold but whose conclusion fails has ``contradiction`` set:
the claimed implication is false on that instance.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence

from .core import Point, Verdict, is_connected
from .errors import BudgetError, ContradictionError, InputError
from .maps import DigitalMap, fixed_points, inverse, is_continuous
from .metric import (DigitalMetricSpace, Number, PointSequence, adjacency_gap_stats, as_fraction,
                     compare, diameter, min_gap, num_max, num_min, sign)

ORACLE_LIMIT = 64


@dataclass(frozen=True)
class Hypothesis:
    name: str
    holds: bool
    witness: Any = None


@dataclass
class TheoremReport:
    theorem_id: str
    hypotheses: list[Hypothesis]
    conclusion: Verdict | None = None
    details: dict = field(default_factory=dict)
    orbit: PointSequence | None = None
    contradiction: bool = False

    def __post_init__(self):
        if self.conclusion is not None and not self.hypotheses_hold:
            raise ValueError("conclusion asserted although a hypothesis failed")

    @property
    def hypotheses_hold(self) -> bool:
        return all(h.holds for h in self.hypotheses)

    def hypothesis(self, name: str) -> Hypothesis:
        for h in self.hypotheses:
            if h.name == name:
                return h
        raise KeyError(name)

    def to_json(self) -> dict:
        from .formats import jsonable
        return {
            "theorem": self.theorem_id,
            "hypotheses": [{"name": h.name, "holds": h.holds, "witness": jsonable(h.witness)}
                           for h in self.hypotheses],
            "conclusion": jsonable(self.conclusion),
            "details": jsonable(self.details),
            "orbit": jsonable(self.orbit),
            "contradiction": self.contradiction,
        }


def _require_self_map(s: DigitalMetricSpace, *maps: DigitalMap) -> None:
    for f in maps:
        if f.domain != s.image or f.codomain != s.image:
            raise InputError("map must be a self-map of the metric space's image")


def _pairs(s: DigitalMetricSpace):
    return itertools.combinations(s.points, 2)


def _onto(T: DigitalMap) -> Hypothesis:
    hit = set(T.images)
    missing = [p for i, p in enumerate(T.codomain.points) if i not in hit]
    return Hypothesis("onto", not missing, missing[0] if missing else None)


# -- expansive mappings -----------------------------------------------------

def is_expansive(s: DigitalMetricSpace, T: DigitalMap, k) -> Verdict:
    """d(Tx, Ty) >= k d(x, y) for all x, y, with k > 1."""
    k = as_fraction(k)
    if k <= 1:
        raise InputError(f"expansion factor must exceed 1, got {k}")
    _require_self_map(s, T)
    for x, y in _pairs(s):
        if compare(s.d(T(x), T(y)), k * s.d(x, y)) < 0:
            return Verdict(False, (x, y))
    return Verdict(True)


def max_expansion_factor(s: DigitalMetricSpace, T: DigitalMap) -> tuple[Number, tuple[Point, Point]]:
    """The largest k with d(Tx, Ty) >= k d(x, y) everywhere, and a pair attaining it."""
    best = None
    for x, y in _pairs(s):
        r = s.d(T(x), T(y)) / s.d(x, y)
        if best is None or compare(r, best[0]) < 0:
            best = (r, (x, y))
    return best


def expansive_onto_impossibility(s: DigitalMetricSpace) -> TheoremReport:
    """Check that no bijection of a finite space (|X| >= 2) is expansive for any k > 1.

    Every bijection is enumerated and its largest feasible expansion factor
    computed; the conclusion holds when all of them are <= 1.
    """
    n = len(s)
    if n < 2:
        raise InputError("need at least two points")
    gap, diam = min_gap(s), diameter(s)
    hyps = [
        Hypothesis("more_than_one_point", True, n),
        Hypothesis("extremal_pair_exists", True, {"min_gap": gap, "diameter": diam}),
    ]
    per_map = []
    offender = None
    for perm in itertools.permutations(range(n)):
        T = DigitalMap(s.image, s.image, perm)
        k, pair = max_expansion_factor(s, T)
        per_map.append({"map": T, "max_feasible_k": k, "attained_at": pair})
        if offender is None and compare(k, 1) > 0:
            offender = T
    worst = num_max(e["max_feasible_k"] for e in per_map)
    report = TheoremReport("expansive_onto_impossibility", hyps,
                           Verdict(offender is None, offender),
                           {"bijections": len(per_map), "max_feasible_k_overall": worst,
                            "per_map": per_map})
    report.contradiction = offender is not None
    return report


def sum_expansive_identity_check(s: DigitalMetricSpace, T: DigitalMap, k) -> TheoremReport:
    """d(Tx, Ty) >= k [d(x, Tx) + d(y, Ty)] with k >= 1/2 forces T to be the identity.

    Distinct pairs are checked first and the diagonal (x = y) last, so a
    reported witness is a two-point violation whenever one exists.
    """
    k = as_fraction(k)
    if k < Fraction(1, 2):
        raise InputError(f"k must be >= 1/2, got {k}")
    _require_self_map(s, T)
    witness = None
    for x, y in itertools.chain(_pairs(s), ((p, p) for p in s.points)):
        rhs = k * (s.d(x, T(x)) + s.d(y, T(y)))
        if compare(s.d(T(x), T(y)), rhs) < 0:
            witness = (x, y)
            break
    hyps = [Hypothesis("sum_expansive", witness is None, witness)]
    details = {"k": k, "onto": _onto(T).holds}
    if witness is not None:
        return TheoremReport("sum_expansive_identity", hyps, None, details)
    moved = [p for p in s.points if T(p) != p]
    report = TheoremReport("sum_expansive_identity", hyps,
                           Verdict(not moved, moved[0] if moved else None), details)
    report.contradiction = bool(moved)
    return report


class Mu(enum.Enum):
    PLAIN = "plain"                  # d(x, y)
    HALF_SUM_SELF = "halfsum"        # (d(x, Tx) + d(y, Ty)) / 2
    HALF_SUM_CROSS = "halfsum_cross"  # (d(x, Ty) + d(y, Tx)) / 2, representable but not admitted


@dataclass(frozen=True)
class ExpansiveParams:
    k: Fraction
    mu_choices: frozenset[Mu] = frozenset({Mu.PLAIN, Mu.HALF_SUM_SELF})

    def __post_init__(self):
        object.__setattr__(self, "k", as_fraction(self.k))
        object.__setattr__(self, "mu_choices", frozenset(Mu(m) for m in self.mu_choices))
        if self.k <= 0:
            raise InputError("k must be positive")
        if not self.mu_choices:
            raise InputError("at least one mu choice is required")


def mu_value(s: DigitalMetricSpace, T: DigitalMap, mu: Mu, x: Point, y: Point) -> Number:
    if mu is Mu.PLAIN:
        return s.d(x, y)
    if mu is Mu.HALF_SUM_SELF:
        return (s.d(x, T(x)) + s.d(y, T(y))) / 2
    return (s.d(x, T(y)) + s.d(y, T(x))) / 2


def _ordered(mus) -> list[Mu]:
    return [m for m in Mu if m in mus]


def generalized_expansive_fixed_point(s: DigitalMetricSpace, T: DigitalMap,
                                      params: ExpansiveParams) -> TheoremReport:
    """Onto T with d(Tx, Ty) >= k mu(x, y), 1 < k < 2, has a fixed point.

    mu(x, y) may be chosen per pair from ``params.mu_choices`` (a subset of
    PLAIN and HALF_SUM_SELF): the inequality only has to hold for one of the
    selected candidates.
    """
    k = params.k
    if not 1 < k < 2:
        raise InputError(f"k must lie strictly between 1 and 2, got {k}")
    if Mu.HALF_SUM_CROSS in params.mu_choices:
        raise InputError("the cross half-sum mu is not admitted by this theorem")
    _require_self_map(s, T)
    mus = _ordered(params.mu_choices)

    onto = _onto(T)
    bad = None
    for x, y in itertools.product(s.points, repeat=2):
        lhs = s.d(T(x), T(y))
        vals = {m: mu_value(s, T, m, x, y) for m in mus}
        if all(compare(lhs, k * v) < 0 for v in vals.values()):
            bad = {"pair": (x, y), "lhs": lhs, "mu_values": {m.value: v for m, v in vals.items()}}
            break
    hyps = [Hypothesis("finite_space", True), onto,
            Hypothesis("mu_expansive", bad is None, bad)]
    details: dict[str, Any] = {"k": k, "mu_choices": [m.value for m in mus]}
    if len(s) >= 2:
        gap = min_gap(s)
        details["min_gap"] = gap.value
        details["min_gap_pair"] = gap.pair
        if onto.holds:
            details["replay"] = contradiction_replay(s, T, params)
    if not all(h.holds for h in hyps):
        return TheoremReport("generalized_expansive_fixed_point", hyps, None, details)
    fps = fixed_points(T)
    report = TheoremReport("generalized_expansive_fixed_point", hyps,
                           Verdict(bool(fps), fps), details)
    report.contradiction = not fps
    return report


def contradiction_replay(s: DigitalMetricSpace, T: DigitalMap, params: ExpansiveParams) -> dict:
    """The quantities of the argument by contradiction for an onto T.

    With m the min gap attained at (x0, y0) and x', y' the least preimages of
    x0, y0: if T had no fixed point every mu(x', y') would be >= m, giving
    m = d(Tx', Ty') >= k mu(x', y') >= k m, impossible for k > 1.
    """
    gap = min_gap(s)
    x0, y0 = gap.pair
    xp = next(p for p in s.points if T(p) == x0)
    yp = next(p for p in s.points if T(p) == y0)
    m = gap.value
    displacement = num_min(s.d(p, T(p)) for p in s.points)
    mus = _ordered(params.mu_choices)
    return {
        "m": m,
        "x0_y0": (x0, y0),
        "preimages": (xp, yp),
        "d_T_preimages": s.d(T(xp), T(yp)),
        "mu_at_preimages": {mu.value: mu_value(s, T, mu, xp, yp) for mu in mus},
        "k_times_m": params.k * m,
        "m_ge_k_m": compare(m, params.k * m) >= 0,
        "min_displacement": displacement,
    }


# -- alpha-psi expansive mappings ---------------------------------------------

@dataclass(frozen=True)
class LinearPsi:
    """psi(t) = c t with 0 < c < 1; its iterates sum to t c / (1 - c)."""

    c: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", as_fraction(self.c))
        if not 0 < self.c < 1:
            raise InputError(f"linear psi needs 0 < c < 1, got {self.c}")

    certified = True

    def __call__(self, t: Number) -> Number:
        return self.c * t

    def to_json(self) -> dict:
        from .metric import to_json_number
        return {"type": "linear", "c": to_json_number(self.c)}


@dataclass(frozen=True)
class TablePsi:
    """psi given by sample values.  Summability of its iterates cannot be
    certified from samples, so reports flag it."""

    values: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        vals = tuple(sorted((as_fraction(t), as_fraction(v)) for t, v in self.values))
        object.__setattr__(self, "values", vals)
        for (t0, v0), (t1, v1) in zip(vals, vals[1:]):
            if t0 == t1:
                raise InputError(f"psi table has two values at t={t0}")
            if v1 < v0:
                raise InputError(f"psi table decreases between t={t0} and t={t1}")
        if any(t < 0 or v < 0 for t, v in vals):
            raise InputError("psi table must be nonnegative")

    certified = False

    def __call__(self, t: Number) -> Number:
        for key, v in self.values:
            if compare(key, t) == 0:
                return v
        raise InputError(f"psi table has no value at t={t}")

    def to_json(self) -> dict:
        from .metric import to_json_number
        return {"type": "table", "values": [[to_json_number(t), to_json_number(v)] for t, v in self.values]}


@dataclass(frozen=True)
class AlphaPsi:
    alpha: Mapping[tuple[Point, Point], Fraction]
    psi: LinearPsi | TablePsi

    def __post_init__(self):
        table = {}
        for (x, y), v in dict(self.alpha).items():
            v = as_fraction(v)
            if v < 0:
                raise InputError(f"alpha must be nonnegative, got {v} at ({x}, {y})")
            table[(tuple(x), tuple(y))] = v
        object.__setattr__(self, "alpha", table)

    @classmethod
    def from_function(cls, points: Sequence[Point], fn: Callable[[Point, Point], Any],
                      psi: LinearPsi | TablePsi) -> AlphaPsi:
        return cls({(x, y): fn(x, y) for x in points for y in points}, psi)

    def a(self, x: Point, y: Point) -> Fraction:
        try:
            return self.alpha[(x, y)]
        except KeyError:
            raise InputError(f"alpha is not defined at ({x}, {y})") from None


def alpha_psi_validate(s: DigitalMetricSpace, T: DigitalMap, ap: AlphaPsi) -> TheoremReport:
    """Check the hypotheses of the alpha-psi expansive fixed-point theorem.

    No conclusion is drawn here; see ``alpha_psi_fixed_point``.
    """
    _require_self_map(s, T)
    Tinv = inverse(T)
    pts = s.points
    for x in pts:
        for y in pts:
            ap.a(x, y)

    psi_ok = Hypothesis("psi_summable", ap.psi.certified,
                        None if ap.psi.certified else "certificate missing")
    bad = next(((x, y) for x in pts for y in pts
                if compare(ap.psi(s.d(T(x), T(y))), ap.a(x, y) * s.d(x, y)) < 0), None)
    expansive = Hypothesis("alpha_psi_expansive", bad is None, bad)
    bad = next(((x, y) for x in pts for y in pts
                if ap.a(x, y) >= 1 and ap.a(Tinv(x), Tinv(y)) < 1), None)
    admissible = Hypothesis("inverse_alpha_admissible", bad is None, bad)
    starts = [x for x in pts if ap.a(x, Tinv(x)) >= 1]
    start = Hypothesis("start_point_exists", bool(starts), starts[0] if starts else None)
    return TheoremReport("alpha_psi_validate", [psi_ok, expansive, admissible, start],
                         None, {"start_points": starts})


def alpha_psi_fixed_point(s: DigitalMetricSpace, T: DigitalMap, ap: AlphaPsi,
                          x0: Point, cap: int | None = None) -> TheoremReport:
    """Iterate x_{n+1} = T^{-1}(x_n) from x0 until it repeats a term.

    Raises BudgetError if ``cap`` steps (default |X| + 1) pass without
    stabilizing.
    """
    base = alpha_psi_validate(s, T, ap)
    x0 = tuple(x0)
    s.image.idx(x0)
    Tinv = inverse(T)
    hyps = base.hypotheses + [Hypothesis("x0_start_condition", ap.a(x0, Tinv(x0)) >= 1, x0)]
    details = dict(base.details)
    if not all(h.holds for h in hyps):
        return TheoremReport("alpha_psi_fixed_point", hyps, None, details)
    cap = len(s) + 1 if cap is None else cap
    orbit = [x0]
    for _ in range(cap):
        nxt = Tinv(orbit[-1])
        orbit.append(nxt)
        if nxt == orbit[-2]:
            break
    else:
        raise BudgetError(f"orbit did not stabilize within {cap} steps", len(orbit))
    fp = orbit[-1]
    details["steps"] = len(orbit) - 1
    details["fixed_point_verified"] = T(fp) == fp
    if len(s) <= ORACLE_LIMIT:
        oracle = fixed_points(T)
        details["oracle_fixed_points"] = oracle
        details["in_oracle"] = fp in oracle
    report = TheoremReport("alpha_psi_fixed_point", hyps, Verdict(T(fp) == fp, fp), details,
                           PointSequence(tuple(orbit), cap))
    report.contradiction = T(fp) != fp
    return report


# -- pairs of maps ------------------------------------------------------------

def is_weakly_commuting(s: DigitalMetricSpace, S: DigitalMap, T: DigitalMap) -> Verdict:
    """d(S(Tx), T(Sx)) <= d(Sx, Tx) at every x."""
    _require_self_map(s, S, T)
    for x in s.points:
        if compare(s.d(S(T(x)), T(S(x))), s.d(S(x), T(x))) > 0:
            return Verdict(False, x)
    return Verdict(True)


def is_weakly_compatible(S: DigitalMap, T: DigitalMap) -> Verdict:
    """S and T commute at every coincidence point (Sx = Tx)."""
    if not (S.is_self_map and T.is_self_map and S.domain == T.domain):
        raise InputError("weak compatibility needs two self-maps of one image")
    for x in S.domain.points:
        if S(x) == T(x) and S(T(x)) != T(S(x)):
            return Verdict(False, x)
    return Verdict(True)


def _image_inclusion(S: DigitalMap, T: DigitalMap) -> Hypothesis:
    s_img = set(S.images)
    bad = next((x for i, x in enumerate(T.domain.points) if T.images[i] not in s_img), None)
    return Hypothesis("image_inclusion", bad is None, bad)


def _contraction(s: DigitalMetricSpace, S: DigitalMap, T: DigitalMap, alpha: Fraction) -> Hypothesis:
    bad = next(((x, y) for x, y in _pairs(s)
                if compare(s.d(T(x), T(y)), alpha * s.d(S(x), S(y))) > 0), None)
    return Hypothesis("contraction", bad is None, bad)


def _check_alpha(alpha) -> Fraction:
    alpha = as_fraction(alpha)
    if not 0 < alpha < 1:
        raise InputError(f"alpha must lie strictly between 0 and 1, got {alpha}")
    return alpha


def contraction_pair_check(s: DigitalMetricSpace, S: DigitalMap, T: DigitalMap, alpha) -> Verdict:
    """T(X) within S(X), and d(Tx, Ty) <= alpha d(Sx, Sy) for all x, y.

    The witness names the first failed condition: ("image_inclusion", x) or
    ("contraction", (x, y)).
    """
    alpha = _check_alpha(alpha)
    _require_self_map(s, S, T)
    for h in (_image_inclusion(S, T), _contraction(s, S, T, alpha)):
        if not h.holds:
            return Verdict(False, (h.name, h.witness))
    return Verdict(True)


def contraction_ratio(s: DigitalMetricSpace, S: DigitalMap, T: DigitalMap):
    """Largest d(Tx, Ty) / d(Sx, Sy) over pairs, with the first pair attaining it.

    The value is None when some pair has d(Sx, Sy) = 0 < d(Tx, Ty), so that no
    alpha works.
    """
    _require_self_map(s, S, T)
    best, where = Fraction(0), None
    for x, y in _pairs(s):
        num, den = s.d(T(x), T(y)), s.d(S(x), S(y))
        if sign(den) == 0:
            if sign(num) > 0:
                return None, (x, y)
            continue
        r = num / den
        if where is None or compare(r, best) > 0:
            best, where = r, (x, y)
    return best, where


def common_fixed_points(S: DigitalMap, T: DigitalMap) -> list[Point]:
    return [x for x in S.domain.points if S(x) == x and T(x) == x]


def default_orbit_cap(n: int) -> int:
    # the positive gaps d(Sx_n, Sx_{n+1}) strictly decrease, so at most C(n,2) of them
    return n * (n - 1) // 2 + 1


def weakly_commuting_common_fixed_point(s: DigitalMetricSpace, S: DigitalMap, T: DigitalMap,
                                        alpha, x0: Point | None = None,
                                        cap: int | None = None) -> TheoremReport:
    """Common fixed point of a weakly commuting contractive pair (S, T).

    Builds x_{n+1} = least x with S(x) = T(x_n) until S(x_n) repeats; that
    value z gives the common fixed point T(z).  The answer is cross-checked
    against an exhaustive scan for common fixed points.
    """
    alpha = _check_alpha(alpha)
    _require_self_map(s, S, T)
    hyps = [Hypothesis("finite_space", True), _image_inclusion(S, T),
            _contraction(s, S, T, alpha)]
    wc = is_weakly_commuting(s, S, T)
    hyps.append(Hypothesis("weakly_commuting", wc.holds, wc.witness))
    x0 = s.points[0] if x0 is None else tuple(x0)
    s.image.idx(x0)
    details: dict[str, Any] = {"alpha": alpha, "x0": x0}
    if not all(h.holds for h in hyps):
        return TheoremReport("weakly_commuting_common_fixed_point", hyps, None, details)

    cap = default_orbit_cap(len(s)) if cap is None else cap
    preimage: dict[Point, Point] = {}
    for x in reversed(s.points):
        preimage[S(x)] = x
    xs = [x0]
    z = None
    for _ in range(cap):
        target = T(xs[-1])
        if target not in preimage:
            raise ContradictionError(f"T({xs[-1]}) = {target} has no S-preimage")
        xs.append(preimage[target])
        if S(xs[-1]) == S(xs[-2]):
            z = S(xs[-1])
            break
    if z is None:
        raise BudgetError(f"S-orbit did not stabilize within {cap} steps", len(xs))
    w = T(z)
    common = common_fixed_points(S, T)
    uniqueness = all(compare(s.d(y, yp), alpha * s.d(y, yp)) > 0
                     for y, yp in itertools.combinations(common, 2))
    details.update({
        "steps": len(xs) - 1,
        "z": z,
        "common_fixed_point": w,
        "s_orbit": [S(x) for x in xs],
        "verified": S(w) == w and T(w) == w,
        "uniqueness_argument_holds": uniqueness,
    })
    if len(s) <= ORACLE_LIMIT:
        details["oracle_common_fixed_points"] = common
        details["matches_oracle"] = common == [w]
    ok = S(w) == w and T(w) == w and common == [w]
    report = TheoremReport("weakly_commuting_common_fixed_point", hyps, Verdict(ok, w), details,
                           PointSequence(tuple(xs), cap))
    report.contradiction = not ok
    return report


def constant_map_criterion(s: DigitalMetricSpace, S: DigitalMap, T: DigitalMap, alpha) -> TheoremReport:
    """Connected X, continuous S, d(Tx, Ty) <= alpha d(Sx, Sy) and
    0 < alpha < d0/d1 (least / greatest distance between adjacent points)
    are claimed to force T to be constant.

    The claim needs d(Tx, Ty) < d0 to imply Tx = Ty for adjacent x, y, which
    fails when two non-adjacent points lie closer than d0.  The conclusion is
    checked rather than assumed; a non-constant T is reported with an
    adjacent pair it separates and ``contradiction`` set.
    """
    alpha = as_fraction(alpha)
    _require_self_map(s, S, T)
    cont = is_continuous(S)
    hyps = [Hypothesis("connected", is_connected(s.image)),
            Hypothesis("s_continuous", cont.holds, cont.witness),
            _contraction(s, S, T, alpha)]
    details: dict[str, Any] = {"alpha": alpha}
    if s.image.edges():
        d0, d1 = adjacency_gap_stats(s)
        bound = d0.value / d1.value
        details.update({"d0": d0.value, "d1": d1.value, "alpha_bound": bound})
        hyps.append(Hypothesis("alpha_below_bound", alpha > 0 and compare(alpha, bound) < 0,
                               {"alpha": alpha, "bound": bound}))
    else:
        hyps.append(Hypothesis("alpha_below_bound", len(s) == 1 and alpha > 0, "no adjacent pair"))
    if not all(h.holds for h in hyps):
        return TheoremReport("constant_map_criterion", hyps, None, details)
    details["min_gap"] = min_gap(s).value if len(s) > 1 else None
    bad = next(((x, y) for x, y in s.image.edges() if T(x) != T(y)), None)
    report = TheoremReport("constant_map_criterion", hyps, Verdict(bad is None, bad), details)
    report.contradiction = bad is not None
    return report
