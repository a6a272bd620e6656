"""The twelve acceptance criteria, one test each.

Every test prints a single ``[PASS]`` / ``[FAIL]`` line (also collected into
the terminal summary) and then asserts.
"""

import itertools
import json
import math
import random
import time
from fractions import Fraction

import pytest

import oracle
from conftest import ACCEPTANCE_LINES
from digitalfp import cli
from digitalfp import theoremlab as tl
from digitalfp.core import CU, DigitalImage, Explicit, interval
from digitalfp.formats import image_to_json, map_to_json
from digitalfp.maps import (DigitalMap, all_functions, approximate_fixed_points, enumerate_continuous,
                            fixed_points, has_afpp, is_continuous, is_continuous_by_connectivity,
                            is_universal, is_weakly_universal, strictly_adjacent_points)
from digitalfp.metric import (LP, DigitalMetricSpace, cauchy_modulus, even_odd_gaps, is_eventually_constant,
                              mod4_sequence, sign)
from digitalfp.product import build_product

P0, P1, P2 = (0, 0, 0), (1, 1, 1), (2, 0, 0)


def verdict(num, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {title}" + (f" ({detail})" if detail else "")
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def space(pts, p=1, u=1):
    return DigitalMetricSpace(DigitalImage(pts, CU(u, len(pts[0]))), LP(p))


def test_criterion_01_intervals_have_afpp(tmp_path):
    results = []
    for n in range(1, 6):
        X = interval(0, n)
        path = tmp_path / f"interval{n}.json"
        path.write_text(json.dumps(image_to_json(X)))
        start = time.perf_counter()
        code, rep = cli.dispatch(["afpp", "--image", str(path), "--format", "structured"])
        elapsed = time.perf_counter() - start
        direct = bool(has_afpp(X))
        wu = bool(is_weakly_universal(DigitalMap.identity(X)))
        results.append(code == 0 and rep.verdicts["afpp"] is True and direct and direct == wu
                       and elapsed < 10)
    verdict(1, "AFPP of [0,n], n=1..5, agrees with weak universality of 1_X", all(results),
            f"{sum(results)}/5")


def test_criterion_02_universal_weakly_universal_split():
    X = interval(-1, 1)
    one = DigitalMap.identity(X)
    u = is_universal(one)
    g = DigitalMap.from_function(X, X, lambda p: (-p[0],))
    ok = (not u and u.witness == g
          and bool(is_weakly_universal(one))
          and approximate_fixed_points(u.witness) == [(0,)]
          and strictly_adjacent_points(u.witness) == [])
    verdict(2, "1_X on [-1,1] is weakly universal but not universal, counterexample -z", ok)


def test_criterion_03_enumeration_count():
    X = interval(0, 2)
    start = time.perf_counter()
    count = sum(1 for _ in enumerate_continuous(X, X))
    elapsed = time.perf_counter() - start
    filtered = sum(1 for f in all_functions(X, X) if is_continuous(f))
    brute = len(oracle.continuous_tables(X, X))
    ok = count == filtered == brute == 17 and elapsed < 1
    verdict(3, "17 continuous self-maps of [0,2]", ok, f"{count} in {elapsed * 1000:.1f} ms")


def test_criterion_04_square_counterexample():
    sq = DigitalImage([(0, 0), (0, 1), (1, 0), (1, 1)], CU(1, 2))
    v = has_afpp(sq)
    tables = oracle.continuous_tables(sq, sq)
    free = [t for t in tables if not oracle.has_approx_fixed_point(sq, t)]
    enumerated = [f.table for f in enumerate_continuous(sq, sq)]
    ok = (not v and v.witness.table in free and enumerated == tables
          and not approximate_fixed_points(v.witness) and len(tables) == 84)
    verdict(4, "2x2 square under c_1 lacks AFPP", ok,
            f"{len(tables)} continuous maps, {len(free)} without approximate fixed point")


def test_criterion_05_contraction_without_continuity():
    X = DigitalImage([P0, P1, P2], CU(3, 3))
    s = DigitalMetricSpace(X, LP(1))
    S = DigitalMap.identity(X)
    T = DigitalMap.from_table(X, X, {P0: P2, P1: P0, P2: P2})
    passes = bool(tl.contraction_pair_check(s, S, T, Fraction(2, 3)))
    below = [Fraction(1, 3), Fraction(1, 2), Fraction(65, 100), Fraction(2, 3) - Fraction(1, 10**9)]
    fails_below = all(not tl.contraction_pair_check(s, S, T, a) for a in below)
    ratio, pair = tl.contraction_ratio(s, S, T)
    cont = is_continuous(T)
    ok = (passes and fails_below and ratio == Fraction(2, 3) and pair == (P0, P1)
          and not cont and cont.witness == (P0, P1))
    verdict(5, "contraction holds exactly from alpha=2/3 while T is not c_3-continuous", ok,
            f"ratio {ratio}")


def test_criterion_06_non_cauchy_sequence():
    seq = mod4_sequence(64)
    s = DigitalMetricSpace(interval(0, 1), LP(1))
    gaps = even_odd_gaps(seq, s)
    rep = cauchy_modulus(seq, s, Fraction(1))
    ok = (len(gaps) == 32 and all(sign(g) == 0 for g in gaps)
          and not is_eventually_constant(seq) and not rep.cauchy)
    verdict(6, "mod-4 sequence: zero even-odd gaps, not eventually constant, not Cauchy at 1", ok)


SUITE_7 = [
    [(0, 0), (1, 0)],
    [(0, 0), (2, 3)],
    [(-1, 4), (3, -2)],
    [(0, 0), (1, 0), (0, 1)],
    [(0, 0), (1, 1), (2, 0)],
    [(0, 0), (3, 0), (0, 4)],
    [(0, 0), (1, 2), (3, 1)],
    [(0, 0), (1, 0), (0, 1), (1, 1)],
    [(0, 0), (2, 1), (4, 0), (1, 3)],
    [(-2, 0), (0, 5), (3, 3), (1, -1)],
]


def test_criterion_07_expansive_impossibility():
    reports = [tl.expansive_onto_impossibility(space(pts, p))
               for pts in SUITE_7 for p in (1, math.inf)]
    bad = [r for r in reports
           if not r.conclusion or any(e["max_feasible_k"] > 1 for e in r.details["per_map"])]
    ok = len(reports) == 20 and not bad
    verdict(7, "no bijection of a finite space is expansive", ok,
            f"{len(reports)} spaces, {sum(r.details['bijections'] for r in reports)} bijections, "
            f"{len(bad)} counterexamples")


def test_criterion_08_sum_expansive_triviality():
    spaces = [space([(0,), (1,), (2,)]), space([(0,), (2,), (5,)]), space([(0, 0), (1, 0), (0, 1)])]
    ok = True
    for s in spaces:
        maps = list(all_functions(s.image, s.image))
        sat = [T for T in maps if tl.sum_expansive_identity_check(s, T, Fraction(1, 2)).hypotheses_hold]
        ok = ok and len(maps) == 27 and sat == [DigitalMap.identity(s.image)]
    verdict(8, "sum-expansive self-maps with k=1/2 are exactly the identity", ok)


def test_criterion_09_generalized_expansive_existence():
    spaces = [space([(0,), (1,), (2,)]), space([(0,), (1,), (3,)]), space([(0, 0), (1, 0), (0, 1)]),
              space([(0,), (1,), (2,), (3,)]), space([(0,), (1,), (3,), (7,)]),
              space([(0, 0), (1, 0), (0, 1), (1, 1)], math.inf)]
    passing = exceptions = 0
    for s in spaces:
        for T in all_functions(s.image, s.image):
            for k in (Fraction(5, 4), Fraction(3, 2), Fraction(7, 4)):
                r = tl.generalized_expansive_fixed_point(s, T, tl.ExpansiveParams(k))
                if r.hypotheses_hold:
                    passing += 1
                    exceptions += not fixed_points(T) or r.contradiction
    verdict(9, "hypothesis-passing generalized expansive maps have fixed points", exceptions == 0,
            f"{passing} passing instances, {exceptions} exceptions")


def test_criterion_10_common_fixed_point_solver():
    spaces = [space([(0,), (1,), (2,)]), space([(0,), (1,), (5,)]),
              space([P0, P1, P2], 1, 3), space([(0, 0), (1, 0), (0, 1)])]
    alpha = Fraction(1, 2)
    instances = mismatches = 0
    for s in spaces:
        maps = list(all_functions(s.image, s.image))
        for S, T in itertools.product(maps, repeat=2):
            if not tl.contraction_pair_check(s, S, T, alpha) or not tl.is_weakly_commuting(s, S, T):
                continue
            common = [x for x in s.points if S(x) == x and T(x) == x]
            for x0 in s.points:
                r = tl.weakly_commuting_common_fixed_point(s, S, T, alpha, x0)
                instances += 1
                good = (len(common) == 1 and r.conclusion.witness == common[0]
                        and r.details["steps"] <= len(s) + 1)
                mismatches += not good
    verdict(10, "common fixed point solver matches the exhaustive scan", instances > 0 and mismatches == 0,
            f"{instances} (S,T,x0) instances, {mismatches} mismatches")


def test_criterion_11_product_theorem():
    factors = {"[0,1]": interval(0, 1), "[0,2]": interval(0, 2),
               "discrete": DigitalImage([(0,), (2,)], CU(1, 1))}
    violations, lacking = 0, 0
    for (na, A), (nb, B) in itertools.product(factors.items(), repeat=2):
        carrier = build_product([A, B], 2).carrier
        has = bool(has_afpp(carrier))
        lacking += not has
        if has and not (has_afpp(A) and has_afpp(B)):
            violations += 1
    verdict(11, "AFPP of an NP_2 product passes to each factor", violations == 0 and lacking >= 1,
            f"9 pairs, {lacking} carriers without AFPP")


def _random_image(rng):
    n = rng.randint(1, 7)
    if rng.random() < 0.6:
        dim = rng.randint(1, 3)
        hi = 6 if dim == 1 else 2
        pts = set()
        while len(pts) < n:
            pts.add(tuple(rng.randint(0, hi) for _ in range(dim)))
        return DigitalImage(pts, CU(rng.randint(1, dim), dim))
    pts = [(i,) for i in range(n)]
    pairs = [(a, b) for a, b in itertools.combinations(pts, 2) if rng.random() < 0.4]
    return DigitalImage(pts, Explicit.from_pairs(pairs, 1))


def test_criterion_12_continuity_definitions_agree():
    rng = random.Random(20240613)
    disagreements = continuous = 0
    for i in range(500):
        X, Y = _random_image(rng), _random_image(rng)
        if i % 2:
            maps = list(itertools.islice(enumerate_continuous(X, Y), 200))
            f = rng.choice(maps)
        else:
            f = DigitalMap(X, Y, tuple(rng.randrange(len(Y)) for _ in range(len(X))))
        a = bool(is_continuous(f))
        b = is_continuous_by_connectivity(f)
        c = oracle.continuous_by_subsets(X, Y, f.table)
        continuous += a
        disagreements += not (a == b == c)
    verdict(12, "edge and connected-subset continuity agree on 500 random maps",
            disagreements == 0 and 0 < continuous < 500,
            f"{continuous} continuous, {disagreements} disagreements")
