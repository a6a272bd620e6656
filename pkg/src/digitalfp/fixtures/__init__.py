"""Named example instances shipped as JSON data, with an expected-verdict replay.

Each fixture file holds images, maps, metric spaces and sequences in the
standard file formats plus an ``expected`` list of ``{"op", "args",
"expect"}`` entries.  ``run`` recomputes every entry from scratch and
compares the keys listed under ``expect`` with the fresh result.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Callable

from ..core import DigitalImage, is_connected
from ..errors import InputError
from ..formats import image_from_json, jsonable, map_from_json, metric_from_json, sequence_from_json
from ..maps import (DigitalMap, all_functions, approximate_fixed_points, count_continuous,
                    fixed_points, has_afpp, has_afpp_by_enumeration, is_continuous,
                    is_continuous_by_connectivity, is_isomorphism, is_universal,
                    is_weakly_universal, strictly_adjacent_points)
from ..metric import (DigitalMetricSpace, PointSequence, as_fraction, cauchy_modulus, even_odd_gaps,
                      is_eventually_constant, sign)
from .. import theoremlab


@dataclass
class Fixture:
    name: str
    description: str
    images: dict[str, DigitalImage] = field(default_factory=dict)
    maps: dict[str, DigitalMap] = field(default_factory=dict)
    spaces: dict[str, DigitalMetricSpace] = field(default_factory=dict)
    sequences: dict[str, PointSequence] = field(default_factory=dict)
    expected: list[dict] = field(default_factory=list)


@dataclass(frozen=True)
class CheckResult:
    fixture: str
    op: str
    args: dict
    expected: dict
    actual: dict
    ok: bool


def names() -> list[str]:
    data = resources.files(__package__) / "data"
    return sorted(p.name[:-5] for p in data.iterdir() if p.name.endswith(".json"))


def load(name: str) -> Fixture:
    if name not in names():
        raise InputError(f"unknown fixture {name!r}; known: {', '.join(names())}")
    raw = json.loads((resources.files(__package__) / "data" / f"{name}.json").read_text("utf-8"))
    fx = Fixture(raw["name"], raw.get("description", ""), expected=raw.get("expected", []))
    for key, obj in raw.get("images", {}).items():
        fx.images[key] = image_from_json(obj, f"images.{key}")
    for key, obj in raw.get("maps", {}).items():
        dom = fx.images[obj["domain"]]
        cod = fx.images[obj.get("codomain", obj["domain"])]
        fx.maps[key] = map_from_json(obj, dom, cod, f"maps.{key}")
    for key, obj in raw.get("spaces", {}).items():
        fx.spaces[key] = metric_from_json(obj["metric"], fx.images[obj["image"]], f"spaces.{key}")
    for key, obj in raw.get("sequences", {}).items():
        fx.sequences[key] = sequence_from_json(obj, f"sequences.{key}")
    return fx


def _verdict(v) -> dict:
    return {"holds": v.holds, "witness": jsonable(v.witness)}


def _sum_expansive_sweep(fx: Fixture, a: dict) -> dict:
    s = fx.spaces[a["space"]]
    hits, total = [], 0
    for T in all_functions(s.image, s.image):
        total += 1
        if theoremlab.sum_expansive_identity_check(s, T, a["k"]).hypotheses_hold:
            hits.append(jsonable(T))
    return {"maps_checked": total, "satisfying": hits}


def _common_fixed_point(fx: Fixture, a: dict) -> dict:
    r = theoremlab.weakly_commuting_common_fixed_point(
        fx.spaces[a["space"]], fx.maps[a["s"]], fx.maps[a["t"]], a["alpha"])
    out = {"hypotheses_hold": r.hypotheses_hold}
    if r.conclusion is not None:
        out["point"] = jsonable(r.conclusion.witness)
        out["oracle"] = jsonable(r.details.get("oracle_common_fixed_points"))
    return out


def _cauchy_at(fx: Fixture, a: dict) -> dict:
    rep = cauchy_modulus(fx.sequences[a["sequence"]], fx.spaces[a["space"]], as_fraction(a["threshold"]))
    return {"holds": rep.cauchy.holds, "tail_sup": jsonable(rep.tail_sups[0])}


def _even_odd(fx: Fixture, a: dict) -> dict:
    gaps = even_odd_gaps(fx.sequences[a["sequence"]], fx.spaces[a["space"]])
    return {"all_zero": all(sign(g) == 0 for g in gaps), "count": len(gaps)}


OPS: dict[str, Callable[[Fixture, dict], dict]] = {
    "is_continuous": lambda fx, a: _verdict(is_continuous(fx.maps[a["map"]])),
    "is_continuous_by_connectivity":
        lambda fx, a: {"holds": is_continuous_by_connectivity(fx.maps[a["map"]])},
    "strictly_adjacent_points": lambda fx, a: {"points": jsonable(strictly_adjacent_points(fx.maps[a["map"]]))},
    "approximate_fixed_points": lambda fx, a: {"points": jsonable(approximate_fixed_points(fx.maps[a["map"]]))},
    "fixed_points": lambda fx, a: {"points": jsonable(fixed_points(fx.maps[a["map"]]))},
    "is_isomorphism": lambda fx, a: {"holds": is_isomorphism(fx.maps[a["map"]])},
    "is_universal": lambda fx, a: _verdict(is_universal(fx.maps[a["map"]])),
    "is_weakly_universal": lambda fx, a: _verdict(is_weakly_universal(fx.maps[a["map"]])),
    "has_afpp": lambda fx, a: _verdict(has_afpp(fx.images[a["image"]])),
    "has_afpp_by_enumeration": lambda fx, a: _verdict(has_afpp_by_enumeration(fx.images[a["image"]])),
    "is_connected": lambda fx, a: {"holds": is_connected(fx.images[a["image"]])},
    "count_continuous":
        lambda fx, a: {"count": count_continuous(fx.images[a["domain"]], fx.images[a["codomain"]])},
    "contraction_pair_check": lambda fx, a: _verdict(theoremlab.contraction_pair_check(
        fx.spaces[a["space"]], fx.maps[a["s"]], fx.maps[a["t"]], a["alpha"])),
    "contraction_ratio": lambda fx, a: dict(zip(("value", "pair"), jsonable(theoremlab.contraction_ratio(
        fx.spaces[a["space"]], fx.maps[a["s"]], fx.maps[a["t"]])))),
    "is_weakly_commuting": lambda fx, a: _verdict(theoremlab.is_weakly_commuting(
        fx.spaces[a["space"]], fx.maps[a["s"]], fx.maps[a["t"]])),
    "common_fixed_point": _common_fixed_point,
    "even_odd_gaps": _even_odd,
    "is_eventually_constant": lambda fx, a: _verdict(is_eventually_constant(fx.sequences[a["sequence"]])),
    "cauchy_at": _cauchy_at,
    "sum_expansive_sweep": _sum_expansive_sweep,
}


def run(name: str) -> list[CheckResult]:
    fx = load(name)
    out = []
    for entry in fx.expected:
        op, args, expect = entry["op"], entry.get("args", {}), entry["expect"]
        if op not in OPS:
            raise InputError(f"fixture {name}: unknown op {op!r}")
        actual = OPS[op](fx, args)
        ok = all(k in actual and actual[k] == v for k, v in expect.items())
        out.append(CheckResult(name, op, args, expect, actual, ok))
    return out


def run_all(selected: list[str] | None = None) -> list[CheckResult]:
    return list(itertools.chain.from_iterable(run(n) for n in (selected or names())))
