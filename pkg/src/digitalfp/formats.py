"""JSON file formats for images, maps, metrics and sequences.

Image::

    {"dim": n,
     "adjacency": {"type": "c_u", "u": k}
                | {"type": "explicit", "edges": [[p, q], ...]}
                | {"type": "np_u", "u": k, "factors": [{"dim": m, "adjacency": {...}}, ...]},
     "points": [[x1, ..., xn], ...]}

Map: ``{"pairs": [[[x...], [y...]], ...]}``.
Metric: ``{"type": "l_p", "p": 1 | 2 | ... | "inf"}`` or ``{"type": "table", "entries": [[...]]}``
(rows in sorted point order, entries ints or "P/Q" strings).
Sequence: ``{"terms": [[x...], ...]}``.

Loader errors are ``FormatError`` with a location: ``file:line:col`` for JSON
syntax errors and a JSON path such as ``points[3]`` for schema errors.
"""

from __future__ import annotations

import enum
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any

from .core import CU, NPU, Adjacency, DigitalImage, Explicit, Verdict, as_point
from .errors import InputError
from .maps import DigitalMap
from .metric import LP, DigitalMetricSpace, PointSequence, TableMetric, to_json_number


class FormatError(InputError):
    pass


def jsonable(x: Any) -> Any:
    """Convert library values (points, maps, rationals, verdicts...) to plain JSON data."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return to_json_number(x)
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, DigitalMap):
        return {"pairs": [[list(p), list(q)] for p, q in x.pairs()]}
    if isinstance(x, Verdict):
        return {"holds": x.holds, "witness": jsonable(x.witness)}
    if isinstance(x, PointSequence):
        return {"terms": [list(t) for t in x.terms]}
    if isinstance(x, DigitalImage):
        return image_to_json(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [jsonable(v) for v in items]
    if isinstance(x, float):
        return "inf" if x == math.inf else x
    return to_json_number(x)


# -- reading ----------------------------------------------------------------

def read_json(path: str | Path) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"{path}: cannot read: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _expect(cond: bool, where: str, msg: str) -> None:
    if not cond:
        raise FormatError(f"{where}: {msg}")


def _point(obj: Any, where: str, dim: int | None = None):
    _expect(isinstance(obj, list), where, "point must be a list of integers")
    try:
        p = as_point(obj)
    except InputError as exc:
        raise FormatError(f"{where}: {exc}") from None
    if dim is not None:
        _expect(len(p) == dim, where, f"point has dimension {len(p)}, expected {dim}")
    return p


def adjacency_from_json(obj: Any, dim: int, where: str = "adjacency") -> Adjacency:
    _expect(isinstance(obj, dict), where, "adjacency must be an object")
    kind = obj.get("type")
    try:
        if kind == "c_u":
            _expect(isinstance(obj.get("u"), int), f"{where}.u", "u must be an integer")
            return CU(obj["u"], dim)
        if kind == "explicit":
            edges = obj.get("edges")
            _expect(isinstance(edges, list), f"{where}.edges", "edges must be a list")
            pairs = []
            for i, e in enumerate(edges):
                w = f"{where}.edges[{i}]"
                _expect(isinstance(e, list) and len(e) == 2, w, "edge must be a pair of points")
                pairs.append((_point(e[0], f"{w}[0]", dim), _point(e[1], f"{w}[1]", dim)))
            return Explicit.from_pairs(pairs, dim)
        if kind == "np_u":
            facs = obj.get("factors")
            _expect(isinstance(facs, list) and facs, f"{where}.factors", "factors must be a non-empty list")
            rels = []
            for i, fac in enumerate(facs):
                w = f"{where}.factors[{i}]"
                _expect(isinstance(fac, dict) and isinstance(fac.get("dim"), int), w,
                        "factor needs an integer dim")
                rels.append(adjacency_from_json(fac.get("adjacency"), fac["dim"], f"{w}.adjacency"))
            _expect(isinstance(obj.get("u"), int), f"{where}.u", "u must be an integer")
            rel = NPU(obj["u"], tuple(rels))
            _expect(rel.ambient_dim == dim, where, f"factor dims sum to {rel.ambient_dim}, expected {dim}")
            return rel
    except FormatError:
        raise
    except InputError as exc:
        raise FormatError(f"{where}: {exc}") from None
    raise FormatError(f"{where}.type: unknown adjacency type {kind!r}")


def image_from_json(obj: Any, where: str = "") -> DigitalImage:
    pre = f"{where}." if where else ""
    _expect(isinstance(obj, dict), where or "image", "image must be an object")
    dim = obj.get("dim")
    _expect(isinstance(dim, int) and dim >= 1, f"{pre}dim", "dim must be a positive integer")
    rel = adjacency_from_json(obj.get("adjacency"), dim, f"{pre}adjacency")
    pts = obj.get("points")
    _expect(isinstance(pts, list), f"{pre}points", "points must be a list")
    points = [_point(p, f"{pre}points[{i}]", dim) for i, p in enumerate(pts)]
    try:
        return DigitalImage(points, rel)
    except InputError as exc:
        raise FormatError(f"{pre}points: {exc}") from None


def map_from_json(obj: Any, domain: DigitalImage, codomain: DigitalImage | None = None,
                  where: str = "") -> DigitalMap:
    pre = f"{where}." if where else ""
    codomain = codomain or domain
    _expect(isinstance(obj, dict) and isinstance(obj.get("pairs"), list), f"{pre}pairs",
            "map must be an object with a 'pairs' list")
    table = {}
    for i, pr in enumerate(obj["pairs"]):
        w = f"{pre}pairs[{i}]"
        _expect(isinstance(pr, list) and len(pr) == 2, w, "pair must be [point, point]")
        x = _point(pr[0], f"{w}[0]", domain.dim)
        y = _point(pr[1], f"{w}[1]", codomain.dim)
        _expect(x not in table, w, f"duplicate entry for {list(x)}")
        _expect(x in domain, f"{w}[0]", f"{list(x)} is not a domain point")
        _expect(y in codomain, f"{w}[1]", f"{list(y)} is not a codomain point")
        table[x] = y
    try:
        return DigitalMap.from_table(domain, codomain, table)
    except InputError as exc:
        raise FormatError(f"{pre}pairs: {exc}") from None


def metric_from_json(obj: Any, image: DigitalImage, where: str = "") -> DigitalMetricSpace:
    pre = f"{where}." if where else ""
    _expect(isinstance(obj, dict), where or "metric", "metric must be an object")
    kind = obj.get("type")
    try:
        if kind == "l_p":
            p = obj.get("p")
            p = math.inf if p == "inf" else p
            return DigitalMetricSpace(image, LP(p))
        if kind == "table":
            rows = obj.get("entries")
            _expect(isinstance(rows, list), f"{pre}entries", "entries must be a matrix")
            return DigitalMetricSpace(image, TableMetric.from_rows(image.points, rows))
    except FormatError:
        raise
    except InputError as exc:
        raise FormatError(f"{pre or 'metric.'}{kind}: {exc}") from None
    raise FormatError(f"{pre}type: unknown metric type {kind!r}")


def sequence_from_json(obj: Any, where: str = "") -> PointSequence:
    pre = f"{where}." if where else ""
    _expect(isinstance(obj, dict) and isinstance(obj.get("terms"), list), f"{pre}terms",
            "sequence must be an object with a 'terms' list")
    terms = [_point(t, f"{pre}terms[{i}]") for i, t in enumerate(obj["terms"])]
    _expect(bool(terms), f"{pre}terms", "sequence is empty")
    dims = {len(t) for t in terms}
    _expect(len(dims) == 1, f"{pre}terms", "terms have mixed dimensions")
    return PointSequence(tuple(terms), obj.get("cap"))


def load_image(path) -> DigitalImage:
    return image_from_json(read_json(path), str(path))


def load_map(path, domain: DigitalImage, codomain: DigitalImage | None = None) -> DigitalMap:
    return map_from_json(read_json(path), domain, codomain, str(path))


def load_metric(path, image: DigitalImage) -> DigitalMetricSpace:
    return metric_from_json(read_json(path), image, str(path))


def load_sequence(path) -> PointSequence:
    return sequence_from_json(read_json(path), str(path))


# -- writing ----------------------------------------------------------------

def adjacency_to_json(rel: Adjacency) -> dict:
    if isinstance(rel, CU):
        return {"type": "c_u", "u": rel.u}
    if isinstance(rel, Explicit):
        return {"type": "explicit", "edges": [[list(a), list(b)] for a, b in rel.sorted_edges()]}
    return {"type": "np_u", "u": rel.u,
            "factors": [{"dim": f.ambient_dim, "adjacency": adjacency_to_json(f)} for f in rel.factors]}


def image_to_json(img: DigitalImage) -> dict:
    out = {"dim": img.dim, "adjacency": adjacency_to_json(img.adjacency),
           "points": [list(p) for p in img.points]}
    if isinstance(img.adjacency, NPU):
        out["arity"] = list(img.adjacency.arity)
    return out


def map_to_json(f: DigitalMap) -> dict:
    return jsonable(f)


def metric_to_json(s: DigitalMetricSpace) -> dict:
    return s.metric.to_json()


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), sort_keys=True, indent=2)
