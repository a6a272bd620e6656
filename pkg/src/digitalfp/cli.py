"""Command-line front end.

Exit status: 0 when a verdict was reached (true or false), 1 when a fixture
replay mismatches, 2 on input errors, 3 when a search exhausted its budget.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import fixtures, theoremlab
from .core import CU, DigitalImage, as_point
from .errors import BudgetError, InputError
from .formats import (FormatError, dumps, image_to_json, jsonable, load_image, load_map,
                      load_metric, load_sequence)
from .maps import (MAX_CONNECTIVITY_POINTS, DigitalMap, EnumerationBudget, approximate_fixed_points,
                   enumerate_continuous, fixed_points, has_afpp, is_continuous,
                   is_continuous_by_connectivity, is_universal, is_weakly_universal)
from .metric import (DigitalMetricSpace, LP, as_fraction, cauchy_modulus, even_odd_gaps,
                     mod4_sequence, sign)
from .product import build_product

SCHEMA_VERSION = 1
MAX_IMPOSSIBILITY_POINTS = 8


@dataclass
class RunReport:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    verdicts: dict[str, Any] = field(default_factory=dict)
    witnesses: dict[str, Any] = field(default_factory=dict)
    timing_ms: float = 0.0
    exit_code: int = 0

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "inputs": self.inputs,
            "verdicts": jsonable(self.verdicts),
            "witnesses": jsonable(self.witnesses),
            "timing_ms": round(self.timing_ms, 3),
        }

    def to_text(self) -> str:
        data = self.to_json()
        lines = [f"command: {self.command}"]
        for path, digest in data["inputs"].items():
            lines.append(f"input: {path} sha256={digest[:16]}")
        for key, val in data["verdicts"].items():
            lines.append(f"{key}: {_compact(val)}")
        for key, val in data["witnesses"].items():
            lines.append(f"witness {key}: {_compact(val)}")
        lines.append(f"time: {data['timing_ms']} ms")
        return "\n".join(lines) + "\n"


def _compact(val: Any) -> str:
    if isinstance(val, bool):
        return "true" if val else "false"
    if isinstance(val, (int, str)) or val is None:
        return str(val)
    return json.dumps(val, sort_keys=True, separators=(",", ":"))


class _Inputs:
    """Loads input files and records their digests for the report."""

    def __init__(self, report: RunReport):
        self.report = report

    def _note(self, path: str) -> None:
        try:
            self.report.inputs[path] = hashlib.sha256(Path(path).read_bytes()).hexdigest()
        except OSError:
            pass

    def image(self, path: str):
        img = load_image(path)
        self._note(path)
        return img

    def map(self, path: str, dom, cod=None):
        f = load_map(path, dom, cod)
        self._note(path)
        return f

    def metric(self, path: str, img):
        s = load_metric(path, img)
        self._note(path)
        return s

    def sequence(self, path: str):
        seq = load_sequence(path)
        self._note(path)
        return seq


def _budget(args) -> EnumerationBudget:
    return EnumerationBudget(args.max_maps, args.max_nodes)


def _parse_x0(text: str | None):
    if text is None:
        return None
    body = text.strip().strip("()[]")
    try:
        return as_point(int(c) for c in body.split(",") if c.strip())
    except ValueError:
        raise InputError(f"cannot parse point {text!r}; write it as \"(a,b,...)\"") from None


# -- commands ---------------------------------------------------------------

def cmd_check_continuity(args, rep: RunReport, io: _Inputs) -> None:
    dom = io.image(args.image)
    cod = io.image(args.codomain) if args.codomain else dom
    f = io.map(args.map, dom, cod)
    v = is_continuous(f)
    rep.verdicts["continuous"] = v.holds
    if not v.holds:
        rep.witnesses["discontinuity"] = v.witness
    if args.connectivity:
        rep.verdicts["continuous_by_connectivity"] = is_continuous_by_connectivity(f)
    if f.is_self_map:
        rep.verdicts["fixed_points"] = fixed_points(f)
        rep.verdicts["approximate_fixed_points"] = approximate_fixed_points(f)


def cmd_enumerate(args, rep: RunReport, io: _Inputs) -> None:
    X = io.image(args.domain)
    Y = io.image(args.codomain) if args.codomain else X
    count, listed = 0, []
    for f in enumerate_continuous(X, Y, _budget(args), args.threads):
        count += 1
        if not args.count_only and (args.limit is None or len(listed) < args.limit):
            listed.append(f)
    rep.verdicts["count"] = count
    if not args.count_only:
        rep.witnesses["maps"] = listed


def cmd_afpp(args, rep: RunReport, io: _Inputs) -> None:
    X = io.image(args.image)
    v = has_afpp(X, _budget(args))
    rep.verdicts["afpp"] = v.holds
    if not v.holds:
        rep.witnesses["no_approximate_fixed_point"] = v.witness
    if args.cross_check:
        w = is_weakly_universal(DigitalMap.identity(X), _budget(args))
        rep.verdicts["identity_weakly_universal"] = w.holds
        rep.verdicts["agree"] = w.holds == v.holds


def cmd_universal(args, rep: RunReport, io: _Inputs) -> None:
    dom = io.image(args.image)
    cod = io.image(args.codomain) if args.codomain else dom
    f = io.map(args.map, dom, cod)
    name = "weakly_universal" if args.weak else "universal"
    v = (is_weakly_universal if args.weak else is_universal)(f, _budget(args))
    rep.verdicts[name] = v.holds
    if not v.holds:
        rep.witnesses["counterexample"] = v.witness


def cmd_product(args, rep: RunReport, io: _Inputs) -> None:
    factors = [io.image(p) for p in args.images]
    prod = build_product(factors, args.u)
    data = image_to_json(prod.carrier)
    Path(args.out).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    rep.verdicts["points"] = len(prod.carrier)
    rep.verdicts["edges"] = len(prod.carrier.edges())
    rep.verdicts["arity"] = list(prod.arity)
    rep.verdicts["written"] = args.out


def cmd_analyze_pair(args, rep: RunReport, io: _Inputs) -> None:
    img = io.image(args.image)
    s = io.metric(args.metric, img)
    S = io.map(args.s, img)
    T = io.map(args.t, img)
    alpha = as_fraction(args.alpha)
    rep.verdicts["s_continuous"] = is_continuous(S).holds
    cont_t = is_continuous(T)
    rep.verdicts["t_continuous"] = cont_t.holds
    if not cont_t.holds:
        rep.witnesses["t_discontinuity"] = cont_t.witness
    cp = theoremlab.contraction_pair_check(s, S, T, alpha)
    rep.verdicts["contraction_pair"] = cp.holds
    if not cp.holds:
        rep.witnesses["contraction_pair"] = cp.witness
    ratio, pair = theoremlab.contraction_ratio(s, S, T)
    rep.verdicts["contraction_ratio"] = "unbounded" if ratio is None else ratio
    wc = theoremlab.is_weakly_commuting(s, S, T)
    rep.verdicts["weakly_commuting"] = wc.holds
    if not wc.holds:
        rep.witnesses["weakly_commuting"] = wc.witness
    wk = theoremlab.is_weakly_compatible(S, T)
    rep.verdicts["weakly_compatible"] = wk.holds
    if not wk.holds:
        rep.witnesses["weakly_compatible"] = wk.witness
    rep.verdicts["common_fixed_point"] = theoremlab.weakly_commuting_common_fixed_point(
        s, S, T, alpha, _parse_x0(args.x0))
    rep.verdicts["constant_map_criterion"] = theoremlab.constant_map_criterion(s, S, T, alpha)


def cmd_expansive(args, rep: RunReport, io: _Inputs) -> None:
    img = io.image(args.image)
    s = io.metric(args.metric, img)
    T = io.map(args.map, img)
    k = as_fraction(args.k)
    mus = [m.strip() for m in args.mu.split(",") if m.strip()]
    if k > 1:
        v = theoremlab.is_expansive(s, T, k)
        rep.verdicts["expansive"] = v.holds
        if not v.holds:
            rep.witnesses["expansive"] = v.witness
    if k >= as_fraction("1/2"):
        rep.verdicts["sum_expansive_identity"] = theoremlab.sum_expansive_identity_check(s, T, k)
    if 1 < k < 2:
        params = theoremlab.ExpansiveParams(k, frozenset(theoremlab.Mu(m) for m in mus))
        rep.verdicts["generalized_expansive"] = theoremlab.generalized_expansive_fixed_point(s, T, params)
    if 2 <= len(s) <= MAX_IMPOSSIBILITY_POINTS:
        imp = theoremlab.expansive_onto_impossibility(s)
        rep.verdicts["onto_expansive_impossible"] = imp.conclusion.holds
        rep.verdicts["max_feasible_k_over_bijections"] = imp.details["max_feasible_k_overall"]


def cmd_sequence(args, rep: RunReport, io: _Inputs) -> None:
    if args.seq:
        seq = io.sequence(args.seq)
    elif args.mod4:
        seq = mod4_sequence(args.mod4)
    else:
        raise InputError("give --seq FILE or --mod4 N")
    if args.image:
        img = io.image(args.image)
    else:
        img = DigitalImage(sorted(set(seq.terms)), CU(1, len(seq.terms[0])))
    s = io.metric(args.metric, img) if args.metric else DigitalMetricSpace(img, LP(1))
    thr = as_fraction(args.threshold) if args.threshold is not None else None
    rep.verdicts["cauchy"] = cauchy_modulus(seq, s, thr)
    gaps = even_odd_gaps(seq, s)
    rep.verdicts["even_odd_gaps_all_zero"] = all(sign(g) == 0 for g in gaps)
    rep.verdicts["terms"] = len(seq)


def cmd_fixtures(args, rep: RunReport, io: _Inputs) -> None:
    if args.action == "list":
        rep.verdicts["fixtures"] = fixtures.names()
        return
    results = fixtures.run_all([args.name] if args.name else None)
    rep.verdicts["checks"] = [{"fixture": r.fixture, "op": r.op, "ok": r.ok} for r in results]
    failed = [r for r in results if not r.ok]
    rep.verdicts["passed"] = len(results) - len(failed)
    rep.verdicts["failed"] = len(failed)
    for r in failed:
        rep.witnesses[f"{r.fixture}.{r.op}"] = {"expected": r.expected, "actual": r.actual}
    if failed:
        rep.exit_code = 1


def _fixture_table(rep: RunReport) -> str:
    rows = rep.verdicts["checks"]
    width = max((len(r["fixture"]) + len(r["op"]) + 1 for r in rows), default=10)
    lines = [f"{'check':<{width}}  result"]
    for r in rows:
        lines.append(f"{r['fixture'] + '.' + r['op']:<{width}}  {'PASS' if r['ok'] else 'FAIL'}")
    lines.append(f"{rep.verdicts['passed']} passed, {rep.verdicts['failed']} failed")
    return "\n".join(lines) + "\n"


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--max-maps", type=int, default=10**7)
    common.add_argument("--max-nodes", type=int, default=10**8)
    common.add_argument("--threads", type=int, default=1, help="worker processes for enumeration")

    p = argparse.ArgumentParser(prog="digitalfp",
                                description="Exhaustive checks for fixed-point questions on digital images.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, report_out=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if report_out:
            sp.add_argument("--out", help="write the report here instead of stdout")
        sp.set_defaults(func=fn)
        return sp

    sp = add("check-continuity", cmd_check_continuity, "is a map digitally continuous?")
    sp.add_argument("--image", "--domain", dest="image", required=True)
    sp.add_argument("--codomain")
    sp.add_argument("--map", required=True)
    sp.add_argument("--connectivity", action="store_true",
                    help=f"also check via connected subsets (domain <= {MAX_CONNECTIVITY_POINTS} points)")

    sp = add("enumerate", cmd_enumerate, "enumerate continuous maps")
    sp.add_argument("--domain", required=True)
    sp.add_argument("--codomain")
    sp.add_argument("--count-only", action="store_true")
    sp.add_argument("--limit", type=int, help="list at most this many maps")

    sp = add("afpp", cmd_afpp, "does an image have the approximate fixed point property?")
    sp.add_argument("--image", required=True)
    sp.add_argument("--cross-check", action="store_true",
                    help="also decide weak universality of the identity and compare")

    sp = add("universal", cmd_universal, "is a map universal (or weakly universal)?")
    sp.add_argument("--image", "--domain", dest="image", required=True)
    sp.add_argument("--codomain")
    sp.add_argument("--map", required=True)
    sp.add_argument("--weak", action="store_true")

    sp = add("product", cmd_product, "build an NP_u product image", report_out=False)
    sp.add_argument("--images", nargs="+", required=True)
    sp.add_argument("--u", type=int, required=True)
    sp.add_argument("--out", required=True, help="where to write the product image")

    sp = add("analyze-pair", cmd_analyze_pair, "common fixed point analysis of a pair (S, T)")
    sp.add_argument("--image", required=True)
    sp.add_argument("--metric", required=True)
    sp.add_argument("--s", required=True)
    sp.add_argument("--t", required=True)
    sp.add_argument("--alpha", required=True, help="P/Q with 0 < alpha < 1")
    sp.add_argument("--x0", help='starting point, e.g. "(0,0)"')

    sp = add("expansive", cmd_expansive, "expansive-mapping checks for a self-map")
    sp.add_argument("--image", required=True)
    sp.add_argument("--metric", required=True)
    sp.add_argument("--map", required=True)
    sp.add_argument("--k", required=True, help="P/Q")
    sp.add_argument("--mu", default="plain,halfsum", help="comma list from plain, halfsum")

    sp = add("sequence", cmd_sequence, "eventual constancy / thresholded Cauchy analysis")
    sp.add_argument("--seq")
    sp.add_argument("--mod4", type=int, metavar="N", help="use the first N terms of 0,0,1,1,...")
    sp.add_argument("--image")
    sp.add_argument("--metric")
    sp.add_argument("--threshold")

    sp = add("fixtures", cmd_fixtures, "replay the bundled example corpus")
    sp.add_argument("action", choices=("run", "list"), nargs="?", default="run")
    sp.add_argument("name", nargs="?")
    return p


def dispatch(argv: Sequence[str]) -> tuple[int, RunReport | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code or 0), None
    rep = RunReport(args.command)
    start = time.perf_counter()
    try:
        args.func(args, rep, _Inputs(rep))
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, None
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, None
    except BudgetError as exc:
        print(f"budget exceeded: {exc} (partial count {exc.partial})", file=sys.stderr)
        return 3, None
    rep.timing_ms = (time.perf_counter() - start) * 1000
    if args.format == "structured":
        text = dumps(rep) + "\n"
    elif args.command == "fixtures" and args.action == "run":
        text = _fixture_table(rep)
    else:
        text = rep.to_text()
    out = getattr(args, "out", None)
    if out and args.command != "product":
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return rep.exit_code, rep


def main(argv: Sequence[str] | None = None) -> int:
    code, _ = dispatch(sys.argv[1:] if argv is None else argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
