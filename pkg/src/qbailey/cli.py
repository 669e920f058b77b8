"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 on any mismatch (the
report is still written), 2 on a configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import pairs as _pairs
from .bailey import unit_pair, verify_pair
from .combinatorics import norm_form_count, o_count, o_star_count, s_plus_t
from .errors import QBaileyError, UnknownName
from .identities import (
    NAMED_SERIES,
    build_sides,
    expand_named_series,
    lacunarity_scan,
    lookup,
    registry,
    verify_identity,
    x_samples,
)
from .qseries import Monomial, QSeries

PROFILE_ENV = "QBAILEY_PROFILE"

_MONO = re.compile(r"^\s*([+-]?)\s*([0-9]+(?:/[0-9]+)?)?\s*\*?\s*(q(?:\^\(?(-?[0-9]+)\)?)?)?\s*$")


class ConfigError(QBaileyError, ValueError):
    pass


def parse_monomial(text: str) -> Monomial:
    """Parse ``"3"``, ``"-1/2"``, ``"q"``, ``"-q^2"`` or ``"2*q^-1"``."""
    m = _MONO.match(text)
    if not m or not (m.group(2) or m.group(3)):
        raise ConfigError(f"cannot read {text!r} as c*q^k")
    coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
    if m.group(1) == "-":
        coeff = -coeff
    exp = 0
    if m.group(3):
        exp = int(m.group(4)) if m.group(4) is not None else 1
    return Monomial(coeff, exp)


def parse_params(items) -> dict:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"parameter {item!r} is not key=value")
        out[key.strip()] = value.strip()
    return out


def fmt(c: Fraction) -> str:
    return str(c)


# ---------------------------------------------------------------------------
# pairs exposed on the command line

PAIRS = {
    "unit": (unit_pair, ("a",)),
    "andrews-abc": (_pairs.pair_andrews_abc, ("a", "b", "c")),
    "andrews-b-neg-c": (_pairs.pair_andrews_b_neg_c, ("a", "x")),
    "theorem21": (_pairs.pair_theorem21, ("a", "x")),
    "theorem21-direct": (_pairs.theorem21_direct, ("a", "x")),
    "cor22": (_pairs.pair_cor22, ()),
    "cor23": (_pairs.pair_cor23, ()),
    "cor24": (_pairs.pair_cor24, ()),
    "x-to-zero": (_pairs.pair_x_to_zero, ("a",)),
}


def make_pair(name: str, params: dict):
    try:
        builder, names = PAIRS[name]
    except KeyError:
        raise UnknownName(name) from None
    extra = set(params) - set(names)
    if extra:
        raise ConfigError(f"pair {name} takes parameters {list(names)}, got {sorted(extra)}")
    missing = [k for k in names if k not in params]
    if missing:
        raise ConfigError(f"pair {name} needs parameter(s) {missing}")
    args = [p if isinstance(p, Monomial) else parse_monomial(str(p)) for p in (params[k] for k in names)]
    return builder(*args)


# ---------------------------------------------------------------------------
# check items; small frozen records so they cross process boundaries


@dataclass(frozen=True)
class Item:
    kind: str  # "identity" | "pair" | "sweep"
    target: str
    params: tuple = ()
    order: int = 100
    n_max: int = 10


def run_item(item: Item) -> dict:
    params = dict(item.params)
    t0 = time.perf_counter()
    out = {"id": item.target, "params": {k: str(v) for k, v in item.params}, "order": item.order}
    try:
        if item.kind == "identity":
            rep = verify_identity(item.target, params, item.order).to_dict()
            out.update(rep)
            out["params"] = {k: str(v) for k, v in item.params}
        elif item.kind == "pair":
            rep = verify_pair(make_pair(item.target, params), item.n_max, item.order)
            out["n_max"] = item.n_max
            out["status"] = "ok" if rep.ok else "mismatch"
            if not rep.ok:
                n, e, b, s = rep.first_failure
                out["first_mismatch_n"] = n
                out["first_mismatch_exponent"] = e
                out["lhs"] = fmt(b)
                out["rhs"] = fmt(s)
        elif item.kind == "sweep":
            ident = lookup(item.target)
            count = ident.x_degree_span(item.order) + 1
            out["samples"] = count
            out["status"] = "ok"
            for x in x_samples(count):
                rep = verify_identity(item.target, {"x": x}, item.order)
                if not rep.equal:
                    e, lc, rc = rep.first_mismatch
                    out.update(status="mismatch", first_mismatch_exponent=e, lhs=fmt(lc), rhs=fmt(rc))
                    out["params"] = {"x": str(x)}
                    break
        else:
            raise ConfigError(f"unknown item kind {item.kind}")
    except QBaileyError as exc:
        out["status"] = "error"
        out["error"] = f"{type(exc).__name__}: {exc}"
    out["elapsed_ms"] = round((time.perf_counter() - t0) * 1000.0, 3)
    return out


def profile_items(profile: str) -> list[Item]:
    items = []
    if profile == "quick":
        for ident in registry():
            items.append(Item("identity", ident.id, tuple(ident.defaults.items()), 100))
        items.append(Item("pair", "andrews-abc", (("a", "2"), ("b", "3"), ("c", "5")), 100, 10))
        items.append(Item("pair", "theorem21", (("a", "q"), ("x", "3")), 100, 10))
        for name in ("cor22", "cor23", "cor24"):
            items.append(Item("pair", name, (), 100, 10))
        items.append(Item("pair", "x-to-zero", (("a", "q"),), 100, 10))
        return items
    if profile != "full":
        raise ConfigError(f"unknown profile {profile!r}")
    for b in ("2", "-3", "1/2"):
        for n in range(26):
            items.append(Item("identity", "fine-16.3", (("n", str(n)), ("b", b)), 200))
    for ident_id, order in (("cor-3.5", 500), ("cor-3.6", 2000), ("cor-3.7", 1000), ("cor-3.8", 1000),
                            ("cor-3.9", 500), ("eq-3.13", 2000), ("sigma-star-part", 61), ("o-star-part", 61)):
        items.append(Item("identity", ident_id, (), order))
    for ident_id in ("eq-3.11", "eq-3.12"):
        for x in ("2", "-3", "1/2"):
            items.append(Item("identity", ident_id, (("x", x),), 300))
        items.append(Item("sweep", ident_id, (), 300))
    for a, x in (("q", "3"), ("q", "-2"), ("2", "5"), ("3", "1/3")):
        items.append(Item("pair", "theorem21", (("a", a), ("x", x)), 50, 16))
    items.append(Item("pair", "andrews-abc", (("a", "2"), ("b", "3"), ("c", "5")), 50, 16))
    for name in ("cor22", "cor23", "cor24"):
        items.append(Item("pair", name, (), 80, 20))
    items.append(Item("pair", "x-to-zero", (("a", "q"),), 80, 20))
    return items


def run_items(items: list[Item], parallelism: int = 1) -> list[dict]:
    """Run check items, keeping the input order in the output."""
    if parallelism <= 1 or len(items) <= 1:
        return [run_item(it) for it in items]
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(run_item, items))


# ---------------------------------------------------------------------------
# output


def _emit_reports(reports: list[dict], fmt_: str) -> str:
    if fmt_ == "json":
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in reports)
    if fmt_ == "csv":
        buf = io.StringIO()
        cols = ["id", "params", "order", "status", "first_mismatch_exponent", "lhs", "rhs", "elapsed_ms"]
        w = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in reports:
            row = dict(r)
            row["params"] = ";".join(f"{k}={v}" for k, v in r.get("params", {}).items())
            w.writerow(row)
        return buf.getvalue()
    lines = []
    for r in reports:
        label = r["id"]
        if r.get("params"):
            label += " " + " ".join(f"{k}={v}" for k, v in r["params"].items())
        line = f"{label:40s} order={r['order']:<6d} {r['status']:8s} {r['elapsed_ms']:10.1f} ms"
        if "samples" in r:
            line += f"  ({r['samples']} values of x)"
        if r["status"] == "mismatch":
            line += f"  first mismatch at q^{r['first_mismatch_exponent']}: lhs={r['lhs']} rhs={r['rhs']}"
        elif r["status"] == "error":
            line += "  " + r["error"]
        lines.append(line)
    return "\n".join(lines) + "\n"


def _emit_series(s: QSeries, order: int, fmt_: str, label: str) -> str:
    if fmt_ == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["exponent", "numerator", "denominator"])
        for e in range(min(s.valuation, 0), order):
            c = s.coeff(e)
            w.writerow([e, c.numerator, c.denominator])
        return buf.getvalue()
    if fmt_ == "json":
        obj = {
            "id": label,
            "order": order,
            "valuation": s.valuation,
            "coefficients": [fmt(c) for c in s.coefficients(min(s.valuation, 0))],
        }
        return json.dumps(obj, sort_keys=True) + "\n"
    return str(s) + "\n"


def _write(text: str, path: Optional[str]):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# argument handling


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qbailey", description="Exact q-series, Bailey pairs and identity checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, order_default: Optional[int] = 100):
        p.add_argument("--order", type=int, default=order_default)
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--output", "-o")

    p = sub.add_parser("expand", help="expand a named series or one side of an identity")
    p.add_argument("target")
    p.add_argument("--side", choices=("lhs", "rhs"), default="lhs")
    p.add_argument("--param", action="append", default=[])
    common(p)

    p = sub.add_parser("verify", help="verify one registry identity")
    p.add_argument("target")
    p.add_argument("--param", action="append", default=[])
    common(p)

    p = sub.add_parser("verify-all", help="run the registry and the pair checks")
    p.add_argument("--profile", choices=("quick", "full"), default=None)
    p.add_argument("--only", action="append", default=[])
    p.add_argument("-j", "--parallelism", type=int, default=1)
    common(p, None)

    p = sub.add_parser("pairs", help="check a Bailey pair against the defining relation")
    p.add_argument("target", choices=sorted(PAIRS))
    p.add_argument("--param", action="append", default=[])
    p.add_argument("--n-max", type=int, default=10)
    common(p, 50)

    p = sub.add_parser("partitions", help="counting oracles")
    p.add_argument("kind", choices=("o", "o-star", "s-plus-t", "norm"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("count", "enumerate"), default="count")

    p = sub.add_parser("lacunarity", help="nonzero-coefficient density census")
    p.add_argument("target")
    p.add_argument("--side", choices=("lhs", "rhs"), default="lhs")
    common(p, 5000)
    return ap


def _check_order(order):
    if order is not None and order < 1:
        raise ConfigError("order must be at least 1")


def run(args: argparse.Namespace) -> int:
    cmd = args.command
    if cmd == "partitions":
        if args.kind == "o":
            value = o_count(args.n, args.method)
        elif args.kind == "o-star":
            value = o_star_count(args.n, args.method)
        elif args.kind == "s-plus-t":
            value = s_plus_t(args.n)
        else:
            value = norm_form_count(args.n).count
        print(value)
        return 0

    _check_order(args.order)
    if cmd == "expand":
        key = args.target.replace("-", "_").lower()
        if key in NAMED_SERIES:
            s = expand_named_series(key, args.order)
        else:
            lhs, rhs = build_sides(args.target, parse_params(args.param), args.order)
            s = lhs if args.side == "lhs" else rhs
        _write(_emit_series(s, args.order, args.format, args.target), args.output)
        return 0

    if cmd == "lacunarity":
        rep = lacunarity_scan(args.target, args.order, side=args.side)
        if args.format == "json":
            text = json.dumps(rep.to_dict(), sort_keys=True) + "\n"
        else:
            text = (
                f"{rep.series_id}: {rep.nonzero_count}/{rep.order} nonzero, density {rep.density:.4f}; "
                + "windows " + " ".join(f"{d:.4f}" for d in rep.window_densities) + "\n"
            )
        _write(text, args.output)
        return 0

    if cmd == "verify":
        ident = lookup(args.target)
        params = ident.normalize(parse_params(args.param))
        items = [Item("identity", ident.id, tuple((k, str(v)) for k, v in params.items()), args.order)]
    elif cmd == "pairs":
        params = parse_params(args.param)
        make_pair(args.target, params)  # reject bad parameters before running
        items = [Item("pair", args.target, tuple(params.items()), args.order, args.n_max)]
    else:
        profile = args.profile or os.environ.get(PROFILE_ENV, "quick")
        items = profile_items(profile)
        if args.only:
            wanted = {w.strip().lower() for w in args.only}
            items = [it for it in items if it.target in wanted]
            if not items:
                raise ConfigError(f"no checks match --only {sorted(wanted)}")
        if args.order is not None:
            items = [Item(it.kind, it.target, it.params, args.order, it.n_max) for it in items]
        if args.parallelism < 1:
            raise ConfigError("parallelism must be at least 1")
        return _finish(run_items(items, args.parallelism), args)

    return _finish(run_items(items), args)


def _finish(reports: list[dict], args) -> int:
    text = _emit_reports(reports, args.format)
    if args.command == "verify-all" and args.format == "text":
        ok = sum(r["status"] == "ok" for r in reports)
        text += f"{len(reports)} checks, {ok} ok, {len(reports) - ok} failed\n"
    _write(text, args.output)
    if any(r["status"] == "error" for r in reports) and len(reports) == 1:
        return 2
    return 0 if all(r["status"] == "ok" for r in reports) else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except (QBaileyError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
