"""Command-line interface: run verification scenarios, explain checks,
manage the basis cache, and expose the raw engine."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from .cache import BasisCache
from .checks import CHECK_ORDER, CHECKS
from .fields import FieldConfig
from .groebner import DEFAULT_CAPS, ResourceCaps, buchberger
from .ideals import Ideal
from .report import (
    ConfigError,
    ScenarioConfig,
    load_scenario,
    report_bytes,
    report_has_fail,
    run_scenario,
)
from .ring import (
    AmbientSpace,
    BlockElimOrder,
    GrevlexOrder,
    LexOrder,
    PolyRing,
    poly_str,
)


def _default_cache() -> Optional[str]:
    return os.environ.get("CONEKIT_CACHE") or None


def _apply_overrides(cfg: ScenarioConfig, args) -> ScenarioConfig:
    caps = cfg.caps
    if args.cap_basis or args.cap_bits:
        caps = ResourceCaps(
            max_basis=args.cap_basis or caps.max_basis,
            max_pairs=caps.max_pairs,
            max_coeff_bits=args.cap_bits or caps.max_coeff_bits,
            max_reduction_steps=caps.max_reduction_steps,
        )
    return ScenarioConfig(
        preset_name=cfg.preset_name,
        cone_literal=cfg.cone_literal,
        field=args.field or cfg.field,
        checks=tuple(args.checks.split(",")) if args.checks else cfg.checks,
        seed=args.seed if args.seed is not None else cfg.seed,
        caps=caps,
        cache_dir=args.cache or cfg.cache_dir or _default_cache(),
        out_path=args.out or cfg.out_path,
        timings=args.timings or cfg.timings,
    )


def _run_one(cfg: ScenarioConfig) -> dict:
    return run_scenario(cfg)


def cmd_verify(args) -> int:
    try:
        configs = [_apply_overrides(load_scenario(s), args) for s in args.scenario]
    except ConfigError as exc:
        print("config error: %s" % exc, file=sys.stderr)
        return 2
    if args.jobs > 1 and len(configs) > 1:
        import multiprocessing

        with multiprocessing.Pool(min(args.jobs, len(configs))) as pool:
            reports = pool.map(_run_one, configs)
    else:
        reports = [run_scenario(c) for c in configs]
    any_fail = False
    for cfg, rep in zip(configs, reports):
        blob = report_bytes(rep)
        if cfg.out_path:
            with open(cfg.out_path, "wb") as fh:
                fh.write(blob)
        else:
            sys.stdout.buffer.write(blob)
        for r in rep["checks"]:
            print(
                "%-18s %-20s %s" % (r["name"], r["status"], rep["instance"]["label"]),
                file=sys.stderr,
            )
        any_fail = any_fail or report_has_fail(rep)
    return 1 if any_fail else 0


def cmd_explain(args) -> int:
    name = args.check
    if name not in CHECKS:
        print(
            "unknown check %r; valid names: %s" % (name, ", ".join(CHECK_ORDER)),
            file=sys.stderr,
        )
        return 2
    c = CHECKS[name]
    print(c.name)
    print("  anchor: %s" % c.anchor)
    print("  certifies: %s" % c.summary)
    print("  randomized: %s" % ("yes (two-prime agreement enforced)" if c.randomized else "no"))
    return 0


def cmd_cache(args) -> int:
    root = args.cache or _default_cache()
    if not root:
        print("no cache directory (use --cache or CONEKIT_CACHE)", file=sys.stderr)
        return 2
    cache = BasisCache(root)
    if args.action == "stats":
        st = cache.stats()
        print("entries: %d" % st["entries"])
        print("bytes: %d" % st["bytes"])
    elif args.action == "clear":
        n = cache.clear()
        print("removed %d entries" % n)
    elif args.action == "verify":
        rep = cache.verify()
        print("ok: %d" % len(rep["ok"]))
        for key in rep["bad"]:
            print("corrupt: %s" % key)
        if rep["bad"]:
            return 1
    return 0


def _ring_from_ideal_file(data: dict) -> PolyRing:
    try:
        blocks = [(str(b[0]), int(b[1])) for b in data["blocks"]]
        field = FieldConfig.parse(data.get("field", "Q")).field()
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ConfigError("ideal file needs blocks [[name, size], ...]: %s" % exc)
    affine = tuple(data.get("affine", ()))
    return PolyRing(AmbientSpace.product(*blocks, affine=affine), field)


def cmd_gb(args) -> int:
    try:
        with open(args.ideal, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        ring = _ring_from_ideal_file(data)
        gens = [ring.parse(t) for t in data["gens"]]
    except (OSError, json.JSONDecodeError, KeyError, ConfigError) as exc:
        print("cannot load ideal: %s" % exc, file=sys.stderr)
        return 2
    if args.order == "lex":
        order = LexOrder(ring.nvars)
    elif args.order == "grevlex":
        order = GrevlexOrder(ring.nvars)
    elif args.order.startswith("elim:"):
        blocks = args.order[len("elim:"):].split(",")
        order = BlockElimOrder.for_blocks(ring.ambient, blocks)
    else:
        print("unknown order %r (lex | grevlex | elim:block)" % args.order, file=sys.stderr)
        return 2
    basis = buchberger(gens, order, DEFAULT_CAPS)
    for g in basis:
        print(poly_str(g))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="conekit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="run verification scenarios")
    v.add_argument("--scenario", action="append", required=True,
                   help="scenario JSON file or preset name (repeatable)")
    v.add_argument("--field", default=None, help="Q or Fp:<prime>")
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--cache", default=None, help="basis cache directory")
    v.add_argument("--out", default=None, help="report output path")
    v.add_argument("--jobs", type=int, default=1, help="scenario-level worker pool size")
    v.add_argument("--cap-basis", type=int, default=None)
    v.add_argument("--cap-bits", type=int, default=None)
    v.add_argument("--checks", default=None, help="comma-separated check subset")
    v.add_argument("--timings", action="store_true", help="include wall-times (breaks byte determinism)")
    v.set_defaults(fn=cmd_verify)

    e = sub.add_parser("explain", help="describe a check and its anchor")
    e.add_argument("check")
    e.set_defaults(fn=cmd_explain)

    c = sub.add_parser("cache", help="basis cache maintenance")
    c.add_argument("action", choices=["stats", "clear", "verify"])
    c.add_argument("--cache", default=None)
    c.set_defaults(fn=cmd_cache)

    g = sub.add_parser("gb", help="raw engine: reduced basis of an ideal file")
    g.add_argument("--ideal", required=True, help="JSON ideal file")
    g.add_argument("--order", default="grevlex", help="lex | grevlex | elim:<blocks>")
    g.set_defaults(fn=cmd_gb)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
