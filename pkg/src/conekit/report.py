"""Scenario configuration and machine-readable verification reports.

Reports are JSON, UTF-8, keys sorted; given an identical configuration
and seed the emitted bytes are identical.  Wall-clock timings are
therefore opt-in and excluded by default.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__
from .cache import BasisCache
from .checks import (
    CHECK_ORDER,
    CHECKS,
    FAIL,
    CheckOutcome,
    run_check_two_prime,
)
from .cone import ConeData, PRESETS, certify_genericity, preset
from .fields import FieldConfig
from .groebner import DEFAULT_CAPS, ResourceCaps
from .ideals import EngineContext


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class ScenarioConfig:
    """One verification scenario: instance, field, checks, caps, seed."""

    preset_name: Optional[str] = None
    cone_literal: Optional[Tuple[int, int, str]] = None  # (n, h, f-text)
    field: str = "Fp:31991"
    checks: Tuple[str, ...] = tuple(CHECK_ORDER)
    seed: int = 0
    caps: ResourceCaps = DEFAULT_CAPS
    cache_dir: Optional[str] = None
    out_path: Optional[str] = None
    timings: bool = False

    def __post_init__(self):
        if not self.checks:
            raise ConfigError("checks must be nonempty")
        unknown = [c for c in self.checks if c not in CHECKS]
        if unknown:
            raise ConfigError("unknown checks: %s" % ", ".join(unknown))
        if (self.preset_name is None) == (self.cone_literal is None):
            raise ConfigError("exactly one of preset / cone-data must be given")
        if self.preset_name is not None and self.preset_name not in PRESETS:
            raise ConfigError(
                "unknown preset %r (have: %s)" % (self.preset_name, ", ".join(sorted(PRESETS)))
            )
        if min(
            self.caps.max_basis,
            self.caps.max_pairs,
            self.caps.max_coeff_bits,
            self.caps.max_reduction_steps,
        ) <= 0:
            raise ConfigError("resource caps must be positive")

    def cone_data(self) -> ConeData:
        cfg = FieldConfig.parse(self.field)
        cfg = FieldConfig(kind=cfg.kind, p=cfg.p, seed=self.seed)
        if self.preset_name is not None:
            return preset(self.preset_name, cfg)
        n, h, f_text = self.cone_literal
        return ConeData(n=n, h=h, f_text=f_text, field_cfg=cfg, label="custom")

    @classmethod
    def from_dict(cls, d: dict) -> "ScenarioConfig":
        if not isinstance(d, dict):
            raise ConfigError("scenario config must be a JSON object")
        caps_d = d.get("caps", {})
        caps = ResourceCaps(
            max_basis=caps_d.get("max-basis", DEFAULT_CAPS.max_basis),
            max_pairs=caps_d.get("max-pairs", DEFAULT_CAPS.max_pairs),
            max_coeff_bits=caps_d.get("max-coeff-bits", DEFAULT_CAPS.max_coeff_bits),
            max_reduction_steps=caps_d.get(
                "max-reduction-steps", DEFAULT_CAPS.max_reduction_steps
            ),
        )
        lit = None
        if "cone-data" in d:
            cdd = d["cone-data"]
            try:
                lit = (int(cdd["n"]), int(cdd["h"]), str(cdd["f"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise ConfigError("cone-data needs integer n, h and text f: %s" % exc)
        return cls(
            preset_name=d.get("preset"),
            cone_literal=lit,
            field=d.get("field", "Fp:31991"),
            checks=tuple(d.get("checks", CHECK_ORDER)),
            seed=int(d.get("seed", 0)),
            caps=caps,
            cache_dir=d.get("cache-dir"),
            out_path=d.get("out"),
            timings=bool(d.get("timings", False)),
        )

    def to_dict(self) -> dict:
        d = {
            "field": self.field,
            "checks": list(self.checks),
            "seed": self.seed,
            "caps": {
                "max-basis": self.caps.max_basis,
                "max-pairs": self.caps.max_pairs,
                "max-coeff-bits": self.caps.max_coeff_bits,
                "max-reduction-steps": self.caps.max_reduction_steps,
            },
        }
        if self.preset_name is not None:
            d["preset"] = self.preset_name
        else:
            n, h, f = self.cone_literal
            d["cone-data"] = {"n": n, "h": h, "f": f}
        return d


def load_scenario(path_or_preset: str) -> ScenarioConfig:
    """A scenario from a JSON file path, or a bare preset name."""
    if path_or_preset in PRESETS:
        return ScenarioConfig(preset_name=path_or_preset)
    try:
        with open(path_or_preset, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError("cannot read scenario %r: %s" % (path_or_preset, exc))
    except json.JSONDecodeError as exc:
        raise ConfigError("scenario %r is not valid JSON: %s" % (path_or_preset, exc))
    return ScenarioConfig.from_dict(data)


def run_scenario(cfg: ScenarioConfig) -> dict:
    """Execute the gated check pipeline and assemble the report dict."""
    cd = cfg.cone_data()
    cache = BasisCache(cfg.cache_dir) if cfg.cache_dir else None
    ctx = EngineContext(caps=cfg.caps, cache=cache, seed=cfg.seed)
    genericity = certify_genericity(cd, ctx)
    records: List[dict] = []
    for name in cfg.checks:
        start = time.monotonic()
        outcome = run_check_two_prime(name, cd, ctx, genericity)
        rec = {
            "name": name,
            "paper-anchor": CHECKS[name].anchor,
            "status": outcome.status,
            "witnesses": outcome.witnesses,
            "notes": list(outcome.notes),
        }
        if cfg.timings:
            rec["wall-time"] = round(time.monotonic() - start, 3)
        records.append(rec)
    statuses = [r["status"] for r in records]
    report = {
        "artifact": {"name": "conekit", "version": __version__},
        "scenario": cfg.to_dict(),
        "instance": {
            "label": cd.label,
            "n": cd.n,
            "h": cd.h,
            "f": cd.f_text,
            "field": cd.field_cfg.spec,
        },
        "genericity": {
            "hypersurface-smooth": genericity.hypersurface_smooth,
            "section-h-smooth": genericity.section_h_smooth,
            "section-rest-smooth": genericity.section_rest_smooth,
            "first-order-nonzero": genericity.pencil.nonzero,
            "first-order-parameter-dependent": genericity.pencil.z_dependent,
            "rejected": genericity.rejected,
            "notes": list(genericity.notes),
        },
        "checks": records,
        "summary": {s: statuses.count(s) for s in sorted(set(statuses))},
    }
    return report


def report_bytes(report: dict) -> bytes:
    return (json.dumps(report, sort_keys=True, indent=2) + "\n").encode("utf-8")


def report_has_fail(report: dict) -> bool:
    return any(r["status"] == FAIL for r in report["checks"])
