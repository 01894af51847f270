"""Run configuration: one flat record of every tunable with its default,
merged from defaults, then command-line flags, then an optional JSON config
file (the file has the last word)."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

from .cvd import CvdConfig
from .dhvd import DhvdConfig
from .graph import GraphError
from .pmfd import PmfdConfig
from .separators import SeparatorConfig


@dataclass
class Config:
    # cvd
    short_hole_len: int = 12
    cvd_alpha_exact: int = 24
    cvd_lam_override: int = 0          # 0 means auto
    cvd_claimed_constant: int = 32
    # dhvd
    obstruction_size: int = 8
    dhvd_claimed_constant: int = 32
    dhvd_log_floor: int = 12
    # shared LP / search budgets
    hole_budget: int = 400_000
    lp_max_rows: int = 0               # 0 means the solver default (10 n)
    # separators
    separator_exact_threshold: int = 13
    separator_flow_samples: int = 4
    separator_swap_iters: int = 40
    separator_clique_candidates: int = 64
    separator_subset_budget: int = 20000
    separator_biclique_budget: int = 100000
    # pmfd
    pmfd_special_enum_budget: int = 20000
    pmfd_bnb_budget: int = 4_000_000
    # harness
    exact_limit: int = 14
    jobs: int = 1
    strict: bool = False

    MINIMA = {"short_hole_len": 4, "obstruction_size": 6,
              "separator_exact_threshold": 1, "exact_limit": 1,
              "dhvd_log_floor": 12, "jobs": 1}

    def validate(self) -> None:
        for key, lo in self.MINIMA.items():
            if getattr(self, key) < lo:
                raise GraphError(f"config {key} below its minimum {lo}")

    def separator(self) -> SeparatorConfig:
        return SeparatorConfig(
            exact_threshold=self.separator_exact_threshold,
            flow_samples=self.separator_flow_samples,
            swap_iters=self.separator_swap_iters,
            clique_candidates=self.separator_clique_candidates,
            subset_budget=self.separator_subset_budget,
            biclique_budget=self.separator_biclique_budget)

    def cvd(self) -> CvdConfig:
        return CvdConfig(
            short_hole_len=self.short_hole_len,
            alpha_exact=self.cvd_alpha_exact,
            hole_budget=self.hole_budget,
            lp_max_rows=self.lp_max_rows or None,
            claimed_constant=self.cvd_claimed_constant,
            lam_override=self.cvd_lam_override or None,
            separator=self.separator(),
            strict=self.strict)

    def dhvd(self) -> DhvdConfig:
        return DhvdConfig(
            obstruction_size=self.obstruction_size,
            hole_budget=self.hole_budget,
            lp_max_rows=self.lp_max_rows or None,
            claimed_constant=self.dhvd_claimed_constant,
            log_floor=self.dhvd_log_floor,
            separator=self.separator(),
            strict=self.strict)

    def pmfd(self) -> PmfdConfig:
        return PmfdConfig(
            special_enum_budget=self.pmfd_special_enum_budget,
            bnb_budget=self.pmfd_bnb_budget,
            separator=self.separator(),
            strict=self.strict)

    def apply_file(self, path: str) -> None:
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise GraphError(f"cannot read config file {path}: {exc}") from exc
        known = {f.name for f in fields(self)}
        for key, value in doc.items():
            if key not in known:
                raise GraphError(f"unknown config key {key!r}")
            setattr(self, key, type(getattr(self, key))(value))
        self.validate()


def config_markdown() -> str:
    """CONFIG.md body: every knob with its default."""
    cfg = Config()
    lines = ["# Configuration keys",
             "",
             "Defaults below; override with CLI flags, then a `--config`",
             "JSON file (file wins over flags, flags win over defaults).",
             "", "| key | default |", "|-----|---------|"]
    for key, value in asdict(cfg).items():
        lines.append(f"| `{key}` | `{value}` |")
    lines.append("")
    return "\n".join(lines)
