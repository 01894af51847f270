"""Per-run deletion certificates binding a solution to its LP lower bounds.

A certificate never asserts anything about the (unknown) integral optimum
directly: it records the solution weight, the fractional lower bounds that
were actually computed, the multiplier the run is claimed to satisfy, and a
per-phase weight breakdown so audits can re-add the pieces.  `flags` collects
defect signals (repair firings, budget trips); strict mode fails on them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional


@dataclass
class DeletionCertificate:
    problem: str
    solution: list[int]
    weight: Fraction
    lower_bound: Fraction                     # main LP bound (post-hitting)
    hitting_lower_bound: Fraction = Fraction(0)
    claimed_factor: float = 0.0               # multiplier on lower_bound
    hitting_factor: float = 0.0               # multiplier on hitting bound
    constants: dict = field(default_factory=dict)
    breakdown: dict = field(default_factory=dict)   # phase -> Fraction
    flags: list[str] = field(default_factory=list)
    exact_opt: Optional[Fraction] = None      # filled at oracle scale

    def bound_value(self) -> Fraction:
        """Certified upper bound the run claims: factor * lp + hfactor * hlp,
        evaluated with a small rational headroom over the float factors."""
        return (_over(self.claimed_factor) * self.lower_bound
                + _over(self.hitting_factor) * self.hitting_lower_bound)

    def check(self) -> bool:
        """True when the claimed inequality holds for this run; a certificate
        with no factor claim (both factors zero) has nothing to violate."""
        if self.claimed_factor <= 0 and self.hitting_factor <= 0:
            return True
        if self.weight == 0:
            return True
        return self.weight <= self.bound_value()

    def ratio_vs_lower(self) -> Optional[float]:
        denom = self.lower_bound + self.hitting_lower_bound
        if denom == 0:
            return None
        return float(self.weight / denom)

    def ratio_vs_exact(self) -> Optional[float]:
        if self.exact_opt is None or self.exact_opt == 0:
            return None
        return float(self.weight / self.exact_opt)

    def to_dict(self) -> dict:
        d = {
            "problem": self.problem,
            "solution": sorted(self.solution),
            "weight": str(self.weight),
            "lower_bound": str(self.lower_bound),
            "hitting_lower_bound": str(self.hitting_lower_bound),
            "claimed_factor": self.claimed_factor,
            "hitting_factor": self.hitting_factor,
            "certified": self.check(),
            "constants": {k: str(v) for k, v in sorted(self.constants.items())},
            "breakdown": {k: str(v) for k, v in sorted(self.breakdown.items())},
            "flags": sorted(self.flags),
        }
        if self.exact_opt is not None:
            d["exact_opt"] = str(self.exact_opt)
            d["ratio_vs_exact"] = self.ratio_vs_exact()
        r = self.ratio_vs_lower()
        if r is not None:
            d["ratio_vs_lower"] = r
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _over(factor: float) -> Fraction:
    """Smallest convenient rational at or above the float factor."""
    if factor <= 0:
        return Fraction(0)
    return Fraction(int(factor * 2**20) + 1, 2**20)


class CertificateViolation(AssertionError):
    """A runtime inequality the pipeline promised did not hold."""
