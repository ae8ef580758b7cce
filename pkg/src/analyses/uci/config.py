"""
UCI Filter Configuration - candidate selection thresholds.

Contains:
- Corridor distance D_max, minimum dwell T_min, maximum mean speed S_max
- Optional manoeuvre-rate gate
- Optional size / depth gate

A value of 0 disables an optional gate.
"""
from typing import List, Optional

from analyses.uci.model import FilterCriteria


def _optional(value: float) -> Optional[float]:
    return value if value > 0 else None


class configuration:
    """Constructor: create configuration object with default parameters"""

    def __init__(self):
        self.d_max_km: float = 5.0
        self.t_min_s: float = 3600.0
        self.s_max_kn: float = 3.0

        """Optional gates (0 = disabled)"""
        self.manoeuvre_rate_min: float = 0.0
        self.min_length_m: float = 0.0
        self.depth_gate_m: float = 0.0

        self.importExportVariableList = [
            "d_max_km", "t_min_s", "s_max_kn",
            "manoeuvre_rate_min", "min_length_m", "depth_gate_m",
        ]

    def validate(self) -> List[str]:
        problems = []
        if self.d_max_km <= 0:
            problems.append("uci.d_max_km must be > 0")
        if self.t_min_s <= 0:
            problems.append("uci.t_min_s must be > 0")
        if self.s_max_kn < 0:
            problems.append("uci.s_max_kn must be >= 0")
        for name in ("manoeuvre_rate_min", "min_length_m", "depth_gate_m"):
            if getattr(self, name) < 0:
                problems.append(f"uci.{name} must be >= 0")
        return problems

    def criteria(self) -> FilterCriteria:
        return FilterCriteria(
            d_max_km=self.d_max_km,
            t_min_s=self.t_min_s,
            s_max_kn=self.s_max_kn,
            manoeuvre_rate_min=_optional(self.manoeuvre_rate_min),
            min_length_m=_optional(self.min_length_m),
            depth_gate_m=_optional(self.depth_gate_m),
        )
