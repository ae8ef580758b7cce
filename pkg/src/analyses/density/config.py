"""
Density Configuration - grid and clustering parameters.

Contains:
- Cell size and analysis box (box of zeros = derived from the data)
- Density mode
- DBSCAN radius and minimum neighbourhood size
"""
from typing import List, Optional

from geo import BBox

from .grid import DensityMode


class configuration:
    """Constructor: create configuration object with default parameters"""

    def __init__(self):
        """Grid settings"""
        self.cell_deg: float = 0.05
        self.mode: str = DensityMode.ALL_TRAFFIC.value
        # all four zero: box around the data, padded by one cell
        self.lat_min: float = 0.0
        self.lat_max: float = 0.0
        self.lon_min: float = 0.0
        self.lon_max: float = 0.0

        """Clustering settings"""
        self.eps_m: float = 1000.0
        self.min_pts: int = 5

        self.importExportVariableList = [
            "cell_deg", "mode", "lat_min", "lat_max", "lon_min", "lon_max",
            "eps_m", "min_pts",
        ]

    def validate(self) -> List[str]:
        problems = []
        if self.cell_deg <= 0:
            problems.append("density.cell_deg must be > 0")
        if self.mode not in [m.value for m in DensityMode]:
            problems.append(f"density.mode must be one of {[m.value for m in DensityMode]}")
        if self.has_bbox():
            if not (-90 <= self.lat_min < self.lat_max <= 90):
                problems.append("density: need -90 <= lat_min < lat_max <= 90")
            if not (-180 <= self.lon_min < self.lon_max <= 180):
                problems.append("density: need -180 <= lon_min < lon_max <= 180")
        if self.eps_m <= 0:
            problems.append("density.eps_m must be > 0")
        if self.min_pts < 1:
            problems.append("density.min_pts must be >= 1")
        return problems

    def has_bbox(self) -> bool:
        return any(v != 0.0 for v in (self.lat_min, self.lat_max, self.lon_min, self.lon_max))

    def bbox(self) -> Optional[BBox]:
        if not self.has_bbox():
            return None
        return BBox(lat_min=self.lat_min, lat_max=self.lat_max, lon_min=self.lon_min, lon_max=self.lon_max)
