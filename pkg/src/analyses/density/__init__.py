"""
Density package - traffic / stationary density maps and stationary-area clustering.
"""
from .grid import (
    DensityGrid,
    DensityMode,
    bbox_around,
    build_density,
    merge_grids,
    normalcy_score,
    subtract_grid,
)
from .clustering import StationaryArea, cluster_stationary, low_speed_points

__all__ = [
    'DensityGrid', 'DensityMode', 'bbox_around', 'build_density', 'merge_grids',
    'normalcy_score', 'subtract_grid', 'StationaryArea', 'cluster_stationary', 'low_speed_points',
]
