"""
Netrisk package - robustness and cascading-failure analysis of UCI networks.
"""
from .graph import InfraGraph, giant_component_size, preferential_attachment_graph
from .robustness import CurvePoint, FailureScenario, ScenarioMode, Target, curve_area, robustness_curve
from .cascade import CascadeResult, cascade_simulate, choke_points, edge_loads

__all__ = [
    'InfraGraph', 'giant_component_size', 'preferential_attachment_graph',
    'CurvePoint', 'FailureScenario', 'ScenarioMode', 'Target', 'curve_area', 'robustness_curve',
    'CascadeResult', 'cascade_simulate', 'choke_points', 'edge_loads',
]
