"""
Prediction package - Ornstein-Uhlenbeck long-term prediction across AIS gaps.
"""
from .ou import (
    GAMMA_MIN,
    OuModel,
    Prediction,
    fit_ou,
    fit_ou_axis,
    fit_ou_velocities,
    ou_mean_state,
    ou_position_variance,
    predict,
    simulate_ou,
)
from .bridge import GapBridge, bridge_gaps, model_at, predict_at

__all__ = [
    'GAMMA_MIN', 'OuModel', 'Prediction', 'fit_ou', 'fit_ou_axis', 'fit_ou_velocities',
    'ou_mean_state', 'ou_position_variance', 'predict', 'simulate_ou',
    'GapBridge', 'bridge_gaps', 'model_at', 'predict_at',
]
