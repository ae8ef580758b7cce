"""
Analyses package - one sub-package per analysis, each with its own config section.

Modules in this package include:
- ais: AIS reports, tracks, kinematics
- uci: infrastructure geometry and candidate selection
- density: traffic / stationary density maps and DBSCAN areas
- sar: SAR detection to AIS association
- prediction: Ornstein-Uhlenbeck long-term prediction
- anomaly: rule-based anomaly detectors
- evidential: Dempster-Shafer evidence fusion
- netrisk: infrastructure network robustness and cascades
"""

__all__ = []
