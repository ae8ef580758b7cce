"""
Gap bridging - OU predictions for times the AIS track cannot be interpolated.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional

from analyses.ais.kinematics import Gap, find_gaps
from analyses.ais.model import Track
from analyses.prediction.ou import OuModel, Prediction, fit_ou, predict
from core.errors import InputError
from geo import geodesic_distance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GapBridge:
    """OU prediction at the end of a gap, scored against the reacquired report."""
    gap: Gap
    model: Optional[OuModel]
    prediction: Optional[Prediction]
    error_m: Optional[float]
    inside_3sigma: Optional[bool]
    reason: str = ""


def model_at(track: Track, t: float, fit_window_s: float,
             velocity_source: str = "reported") -> OuModel:
    """
    OU model fitted on the history ending at the last report at or before t.

    Raises:
        ValueError: t precedes the track
        InsufficientDataError / DegenerateTrackError: history cannot support a fit
    """
    anchors = [p.t for p in track.points if p.t <= t]
    if not anchors:
        raise ValueError(f"track {track.mmsi} starts after {t}")
    t_anchor = anchors[-1]
    return fit_ou(track, (t_anchor - fit_window_s, t_anchor), velocity_source)


def predict_at(track: Track, t: float, fit_window_s: float,
               velocity_source: str = "reported") -> Prediction:
    """Position distribution at t from the model fitted before t."""
    return predict(model_at(track, t, fit_window_s, velocity_source), t)


def bridge_gaps(track: Track, min_gap_s: float, fit_window_s: float,
                velocity_source: str = "reported") -> List[GapBridge]:
    """One GapBridge per gap longer than min_gap_s; unfittable gaps carry a reason."""
    bridges = []
    for gap in find_gaps(track, min_gap_s):
        try:
            model = fit_ou(track, (gap.t_start - fit_window_s, gap.t_start), velocity_source)
        except InputError as e:
            logger.info(f"track {track.mmsi}: no OU bridge for gap at {gap.t_start}: {e}")
            bridges.append(GapBridge(gap=gap, model=None, prediction=None, error_m=None,
                                     inside_3sigma=None, reason=str(e)))
            continue
        prediction = predict(model, gap.t_end)
        error = geodesic_distance(prediction.mean_pos, gap.end_pos)
        bridges.append(GapBridge(gap=gap, model=model, prediction=prediction, error_m=error,
                                 inside_3sigma=error <= prediction.radius_3sigma_m))
    return bridges
