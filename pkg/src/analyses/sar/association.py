"""
Gated optimal assignment of SAR detections to AIS tracks.

The cost of a (detection, track) pair is the great-circle distance between the
detection and the track position at acquisition time. Pairs beyond the gate, or
whose position is unavailable, are forbidden. The rectangular assignment first
maximises the number of allowed pairs, then minimises their total distance.
Equal-cost alternatives go to the lowest (detection id, MMSI) pairs.

Detections are ordered by id and tracks by MMSI before the cost matrix is built,
so the pairing does not depend on input order.

External Libraries Used:
- numpy (BSD License) - Cost matrix
- scipy.optimize (BSD License) - linear_sum_assignment (Jonker-Volgenant solver)
"""
import logging
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linear_sum_assignment

from analyses.ais.kinematics import bracketing_points, interpolate_position
from analyses.ais.model import Track
from analyses.prediction.ou import Prediction
from analyses.sar.model import (
    FLAG_GAP_BRACKETING,
    FLAG_NO_AIS,
    Association,
    SarDetection,
    SceneRecord,
)
from geo import GeoPoint, LocalPlane, geodesic_distance, interpolate_great_circle

logger = logging.getLogger(__name__)


def _check_scene(detections: Sequence[SarDetection]) -> None:
    ids = [d.id for d in detections]
    if len(set(ids)) != len(ids):
        duplicated = sorted({i for i in ids if ids.count(i) > 1})
        raise ValueError(f"duplicate detection ids: {duplicated}")
    if len({d.t_acq for d in detections}) > 1:
        raise ValueError("detections of one scene must share the acquisition time")


def _track_position(track: Track, t: int, max_gap: float,
                    predictions: Optional[Mapping[int, Prediction]]) -> Tuple[Optional[GeoPoint], Optional[float]]:
    """(position, prediction 3-sigma radius or None) of a track at time t."""
    pos = interpolate_position(track, t, max_gap)
    if pos is not None:
        return pos, None
    if predictions is not None and track.mmsi in predictions:
        p = predictions[track.mmsi]
        return p.mean_pos, p.radius_3sigma_m
    return None, None


def _solve(cost: np.ndarray, finite: np.ndarray) -> List[Tuple[int, int]]:
    if cost.size == 0 or not finite.any():
        return []
    big = float(min(cost.shape) * (cost[finite].max() + 1.0) + 1.0)
    rows, cols = linear_sum_assignment(np.where(finite, cost, big))
    return [(int(r), int(c)) for r, c in zip(rows, cols) if finite[r, c]]


def _value(cost: np.ndarray, pairs: Sequence[Tuple[int, int]]) -> Tuple[int, float]:
    return len(pairs), float(sum(cost[r, c] for r, c in pairs))


def gated_assignment(cost: np.ndarray) -> List[Tuple[int, int]]:
    """
    Row/column pairs of a rectangular assignment with np.inf marking forbidden
    pairs: most allowed pairs first, then least total cost. Among equally good
    assignments the lexicographically smallest (row, column) pair list wins.
    """
    finite = np.isfinite(cost)
    pairs = _solve(cost, finite)
    if not pairs:
        return []
    count, total = _value(cost, pairs)
    tol = 1e-9 * (1.0 + total)

    # fix rows in order, each to the lowest column that keeps the optimum
    fixed: List[Tuple[int, int]] = []
    used = set()
    n, m = cost.shape
    for i in range(n):
        current = dict(pairs).get(i)
        for j in range(m if current is None else current):
            if j in used or not finite[i, j]:
                continue
            rest_rows = list(range(i + 1, n))
            rest_cols = [c for c in range(m) if c not in used and c != j]
            sub = cost[np.ix_(rest_rows, rest_cols)]
            tail = [(rest_rows[r], rest_cols[c]) for r, c in _solve(sub, np.isfinite(sub))]
            trial = fixed + [(i, j)] + tail
            trial_count, trial_total = _value(cost, trial)
            if trial_count == count and trial_total <= total + tol:
                pairs = trial
                current = j
                break
        if current is not None:
            fixed.append((i, current))
            used.add(current)
    return sorted(pairs)


def associate(detections: Sequence[SarDetection], tracks: Sequence[Track], gate_km: float,
              max_gap: float, predictions: Optional[Mapping[int, Prediction]] = None) -> List[Association]:
    """
    Pair the detections of one SAR scene with AIS tracks.

    Args:
        detections: detections sharing one acquisition time, unique ids
        tracks: candidate tracks
        gate_km: largest allowed detection-to-track distance
        max_gap: seconds; longer report gaps are not interpolated
        predictions: optional OU predictions keyed by MMSI, used where the
            track cannot be interpolated; the gate then widens to the 3-sigma radius

    Returns:
        One Association per detection, ordered by detection id
    """
    if not gate_km > 0:
        raise ValueError("gate_km must be positive")
    _check_scene(detections)
    if not detections:
        return []
    gate_m = gate_km * 1000.0
    dets = sorted(detections, key=lambda d: d.id)
    trks = sorted(tracks, key=lambda t: t.mmsi)
    t_acq = dets[0].t_acq

    cost = np.full((len(dets), len(trks)), np.inf)
    positions: List[Optional[GeoPoint]] = []
    predicted: List[bool] = []
    for j, track in enumerate(trks):
        pos, radius = _track_position(track, t_acq, max_gap, predictions)
        positions.append(pos)
        predicted.append(radius is not None)
        if pos is None:
            continue
        limit = gate_m if radius is None else max(gate_m, radius)
        for i, det in enumerate(dets):
            d = geodesic_distance(det.pos, pos)
            if d <= limit:
                cost[i, j] = d

    matched: Dict[int, int] = dict(gated_assignment(cost))
    result = []
    for i, det in enumerate(dets):
        j = matched.get(i)
        if j is None:
            result.append(Association(detection_id=det.id, mmsi=None, distance_m=None))
        else:
            result.append(Association(detection_id=det.id, mmsi=trks[j].mmsi, distance_m=float(cost[i, j]),
                                      used_prediction=predicted[j], track_pos=positions[j]))
    logger.info(f"scene {dets[0].image_id}: {len(matched)}/{len(dets)} detections associated")
    return result


def _gap_candidate(det: SarDetection, tracks: Sequence[Track], review_gap_s: float,
                   review_radius_m: float) -> Optional[Tuple[int, int, float]]:
    """Nearest (mmsi, gap seconds, distance) among tracks with a long gap around t_acq."""
    best = None
    for track in sorted(tracks, key=lambda t: t.mmsi):
        bracket = bracketing_points(track, det.t_acq)
        if bracket is None:
            continue
        a, b = bracket
        if b.t - a.t < review_gap_s:
            continue
        along = interpolate_great_circle(a.pos, b.pos, (det.t_acq - a.t) / (b.t - a.t))
        d = min(geodesic_distance(det.pos, a.pos), geodesic_distance(det.pos, b.pos),
                geodesic_distance(det.pos, along))
        if d <= review_radius_m and (best is None or d < best[2]):
            best = (track.mmsi, b.t - a.t, d)
    return best


def association_report(assocs: Sequence[Association], detections: Sequence[SarDetection],
                       tracks: Sequence[Track], review_gap_s: float = 3600.0,
                       review_radius_m: float = 20000.0) -> List[SceneRecord]:
    """
    Annotated scene: one record per detection with the matched vessel, the
    east/north offset from track position to detection, and a review flag for
    every unassociated detection (gap_bracketing when a nearby track has a long
    report gap around the acquisition time, no_ais otherwise).
    """
    by_id = {d.id: d for d in detections}
    by_mmsi = {t.mmsi: t for t in tracks}
    records = []
    for a in assocs:
        det = by_id[a.detection_id]
        if a.associated:
            offset_e = offset_n = None
            if a.track_pos is not None:
                offset_e, offset_n = LocalPlane(a.track_pos).to_xy(det.pos)
            info = by_mmsi[a.mmsi].info if a.mmsi in by_mmsi else None
            records.append(SceneRecord(
                detection_id=det.id, image_id=det.image_id, t_acq=det.t_acq, detection_pos=det.pos,
                mmsi=a.mmsi, vessel_name=info.name if info else None, track_pos=a.track_pos,
                distance_m=a.distance_m, offset_east_m=offset_e, offset_north_m=offset_n,
                used_prediction=a.used_prediction, flag=""))
            continue
        candidate = _gap_candidate(det, tracks, review_gap_s, review_radius_m)
        records.append(SceneRecord(
            detection_id=det.id, image_id=det.image_id, t_acq=det.t_acq, detection_pos=det.pos,
            mmsi=None, vessel_name=None, track_pos=None, distance_m=None,
            offset_east_m=None, offset_north_m=None, used_prediction=False,
            flag=FLAG_GAP_BRACKETING if candidate else FLAG_NO_AIS,
            candidate_mmsi=candidate[0] if candidate else None,
            candidate_gap_s=candidate[1] if candidate else None,
            candidate_distance_m=candidate[2] if candidate else None))
    flagged = sum(1 for r in records if r.flag)
    if flagged:
        logger.info(f"{flagged} unassociated detections flagged for review")
    return records
