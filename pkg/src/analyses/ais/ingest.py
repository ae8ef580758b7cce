"""
Track assembly - group validated AIS reports into per-vessel tracks.

Duplicate policy:
- same (mmsi, t) and same position: collapsed silently
- same (mmsi, t) with a different position: first in canonical order kept, a
  RecordError of kind "duplicate" is reported
- same position repeated within dedup_window seconds: collapsed to the earliest

Canonical order is (mmsi, t, lat, lon, sog, cog, heading, nav_status), which
makes the result independent of the input permutation.

External Libraries Used:
- itertools (Python Standard Library) - Grouping by MMSI
- logging (Python Standard Library) - Conflict reporting
"""
import logging
from itertools import groupby
from typing import Dict, List, Mapping, Optional

from analyses.ais.model import AisPoint, RecordError, Track, VesselInfo

logger = logging.getLogger(__name__)


def _canonical_key(p: AisPoint):
    return (p.mmsi, p.t, p.pos.lat, p.pos.lon, p.sog, p.cog,
            -1.0 if p.heading is None else p.heading,
            -1 if p.nav_status is None else int(p.nav_status))


def build_tracks(points: List[AisPoint],
                 dedup_window: float = 0.0,
                 infos: Optional[Mapping[int, VesselInfo]] = None,
                 errors: Optional[List[RecordError]] = None) -> List[Track]:
    """
    Build one Track per MMSI, ordered by MMSI.

    Args:
        points: validated reports in any order
        dedup_window: seconds within which a repeated identical position collapses
        infos: optional vessel context keyed by MMSI
        errors: optional list that receives duplicate-conflict RecordErrors

    Returns:
        Tracks sorted by MMSI, points strictly increasing in time
    """
    if dedup_window < 0:
        raise ValueError("dedup_window must be >= 0")
    infos = infos or {}
    tracks: List[Track] = []
    collapsed = 0

    for mmsi, group in groupby(sorted(points, key=_canonical_key), key=lambda p: p.mmsi):
        kept: List[AisPoint] = []
        for p in group:
            if kept:
                last = kept[-1]
                if p.t == last.t:
                    collapsed += 1
                    if p.pos != last.pos:
                        message = (f"mmsi {mmsi} t={p.t}: conflicting position "
                                   f"({p.pos.lat}, {p.pos.lon}) dropped, kept ({last.pos.lat}, {last.pos.lon})")
                        logger.warning(message)
                        if errors is not None:
                            errors.append(RecordError(line=None, kind="duplicate", field="timestamp",
                                                      message=message))
                    continue
                if p.pos == last.pos and p.t - last.t <= dedup_window:
                    collapsed += 1
                    continue
            kept.append(p)
        tracks.append(Track(mmsi=mmsi, points=tuple(kept),
                            info=infos.get(mmsi, VesselInfo.unknown(mmsi))))

    logger.info(f"Built {len(tracks)} tracks from {len(points)} points ({collapsed} collapsed)")
    return tracks


def tracks_by_mmsi(tracks: List[Track]) -> Dict[int, Track]:
    return {track.mmsi: track for track in tracks}
