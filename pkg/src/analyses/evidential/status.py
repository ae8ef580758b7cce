"""
Consistency between the reported AIS navigational status and observed motion.

A status is compatible with a set of kinematic classes; time spent in an
incompatible class counts as inconsistent. Statuses that say nothing about
motion (fishing, towing, reserved codes) are ignored.
"""
from typing import Dict, FrozenSet, Optional

from analyses.ais.kinematics import MotionClass, motion_segments
from analyses.ais.model import NavStatus, Track
from analyses.evidential.mass import Frame, MassFunction

STATUS_FRAME = Frame(("consistent", "inconsistent"))
DEFAULT_CAP = 0.9

_STATIONARY = frozenset({MotionClass.ANCHORED, MotionClass.DRIFTING})
_MOVING = frozenset({MotionClass.UNDERWAY, MotionClass.DRIFTING})

COMPATIBLE: Dict[NavStatus, FrozenSet[MotionClass]] = {
    NavStatus.AT_ANCHOR: _STATIONARY,
    NavStatus.MOORED: _STATIONARY,
    NavStatus.AGROUND: _STATIONARY,
    NavStatus.UNDER_WAY_USING_ENGINE: _MOVING,
    NavStatus.UNDER_WAY_SAILING: _MOVING,
    NavStatus.NOT_UNDER_COMMAND: _STATIONARY,
    NavStatus.RESTRICTED_MANOEUVRABILITY: _STATIONARY,
}


def inconsistent_fraction(track: Track, classifier_label: Optional[MotionClass] = None,
                          drift_kn: float = 3.0, anchored_kn: float = 0.5) -> Optional[float]:
    """
    Share of informative-status time whose motion class contradicts the status.

    classifier_label, when given, is the class of the whole trajectory;
    otherwise every held segment is classified from its reported speed.
    None when no segment carries an informative status.
    """
    informative = 0.0
    mismatch = 0.0
    for dt, motion, status in motion_segments(track, drift_kn, anchored_kn):
        if status is None or status not in COMPATIBLE:
            continue
        informative += dt
        observed = classifier_label if classifier_label is not None else motion
        if observed not in COMPATIBLE[status]:
            mismatch += dt
    if informative <= 0.0:
        return None
    return mismatch / informative


def check_status_consistency(track: Track, classifier_label: Optional[MotionClass] = None,
                             drift_kn: float = 3.0, anchored_kn: float = 0.5,
                             cap: float = DEFAULT_CAP) -> MassFunction:
    """
    Mass on {consistent, inconsistent}: m(inconsistent) = f * cap,
    m(consistent) = (1 - f) * cap, the rest on the whole frame. Vacuous when
    the track reports no informative status.
    """
    if not 0.0 <= cap <= 1.0:
        raise ValueError("cap must lie in [0, 1]")
    f = inconsistent_fraction(track, classifier_label, drift_kn, anchored_kn)
    if f is None:
        return MassFunction.vacuous(STATUS_FRAME)
    return MassFunction(STATUS_FRAME, {
        "inconsistent": f * cap,
        "consistent": (1.0 - f) * cap,
        "*": 1.0 - cap,
    })
