"""
Anomaly events and threat assessments as JSON-lines records, plus the
analyst intelligence CSV consumed by `intel.<flag>` rule conditions.

Event record:       {mmsi, kind, t_start, t_end, severity, evidence}
                    times ISO-8601 UTC, evidence an object with a "summary" string
Assessment record:  {mmsi, belief, plausibility, pignistic, mass, conflict,
                     contributions, fired, error}
Intel CSV:          mmsi,flag,value
"""
import logging
from pathlib import Path
from typing import Any, Dict, List, Tuple

from analyses.ais.model import RecordError, is_valid_mmsi
from analyses.anomaly.model import AnomalyEvent, AnomalyKind
from analyses.evidential.assessment import ThreatAssessment
from IO.csvRows import FieldError, data_rows, decoded, number
from IO.handler import read_jsonl
from core.errors import IngestError
from core.timeutil import format_utc, parse_utc

logger = logging.getLogger(__name__)

INTEL_HEADER = ["mmsi", "flag", "value"]


def event_to_record(e: AnomalyEvent) -> Dict[str, Any]:
    return {
        "mmsi": e.mmsi,
        "kind": e.kind.value,
        "t_start": format_utc(e.t_start),
        "t_end": format_utc(e.t_end),
        "severity": e.severity,
        "evidence": e.evidence,
    }


def event_from_record(record: Dict[str, Any]) -> AnomalyEvent:
    return AnomalyEvent(
        mmsi=int(record["mmsi"]), kind=AnomalyKind(record["kind"]),
        t_start=parse_utc(record["t_start"]), t_end=parse_utc(record["t_end"]),
        severity=float(record["severity"]), evidence=dict(record["evidence"]))


def read_events(path) -> List[AnomalyEvent]:
    """
    Raises:
        IngestError: unreadable file or malformed record
    """
    path = Path(path)
    try:
        records = read_jsonl(path)
    except (OSError, ValueError) as e:
        raise IngestError(f"cannot read events file {path}: {e}")
    events = []
    for i, record in enumerate(records, start=1):
        try:
            events.append(event_from_record(record))
        except (KeyError, TypeError, ValueError) as e:
            raise IngestError(f"{path}: record {i}: {e}")
    logger.info(f"[LOAD] {path.name}: {len(events)} events")
    return events


def assessment_to_record(a: ThreatAssessment) -> Dict[str, Any]:
    return {
        "mmsi": a.mmsi,
        "focus": a.focus,
        "belief": a.belief,
        "plausibility": a.plausibility,
        "pignistic": a.mass.pignistic(),
        "mass": a.mass.to_dict(),
        "conflict": a.conflict,
        "contributions": a.contributions,
        "fired": list(a.fired),
        "error": "",
    }


def parse_intel_csv(path) -> Tuple[Dict[int, Dict[str, str]], List[RecordError]]:
    """Analyst flags per MMSI; the last row wins for a repeated (mmsi, flag)."""
    path = Path(path)
    intel: Dict[int, Dict[str, str]] = {}
    errors: List[RecordError] = []
    for line, row in data_rows(path, INTEL_HEADER):
        try:
            row = decoded(row)
            if len(row) != 3:
                raise FieldError("parse", None, f"expected 3 fields, got {len(row)}")
            mmsi = number(row[0], "mmsi", int)
            if not is_valid_mmsi(mmsi):
                raise FieldError("range", "mmsi", f"mmsi={mmsi} is not 9 digits")
            flag, value = row[1].strip(), row[2].strip()
            if not flag:
                raise FieldError("missing", "flag", "flag is empty")
        except FieldError as e:
            errors.append(RecordError(line=line, kind=e.kind, field=e.field, message=str(e)))
            continue
        intel.setdefault(mmsi, {})[flag] = value
    logger.info(f"[LOAD] {path.name}: intel for {len(intel)} vessels, {len(errors)} rejected rows")
    return intel, errors
