"""
assess - evidential threat assessment per vessel.

Every vessel named in the anomaly events, the vessel-info file or the intel
file is assessed. A vessel whose fired rules contradict each other completely
gets a record with an error message instead of masses.

Artifacts:
- assessments.jsonl: one ThreatAssessment per vessel, ordered by MMSI
- assessment_summary.csv: belief / plausibility / pignistic probability of the focus
"""
import argparse
import logging
from typing import Dict, List

from IO.aisReader import parse_vessel_csv
from IO.eventStore import assessment_to_record, parse_intel_csv, read_events
from analyses.ais.model import VesselInfo
from analyses.anomaly.model import AnomalyEvent
from analyses.evidential.assessment import assess
from analyses.evidential.rules import load_rules
from commands.common import input_files
from core.errors import TotalConflictError
from core.interface import CommandInterface

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = ["mmsi", "name", "focus", "belief", "plausibility", "pignistic", "conflict",
                   "fired", "error"]


class AssessCommand(CommandInterface):
    name = "assess"
    help = "fuse anomaly indicators and context into per-vessel threat assessments"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--anomalies", required=True, help="anomalies.jsonl of an anomalies run")
        parser.add_argument("--vessels", help="vessel-info CSV (ownership risk, ship type)")
        parser.add_argument("--rules", help="rule file (default: evidential.rule_file, else the shipped rules)")
        parser.add_argument("--intel", help="analyst intel CSV mmsi,flag,value")

    def _rule_path(self, args, config):
        return args.rules or config.evidential.rule_file or None

    def inputs(self, args: argparse.Namespace) -> Dict[str, str]:
        return input_files(anomalies=args.anomalies, vessels=args.vessels, intel=args.intel,
                           rules=args.rules)

    def run(self, args, config, state) -> None:
        rules = load_rules(self._rule_path(args, config))
        events = read_events(args.anomalies)
        infos: Dict[int, VesselInfo] = parse_vessel_csv(args.vessels)[0] if args.vessels else {}
        intel = parse_intel_csv(args.intel)[0] if args.intel else {}

        by_mmsi: Dict[int, List[AnomalyEvent]] = {}
        for e in events:
            by_mmsi.setdefault(e.mmsi, []).append(e)
        vessels = sorted(set(by_mmsi) | set(infos) | set(intel))

        records = []
        rows = []
        for mmsi in vessels:
            info = infos.get(mmsi) or VesselInfo.unknown(mmsi)
            try:
                a = assess(mmsi, by_mmsi.get(mmsi, []), info, rules, intel.get(mmsi))
            except TotalConflictError as e:
                logger.warning(f"mmsi {mmsi}: {e}")
                records.append({"mmsi": mmsi, "error": str(e)})
                rows.append([mmsi, info.name, None, None, None, None, 1.0, "", str(e)])
                continue
            records.append(assessment_to_record(a))
            focus = a.focus
            rows.append([mmsi, info.name, focus, a.belief[focus], a.plausibility[focus],
                         a.mass.pignistic()[focus], a.conflict, ";".join(a.fired), ""])
        logger.info(f"assessed {len(vessels)} vessels with {len(rules.rules)} rules from {rules.source}")
        out = state.output
        out.write_jsonl("assessments.jsonl", records)
        out.write_csv("assessment_summary.csv", SUMMARY_COLUMNS, rows)
