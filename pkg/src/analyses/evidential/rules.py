"""
Declarative expert rules.

Rule file grammar (one statement per line, '#' starts a comment):

    FRAME <hypothesis> <hypothesis> ...
    RULE <name> WHEN <kind> [severity>=<x>] [<field>=<value> ...] EMIT {<subset>:<mass>, ...} RELIABILITY <r>

- <kind> is an anomaly kind (ais_gap, loiter_near_uci, ...) or "context" for
  rules that fire on vessel context alone
- <field> is ownership_risk, ship_type or intel.<flag>
- <subset> joins hypotheses with '+', '*' is the whole frame
- EMIT masses must not exceed 1 in total; the remainder goes to the whole frame
- FRAME is optional (default: benign suspicious threat) and must precede every RULE
"""
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from analyses.ais.model import OwnershipRisk, ShipType
from analyses.anomaly.model import AnomalyKind
from analyses.evidential.mass import DEFAULT_FRAME, SUM_TOLERANCE, Frame, MassFunction
from core.errors import EmptyRuleSetError, IngestError, RuleSyntaxError

logger = logging.getLogger(__name__)

CONTEXT_KIND = "context"
DEFAULT_RULE_FILE = Path(__file__).with_name("default_rules.txt")

_RULE_RE = re.compile(
    r"^RULE\s+(?P<name>[A-Za-z0-9_\-]+)\s+WHEN\s+(?P<kind>\S+)(?P<conds>(?:\s+[^\s{]+)*?)"
    r"\s+EMIT\s+\{(?P<emit>[^}]*)\}\s+RELIABILITY\s+(?P<rel>\S+)\s*$")

_CONTEXT_VALUES = {
    "ownership_risk": {r.value for r in OwnershipRisk},
    "ship_type": {t.value for t in ShipType},
}


@dataclass(frozen=True)
class Rule:
    name: str
    kind: str
    min_severity: float
    conditions: Tuple[Tuple[str, str], ...]
    template: MassFunction
    reliability: float
    line: int = 0


@dataclass(frozen=True)
class RuleSet:
    frame: Frame
    rules: Tuple[Rule, ...]
    source: str = "<memory>"


def _parse_emit(frame: Frame, body: str) -> MassFunction:
    masses: Dict[int, float] = {}
    for item in filter(None, (s.strip() for s in body.split(","))):
        if ":" not in item:
            raise ValueError(f"expected subset:mass, got {item!r}")
        subset, value = item.rsplit(":", 1)
        mask = frame.mask(subset.strip())
        if mask == 0:
            raise ValueError("cannot emit mass on the empty set")
        mass = float(value)
        if mass < 0:
            raise ValueError(f"negative mass {mass}")
        masses[mask] = masses.get(mask, 0.0) + mass
    if not masses:
        raise ValueError("EMIT lists no masses")
    total = sum(masses.values())
    if total > 1.0 + SUM_TOLERANCE:
        raise ValueError(f"EMIT masses sum to {total} > 1")
    masses[frame.full] = masses.get(frame.full, 0.0) + max(0.0, 1.0 - total)
    return MassFunction(frame, masses)


def _parse_condition(token: str) -> Tuple[str, Optional[float], Optional[Tuple[str, str]]]:
    if token.startswith("severity>="):
        return "severity", float(token[len("severity>="):]), None
    if "=" not in token:
        raise ValueError(f"unknown condition {token!r}")
    field, value = token.split("=", 1)
    if field.startswith("intel."):
        if len(field) == len("intel.") or not value:
            raise ValueError(f"malformed intel condition {token!r}")
        return "field", None, (field, value)
    if field not in _CONTEXT_VALUES:
        raise ValueError(f"unknown context field {field!r}")
    if value not in _CONTEXT_VALUES[field]:
        raise ValueError(f"{field} has no value {value!r}")
    return "field", None, (field, value)


def parse_rules(text: str, source: str = "<memory>") -> RuleSet:
    """
    Parse rule-file text.

    Raises:
        RuleSyntaxError: malformed line (names source and line)
        EmptyRuleSetError: no RULE statements
    """
    frame = DEFAULT_FRAME
    rules: List[Rule] = []
    names = set()
    kinds = {k.value for k in AnomalyKind} | {CONTEXT_KIND}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("FRAME"):
                if rules:
                    raise ValueError("FRAME must precede every RULE")
                frame = Frame(tuple(line.split()[1:]))
                continue
            match = _RULE_RE.match(line)
            if match is None:
                raise ValueError("expected 'RULE <name> WHEN <kind> ... EMIT {...} RELIABILITY <r>'")
            name = match["name"]
            if name in names:
                raise ValueError(f"rule {name!r} defined twice")
            kind = match["kind"]
            if kind not in kinds:
                raise ValueError(f"unknown indicator kind {kind!r}")
            min_severity = 0.0
            conditions = []
            for token in match["conds"].split():
                what, threshold, condition = _parse_condition(token)
                if what == "severity":
                    if kind == CONTEXT_KIND:
                        raise ValueError("context rules take no severity condition")
                    if not 0.0 <= threshold <= 1.0:
                        raise ValueError(f"severity threshold {threshold} outside [0, 1]")
                    min_severity = threshold
                else:
                    conditions.append(condition)
            reliability = float(match["rel"])
            if not 0.0 <= reliability <= 1.0:
                raise ValueError(f"reliability {reliability} outside [0, 1]")
            template = _parse_emit(frame, match["emit"])
        except ValueError as e:
            raise RuleSyntaxError(source, number, str(e))
        names.add(name)
        rules.append(Rule(name=name, kind=kind, min_severity=min_severity,
                          conditions=tuple(conditions), template=template,
                          reliability=reliability, line=number))
    if not rules:
        raise EmptyRuleSetError(f"rule file {source} declares no rules")
    logger.debug(f"[LOAD] {len(rules)} rules from {source} on frame {frame.elements}")
    return RuleSet(frame=frame, rules=tuple(rules), source=source)


def load_rules(path=None) -> RuleSet:
    """Read a rule file; the shipped illustrative rules when path is None."""
    path = Path(path) if path else DEFAULT_RULE_FILE
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise IngestError(f"cannot read rule file {path}: {e}")
    return parse_rules(text, str(path))
