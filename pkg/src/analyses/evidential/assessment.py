"""
Threat assessment - fuse anomaly indicators and vessel context with expert rules.

Every firing rule emits its template mass scaled by the strongest matching
indicator severity (context rules at full strength), discounted by the rule's
reliability. The emitted masses are combined with Dempster's rule in rule-file
order. Each rule's contribution is the drop in belief of the focus hypothesis
when that rule alone is left out.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from analyses.ais.model import VesselInfo
from analyses.anomaly.model import AnomalyEvent
from analyses.evidential.mass import MassFunction, combine_dempster, discount
from analyses.evidential.rules import CONTEXT_KIND, Rule, RuleSet

logger = logging.getLogger(__name__)

FOCUS = "threat"


@dataclass(frozen=True)
class ThreatAssessment:
    mmsi: int
    mass: MassFunction
    belief: Dict[str, float]
    plausibility: Dict[str, float]
    conflict: float
    contributions: Dict[str, float] = field(default_factory=dict)
    fired: Tuple[str, ...] = ()

    @property
    def focus(self) -> str:
        return FOCUS if FOCUS in self.mass.frame.elements else self.mass.frame.elements[-1]


def _context_value(name: str, context: VesselInfo, intel: Mapping[str, str]) -> Optional[str]:
    if name.startswith("intel."):
        return intel.get(name[len("intel."):])
    value = getattr(context, name, None)
    return getattr(value, "value", value)


def _rule_strength(rule: Rule, indicators: Sequence[AnomalyEvent], context: VesselInfo,
                   intel: Mapping[str, str]) -> Optional[float]:
    """Severity scale of a firing rule, None when it does not fire."""
    for name, expected in rule.conditions:
        if _context_value(name, context, intel) != expected:
            return None
    if rule.kind == CONTEXT_KIND:
        return 1.0
    severities = [e.severity for e in indicators
                  if e.kind.value == rule.kind and e.severity >= rule.min_severity]
    return max(severities) if severities else None


def emitted_mass(rule: Rule, scale: float) -> MassFunction:
    """Rule template scaled by severity, then discounted by reliability."""
    frame = rule.template.frame
    masses = {k: v * scale for k, v in rule.template.focal().items() if k != frame.full}
    masses[frame.full] = 1.0 - sum(masses.values())
    return discount(MassFunction(frame, masses), rule.reliability)


def _fuse(frame, masses: Sequence[MassFunction]) -> Tuple[MassFunction, float]:
    combined = MassFunction.vacuous(frame)
    agreement = 1.0
    for m in masses:
        combined, k = combine_dempster(combined, m)
        agreement *= 1.0 - k
    return combined, 1.0 - agreement


def assess(mmsi: int, indicators: Sequence[AnomalyEvent], context: VesselInfo,
           rules: RuleSet, intel: Optional[Mapping[str, str]] = None) -> ThreatAssessment:
    """
    Fused threat assessment of one vessel.

    Raises:
        TotalConflictError: fired rules fully contradict each other
    """
    intel = dict(intel or {})
    frame = rules.frame
    fired: List[str] = []
    sources: List[MassFunction] = []
    for rule in rules.rules:
        scale = _rule_strength(rule, indicators, context, intel)
        if scale is None:
            continue
        fired.append(rule.name)
        sources.append(emitted_mass(rule, scale))

    combined, conflict = _fuse(frame, sources)
    focus = FOCUS if FOCUS in frame.elements else frame.elements[-1]
    total = combined.bel([focus])
    contributions = {}
    for i, name in enumerate(fired):
        without, _ = _fuse(frame, sources[:i] + sources[i + 1:])
        contributions[name] = total - without.bel([focus])

    result = ThreatAssessment(
        mmsi=mmsi, mass=combined,
        belief={e: combined.bel([e]) for e in frame.elements},
        plausibility={e: combined.pl([e]) for e in frame.elements},
        conflict=conflict, contributions=contributions, fired=tuple(fired))

    if conflict > 0.5:
        logger.warning(f"mmsi {mmsi}: high conflict {conflict:.3f} between fired rules {fired}")
    logger.debug(f"mmsi {mmsi}: fired {fired}, bel({focus})={total:.3f}")
    return result
