"""
Evidential package - Dempster-Shafer algebra, expert rules and threat assessment.
"""
from .mass import DEFAULT_FRAME, Frame, MassFunction, combine_dempster, discount
from .rules import DEFAULT_RULE_FILE, Rule, RuleSet, load_rules, parse_rules
from .assessment import ThreatAssessment, assess, emitted_mass
from .status import STATUS_FRAME, check_status_consistency, inconsistent_fraction

__all__ = [
    'DEFAULT_FRAME', 'Frame', 'MassFunction', 'combine_dempster', 'discount',
    'DEFAULT_RULE_FILE', 'Rule', 'RuleSet', 'load_rules', 'parse_rules',
    'ThreatAssessment', 'assess', 'emitted_mass',
    'STATUS_FRAME', 'check_status_consistency', 'inconsistent_fraction',
]
