"""
Scenarios package - synthetic Baltic, Shetland and Adriatic case studies
(real AIS archives of such areas are not freely available).
"""
from typing import Callable, Dict

from .synth import Scenario
from . import adriatic, baltic, shetland

SCENARIOS: Dict[str, Callable[[int], Scenario]] = {
    "baltic": baltic.generate,
    "shetland": shetland.generate,
    "adriatic": adriatic.generate,
}

__all__ = ['SCENARIOS', 'Scenario']
