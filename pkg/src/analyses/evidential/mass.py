"""
Dempster-Shafer evidence algebra on small frames.

Subsets of a frame are bitmasks over its ordered elements (bit i = element i),
and mass functions keep only their non-zero focal sets.

Contains:
- Frame: ordered hypotheses with subset <-> bitmask conversion
- MassFunction: normalised basic belief assignment with bel / pl / pignistic
- discount: reliability discounting
- combine_dempster: Dempster's rule, conflict reported separately
"""
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple, Union

from core.errors import TotalConflictError

SUM_TOLERANCE = 1e-9
FULL_LABEL = "*"

Subset = Union[int, str, Iterable[str]]


@dataclass(frozen=True)
class Frame:
    elements: Tuple[str, ...]

    def __post_init__(self):
        elements = tuple(self.elements)
        if len(elements) < 2:
            raise ValueError("a frame needs at least two hypotheses")
        if len(set(elements)) != len(elements):
            raise ValueError(f"frame elements are not unique: {elements}")
        if len(elements) > 16:
            raise ValueError("frames are limited to 16 hypotheses")
        for e in elements:
            if not e or "+" in e or e == FULL_LABEL or not e.replace("_", "").isalnum():
                raise ValueError(f"invalid hypothesis name {e!r}")
        object.__setattr__(self, "elements", elements)

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def mask(self, subset: Subset) -> int:
        """Bitmask of a subset given as a mask, a label ('a+b', '*') or names."""
        if isinstance(subset, int):
            if not 0 <= subset <= self.full:
                raise ValueError(f"subset mask {subset} outside frame")
            return subset
        if isinstance(subset, str):
            if subset.strip() == FULL_LABEL:
                return self.full
            subset = [s.strip() for s in subset.split("+")]
        mask = 0
        for name in subset:
            try:
                mask |= 1 << self.elements.index(name)
            except ValueError:
                raise ValueError(f"{name!r} is not in frame {self.elements}")
        return mask

    def names(self, mask: int) -> Tuple[str, ...]:
        return tuple(e for i, e in enumerate(self.elements) if mask >> i & 1)

    def label(self, mask: int) -> str:
        return FULL_LABEL if mask == self.full else "+".join(self.names(mask))


DEFAULT_FRAME = Frame(("benign", "suspicious", "threat"))


class MassFunction:
    """Normalised mass function: masses sum to 1, the empty set carries none."""

    __slots__ = ("frame", "_masses")

    def __init__(self, frame: Frame, masses: Mapping[Subset, float]):
        self.frame = frame
        focal: Dict[int, float] = {}
        for subset, value in masses.items():
            mask = frame.mask(subset)
            value = float(value)
            if mask == 0:
                if value != 0.0:
                    raise ValueError("the empty set cannot carry mass")
                continue
            if not -SUM_TOLERANCE <= value <= 1.0 + SUM_TOLERANCE:
                raise ValueError(f"mass {value} outside [0, 1]")
            if value > 0.0:
                focal[mask] = focal.get(mask, 0.0) + value
        total = sum(focal.values())
        if abs(total - 1.0) > SUM_TOLERANCE:
            raise ValueError(f"masses sum to {total}, not 1")
        self._masses = focal

    @classmethod
    def vacuous(cls, frame: Frame) -> "MassFunction":
        return cls(frame, {frame.full: 1.0})

    def __getitem__(self, subset: Subset) -> float:
        return self._masses.get(self.frame.mask(subset), 0.0)

    def focal(self) -> Dict[int, float]:
        return dict(self._masses)

    def is_vacuous(self) -> bool:
        return self._masses == {self.frame.full: 1.0}

    def bel(self, subset: Subset) -> float:
        mask = self.frame.mask(subset)
        return sum(v for a, v in self._masses.items() if a & ~mask == 0)

    def pl(self, subset: Subset) -> float:
        mask = self.frame.mask(subset)
        return sum(v for a, v in self._masses.items() if a & mask)

    def pignistic(self) -> Dict[str, float]:
        """Pignistic probability of every singleton."""
        prob = {e: 0.0 for e in self.frame.elements}
        for mask, value in self._masses.items():
            names = self.frame.names(mask)
            for name in names:
                prob[name] += value / len(names)
        return prob

    def approx_equal(self, other: "MassFunction", tol: float = 1e-12) -> bool:
        if self.frame != other.frame:
            return False
        keys = set(self._masses) | set(other._masses)
        return all(abs(self._masses.get(k, 0.0) - other._masses.get(k, 0.0)) <= tol for k in keys)

    def to_dict(self) -> Dict[str, float]:
        """Focal sets by label, in mask order."""
        return {self.frame.label(k): self._masses[k] for k in sorted(self._masses)}

    def __repr__(self) -> str:
        return f"MassFunction({self.to_dict()})"


def discount(m: MassFunction, reliability: float) -> MassFunction:
    """Scale every focal mass by reliability and move the rest to the full frame."""
    if not 0.0 <= reliability <= 1.0:
        raise ValueError(f"reliability {reliability} outside [0, 1]")
    full = m.frame.full
    masses = {k: v * reliability for k, v in m.focal().items() if k != full}
    masses[full] = 1.0 - sum(masses.values())
    return MassFunction(m.frame, masses)


def combine_dempster(m1: MassFunction, m2: MassFunction) -> Tuple[MassFunction, float]:
    """
    Dempster's rule of combination.

    Returns:
        (combined mass, conflict) with conflict the mass of the empty intersection

    Raises:
        ValueError: frames differ
        TotalConflictError: the two bodies of evidence fully contradict each other
    """
    if m1.frame != m2.frame:
        raise ValueError("cannot combine mass functions on different frames")
    combined: Dict[int, float] = {}
    conflict = 0.0
    for a, va in m1.focal().items():
        for b, vb in m2.focal().items():
            inter = a & b
            if inter:
                combined[inter] = combined.get(inter, 0.0) + va * vb
            else:
                conflict += va * vb
    norm = 1.0 - conflict
    if norm <= 1e-12:
        raise TotalConflictError(f"total conflict between {m1} and {m2}")
    return MassFunction(m1.frame, {k: v / norm for k, v in combined.items()}), conflict
