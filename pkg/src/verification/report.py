"""
Verification report accumulated over seeded trials.
"""

import math
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional

from config.settings import VIOLATION_RTOL

logger = logging.getLogger(__name__)

@dataclass
class VerifyReport:
    """
    Counts of checked inequalities and violations, with the worst relative slack.

    A margin is (allowed - observed) / scale, so negative margins mean the
    inequality failed; a trial is a violation when its margin is below -rtol.
    """
    suite: str
    seed: int
    config: Dict[str, Any] = field(default_factory=dict)
    rtol: float = VIOLATION_RTOL
    trials: int = 0
    violations: int = 0
    worst_margin: float = math.inf
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    details: List[Dict[str, Any]] = field(default_factory=list)

    @staticmethod
    def _scale(value: float, bound: float, scale: Optional[float]) -> float:
        if scale is not None and scale > 0.0:
            return scale
        return max(abs(value), abs(bound))

    def _record(self, margin: float, context: Dict[str, Any]) -> float:
        self.trials += 1
        self.worst_margin = min(self.worst_margin, margin)
        if margin < -self.rtol:
            self.violations += 1
            logger.error(f"[{self.suite}] violation (margin {margin:.3e}): {context}")
        return margin

    def record_upper(self, value: float, bound: float, scale: Optional[float] = None,
                     **context: Any) -> float:
        """
        Check value <= bound and record the relative margin.

        Args:
            value: Observed quantity
            bound: Claimed upper bound
            scale: Normalising scale for the margin (defaults to max(|value|, |bound|))
            **context: Fields logged with a violation

        Returns:
            The margin (bound - value) / scale
        """
        s = self._scale(value, bound, scale)
        margin = 0.0 if s == 0.0 else (bound - value) / s
        return self._record(margin, dict(context, value=value, bound=bound))

    def record_lower(self, value: float, bound: float, scale: Optional[float] = None,
                     **context: Any) -> float:
        """Check value >= bound; see record_upper."""
        s = self._scale(value, bound, scale)
        margin = 0.0 if s == 0.0 else (value - bound) / s
        return self._record(margin, dict(context, value=value, bound=bound))

    def record_witness(self, label: str, achieved: float, bound: float) -> float:
        """
        Record how close a near-extremal law gets to the bound.

        Returns:
            achieved / bound (1 when both are 0)
        """
        fraction = 1.0 if bound == 0.0 and achieved == 0.0 else achieved / bound
        self.witnesses.append({'label': label, 'achieved': achieved, 'bound': bound,
                               'fraction': fraction})
        return fraction

    @property
    def passed(self) -> bool:
        return self.violations == 0

    @property
    def best_witness_fraction(self) -> Optional[float]:
        if not self.witnesses:
            return None
        return max(w['fraction'] for w in self.witnesses)

    def merge(self, other: 'VerifyReport') -> 'VerifyReport':
        """Fold another report's counts, witnesses and details into this one."""
        self.trials += other.trials
        self.violations += other.violations
        self.worst_margin = min(self.worst_margin, other.worst_margin)
        self.witnesses.extend(other.witnesses)
        self.details.extend(other.details)
        return self

    @classmethod
    def combine(cls, suite: str, seed: int, parts: Iterable['VerifyReport'],
                config: Optional[Dict[str, Any]] = None) -> 'VerifyReport':
        combined = cls(suite=suite, seed=seed, config=dict(config or {}))
        runs = []
        for part in parts:
            combined.merge(part)
            runs.append(dict(part.config, trials=part.trials, violations=part.violations))
        combined.config['runs'] = runs
        return combined

    def to_dict(self) -> Dict[str, Any]:
        return {
            'suite': self.suite,
            'seed': self.seed,
            'rtol': self.rtol,
            'trials': self.trials,
            'violations': self.violations,
            'worst_margin': None if math.isinf(self.worst_margin) else self.worst_margin,
            'passed': self.passed,
            'config': self.config,
            'witnesses': self.witnesses,
            'details': self.details,
        }

    def summary(self) -> Dict[str, Any]:
        """Fields printed on standard output by the CLI."""
        summary = {
            'suite': self.suite,
            'seed': self.seed,
            'trials': self.trials,
            'violations': self.violations,
            'worst_margin': 'n/a' if math.isinf(self.worst_margin) else self.worst_margin,
        }
        if self.witnesses:
            summary['best_witness_fraction'] = self.best_witness_fraction
            summary['worst_witness_fraction'] = min(w['fraction'] for w in self.witnesses)
        return summary
