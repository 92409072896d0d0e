import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np


class CheckCategory(Enum):
    """LEMMA checks assert a theorem; the others are reported for inspection"""
    LEMMA = "lemma"
    STABILIZATION = "stabilization"
    ESTIMATE = "estimate"


def _plain(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, np.generic):
        return value.item()
    return value


@dataclass
class CheckRecord:
    """
    Outcome of one diagnostic.

    Inequality checks keep both sides in statistics/bound so a failure can be
    audited. violation is max(lhs - rhs); the check passes when it does not
    exceed slack.
    """
    name: str
    category: CheckCategory
    params: Dict[str, Any] = field(default_factory=dict)
    statistics: Dict[str, Any] = field(default_factory=dict)
    bound: Dict[str, Any] = field(default_factory=dict)
    violation: float = 0.0
    slack: float = 0.0
    constants: Dict[str, float] = field(default_factory=dict)
    note: str = ""

    @property
    def passed(self) -> bool:
        if self.category is CheckCategory.ESTIMATE:
            return True
        return bool(self.violation <= self.slack)

    @property
    def is_lemma(self) -> bool:
        return self.category is CheckCategory.LEMMA

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "category": self.category.value,
            "params": _plain(self.params),
            "statistics": _plain(self.statistics),
            "bound": _plain(self.bound),
            "violation": float(self.violation),
            "slack": self.slack,
            "passed": self.passed,
            "constants": _plain(self.constants),
            "note": self.note,
        }


@dataclass
class DiagnosticsReport:
    """All checks run against one environment up to one horizon"""
    env_fingerprint: str
    horizon: int
    environment: Dict[str, Any] = field(default_factory=dict)
    records: List[CheckRecord] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)

    def add(self, record: CheckRecord) -> CheckRecord:
        self.records.append(record)
        return record

    def get(self, name: str) -> Optional[CheckRecord]:
        return next((r for r in self.records if r.name == name), None)

    @property
    def failed_lemmas(self) -> List[CheckRecord]:
        return [r for r in self.records if r.is_lemma and not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failed_lemmas

    def constants(self) -> Dict[str, float]:
        merged: Dict[str, float] = {}
        for record in self.records:
            merged.update(record.constants)
        return merged

    def to_dict(self) -> Dict[str, Any]:
        return {
            "env_fingerprint": self.env_fingerprint,
            "horizon": self.horizon,
            "environment": _plain(self.environment),
            "config": _plain(self.config),
            "passed": self.passed,
            "note": "stabilization and estimate records are diagnostics, not proofs of boundedness",
            "checks": [r.to_dict() for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, allow_nan=False)
