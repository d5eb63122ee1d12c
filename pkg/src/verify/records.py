from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

DEFAULT_TOLERANCES: Dict[str, float] = {
    "heat": 1e-8,
    "subset": 1e-9,
    "buser": 1e-9,
    "curvature": 1e-8,
    "spectral": 1e-8,
    "oracle": 1e-5,
}


def c_k(K: float, t: float) -> float:
    """∫_0^t 2 e^{2Ks} ds."""
    if abs(K) < 1e-12:
        return 2.0 * t
    return float(np.expm1(2.0 * K * t) / K)


@dataclass(frozen=True)
class CheckRecord:
    name: str
    instance: str
    lhs: Optional[float]
    rhs: Optional[float]
    slack: Optional[float]
    tolerance: float
    passed: bool
    required: bool = True
    skipped: bool = False
    reason: str = ""
    details: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "instance": self.instance,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "required": self.required,
            "skipped": self.skipped,
            "reason": self.reason,
            "details": self.details,
        }


def make_record(
    name: str,
    instance: str,
    lhs: float,
    rhs: float,
    slack: float,
    tolerance: float,
    required: bool = True,
    **details,
) -> CheckRecord:
    return CheckRecord(
        name=name,
        instance=instance,
        lhs=float(lhs),
        rhs=float(rhs),
        slack=float(slack),
        tolerance=tolerance,
        passed=bool(slack >= -tolerance),
        required=required,
        details=details,
    )


def skipped_record(name: str, instance: str, reason: str, required: bool = True) -> CheckRecord:
    return CheckRecord(
        name=name, instance=instance, lhs=None, rhs=None, slack=None, tolerance=0.0,
        passed=True, required=required, skipped=True, reason=reason,
    )


@dataclass
class VerificationReport:
    records: List[CheckRecord]
    seed: int
    corpus: str
    corpus_description: List[str] = field(default_factory=list)

    @property
    def failures(self) -> List[CheckRecord]:
        return [r for r in self.records if r.required and not r.skipped and not r.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        checked = [r for r in self.records if not r.skipped]
        return {
            "corpus": self.corpus,
            "seed": self.seed,
            "instances": list(self.corpus_description),
            "total": len(self.records),
            "checked": len(checked),
            "passed": sum(1 for r in checked if r.passed),
            "failed_required": len(self.failures),
            "failed_informational": sum(1 for r in checked if not r.passed and not r.required),
            "skipped": len(self.records) - len(checked),
            "all_pass": self.ok,
        }
