from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from core.domain.value_objects.lattice_function import LatticeFunction


class KernelKind(Enum):
    FORWARD = "forward"
    REVERSED_A = "reversed_a"
    REVERSED_B = "reversed_b"
    POISSONIZED = "poissonized"

    @property
    def is_discrete(self) -> bool:
        return self is not KernelKind.POISSONIZED


@dataclass(frozen=True)
class KernelSnapshot:
    """A kernel k -> value at one time, tagged with the environment it was computed in"""
    kind: KernelKind
    time: Union[int, float]
    f: LatticeFunction
    env_fingerprint: str
    tolerance: Optional[float] = None
    truncation_order: Optional[int] = None

    @property
    def time_label(self) -> str:
        return "t" if self.kind is KernelKind.POISSONIZED else "n"

    def value_at(self, site: int) -> float:
        return self.f.value_at(site)

    def header(self) -> dict:
        """Header fields for the snapshot CSV"""
        fields = {
            "kind": self.kind.value,
            self.time_label: self.time,
            "env_fingerprint": self.env_fingerprint,
        }
        if self.tolerance is not None:
            fields["tol"] = self.tolerance
        if self.truncation_order is not None:
            fields["truncation_order"] = self.truncation_order
        return fields
