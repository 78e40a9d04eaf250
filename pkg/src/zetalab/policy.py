"""Resource policy: the size bounds that keep every computation desk-scale.

The bounds are plain configuration values.  ``ZETALAB_BUDGET`` in the
environment overrides the enumeration budget of the default policy.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import SizeExceeded


@dataclass(frozen=True)
class Policy:
    max_prime: int = 2**31
    max_field: int = 2**20          # q bound for table-backed / enumerating operations
    budget: int = 10**8             # points enumerated per count
    max_rh_degree: int = 24
    max_tau: int = 10**5

    def with_budget(self, budget: int) -> "Policy":
        if budget < 1:
            raise ValueError("budget must be >= 1")
        return replace(self, budget=budget)

    def check_field(self, q: int) -> None:
        if q > self.max_field:
            raise SizeExceeded(f"field size {q} exceeds policy bound {self.max_field}")

    def check_budget(self, points: int) -> None:
        if points > self.budget:
            raise SizeExceeded(f"{points} points to enumerate exceeds budget {self.budget}")


def _from_env() -> Policy:
    raw = os.environ.get("ZETALAB_BUDGET")
    if not raw:
        return Policy()
    return Policy().with_budget(int(float(raw)))


DEFAULT_POLICY = _from_env()


def resolve(policy: Policy | None) -> Policy:
    return DEFAULT_POLICY if policy is None else policy
