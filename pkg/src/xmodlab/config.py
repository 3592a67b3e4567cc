"""Search budgets and size caps.

All caps are configuration values with documented defaults; the CLI's
--cap flag scales the search budgets.
"""
from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Limits:
    # largest group order named_group will construct
    order_cap: int = 5000
    # backtracking node budget for hom enumeration / isomorphism search
    search_cap: int = 500_000
    # per-item budget for corpus scans (number of squares / samples per scan)
    scan_cap: int = 60
    # skip scan items whose per-level order exceeds this
    scan_order_cap: int = 200

    def scaled(self, cap: int) -> "Limits":
        return replace(self, search_cap=cap)


DEFAULT_LIMITS = Limits()
