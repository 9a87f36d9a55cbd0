"""
Limits Module - Guards and budgets shared by the search, construction and oracle code.
"""

from dataclasses import dataclass, fields


@dataclass(frozen=True)
class Limits:
    """Resource limits. Every guarded operation takes one of these."""

    search_budget: int = 10 ** 8
    max_exhaustive_bits: int = 24
    oracle_max_rows: int = 5
    oracle_max_cols: int = 5
    complement_width_guard: int = 30
    aut_max_dim: int = 8
    max_witness_cells: int = 1 << 24
    verify_max_rows: int = 12
    verify_max_cols: int = 4096
    workers: int = 1
    progress: bool = False

    def __post_init__(self):
        for entry in fields(self):
            value = getattr(self, entry.name)
            if entry.name == "progress":
                if not isinstance(value, bool):
                    raise TypeError(f"progress must be a bool, got {type(value).__name__}")
                continue
            if isinstance(value, bool) or not isinstance(value, int):
                raise TypeError(f"{entry.name} must be an int, got {type(value).__name__}")
            if value < 1:
                raise ValueError(f"{entry.name} must be positive, got {value}")


DEFAULT_LIMITS = Limits()
