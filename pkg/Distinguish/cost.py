"""
Cost Module - Exact cost of 2-distinguishing the hypercube.
mu_n = rho(Q_n) is the fewest rows of an asymmetric matrix with n columns and
nu_m the fewest columns of one with m rows. Each is computed from the other
through interval membership, so arbitrarily large n resolve in a few steps.
"""

import logging
from typing import Any, Callable, Dict, List, Optional, Tuple

from Distinguish.errors import (
    FormatError,
    NotTwoDistinguishable,
    OutOfRange,
    RecursionInconsistency,
)

log = logging.getLogger(__name__)

BASE_RHO = 5    # rho(Q_n) for n in [4, 12]
BASE_NU = 4     # nu_m for m in [5, 11]
CACHE_FORMAT = 1


def _check_int(value: Any, name: str):
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an int, got {type(value).__name__}")


def ceil_log2(n: int) -> int:
    """Exact ceil(log2 n) for n >= 1."""
    _check_int(n, "n")
    if n < 1:
        raise OutOfRange(f"log2 needs n >= 1, got {n}")
    return (n - 1).bit_length()


class _Memo(dict):
    """Dictionary that computes and stores missing entries on lookup."""

    def __init__(self, compute: Callable[[int], int]):
        super().__init__()
        self.compute = compute

    def __missing__(self, key: int) -> int:
        value = self[key] = self.compute(key)
        return value


class CostTable:
    """Memoized mu_n and nu_m values."""

    def __init__(self):
        self.mu_memo = _Memo(self._compute_mu)
        self.nu_memo = _Memo(self._compute_nu)

    def rho(self, n: int) -> int:
        """
        Cost of 2-distinguishing Q_n, the fewest rows of an asymmetric
        matrix with n columns.

        Args:
            n: Dimension, any int >= 4

        Returns:
            rho(Q_n)

        Raises:
            NotTwoDistinguishable: If n <= 3
        """
        _check_int(n, "n")
        if n <= 3:
            raise NotTwoDistinguishable(n)
        return self.mu_memo[n]

    def nu(self, m: int) -> int:
        """
        Fewest columns of an asymmetric matrix with m rows.

        Args:
            m: Row count, any int >= 5

        Returns:
            nu_m

        Raises:
            OutOfRange: If m <= 4
        """
        _check_int(m, "m")
        if m <= 4:
            raise OutOfRange(f"nu_m is defined for m >= 5, got {m}")
        return self.nu_memo[m]

    def rho_interval(self, m: int) -> Tuple[int, int]:
        """The n for which rho(Q_n) = m, as (lo, hi)."""
        _check_int(m, "m")
        if m < 6:
            raise OutOfRange(f"rho intervals start at m = 6, got {m}")
        return (1 << (m - 2)) - self.nu(m - 1) + 1, (1 << (m - 1)) - self.nu(m)

    def nu_interval(self, n: int) -> Tuple[int, int]:
        """The m for which nu_m = n, as (lo, hi)."""
        _check_int(n, "n")
        if n < 5:
            raise OutOfRange(f"nu intervals start at n = 5, got {n}")
        return (1 << (n - 1)) - self.rho(n - 1) + 1, (1 << n) - self.rho(n)

    def _compute_mu(self, n: int) -> int:
        if n <= 12:
            return BASE_RHO
        first = 1 + ceil_log2(n)
        matches = []
        for m in (first, first + 1):
            if m < 6:
                continue
            lo, hi = self.rho_interval(m)
            if lo <= n <= hi:
                matches.append(m)
        if len(matches) != 1:
            raise RecursionInconsistency(f"n = {n} lies in {len(matches)} rho intervals: {matches}")
        value = matches[0]
        if value not in (1 + ceil_log2(n), 2 + ceil_log2(n)):
            raise RecursionInconsistency(f"rho({n}) = {value} breaks the two-value bound")
        return value

    def _compute_nu(self, m: int) -> int:
        if m <= 11:
            return BASE_NU
        first = m.bit_length()
        matches = []
        for n in (first - 1, first, first + 1):
            if n < 5:
                continue
            lo, hi = self.nu_interval(n)
            if lo <= m <= hi:
                matches.append(n)
        if len(matches) != 1:
            raise RecursionInconsistency(f"m = {m} lies in {len(matches)} nu intervals: {matches}")
        value = matches[0]
        if value > m // 2:
            raise RecursionInconsistency(f"nu({m}) = {value} exceeds floor(m/2)")
        return value

    def closed_form_segments(self, max_m: int) -> List[Tuple[int, int, int]]:
        """
        Maximal ranges of n on which rho(Q_n) = 1 + ceil(log2(n + nu)).

        Args:
            max_m: Last rho value whose interval is included

        Returns:
            List of (lo, hi, nu) triples in increasing order of n
        """
        segments: List[Tuple[int, int, int]] = []
        for m in range(6, max_m + 1):
            lo, hi = self.rho_interval(m)
            shift = self.nu(m)
            if segments and segments[-1][2] == shift and segments[-1][1] + 1 == lo:
                segments[-1] = (segments[-1][0], hi, shift)
            else:
                segments.append((lo, hi, shift))
        return segments

    def to_dict(self) -> Dict[str, Any]:
        """Cache form with decimal-string keys, readable by from_dict."""
        return {
            "format": CACHE_FORMAT,
            "nu": {str(m): self.nu_memo[m] for m in sorted(self.nu_memo)},
            "mu": {str(n): self.mu_memo[n] for n in sorted(self.mu_memo)},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CostTable":
        """
        Rebuild a table from its cache form. Every entry is recomputed and
        must match, so a stale or edited cache never changes a result.

        Args:
            data: Dictionary produced by to_dict

        Returns:
            CostTable holding the cached entries

        Raises:
            FormatError: On a wrong version, malformed key or wrong value
        """
        if not isinstance(data, dict) or data.get("format") != CACHE_FORMAT:
            raise FormatError(f"unsupported cost cache format: {data.get('format') if isinstance(data, dict) else data!r}")
        table = cls()
        for key, value in _entries(data, "mu"):
            if key < 4:
                raise FormatError(f"cached mu_{key} is below n = 4")
            actual = table.mu_memo[key]
            if value != actual:
                raise FormatError(f"cached mu_{key} = {value}, recomputed {actual}")
        for key, value in _entries(data, "nu"):
            if key < 5:
                raise FormatError(f"cached nu_{key} is below m = 5")
            actual = table.nu_memo[key]
            if value != actual:
                raise FormatError(f"cached nu_{key} = {value}, recomputed {actual}")
        log.debug("loaded %d mu and %d nu entries", len(table.mu_memo), len(table.nu_memo))
        return table


def _entries(data: Dict[str, Any], name: str):
    section = data.get(name, {})
    if not isinstance(section, dict):
        raise FormatError(f"cache section {name!r} must be an object")
    for key, value in section.items():
        if not isinstance(key, str) or not (key.isascii() and key.isdigit()):
            raise FormatError(f"cache key {key!r} in {name!r} is not a decimal integer")
        if isinstance(value, bool) or not isinstance(value, int):
            raise FormatError(f"cache value for {name}[{key}] is not an integer")
        yield int(key), value


DEFAULT_TABLE = CostTable()


def rho(n: int, table: Optional[CostTable] = None) -> int:
    """rho(Q_n) from ``table``, or from the shared module table."""
    return (table or DEFAULT_TABLE).rho(n)


def nu(m: int, table: Optional[CostTable] = None) -> int:
    """nu_m from ``table``, or from the shared module table."""
    return (table or DEFAULT_TABLE).nu(m)


def rho_interval(m: int, table: Optional[CostTable] = None) -> Tuple[int, int]:
    return (table or DEFAULT_TABLE).rho_interval(m)


def nu_interval(n: int, table: Optional[CostTable] = None) -> Tuple[int, int]:
    return (table or DEFAULT_TABLE).nu_interval(n)


def closed_form_segments(max_m: int, table: Optional[CostTable] = None) -> List[Tuple[int, int, int]]:
    return (table or DEFAULT_TABLE).closed_form_segments(max_m)


def det_qn(n: int) -> int:
    """Determining number of Q_n, 1 + ceil(log2 n)."""
    _check_int(n, "n")
    if n < 2:
        raise OutOfRange(f"Det(Q_n) is computed for n >= 2, got {n}")
    return 1 + ceil_log2(n)
