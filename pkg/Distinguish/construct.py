"""
Construct Module - Explicit asymmetric m x n matrices.
Small shapes come from a fixed table; everything else is assembled from
staircase, band and pair-base blocks by concatenation and complements, with
every concatenation precondition recorded in a ConstructionPlan.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Any, Dict, List, Optional, Tuple

from Distinguish.bitmatrix import (
    BinaryMatrix,
    columns_of_weight,
    concat_columns_checked,
    concat_rows,
    concat_rows_checked,
    flip_columns,
    normalize_low_weight,
    transpose,
    transpose_law_applies,
)
from Distinguish.complement import column_complement, row_complement
from Distinguish.cost import DEFAULT_TABLE, CostTable
from Distinguish.errors import (
    ConstructionFailed,
    Infeasible,
    InsufficientColumns,
    MemoryGuardExceeded,
    NotInTable,
    OutOfRange,
)
from Distinguish.limits import DEFAULT_LIMITS, Limits
from Distinguish.symmetry import find_symmetry

log = logging.getLogger(__name__)

CASE_SMALL_TABLE = "small_table"
CASE_COLUMN_PAD = "column_pad"
CASE_HALF_WIDTH_PAD = "half_width_pad"
CASE_STAIRCASE_PAD = "staircase_pad"
CASE_COMPLEMENT = "complement"
CASE_ROW_DIRECTION = "row_direction"
CASE_TRANSPOSE_TRICK = "transpose_trick"

# 5 x 8 seed; its 4-, 5- and 6-column prefixes are asymmetric, the
# 7-column prefix is not, so the 5 x 7 entry drops the fifth column instead
FIVE_ROW_SEED = (
    "11000100",
    "01100001",
    "00110110",
    "00011001",
    "00001010",
)

FOUR_COLUMN_SEEDS = {
    5: ("1100", "0110", "0011", "0001", "0000"),
    6: ("1100", "0110", "0011", "0001", "0010", "0000"),
    7: ("1100", "0110", "0011", "0001", "0010", "0100", "0000"),
    8: ("1100", "0100", "1000", "0001", "1010", "1110", "0111", "0000"),
}


@dataclass
class ConstructionPlan:
    """Audit record of how one witness was built."""

    case: str
    dims: Tuple[int, int]
    base: Tuple[int, int]
    checks: List[str] = field(default_factory=list)
    source: Optional["ConstructionPlan"] = None
    verified: bool = False

    @property
    def r(self) -> int:
        return self.dims[0] // 2

    @property
    def s(self) -> int:
        return self.dims[1] // 2

    def to_dict(self) -> Dict[str, Any]:
        return {
            "case": self.case,
            "dims": list(self.dims),
            "r": self.r,
            "s": self.s,
            "base": list(self.base),
            "checks": list(self.checks),
            "verified": self.verified,
            "source": self.source.to_dict() if self.source is not None else None,
        }


def staircase(m: int, cols: int) -> BinaryMatrix:
    """
    Column 1 is e_1 and column j >= 2 has ones in rows j-1 and j.
    Asymmetric for m >= 5, with cols = m or m - 1.
    """
    if m < 1:
        raise OutOfRange(f"staircase needs m >= 1, got {m}")
    if cols not in (m, m - 1):
        raise OutOfRange(f"staircase width must be m or m - 1, got {cols} for m = {m}")
    columns = [1 << (m - 1)] + [0b11 << (m - 1 - j) for j in range(1, cols)]
    return BinaryMatrix.from_columns(columns, m)


def band_matrix(r: int) -> BinaryMatrix:
    """r x r matrix whose row i is zero exactly at columns i, i+1, i+2 mod r."""
    if r < 3:
        raise OutOfRange(f"band matrix needs r >= 3, got {r}")
    full = (1 << r) - 1
    rows = []
    for i in range(r):
        row = full
        for offset in range(3):
            row &= ~(1 << (r - 1 - (i + offset) % r))
        rows.append(row)
    return BinaryMatrix.from_rows(rows, r)


def half_width(m: int) -> BinaryMatrix:
    """Asymmetric m x floor(m/2) matrix: staircase over a band, plus a zero row for odd m."""
    if m < 12:
        raise OutOfRange(f"half_width needs m >= 12, got {m}")
    r = m // 2
    lower = band_matrix(r)
    if m % 2:
        lower = concat_rows(lower, BinaryMatrix(1, r, (0,)))
    return concat_rows_checked(staircase(r, r), lower)


def half_height(n: int) -> BinaryMatrix:
    """Asymmetric floor(n/2) x n matrix: staircase beside a transposed band."""
    if n < 12:
        raise OutOfRange(f"half_height needs n >= 12, got {n}")
    s = n // 2
    left = staircase(s, s)
    if s == 6:
        # a 6-wide band has complementary rows, use weight-3 columns instead
        return pad_with_unused_weight_columns(left, n - s)
    lower = band_matrix(s)
    if n % 2:
        lower = concat_rows(lower, BinaryMatrix(1, s, (0,)))
    return concat_columns_checked(left, transpose(lower))


def _padding_weights(matrix: BinaryMatrix) -> List[int]:
    used = set(matrix.class_weights())
    return [w for w in range(1, matrix.row_count // 2 + 1) if w not in used]


def _classes_of_weight(m: int, weight: int) -> int:
    count = comb(m, weight)
    return count // 2 if 2 * weight == m else count


def pad_with_unused_weight_columns(matrix: BinaryMatrix, j: int) -> BinaryMatrix:
    """
    Append ``j`` non-isomorphic low weight columns whose weights ``matrix`` does not use.

    Columns are taken smallest weight first and in increasing order within a
    weight; at weight m/2 only representatives with a leading zero are used.

    Raises:
        InsufficientColumns: If fewer than ``j`` such columns exist
    """
    if j < 0:
        raise ValueError(f"cannot pad with {j} columns")
    if j == 0:
        return matrix
    m = matrix.row_count
    weights = _padding_weights(matrix)
    available = sum(_classes_of_weight(m, w) for w in weights)
    if j > available:
        raise InsufficientColumns(j, available)

    top = 1 << (m - 1)
    columns: List[int] = []
    for weight in weights:
        for column in columns_of_weight(m, weight):
            if 2 * weight == m and column & top:
                break
            columns.append(column)
            if len(columns) == j:
                break
        if len(columns) == j:
            break
    return concat_columns_checked(matrix, BinaryMatrix.from_columns(columns, m))


def in_small_table(m: int, n: int) -> bool:
    """Shapes covered by small_table."""
    if m == 5 and 4 <= n <= 8:
        return True
    if n == 4 and 5 <= m <= 11:
        return True
    return (m, n) == (12, 5)


def _select_columns(matrix: BinaryMatrix, indices: List[int]) -> BinaryMatrix:
    return BinaryMatrix.from_columns([matrix.columns[j] for j in indices], matrix.row_count)


@lru_cache(maxsize=None)
def small_table(m: int, n: int) -> BinaryMatrix:
    """
    Tabulated asymmetric matrices for 5 x [4, 8], [5, 11] x 4 and 12 x 5.

    Raises:
        NotInTable: For any other shape
    """
    if not in_small_table(m, n):
        raise NotInTable(m, n)
    if m == 5:
        seed = BinaryMatrix.from_strings(FIVE_ROW_SEED)
        if n == 8:
            matrix = seed
        elif n == 7:
            matrix = _select_columns(seed, [0, 1, 2, 3, 5, 6, 7])
        else:
            matrix = _select_columns(seed, list(range(n)))
    elif n == 4 and m <= 8:
        matrix = BinaryMatrix.from_strings(FOUR_COLUMN_SEEDS[m])
    elif n == 4:
        # absent rows of the (16-m)-row seed, every column complemented
        matrix = flip_columns(row_complement(small_table(16 - m, 4)), range(4))
    else:
        tall, _ = normalize_low_weight(column_complement(staircase(5, 4)))
        matrix = transpose(tall)
    if find_symmetry(matrix) is not None:
        raise ConstructionFailed(f"tabulated {m}x{n} matrix is symmetric")
    return matrix


def pair_base(n: int) -> BinaryMatrix:
    """
    (1 + C(n,2)) x n matrix: the zero row, the unit rows for coordinates
    2..n, and every pair of coordinates that are not consecutive.

    Its transpose is the set system of a path with an unmarked end, so both
    are asymmetric for n >= 5.
    """
    if n < 5:
        raise OutOfRange(f"pair base needs n >= 5, got {n}")
    bit = [1 << (n - 1 - v) for v in range(n)]
    rows = [0] + [bit[v] for v in range(1, n)]
    rows += [bit[a] | bit[b] for a in range(n) for b in range(a + 2, n)]
    return BinaryMatrix.from_rows(sorted(rows), n)


def row_direction_witness(m: int, n: int) -> Tuple[BinaryMatrix, ConstructionPlan]:
    """
    Asymmetric m x n matrix for 1 + C(n,2) <= m <= 2^(n-1), grown downward
    from the pair base.

    Rows of weight three and up are added in increasing order whenever every
    column stays strictly below m/2 ones.

    Raises:
        OutOfRange: If m is outside the supported range
        ConstructionFailed: If the greedy choice runs out of rows
    """
    base = pair_base(n)
    k = base.row_count
    if not k <= m <= 1 << (n - 1):
        raise OutOfRange(f"row-direction witness needs {k} <= m <= {1 << (n - 1)}, got {m}")
    shape = transpose(base)
    if not transpose_law_applies(shape):
        raise ConstructionFailed(f"transpose law does not apply to the {n}x{k} pair system")
    base_plan = ConstructionPlan(
        CASE_TRANSPOSE_TRICK, (k, n), (n, k),
        checks=[
            f"{n}x{k} path system is strictly low weight with row weights below {k}/2",
            "transpose of an asymmetric matrix under those conditions is asymmetric",
        ],
    )
    if m == k:
        return base, base_plan

    cap = (m - 1) // 2
    room = [cap - weight for weight in base.column_weights]
    if min(room) < 0:
        raise ConstructionFailed(f"pair base columns already exceed {cap} ones for m = {m}")
    extra: List[int] = []
    needed = m - k
    for weight in range(3, n + 1):
        for row in columns_of_weight(n, weight):
            cells = [j for j in range(n) if (row >> (n - 1 - j)) & 1]
            if all(room[j] > 0 for j in cells):
                for j in cells:
                    room[j] -= 1
                extra.append(row)
                if len(extra) == needed:
                    break
        if len(extra) == needed:
            break
    if len(extra) < needed:
        raise ConstructionFailed(f"only {len(extra)} of {needed} padding rows fit for {m}x{n}")

    matrix = concat_rows_checked(base, BinaryMatrix.from_rows(extra, n))
    plan = ConstructionPlan(
        CASE_ROW_DIRECTION, (m, n), (k, n),
        checks=[
            f"{needed} distinct rows of weight >= 3 against base row weights {{0, 1, 2}}",
            f"every column has at most {cap} ones, strictly below {m}/2",
        ],
        source=base_plan,
    )
    return matrix, plan


def feasibility_violation(m: int, n: int, table: Optional[CostTable] = None) -> Optional[str]:
    """Name the bound an m x n witness would break, or None."""
    table = table or DEFAULT_TABLE
    if m < 5:
        return f"needs m >= 5, got m = {m}"
    if n < 4:
        return f"needs n >= 4, got n = {n}"
    least = table.nu(m)
    if n < least:
        return f"needs n >= nu_{m} = {least}"
    most = (1 << (m - 1)) - least
    if n > most:
        return f"needs n <= 2^{m - 1} - nu_{m} = {most}"
    return None


def witness_is_feasible(m: int, n: int, table: Optional[CostTable] = None) -> bool:
    """
    Check nu_m <= n <= 2^(m-1) - nu_m, which holds exactly when an
    asymmetric m x n matrix exists.
    """
    return feasibility_violation(m, n, table) is None


def _padded(
    base: BinaryMatrix,
    base_plan: ConstructionPlan,
    n: int,
    case: str,
) -> Tuple[BinaryMatrix, ConstructionPlan]:
    extra = n - base.col_count
    if extra == 0:
        return base, base_plan
    low, flips = normalize_low_weight(base)
    matrix = pad_with_unused_weight_columns(low, extra)
    checks = []
    if flips:
        checks.append(f"complemented {len(flips)} heavy base columns")
    checks.append(
        f"{extra} non-isomorphic columns with weights outside {sorted(set(low.class_weights()))}"
    )
    plan = ConstructionPlan(case, matrix.shape, base.shape, checks=checks, source=base_plan)
    return matrix, plan


def _table_plan(m: int, n: int) -> ConstructionPlan:
    return ConstructionPlan(CASE_SMALL_TABLE, (m, n), (m, n), checks=["tabulated, checked on build"], verified=True)


def _small_rows(m: int, n: int) -> Tuple[BinaryMatrix, ConstructionPlan]:
    """Lower-half witnesses for m in [5, 11]."""
    if in_small_table(m, n):
        return small_table(m, n), _table_plan(m, n)
    if m == 6:
        if n == 5:
            plan = ConstructionPlan(CASE_STAIRCASE_PAD, (6, 5), (6, 5), checks=["staircase 6x5"])
            return staircase(6, 5), plan
        stairs = staircase(6, 6)
        return _padded(stairs, ConstructionPlan(CASE_STAIRCASE_PAD, (6, 6), (6, 6), checks=["staircase 6x6"]), n, CASE_STAIRCASE_PAD)
    if m == 7 and n == 5:
        base = small_table(7, 4)
        matrix = concat_columns_checked(base, BinaryMatrix(7, 1, (0,) * 7))
        plan = ConstructionPlan(
            CASE_COLUMN_PAD, (7, 5), (7, 4),
            checks=["zero column against weights {1, 2, 3}"],
            source=_table_plan(7, 4),
        )
        return matrix, plan
    if n <= m - 2:
        return _padded(small_table(m, 4), _table_plan(m, 4), n, CASE_COLUMN_PAD)
    stairs = staircase(m, m - 1)
    stairs_plan = ConstructionPlan(CASE_STAIRCASE_PAD, (m, m - 1), (m, m - 1), checks=[f"staircase {m}x{m - 1}"])
    return _padded(stairs, stairs_plan, n, CASE_STAIRCASE_PAD)


def _narrowest(m: int, limits: Limits, table: CostTable) -> Tuple[BinaryMatrix, ConstructionPlan]:
    """Asymmetric m x nu_m matrix for m >= 12."""
    n = table.nu(m)
    if in_small_table(m, n):
        return small_table(m, n), _table_plan(m, n)
    if m > 1 << (n - 1):
        source, source_plan = asymmetric_witness((1 << n) - m, n, limits, table)
        matrix = row_complement(source, limits)
        plan = ConstructionPlan(
            CASE_COMPLEMENT, (m, n), source.shape,
            checks=[f"row complement of an asymmetric {source.row_count}x{n} matrix"],
            source=source_plan,
        )
        return matrix, plan
    return row_direction_witness(m, n)


def _check_asymmetric(matrix: BinaryMatrix, plan: ConstructionPlan, limits: Limits):
    if find_symmetry(matrix, limits) is not None:
        raise ConstructionFailed(f"{plan.case} produced a symmetric {matrix.row_count}x{matrix.col_count} matrix")
    plan.verified = True


def _lower_half(m: int, n: int, limits: Limits, table: CostTable) -> Tuple[BinaryMatrix, ConstructionPlan]:
    if m <= 11:
        matrix, plan = _small_rows(m, n)
    else:
        r = m // 2
        if n < r:
            base, base_plan = _narrowest(m, limits, table)
            matrix, plan = _padded(base, base_plan, n, CASE_COLUMN_PAD)
        elif n <= m - 2:
            base = half_width(m)
            base_plan = ConstructionPlan(
                CASE_HALF_WIDTH_PAD, (m, r), (r, r),
                checks=[f"band rows of weight {r - 3} below a {r}x{r} staircase", f"column weights below {m}/2"],
            )
            matrix, plan = _padded(base, base_plan, n, CASE_HALF_WIDTH_PAD)
        else:
            base = staircase(m, m - 1)
            base_plan = ConstructionPlan(CASE_STAIRCASE_PAD, (m, m - 1), (m, m - 1), checks=[f"staircase {m}x{m - 1}"])
            matrix, plan = _padded(base, base_plan, n, CASE_STAIRCASE_PAD)
    if not plan.verified and m <= limits.verify_max_rows and n <= limits.verify_max_cols:
        _check_asymmetric(matrix, plan, limits)
    return matrix, plan


def asymmetric_witness(
    m: int,
    n: int,
    limits: Optional[Limits] = None,
    table: Optional[CostTable] = None,
    verify: bool = False,
) -> Tuple[BinaryMatrix, ConstructionPlan]:
    """
    Build an asymmetric m x n matrix.

    Args:
        m: Number of rows
        n: Number of columns
        limits: Memory and verification guards
        table: Cost memo used for the feasibility bounds
        verify: Re-check the final matrix with the symmetry search

    Returns:
        Tuple of (matrix, plan)

    Raises:
        Infeasible: If no asymmetric m x n matrix exists
        MemoryGuardExceeded: If m * n is above the configured cell limit
    """
    limits = limits or DEFAULT_LIMITS
    table = table or DEFAULT_TABLE
    reason = feasibility_violation(m, n, table)
    if reason is not None:
        raise Infeasible(m, n, reason)
    if m * n > limits.max_witness_cells:
        raise MemoryGuardExceeded(f"{m}x{n} witness exceeds {limits.max_witness_cells} cells")

    if n > 1 << (m - 2):
        partner = (1 << (m - 1)) - n
        source, source_plan = _lower_half(m, partner, limits, table)
        matrix = column_complement(source, limits)
        plan = ConstructionPlan(
            CASE_COMPLEMENT, (m, n), source.shape,
            checks=[f"column-class complement of an asymmetric {m}x{partner} matrix"],
            source=source_plan,
        )
    else:
        matrix, plan = _lower_half(m, n, limits, table)

    if verify and not plan.verified:
        _check_asymmetric(matrix, plan, limits)
    log.info("built %dx%d witness via %s", m, n, plan.case)
    return matrix, plan
