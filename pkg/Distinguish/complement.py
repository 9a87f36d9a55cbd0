"""
Complement Module - Column-class and row complements of binary matrices.
A matrix, its column-class complement and its row complement are either all
symmetric or all asymmetric.
"""

from typing import Optional

from Distinguish.bitmatrix import BinaryMatrix
from Distinguish.errors import DuplicateRowsInInput, IsomorphicColumnsInInput, WidthGuardExceeded
from Distinguish.limits import DEFAULT_LIMITS, Limits


def canonical_representative(column: int, length: int) -> int:
    """
    Pick the lexicographically smaller of a column and its complement.

    Args:
        column: Column bits, top entry in the most significant bit
        length: Number of entries in the column

    Returns:
        The representative of the column's isomorphism class
    """
    if length < 0 or column < 0 or column >> length:
        raise ValueError(f"{column!r} is not a {length}-bit column")
    mask = (1 << length) - 1
    return min(column, column ^ mask)


def column_complement(matrix: BinaryMatrix, limits: Optional[Limits] = None) -> BinaryMatrix:
    """
    Columns for every isomorphism class that ``matrix`` does not use.

    Representatives are the canonical ones, in increasing order, so the
    result has 2^(m-1) - n columns.

    Raises:
        IsomorphicColumnsInInput: If two input columns share a class
        WidthGuardExceeded: If m is above the configured guard
    """
    limits = limits or DEFAULT_LIMITS
    m = matrix.row_count
    if m > limits.complement_width_guard:
        raise WidthGuardExceeded(
            f"column complement of a {m}-row matrix has about 2^{m - 1} columns; "
            f"guard is {limits.complement_width_guard} rows"
        )
    pair = matrix.isomorphic_column_pair()
    if pair is not None:
        raise IsomorphicColumnsInInput(f"columns {pair[0] + 1} and {pair[1] + 1} are isomorphic")
    if m == 0:
        return BinaryMatrix(0, 0, ())
    used = {canonical_representative(column, m) for column in matrix.columns}
    # representatives are exactly the integers below 2^(m-1)
    absent = [column for column in range(1 << (m - 1)) if column not in used]
    return BinaryMatrix.from_columns(absent, m)


def row_complement(matrix: BinaryMatrix, limits: Optional[Limits] = None) -> BinaryMatrix:
    """
    Every n-bit row string that is not a row of ``matrix``, in increasing order.

    Raises:
        DuplicateRowsInInput: If two input rows are equal
        WidthGuardExceeded: If n is above the configured guard
    """
    limits = limits or DEFAULT_LIMITS
    n = matrix.col_count
    if n > limits.complement_width_guard:
        raise WidthGuardExceeded(
            f"row complement of a {n}-column matrix has about 2^{n} rows; "
            f"guard is {limits.complement_width_guard} columns"
        )
    pair = matrix.duplicate_row_pair()
    if pair is not None:
        raise DuplicateRowsInInput(f"rows {pair[0] + 1} and {pair[1] + 1} are equal")
    present = set(matrix.rows)
    return BinaryMatrix.from_rows((row for row in range(1 << n) if row not in present), n)
