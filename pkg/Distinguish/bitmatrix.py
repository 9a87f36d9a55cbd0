"""
Bit Matrix Module - Binary matrices and the two group actions on them.
Rows are stored as integers with column 0 in the most significant bit, so
integer order is lexicographic order of the row strings. Columns use the
same convention with row 0 in the most significant bit.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from Distinguish.errors import DimensionMismatch, PreconditionViolated



def popcount(value: int) -> int:
    """Number of ones in the binary expansion of a non-negative int."""
    return bin(value).count("1")


def columns_of_weight(length: int, weight: int) -> Iterator[int]:
    """
    Yield every ``length``-bit integer with ``weight`` ones in increasing order.

    Args:
        length: Number of bits
        weight: Number of ones, 0 <= weight <= length
    """
    if weight < 0 or weight > length:
        return
    if weight == 0:
        yield 0
        return
    value = (1 << weight) - 1
    limit = 1 << length
    while value < limit:
        yield value
        # next integer with the same popcount
        lowest = value & -value
        ripple = value + lowest
        value = (((ripple ^ value) >> 2) // lowest) | ripple


@dataclass(frozen=True)
class BinaryMatrix:
    """Immutable m x n 0/1 matrix."""

    row_count: int
    col_count: int
    rows: Tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.row_count, int) or not isinstance(self.col_count, int):
            raise TypeError("row_count and col_count must be ints")
        if self.row_count < 0 or self.col_count < 0:
            raise ValueError(f"negative dimensions {self.row_count}x{self.col_count}")
        if not isinstance(self.rows, tuple):
            object.__setattr__(self, "rows", tuple(self.rows))
        if len(self.rows) != self.row_count:
            raise ValueError(f"expected {self.row_count} rows, got {len(self.rows)}")
        limit = 1 << self.col_count
        for index, row in enumerate(self.rows):
            if not isinstance(row, int) or row < 0 or row >= limit:
                raise ValueError(f"row {index} does not fit in {self.col_count} columns: {row!r}")

    @classmethod
    def from_rows(cls, rows: Iterable[int], col_count: int) -> "BinaryMatrix":
        """
        Build a matrix from packed rows.

        Args:
            rows: Row integers, column 0 in the most significant bit
            col_count: Number of columns

        Returns:
            BinaryMatrix with one row per item
        """
        packed = tuple(rows)
        return cls(len(packed), col_count, packed)

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "BinaryMatrix":
        """
        Build a matrix from row strings of '0' and '1'.

        Raises:
            ValueError: If lines differ in length or contain other characters
        """
        if not lines:
            raise ValueError("a matrix needs at least one row string")
        width = len(lines[0])
        rows = []
        for index, line in enumerate(lines):
            if len(line) != width:
                raise ValueError(f"row {index} has length {len(line)}, expected {width}")
            if line.strip("01"):
                raise ValueError(f"row {index} contains characters other than 0 and 1: {line!r}")
            rows.append(int(line, 2) if width else 0)
        return cls(len(rows), width, tuple(rows))

    @classmethod
    def from_columns(cls, columns: Sequence[int], row_count: int) -> "BinaryMatrix":
        """
        Build a matrix from packed columns.

        Args:
            columns: Column integers, row 0 in the most significant bit
            row_count: Number of rows

        Returns:
            BinaryMatrix with one column per item
        """
        n = len(columns)
        rows = []
        for i in range(row_count):
            shift = row_count - 1 - i
            row = 0
            for column in columns:
                row = (row << 1) | ((column >> shift) & 1)
            rows.append(row)
        return cls(row_count, n, tuple(rows))

    @property
    def m(self) -> int:
        return self.row_count

    @property
    def n(self) -> int:
        return self.col_count

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.row_count, self.col_count)

    @cached_property
    def columns(self) -> Tuple[int, ...]:
        """Packed columns, row 0 in the most significant bit."""
        n = self.col_count
        columns = []
        for j in range(n):
            shift = n - 1 - j
            column = 0
            for row in self.rows:
                column = (column << 1) | ((row >> shift) & 1)
            columns.append(column)
        return tuple(columns)

    @cached_property
    def column_weights(self) -> Tuple[int, ...]:
        return tuple(popcount(column) for column in self.columns)

    @cached_property
    def row_weights(self) -> Tuple[int, ...]:
        return tuple(popcount(row) for row in self.rows)

    def entry(self, i: int, j: int) -> int:
        """Entry in row i, column j (0-based)."""
        return (self.rows[i] >> (self.col_count - 1 - j)) & 1

    def row_string(self, i: int) -> str:
        if self.col_count == 0:
            return ""
        return format(self.rows[i], f"0{self.col_count}b")

    def column_string(self, j: int) -> str:
        if self.row_count == 0:
            return ""
        return format(self.columns[j], f"0{self.row_count}b")

    def to_strings(self) -> List[str]:
        """Rows as strings of '0' and '1'."""
        return [self.row_string(i) for i in range(self.row_count)]

    def __str__(self) -> str:
        return "\n".join(self.to_strings())

    def is_low_weight(self) -> bool:
        """Every column has at most floor(m/2) ones."""
        limit = self.row_count // 2
        return all(weight <= limit for weight in self.column_weights)

    def is_strictly_low_weight(self) -> bool:
        """Every column has fewer than m/2 ones."""
        return all(2 * weight < self.row_count for weight in self.column_weights)

    def is_half_weight_column(self, j: int) -> bool:
        return 2 * self.column_weights[j] == self.row_count

    def class_weights(self) -> Tuple[int, ...]:
        """Column weights up to complement, min(w, m - w)."""
        m = self.row_count
        return tuple(min(weight, m - weight) for weight in self.column_weights)

    def duplicate_row_pair(self) -> Optional[Tuple[int, int]]:
        """First pair (i, j), i < j, of equal rows, or None."""
        seen: Dict[int, int] = {}
        for j, row in enumerate(self.rows):
            if row in seen:
                return (seen[row], j)
            seen[row] = j
        return None

    def has_duplicate_rows(self) -> bool:
        return self.duplicate_row_pair() is not None

    def isomorphic_column_pair(self) -> Optional[Tuple[int, int]]:
        """First pair (i, j), i < j, of equal or complementary columns."""
        mask = (1 << self.row_count) - 1
        seen: Dict[int, int] = {}
        for j, column in enumerate(self.columns):
            key = min(column, column ^ mask)
            if key in seen:
                return (seen[key], j)
            seen[key] = j
        return None

    def has_isomorphic_columns(self) -> bool:
        return self.isomorphic_column_pair() is not None


def _check_permutation(images: Tuple[int, ...], name: str):
    if sorted(images) != list(range(len(images))):
        raise ValueError(f"{name} is not a permutation of 0..{len(images) - 1}: {images}")


@dataclass(frozen=True)
class RowPermutation:
    """Row i of the input becomes row images[i] of the result."""

    images: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        _check_permutation(self.images, "sigma")

    @classmethod
    def identity(cls, size: int) -> "RowPermutation":
        return cls(tuple(range(size)))

    @classmethod
    def swap(cls, size: int, i: int, j: int) -> "RowPermutation":
        """Transposition of rows i and j."""
        images = list(range(size))
        images[i], images[j] = j, i
        return cls(tuple(images))

    def __len__(self) -> int:
        return len(self.images)

    def __getitem__(self, i: int) -> int:
        return self.images[i]

    def is_identity(self) -> bool:
        return all(i == image for i, image in enumerate(self.images))

    def compose(self, other: "RowPermutation") -> "RowPermutation":
        """self after other."""
        if len(other) != len(self):
            raise DimensionMismatch(f"cannot compose permutations of sizes {len(self)} and {len(other)}")
        return RowPermutation(tuple(self.images[image] for image in other.images))

    def inverse(self) -> "RowPermutation":
        """Permutation undoing this one."""
        inverse = [0] * len(self.images)
        for i, image in enumerate(self.images):
            inverse[image] = i
        return RowPermutation(tuple(inverse))


@dataclass(frozen=True)
class Permaut:
    """
    Column action: column j is complemented when j is in flips, then moved
    to position pi[j].
    """

    pi: Tuple[int, ...]
    flips: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "pi", tuple(self.pi))
        object.__setattr__(self, "flips", frozenset(self.flips))
        _check_permutation(self.pi, "pi")
        for j in self.flips:
            if not isinstance(j, int) or not 0 <= j < len(self.pi):
                raise ValueError(f"flip index {j!r} outside 0..{len(self.pi) - 1}")

    @classmethod
    def identity(cls, size: int) -> "Permaut":
        return cls(tuple(range(size)), frozenset())

    @classmethod
    def flipping(cls, size: int, flips: Iterable[int]) -> "Permaut":
        """Complement the given columns and move nothing."""
        return cls(tuple(range(size)), frozenset(flips))

    def __len__(self) -> int:
        return len(self.pi)

    def is_identity(self) -> bool:
        return not self.flips and all(j == image for j, image in enumerate(self.pi))

    def compose(self, other: "Permaut") -> "Permaut":
        """self after other."""
        if len(other) != len(self):
            raise DimensionMismatch(f"cannot compose permauts of sizes {len(self)} and {len(other)}")
        pi = tuple(self.pi[image] for image in other.pi)
        flips = frozenset(
            j for j in range(len(self.pi))
            if (j in other.flips) != (other.pi[j] in self.flips)
        )
        return Permaut(pi, flips)

    def inverse(self) -> "Permaut":
        """Permaut undoing this one; flips are indexed by the moved positions."""
        inverse = [0] * len(self.pi)
        for j, image in enumerate(self.pi):
            inverse[image] = j
        return Permaut(tuple(inverse), frozenset(self.pi[j] for j in self.flips))


@dataclass(frozen=True)
class Symmetry:
    """A pair (sigma, phi) with X_sigma == X^phi for the matrix it came from."""

    sigma: RowPermutation
    phi: Permaut

    def is_trivial(self) -> bool:
        return self.sigma.is_identity() and self.phi.is_identity()

    def holds_for(self, matrix: BinaryMatrix) -> bool:
        """Check X_sigma == X^phi directly."""
        return apply_row_permutation(matrix, self.sigma) == apply_permaut(matrix, self.phi)

    def to_dict(self) -> Dict[str, List[int]]:
        """One-based indices, matching the text formats."""
        return {
            "sigma": [image + 1 for image in self.sigma.images],
            "pi": [image + 1 for image in self.phi.pi],
            "flips": sorted(j + 1 for j in self.phi.flips),
        }


def apply_row_permutation(matrix: BinaryMatrix, sigma: RowPermutation) -> BinaryMatrix:
    """
    Compute X_sigma: row i of ``matrix`` becomes row sigma[i] of the result.

    Args:
        matrix: Matrix to act on
        sigma: Permutation of the m rows

    Returns:
        The permuted matrix

    Raises:
        DimensionMismatch: If sigma does not have m entries
    """
    if len(sigma) != matrix.row_count:
        raise DimensionMismatch(
            f"row permutation of size {len(sigma)} applied to {matrix.row_count} rows"
        )
    rows = [0] * matrix.row_count
    for i, row in enumerate(matrix.rows):
        rows[sigma[i]] = row
    return BinaryMatrix(matrix.row_count, matrix.col_count, tuple(rows))


def apply_permaut(matrix: BinaryMatrix, phi: Permaut) -> BinaryMatrix:
    """
    Compute X^phi: column j is complemented when j is in phi.flips, then
    moved to position phi.pi[j].

    Args:
        matrix: Matrix to act on
        phi: Permaut on the n columns

    Returns:
        The transformed matrix

    Raises:
        DimensionMismatch: If phi does not have n entries
    """
    if len(phi) != matrix.col_count:
        raise DimensionMismatch(
            f"permaut of size {len(phi)} applied to {matrix.col_count} columns"
        )
    mask = (1 << matrix.row_count) - 1
    columns = [0] * matrix.col_count
    for j, column in enumerate(matrix.columns):
        columns[phi.pi[j]] = column ^ mask if j in phi.flips else column
    return BinaryMatrix.from_columns(columns, matrix.row_count)


def transpose(matrix: BinaryMatrix) -> BinaryMatrix:
    """n x m matrix whose rows are the columns of ``matrix``."""
    return BinaryMatrix(matrix.col_count, matrix.row_count, matrix.columns)


def flip_columns(matrix: BinaryMatrix, flips: Iterable[int]) -> BinaryMatrix:
    """Complement the given columns and leave every column where it is."""
    return apply_permaut(matrix, Permaut.flipping(matrix.col_count, flips))


def normalize_low_weight(matrix: BinaryMatrix) -> Tuple[BinaryMatrix, FrozenSet[int]]:
    """
    Complement every column heavier than floor(m/2).

    Returns:
        Tuple of (low weight matrix, set of flipped column indices)
    """
    limit = matrix.row_count // 2
    flips = frozenset(j for j, weight in enumerate(matrix.column_weights) if weight > limit)
    if not flips:
        return matrix, flips
    return flip_columns(matrix, flips), flips


def concat_columns(left: BinaryMatrix, right: BinaryMatrix) -> BinaryMatrix:
    """
    Place ``right`` beside ``left`` without any precondition check.

    Raises:
        DimensionMismatch: If the row counts differ
    """
    if left.row_count != right.row_count:
        raise DimensionMismatch(f"row counts differ: {left.row_count} and {right.row_count}")
    shift = right.col_count
    rows = tuple((a << shift) | b for a, b in zip(left.rows, right.rows))
    return BinaryMatrix(left.row_count, left.col_count + right.col_count, rows)


def concat_rows(top: BinaryMatrix, bottom: BinaryMatrix) -> BinaryMatrix:
    """
    Stack ``bottom`` under ``top`` without any precondition check.

    Raises:
        DimensionMismatch: If the column counts differ
    """
    if top.col_count != bottom.col_count:
        raise DimensionMismatch(f"column counts differ: {top.col_count} and {bottom.col_count}")
    return BinaryMatrix(top.row_count + bottom.row_count, top.col_count, top.rows + bottom.rows)


def concat_columns_checked(left: BinaryMatrix, right: BinaryMatrix) -> BinaryMatrix:
    """
    Append the columns of ``right`` to ``left`` so that asymmetry of ``left``
    carries over to the result.

    Weights are compared up to complement, which is the plain weight test
    whenever both operands are low weight.

    Raises:
        PreconditionViolated: row_count_mismatch, isomorphic_columns_in_Y or weight_collision
    """
    if left.row_count != right.row_count:
        raise PreconditionViolated(
            "row_count_mismatch", f"{left.row_count} rows against {right.row_count}"
        )
    pair = right.isomorphic_column_pair()
    if pair is not None:
        raise PreconditionViolated("isomorphic_columns_in_Y", f"columns {pair[0] + 1} and {pair[1] + 1}")
    shared = set(left.class_weights()) & set(right.class_weights())
    if shared:
        raise PreconditionViolated("weight_collision", f"weights {sorted(shared)} used on both sides")
    return concat_columns(left, right)


def concat_rows_checked(top: BinaryMatrix, bottom: BinaryMatrix) -> BinaryMatrix:
    """
    Stack ``bottom`` under ``top`` so that asymmetry of ``top`` carries over.

    Row weights are compared after the stack is flipped to low weight; for a
    low weight stack that is the plain row weight test.

    Raises:
        PreconditionViolated: col_count_mismatch, duplicate_rows_in_Z,
            half_weight_column or row_weight_collision
    """
    if top.col_count != bottom.col_count:
        raise PreconditionViolated(
            "col_count_mismatch", f"{top.col_count} columns against {bottom.col_count}"
        )
    pair = bottom.duplicate_row_pair()
    if pair is not None:
        raise PreconditionViolated("duplicate_rows_in_Z", f"rows {pair[0] + 1} and {pair[1] + 1}")
    stacked = concat_rows(top, bottom)
    for j in range(stacked.col_count):
        if stacked.is_half_weight_column(j):
            raise PreconditionViolated("half_weight_column", f"column {j + 1}")
    normalized, _ = normalize_low_weight(stacked)
    weights = normalized.row_weights
    shared = set(weights[:top.row_count]) & set(weights[top.row_count:])
    if shared:
        raise PreconditionViolated("row_weight_collision", f"row weights {sorted(shared)}")
    return stacked


def transpose_law_applies(matrix: BinaryMatrix) -> bool:
    """True when asymmetry is known to survive transposition."""
    return matrix.is_strictly_low_weight() and all(
        2 * weight < matrix.col_count for weight in matrix.row_weights
    )
