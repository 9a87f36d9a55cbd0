import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from Distinguish.bitmatrix import BinaryMatrix, flip_columns, normalize_low_weight
from Distinguish.complement import canonical_representative, column_complement, row_complement
from Distinguish.construct import FOUR_COLUMN_SEEDS, small_table, staircase
from Distinguish.errors import DuplicateRowsInInput, IsomorphicColumnsInInput, WidthGuardExceeded
from Distinguish.limits import Limits
from Distinguish.symmetry import is_asymmetric


def test_canonical_representative():
    assert canonical_representative(0b11000, 5) == 0b00111
    assert canonical_representative(0, 5) == 0
    with pytest.raises(ValueError):
        canonical_representative(0b100, 2)


@given(st.integers(1, 12).flatmap(lambda m: st.tuples(st.just(m), st.integers(0, (1 << m) - 1))))
def test_canonical_representative_is_a_class_function(case):
    m, column = case
    representative = canonical_representative(column, m)
    assert representative == canonical_representative(column ^ ((1 << m) - 1), m)
    assert canonical_representative(representative, m) == representative
    assert representative < 1 << (m - 1)


def test_column_complement_of_short_staircase():
    complement = column_complement(staircase(5, 4))
    assert complement.shape == (5, 12)
    low, _ = normalize_low_weight(complement)
    assert sorted(set(low.row_weights)) == [3, 4, 5]
    assert is_asymmetric(complement)


def test_column_complement_partitions_classes():
    matrix = staircase(6, 6)
    complement = column_complement(matrix)
    assert complement.n == 32 - 6
    classes = {canonical_representative(c, 6) for c in matrix.columns + complement.columns}
    assert classes == set(range(32))
    assert list(complement.columns) == sorted(complement.columns)
    again = column_complement(complement)
    assert {canonical_representative(c, 6) for c in again.columns} == {
        canonical_representative(c, 6) for c in matrix.columns
    }


def test_column_complement_of_every_class_is_empty():
    full = BinaryMatrix.from_columns(list(range(16)), 5)
    assert column_complement(full).shape == (5, 0)


def test_column_complement_errors():
    with pytest.raises(IsomorphicColumnsInInput):
        column_complement(BinaryMatrix.from_strings(["10", "01", "01"]))
    with pytest.raises(WidthGuardExceeded):
        column_complement(staircase(5, 5), Limits(complement_width_guard=4))


def test_row_complement_of_seven_row_seed():
    seed = small_table(7, 4)
    assert seed.to_strings() == list(FOUR_COLUMN_SEEDS[7])
    complement = row_complement(seed)
    assert complement.shape == (9, 4)
    assert set(complement.rows) == set(range(16)) - set(seed.rows)
    assert list(complement.rows) == sorted(complement.rows)
    assert flip_columns(complement, range(4)) == small_table(9, 4)


def test_row_complement_of_every_string_is_empty():
    full = BinaryMatrix.from_rows(range(16), 4)
    assert row_complement(full).shape == (0, 4)


def test_row_complement_errors():
    with pytest.raises(DuplicateRowsInInput):
        row_complement(BinaryMatrix.from_strings(["10", "10"]))
    with pytest.raises(WidthGuardExceeded):
        row_complement(staircase(5, 5), Limits(complement_width_guard=4))


@st.composite
def eligible_five_row_matrices(draw, min_cols: int = 4, max_cols: int = 8):
    n = draw(st.integers(min_cols, max_cols))
    classes = draw(st.lists(st.integers(0, 15), min_size=n, max_size=n, unique=True))
    flips = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    columns = [c ^ 0b11111 if flip else c for c, flip in zip(classes, flips)]
    matrix = BinaryMatrix.from_columns(columns, 5)
    assume(not matrix.has_duplicate_rows())
    return matrix


@pytest.mark.property_based
@given(eligible_five_row_matrices())
def test_complements_share_asymmetry(matrix):
    verdict = is_asymmetric(matrix)
    assert is_asymmetric(column_complement(matrix)) == verdict
    assert is_asymmetric(row_complement(matrix)) == verdict


@pytest.mark.slow
@pytest.mark.property_based
@settings(max_examples=1000)
@given(eligible_five_row_matrices(max_cols=12))
def test_complements_share_asymmetry_wide(matrix):
    verdict = is_asymmetric(matrix)
    assert is_asymmetric(column_complement(matrix)) == verdict
    assert is_asymmetric(row_complement(matrix)) == verdict
