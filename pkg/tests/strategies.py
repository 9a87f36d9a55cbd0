"""Hypothesis strategies for binary matrices and the actions on them."""

from hypothesis import strategies as st

from Distinguish.bitmatrix import BinaryMatrix, Permaut, RowPermutation


@st.composite
def matrices(draw, max_rows: int = 5, max_cols: int = 5, min_rows: int = 1, min_cols: int = 1):
    m = draw(st.integers(min_rows, max_rows))
    n = draw(st.integers(min_cols, max_cols))
    rows = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=m, max_size=m))
    return BinaryMatrix(m, n, tuple(rows))


@st.composite
def row_permutations(draw, size: int):
    return RowPermutation(tuple(draw(st.permutations(range(size)))))


@st.composite
def permauts(draw, size: int):
    pi = draw(st.permutations(range(size)))
    flips = draw(st.frozensets(st.integers(0, size - 1), max_size=size)) if size else frozenset()
    return Permaut(tuple(pi), flips)
