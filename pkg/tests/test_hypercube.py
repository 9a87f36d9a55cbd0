import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from Distinguish.bitmatrix import BinaryMatrix, apply_permaut
from Distinguish.construct import FOUR_COLUMN_SEEDS
from Distinguish.errors import DimensionGuardExceeded, EmptyClass, InvalidLabelClass
from Distinguish.hypercube import (
    HypercubeAutomorphism,
    LabelClass,
    apply_to_class,
    aut_preservers,
    characteristic_matrix,
    distinguishing_class,
    is_distinguishing_class,
    verify_minimality_q4,
)

WITNESS = LabelClass(4, FOUR_COLUMN_SEEDS[5])
EVERY_VERTEX = LabelClass(4, tuple(format(v, "04b") for v in range(16)))


@st.composite
def label_classes(draw, dims=(4, 5, 6)):
    n = draw(st.sampled_from(dims))
    members = draw(st.sets(st.integers(0, (1 << n) - 1), min_size=1, max_size=(1 << n) - 1))
    return LabelClass(n, tuple(format(v, f"0{n}b") for v in sorted(members)))


@st.composite
def automorphisms(draw, n):
    pi = draw(st.permutations(range(n)))
    flips = draw(st.frozensets(st.integers(0, n - 1)))
    return HypercubeAutomorphism(tuple(pi), flips)


@pytest.mark.parametrize("n, vertices", [
    (0, ()),
    (4, ("0000", "0000")),
    (4, ("000",)),
    (4, ("0020",)),
])
def test_invalid_label_classes(n, vertices):
    with pytest.raises(InvalidLabelClass):
        LabelClass(n, vertices)


def test_characteristic_matrix():
    assert characteristic_matrix(WITNESS) == BinaryMatrix.from_strings(FOUR_COLUMN_SEEDS[5])
    assert characteristic_matrix(LabelClass(4, ("0000",))).to_strings() == ["0000"]
    with pytest.raises(EmptyClass):
        characteristic_matrix(LabelClass(4))


def test_distinguishing_verdicts():
    assert is_distinguishing_class(WITNESS)
    assert not is_distinguishing_class(EVERY_VERTEX)
    assert not is_distinguishing_class(LabelClass(4))
    reordered = LabelClass(4, tuple(reversed(WITNESS.vertices)))
    assert is_distinguishing_class(reordered)


def test_vertex_stabilizer():
    preservers = aut_preservers(LabelClass(4, ("0000",)))
    assert len(preservers) == 24
    assert all(not phi.flips for phi in preservers)
    assert preservers[0].is_identity()


def test_witness_has_trivial_stabilizer():
    preservers = aut_preservers(WITNESS)
    assert len(preservers) == 1
    assert preservers[0].is_identity()


def test_every_vertex_is_preserved_by_everything():
    assert len(aut_preservers(EVERY_VERTEX)) == 384


def test_dimension_guard():
    with pytest.raises(DimensionGuardExceeded):
        aut_preservers(LabelClass(9, ("000000000",)))


def test_automorphism_apply():
    phi = HypercubeAutomorphism((1, 0, 2), frozenset({0}))
    assert phi.apply("000") == "010"
    assert phi.apply("100") == "000"
    assert HypercubeAutomorphism.identity(3).apply("101") == "101"
    with pytest.raises(InvalidLabelClass):
        phi.apply("0000")


@pytest.mark.property_based
@given(st.data())
def test_action_matches_permaut(data):
    label_class = data.draw(label_classes())
    phi = data.draw(automorphisms(label_class.n))
    moved = characteristic_matrix(apply_to_class(phi, label_class))
    assert moved == apply_permaut(characteristic_matrix(label_class), phi.to_permaut())


@pytest.mark.property_based
@given(label_classes())
def test_matrix_verdict_matches_group(label_class):
    preservers = aut_preservers(label_class)
    assert is_distinguishing_class(label_class) == (len(preservers) == 1)
    members = set(label_class.vertices)
    for phi in preservers:
        assert set(apply_to_class(phi, label_class).vertices) == members


@pytest.mark.slow
@pytest.mark.property_based
@pytest.mark.parametrize("n", [4, 5, 6])
def test_matrix_verdict_matches_group_per_dimension(n):
    @settings(max_examples=500)
    @given(label_classes(dims=(n,)))
    def check(label_class):
        assert is_distinguishing_class(label_class) == (len(aut_preservers(label_class)) == 1)

    check()


@pytest.mark.parametrize("n, size", [(4, 5), (12, 5), (13, 6), (30, 7)])
def test_distinguishing_class(n, size):
    label_class = distinguishing_class(n)
    assert label_class.n == n
    assert len(label_class) == size
    assert is_distinguishing_class(label_class)


def test_minimality_in_dimension_four():
    assert verify_minimality_q4()
