import random

import pytest

from Distinguish import cost
from Distinguish.cost import CostTable, ceil_log2, det_qn
from Distinguish.errors import FormatError, NotTwoDistinguishable, OutOfRange


def test_base_values(table):
    assert [table.rho(n) for n in range(4, 13)] == [5] * 9
    assert [table.nu(m) for m in range(5, 12)] == [4] * 7
    assert table.nu(12) == 5


def test_ceil_log2():
    assert [ceil_log2(n) for n in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]
    assert ceil_log2(2 ** 200 + 1) == 201


def test_closed_form_below_1021(table):
    for n in range(13, 1021):
        assert table.rho(n) == 1 + ceil_log2(n + 4), n


@pytest.mark.parametrize("n", [1021, 10 ** 6, 2 ** 26 - 5])
def test_closed_form_from_1021(table, n):
    assert table.rho(n) == 1 + ceil_log2(n + 5)


def test_first_shift_change(table):
    assert table.rho(2 ** 26 - 5) == 27
    assert table.rho(2 ** 26 - 4) == 28
    assert table.rho(10 ** 6) == 21


@pytest.mark.parametrize("m", range(5, 13))
def test_values_near_powers_of_two(table, m):
    top = 1 << (m - 1)
    assert table.rho(top - 2) == table.rho(top - 1) == table.rho(top) == m + 1


def test_two_value_bound_on_random_inputs(table):
    rng = random.Random(20240521)
    for _ in range(10_000):
        bits = rng.randint(3, 128)
        n = max(5, rng.getrandbits(bits) | (1 << (bits - 1)))
        value = table.rho(n)
        assert value in (1 + ceil_log2(n), 2 + ceil_log2(n)), n
        assert value - det_qn(n) in (0, 1), n


def test_det_gap_at_four():
    assert cost.rho(4) - det_qn(4) == 2


@pytest.mark.xfail(strict=True, reason="the two-value form is only claimed for n >= 5; rho(Q_4) = 5 = Det(Q_4) + 2")
def test_det_two_value_form_at_four():
    assert cost.rho(4) - det_qn(4) in (0, 1)


def test_intervals(table):
    assert table.rho_interval(6) == (13, 28)
    assert table.rho_interval(12) == (1021, 2043)
    assert table.rho_interval(13) == (2044, 4091)
    assert table.nu_interval(5) == (12, 27)
    assert table.nu_interval(6) == (28, 59)
    assert table.nu(100) == 7


def test_intervals_tile_the_line(table):
    previous_hi = 12
    for m in range(6, 62):
        lo, hi = table.rho_interval(m)
        assert lo == previous_hi + 1
        assert lo < hi
        previous_hi = hi
    assert previous_hi >= 2 ** 59


def test_nu_agrees_with_intervals(table):
    for m in range(12, 300):
        lo, hi = table.nu_interval(table.nu(m))
        assert lo <= m <= hi


def test_closed_form_segments(table):
    assert table.closed_form_segments(12) == [(13, 1020, 4), (1021, 2043, 5)]
    assert table.closed_form_segments(28) == [
        (13, 1020, 4),
        (1021, 2 ** 26 - 5, 5),
        (2 ** 26 - 4, 2 ** 27 - 6, 6),
    ]
    for lo, hi, shift in table.closed_form_segments(40):
        for n in (lo, hi):
            assert table.rho(n) == 1 + ceil_log2(n + shift)


def test_det():
    assert det_qn(17) == 6
    assert det_qn(4) == 3
    with pytest.raises(OutOfRange):
        det_qn(1)


def test_domain_errors(table):
    with pytest.raises(NotTwoDistinguishable, match="n >= 4"):
        table.rho(3)
    with pytest.raises(OutOfRange):
        table.nu(4)
    with pytest.raises(OutOfRange):
        table.rho_interval(5)
    with pytest.raises(OutOfRange):
        table.nu_interval(4)
    with pytest.raises(TypeError):
        table.rho(13.0)
    with pytest.raises(TypeError):
        table.rho(True)


def test_huge_argument(table):
    n = 10 ** 40
    assert table.rho(n) in (1 + ceil_log2(n), 2 + ceil_log2(n))


def test_cache_round_trip(table):
    table.rho(10 ** 9)
    restored = CostTable.from_dict(table.to_dict())
    assert dict(restored.mu_memo) == dict(table.mu_memo)
    assert dict(restored.nu_memo) == dict(table.nu_memo)
    assert restored.rho(10 ** 9) == table.rho(10 ** 9)


@pytest.mark.parametrize("data", [
    {"format": 2, "mu": {}, "nu": {}},
    {"format": 1, "mu": {"13": 9}},
    {"format": 1, "mu": {"13": 5}},
    {"format": 1, "mu": {"12": 5, "1000000": 22}},
    {"format": 1, "mu": {"3": 5}},
    {"format": 1, "mu": {"x": 5}},
    {"format": 1, "mu": {"20": "6"}},
    {"format": 1, "nu": {"8": 5}},
    {"format": 1, "nu": {"40": 30}},
    {"format": 1, "nu": {"100": 8}},
    {"format": 1, "mu": {"²": 5}},
    {"format": 1, "mu": []},
    [],
])
def test_cache_rejects_bad_entries(data):
    with pytest.raises(FormatError):
        CostTable.from_dict(data)


def test_cache_entries_are_recomputed():
    restored = CostTable.from_dict({"format": 1, "mu": {"13": 6, "100": 8}, "nu": {"100": 7}})
    assert restored.rho(13) == 6
    assert restored.rho(100) == 8
    assert restored.nu(100) == 7
