import math

import pytest

from cascade_lab import (
    a_n,
    brute_force_moment,
    covariance,
    exact_moment,
    limit_even_moment,
    moment_sequence,
    second_moment,
    sigma,
)
from cascade_lab.errors import CapacityError
from cascade_lab.moments import MomentTable


def double_factorial(k):
    return math.prod(range(k, 0, -2))


def test_second_moment_examples():
    assert second_moment(2, 0.5, 1) == 1.5
    assert second_moment(2, 0.5, 2) == 2.0
    assert second_moment(2, 0, 1) == 2.5


def test_second_moment_matches_enumeration():
    assert brute_force_moment(2, 0.5, 2, 1) == pytest.approx(1.5, rel=1e-15)
    assert brute_force_moment(2, 0, 2, 1) == pytest.approx(2.5, rel=1e-15)


def test_martingale_mean():
    for n in range(10):
        assert exact_moment(2, 0.5, 1, n) == 1


def test_critical_second_moment_closed_form():
    assert exact_moment(2, 0.5, 2, 3) == pytest.approx(2.5, rel=1e-14)
    for n in range(30):
        assert exact_moment(2, 0.5, 2, n) == pytest.approx(1 + n / 2, rel=1e-13)


@pytest.mark.parametrize("H,q,n", [(0.7, 3, 2), (0.3, 4, 2), (-1, 6, 3), (0.25, 5, 3)])
def test_exact_matches_oracle(H, q, n):
    assert exact_moment(2, H, q, n) == pytest.approx(brute_force_moment(2, H, q, n), rel=1e-10)


@pytest.mark.parametrize("b,n", [(3, 2), (4, 1)])
def test_exact_matches_oracle_other_bases(b, n):
    for q in range(1, 7):
        assert exact_moment(b, 0.3, q, n) == pytest.approx(brute_force_moment(b, 0.3, q, n),
                                                           rel=1e-10)


def test_deterministic_moments():
    for q in range(1, 7):
        for n in range(4):
            assert brute_force_moment(2, 1, q, n) == pytest.approx(1, rel=1e-15)
            assert exact_moment(2, 1, q, n) == 1


def test_limit_even_moments():
    assert limit_even_moment(2, 2) == 1
    assert limit_even_moment(2, 4) == 3
    assert limit_even_moment(2, 6) == 15
    assert limit_even_moment(3, 4) == 3


@pytest.mark.parametrize("b", [2, 3, 4])
def test_limit_even_moments_are_gaussian(b):
    for p in range(1, 6):
        assert limit_even_moment(b, 2 * p) == double_factorial(2 * p - 1)


def test_limit_rejects_odd_order():
    with pytest.raises(ValueError):
        limit_even_moment(2, 3)


def test_covariance_examples():
    assert covariance(2, 0.5, 3, 7) == 2.5
    assert covariance(3, 0.2, 5, 5) == second_moment(3, 0.2, 5)
    assert covariance(2, 0, 0, 5) == 1


def test_normalized_third_moment_is_mean_driven():
    # E(Z^3) / a^3 = 3/a + (central part), and the central part is tiny
    for n in (20, 30, 40):
        a = a_n(2, 0.25, n)
        assert exact_moment(2, 0.25, 3, n) / a**3 == pytest.approx(3 / a, rel=1e-3)


def test_normalized_third_moment_vanishes():
    vals = [exact_moment(2, 0.25, 3, n) / a_n(2, 0.25, n) ** 3 for n in range(10, 61)]
    assert all(u > v for u, v in zip(vals, vals[1:]))
    assert vals[35 - 10] <= 0.01
    assert vals[-1] <= 1e-4


@pytest.mark.xfail(strict=True, reason="exact value at n=30 is 0.011155 (about 3/a_n)")
def test_normalized_third_moment_below_hundredth_at_depth_30():
    assert abs(exact_moment(2, 0.25, 3, 30) / a_n(2, 0.25, 30) ** 3) <= 0.01


def test_normalized_even_moments_approach_gaussian():
    a = a_n(2, 0.25, 30)
    assert abs(exact_moment(2, 0.25, 4, 30) / a**4 - 3) <= 0.02
    assert abs(exact_moment(2, 0.25, 2, 30) / a**2 - 1) <= 1e-3


def test_normalized_sequence_is_not_cauchy():
    for n in range(10, 31):
        an, an1 = a_n(2, 0.25, n), a_n(2, 0.25, n + 1)
        gap = (second_moment(2, 0.25, n + 1) / an1**2 + second_moment(2, 0.25, n) / an**2
               - 2 * covariance(2, 0.25, n, n + 1) / (an * an1))
        assert gap >= 0.05


def test_persistent_second_moment_bounded():
    vals = [second_moment(2, 0.7, n) for n in range(201)]
    assert all(u < v for u, v in zip(vals, vals[1:60]))
    assert vals[-1] - 1 == pytest.approx(sigma(2, 0.7) ** 2, abs=1e-9)


def test_moment_sequence_shape_and_rows():
    seq = moment_sequence(2, 0.3, 4, 6)
    assert seq.shape == (5, 7)
    assert (seq[0] == 1).all() and (seq[1] == 1).all() and (seq[:, 0] == 1).all()


def test_moment_table_invariants():
    table = MomentTable.build(2, 0.3, 6, 8, limit_orders=(2, 4))
    for n in range(9):
        assert table.entries[(1, n)] == 1
    for q in range(1, 7):
        assert table.entries[(q, 0)] == 1
    second = [table.entries[(2, n)] for n in range(9)]
    assert all(u <= v for u, v in zip(second, second[1:]))
    assert table.limits == {2: 1.0, 4: 3.0}
    assert len(list(table.rows())) == 6 * 9


def test_order_cap():
    with pytest.raises(CapacityError):
        exact_moment(2, 0.3, 17, 2)


def test_enumeration_cap():
    with pytest.raises(CapacityError):
        brute_force_moment(2, 0.3, 2, 4)
