import math

import numpy as np
import pytest

from cascade_lab import (
    LevelSigns,
    cartoon_wbm,
    derive_params,
    evaluate,
    refine,
    sample_sign_level,
    simulate_path,
    total_mass,
)
from cascade_lab.cascade import PathRealization, unit_path
from cascade_lab.ensemble import sample_grid
from cascade_lab.errors import (
    CapacityError,
    DomainError,
    InvalidBaseError,
    InvalidExponentError,
    RefinementError,
    UndefinedPathError,
)


def signs(b, level, values):
    return LevelSigns(b, level, np.array(values, dtype=np.int8))


def test_derive_params_deterministic_case():
    p = derive_params(2, 1)
    assert p.p == 1 and p.plus_prob == 1 and p.minus_prob == 0


def test_derive_params_minus_infinity():
    p = derive_params(2, -math.inf)
    assert p.p == 0 and p.plus_prob == 0.5


def test_derive_params_critical():
    p = derive_params(2, 0.5)
    assert p.p == pytest.approx(0.7071068, abs=1e-7)
    assert p.plus_prob == pytest.approx(0.8535534, abs=1e-7)


@pytest.mark.parametrize("b", [1, 0, -3, 2.5])
def test_invalid_base(b):
    with pytest.raises(InvalidBaseError):
        derive_params(b, 0.5)


@pytest.mark.parametrize("H", [1.5, math.inf, math.nan])
def test_invalid_exponent(H):
    with pytest.raises(InvalidExponentError):
        derive_params(2, H)


def test_capacity_guard():
    with pytest.raises(CapacityError):
        simulate_path(derive_params(2, 0.5), 40, 1)


def test_deterministic_level_is_all_plus():
    assert np.all(sample_sign_level(derive_params(2, 1), 3, 99).signs == 1)


def test_sign_level_is_reproducible():
    p = derive_params(2, 0.5)
    a = sample_sign_level(p, 10, 1234).signs
    assert a.size == 1024
    assert np.array_equal(a, sample_sign_level(p, 10, 1234).signs)


def test_sign_mean_concentrates_on_p():
    p = derive_params(2, 0.5)
    s = sample_sign_level(p, 12, 1234).signs
    assert abs(s.mean() - p.p) <= 4 * math.sqrt(1 / 4096)


def test_refine_deterministic_grid():
    p = derive_params(2, 1)
    level1 = refine(unit_path(p), signs(2, 1, [1, 1]))
    level2 = refine(level1, signs(2, 2, [1, 1, 1, 1]))
    assert np.allclose(level2.values, [0, 0.25, 0.5, 0.75, 1])


def test_refine_opposite_signs():
    path = refine(unit_path(derive_params(2, 0.5)), signs(2, 1, [1, -1]))
    assert np.allclose(path.values, [0, 2**-0.5, 0])


def test_refine_equal_signs():
    path = refine(unit_path(derive_params(2, 0.5)), signs(2, 1, [1, 1]))
    assert np.allclose(path.values, [0, 0.7071068, 1.4142136], atol=1e-7)


def test_refine_rejects_wrong_level():
    with pytest.raises(RefinementError):
        refine(unit_path(derive_params(2, 0.5)), signs(2, 2, [1, 1, 1, 1]))


def test_refine_rejects_wrong_base():
    with pytest.raises(RefinementError):
        refine(unit_path(derive_params(2, 0.5)), signs(3, 1, [1, 1, 1]))


def test_refine_chain_equals_simulate():
    p = derive_params(3, 0.3)
    direct = simulate_path(p, 5, 77)
    path = unit_path(p)
    for level in range(1, 6):
        path = refine(path, sample_sign_level(p, level, 77))
    assert np.array_equal(path.values, direct.values)


def test_simulate_deterministic_case():
    path = simulate_path(derive_params(2, 1), 5, 3)
    assert np.array_equal(path.values, np.arange(33) / 32)


def test_leaf_increment_modulus():
    path = simulate_path(derive_params(2, 0.7), 8, 5)
    assert np.allclose(np.abs(path.increments()), 2**-5.6, rtol=1e-12)


def test_simulate_is_bit_reproducible():
    p = derive_params(2, 0.3)
    assert np.array_equal(simulate_path(p, 12, 9).values, simulate_path(p, 12, 9).values)


def test_simulate_rejects_minus_infinity():
    with pytest.raises(UndefinedPathError):
        simulate_path(derive_params(2, -math.inf), 4, 1)


def test_path_values_are_read_only():
    path = simulate_path(derive_params(2, 0.5), 4, 1)
    with pytest.raises(ValueError):
        path.values[0] = 1.0


@pytest.mark.parametrize("H,n", [(0.5, 12), (0.25, 10)])
def test_martingale_mean(H, n):
    z = sample_grid("cascade", derive_params(2, H), n, 10_000, 17, grid_level=0)[:, -1]
    assert abs(z.mean() - 1) <= 4 * z.std(ddof=1) / 100


def test_derivative_correlation_is_p():
    p = derive_params(2, 0.5)
    n = 13
    coarse = simulate_path(p, n, 4).sign_products()
    fine = simulate_path(p, n + 1, 4).sign_products()
    r = np.corrcoef(np.repeat(coarse, 2), fine)[0, 1]
    assert abs(r - p.p) <= 4 / math.sqrt(2 ** (n + 1))


def test_evaluate_origin_and_midpoint():
    path = refine(unit_path(derive_params(2, 0.5)), signs(2, 1, [1, -1]))
    assert evaluate(path, 0) == 0
    assert evaluate(path, 0.25) == pytest.approx(0.35355, abs=1e-5)


def test_evaluate_deterministic_case():
    path = simulate_path(derive_params(2, 1), 6, 0)
    ts = np.linspace(0, 1, 101)
    assert np.allclose(evaluate(path, ts), ts)


@pytest.mark.parametrize("t", [-0.1, 1.01, math.nan])
def test_evaluate_domain(t):
    with pytest.raises(DomainError):
        evaluate(simulate_path(derive_params(2, 0.5), 3, 0), t)


def test_total_mass():
    assert total_mass(simulate_path(derive_params(2, 1), 7, 0)) == 1
    path = refine(unit_path(derive_params(2, 0.5)), signs(2, 1, [1, -1]))
    assert total_mass(path) == 0


def test_cartoon_generator():
    c = cartoon_wbm(1)
    assert np.allclose(c.grid, [0, 0.25, 0.5, 0.75, 1])
    assert np.allclose(c.values, [0, 0.5, 0, 0.5, 1])


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_cartoon_size_and_endpoints(k):
    c = cartoon_wbm(k)
    assert c.values.size == 4**k + 1
    assert c.values[0] == 0 and c.values[-1] == 1


def test_cartoon_second_stage():
    assert evaluate(cartoon_wbm(2), 1 / 16) == pytest.approx(0.25)


def test_cartoon_slopes():
    # every stage-k segment has slope +-2^k
    c = cartoon_wbm(3)
    assert np.allclose(np.abs(np.diff(c.values)) * 4**3, 2**3)


def test_sign_products_reject_foreign_values():
    bad = PathRealization(2, 0.5, 1, np.array([0.0, 0.3, 0.9]))
    with pytest.raises(RefinementError):
        bad.sign_products()
