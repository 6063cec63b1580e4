#!/usr/bin/env python3
"""
数值内核测试 - 复误差函数、半直线高斯矩与半无限积分
"""
import cmath
import math
import sys
from pathlib import Path

import numpy as np
import pytest
from scipy import integrate, special

# 添加项目根目录到Python路径
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.common.errors import ConfigurationError, NumericalOverflowError, QuadratureAccuracyError
from src.numerics.quadrature import (
    EscalationConfig,
    EscalationStrategy,
    QuadratureRunner,
    QuadratureSpec,
    integrate_semi_infinite,
)
from src.numerics.special import (
    erf_c,
    erfi_c,
    faddeeva,
    gaussian_half_line_moments,
    safe_exp,
    scaled_exp_erfc,
    scaled_exp_erfi,
)


def _random_points(n: int, radius: float, seed: int):
    rng = np.random.default_rng(seed)
    r = radius * np.sqrt(rng.random(n))
    angle = 2 * math.pi * rng.random(n)
    return [complex(x) for x in r * np.exp(1j * angle)]


def _erfi_series(x: float, terms: int = 60) -> float:
    """erfi(x) = 2/√π Σ x^{2n+1}/(n!(2n+1))"""
    return 2 / math.sqrt(math.pi) * math.fsum(
        x ** (2 * n + 1) / (math.factorial(n) * (2 * n + 1)) for n in range(terms))


def test_faddeeva_at_origin():
    assert faddeeva(0) == pytest.approx(1.0, abs=1e-15)


def test_faddeeva_reflection():
    """w(z) + w(−z) = 2e^{−z²}"""
    for z in _random_points(1000, 6.0, seed=7):
        lhs = faddeeva(z) + faddeeva(-z)
        rhs = 2 * cmath.exp(-z * z)
        scale = max(1.0, abs(faddeeva(z)), abs(faddeeva(-z)))
        assert abs(lhs - rhs) <= 1e-11 * scale


def test_erf_odd_and_erfi_identity():
    for z in _random_points(1000, 6.0, seed=11):
        value = erf_c(z)
        assert erf_c(-z) == pytest.approx(-value, rel=1e-12, abs=1e-300)
        assert erfi_c(z) == pytest.approx(-1j * erf_c(1j * z), rel=1e-13, abs=1e-300)


def test_erf_matches_real_reference():
    for x in (0.1, 1.0, 2.0, 3.5):
        value = erf_c(x)
        assert value.real == pytest.approx(math.erf(x), rel=1e-14)
        assert abs(value.imag) <= 1e-15 * abs(value)


def test_erfi_matches_series():
    for x in (0.3, 1.0, 2.0):
        value = erfi_c(x)
        assert value.real == pytest.approx(_erfi_series(x), rel=1e-13)
        assert abs(value.imag) <= 1e-15 * abs(value)


def test_erfi_pair_check():
    z = 0.5 + 0.3j
    assert erfi_c(z) == pytest.approx(-1j * erf_c(1j * z), abs=1e-13)


def test_scaled_exp_erfi_moderate():
    value = scaled_exp_erfi(-25.0, 5.0)
    assert value.real == pytest.approx(math.exp(-25.0) * _erfi_series(5.0, terms=120), rel=1e-10)


def test_scaled_exp_erfi_imaginary_argument():
    """erfi(iy) = i·erf(y)"""
    value = scaled_exp_erfi(100.0, 10j)
    assert value == pytest.approx(1j * math.exp(100.0) * math.erf(10.0), rel=1e-12)


def test_scaled_exp_erfi_large_cancellation():
    """e^{−900}·erfi(30) 有限，等于 2/√π·D(30)"""
    value = scaled_exp_erfi(-900.0, 30.0)
    assert value.real == pytest.approx(2 / math.sqrt(math.pi) * special.dawsn(30.0), rel=1e-12)
    assert abs(value.imag) <= 1e-12 * abs(value)


def test_scaled_exp_erfc_matches_direct():
    for u in (0.3 + 0.4j, -0.7 + 0.2j, 1.5 - 0.5j):
        assert scaled_exp_erfc(0.25, u) == pytest.approx(
            math.exp(0.25) * complex(special.erfc(u)), rel=1e-12)


def test_safe_exp_overflow():
    with pytest.raises(NumericalOverflowError):
        safe_exp(800.0)
    with pytest.raises(ValueError):
        faddeeva(complex(float('nan'), 0.0))


def test_gaussian_moments_against_quadrature():
    a, b, c = 1.3, 0.4 - 0.7j, 0.1 + 0.2j
    moments = gaussian_half_line_moments(a, b, c, 3)
    for n, moment in enumerate(moments):
        def f(x, part):
            return part(x ** n * cmath.exp(-a * x * x + b * x + c))
        re = integrate.quad(lambda x: f(x, lambda v: v.real), 0, np.inf, epsabs=1e-14, epsrel=1e-12)[0]
        im = integrate.quad(lambda x: f(x, lambda v: v.imag), 0, np.inf, epsabs=1e-14, epsrel=1e-12)[0]
        assert moment == pytest.approx(complex(re, im), rel=1e-10)


def test_gaussian_moments_reject_bad_input():
    with pytest.raises(ValueError):
        gaussian_half_line_moments(-1.0, 0.0, 0.0, 1)
    with pytest.raises(ValueError):
        gaussian_half_line_moments(1.0, 0.0, 0.0, -1)


def test_semi_infinite_gaussian_integrals():
    spec = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-12)
    assert integrate_semi_infinite(lambda k: math.exp(-k * k), 1.0, spec).real == pytest.approx(
        math.sqrt(math.pi) / 2, abs=1e-12)
    assert integrate_semi_infinite(lambda k: k * math.exp(-k * k), 1.0, spec).real == pytest.approx(0.5, abs=1e-12)


def test_semi_infinite_with_drift():
    """峰值在 k = 5 的高斯"""
    spec = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-12)
    value = integrate_semi_infinite(lambda k: cmath.exp(-(k - 5.0) ** 2 + 0.5j * k), 1.0, spec, drift=5.0)
    reference = math.sqrt(math.pi) * cmath.exp(2.5j - 0.0625) * (1 + special.erf(5.0 + 0.25j)) / 2
    assert value == pytest.approx(complex(reference), rel=1e-10)


def test_quadrature_spec_validation():
    with pytest.raises(ConfigurationError):
        QuadratureSpec(abs_tol=-1.0)
    with pytest.raises(ConfigurationError):
        QuadratureSpec(cutoff_sigma=4.0)
    with pytest.raises(ValueError):
        integrate_semi_infinite(lambda k: 1.0, 0.0, QuadratureSpec())


def test_quadrature_accuracy_error_carries_estimate():
    spec = QuadratureSpec(abs_tol=1e-15, rel_tol=1e-15, max_subdivisions=1)
    with pytest.raises(QuadratureAccuracyError) as excinfo:
        integrate_semi_infinite(lambda k: math.cos(40 * k) * math.exp(-k * k / 100), 10.0, spec)
    assert math.isfinite(excinfo.value.error_bound)


def test_runner_escalation_statistics():
    runner = QuadratureRunner(QuadratureSpec(abs_tol=1e-12, rel_tol=1e-10),
                              EscalationConfig(max_escalations=2, strategy=EscalationStrategy.NONE))
    value = runner.integrate(lambda k: math.exp(-k * k), 1.0)
    assert value.real == pytest.approx(math.sqrt(math.pi) / 2, abs=1e-11)
    stats = runner.get_statistics()
    assert stats['total_calls'] == 1
    assert stats['permanent_failures'] == 0
    assert stats['failure_rate'] == 0.0


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
