import math
import time

import numpy as np
import pytest
from scipy import special

from prolate.errors import DomainError
from prolate.legendre import gauss_rule, legendre_p
from prolate.pswf import (derivatives_at, eval_dpsi, eval_phi_tilde, eval_psi, integral,
                          prolate, taylor_eval)


@pytest.mark.parametrize("c,n", [(1.0, 0), (5.0, 4), (20.0, 9), (20.0, 14), (40.0, 30),
                                 (100.0, 90)])
def test_chi_matches_scipy_characteristic_value(c, n):
    assert prolate(c, n).chi == pytest.approx(special.pro_cv(0, n, c), rel=1e-12)


def test_reference_chi_values():
    assert prolate(20, 9).chi == pytest.approx(325.42, abs=0.01)
    assert prolate(20, 14).chi == pytest.approx(437.36, abs=0.01)


@pytest.mark.parametrize("c,n,ref,rel", [(20, 14, 0.12564, 1e-3), (40, 41, 0.69857e-8, 1e-3),
                                         (1e4, 6393, 0.43299e-7, 1e-2),
                                         (1e4, 6425, 0.52616e-15, 1e-2)])
def test_reference_lambda_values(c, n, ref, rel):
    assert prolate(c, n).lambda_abs == pytest.approx(ref, rel=rel)


def test_lambda_phase_is_i_to_the_n():
    for n in range(8):
        lam = prolate(10.0, n).lam
        expected = 1j ** n
        assert lam / abs(lam) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("c,n", [(10.0, 0), (10.0, 5), (30.0, 17), (30.0, 40)])
def test_integral_equation_residual(c, n):
    pf = prolate(c, n)
    g = gauss_rule(200)
    w = g.weights * eval_psi(pf, g.nodes)
    x = np.linspace(-1, 1, 41)
    lhs = pf.lam * eval_psi(pf, x)
    rhs = np.exp(1j * c * np.outer(x, g.nodes)) @ w
    assert np.max(np.abs(lhs - rhs)) <= 1e-11


def test_orthonormality():
    c = 25.0
    g = gauss_rule(300)
    vals = np.array([eval_psi(prolate(c, n), g.nodes) for n in range(30)])
    gram = (vals * g.weights) @ vals.T
    assert np.max(np.abs(gram - np.eye(30))) <= 1e-10


@pytest.mark.parametrize("c,n", [(20.0, 14), (100.0, 70)])
def test_ode_residual_from_legendre_identity(c, n):
    # (1-x^2) P_k'' - 2x P_k' = -k(k+1) P_k turns the prolate equation into a
    # statement about the coefficients that does not use the derivative ladder
    pf = prolate(c, n)
    a = pf.alpha_eval
    k = np.arange(len(a))
    x = np.linspace(-0.999, 0.999, 77)
    P = legendre_p(x, len(a) - 1)
    psi = eval_psi(pf, x)
    res = ((pf.chi - k * (k + 1)) * a) @ P - c * c * x * x * psi
    assert np.max(np.abs(res)) <= 1e-9 * pf.chi * np.max(np.abs(psi))


def test_parity_and_sign_convention():
    for n in (4, 7):
        pf = prolate(30.0, n)
        x = np.linspace(0, 1, 11)
        assert np.allclose(eval_psi(pf, -x), (-1) ** n * eval_psi(pf, x), atol=1e-14)
        assert eval_psi(pf, 1.0) > 0


def test_derivative_against_finite_difference():
    pf = prolate(20.0, 9)
    x, h = 0.41, 1e-6
    fd = (eval_psi(pf, x + h) - eval_psi(pf, x - h)) / (2 * h)
    assert eval_dpsi(pf, x) == pytest.approx(fd, rel=1e-7)


def test_phi_tilde_derivative_against_finite_difference():
    pf = prolate(20.0, 8)
    x, h = 0.3, 1e-6
    f1, _ = eval_phi_tilde(pf, x + h)
    f0, _ = eval_phi_tilde(pf, x - h)
    _, g = eval_phi_tilde(pf, x)
    assert g == pytest.approx((f1 - f0) / (2 * h), rel=1e-7)


def test_derivative_ladder_and_taylor_step():
    pf = prolate(20.0, 9)
    t, h = 0.2, 0.05
    ders = derivatives_at(pf, t, 40)
    assert ders[0] == pytest.approx(eval_psi(pf, t), abs=1e-15)
    assert ders[1] == pytest.approx(eval_dpsi(pf, t), rel=1e-14)
    f, g = taylor_eval(ders, h)
    assert f == pytest.approx(eval_psi(pf, t + h), abs=1e-12)
    assert g == pytest.approx(eval_dpsi(pf, t + h), abs=1e-11)


def test_integral_matches_quadrature():
    pf = prolate(15.0, 6)
    g = gauss_rule(100)
    assert integral(pf) == pytest.approx(float(np.dot(g.weights, eval_psi(pf, g.nodes))),
                                         abs=1e-14)
    assert integral(pf) == pytest.approx((pf.lam * eval_psi(pf, 0.0)).real, abs=1e-14)
    assert integral(prolate(15.0, 5)) == 0.0


def test_errors():
    with pytest.raises(DomainError):
        prolate(-1.0, 2)
    with pytest.raises(DomainError):
        prolate(1.0, -2)
    pf = prolate(5.0, 2)
    with pytest.raises(DomainError):
        eval_psi(pf, 1.5)
    with pytest.raises(DomainError):
        eval_phi_tilde(pf, 1.0)
    with pytest.raises(DomainError):
        derivatives_at(pf, 0.0, 61)
    with pytest.raises(DomainError):
        derivatives_at(pf, 1.0, 10)


def test_scalar_and_array_shapes():
    pf = prolate(5.0, 3)
    assert isinstance(eval_psi(pf, 0.2), float)
    assert eval_psi(pf, np.zeros((2, 3))).shape == (2, 3)


def test_small_c_tends_to_normalized_legendre():
    pf = prolate(1e-6, 5)
    x = np.linspace(-1, 1, 9)
    ref = math.sqrt(5.5) * special.eval_legendre(5, x)
    assert np.max(np.abs(eval_psi(pf, x) - ref)) <= 1e-9


def test_large_c_construction_is_quick():
    t0 = time.perf_counter()
    pf = prolate(1e4, 6393)
    assert time.perf_counter() - t0 < 5
    assert pf.lambda_abs == pytest.approx(0.43299e-7, rel=1e-2)
