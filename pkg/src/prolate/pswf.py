"""Prolate spheroidal wave functions psi_n on [-1, 1] from their Legendre
expansions, and the eigenvalues lambda_n of the finite Fourier transform."""

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .eigensystem import build_system, chi_approx, default_size, eigenpair
from .errors import DomainError

MAX_DERIVATIVE_ORDER = 60
# coefficients below this fraction of the largest one are dropped for evaluation
TRIM = 1e-30


@dataclass(frozen=True)
class ProlateFunction:
    """psi_n for band limit c, with chi_n, Legendre coefficients and lambda_n.

    beta holds the coefficients in the normalized Legendre basis for all
    degrees 0..trunc-1, with zeros at degrees of the wrong parity; alpha
    is the same expansion over the plain polynomials P_k.
    """

    c: float
    n: int
    chi: float
    beta: np.ndarray
    alpha: np.ndarray
    lam: complex
    log_abs_lambda: float
    trunc: int
    iterations: int = 0
    residual: float = 0.0
    seed: int = 42
    _alpha_eval: np.ndarray = field(default=None, repr=False, compare=False)

    @property
    def lambda_abs(self):
        return math.exp(self.log_abs_lambda)

    @property
    def mu(self):
        """Eigenvalue of the symmetric form, c |lambda|^2 / 2 pi."""
        return self.c * self.lambda_abs ** 2 / (2 * math.pi)

    @property
    def alpha_eval(self):
        """Trimmed alpha passed to the series kernels."""
        return self._alpha_eval

    def psi(self, x):
        return eval_psi(self, x)

    def dpsi(self, x):
        return eval_dpsi(self, x)

    def phi_tilde(self, x):
        """sum_k alpha_k Q_k(x) and its derivative, for |x| < 1."""
        return eval_phi_tilde(self, x)


def _trimmed(alpha, beta):
    big = np.max(np.abs(beta))
    keep = np.nonzero(np.abs(beta) > TRIM * big)[0]
    last = int(keep[-1]) + 1 if keep.size else 1
    return np.ascontiguousarray(alpha[: max(last, 2)])


def prolate(c, n, seed=None, N=None):
    """Construct psi_n for band limit c."""
    c = float(c)
    n = int(n)
    if not c > 0.0:
        raise DomainError(f"band limit c must be positive, got {c!r}")
    if n < 0:
        raise DomainError(f"index n must be non-negative, got {n!r}")
    if N is None:
        N = default_size(c, n)
    from .eigensystem import default_seed
    if seed is None:
        seed = default_seed()
    sys = build_system(c, n, N)
    chi_t = chi_approx(sys, c, n)
    ep = eigenpair(sys, chi_t, seed=seed, rank=n // 2)
    p = n % 2
    trunc = 2 * N + p
    beta = np.zeros(trunc)
    beta[p::2] = ep.beta
    k = np.arange(trunc)
    alpha = beta * np.sqrt(k + 0.5)
    if alpha.sum() < 0:
        beta = -beta
        alpha = -alpha
    alpha_eval = _trimmed(alpha, beta)
    kern = _backend.kernels
    zero = np.zeros(1)
    f0, d0 = kern.legendre_series(alpha_eval, zero)
    if p == 0:
        ref = beta[0]
        val = float(f0[0])
        log_abs = 0.5 * math.log(2.0) + ep.log_abs_first - math.log(abs(val))
        sign = math.copysign(1.0, ref) * math.copysign(1.0, val)
        lam = complex(sign * math.exp(log_abs), 0.0)
    else:
        ref = beta[1]
        val = float(d0[0])
        log_abs = (0.5 * math.log(2.0 / 3.0) + math.log(c) + ep.log_abs_first
                   - math.log(abs(val)))
        sign = math.copysign(1.0, ref) * math.copysign(1.0, val)
        lam = complex(0.0, sign * math.exp(log_abs))
    return ProlateFunction(c=c, n=n, chi=ep.chi, beta=beta, alpha=alpha, lam=lam,
                           log_abs_lambda=log_abs, trunc=trunc,
                           iterations=ep.iterations, residual=ep.residual,
                           seed=seed, _alpha_eval=alpha_eval)


def _points(x):
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    return np.ascontiguousarray(arr.ravel()), np.ndim(x) == 0, np.shape(x)


def _shape(vals, scalar, shape):
    return float(vals[0]) if scalar else vals.reshape(shape)


def eval_psi_pair(pf, x):
    """psi_n and psi_n' at x, |x| <= 1."""
    pts, scalar, shape = _points(x)
    if np.any(np.abs(pts) > 1.0):
        raise DomainError("series evaluation needs |x| <= 1")
    f, g = _backend.kernels.legendre_series(pf.alpha_eval, pts)
    f, g = np.asarray(f), np.asarray(g)
    return _shape(f, scalar, shape), _shape(g, scalar, shape)


def eval_psi(pf, x):
    """psi_n(x) for |x| <= 1, scalar or array."""
    return eval_psi_pair(pf, x)[0]


def eval_dpsi(pf, x):
    """psi_n'(x) for |x| <= 1, scalar or array."""
    return eval_psi_pair(pf, x)[1]


def eval_phi_tilde(pf, x):
    """sum_k alpha_k Q_k(x) and its derivative, for |x| < 1."""
    pts, scalar, shape = _points(x)
    if np.any(np.abs(pts) >= 1.0 - 1e-14):
        raise DomainError("second-kind series needs |x| < 1 - 1e-14")
    f, g = _backend.kernels.legendre_q_series(pf.alpha_eval, pts)
    f, g = np.asarray(f), np.asarray(g)
    return _shape(f, scalar, shape), _shape(g, scalar, shape)


def derivatives_at(pf, t, K):
    """psi_n and its derivatives of orders 1..K at t, from the ODE ladder."""
    t = float(t)
    if K < 2 or K > MAX_DERIVATIVE_ORDER:
        raise DomainError(f"derivative order K must be in [2, {MAX_DERIVATIVE_ORDER}]")
    if 1.0 - t * t < 1e-8:
        raise DomainError("derivative ladder is degenerate this close to +-1")
    f, g = eval_psi_pair(pf, t)
    return np.asarray(_backend.kernels.derivative_ladder(t, f, g, pf.chi, pf.c, int(K)))


def taylor_eval(ders, h):
    """Value and derivative at t + h of the Taylor polynomial built from ders."""
    return _backend.kernels.taylor_pair(np.ascontiguousarray(ders, dtype=float), float(h))


def integral(pf):
    """Integral of psi_n over (-1, 1), equal to lambda_n psi_n(0)."""
    if pf.n % 2:
        return 0.0
    return math.sqrt(2.0) * float(pf.beta[0])
