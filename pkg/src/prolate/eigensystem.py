"""Tridiagonal sections of the prolate operator in the Legendre basis and
their eigenpairs by Sturm bisection and shifted inverse iteration."""

import math
import os
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import BracketError, ConvergenceError, DomainError

DEFAULT_SEED = 42
MAX_ITER = 200


def default_seed():
    """Seed for start vectors: PROLATE_SEED if set, else 42."""
    env = os.environ.get("PROLATE_SEED")
    return int(env) if env not in (None, "") else DEFAULT_SEED


def default_size(c, n):
    """Number of same-parity Legendre coefficients kept for (c, n)."""
    return int(math.ceil(1.1 * c + n + 1000))


@dataclass(frozen=True)
class TridiagonalSystem:
    size: int
    diag: np.ndarray
    offdiag: np.ndarray
    parity: int
    c: float

    @property
    def degrees(self):
        """Legendre degree k carried by each row."""
        return 2 * np.arange(self.size) + self.parity

    def matvec(self, x):
        y = self.diag * x
        y[:-1] += self.offdiag * x[1:]
        y[1:] += self.offdiag * x[:-1]
        return y

    def dense(self):
        return (np.diag(self.diag) + np.diag(self.offdiag, 1)
                + np.diag(self.offdiag, -1))


@dataclass(frozen=True)
class EigenPair:
    chi: float
    beta: np.ndarray
    iterations: int
    # log|first coordinate| from the ratio recurrence, safe against underflow
    log_abs_first: float
    residual: float


def build_system(c, n, N=None):
    """Section of size N of the even or odd block, by the parity of n."""
    c = float(c)
    if not c > 0.0 or not math.isfinite(c):
        raise DomainError(f"band limit c must be positive, got {c!r}")
    if n < 0:
        raise DomainError(f"index n must be non-negative, got {n!r}")
    if N is None:
        N = default_size(c, n)
    if N < 1:
        raise DomainError("N must be at least 1")
    p = n % 2
    k = 2.0 * np.arange(N) + p
    c2 = c * c
    diag = k * (k + 1) + c2 * (2 * k * (k + 1) - 1) / ((2 * k + 3) * (2 * k - 1))
    kk = k[:-1]
    off = c2 * (kk + 2) * (kk + 1) / ((2 * kk + 3) * np.sqrt((2 * kk + 1) * (2 * kk + 5)))
    return TridiagonalSystem(size=int(N), diag=diag, offdiag=off, parity=p, c=c)


def sturm_count(sys, sigma):
    """Number of eigenvalues of sys strictly greater than sigma."""
    return int(_backend.kernels.sturm_count(sys.diag, sys.offdiag, float(sigma)))


def chi_bracket(c, n, tighten=False):
    """Interval (lo, hi) known to contain chi_n.

    The plain bracket is n(n+1) < chi_n < n(n+1) + c^2. With tighten=True
    it is cut at c^2 according to whether n sits below or above 2c/pi.
    """
    lo = float(n * (n + 1))
    hi = lo + c * c
    if tighten:
        c2 = c * c
        if n <= 2 * c / math.pi - 1:
            hi = min(hi, c2)
        elif n >= 2 * c / math.pi:
            lo = max(lo, c2)
    return lo, hi


def _pad(lo, hi):
    # a few ulps so that eigenvalues sitting on a bound stay inside
    return lo - 8 * np.spacing(abs(lo) + 1.0), hi + 8 * np.spacing(abs(hi) + 1.0)


def chi_approx(sys, c, n):
    """Bisection estimate of chi_n, good enough to seed inverse iteration."""
    j = n // 2
    need = sys.size - j
    if need < 1:
        raise BracketError(f"section of size {sys.size} has no eigenvalue of rank {j}")
    lo, hi = _pad(*chi_bracket(c, n, tighten=True))
    if sturm_count(sys, lo) < need or sturm_count(sys, hi) >= need:
        lo, hi = _pad(*chi_bracket(c, n))
        if sturm_count(sys, lo) < need or sturm_count(sys, hi) >= need:
            raise BracketError(
                f"Sturm counts inconsistent on [{lo}, {hi}] for n={n}; section too small?")
    while True:
        mid = 0.5 * (lo + hi)
        if hi - lo <= max(1e-6 * abs(mid), 1e-3) or mid in (lo, hi):
            return mid
        if sturm_count(sys, mid) >= need:
            lo = mid
        else:
            hi = mid


def _solve(sys, sigma, rhs):
    kern = _backend.kernels
    x = kern.shifted_solve(sys.diag, sys.offdiag, sigma, rhs)
    while x is None:
        sigma += 1e-8 * (1.0 + abs(sigma))
        x = kern.shifted_solve(sys.diag, sys.offdiag, sigma, rhs)
    return np.asarray(x)


def _normalize(x):
    x = x / np.linalg.norm(x)
    i = int(np.argmax(np.abs(x)))
    return -x if x[i] < 0 else x


def log_abs_first(sys, chi, beta):
    """log|beta_0| from the ratios beta_i/beta_{i+1} below the peak."""
    m = int(np.argmax(np.abs(beta)))
    if m == 0:
        return math.log(abs(beta[0]))
    a = sys.diag - chi
    b = sys.offdiag
    total = math.log(abs(beta[m]))
    r = -b[0] / a[0]
    total += math.log(abs(r))
    for i in range(1, m):
        r = -b[i] / (a[i] + b[i - 1] * r)
        total += math.log(abs(r))
    return total


def eigenpair(sys, chi_tilde, seed=None, rank=None):
    """Inverse iteration from the shift chi_tilde.

    The first phase keeps the shift fixed until the Rayleigh quotient
    settles; the second uses the quotient as shift and runs until the two
    leading coordinates stop changing.
    """
    if seed is None:
        seed = default_seed()
    rng = np.random.default_rng(seed)
    x = _normalize(rng.standard_normal(sys.size))
    rho_old = None
    it = 0
    while True:
        it += 1
        if it > MAX_ITER:
            raise ConvergenceError("inverse iteration: shift phase did not settle")
        x = _normalize(_solve(sys, chi_tilde, x))
        rho = float(x @ sys.matvec(x))
        if rho_old is not None and abs(rho - rho_old) <= 1e-14 * (1.0 + abs(rho)):
            break
        rho_old = rho
    head = x[:2].copy()
    while True:
        it += 1
        if it > MAX_ITER:
            raise ConvergenceError("inverse iteration: leading coordinates did not settle")
        x = _normalize(_solve(sys, rho, x))
        rho = float(x @ sys.matvec(x))
        new = x[:2]
        if np.all(np.abs(new - head) <= 1e-13 * np.abs(new)):
            break
        head = new.copy()
    resid = float(np.linalg.norm(sys.matvec(x) - rho * x))
    if rank is not None:
        gap = 1e-9 * (1.0 + abs(rho))
        need = sys.size - rank
        if not (sturm_count(sys, rho - gap) >= need > sturm_count(sys, rho + gap)):
            raise ConvergenceError(
                f"inverse iteration converged to the wrong eigenvalue (rank {rank} expected)")
    return EigenPair(chi=rho, beta=x, iterations=it,
                     log_abs_first=log_abs_first(sys, rho, x), residual=resid)


def dense_eigenpairs(sys):
    """Full dense eigensolve; a test oracle for small sections."""
    w, v = np.linalg.eigh(sys.dense())
    return w, v
