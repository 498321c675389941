"""Legendre polynomials, second-kind functions, a Gauss-Legendre rule and E(k)."""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import DomainError

Q_GUARD = 1e-14


@dataclass(frozen=True)
class LegendreTables:
    """P_k, P_k', Q_k and Q_k' for k = 0..K at a single point x."""

    x: float
    order: int
    p: np.ndarray
    dp: np.ndarray
    q: np.ndarray
    dq: np.ndarray


@dataclass(frozen=True)
class GaussRule:
    order: int
    nodes: np.ndarray
    weights: np.ndarray


def legendre_p(x, K):
    """P_0..P_K at x (scalar or array) by forward recurrence; shape (K+1, ...)."""
    x = np.asarray(x, dtype=float)
    p = np.empty((K + 1,) + x.shape)
    p[0] = 1.0
    if K >= 1:
        p[1] = x
    for k in range(1, K):
        p[k + 1] = ((2 * k + 1) * x * p[k] - k * p[k - 1]) / (k + 1)
    return p


def legendre_tables(x, K):
    """Forward-recurrence tables of P, P', Q, Q' at x for orders 0..K."""
    x = float(x)
    if K < 1:
        raise DomainError("K must be at least 1")
    if not abs(x) < 1.0 - Q_GUARD:
        raise DomainError(f"x={x!r} outside (-1, 1); Q_k is singular at the endpoints")
    k = np.arange(K + 1)
    om = 1.0 - x * x
    p = legendre_p(x, K)
    q = np.empty(K + 1)
    q[0] = np.arctanh(x)
    q[1] = x * q[0] - 1.0
    for j in range(1, K):
        q[j + 1] = ((2 * j + 1) * x * q[j] - j * q[j - 1]) / (j + 1)
    dp = np.zeros(K + 1)
    dq = np.empty(K + 1)
    dp[1:] = k[1:] * (p[:-1] - x * p[1:]) / om
    dq[0] = 1.0 / om
    dq[1:] = k[1:] * (q[:-1] - x * q[1:]) / om
    return LegendreTables(x=x, order=K, p=p, dp=dp, q=q, dq=dq)


def _pm_pair(t, m):
    # P_m and P_{m-1} at every point of t without storing the whole table
    p0 = np.ones_like(t)
    p1 = t.copy()
    for k in range(1, m):
        p0, p1 = p1, ((2 * k + 1) * t * p1 - k * p0) / (k + 1)
    return p1, p0


@lru_cache(maxsize=64)
def _gauss(m):
    k = np.arange(1, m + 1)
    t = np.cos(np.pi * (k - 0.25) / (m + 0.5))
    for _ in range(100):
        pm, pm1 = _pm_pair(t, m)
        dt = pm / (m * (pm1 - t * pm) / (1.0 - t * t))
        t = t - dt
        if np.max(np.abs(dt)) < 1e-13:
            # one more step lands at rounding level
            pm, pm1 = _pm_pair(t, m)
            t = t - pm / (m * (pm1 - t * pm) / (1.0 - t * t))
            break
    pm, pm1 = _pm_pair(t, m)
    dp = m * (pm1 - t * pm) / (1.0 - t * t)
    w = 2.0 / ((1.0 - t * t) * dp * dp)
    # roots come out in decreasing order; sort and symmetrize exactly
    t = t[::-1].copy()
    w = w[::-1].copy()
    t = 0.5 * (t - t[::-1])
    w = 0.5 * (w + w[::-1])
    if m % 2:
        t[m // 2] = 0.0
    t.flags.writeable = False
    w.flags.writeable = False
    return t, w


def gauss_rule(m):
    """m-point Gauss-Legendre rule on (-1, 1)."""
    if m < 1:
        raise DomainError("m must be at least 1")
    t, w = _gauss(int(m))
    return GaussRule(order=int(m), nodes=t, weights=w)


def elliptic_E(k):
    """Complete elliptic integral of the second kind, modulus k in [0, 1]."""
    k = float(k)
    if not 0.0 <= k <= 1.0:
        raise DomainError(f"modulus k={k!r} outside [0, 1]")
    if k == 1.0:
        return 1.0
    val, _ = integrate.quad(lambda t: np.sqrt(1.0 - k * k * np.sin(t) ** 2),
                            0.0, np.pi / 2, epsabs=1e-13, epsrel=1e-13, limit=200)
    return val
