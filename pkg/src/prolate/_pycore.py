"""Pure-Python versions of the compiled kernels in ``_core.pyx``.

Used when the extension is not built, or when PROLATE_BACKEND=python.
Signatures and return values match the compiled module.
"""

import math

import numpy as np


def sturm_count(diag, off, sigma):
    """Number of eigenvalues of the tridiagonal matrix strictly above sigma."""
    count = 0
    q = diag[0] - sigma
    if q == 0.0:
        q = -1e-300
    if q > 0.0:
        count += 1
    for i in range(1, len(diag)):
        q = (diag[i] - sigma) - off[i - 1] * off[i - 1] / q
        if q == 0.0:
            q = -1e-300
        if q > 0.0:
            count += 1
    return count


def shifted_solve(diag, off, sigma, rhs):
    """Solve (T - sigma I) x = rhs by elimination from the top.

    Returns None when an exact zero pivot is met.
    """
    n = len(diag)
    x = np.empty(n)
    d = np.empty(n)
    d[0] = diag[0] - sigma
    x[0] = rhs[0]
    if d[0] == 0.0:
        return None
    for i in range(1, n):
        w = off[i - 1] / d[i - 1]
        d[i] = (diag[i] - sigma) - w * off[i - 1]
        if d[i] == 0.0:
            return None
        x[i] = rhs[i] - w * x[i - 1]
    x[n - 1] = x[n - 1] / d[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = (x[i] - off[i] * x[i + 1]) / d[i]
    return x


def legendre_series(alpha, xs):
    """Values and derivatives of sum_k alpha_k P_k at every point of xs.

    Vectorized over xs; the loop runs over the degree.
    """
    alpha = np.asarray(alpha, dtype=float)
    x = np.asarray(xs, dtype=float)
    m = len(alpha)
    s = np.full_like(x, alpha[0])
    if m == 1:
        return s, np.zeros_like(x)
    edge = 1.0 - np.abs(x) < 1e-10
    om = np.where(edge, 1.0, 1.0 - x * x)
    p0 = np.ones_like(x)
    p1 = x.copy()
    dp0 = np.zeros_like(x)
    dp1 = np.ones_like(x)
    s = s + alpha[1] * x
    ds = alpha[1] * (1.0 - x * x)
    de = np.full_like(x, alpha[1])
    for k in range(1, m - 1):
        p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
        dp2 = dp0 + (2 * k + 1) * p1
        p0, p1 = p1, p2
        dp0, dp1 = dp1, dp2
        a = alpha[k + 1]
        s += a * p1
        ds += a * (k + 1) * (p0 - x * p1)
        de += a * dp1
    return s, np.where(edge, de, ds / om)


def legendre_q_series(alpha, xs):
    """Values and derivatives of sum_k alpha_k Q_k at every point of xs."""
    alpha = np.asarray(alpha, dtype=float)
    x = np.asarray(xs, dtype=float)
    m = len(alpha)
    q0 = np.arctanh(x)
    q1 = x * q0 - 1.0
    s = alpha[0] * q0
    ds = np.full_like(x, alpha[0])
    if m > 1:
        s = s + alpha[1] * q1
        ds = ds + alpha[1] * (q0 - x * q1)
    for k in range(1, m - 1):
        q2 = ((2 * k + 1) * x * q1 - k * q0) / (k + 1)
        q0, q1 = q1, q2
        s += alpha[k + 1] * q1
        ds += alpha[k + 1] * (k + 1) * (q0 - x * q1)
    return s, ds / (1.0 - x * x)


def _ladder(t, d0, d1, chi, c, a0, a1, s, order):
    # e[k] = f^(k)(t) s^k / k!
    p = 1.0 - t * t
    c2 = c * c
    e = [0.0] * (order + 1)
    e[0] = d0
    e[1] = d1 * s
    if order < 2:
        return e
    d2 = (2.0 * t * d1 - (chi - c2 * t * t) * d0 - c2 * (a0 * t + a1 / 3.0)) / p
    e[2] = d2 * s * s / 2.0
    if order < 3:
        return e
    d3 = (4.0 * t * d2 - (chi - c2 * t * t - 2.0) * d1 + 2.0 * c2 * t * d0 - c2 * a0) / p
    e[3] = d3 * s * s * s / 6.0
    for k in range(2, order - 1):
        ak = chi - k * (k + 1.0) - c2 * t * t
        w = (k + 1.0) * (k + 2.0)
        e[k + 2] = (2.0 * (k + 1) * t * s * e[k + 1] / (k + 2.0)
                    - ak * s * s * e[k] / w
                    + 2.0 * c2 * t * s * s * s * e[k - 1] / w
                    + c2 * s * s * s * s * e[k - 2] / w) / p
    return e


def _taylor(e, order, r, s):
    acc = e[order]
    dacc = order * e[order]
    for k in range(order - 1, -1, -1):
        acc = acc * r + e[k]
    for k in range(order - 1, 0, -1):
        dacc = dacc * r + k * e[k]
    return acc, dacc / s


def derivative_ladder(t, d0, d1, chi, c, order, a0=0.0, a1=0.0):
    """Derivatives of orders 0..order at t (unscaled)."""
    e = np.array(_ladder(t, d0, d1, chi, c, a0, a1, 1.0, order))
    fact = 1.0
    for k in range(2, order + 1):
        fact *= k
        e[k] *= fact
    return e


def taylor_pair(ders, h):
    """Value and derivative at t + h of the Taylor polynomial from ders."""
    order = len(ders) - 1
    f = fp = 0.0
    term = 1.0
    for k in range(order + 1):
        f += ders[k] * term
        if k < order:
            fp += ders[k + 1] * term
        term *= h / (k + 1)
    return f, fp


def _slope(eta, s, chi, c):
    f = math.sqrt((chi - c * c * s * s) / (1.0 - s * s))
    v = 0.5 * (s / (s * s - 1.0) + c * c * s / (c * c * s * s - chi))
    return 1.0 / (f - v * math.sin(2.0 * eta))


def prufer_rk2(s, eta0, eta1, steps, chi, c):
    """Integrate ds/deta = 1/(f(s) - v(s) sin 2 eta) from eta0 to eta1."""
    h = (eta1 - eta0) / steps
    k0 = h * _slope(eta0, s, chi, c)
    for i in range(steps):
        k1 = h * _slope(eta0 + (i + 1) * h, s + k0, chi, c)
        s = s + 0.5 * (k0 + k1)
        k0 = k1
    return s


def _point(alpha, t):
    f, g = legendre_series(alpha, np.array([t]))
    return float(f[0]), float(g[0])


def march_nodes(alpha, chi, c, t0, psi0, dpsi0, eta0, count, order=30,
                rk_steps=20, radius=0.2, band=1e-6, ratio=0.5, tol=1e-15,
                maxit=20):
    """Find `count` consecutive roots to the right of the root t0.

    Returns (nodes, dpsi, psi, via_taylor, status); status is 0 on success,
    1 for a Newton failure, 2 for an ordering violation and 3 for a phase
    integration that left the domain.
    """
    nodes = np.zeros(count)
    dpsi = np.zeros(count)
    psiv = np.zeros(count)
    flag = np.zeros(count, dtype=np.int8)
    order = min(order, 62)
    tp, fp0, dp0, eta = t0, psi0, dpsi0, eta0
    for j in range(count):
        try:
            guess = prufer_rk2(tp, eta, eta + math.pi, rk_steps, chi, c)
        except (ValueError, ZeroDivisionError):
            return nodes, dpsi, psiv, flag, 3
        if not math.isfinite(guess) or guess <= tp or guess >= 1.0:
            return nodes, dpsi, psiv, flag, 3
        s = guess - tp
        taylor = (abs(s) <= radius and abs(s) <= ratio * (1.0 - abs(tp))
                  and 1.0 - guess * guess >= band)
        if taylor:
            e = _ladder(tp, fp0, dp0, chi, c, 0.0, 0.0, s, order)

            def ev(x):
                return _taylor(e, order, (x - tp) / s, s)
        else:
            def ev(x):
                return _point(alpha, x)
        t = guess
        last = 1e300
        ok = False
        for _ in range(maxit):
            f, g = ev(t)
            delta = f / g
            if abs(delta) > last:
                ok = True
                break
            t -= delta
            last = abs(delta)
            if last <= tol:
                ok = True
                break
        if not ok:
            return nodes, dpsi, psiv, flag, 1
        f, g = ev(t)
        if t <= tp:
            return nodes, dpsi, psiv, flag, 2
        nodes[j], dpsi[j], psiv[j], flag[j] = t, g, f, taylor
        tp, fp0, dp0 = t, f, g
        eta += math.pi
    return nodes, dpsi, psiv, flag, 0


def march_phi(chi, c, a0, a1, nodes, phi0, dphi0, order=60):
    """Step the second-kind companion from nodes[0] across the given nodes."""
    m = len(nodes)
    order = min(order, 62)
    phi = np.empty(m)
    dphi = np.empty(m)
    phi[0], dphi[0] = phi0, dphi0
    for j in range(m - 1):
        s = nodes[j + 1] - nodes[j]
        e = _ladder(nodes[j], phi[j], dphi[j], chi, c, a0, a1, s, order)
        phi[j + 1], dphi[j + 1] = _taylor(e, order, 1.0, s)
    return phi, dphi
