# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: Sturm counts, shifted tridiagonal solves, Legendre
sums, derivative ladders, Taylor stepping and the node/weight marches.

Every function here has a twin with the same name and signature in
``_pycore.py``.
"""

from libc.math cimport sqrt, fabs, sin, atanh, isfinite
import numpy as np

cdef double PI = 3.141592653589793


def sturm_count(const double[::1] diag, const double[::1] off, double sigma):
    """Number of eigenvalues of the tridiagonal matrix strictly above sigma."""
    cdef Py_ssize_t n = diag.shape[0], i
    cdef long count = 0
    cdef double q = diag[0] - sigma
    if q == 0.0:
        q = -1e-300
    if q > 0.0:
        count += 1
    for i in range(1, n):
        q = (diag[i] - sigma) - off[i - 1] * off[i - 1] / q
        if q == 0.0:
            q = -1e-300
        if q > 0.0:
            count += 1
    return count


def shifted_solve(const double[::1] diag, const double[::1] off, double sigma,
                  const double[::1] rhs):
    """Solve (T - sigma I) x = rhs by elimination from the top.

    Returns None when an exact zero pivot is met.
    """
    cdef Py_ssize_t n = diag.shape[0], i
    out = np.empty(n)
    piv_arr = np.empty(n)
    cdef double[::1] x = out
    cdef double[::1] d = piv_arr
    cdef double w
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
    return out


cdef void _pseries(const double[::1] alpha, double x, double* f, double* fp) nogil:
    cdef Py_ssize_t m = alpha.shape[0], k
    cdef double p0 = 1.0, p1 = x, p2, s, ds, dp0, dp1, dp2, om
    s = alpha[0]
    if m == 1:
        f[0] = s
        fp[0] = 0.0
        return
    s += alpha[1] * x
    om = 1.0 - x * x
    if 1.0 - fabs(x) >= 1e-10:
        ds = alpha[1] * (1.0 - x * x)
        for k in range(1, m - 1):
            p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
            p0 = p1
            p1 = p2
            s += alpha[k + 1] * p1
            ds += alpha[k + 1] * (k + 1) * (p0 - x * p1)
        f[0] = s
        fp[0] = ds / om
    else:
        dp0 = 0.0
        dp1 = 1.0
        ds = alpha[1]
        for k in range(1, m - 1):
            p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1)
            dp2 = dp0 + (2 * k + 1) * p1
            p0 = p1
            p1 = p2
            dp0 = dp1
            dp1 = dp2
            s += alpha[k + 1] * p1
            ds += alpha[k + 1] * dp1
        f[0] = s
        fp[0] = ds


cdef void _qseries(const double[::1] alpha, double x, double* f, double* fp) nogil:
    cdef Py_ssize_t m = alpha.shape[0], k
    cdef double q0 = atanh(x), q1, q2, s, ds, om = 1.0 - x * x
    q1 = x * q0 - 1.0
    s = alpha[0] * q0
    ds = alpha[0]
    if m > 1:
        s += alpha[1] * q1
        ds += alpha[1] * (q0 - x * q1)
    for k in range(1, m - 1):
        q2 = ((2 * k + 1) * x * q1 - k * q0) / (k + 1)
        q0 = q1
        q1 = q2
        s += alpha[k + 1] * q1
        ds += alpha[k + 1] * (k + 1) * (q0 - x * q1)
    f[0] = s
    fp[0] = ds / om


def legendre_series(const double[::1] alpha, const double[::1] xs):
    """Values and derivatives of sum_k alpha_k P_k at every point of xs."""
    cdef Py_ssize_t n = xs.shape[0], i
    fo = np.empty(n)
    go = np.empty(n)
    cdef double[::1] f = fo
    cdef double[::1] g = go
    with nogil:
        for i in range(n):
            _pseries(alpha, xs[i], &f[i], &g[i])
    return fo, go


def legendre_q_series(const double[::1] alpha, const double[::1] xs):
    """Values and derivatives of sum_k alpha_k Q_k at every point of xs."""
    cdef Py_ssize_t n = xs.shape[0], i
    fo = np.empty(n)
    go = np.empty(n)
    cdef double[::1] f = fo
    cdef double[::1] g = go
    with nogil:
        for i in range(n):
            _qseries(alpha, xs[i], &f[i], &g[i])
    return fo, go


cdef void _ladder(double t, double d0, double d1, double chi, double c,
                  double a0, double a1, double s, int order, double* e) nogil:
    # e[k] = f^(k)(t) s^k / k!  for the prolate operator with the forcing
    # -c^2 (a0 t + a1/3); a0 = a1 = 0 gives psi itself.
    cdef double p = 1.0 - t * t, c2 = c * c, d2, d3, ak
    cdef int k
    e[0] = d0
    e[1] = d1 * s
    if order < 2:
        return
    d2 = (2.0 * t * d1 - (chi - c2 * t * t) * d0 - c2 * (a0 * t + a1 / 3.0)) / p
    e[2] = d2 * s * s / 2.0
    if order < 3:
        return
    d3 = (4.0 * t * d2 - (chi - c2 * t * t - 2.0) * d1 + 2.0 * c2 * t * d0 - c2 * a0) / p
    e[3] = d3 * s * s * s / 6.0
    for k in range(2, order - 1):
        ak = chi - k * (k + 1.0) - c2 * t * t
        e[k + 2] = (2.0 * (k + 1) * t * s * e[k + 1] / (k + 2.0)
                    - ak * s * s * e[k] / ((k + 1.0) * (k + 2.0))
                    + 2.0 * c2 * t * s * s * s * e[k - 1] / ((k + 1.0) * (k + 2.0))
                    + c2 * s * s * s * s * e[k - 2] / ((k + 1.0) * (k + 2.0))) / p


cdef void _taylor(const double* e, int order, double r, double s,
                  double* f, double* fp) nogil:
    cdef int k
    cdef double acc = e[order], dacc = order * e[order]
    for k in range(order - 1, -1, -1):
        acc = acc * r + e[k]
    for k in range(order - 1, 0, -1):
        dacc = dacc * r + k * e[k]
    f[0] = acc
    fp[0] = dacc / s


def derivative_ladder(double t, double d0, double d1, double chi, double c,
                      int order, double a0=0.0, double a1=0.0):
    """Derivatives of orders 0..order at t (unscaled)."""
    out = np.empty(order + 1)
    cdef double[::1] e = out
    cdef int k
    cdef double fact = 1.0
    _ladder(t, d0, d1, chi, c, a0, a1, 1.0, order, &e[0])
    for k in range(2, order + 1):
        fact *= k
        e[k] *= fact
    return out


def taylor_pair(const double[::1] ders, double h):
    """Value and derivative at t + h of the Taylor polynomial from ders."""
    cdef int order = ders.shape[0] - 1, k
    cdef double f = 0.0, fp = 0.0, term = 1.0
    for k in range(order + 1):
        f += ders[k] * term
        if k < order:
            fp += ders[k + 1] * term
        term *= h / (k + 1)
    return f, fp


cdef inline double _slope(double eta, double s, double chi, double c) nogil:
    cdef double f = sqrt((chi - c * c * s * s) / (1.0 - s * s))
    cdef double v = 0.5 * (s / (s * s - 1.0) + c * c * s / (c * c * s * s - chi))
    return 1.0 / (f - v * sin(2.0 * eta))


cdef double _rk2(double s, double eta0, double eta1, int steps, double chi, double c) nogil:
    cdef double h = (eta1 - eta0) / steps, k0, k1
    cdef int i
    k0 = h * _slope(eta0, s, chi, c)
    for i in range(steps):
        k1 = h * _slope(eta0 + (i + 1) * h, s + k0, chi, c)
        s = s + 0.5 * (k0 + k1)
        k0 = k1
    return s


def prufer_rk2(double s, double eta0, double eta1, int steps, double chi, double c):
    """Integrate ds/deta = 1/(f(s) - v(s) sin 2 eta) from eta0 to eta1."""
    return _rk2(s, eta0, eta1, steps, chi, c)


def march_nodes(const double[::1] alpha, double chi, double c, double t0,
                double psi0, double dpsi0, double eta0, int count,
                int order=30, int rk_steps=20, double radius=0.2,
                double band=1e-6, double ratio=0.5, double tol=1e-15,
                int maxit=20):
    """Find `count` consecutive roots to the right of the root t0.

    Returns (nodes, dpsi, psi, via_taylor, status); status is 0 on success,
    1 for a Newton failure, 2 for an ordering violation and 3 for a phase
    integration that left the domain.
    """
    nodes_o = np.zeros(count)
    dpsi_o = np.zeros(count)
    psi_o = np.zeros(count)
    flag_o = np.zeros(count, dtype=np.int8)
    cdef double[::1] nodes = nodes_o
    cdef double[::1] dpsi = dpsi_o
    cdef double[::1] psiv = psi_o
    cdef signed char[::1] flag = flag_o
    cdef double e[64]
    cdef double tp = t0, fp0 = psi0, dp0 = dpsi0, eta = eta0
    cdef double guess, s, t, f, g, delta, last
    cdef int j, it, taylor, ok
    if order > 62:
        order = 62
    for j in range(count):
        guess = _rk2(tp, eta, eta + PI, rk_steps, chi, c)
        if not isfinite(guess) or guess <= tp or guess >= 1.0:
            return nodes_o, dpsi_o, psi_o, flag_o, 3
        s = guess - tp
        taylor = (fabs(s) <= radius and fabs(s) <= ratio * (1.0 - fabs(tp))
                  and 1.0 - guess * guess >= band)
        if taylor:
            _ladder(tp, fp0, dp0, chi, c, 0.0, 0.0, s, order, e)
        t = guess
        last = 1e300
        ok = 0
        for it in range(maxit):
            if taylor:
                _taylor(e, order, (t - tp) / s, s, &f, &g)
            else:
                _pseries(alpha, t, &f, &g)
            delta = f / g
            if fabs(delta) > last:
                ok = 1
                break
            t -= delta
            last = fabs(delta)
            if last <= tol:
                ok = 1
                break
        if not ok:
            return nodes_o, dpsi_o, psi_o, flag_o, 1
        if taylor:
            _taylor(e, order, (t - tp) / s, s, &f, &g)
        else:
            _pseries(alpha, t, &f, &g)
        if t <= tp:
            return nodes_o, dpsi_o, psi_o, flag_o, 2
        nodes[j] = t
        dpsi[j] = g
        psiv[j] = f
        flag[j] = taylor
        tp = t
        fp0 = f
        dp0 = g
        eta += PI
    return nodes_o, dpsi_o, psi_o, flag_o, 0


def march_phi(double chi, double c, double a0, double a1,
              const double[::1] nodes, double phi0, double dphi0, int order=60):
    """Step the second-kind companion from nodes[0] across the given nodes."""
    cdef Py_ssize_t m = nodes.shape[0], j
    phi_o = np.empty(m)
    dphi_o = np.empty(m)
    cdef double[::1] phi = phi_o
    cdef double[::1] dphi = dphi_o
    cdef double e[64]
    cdef double f, g, s
    if order > 62:
        order = 62
    phi[0] = phi0
    dphi[0] = dphi0
    for j in range(m - 1):
        s = nodes[j + 1] - nodes[j]
        _ladder(nodes[j], phi[j], dphi[j], chi, c, a0, a1, s, order, e)
        _taylor(e, order, 1.0, s, &f, &g)
        phi[j + 1] = f
        dphi[j + 1] = g
    return phi_o, dphi_o
