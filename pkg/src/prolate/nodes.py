"""Roots of psi_n in (-1, 1) by integrating the inverse Pruefer phase and
polishing each estimate with Newton's method."""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import ConvergenceError, ProlateError
from .pswf import eval_psi_pair

RK_STEPS = 20
TAYLOR_ORDER = 30
TAYLOR_RADIUS = 0.2
ENDPOINT_BAND = 1e-6
# Taylor expansions about t are also refused when the step exceeds this
# fraction of the distance from t to the nearest singular point +-1
RADIUS_FRACTION = 0.5
NEWTON_TOL = 1e-15
NEWTON_MAXIT = 20


@dataclass(frozen=True)
class NodeSet:
    """Roots t_1 < ... < t_n of psi_n with psi_n' at each root."""

    nodes: np.ndarray
    dpsi: np.ndarray
    pf: object
    via_taylor: np.ndarray

    def __len__(self):
        return len(self.nodes)

    def residuals(self):
        """|psi_n(t_j)| by direct series evaluation."""
        return np.abs(eval_psi_pair(self.pf, self.nodes)[0])


def _newton_direct(pf, t):
    last = math.inf
    for _ in range(NEWTON_MAXIT):
        f, g = eval_psi_pair(pf, t)
        delta = f / g
        if abs(delta) > last:
            return t
        t -= delta
        last = abs(delta)
        if last <= NEWTON_TOL:
            return t
    raise ConvergenceError(f"Newton did not converge near t={t}")


def phase_slope(pf, s, eta):
    """ds/deta for the inverse phase, 1/(f(s) - v(s) sin 2 eta)."""
    c, chi = pf.c, pf.chi
    f = math.sqrt((chi - c * c * s * s) / (1.0 - s * s))
    v = 0.5 * (s / (s * s - 1.0) + c * c * s / (c * c * s * s - chi))
    return 1.0 / (f - v * math.sin(2.0 * eta))


def prufer_phase(pf, ts):
    """Continuous phase theta on an increasing grid in (-1, 1).

    theta = atan(-sqrt((1-t^2)/(chi-c^2 t^2)) psi'/psi) + m pi, with the
    branch fixed by theta(-1) = 0 and continuity. The grid must start
    left of the first root and be fine enough that theta moves by less
    than pi/2 between samples.
    """
    ts = np.asarray(ts, dtype=float)
    f, g = eval_psi_pair(pf, ts)
    p = 1.0 - ts * ts
    q = pf.chi - pf.c ** 2 * ts * ts
    with np.errstate(divide="ignore"):
        raw = np.arctan(-np.sqrt(p / q) * g / f)
    return np.unwrap(raw, period=np.pi)


def find_nodes(pf, kernels=None):
    """All n roots of psi_n in (-1, 1), increasing."""
    n = pf.n
    if n == 0:
        return NodeSet(nodes=np.zeros(0), dpsi=np.zeros(0), pf=pf,
                       via_taylor=np.zeros(0, dtype=bool))
    kern = kernels or _backend.kernels
    if n % 2:
        t0 = 0.0
        eta0 = math.pi * n / 2
        f0, g0 = eval_psi_pair(pf, 0.0)
        f0 = 0.0
        count = (n - 1) // 2
    else:
        guess = kern.prufer_rk2(0.0, math.pi * n / 2, math.pi * (n + 1) / 2,
                                RK_STEPS, pf.chi, pf.c)
        if not (0.0 < guess < 1.0):
            raise ConvergenceError("phase integration for the first positive root failed")
        t0 = _newton_direct(pf, guess)
        f0, g0 = eval_psi_pair(pf, t0)
        eta0 = math.pi * (n + 1) / 2
        count = n // 2 - 1
    nodes, dpsi, _, flag, status = kern.march_nodes(
        pf.alpha_eval, pf.chi, pf.c, t0, f0, g0, eta0, count,
        TAYLOR_ORDER, RK_STEPS, TAYLOR_RADIUS, ENDPOINT_BAND,
        RADIUS_FRACTION, NEWTON_TOL, NEWTON_MAXIT)
    if status == 1:
        raise ConvergenceError("Newton did not converge while marching roots")
    if status == 2:
        raise ProlateError("root ordering violated while marching roots")
    if status == 3:
        raise ConvergenceError("phase integration left the interval while marching roots")
    pos = np.concatenate([[t0], np.asarray(nodes)])
    dpos = np.concatenate([[g0], np.asarray(dpsi)])
    tay = np.concatenate([[False], np.asarray(flag, dtype=bool)])
    sgn = -1.0 if n % 2 == 0 else 1.0
    if n % 2:
        # t = 0 is the middle root
        neg, dneg, tneg = -pos[:0:-1], sgn * dpos[:0:-1], tay[:0:-1]
    else:
        neg, dneg, tneg = -pos[::-1], sgn * dpos[::-1], tay[::-1]
    t = np.concatenate([neg, pos])
    d = np.concatenate([dneg, dpos])
    fl = np.concatenate([tneg, tay])
    if len(t) != n or np.any(np.diff(t) <= 0):
        raise ProlateError("root ordering violated")
    return NodeSet(nodes=t, dpsi=d, pf=pf, via_taylor=fl)
