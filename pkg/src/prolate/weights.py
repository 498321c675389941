"""Quadrature weights W_j = -2 Phi(t_j) / psi_n'(t_j), where
Phi = sum_k alpha_k Q_k is the second-kind companion of psi_n.

weights_series sums the Q expansion at every node (O(n^2) overall);
weights_fast seeds Phi at the first positive node and carries it across
the nodes with Taylor steps of the inhomogeneous prolate ODE (O(n)).
"""

import numpy as np

from . import _backend
from .errors import TaylorDriftError
from .pswf import eval_phi_tilde
from .report import ErrorReport

TAYLOR_ORDER = 60
SERIES_TAIL = 4
DRIFT_TOL = 1e-10
MIN_STEPPING_N = 9


def weights_series(pf, ns):
    """Weights from the second-kind Legendre sum at every node."""
    if len(ns) == 0:
        return np.zeros(0)
    phi, _ = eval_phi_tilde(pf, ns.nodes)
    return -2.0 * np.asarray(phi) / ns.dpsi


def phi_tilde_marched(pf, ns, kernels=None):
    """Phi and Phi' at the non-negative half of the nodes.

    Returns (index of the first non-negative node, phi, dphi, the value the
    Taylor march predicts at the first series-evaluated node).
    """
    kern = kernels or _backend.kernels
    n = pf.n
    start = n // 2
    pos = np.ascontiguousarray(ns.nodes[start:])
    m = len(pos)
    a0, a1 = float(pf.alpha[0]), float(pf.alpha[1])
    seed_phi, seed_dphi = eval_phi_tilde(pf, pos[:1])
    # march up to and including the first of the series-evaluated nodes
    stop = m - SERIES_TAIL + 1
    phi, dphi = kern.march_phi(pf.chi, pf.c, a0, a1, pos[:stop], float(seed_phi[0]),
                               float(seed_dphi[0]), TAYLOR_ORDER)
    phi = np.asarray(phi)
    dphi = np.asarray(dphi)
    tail_phi, tail_dphi = eval_phi_tilde(pf, pos[stop - 1:])
    predicted = phi[-1]
    phi = np.concatenate([phi[:-1], tail_phi])
    dphi = np.concatenate([dphi[:-1], tail_dphi])
    return start, phi, dphi, predicted


def weights_fast(pf, ns, kernels=None):
    """Weights by Taylor stepping of the second-kind companion."""
    n = pf.n
    if n < MIN_STEPPING_N:
        return weights_series(pf, ns)
    start, phi, _, predicted = phi_tilde_marched(pf, ns, kernels)
    k = len(phi) - SERIES_TAIL
    dpos = ns.dpsi[start:]
    w_pos = -2.0 * phi / dpos
    drift = abs(-2.0 * predicted / dpos[k] - w_pos[k])
    if not drift <= DRIFT_TOL:
        raise TaylorDriftError(
            f"stepped weight differs from the series value by {drift:.3e} at node {start + k + 1}")
    if n % 2:
        return np.concatenate([w_pos[:0:-1], w_pos])
    return np.concatenate([w_pos[::-1], w_pos])


def weight_profile_check(pf, ns, W, bound=None):
    """Compare each W_j with the Gaussian-like profile through the centre.

    Row j holds W_j - W_c psi'(0)^2 / (psi'(t_j)^2 (1 - t_j^2)) where W_c
    is the weight at t = 0. The default bound is |lambda_n|.
    """
    n = pf.n
    if n % 2 == 0:
        raise ValueError("profile check uses the centre node and needs odd n")
    mid = n // 2
    if bound is None:
        bound = pf.lambda_abs
    t = ns.nodes
    d = ns.dpsi
    prof = W[mid] * (d[mid] / d) ** 2 / (1.0 - t * t)
    rep = ErrorReport(label="weight profile", metadata={
        "c": pf.c, "n": n, "lambda_abs": pf.lambda_abs, "chi": pf.chi})
    for j in range(mid + 1):
        rep.add(j + 1, W[j] - prof[j], bound, weight=float(W[j]))
    return rep
