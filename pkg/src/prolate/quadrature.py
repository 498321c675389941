"""Quadrature rules on the roots of psi_n, order selection for a target
accuracy, and the closed-form error and eigenvalue bounds they rely on."""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ParameterWindowError
from .nodes import find_nodes
from .pswf import prolate
from .weights import weights_fast

KINDS = ("empirical", "certified", "explicit_large", "explicit_simple", "weak")
_LOG_CONST = math.log(6 ** 5 * 14340)


@dataclass(frozen=True)
class QuadratureRule:
    c: float
    n: int
    nodes: np.ndarray
    weights: np.ndarray
    lambda_abs: float
    chi: float
    pf: object = field(default=None, repr=False, compare=False)

    def __call__(self, f):
        return integrate(self, f)


@dataclass(frozen=True)
class OrderSelection:
    rule: str
    n: int
    bound_value: float
    c: float = None
    eps: float = None


def build_rule(c, n, seed=None, kernels=None):
    """Nodes and weights of the order-n rule for band limit c."""
    if n < 1:
        raise DomainError("a quadrature rule needs n >= 1")
    pf = prolate(c, n, seed=seed)
    ns = find_nodes(pf, kernels)
    w = weights_fast(pf, ns, kernels)
    return QuadratureRule(c=pf.c, n=pf.n, nodes=ns.nodes, weights=w,
                          lambda_abs=pf.lambda_abs, chi=pf.chi, pf=pf)


def integrate(rule, f):
    """sum_j W_j f(t_j).

    f is first called with the node array; scalar-only functions fall back
    to one call per node.
    """
    try:
        vals = np.asarray(f(rule.nodes), dtype=float)
    except TypeError:
        vals = None
    if vals is None or vals.shape != rule.nodes.shape:
        vals = np.array([f(float(t)) for t in rule.nodes], dtype=float)
    return float(np.dot(rule.weights, vals))


def _log_certified(log_lam, chi):
    return log_lam + math.log(24.0 * -log_lam + 6.0 * chi)


def certified_bound_value(lambda_abs, chi, log_lambda=None):
    """|lambda| (24 log(1/|lambda|) + 6 chi), without any precondition check."""
    if log_lambda is None:
        log_lambda = math.log(lambda_abs)
    return math.exp(_log_certified(log_lambda, chi))


def certified_error_bound(pf):
    """Proven bound on the error for every psi_m with m < n.

    Valid for c > 30 and n > 2c/pi + 5.
    """
    c, n = pf.c, pf.n
    if not c > 30 or not n > 2 * c / math.pi + 5:
        raise ParameterWindowError(
            f"certified bound needs c > 30 and n > 2c/pi + 5 (c={c}, n={n})")
    return certified_bound_value(pf.lambda_abs, pf.chi, pf.log_abs_lambda)


def _check_c(c):
    if not c > 30:
        raise ParameterWindowError(f"explicit order rules need c > 30 (c={c})")


def _check_eps(eps):
    if not 0.0 < eps < 1.0:
        raise ParameterWindowError(f"eps must lie in (0, 1) (eps={eps})")


def order_explicit_large(c, eps):
    """floor(2c/pi + alpha/(2 pi) log(16 e c / alpha)) for alpha fixed by eps."""
    _check_c(c)
    _check_eps(eps)
    L = math.log(1.0 / eps)
    upper = 5 * math.pi / (4 * math.sqrt(6)) * c - 3 * math.log(c) - _LOG_CONST
    if not 0 < L < upper:
        raise ParameterWindowError(
            f"explicit-large rule needs 0 < log(1/eps) < {upper:.6g} for c={c}")
    alpha = 4 * math.sqrt(6) / math.pi * (L + 3 * math.log(c) + _LOG_CONST)
    nu = 2 * c / math.pi + alpha / (2 * math.pi) * math.log(16 * math.e * c / alpha)
    return math.floor(nu), nu


def order_explicit_simple(c, eps):
    """floor(2c/pi + (10 + 1.5 log c + 0.5 log(1/eps)) log(c/2))."""
    _check_c(c)
    _check_eps(eps)
    if not eps > math.exp(-1.5 * (c - 20)):
        raise ParameterWindowError(
            f"explicit-simple rule needs eps > exp(-1.5 (c - 20)) for c={c}")
    L = math.log(1.0 / eps)
    nu = 2 * c / math.pi + (10 + 1.5 * math.log(c) + 0.5 * L) * math.log(c / 2)
    return math.floor(nu), nu


def order_weak(c, eps):
    """Smallest n with n (1 - 40/(pi c)) > c + (12/pi) log c + (4/pi) log(1/eps)."""
    _check_c(c)
    _check_eps(eps)
    rhs = c + 12 / math.pi * math.log(c) + 4 / math.pi * math.log(1.0 / eps)
    fac = 1 - 40 / (math.pi * c)
    n = math.floor(rhs / fac)
    while not n * fac > rhs:
        n += 1
    return n, rhs / fac


def scan_orders(c, eps_list, seed=None, n_max=None):
    """Smallest n with |lambda_n| < eps and with the certified bound < eps.

    One upward pass from floor(2c/pi) + 1 serves every eps. Returns a dict
    eps -> (n_empirical, lambda at it, n_certified, bound at it).
    """
    eps_list = sorted(set(float(e) for e in eps_list), reverse=True)
    for e in eps_list:
        _check_eps(e)
    logs = {e: math.log(e) for e in eps_list}
    found_emp = {}
    found_cert = {}
    n = math.floor(2 * c / math.pi) + 1
    if n_max is None:
        n_max = n + 10 * int(c) + 2000
    while len(found_cert) < len(eps_list):
        if n > n_max:
            raise ParameterWindowError(f"order scan passed n={n_max} without reaching eps")
        pf = prolate(c, n, seed=seed)
        ll = pf.log_abs_lambda
        lc = _log_certified(ll, pf.chi) if ll < 0 else math.inf
        for e in eps_list:
            if e not in found_emp and ll < logs[e]:
                found_emp[e] = (n, math.exp(ll))
            if e not in found_cert and lc < logs[e]:
                found_cert[e] = (n, math.exp(lc))
        n += 1
    return {e: found_emp[e] + found_cert[e] for e in eps_list}


def select_order(c, eps, rule="certified", seed=None):
    """Order n for accuracy eps by the chosen rule."""
    kind = rule.replace("-", "_")
    if kind not in KINDS:
        raise DomainError(f"unknown rule {rule!r}; expected one of {', '.join(KINDS)}")
    c = float(c)
    eps = float(eps)
    _check_eps(eps)
    if kind in ("empirical", "certified"):
        _check_c(c)
        ne, le, nc, bc = scan_orders(c, [eps], seed=seed)[eps]
        if kind == "empirical":
            return OrderSelection(kind, ne, le, c, eps)
        return OrderSelection(kind, nc, bc, c, eps)
    fn = {"explicit_large": order_explicit_large, "explicit_simple": order_explicit_simple,
          "weak": order_weak}[kind]
    n, value = fn(c, eps)
    return OrderSelection(kind, n, value, c, eps)


def _largest_delta(c, n):
    # largest delta in (3, pi c/16) with n > 2c/pi + (2/pi^2) delta log(4 e pi c / delta)
    def need(d):
        return 2 * c / math.pi + 2 / math.pi ** 2 * d * math.log(4 * math.e * math.pi * c / d)

    lo, hi = 3.0, math.pi * c / 16
    if hi <= lo or not n > need(lo):
        return None
    if n > need(hi):
        return hi * (1 - 1e-12)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if n > need(mid):
            lo = mid
        else:
            hi = mid
    return lo


def crude_lambda_bound(c, n, delta=None):
    """7056 c exp(-delta (1 - delta/(2 pi c))), or None outside its window.

    With delta omitted the largest admissible delta is used, which gives
    the smallest bound.
    """
    if not c > 22:
        return None
    if delta is None:
        delta = _largest_delta(c, n)
        if delta is None:
            return None
    else:
        if not 3 < delta < math.pi * c / 16:
            return None
        need = 2 * c / math.pi + 2 / math.pi ** 2 * delta * math.log(
            4 * math.e * math.pi * c / delta)
        if not n > need:
            return None
    return 7056 * c * math.exp(-delta * (1 - delta / (2 * math.pi * c)))


def chi_lambda_bound(c, n, chi):
    """Bound on |lambda_n| in terms of x = chi_n / c^2, or None outside its window."""
    if not n > 2 * c / math.pi + math.sqrt(42):
        return None
    x = chi / (c * c)
    if not x > 1:
        return None
    return (1195 * c * x ** 0.75 * (x - 1) ** 0.25 * (x - 0.5) ** 3
            * math.exp(-math.pi / 4 * (math.sqrt(x) - 1 / math.sqrt(x)) * c))


def lambda_upper_bounds(c, n, chi=None, seed=None):
    """(crude, chi-based) upper bounds on |lambda_n|; None where unavailable."""
    if chi is None:
        chi = prolate(c, n, seed=seed).chi
    return crude_lambda_bound(c, n), chi_lambda_bound(c, n, chi)


def sum_of_weights_band(pf):
    """Lower deviation allowed for sum W_j below 2: |lambda| (24 log(1/|lambda|) + 130 chi^(1/4))."""
    lam = pf.lambda_abs
    return lam * (24 * -pf.log_abs_lambda + 130 * pf.chi ** 0.25)


def check_weight_sum(pf, W):
    """(lower bound holds, within band of 2 allowing for rounding, sum, band).

    The lower bound sum W > 2 - band is tested as is. The two-sided test
    adds n * eps * 2 to the band: once |lambda_n| is tiny the band is far
    below the resolution of a double-precision sum of n weights.
    """
    band = sum_of_weights_band(pf)
    total = math.fsum(W)
    slack = len(W) * np.finfo(float).eps * 2.0
    return total > 2 - band, abs(total - 2) <= band + slack, total, band
