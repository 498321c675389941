"""Checks of the analytic properties of psi_n and the quadrature.

psi_n outside (-1, 1) is evaluated from the integral identity
lambda_n psi_n(x) = int psi_n(t) exp(i c x t) dt with a Gauss rule. The
result is the difference of O(1) terms, so its accuracy degrades as
|lambda_n| shrinks; every evaluator reports the measured cancellation
factor sum|terms| / |sum| alongside its values.
"""

import math

import numpy as np
from scipy import integrate as _integrate

from .errors import DomainError, InfeasibleError
from .legendre import gauss_rule
from .nodes import find_nodes
from .pswf import eval_psi, integral, prolate
from .quadrature import build_rule, certified_bound_value, check_weight_sum, \
    order_explicit_large, order_explicit_simple, scan_orders
from .report import ErrorReport
from .weights import weight_profile_check, weights_fast, weights_series

LAMBDA_FLOOR = 1e-14
ROOT_STEP_FRACTION = 100
NEWTON_MAXIT = 30


def _meta(pf, **extra):
    d = {"c": pf.c, "n": pf.n, "lambda_abs": pf.lambda_abs, "chi": pf.chi}
    d.update(extra)
    return d


class OutsideEvaluator:
    """psi_n and psi_n' on the whole real line from the integral identity."""

    def __init__(self, pf, order=None, allow_small_lambda=False):
        if not allow_small_lambda and not pf.lambda_abs > LAMBDA_FLOOR:
            raise InfeasibleError(
                f"|lambda_n| = {pf.lambda_abs:.3e} is below {LAMBDA_FLOOR:g}; the integral "
                "identity cancels to noise in double precision "
                "(pass allow_small_lambda=True for a pattern-only run)")
        self.pf = pf
        self.order = order or max(500, 3 * pf.n)
        g = gauss_rule(self.order)
        self.t = g.nodes
        self.wpsi = g.weights * eval_psi(pf, g.nodes)
        self.mode = "absolute" if pf.lambda_abs > LAMBDA_FLOOR else "pattern"
        if pf.n % 2 == 0:
            self.scale = 1.0 / pf.lam.real
        else:
            self.scale = 1.0 / pf.lam.imag

    def _parts(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        arg = self.pf.c * np.outer(x, self.t)
        if self.pf.n % 2 == 0:
            val = np.cos(arg) * self.wpsi
            der = -np.sin(arg) * (self.wpsi * self.t)
        else:
            val = np.sin(arg) * self.wpsi
            der = np.cos(arg) * (self.wpsi * self.t)
        return val, der

    def evaluate(self, x):
        """(psi_n(x), psi_n'(x), cancellation of psi, cancellation of psi')."""
        val, der = self._parts(x)
        sv = val.sum(axis=1)
        sd = der.sum(axis=1)
        with np.errstate(divide="ignore"):
            kv = np.abs(val).sum(axis=1) / np.abs(sv)
            kd = np.abs(der).sum(axis=1) / np.abs(sd)
        return self.scale * sv, self.pf.c * self.scale * sd, kv, kd

    def psi(self, x):
        return self.evaluate(x)[0]

    def dpsi(self, x):
        return self.evaluate(x)[1]


def _scalar_or_array(x, vals):
    return float(vals[0]) if np.ndim(x) == 0 else vals


def eval_psi_outside(pf, x, evaluator=None, allow_small_lambda=False):
    """psi_n(x) for |x| > 1 (any real x is accepted)."""
    ev = evaluator or OutsideEvaluator(pf, allow_small_lambda=allow_small_lambda)
    return _scalar_or_array(x, ev.psi(x))


def eval_dpsi_outside(pf, x, evaluator=None, allow_small_lambda=False):
    """psi_n'(x) for |x| > 1 (any real x is accepted)."""
    ev = evaluator or OutsideEvaluator(pf, allow_small_lambda=allow_small_lambda)
    return _scalar_or_array(x, ev.dpsi(x))


def _phase_rhs(x, th, chi, c):
    f = math.sqrt((chi - c * c * x * x) / (1.0 - x * x))
    v = 0.5 * (x / (x * x - 1.0) + c * c * x / (c * c * x * x - chi))
    return f - v * math.sin(2.0 * th)


def roots_outside(pf, k, evaluator=None, allow_small_lambda=False, return_dpsi=False):
    """The first k roots of psi_n in (1, infinity).

    The phase theta (equal to (i - 1/2) pi at the i-th root) is integrated
    with Heun steps of length pi/(100 c), each bracketed crossing is
    refined by Newton's method, and the integration restarts at the root.
    """
    c, chi = pf.c, pf.chi
    if not chi > c * c:
        raise DomainError("roots outside (-1, 1) are located only for chi_n > c^2")
    ev = evaluator or OutsideEvaluator(pf, allow_small_lambda=allow_small_lambda)
    h = math.pi / (ROOT_STEP_FRACTION * c)
    x0 = math.sqrt(chi) / c
    # theta has a removable singularity at x0; start one step to its right
    x = x0 + h
    f, g, _, _ = ev.evaluate(x)
    th = math.atan(-math.sqrt((1 - x * x) / (chi - c * c * x * x)) * g[0] / f[0])
    if th > 0:
        th -= math.pi
    roots = []
    dps = []
    for j in range(1, k + 1):
        target = (j - 0.5) * math.pi
        steps = 0
        while True:
            k0 = _phase_rhs(x, th, chi, c)
            k1 = _phase_rhs(x + h, th + h * k0, chi, c)
            th_new = th + 0.5 * h * (k0 + k1)
            steps += 1
            if th_new >= target:
                guess = x + h * (target - th) / (th_new - th)
                break
            x, th = x + h, th_new
            if steps > 100 * ROOT_STEP_FRACTION:
                raise InfeasibleError("phase integration outside (-1, 1) did not reach a root")
        xr = guess
        last = math.inf
        for _ in range(NEWTON_MAXIT):
            f, g, _, _ = ev.evaluate(xr)
            delta = f[0] / g[0]
            if abs(delta) > last:
                break
            xr -= delta
            last = abs(delta)
            if last <= 1e-15 * xr:
                break
        roots.append(xr)
        dps.append(ev.dpsi(xr)[0])
        x, th = xr, target
    roots = np.array(roots)
    if return_dpsi:
        return roots, np.array(dps)
    return roots


def x1_offset_report(pf, evaluator=None, allow_small_lambda=False):
    """Distance from sqrt(chi)/c to the first outside root, against pi/(2c)."""
    ev = evaluator or OutsideEvaluator(pf, allow_small_lambda=allow_small_lambda)
    x1 = roots_outside(pf, 1, ev)[0]
    c, chi = pf.c, pf.chi
    x0 = math.sqrt(chi) / c
    gap = x1 - x0
    s = math.sqrt((x1 * x1 - 1) / (x1 * x1 - chi / (c * c)))
    rep = ErrorReport(label="first outside root", metadata=_meta(pf, x1=x1), mode=ev.mode)
    rep.add("x1-x0 > pi/2c", gap, math.pi / (2 * c), passed=gap > math.pi / (2 * c),
            scaled=s * math.pi / (2 * c), ratio_form=gap * 2 * c / math.pi / s)
    rep.add("sqrt form", s, 2 * c / math.pi * gap, passed=s < 2 * c / math.pi * gap)
    return rep


def check_spacing(pf, k, roots=None, evaluator=None, allow_small_lambda=False):
    """Lower and upper bounds on the gaps between consecutive outside roots.

    Needs k + 1 roots. When n is large enough relative to c the gaps must
    also decrease monotonically towards pi/c.
    """
    c, chi = pf.c, pf.chi
    if roots is None:
        ev = evaluator or OutsideEvaluator(pf, allow_small_lambda=allow_small_lambda)
        roots = roots_outside(pf, k + 1, ev)
        mode = ev.mode
    else:
        mode = "absolute" if pf.lambda_abs > LAMBDA_FLOOR else "pattern"
    x = np.asarray(roots)
    monotone = c > 0.2 and pf.n > 2 * c / math.pi + (math.log(c) + math.log(16 * math.e)) / (2 * math.pi)
    rep = ErrorReport(label="outside root spacing", metadata=_meta(pf, monotone_claim=monotone),
                      mode=mode)
    for i in range(k):
        gap = x[i + 1] - x[i]
        u = x[i] ** 2 - 1
        lower = math.pi / c * math.sqrt(1 - 1 / (1 + c * c * u * u))
        upper = math.pi / c * math.sqrt(u / (x[i] ** 2 - chi / (c * c)))
        ok = lower <= gap <= upper
        if monotone:
            ok = ok and gap >= math.pi / c
            if i + 1 < k:
                ok = ok and gap >= x[i + 2] - x[i + 1]
        rep.add(i + 1, gap, upper, passed=ok, lower=lower, upper=upper,
                lower_error=(gap - lower) / gap, upper_error=(upper - gap) / gap)
    return rep


def check_derivative_growth(pf, k, roots=None, dpsi=None, evaluator=None,
                            allow_small_lambda=False):
    """Ratios |psi'(x_{i+1}) / psi'(x_i)| against their two-sided bound, and
    1/|psi'(x_i)| against e^(1/4) |lambda| (x^2-1)^(3/4) / (x^2 - chi/c^2)^(1/4).

    Uses k + 1 roots; row i covers the pair (x_i, x_{i+1}) and the sharp
    bound at x_i. eps is defined by |psi'(x_i)| scaled_bound = sqrt(2) (1 + eps);
    eps_scaled = |psi'(x_i)| scaled_bound - sqrt(2) equals sqrt(2) eps.
    """
    c, chi = pf.c, pf.chi
    if roots is None or dpsi is None:
        ev = evaluator or OutsideEvaluator(pf, allow_small_lambda=allow_small_lambda)
        roots, dpsi = roots_outside(pf, k + 1, ev, return_dpsi=True)
        mode = ev.mode
    else:
        mode = "absolute" if pf.lambda_abs > LAMBDA_FLOOR else "pattern"
    x = np.asarray(roots)
    d = np.abs(np.asarray(dpsi))
    lam = pf.lambda_abs
    psi1 = abs(eval_psi(pf, 1.0))
    r = chi / (c * c)
    rep = ErrorReport(label="outside derivative growth", metadata=_meta(pf, psi1=psi1),
                      mode=mode)
    for i in range(k):
        ratio = d[i + 1] / d[i]
        lower = (x[i] ** 2 - 1) / (x[i + 1] ** 2 - 1)
        upper = math.sqrt((x[i] ** 2 - 1) / (c * c * x[i] ** 2 - chi)
                          * (c * c * x[i + 1] ** 2 - chi) / (x[i + 1] ** 2 - 1))
        shape = (x[i] ** 2 - 1) ** 0.75 / (x[i] ** 2 - r) ** 0.25
        sharp = math.exp(0.25) * lam * shape
        col3 = lam * shape / (psi1 * math.sqrt(2))
        eps = d[i] * col3 / math.sqrt(2) - 1
        ok = lower <= ratio <= upper and 1 / d[i] <= sharp
        rep.add(i + 1, ratio, upper, passed=ok, lower=lower, upper=upper,
                lower_error=(ratio - lower) / ratio, upper_error=(upper - ratio) / ratio,
                inv_dpsi=1 / d[i], sharp_bound=sharp, scaled_bound=col3, eps=eps,
                eps_scaled=d[i] * col3 - math.sqrt(2))
    return rep


def sample_points(ns):
    """Points at 1/4, 1/2, 3/4 of each of the n+1 intervals cut by the nodes, plus +-1."""
    edges = np.concatenate([[-1.0], ns.nodes, [1.0]])
    a, b = edges[:-1], edges[1:]
    pts = np.concatenate([a + f * (b - a) for f in (0.25, 0.5, 0.75)] + [[-1.0, 1.0]])
    return np.sort(pts)


def partial_fraction_I(pf, ns, t):
    """1/psi_n(t) minus the sum over the inner roots of 1/(psi_n'(t_j)(t - t_j))."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    gap = np.min(np.abs(t[:, None] - ns.nodes[None, :]), axis=1) if len(ns) else np.inf
    if np.any(gap < 1e-3 * (math.pi / pf.c if pf.c > 1 else 1.0)):
        raise DomainError("partial-fraction residual refused: point too close to a node")
    psi = eval_psi(pf, t)
    s = (1.0 / (ns.dpsi[None, :] * (t[:, None] - ns.nodes[None, :]))).sum(axis=1)
    return 1.0 / psi - s


def outside_pairs_sum(pf, roots, dpsi, t):
    """sum_k 1/(psi'(x_k)(t - x_k)) + 1/(psi'(-x_k)(t + x_k))."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    x = np.asarray(roots)
    d = np.asarray(dpsi)
    dm = (-1) ** (pf.n + 1) * d
    return (1.0 / (d[None, :] * (t[:, None] - x[None, :]))
            + 1.0 / (dm[None, :] * (t[:, None] + x[None, :]))).sum(axis=1)


def partial_fraction_residual(pf, ns, t, K=0, roots=None, dpsi=None, evaluator=None,
                              allow_small_lambda=False):
    """I(t) minus the contribution of the first K pairs of outside roots.

    With K = 0 this is I(t) itself, which the theory bounds by a small
    multiple of |lambda_n| on all of [-1, 1].
    """
    val = partial_fraction_I(pf, ns, t)
    if K > 0:
        if roots is None or dpsi is None:
            ev = evaluator or OutsideEvaluator(pf, allow_small_lambda=allow_small_lambda)
            roots, dpsi = roots_outside(pf, K, ev, return_dpsi=True)
        val = val - outside_pairs_sum(pf, roots[:K], dpsi[:K], t)
    return _scalar_or_array(t, val)


def i_max_bound(pf):
    """24 log(2/|lambda|) + 13 chi^(1/4) + 40 c |lambda| + 2 sqrt 2."""
    lam = pf.lambda_abs
    return (24 * (math.log(2.0) - pf.log_abs_lambda) + 13 * pf.chi ** 0.25
            + 40 * pf.c * lam + 2 * math.sqrt(2))


def partial_fraction_report(pf, ns=None):
    """sup-norm of I on the standard sample against |lambda_n| and |lambda_n| I_max."""
    ns = ns or find_nodes(pf)
    pts = sample_points(ns)
    vals = partial_fraction_I(pf, ns, pts)
    norm = float(np.max(np.abs(vals)))
    lam = pf.lambda_abs
    imax = i_max_bound(pf)
    valid = pf.c > 1 and pf.n % 2 == 0 and pf.n > 2 * pf.c / math.pi + 1
    rep = ErrorReport(label="partial fraction residual",
                      metadata=_meta(pf, i_max=imax, theorem_conditions=valid))
    rep.add("norm<=lambda", norm, lam, ratio_lambda=lam / norm)
    rep.add("norm<=lambda*I_max", norm, lam * imax)
    return rep, norm


def big_psi_at(pf, ts, order=None):
    """int_0^1 psi_n(x) exp(-i c x t) dx at each t, by a Gauss rule of order 10 n."""
    m = order or max(10 * pf.n, 200)
    g = gauss_rule(m)
    x = 0.5 * (g.nodes + 1.0)
    w = 0.5 * g.weights * eval_psi(pf, x)
    ts = np.atleast_1d(np.asarray(ts, dtype=float))
    out = np.empty(len(ts), dtype=complex)
    step = max(1, 4_000_000 // m)
    for i in range(0, len(ts), step):
        out[i:i + step] = np.exp(-1j * pf.c * np.outer(ts[i:i + step], x)) @ w
    return out


def compute_Pnm(pf, ns, m, pf_m=None, big_psi=None):
    """P_{n,m} = sum_j psi_m(t_j) Psi_n(1, t_j) / psi_n'(t_j) (complex)."""
    if not 0 <= m < pf.n:
        raise DomainError("P_{n,m} needs 0 <= m < n")
    pf_m = pf_m or prolate(pf.c, m, seed=pf.seed)
    if big_psi is None:
        big_psi = big_psi_at(pf, ns.nodes)
    return complex(np.sum(eval_psi(pf_m, ns.nodes) * big_psi / ns.dpsi))


def quad_error_bound(pf_n, pf_m, norm_I, P):
    """(1 - |l_n|^2/|l_m|^2) ||I|| + |l_n| (|l_n|/|l_m| |psi_m(0)| + c |P|)."""
    ln, lm = pf_n.lambda_abs, pf_m.lambda_abs
    q = math.exp(2 * (pf_n.log_abs_lambda - pf_m.log_abs_lambda))
    return ((1 - q) * norm_I
            + ln * (ln / lm * abs(eval_psi(pf_m, 0.0)) + pf_n.c * abs(P)))


def quadrature_error_report(c, n, ms=None, seed=None, rule=None):
    """Errors of the order-n rule on psi_m against |lambda_n| and the per-m bound."""
    rule = rule or build_rule(c, n, seed=seed)
    pf = rule.pf
    ns = find_nodes(pf)
    _, norm = partial_fraction_report(pf, ns)
    big = big_psi_at(pf, ns.nodes)
    imax = i_max_bound(pf)
    if ms is None:
        ms = range(n)
    rep = ErrorReport(label="quadrature error on psi_m",
                      metadata=_meta(pf, norm_I=norm, i_max=imax))
    for m in ms:
        pm = prolate(c, m, seed=pf.seed)
        exact = integral(pm)
        err = exact - float(np.dot(rule.weights, eval_psi(pm, rule.nodes)))
        P = compute_Pnm(pf, ns, m, pm, big)
        bound = quad_error_bound(pf, pm, norm, P)
        bound_th = quad_error_bound(pf, pm, pf.lambda_abs * imax, P)
        rep.add(m, err, pf.lambda_abs, passed=abs(err) <= pf.lambda_abs and abs(err) <= bound,
                exact=exact, C_nm=bound, C_nm_theory=bound_th, P_abs=abs(P))
    return rep


def exponential_error_report(c, n, a_values, seed=None, rule=None):
    """Errors of the rule on cos(a c x) against the two regimes |a| <= 1 and 1 < a <= 2."""
    rule = rule or build_rule(c, n, seed=seed)
    lam = rule.lambda_abs
    rep = ErrorReport(label="exponential integrands",
                      metadata={"c": c, "n": n, "lambda_abs": lam})
    for a in a_values:
        a = float(a)
        exact = 2.0 if a == 0 else 2 * math.sin(a * c) / (a * c)
        approx = float(np.dot(rule.weights, np.cos(a * c * rule.nodes)))
        bound = 4e-9 if a <= 1 else 5 * lam
        rep.add(a, exact - approx, bound)
    return rep


def head_pair_report(pf, roots, dpsi, pairs):
    """max over [-1, 1] of the two-root term against its integral bound."""
    c, chi = pf.c, pf.chi
    lam = pf.lambda_abs
    r = chi / (c * c)
    ts = np.linspace(-1, 1, 2001)
    rep = ErrorReport(label="consecutive outside roots",
                      metadata=_meta(pf), mode="absolute" if lam > LAMBDA_FLOOR else "pattern")
    for k in pairs:
        x, y = roots[k - 1], roots[k]
        dx, dy = dpsi[k - 1], dpsi[k]
        vals = np.abs(1 / ((ts - x) * dx) + 1 / ((ts - y) * dy))
        meas = float(vals.max())
        integ, _ = _integrate.quad(lambda z: (z + 1) ** 2 / (z * z - r) ** 1.5, x, y)
        bound = math.exp(0.25) * lam * integ
        rep.add(k, meas, bound, asymptotic=20 * math.pi * lam / x ** 2,
                at=float(ts[int(vals.argmax())]))
    return rep


def _exp1(c=20.0, n=14, **_):
    pf = prolate(c, n)
    xs = np.linspace(-1.5, 1.5, 1000)
    inside = np.abs(xs) <= 1
    rep = ErrorReport(label="experiment 1", metadata=_meta(pf))
    vals = np.empty_like(xs)
    vals[inside] = eval_psi(pf, xs[inside])
    if pf.lambda_abs > LAMBDA_FLOOR:
        vals[~inside] = OutsideEvaluator(pf).psi(xs[~inside])
    grid = np.linspace(-1, 1, 20001)
    g = eval_psi(pf, grid)
    roots_in = int(np.sum(np.sign(g[1:]) * np.sign(g[:-1]) < 0))
    rep.add("roots in (-1,1)", roots_in, n, passed=roots_in == n)
    pos = grid[grid >= 0]
    gp = np.abs(eval_psi(pf, pos))
    peaks = [gp[i] for i in range(1, len(gp) - 1) if gp[i] >= gp[i - 1] and gp[i] >= gp[i + 1]]
    peaks.append(gp[-1])
    grows = all(b > a for a, b in zip(peaks, peaks[1:]))
    rep.add("extrema grow", float(len(peaks)), 0.0, passed=grows)
    rep.metadata["samples"] = vals
    return rep


def _exp2(c=10.0, n=15, **_):
    return x1_offset_report(prolate(c, n), allow_small_lambda=True)


def _exp3(c=100.0, n=90, k=19, **_):
    return check_spacing(prolate(c, n), k, allow_small_lambda=True)


def _exp4(c=10.0, n=8, **_):
    pf = prolate(c, n)
    x0 = (math.sqrt(pf.chi) + 1) / c
    xs = np.linspace(x0, x0 + 1, 502)[1:-1]
    ev = OutsideEvaluator(pf, allow_small_lambda=True)
    f, g, _, _ = ev.evaluate(xs)
    p = xs * xs - 1
    q = c * c * xs * xs - pf.chi
    Q = f * f + p * g * g / q
    Qt = p * (q * f * f + p * g * g)
    rep = ErrorReport(label="experiment 4", metadata=_meta(pf), mode=ev.mode)
    dq = np.diff(Q)
    dqt = np.diff(Qt)
    rep.add("Q decreasing", float(dq.max()), 0.0, passed=bool(np.all(dq < 0)))
    rep.add("Q~ increasing", float(dqt.min()), 0.0, passed=bool(np.all(dqt > 0)))
    return rep


def _exp5(c=100.0, n=80, k=19, **_):
    return check_derivative_growth(prolate(c, n), k, allow_small_lambda=True)


def _exp6(c=100.0, n=100, k=19, **_):
    pf = prolate(c, n)
    rep = check_derivative_growth(pf, k, allow_small_lambda=True)
    eps = rep.column("eps")
    rep.label = "experiment 6"
    rep.add("eps decreasing", float(np.max(np.diff(eps))), 0.0,
            passed=bool(np.all(np.diff(eps) < 0)))
    return rep


def _exp7(c=100.0, n=100, k=40, **_):
    pf = prolate(c, n)
    ev = OutsideEvaluator(pf, allow_small_lambda=True)
    roots, dps = roots_outside(pf, k, ev, return_dpsi=True)
    return head_pair_report(pf, roots, dps, range(1, k, 2))


def _exp8(c=100.0, n=80, **_):
    return partial_fraction_report(prolate(c, n))[0]


def _exp9(c=10.0, n=20, j=13, **_):
    pf = prolate(c, n)
    ns = find_nodes(pf)
    tj = ns.nodes[j - 1]
    g = gauss_rule(10 * n)
    t = g.nodes
    kern = eval_psi(pf, t) / (t - tj)
    A = float(np.dot(g.weights, kern))
    B = complex(1j * c * pf.lam * big_psi_at(pf, [tj])[0])
    rep = ErrorReport(label="experiment 9", metadata=_meta(pf, j=j, A=A, B=B.real))
    for m in range(n):
        pm = prolate(c, m, seed=pf.seed)
        lhs = float(np.dot(g.weights, kern * eval_psi(pm, t)))
        q = 1.0 / (1.0 - math.exp(2 * (pf.log_abs_lambda - pm.log_abs_lambda)))
        coef = q * float(eval_psi(pm, tj))
        em = lhs - coef * (A + B.real)
        rep.add(m, em, 1e-12, lhs=lhs, coefficient=coef)
    return rep


def _exp10(c=50.0, n=47, **_):
    pf = prolate(c, n)
    ns = find_nodes(pf)
    big = big_psi_at(pf, ns.nodes)
    best = 0.0
    for m in range(n):
        best = max(best, abs(compute_Pnm(pf, ns, m, big_psi=big)))
    rep = ErrorReport(label="experiment 10", metadata=_meta(pf, max_P=best))
    rep.add("c max|P| <= sqrt(32) n^2", c * best, math.sqrt(32) * n * n)
    return rep


def _exp11(c=50.0, n=40, **_):
    rule = build_rule(c, n)
    pf = rule.pf
    ns = find_nodes(pf)
    _, norm = partial_fraction_report(pf, ns)
    big = big_psi_at(pf, ns.nodes)
    g = gauss_rule(10 * n)
    # 1 - sum_j phi_j(t) = psi_n(t) I(t)
    gap = ns.nodes
    psi_n = eval_psi(pf, g.nodes)
    inner = (1.0 / (ns.dpsi[None, :] * (g.nodes[:, None] - gap[None, :]))).sum(axis=1)
    rest = 1.0 - psi_n * inner
    rep = ErrorReport(label="experiment 11", metadata=_meta(pf, norm_I=norm))
    for m in range(0, n, 2):
        pm = prolate(c, m, seed=pf.seed)
        q = 1.0 / (1.0 - math.exp(2 * (pf.log_abs_lambda - pm.log_abs_lambda)))
        P = compute_Pnm(pf, ns, m, pm, big)
        quad = float(np.dot(rule.weights, eval_psi(pm, rule.nodes)))
        S = q * (1j * c * pf.lam * P + quad)
        tail = float(np.dot(g.weights, eval_psi(pm, g.nodes) * rest))
        xi = tail / norm
        exact = integral(pm)
        rep.add(m, xi, 1.0, exact=exact, S=S.real, tail=tail,
                identity=exact - S.real - tail)
    return rep


def _exp12(c=50.0, n=40, **_):
    rep = quadrature_error_report(c, n, ms=range(0, n, 2))
    rep.label = "experiment 12"
    return rep


def _exp13(c=1000.0, n=650, **_):
    a = np.concatenate([np.linspace(0, 1, 101), np.linspace(1.01, 2, 100)])
    return exponential_error_report(c, n, a)


def _exp14(c=250.0, eps=(1e-10, 1e-25, 1e-50), **_):
    res = scan_orders(c, eps)
    rep = ErrorReport(label="experiment 14", metadata={"c": c})
    for e in sorted(res, reverse=True):
        n1, l1, n2, b2 = res[e]
        n3 = order_explicit_large(c, e)[0]
        n4 = order_explicit_simple(c, e)[0]
        rep.add(e, l1, e, n1=n1, n2=n2, n3=n3, n4=n4, certified_at_n2=b2,
                passed=n1 <= n2 <= n3 <= n4)
    return rep


def _exp15(c=40.0, n=41, **_):
    pf = prolate(c, n)
    ns = find_nodes(pf)
    W = weights_fast(pf, ns)
    Ws = weights_series(pf, ns)
    rep = weight_profile_check(pf, ns, W)
    rep.label = "experiment 15"
    for r, j in zip(rep.rows, range(len(rep.rows))):
        r.extra["series_difference"] = float(W[j] - Ws[j])
    return rep


EXPERIMENTS = {1: _exp1, 2: _exp2, 3: _exp3, 4: _exp4, 5: _exp5, 6: _exp6, 7: _exp7,
               8: _exp8, 9: _exp9, 10: _exp10, 11: _exp11, 12: _exp12, 13: _exp13,
               14: _exp14, 15: _exp15}


def run_experiment(id, **params):
    """Reproduce one of the numbered experiments; params override defaults."""
    try:
        fn = EXPERIMENTS[int(id)]
    except (KeyError, ValueError):
        raise DomainError(f"unknown experiment id {id!r}; expected 1..15") from None
    params = {k: v for k, v in params.items() if v is not None}
    return fn(**params)


def bounds_report(pf):
    """The chi and lambda inequalities that apply at (c, n)."""
    from .legendre import elliptic_E
    from .quadrature import lambda_upper_bounds
    c, n, chi, lam = pf.c, pf.n, pf.chi, pf.lambda_abs
    rep = ErrorReport(label="bounds", metadata=_meta(pf))
    rep.add("n(n+1) < chi", n * (n + 1), chi, passed=n * (n + 1) < chi)
    rep.add("chi < n(n+1)+c^2", chi, n * (n + 1) + c * c, passed=chi < n * (n + 1) + c * c)
    if n <= 2 * c / math.pi - 1:
        rep.add("chi < c^2", chi, c * c, passed=chi < c * c)
    if n >= 2 * c / math.pi:
        rep.add("chi > c^2", chi, c * c, passed=chi > c * c)
    if chi > c * c:
        v = 2 / math.pi * math.sqrt(chi) * elliptic_E(c / math.sqrt(chi))
        rep.add("n < (2/pi) sqrt(chi) E < n+3", v, n + 3, passed=n < v < n + 3)
        psi1 = eval_psi(pf, 1.0) ** 2
        rep.add("1/2 < psi(1)^2 < n+1/2", psi1, n + 0.5, passed=0.5 < psi1 < n + 0.5)
    crude, khi = lambda_upper_bounds(c, n, chi)
    if crude is not None:
        rep.add("|lambda| < crude bound", lam, crude, passed=lam < crude)
    if khi is not None:
        rep.add("|lambda| < chi bound", lam, khi, passed=lam < khi)
    if c > 30 and n > 2 * c / math.pi + 5:
        rep.add("|lambda| < 1/10", lam, 0.1, passed=lam < 0.1)
        b = certified_bound_value(lam, chi, pf.log_abs_lambda)
        rep.add("certified bound > |lambda|", lam, b, passed=b > lam)
    if c > 30 and lam < 0.1:
        rep.add("chi - c^2 < c^2/|lambda|", chi - c * c, c * c / lam,
                passed=chi - c * c < c * c / lam)
    return rep


def nodes_report(pf, ns=None):
    ns = ns or find_nodes(pf)
    scale = float(np.max(np.abs(ns.dpsi))) if len(ns) else 1.0
    rep = ErrorReport(label="nodes", metadata=_meta(pf))
    res = ns.residuals() / scale
    for j, r in enumerate(res):
        rep.add(j + 1, r, 1e-12, node=float(ns.nodes[j]))
    rep.add("count", len(ns), pf.n, passed=len(ns) == pf.n)
    sym = float(np.max(np.abs(ns.nodes + ns.nodes[::-1]))) if len(ns) else 0.0
    rep.add("antisymmetry", sym, 0.0, passed=sym == 0.0)
    if len(ns) > 1:
        alt = bool(np.all(np.sign(ns.dpsi[1:]) != np.sign(ns.dpsi[:-1])))
        rep.add("derivative sign alternation", 0.0, 0.0, passed=alt)
    return rep


def weights_report(pf, ns=None):
    ns = ns or find_nodes(pf)
    W = weights_fast(pf, ns)
    Ws = weights_series(pf, ns)
    rep = ErrorReport(label="weights", metadata=_meta(pf, weight_sum=float(W.sum())))
    diff = np.abs(W - Ws)
    for j in range(len(W)):
        rep.add(j + 1, diff[j], 1e-12, passed=diff[j] <= 1e-12 and W[j] > 0,
                weight=float(W[j]))
    asym = float(np.max(np.abs(W - W[::-1]))) if len(W) else 0.0
    rep.add("symmetry", asym, 0.0, passed=asym == 0.0)
    if pf.c > 30 and pf.n > 2 * pf.c / math.pi + 7:
        lower, within, total, band = check_weight_sum(pf, W)
        rep.add("sum W > 2 - band", 2 - total, band, passed=lower)
        rep.add("|sum W - 2| <= band + rounding", total - 2, band, passed=within)
    return rep

