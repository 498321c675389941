import numpy as np
import pytest
from scipy import optimize

from prolate import _backend
from prolate.nodes import find_nodes, prufer_phase
from prolate.pswf import eval_psi, prolate


def brute_force_roots(pf, samples=200001):
    x = np.linspace(-1, 1, samples)
    f = eval_psi(pf, x)
    idx = np.nonzero(np.sign(f[1:]) * np.sign(f[:-1]) < 0)[0]
    roots = [optimize.brentq(lambda t: eval_psi(pf, t), x[i], x[i + 1], xtol=1e-16)
             for i in idx]
    if pf.n % 2:
        roots.append(0.0)
    return np.sort(np.array(roots))


@pytest.mark.parametrize("c,n", [(1.0, 1), (5.0, 2), (20.0, 9), (20.0, 14), (40.0, 41),
                                 (100.0, 90)])
def test_nodes_match_bracketed_roots(c, n):
    pf = prolate(c, n)
    ns = find_nodes(pf)
    ref = brute_force_roots(pf)
    assert len(ns) == n == len(ref)
    assert np.max(np.abs(ns.nodes - ref)) <= 1e-13


@pytest.mark.parametrize("c,n", [(50.0, 40), (300.0, 250), (1000.0, 700), (2827.0, 2000)])
def test_node_residuals_scaled(c, n):
    pf = prolate(c, n)
    ns = find_nodes(pf)
    assert np.max(ns.residuals()) <= 1e-12 * np.max(np.abs(ns.dpsi))
    assert np.all(np.diff(ns.nodes) > 0)
    assert np.array_equal(ns.nodes, -ns.nodes[::-1])
    assert np.all(np.sign(ns.dpsi[1:]) != np.sign(ns.dpsi[:-1]))


def test_zero_index_has_no_nodes():
    assert len(find_nodes(prolate(3.0, 0))) == 0


def test_phase_counts_roots():
    pf = prolate(20.0, 14)
    th = prufer_phase(pf, np.linspace(-0.9999, 0.9999, 4001))
    assert (th[-1] - th[0]) / np.pi == pytest.approx(14, abs=0.5)


def test_taylor_steps_are_used_in_the_bulk():
    ns = find_nodes(prolate(200.0, 160))
    assert ns.via_taylor.any()
    assert not ns.via_taylor[-1]


def test_backends_agree():
    pf = prolate(150.0, 111)
    a = find_nodes(pf, _backend.get("python"))
    b = find_nodes(pf, _backend.get("compiled"))
    assert np.max(np.abs(a.nodes - b.nodes)) <= 1e-15
    assert np.max(np.abs(a.dpsi - b.dpsi)) <= 1e-12 * np.max(np.abs(a.dpsi))
