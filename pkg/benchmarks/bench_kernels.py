"""Wall time of the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--sizes 100 400 1600] [--repeat 3]

For each n (with c = 0.9 pi n / 2) it times root finding, weight
stepping and a Sturm count, and checks that both backends agree.
"""

import argparse
import math
import time

import numpy as np

from prolate import _backend
from prolate.eigensystem import build_system
from prolate.nodes import find_nodes
from prolate.pswf import prolate
from prolate.weights import weights_fast


def best_of(fn, repeat):
    best = math.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench(n, repeat, kernels):
    c = 0.9 * math.pi * n / 2
    pf = prolate(c, n)
    t_nodes, ns = best_of(lambda: find_nodes(pf, kernels), repeat)
    t_weights, w = best_of(lambda: weights_fast(pf, ns, kernels), repeat)
    sys = build_system(c, n)
    t_sturm, _ = best_of(lambda: kernels.sturm_count(sys.diag, sys.offdiag, pf.chi), repeat)
    return {"nodes": t_nodes, "weights": t_weights, "sturm": t_sturm}, ns.nodes, w


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[100, 400, 1600])
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    try:
        compiled = _backend.get("compiled")
    except ImportError:
        print("compiled extension not built; only the Python kernels are available")
        compiled = None
    python = _backend.get("python")
    print(f"{'n':>6} {'stage':>8} {'compiled s':>12} {'python s':>12} {'speedup':>9}")
    for n in args.sizes:
        tp, nodes_p, w_p = bench(n, args.repeat, python)
        if compiled is None:
            for k, v in tp.items():
                print(f"{n:6d} {k:>8} {'-':>12} {v:12.5f} {'-':>9}")
            continue
        tc, nodes_c, w_c = bench(n, args.repeat, compiled)
        for k in tp:
            print(f"{n:6d} {k:>8} {tc[k]:12.5f} {tp[k]:12.5f} {tp[k] / tc[k]:9.1f}")
        dn = float(np.max(np.abs(nodes_c - nodes_p)))
        dw = float(np.max(np.abs(w_c - w_p)))
        print(f"{n:6d} {'agree':>8} max node diff {dn:.1e}, max weight diff {dw:.1e}")


if __name__ == "__main__":
    main()
