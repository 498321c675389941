"""Command-line front end: eigenvalues, quadrature rules, verification suites.

Exit codes: 0 when every reported check passes, 1 when some check fails,
2 for invalid or out-of-window parameters, 3 for numerical failures.
"""

import argparse
import io
import json
import logging
import math
import sys

import numpy as np

from . import __version__
from .diagnostics import bounds_report, nodes_report, quadrature_error_report, \
    run_experiment, weights_report
from .eigensystem import default_seed
from .errors import InfeasibleError, ParameterWindowError, ProlateError
from .pswf import prolate
from .quadrature import QuadratureRule, build_rule, select_order
from .report import _fmt

log = logging.getLogger("prolate")

RULE_NAMES = ("empirical", "certified", "explicit-large", "explicit-simple", "weak")


def rule_to_csv(rule):
    out = io.StringIO()
    for key, val in (("c", float(rule.c)), ("n", rule.n), ("chi", float(rule.chi)),
                     ("lambda_abs", float(rule.lambda_abs)),
                     ("generator", f"prolate {__version__}")):
        out.write(f"#{key}={_fmt(val)}\n")
    out.write("j,t,w\n")
    for j, (t, w) in enumerate(zip(rule.nodes, rule.weights), start=1):
        out.write(f"{j},{_fmt(float(t))},{_fmt(float(w))}\n")
    return out.getvalue()


def rule_to_json(rule):
    return json.dumps({"c": float(rule.c), "n": rule.n, "chi": float(rule.chi),
                       "lambda_abs": float(rule.lambda_abs),
                       "generator": f"prolate {__version__}",
                       "nodes": [float(t) for t in rule.nodes],
                       "weights": [float(w) for w in rule.weights]}, indent=1) + "\n"


def read_rule(text):
    """Parse a rule written by rule_to_csv or rule_to_json."""
    text = text.lstrip()
    if text.startswith("{"):
        d = json.loads(text)
        return QuadratureRule(c=d["c"], n=int(d["n"]), nodes=np.array(d["nodes"]),
                              weights=np.array(d["weights"]), lambda_abs=d["lambda_abs"],
                              chi=d["chi"])
    head = {}
    rows = []
    for line in text.splitlines():
        if line.startswith("#"):
            k, _, v = line[1:].partition("=")
            head[k] = v
        elif line and not line.startswith("j,"):
            _, t, w = line.split(",")
            rows.append((float(t), float(w)))
    arr = np.array(rows, dtype=float).reshape(-1, 2)
    return QuadratureRule(c=float(head["c"]), n=int(head["n"]), nodes=arr[:, 0],
                          weights=arr[:, 1], lambda_abs=float(head["lambda_abs"]),
                          chi=float(head["chi"]))


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_eig(args):
    ns = [args.n] if args.n is not None else list(range(args.upto + 1))
    rows = []
    for n in ns:
        pf = prolate(args.c, n, seed=args.seed)
        rows.append((n, pf.chi, pf.lambda_abs))
    if args.format == "json":
        text = json.dumps({"c": args.c, "rows": [
            {"n": n, "chi": chi, "lambda_abs": lam} for n, chi, lam in rows]}, indent=1) + "\n"
    else:
        text = f"#c={_fmt(float(args.c))}\nn,chi,lambda_abs\n" + "".join(
            f"{n},{_fmt(float(chi))},{_fmt(float(lam))}\n" for n, chi, lam in rows)
    _emit(text, args.out)
    return 0


def cmd_quad(args):
    if (args.n is None) == (args.eps is None):
        raise ParameterWindowError("give exactly one of --n and --eps")
    if args.eps is not None:
        sel = select_order(args.c, args.eps, rule=args.rule, seed=args.seed)
        log.info("rule %s selected n=%d (bound value %.6g)", sel.rule, sel.n, sel.bound_value)
        print(f"# selected n={sel.n} rule={args.rule} bound={_fmt(float(sel.bound_value))}",
              file=sys.stderr)
        n = sel.n
    else:
        n = args.n
    rule = build_rule(args.c, n, seed=args.seed)
    text = rule_to_json(rule) if args.format == "json" else rule_to_csv(rule)
    _emit(text, args.out)
    return 0


def cmd_verify(args):
    suite = args.suite
    if suite == "experiment":
        if args.id is None:
            raise ParameterWindowError("--suite experiment needs --id")
        rep = run_experiment(args.id, c=args.c, n=args.n)
    else:
        if args.c is None or args.n is None:
            raise ParameterWindowError(f"--suite {suite} needs --c and --n")
        if suite == "error":
            rep = quadrature_error_report(args.c, args.n, seed=args.seed)
        else:
            pf = prolate(args.c, args.n, seed=args.seed)
            rep = {"nodes": nodes_report, "weights": weights_report,
                   "bounds": bounds_report}[suite](pf)
    _emit(rep.to_csv(), args.out)
    return 0 if rep.passed else 1


def _positive(kind):
    def parse(s):
        v = kind(s)
        if not v > 0 or (isinstance(v, float) and not math.isfinite(v)):
            raise argparse.ArgumentTypeError(f"expected a positive number, got {s!r}")
        return v
    return parse


def _nonneg_int(s):
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {s!r}")
    return v


def build_parser():
    p = argparse.ArgumentParser(prog="prolate", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"prolate {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=None,
                        help="inverse-iteration seed (default 42 or $PROLATE_SEED)")
        sp.add_argument("--out", default=None, help="write to this file instead of stdout")

    e = sub.add_parser("eig", help="chi_n and |lambda_n|")
    e.add_argument("--c", type=_positive(float), required=True)
    g = e.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=_nonneg_int)
    g.add_argument("--upto", type=_nonneg_int)
    e.add_argument("--format", choices=("csv", "json"), default="csv")
    common(e)
    e.set_defaults(func=cmd_eig)

    q = sub.add_parser("quad", help="nodes and weights of a quadrature rule")
    q.add_argument("--c", type=_positive(float), required=True)
    q.add_argument("--n", type=_positive(int))
    q.add_argument("--eps", type=float)
    q.add_argument("--rule", choices=RULE_NAMES, default="certified")
    q.add_argument("--format", choices=("csv", "json"), default="csv")
    common(q)
    q.set_defaults(func=cmd_quad)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=("nodes", "weights", "error", "bounds", "experiment"),
                   required=True)
    v.add_argument("--id", type=int)
    v.add_argument("--c", type=_positive(float))
    v.add_argument("--n", type=_nonneg_int)
    common(v)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(name)s: %(message)s")
    if getattr(args, "seed", None) is None:
        args.seed = default_seed()
    try:
        return args.func(args)
    except (ValueError, InfeasibleError) as exc:
        print(f"prolate: error: {exc}", file=sys.stderr)
        return 2
    except ProlateError as exc:
        print(f"prolate: numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
