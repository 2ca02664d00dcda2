"""Command-line front end.

Exit codes: 0 success, 1 failed check or inconsistency, 2 bad arguments,
3 compute budget exhausted (partial output is still printed, flagged).
"""
from __future__ import annotations

import argparse
import json
import sys
from math import gcd
from typing import Any, Callable, Sequence

from .bounds import (
    coprime_lower_bound,
    latyshev_lower_bound,
    omega_upper_bound,
    zeta_circulant_invertible,
    zeta_invertible,
)
from .combinatorics import parse_partition
from .decomposition import BudgetExceeded, InconsistentResult, decompose_W, default_workers, dim_W_report, nilpotency_probe
from .glk import multiplicity_upper_bounds, young_rule
from .stability import coefficient_polynomial, stabilization_report
from .substitution import format_word, parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class Reporter:
    def __init__(self, fmt: str, quiet: bool = False):
        self.fmt = fmt
        self.quiet = quiet

    def progress(self, msg: str) -> None:
        if not self.quiet:
            print(msg, file=sys.stderr, flush=True)

    def emit(self, payload: dict[str, Any], text: str) -> None:
        if self.fmt == "json":
            print(json.dumps(payload, sort_keys=True))
        else:
            print(text)


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return v


def _partition(text: str):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _word(text: str):
    try:
        return parse_word(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


# -- commands ---------------------------------------------------------------------


def cmd_decompose(a: argparse.Namespace, out: Reporter) -> int:
    _need(a.n <= a.m, "need n <= m")
    try:
        d = decompose_W(a.n, a.m, prune=a.prune, workers=a.workers, budget_seconds=a.budget, progress=out.progress)
        complete = True
    except BudgetExceeded as exc:
        d, complete = exc.partial, False
    payload = d.to_json() | {"n": a.n, "complete": complete, "dimension": d.dimension()}
    text = f"W_{{{a.n},{a.m}}} = {d.text()}\ndim = {d.dimension()}"
    out.emit(payload, text if complete else "PARTIAL (budget exhausted)\n" + text)
    return EXIT_OK if complete else EXIT_BUDGET


def cmd_dim(a: argparse.Namespace, out: Reporter) -> int:
    _need(a.n <= a.m, "need n <= m")
    try:
        rep = dim_W_report(a.n, a.m, a.method, workers=a.workers)
    except InconsistentResult as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return EXIT_FAIL
    payload = {
        "n": a.n, "m": a.m, "dimension": rep.value, "direct": rep.direct,
        "direct_certified": rep.direct_certified, "via_multiplicities": rep.via_multiplicities,
    }
    out.emit(payload, f"dim W_{{{a.n},{a.m}}} = {rep.value}")
    return EXIT_OK


def cmd_dprobe(a: argparse.Namespace, out: Reporter) -> int:
    d = nilpotency_probe(a.n, a.m_max, workers=a.workers, progress=out.progress)
    cap = a.m_max if a.m_max is not None else a.n * a.n
    text = f"d({a.n}) = {d}" if d is not None else f"d({a.n}) > {cap} (not found)"
    out.emit({"n": a.n, "m_max": cap, "d": d}, text)
    return EXIT_OK


def cmd_bounds(a: argparse.Namespace, out: Reporter) -> int:
    _need(a.n <= a.m, "need n <= m")
    hi, lo, cp = omega_upper_bound(a.n, a.m), latyshev_lower_bound(a.n, a.m), coprime_lower_bound(a.n, a.m)
    payload: dict[str, Any] = {"n": a.n, "m": a.m, "omega_upper": hi, "latyshev_lower": lo, "coprime_lower": cp}
    lines = [f"omega upper bound:    {hi}", f"latyshev lower bound: {lo}",
             f"coprime lower bound:  {cp if cp is not None else 'not applicable'}"]
    status = EXIT_OK
    if a.with_dim:
        d = dim_W_report(a.n, a.m, workers=a.workers).value
        payload["dimension"] = d
        lines.append(f"dim W_{{{a.n},{a.m}}}:       {d}")
        if not (lo <= d <= hi and (cp is None or cp <= d)):
            status = EXIT_FAIL
            lines.append("VIOLATION: dimension outside the bounds")
    out.emit(payload, "\n".join(lines))
    return status


def cmd_upper(a: argparse.Namespace, out: Reporter) -> int:
    d = multiplicity_upper_bounds(a.K, a.n)
    out.emit(d.to_json() | {"K": a.K, "n": a.n, "total": d.total_multiplicity()},
             f"upper bounds for W_{{{a.n},{a.n + a.K}}}: {d.text()}\ntotal = {d.total_multiplicity()}")
    return EXIT_OK


def cmd_stabilize(a: argparse.Namespace, out: Reporter) -> int:
    _need(a.n_min >= max(a.K, 1) and a.n_max >= a.n_min, "need max(K,1) <= n-min <= n-max")
    rep = stabilization_report(a.K, a.n_min, a.n_max, budget_seconds=a.budget, workers=a.workers)
    lines = [f"K = {a.K}, n = {rep.n_values[0] if rep.n_values else '-'}..{rep.n_values[-1] if rep.n_values else '-'}"]
    for n, d in rep.decompositions.items():
        lines.append(f"  n={n}: {d.text()}")
    lines.append(f"N_obs = {rep.n_obs if rep.n_obs is not None else 'none'}")
    for tail, n in rep.decreases:
        lines.append(f"  decrease in family {tail} at n={n}")
    if not rep.complete:
        lines.insert(0, "PARTIAL (budget exhausted)")
    out.emit(rep.to_json(), "\n".join(lines))
    return EXIT_OK if rep.complete else EXIT_BUDGET


def cmd_young_rule(a: argparse.Namespace, out: Reporter) -> int:
    d = young_rule(a.l, a.partition, a.max_length)
    out.emit(d.to_json() | {"l": a.l, "partition": a.partition.to_json()}, d.text())
    return EXIT_OK


def cmd_zeta(a: argparse.Namespace, out: Reporter) -> int:
    _need(0 <= a.k < a.order, "need 0 <= k < order")
    inv = zeta_invertible(a.order, a.k)
    g = gcd(a.k + 1, a.order)
    payload: dict[str, Any] = {"order": a.order, "k": a.k, "invertible": inv, "gcd": g}
    text = "invertible" if inv else "not invertible"
    text += f" (gcd({a.k + 1},{a.order})={g})"
    status = EXIT_OK
    if a.order <= 12:
        oracle = zeta_circulant_invertible(a.order, a.k)
        payload["circulant_check"] = oracle == inv
        if oracle != inv:
            text += "\nVIOLATION: circulant rank disagrees"
            status = EXIT_FAIL
    out.emit(payload, text)
    return status


def cmd_coeffpoly(a: argparse.Namespace, out: Reporter) -> int:
    fit = coefficient_polynomial(a.mono, a.word, a.s_max)
    lines = [f"u = {format_word(a.word)}, offset = {fit.offset}"]
    lines += [f"  c({s}) = {v}" for s, v in fit.samples]
    lines.append(f"fit: {fit.text()}" + ("  [residual: not a polynomial on this range]" if fit.residual else ""))
    out.emit(fit.to_json() | {"word": format_word(a.word), "monomials": [format_word(m) for m in a.mono]}, "\n".join(lines))
    return EXIT_OK


def cmd_verify(a: argparse.Namespace, out: Reporter) -> int:
    from .verification import fast_suite, full_suite

    if a.suite == "fast":
        outcomes = fast_suite(a.seed)
    else:
        outcomes = full_suite(a.seed, workers=a.workers, emit=lambda t: print(t, flush=True))
    failures = 0
    for o in outcomes:
        print(o.line(), flush=True)
        failures += not o.ok
    print(f"{failures} failure(s)" if failures else "all checks passed")
    return EXIT_FAIL if failures else EXIT_OK


class UsageError(Exception):
    pass


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise UsageError(msg)


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--workers", type=_positive, default=None,
                        help="process count (default: TIDEAL_WORKERS or all cores)")
    common.add_argument("--quiet", action="store_true", help="no progress on stderr")

    p = argparse.ArgumentParser(prog="tideal", description="Multilinear parts of the T-ideal generated by x^n.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    sp = add("decompose", cmd_decompose, "irreducible decomposition of W_{n,m}")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--m", type=_positive, required=True)
    sp.add_argument("--prune", action=argparse.BooleanOptionalAction, default=True)
    sp.add_argument("--budget", type=float, default=None, help="seconds")

    sp = add("dim", cmd_dim, "dimension of W_{n,m}")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--m", type=_positive, required=True)
    sp.add_argument("--method", choices=("direct", "via_multiplicities", "both"), default="via_multiplicities")

    sp = add("dprobe", cmd_dprobe, "least m with W_{n,m} = V_m")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--m-max", type=_positive, default=None)

    sp = add("bounds", cmd_bounds, "closed-form bounds on dim W_{n,m}")
    sp.add_argument("--n", type=_positive, required=True)
    sp.add_argument("--m", type=_positive, required=True)
    sp.add_argument("--with-dim", action="store_true", help="also compute the dimension and check it")

    sp = add("upper", cmd_upper, "GL multiplicity upper bounds for W_{n,n+K}")
    sp.add_argument("--K", type=_nonneg, required=True)
    sp.add_argument("--n", type=_positive, required=True)

    sp = add("stabilize", cmd_stabilize, "derived-pattern onset for W_{n,n+K}")
    sp.add_argument("--K", type=_nonneg, required=True)
    sp.add_argument("--n-min", type=_positive, required=True)
    sp.add_argument("--n-max", type=_positive, required=True)
    sp.add_argument("--budget", type=float, default=None, help="seconds")

    sp = add("young-rule", cmd_young_rule, "product with a one-row shape")
    sp.add_argument("--l", type=_nonneg, required=True)
    sp.add_argument("--partition", type=_partition, required=True)
    sp.add_argument("--max-length", type=_positive, default=None)

    sp = add("zeta", cmd_zeta, "invertibility of e + g + ... + g^k in a cyclic group algebra")
    sp.add_argument("--order", type=_positive, required=True)
    sp.add_argument("--k", type=_nonneg, required=True)

    sp = add("coeffpoly", cmd_coeffpoly, "coefficient of shifted words as a function of s")
    sp.add_argument("--mono", type=_word, action="append", required=True, help="repeat once per monomial")
    sp.add_argument("--word", type=_word, required=True)
    sp.add_argument("--s-max", type=_nonneg, default=8)

    sp = add("verify", cmd_verify, "run a property suite")
    sp.add_argument("suite", choices=("fast", "full"))
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.workers is None:
        a.workers = default_workers()
    out = Reporter(a.format, a.quiet)
    try:
        return a.func(a, out)
    except InconsistentResult as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"tideal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
