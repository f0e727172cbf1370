"""Command-line entry point: ``gwmono <verb> [options]``.

Verbs
-----
measure   CoA and Tsallis-q assistance values of a state under a partition
figure    CSV table for one of fig1..fig5
certify   compare closed forms with numerical reductions
fuzz      randomized sign checks of the lemmas and theorems
params    admissible tuning-parameter ranges

Exit status is 0 on success, 1 when a check or certification fails and 2
on usage, parse or validation errors.
"""
from __future__ import annotations

import argparse
import itertools
import sys
from dataclasses import replace

import numpy as np

from . import bounds as bd
from . import figures, fuzz
from .measures import (
    coa_one_vs_rest_gw,
    coa_pair_gw,
    concurrence_bipartite,
    concurrence_pure,
    q_is_valid,
    require_valid_q,
    tqeeoa_gw,
)
from .oracle import SamplingConfig, certify_gw_closed_forms
from .states import (
    Partition,
    ParseError,
    ValidationError,
    build_gw_vector,
    load_partition,
    load_state,
    party_weights,
    random_gw_spec,
    random_partition,
    reduce_to_parties,
)
from .tensor import DomainError, SizeError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_grid(text: str) -> tuple[float, float, int]:
    """``"a:b:n"`` -> ``(a, b, n)`` with ``n >= 2`` and ``a < b``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must look like start:stop:points, got {text!r}")
    try:
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like start:stop:points, got {text!r}") from None
    if n < 2 or not a < b:
        raise argparse.ArgumentTypeError(f"grid needs start < stop and at least 2 points, got {text!r}")
    return a, b, n


def parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _scalar_or_list(values):
    if values is None:
        return None
    return values[0] if len(values) == 1 else values


# -- inputs ---------------------------------------------------------------

def _load_inputs(args, default_fixture: str | None = None):
    if args.state is None:
        if default_fixture is None:
            raise UsageError("--state is required")
        return figures.fixture(default_fixture)
    spec = load_state(args.state)
    part = load_partition(args.partition, spec.n) if args.partition else Partition.singletons(range(spec.n))
    return spec, part


def _params(args, base: bd.BoundParams) -> bd.BoundParams:
    over = {}
    for name in ("alpha", "beta", "gamma", "k"):
        v = getattr(args, name, None)
        if v is not None:
            over[name] = v
    for name in ("omega", "ell", "delta"):
        v = _scalar_or_list(getattr(args, name, None))
        if v is not None:
            over[name] = v
    if getattr(args, "z", None) is not None:
        over["z"] = args.z
    return replace(base, **over)


def _label(p) -> str:
    return "{" + ",".join(str(s) for s in p) + "}"


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- verbs ----------------------------------------------------------------

def cmd_measure(args) -> int:
    spec, part = _load_inputs(args)
    if len(part) < 2:
        raise UsageError("measure needs at least two parties")
    qs = args.q or []
    for q in qs:
        require_valid_q(q)
    w = party_weights(spec, part)
    vec = build_gw_vector(spec)
    traced = part.traced(spec.n)
    names = [_label(p) for p in part.parties]
    rows = [("quantity", "parties", "closed_form", "numerical")]
    for t, l in itertools.combinations(range(len(part)), 2):
        rho, dims = reduce_to_parties(vec, [part.parties[t], part.parties[l]])
        num = concurrence_bipartite(rho, dims).value
        rows.append(("C_a", names[t] + names[l], coa_pair_gw(w, t, l).value, num))
        for q in qs:
            rows.append((f"T_q^a(q={bd.format_number(q)})", names[t] + names[l], tqeeoa_gw(w, t, q, l).value, ""))
    for t in range(len(part)):
        others = [s for u, p in enumerate(part.parties) if u != t for s in p]
        if traced:
            rho, dims = reduce_to_parties(vec, [part.parties[t], others])
            num = concurrence_bipartite(rho, dims).value
        else:
            num = concurrence_pure(vec, part.parties[t]).value
        rows.append(("C_a", names[t] + "|rest", coa_one_vs_rest_gw(w, t).value, num))
        for q in qs:
            rows.append((f"T_q^a(q={bd.format_number(q)})", names[t] + "|rest", tqeeoa_gw(w, t, q).value, ""))
    lines = [",".join(rows[0])]
    for name, where, cf, num in rows[1:]:
        lines.append(",".join([name, where, bd.format_number(cf), bd.format_number(num) if num != "" else ""]))
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _q_axis(grid, default):
    if grid is None:
        return default
    a, b, n = grid
    if not (q_is_valid(a) and q_is_valid(b) and (b <= 2.0 or a >= 3.0)):
        raise UsageError(f"q grid {a}:{b} must lie inside one validity interval")
    return grid


def cmd_figure(args) -> int:
    which = args.which
    if which in ("fig1", "fig2"):
        fixture = "example1" if which == "fig1" else "example2"
        spec, part = _load_inputs(args, fixture)
        if which == "fig1":
            params = _params(args, figures.FIG1_PARAMS)
            table = figures.fig1(spec, part, params, args.grid or figures.FIG1_GRID)
        else:
            params = _params(args, figures.FIG2_PARAMS)
            p_values = tuple(args.p) if args.p else figures.FIG2_P
            table = figures.fig2(spec, part, params, args.grid or figures.FIG2_GRID, p_values)
    elif which in ("fig3", "fig4"):
        spec, part = _load_inputs(args, "example2")
        lo, hi = figures.Q_INTERVALS[0 if which == "fig3" else 1]
        q_axis = _q_axis(args.grid, (lo, hi, figures.SURFACE_POINTS))
        table = figures.residual_surface(spec, part, q_axis)
    else:
        table = figures.fig5(_q_axis(args.grid, None))
    _emit(args, table.to_csv())
    return EXIT_OK


def cmd_certify(args) -> int:
    cfg = SamplingConfig(trials=args.trials, seed=args.seed)
    jobs = []
    if args.random:
        if args.state:
            raise UsageError("--random and --state are mutually exclusive")
        if args.d < 2 or args.n < 2:
            raise UsageError("--d and --n must be at least 2")
        for i in range(args.random):
            rng = np.random.default_rng([args.seed, i])
            spec = random_gw_spec(rng, args.d, args.n)
            part = random_partition(rng, args.n, int(rng.integers(2, args.n + 1)))
            jobs.append((f"random[{i}]", spec, part))
    else:
        spec, part = _load_inputs(args)
        jobs.append((args.state, spec, part))
    failed = 0
    out = []
    for name, spec, part in jobs:
        report = certify_gw_closed_forms(spec, part, args.tol, cfg)
        status = "PASS" if report.passed else "FAIL"
        out.append(f"# {status} {name} parties={[list(p) for p in part.parties]} checks={len(report.checks)}")
        if args.verbose or not report.passed:
            out.append(report.to_text())
        failed += not report.passed
    out.append(f"# {len(jobs) - failed}/{len(jobs)} certified")
    _emit(args, "\n".join(out) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_fuzz(args) -> int:
    families = list(fuzz.FAMILIES) if args.family == "all" else [args.family]
    ok = True
    lines = []
    for fam in families:
        summary = fuzz.run(fam, args.count, args.seed)
        lines.append(summary.line())
        ok &= summary.passed
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def _fmt_interval(iv: bd.Interval) -> str:
    tag = " (empty)" if iv.empty else ""
    return f"[{bd.format_number(iv.lo)}, {bd.format_number(iv.hi)}]{tag}"


def cmd_params(args) -> int:
    spec, part = _load_inputs(args, "example1")
    w = party_weights(spec, part)
    if len(part) < 3:
        raise UsageError("params needs at least three parties")
    gamma = args.gamma if args.gamma is not None else 2.0
    delta = args.delta[0] if args.delta else 1.0
    pairs = [coa_pair_gw(w, 0, l).value for l in range(1, len(part))]
    lines = [f"# gamma={bd.format_number(gamma)} delta={bd.format_number(delta)}"]
    if len(part) == 3:
        whole = coa_one_vs_rest_gw(w, 0).value
        for label, vals in (("B first", pairs), ("C first", pairs[::-1])):
            reg = bd.admissible_params(vals, gamma, delta, whole)
            lines.append(f"{label}: alpha-family l in {_fmt_interval(reg.thm1_l)}, omega in {_fmt_interval(reg.thm1_omega)}")
            lines.append(f"{label}: beta-family l in {_fmt_interval(reg.thm3_l)}, omega in {_fmt_interval(reg.thm3_omega)}")
    else:
        z = args.z if args.z is not None else 1
        for st in bd.chain_intervals(pairs, gamma, z, delta):
            kind = "head" if st.head else "tail"
            lines.append(
                f"step {st.step} ({kind}): alpha-family l in {_fmt_interval(st.thm2_l)}, "
                f"beta-family l in {_fmt_interval(st.thm4_l)}, omega in {_fmt_interval(st.omega)}"
            )
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--state", help="GW state JSON file")
    common.add_argument("--partition", help="partition JSON file (default: every site its own party)")
    common.add_argument("--out", help="write output here instead of standard output")
    common.add_argument("--seed", type=int, default=0)

    bparams = argparse.ArgumentParser(add_help=False)
    bparams.add_argument("--grid", type=parse_grid, help="sweep axis as start:stop:points")
    bparams.add_argument("--alpha", type=float)
    bparams.add_argument("--beta", type=float)
    bparams.add_argument("--gamma", type=float)
    bparams.add_argument("--omega", type=parse_floats, help="scalar or comma-separated per-step values")
    bparams.add_argument("--ell", type=parse_floats, help="scalar or comma-separated per-step values")
    bparams.add_argument("--delta", type=parse_floats, help="scalar or comma-separated per-step values")
    bparams.add_argument("--p", type=parse_floats, help="one or more p values, comma-separated")
    bparams.add_argument("--k", type=float)
    bparams.add_argument("--z", type=int)

    parser = argparse.ArgumentParser(prog="gwmono", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", parents=[common], help="CoA and Tsallis-q values")
    m.add_argument("--q", type=parse_floats, help="Tsallis indices, comma-separated")
    m.set_defaults(func=cmd_measure)

    f = sub.add_parser("figure", parents=[common, bparams], help="figure data as CSV")
    f.add_argument("which", choices=figures.FIGURES)
    f.set_defaults(func=cmd_figure)

    c = sub.add_parser("certify", parents=[common], help="closed forms against numerics")
    c.add_argument("--random", type=int, metavar="N", help="certify N random states instead of --state")
    c.add_argument("--d", type=int, default=2)
    c.add_argument("--n", type=int, default=4)
    c.add_argument("--tol", type=float, default=1e-8)
    c.add_argument("--trials", type=int, default=2000, help="sampling trials per bracket")
    c.add_argument("--verbose", action="store_true", help="print every check, not only failures")
    c.set_defaults(func=cmd_certify)

    z = sub.add_parser("fuzz", parents=[common], help="randomized sign checks")
    z.add_argument("--family", choices=["all", *fuzz.FAMILIES], default="all")
    z.add_argument("--count", type=int, default=10_000, help="hypothesis-passing instances per family")
    z.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("params", parents=[common, bparams], help="admissible parameter ranges")
    p.set_defaults(func=cmd_params)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except bd.HypothesisError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for h in exc.margins:
            print(f"  {h.label}: margin {h.margin:.3e}{'' if h.holds else ' (fails)'}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ParseError, ValidationError, DomainError, SizeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
