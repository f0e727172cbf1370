"""Curve tables for the worked examples.

Each builder returns a :class:`~gwmono.bounds.SweepTable` or
:class:`~gwmono.bounds.SurfaceTable` whose CSV form is byte-stable. The
state defaults to the bundled example fixture, and every tuning parameter
can be overridden.
"""
from __future__ import annotations

from dataclasses import replace
from importlib import resources

import numpy as np

from . import bounds as bd
from .measures import Q_INTERVALS, coa_one_vs_rest_gw, coa_pair_gw, q_grid, tq_rank2_counterexample
from .states import GWStateSpec, Partition, load_partition, load_state, party_weights
from .tensor import DomainError

FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig5")

FIG1_PARAMS = bd.BoundParams(gamma=2.0, omega=1.0, ell=1.3, delta=1.3)
FIG2_PARAMS = bd.BoundParams(gamma=3.0, omega=9.0 / 8.0, ell=0.75, k=4.0 / 3.0)
FIG2_P = (0.5, 0.75)
FIG1_GRID = (2.0, 5.0, 61)
FIG2_GRID = (0.0, 1.5, 61)
SURFACE_POINTS = 40
ALPHA_RANGE = (2.0, 5.0)
FIG5_POINTS = 200


def fixture(name: str) -> tuple[GWStateSpec, Partition]:
    """Bundled example state and partition: ``"example1"`` or ``"example2"``."""
    base = resources.files("gwmono") / "data"
    with resources.as_file(base / f"{name}_state.json") as p:
        spec = load_state(p)
    with resources.as_file(base / f"{name}_partition.json") as p:
        part = load_partition(p, spec.n)
    return spec, part


def tripartite_values(spec: GWStateSpec, part: Partition) -> tuple[float, float, float]:
    """``(C_a(A|BC), C_aAB, C_aAC)`` from party weights; party 0 is A."""
    if len(part) != 3:
        raise DomainError(f"the tripartite figures need exactly three parties, got {len(part)}")
    w = party_weights(spec, part)
    return coa_one_vs_rest_gw(w, 0).value, coa_pair_gw(w, 0, 1).value, coa_pair_gw(w, 0, 2).value


def _grid(spec) -> np.ndarray:
    start, stop, points = spec
    if int(points) < 2:
        raise DomainError("a grid needs at least two points")
    return np.linspace(float(start), float(stop), int(points))


def fig1(spec=None, part=None, params: bd.BoundParams = FIG1_PARAMS, grid=FIG1_GRID) -> bd.SweepTable:
    """``C_a^alpha(A|BC)`` against the alpha-family lower bounds over alpha."""
    if spec is None:
        spec, part = fixture("example1")
    whole, ab, ac = tripartite_values(spec, part)
    xs = _grid(grid)
    names = ("lhs", "ours", "xhlf_a", "jzx_b", "jzx_a", "zxn")
    cols = {k: np.empty_like(xs) for k in names}
    reports = {"ours": []}
    for i, a in enumerate(xs):
        p = replace(params, alpha=float(a))
        rep = bd.thm1_bound(ab, ac, p, whole)
        reports["ours"].append(rep)
        first, second = (ab, ac) if rep.orientation == 1 else (ac, ab)
        cols["lhs"][i] = rep.lhs
        cols["ours"][i] = rep.rhs
        for key, fam in (("xhlf_a", "XHLF-A"), ("jzx_b", "JZX-B"), ("jzx_a", "JZX-A"), ("zxn", "ZXN")):
            cols[key][i] = bd.prior_bound(fam, [first, second], p, whole).rhs
    return bd.SweepTable("alpha", xs, cols, reports)


def fig2(spec=None, part=None, params: bd.BoundParams = FIG2_PARAMS, grid=FIG2_GRID,
         p_values=FIG2_P) -> bd.SweepTable:
    """``C_a^beta(A|BC)`` against the beta-family lower bounds over beta."""
    if spec is None:
        spec, part = fixture("example2")
    whole, ab, ac = tripartite_values(spec, part)
    xs = _grid(grid)
    names = ["lhs"] + [f"ours_p{bd.format_number(p)}" for p in p_values] + ["xhlf_b", "lyy", "sx"]
    cols = {k: np.empty_like(xs) for k in names}
    reports: dict[str, list] = {}
    for i, b in enumerate(xs):
        base = replace(params, beta=float(b))
        orient = 1
        for pv, key in zip(p_values, names[1:]):
            rep = bd.thm3_bound(ab, ac, replace(base, p=float(pv)), whole)
            reports.setdefault(key, []).append(rep)
            cols[key][i] = rep.rhs
            cols["lhs"][i] = rep.lhs
            orient = rep.orientation
        first, second = (ab, ac) if orient == 1 else (ac, ab)
        for key, fam in (("xhlf_b", "XHLF-B"), ("lyy", "LYY"), ("sx", "SX")):
            cols[key][i] = bd.prior_bound(fam, [first, second], base, whole).rhs
    return bd.SweepTable("beta", xs, cols, reports)


def residual_surface(spec=None, part=None, q_axis=None,
                     alpha_grid=(ALPHA_RANGE[0], ALPHA_RANGE[1], SURFACE_POINTS)) -> bd.SurfaceTable:
    """Tsallis-q monogamy residual of party 0 over a ``(q, alpha)`` grid.

    ``q_axis`` is ``(start, stop, points)``; it defaults to the lower
    validity interval.
    """
    if spec is None:
        spec, part = fixture("example2")
    w = party_weights(spec, part)
    qs = _grid(q_axis or (*Q_INTERVALS[0], SURFACE_POINTS))
    alphas = _grid(alpha_grid)
    vals = np.array([[bd.tq_monogamy_residual(w, 0, float(q), float(a)) for a in alphas] for q in qs])
    return bd.SurfaceTable(("q", "alpha"), qs, alphas, "residual", vals)


def fig3(spec=None, part=None, points: int = SURFACE_POINTS) -> bd.SurfaceTable:
    """Residual surface over the lower q interval."""
    return residual_surface(spec, part, (*Q_INTERVALS[0], points), (*ALPHA_RANGE, points))


def fig4(spec=None, part=None, points: int = SURFACE_POINTS) -> bd.SurfaceTable:
    """Residual surface over the upper q interval."""
    return residual_surface(spec, part, (*Q_INTERVALS[1], points), (*ALPHA_RANGE, points))


def fig5(q_axis=None) -> bd.SweepTable:
    """Upper bound on the Tsallis-q polygamy residual of the 3x2x2 state.

    Without ``q_axis`` the grid has 200 points split over both validity
    intervals.
    """
    qs = q_grid(FIG5_POINTS) if q_axis is None else _grid(q_axis)
    vals = np.array([tq_rank2_counterexample(float(q)).residual_bound for q in qs])
    return bd.SweepTable("q", qs, {"residual_bound": vals})


def check_ordering(table: bd.SweepTable, order, tol: float = 1e-12) -> list[str]:
    """Violations of ``table[order[0]] >= table[order[1]] >= ...`` beyond ``tol``."""
    out = []
    for hi, lo in zip(order, order[1:]):
        gap = table.columns[hi] - table.columns[lo]
        for i in np.flatnonzero(gap < -tol):
            out.append(f"{table.axis}={table.grid[i]:.6g}: {hi} < {lo} by {-gap[i]:.3e}")
    return out


def build(which: str, **kw):
    """Dispatch on figure name."""
    try:
        fn = {"fig1": fig1, "fig2": fig2, "fig3": fig3, "fig4": fig4, "fig5": fig5}[which]
    except KeyError:
        raise DomainError(f"unknown figure {which!r}; choose from {', '.join(FIGURES)}") from None
    return fn(**kw)

