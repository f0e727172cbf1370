"""Brute-force checks: decomposition sampling and closed-form certification.

Pure-state decompositions of ``rho = X X^H`` (``X`` is ``m x r``) are in
one-to-one correspondence with ``K x r`` isometries ``U``: member ``k`` is
``X U[k]^T`` (unnormalized). Sampling random isometries and averaging the
pure-state concurrence of the members gives a lower bound on the
concurrence of assistance (best average) and an upper bound on the
concurrence (smallest average).

Trial ``i`` draws everything it needs from ``default_rng([seed, i])``, so the
result for a given trial never depends on how many trials run or in what
order; the best value over ``trials`` therefore only improves as ``trials``
grows.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .measures import (
    SAMPLED_BOUND,
    MeasureValue,
    coa_bipartite,
    coa_one_vs_rest_gw,
    coa_pair_gw,
    concurrence_bipartite,
    concurrence_pure,
    tq_rank2_counterexample,
    tsallis_entropy,
)
from .states import (
    GWStateSpec,
    Partition,
    build_gw_vector,
    counterexample_vector,
    party_weights,
    reduce_to_parties,
)
from .tensor import DomainError, SizeError, hermitian_eig, local_support, partial_trace, reduce_pure

MAX_SAMPLING_RANK = 8
SAMPLING_TOL = 5e-3
CHUNK = 256


@dataclass(frozen=True)
class SamplingConfig:
    """Settings for decomposition sampling.

    Parameters
    ----------
    trials : int
        Number of independent random decompositions.
    decomposition_size : int, optional
        Members per decomposition. Defaults to twice the rank; at most four
        times the rank.
    seed : int
        Base seed; trial ``i`` uses ``default_rng([seed, i])``.
    refine_steps : int
        Local-search iterations applied to every trial.
    """

    trials: int = 2000
    decomposition_size: int | None = None
    seed: int = 0
    refine_steps: int = 10
    step: float = 0.05

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.refine_steps < 0:
            raise ValueError("refine_steps must be non-negative")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def _factor(rho: np.ndarray, floor: float = 1e-12) -> np.ndarray:
    """``X`` with ``X X^H = rho``, one column per eigenvalue above ``floor``."""
    vals, vecs = hermitian_eig(rho)
    keep = vals > floor * max(1.0, float(vals[-1]))
    if keep.sum() > MAX_SAMPLING_RANK:
        raise SizeError(f"rank {int(keep.sum())} exceeds sampling limit {MAX_SAMPLING_RANK}")
    return vecs[:, keep] * np.sqrt(vals[keep])


def _average_concurrence(u: np.ndarray, x: np.ndarray, dims: tuple[int, int]) -> np.ndarray:
    """Average member concurrence for a batch of isometries ``u`` of shape ``(B, K, r)``.

    For an unnormalized member with coefficient matrix ``M`` of weight ``p``,
    ``p C = 2 sqrt(sum |2x2 minors of M|^2)``. Summing minors avoids the
    cancellation in ``p^2 - tr rho_A^2`` for nearly product members.
    """
    da, db = dims
    psi = np.einsum("bkr,mr->bkm", u, x)
    m = psi.reshape(psi.shape[0], psi.shape[1], da, db)
    if da > db:
        m = np.swapaxes(m, 2, 3)
        da, db = db, da
    ia, ka = np.triu_indices(da, 1)
    jb, lb = np.triu_indices(db, 1)
    top, bot = m[:, :, ia, :], m[:, :, ka, :]
    minors = top[..., jb] * bot[..., lb] - top[..., lb] * bot[..., jb]
    return np.sum(2.0 * np.sqrt(np.sum(np.abs(minors) ** 2, axis=(2, 3))), axis=1)


def _orthonormalize(g: np.ndarray) -> np.ndarray:
    q, r = np.linalg.qr(g)
    # fix the column phases so the map from g to q is deterministic
    d = np.diagonal(r, axis1=-2, axis2=-1)
    ph = np.where(np.abs(d) > 0, d / np.maximum(np.abs(d), 1e-300), 1.0)
    return q * ph[..., None, :]


def _draws(cfg: SamplingConfig, start: int, stop: int, k: int, r: int):
    init, kicks = [], []
    shape = (cfg.refine_steps, k, r)
    for i in range(start, stop):
        rng = np.random.default_rng([cfg.seed, i])
        init.append(rng.normal(size=(k, r)) + 1j * rng.normal(size=(k, r)))
        kicks.append(rng.normal(size=shape) + 1j * rng.normal(size=shape))
    return np.array(init), np.array(kicks)


def _sample(rho, dims, cfg: SamplingConfig, sense: int) -> float:
    rho = np.asarray(rho, dtype=complex)
    dims = (int(dims[0]), int(dims[1]))
    if rho.shape != (dims[0] * dims[1],) * 2:
        raise DomainError(f"matrix of shape {rho.shape} does not match dims {dims}")
    x = _factor(rho)
    # members live in supp(rho_A) x supp(rho_B); concurrence ignores local isometries
    va, vb = local_support(rho, dims)
    x = np.kron(va, vb).conj().T @ x
    dims = (va.shape[1], vb.shape[1])
    r = x.shape[1]
    k = cfg.decomposition_size or 2 * r
    if not r <= k <= 4 * r:
        raise DomainError(f"decomposition_size {k} outside [rank, 4 rank] = [{r}, {4 * r}]")
    best = -math.inf
    for start in range(0, cfg.trials, CHUNK):
        stop = min(cfg.trials, start + CHUNK)
        init, kicks = _draws(cfg, start, stop, k, r)
        u = _orthonormalize(init)
        score = sense * _average_concurrence(u, x, dims)
        step = np.full(stop - start, cfg.step)
        for s in range(cfg.refine_steps):
            cand = _orthonormalize(u + step[:, None, None] * kicks[:, s])
            cs = sense * _average_concurrence(cand, x, dims)
            better = cs > score
            u = np.where(better[:, None, None], cand, u)
            score = np.where(better, cs, score)
            step = np.where(better, step, 0.5 * step)
        best = max(best, float(score.max()))
    return sense * best


def coa_sampling_max(rho, dims: tuple[int, int], cfg: SamplingConfig | None = None) -> MeasureValue:
    """Best average member concurrence found; a lower bound on the CoA."""
    return MeasureValue(_sample(rho, dims, cfg or SamplingConfig(), +1), SAMPLED_BOUND)


def concurrence_sampling_min(rho, dims: tuple[int, int], cfg: SamplingConfig | None = None) -> MeasureValue:
    """Smallest average member concurrence found; an upper bound on the concurrence."""
    return MeasureValue(_sample(rho, dims, cfg or SamplingConfig(), -1), SAMPLED_BOUND)


# -- certification ----------------------------------------------------------

@dataclass(frozen=True)
class Check:
    """One comparison; passes iff ``expected - below <= got <= expected + above``."""

    name: str
    expected: float
    got: float
    below: float
    above: float

    @property
    def passed(self) -> bool:
        return bool(self.expected - self.below <= self.got <= self.expected + self.above)

    def line(self) -> str:
        tol = f"{self.above:.1e}" if self.below == self.above else f"-{self.below:.1e}/+{self.above:.1e}"
        return (
            f"name={self.name} expected={self.expected:.15g} got={self.got:.15g} "
            f"tol={tol} pass={'yes' if self.passed else 'no'}"
        )


@dataclass
class CertificationReport:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, expected: float, got: float, tol: float, below: float | None = None) -> None:
        below = tol if below is None else below
        self.checks.append(Check(name, float(expected), float(got), float(below), float(tol)))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_text(self) -> str:
        return "\n".join(c.line() for c in self.checks)

    def raise_if_failed(self) -> None:
        if not self.passed:
            raise CertificationError(self)


class CertificationError(AssertionError):
    def __init__(self, report: CertificationReport):
        self.report = report
        names = ", ".join(c.name for c in report.failures)
        super().__init__(f"certification failed: {names}")


def _bracket(report, name, rho, dims, expected, cfg, tol):
    # sampling can only overshoot the concurrence and undershoot the CoA
    lo = concurrence_sampling_min(rho, dims, cfg).value
    hi = coa_sampling_max(rho, dims, cfg).value
    report.add(f"{name} sampled-min", expected, lo, tol, below=1e-9)
    report.add(f"{name} sampled-max", expected, hi, 1e-9, below=tol)


def _label(party: Sequence[int]) -> str:
    return "{" + ",".join(str(s) for s in party) + "}"


def certify_gw_closed_forms(
    spec: GWStateSpec,
    part: Partition,
    tol: float = 1e-8,
    cfg: SamplingConfig | None = None,
    sampling_tol: float = SAMPLING_TOL,
) -> CertificationReport:
    """Compare the weight-based closed forms with numerical reductions.

    Pairs of parties are checked through the exact two-qubit formulas after
    restricting to local supports (``tol``). Pairs that are not plain qubit
    pairs, and one-vs-rest cuts of a mixed reduction, are additionally
    bracketed by decomposition sampling (``sampling_tol``). Pure
    one-vs-rest cuts use the pure-state concurrence directly.

    Set ``cfg`` to ``SamplingConfig(trials=...)`` to control sampling; pass
    ``sampling_tol=None`` to skip the sampling brackets entirely.
    """
    if len(part) < 2:
        raise DomainError("certification needs at least two parties")
    cfg = cfg or SamplingConfig()
    w = party_weights(spec, part)
    vec = build_gw_vector(spec)
    traced = part.traced(spec.n)
    report = CertificationReport()
    names = [_label(p) for p in part.parties]
    pair_sq = np.zeros(len(part))
    for t, l in itertools.combinations(range(len(part)), 2):
        expected = coa_pair_gw(w, t, l).value
        rho, dims = reduce_to_parties(vec, [part.parties[t], part.parties[l]])
        tag = f"pair {names[t]}{names[l]}"
        c = concurrence_bipartite(rho, dims).value
        report.add(f"{tag} concurrence", expected, c, tol)
        report.add(f"{tag} coa", expected, coa_bipartite(rho, dims).value, tol)
        pair_sq[t] += c**2
        pair_sq[l] += c**2
        if dims != (2, 2) and sampling_tol is not None:
            _bracket(report, tag, rho, dims, expected, cfg, sampling_tol)
    for t in range(len(part)):
        expected = coa_one_vs_rest_gw(w, t).value
        others = [s for u, p in enumerate(part.parties) if u != t for s in p]
        tag = f"cut {names[t]}|rest"
        if not traced:
            got = concurrence_pure(vec, part.parties[t]).value
        else:
            rho, dims = reduce_to_parties(vec, [part.parties[t], others])
            got = concurrence_bipartite(rho, dims).value
            report.add(f"{tag} coa", expected, coa_bipartite(rho, dims).value, tol)
            if sampling_tol is not None:
                _bracket(report, tag, rho, dims, expected, cfg, sampling_tol)
        report.add(f"{tag} concurrence", expected, got, tol)
        report.add(f"{tag} squared vs pair sum", pair_sq[t], got**2, tol)
    return report


# -- the 3x2x2 state ---------------------------------------------------------

def _member_spectra(rho_pair, dims, cfg: SamplingConfig):
    """Sorted side-A spectra of normalized members of sampled decompositions."""
    x = _factor(rho_pair)
    r = x.shape[1]
    k = cfg.decomposition_size or 2 * r
    init, _ = _draws(SamplingConfig(cfg.trials, k, cfg.seed, 0), 0, cfg.trials, k, r)
    u = _orthonormalize(init)
    psi = np.einsum("bkr,mr->bkm", u, x).reshape(-1, dims[0] * dims[1])
    norms = np.linalg.norm(psi, axis=1)
    psi = psi[norms > 1e-6] / norms[norms > 1e-6, None]
    out = []
    for v in psi:
        out.append(np.sort(hermitian_eig(reduce_pure(v, dims, [0])).values))
    return np.array(out)


def counterexample_numeric(q_grid, cfg: SamplingConfig | None = None, tol: float = 1e-8,
                           value_tol: float = 1e-10) -> CertificationReport:
    """Numerical confirmation of the 3x2x2 state that breaks the CKW inequality.

    Checks the side-A spectrum of the state, the spectra of decomposition
    members of both pair reductions, and that Tsallis values computed from
    those spectra reproduce :func:`gwmono.measures.tq_rank2_counterexample`
    on every ``q`` in ``q_grid``.
    """
    cfg = cfg or SamplingConfig(trials=50)
    vec = counterexample_vector()
    report = CertificationReport()
    spec_a = np.sort(hermitian_eig(reduce_pure(vec.amps, vec.dims, [0])).values)
    for k, v in enumerate(spec_a):
        report.add(f"rho_A eigenvalue {k}", 1.0 / 3.0, v, tol)
    target = np.array([0.0, 1.0 / 3.0, 2.0 / 3.0])
    member_spectra = {}
    for name, keep in (("AB", [0, 1]), ("AC", [0, 2])):
        rho = partial_trace(vec.density(), vec.dims, keep)
        spectra = _member_spectra(rho, (3, 2), cfg)
        err = np.max(np.abs(spectra - target), axis=0)
        for k in range(3):
            report.add(f"{name} members eigenvalue {k} (worst of {len(spectra)})",
                       target[k], target[k] + err[k], tol)
        member_spectra[name] = spectra
    for q in np.asarray(q_grid, dtype=float):
        ref = tq_rank2_counterexample(float(q))
        lhs = tsallis_entropy(spec_a, q)
        report.add(f"q={q:.6g} lhs", ref.lhs, lhs, value_tol)
        pairs = []
        for name in ("AB", "AC"):
            vals = [tsallis_entropy(s, q) for s in member_spectra[name]]
            # every member has the same spectrum, so every average agrees
            got = max(vals, key=lambda v: abs(v - ref.t_ab))
            report.add(f"q={q:.6g} T_{name}", ref.t_ab, got, value_tol)
            pairs.append(got)
        report.add(f"q={q:.6g} residual", ref.residual_bound, lhs - sum(pairs), value_tol)
    return report

