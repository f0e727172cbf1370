"""Concurrence, concurrence of assistance (CoA) and Tsallis-q entanglement.

Two routes are provided for every quantity that has one: a numerical route
working on state vectors and density matrices, and a closed form for GW
states expressed through party weights (see :func:`gwmono.states.party_weights`).
For a GW state a pair of parties ``t, l`` has ``C = C_a = 2 sqrt(w_t w_l)``
and the one-vs-rest cut obeys ``C^2(t|rest) = sum_l C^2(t, l)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .tensor import (
    DomainError,
    StateVector,
    compress_to_qubits,
    hermitian_eig,
    reduce_pure,
    wootters_lambdas,
)

Q_MIN = (5.0 - math.sqrt(13.0)) / 2.0
Q_MAX = (5.0 + math.sqrt(13.0)) / 2.0
Q_INTERVALS = ((Q_MIN, 2.0), (3.0, Q_MAX))

CLOSED_FORM = "closed-form"
NUMERICAL = "numerical"
SAMPLED_BOUND = "sampled-bound"


@dataclass(frozen=True)
class MeasureValue:
    value: float
    method: str = NUMERICAL

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class Bipartition:
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]

    def __post_init__(self):
        a = tuple(sorted(int(s) for s in self.side_a))
        b = tuple(sorted(int(s) for s in self.side_b))
        if not a or not b:
            raise DomainError("both sides of a bipartition must be non-empty")
        if set(a) & set(b):
            raise DomainError(f"sides {a} and {b} overlap")
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)


def _as_cut(vec: StateVector, cut) -> Bipartition:
    if isinstance(cut, Bipartition):
        b = cut
    else:
        a = tuple(int(s) for s in cut)
        b = Bipartition(a, tuple(s for s in range(len(vec.dims)) if s not in a))
    if set(b.side_a) | set(b.side_b) != set(range(len(vec.dims))):
        raise DomainError("a pure-state cut must split every subsystem of the vector")
    return b


def q_is_valid(q: float, tol: float = 1e-12) -> bool:
    """``q`` lies in ``[(5-sqrt13)/2, 2] U [3, (5+sqrt13)/2]``."""
    return any(lo - tol <= q <= hi + tol for lo, hi in Q_INTERVALS)


def require_valid_q(q: float) -> None:
    if not q_is_valid(q):
        raise DomainError(
            f"q={q} outside the validity set [(5-sqrt13)/2, 2] U [3, (5+sqrt13)/2]"
            f" = [{Q_MIN:.6f}, 2] U [3, {Q_MAX:.6f}]"
        )


def q_grid(points: int) -> np.ndarray:
    """``points`` values spread over both validity intervals in proportion to their length."""
    len1 = 2.0 - Q_MIN
    len2 = Q_MAX - 3.0
    n1 = max(2, int(round(points * len1 / (len1 + len2))))
    n2 = max(2, points - n1)
    return np.concatenate([np.linspace(Q_MIN, 2.0, n1), np.linspace(3.0, Q_MAX, n2)])


# -- numerical route ------------------------------------------------------

def concurrence_pure(vec: StateVector, cut) -> MeasureValue:
    """``sqrt(2 (1 - tr rho_A^2))`` for a pure state across ``cut``.

    ``cut`` is a :class:`Bipartition` or the site indices of side A.
    """
    b = _as_cut(vec, cut)
    rho_a = reduce_pure(vec.amps, vec.dims, b.side_a)
    purity = float(np.sum(np.abs(rho_a) ** 2))
    return MeasureValue(math.sqrt(max(0.0, 2.0 * (1.0 - purity))), NUMERICAL)


def concurrence_wootters(rho) -> MeasureValue:
    z = wootters_lambdas(rho)
    return MeasureValue(max(z[0] - z[1] - z[2] - z[3], 0.0), NUMERICAL)


def coa_two_qubit(rho) -> MeasureValue:
    """Concurrence of assistance of a two-qubit state: the sum of the Wootters lambdas."""
    return MeasureValue(float(np.sum(wootters_lambdas(rho))), NUMERICAL)


def _compressed(rho, dims):
    small = compress_to_qubits(rho, dims)
    if small is None:
        raise DomainError("state does not reduce to two qubits: a marginal has rank above 2")
    return small


def concurrence_bipartite(rho, dims: tuple[int, int]) -> MeasureValue:
    """Exact concurrence of a ``dims[0] x dims[1]`` state whose marginals have rank <= 2.

    The state is restricted to its local supports and handed to the
    two-qubit formula.
    """
    return concurrence_wootters(_compressed(rho, dims))


def coa_bipartite(rho, dims: tuple[int, int]) -> MeasureValue:
    return coa_two_qubit(_compressed(rho, dims))


def tsallis_entropy(probs, q: float) -> float:
    """``(1 - sum p^q) / (q - 1)`` with ``0^q = 0``."""
    if q <= 0 or q == 1:
        raise DomainError(f"Tsallis index must satisfy q > 0, q != 1 (got {q})")
    p = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    p = p[p > 0]
    return float((1.0 - np.sum(p**q)) / (q - 1.0))


def tsallis_pure(vec: StateVector, cut, q: float) -> MeasureValue:
    """Tsallis-q entanglement of a pure state from the spectrum of the smaller marginal."""
    if q <= 0 or q == 1:
        raise DomainError(f"Tsallis index must satisfy q > 0, q != 1 (got {q})")
    b = _as_cut(vec, cut)
    da = int(np.prod([vec.dims[s] for s in b.side_a]))
    db = int(np.prod([vec.dims[s] for s in b.side_b]))
    side = b.side_a if da <= db else b.side_b
    vals = hermitian_eig(reduce_pure(vec.amps, vec.dims, side)).values
    return MeasureValue(tsallis_entropy(vals, q), NUMERICAL)


# -- GW closed forms ------------------------------------------------------

def coa_pair_gw(w: Sequence[float], t: int, l: int) -> MeasureValue:
    """CoA (equal to the concurrence) of the reduced state of parties ``t`` and ``l``."""
    if t == l:
        raise DomainError("pair needs two distinct parties")
    return MeasureValue(2.0 * math.sqrt(max(w[t], 0.0) * max(w[l], 0.0)), CLOSED_FORM)


def coa_one_vs_rest_gw(w: Sequence[float], t: int, others: Sequence[int] | None = None) -> MeasureValue:
    """CoA of party ``t`` against the union of ``others`` (default: all other parties)."""
    if len(w) < 2:
        raise DomainError("need at least two parties")
    if others is None:
        others = [l for l in range(len(w)) if l != t]
    if t in others:
        raise DomainError("party t cannot be on both sides")
    total = sum(4.0 * max(w[t], 0.0) * max(w[l], 0.0) for l in others)
    return MeasureValue(math.sqrt(total), CLOSED_FORM)


def f_q(theta, q: float):
    """Tsallis-q entanglement of a two-term Schmidt state with squared concurrence ``theta``.

    Vectorized over ``theta``. Values within 1e-12 outside ``[0, 1]`` are
    clamped; anything further out raises :class:`DomainError`.
    """
    if q <= 0 or q == 1:
        raise DomainError(f"q must satisfy q > 0, q != 1 (got {q})")
    th = np.asarray(theta, dtype=float)
    if np.any(th < -1e-12) or np.any(th > 1 + 1e-12):
        raise DomainError(f"theta outside [0, 1]: {theta}")
    th = np.clip(th, 0.0, 1.0)
    r = np.sqrt(1.0 - th)
    out = (1.0 - ((1.0 + r) / 2.0) ** q - ((1.0 - r) / 2.0) ** q) / (q - 1.0)
    return float(out) if out.ndim == 0 else out


def tqeeoa_gw(w: Sequence[float], t: int, q: float, l: int | None = None) -> MeasureValue:
    """Tsallis-q entanglement of assistance for a GW reduction.

    One-vs-rest for party ``t`` when ``l`` is ``None``, otherwise the pair
    ``(t, l)``. Equal to ``f_q(C^2)`` on the valid q set.
    """
    require_valid_q(q)
    c = coa_one_vs_rest_gw(w, t) if l is None else coa_pair_gw(w, t, l)
    return MeasureValue(f_q(c.value**2, q), CLOSED_FORM)


@dataclass(frozen=True)
class CounterexampleValues:
    lhs: float
    t_ab: float
    t_ac: float
    residual_bound: float


def tq_rank2_counterexample(q: float) -> CounterexampleValues:
    """Tsallis-q values of the 3x2x2 state that violates the CKW inequality.

    ``lhs`` is the one-vs-rest value ``(1 - 3^(1-q)) / (q - 1)``; the two
    pair values come from every decomposition member having reduced
    spectrum ``{0, 1/3, 2/3}``.
    """
    require_valid_q(q)
    lhs = (1.0 - (1.0 / 3.0) ** (q - 1.0)) / (q - 1.0)
    pair = (1.0 - (1.0 + 2.0**q) * (1.0 / 3.0) ** q) / (q - 1.0)
    return CounterexampleValues(lhs, pair, pair, lhs - 2.0 * pair)
