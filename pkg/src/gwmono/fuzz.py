"""Randomized sign checks for the lemmas and bound theorems.

Each instance ``i`` of a run with seed ``s`` draws from its own generator
``default_rng([s, i])``, so any failing instance can be replayed alone with
:func:`replay`. Instances whose hypotheses fail are counted as rejections,
never dropped silently.

Theorem instances come from random GW party weights. Part of the draws
places the tuning parameters inside the admissible region computed from
those weights; the rest draw them blind from the nominal ranges, which
exercises the rejection path.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import bounds as bd
from .measures import Q_INTERVALS

BLIND_FRACTION = 0.25


@dataclass
class FuzzSummary:
    family: str
    seed: int
    accepted: int = 0
    rejected: int = 0
    # most adverse residual/margin seen, with the instance index that produced it
    worst: float = math.inf
    worst_index: int = -1
    sign: int = 1  # +1: values must be >= -tol; -1: values must be <= tol
    tol: float = 1e-10
    rejection_labels: dict[str, int] = field(default_factory=dict)

    def record(self, value: float, index: int) -> None:
        self.accepted += 1
        key = self.sign * value
        if key < self.worst:
            self.worst = key
            self.worst_index = index

    def reject(self, err: bd.HypothesisError) -> None:
        self.rejected += 1
        for h in err.margins:
            if not h.holds:
                self.rejection_labels[h.label] = self.rejection_labels.get(h.label, 0) + 1
                break

    @property
    def worst_value(self) -> float:
        return self.sign * self.worst

    @property
    def passed(self) -> bool:
        return self.accepted > 0 and self.worst >= -self.tol

    def line(self) -> str:
        rel = ">=" if self.sign > 0 else "<="
        bound = -self.tol if self.sign > 0 else self.tol
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.family}: {self.accepted} accepted, {self.rejected} rejected; "
            f"worst {self.worst_value:.3e} (need {rel} {bound:.0e}; reproduce with seed={self.seed} index={self.worst_index})"
        )


def _rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def _chain_weights(rng, n_pairs: int, z: int, head_big: bool):
    """Pair weights ``w_1..w_{N-1}`` and the weight of A, consistent with a chain orientation.

    ``head_big`` asks for ``w_i >= sum_{k>i} w_k`` on head steps and the
    reverse on tail steps (Theorem 2 layout); ``False`` flips both.
    """
    w = np.zeros(n_pairs)
    w[-1] = rng.uniform(0.1, 1.0)
    for r in range(n_pairs - 2, -1, -1):
        tail = w[r + 1:].sum()
        big = (r + 1 <= z) == head_big
        w[r] = tail * (rng.uniform(1.0, 4.0) if big else rng.uniform(0.05, 1.0))
    wa = rng.uniform(0.05, 0.6)
    keep = rng.uniform(0.5, 1.0)  # the rest is traced out
    w = w / w.sum() * (1 - wa) * keep
    return wa, w


def _pairs_from_weights(wa, w):
    return [2.0 * math.sqrt(wa * x) for x in w]


def _random_gw_weights(rng, n_parties: int):
    raw = rng.dirichlet(np.ones(n_parties + 1))
    return raw[:-1] if rng.random() < 0.5 else raw[:-1] / raw[:-1].sum()


def lemma1_instance(rng):
    tau = rng.uniform(1.0, 2.0)
    delta = rng.uniform(1.0, 2.0)
    z = rng.uniform(1.0, 3.0)
    theta = tau**delta + rng.exponential(2.0)
    return dict(theta=theta, tau=tau, delta=delta, z=z)


def lemma2_instance(rng):
    y = rng.uniform(0.0, 1.0)
    x = rng.uniform(0.0, y)
    return dict(x=x, y=y, p=rng.uniform(0.5, 1.0), r=rng.uniform(0.0, 0.5))


def thm1_instance(rng):
    wa, w = _random_gw_weights(rng, 3)[0], _random_gw_weights(rng, 3)[1:]
    ab, ac = _pairs_from_weights(wa, w)
    g = rng.uniform(2.0, 4.0)
    a = g + rng.exponential(1.5)
    d = rng.uniform(1.0, 3.0)
    if rng.random() < BLIND_FRACTION:
        return dict(ca_ab=ab, ca_ac=ac, params=bd.BoundParams(alpha=a, gamma=g, omega=rng.uniform(1, 2),
                                                              ell=rng.uniform(1, 2), delta=d))
    first, second = max(ab, ac), min(ab, ac)
    reg = bd.admissible_params((first, second), g, d)
    l_hi = min(reg.thm1_l.hi, 50.0)
    w_hi = min(reg.thm1_omega.hi, 50.0)
    return dict(ca_ab=ab, ca_ac=ac, params=bd.BoundParams(
        alpha=a, gamma=g, omega=rng.uniform(1.0, max(1.0, w_hi)), ell=rng.uniform(1.0, max(1.0, l_hi)), delta=d))


def _chain_params(rng, pairs, g, z, alpha_side: bool):
    tails = bd.tails_from_pairs(pairs)
    omegas, ells, deltas = [], [], []
    for r in range(1, len(pairs)):
        c, t_here, t_next = pairs[r - 1] ** g, tails[r - 1] ** g, tails[r] ** g
        d = rng.uniform(1.0, 3.0)
        head = r <= z
        if head:
            ratio, w_hi = c / t_next, (t_here - c) / t_next
        else:
            ratio, w_hi = t_next / c, (t_here - t_next) / c
        if alpha_side:
            big = rng.uniform(1.0, max(1.0, ratio))
        else:
            big = rng.uniform(min(ratio, 1.0), 1.0)
        omegas.append(rng.uniform(1.0, max(1.0, w_hi)))
        ells.append(big ** (1.0 / d))
        deltas.append(d)
    return omegas, ells, deltas


def thm2_instance(rng):
    n = int(rng.integers(4, 8))
    z = int(rng.integers(1, n - 2))
    g = rng.uniform(2.0, 4.0)
    a = g + rng.exponential(1.5)
    wa, w = _chain_weights(rng, n - 1, z, head_big=True)
    pairs = _pairs_from_weights(wa, w)
    if rng.random() < BLIND_FRACTION:
        m = n - 2
        om, el, de = list(rng.uniform(1, 2, m)), list(rng.uniform(1, 2, m)), list(rng.uniform(1, 2, m))
    else:
        om, el, de = _chain_params(rng, pairs, g, z, alpha_side=True)
    return dict(pair_cas=pairs, tail_cas=None,
                params=bd.BoundParams(alpha=a, gamma=g, omega=om, ell=el, delta=de, z=z))


def thm3_instance(rng):
    wa, w = _random_gw_weights(rng, 3)[0], _random_gw_weights(rng, 3)[1:]
    ab, ac = _pairs_from_weights(wa, w)
    g = rng.uniform(2.0, 4.0)
    b = rng.uniform(0.0, g / 2)
    p = rng.uniform(0.5, 1.0)
    if rng.random() < BLIND_FRACTION:
        return dict(ca_ab=ab, ca_ac=ac, params=bd.BoundParams(beta=b, gamma=g, omega=rng.uniform(1, 2),
                                                              ell=rng.uniform(0, 1), p=p))
    small, large = min(ab, ac), max(ab, ac)
    reg = bd.admissible_params((small, large), g)
    l_lo = reg.thm3_l.lo if not math.isnan(reg.thm3_l.lo) else 0.0
    w_hi = min(reg.thm3_omega.hi, 50.0)
    return dict(ca_ab=ab, ca_ac=ac, params=bd.BoundParams(
        beta=b, gamma=g, omega=rng.uniform(1.0, max(1.0, w_hi)), ell=rng.uniform(min(l_lo, 1.0), 1.0), p=p))


def thm4_instance(rng):
    n = int(rng.integers(4, 8))
    z = int(rng.integers(1, n - 2))
    g = rng.uniform(2.0, 4.0)
    b = rng.uniform(0.0, g / 2)
    p = rng.uniform(0.5, 1.0)
    wa, w = _chain_weights(rng, n - 1, z, head_big=False)
    pairs = _pairs_from_weights(wa, w)
    if rng.random() < BLIND_FRACTION:
        m = n - 2
        om, el, de = list(rng.uniform(1, 2, m)), list(rng.uniform(0, 1, m)), list(rng.uniform(1, 2, m))
    else:
        om, el, de = _chain_params(rng, pairs, g, z, alpha_side=False)
    return dict(pair_cas=pairs, tail_cas=None,
                params=bd.BoundParams(beta=b, gamma=g, omega=om, ell=el, delta=de, p=p, z=z))


def _random_q(rng):
    lo, hi = Q_INTERVALS[int(rng.integers(0, 2))]
    return rng.uniform(lo, hi)


def tq_instance(rng, exponent_range):
    # two parties make the residual identically zero
    n = int(rng.integers(3, 7))
    w = _random_gw_weights(rng, n)
    return dict(w=list(w), t=int(rng.integers(0, n)), q=_random_q(rng), e=rng.uniform(*exponent_range))


FAMILIES = {
    "lemma1": (lemma1_instance, lambda i: bd.lemma1_check(**i), 1, 1e-12),
    "lemma2": (lemma2_instance, lambda i: bd.lemma2_check(**i), 1, 1e-12),
    "thm1": (thm1_instance, lambda i: bd.thm1_bound(**i).residual, 1, 1e-10),
    "thm2": (thm2_instance, lambda i: bd.thm2_bound(**i).residual, 1, 1e-10),
    "thm3": (thm3_instance, lambda i: bd.thm3_bound(**i).residual, 1, 1e-10),
    "thm4": (thm4_instance, lambda i: bd.thm4_bound(**i).residual, 1, 1e-10),
    "tq2": (lambda rng: tq_instance(rng, (2.0, 5.0)),
            lambda i: bd.tq_monogamy_residual(i["w"], i["t"], i["q"], i["e"]), 1, 1e-10),
    "tq3": (lambda rng: tq_instance(rng, (0.0, 1.0)),
            lambda i: bd.tq_polygamy_residual(i["w"], i["t"], i["q"], i["e"]), -1, 1e-10),
}


def replay(family: str, seed: int, index: int):
    """Regenerate instance ``index`` of a run; returns ``(instance, value)``."""
    make, evaluate, _, _ = FAMILIES[family]
    inst = make(_rng(seed, index))
    return inst, evaluate(inst)


def run(family: str, count: int, seed: int = 0, max_draws: int | None = None) -> FuzzSummary:
    """Evaluate instances until ``count`` of them pass their hypotheses."""
    make, evaluate, sign, tol = FAMILIES[family]
    summary = FuzzSummary(family, seed, sign=sign, tol=tol)
    max_draws = max_draws or 20 * count
    index = 0
    while summary.accepted < count and index < max_draws:
        inst = make(_rng(seed, index))
        try:
            value = evaluate(inst)
        except bd.HypothesisError as err:
            summary.reject(err)
        else:
            summary.record(value, index)
        index += 1
    return summary
