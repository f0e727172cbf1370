"""Monogamy and polygamy bounds on powers of the CoA and on Tsallis-q assistance.

Inputs are CoA values of the pairs ``(A, B_i)`` for a partition
``{A, B_1, ..., B_{N-1}}`` of a GW reduction. Whole-cut and tail values
``C_a(A | B_i ... B_{N-1})`` default to the GW additivity rule
``C_a^2(A | B_i...) = sum_{k >= i} C_a^2(A B_k)``.

Every evaluator returns a :class:`BoundReport`; when the theorem's
hypotheses fail, a :class:`HypothesisError` carrying the report with all
margins is raised instead of a value.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .measures import coa_one_vs_rest_gw, coa_pair_gw, f_q, require_valid_q
from .tensor import DomainError

HYP_TOL = 1e-12

ALPHA_FAMILIES = ("ZXN", "JZX-A", "JZX-B", "XHLF-A")
BETA_FAMILIES = ("SX", "LYY", "XHLF-B")


@dataclass(frozen=True)
class Hypothesis:
    label: str
    holds: bool
    margin: float


@dataclass
class BoundReport:
    family: str
    lhs: float
    rhs: float
    hypotheses: list[Hypothesis] = field(default_factory=list)
    orientation: int = 1
    params: dict = field(default_factory=dict)

    @property
    def residual(self) -> float:
        return self.lhs - self.rhs

    @property
    def hypotheses_hold(self) -> bool:
        return all(h.holds for h in self.hypotheses)


class HypothesisError(ValueError):
    """The inputs do not satisfy a theorem's hypotheses in any allowed orientation."""

    def __init__(self, message: str, report: BoundReport | None = None, margins=None):
        super().__init__(message)
        self.report = report
        self.margins = margins or (report.hypotheses if report else [])


@dataclass(frozen=True)
class BoundParams:
    """Exponents and tuning parameters shared by the bound families.

    ``omega``, ``ell`` and ``delta`` may be scalars or per-step sequences of
    length ``N - 2``; scalars are broadcast.
    """

    alpha: float = 2.0
    beta: float = 1.0
    gamma: float = 2.0
    omega: float | Sequence[float] = 1.0
    ell: float | Sequence[float] = 1.0
    delta: float | Sequence[float] = 1.0
    p: float = 1.0
    z: int = 1
    k: float = 1.0

    def seq(self, name: str, length: int) -> list[float]:
        v = getattr(self, name)
        if np.ndim(v) == 0:
            return [float(v)] * length
        v = [float(x) for x in v]
        if len(v) != length:
            raise DomainError(f"{name} needs {length} entries, got {len(v)}")
        return v

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("alpha", "beta", "gamma", "omega", "ell", "delta", "p", "z", "k")}


def _hyp(label: str, margin: float) -> Hypothesis:
    return Hypothesis(label, bool(margin >= -HYP_TOL), float(margin))


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise DomainError(message)


def whole_from_pairs(pair_cas: Sequence[float]) -> float:
    return math.sqrt(sum(c * c for c in pair_cas))


def tails_from_pairs(pair_cas: Sequence[float]) -> list[float]:
    """``T_i = C_a(A | B_i ... B_{N-1})`` for ``i = 1..N-1`` from pair values."""
    out = []
    acc = 0.0
    for c in reversed(pair_cas):
        acc += c * c
        out.append(math.sqrt(acc))
    return out[::-1]


# -- lemmas ---------------------------------------------------------------

def lemma1_check(theta: float, tau: float, delta: float, z: float) -> float:
    """Margin of ``(1+theta)^z - theta^z >= (1+tau^delta)^z - tau^(delta z)``."""
    _need(tau >= 1 and delta >= 1 and z >= 1, f"need tau >= 1, delta >= 1, z >= 1 (got {tau}, {delta}, {z})")
    floor = tau**delta
    _need(theta >= floor * (1 - 1e-15), f"need theta >= tau^delta = {floor} (got {theta})")
    return ((1 + theta) ** z - theta**z) - ((1 + floor) ** z - floor**z)


def lemma2_check(x: float, y: float, p: float, r: float) -> float:
    """Margin of ``(1+x)^r - (px)^r >= (1+y)^r - (py)^r``."""
    _need(0.5 <= p <= 1, f"need 1/2 <= p <= 1 (got {p})")
    _need(0 <= r <= 0.5, f"need 0 <= r <= 1/2 (got {r})")
    _need(0 <= x <= y <= 1, f"need 0 <= x <= y <= 1 (got x={x}, y={y})")
    return ((1 + x) ** r - (p * x) ** r) - ((1 + y) ** r - (p * y) ** r)


# -- new bounds -----------------------------------------------------------

def omega_coefficient(omega: float, ell: float, delta: float, expo: float) -> float:
    """``(omega + l^delta)^e - (l^delta)^e``."""
    big = ell**delta
    return (omega + big) ** expo - big**expo


def thm1_bound(ca_ab: float, ca_ac: float, params: BoundParams, ca_a_bc: float | None = None) -> BoundReport:
    """Lower bound on ``C_a^alpha(A|BC)`` for ``alpha >= gamma >= 2``.

    Case 1 needs ``C_aAB^g >= l^d C_aAC^g`` and ``C_aA|BC^g >= C_aAB^g + w C_aAC^g``;
    case 2 swaps B and C. The first case that holds is used and recorded
    in ``orientation``.
    """
    a, g, w, l, d = params.alpha, params.gamma, params.omega, params.ell, params.delta
    _need(g >= 2 and a >= g, f"need alpha >= gamma >= 2 (got alpha={a}, gamma={g})")
    _need(w >= 1 and l >= 1 and d >= 1, f"need omega, l, delta >= 1 (got {w}, {l}, {d})")
    whole = math.hypot(ca_ab, ca_ac) if ca_a_bc is None else ca_a_bc
    tg = whole**g
    big = l**d
    coef = omega_coefficient(w, l, d, a / g)
    hyps_all = []
    for orient, (first, second) in ((1, (ca_ab, ca_ac)), (2, (ca_ac, ca_ab))):
        x, y = first**g, second**g
        names = ("AB", "AC") if orient == 1 else ("AC", "AB")
        hyps = [
            _hyp(f"case{orient}: C_a{names[0]}^g >= l^d C_a{names[1]}^g", x - big * y),
            _hyp(f"case{orient}: C_aA|BC^g >= C_a{names[0]}^g + w C_a{names[1]}^g", tg - x - w * y),
        ]
        hyps_all += hyps
        if all(h.holds for h in hyps):
            rhs = first**a + coef * second**a
            return BoundReport("thm1", whole**a, rhs, hyps, orient, params.as_dict())
    report = BoundReport("thm1", whole**a, float("nan"), hyps_all, 0, params.as_dict())
    raise HypothesisError("thm1 hypotheses fail in both orientations", report)


def _chain_hypotheses(pairs, tails, g, omegas, bigs, z, alpha_side: bool):
    """Per-step hypotheses of the N-party chains (1-based step labels)."""
    n1 = len(pairs)
    hyps = []
    for r in range(1, n1):
        c, t_here, t_next = pairs[r - 1] ** g, tails[r - 1] ** g, tails[r] ** g
        w, big = omegas[r - 1], bigs[r - 1]
        head = r <= z
        if alpha_side and head:
            hyps.append(_hyp(f"step {r}: C_aAB{r}^g >= L{r} T{r + 1}^g", c - big * t_next))
        elif alpha_side:
            hyps.append(_hyp(f"step {r}: T{r + 1}^g >= L{r} C_aAB{r}^g", t_next - big * c))
        elif head:
            hyps.append(_hyp(f"step {r}: C_aAB{r}^g <= L{r} T{r + 1}^g", big * t_next - c))
        else:
            hyps.append(_hyp(f"step {r}: T{r + 1}^g <= L{r} C_aAB{r}^g", big * c - t_next))
        if head:
            hyps.append(_hyp(f"step {r}: T{r}^g >= C_aAB{r}^g + w{r} T{r + 1}^g", t_here - c - w * t_next))
        else:
            hyps.append(_hyp(f"step {r}: T{r}^g >= w{r} C_aAB{r}^g + T{r + 1}^g", t_here - w * c - t_next))
    return hyps


def _check_chain_shape(pairs, tails, z):
    n1 = len(pairs)
    _need(n1 + 1 >= 4, f"need N >= 4 parties (got N={n1 + 1})")
    _need(1 <= z <= n1 + 1 - 3, f"need 1 <= z <= N-3 = {n1 - 2} (got z={z})")
    if tails is None:
        tails = tails_from_pairs(pairs)
    tails = [float(t) for t in tails]
    _need(len(tails) == n1, f"tail_cas needs {n1} entries (T_1..T_(N-1)), got {len(tails)}")
    return tails


def nested_sum(pairs_pow: Sequence[float], coefs: Sequence[float], z: int) -> float:
    """``c_1 + sum_{i=2}^z (prod_{s<i} V_s) c_i + prod_{s<=z} V_s (sum_{j=z+1}^{N-2} V_j c_j + c_{N-1})``.

    The shape shared by the N-party alpha-power bounds; ``pairs_pow[i-1]`` is
    the powered CoA of pair ``i`` and ``coefs[r-1]`` the step coefficient ``V_r``.
    """
    n1 = len(pairs_pow)
    total = pairs_pow[0]
    prod = 1.0
    for i in range(2, z + 1):
        prod *= coefs[i - 2]
        total += prod * pairs_pow[i - 1]
    prod *= coefs[z - 1]
    mid = sum(coefs[j - 1] * pairs_pow[j - 1] for j in range(z + 1, n1))
    return total + prod * (mid + pairs_pow[n1 - 1])


def thm2_bound(pair_cas: Sequence[float], tail_cas: Sequence[float] | None, params: BoundParams) -> BoundReport:
    """N-party lower bound on ``C_a^alpha(A|B_1...B_{N-1})``, ``N >= 4``.

    Steps ``1..z`` need ``C_aAB_i^g >= l_i^d_i T_{i+1}^g`` and
    ``T_i^g >= C_aAB_i^g + w_i T_{i+1}^g``; steps ``z+1..N-2`` the mirrored
    pair of conditions. ``T_i`` is ``C_a(A|B_i...B_{N-1})``.
    """
    pairs = [float(c) for c in pair_cas]
    z = int(params.z)
    tails = _check_chain_shape(pairs, tail_cas, z)
    a, g = params.alpha, params.gamma
    _need(g >= 2 and a >= g, f"need alpha >= gamma >= 2 (got alpha={a}, gamma={g})")
    m = len(pairs) - 1
    omegas, ells, deltas = params.seq("omega", m), params.seq("ell", m), params.seq("delta", m)
    _need(all(x >= 1 for x in omegas + ells + deltas), "need omega_r, l_r, delta_r >= 1")
    bigs = [l**d for l, d in zip(ells, deltas)]
    hyps = _chain_hypotheses(pairs, tails, g, omegas, bigs, z, alpha_side=True)
    coefs = [omega_coefficient(w, l, d, a / g) for w, l, d in zip(omegas, ells, deltas)]
    lhs = tails[0] ** a
    report = BoundReport("thm2", lhs, float("nan"), hyps, 1, params.as_dict())
    failed = [h for h in hyps if not h.holds]
    if failed:
        raise HypothesisError(f"thm2 hypothesis fails at: {failed[0].label}", report)
    report.rhs = nested_sum([c**a for c in pairs], coefs, z)
    return report


def thm3_bound(ca_ab: float, ca_ac: float, params: BoundParams, ca_a_bc: float | None = None) -> BoundReport:
    """Lower bound on ``C_a^beta(A|BC)`` for ``0 <= beta <= gamma/2``.

    Case 1 needs ``C_aAB^g <= l C_aAC^g`` and ``C_aA|BC^g >= C_aAB^g + w C_aAC^g``
    and gives ``p^(b/g) C_aAB^b + ((w+l)^(b/g) - (pl)^(b/g)) C_aAC^b``;
    case 2 swaps B and C.
    """
    b, g, w, l, p = params.beta, params.gamma, params.omega, params.ell, params.p
    _need(g >= 2 and 0 <= b <= g / 2, f"need gamma >= 2, 0 <= beta <= gamma/2 (got beta={b}, gamma={g})")
    _need(0.5 <= p <= 1, f"need 1/2 <= p <= 1 (got {p})")
    _need(0 <= l <= 1 and w >= 1, f"need 0 <= l <= 1 and omega >= 1 (got l={l}, omega={w})")
    whole = math.hypot(ca_ab, ca_ac) if ca_a_bc is None else ca_a_bc
    tg = whole**g
    r = b / g
    coef = (w + l) ** r - (p * l) ** r
    hyps_all = []
    for orient, (first, second) in ((1, (ca_ab, ca_ac)), (2, (ca_ac, ca_ab))):
        x, y = first**g, second**g
        names = ("AB", "AC") if orient == 1 else ("AC", "AB")
        hyps = [
            _hyp(f"case{orient}: C_a{names[0]}^g <= l C_a{names[1]}^g", l * y - x),
            _hyp(f"case{orient}: C_aA|BC^g >= C_a{names[0]}^g + w C_a{names[1]}^g", tg - x - w * y),
        ]
        hyps_all += hyps
        if all(h.holds for h in hyps):
            rhs = p**r * first**b + coef * second**b
            return BoundReport("thm3", whole**b, rhs, hyps, orient, params.as_dict())
    report = BoundReport("thm3", whole**b, float("nan"), hyps_all, 0, params.as_dict())
    raise HypothesisError("thm3 hypotheses fail in both orientations", report)


def thm4_bound(pair_cas: Sequence[float], tail_cas: Sequence[float] | None, params: BoundParams) -> BoundReport:
    """N-party lower bound on ``C_a^beta(A|B_1...B_{N-1})``, ``0 <= beta <= gamma/2``.

    Built by chaining :func:`thm3_bound`: steps ``1..z`` use its first case
    (``C_aAB_i^g <= L_i T_{i+1}^g``), steps ``z+1..N-2`` its second
    (``T_{j+1}^g <= L_j C_aAB_j^g``), where ``L_r = l_r^delta_r`` with
    ``0 <= l_r <= 1``. Step coefficients are
    ``G_r = (w_r + L_r)^(b/g) - L_r^(b/g)`` and the ``p`` weights are
    ``p^((i-1)b/g)`` on head pairs ``i >= 2``, ``p^((j-z-2)b/g)`` on tail
    pairs ``j >= z+2`` and ``p^((N-z-2)b/g)`` on the last pair.
    """
    pairs = [float(c) for c in pair_cas]
    z = int(params.z)
    tails = _check_chain_shape(pairs, tail_cas, z)
    b, g, p = params.beta, params.gamma, params.p
    _need(g >= 2 and 0 <= b <= g / 2, f"need gamma >= 2, 0 <= beta <= gamma/2 (got beta={b}, gamma={g})")
    _need(0.5 <= p <= 1, f"need 1/2 <= p <= 1 (got {p})")
    m = len(pairs) - 1
    omegas, ells, deltas = params.seq("omega", m), params.seq("ell", m), params.seq("delta", m)
    _need(all(w >= 1 for w in omegas), "need omega_r >= 1")
    _need(all(0 <= l <= 1 for l in ells), "need 0 <= l_r <= 1")
    _need(all(d >= 1 for d in deltas), "need delta_r >= 1")
    bigs = [l**d for l, d in zip(ells, deltas)]
    hyps = _chain_hypotheses(pairs, tails, g, omegas, bigs, z, alpha_side=False)
    report = BoundReport("thm4", tails[0] ** b, float("nan"), hyps, 1, params.as_dict())
    failed = [h for h in hyps if not h.holds]
    if failed:
        raise HypothesisError(f"thm4 hypothesis fails at: {failed[0].label}", report)
    r = b / g
    n = len(pairs) + 1
    gam = [(w + big) ** r - big**r for w, big in zip(omegas, bigs)]
    cb = [c**b for c in pairs]
    total = p**r * cb[0]
    prod = 1.0
    for i in range(2, z + 1):
        prod *= gam[i - 2]
        total += prod * p ** ((i - 1) * r) * cb[i - 1]
    prod *= gam[z - 1]
    inner = gam[z] * cb[z]
    for j in range(z + 2, n - 1):
        inner += gam[j - 1] * p ** ((j - z - 2) * r) * cb[j - 1]
    total += prod * inner + prod * p ** ((n - z - 2) * r) * cb[n - 2]
    report.rhs = total
    return report


# -- earlier bounds for comparison ----------------------------------------

def prior_bound(family: str, pair_cas: Sequence[float], params: BoundParams, whole: float | None = None) -> BoundReport:
    """Earlier monogamy bounds, for comparison curves.

    With two pairs (tripartite case) every family reduces to
    ``C_1^e + coef * C_2^e``; with ``N - 1 >= 3`` pairs the split index
    ``params.z`` selects the N-party form of each family.
    """
    pairs = [float(c) for c in pair_cas]
    n1 = len(pairs)
    _need(n1 >= 2, "need at least two pairs")
    whole = whole_from_pairs(pairs) if whole is None else whole
    a, b, g, z = params.alpha, params.beta, params.gamma, int(params.z)
    if family in ALPHA_FAMILIES:
        e = a
        _need(a >= 2, f"{family} needs alpha >= 2 (got {a})")
    elif family in BETA_FAMILIES:
        e = b
        _need(g >= 2 and 0 <= b <= g, f"{family} needs gamma >= 2 and 0 <= beta <= gamma (got beta={b}, gamma={g})")
    else:
        raise DomainError(f"unknown bound family {family!r}")
    cp = [c**e for c in pairs]
    if n1 > 2:
        _need(1 <= z <= n1 - 2, f"need 1 <= z <= N-3 = {n1 - 2} (got z={z})")

    if family == "ZXN":
        rhs = sum(cp)
    elif family in ("JZX-A", "JZX-B"):
        h = a / 2 if family == "JZX-A" else 2 ** (a / 2) - 1
        if n1 == 2:
            rhs = cp[0] + h * cp[1]
        else:
            head = sum(h ** (i - 1) * cp[i - 1] for i in range(1, z + 1))
            mid = sum(cp[i - 1] for i in range(z + 1, n1))
            rhs = head + h ** (z + 1) * mid + h**z * cp[-1]
    elif family in ("XHLF-A", "XHLF-B"):
        if family == "XHLF-A":
            _need(a >= g >= 2, f"XHLF-A needs alpha >= gamma >= 2 (got alpha={a}, gamma={g})")
        m = max(n1 - 1, 1)
        omegas, ells = params.seq("omega", m), params.seq("ell", m)
        _need(all(w >= 1 for w in omegas), "XHLF needs omega_r >= 1")
        _need(all(l >= (1 if family == "XHLF-A" else 0) for l in ells),
              "XHLF-A needs l_r >= 1; XHLF-B needs l_r >= 0")
        coefs = [(w + l) ** (e / g) - l ** (e / g) for w, l in zip(omegas, ells)]
        rhs = cp[0] + coefs[0] * cp[1] if n1 == 2 else nested_sum(cp, coefs, z)
    elif family == "SX":
        h = 2 ** (b / g) - 1
        if n1 == 2:
            rhs = cp[0] + h * cp[1]
        else:
            head = sum(h**i * cp[i - 1] for i in range(1, z + 1))
            mid = sum(cp[i - 1] for i in range(z + 1, n1))
            rhs = head + h**z * mid + h ** (n1) * cp[-1]
    else:  # LYY
        k = params.k
        _need(k >= 1, f"LYY needs k >= 1 (got {k})")
        h = ((1 + k) ** (b / g) - 1) / k ** (b / g)
        if n1 == 2:
            rhs = cp[0] + h * cp[1]
        else:
            head = sum(h ** (i - 1) * cp[i - 1] for i in range(1, z + 1))
            mid = sum(cp[i - 1] for i in range(z + 1, n1))
            rhs = head + h**z * mid + h ** (z + 1) * cp[-1]
    return BoundReport(family, whole**e, rhs, [], 1, params.as_dict())


def prior_bounds(family: str, inputs: Sequence[float], params: BoundParams) -> BoundReport:
    return prior_bound(family, inputs, params)


# -- admissible parameter regions -----------------------------------------

@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    @property
    def empty(self) -> bool:
        return not self.lo <= self.hi

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.hi)

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class AdmissibleRegion:
    thm1_l: Interval
    thm1_omega: Interval
    thm3_l: Interval
    thm3_omega: Interval


def _ratio(num: float, den: float) -> float:
    if den > 0:
        return num / den
    return math.inf if num > 0 else math.nan


def admissible_params(ca_values: Sequence[float], gamma: float, delta: float = 1.0,
                      ca_whole: float | None = None) -> AdmissibleRegion:
    """Parameter ranges for which the tripartite theorems' hypotheses hold.

    ``ca_values = (C_aAB, C_aAC)``. Orientation is as given (B first). A
    vanishing ``C_aAC`` leaves the upper ends unbounded; ``0/0`` makes the
    region degenerate (NaN endpoints, reported as empty).
    """
    _need(gamma >= 2, f"need gamma >= 2 (got {gamma})")
    _need(delta >= 1, f"need delta >= 1 (got {delta})")
    ab, ac = float(ca_values[0]), float(ca_values[1])
    whole = math.hypot(ab, ac) if ca_whole is None else ca_whole
    x, y, tg = ab**gamma, ac**gamma, whole**gamma
    ratio = _ratio(x, y)
    l_hi = ratio ** (1.0 / delta) if ratio >= 0 else math.nan
    omega_hi = _ratio(tg - x, y)
    return AdmissibleRegion(
        thm1_l=Interval(1.0, l_hi),
        thm1_omega=Interval(1.0, omega_hi),
        thm3_l=Interval(max(0.0, ratio) if not math.isnan(ratio) else math.nan, 1.0),
        thm3_omega=Interval(1.0, omega_hi),
    )


@dataclass(frozen=True)
class ChainStep:
    """Admissible ranges of ``l_r`` and ``omega_r`` at one step of the N-party chains."""

    step: int
    head: bool
    thm2_l: Interval
    thm4_l: Interval
    omega: Interval


def chain_intervals(pair_cas: Sequence[float], gamma: float, z: int, delta: float = 1.0) -> list[ChainStep]:
    """Per-step parameter ranges for the N-party theorems with split index ``z``.

    Step ``r`` compares ``C_aAB_r`` with ``T_{r+1} = C_a(A|B_{r+1}...B_{N-1})``.
    Head steps (``r <= z``) put the pair term first; tail steps put the
    remaining block first.
    """
    _need(gamma >= 2, f"need gamma >= 2 (got {gamma})")
    _need(delta >= 1, f"need delta >= 1 (got {delta})")
    pairs = [float(c) for c in pair_cas]
    _check_chain_shape(pairs, None, int(z))
    tails = tails_from_pairs(pairs)
    out = []
    for r in range(1, len(pairs)):
        c, here, nxt = pairs[r - 1] ** gamma, tails[r - 1] ** gamma, tails[r] ** gamma
        head = r <= z
        first, second = (c, nxt) if head else (nxt, c)
        ratio = _ratio(first, second)
        out.append(ChainStep(
            step=r,
            head=head,
            thm2_l=Interval(1.0, ratio ** (1.0 / delta)),
            thm4_l=Interval(ratio ** (1.0 / delta), 1.0),
            omega=Interval(1.0, _ratio(here - first, second)),
        ))
    return out


# -- Tsallis-q assistance -------------------------------------------------

def _tq_terms(w: Sequence[float], t: int, q: float):
    require_valid_q(q)
    others = [l for l in range(len(w)) if l != t]
    whole = f_q(coa_one_vs_rest_gw(w, t).value ** 2, q)
    pairs = [f_q(coa_pair_gw(w, t, l).value ** 2, q) for l in others]
    return whole, pairs


def tq_monogamy_residual(w: Sequence[float], t: int, q: float, alpha: float) -> float:
    """``(T_q^a)^alpha(t|rest) - sum_l (T_q^a)^alpha(t, l)``; non-negative for ``alpha >= 2``."""
    _need(alpha >= 2, f"need alpha >= 2 (got {alpha})")
    whole, pairs = _tq_terms(w, t, q)
    return whole**alpha - sum(v**alpha for v in pairs)


def tq_polygamy_residual(w: Sequence[float], t: int, q: float, beta: float) -> float:
    """``(T_q^a)^beta(t|rest) - sum_l (T_q^a)^beta(t, l)``; non-positive for ``0 <= beta <= 1``."""
    _need(0 <= beta <= 1, f"need 0 <= beta <= 1 (got {beta})")
    whole, pairs = _tq_terms(w, t, q)
    return whole**beta - sum(v**beta for v in pairs)


# -- tabulation -----------------------------------------------------------

def format_number(x: float) -> str:
    """Positional decimal with 12 significant digits."""
    x = float(x)
    if not math.isfinite(x):
        return str(x)
    return np.format_float_positional(x, precision=12, unique=False, fractional=False, trim="-")


@dataclass
class SweepTable:
    """Values of several curves over one strictly increasing parameter grid."""

    axis: str
    grid: np.ndarray
    columns: dict[str, np.ndarray]
    reports: dict[str, list[BoundReport]] = field(default_factory=dict)

    def __post_init__(self):
        self.grid = np.asarray(self.grid, dtype=float)
        if self.grid.size < 2 or np.any(np.diff(self.grid) <= 0):
            raise DomainError("sweep grid must have at least two strictly increasing points")
        self.columns = {k: np.asarray(v, dtype=float) for k, v in self.columns.items()}
        for k, v in self.columns.items():
            if v.shape != self.grid.shape:
                raise DomainError(f"column {k!r} has {v.size} values for {self.grid.size} grid points")

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow([self.axis, *self.columns])
        for i, x in enumerate(self.grid):
            wr.writerow([format_number(x)] + [format_number(v[i]) for v in self.columns.values()])
        return buf.getvalue()


@dataclass
class SurfaceTable:
    """Long-form table of one value over a two-parameter grid."""

    axes: tuple[str, str]
    grid1: np.ndarray
    grid2: np.ndarray
    name: str
    values: np.ndarray

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow([*self.axes, self.name])
        for i, x in enumerate(self.grid1):
            for j, y in enumerate(self.grid2):
                wr.writerow([format_number(x), format_number(y), format_number(self.values[i, j])])
        return buf.getvalue()


def remark_orderings(params: BoundParams, grid, chain: str = "alpha",
                     ca_ab: float | None = None, ca_ac: float | None = None) -> SweepTable:
    """Check the tightness chains link by link over an exponent grid.

    ``chain="alpha"`` sweeps ``alpha`` and compares the step coefficients
    ``(w+l^d)^s - l^(ds) >= (w+l)^s - l^s >= (1+l)^s - l^s >= 2^s - 1``
    with ``s = alpha/gamma``.

    ``chain="beta"`` sweeps ``beta`` and compares the tripartite bounds
    ``p^r X + ((w+l)^r - (pl)^r) Y >= X + ((w+l)^r - l^r) Y
    >= X + ((1+l)^r - l^r) Y >= X + (2^r - 1) Y`` with ``r = beta/gamma``,
    ``X = C_aAB^beta``, ``Y = C_aAC^beta``.

    Each table carries the four chain members plus ``min_margin``, the
    smallest difference between neighbours at each grid point.
    """
    grid = np.asarray(grid, dtype=float)
    g, w, l, d, p = params.gamma, params.omega, params.ell, params.delta, params.p
    cols = {k: np.empty_like(grid) for k in ("new", "xhlf", "base", "floor")}
    for i, e in enumerate(grid):
        s = e / g
        if chain == "alpha":
            vals = (omega_coefficient(w, l, d, s), (w + l) ** s - l**s, (1 + l) ** s - l**s, 2**s - 1)
        elif chain == "beta":
            if ca_ab is None or ca_ac is None:
                raise DomainError("the beta chain needs ca_ab and ca_ac")
            x, y = ca_ab**e, ca_ac**e
            vals = (
                p**s * x + ((w + l) ** s - (p * l) ** s) * y,
                x + ((w + l) ** s - l**s) * y,
                x + ((1 + l) ** s - l**s) * y,
                x + (2**s - 1) * y,
            )
        else:
            raise DomainError(f"unknown chain {chain!r}")
        for k, v in zip(cols, vals):
            cols[k][i] = v
    stacked = np.vstack(list(cols.values()))
    cols["min_margin"] = np.min(stacked[:-1] - stacked[1:], axis=0)
    return SweepTable("alpha" if chain == "alpha" else "beta", grid, cols)
