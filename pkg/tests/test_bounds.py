import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gwmono import bounds as bd
from gwmono.bounds import BoundParams, HypothesisError
from gwmono.measures import Q_INTERVALS, coa_one_vs_rest_gw, coa_pair_gw
from gwmono.tensor import DomainError

from .conftest import EX1_AB, EX1_AC, EX1_WHOLE, EX2_AB, EX2_AC, EX2_WHOLE

valid_q = st.one_of(st.floats(*Q_INTERVALS[0]), st.floats(*Q_INTERVALS[1])).filter(lambda q: abs(q - 1) > 1e-6)


class TestLemmas:
    @given(st.floats(1, 2), st.floats(1, 2), st.floats(1, 3), st.floats(0, 5))
    def test_lemma1_margin(self, tau, delta, z, extra):
        assert bd.lemma1_check(tau**delta + extra, tau, delta, z) >= -1e-12

    @given(st.floats(0, 1), st.floats(0, 1), st.floats(0.5, 1), st.floats(0, 0.5))
    def test_lemma2_margin(self, a, b, p, r):
        x, y = min(a, b), max(a, b)
        assert bd.lemma2_check(x, y, p, r) >= -1e-12

    def test_lemma_domains(self):
        with pytest.raises(DomainError):
            bd.lemma1_check(1.0, 2.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            bd.lemma1_check(5.0, 0.5, 1.0, 1.0)
        with pytest.raises(DomainError):
            bd.lemma2_check(0.5, 0.2, 0.7, 0.3)
        with pytest.raises(DomainError):
            bd.lemma2_check(0.1, 0.2, 0.4, 0.3)
        with pytest.raises(DomainError):
            bd.lemma2_check(0.1, 0.2, 0.7, 0.6)


class TestTripartite:
    def test_thm1_example1_formula(self):
        p = BoundParams(alpha=4.0, gamma=2.0, omega=1.0, ell=1.3, delta=1.3)
        rep = bd.thm1_bound(EX1_AB, EX1_AC, p, EX1_WHOLE)
        big = 1.3**1.3
        want = EX1_AB**4 + ((1 + big) ** 2 - big**2) * EX1_AC**4
        assert rep.rhs == pytest.approx(want, rel=1e-14)
        assert rep.lhs == pytest.approx(0.82**2)
        assert rep.orientation == 1 and rep.hypotheses_hold
        assert rep.residual >= 0

    def test_thm1_swaps_orientation(self):
        p = BoundParams(alpha=3.0, gamma=2.0, omega=1.0, ell=1.1, delta=1.0)
        rep = bd.thm1_bound(EX1_AC, EX1_AB, p)
        assert rep.orientation == 2

    def test_thm1_reports_failing_margins(self):
        p = BoundParams(alpha=3.0, gamma=2.0, omega=3.0)
        with pytest.raises(HypothesisError) as err:
            bd.thm1_bound(EX1_AB, EX1_AC, p, EX1_WHOLE)
        assert len(err.value.margins) == 4
        assert any(not h.holds for h in err.value.margins)

    def test_thm1_parameter_ranges(self):
        with pytest.raises(DomainError):
            bd.thm1_bound(0.5, 0.4, BoundParams(alpha=1.5, gamma=2.0))
        with pytest.raises(DomainError):
            bd.thm1_bound(0.5, 0.4, BoundParams(alpha=3.0, gamma=2.0, ell=0.5))

    def test_thm3_example2_formula(self):
        p = BoundParams(beta=1.2, gamma=3.0, omega=9 / 8, ell=0.75, p=0.5)
        rep = bd.thm3_bound(EX2_AB, EX2_AC, p, EX2_WHOLE)
        r = 0.4
        want = 0.5**r * EX2_AB**1.2 + ((9 / 8 + 0.75) ** r - (0.5 * 0.75) ** r) * EX2_AC**1.2
        assert rep.rhs == pytest.approx(want, rel=1e-14)
        assert rep.residual > 0

    def test_thm3_parameter_ranges(self):
        with pytest.raises(DomainError):
            bd.thm3_bound(0.3, 0.6, BoundParams(beta=2.0, gamma=3.0))
        with pytest.raises(DomainError):
            bd.thm3_bound(0.3, 0.6, BoundParams(beta=1.0, gamma=3.0, p=0.3))
        with pytest.raises(DomainError):
            bd.thm3_bound(0.3, 0.6, BoundParams(beta=1.0, gamma=3.0, ell=1.5))

    def test_thm1_at_delta_one_equals_earlier_bound(self):
        p = BoundParams(alpha=3.3, gamma=2.0, omega=1.0, ell=1.2, delta=1.0)
        ours = bd.thm1_bound(EX1_AB, EX1_AC, p, EX1_WHOLE).rhs
        assert ours == pytest.approx(bd.prior_bound("XHLF-A", [EX1_AB, EX1_AC], p, EX1_WHOLE).rhs)

    def test_thm3_at_p_one_equals_earlier_bound(self):
        p = BoundParams(beta=0.9, gamma=3.0, omega=9 / 8, ell=0.75, p=1.0)
        ours = bd.thm3_bound(EX2_AB, EX2_AC, p, EX2_WHOLE).rhs
        assert ours == pytest.approx(bd.prior_bound("XHLF-B", [EX2_AB, EX2_AC], p, EX2_WHOLE).rhs)


class TestAdmissible:
    def test_example1(self):
        reg = bd.admissible_params((EX1_AB, EX1_AC), 2.0, 1.3, EX1_WHOLE)
        assert reg.thm1_l.lo == 1.0
        assert reg.thm1_l.hi == pytest.approx(1.40959, abs=1e-4)
        assert reg.thm1_l.hi == pytest.approx((25 / 16) ** (1 / 1.3), rel=1e-12)

    def test_example2(self):
        reg = bd.admissible_params((EX2_AB, EX2_AC), 3.0, 1.0, EX2_WHOLE)
        assert reg.thm3_l.lo == pytest.approx(1 / 8, abs=1e-12)
        assert reg.thm3_l.hi == 1.0
        assert reg.thm3_omega.hi == pytest.approx((5 * math.sqrt(5) - 1) / 8, abs=1e-10)
        assert 9 / 8 in reg.thm3_omega

    def test_degenerate(self):
        reg = bd.admissible_params((0.5, 0.0), 2.0)
        assert not reg.thm1_l.bounded
        reg = bd.admissible_params((0.0, 0.0), 2.0)
        assert reg.thm1_l.empty

    @given(st.floats(0.05, 1), st.floats(0.05, 1), st.floats(2, 4), st.floats(1, 3))
    def test_endpoints_satisfy_hypotheses(self, ab, ac, g, d):
        reg = bd.admissible_params((ab, ac), g, d)
        if reg.thm1_l.empty or reg.thm1_omega.empty:
            return
        p = BoundParams(alpha=g + 1, gamma=g, omega=reg.thm1_omega.hi, ell=reg.thm1_l.hi, delta=d)
        rep = bd.thm1_bound(ab, ac, p)
        assert rep.orientation == 1 and rep.residual >= -1e-10


class TestChains:
    PAIRS = [0.8, 0.5, 0.3, 0.2]  # N = 5

    def test_thm2_reduces_to_earlier_bound(self):
        pairs = [0.9, 0.3, 0.5]
        p = BoundParams(alpha=3.0, gamma=2.0, omega=1.0, ell=1.0, delta=1.0, z=1)
        ours = bd.thm2_bound(pairs, None, p)
        prior = bd.prior_bound("XHLF-A", pairs, p)
        assert ours.rhs == pytest.approx(prior.rhs, rel=1e-14)

    def test_thm4_reduces_to_earlier_bound(self):
        pairs = [0.2, 0.5, 0.3]
        p = BoundParams(beta=0.8, gamma=2.0, omega=1.0, ell=1.0, delta=1.0, p=1.0, z=1)
        ours = bd.thm4_bound(pairs, None, p)
        prior = bd.prior_bound("XHLF-B", pairs, p)
        assert ours.rhs == pytest.approx(prior.rhs, rel=1e-14)

    def test_nested_sum(self):
        c = [1.0, 2.0, 3.0, 4.0, 5.0]
        v = [0.5, 0.25, 2.0, 3.0]
        # z = 2: c1 + V1 c2 + V1 V2 (V3 c3 + V4 c4 + c5)
        want = 1 + 0.5 * 2 + 0.5 * 0.25 * (2 * 3 + 3 * 4 + 5)
        assert bd.nested_sum(c, v, 2) == pytest.approx(want)

    def test_thm4_p_weights(self):
        # N = 6, z = 1: p^r c1 + G1 (G2 c2 + G3 p^(0) c3 + G4 p^r c4 + p^(3r) c5)
        pairs = [0.1, 0.6, 0.4, 0.3, 0.2]
        cfg = dict(beta=1.0, gamma=2.0, omega=1.0, delta=1.0, p=0.5, z=1)
        steps = bd.chain_intervals(pairs, 2.0, 1)
        ells = [max(s.thm4_l.lo, 0.0) for s in steps]
        rep = bd.thm4_bound(pairs, None, BoundParams(ell=ells, **cfg))
        r = 0.5
        gam = [(1 + l) ** r - l**r for l in ells]
        c = pairs
        want = 0.5**r * c[0] + gam[0] * (gam[1] * c[1] + gam[2] * c[2] + gam[3] * 0.5**r * c[3] + 0.5 ** (3 * r) * c[4])
        assert rep.rhs == pytest.approx(want, rel=1e-13)
        assert rep.residual >= 0

    def test_chain_shape_checks(self):
        with pytest.raises(DomainError, match="N >= 4"):
            bd.thm2_bound([0.5, 0.4], None, BoundParams(alpha=3.0))
        with pytest.raises(DomainError, match="z"):
            bd.thm2_bound(self.PAIRS, None, BoundParams(alpha=3.0, z=3))
        with pytest.raises(DomainError, match="omega needs 3"):
            bd.thm2_bound(self.PAIRS, None, BoundParams(alpha=3.0, omega=[1.0, 1.0]))

    def test_chain_interval_endpoints(self):
        pairs = [0.9, 0.2, 0.3, 0.4]
        steps = bd.chain_intervals(pairs, 3.0, 1)
        assert [s.head for s in steps] == [True, False, False]
        assert all(s.omega.hi > 1 for s in steps)
        p = BoundParams(
            alpha=4.0,
            gamma=3.0,
            omega=[s.omega.hi for s in steps],
            ell=[s.thm2_l.hi for s in steps],
            delta=1.0,
            z=1,
        )
        rep = bd.thm2_bound(pairs, None, p)
        assert rep.hypotheses_hold and rep.residual >= -1e-12
        assert min(h.margin for h in rep.hypotheses) == pytest.approx(0.0, abs=1e-12)

    def test_hypothesis_failure_is_reported(self):
        with pytest.raises(HypothesisError, match="step 1"):
            bd.thm2_bound([0.1, 0.5, 0.5], None, BoundParams(alpha=3.0, ell=2.0))


class TestEarlierBounds:
    def test_two_pair_forms(self):
        x, y, a = 0.7, 0.4, 3.0
        p = BoundParams(alpha=a, beta=0.6, gamma=2.0, omega=1.0, ell=1.3, k=4 / 3)
        xa, ya = x**a, y**a
        assert bd.prior_bound("ZXN", [x, y], p).rhs == pytest.approx(xa + ya)
        assert bd.prior_bound("JZX-A", [x, y], p).rhs == pytest.approx(xa + a / 2 * ya)
        assert bd.prior_bound("JZX-B", [x, y], p).rhs == pytest.approx(xa + (2 ** (a / 2) - 1) * ya)
        assert bd.prior_bound("XHLF-A", [x, y], p).rhs == pytest.approx(xa + (2.3**1.5 - 1.3**1.5) * ya)
        b, r = 0.6, 0.3
        xb, yb = x**b, y**b
        assert bd.prior_bound("SX", [x, y], p).rhs == pytest.approx(xb + (2**r - 1) * yb)
        k = 4 / 3
        assert bd.prior_bound("LYY", [x, y], p).rhs == pytest.approx(xb + ((1 + k) ** r - 1) / k**r * yb)

    def test_unknown_family(self):
        with pytest.raises(DomainError, match="unknown"):
            bd.prior_bound("ABC", [0.5, 0.5], BoundParams())

    def test_lhs_is_whole(self):
        rep = bd.prior_bound("ZXN", [0.6, 0.8], BoundParams(alpha=2.0))
        assert rep.lhs == pytest.approx(1.0)


@given(
    st.floats(0.01, 1), st.floats(0.01, 1), st.floats(2, 6), st.floats(1, 2), st.floats(1, 2), st.floats(1, 2)
)
def test_alpha_dominance_chain(x, y, a, w, l, d):
    p = BoundParams(alpha=a, gamma=2.0, omega=w, ell=l, delta=d)
    big = l**d
    ours = x**a + bd.omega_coefficient(w, l, d, a / 2) * y**a
    vals = [ours] + [bd.prior_bound(f, [x, y], p).rhs for f in ("XHLF-A", "JZX-B", "JZX-A", "ZXN")]
    scale = max(vals)
    assert all(hi >= lo - 1e-12 * scale for hi, lo in zip(vals, vals[1:]))
    assert big >= l


@given(st.floats(0.01, 1), st.floats(0.01, 1), st.floats(0, 1.5), st.floats(0.5, 1), st.floats(0.05, 1))
def test_beta_dominance_chain(x, y, b, p, l):
    # requires C_aAB^beta <= l^(beta/gamma) C_aAC^beta so the p term helps
    g = 3.0
    r = b / g
    if x**b > l**r * y**b:
        return
    prm = BoundParams(beta=b, gamma=g, omega=1.0, ell=l, p=p, k=1 / l)
    ours = p**r * x**b + ((1 + l) ** r - (p * l) ** r) * y**b
    vals = [ours] + [bd.prior_bound(f, [x, y], prm).rhs for f in ("XHLF-B", "LYY", "SX")]
    assert all(hi >= lo - 1e-12 for hi, lo in zip(vals, vals[1:]))


class TestTsallisResiduals:
    @given(st.integers(0, 2**32 - 1), st.integers(2, 6), valid_q, st.floats(2, 5))
    def test_monogamy_sign(self, seed, n, q, a):
        w = np.random.default_rng(seed).dirichlet(np.ones(n))
        assert bd.tq_monogamy_residual(w, 0, q, a) >= -1e-12

    @given(st.integers(0, 2**32 - 1), st.integers(2, 6), valid_q, st.floats(0, 1))
    def test_polygamy_sign(self, seed, n, q, b):
        w = np.random.default_rng(seed).dirichlet(np.ones(n))
        assert bd.tq_polygamy_residual(w, 0, q, b) <= 1e-12

    def test_example2_point(self, example2):
        from gwmono.states import party_weights

        spec, part = example2
        w = party_weights(spec, part)
        whole = coa_one_vs_rest_gw(w, 0).value ** 2 / 2
        pairs = [coa_pair_gw(w, 0, l).value ** 2 / 2 for l in (1, 2)]
        assert bd.tq_monogamy_residual(w, 0, 2.0, 2.0) == pytest.approx(whole**2 - sum(v**2 for v in pairs))

    def test_exponent_ranges(self):
        with pytest.raises(DomainError):
            bd.tq_monogamy_residual([0.5, 0.5], 0, 2.0, 1.5)
        with pytest.raises(DomainError):
            bd.tq_polygamy_residual([0.5, 0.5], 0, 2.0, 1.5)
        with pytest.raises(DomainError):
            bd.tq_polygamy_residual([0.5, 0.5], 0, 2.5, 0.5)


class TestTables:
    def test_format_number(self):
        assert bd.format_number(0.82) == "0.82"
        assert bd.format_number(2.0) == "2"
        assert bd.format_number(1 / 3) == "0.333333333333"
        assert bd.format_number(float("nan")) == "nan"

    def test_sweep_validation(self):
        with pytest.raises(DomainError):
            bd.SweepTable("x", [1.0, 1.0], {"y": [1, 2]})
        with pytest.raises(DomainError):
            bd.SweepTable("x", [1.0, 2.0], {"y": [1]})

    def test_csv_layout(self):
        t = bd.SweepTable("x", [0.0, 0.5], {"a": [1.0, 2.0], "b": [0.25, 1 / 3]})
        assert t.to_csv() == "x,a,b\n0,1,0.25\n0.5,2,0.333333333333\n"
        s = bd.SurfaceTable(("q", "a"), np.array([1.0]), np.array([2.0, 3.0]), "v", np.array([[0.5, 0.25]]))
        assert s.to_csv() == "q,a,v\n1,2,0.5\n1,3,0.25\n"

    def test_remark_orderings(self):
        grid = np.linspace(2, 5, 61)
        t = bd.remark_orderings(BoundParams(gamma=2.0, omega=1.0, ell=1.3, delta=1.3), grid, "alpha")
        assert np.all(t.columns["min_margin"] >= -1e-12)
        grid = np.linspace(0, 1.5, 31)
        prm = BoundParams(gamma=3.0, omega=9 / 8, ell=0.75, p=0.5)
        t = bd.remark_orderings(prm, grid, "beta", EX2_AB, EX2_AC)
        assert np.all(t.columns["min_margin"] >= -1e-12)
        with pytest.raises(DomainError):
            bd.remark_orderings(prm, grid, "beta")
        with pytest.raises(DomainError):
            bd.remark_orderings(prm, grid, "gamma")
