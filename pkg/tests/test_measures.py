import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gwmono.measures import (
    CLOSED_FORM,
    NUMERICAL,
    Q_MAX,
    Q_MIN,
    Bipartition,
    coa_bipartite,
    coa_one_vs_rest_gw,
    coa_pair_gw,
    coa_two_qubit,
    concurrence_bipartite,
    concurrence_pure,
    concurrence_wootters,
    f_q,
    q_grid,
    q_is_valid,
    require_valid_q,
    tq_rank2_counterexample,
    tqeeoa_gw,
    tsallis_entropy,
    tsallis_pure,
)
from gwmono.states import (
    GWStateSpec,
    build_gw_vector,
    party_weights,
    random_gw_spec,
    random_partition,
    reduce_to_parties,
)
from gwmono.tensor import DomainError, StateVector

from .conftest import EX1_AB, EX1_AC, EX1_WHOLE, EX2_AB, EX2_AC, EX2_WHOLE

BELL = StateVector((2, 2), np.array([1, 0, 0, 1]) / math.sqrt(2))


class TestWorkedExamples:
    def test_example1_closed_forms(self, example1):
        spec, part = example1
        w = party_weights(spec, part)
        assert coa_pair_gw(w, 0, 1).value == pytest.approx(EX1_AB, abs=1e-14)
        assert coa_pair_gw(w, 0, 2).value == pytest.approx(EX1_AC, abs=1e-14)
        whole = coa_one_vs_rest_gw(w, 0)
        assert whole.value == pytest.approx(EX1_WHOLE, abs=1e-14)
        assert whole.method == CLOSED_FORM

    def test_example1_numerical(self, example1):
        spec, part = example1
        vec = build_gw_vector(spec)
        for (t, l), want in {(0, 1): EX1_AB, (0, 2): EX1_AC}.items():
            rho, dims = reduce_to_parties(vec, [part.parties[t], part.parties[l]])
            assert dims == (2, 2)
            assert concurrence_wootters(rho).value == pytest.approx(want, abs=1e-10)
            assert coa_two_qubit(rho).value == pytest.approx(want, abs=1e-10)
        rho, dims = reduce_to_parties(vec, [[0], [1, 2]])
        assert concurrence_bipartite(rho, dims).value == pytest.approx(EX1_WHOLE, abs=1e-10)
        assert coa_bipartite(rho, dims).value == pytest.approx(EX1_WHOLE, abs=1e-10)

    def test_example2(self, example2):
        spec, part = example2
        w = party_weights(spec, part)
        vec = build_gw_vector(spec)
        assert coa_one_vs_rest_gw(w, 0).value == pytest.approx(EX2_WHOLE, abs=1e-14)
        assert concurrence_pure(vec, [0]).value == pytest.approx(EX2_WHOLE, abs=1e-12)
        assert coa_pair_gw(w, 0, 1).value == pytest.approx(EX2_AB, abs=1e-14)
        assert coa_pair_gw(w, 0, 2).value == pytest.approx(EX2_AC, abs=1e-14)


class TestConcurrence:
    def test_bell_and_product(self):
        assert concurrence_pure(BELL, [0]).value == pytest.approx(1.0)
        prod = StateVector((2, 2), np.kron([1, 0], [0.6, 0.8]))
        assert concurrence_pure(prod, Bipartition((0,), (1,))).value == pytest.approx(0.0, abs=1e-12)

    def test_cut_validation(self):
        with pytest.raises(DomainError):
            Bipartition((), (1,))
        with pytest.raises(DomainError):
            Bipartition((0,), (0, 1))
        three = StateVector((2, 2, 2), np.eye(8)[0])
        with pytest.raises(DomainError, match="every subsystem"):
            concurrence_pure(three, Bipartition((0,), (1,)))

    def test_coa_of_maximally_mixed_state(self):
        rho = np.eye(4) / 4
        assert coa_two_qubit(rho).value == pytest.approx(1.0)
        assert concurrence_wootters(rho).value == 0.0
        assert coa_two_qubit(rho).method == NUMERICAL

    def test_high_rank_marginal_rejected(self):
        v = np.zeros(9, dtype=complex)
        v[[0, 4, 8]] = 1 / math.sqrt(3)
        with pytest.raises(DomainError, match="rank above 2"):
            concurrence_bipartite(np.outer(v, v.conj()), (3, 3))


class TestTsallis:
    def test_entropy(self):
        assert tsallis_entropy([0.5, 0.5], 2) == pytest.approx(0.5)
        assert tsallis_entropy([1.0, 0.0], 3) == pytest.approx(0.0)
        with pytest.raises(DomainError):
            tsallis_entropy([1.0], 1)

    def test_close_to_von_neumann_near_one(self):
        p = np.array([0.2, 0.3, 0.5])
        shannon = -np.sum(p * np.log(p))
        assert tsallis_entropy(p, 1 + 1e-6) == pytest.approx(shannon, rel=1e-5)

    def test_f_q_special_values(self):
        assert f_q(0.0, 3) == 0.0
        assert f_q(0.36, 2) == pytest.approx(0.18)
        assert f_q(1.0, 3) == pytest.approx((1 - 2 ** (1 - 3)) / 2)
        assert np.allclose(f_q(np.array([0.1, 0.5]), 2), [0.05, 0.25])
        assert f_q(1 + 1e-13, 2) == pytest.approx(0.5)
        with pytest.raises(DomainError):
            f_q(1.1, 2)

    @given(st.integers(0, 2**32 - 1), st.integers(2, 5), st.floats(0.3, 4.5))
    def test_f_q_matches_pure_tsallis(self, seed, n, q):
        # for a Schmidt-rank-2 cut the Tsallis entanglement is f_q(C^2), any q
        if abs(q - 1) < 1e-3:
            return
        rng = np.random.default_rng(seed)
        spec = random_gw_spec(rng, 2, n)
        vec = build_gw_vector(spec)
        c = concurrence_pure(vec, [0]).value
        assert tsallis_pure(vec, [0], q).value == pytest.approx(f_q(c * c, q), abs=1e-10)

    def test_q_validity(self):
        assert q_is_valid(Q_MIN) and q_is_valid(2.0) and q_is_valid(3.0) and q_is_valid(Q_MAX)
        assert not q_is_valid(2.5) and not q_is_valid(0.5) and not q_is_valid(4.5)
        with pytest.raises(DomainError, match=r"\[3, "):
            require_valid_q(2.5)

    def test_q_grid(self):
        g = q_grid(200)
        assert g.size == 200
        assert all(q_is_valid(q) for q in g)
        assert g[0] == pytest.approx(Q_MIN) and g[-1] == pytest.approx(Q_MAX)

    def test_tqeeoa_example2(self, example2):
        spec, part = example2
        w = party_weights(spec, part)
        assert tqeeoa_gw(w, 0, 2.0).value == pytest.approx(5 / 18)
        assert tqeeoa_gw(w, 0, 2.0, 1).value == pytest.approx(1 / 18)
        with pytest.raises(DomainError):
            tqeeoa_gw(w, 0, 2.5)


class TestCounterexample:
    def test_values_at_two(self):
        v = tq_rank2_counterexample(2.0)
        assert v.lhs == pytest.approx(2 / 3)
        assert v.t_ab == pytest.approx(4 / 9)
        assert v.t_ac == v.t_ab
        assert v.residual_bound == pytest.approx(-2 / 9)

    def test_sign_over_validity_set(self):
        for q in q_grid(200):
            assert tq_rank2_counterexample(q).residual_bound <= 1e-12

    def test_lhs_matches_state(self):
        from gwmono.states import counterexample_vector

        vec = counterexample_vector()
        for q in (Q_MIN, 2.0, 3.0, Q_MAX):
            assert tsallis_pure(vec, [0], q).value == pytest.approx(tq_rank2_counterexample(q).lhs, abs=1e-12)


@given(st.integers(0, 2**32 - 1), st.integers(2, 3), st.integers(3, 5))
def test_one_vs_rest_additivity(seed, d, n):
    # squared one-vs-rest CoA is the sum of squared pair values, both routes
    rng = np.random.default_rng(seed)
    spec = random_gw_spec(rng, d, n)
    part = random_partition(rng, n, int(rng.integers(2, n + 1)), allow_traced=False)
    w = party_weights(spec, part)
    vec = build_gw_vector(spec)
    for t in range(len(part)):
        pairs = [coa_pair_gw(w, t, l).value for l in range(len(part)) if l != t]
        whole = coa_one_vs_rest_gw(w, t).value
        assert whole**2 == pytest.approx(sum(c * c for c in pairs), abs=1e-12)
        assert concurrence_pure(vec, part.parties[t]).value == pytest.approx(whole, abs=1e-8)


@given(st.integers(0, 2**32 - 1), st.integers(3, 5))
def test_pair_formula_against_wootters(seed, n):
    rng = np.random.default_rng(seed)
    spec = random_gw_spec(rng, 2, n)
    part = random_partition(rng, n, int(rng.integers(2, n + 1)))
    w = party_weights(spec, part)
    vec = build_gw_vector(spec)
    for t, l in itertools.combinations(range(len(part)), 2):
        rho, dims = reduce_to_parties(vec, [part.parties[t], part.parties[l]])
        want = coa_pair_gw(w, t, l).value
        assert concurrence_bipartite(rho, dims).value == pytest.approx(want, abs=1e-8)
        assert coa_bipartite(rho, dims).value == pytest.approx(want, abs=1e-8)


def test_pair_argument_checks():
    with pytest.raises(DomainError):
        coa_pair_gw([0.5, 0.5], 0, 0)
    with pytest.raises(DomainError):
        coa_one_vs_rest_gw([1.0], 0)
    with pytest.raises(DomainError):
        coa_one_vs_rest_gw([0.5, 0.5], 0, [0, 1])


def test_qubit_constructor_matches_entries():
    a = GWStateSpec.qubits([0.6, 0.8])
    b = GWStateSpec.from_entries(2, 2, [(0, 1, 0.6), (1, 1, 0.8)])
    assert np.array_equal(a.coeffs, b.coeffs)


@given(st.integers(0, 2**32 - 1), st.integers(1, 4))
def test_concurrence_never_exceeds_coa(seed, rank):
    from .conftest import random_density

    rho = random_density(np.random.default_rng(seed), 4, rank)
    c = concurrence_wootters(rho).value
    ca = coa_two_qubit(rho).value
    assert 0.0 <= c <= ca + 1e-12 <= 1 + 1e-12
