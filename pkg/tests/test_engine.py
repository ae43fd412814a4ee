import math

import numpy as np
import pytest

from eqaoa.engine import (
    RunConfig,
    Schedule,
    beta_default,
    gamma_schedule,
    iteration_count,
    run_enhanced,
    run_standard,
    update_parameters,
)
from eqaoa.errors import DegeneracyError, DomainError
from eqaoa.hamiltonian import (
    ProjectorHamiltonian,
    build_sat_diagonal,
    grover_diagonal,
    normalize,
    projector_coefficients,
)
from eqaoa.oracle import dense_evolution, exhaustive_max
from eqaoa.problems import GeneratorSpec, generate_planted_sat
from eqaoa.statevector import apply_diagonal_phase, init_uniform


class TestIterationCount:
    def test_full_benchmark_size(self):
        # 20 * log2(2280) / sqrt(2) = 157.75
        assert iteration_count(20, 2280, "full") == 158

    def test_reduced_benchmark_size(self):
        # 20 * log2(228) / sqrt(2) = 110.77
        assert iteration_count(20, 2280, "reduced") == 111

    def test_tiny(self):
        assert iteration_count(2, 2, "full") == 2

    def test_natural_log(self):
        # 20 * ln(2280) / sqrt(2) = 109.35
        assert iteration_count(20, 2280, "full", log_base="e") == 110

    def test_m_too_small(self):
        with pytest.raises(DomainError):
            iteration_count(20, 1)


class TestGammaSchedule:
    def sched(self, form, variant="full", m=2280):
        return Schedule(20, m, variant, form)

    def test_literal_first(self):
        assert gamma_schedule(1, 20, 2280, self.sched("literal")) == math.pi

    def test_literal_p8(self):
        assert gamma_schedule(8, 20, 2280, self.sched("literal")) == 2 * math.pi

    def test_odd_p8_p15(self):
        s = self.sched("odd")
        assert gamma_schedule(8, 20, 2280, s) == math.pi
        assert gamma_schedule(15, 20, 2280, s) == 3 * math.pi

    def test_out_of_range(self):
        s = self.sched("literal")
        for p in (0, s.p_max + 1):
            with pytest.raises(DomainError):
                gamma_schedule(p, 20, 2280, s)

    def test_literal_nondecreasing(self):
        g = self.sched("literal").gammas()
        assert all(b >= a for a, b in zip(g, g[1:]))

    @pytest.mark.parametrize("variant", ["full", "reduced"])
    def test_odd_multiples_only(self, variant):
        for g in self.sched("odd", variant).gammas():
            k = round(g / math.pi)
            assert k % 2 == 1 and g == k * math.pi

    def test_full_odd_reaches_log_m(self):
        # floor(sqrt2 * 158 / 20) = 11 = floor(log2 2280)
        s = self.sched("odd")
        assert s.gamma(s.p_max) == 23 * math.pi

    def test_reduced_odd_reaches_t_max(self):
        # t_max = ceil(log2(2 * 2280 * 20)) = 17
        s = self.sched("odd", "reduced")
        assert s.p_max == 111
        assert s.gamma(s.p_max) == 35 * math.pi

    def test_reduced_literal_reuses_formula(self):
        s = self.sched("literal", "reduced")
        assert [s.gamma(p) for p in (1, 8, 111)] == [
            (math.floor(2 * math.sqrt(2) * p / 20) + 1) * math.pi for p in (1, 8, 111)
        ]

    def test_bad_form(self):
        with pytest.raises(DomainError):
            Schedule(4, 10, gamma_form="even")


class TestBeta:
    @pytest.mark.parametrize("n,expected", [(20, 0.05), (1, 1.0), (4, 0.25)])
    def test_values(self, n, expected):
        assert beta_default(n) == expected

    def test_schedule_default(self):
        assert Schedule(20, 2280).beta == 0.05


def small_sat(n, m, seed):
    inst, _ = generate_planted_sat(GeneratorSpec(n, m, "planted", seed))
    raw = build_sat_diagonal(inst)
    _, target = exhaustive_max(raw.values)
    return normalize(raw, m), target


class TestRunStandard:
    def test_trivial_run_keeps_uniform(self):
        # beta = 2 pi makes the mixer the identity; a phase never moves probability
        diag = grover_diagonal(3, {2, 5})
        sched = Schedule(3, 2, p_max=1, beta=2 * math.pi)
        traj = run_standard(diag, RunConfig(sched, {2, 5}))
        assert traj.records[0].target_probability == pytest.approx(2 / 8, abs=1e-12)

    def test_grover_two_qubits_matches_oracle(self):
        diag = grover_diagonal(2, {3})
        sched = Schedule(2, 2, p_max=1, beta=0.5)
        traj = run_standard(diag, RunConfig(sched, {3}), gamma_s_schedule=[math.pi])
        ref = dense_evolution(diag.values, [(math.pi, 0.5)])
        np.testing.assert_allclose(traj.state.amplitudes, ref, atol=1e-12)
        assert traj.max_target_probability == pytest.approx(abs(ref[3]) ** 2, abs=1e-12)

    @pytest.mark.parametrize("form", ["literal", "odd"])
    @pytest.mark.parametrize("variant", ["full", "reduced"])
    def test_matches_oracle(self, form, variant):
        diag, target = small_sat(6, 40, 11)
        sched = Schedule(6, 40, variant, form)
        traj = run_standard(diag, RunConfig(sched, target, record_expectation=True))
        ref = dense_evolution(diag.values, sched.angles())
        assert np.abs(traj.state.amplitudes - ref).max() <= 1e-9
        last = traj.records[-1]
        assert last.expectation == pytest.approx(float(np.dot(np.abs(ref) ** 2, diag.values)), abs=1e-9)

    def test_trajectory_invariants(self):
        diag, target = small_sat(7, 50, 2)
        traj = run_standard(diag, RunConfig(Schedule(7, 50), target))
        probs = traj.target_probabilities
        assert len(traj) == iteration_count(7, 50)
        assert np.all((probs >= 0) & (probs <= 1))
        assert traj.max_target_probability == probs.max()
        assert [r.p for r in traj.records] == list(range(1, len(traj) + 1))

    def test_optimal_phase_is_minus_one_under_odd_form(self):
        # a satisfiable normalized diagonal has value 1 at the optimum
        diag, target = small_sat(5, 30, 4)
        sched = Schedule(5, 30, gamma_form="odd")
        z = min(target)
        for g in sched.gammas():
            s = init_uniform(5)
            apply_diagonal_phase(s, diag.values, g)
            assert s.amplitudes[z] / init_uniform(5).amplitudes[z] == pytest.approx(-1, abs=1e-12)

    def test_empty_target(self):
        with pytest.raises(DomainError):
            RunConfig(Schedule(3, 4), set())


class TestRunEnhanced:
    def test_clause_coefficients_reproduce_standard(self):
        diag, target = small_sat(8, 60, 6)
        cfg = RunConfig(Schedule(8, 60, gamma_form="odd"), target)
        a = run_standard(diag, cfg)
        b = run_enhanced(projector_coefficients(diag), cfg)
        assert np.abs(a.state.amplitudes - b.state.amplitudes).max() <= 1e-12
        np.testing.assert_allclose(a.target_probabilities, b.target_probabilities, atol=1e-12)

    def test_single_term_negates_controlled_states(self):
        n, j = 4, 0b0110
        h = ProjectorHamiltonian(n, {j: 1.0})
        s = init_uniform(n)
        apply_diagonal_phase(s, h.to_diagonal(), math.pi)
        for z in range(1 << n):
            sign = -1 if z & j == j else 1
            assert s.amplitudes[z] == pytest.approx(sign * 0.25, abs=1e-15)

    def test_two_terms_match_oracle(self):
        n = 4
        h = ProjectorHamiltonian(n, {0b0011: 0.7, 0b1100: -0.3})
        sched = Schedule(n, 8, p_max=12, beta=0.3)
        gammas = [0.4 * p for p in range(1, 13)]
        traj = run_enhanced(h, RunConfig(sched, {0b0011}), gamma_s_schedule=gammas)
        # D(z) evaluated directly: 0.7 z0 z1 - 0.3 z2 z3
        z = np.arange(16)
        d = 0.7 * (z & 1) * ((z >> 1) & 1) - 0.3 * ((z >> 2) & 1) * ((z >> 3) & 1)
        ref = dense_evolution(d, [(g, 0.3) for g in gammas])
        assert np.abs(traj.state.amplitudes - ref).max() <= 1e-12

    def test_callable_gamma(self):
        h = ProjectorHamiltonian(3, {0b111: 1.0})
        sched = Schedule(3, 4, p_max=3)
        traj = run_enhanced(h, RunConfig(sched, {7}), gamma_s_schedule=lambda p: 0.5 * p)
        assert [r.gamma_s for r in traj.records] == [0.5, 1.0, 1.5]

    def test_empty(self):
        with pytest.raises(DomainError):
            run_enhanced(ProjectorHamiltonian(3, {}), RunConfig(Schedule(3, 4), {1}))


class TestUpdateParameters:
    def test_alpha_zero_keeps_coefficients(self):
        h = ProjectorHamiltonian(3, {1: 0.2, 6: 0.8})
        new = update_parameters(h, [0, 0, 0], 0)
        assert new.terms == pytest.approx({1: 0.2, 6: 0.8})

    def test_equal_frequencies(self):
        h = ProjectorHamiltonian(3, {1: 0.25, 2: -0.75})
        # both masks are set in half of the samples
        new = update_parameters(h, [3, 0], 2.0)
        assert new.terms == pytest.approx({1: 0.25, 2: -0.75})

    def test_reweighting(self):
        # e_1 = 1, e_2 = 0.25
        h = ProjectorHamiltonian(2, {1: 0.5, 2: 0.5})
        new = update_parameters(h, [1, 1, 1, 3], 1.0)
        assert new.terms == pytest.approx({1: 0.8, 2: 0.2})

    def test_unit_l1_norm(self):
        h = ProjectorHamiltonian(4, {1: 0.3, 3: -0.2, 12: 0.5})
        new = update_parameters(h, [1, 3, 15, 13], 0.7)
        assert new.l1_norm() == pytest.approx(1.0)

    def test_degenerate(self):
        h = ProjectorHamiltonian(2, {3: 1.0})
        with pytest.raises(DegeneracyError):
            update_parameters(h, [0, 1, 2], 1.0)

    def test_negative_alpha(self):
        with pytest.raises(DomainError):
            update_parameters(ProjectorHamiltonian(2, {1: 1.0}), [1], -0.5)
