import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

import gmpa.hybrid as hybrid
from gmpa.core import Bounds, Individual, Leaders, ObjectiveProblem, RunBudget, make_rng
from gmpa.hybrid import (
    GmpaConfig,
    Memory,
    alpha_neighborhood_search,
    fads_perturbation,
    phase1_update,
    phase2_update,
    phase3_update,
    phase_of,
    run_gmpa,
)

WIDE = Bounds.uniform(-100.0, 100.0, 1)


def leaders_1d(alpha, beta, delta):
    return Leaders(
        alpha=Individual(np.array([float(alpha)]), 1.0),
        beta=Individual(np.array([float(beta)]), 2.0),
        delta=Individual(np.array([float(delta)]), 3.0),
    )


def zeros_levy(n, d, params, rng):
    return np.zeros((n, d))


def ones_levy(n, d, params, rng):
    return np.ones((n, d))


class TestPhase1:
    def test_zero_brownian_gives_leader_centroid(self, fake_rng_cls):
        rng = fake_rng_cls(normal=[0.0], uniform=[1.0])
        new = phase1_update(np.array([[0.5]]), leaders_1d(1, 2, 3), 0.5, 1, 100, WIDE, rng)
        assert_allclose(new, [[2.0]], atol=1e-12)

    def test_scalar_hand_trace(self, fake_rng_cls):
        # step = 1*(1 - 1*0.5) = 0.5; X1,X2,X3 = leader + 0.5*1*0.5; mean = 2.25
        rng = fake_rng_cls(normal=[1.0], uniform=[1.0])
        new = phase1_update(np.array([[0.5]]), leaders_1d(1, 2, 3), 0.5, 1, 100, WIDE, rng)
        assert_allclose(new, [[2.25]], atol=1e-12)

    def test_member_at_alpha_gives_centroid(self, fake_rng_cls):
        rng = fake_rng_cls(normal=[1.0], uniform=[1.0])
        new = phase1_update(np.array([[1.0]]), leaders_1d(1, 2, 3), 0.5, 1, 100, WIDE, rng)
        assert_allclose(new, [[2.0]], atol=1e-12)

    def test_per_leader_variant_differs(self, fake_rng_cls):
        pos = np.array([[0.5]])
        shared = phase1_update(pos, leaders_1d(1, 2, 3), 0.5, 1, 100, WIDE,
                               fake_rng_cls(normal=[1.0], uniform=[1.0]))
        per_leader = phase1_update(pos, leaders_1d(1, 2, 3), 0.5, 1, 100, WIDE,
                                   fake_rng_cls(normal=[1.0], uniform=[1.0]), per_leader=True)
        # steps vs beta/delta: 1*(2-0.5)=1.5, 1*(3-0.5)=2.5
        assert_allclose(per_leader, [[(1.25 + 2.75 + 4.25) / 3.0]], atol=1e-12)
        assert not np.allclose(shared, per_leader)

    def test_wrong_phase_rejected(self, fake_rng_cls):
        with pytest.raises(ValueError, match="phase"):
            phase1_update(np.array([[0.0]]), leaders_1d(1, 2, 3), 0.5, 60, 100,
                          WIDE, fake_rng_cls())


class TestPhase2:
    def test_zero_cf_maps_second_faction_to_alpha(self, fake_rng_cls, monkeypatch):
        monkeypatch.setattr(hybrid, "levy_matrix", ones_levy)
        rng = fake_rng_cls(normal=[1.0], uniform=[0.0])
        pos = np.array([[7.0], [7.0]])
        new = phase2_update(pos, leaders_1d(2, 3, 4), 0.5, 50, 100, WIDE, rng,
                            hybrid.LevyParams(), cf_value=0.0)
        assert_allclose(new[1], [2.0], atol=1e-12)

    def test_zero_levy_maps_first_faction_to_alpha(self, fake_rng_cls, monkeypatch):
        monkeypatch.setattr(hybrid, "levy_matrix", zeros_levy)
        rng = fake_rng_cls(normal=[1.0], uniform=[0.7])
        pos = np.array([[7.0], [7.0]])
        new = phase2_update(pos, leaders_1d(2, 3, 4), 0.5, 50, 100, WIDE, rng,
                            hybrid.LevyParams())
        assert_allclose(new[0], [2.0], atol=1e-12)

    def test_second_faction_hand_trace(self, fake_rng_cls, monkeypatch):
        # step = 1*(1*2 - 1) = 1; new = 2 + 0.5*0.5*1 = 2.25 (cf(50,100)=0.5)
        monkeypatch.setattr(hybrid, "levy_matrix", zeros_levy)
        rng = fake_rng_cls(normal=[1.0], uniform=[0.3])
        pos = np.array([[5.0], [1.0]])
        new = phase2_update(pos, leaders_1d(2, 3, 4), 0.5, 50, 100, WIDE, rng,
                            hybrid.LevyParams())
        assert_allclose(new[1], [2.25], atol=1e-12)

    def test_wrong_phase_rejected(self, fake_rng_cls):
        with pytest.raises(ValueError, match="phase"):
            phase2_update(np.array([[0.0], [0.0]]), leaders_1d(1, 2, 3), 0.5, 1, 100,
                          WIDE, fake_rng_cls(), hybrid.LevyParams())


class TestPhase3:
    def test_zero_levy_maps_to_alpha(self, fake_rng_cls, monkeypatch):
        monkeypatch.setattr(hybrid, "levy_matrix", zeros_levy)
        new = phase3_update(np.array([[9.0]]), leaders_1d(1, 2, 3), 0.5, 80, 100,
                            WIDE, fake_rng_cls(), hybrid.LevyParams())
        assert_allclose(new, [[1.0]], atol=1e-12)

    def test_final_iteration_maps_to_alpha(self, fake_rng_cls, monkeypatch):
        monkeypatch.setattr(hybrid, "levy_matrix", ones_levy)
        new = phase3_update(np.array([[9.0]]), leaders_1d(1, 2, 3), 0.5, 100, 100,
                            WIDE, fake_rng_cls(), hybrid.LevyParams())
        assert_allclose(new, [[1.0]], atol=1e-12)

    def test_scalar_hand_trace(self, fake_rng_cls, monkeypatch):
        # step = 1*(1*1 - 0) = 1; new = 1 + 0.5*0.2*1 = 1.1
        monkeypatch.setattr(hybrid, "levy_matrix", ones_levy)
        new = phase3_update(np.array([[0.0]]), leaders_1d(1, 2, 3), 0.5, 80, 100,
                            WIDE, fake_rng_cls(), hybrid.LevyParams(), cf_value=0.2)
        assert_allclose(new, [[1.1]], atol=1e-12)


class TestFads:
    def test_zero_mask_is_identity(self, fake_rng_cls):
        # r1 <= r2 branch with fads=0 masks away the whole displacement
        rng = fake_rng_cls(uniform=[0.0, 0.5, 0.3])
        pos = np.array([[0.4], [-0.2]])
        new = fads_perturbation(pos, Bounds.uniform(-1, 1, 1), 0.0, 1.0, rng)
        assert_array_equal(new, pos)

    def test_equal_members_make_difference_branch_identity(self, fake_rng_cls):
        # r1 > r2 forces the member-difference branch; identical members cancel
        rng = fake_rng_cls(uniform=[0.9, 0.1, 0.5], ints=[0, 0])
        pos = np.array([[0.4], [0.4]])
        new = fads_perturbation(pos, Bounds.uniform(-1, 1, 1), 0.2, 1.0, rng)
        assert_array_equal(new, pos)

    def test_scalar_hand_trace(self, fake_rng_cls):
        # r1<=r2; jump = CF*(lb + R*(ub-lb))*U = 1*(-1 + 0)*1 = -1
        rng = fake_rng_cls(uniform=[0.3, 0.7, 0.0, 0.0])
        pos = np.array([[0.0], [0.5]])
        new = fads_perturbation(pos, Bounds.uniform(-1, 1, 1), 1.0, 1.0, rng)
        assert_allclose(new[0], [-1.0], atol=1e-12)

    def test_single_member_rejected(self, fake_rng_cls):
        with pytest.raises(ValueError):
            fads_perturbation(np.array([[0.0]]), Bounds.uniform(-1, 1, 1), 0.2, 1.0,
                              fake_rng_cls())


class TestMemory:
    def test_reverts_to_better_previous(self):
        mem = Memory(np.array([[1.0]]), np.array([1.0]))
        pos, fit = mem.apply(np.array([[9.0]]), np.array([2.0]))
        assert_array_equal(pos, [[1.0]])
        assert_array_equal(fit, [1.0])

    def test_keeps_better_new(self):
        mem = Memory(np.array([[1.0]]), np.array([2.0]))
        pos, fit = mem.apply(np.array([[9.0]]), np.array([1.0]))
        assert_array_equal(pos, [[9.0]])
        assert_array_equal(fit, [1.0])

    def test_tie_keeps_new_position(self):
        mem = Memory(np.array([[1.0]]), np.array([1.5]))
        pos, fit = mem.apply(np.array([[9.0]]), np.array([1.5]))
        assert_array_equal(pos, [[9.0]])

    def test_shape_mismatch_rejected(self):
        mem = Memory(np.zeros((3, 2)), np.zeros(3))
        with pytest.raises(ValueError):
            mem.apply(np.zeros((4, 2)), np.zeros(4))

    def test_dominance_after_apply(self):
        rng = make_rng(0)
        mem = Memory(rng.random((20, 3)), rng.random(20))
        before = rng.random(20)
        _, after = mem.apply(rng.random((20, 3)), before.copy())
        assert np.all(after <= before)


class TestNeighborhood:
    def test_member_at_alpha_leaves_leaders_unchanged(self, fake_rng_cls):
        leaders = leaders_1d(1.0, 2.0, 3.0)
        new_leaders, evals, probes, costs = alpha_neighborhood_search(
            np.array([[1.0]]), leaders, Bounds.uniform(-2, 2, 1), 50, 100,
            0.0, 1, fake_rng_cls(uniform=[1.0], normal=[1.0]),
            lambda x: 99.0,
        )
        assert evals == 1
        assert_allclose(probes[0], [1.0], atol=1e-12)  # tau vanishes with the distance
        assert new_leaders.alpha.fitness == leaders.alpha.fitness

    def test_better_neighbor_replaces_alpha(self, fake_rng_cls):
        leaders = leaders_1d(1.0, 2.0, 3.0)
        new_leaders, _, _, _ = alpha_neighborhood_search(
            np.array([[0.0]]), leaders, Bounds.uniform(-2, 2, 1), 50, 100,
            1e-8, 3, fake_rng_cls(uniform=[0.5], normal=[0.5]),
            lambda x: 0.25,
        )
        assert new_leaders.alpha.fitness == 0.25
        assert new_leaders.beta.fitness == leaders.beta.fitness

    def test_scalar_hand_trace(self, fake_rng_cls):
        # w = (1-0.5+0)^2 * (1*0.5) * 1 = 0.125; phi = 2; tau = 0.125*2*1 = 0.25
        leaders = leaders_1d(1.0, 2.0, 3.0)
        _, _, probes, _ = alpha_neighborhood_search(
            np.array([[0.0]]), leaders, Bounds.uniform(-2, 2, 1), 50, 100,
            0.0, 1, fake_rng_cls(uniform=[1.0], normal=[1.0]),
            lambda x: 99.0,
        )
        assert_allclose(probes[0], [1.25], atol=1e-12)

    def test_zero_neighbors_rejected(self, fake_rng_cls):
        with pytest.raises(ValueError):
            alpha_neighborhood_search(
                np.array([[0.0]]), leaders_1d(1, 2, 3), WIDE, 1, 100, 1e-8, 0,
                fake_rng_cls(), lambda x: 0.0,
            )


def sphere_problem(d=2, half_width=5.0):
    return ObjectiveProblem(
        name=f"sphere{d}",
        dimension=d,
        bounds=Bounds.uniform(-half_width, half_width, d),
        evaluate=lambda x: float(np.sum(x * x)),
    )


class TestRunGmpa:
    def test_trace_monotone_and_full_length(self):
        _, trace = run_gmpa(sphere_problem(), RunBudget(n=8, T=30, seed=3))
        assert trace.best.size == 30
        assert np.all(np.diff(trace.best) <= 0)
        assert np.all(np.diff(trace.evals) > 0)

    def test_evaluation_accounting(self):
        # n + T*(n + n + k) with n=10, T=9, k=5
        _, trace = run_gmpa(
            sphere_problem(), RunBudget(n=10, T=9, seed=0),
            GmpaConfig(neighborhood_size=5),
        )
        assert trace.evals[-1] == 10 + 9 * (10 + 10 + 5)

    def test_phase_partition_counters(self):
        _, trace = run_gmpa(sphere_problem(), RunBudget(n=10, T=9, seed=0))
        assert trace.extras["phase_counts"] == [2, 3, 4]
        expected = [
            sum(1 for t in range(1, 10) if phase_of(t, 9) == ph) for ph in (1, 2, 3)
        ]
        assert trace.extras["phase_counts"] == expected

    def test_seed_determinism(self):
        b1, t1 = run_gmpa(sphere_problem(), RunBudget(n=8, T=24, seed=11))
        b2, t2 = run_gmpa(sphere_problem(), RunBudget(n=8, T=24, seed=11))
        assert_array_equal(t1.best, t2.best)
        assert_array_equal(t1.evals, t2.evals)
        assert_array_equal(b1.position, b2.position)

    def test_bound_safety_every_evaluation(self):
        bounds = Bounds.uniform(-1.5, 2.5, 3)
        seen = []

        def guarded(x):
            assert np.all(x >= bounds.lower - 0) and np.all(x <= bounds.upper + 0)
            seen.append(x.copy())
            return float(np.sum((x - 1.0) ** 2))

        problem = ObjectiveProblem("guarded", 3, bounds, guarded)
        run_gmpa(problem, RunBudget(n=6, T=12, seed=5))
        assert len(seen) == 6 + 12 * (6 + 6 + 6)

    def test_memory_dominance_and_alpha_monotone(self):
        stats = []
        run_gmpa(sphere_problem(), RunBudget(n=8, T=30, seed=7), callback=stats.append)
        assert len(stats) == 30
        alphas = []
        for s in stats:
            assert np.all(s.fitness_after_memory1 <= s.fitness_before_memory1)
            assert np.all(s.fitness_after_memory2 <= s.fitness_before_memory2)
            assert s.alpha_after_search <= s.alpha_before_search
            alphas.append(s.alpha_after_search)
        assert np.all(np.diff(alphas) <= 0)

    def test_sphere_convergence_beats_random_search_oracle(self):
        from gmpa.baselines import run_random_search
        from gmpa.benchfuncs import BenchSpec, make_problem

        problem = make_problem(BenchSpec("sphere", 2))  # conventional [-100,100]^2
        finals, oracle_finals = [], []
        for seed in range(10):
            best, trace = run_gmpa(problem, RunBudget(n=30, T=200, seed=seed))
            finals.append(best.fitness)
            oracle, _ = run_random_search(
                problem, RunBudget(n=30, T=200, seed=seed), total_evals=trace.evals[-1]
            )
            oracle_finals.append(oracle.fitness)
        assert np.median(finals) < 1e-3
        assert np.median(oracle_finals) > 1e-2  # validates the threshold gap

    def test_penalty_replaces_non_finite_values(self):
        problem = ObjectiveProblem(
            "nan_pocket", 2, Bounds.uniform(-5, 5, 2),
            lambda x: float("nan") if x[0] > 4.9 else float(np.sum(x * x)),
        )
        best, _ = run_gmpa(problem, RunBudget(n=6, T=9, seed=2),
                           GmpaConfig(penalty_value=1e9))
        assert np.isfinite(best.fitness)


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            GmpaConfig(p=0.0)
        with pytest.raises(ValueError):
            GmpaConfig(fads=1.5)
        with pytest.raises(ValueError):
            GmpaConfig(epsilon=0.0)
        with pytest.raises(ValueError):
            GmpaConfig(neighborhood_size=0)

    def test_schedules_default_off(self):
        cfg = GmpaConfig()
        assert cfg.p_at(0, 100) == cfg.p_at(100, 100) == 0.5
        assert cfg.fads_at(0, 100) == cfg.fads_at(100, 100) == 0.2

    def test_linear_schedules(self):
        cfg = GmpaConfig(p=0.5, p_final=0.1, fads=0.2, fads_final=0.4)
        assert cfg.p_at(0, 100) == 0.5
        assert cfg.p_at(100, 100) == pytest.approx(0.1)
        assert cfg.fads_at(50, 100) == pytest.approx(0.3)

    def test_neighborhood_default(self):
        assert GmpaConfig().resolve_k(6) == 6
        assert GmpaConfig().resolve_k(40) == 10
