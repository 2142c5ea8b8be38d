"""Exact and sampled strong-simulation paths."""

import numpy as np
import pytest

from tmagic.catalog import (block_decomposition, t1_decomposition,
                            t6_decomposition)
from tmagic.dense import dense_magic_state, dense_projector_expect
from tmagic.gauss import expect_block
from tmagic.pauli import PauliOperator, PauliProjector, random_pauli
from tmagic.phase_ring import ONE
from tmagic.strong_sim import (SimulationTask, exact_expectation,
                               exact_pauli_expectation, run_task,
                               sample_count, sampled_expectation)


def _proj(s: str, sign: int = 1) -> PauliProjector:
    return PauliProjector.single(PauliOperator.from_str(s), sign)


class TestExact:
    def test_t1_z_projector(self):
        assert exact_expectation(t1_decomposition(), _proj("Z")).value == pytest.approx(0.5)

    def test_t1_x_projector(self):
        got = exact_expectation(t1_decomposition(), _proj("X")).value
        assert got == pytest.approx((1 + 2 ** -0.5) / 2)

    def test_t6_all_x_vs_dense(self):
        proj = _proj("XXXXXX")
        got = exact_expectation(t6_decomposition(), proj).value
        want = dense_projector_expect(dense_magic_state(6), proj)
        assert got == pytest.approx(want, abs=1e-12)

    def test_random_multi_factor_projectors_vs_dense(self):
        rng = np.random.default_rng(0)
        dec = t6_decomposition()
        vec = dense_magic_state(6)
        for _ in range(25):
            nf = int(rng.integers(1, 4))
            while True:
                ops = [random_pauli(6, rng) for _ in range(nf)]
                signs = [1 if rng.integers(0, 2) else -1 for _ in range(nf)]
                try:
                    proj = PauliProjector(6, tuple(zip(ops, signs)))
                    break
                except ValueError:
                    continue
            got = exact_expectation(dec, proj)
            assert got.value == pytest.approx(dense_projector_expect(vec, proj), abs=1e-12)

    def test_sign_pair_sums_to_one_exactly(self):
        rng = np.random.default_rng(1)
        dec = block_decomposition(3)
        for _ in range(30):
            p = random_pauli(3, rng)
            plus = exact_expectation(dec, _proj(str(p), 1))
            minus = exact_expectation(dec, _proj(str(p), -1))
            assert plus.exact_value + minus.exact_value == ONE

    def test_imaginary_part_vanishes_for_all_single_paulis(self):
        from tmagic.gauss import _all_paulis
        for k in (1, 2):
            dec = block_decomposition(k)
            for p in _all_paulis(k):
                res = exact_expectation(dec, _proj(str(p), 1))
                assert res.exact_value.is_real()

    def test_pauli_expectation_matches_gauss_engine(self):
        rng = np.random.default_rng(2)
        dec = t6_decomposition()
        for _ in range(25):
            p = random_pauli(6, rng)
            a = exact_pauli_expectation(dec, p).value
            b = expect_block(6, p).expectation
            assert a == pytest.approx(b, abs=1e-12)

    def test_non_commuting_projector_rejected(self):
        with pytest.raises(ValueError):
            PauliProjector(2, ((PauliOperator.from_str("XI"), 1),
                               (PauliOperator.from_str("ZI"), 1)))


class TestSampled:
    def test_sample_count_formula(self):
        assert sample_count(0.1, 0.05) == int(np.ceil(np.log(20) / 0.01))
        assert sample_count(1.0, 0.5) == 1

    def test_identity_projector_unbiased(self):
        dec = block_decomposition(2)
        vals = [sampled_expectation(dec, PauliProjector(2, ()), 0.2, 0.2,
                                    seed).value for seed in range(40)]
        mean = float(np.mean(vals))
        sem = float(np.std(vals) / np.sqrt(len(vals)))
        assert abs(mean - 1.0) < 4 * max(sem, 1e-3)

    def test_matches_exact_within_noise(self):
        rng = np.random.default_rng(3)
        dec = t6_decomposition()
        p = random_pauli(6, rng)
        proj = _proj(str(p), 1)
        want = exact_expectation(dec, proj).value
        vals = [sampled_expectation(dec, proj, 0.15, 0.1, seed).value
                for seed in range(40)]
        mean = float(np.mean(vals))
        sem = float(np.std(vals) / np.sqrt(len(vals)))
        assert abs(mean - want) < 4 * max(sem, 1e-3)

    def test_consistency_error_shrinks_with_epsilon(self):
        dec = block_decomposition(2)
        p = PauliOperator.from_str("XY")
        proj = _proj(str(p), 1)
        want = exact_expectation(dec, proj).value
        medians = []
        for eps in (0.3, 0.1):
            errs = [abs(sampled_expectation(dec, proj, eps, 0.05, seed).value - want)
                    for seed in range(50)]
            medians.append(float(np.median(errs)))
        assert medians[1] < medians[0]

    def test_seeded_reproducibility(self):
        dec = t6_decomposition()
        proj = _proj("XXYYZZ", 1)
        a = sampled_expectation(dec, proj, 0.3, 0.1, seed=7)
        b = sampled_expectation(dec, proj, 0.3, 0.1, seed=7)
        assert a.value == b.value

    def test_samples_override(self):
        dec = block_decomposition(2)
        res = sampled_expectation(dec, _proj("XX"), 0.1, 0.05, 0,
                                  samples_override=100)
        assert res.samples_used == 100
        assert res.inner_products_evaluated <= 100 * len(dec)


class TestRunTask:
    def test_t12_exact_counter_bound(self):
        p = random_pauli(12, np.random.default_rng(5))
        task = SimulationTask(t=12, n=12, projector=_proj(str(p), 1), mode="exact")
        res = run_task(task)
        assert res.term_count == 47
        assert res.inner_products_evaluated <= 47 ** 2

    def test_forced_sample_count(self):
        p = random_pauli(2, np.random.default_rng(6))
        task = SimulationTask(t=2, n=2, projector=_proj(str(p), 1),
                              mode="sampled", samples_override=100, seed=1)
        res = run_task(task)
        assert res.samples_used == 100

    def test_t0_pure_stabilizer_input(self):
        proj = PauliProjector.single(PauliOperator.from_str("ZZZ"), 1)
        task = SimulationTask(t=0, n=3, projector=proj, mode="exact")
        res = run_task(task)
        assert res.value == pytest.approx(1.0)
        assert res.inner_products_evaluated == 1

    def test_policy_work_ratio_47_vs_49(self):
        p = random_pauli(12, np.random.default_rng(7))
        proj = _proj(str(p), 1)
        r12 = run_task(SimulationTask(t=12, n=12, projector=proj, mode="sampled",
                                      samples_override=5, seed=0, policy=(12,)))
        r66 = run_task(SimulationTask(t=12, n=12, projector=proj, mode="sampled",
                                      samples_override=5, seed=0, policy=(6,)))
        assert r12.term_count == 47 and r66.term_count == 49
        # kernel inner products per sample scale with the term count
        assert r12.inner_products_evaluated <= 5 * 47
        assert r66.inner_products_evaluated <= 5 * 49

    def test_validation(self):
        proj = PauliProjector(2, ())
        with pytest.raises(ValueError):
            SimulationTask(t=3, n=2, projector=proj)
        with pytest.raises(ValueError):
            SimulationTask(t=2, n=2, projector=proj, mode="sampled", epsilon=0)
        with pytest.raises(ValueError):
            SimulationTask(t=2, n=2, projector=proj, mode="fancy")

    def test_padded_qubits(self):
        # t=2 magic + 2 padding zeros, measure Z on a padded qubit
        proj = PauliProjector.single(PauliOperator.from_str("IIZI"), 1)
        res = run_task(SimulationTask(t=2, n=4, projector=proj, mode="exact"))
        assert res.value == pytest.approx(1.0)
