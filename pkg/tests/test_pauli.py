"""Pauli algebra: basis action, commutation, parsing, dense equivalence."""

import itertools

import numpy as np
import pytest

from tmagic.gf2 import revbits
from tmagic.pauli import (PauliOperator, PauliProjector, commute,
                          pauli_on_basis, random_pauli)

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1, -1]).astype(complex)
MATS = {"I": I2, "X": X, "Y": Y, "Z": Z}


def kron_matrix(p: PauliOperator) -> np.ndarray:
    m = np.array([[1.0 + 0j]])
    for q in range(p.n):
        m = np.kron(m, MATS[p.letter(q)])
    return (1j) ** p.omega_exp * m


def matrix_from_basis_action(p: PauliOperator) -> np.ndarray:
    n = p.n
    m = np.zeros((1 << n, 1 << n), dtype=complex)
    for x in range(1 << n):
        y, phase = pauli_on_basis(p, x)
        m[revbits(y, n), revbits(x, n)] = phase.to_amplitude().to_float()
    return m


class TestPauliOnBasis:
    def test_x_flips(self):
        y, ph = pauli_on_basis(PauliOperator.from_str("X"), 0)
        assert y == 1 and ph.to_amplitude().to_float() == 1

    def test_z_eigenphase(self):
        y, ph = pauli_on_basis(PauliOperator.from_str("Z"), 1)
        assert y == 1 and ph.to_amplitude().to_float() == -1

    def test_yz_on_01(self):
        # Y x Z acting on |01>: phase i * (-1) = -i, lands on |11>
        p = PauliOperator.from_str("YZ")
        x = 0b10  # qubit0=0, qubit1=1
        y, ph = pauli_on_basis(p, x)
        assert y == 0b11
        assert ph.to_amplitude().to_float() == pytest.approx(-1j)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_dense_matrix_equals_kronecker(self, n):
        for letters in itertools.product("IZXY", repeat=n):
            p = PauliOperator.from_str("".join(letters))
            assert np.array_equal(matrix_from_basis_action(p), kron_matrix(p))

    def test_squares_to_omega_squared(self):
        rng = np.random.default_rng(0)
        for _ in range(200):
            n = int(rng.integers(1, 6))
            p = PauliOperator(n, *_random_masks(rng, n), int(rng.integers(0, 4)))
            for x in range(1 << n):
                y1, ph1 = pauli_on_basis(p, x)
                y2, ph2 = pauli_on_basis(p, y1)
                assert y2 == x
                total = (ph1 * ph2).k % 8
                assert total == (4 * p.omega_exp) % 8  # (i^w)^2 = (-1)^w


def _random_masks(rng, n):
    beta = gamma = delta = 0
    for q in range(n):
        v = int(rng.integers(0, 4))
        if v == 1:
            beta |= 1 << q
        elif v == 2:
            gamma |= 1 << q
        elif v == 3:
            delta |= 1 << q
    return beta, gamma, delta


class TestCommute:
    def test_same_pauli(self):
        assert commute(PauliOperator.from_str("X"), PauliOperator.from_str("X"))

    def test_x_z_anticommute(self):
        assert not commute(PauliOperator.from_str("X"), PauliOperator.from_str("Z"))

    def test_xx_zz_commute(self):
        assert commute(PauliOperator.from_str("XX"), PauliOperator.from_str("ZZ"))

    def test_against_dense_commutator(self):
        for la in itertools.product("IZXY", repeat=2):
            for lb in itertools.product("IZXY", repeat=2):
                pa = PauliOperator.from_str("".join(la))
                pb = PauliOperator.from_str("".join(lb))
                ma, mb = kron_matrix(pa), kron_matrix(pb)
                dense_commutes = np.allclose(ma @ mb, mb @ ma)
                assert commute(pa, pb) == dense_commutes


class TestRandomPauli:
    def test_single_qubit_uniform(self):
        rng = np.random.default_rng(42)
        n_draws = 100_000
        counts = {s: 0 for s in "IZXY"}
        for _ in range(n_draws):
            counts[random_pauli(1, rng).letter(0)] += 1
        expect = n_draws / 4
        sigma = (n_draws * 0.25 * 0.75) ** 0.5
        for v in counts.values():
            assert abs(v - expect) < 4 * sigma

    def test_reproducible(self):
        a = random_pauli(5, np.random.default_rng(7))
        b = random_pauli(5, np.random.default_rng(7))
        assert a == b

    def test_all_64_three_qubit_paulis_seen(self):
        rng = np.random.default_rng(1)
        seen = {str(random_pauli(3, rng)) for _ in range(10_000)}
        assert len(seen) == 64


class TestText:
    def test_roundtrip(self):
        for s in ("XYZI", "-i:XYZI", "-1:ZZ", "+i:Y"):
            p = PauliOperator.from_str(s)
            assert PauliOperator.from_str(str(p)) == p

    def test_invalid_letter_reports_position(self):
        with pytest.raises(ValueError, match="position 2"):
            PauliOperator.from_str("XYQZ")

    def test_invalid_phase_token(self):
        with pytest.raises(ValueError, match="phase token"):
            PauliOperator.from_str("j:XX")


class TestProjector:
    def test_rejects_non_commuting(self):
        with pytest.raises(ValueError, match="do not commute"):
            PauliProjector(2, ((PauliOperator.from_str("XI"), 1),
                               (PauliOperator.from_str("ZI"), 1)))

    def test_rejects_too_many_factors(self):
        p = PauliOperator.from_str("Z")
        with pytest.raises(ValueError, match="more projector factors"):
            PauliProjector(1, ((p, 1), (p, 1)))

    def test_rejects_bad_sign(self):
        with pytest.raises(ValueError, match="signs"):
            PauliProjector(1, ((PauliOperator.from_str("Z"), 2),))

    def test_rejects_non_hermitian_factor(self):
        with pytest.raises(ValueError, match="Hermitian"):
            PauliProjector(1, ((PauliOperator.from_str("+i:Z"), 1),))
