"""Brute-force dense reference: state vectors, Pauli action, projector
expectations.  Deliberately simple; this module is the ground truth the
fast paths are tested against.

Amplitude index convention: qubit 0 is the most significant bit of the
vector index (``gf2.revbits`` maps coordinate-packed labels to indices).
"""

from __future__ import annotations

import numpy as np

from .gf2 import revbits
from .pauli import PauliOperator, PauliProjector
from .phase_ring import ExactAmplitude, eighth_root

MAX_DENSE_QUBITS = 14


def _check_size(n: int) -> None:
    if n > MAX_DENSE_QUBITS:
        raise ValueError(f"dense path capped at {MAX_DENSE_QUBITS} qubits, got {n}")
    if n < 0:
        raise ValueError("negative qubit count")


def _popcounts(values: np.ndarray) -> np.ndarray:
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(values).astype(np.int64)
    return np.array([int(v).bit_count() for v in values], dtype=np.int64)


def dense_magic_state(t: int) -> np.ndarray:
    """|T>^{\\otimes t} as a complex vector of length 2^t."""
    _check_size(t)
    idx = np.arange(1 << t, dtype=np.int64)
    w = _popcounts(idx)
    zeta = np.exp(1j * np.pi / 4)
    return zeta ** w / np.sqrt(2.0) ** t


def dense_magic_state_exact(t: int) -> list[ExactAmplitude]:
    """Exact-ring variant of dense_magic_state (amplitude zeta^wt / sqrt2^t)."""
    _check_size(t)
    inv = ExactAmplitude(1, 0, 0, 0, t)
    return [eighth_root(int(x).bit_count()) * inv for x in range(1 << t)]


def apply_pauli(vec: np.ndarray, p: PauliOperator) -> np.ndarray:
    """P |vec> by direct permutation-with-phase application."""
    n = p.n
    if len(vec) != 1 << n:
        raise ValueError("state size mismatch")
    idx = np.arange(1 << n, dtype=np.int64)
    xm = revbits(p.x_mask, n)
    zm = revbits(p.z_mask, n)
    signs = 1 - 2 * (_popcounts(idx & zm) & 1)
    phase = (1j) ** ((p.omega_exp + p.delta.bit_count()) % 4)
    out = np.empty_like(vec)
    out[idx ^ xm] = phase * signs * vec
    return out


def dense_pauli_expect(vec: np.ndarray, p: PauliOperator) -> complex:
    """<vec| P |vec>."""
    return complex(np.vdot(vec, apply_pauli(vec, p)))


def apply_projector(vec: np.ndarray, proj: PauliProjector) -> np.ndarray:
    out = vec
    for p, sign in proj.factors:
        out = (out + sign * apply_pauli(out, p)) / 2.0
    return out


def dense_projector_expect(vec: np.ndarray, proj: PauliProjector) -> float:
    """<vec| prod (I + s_i P_i)/2 |vec>; imaginary part must be negligible."""
    val = complex(np.vdot(vec, apply_projector(vec, proj)))
    if abs(val.imag) > 1e-10:
        raise ValueError(f"projector expectation not real: {val}")
    return val.real
