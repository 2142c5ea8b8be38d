"""Closed-form Gauss-sum evaluation of single-Pauli magic-state expectations.

For T-counts 1, 2, 3, 6 and 12 the expectation <T^k| P |T^k> is a short sum
of quadratic Gauss sums gated by Kronecker deltas on the Pauli's per-qubit
indicator bits.  For a given P exactly one delta-gated family combination
is active; the sum ranges are arranged so that repeated Gauss sums are
folded into power-of-two multiplicities, which is what makes the worst-case
number of distinct sums (2, 2, 3, 7, 42) smaller than the naive tensor
count.  Larger T-counts factor into per-block evaluations since a single
Pauli cannot entangle tensored blocks.

Kronecker-delta arguments and sum ranges are evaluated modulo two: a range
[lo, hi] means {lo} when lo = hi (mod 2) and {0, 1} otherwise.  Every
evaluator here is validated against the dense oracle in the test suite.

Set ``TMAGIC_NO_NUMBA=1`` to force the pure-Python evaluation path; by
default bulk evaluation (census, benchmarks) runs through the compiled
kernels in ``_gauss_kernels``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .pauli import PauliOperator
from .phase_ring import ExactAmplitude, ONE, ZERO, eighth_root, i_power

SUPPORTED_BLOCKS = (1, 2, 3, 6, 12)

#: worst-case number of unique non-zero Gauss sums per block size,
#: reproduced exhaustively (k <= 6) / by sampling (k = 12) in rank_census
WORST_CASE_UNIQUE = {1: 2, 2: 2, 3: 3, 6: 7, 12: 42}

_TWO = ExactAmplitude(2)
_SQRT2 = ExactAmplitude(0, 1)


@dataclass(frozen=True)
class GaussSumTerm:
    """One evaluated Gauss sum: exact value times a power-of-two multiplicity."""

    dimension: int
    tag: tuple
    value: ExactAmplitude
    multiplicity: int


@dataclass(frozen=True)
class GaussSumReport:
    expectation: float
    unique_nonzero_sums: int
    terms: tuple[GaussSumTerm, ...]
    exact: ExactAmplitude = field(default=ZERO)

    @staticmethod
    def from_terms(k: int, terms: Sequence[GaussSumTerm]) -> "GaussSumReport":
        total = ZERO
        for t in terms:
            total = total + t.value.scale_int(t.multiplicity)
        exact = total * ExactAmplitude(1, 0, 0, 0, 2 * k)  # 1 / 2^k
        if not exact.is_real():
            raise AssertionError(f"non-real Gauss-sum expectation: {exact}")
        nonzero = sum(1 for t in terms if not t.value.is_zero())
        return GaussSumReport(exact.real_float(), nonzero, tuple(terms), exact)


def _mod2_range(lo: int, hi: int) -> tuple[int, ...]:
    return (lo & 1,) if (lo & 1) == (hi & 1) else (0, 1)


# ---------------------------------------------------------------------------
# direct Gauss-sum evaluation (cross-check primitive)
# ---------------------------------------------------------------------------

def gauss_sum_eval(a_matrix: Sequence[Sequence[int]], v: Sequence[int],
                   c: int, m: int = 1) -> ExactAmplitude:
    """G_m(A, v, c) = sum_x exp[(pi i / 2^m)(x A x^T + 2 v x^T + c)].

    Direct summation over 2^dim points; exact only for m <= 2 (eighth
    roots), dim capped at 24.
    """
    dim = len(v)
    if dim > 24:
        raise ValueError("direct Gauss-sum summation capped at dimension 24")
    if m not in (0, 1, 2):
        raise ValueError("exact arithmetic supports m in {0, 1, 2}")
    step = 2 ** (2 - m)  # exponent unit in zeta = e^{i pi/4} steps
    total = ZERO
    for bits in range(1 << dim):
        x = [(bits >> i) & 1 for i in range(dim)]
        q = c
        for i in range(dim):
            q += 2 * v[i] * x[i]
            for j in range(dim):
                q += a_matrix[i][j] * x[i] * x[j]
        total = total + eighth_root(step * q)
    return total


# ---------------------------------------------------------------------------
# per-block term enumeration
# ---------------------------------------------------------------------------

class _Block3:
    """One 3-qubit block of P: active family, term ranges, values, chaining."""

    def __init__(self, p: PauliOperator, offset: int, index: int):
        self.index = index
        (a1, b1, g1, d1) = p.site_bits(offset)
        (a2, b2, g2, d2) = p.site_bits(offset + 1)
        (a3, b3, g3, d3) = p.site_bits(offset + 2)
        self.p1 = (a1, b1, g1, d1)
        self.p2 = (a2, b2, g2, d2)
        self.p3 = (a3, b3, g3, d3)
        cls = (g1 + d1 + g2 + d2) & 1
        q3 = (g3 + d3) & 1
        if cls == 0:
            self.line = "A"
            self.family = "G2" if q3 else "G1"
        else:
            self.line = "C" if q3 else "B"
            self.family = "G4" if q3 else "G3"
        self.reducible = self.line in ("A", "C")

    # term tuples: (x, y, exponent_bit, link_bit, value)

    def terms(self, seed: int) -> list[tuple[int, int, int, int, ExactAmplitude]]:
        if self.line == "A":
            return self._terms_a(seed)
        if self.line == "B":
            return self._terms_b()
        return self._terms_c(seed)

    def _terms_a(self, seed):
        (_, b1, g1, d1) = self.p1
        (_, b2, g2, d2) = self.p2
        s = (g1 + d2) & 1
        t = (g1 + g2) & 1
        # parity of the x-coefficient in the phase at y = 0 / y = 1; a folded
        # row stands for the full two-point x-sum, which vanishes when the
        # parity is odd (for X/Y-class pairs it coincides with the range
        # bits s, t, so the gate only bites on Z-carrying identity-class rows)
        c0 = (b1 + b2 + g1 + d2) & 1
        c1 = (b1 + d1 + b2 + d2) & 1
        out = []
        for y in _mod2_range(s * seed, 1 + t * seed):
            upper = t if y else s
            if upper:
                for x in (0, 1):
                    out.append((x, y, 0, x, self._value_a(x, y)))
            else:
                gate = c1 if y else c0
                val = ZERO if gate else self._value_a(0, y)
                out.append((0, y, 1, 0, val))
        return out

    def _terms_b(self):
        (_, b3, g3, d3) = self.p3
        a3 = 1 - b3 - g3 - d3
        out = []
        for x in _mod2_range(0, 1 + b3):
            for y in _mod2_range(0, 1 + a3):
                out.append((x, y, 0, 0, self._value_g3(x, y)))
        return out

    def _terms_c(self, seed):
        (_, b1, g1, d1) = self.p1
        (_, b2, g2, d2) = self.p2
        out = []
        for y in _mod2_range(seed, 1):
            lo = (y * (d1 + d2) + seed) & 1
            hi = (1 + y * (g1 + g2) + seed) & 1
            for x in _mod2_range(lo, hi):
                e = 0 if y else (x * ((g1 + d2) & 1) + (1 - x) * ((g2 + d1) & 1))
                out.append((x, y, e, y, self._value_g4(x, y)))
        return out

    # -- family value functions (exact eighth-root arithmetic) --------------

    def _phase_a(self, x: int, y: int) -> int:
        (_, b1, g1, d1) = self.p1
        (_, b2, g2, d2) = self.p2
        yy = (y + 1) * (y + 1)
        return ((d2 - g1) * yy + 2 * (b1 + b2 + g1 + d2) * x * yy
                + 2 * (d1 + d2 + b1 + b2) * x * y + (2 * b1 + 3 * d1 + d2) * y)

    def _value_a(self, x: int, y: int) -> ExactAmplitude:
        (_, b3, g3, d3) = self.p3
        if self.family == "G1":
            # i^E * (1 + (-1)^{b3})
            if b3:
                return ZERO
            return i_power(self._phase_a(x, y)).scale_int(2)
        # G2: i^E * sqrt(-i) * (1 + i) = sqrt2 * i^E  (active when g3+d3 = 1)
        return i_power(self._phase_a(x, y)) * _SQRT2

    def _value_g3(self, x: int, y: int) -> ExactAmplitude:
        (_, b1, g1, d1) = self.p1
        (_, b2, g2, d2) = self.p2
        (_, b3, g3, d3) = self.p3
        e3 = 2 * b3 * y + (x + 1) * (x + 1) * (d1 + g2 + 2 * b2) + x * (d1 + d2)
        v3 = (b1 + b2 + d1 + (x + 1) * g2 + x * d2) & 1
        one_dim = ExactAmplitude(1, 0, -1 if v3 else 1, 0, 0)  # 1 +- i
        return eighth_root(7) * i_power(e3) * one_dim

    def _value_g4(self, x: int, y: int) -> ExactAmplitude:
        (_, b1, g1, d1) = self.p1
        (_, b2, g2, d2) = self.p2
        (_, b3, g3, d3) = self.p3
        e4 = (y * (d1 + d2) + (y + 1) * (y + 1) * (d1 + g2 + 2 * b2) + x * x
              + 2 * (b1 + b2 + d1 + g2 * (y + 1) + d2 * y) * x)
        v4 = (g3 + d3 + b1 + b2 + d1 + g2 * (y + 1) + d2 * y + x) & 1
        if v4:
            return ZERO
        return (eighth_root(6) * i_power(e4)).scale_int(2)


# ---------------------------------------------------------------------------
# block-group composition (the reduction chains)
# ---------------------------------------------------------------------------

def _group_blocks(blocks: list[_Block3]) -> list[list[_Block3]]:
    """Chain groups: pairs fuse when both halves are reducible; at four
    blocks two fused pairs fuse again into one chain of four."""
    r = len(blocks)
    if r == 1:
        return [[blocks[0]]]
    if r == 2:
        if blocks[0].reducible and blocks[1].reducible:
            return [[blocks[0], blocks[1]]]
        return [[blocks[0]], [blocks[1]]]
    assert r == 4
    halves = [_group_blocks(blocks[:2]), _group_blocks(blocks[2:])]
    if all(len(h) == 1 and len(h[0]) == 2 for h in halves):
        return [[*halves[0][0], *halves[1][0]]]
    return [*halves[0], *halves[1]]


def _enumerate_group(group: list[_Block3]
                     ) -> list[tuple[tuple, int, ExactAmplitude]]:
    """All (tag, log2-multiplicity, value) items of one chained group.

    A chain of r reducible blocks carries prefactor 2^(r-1) and a
    multiplicity exponent equal to the product of the per-block exponent
    bits; each block's ranges are seeded by the parity of the preceding
    link variables.  A singleton B block carries a constant prefactor 2.
    """
    if group[0].line == "B":
        blk = group[0]
        return [(((blk.index, blk.family, x, y),), 1, v)
                for (x, y, _, _, v) in blk.terms(0)]

    prefactor = len(group) - 1  # log2: one factor of 2 per chain link
    out: list[tuple[tuple, int, ExactAmplitude]] = []

    def rec(i: int, seed: int, tag: tuple, eprod: Optional[int],
            val: ExactAmplitude) -> None:
        if i == len(group):
            out.append((tag, prefactor + (eprod or 0), val))
            return
        blk = group[i]
        for (x, y, e, link, v) in blk.terms(seed):
            ne = e if eprod is None else eprod * e
            rec(i + 1, (seed + link) & 1,
                tag + ((blk.index, blk.family, x, y),), ne, val * v)

    rec(0, 0, (), None, ONE)
    return out


def expect_block(k: int, p: PauliOperator) -> GaussSumReport:
    """Gauss-sum expectation <T^k| P |T^k> for one supported block size."""
    if p.n != k:
        raise ValueError(f"Pauli acts on {p.n} qubits, block expects {k}")
    if p.omega_exp % 2:
        raise ValueError("block expectation needs a Hermitian Pauli (omega = +-1)")
    if k == 1:
        terms = _terms_k1(p)
    elif k == 2:
        terms = _terms_k2(p)
    elif k in (3, 6, 12):
        blocks = [_Block3(p, 3 * i, i) for i in range(k // 3)]
        groups = [_enumerate_group(g) for g in _group_blocks(blocks)]
        terms = []
        for combo in itertools.product(*groups):
            tag = sum((c[0] for c in combo), ())
            mult = 1 << sum(c[1] for c in combo)
            val = ONE
            for c in combo:
                val = val * c[2]
            terms.append(GaussSumTerm(k, tag, val, mult))
    else:
        raise ValueError(f"unsupported block size {k}")
    if p.omega_exp == 2:
        terms = [GaussSumTerm(t.dimension, t.tag, -t.value, t.multiplicity)
                 for t in terms]
    return GaussSumReport.from_terms(k, terms)


def expect_block_k1(p: PauliOperator) -> GaussSumReport:
    return expect_block(1, p)


def expect_block_k2(p: PauliOperator) -> GaussSumReport:
    return expect_block(2, p)


def expect_block_k3(p: PauliOperator) -> GaussSumReport:
    return expect_block(3, p)


def expect_block_k6(p: PauliOperator) -> GaussSumReport:
    return expect_block(6, p)


def expect_block_k12(p: PauliOperator) -> GaussSumReport:
    return expect_block(12, p)


def _terms_k1(p: PauliOperator) -> list[GaussSumTerm]:
    (_, b, g, d) = p.site_bits(0)
    if (g + d) % 2 == 0:
        vals = [ONE, i_power(2 * b)]
        fam = "diag"
    else:
        vals = [eighth_root(1) * i_power(3 * d), eighth_root(7) * i_power(d)]
        fam = "offdiag"
    return [GaussSumTerm(1, ((0, fam, i, 0),), v, 1) for i, v in enumerate(vals)]


def _terms_k2(p: PauliOperator) -> list[GaussSumTerm]:
    (_, b1, g1, d1) = p.site_bits(0)
    (_, b2, g2, d2) = p.site_bits(1)
    if (g1 + d1 + g2 + d2) % 2 == 0:
        v0 = i_power(d2 - g1) * _one_dim_even(b1 + b2 + g1 + d2)
        v1 = i_power(2 * (b1 + d1) + d1 + d2) * _one_dim_even(b1 + d1 + b2 + d2)
        fam = "diag"
    else:
        v0 = (eighth_root(1) * i_power(2 * (b2 + g2) + d1 - g2 + 3)
              * _one_dim_odd(b2 + g2 + b1 + d1))
        v1 = eighth_root(7) * i_power(d1 + d2) * _one_dim_odd(b1 + b2 + d1 + d2)
        fam = "offdiag"
    return [GaussSumTerm(2, ((0, fam, i, 0),), v, 1) for i, v in enumerate((v0, v1))]


def _one_dim_even(s: int) -> ExactAmplitude:
    """G_1(2s) = 1 + (-1)^s."""
    return _TWO if s % 2 == 0 else ZERO


def _one_dim_odd(v: int) -> ExactAmplitude:
    """G_1(1, v) = 1 + i (-1)^v."""
    return ExactAmplitude(1, 0, -1 if v % 2 else 1, 0, 0)


# ---------------------------------------------------------------------------
# multi-block evaluation and the rank census
# ---------------------------------------------------------------------------

def expect_single_pauli(t: int, p: PauliOperator,
                        policy: Sequence[int] = (12, 6, 3, 2, 1)
                        ) -> GaussSumReport:
    """<T^t| P |T^t> by per-block factorization over a block cover of t."""
    from .catalog import block_cover
    if p.n != t:
        raise ValueError("Pauli size must equal the T-count")
    blocks = block_cover(t, policy)
    for k in blocks:
        if k not in SUPPORTED_BLOCKS:
            raise ValueError(f"block size {k} has no Gauss-sum evaluator")
    exact = ONE
    unique = 1
    offset = 0
    expectation = 1.0
    all_terms: list[GaussSumTerm] = []
    for k in blocks:
        sub = PauliOperator(
            k,
            (p.beta >> offset) & ((1 << k) - 1),
            (p.gamma >> offset) & ((1 << k) - 1),
            (p.delta >> offset) & ((1 << k) - 1),
            0,
        )
        rep = expect_block(k, sub)
        expectation *= rep.expectation
        exact = exact * rep.exact
        unique *= rep.unique_nonzero_sums
        all_terms.extend(rep.terms)
        offset += k
    if p.omega_exp == 2:
        expectation, exact = -expectation, -exact
    elif p.omega_exp % 2:
        raise ValueError("expectation requires a Hermitian Pauli")
    return GaussSumReport(expectation, unique, tuple(all_terms), exact)


def rank_census(k: int, mode: str = "exhaustive", samples: int = 100_000,
                seed: int = 0, use_kernels: Optional[bool] = None
                ) -> tuple[int, dict[int, int]]:
    """Worst case and histogram of unique non-zero Gauss sums over Paulis.

    ``mode='exhaustive'`` sweeps all 4^k Paulis (k <= 6 only);
    ``mode='sampled'`` draws uniformly with a seeded generator.
    """
    if k not in SUPPORTED_BLOCKS:
        raise ValueError(f"unsupported block size {k}")
    if mode == "exhaustive" and k > 6:
        raise ValueError("exhaustive census is limited to block sizes <= 6")
    if mode not in ("exhaustive", "sampled"):
        raise ValueError(f"unknown census mode {mode!r}")

    from . import _gauss_kernels as gk
    if use_kernels is None:
        use_kernels = gk.kernels_enabled()
    if use_kernels:
        return gk.census(k, mode, samples, seed)

    histogram: dict[int, int] = {}
    if mode == "exhaustive":
        paulis: Iterable[PauliOperator] = _all_paulis(k)
    else:
        rows = gk.sample_letters(k, samples, seed)
        paulis = (letters_to_pauli(row) for row in rows)
    for p in paulis:
        u = expect_block(k, p).unique_nonzero_sums
        histogram[u] = histogram.get(u, 0) + 1
    return max(histogram), dict(sorted(histogram.items()))


def letters_to_pauli(letters: Sequence[int]) -> PauliOperator:
    """Letters 0/1/2/3 = I/Z/X/Y to a phase-free PauliOperator."""
    beta = gamma = delta = 0
    for q, v in enumerate(letters):
        v = int(v)
        if v == 1:
            beta |= 1 << q
        elif v == 2:
            gamma |= 1 << q
        elif v == 3:
            delta |= 1 << q
    return PauliOperator(len(letters), beta, gamma, delta, 0)


def pauli_to_letters(p: PauliOperator) -> np.ndarray:
    out = np.zeros(p.n, dtype=np.int64)
    for q in range(p.n):
        out[q] = {"I": 0, "Z": 1, "X": 2, "Y": 3}[p.letter(q)]
    return out


def _all_paulis(k: int) -> Iterable[PauliOperator]:
    for letters in itertools.product(range(4), repeat=k):
        yield letters_to_pauli(letters)
