"""Quadratic-form stabilizer states and the O(n^3) kernel routines.

A state is stored as

    |s> = scale * sum_{u in F_2^m} zeta^{phi(u)} |G u + h>,
    phi(u) = c + sum_a D_a u_a + sum_{a<b} 4 B_ab u_a u_b   (mod 8),

with zeta = exp(i pi/4), direction columns G (bit-packed, full column rank),
shift h, linear data D (even entries mod 8) and GF(2) cross data B (J = 4B
in the mod-8 picture).

All D entries stay even and all cross terms stay in {0, 4}: those are the
only phases the kernel updates can produce, and the restriction is what
keeps the exponential-sum elimination at O(m^3).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .gf2 import AffineSpace, parity, revbits, solve_columns
from .pauli import PauliOperator
from .phase_ring import ExactAmplitude, ONE, ZERO, eighth_root, i_power


@dataclass(frozen=True)
class StabilizerState:
    n: int
    basis: tuple[int, ...]
    shift: int
    bmat: tuple[int, ...]  # symmetric GF(2) cross data, bit b of bmat[a] = B_ab
    dvec: tuple[int, ...]  # linear phase data, even entries mod 8
    c: int                 # constant phase exponent, mod 8
    scale: ExactAmplitude

    def __post_init__(self) -> None:
        m = len(self.basis)
        assert len(self.bmat) == m and len(self.dvec) == m
        assert all(d % 2 == 0 for d in self.dvec)
        assert all(((self.bmat[a] >> a) & 1) == 0 for a in range(m))

    @property
    def m(self) -> int:
        return len(self.basis)

    @staticmethod
    def computational(n: int, x: int = 0) -> "StabilizerState":
        """|x> for a bit-packed basis label x (coordinate order)."""
        return StabilizerState(n, (), x, (), (), 0, ONE)

    @staticmethod
    def plus_state(n: int) -> "StabilizerState":
        """|+>^n."""
        return StabilizerState(n, tuple(1 << q for q in range(n)), 0,
                               (0,) * n, (0,) * n, 0,
                               ExactAmplitude(1, 0, 0, 0, n))

    def space(self) -> AffineSpace:
        return AffineSpace.create(self.n, self.basis, self.shift)

    def phase_exponent(self, u: int) -> int:
        """phi(u) mod 8 for a bit-packed parameter vector u."""
        e = self.c
        for a in range(self.m):
            if (u >> a) & 1:
                e += self.dvec[a]
                e += 4 * ((self.bmat[a] >> (a + 1)) & (u >> (a + 1))).bit_count()
        return e % 8

    def point(self, u: int) -> int:
        x = self.shift
        for a in range(self.m):
            if (u >> a) & 1:
                x ^= self.basis[a]
        return x

    def norm_sq(self) -> ExactAmplitude:
        """<s|s> exactly."""
        return self.scale.norm_sq().scale_int(1 << self.m)

    def to_dense_exact(self) -> list[ExactAmplitude]:
        if self.n > 14:
            raise ValueError("dense conversion capped at 14 qubits")
        vec = [ZERO] * (1 << self.n)
        for u in range(1 << self.m):
            idx = revbits(self.point(u), self.n)
            vec[idx] = vec[idx] + self.scale * eighth_root(self.phase_exponent(u))
        return vec

    def to_dense(self) -> np.ndarray:
        return np.array([a.to_float() for a in self.to_dense_exact()],
                        dtype=np.complex128)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


# ---------------------------------------------------------------------------
# mutable working copy of the phase data
# ---------------------------------------------------------------------------

class _Form:
    """Mutable (basis, shift, B, D, c) bundle shared by the kernel routines."""

    def __init__(self, s: StabilizerState):
        self.n = s.n
        self.basis = list(s.basis)
        self.shift = s.shift
        self.b = list(s.bmat)
        self.d = list(s.dvec)
        self.c = s.c

    def freeze(self, scale: ExactAmplitude) -> StabilizerState:
        return StabilizerState(self.n, tuple(self.basis), self.shift,
                               tuple(self.b), tuple(self.d), self.c % 8, scale)

    def transvect(self, p: int, q: int) -> None:
        """Substitute old u_p = new u_p xor u_q in the phase form."""
        bpq = (self.b[p] >> q) & 1
        self.d[q] = (self.d[q] + self.d[p] + 4 * bpq) % 8
        if (self.d[p] >> 1) & 1:
            self.b[p] ^= 1 << q
            self.b[q] ^= 1 << p
        rest = self.b[p] & ~((1 << p) | (1 << q))
        self.b[q] ^= rest
        for z in _bits(rest):
            self.b[z] ^= 1 << q

    def add_phase_xor(self, t: int, mask: int) -> None:
        """Add t * (xor of the variables in mask) to phi; t must be even."""
        assert t % 2 == 0
        idxs = _bits(mask)
        for a in idxs:
            self.d[a] = (self.d[a] + t) % 8
        if (t >> 1) & 1:
            for i, a in enumerate(idxs):
                for b2 in idxs[i + 1:]:
                    self.b[a] ^= 1 << b2
                    self.b[b2] ^= 1 << a

    def fix_var(self, p: int, eps: int) -> None:
        """Pin u_p = eps, fold its phase into the rest, delete column p."""
        if eps:
            self.c = (self.c + self.d[p]) % 8
            for z in _bits(self.b[p]):
                self.d[z] = (self.d[z] + 4) % 8
            self.shift ^= self.basis[p]
        del self.d[p]
        del self.basis[p]
        keep_low = (1 << p) - 1
        del self.b[p]
        self.b = [(r & keep_low) | ((r >> (p + 1)) << p) for r in self.b]


# ---------------------------------------------------------------------------
# EXPONENTIALSUM
# ---------------------------------------------------------------------------

def exponential_sum(s: StabilizerState) -> ExactAmplitude:
    """scale * sum_u zeta^{phi(u)} via O(m^3) quadratic-form elimination.

    Result is always 0 or 2^{j/2} times an eighth root of unity, times scale.
    """
    acc = s.scale * eighth_root(s.c)
    # quarter-phase picture: sigma = (phi - c)/2 with d4 over Z_4, b over GF(2)
    d4 = [d // 2 for d in s.dvec]
    b = list(s.bmat)
    active = _bits((1 << s.m) - 1)
    act_mask = (1 << s.m) - 1

    while active:
        a = active[0]
        nmask = b[a] & act_mask & ~(1 << a)
        if nmask == 0:
            if d4[a] == 2:
                return ZERO
            acc = acc * _one_plus_ipow(d4[a])
            active.pop(0)
            act_mask ^= 1 << a
            continue
        bv = (nmask & -nmask).bit_length() - 1
        for x in _bits(nmask & ~(1 << bv)):
            _transvect4(d4, b, bv, x)
        if d4[a] % 2 == 0:
            acc = acc.scale_int(2)
            if d4[a] == 2:  # u_bv pinned to 1
                acc = acc * i_power(d4[bv])
                for z in _bits(b[bv] & act_mask & ~(1 << a) & ~(1 << bv)):
                    d4[z] = (d4[z] + 2) % 4
            active.remove(a)
            active.remove(bv)
            act_mask ^= (1 << a) | (1 << bv)
        else:
            acc = acc * _one_plus_ipow(d4[a])
            d4[bv] = (d4[bv] + 4 - d4[a]) % 4
            active.pop(0)
            act_mask ^= 1 << a
    return acc


def _transvect4(d4: list[int], b: list[int], p: int, q: int) -> None:
    """The _Form.transvect update in the quarter-phase picture."""
    bpq = (b[p] >> q) & 1
    d4[q] = (d4[q] + d4[p] + 2 * bpq) % 4
    if d4[p] & 1:
        b[p] ^= 1 << q
        b[q] ^= 1 << p
    rest = b[p] & ~((1 << p) | (1 << q))
    b[q] ^= rest
    for z in _bits(rest):
        b[z] ^= 1 << q


def _one_plus_ipow(k: int) -> ExactAmplitude:
    return {0: ExactAmplitude(2), 1: ExactAmplitude(1, 0, 1, 0, 0),
            2: ZERO, 3: ExactAmplitude(1, 0, -1, 0, 0)}[k % 4]


# ---------------------------------------------------------------------------
# SHRINK / EXTEND
# ---------------------------------------------------------------------------

def shrink(s: StabilizerState, xi: int, bit: int) -> Optional[StabilizerState]:
    """Restrict support to {x : xi . x = bit}.

    Returns the restricted state, ``s`` itself when the constraint already
    holds on the whole space, or None when the support vanishes.
    """
    t = [j for j in range(s.m) if parity(xi & s.basis[j])]
    t0 = parity(xi & s.shift)
    if not t:
        return s if t0 == bit else None
    return _shrink_vars(s, t, bit ^ t0)


def _shrink_param(s: StabilizerState, umask: int, bit: int
                  ) -> Optional[StabilizerState]:
    """Shrink by a GF(2) constraint on the parameter bits u directly."""
    t = _bits(umask)
    if not t:
        return s if bit == 0 else None
    return _shrink_vars(s, t, bit)


def _shrink_vars(s: StabilizerState, t: list[int], eps: int) -> StabilizerState:
    f = _Form(s)
    p = t[-1]
    for j in t[:-1]:
        f.basis[j] ^= f.basis[p]
        f.transvect(p, j)
    f.fix_var(p, eps)
    return f.freeze(s.scale)


def extend(s: StabilizerState, direction: int) -> StabilizerState:
    """Add a support direction with uniform phase; errors if already spanned."""
    direction &= (1 << s.n) - 1
    if direction == 0 or AffineSpace.create(s.n, s.basis, 0).contains(direction):
        raise ValueError("extension direction already in the span")
    return StabilizerState(s.n, s.basis + (direction,), s.shift,
                           s.bmat + (0,), s.dvec + (0,), s.c, s.scale)


# ---------------------------------------------------------------------------
# INNERPRODUCT
# ---------------------------------------------------------------------------

def inner_product(sa: StabilizerState, sb: StabilizerState) -> ExactAmplitude:
    """Exact <a|b> via the common affine support and one exponential sum."""
    if sa.n != sb.n:
        raise ValueError("qubit count mismatch")
    sol = solve_columns(list(sa.basis) + list(sb.basis),
                        sa.shift ^ sb.shift, sa.n)
    if sol is None:
        return ZERO
    part, null = sol
    ma = len(sa.basis)
    r = len(null)

    def wmask_rows(offset: int, count: int) -> list[int]:
        # rows[a] = bit-mask of the w-parameters feeding state variable a
        return [sum(((null[k] >> (offset + a)) & 1) << k for k in range(r))
                for a in range(count)]

    acc = _Pullback(r)
    acc.add_form(sb, part >> ma, wmask_rows(ma, sb.m), conjugate=False)
    acc.add_form(sa, part & ((1 << ma) - 1), wmask_rows(0, sa.m), conjugate=True)
    inter = StabilizerState(max(r, 1), tuple(1 << i for i in range(r)), 0,
                            tuple(acc.b), tuple(acc.d), acc.c % 8, ONE)
    return sa.scale.conj() * sb.scale * exponential_sum(inter)


class _Pullback:
    """Accumulates a Z_8 even form on r variables from affine substitutions."""

    def __init__(self, r: int):
        self.r = r
        self.c = 0
        self.d = [0] * r
        self.b = [0] * r

    def _add_xor(self, t: int, mask: int) -> None:
        t %= 8
        if t == 0 or mask == 0:
            return
        idxs = _bits(mask)
        for a in idxs:
            self.d[a] = (self.d[a] + t) % 8
        if (t >> 1) & 1:
            for i, a in enumerate(idxs):
                for b2 in idxs[i + 1:]:
                    self.b[a] ^= 1 << b2
                    self.b[b2] ^= 1 << a

    def add_form(self, s: StabilizerState, base: int, rows: list[int],
                 conjugate: bool) -> None:
        """Add s's phase form composed with u_a = base_a xor (rows[a] . w).

        ``conjugate`` negates the form (bra side).
        """
        sgn = -1 if conjugate else 1
        self.c = (self.c + sgn * s.c) % 8
        for a in range(s.m):
            t = (sgn * s.dvec[a]) % 8
            la = rows[a]
            if (base >> a) & 1:
                self.c = (self.c + t) % 8
                t = (-t) % 8
            self._add_xor(t, la)
        for a in range(s.m):
            for b2 in _bits(s.bmat[a] >> (a + 1)):
                b2 += a + 1
                la, lb = rows[a], rows[b2]
                ba, bb = (base >> a) & 1, (base >> b2) & 1
                # 4 * (ba xor La(w)) * (bb xor Lb(w)); the sign of 4 is moot mod 8
                if ba and bb:
                    self.c = (self.c + 4) % 8
                if ba:
                    self._add_xor(4, lb)
                if bb:
                    self._add_xor(4, la)
                for i in _bits(la):
                    for j in _bits(lb):
                        if i == j:
                            self.d[i] = (self.d[i] + 4) % 8
                        else:
                            self.b[i] ^= 1 << j
                            self.b[j] ^= 1 << i


def apply_pauli_state(s: StabilizerState, p: PauliOperator) -> StabilizerState:
    """P|s> exactly: coset shift plus linear phase updates."""
    if p.n != s.n:
        raise ValueError("qubit count mismatch")
    f = _Form(s)
    zm = p.z_mask
    for j in range(s.m):
        if parity(zm & s.basis[j]):
            f.d[j] = (f.d[j] + 4) % 8
    f.c = (f.c + 4 * parity(zm & s.shift)) % 8
    f.shift ^= p.x_mask
    phase = eighth_root(2 * p.omega_exp + 2 * (p.delta.bit_count() % 4))
    return f.freeze(s.scale * phase)


# ---------------------------------------------------------------------------
# MEASUREPAULI
# ---------------------------------------------------------------------------

def measure_pauli(s: StabilizerState, p: PauliOperator, sign: int
                  ) -> tuple[Optional[StabilizerState], ExactAmplitude]:
    """((I + sign P)/2)|s> in stabilizer form plus <s|(I + sign P)/2|s>.

    Returns (None, 0) when the projection annihilates the state.
    """
    if p.n != s.n:
        raise ValueError("qubit count mismatch")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    delta = p.x_mask
    zm = p.z_mask
    half = ExactAmplitude(1, 0, 0, 0, 2)
    base_exp = (0 if sign == 1 else 4) + 2 * p.omega_exp + 2 * (p.delta.bit_count() % 4)

    sol = solve_columns(list(s.basis), delta, s.n)
    if sol is None:
        # support shifts off itself: extend by the flip direction
        f = _Form(s)
        f.basis.append(delta)
        newrow = 0
        m = s.m
        for j in range(m):
            if parity(zm & s.basis[j]):
                newrow |= 1 << j
                f.b[j] |= 1 << m
        f.b.append(newrow)
        f.d.append((base_exp + 4 * parity(zm & s.shift)) % 8)
        out = f.freeze(s.scale * half)
        return out, s.norm_sq() * half

    delta_u = sol[0]
    # phase ratio r(u) = zeta^{rho0} * (-1)^{mu(u)} between sign*P|s> and |s>
    rho0 = base_exp + 4 * parity(zm & (s.shift ^ delta))
    mu = 0
    for a in range(s.m):
        bit = parity(zm & s.basis[a]) ^ parity(s.bmat[a] & delta_u)
        if (delta_u >> a) & 1:
            bit ^= (s.dvec[a] >> 1) & 1
        mu |= bit << a
    for a in _bits(delta_u):
        rho0 += s.dvec[a]
    for a in _bits(delta_u):
        rho0 += 4 * ((s.bmat[a] >> (a + 1)) & (delta_u >> (a + 1))).bit_count()
    rho0 %= 8
    assert rho0 % 2 == 0

    if mu == 0:
        if rho0 == 0:
            return s, s.norm_sq()
        if rho0 == 4:
            return None, ZERO
        raise AssertionError("non-Hermitian phase ratio for a Pauli projection")
    if rho0 in (0, 4):
        out = _shrink_param(s, mu, rho0 // 4)
        return out, s.norm_sq() * half
    # rho0 in {2, 6}: quarter-phase rotation across the mu character
    rho = rho0 // 2  # 1 or 3
    f = _Form(s)
    f.add_phase_xor((2 * (4 - rho)) % 8, mu)
    out = f.freeze(s.scale * _one_plus_ipow(rho) * half)
    return out, s.norm_sq() * half


# ---------------------------------------------------------------------------
# RANDOMSTABILIZERSTATE
# ---------------------------------------------------------------------------

def _gaussian_binomial(n: int, m: int) -> int:
    num = den = 1
    for j in range(m):
        num *= (1 << (n - j)) - 1
        den *= (1 << (m - j)) - 1
    return num // den


def stabilizer_state_count(n: int) -> int:
    """|S(n)| = 2^n prod_{j=1}^n (2^j + 1)."""
    total = 1 << n
    for j in range(1, n + 1):
        total *= (1 << j) + 1
    return total


def _dimension_weights(n: int) -> list[int]:
    """Number of stabilizer states with affine support dimension m."""
    return [_gaussian_binomial(n, m) * (1 << (n - m)) * (1 << (m * (m + 3) // 2))
            for m in range(n + 1)]


def _randbelow(rng: np.random.Generator, bound: int) -> int:
    """Exact uniform integer in [0, bound) for arbitrary-size bounds."""
    if bound <= (1 << 62):
        return int(rng.integers(0, bound))
    k = (bound - 1).bit_length()
    nbytes = (k + 7) // 8
    while True:
        v = int.from_bytes(rng.bytes(nbytes), "little") & ((1 << k) - 1)
        if v < bound:
            return v


def random_stabilizer_state(n: int, rng: np.random.Generator) -> StabilizerState:
    """Uniformly random n-qubit stabilizer state (up to global phase)."""
    if n < 1:
        raise ValueError("need at least one qubit")
    weights = _dimension_weights(n)
    total = sum(weights)
    r = _randbelow(rng, total)
    m = 0
    while r >= weights[m]:
        r -= weights[m]
        m += 1
    # uniform rank-m direction matrix by rejection
    from .gf2 import rank_of
    while True:
        cols = [_randbelow(rng, 1 << n) for _ in range(m)]
        if rank_of(cols) == m:
            break
    h = _randbelow(rng, 1 << n)
    dvec = tuple(2 * _randbelow(rng, 4) for _ in range(m))
    brows = [0] * m
    for a in range(m):
        for b2 in range(a + 1, m):
            if _randbelow(rng, 2):
                brows[a] |= 1 << b2
                brows[b2] |= 1 << a
    return StabilizerState(n, tuple(cols), h, tuple(brows), dvec, 0,
                           ExactAmplitude(1, 0, 0, 0, m))
