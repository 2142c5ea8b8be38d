"""Exact stabilizer decompositions of tensored T-gate magic states.

The catalog holds the minimal known decompositions at T-counts 1, 2, 3, 6
and 12 (2, 2, 3, 7 and 47 terms), plus tensor composition, zero-padding and
a greedy block cover for arbitrary T-counts.  Coefficients and phase data
are pinned by one requirement: each entry must reconstruct its dense
Kronecker target in exact ring arithmetic, which the test suite enforces
amplitude by amplitude.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .phase_ring import ExactAmplitude, ZERO, eighth_root
from .stabilizer import StabilizerState
from .gf2 import to_str, from_str

DEFAULT_POLICY = (12, 6, 3, 2, 1)


@dataclass(frozen=True)
class MagicDecomposition:
    """|T>^{otimes k} = sum_j coeff_j |state_j> with exact coefficients."""

    k: int
    terms: tuple[tuple[ExactAmplitude, StabilizerState], ...]

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def n(self) -> int:
        return self.terms[0][1].n if self.terms else self.k

    def reconstruct_dense_exact(self) -> list[ExactAmplitude]:
        vec = [ZERO] * (1 << self.n)
        for coeff, state in self.terms:
            for idx, amp in enumerate(state.to_dense_exact()):
                if not amp.is_zero():
                    vec[idx] = vec[idx] + coeff * amp
        return vec

    def norm_sq_via_inner_products(self) -> ExactAmplitude:
        """sum_{j,l} conj(c_j) c_l <s_j|s_l> using only the stabilizer kernel."""
        from .stabilizer import inner_product
        total = ZERO
        for cj, sj in self.terms:
            for cl, sl in self.terms:
                total = total + cj.conj() * cl * inner_product(sj, sl)
        return total


# ---------------------------------------------------------------------------
# small T-counts
# ---------------------------------------------------------------------------

_INV_SQRT2 = ExactAmplitude(1, 0, 0, 0, 1)


def t1_decomposition() -> MagicDecomposition:
    """|T> = (|0> + zeta |1>)/sqrt2 as two computational-basis terms."""
    return MagicDecomposition(1, (
        (_INV_SQRT2, StabilizerState.computational(1, 0)),
        (_INV_SQRT2 * eighth_root(1), StabilizerState.computational(1, 1)),
    ))


def t2_decomposition() -> MagicDecomposition:
    """|T>^2 = (|phi1> + zeta |phi2>)/sqrt2 with the two-qubit pair states."""
    phi1 = StabilizerState(2, (0b11,), 0, (0,), (2,), 0, _INV_SQRT2)
    phi2 = StabilizerState(2, (0b11,), 0b01, (0,), (0,), 0, _INV_SQRT2)
    return MagicDecomposition(2, (
        (_INV_SQRT2, phi1),
        (_INV_SQRT2 * eighth_root(1), phi2),
    ))


def t3_decomposition() -> MagicDecomposition:
    """Three-term decomposition saturating the T-count-3 stabilizer rank."""
    quarter = ExactAmplitude(1, 0, 0, 0, 4)
    one_m_i = ExactAmplitude(1, 0, -1, 0, 0)
    one_p_i = ExactAmplitude(1, 0, 1, 0, 0)
    c1 = -(one_m_i * ExactAmplitude(-1, 1, -1, 0, 0) * quarter * eighth_root(7))
    c2 = -(one_p_i * ExactAmplitude(1, 1, -1, 0, 0) * quarter * eighth_root(1))
    c3 = -(one_p_i * ExactAmplitude(-1, 1, 1, 0, 0) * quarter * eighth_root(1))
    # psi1 = (|011> + i|100>)/sqrt2  (leftmost character = qubit 0)
    psi1 = StabilizerState(3, (0b111,), from_str("011"), (0,), (2,), 0, _INV_SQRT2)
    scale8 = ExactAmplitude(1, 0, 0, 0, 3)
    # psi2: i^(1 + x2 + x3) pattern on the full cube
    psi2 = StabilizerState(3, (1, 2, 4), 0, (0, 0, 0), (0, 2, 2), 2, scale8)
    # psi3: full cube with all three (-1)^{x_a x_b} couplings
    psi3 = StabilizerState(3, (1, 2, 4), 0, (0b110, 0b101, 0b011),
                           (0, 6, 6), 2, scale8)
    return MagicDecomposition(3, ((c1, psi1), (c2, psi2), (c3, psi3)))


# ---------------------------------------------------------------------------
# six- and twelve-qubit entries
# ---------------------------------------------------------------------------

def _complete_graph(m: int) -> tuple[int, ...]:
    full = (1 << m) - 1
    return tuple(full & ~(1 << a) for a in range(m))


def _pairs_to_bmat(m: int, pairs: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    rows = [0] * m
    for a, b in pairs:
        rows[a] |= 1 << b
        rows[b] |= 1 << a
    return tuple(rows)


_ZETA3 = eighth_root(3)


def _t6_states() -> dict[str, StabilizerState]:
    """The seven states: two full-cube states, four half-cube quadratic-form
    states on span{e0+e_i}, and one two-point cat-like state."""
    cols = tuple(1 | (1 << i) for i in range(1, 6))  # column i = e0 + e_i
    s32 = ExactAmplitude(1, 0, 0, 0, 5)              # 2^{-5/2}
    kgraph = _complete_graph(5)
    zero5 = (0,) * 5
    four5 = (4,) * 5
    return {
        "b60": StabilizerState(6, tuple(1 << q for q in range(6)), 0,
                               (0,) * 6, (0,) * 6, 0, ExactAmplitude(1, 0, 0, 0, 6)),
        "b66": StabilizerState(6, tuple(1 << q for q in range(6)), 0,
                               (0,) * 6, (4,) * 6, 4, ExactAmplitude(1, 0, 0, 0, 6)),
        "e6": StabilizerState(6, cols, 1, kgraph, zero5, 4, s32),
        "o6": StabilizerState(6, cols, 0, kgraph, four5, 4, s32),
        "k6": StabilizerState(6, (0b111111,), 0b111111, (0,), (2,), 6,
                              ExactAmplitude(1, 0, 0, 0, 1)),
        "phi1": StabilizerState(6, cols, 1, _pairs_to_bmat(
            5, [(0, 1), (0, 4), (1, 2), (2, 3), (3, 4)]), zero5, 0, s32),
        "phi2": StabilizerState(6, cols, 1, _pairs_to_bmat(
            5, [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]), zero5, 0, s32),
    }


def _t6_coefficients() -> dict[str, ExactAmplitude]:
    # the unique solution of sum_j c_j |state_j> = |T>^{x6}; the states are
    # linearly independent, so exact dense reconstruction pins every value
    return {
        "b60": ExactAmplitude(1, 1, 0, 0, 4) * _ZETA3,
        "b66": ExactAmplitude(-1, 1, 0, 0, 4) * eighth_root(7),
        "e6": ExactAmplitude(1, 0, 0, 0, 3) * _ZETA3,
        "o6": ExactAmplitude(1, 0, 0, 0, 2) * eighth_root(1),
        "k6": ExactAmplitude(1, 0, 0, 0, 3),
        "phi1": ExactAmplitude(1, 0, 0, 0, 3) * eighth_root(1),
        "phi2": ExactAmplitude(1, 0, 0, 0, 3) * eighth_root(1),
    }


_T6_ORDER = ("b60", "b66", "e6", "o6", "k6", "phi1", "phi2")


def t6_decomposition() -> MagicDecomposition:
    states = _t6_states()
    coeffs = _t6_coefficients()
    return MagicDecomposition(6, tuple(
        (coeffs[name], states[name]) for name in _T6_ORDER))


def _tensor_states(a: StabilizerState, b: StabilizerState) -> StabilizerState:
    na = a.n
    basis = a.basis + tuple(col << na for col in b.basis)
    ma = a.m
    bmat = a.bmat + tuple(row << ma for row in b.bmat)
    return StabilizerState(na + b.n, basis, a.shift | (b.shift << na),
                           bmat, a.dvec + b.dvec, (a.c + b.c) % 8,
                           a.scale * b.scale)


def tensor(a: MagicDecomposition, b: MagicDecomposition) -> MagicDecomposition:
    terms = tuple((ca * cb, _tensor_states(sa, sb))
                  for ca, sa in a.terms for cb, sb in b.terms)
    return MagicDecomposition(a.k + b.k, terms)


def _t12_merge_states() -> tuple[StabilizerState, StabilizerState]:
    # 11 direction columns: col i = e0 + e_{i+1} on 12 qubits (even-weight
    # space); the b-merge lives on the even coset, the eo-merge on the odd one
    cols = tuple(1 | (1 << (i + 1)) for i in range(11))
    scale = ExactAmplitude(1, 0, 0, 0, 11)  # 2^{-11/2}
    dvec = tuple(0 if i < 5 else 4 for i in range(11))
    merged_b = StabilizerState(12, cols, 0, (0,) * 11, dvec, 4, scale)
    merged_eo = StabilizerState(12, cols, 1, _complete_graph(11),
                                (0,) * 11, 0, scale)
    return merged_b, merged_eo


def t12_decomposition() -> MagicDecomposition:
    """Tensor square of the 7-term entry with the two Bell-pair merges."""
    t6 = t6_decomposition()
    coeffs = _t6_coefficients()
    sqrt2 = ExactAmplitude(0, 1)
    merged_b, merged_eo = _t12_merge_states()
    c_b = sqrt2 * coeffs["b60"] * coeffs["b66"]
    c_6 = sqrt2 * coeffs["e6"] * coeffs["o6"]
    names = _T6_ORDER
    drop = {("b60", "b66"), ("b66", "b60"), ("e6", "o6"), ("o6", "e6")}
    terms = []
    for i, (ci, si) in enumerate(t6.terms):
        for j, (cj, sj) in enumerate(t6.terms):
            if (names[i], names[j]) in drop:
                continue
            terms.append((ci * cj, _tensor_states(si, sj)))
    terms.append((c_b, merged_b))
    terms.append((c_6, merged_eo))
    return MagicDecomposition(12, tuple(terms))


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------

def extend_with_zeros(dec: MagicDecomposition, n: int) -> MagicDecomposition:
    """Tensor every term with |0>^(n-k); term count unchanged."""
    if n < dec.k:
        raise ValueError(f"cannot extend a {dec.k}-qubit decomposition to {n} qubits")
    if n == dec.n:
        return dec
    # padding qubits sit above the existing coordinates with |0> amplitudes,
    # so only the ambient dimension changes
    terms = tuple(
        (c, StabilizerState(n, s.basis, s.shift, s.bmat, s.dvec, s.c, s.scale))
        for c, s in dec.terms)
    return MagicDecomposition(dec.k, terms)


_CATALOG = {1: t1_decomposition, 2: t2_decomposition, 3: t3_decomposition,
            6: t6_decomposition, 12: t12_decomposition}

CATALOG_SIZES = (12, 6, 3, 2, 1)
CATALOG_TERM_COUNTS = {1: 2, 2: 2, 3: 3, 6: 7, 12: 47}


def catalog_entry(k: int) -> MagicDecomposition:
    if k not in _CATALOG:
        raise ValueError(f"no catalog entry for T-count {k}")
    return _CATALOG[k]()


def block_cover(t: int, policy: Sequence[int] = DEFAULT_POLICY) -> list[int]:
    """Greedy largest-block-first cover of t by catalog block sizes."""
    sizes = sorted(set(policy), reverse=True)
    for k in sizes:
        if k not in _CATALOG:
            raise ValueError(f"policy block size {k} not in catalog")
    blocks = []
    rest = t
    for k in sizes:
        while rest >= k:
            blocks.append(k)
            rest -= k
    if rest:
        raise ValueError(f"policy {list(policy)} cannot cover t={t}")
    return blocks


def block_decomposition(t: int, policy: Sequence[int] = DEFAULT_POLICY
                        ) -> MagicDecomposition:
    """Tensor of catalog entries over the greedy block cover of t."""
    if t < 1:
        raise ValueError("T-count must be at least 1")
    dec = None
    for k in block_cover(t, policy):
        entry = catalog_entry(k)
        dec = entry if dec is None else tensor(dec, entry)
    assert dec is not None
    return dec


# ---------------------------------------------------------------------------
# text file format
# ---------------------------------------------------------------------------

def _amp_str(a: ExactAmplitude) -> str:
    return f"({a.a},{a.b},{a.c},{a.d},{a.e})"


def _amp_parse(s: str) -> ExactAmplitude:
    parts = s.strip().lstrip("(").rstrip(")").split(",")
    if len(parts) != 5:
        raise ValueError(f"malformed amplitude {s!r}")
    return ExactAmplitude(*(int(p) for p in parts))


def write_catalog_file(dec: MagicDecomposition, path: str,
                       notes: Sequence[str] = ()) -> None:
    """Line-oriented text export; '#' lines are comments."""
    with open(path, "w") as fh:
        for note in notes:
            fh.write(f"# {note}\n")
        fh.write(f"k={dec.k} terms={len(dec.terms)}\n")
        for coeff, s in dec.terms:
            fh.write(f"coeff={_amp_str(coeff)}\n")
            fh.write(f"n={s.n} m={s.m}\n")
            fh.write("G=" + " ".join(to_str(col, s.n) for col in s.basis) + "\n")
            fh.write("h=" + to_str(s.shift, s.n) + "\n")
            upper = []
            for a in range(s.m):
                for b in range(a + 1, s.m):
                    upper.append(str(4 * ((s.bmat[a] >> b) & 1)))
            fh.write("J=" + ",".join(upper) + "\n")
            fh.write("D=" + ",".join(str(d) for d in s.dvec) + "\n")
            fh.write(f"c={s.c}\n")
            fh.write(f"global={_amp_str(s.scale)}\n")


def read_catalog_file(path: str) -> MagicDecomposition:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh
                 if ln.strip() and not ln.lstrip().startswith("#")]
    header = dict(kv.split("=") for kv in lines[0].split())
    k, nterms = int(header["k"]), int(header["terms"])
    pos = 1
    terms = []
    for _ in range(nterms):
        coeff = _amp_parse(lines[pos].split("=", 1)[1]); pos += 1
        nm = dict(kv.split("=") for kv in lines[pos].split()); pos += 1
        n, m = int(nm["n"]), int(nm["m"])
        gtxt = lines[pos].split("=", 1)[1].split(); pos += 1
        basis = tuple(from_str(s) for s in gtxt)
        shift = from_str(lines[pos].split("=", 1)[1]); pos += 1
        jtxt = lines[pos].split("=", 1)[1]; pos += 1
        jvals = [int(v) for v in jtxt.split(",")] if jtxt else []
        bmat = [0] * m
        it = iter(jvals)
        for a in range(m):
            for b in range(a + 1, m):
                if next(it) % 8 == 4:
                    bmat[a] |= 1 << b
                    bmat[b] |= 1 << a
        dtxt = lines[pos].split("=", 1)[1]; pos += 1
        dvec = tuple(int(v) for v in dtxt.split(",")) if dtxt else ()
        c = int(lines[pos].split("=", 1)[1]); pos += 1
        scale = _amp_parse(lines[pos].split("=", 1)[1]); pos += 1
        if len(basis) != m:
            raise ValueError("basis column count does not match m")
        terms.append((coeff, StabilizerState(n, basis, shift, tuple(bmat),
                                             dvec, c, scale)))
    return MagicDecomposition(k, tuple(terms))
