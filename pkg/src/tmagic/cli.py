"""Command-line driver: verification suites, expectations, rank census,
and the scaling benchmark harness.

Outputs are deterministic under a fixed seed: CSV/JSON data never contains
wall-clock times unless --timing is given (timing goes to stderr instead),
so repeated runs and different --workers counts produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

import numpy as np

from . import _gauss_kernels as gk
from .catalog import (CATALOG_TERM_COUNTS, block_cover, block_decomposition,
                      catalog_entry, read_catalog_file, write_catalog_file)
from .gauss import (SUPPORTED_BLOCKS, WORST_CASE_UNIQUE, expect_block,
                    expect_single_pauli, letters_to_pauli)
from .pauli import PauliOperator, PauliProjector
from .strong_sim import SimulationTask, exact_pauli_expectation, run_task

_CHI = dict(CATALOG_TERM_COUNTS)


def _parse_policy(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(p) for p in text.replace(",", " ").split())
    except ValueError as exc:
        raise SystemExit(f"invalid --policy {text!r}: {exc}")
    return sizes


def _parse_projector(text: str, n: int) -> PauliProjector:
    factors = []
    for part in text.split(","):
        part = part.strip()
        sign = 1
        if part.startswith("+"):
            part = part[1:]
        elif part.startswith("-"):
            sign = -1
            part = part[1:]
        p = PauliOperator.from_str(part)
        if p.n != n:
            raise SystemExit(f"projector factor {part!r} acts on {p.n} qubits, expected {n}")
        factors.append((p, sign))
    return PauliProjector(n, tuple(factors))


def _emit(record: dict, out: Optional[str]) -> None:
    text = json.dumps(record, sort_keys=True)
    print(text)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def _write_csv(path: Optional[str], header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines += [",".join(str(v) for v in row) for row in rows]
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text


# ---------------------------------------------------------------------------
# expect
# ---------------------------------------------------------------------------

def cmd_expect(args) -> int:
    policy = _parse_policy(args.policy)
    record: dict = {"command": "expect", "t": args.t, "mode": args.mode,
                    "seed": args.seed}
    start = time.perf_counter()
    if args.projector:
        first = args.projector.split(",")[0].strip().lstrip("+-")
        n = max(args.t, PauliOperator.from_str(first).n)
        proj = _parse_projector(args.projector, n)
        if args.mode == "gauss":
            raise SystemExit("gauss mode evaluates single Paulis; use --pauli")
        task = SimulationTask(t=args.t, n=n, projector=proj, mode=args.mode,
                              epsilon=args.epsilon, p_f=args.pf, seed=args.seed,
                              policy=policy, samples_override=args.samples)
        res = run_task(task)
        record.update(projector=str(proj), value=res.value,
                      inner_products=res.inner_products_evaluated,
                      samples_used=res.samples_used, terms=res.term_count)
    else:
        if not args.pauli:
            raise SystemExit("need --pauli or --projector")
        p = PauliOperator.from_str(args.pauli)
        if p.n < args.t:
            raise SystemExit(f"Pauli acts on {p.n} qubits but t={args.t}")
        magic = PauliOperator(args.t, p.beta & ((1 << args.t) - 1),
                              p.gamma & ((1 << args.t) - 1),
                              p.delta & ((1 << args.t) - 1), p.omega_exp)
        # qubits beyond the T-count hold |0>: X/Y there zero the expectation,
        # I/Z contribute a factor 1
        zero_part = 0.0 if (p.x_mask >> args.t) else 1.0
        if args.mode == "gauss":
            rep = expect_single_pauli(args.t, magic, policy)
            record.update(pauli=str(p), value=rep.expectation * zero_part,
                          unique_nonzero_sums=rep.unique_nonzero_sums)
        elif args.mode == "exact":
            dec = block_decomposition(args.t, policy)
            res = exact_pauli_expectation(dec, magic)
            record.update(pauli=str(p), value=res.value * zero_part,
                          inner_products=res.inner_products_evaluated,
                          terms=res.term_count)
        else:
            proj = PauliProjector.single(magic, 1)
            task = SimulationTask(t=args.t, n=args.t, projector=proj,
                                  mode="sampled", epsilon=args.epsilon,
                                  p_f=args.pf, seed=args.seed, policy=policy,
                                  samples_override=args.samples)
            res = run_task(task)
            record.update(pauli=str(p), value=(2 * res.value - 1) * zero_part,
                          inner_products=res.inner_products_evaluated,
                          samples_used=res.samples_used, terms=res.term_count)
    elapsed = time.perf_counter() - start
    if args.timing:
        record["wall_time"] = elapsed
    else:
        print(f"[time] {elapsed:.3f}s", file=sys.stderr)
    _emit(record, args.out)
    return 0


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------

def _census_chunk(task: tuple) -> list[int]:
    k, mode, samples, seed, backend, lo, hi = task
    if mode == "exhaustive":
        letters = gk.exhaustive_letters(k)[lo:hi]
    else:
        letters = gk.sample_letters(k, samples, seed)[lo:hi]
    if backend == "pure":
        return [expect_block(k, letters_to_pauli(row)).unique_nonzero_sums
                for row in letters]
    counts = np.zeros(letters.shape[0], dtype=np.int64)
    gk._census_counts(letters, k, counts)
    return [int(c) for c in counts]


def cmd_census(args) -> int:
    k = args.k
    if k not in SUPPORTED_BLOCKS:
        raise SystemExit(f"census supports block sizes {SUPPORTED_BLOCKS}")
    if args.mode == "exhaustive" and k > 6:
        raise SystemExit("exhaustive census is limited to k <= 6; use --mode sampled")
    backend = args.backend
    if backend == "auto":
        backend = "jit" if gk.kernels_enabled() else "pure"
    if backend == "jit" and not gk.kernels_enabled():
        raise SystemExit("numba kernels unavailable (TMAGIC_NO_NUMBA set?)")
    total = 4 ** k if args.mode == "exhaustive" else args.samples
    workers = max(1, args.workers)
    bounds = [(total * w // workers, total * (w + 1) // workers)
              for w in range(workers)]
    tasks = [(k, args.mode, args.samples, args.seed, backend, lo, hi)
             for lo, hi in bounds if hi > lo]
    start = time.perf_counter()
    if workers == 1:
        chunks = [_census_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_census_chunk, tasks))
    counts: list[int] = [c for chunk in chunks for c in chunk]
    elapsed = time.perf_counter() - start
    hist: dict[int, int] = {}
    for c in counts:
        hist[c] = hist.get(c, 0) + 1
    rows = [[k, args.mode, u, hist[u]] for u in sorted(hist)]
    text = _write_csv(args.out, ["k", "mode", "unique_nonzero_sums", "count"], rows)
    if not args.out:
        print(text, end="")
    print(json.dumps({"command": "census", "k": k, "mode": args.mode,
                      "max_unique": max(hist), "total": total,
                      "seed": args.seed}, sort_keys=True))
    print(f"[time] {elapsed:.3f}s backend={backend}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def _fit_exponent(ts: Sequence[int], work: Sequence[int]) -> float:
    xs = np.asarray(ts, dtype=float)
    ys = np.log2(np.asarray(work, dtype=float))
    slope = np.polyfit(xs, ys, 1)[0]
    return float(slope)


def _bench_gauss_once(t: int, policy: tuple[int, ...], seed: int,
                      backend: str) -> float:
    letters = gk.sample_letters(t, 1, seed)[0]
    start = time.perf_counter()
    if backend == "pure":
        expect_single_pauli(t, letters_to_pauli(letters), policy)
    else:
        offset = 0
        for k in block_cover(t, policy):
            gk.eval_expectation_acc(letters[offset:offset + k], k)
            offset += k
    return time.perf_counter() - start


def cmd_bench(args) -> int:
    policy = _parse_policy(args.policy)
    ts = [int(v) for v in args.t.replace(",", " ").split()]
    if args.reps < 3:
        raise SystemExit("need at least 3 repetitions")
    backends = ["jit", "pure"] if args.compare_backends else [args.backend]
    backends = ["jit" if b == "auto" and gk.kernels_enabled() else
                ("pure" if b == "auto" else b) for b in backends]
    rows = []
    times_note = []
    work_by_t = {}
    for t in ts:
        blocks = block_cover(t, policy)
        if args.mode == "gauss":
            work = 1
            for k in blocks:
                work *= WORST_CASE_UNIQUE[k]
        else:
            work = 1
            for k in blocks:
                work *= _CHI[k]
        work_by_t[t] = work
        for backend in backends:
            med = None
            if args.mode == "gauss":
                samples = [_bench_gauss_once(t, policy, args.seed + r, backend)
                           for r in range(args.reps)]
                med = float(np.median(samples))
            else:
                samples = []
                for r in range(args.reps):
                    rng = np.random.default_rng(np.random.SeedSequence([args.seed, r]))
                    p = letters_to_pauli(rng.integers(0, 4, size=t))
                    task = SimulationTask(
                        t=t, n=t, projector=PauliProjector.single(p, 1),
                        mode=args.mode, epsilon=args.epsilon, p_f=args.pf,
                        seed=args.seed + r, policy=policy,
                        samples_override=args.samples)
                    res = run_task(task)
                    samples.append(res.wall_time)
                med = float(np.median(samples))
            row = [t, "+".join(str(b) for b in blocks), args.mode, backend,
                   args.reps, work, args.seed]
            if args.timing:
                row.append(f"{med:.6g}")
            rows.append(row)
            times_note.append(f"t={t} backend={backend} median={med:.6g}s")
    header = ["t", "blocks", "mode", "backend", "reps", "work", "seed"]
    if args.timing:
        header.append("median_wall_time")
    text = _write_csv(args.out, header, rows)
    if not args.out:
        print(text, end="")
    exponent = _fit_exponent(list(work_by_t), [work_by_t[t] for t in work_by_t])
    print(json.dumps({"command": "bench", "mode": args.mode,
                      "t": sorted(work_by_t), "policy": list(policy),
                      "fitted_exponent": round(exponent, 6),
                      "seed": args.seed}, sort_keys=True))
    for note in times_note:
        print(f"[time] {note}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def cmd_catalog(args) -> int:
    import os
    import tempfile
    dec = catalog_entry(args.k)
    notes = [f"stabilizer decomposition of the {args.k}-fold T magic state",
             f"terms={len(dec)}"]
    if args.out:
        write_catalog_file(dec, args.out, notes)
        print(json.dumps({"command": "catalog", "k": args.k,
                          "terms": len(dec), "out": args.out}, sort_keys=True))
    else:
        fd, path = tempfile.mkstemp(suffix=".txt")
        try:
            os.close(fd)
            write_catalog_file(dec, path, notes)
            with open(path) as fh:
                sys.stdout.write(fh.read())
        finally:
            os.unlink(path)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _verify_decompositions(report, catalog_file: Optional[str]) -> None:
    from .dense import dense_magic_state_exact
    for k in (1, 2, 3, 6, 12):
        dec = catalog_entry(k)
        ok = len(dec) == CATALOG_TERM_COUNTS[k]
        recon = dec.reconstruct_dense_exact()
        target = dense_magic_state_exact(k)
        ok = ok and all(x == y for x, y in zip(recon, target))
        report(f"decomposition-t{k}", ok,
               f"terms={len(dec)} exact-reconstruction={ok}")
    if catalog_file:
        dec = read_catalog_file(catalog_file)
        recon = dec.reconstruct_dense_exact()
        target = dense_magic_state_exact(dec.k)
        ok = all(x == y for x, y in zip(recon, target))
        report(f"catalog-file-k{dec.k}", ok, f"terms={len(dec)}")


def _verify_merges(report) -> None:
    import numpy as np
    from .catalog import _t6_states, _t12_merge_states
    states = _t6_states()
    sqrt2 = np.sqrt(2.0)
    pair_b = (np.kron(states["b60"].to_dense(), states["b66"].to_dense())
              + np.kron(states["b66"].to_dense(), states["b60"].to_dense()))
    pair_eo = (np.kron(states["e6"].to_dense(), states["o6"].to_dense())
               + np.kron(states["o6"].to_dense(), states["e6"].to_dense()))
    merged_b, merged_eo = _t12_merge_states()
    ok_b = np.allclose(pair_b, sqrt2 * merged_b.to_dense(), atol=1e-12)
    ok_eo = np.allclose(pair_eo, sqrt2 * merged_eo.to_dense(), atol=1e-12)
    report("bell-merge-b", bool(ok_b), "pair equals sqrt2 * merged state")
    report("bell-merge-eo", bool(ok_eo), "pair equals sqrt2 * merged state")


def _verify_gauss(report, k: int, samples: int, seed: int) -> None:
    from .dense import dense_magic_state, dense_pauli_expect
    from .gauss import _all_paulis
    vec = dense_magic_state(k)
    if k <= 6:
        paulis = list(_all_paulis(k))
    else:
        rows = gk.sample_letters(k, samples, seed)
        paulis = [letters_to_pauli(r) for r in rows]
    bad = 0
    worst = 0
    for p in paulis:
        rep = expect_block(k, p)
        want = dense_pauli_expect(vec, p).real
        if abs(rep.expectation - want) > 1e-9:
            bad += 1
        worst = max(worst, rep.unique_nonzero_sums)
    ok = bad == 0 and worst <= WORST_CASE_UNIQUE[k]
    report(f"gauss-k{k}", ok,
           f"checked={len(paulis)} mismatches={bad} max-unique={worst}")


def _verify_kernel(report, trials: int, seed: int) -> None:
    import numpy as np
    from .dense import apply_projector
    from .pauli import random_pauli
    from .stabilizer import (inner_product, measure_pauli,
                             random_stabilizer_state)
    rng = np.random.default_rng(seed)
    bad_ip = bad_mp = 0
    for _ in range(trials):
        n = int(rng.integers(2, 7))
        s1 = random_stabilizer_state(n, rng)
        s2 = random_stabilizer_state(n, rng)
        ip = inner_product(s1, s2).to_float()
        want = complex(np.vdot(s1.to_dense(), s2.to_dense()))
        if abs(ip - want) > 1e-10:
            bad_ip += 1
        p = random_pauli(n, rng)
        sign = 1 if rng.integers(0, 2) else -1
        out, _ = measure_pauli(s1, p, sign)
        got = out.to_dense() if out is not None else np.zeros(1 << n)
        wantv = apply_projector(s1.to_dense(), PauliProjector.single(p, sign))
        if not np.allclose(got, wantv, atol=1e-10):
            bad_mp += 1
    report("kernel-inner-product", bad_ip == 0, f"trials={trials} bad={bad_ip}")
    report("kernel-measure-pauli", bad_mp == 0, f"trials={trials} bad={bad_mp}")


def cmd_verify(args) -> int:
    results = []

    def report(name: str, ok: bool, detail: str) -> None:
        results.append({"name": name, "ok": bool(ok), "detail": detail})
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")

    scope = args.scope
    if scope in ("all", "decompositions"):
        _verify_decompositions(report, args.catalog_file)
    if scope in ("all", "merges"):
        _verify_merges(report)
    for k in SUPPORTED_BLOCKS:
        if scope in ("all", f"gauss-k{k}"):
            _verify_gauss(report, k, args.samples, args.seed)
    if scope in ("all", "kernel"):
        _verify_kernel(report, args.trials, args.seed)
    if not results:
        raise SystemExit(f"unknown verify scope {args.scope!r}")
    ok = all(r["ok"] for r in results)
    print(json.dumps({"command": "verify", "scope": scope, "ok": ok,
                      "cases": results}, sort_keys=True))
    return 0 if ok else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tmagic",
                                 description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="cmd", required=True)

    pe = sub.add_parser("expect", help="evaluate a Pauli or projector expectation")
    pe.add_argument("--t", type=int, required=True, help="T-count")
    pe.add_argument("--pauli", help="Pauli string, e.g. XYZI or -1:XX")
    pe.add_argument("--projector", help="signed factors, e.g. '+ZZ,-XX'")
    pe.add_argument("--mode", choices=("exact", "sampled", "gauss"), default="gauss")
    pe.add_argument("--policy", default="12 6 3 2 1")
    pe.add_argument("--epsilon", type=float, default=0.1)
    pe.add_argument("--pf", type=float, default=0.05)
    pe.add_argument("--samples", type=int, default=None,
                    help="override the sample count L")
    pe.add_argument("--seed", type=int, default=0)
    pe.add_argument("--out", default=None)
    pe.add_argument("--timing", action="store_true",
                    help="include wall time in the JSON record")
    pe.set_defaults(fn=cmd_expect)

    pc = sub.add_parser("census", help="histogram of unique non-zero Gauss sums")
    pc.add_argument("--k", type=int, required=True)
    pc.add_argument("--mode", choices=("exhaustive", "sampled"), default="exhaustive")
    pc.add_argument("--samples", type=int, default=100_000)
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--workers", type=int, default=1)
    pc.add_argument("--backend", choices=("auto", "jit", "pure"), default="auto")
    pc.add_argument("--out", default=None)
    pc.set_defaults(fn=cmd_census)

    pb = sub.add_parser("bench", help="scaling benchmark with counter-based fits")
    pb.add_argument("--mode", choices=("gauss", "exact", "sampled"), default="gauss")
    pb.add_argument("--t", required=True, help="T-counts, e.g. '6 12 18'")
    pb.add_argument("--policy", default="12 6 3 2 1")
    pb.add_argument("--reps", type=int, default=3)
    pb.add_argument("--seed", type=int, default=0)
    pb.add_argument("--epsilon", type=float, default=0.1)
    pb.add_argument("--pf", type=float, default=0.05)
    pb.add_argument("--samples", type=int, default=None)
    pb.add_argument("--backend", choices=("auto", "jit", "pure"), default="auto")
    pb.add_argument("--compare-backends", action="store_true",
                    help="benchmark the numba kernels against the pure path")
    pb.add_argument("--timing", action="store_true",
                    help="include wall-time medians in the CSV")
    pb.add_argument("--out", default=None)
    pb.set_defaults(fn=cmd_bench)

    pk = sub.add_parser("catalog", help="export a decomposition text file")
    pk.add_argument("--k", type=int, required=True)
    pk.add_argument("--out", default=None)
    pk.set_defaults(fn=cmd_catalog)

    pv = sub.add_parser("verify", help="dense-oracle equivalence suites")
    pv.add_argument("--scope", default="all",
                    help="all | decompositions | merges | kernel | gauss-k<K>")
    pv.add_argument("--samples", type=int, default=2000,
                    help="random Paulis for the k=12 oracle check")
    pv.add_argument("--trials", type=int, default=200,
                    help="random states for the kernel check")
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--catalog-file", default=None)
    pv.set_defaults(fn=cmd_verify)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
