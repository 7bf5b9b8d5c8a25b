"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line."""

import time

import numpy as np
import pytest

from gmestab.bell import (
    cyclic_weights,
    chsh,
    classical_bound,
    max_eigenvalue,
    max_sos_residual,
    quantum_value_on_subspace,
    synth_cyclic_inequality,
    synth_max_inequality,
)
from gmestab.bell import canonical_observables
from gmestab.constructions import (
    _block_strings,
    _closed_form_strings,
    construction2_generators,
    five_qubit_code,
    ghz_generators,
    k_min,
    max_generators,
    shor_code,
)
from gmestab.faces import analyze_face
from gmestab.gf2 import bits_to_str
from gmestab.gme import (
    graph_components,
    graph_state_generators,
    is_gme_oracle,
    is_gme_rank,
    pair_vectors,
)
from gmestab.sampling import random_graph, random_stabilizer
from gmestab.selftest import canonical_error, canonicalize_pair, random_conjugated_pair, \
    verify_stabilization
from gmestab.stabilizer import StabilizerSet, codeword_basis, projector, validate

RESULTS: dict[int, str] = {}
TOL = 1e-9


def report(num, title, ok, detail, elapsed, budget):
    ok = ok and elapsed < budget
    line = f"criterion {num} {'PASS' if ok else 'FAIL'}: {title} ({detail}; {elapsed:.2f}s < {budget}s)"
    RESULTS[num] = line
    print(line)
    assert ok, line


def test_criterion_1_chsh():
    t0 = time.perf_counter()
    e = chsh()
    cb = classical_bound(e).exact
    eig = max_eigenvalue(e)
    ok = cb == 2 and abs(eig - 2 * np.sqrt(2)) <= TOL
    report(1, "CHSH", ok, f"beta_C={cb}, max eig={eig:.12f}", time.perf_counter() - t0, 1)


def test_criterion_2_i3():
    t0 = time.perf_counter()
    e = synth_max_inequality(3)
    s = max_generators(3)
    beta = 2 * np.sqrt(2) + 1
    cb = classical_bound(e).exact
    eig = max_eigenvalue(e)
    sub = quantum_value_on_subspace(e, s)
    sos = max_sos_residual(e, s, trials=100, dims=(2, 4), seed=2)
    ok = (cb == 3 and abs(eig - beta) <= TOL and abs(sub.min - beta) <= TOL
          and abs(sub.max - beta) <= TOL and sos <= TOL)
    report(2, "I_3^max", ok, f"beta_C={cb}, eig={eig:.12f}, subspace=[{sub.min:.12f}, "
           f"{sub.max:.12f}], SOS residual={sos:.1e}", time.perf_counter() - t0, 5)


def test_criterion_3_max_sweep():
    t0 = time.perf_counter()
    bad = []
    for n in range(2, 201):
        closed, blocks = _closed_form_strings(n), _block_strings(n)
        s = StabilizerSet.from_strings(closed)
        rep = validate(s)
        if not (closed == blocks and rep.abelian and rep.independent and rep.minus_identity_free
                and s.k == k_min(n) and rep.subspace_dim == 2 ** (n - k_min(n))
                and is_gme_rank(s)):
            bad.append(n)
    report(3, "maximal construction 2..200", not bad, f"failures={bad}",
           time.perf_counter() - t0, 30)


def test_criterion_4_equivalence():
    t0 = time.perf_counter()
    examples = [five_qubit_code(), shor_code(), StabilizerSet.from_strings(["XX1", "ZZ1"]),
                StabilizerSet.from_strings(["XX1", "ZZZ", "1XX"])]
    examples += [ghz_generators(n) for n in range(2, 9)]
    examples += [construction2_generators(n) for n in (4, 6, 8)]
    examples += [construction2_generators(n, True) for n in (6, 8)]
    examples += [max_generators(n) for n in range(2, 12)]
    rng = np.random.default_rng(4)
    for _ in range(600):
        n = int(rng.integers(2, 9))
        examples.append(random_stabilizer(n, int(rng.integers(1, n + 1)), rng,
                                          extra=int(rng.integers(0, 3))))
    mismatches = sum(is_gme_rank(s) != is_gme_oracle(s) for s in examples)
    n_gme = sum(is_gme_rank(s) for s in examples)
    report(4, "rank criterion == bipartition oracle", mismatches == 0,
           f"{len(examples)} sets, {n_gme} GME, {mismatches} mismatches", time.perf_counter() - t0, 60)


def test_criterion_5_regressions():
    t0 = time.perf_counter()
    ks = pair_vectors(five_qubit_code())
    listed = {(0, 1): "01010", (0, 2): "00110", (0, 3): "11000",
              (1, 2): "00101", (1, 3): "00011", (2, 3): "10010"}
    vectors_ok = all(bits_to_str(ks.vector(i, j), 5) == v for (i, j), v in listed.items())
    five_ok = is_gme_rank(five_qubit_code()) and vectors_ok
    shor_ok = not is_gme_rank(shor_code())
    rng = np.random.default_rng(5)
    conn = disc = 0
    graphs_ok = True
    while conn < 40 or disc < 40:
        n = int(rng.integers(2, 11))
        a = random_graph(n, rng, p=float(rng.uniform(0.1, 0.7)))
        connected = graph_components(a) == 1
        graphs_ok &= is_gme_rank(graph_state_generators(a)) == connected
        conn += connected
        disc += not connected
    ok = five_ok and shor_ok and graphs_ok
    report(5, "example regressions", ok, f"5-qubit GME+vectors={five_ok}, Shor not GME={shor_ok}, "
           f"graphs ok={graphs_ok} ({conn} connected, {disc} disconnected)",
           time.perf_counter() - t0, 60)


def test_criterion_6_bound_tables():
    t0 = time.perf_counter()
    rows, ok = [], True
    for n in range(2, 15):
        e = synth_max_inequality(n)
        cb = classical_bound(e).exact
        ok &= cb == k_min(n) == e.classical_bound
        rows.append(f"max{n}:{cb}")
        if n <= 10:
            beta = 2 * (np.sqrt(2) - 1) + k_min(n)
            sub = quantum_value_on_subspace(e, max_generators(n))
            ok &= abs(max_eigenvalue(e) - beta) <= TOL
            ok &= max(abs(sub.min - beta), abs(sub.max - beta)) <= TOL
    for n in (6, 8, 10, 12, 14):
        e = synth_cyclic_inequality(n)
        cb = classical_bound(e).exact
        ok &= cb == n // 2 + 2 == e.classical_bound
        rows.append(f"cyc{n}:{cb}")
        if n <= 10:
            beta = n / 2 + 2 * (2 * np.sqrt(2) - 1)
            sub = quantum_value_on_subspace(e, construction2_generators(n, cyclic=True))
            ok &= abs(max_eigenvalue(e) - beta) <= TOL
            ok &= max(abs(sub.min - beta), abs(sub.max - beta)) <= TOL
    report(6, "bound tables", ok, " ".join(rows), time.perf_counter() - t0, 600)


def test_criterion_7_faces():
    t0 = time.perf_counter()
    dims, ok = {}, True
    for n in range(4, 9):
        rep = analyze_face(n, tol=TOL)
        dims[n] = rep.dimension
        ok &= rep.dimension == 2 ** (n - k_min(n)) - 1 and max(rep.residuals) <= TOL
    report(7, "face dimensions", ok, f"dims={dims}", time.perf_counter() - t0, 120)


def test_criterion_8_selftest():
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    worst = 0.0
    for t in range(240):
        pair, _ = random_conjugated_pair([2, 4, 6, 8][t % 4], rng)
        worst = max(worst, canonical_error(pair, canonicalize_pair(pair)))
    stab_ok, count = True, 0
    for n in range(2, 9):
        s = max_generators(n)
        obs = canonical_observables(n)
        v = codeword_basis(s)
        for j in range(v.shape[1]):
            stab_ok &= verify_stabilization(obs, v[:, j], s).passed
            count += 1
    ok = worst <= 1e-8 and stab_ok
    report(8, "self-test ingredients", ok, f"max canonicalization error={worst:.1e} over 240 pairs, "
           f"{count} codewords stabilized={stab_ok}", time.perf_counter() - t0, 120)


def test_criterion_9_construction2():
    t0 = time.perf_counter()
    ok, dims = True, {}
    for n in range(4, 17, 2):
        for cyclic in ((False, True) if n >= 6 else (False,)):
            s = construction2_generators(n, cyclic)
            rep = validate(s)
            dims[n] = rep.subspace_dim
            ok &= rep.subspace_dim == 2 ** (n // 2 - 1) and is_gme_rank(s) and is_gme_oracle(s)
            if n <= 10:
                ok &= round(np.trace(projector(s)).real) == 2 ** (n // 2 - 1)
    ok &= dims[6] == 4
    report(9, "exponential family, even N 4..16", ok, f"dims={dims}", time.perf_counter() - t0, 60)
