"""One test per acceptance criterion, each with its runtime budget."""

import json
import random
import subprocess
import sys
import time
from contextlib import contextmanager
from fractions import Fraction as F

from troptensor import INF, HypothesisViolation, Tensor
from troptensor.experiments import ExperimentConfig, e_distribution
from troptensor.hypergraph import build_hypergraph, is_h_cycle, karp_min_cycle_mean, matrix_of, min_h_cycle_mean
from troptensor.lp import build_dual, build_primal, solve
from troptensor.polytope import (check_vertex_structure, cyclic_vertex, enumerate_vertices,
                                 eigenvalue_via_vertices)
from troptensor.spectra import (find_h_eigenvector, h_eigenvalue, h_eigenvalue_symmetric,
                                minimal_index_set, symmetric_structure_check, verify_h_eigenpair)
from troptensor.errors import PreconditionFailed

from conftest import ACCEPTANCE_LINES, three_cycle, random_symmetric, random_tensor


@contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    ok = False
    try:
        yield
        elapsed = time.perf_counter() - start
        assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f}s)")


def test_criterion_1_three_cycle():
    with criterion(1, "three-cycle reproduction", 5):
        A = three_cycle()
        assert solve(build_primal(A)).value == -1
        assert solve(build_dual(A)).value == -1
        full = enumerate_vertices(3, 3, "full")
        assert eigenvalue_via_vertices(A, full) == -1
        target = {(0, 2, 1): F(2, 9), (1, 0, 2): F(4, 9), (2, 1, 1): F(1, 3)}
        assert any(v.as_dict() == target for v in full)


def test_criterion_2_duality_and_eigenvectors():
    with criterion(2, "strong duality and verified eigenvectors", 60):
        rng = random.Random(2024)
        for _ in range(100):
            A = random_tensor(rng, rng.randint(1, 4), rng.randint(2, 4))
            p = solve(build_primal(A)).value
            d = solve(build_dual(A)).value
            assert p == d
            pair = find_h_eigenvector(A)
            assert pair.lam == d and verify_h_eigenpair(A, pair.x, d).passed


def test_criterion_3_matrix_reduction():
    with criterion(3, "matrix case equals min cycle mean", 30):
        rng = random.Random(303)
        for _ in range(200):
            A = random_tensor(rng, rng.randint(1, 6), 2)
            assert h_eigenvalue(A).lam == karp_min_cycle_mean(matrix_of(A))


def test_criterion_4_symmetric():
    with criterion(4, "symmetric fast path and eigenvector structure", 60):
        rng = random.Random(404)
        structured = 0
        for _ in range(100):
            A = random_symmetric(rng, rng.randint(1, 4), rng.randint(2, 4))
            lam = h_eigenvalue(A).lam
            assert lam == A.min_entry() == h_eigenvalue_symmetric(A)
            try:
                minimal_index_set(A)
            except PreconditionFailed:
                continue
            pair = find_h_eigenvector(A)
            assert verify_h_eigenpair(A, pair.x, lam).passed
            assert symmetric_structure_check(A, pair.x).passed
            structured += 1
        assert structured > 50


def test_criterion_5_vertex_structure():
    with criterion(5, "vertex structure", 120):
        for n, m in [(2, 2), (2, 3), (3, 3), (2, 4)]:
            for mode in ("canonical", "full"):
                vertices = enumerate_vertices(n, m, mode)
                report = check_vertex_structure(vertices, n)
                assert report.max_nonzeros <= n and report.has_n_nonzero_vertex
                assert cyclic_vertex(n, m, mode) in vertices


def test_criterion_6_h_cycle_oracle():
    with criterion(6, "H-cycle oracle", 60):
        rng = random.Random(606)
        for _ in range(30):
            A = random_tensor(rng, 2, 3)
            assert min_h_cycle_mean(build_hypergraph(A), 6) == h_eigenvalue(A).lam
        for n, m in [(2, 2), (2, 3), (3, 3), (2, 4)]:
            for v in enumerate_vertices(n, m, "full"):
                assert is_h_cycle(v.to_h_cycle(), n)


def test_criterion_7_e_experiment():
    with criterion(7, "E-eigenpair count histogram", 600):
        hist = e_distribution(ExperimentConfig(trials=5000, seed=0))
        print("counts", hist.counts)
        assert hist.counts[0] == 0 and hist.counts[4] == 0
        assert 0.76 <= hist.fraction(1) <= 0.84
        assert 0.15 <= hist.fraction(3) <= 0.23
        assert sum(hist.counts[k] for k in (2, 5, 6, 7)) / hist.total <= 0.02


def test_criterion_8_hypothesis_gate():
    with criterion(8, "support hypothesis gate", 1):
        ok = Tensor.from_entries(2, 3, [((0, 0, 1), 1), ((0, 1, 1), 2), ((1, 0, 1), 3), ((1, 1, 1), 4)],
                                 default=INF)
        lam = h_eigenvalue(ok).lam
        assert lam == 2
        bad = Tensor.from_entries(2, 3, [((0, 0, 1), 1), ((1, 0, 0), 1)], default=INF)
        for fn in (h_eigenvalue, lambda A: solve(build_primal(A))):
            try:
                fn(bad)
            except HypothesisViolation as exc:
                assert exc.row == 1
            else:
                raise AssertionError("violating tensor produced an answer")


def test_criterion_9_determinism():
    with criterion(9, "byte-identical experiment output", 120):
        argv = [sys.executable, "-m", "troptensor", "experiment", "--trials", "200", "--seed", "99"]
        a = subprocess.run(argv, capture_output=True, check=True).stdout
        b = subprocess.run(argv, capture_output=True, check=True).stdout
        assert a == b
        assert json.loads(a)["total"] == 200
