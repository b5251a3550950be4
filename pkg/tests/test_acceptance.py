"""Acceptance criteria: each test checks one criterion at its stated scale.

Every test records one ``PASS``/``FAIL`` line; the lines are printed at the
end of the pytest run (see ``conftest.py``) and also to stdout with ``-s``.
"""
import time

import numpy as np
import pytest

from seqjordan import (
    DEFAULT_ZOO,
    Element,
    explicit_tensor_checks,
    is_locally_tomographic_self_composite,
    parse_descriptor,
    rank_of,
    run_suite,
    simple_ejas_of_rank,
)
from seqjordan.loctom import SimpleEjaRow, square_composite_exists

pytestmark = pytest.mark.acceptance

RESULTS: list[str] = []


def record(number, title, ok, detail, started):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({detail}; {time.perf_counter() - started:.1f}s)"
    RESULTS.append(line)
    print(line)
    return ok


def run_zoo(suite, samples, seed=0):
    return {d: run_suite(suite, d, samples, seed) for d in DEFAULT_ZOO}


def failed(reports):
    return {d: r.failures[:3] for d, r in reports.items() if not r.passed}


def worst(reports, predicate):
    vals = [r.max_value(predicate) for r in reports.values()]
    return max(v for v in vals if v is not None)


def counts(reports, predicate):
    return min(r.metrics.get(predicate, {"count": 0})["count"] for r in reports.values())


def test_axiom_suite():
    t0 = time.perf_counter()
    reps = run_zoo("axioms-S1..S7", 200)
    bad = failed(reps)
    asserted = ("S1-additivity", "S3-unit-first", "S4-orthogonal-compatibility", "S5-associativity", "S6-complement", "S6-sum", "S7-multiplicativity")
    covered = all(counts(reps, p) >= 200 for p in asserted)
    holder = worst(reps, "S2-continuity-holder")
    ok = not bad and covered and np.isfinite(holder)
    record(1, "axiom suite, 200 samples per zoo algebra", ok, f"S2 Hoelder constant reported, max {holder:.3g}", t0)
    assert ok, bad


def test_spectral_suite():
    t0 = time.perf_counter()
    reps = run_zoo("spectral", 200)
    bad = failed(reps)
    needed = ("spectral-reconstruction", "idempotent-orthogonality", "ceiling-floor-duality", "ceiling-scale-invariant")
    covered = all(counts(reps, p) >= 200 for p in needed)
    res = worst(reps, "spectral-reconstruction")
    ok = not bad and covered
    record(2, "spectral suite, 200 samples incl. degenerate inputs", ok, f"max reconstruction residual {res:.2e}", t0)
    assert ok, bad


def test_homogeneity():
    t0 = time.perf_counter()
    reps = run_zoo("homogeneity", 100)
    bad = failed(reps)
    # two probe families of 25, each checked forward and backward
    covered = counts(reps, "homogeneity-maps-a-to-b") >= 100 and counts(reps, "positivity-preserved") >= 200
    res = worst(reps, "homogeneity-maps-a-to-b")
    ok = not bad and covered
    record(3, "homogeneity, 100 strictly positive pairs, 50 probes each way", ok, f"max |Phi(a)-b| {res:.2e}", t0)
    assert ok, bad


def test_lattice_and_rank():
    t0 = time.perf_counter()
    reps = run_zoo("lattice", 200)
    bad = failed(reps)
    covered = all(counts(reps, p) >= 200 for p in ("join-meet-idempotent", "covering-verdict", "rank-frame-independent"))
    expected = {}
    for d in DEFAULT_ZOO:
        desc = parse_descriptor(d)
        expected[d] = sum(2 if f.kind == "spin" else f.size for f in desc.factors)
    unit_ranks = {d: rank_of(Element.unit(d)) for d in DEFAULT_ZOO}
    ok = not bad and covered and unit_ranks == expected
    record(4, "lattice/rank, 200 samples, rank of unit matches the table", ok, f"unit ranks {sorted(set(unit_ranks.values()))}", t0)
    assert ok, (bad, unit_ranks)


def test_duality():
    t0 = time.perf_counter()
    reps = run_zoo("duality", 100)
    bad = failed(reps)
    pairs = counts(reps, "transition-symmetry")
    gram_min = min(-r.max_value("gram-positive-definite") for r in reps.values())
    ok = not bad and pairs >= 500 and gram_min > 1e-8
    record(5, "duality, 500 atom pairs per algebra", ok, f"{pairs} pairs, Gram min eigenvalue {gram_min:.3f}", t0)
    assert ok, bad


def test_reconstruction():
    t0 = time.perf_counter()
    reps = run_zoo("reconstruction", 200)
    bad = failed(reps)
    covered = all(
        counts(reps, p) >= 200
        for p in ("reconstructed-equals-jordan", "atom-product-idempotent", "T-jordan-identity", "product-symmetric-for-form")
    )
    res = worst(reps, "reconstructed-equals-jordan")
    ok = not bad and covered
    record(6, "reconstruction, 200 random pairs per algebra", ok, f"max |a*b - a.b| {res:.2e}", t0)
    assert ok, bad


def test_local_tomography():
    t0 = time.perf_counter()
    verdicts = {
        d: is_locally_tomographic_self_composite(d).verdict
        for d in ("complex:2", "complex:3", "complex:4", "complex:2+complex:3", "real:3", "quat:2", "spin:5")
    }
    want = {"complex:2": True, "complex:3": True, "complex:4": True, "complex:2+complex:3": True, "real:3": False, "quat:2": False, "spin:5": False}
    albert = square_composite_exists(SimpleEjaRow("Albert", 3, 27))
    rank4 = {r.dim for r in simple_ejas_of_rank(4, 30)}
    rank9_max = max(r.dim for r in simple_ejas_of_rank(9, 1000))
    tensor = explicit_tensor_checks(2, 2, samples=100, seed=0)
    suites = all(run_suite("loctom", d, 20).passed for d in DEFAULT_ZOO)
    ok = verdicts == want and not albert and rank4 == {10, 16, 28} and rank9_max == 153 and tensor.ok and tensor.identity_rank == 4 and suites
    record(7, "local tomography table and explicit complex:2 x complex:2", ok, f"rank-4 dims {sorted(rank4)}, rank-9 max {rank9_max}, product law {tensor.product_law:.1e}", t0)
    assert ok, (verdicts, albert, rank4, rank9_max, tensor)


def test_determinism():
    t0 = time.perf_counter()
    same = True
    for suite in ("axioms-S1..S7", "spectral", "homogeneity", "lattice", "duality", "reconstruction", "loctom"):
        one = run_suite(suite, "complex:2+spin:3", 10, seed=3, tolerances={"eq_tol": 1e-9}).to_json(include_elapsed=False)
        two = run_suite(suite, "complex:2+spin:3", 10, seed=3, tolerances={"eq_tol": 1e-9}).to_json(include_elapsed=False)
        same = same and one.encode() == two.encode()
    record(8, "determinism, byte-identical JSON without elapsed time", same, "7 suites x 2 runs", t0)
    assert same
