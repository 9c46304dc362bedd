"""Acceptance criteria: one test per criterion, each printing a single PASS/FAIL line."""
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from autsolv.algebra import (
    IdealPresentation,
    dimension,
    quotient_algebra,
    radical_filtration,
    validate_admissible,
)
from autsolv.certifier import CertRule, Polarity, Verdict, certify, is_nonsingular, minimal_degree_subspace
from autsolv.deroracle import Consistency, cross_check, run_oracle
from autsolv.errors import ConflictError, TooLargeError
from autsolv.polyfield import QQ, Polynomial, monomials_of_degree, variables

from conftest import fixture_ap

TESTS = Path(__file__).parent


@pytest.fixture
def verdict_line(pytestconfig):
    capman = pytestconfig.pluginmanager.getplugin("capturemanager")

    def emit(number, ok, detail, elapsed):
        with capman.global_and_fixture_disabled():
            print(f"\ncriterion {number:>2}: {'PASS' if ok else 'FAIL'} ({elapsed:.1f} s) {detail}")
        assert ok, detail
    return emit


def tags(report):
    return [r.tag for r in report.fired_rules]


def oracle_pass(ap, report, dim_cap=1000):
    result = run_oracle(ap, dim_cap)
    return result, cross_check(report, result, ap.field).status is Consistency.PASS


def test_criterion_01_regular_sequence(verdict_line):
    t = time.perf_counter()
    ap = fixture_ap("ex5_5")
    X1, X2, X3 = variables(QQ, 3)
    W = minimal_degree_subspace(ap)
    report = certify(ap)
    result, agree = oracle_pass(ap, report)
    ok = (report.verdict is Verdict.SOLVABLE and tags(report) == [CertRule.C1_REGULAR_SEQUENCE]
          and W.dim == 3 and W.basis == (X1**2 + X2**2, X2**2 + X3**2, X2 * X3)
          and result.solvable and agree)
    dt = time.perf_counter() - t
    verdict_line(1, ok and dt < 10, f"C1, dim W {W.dim}, series {result.series.dims}", dt)


def test_criterion_02_nonsingular_cubic(verdict_line):
    t = time.perf_counter()
    ap = fixture_ap("ex5_7")
    X1, X2, X3 = variables(QQ, 3)
    report = certify(ap)
    witness_ok = is_nonsingular(X1**3 + 2 * X2**3 + X1 * X2**2 + X3**3)
    result, agree = oracle_pass(ap, report)
    ok = report.verdict is Verdict.SOLVABLE and tags(report) == [CertRule.C23_NONSINGULAR] and witness_ok and agree
    dt = time.perf_counter() - t
    verdict_line(2, ok and dt < 10, f"C23 witness {report.fired_rules[0].witness}", dt)


def test_criterion_03_regular_sequence_family(verdict_line):
    t = time.perf_counter()
    ok = True
    details = []
    for name, cap in (("ex5_6_n3", 1000), ("ex5_6_n4", 10_000)):
        ap = fixture_ap(name)
        report = certify(ap)
        result, agree = oracle_pass(ap, report, cap)
        ok &= report.verdict is Verdict.SOLVABLE and tags(report) == [CertRule.C1_REGULAR_SEQUENCE] and agree
        details.append(f"{name} series {result.series.dims}")
    dt = time.perf_counter() - t
    verdict_line(3, ok and dt < 30, ", ".join(details), dt)


def test_criterion_04_subpower(verdict_line):
    t = time.perf_counter()
    ap = fixture_ap("ex6_1_small")
    report = certify(ap)
    result, agree = oracle_pass(ap, report)
    dims = result.series.dims
    ok = (report.verdict is Verdict.NOT_SOLVABLE and tags(report) == [CertRule.SP_SUBPOWER]
          and dims[-1] == dims[-2] > 0 and agree)
    dt = time.perf_counter() - t
    verdict_line(4, ok and dt < 10, f"SP, series {dims}", dt)


def test_criterion_05_two_variables(verdict_line):
    t = time.perf_counter()
    ap = fixture_ap("ex6_2")
    report = certify(ap)
    result, agree = oracle_pass(ap, report)
    ok = (dimension(ap) == 72 and ap.lowey == 12 and report.verdict is Verdict.SOLVABLE
          and tags(report) == [CertRule.D2_DIM_TWO]
          and report.advisory == "replacement criterion predicts solvable" and agree)
    dt = time.perf_counter() - t
    verdict_line(5, ok and dt < 60, f"dim A {dimension(ap)}, lowey {ap.lowey}, series {result.series.dims}", dt)


def test_criterion_06_quadric(verdict_line):
    t = time.perf_counter()
    ap = fixture_ap("ex6_3_small")
    report = certify(ap)
    result, agree = oracle_pass(ap, report)
    filt = radical_filtration(ap).dims
    ok = (dimension(ap) == 9 and list(filt) == [1, 3, 5] and report.verdict is Verdict.NOT_SOLVABLE
          and tags(report) == [CertRule.QD_QUADRIC] and not result.solvable and agree)
    dt = time.perf_counter() - t
    verdict_line(6, ok and dt < 10, f"filtration {list(filt)}, series {result.series.dims}", dt)


def test_criterion_07_certificate_only(verdict_line):
    t = time.perf_counter()
    ap = fixture_ap("ex6_4")
    report = certify(ap)
    try:
        run_oracle(ap)
        skipped = False
    except TooLargeError:
        skipped = True
    ok = report.verdict is Verdict.SOLVABLE and tags(report) == [CertRule.C23_NONSINGULAR] and skipped
    dt = time.perf_counter() - t
    verdict_line(7, ok and dt < 120, f"C23, oracle skipped {skipped}", dt)


def test_criterion_08_twenty_five_variables(verdict_line):
    t = time.perf_counter()
    ap = fixture_ap("ex5_4")
    report = certify(ap)
    W = minimal_degree_subspace(ap)
    ok = (report.verdict is Verdict.SOLVABLE and tags(report) == [CertRule.C23_NONSINGULAR]
          and W.dim == 3 and report.rank_bound == 3)
    dt = time.perf_counter() - t
    verdict_line(8, ok and dt < 120, f"n {ap.nvars}, dim W {W.dim}, rank bound {report.rank_bound}", dt)


def test_criterion_09_power_ideals(verdict_line):
    t = time.perf_counter()
    checks = []
    for name, verdict, der_dim, series in (("m2_n2", Verdict.NOT_SOLVABLE, 4, (4, 3, 3)),
                                           ("kx_x3", Verdict.SOLVABLE, 2, (2, 1, 0)),
                                           ("kx_x2", Verdict.SOLVABLE, 1, (1, 0))):
        s = time.perf_counter()
        ap = fixture_ap(name)
        report = certify(ap)
        result, agree = oracle_pass(ap, report)
        checks.append(report.verdict is verdict and result.der_dim == der_dim and result.series.dims == series
                      and agree and time.perf_counter() - s < 5)
    checks.append(certify(fixture_ap("kx_x2")).nilpotency_annotation == "torus")
    dt = time.perf_counter() - t
    verdict_line(9, all(checks), f"checks {checks}", dt)


def test_criterion_10_property_sharp(verdict_line):
    t = time.perf_counter()
    ap = fixture_ap("remark6_8_n4")
    report = certify(ap)
    result, agree = oracle_pass(ap, report)
    ok = (report.verdict is Verdict.NOT_SOLVABLE and tags(report) == [CertRule.PS_PROPERTY_SHARP]
          and not result.solvable and agree)
    dt = time.perf_counter() - t
    verdict_line(10, ok and dt < 30, f"PS, series {result.series.dims}", dt)


PROPERTY_SUITES = [
    "test_polyfield.py::test_ring_axioms",
    "test_polyfield.py::test_ring_axioms_mod_p",
    "test_polyfield.py::test_leibniz",
    "test_polyfield.py::test_euler_identity",
    "test_groebner.py::test_canonical_under_permutation",
    "test_groebner.py::test_normal_form_idempotent",
    "test_groebner.py::test_membership_matches_truncated_span",
    "test_algebra.py::test_filtration_and_lowey",
    "test_algebra.py::test_graded_ideal_properties",
    "test_certifier.py::test_nonsingularity_invariant_under_linear_change",
    "test_certifier.py::test_certify_deterministic",
    "test_deroracle.py::test_leibniz_and_jacobi",
    "test_deroracle.py::test_basis_elements_are_derivations_and_closed",
    "test_deroracle.py::test_closure_and_jacobi_on_fixtures",
]


def test_criterion_11_property_suites(verdict_line):
    t = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                           *(str(TESTS / s) for s in PROPERTY_SUITES)],
                          cwd=TESTS.parent, capture_output=True, text=True)
    summary = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    dt = time.perf_counter() - t
    verdict_line(11, proc.returncode == 0, f"{len(PROPERTY_SUITES)} suites: {summary}", dt)


def random_homogeneous_ideal(rng):
    n, l = rng.randint(1, 3), rng.randint(2, 4)
    gens = []
    for _ in range(rng.randint(0, 3) if l > 2 else 0):
        d = rng.randint(2, l - 1)
        mons = list(monomials_of_degree(n, d))
        terms = {rng.choice(mons): rng.randint(-3, 3) for _ in range(rng.randint(1, 3))}
        g = Polynomial(QQ, n, terms)
        if not g.is_zero():
            gens.append(g)
    return IdealPresentation(QQ, n, tuple(gens), l)


def test_criterion_12_consistency_sweep(verdict_line):
    t = time.perf_counter()
    rng = random.Random(20240601)
    counts = {"certified": 0, "inconclusive": 0, "pass": 0, "fail": 0, "conflict": 0}
    for _ in range(150):
        ap = validate_admissible(random_homogeneous_ideal(rng))
        try:
            report = certify(ap)
        except ConflictError:
            counts["conflict"] += 1
            continue
        if report.verdict is Verdict.INCONCLUSIVE:
            counts["inconclusive"] += 1
            continue
        counts["certified"] += 1
        status = cross_check(report, run_oracle(ap), ap.field).status
        counts["pass" if status is Consistency.PASS else "fail"] += 1
    dt = time.perf_counter() - t
    ok = counts["conflict"] == 0 and counts["fail"] == 0 and counts["pass"] == counts["certified"] > 0
    verdict_line(12, ok and dt < 900, f"150 ideals: {counts}", dt)
