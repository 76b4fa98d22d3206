"""Acceptance criteria, one PASS/FAIL line each.

Run under pytest (lines appear inline with -v) or directly:
    python3 tests/test_acceptance.py
"""

import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from burchkit import semigroup as sg
from burchkit.exactla import FieldSpec, Matrix, kernel_basis, rref
from burchkit.harness import fixtures
from burchkit.harness.properties import run_property_suite
from burchkit.harness.semigroups import enumerate_semigroups


def report(n, ok, limit, elapsed, detail, capsys=None):
    fast = elapsed < limit
    line = (f"{'PASS' if ok and fast else 'FAIL'} criterion {n}: {detail} "
            f"[{elapsed:.2f}s, limit {limit}s]")
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    return ok and fast


def crit1():
    t = time.perf_counter()
    H = sg.NumericalSemigroup((9, 10, 61, 62))
    s = sg.surjection_criterion(H)
    got = {"pf": H.pf, "via_pf": s["via_pf"], "via_colon": s["via_colon"],
           "minimal_multiplicity": H.profile()["minimal_multiplicity"],
           "nearly_gorenstein": sg.nearly_gorenstein(H), "self_dual": sg.self_dual_check(H)}
    want = {"pf": [51, 52, 53], "via_pf": True, "via_colon": True, "minimal_multiplicity": False,
            "nearly_gorenstein": False, "self_dual": False}
    return got == want, 1, time.perf_counter() - t, f"semigroup 9,10,61,62 {got}"


def crit2():
    t = time.perf_counter()
    bad = []
    for char in (32003, 0):
        r = fixtures.fixture_f2(char=char)
        bad += [f"{r.field}:{c.name}={c.computed}" for c in r.checks if not c.ok]
    detail = "four-variable Burch example, both fields, auto window; " + ("all checks hold" if not bad else
                                                         "failing " + ", ".join(bad))
    return not bad, 30, time.perf_counter() - t, detail


def _fixture_crit(name, limit, label):
    t = time.perf_counter()
    rs = [fixtures.FIXTURES[name](char=c) for c in (32003, 0)]
    bad = [f"{r.field}:{c.name}" for r in rs for c in r.checks if not c.ok]
    return not bad, limit, time.perf_counter() - t, label + (f"; failing {bad}" if bad else "")


def crit3():
    return _fixture_crit("F3", 5, "exact zero-divisor pair: Tor_1 = 0, Ext^1 = 0, beta_0..6 = 1")


def crit4():
    return _fixture_crit("F4", 5, "X = R/vR + R, N = m/vR + R: weakly m-full, faithful, Tor_1 = 0, nonfree")


def crit5():
    t = time.perf_counter()
    rs = [fixtures.fixture_f5(char=c) for c in (32003, 0)]
    ok = all(r.passed for r in rs)
    d = rs[0].data
    return ok, 5, time.perf_counter() - t, f"mu(L) = {d['mu_L']}, 1 + dim Ext^1(k,R) = {1 + d['ext1_k_R']}"


def crit6():
    t = time.perf_counter()
    r = run_property_suite(seed=42, count=200)
    ok = r.passed and not r.violations and r.max_skip_rate() < 0.20
    detail = (f"verify random seed 42 count 200: {len(r.violations)} violations, max skip rate "
              f"{r.max_skip_rate():.1%}, planted breach caught {r.self_test}, Burch rate {r.burch_rate:.1%}")
    return ok, 600, time.perf_counter() - t, detail


def crit7():
    t = time.perf_counter()
    r = enumerate_semigroups(4, 40)
    ok = (r.passed and r.checks["via_pf_eq_via_colon"][1] == 0
          and r.checks["symmetric_implies_nearly_gorenstein"][1] == 0
          and r.notable["4,5,6"]["surjection"] is False)
    detail = (f"{r.total} semigroups; via_pf<=>via_colon fails {r.checks['via_pf_eq_via_colon'][1]}, "
              f"symmetric=>NG fails {r.checks['symmetric_implies_nearly_gorenstein'][1]}, "
              f"<4,5,6> surjection {r.notable['4,5,6']['surjection']}")
    return ok, 120, time.perf_counter() - t, detail


def _random_matrix(rng, char):
    rows, cols = int(rng.integers(1, 9)), int(rng.integers(1, 9))
    F = FieldSpec.from_char(char)
    # low rank is common: build from a product half the time
    if rng.random() < 0.5:
        k = int(rng.integers(1, min(rows, cols) + 1))
        a = rng.integers(-4, 5, size=(rows, k)) @ rng.integers(-4, 5, size=(k, cols))
    else:
        a = rng.integers(-9, 10, size=(rows, cols))
    entries = a.tolist()
    if char == 0:
        dens = rng.integers(1, 5, size=(rows, cols)).tolist()
        entries = [[Fraction(x, d) for x, d in zip(r, dr)] for r, dr in zip(entries, dens)]
    return Matrix(F, entries)


def crit8(count=10_000):
    t = time.perf_counter()
    bad = 0
    for seed in range(2 * count):
        rng = np.random.default_rng(seed)
        A = _random_matrix(rng, 32003 if seed < count else 0)
        K = kernel_basis(A)
        R, piv, r = rref(A)
        R2, piv2, r2 = rref(R)
        ok = (K.cols == 0 or (A @ K).is_zero()) and r + K.cols == A.cols
        ok = ok and R2 == R and piv2 == piv and r2 == r
        bad += not ok
    detail = f"{count} matrices over each of F_32003 and Q: {bad} failures of A*ker = 0, rank-nullity, rref idempotence"
    return bad == 0, 60, time.perf_counter() - t, detail


CRITERIA = {1: crit1, 2: crit2, 3: crit3, 4: crit4, 5: crit5, 6: crit6, 7: crit7, 8: crit8}


def _run(n, capsys):
    ok, limit, elapsed, detail = CRITERIA[n]()
    assert report(n, ok, limit, elapsed, detail, capsys)


def test_criterion_1_semigroup_example(capsys):
    _run(1, capsys)


@pytest.mark.xfail(strict=True, reason="Tor_1(R/wR, N) != 0 for the ideal as given (ann w = (x)); "
                                       "see decisions ledger")
def test_criterion_2_burch_not_tor_rigid(capsys):
    _run(2, capsys)


def test_criterion_3_exact_zero_divisors(capsys):
    _run(3, capsys)


def test_criterion_4_weakly_m_full(capsys):
    _run(4, capsys)


def test_criterion_5_mu_of_colon(capsys):
    _run(5, capsys)


@pytest.mark.slow
def test_criterion_6_property_suite(capsys):
    _run(6, capsys)


@pytest.mark.slow
def test_criterion_7_semigroup_enumeration(capsys):
    _run(7, capsys)


def test_criterion_8_linear_algebra(capsys):
    _run(8, capsys)


if __name__ == "__main__":
    results = [report(n, *fn()) for n, fn in CRITERIA.items()]
    sys.exit(0 if all(results) else 1)
