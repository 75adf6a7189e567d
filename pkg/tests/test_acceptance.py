"""Acceptance criteria, one PASS/FAIL line each.

Run on its own with ``pytest tests/test_acceptance.py -v -s``; the lines are
also shown without ``-s``.  Each criterion pins its time limit in seconds.
"""
import random
import time
from itertools import product

import pytest

from wonderful import formulas as fm
from wonderful import partitions as pt
from wonderful import series as sr
from wonderful.arrangements import (
    BuildingSet, contains, g_of_antichain, invariant_building_sets, irreducibles, is_building,
    is_invariant, maximal_building, quotient_building, regular, regular_tilde, span_dim, subspace_sum,
)
from wonderful.oracle import poincare_oracle
from wonderful.qpoly import QPolynomial, blowup_factor

P = QPolynomial.from_text


@pytest.fixture
def report(capsys):
    def emit(label, ok, elapsed, limit, failures=()):
        status = "PASS" if ok and elapsed < limit else "FAIL"
        line = f"{status} {label} ({elapsed:.2f} s, limit {limit} s)"
        if failures:
            line += " failing: " + "; ".join(failures)
        with capsys.disabled():
            print("\n" + line)
        return status == "PASS"
    return emit


def run_criterion(report, label, limit, checks):
    """``checks`` yields ``(name, ok)`` pairs; the criterion passes when all
    are true within ``limit`` seconds."""
    start = time.perf_counter()
    failures = [name for name, ok in checks() if not ok]
    elapsed = time.perf_counter() - start
    assert report(label, not failures, elapsed, limit, failures), failures


# ---------------------------------------------------------------------------
# 1. printed polynomials

GOLDEN_REGULAR_A = [
    (5, 1, "q^3+16*q^2+16*q+1"),
    (5, 2, "q^3+26*q^2+26*q+1"),
    (5, 3, "q^3+41*q^2+41*q+1"),
    (6, 1, "q^4+42*q^3+127*q^2+42*q+1"),
    (6, 2, "q^4+67*q^3+222*q^2+67*q+1"),
    (6, 3, "q^4+142*q^3+372*q^2+142*q+1"),
    (6, 4, "q^4+187*q^3+732*q^2+187*q+1"),
    (7, 5, "q^5+855*q^4+9556*q^3+9556*q^2+855*q+1"),
]


def _timed(fn):
    start = time.perf_counter()
    value = fn()
    return value, time.perf_counter() - start


def test_criterion_1_golden_polynomials(report):
    def checks():
        for n, s, text in GOLDEN_REGULAR_A:
            got, t = _timed(lambda: fm.poincare_regular_A(n, s))
            yield f"A n={n} s={s}", got == P(text) and t < 1
        yield "max n=2", fm.poincare_max_A(2) == P("1")
        yield "max n=3", fm.poincare_max_A(3) == P("q+1")
        yield "tilde D2 s=0", fm.poincare_tilde_D(2, 0) == P("1+q")
        yield "tilde D3 s=0", fm.poincare_tilde_D(3, 0) == P("1+q+q^2")
    run_criterion(report, "[1] printed polynomials (A families, maximal bases, D2/D3 s=0)", 8, checks)


@pytest.mark.xfail(strict=True, reason="printed D3 base 1+7q+q^2 disagrees with the oracle (1+8q+q^2)")
def test_criterion_1_printed_D3_base(report):
    def checks():
        oracle = poincare_oracle(maximal_building("D", 3))
        yield "oracle D3", oracle == P("1+7*q+q^2")
        for s in (1, 2):
            yield f"tilde D3 s={s}", fm.poincare_tilde_D(3, s) == P("1+7*q+q^2")
    run_criterion(report, "[1] printed D3 base 1+7q+q^2 for s=1,2", 1, checks)


# ---------------------------------------------------------------------------
# 2. oracle equivalence

def _family_checks(kind, n):
    low = 1 if kind == "A" else 0
    for s in range(low, n - 1):
        yield f"{kind}{n} s={s}", fm.poincare(kind, n, s) == poincare_oracle(regular(kind, n, s))
    for s in range(low, n - 1):
        yield f"{kind}{n} tilde s={s}", fm.poincare(kind, n, s, tilde=True) == poincare_oracle(
            regular_tilde(kind, n, s))
    yield f"{kind}{n} max", fm.poincare(kind, n) == poincare_oracle(maximal_building(kind, n))


def test_criterion_2_oracle_A45(report):
    run_criterion(report, "[2] oracle equivalence, type A n=4,5", 10,
                  lambda: (c for n in (4, 5) for c in _family_checks("A", n)))


@pytest.mark.slow
def test_criterion_2_oracle_A6(report):
    run_criterion(report, "[2] oracle equivalence, type A n=6", 300, lambda: _family_checks("A", 6))


def test_criterion_2_oracle_B34(report):
    run_criterion(report, "[2] oracle equivalence, type B n=3,4", 60,
                  lambda: (c for n in (3, 4) for c in _family_checks("B", n)))


def test_criterion_2_oracle_D4(report):
    run_criterion(report, "[2] oracle equivalence, type D n=4", 60, lambda: _family_checks("D", 4))


def test_criterion_2_oracle_boolean(report):
    def checks():
        for n in range(1, 6):
            g = maximal_building("Boolean", n)
            yield f"boolean {n} max", fm.poincare_blowup_induction(g) == poincare_oracle(g)
            for s in range(0, n):
                yield f"boolean {n} s={s}", fm.poincare_regular_boolean(n, s) == poincare_oracle(
                    regular("Boolean", n, s))
    run_criterion(report, "[2] oracle equivalence, boolean n<=5 by blow-up induction", 10, checks)


# ---------------------------------------------------------------------------
# 3. dual formulas

def test_criterion_3_max_A_dual(report):
    run_criterion(report, "[3] maximal A inductive = closed, n<=12", 5, lambda: (
        (f"n={n}", fm.poincare_max_A_inductive(n) == fm.poincare_max_A_closed(n)) for n in range(1, 13)))


def test_criterion_3_tilde_B_dual(report):
    run_criterion(report, "[3] tilde B closed = inductive, n<=8, all s", 30, lambda: (
        (f"n={n} s={s}", fm.poincare_tilde_B_closed(n, s) == fm.poincare_tilde_B_inductive(n, s))
        for n in range(2, 9) for s in range(0, n - 1)))


# ---------------------------------------------------------------------------
# 4. Euler characteristics

def test_criterion_4_euler(report):
    def checks():
        for n in range(2, 11):
            chi = fm.euler_from_poincare(fm.poincare_max_A(n))
            yield f"A n={n}", chi == fm.euler_permutohedron_A(n) == fm.euler_closed_A(n)
            if n % 2:
                yield f"A n={n} vanishes", chi == 0
        yield "A n=6 is 360", fm.euler_from_poincare(fm.poincare_max_A(6)) == 360
        for n in range(2, 7):
            yield f"B n={n}", fm.euler_permutohedron_B(n) == fm.poincare_tilde_B(n, n - 2)(-1)
    run_criterion(report, "[4] Euler identities", 5, checks)


# ---------------------------------------------------------------------------
# 5. classification

EXPECTED_COUNTS = {("A", 3): 1, ("A", 4): 2, ("B", 3): 2}


def test_criterion_5_classification(report):
    def checks():
        for kind, n in [("A", 2), ("A", 3), ("A", 4), ("A", 5), ("B", 2), ("B", 3), ("B", 4), ("D", 4)]:
            found = set(invariant_building_sets(kind, n))
            chains = list(pt.antichains(pt.building_poset(kind, n)))
            indexed = [g_of_antichain(a, kind, n) for a in chains]
            yield f"{kind}{n} distinct", len(set(indexed)) == len(indexed)
            yield f"{kind}{n} equal", set(indexed) == found
            yield f"{kind}{n} building+invariant", all(is_building(g) and is_invariant(g) for g in found)
            if (kind, n) in EXPECTED_COUNTS:
                yield f"{kind}{n} count", len(found) == EXPECTED_COUNTS[kind, n]
    run_criterion(report, "[5] classification by exhaustive orbit search", 300, checks)


# ---------------------------------------------------------------------------
# 6. series

def test_criterion_6_series(report):
    def checks():
        for n in range(2, 7):
            yield f"A n={n}", sr.minimal_poincare("A", n) == poincare_oracle(irreducibles("A", n))
        for n in range(2, 5):
            yield f"B n={n}", sr.minimal_poincare("B", n) == poincare_oracle(irreducibles("B", n))
        oracle = poincare_oracle(irreducibles("D", 4))
        good = [r for r in sr.D_READINGS if sr.minimal_poincare("D", 4, reading=r) == oracle]
        yield "D4 switch has one consistent setting", len(good) == 1
        yield "D4 consistent setting is the default", good == [sr.DEFAULT_D_READING]
    run_criterion(report, "[6] series concordance and D switch default", 60, checks)


@pytest.mark.xfail(strict=True, reason="neither printed reading of the D series matches the D4 oracle")
def test_criterion_6_printed_D_reading(report):
    def checks():
        oracle = poincare_oracle(irreducibles("D", 4))
        good = [r for r in sr.LAMBDA_A_CHOICES if sr.minimal_poincare("D", 4, reading=r) == oracle]
        yield "exactly one printed reading matches D4", len(good) == 1
    run_criterion(report, "[6] printed D series reading matches D4", 60, checks)


# ---------------------------------------------------------------------------
# 7. property suites

def _poset_axioms(n):
    ps = [pt.Partition(p) for p in pt.integer_partitions(n)]
    for a in ps:
        if not pt.leq_A(a, a):
            return False
    for a, b in product(ps, repeat=2):
        if a != b and pt.leq_A(a, b) and (pt.leq_A(b, a) or not pt.dominance_leq(a, b)):
            return False
        for c in ps:
            if pt.leq_A(a, b) and pt.leq_A(b, c) and not pt.leq_A(a, c):
                return False
    return True


def _rank_checks():
    for kind, ns in (("A", range(2, 6)), ("B", range(2, 5)), ("D", range(2, 5)), ("Boolean", range(1, 5))):
        for n in ns:
            members = maximal_building(kind, n).members
            ok = all(m.dim == span_dim(m) for m in members)
            rng = random.Random(n)
            for _ in range(50):
                x, y = rng.choice(members), rng.choice(members)
                ok = ok and subspace_sum(x, y).dim == span_dim(subspace_sum(x, y))
            yield f"rank {kind}{n}", ok


def _blowup_checks():
    rng = random.Random(11)
    pool = [g for kind, n in (("A", 4), ("A", 5), ("B", 3), ("D", 4)) for g in invariant_building_sets(kind, n)]
    for g in rng.sample(pool, 10):
        minimal = [m for m in g if not any(o != m and contains(m, o) for o in g)]
        g0 = rng.choice(minimal)
        rest = BuildingSet(g.kind, g.n, [m for m in g if m != g0])
        lhs = poincare_oracle(rest) + blowup_factor(g0.dim) * poincare_oracle(quotient_building(g, g0))
        yield f"blow-up {g!r:.40}", lhs == poincare_oracle(g)


def _shape_checks():
    polys = []
    for kind, ns in (("A", range(3, 9)), ("B", range(2, 8)), ("D", range(4, 8))):
        for n in ns:
            polys.append((f"{kind}{n} max", fm.poincare(kind, n)))
            for s in range(1 if kind == "A" else 0, n - 1):
                polys.append((f"{kind}{n} s={s}", fm.poincare(kind, n, s)))
                polys.append((f"{kind}{n} tilde s={s}", fm.poincare(kind, n, s, tilde=True)))
    for name, p in polys:
        yield name, p.is_palindromic() and p.is_nonnegative() and p.is_integral() and p(0) == 1


def test_criterion_7_properties(report):
    P_ = pt.Partition.of

    def checks():
        for n in range(1, 9):
            yield f"poset axioms n={n}", _poset_axioms(n)
        yield "(4,3)/(5,2) dominance without leq", (
            pt.dominance_leq(P_(4, 3), P_(5, 2)) and not pt.leq_A(P_(4, 3), P_(5, 2)))
        yield "upper bounds of (8,4,4),(7,5,3,1)", set(
            pt.minimal_upper_bounds(P_(8, 4, 4), P_(7, 5, 3, 1))) == {P_(12, 4), P_(8, 8)}
        for n in range(1, 9):
            yield f"no moves at 1^{n}", pt.admissible_moves_A(P_(*[1] * n)) == set()
        yield from _rank_checks()
        yield from _blowup_checks()
        yield from _shape_checks()
    run_criterion(report, "[7] property suites", 120, checks)
