import pytest
from hypothesis import given, strategies as st

from wonderful import formulas as fm
from wonderful.arrangements import irreducibles, maximal_building, regular, regular_tilde
from wonderful.oracle import betti_total, poincare_oracle
from wonderful.qpoly import ONE, QPolynomial

P = QPolynomial.from_text


@pytest.mark.parametrize("n,s,expected", [
    (4, 1, "q^2+5*q+1"),
    (5, 1, "q^3+16*q^2+16*q+1"),
    (5, 2, "q^3+26*q^2+26*q+1"),
    (6, 2, "q^4+67*q^3+222*q^2+67*q+1"),
    (6, 3, "q^4+142*q^3+372*q^2+142*q+1"),
])
def test_regular_A_golden(n, s, expected):
    assert fm.poincare_regular_A(n, s) == P(expected)


@pytest.mark.parametrize("n", range(1, 9))
def test_max_A_closed_equals_inductive(n):
    assert fm.poincare_max_A_closed(n) == fm.poincare_max_A_inductive(n)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_max_A_matches_oracle(n):
    assert fm.poincare_max_A(n) == poincare_oracle(maximal_building("A", n))


@pytest.mark.parametrize("n,s", [(n, s) for n in (4, 5) for s in range(1, n - 1)])
def test_A_families_match_oracle(n, s):
    assert fm.poincare_tilde_A(n, s) == poincare_oracle(regular_tilde("A", n, s))
    if s <= n - 2:
        assert fm.poincare_regular_A(n, s) == poincare_oracle(regular("A", n, s))


@pytest.mark.parametrize("n,s", [(n, s) for n in (3, 4) for s in range(0, n - 1)])
def test_B_families_match_oracle(n, s):
    assert fm.poincare_tilde_B(n, s) == poincare_oracle(regular_tilde("B", n, s))
    assert fm.poincare_regular_B(n, s) == poincare_oracle(regular("B", n, s))


@pytest.mark.parametrize("n", range(2, 7))
def test_tilde_B_closed_matches_inductive(n):
    for s in range(0, n - 1):
        assert fm.poincare_tilde_B_closed(n, s) == fm.poincare_tilde_B_inductive(n, s)
        assert fm.poincare_tilde_B_closed(n, s) == fm.poincare_tilde_B_recursive(n, s)


def test_literal_B_regressions():
    assert fm.poincare_tilde_B(4, 2, literal=True) == P("59*q^3+99*q^2+99*q+1")
    assert fm.poincare_tilde_B(4, 2) == fm.poincare_max_B(4)
    assert fm.poincare_regular_B(4, 1, literal=True) == P("5*q^3+65*q^2+61*q+1")
    assert fm.poincare_regular_B(4, 1) == P("q^3+63*q^2+63*q+1")


@pytest.mark.parametrize("n,s", [(4, 0), (4, 1), (4, 2)])
def test_D4_families_match_oracle(n, s):
    assert fm.poincare_tilde_D(n, s) == poincare_oracle(regular_tilde("D", n, s))
    assert fm.poincare_regular_D(n, s) == poincare_oracle(regular("D", n, s))


@pytest.mark.slow
@pytest.mark.parametrize("s", [0, 1, 2, 3])
def test_D5_families_match_oracle(s):
    assert fm.poincare_tilde_D(5, s) == poincare_oracle(regular_tilde("D", 5, s))
    assert fm.poincare_regular_D(5, s) == poincare_oracle(regular("D", 5, s))


def test_D_small_cases():
    assert fm.poincare_max_D(1) == ONE
    assert fm.poincare_max_D(2)(1) == betti_total(maximal_building("D", 2))
    assert fm.poincare_max_D(2) == P("q+1")
    assert fm.poincare_max_D(3) == P("q^2+8*q+1") == fm.poincare_max_A(4)
    assert fm.poincare_max_D(3) == poincare_oracle(maximal_building("D", 3))


def test_D_literal_regressions():
    assert fm.poincare_tilde_D(3, 1, literal=True) == P("q^2+7*q+1")
    assert fm.poincare_regular_D(4, 1, literal=True) == P("q^3+45*q^2+45*q+1")
    assert fm.poincare_regular_D(4, 1) == P("q^3+41*q^2+41*q+1")


@pytest.mark.parametrize("n", range(2, 7))
def test_gamma_nonnegative(n):
    assert fm.gamma_max_D(n).is_nonnegative()
    for s in range(0, n):
        assert fm.gamma_s_D(n, s).is_nonnegative()


def test_tilde_mixed():
    assert fm.poincare_tilde_mixed(3, 1, 1) == P("q^2+10*q+1")
    assert fm.poincare_tilde_mixed(3, 3, 1) == fm.poincare_max_B(3)
    assert fm.poincare_tilde_mixed(4, 0, 3) == fm.poincare_max_D(4)
    with pytest.raises(ValueError):
        fm.poincare_tilde_mixed(2, 3, 1)


@pytest.mark.parametrize("n,s", [(3, 1), (4, 1), (4, 2), (5, 2)])
def test_boolean_matches_oracle(n, s):
    assert fm.poincare_regular_boolean(n, s) == poincare_oracle(regular("Boolean", n, s))


@pytest.mark.parametrize("kind,n", [("A", 5), ("B", 3), ("D", 4)])
def test_blowup_induction_matches_oracle(kind, n):
    g = irreducibles(kind, n)
    assert fm.poincare_blowup_induction(g) == poincare_oracle(g)


@given(st.integers(2, 10))
def test_euler_A(n):
    chi = fm.euler_from_poincare(fm.poincare_max_A(n))
    assert chi == fm.euler_permutohedron_A(n) == fm.euler_closed_A(n)
    if n % 2 == 1:
        assert chi == 0


@given(st.integers(2, 8))
def test_euler_B(n):
    assert fm.euler_from_poincare(fm.poincare_max_B(n)) == fm.euler_permutohedron_B(n)


def test_euler_values():
    assert [fm.euler_closed_A(n) for n in range(2, 9)] == [1, 0, -6, 0, 360, 0, -85680]
    with pytest.raises(ArithmeticError):
        fm.euler_from_poincare(P("1/2*q+1"))


@pytest.mark.parametrize("kind,upto", [("A", 8), ("B", 7), ("D", 7)])
def test_palindromic(kind, upto):
    start = 4 if kind == "D" else 3
    for n in range(start, upto + 1):
        assert fm.poincare(kind, n).is_palindromic()
        for s in range(0 if kind != "A" else 1, n - 2):
            p = fm.poincare(kind, n, s)
            assert p.is_palindromic() and p.is_integral() and p.is_nonnegative(), (kind, n, s, p)


def test_dispatch_errors():
    with pytest.raises(ValueError):
        fm.poincare("C", 3)
    with pytest.raises(ValueError):
        fm.poincare_regular_A(2, 1)
    with pytest.raises(ValueError):
        fm.poincare_regular_D(3, 0)
