"""Closed, inductive and series-based Poincaré polynomials of wonderful
models, the generic blow-up induction, and Euler characteristics at ``q = -1``.

Where a printed formula and the brute-force oracle disagree, the printed
version is kept under a ``literal`` switch next to the corrected default.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cache
from itertools import combinations
from math import comb, factorial

from .arrangements import BuildingSet, as_generic, count_of_form, quotient_building
from .partitions import Partition, integer_partitions, SingularPartition, is_singular_building
from .qpoly import (
    ONE, QPolynomial, ZERO, blowup_factor, f_poly, ftilde_poly, h_poly, jk_lists,
    jk_tilde_lists, stirling2,
)
from . import series as _series


def _check(cond, message):
    if not cond:
        raise ValueError(message)


# ---------------------------------------------------------------------------
# generic blow-up induction

def poincare_blowup_induction(g: BuildingSet) -> QPolynomial:
    """Remove a minimal member ``G0`` and recurse on ``g - G0`` and on the
    quotient family, weighting the latter by ``q + ... + q^(dim G0 - 1)``."""
    memo: dict = {}

    def rec(h: BuildingSet) -> QPolynomial:
        if not len(h):
            return ONE
        key = h.fingerprint()
        hit = memo.get(key)
        if hit is not None:
            return hit
        g0 = h.members[0]
        rest = BuildingSet(h.kind, h.n, h.members[1:])
        out = rec(rest)
        factor = blowup_factor(g0.dim)
        if not factor.is_zero():
            out = out + factor * rec(quotient_building(h, g0))
        memo[key] = out
        return out

    return rec(as_generic(g))


# ---------------------------------------------------------------------------
# type A

@cache
def poincare_max_A_inductive(n: int) -> QPolynomial:
    """Sum over partitions of ``n`` of ``[n - l] t_lambda P_max(l)``."""
    _check(n >= 1, "n must be positive")
    if n == 1:
        return ONE
    total = ONE
    for parts in integer_partitions(n):
        l = len(parts)
        if l == n:
            continue
        factor = blowup_factor(n - l)
        if factor.is_zero():
            continue
        total = total + factor * count_of_form("A", n, Partition(parts)) * poincare_max_A_inductive(l)
    return total


def _chain_sum(n: int, top: int, factor) -> QPolynomial:
    """``1 + sum over J_k(top)`` of ``factor(j2, j1) ... factor(n, jk)``."""
    total = ONE
    k = 1
    while True:
        lists = jk_lists(k, top)
        if not lists:
            break
        for js in lists:
            term = factor(n, js[-1])
            for a, b in zip(js, js[1:]):
                term = term * factor(b, a)
            total = total + term
        k += 1
    return total


@cache
def poincare_max_A_closed(n: int) -> QPolynomial:
    _check(n >= 1, "n must be positive")
    if n <= 2:
        return ONE
    return _chain_sum(n, n - 2, f_poly)


def poincare_max_A(n: int) -> QPolynomial:
    return poincare_max_A_closed(n)


@cache
def poincare_tilde_A(n: int, s: int) -> QPolynomial:
    """Model of the family of all subspaces of dimension ``>= n - s``."""
    _check(n >= 2, "n must be at least 2")
    _check(s >= 1, "s must be at least 1")
    if n <= 2:
        return ONE
    return _chain_sum(n, min(s, n - 2), f_poly)


def _tilde_A_base(j: int, s: int) -> QPolynomial:
    if j <= 2:
        return ONE
    if s >= j - 1:
        return poincare_max_A(j)
    return poincare_tilde_A(j, s)


@cache
def poincare_regular_A(n: int, s: int, order: int | None = None) -> QPolynomial:
    """Irreducibles plus all subspaces of dimension ``>= n - s``."""
    _check(n >= 3, "n must be at least 3")
    _check(s >= 1, "s must be at least 1")
    if s >= n - 2:
        return poincare_max_A(n)
    total = poincare_tilde_A(n, s)
    for j in range(s + 1, n - 1):
        total = total + _series.stratum("A", n, j, order) * _tilde_A_base(j, s)
    return total


# ---------------------------------------------------------------------------
# type B

@cache
def poincare_max_B(n: int) -> QPolynomial:
    _check(n >= 0, "n must be nonnegative")
    if n <= 1:
        return ONE
    return poincare_tilde_B_recursive(n, n - 2)


@cache
def poincare_tilde_B_recursive(n: int, s: int) -> QPolynomial:
    """``1 + sum_{j <= s+1} h_{n,j} P(B_{j-1})``; the quotients are maximal."""
    _check(n >= 0 and s >= 0, "need n >= 0 and s >= 0")
    if n <= 1:
        return ONE
    s = min(s, n - 2)
    total = ONE
    for j in range(1, s + 2):
        total = total + h_poly(n, j) * poincare_max_B(j - 1)
    return total


def poincare_tilde_B_literal(n: int, s: int) -> QPolynomial:
    """``1 + sum over J_k(s+1)`` of ``h_{j2,j1} h_{j3,j2} ... h_{n,jk}``."""
    _check(n >= 2 and 0 <= s, "need n >= 2 and s >= 0")
    return _chain_sum(n, min(s, n - 2) + 1, h_poly)


@cache
def poincare_tilde_B_closed(n: int, s: int) -> QPolynomial:
    """Unrolled recursion: ``h_{n,jk} h_{jk - 1, j(k-1)} ... h_{j2 - 1, j1}``."""
    _check(n >= 0 and s >= 0, "need n >= 0 and s >= 0")
    if n <= 1:
        return ONE
    top = min(s, n - 2) + 1
    total = ONE
    k = 1
    while True:
        lists = jk_lists(k, top)
        if not lists:
            break
        for js in lists:
            term = h_poly(n, js[-1])
            for a, b in zip(js, js[1:]):
                term = term * h_poly(b - 1, a)
            total = total + term
        k += 1
    return total


@cache
def poincare_tilde_B_inductive(n: int, s: int) -> QPolynomial:
    """Blow-up induction grouped into weak irreducibles, strong irreducibles
    and subspaces with a singular building form; every quotient is again a
    member of the same family."""
    _check(n >= 0 and s >= 0, "need n >= 0 and s >= 0")
    if n <= 1:
        return ONE
    total = ONE
    for j in range(max(n - s + 1, 2), n + 1):
        total = total + blowup_factor(j - 1) * (comb(n, j) * 2 ** (j - 1)) * poincare_tilde_B_inductive(n - j + 1, s)
    for j in range(max(n - s, 1), n):
        total = total + blowup_factor(j) * comb(n, j) * poincare_tilde_B_inductive(n - j, s)
    for r in range(0, n + 1):
        for parts in integer_partitions(n - r):
            sp = SingularPartition(r, parts)
            if not is_singular_building(sp, "B") or len(parts) > s:
                continue
            l = len(parts)
            total = total + blowup_factor(n - l) * count_of_form("B", n, sp) * poincare_tilde_B_inductive(l, s)
    return total


def poincare_tilde_B(n: int, s: int, literal: bool = False) -> QPolynomial:
    _check(n >= 2, "n must be at least 2")
    _check(s >= 0, "s must be nonnegative")
    return poincare_tilde_B_literal(n, s) if literal else poincare_tilde_B_closed(n, s)


def _tilde_B_base(j: int, s: int) -> QPolynomial:
    if j <= 1:
        return ONE
    if s >= j - 1:
        return poincare_max_B(j)
    return poincare_tilde_B_closed(j, s)


@cache
def poincare_regular_B(n: int, s: int, order: int | None = None, literal: bool = False) -> QPolynomial:
    """Irreducibles plus all subspaces of dimension ``>= n - s``.

    Each stratum of the minimal series is paired with the family induced on
    the quotient by the top of its nested set.  A strong tree lowers that
    quotient by one dimension, so the default splits ``Phi_B`` accordingly.
    ``literal=True`` pairs the ``y^j`` part of ``Phi_B(q,t,y)`` with ``B_j``
    throughout, which overcounts for ``n >= 3``.
    """
    _check(n >= 2, "n must be at least 2")
    _check(s >= 0, "s must be nonnegative")
    if s >= n - 2:
        return poincare_max_B(n)
    order = max(order or _series.DEFAULT_ORDER, n)
    norm = _series.normalizer("B", n)
    total = poincare_tilde_B_closed(n, s)
    if literal:
        phi = _series.b_series(order)[3]
        for j in range(s + 1, n - 1):
            total = total + phi.coeff(n, j) * norm * _tilde_B_base(j, s)
        return total
    weak, strong = _series.b_quotient_strata(order)
    for j in range(s + 1, n):
        total = total + (weak.coeff(n, j) + strong.coeff(n, j)) * norm * _tilde_B_base(j, s)
    return total


# ---------------------------------------------------------------------------
# type D

PRINTED_D_BASES = {
    (1, 0): QPolynomial((1,)),
    (2, 0): QPolynomial((1, 1)),
    (2, 1): QPolynomial((1, 1)),
    (3, 0): QPolynomial((1, 1, 1)),
    (3, 1): QPolynomial((1, 7, 1)),
    (3, 2): QPolynomial((1, 7, 1)),
}


def _gamma(n: int, s: int | None, literal: bool) -> QPolynomial:
    """Contribution of the maximal-B chains through a subspace with a
    strong singleton.  ``s=None`` means the maximal family.

    The corrected version weights each chain by the ``2^(n-1-j1)`` sign
    colourings of the weak blocks of that subspace and bounds the lowest
    member's dimension (``jk <= s-1`` once the chain has a weak part below)."""
    total = ZERO
    k = 1
    while True:
        lists = jk_tilde_lists(k, n)
        if not lists:
            break
        for js in lists:
            jk = js[-2]
            if s is not None:
                bound = s if (literal or k == 1) else s - 1
                if jk > bound:
                    continue
            j1 = js[0]
            term = ftilde_poly(js[1], j1)
            for a, b in zip(js[1:], js[2:]):
                term = term * f_poly(b, a)
            if s is None:
                term = term * poincare_max_B(j1)
            else:
                term = term * _tilde_B_base(j1, s)
            if not literal:
                term = term * 2 ** (n - 1 - j1)
            total = total + term
        k += 1
    return total * n


def gamma_max_D(n: int, literal: bool = False) -> QPolynomial:
    _check(n >= 2, "n must be at least 2")
    return _gamma(n, None, literal)


def gamma_s_D(n: int, s: int, literal: bool = False) -> QPolynomial:
    _check(n >= 2 and s >= 0, "need n >= 2 and s >= 0")
    if s >= n - 1:
        return gamma_max_D(n, literal)
    return _gamma(n, s, literal)


def poincare_max_D(n: int, literal: bool = False) -> QPolynomial:
    _check(n >= 1, "n must be at least 1")
    if n == 1:
        return ONE
    if literal and n < 4:
        return PRINTED_D_BASES[(n, n - 2)]
    return poincare_max_B(n) - gamma_max_D(n, literal)


@cache
def poincare_tilde_D(n: int, s: int, literal: bool = False) -> QPolynomial:
    """All maximal-D subspaces of dimension ``>= n - s``.

    ``literal=True`` uses the printed ``Gamma`` and, below ``n = 4``, the
    printed table of small cases."""
    _check(n >= 1 and s >= 0, "need n >= 1 and s >= 0")
    if n == 1:
        return ONE
    if literal and n < 4:
        return PRINTED_D_BASES[(n, min(s, n - 1))]
    if s >= n - 2:
        return poincare_max_D(n, literal)
    return poincare_tilde_B_closed(n, s) - gamma_s_D(n, s, literal)


def poincare_tilde_mixed(j: int, m: int, s: int) -> QPolynomial:
    """Tilde family on ``j`` coordinates of which ``m`` may vanish alone
    (``m = j`` is type B, ``m = 0`` is type D).

    Only the ``j - m`` remaining coordinates lose their strong singletons,
    and by symmetry each accounts for ``Gamma / j``."""
    _check(0 <= m <= j, "need 0 <= m <= j")
    if j <= 1:
        return ONE
    b = _tilde_B_base(j, s)
    if m == j:
        return b
    gamma = gamma_s_D(j, s)
    return b - gamma * Fraction(j - m, j)


@cache
def poincare_regular_D(n: int, s: int, order: int | None = None, literal: bool = False,
                       reading: str = "lambda") -> QPolynomial:
    """Irreducibles plus all maximal-D subspaces of dimension ``>= n - s``.

    The default groups the corrected strong-tree series by quotient
    dimension and, for weak forests, by the number of trees with two or more
    leaves, since those give quotient coordinates that may vanish alone.
    ``literal=True`` follows the printed recipe: ``Phi_D(q,t,y)`` in the given
    ``reading`` (see `series.d_series_printed`) paired with ``D_j``.
    """
    _check(n >= 4, "n must be at least 4")
    _check(s >= 0, "s must be nonnegative")
    if s >= n - 2:
        return poincare_max_D(n, literal)
    order = max(order or _series.DEFAULT_ORDER, n)
    norm = _series.normalizer("D", n)
    total = poincare_tilde_D(n, s, literal)
    if literal:
        phi = _series.d_series_printed(order, reading)[2]
        for j in range(s + 1, n - 1):
            total = total + phi.coeff(n, j) * norm * poincare_tilde_D(j, s, literal=True)
        return total
    weak, strong = _series.d_quotient_strata(order)
    for j in range(s + 1, n):
        for m, series in weak.items():
            c = series.coeff(n, j)
            if not c.is_zero():
                total = total + c * norm * poincare_tilde_mixed(j, m, s)
        total = total + strong.coeff(n, j) * norm * _tilde_B_base(j, s)
    return total


# ---------------------------------------------------------------------------
# boolean

def poincare_regular_boolean(n: int, s: int) -> QPolynomial:
    """Blow-up induction on the boolean regular family."""
    from .arrangements import regular
    return poincare_blowup_induction(regular("Boolean", n, s))


# ---------------------------------------------------------------------------
# Euler characteristics

def euler_from_poincare(p: QPolynomial) -> int:
    value = p(-1)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral Euler characteristic {value}")
    return int(value)


def _exact(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"inexact division: {x}")
    return int(x)


def euler_permutohedron_A(n: int) -> int:
    """Face count of ``n!`` glued permutohedra of dimension ``n - 2``."""
    _check(n >= 2, "n must be at least 2")
    total = Fraction(0)
    for i in range(n - 1):
        faces = stirling2(n - 1, n - 1 - i) * factorial(n - 1 - i)
        total += (-1) ** i * Fraction(faces * factorial(n), 2 ** (n - i - 1))
    return _exact(total)


def euler_closed_A(n: int) -> int:
    """Signed Stirling chains with every index of the parity of ``n``."""
    _check(n >= 2, "n must be at least 2")
    total = 1
    idx = [j for j in range(1, n - 1) if (n - j) % 2 == 0]
    for k in range(1, len(idx) + 1):
        for js in combinations(idx, k):
            term = stirling2(n, js[-1])
            for a, b in zip(js, js[1:]):
                term *= stirling2(b, a)
            total += (-1) ** k * term
    return total


def euler_permutohedron_B(n: int) -> int:
    _check(n >= 2, "n must be at least 2")
    total = Fraction(0)
    for i in range(n):
        faces = stirling2(n, n - i) * factorial(n - i)
        total += (-1) ** i * Fraction(faces * 2 ** n * factorial(n), 2 ** (n - i))
    return _exact(total)


# ---------------------------------------------------------------------------
# dispatch used by the CLI and the verification suite

def poincare(kind: str, n: int, s: int | None = None, tilde: bool = False) -> QPolynomial:
    """Formula-path polynomial of the regular (or tilde) family; ``s=None``
    selects the maximal model."""
    if kind == "A":
        if s is None:
            return poincare_max_A(n)
        return poincare_tilde_A(n, s) if tilde else poincare_regular_A(n, s)
    if kind == "B":
        if s is None:
            return poincare_max_B(n)
        return poincare_tilde_B(n, s) if tilde else poincare_regular_B(n, s)
    if kind == "D":
        if s is None:
            return poincare_max_D(n)
        return poincare_tilde_D(n, s) if tilde else poincare_regular_D(n, s)
    if kind == "Boolean":
        from .arrangements import maximal_building
        if s is None:
            return poincare_blowup_induction(maximal_building("Boolean", n))
        return poincare_regular_boolean(n, s)
    raise ValueError(f"unknown kind {kind!r}")
