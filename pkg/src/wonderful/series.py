"""Generating series for minimal models and the strata used by the
interpolation formulas.

All series are exact `TruncatedSeries` in ``t`` (and ``y``) whose
coefficients are polynomials in ``q``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import comb, factorial

from .qpoly import Q, QPolynomial, TruncatedSeries, exact_div_qminus1

DEFAULT_ORDER = 12
LAMBDA_A_CHOICES = ("lambda", "lambda_b")
D_READINGS = ("corrected",) + LAMBDA_A_CHOICES
DEFAULT_D_READING = "corrected"


def _psi(x: TruncatedSeries) -> TruncatedSeries:
    """``(e^{q x} - q e^{x} + q - 1)/(q - 1)`` for ``x`` without constant term."""
    bracket = (x * Q).exp() - x.exp() * Q + (Q - 1)
    return bracket.map_coeffs(exact_div_qminus1)


@cache
def lambda_series(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Solution of ``L' = 1 + L' psi(L)`` with ``L = t + O(t^2)``.

    Knowing ``L`` up to ``t^m`` fixes ``L' = 1/(1 - psi(L))`` up to ``t^m``
    and hence ``L`` up to ``t^(m+1)``; ``order`` rounds of this settle every
    coefficient.
    """
    if order < 1:
        raise ValueError("order must be at least 1")
    lam = TruncatedSeries.t(order)
    for _ in range(order):
        lam = (1 - _psi(lam)).reciprocal().integrate_t()
    return lam


def functional_residual(lam: TruncatedSeries) -> TruncatedSeries:
    """``L' - 1 - L' psi(L)``; vanishes identically for the true solution
    (only terms below ``t^order`` are meaningful)."""
    d = lam.derivative_t()
    return d - 1 - d * _psi(lam)


@cache
def phi_y(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """``e^{y L} - 1``; the ``y`` degree counts the maximal nested subspaces."""
    return lambda_series(order).shift_y().exp() - 1


@cache
def phi(order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return lambda_series(order).exp() - 1


@cache
def b_series(order: int = DEFAULT_ORDER):
    """``(lambda_B, gamma_B, mu_B, Phi_B(y))``."""
    lam_b = lambda_series(order) * Fraction(1, 2)
    gamma_b = _psi(lam_b)
    mu_b = (1 - gamma_b).reciprocal() - 1
    phi_b = lam_b.shift_y().exp() * (mu_b.shift_y() + 1) - 1
    return lam_b, gamma_b, mu_b, phi_b


def _strong_pair_correction(order: int) -> TruncatedSeries:
    """``q t^2/(2! 2^2) + (4q + q^2) t^3/(3! 2^3) + q sum_{n>=4} C(n,2) t^n/(n! 2^n)``."""
    cs = {}
    if order >= 2:
        cs[(2, 0)] = Q * Fraction(1, 8)
    if order >= 3:
        cs[(3, 0)] = (Q * 4 + Q * Q) * Fraction(1, 48)
    for n in range(4, order + 1):
        cs[(n, 0)] = Q * Fraction(comb(n, 2), factorial(n) * 2 ** n)
    return TruncatedSeries(order, cs)


@cache
def d_series_printed(order: int = DEFAULT_ORDER, lambda_a: str = "lambda"):
    """``(gamma_D, mu_D, Phi_D(y))`` exactly as printed.

    ``lambda_a`` picks the weak-tree series in front of the strong part:
    ``"lambda"`` is the type A series, ``"lambda_b"`` its half.  Neither
    reading reproduces the brute-force minimal D models (see the tests).
    """
    if lambda_a not in LAMBDA_A_CHOICES:
        raise ValueError(f"lambda_a must be one of {LAMBDA_A_CHOICES}")
    lam = lambda_series(order)
    _, gamma_b, _, _ = b_series(order)
    gamma_d = (gamma_b - _strong_pair_correction(order)) * 2
    mu_d = (1 - gamma_d).reciprocal() - 1
    weak = lam if lambda_a == "lambda" else lam * Fraction(1, 2)
    phi_d = weak.shift_y().exp() * (mu_d.shift_y() + 1) - 1
    return gamma_d, mu_d, phi_d


@cache
def d_series_corrected(order: int = DEFAULT_ORDER):
    """``(gamma_D, mu_D, Phi_D(y))`` normalized by ``t^n/(2^(n-1) n!)``.

    A strong tree is a chain of strong layers, each adding at least two
    weak blocks (the series ``gamma_B``).  In type D the lowest strong set
    needs three or more coordinates, which removes only the layer made of two
    single leaves, ``q t^2/8``.  Sign colourings are counted as in type B,
    so the ``2^(n-1)`` normalization doubles the whole series.
    """
    lam_b, gamma_b, _, _ = b_series(order)
    gamma_d = gamma_b - TruncatedSeries(order, {(2, 0): Q * Fraction(1, 8)}) if order >= 2 else gamma_b
    mu_d = gamma_d * (1 - gamma_b).reciprocal()
    phi_d = (lam_b.shift_y().exp() * (mu_d.shift_y() + 1) - 1) * 2
    return gamma_d, mu_d, phi_d


def d_series(order: int = DEFAULT_ORDER, reading: str = DEFAULT_D_READING):
    if reading == "corrected":
        return d_series_corrected(order)
    return d_series_printed(order, reading)


@cache
def b_quotient_strata(order: int = DEFAULT_ORDER):
    """``(weak, strong)`` parts of the minimal B series with ``y`` marking the
    dimension of the quotient by the top of the nested set.

    ``weak = e^{y lambda_B} - 1`` (forests of weak trees, one ``y`` per tree);
    ``strong = e^{y lambda_B} mu_B`` (the strong tree is killed by the
    quotient, so it carries no ``y``).  At ``y = 1`` they add up to ``Phi_B``.
    """
    lam_b, _, mu_b, _ = b_series(order)
    e = lam_b.shift_y().exp()
    return e - 1, e * mu_b


@cache
def d_quotient_strata(order: int = DEFAULT_ORDER):
    """``({m: weak_m}, strong)`` for type D, normalized by ``t^n/(2^(n-1) n!)``.

    ``weak_m`` collects the forests with exactly ``m`` trees of two or more
    leaves; such a tree becomes a quotient coordinate that may vanish on its
    own, unlike a lone leaf.  Forests with ``m = 0`` are empty nested sets
    and are left out.  Under a strong tree every quotient coordinate may
    vanish on its own, so ``strong`` needs no such split.
    """
    lam_b, _, _, _ = b_series(order)
    _, mu_d, _ = d_series_corrected(order)
    leaf = TruncatedSeries(order, {(1, 1): QPolynomial.constant(Fraction(1, 2))})
    trees = (lam_b - TruncatedSeries(order, {(1, 0): QPolynomial.constant(Fraction(1, 2))})).shift_y()
    base = leaf.exp() * 2
    weak = {}
    power = TruncatedSeries.one(order)
    for m in range(1, order // 2 + 1):
        power = power * trees * Fraction(1, m)
        weak[m] = base * power
    strong = lam_b.shift_y().exp() * mu_d * 2
    return weak, strong


def normalizer(kind: str, n: int) -> int:
    return {"A": factorial(n), "B": 2 ** n * factorial(n), "D": 2 ** (n - 1) * factorial(n)}[kind]


def series_for(kind: str, order: int = DEFAULT_ORDER, reading: str = DEFAULT_D_READING):
    if kind == "A":
        return phi_y(order)
    if kind == "B":
        return b_series(order)[3]
    if kind == "D":
        return d_series(order, reading)[2]
    raise ValueError(f"no series for kind {kind!r}")


def stratum(kind: str, n: int, j: int, order: int | None = None,
            reading: str = DEFAULT_D_READING) -> QPolynomial:
    """Normalized ``[y^j t^n]`` coefficient of the kind's series."""
    order = max(order or DEFAULT_ORDER, n)
    return series_for(kind, order, reading).coeff(n, j) * normalizer(kind, n)


def minimal_poincare(kind: str, n: int, order: int | None = None,
                     reading: str = DEFAULT_D_READING) -> QPolynomial:
    """Poincaré polynomial of the minimal model read off the series."""
    order = max(order or DEFAULT_ORDER, n)
    s = series_for(kind, order, reading)
    total = QPolynomial()
    for j, c in s.t_coeff(n).items():
        total = total + c
    return total * normalizer(kind, n)


def coefficient_table(kind: str, order: int = DEFAULT_ORDER, reading: str = DEFAULT_D_READING):
    """Rows ``(n, j, normalized coefficient)`` of the kind's series."""
    s = series_for(kind, order, reading)
    return [(i, j, c * normalizer(kind, i)) for i, j, c in s.table()]
