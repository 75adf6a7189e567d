"""Exact polynomials in ``q``, truncated series in ``(t, y)`` and the
combinatorial number factories used by the Poincaré polynomial formulas.

Nothing in this module touches floating point.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import cache
from itertools import combinations
from math import comb


class InexactDivisionError(ArithmeticError):
    """A division that must be exact left a remainder."""


class QPolynomial:
    """Univariate polynomial in ``q`` with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``q**i``; trailing zeros are
    stripped so equal polynomials have equal tuples.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> QPolynomial:
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c=1) -> QPolynomial:
        return cls([0] * degree + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def _coerce(self, other):
        if isinstance(other, QPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return QPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return QPolynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QPolynomial([c * other for c in self.coeffs])
        if not isinstance(other, QPolynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return QPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return QPolynomial([c / other for c in self.coeffs])
        return NotImplemented

    def __pow__(self, k: int):
        out = QPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, value):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __repr__(self):
        return f"QPolynomial({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def to_text(self) -> str:
        """Descending-degree text form, e.g. ``q^3+16*q^2+16*q+1``."""
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mag = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            if i == 0:
                body = mag
            else:
                var = "q" if i == 1 else f"q^{i}"
                body = var if a == 1 else f"{mag}*{var}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        text = ("-" if first_sign == "-" else "") + first
        return text + "".join(s + b for s, b in terms[1:])

    _TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)(?:\*)?)?(q(?:\^(\d+))?)?")

    @classmethod
    def from_text(cls, text: str) -> QPolynomial:
        s = text.replace(" ", "")
        if s == "0":
            return cls()
        out: dict[int, Fraction] = {}
        pos = 0
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if m is None or m.end() == pos or not (m.group(2) or m.group(3)):
                raise ValueError(f"cannot parse polynomial {text!r}")
            sign, coef, var, exp = m.groups()
            c = Fraction(coef) if coef else Fraction(1)
            if sign == "-":
                c = -c
            deg = 0 if not var else (int(exp) if exp else 1)
            out[deg] = out.get(deg, Fraction(0)) + c
            pos = m.end()
        top = max(out)
        return cls([out.get(i, 0) for i in range(top + 1)])

    def to_json(self) -> list:
        """Ascending coefficient list; integers stay integers."""
        return [int(c) if c.denominator == 1 else str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> QPolynomial:
        return cls([Fraction(c) for c in data])


ZERO = QPolynomial()
ONE = QPolynomial((1,))
Q = QPolynomial((0, 1))


def exact_div_qminus1(p: QPolynomial) -> QPolynomial:
    """Divide by ``q - 1``; raises if ``p(1) != 0``."""
    cs = p.coeffs
    if not cs:
        return ZERO
    if sum(cs) != 0:
        raise InexactDivisionError(f"{p.to_text()} is not divisible by q-1")
    # synthetic division from the top coefficient down
    out = [Fraction(0)] * (len(cs) - 1)
    carry = Fraction(0)
    for i in range(len(cs) - 1, 0, -1):
        carry += cs[i]
        out[i - 1] = carry
    return QPolynomial(out)


def blowup_factor(a: int) -> QPolynomial:
    """``(q**a - q)/(q - 1) = q + q**2 + ... + q**(a-1)``, zero for ``a <= 1``."""
    if a <= 1:
        return ZERO
    return QPolynomial([0] + [1] * (a - 1))


@cache
def stirling2(n: int, j: int) -> int:
    """Stirling number of the second kind S(n, j)."""
    if n < 0 or j < 0:
        return 0
    if n == 0 or j == 0:
        return 1 if n == j else 0
    if j > n:
        return 0
    row = [1] + [0] * j
    for m in range(1, n + 1):
        for k in range(min(m, j), 0, -1):
            row[k] = k * row[k] + row[k - 1]
        row[0] = 0
    return row[j]


def f_poly(n: int, j: int) -> QPolynomial:
    """``S(n, j) (q^(n-j) - q)/(q - 1)`` for ``n > j >= 1``."""
    if not n > j >= 1:
        raise ValueError(f"f_poly needs n > j >= 1, got ({n}, {j})")
    return blowup_factor(n - j) * stirling2(n, j)


def ftilde_poly(n: int, m: int) -> QPolynomial:
    """``S(n, m) (q^(n-m+1) - q)/(q - 1)`` for ``n > m >= 1``."""
    if not n > m >= 1:
        raise ValueError(f"ftilde_poly needs n > m >= 1, got ({n}, {m})")
    return blowup_factor(n - m + 1) * stirling2(n, m)


def h_count(n: int, j: int) -> int:
    """Number of subspaces of dimension ``n+1-j`` in the maximal B_n family."""
    return sum(
        comb(n, k - 1) * stirling2(n + 1 - k, j - 1) * 2 ** (n + 1 - (j - 1) - k)
        for k in range(1, n + 1 - (j - 1) + 1)
    )


def h_poly(n: int, j: int) -> QPolynomial:
    if not n >= j >= 1:
        raise ValueError(f"h_poly needs n >= j >= 1, got ({n}, {j})")
    return blowup_factor(n + 1 - j) * h_count(n, j)


def jk_lists(k: int, m: int) -> list[tuple[int, ...]]:
    """Increasing k-tuples in ``1..m`` with consecutive gaps at least 2."""
    if k < 1:
        return []
    return [
        js for js in combinations(range(1, m + 1), k)
        if all(b - a >= 2 for a, b in zip(js, js[1:]))
    ]


def jk_tilde_lists(k: int, n: int, s: int | None = None) -> list[tuple[int, ...]]:
    """(k+1)-tuples ``j_1 < ... < j_k < j_{k+1} = n-1``.

    The first gap only has to be positive, the later gaps at least 2; with
    ``s`` given, additionally ``j_k <= s``.
    """
    if k < 1:
        return []
    top = n - 1
    out = []
    for js in combinations(range(1, top), k):
        full = js + (top,)
        if full[1] - full[0] < 1:
            continue
        if any(full[i] - full[i - 1] < 2 for i in range(2, k + 1)):
            continue
        if s is not None and js[-1] > s:
            continue
        out.append(full)
    return out


class TruncatedSeries:
    """Power series in ``t`` truncated above ``t**order``, polynomial in ``y``,
    with `QPolynomial` coefficients keyed by ``(deg_t, deg_y)``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        self.order = order
        self.coeffs: dict[tuple[int, int], QPolynomial] = {}
        for (i, j), c in (coeffs or {}).items():
            if i <= order and not c.is_zero():
                self.coeffs[(i, j)] = c

    @classmethod
    def from_t_coeffs(cls, order: int, cs) -> TruncatedSeries:
        return cls(order, {(i, 0): c if isinstance(c, QPolynomial) else QPolynomial((c,))
                           for i, c in enumerate(cs)})

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls(order, {(0, 0): ONE})

    @classmethod
    def t(cls, order: int) -> TruncatedSeries:
        return cls(order, {(1, 0): ONE})

    @classmethod
    def y(cls, order: int) -> TruncatedSeries:
        return cls(order, {(0, 1): ONE})

    def coeff(self, n: int, j: int = 0) -> QPolynomial:
        return self.coeffs.get((n, j), ZERO)

    def t_coeff(self, n: int) -> dict[int, QPolynomial]:
        return {j: c for (i, j), c in self.coeffs.items() if i == n}

    def _check(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries.one(self.order) * other
        if other.order != self.order:
            raise ValueError("series truncation orders differ")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, ZERO) + c
        return TruncatedSeries(self.order, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.order, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QPolynomial)):
            return TruncatedSeries(self.order, {k: c * other for k, c in self.coeffs.items()})
        other = self._check(other)
        out: dict[tuple[int, int], QPolynomial] = {}
        for (i1, j1), a in self.coeffs.items():
            for (i2, j2), b in other.coeffs.items():
                i = i1 + i2
                if i > self.order:
                    continue
                key = (i, j1 + j2)
                out[key] = out.get(key, ZERO) + a * b
        return TruncatedSeries(self.order, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries) and self.order == other.order
                and self.coeffs == other.coeffs)

    def shift_y(self, k: int = 1) -> TruncatedSeries:
        """Multiply by ``y**k``."""
        return TruncatedSeries(self.order, {(i, j + k): c for (i, j), c in self.coeffs.items()})

    def exp(self) -> TruncatedSeries:
        """``exp`` of a series with no ``t**0`` part (``E' = f' E``)."""
        if any(i == 0 for i, _ in self.coeffs):
            raise ValueError("exp needs a series without t^0 terms")
        f = [self.t_coeff(i) for i in range(self.order + 1)]
        e = [dict() for _ in range(self.order + 1)]
        e[0] = {0: ONE}
        for k in range(1, self.order + 1):
            acc: dict[int, QPolynomial] = {}
            for i in range(1, k + 1):
                for j1, a in f[i].items():
                    a = a * i
                    for j2, b in e[k - i].items():
                        acc[j1 + j2] = acc.get(j1 + j2, ZERO) + a * b
            e[k] = {j: c / k for j, c in acc.items()}
        return TruncatedSeries(self.order, {(i, j): c for i in range(self.order + 1)
                                            for j, c in e[i].items()})

    def reciprocal(self) -> TruncatedSeries:
        """``1/g`` for ``g`` with constant term exactly 1."""
        g0 = self.t_coeff(0)
        if g0 != {0: ONE}:
            raise ValueError("reciprocal needs constant term 1")
        g = [self.t_coeff(i) for i in range(self.order + 1)]
        h = [dict() for _ in range(self.order + 1)]
        h[0] = {0: ONE}
        for k in range(1, self.order + 1):
            acc: dict[int, QPolynomial] = {}
            for i in range(1, k + 1):
                for j1, a in g[i].items():
                    for j2, b in h[k - i].items():
                        acc[j1 + j2] = acc.get(j1 + j2, ZERO) - a * b
            h[k] = acc
        return TruncatedSeries(self.order, {(i, j): c for i in range(self.order + 1)
                                            for j, c in h[i].items()})

    def integrate_t(self) -> TruncatedSeries:
        return TruncatedSeries(self.order, {(i + 1, j): c / (i + 1)
                                            for (i, j), c in self.coeffs.items()})

    def derivative_t(self) -> TruncatedSeries:
        return TruncatedSeries(self.order, {(i - 1, j): c * i
                                            for (i, j), c in self.coeffs.items() if i > 0})

    def eval_y(self, value) -> TruncatedSeries:
        out: dict[tuple[int, int], QPolynomial] = {}
        for (i, j), c in self.coeffs.items():
            out[(i, 0)] = out.get((i, 0), ZERO) + c * Fraction(value) ** j
        return TruncatedSeries(self.order, out)

    def eval_q(self, value) -> dict[tuple[int, int], Fraction]:
        return {k: c(Fraction(value)) for k, c in self.coeffs.items()}

    def map_coeffs(self, fn) -> TruncatedSeries:
        return TruncatedSeries(self.order, {k: fn(c) for k, c in self.coeffs.items()})

    def table(self):
        """Sorted ``(deg_t, deg_y, coefficient)`` triples."""
        return [(i, j, c) for (i, j), c in sorted(self.coeffs.items())]
