"""Brute-force Poincaré polynomials from the admissible-monomial basis.

A basis monomial is a nested set ``S`` together with exponents
``1 <= f(A) < d(S, A)`` where ``d(S, A) = dim A - dim(sum of the members of S
strictly inside A)``.  Members are visited in order of dimension, so when ``A``
joins the nested set its ``d`` value is already final.
"""
from __future__ import annotations

from typing import Iterator

from .arrangements import BuildingSet, Subspace, contains, subspace_sum, sum_all, zero_subspace
from .qpoly import ONE, QPolynomial, ZERO, blowup_factor


def d_H_B(h, b: Subspace) -> int:
    h = list(h)
    for a in h:
        if a == b or not contains(b, a):
            raise ValueError(f"{a} is not strictly contained in {b}")
    return b.dim - sum_all(h, b.kind, b.n).dim


class _Search:
    """Depth-first enumeration of nested sets with incremental checks."""

    def __init__(self, g: BuildingSet):
        self.g = g
        self.members = g.members
        m = len(self.members)
        self.below = [[i != j and contains(self.members[j], self.members[i]) for j in range(m)]
                      for i in range(m)]
        self._sums: dict[tuple[Subspace, Subspace], Subspace] = {}

    def add(self, x: Subspace, y: Subspace) -> Subspace:
        key = (x, y)
        out = self._sums.get(key)
        if out is None:
            out = self._sums[key] = subspace_sum(x, y)
        return out

    def walk(self, prune_d: bool) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
        """Yield ``(indices, d_values)`` for every nested set, including the empty one.

        With ``prune_d`` branches are cut as soon as some ``d <= 1`` (their
        contribution is zero)."""
        g, members, below = self.g, self.members, self.below
        zero = zero_subspace(g.kind, g.n)
        yield (), ()

        # antichains: list of (indices, sum) for every antichain of the current set
        def rec(chosen, ds, chains, start):
            for i in range(start, len(members)):
                x = members[i]
                fresh = []
                ok = True
                for idx, total in chains:
                    if any(below[j][i] for j in idx):
                        continue
                    s = self.add(total, x) if idx else x
                    if idx and s in g:
                        ok = False
                        break
                    fresh.append((idx + (i,), s))
                if not ok:
                    continue
                inner = [members[j] for j in chosen if below[j][i]]
                d = x.dim - (sum_all(inner, g.kind, g.n).dim if inner else 0)
                if prune_d and d <= 1:
                    continue
                picked = chosen + (i,)
                yield picked, ds + (d,)
                yield from rec(picked, ds + (d,), chains + fresh, i + 1)

        yield from rec((), (), [((), zero)], 0)


def enumerate_nested_sets(g: BuildingSet) -> Iterator[tuple[Subspace, ...]]:
    members = g.members
    for idx, _ in _Search(g).walk(prune_d=False):
        yield tuple(members[i] for i in idx)


def poincare_oracle(g: BuildingSet) -> QPolynomial:
    total = ONE
    for idx, ds in _Search(g).walk(prune_d=True):
        if not idx:
            continue
        term = ONE
        for d in ds:
            term = term * blowup_factor(d)
        total = total + term
    return total


def betti_total(g: BuildingSet) -> int:
    """Number of admissible monomials, counted without building polynomials."""
    count = 0
    for _, ds in _Search(g).walk(prune_d=False):
        c = 1
        for d in ds:
            c *= max(d - 1, 0)
        count += c
    return count


def admissible_monomials(g: BuildingSet) -> Iterator[tuple[tuple[tuple[Subspace, int], ...], int]]:
    """Every basis monomial as ``(((A, exponent), ...), degree)``."""
    members = g.members

    def expand(pairs):
        if not pairs:
            yield ()
            return
        (a, d), rest = pairs[0], pairs[1:]
        for e in range(1, d):
            for tail in expand(rest):
                yield ((a, e),) + tail

    for idx, ds in _Search(g).walk(prune_d=True):
        for mono in expand([(members[i], d) for i, d in zip(idx, ds)]):
            yield mono, sum(e for _, e in mono)


def format_monomial(mono) -> str:
    if not mono:
        return "1"
    return " * ".join(f"c_{{{a}}}^{e}" for a, e in mono)


def restriction_image(t: BuildingSet, g: BuildingSet, a: Subspace) -> list[Subspace]:
    """``[a]`` followed by the members ``B`` of ``g - t`` in which ``a`` is a
    maximal element of ``t`` contained in ``B``."""
    if not t.issubset(g):
        raise ValueError("t is not contained in g")
    if a not in t:
        raise ValueError(f"{a} is not a member of t")
    extra = []
    for b in g:
        if b in t or not contains(b, a):
            continue
        if any(c != a and contains(b, c) and contains(c, a) for c in t):
            continue
        extra.append(b)
    return [a] + sorted(extra)


__all__ = [
    "d_H_B", "enumerate_nested_sets", "poincare_oracle", "betti_total",
    "admissible_monomials", "format_monomial", "restriction_image", "ZERO",
]
