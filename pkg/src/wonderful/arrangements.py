"""Subspaces of root arrangements and the building sets they form.

Root-type subspaces (A, B, D, Boolean) are stored combinatorially: a strong
set of coordinates and a list of weak blocks.  A weak block is a tuple of
signed coordinates ``(i, -j, k)`` meaning ``x_i = -x_j = x_k``; its dual
subspace is spanned by the differences of the signed unit vectors.  The strong
set ``S`` stands for ``x_s = 0`` for ``s`` in ``S``.  Generic subspaces (those
produced by quotients) are stored only as reduced row echelon matrices.

Exact rank computations are the ground truth; set ``WONDERFUL_VALIDATE=1`` to
cross-check every combinatorial construction against them.
"""
from __future__ import annotations

import os
from functools import cache, cached_property
from itertools import combinations, product
from math import comb, factorial, prod
from collections import Counter

from . import linalg
from .partitions import (
    Partition, SingularPartition, building_elements, doubled, element_leq, leq_A,
    leq_singular, DEFAULT_RULES,
)

ROOT_KINDS = ("A", "B", "D", "Boolean")
VALIDATE = os.environ.get("WONDERFUL_VALIDATE", "") not in ("", "0")


def _canon_block(block) -> tuple[int, ...]:
    b = sorted(block, key=abs)
    if b[0] < 0:
        b = [-x for x in b]
    return tuple(b)


class Subspace:
    """A subspace of the dual of ``C^n``."""

    def __init__(self, kind: str, n: int, strong=(), blocks=(), rows=None):
        self.kind = kind
        self.n = n
        if kind == "Generic":
            self.strong, self.blocks = (), ()
            self._rows = linalg.rref(rows or ())
        else:
            if kind not in ROOT_KINDS:
                raise ValueError(f"unknown kind {kind!r}")
            self.strong = tuple(sorted(set(strong)))
            bl = [_canon_block(b) for b in blocks if len(b) >= 2]
            self.blocks = tuple(sorted(bl, key=lambda b: abs(b[0])))
            self._rows = None
            self._check()
        self._hash = hash((kind, n, self.strong, self.blocks, self._rows))

    def _check(self):
        used = [abs(x) for b in self.blocks for x in b] + list(self.strong)
        if len(used) != len(set(used)) or any(not 1 <= i <= self.n for i in used):
            raise ValueError(f"blocks overlap or leave 1..{self.n}: {self}")
        if self.kind == "A" and (self.strong or any(x < 0 for b in self.blocks for x in b)):
            raise ValueError("type A subspaces have neither strong sets nor signs")
        if self.kind == "Boolean" and self.blocks:
            raise ValueError("boolean subspaces are coordinate subspaces")
        if self.kind == "D" and len(self.strong) == 1:
            raise ValueError("type D strong sets have at least two elements")
        if VALIDATE and linalg.rank(self.generators()) != self.dim:
            raise AssertionError(f"dimension formula disagrees with rank for {self}")

    # -- basic data ---------------------------------------------------------

    @cached_property
    def dim(self) -> int:
        if self.kind == "Generic":
            return len(self._rows)
        return len(self.strong) + sum(len(b) - 1 for b in self.blocks)

    def generators(self) -> list[list[int]]:
        if self.kind == "Generic":
            return [list(r) for r in self._rows]
        out = []
        for i in self.strong:
            v = [0] * self.n
            v[i - 1] = 1
            out.append(v)
        for b in self.blocks:
            first = b[0]
            for other in b[1:]:
                v = [0] * self.n
                v[abs(first) - 1] += 1 if first > 0 else -1
                v[abs(other) - 1] -= 1 if other > 0 else -1
                out.append(v)
        return out

    @property
    def rows(self):
        if self._rows is None:
            self._rows = linalg.rref(self.generators())
        return self._rows

    @cached_property
    def sort_key(self):
        if self.kind == "Generic":
            return (self.dim, (), self._rows)
        return (self.dim, self.strong, tuple(tuple(abs(x) for x in b) for b in self.blocks),
                self.blocks)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self._hash == other._hash
                and self.kind == other.kind and self.n == other.n
                and self.strong == other.strong and self.blocks == other.blocks
                and (self.kind != "Generic" or self._rows == other._rows))

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key < other.sort_key

    def __str__(self):
        if self.kind == "Generic":
            return "<" + ";".join(",".join(str(x) for x in r) for r in self._rows) + ">"
        parts = []
        if self.strong:
            parts.append("[" + ",".join(map(str, self.strong)) + "]")
        parts += ["{" + ",".join(map(str, b)) + "}" for b in self.blocks]
        return "".join(parts) or "0"

    __repr__ = __str__

    def to_json(self) -> dict:
        if self.kind == "Generic":
            raise ValueError("generic subspaces are not serialized")
        return {
            "strong": list(self.strong),
            "blocks": [[abs(x) for x in b] for b in self.blocks],
            "colors": [[1 if x > 0 else -1 for x in b] for b in self.blocks],
        }

    @classmethod
    def from_json(cls, kind: str, n: int, data: dict) -> Subspace:
        blocks = [[i * c for i, c in zip(b, cs)] for b, cs in zip(data["blocks"], data["colors"])]
        return cls(kind, n, data.get("strong", ()), blocks)

    # -- lattice operations -------------------------------------------------

    def __add__(self, other: Subspace) -> Subspace:
        return subspace_sum(self, other)

    def contains(self, other: Subspace) -> bool:
        return contains(self, other)

    def act(self, images: dict[int, int]) -> Subspace:
        """Apply a signed permutation ``i -> images[i]`` of the coordinates."""
        def img(x):
            y = images.get(abs(x), abs(x))
            return y if x > 0 else -y
        return Subspace(self.kind, self.n, (abs(img(i)) for i in self.strong),
                        [[img(x) for x in b] for b in self.blocks])


def _compatible(a: Subspace, b: Subspace):
    if a.kind != b.kind or a.n != b.n:
        raise ValueError(f"incompatible subspaces {a} ({a.kind},{a.n}) and {b} ({b.kind},{b.n})")


def _merge(kind: str, n: int, strong, blocks) -> Subspace:
    """Span of strong coordinates and weak blocks, via signed union-find."""
    parent = list(range(n + 1))
    parity = [0] * (n + 1)
    zero = [False] * (n + 1)

    def find(i):
        p = 0
        path = []
        while parent[i] != i:
            path.append(i)
            p ^= parity[i]
            i = parent[i]
        # compress
        acc = p
        for j in path:
            old = parity[j]
            parent[j], parity[j] = i, acc
            acc ^= old
        return i, p

    for i in strong:
        zero[find(i)[0]] = True
    for b in blocks:
        a = b[0]
        for c in b[1:]:
            rel = 0 if (a > 0) == (c > 0) else 1
            ra, pa = find(abs(a))
            rc, pc = find(abs(c))
            if ra == rc:
                if pa ^ pc != rel:
                    zero[ra] = True
            else:
                parent[rc] = ra
                parity[rc] = pa ^ pc ^ rel
                zero[ra] = zero[ra] or zero[rc]
    comps: dict[int, list[int]] = {}
    for i in range(1, n + 1):
        r, p = find(i)
        comps.setdefault(r, []).append(-i if p else i)
    new_strong, new_blocks = [], []
    for r, members in comps.items():
        if zero[r]:
            new_strong += [abs(x) for x in members]
        elif len(members) >= 2:
            new_blocks.append(members)
    return Subspace(kind, n, new_strong, new_blocks)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _compatible(a, b)
    if a.kind == "Generic":
        return Subspace("Generic", a.n, rows=list(a.rows) + list(b.rows))
    if b.dim == 0 or a == b:
        return a
    if a.dim == 0:
        return b
    return _merge(a.kind, a.n, a.strong + b.strong, a.blocks + b.blocks)


def sum_all(subspaces, kind: str, n: int) -> Subspace:
    subspaces = list(subspaces)
    if kind == "Generic":
        return Subspace("Generic", n, rows=[r for s in subspaces for r in s.rows])
    return _merge(kind, n, [i for s in subspaces for i in s.strong],
                  [b for s in subspaces for b in s.blocks])


def zero_subspace(kind: str, n: int) -> Subspace:
    return Subspace(kind, n, rows=()) if kind == "Generic" else Subspace(kind, n)


def span_dim(s: Subspace) -> int:
    """Exact rank of the generator matrix."""
    return linalg.rank(s.generators())


def contains(a: Subspace, b: Subspace) -> bool:
    """Whether ``b`` is a subspace of ``a``."""
    _compatible(a, b)
    if b.dim > a.dim:
        return False
    if a.kind == "Generic":
        return linalg.rank(list(a.rows) + list(b.rows)) == a.dim
    return subspace_sum(a, b) == a


# ---------------------------------------------------------------------------
# building sets

class BuildingSet:
    """A duplicate-free, canonically ordered family of subspaces."""

    def __init__(self, kind: str, n: int, members=()):
        self.kind = kind
        self.n = n
        ms = sorted(set(members))
        for m in ms:
            if m.kind != kind or m.n != n:
                raise ValueError(f"member {m} does not live in ({kind}, {n})")
        self.members: tuple[Subspace, ...] = tuple(ms)
        self._set = frozenset(ms)

    def __contains__(self, s):
        return s in self._set

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return (isinstance(other, BuildingSet) and self.kind == other.kind
                and self.n == other.n and self._set == other._set)

    def __hash__(self):
        return hash((self.kind, self.n, self._set))

    def __or__(self, other: BuildingSet) -> BuildingSet:
        _same_space(self, other)
        return BuildingSet(self.kind, self.n, self._set | other._set)

    def __sub__(self, other) -> BuildingSet:
        drop = other._set if isinstance(other, BuildingSet) else frozenset(other)
        return BuildingSet(self.kind, self.n, self._set - drop)

    def issubset(self, other: BuildingSet) -> bool:
        return self._set <= other._set

    def fingerprint(self):
        return (self.n, frozenset(m.rows for m in self.members))

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "members": [m.to_json() for m in self.members]}

    @classmethod
    def from_json(cls, data: dict) -> BuildingSet:
        kind, n = data["kind"], data["n"]
        return cls(kind, n, (Subspace.from_json(kind, n, m) for m in data["members"]))

    def __repr__(self):
        return f"BuildingSet({self.kind}, {self.n}, {len(self)} members)"


def _same_space(a: BuildingSet, b: BuildingSet):
    if a.kind != b.kind or a.n != b.n:
        raise ValueError("building sets live in different spaces")


def set_partitions(items):
    """All set partitions of ``items`` (a list), as lists of lists."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def _colorings(block):
    """All sign colourings of a block with its first element positive."""
    head, tail = block[0], block[1:]
    for signs in product((1, -1), repeat=len(tail)):
        yield [head] + [s * x for s, x in zip(signs, tail)]


def _check_range(kind, n):
    low = {"A": 2, "B": 2, "D": 2, "Boolean": 1}
    if kind not in ROOT_KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if n < low[kind]:
        raise ValueError(f"type {kind} needs n >= {low[kind]}")


def d_strong_min() -> int:
    """Smallest strong set kept among the type D irreducibles."""
    return 3


@cache
def irreducibles(kind: str, n: int, strong_min: int | None = None) -> BuildingSet:
    """The minimal building set of the arrangement.

    For type D a strong pair ``x_i = x_j = 0`` is the direct sum of the lines
    for ``x_i = x_j`` and ``x_i = -x_j``, so by default only strong sets of
    size at least three are irreducible; ``strong_min=2`` keeps the pairs.
    """
    _check_range(kind, n)
    coords = range(1, n + 1)
    members = []
    if kind == "Boolean":
        members = [Subspace(kind, n, (i,)) for i in coords]
    if kind == "A":
        members = [Subspace(kind, n, (), [c]) for k in range(2, n + 1)
                   for c in combinations(coords, k)]
    if kind in ("B", "D"):
        lo = 1 if kind == "B" else (strong_min or d_strong_min())
        members = [Subspace(kind, n, c) for k in range(lo, n + 1) for c in combinations(coords, k)]
        members += [Subspace(kind, n, (), [b]) for k in range(2, n + 1)
                    for c in combinations(coords, k) for b in _colorings(list(c))]
    return BuildingSet(kind, n, members)


@cache
def maximal_building(kind: str, n: int) -> BuildingSet:
    """Closure of the irreducibles under sum, built combinatorially."""
    _check_range(kind, n)
    coords = list(range(1, n + 1))
    members = []
    if kind == "Boolean":
        members = [Subspace(kind, n, c) for k in range(1, n + 1) for c in combinations(coords, k)]
    elif kind == "A":
        members = [Subspace(kind, n, (), p) for p in set_partitions(coords)
                   if any(len(b) > 1 for b in p)]
    else:
        lo = 1 if kind == "B" else 2
        for k in range(0, n + 1):
            if 0 < k < lo:
                continue
            for strong in combinations(coords, k):
                rest = [i for i in coords if i not in strong]
                for p in set_partitions(rest):
                    big = [b for b in p if len(b) > 1]
                    if not strong and not big:
                        continue
                    for colored in product(*(list(_colorings(b)) for b in big)):
                        members.append(Subspace(kind, n, strong, colored))
    return BuildingSet(kind, n, members)


def closure(family, kind: str | None = None, n: int | None = None) -> BuildingSet:
    """Closure under sum of a family of subspaces."""
    if isinstance(family, BuildingSet):
        kind, n, family = family.kind, family.n, family.members
    seen = set(family)
    queue = list(seen)
    while queue:
        x = queue.pop()
        for y in list(seen):
            z = subspace_sum(x, y)
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return BuildingSet(kind, n, seen)


def maximal_inside(c: Subspace, g) -> list[Subspace]:
    inside = [m for m in g if contains(c, m)]
    return [m for m in inside if not any(o != m and contains(o, m) for o in inside)]


def is_building(g: BuildingSet) -> bool:
    for c in closure(g):
        tops = maximal_inside(c, g)
        if sum(t.dim for t in tops) != c.dim:
            return False
        if sum_all(tops, g.kind, g.n) != c:
            return False
    return True


def decompose(u: Subspace, g: BuildingSet | None = None) -> list[Subspace]:
    """Irreducible factors of ``u`` (with respect to ``g``, default the irreducibles)."""
    if g is None:
        g = irreducibles(u.kind, u.n)
    tops = maximal_inside(u, g)
    if sum(t.dim for t in tops) != u.dim or sum_all(tops, u.kind, u.n) != u:
        raise ValueError(f"{u} is not in the closure of the given family")
    return sorted(tops)


def is_nested(s, g: BuildingSet) -> bool:
    """No sum of two or more pairwise incomparable elements of ``s`` lies in ``g``."""
    s = list(s)
    for m in s:
        if m not in g:
            raise ValueError(f"{m} is not a member of the building set")
    for k in range(2, len(s) + 1):
        for sub in combinations(s, k):
            if any(contains(a, b) or contains(b, a) for a, b in combinations(sub, 2)):
                continue
            if sum_all(sub, g.kind, g.n) in g:
                return False
    return True


# ---------------------------------------------------------------------------
# group actions and invariance

def group_generators(kind: str, n: int) -> list[dict[int, int]]:
    """Generators of the Weyl group (or of ``S_n`` for the boolean case),
    as signed images of coordinates."""
    gens = [{i: i + 1, i + 1: i} for i in range(1, n)]
    if kind == "B":
        gens.append({1: -1})
    if kind == "D" and n >= 2:
        gens.append({1: -2, 2: -1})
    return gens


def is_invariant(g: BuildingSet) -> bool:
    if g.kind not in ROOT_KINDS:
        raise ValueError("invariance is only defined for root and boolean arrangements")
    return all(m.act(s) in g for s in group_generators(g.kind, g.n) for m in g)


def orbit(s: Subspace) -> set[Subspace]:
    gens = group_generators(s.kind, s.n)
    seen = {s}
    queue = [s]
    while queue:
        x = queue.pop()
        for gen in gens:
            y = x.act(gen)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


# ---------------------------------------------------------------------------
# forms and the invariant families

def form_of(s: Subspace):
    if s.kind == "A":
        sizes = [len(b) for b in s.blocks]
        return Partition.of(*(sizes + [1] * (s.n - sum(sizes))))
    if s.kind in ("B", "D"):
        r = len(s.strong)
        sizes = [len(b) for b in s.blocks]
        sp = SingularPartition(r, tuple(sizes + [1] * (s.n - r - sum(sizes))))
        if doubled(s.kind, s.n, sp):
            minus = sum(1 for b in s.blocks for x in b if x < 0)
            return SingularPartition(sp.r, sp.parts, -1 if minus % 2 else 1)
        return sp
    raise ValueError(f"form_of is undefined for kind {s.kind}")


def _t_lambda(parts) -> int:
    """Number of set partitions of ``sum(parts)`` with block sizes ``parts``."""
    m = sum(parts)
    return factorial(m) // (prod(factorial(p) for p in parts)
                            * prod(factorial(c) for c in Counter(parts).values()))


def count_of_form(kind: str, n: int, form) -> int:
    if kind == "A":
        if not isinstance(form, Partition) or form.n != n:
            raise ValueError(f"{form} is not a partition of {n}")
        return _t_lambda(form.parts)
    if kind in ("B", "D"):
        if not isinstance(form, SingularPartition) or form.n != n:
            raise ValueError(f"{form} is not a singular partition of {n}")
        if kind == "D" and form.r == 1:
            raise ValueError("type D has no strong singletons")
        base = comb(n, form.r) * 2 ** (n - form.r - len(form.parts)) * _t_lambda(form.parts)
        return base // 2 if form.sign else base
    raise ValueError(f"count_of_form is undefined for kind {kind}")


@cache
def _members_by_form(kind, n):
    out: dict = {}
    for m in maximal_building(kind, n):
        out.setdefault(form_of(m), []).append(m)
    return out


def _forms_at_least(kind, n, element, rules):
    out = []
    for f, members in _members_by_form(kind, n).items():
        if kind == "A":
            ok = leq_A(element, f)
        else:
            if kind == "D" and f.r == 1:
                continue
            ok = leq_singular(element, f, kind, rules)
        if ok:
            out += members
    return out


def classification_base(kind: str, n: int, strong_min: int | None = None) -> BuildingSet:
    """Smallest family of the classification.

    For type D this is the irreducibles together with the strong pairs,
    which are orbit-invariant but decomposable; the partition poset indexes
    exactly the invariant building sets containing it.  Pass
    ``strong_min=3`` for the irreducibles alone."""
    if kind == "D":
        return irreducibles(kind, n, strong_min or 2)
    return irreducibles(kind, n)


def g_lambda(lam: Partition) -> BuildingSet:
    """Irreducibles together with every subspace of form ``>= lam``."""
    if lam not in building_elements("A", lam.n):
        raise ValueError(f"{lam} is not a building partition")
    g = irreducibles("A", lam.n)
    return g | BuildingSet("A", lam.n, _forms_at_least("A", lam.n, lam, DEFAULT_RULES))


def g_singular(sp: SingularPartition, kind: str, rules=DEFAULT_RULES,
               strong_min: int | None = None) -> BuildingSet:
    n = sp.n
    if sp not in building_elements(kind, n):
        raise ValueError(f"{sp} is not a singular building partition of type {kind}")
    g = classification_base(kind, n, strong_min)
    return g | BuildingSet(kind, n, _forms_at_least(kind, n, sp, rules))


def g_of_antichain(elements, kind: str, n: int, rules=DEFAULT_RULES,
                   strong_min: int | None = None) -> BuildingSet:
    elements = list(elements)
    if not elements:
        raise ValueError("empty antichain")
    for a, b in combinations(elements, 2):
        if element_leq(kind, a, b, rules) or element_leq(kind, b, a, rules):
            raise ValueError(f"{a} and {b} are comparable")
    out = None
    for e in elements:
        g = g_lambda(e) if kind == "A" else g_singular(e, kind, rules, strong_min)
        out = g if out is None else out | g
    return out


# ---------------------------------------------------------------------------
# regular families

def _top_dim(kind, n):
    return n - 1 if kind == "A" else n


def regular(kind: str, n: int, s: int, strong_min: int | None = None) -> BuildingSet:
    """Irreducibles plus every maximal-family subspace of dimension ``>= n - s``.

    Values of ``s`` past the top of the range give the maximal building set.
    """
    low = {"A": 1, "B": 0, "D": 0, "Boolean": -1}[kind]
    if s < low:
        raise ValueError(f"regular({kind}) needs s >= {low}")
    mx = maximal_building(kind, n)
    if s >= n - 1:
        return mx
    base = irreducibles(kind, n, strong_min) if kind == "D" else irreducibles(kind, n)
    return base | BuildingSet(kind, n, (m for m in mx if m.dim >= n - s))


def regular_tilde(kind: str, n: int, s: int) -> BuildingSet:
    """Every maximal-family subspace of dimension ``>= n - s``."""
    low = {"A": 1, "B": 0, "D": 0, "Boolean": 0}[kind]
    if s < low:
        raise ValueError(f"regular_tilde({kind}) needs s >= {low}")
    mx = maximal_building(kind, n)
    return BuildingSet(kind, n, (m for m in mx if m.dim >= n - s))


# ---------------------------------------------------------------------------
# quotients

def quotient_building(g: BuildingSet, g0: Subspace) -> BuildingSet:
    """The family ``{(A + G0)/G0 : A in g, A != G0}`` in ``V/G0``."""
    if g0 not in g:
        raise ValueError(f"{g0} is not a member")
    if any(m != g0 and contains(g0, m) for m in g):
        raise ValueError(f"{g0} is not minimal")
    ech = g0.rows
    piv = set(linalg.pivots(ech))
    keep = [j for j in range(g.n) if j not in piv]
    members = set()
    for m in g:
        if m == g0:
            continue
        rows = []
        for r in m.rows:
            v = linalg.reduce_vector(r, ech)
            rows.append([v[j] for j in keep])
        q = Subspace("Generic", len(keep), rows=rows)
        if q.dim:
            members.add(q)
    return BuildingSet("Generic", len(keep), members)


def as_generic(g: BuildingSet) -> BuildingSet:
    if g.kind == "Generic":
        return g
    return BuildingSet("Generic", g.n, (Subspace("Generic", g.n, rows=m.rows) for m in g))


# ---------------------------------------------------------------------------
# exhaustive classification

def orbits(g: BuildingSet) -> list[tuple[Subspace, ...]]:
    """Group orbits partitioning an invariant family, in member order."""
    seen: set[Subspace] = set()
    out = []
    for m in g:
        if m in seen:
            continue
        o = orbit(m)
        if not o <= set(g.members):
            raise ValueError("family is not invariant")
        seen |= o
        out.append(tuple(sorted(o)))
    return out


def _building_on(g: BuildingSet, reps) -> bool:
    for c in reps:
        tops = maximal_inside(c, g)
        if sum(t.dim for t in tops) != c.dim or sum_all(tops, g.kind, g.n) != c:
            return False
    return True


def invariant_building_sets(kind: str, n: int, strong_min: int | None = None) -> list[BuildingSet]:
    """Every invariant building set containing `classification_base`, found by
    trying all unions of orbits of the maximal building set.

    All such families have the maximal building set as closure, and the
    building condition is invariant, so one member per orbit is checked."""
    base = classification_base(kind, n, strong_min)
    mx = maximal_building(kind, n)
    reps = [o[0] for o in orbits(mx)]
    extra = orbits(mx - base)
    found = []
    for mask in range(1 << len(extra)):
        members = list(base.members)
        for i, o in enumerate(extra):
            if mask >> i & 1:
                members += o
        g = BuildingSet(kind, n, members)
        if _building_on(g, reps):
            found.append(g)
    return sorted(found, key=len)
