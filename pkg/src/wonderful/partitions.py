"""Integer partitions, singular (coloured) partitions and the orders generated
by admissible moves on their Young diagrams.

A ``Partition`` is a weakly decreasing tuple of positive parts.  A
``SingularPartition`` adds a coloured (strong) row of ``r`` boxes and, for the
doubled vertices of type D, a sign.  Orders are computed by memoized
reachability over the move graph; Hasse diagrams are transitive reductions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cache
from itertools import accumulate
from typing import Iterator

KINDS = ("A", "B", "D")
MIN_N = {"A": 2, "B": 2, "D": 4}


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts or any(p < 1 for p in parts) or list(parts) != sorted(parts, reverse=True):
            raise ValueError(f"not a partition: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> Partition:
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    @property
    def key(self):
        return self.parts

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"

    @classmethod
    def parse(cls, text: str) -> Partition:
        body = text.strip().strip("()")
        return cls.of(*(int(x) for x in body.split(",") if x.strip()))


@dataclass(frozen=True, order=True)
class SingularPartition:
    """``(r, lambda)`` with a coloured row of ``r`` boxes; ``sign`` is 0 unless
    the vertex is one of the two copies of a doubled D vertex."""

    r: int
    parts: tuple[int, ...] = ()
    sign: int = 0

    def __post_init__(self):
        parts = tuple(sorted(self.parts, reverse=True))
        if self.r < 0 or any(p < 1 for p in parts):
            raise ValueError(f"not a singular partition: ({self.r},{parts})")
        if self.sign not in (0, 1, -1):
            raise ValueError("sign must be 0, +1 or -1")
        if self.sign and (self.r != 0 or self.n % 2 or any(p % 2 for p in parts)):
            raise ValueError("only (0, all-even) vertices with n even carry a sign")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return self.r + sum(self.parts)

    @property
    def key(self):
        return (self.r, self.parts, self.sign)

    def unsigned(self) -> SingularPartition:
        return SingularPartition(self.r, self.parts) if self.sign else self

    def __str__(self):
        tag = {0: "", 1: "+", -1: "-"}[self.sign]
        parts = ",".join(map(str, self.parts)) if self.parts else "0"
        return f"({self.r}|{parts}){tag}"

    @classmethod
    def parse(cls, text: str) -> SingularPartition:
        s = text.strip()
        sign = 0
        if s.endswith(("+", "-")):
            sign = 1 if s[-1] == "+" else -1
            s = s[:-1]
        r, _, rest = s.strip("()").partition("|")
        parts = tuple(int(x) for x in rest.split(",") if x.strip() and int(x) > 0)
        return cls(int(r), parts, sign)


def parse_form(text: str):
    return SingularPartition.parse(text) if "|" in text else Partition.parse(text)


@cache
def integer_partitions(n: int) -> tuple[tuple[int, ...], ...]:
    """All partitions of ``n`` as decreasing tuples (``()`` for ``n == 0``)."""
    def gen(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail
    return tuple(gen(n, n))


def _sorted(parts) -> tuple[int, ...]:
    return tuple(sorted(parts, reverse=True))


# ---------------------------------------------------------------------------
# type A

def _moves_parts(parts: tuple[int, ...]) -> set[tuple[int, ...]]:
    out = set()
    # move a: a whole row joins a row with at least two boxes
    for i, p in enumerate(parts):
        for j, target in enumerate(parts):
            if i != j and target >= 2:
                new = list(parts)
                new[j] += p
                del new[i]
                out.add(_sorted(new))
    # move b: bundle k singletons, k at least the smallest row above 1
    big = [p for p in parts if p > 1]
    ones = parts.count(1)
    if big:
        for k in range(max(2, min(big)), ones + 1):
            out.add(_sorted([p for p in parts if p > 1] + [1] * (ones - k) + [k]))
    return out


def admissible_moves_A(p: Partition) -> set[Partition]:
    return {Partition(t) for t in _moves_parts(p.parts)}


@cache
def _up_A(parts: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    up = {parts}
    for m in _moves_parts(parts):
        up |= _up_A(m)
    return frozenset(up)


def _same_n(a, b):
    if a.n != b.n:
        raise ValueError(f"partitions of different integers: {a} and {b}")


def leq_A(mu: Partition, lam: Partition) -> bool:
    """``mu <= lam``: ``lam`` is reachable from ``mu`` by admissible moves."""
    _same_n(mu, lam)
    return lam.parts in _up_A(mu.parts)


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    _same_n(mu, lam)
    a = list(accumulate(mu.parts))
    b = list(accumulate(lam.parts))
    width = max(len(a), len(b))
    a += [mu.n] * (width - len(a))
    b += [lam.n] * (width - len(b))
    return all(y >= x for x, y in zip(a, b))


def is_building_partition(p: Partition) -> bool:
    return len(p.parts) == 1 or sum(1 for x in p.parts if x >= 2) >= 2


# ---------------------------------------------------------------------------
# types B and D

@dataclass(frozen=True)
class MoveRules:
    """Knobs for the places where the coloured-diagram moves are ambiguous.

    ``deposit_on_empty``: a weak row of size >= 2 may start an empty coloured
    row.  ``singleton_on_empty``: a weak singleton may do the same.
    """

    deposit_on_empty: bool = True
    singleton_on_empty: bool = False


DEFAULT_RULES = MoveRules()


def _moves_singular(r: int, parts: tuple[int, ...], rules: MoveRules) -> set[tuple[int, tuple[int, ...]]]:
    out = {(r, m) for m in _moves_parts(parts)} if parts else set()
    for i, p in enumerate(parts):
        rest = parts[:i] + parts[i + 1:]
        if r > 0 or (p >= 2 and rules.deposit_on_empty) or (p == 1 and rules.singleton_on_empty):
            out.add((r + p, rest))
    if r == 0 and len(parts) == 1:
        out.add((parts[0], ()))
    return out


@cache
def _up_singular(r: int, parts: tuple[int, ...], rules: MoveRules, avoid_r1: bool):
    up = {(r, parts)}
    for r2, p2 in _moves_singular(r, parts, rules):
        if avoid_r1 and r2 == 1:
            continue
        up |= _up_singular(r2, p2, rules, avoid_r1)
    return frozenset(up)


def admissible_moves_B(sp: SingularPartition, rules: MoveRules = DEFAULT_RULES) -> set[SingularPartition]:
    if sp.sign:
        raise ValueError("moves are defined on unsigned diagrams")
    return {SingularPartition(r, p) for r, p in _moves_singular(sp.r, sp.parts, rules)}


def leq_singular(x: SingularPartition, y: SingularPartition, kind: str = "B",
                 rules: MoveRules = DEFAULT_RULES) -> bool:
    _same_n(x, y)
    if kind == "B":
        if x.sign or y.sign:
            raise ValueError("signed vertices only exist in type D")
        return (y.r, y.parts) in _up_singular(x.r, x.parts, rules, False)
    if kind != "D":
        raise ValueError(f"unknown kind {kind!r}")
    if x.r == 1 or y.r == 1:
        raise ValueError("type D diagrams never have a coloured row of one box")
    if x.sign and y.sign and x.sign != y.sign:
        return False
    return (y.r, y.parts) in _up_singular(x.r, x.parts, rules, True)


def is_singular_building(sp: SingularPartition, kind: str = "B") -> bool:
    if kind == "D" and sp.r == 1:
        return False
    if sp.parts and max(sp.parts) == 1:
        return False
    if sp.r == 0:
        return len(sp.parts) > 1 and is_building_partition(Partition(sp.parts))
    return True


def doubled(kind: str, n: int, sp: SingularPartition) -> bool:
    return kind == "D" and n % 2 == 0 and sp.r == 0 and all(p % 2 == 0 for p in sp.parts)


# ---------------------------------------------------------------------------
# posets

@dataclass(frozen=True)
class PartitionPoset:
    kind: str
    n: int
    elements: tuple
    covers: tuple
    rules: MoveRules = field(default=DEFAULT_RULES, compare=False)

    def leq(self, a, b) -> bool:
        return element_leq(self.kind, a, b, self.rules)

    def index(self, element) -> int:
        return self.elements.index(element)


def element_leq(kind: str, a, b, rules: MoveRules = DEFAULT_RULES) -> bool:
    if kind == "A":
        return leq_A(a, b)
    return leq_singular(a, b, kind, rules)


def building_elements(kind: str, n: int) -> list:
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if n < MIN_N[kind]:
        raise ValueError(f"type {kind} needs n >= {MIN_N[kind]}")
    if kind == "A":
        out = [Partition(p) for p in integer_partitions(n) if is_building_partition(Partition(p))]
        return sorted(out, key=lambda p: p.key)
    out = []
    for r in range(n + 1):
        for parts in integer_partitions(n - r):
            sp = SingularPartition(r, parts)
            if not is_singular_building(sp, kind):
                continue
            if doubled(kind, n, sp):
                out += [SingularPartition(r, parts, -1), SingularPartition(r, parts, 1)]
            else:
                out.append(sp)
    return sorted(out, key=lambda e: e.key)


def transitive_reduction(elements, leq) -> list[tuple]:
    """Cover pairs ``(lower, upper)`` of the order ``leq`` on ``elements``."""
    m = len(elements)
    below = [[i != j and leq(elements[i], elements[j]) for j in range(m)] for i in range(m)]
    covers = []
    for i in range(m):
        for j in range(m):
            if below[i][j] and not any(below[i][k] and below[k][j] for k in range(m)):
                covers.append((elements[i], elements[j]))
    return covers


@cache
def building_poset(kind: str, n: int, rules: MoveRules = DEFAULT_RULES) -> PartitionPoset:
    elements = building_elements(kind, n)
    covers = transitive_reduction(elements, lambda a, b: element_leq(kind, a, b, rules))
    return PartitionPoset(kind, n, tuple(elements), tuple(covers), rules)


def antichains(poset: PartitionPoset) -> Iterator[tuple]:
    """Nonempty antichains, lexicographic in the sorted element order."""
    els = poset.elements
    m = len(els)
    comparable = [[i != j and (poset.leq(els[i], els[j]) or poset.leq(els[j], els[i]))
                   for j in range(m)] for i in range(m)]

    def extend(chosen, start):
        for i in range(start, m):
            if not any(comparable[i][c] for c in chosen):
                picked = chosen + [i]
                yield tuple(els[c] for c in picked)
                yield from extend(picked, i + 1)

    yield from extend([], 0)


def hasse_dot(poset: PartitionPoset) -> str:
    lines = [f'digraph "{poset.kind}{poset.n}" {{']
    for e in poset.elements:
        lines.append(f'  "{e}";')
    for lo, hi in poset.covers:
        lines.append(f'  "{lo}" -> "{hi}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def minimal_upper_bounds(a: Partition, b: Partition, elements=None) -> list[Partition]:
    """Minimal common upper bounds of two A-partitions inside ``elements``
    (default: the building partitions of ``a.n``)."""
    _same_n(a, b)
    pool = elements if elements is not None else building_elements("A", a.n)
    ups = [c for c in pool if leq_A(a, c) and leq_A(b, c)]
    return sorted((c for c in ups if not any(d != c and leq_A(d, c) for d in ups)),
                  key=lambda p: p.key)


def maximal_lower_bounds(a: Partition, b: Partition, elements=None) -> list[Partition]:
    _same_n(a, b)
    pool = elements if elements is not None else building_elements("A", a.n)
    downs = [c for c in pool if leq_A(c, a) and leq_A(c, b)]
    return sorted((c for c in downs if not any(d != c and leq_A(c, d) for d in downs)),
                  key=lambda p: p.key)
