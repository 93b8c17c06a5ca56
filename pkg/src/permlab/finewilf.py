"""Exhaustive checks of Fine-Wilf type statements for words and permutations.

Periodicity of a pattern of length L under a set of periods only ties the
relation of a pair (i, i+d) to that of (i+t, i+d+t).  For a fixed gap d these
ties act on start positions 0..L-d-1 exactly like the periods act on the
letters of a word of length L-d, so every pair falls into a class computed
by :func:`word_period_classes`.  Patterns are then enumerated by inserting
positions one at a time into the current value order, where each class
fixes an interval of admissible slots.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional

from .errors import BudgetExceeded
from .patterns import Pattern, is_t_periodic

DEFAULT_BUDGET = 10 ** 7


def default_budget() -> int:
    return int(os.environ.get("PERMLAB_BUDGET", DEFAULT_BUDGET))


@dataclass(frozen=True)
class PeriodSpec:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("periods are positive")

    @property
    def g(self) -> int:
        return gcd(self.p, self.q)


def _union_find_roots(L, periods):
    parent = list(range(L))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in periods:
        for i in range(L - t):
            a, b = find(i), find(i + t)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(i) for i in range(L)]


def word_period_classes(L: int, periods: Iterable[int]) -> list[list[int]]:
    """Finest partition of 0..L-1 closed under i ~ i+t for every period t."""
    if L < 1:
        raise ValueError("length must be >= 1")
    roots = _union_find_roots(L, list(periods))
    classes: dict[int, list[int]] = {}
    for i, r in enumerate(roots):
        classes.setdefault(r, []).append(i)
    return sorted(classes.values())


def is_residue_partition(classes: list[list[int]], g: int) -> bool:
    return len(classes) == g and all(len({i % g for i in c}) == 1 for c in classes)


class ConstraintSystem:
    """Equality classes of the relation variables gamma_ij, i < j < n."""

    def __init__(self, n: int, periods: Iterable[int]):
        self.n = n
        self.periods = tuple(sorted(set(periods)))
        self.pair_class = [[-1] * n for _ in range(n)]
        count = 0
        for d in range(1, n):
            ids: dict[int, int] = {}
            for i, r in enumerate(_union_find_roots(n - d, self.periods)):
                if r not in ids:
                    ids[r] = count
                    count += 1
                self.pair_class[i][i + d] = ids[r]
        self.num_classes = count


def _search(system: ConstraintSystem, budget: int):
    """Yield every pattern satisfying ``system``; raise BudgetExceeded past ``budget`` nodes."""
    n = system.n
    cls = system.pair_class
    assigned = [-1] * system.num_classes  # 0: alpha_i < alpha_j, 1: alpha_i > alpha_j
    order: list[int] = []  # positions sorted by value
    nodes = 0

    def rec(k):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"search exceeded {budget} nodes")
        if k == n:
            ranks = [0] * n
            for r, pos in enumerate(order, 1):
                ranks[pos] = r
            yield Pattern._trusted(ranks)
            return
        where = {pos: idx for idx, pos in enumerate(order)}
        lo, hi = 0, k
        for i in range(k):
            a = assigned[cls[i][k]]
            if a == 0:
                lo = max(lo, where[i] + 1)
            elif a == 1:
                hi = min(hi, where[i])
        for slot in range(lo, hi + 1):
            fresh = []
            for i in range(k):
                c = cls[i][k]
                if assigned[c] == -1:
                    assigned[c] = 0 if where[i] < slot else 1
                    fresh.append(c)
            order.insert(slot, k)
            yield from rec(k + 1)
            order.pop(slot)
            for c in fresh:
                assigned[c] = -1

    yield from rec(0)


def enumerate_periodic_patterns(L: int, periods: Iterable[int], budget: Optional[int] = None) -> list[Pattern]:
    """All patterns of length L that are t-periodic for every t in ``periods``, sorted."""
    budget = default_budget() if budget is None else budget
    found: list[Pattern] = []
    try:
        for pat in _search(ConstraintSystem(L, periods), budget):
            found.append(pat)
    except BudgetExceeded as exc:
        exc.partial = sorted(found)
        raise
    return sorted(found)


def filter_periodic_patterns(L: int, periods: Iterable[int]) -> list[Pattern]:
    """Brute-force counterpart of :func:`enumerate_periodic_patterns` over all of S_L."""
    periods = list(periods)
    return [Pattern._trusted(p) for p in itertools.permutations(range(1, L + 1))
            if all(is_t_periodic(p, t) for t in periods)]


def is_monotone(pat) -> bool:
    return all(a < b for a, b in zip(pat, pat[1:])) or all(a > b for a, b in zip(pat, pat[1:]))


@dataclass
class Theorem2Report:
    p: int
    q: int
    length: int
    patterns_at_length: list[Pattern]
    witness: Optional[Pattern]
    counterexample: Optional[Pattern] = None

    @property
    def monotone_only(self) -> bool:
        return self.counterexample is None

    @property
    def tight(self) -> bool:
        return self.witness is not None

    @property
    def holds(self) -> bool:
        return self.monotone_only

    def to_dict(self):
        return {
            "p": self.p, "q": self.q,
            "monotone_only_at": self.length,
            "patterns_at_length": [list(x) for x in self.patterns_at_length],
            "witness_at": self.length - 1,
            "witness": list(self.witness) if self.witness else None,
            "counterexample": list(self.counterexample) if self.counterexample else None,
            "holds": self.holds,
        }


def verify_theorem2(p: int, q: int, budget: Optional[int] = None) -> Theorem2Report:
    """Coprime periods p, q: monotone at length p+q, and a non-monotone witness at p+q-1."""
    if gcd(p, q) != 1:
        raise ValueError("periods must be coprime")
    if p + q > 12:
        raise BudgetExceeded("p + q must be at most 12")
    n = p + q
    pats = enumerate_periodic_patterns(n, {p, q}, budget)
    bad = next((x for x in pats if not is_monotone(x)), None)
    shorter = enumerate_periodic_patterns(n - 1, {p, q}, budget)
    witness = next((x for x in shorter if not is_monotone(x)), None)
    return Theorem2Report(p, q, n, pats, witness, bad)


@dataclass
class Theorem3Report:
    p: int
    q: int
    n: int
    bound: int
    patterns_checked: int
    factors_checked: int
    counterexample: Optional[tuple] = None  # (pattern, start, length)

    @property
    def holds(self) -> bool:
        return self.counterexample is None

    def to_dict(self):
        d = {k: getattr(self, k) for k in
             ("p", "q", "n", "bound", "patterns_checked", "factors_checked")}
        d["counterexample"] = (
            None if self.counterexample is None
            else {"pattern": list(self.counterexample[0]), "start": self.counterexample[1],
                  "length": self.counterexample[2]}
        )
        d["holds"] = self.holds
        return d


def verify_theorem3(p: int, q: int, n: int, budget: Optional[int] = None) -> Theorem3Report:
    """Every factor of length <= n-p-q+2g+1 of a p,q-periodic pattern is g-periodic."""
    g = gcd(p, q)
    bound = min(n, n - p - q + 2 * g + 1)
    pats = enumerate_periodic_patterns(n, {p, q}, budget)
    checked = 0
    for pat in pats:
        for length in range(1, bound + 1):
            for s in range(n - length + 1):
                checked += 1
                if not is_t_periodic(pat[s:s + length], g):
                    return Theorem3Report(p, q, n, bound, len(pats), checked, (pat, s, length))
    return Theorem3Report(p, q, n, bound, len(pats), checked)


def find_nongcd_witness(p: int, q: int, n: int, budget: Optional[int] = None) -> Optional[Pattern]:
    """Lexicographically least p- and q-periodic pattern of length n that is not gcd-periodic."""
    g = gcd(p, q)
    for pat in enumerate_periodic_patterns(n, {p, q}, budget):
        if not is_t_periodic(pat, g):
            return pat
    return None
