"""Counting primitive binary words and the maximal complexity of
permutations generated by binary words."""
from __future__ import annotations

import numpy as np

from .errors import BudgetExceeded

PRIMITIVE_ENUM_MAX = 20
ASYMPTOTIC_FORM = "2^n (n - c + O(n 2^(-n/2)))"


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined on positive integers")
    result = 1
    k = 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            result = -result
        k += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def psi(t: int) -> int:
    """Number of primitive binary words of length t, by Mobius inversion."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return sum(mobius(t // d) * 2 ** d for d in divisors(t))


def max_complexity(n_plus_1: int) -> int:
    """Maximal factor complexity at length n+1 of a binary-word permutation."""
    if n_plus_1 < 2:
        raise ValueError("length must be >= 2")
    n = n_plus_1 - 1
    return sum(psi(t) * 2 ** (n - t) for t in range(1, n + 1))


def count_primitive_words(t: int) -> int:
    """Count binary words of length t that are not a power of a shorter word.

    Brute force over all 2^t words: a word is a proper power iff it equals
    its rotation by some proper divisor of t.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if t > PRIMITIVE_ENUM_MAX:
        raise BudgetExceeded(f"enumeration limited to t <= {PRIMITIVE_ENUM_MAX}")
    words = np.arange(2 ** t, dtype=np.int64)
    mask = (1 << t) - 1
    power = np.zeros(words.shape, dtype=bool)
    for d in range(1, t):
        if t % d == 0:
            rotated = ((words << d) | (words >> (t - d))) & mask
            power |= rotated == words
    return int((~power).sum())


def complexity_table(max_n: int, oracle_limit: int = 18) -> list[dict]:
    """Rows (t, psi(t), oracle count, p(t+1)) for t = 1..max_n."""
    rows = []
    for t in range(1, max_n + 1):
        rows.append({
            "t": t,
            "psi": psi(t),
            "oracle": count_primitive_words(t) if t <= oracle_limit else None,
            "p": max_complexity(t + 1),
        })
    return rows
