"""Complexity functions, period detection and square-freeness.

All complexities are computed over the prefix of length ``M`` (positions
``0..M-1``) and are therefore lower bounds of the true values; a report is
marked saturated when doubling the scan parameters leaves the value unchanged.

Maximal pattern complexity uses one reduction: the pattern seen through a
window of spread at most ``T`` at position ``m`` is determined by the factor
of length ``T+1`` at ``m``, so positions are deduplicated by that factor
(their "context") before windows are enumerated.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from math import comb
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetExceeded
from .patterns import Pattern, PermutationView, Window
from .words import InfiniteWord

DEFAULT_T = 24
DEFAULT_M = 2000
SQUARE_FREE_MAX_N = 9


@dataclass
class ComplexityReport:
    n: int
    value: int
    M: int
    T: Optional[int] = None
    windows_tried: Optional[int] = None
    best_window: Optional[tuple[int, ...]] = None
    saturated: Optional[bool] = None
    kind: str = "factor"

    @property
    def bound(self) -> str:
        """'=' when the value survived a doubling of the scan, else '>='."""
        return "=" if self.saturated else ">="

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bound"] = self.bound
        if d["best_window"] is not None:
            d["best_window"] = list(d["best_window"])
        return d


def _check_scan(n, M):
    if n < 1:
        raise ValueError("length must be >= 1")
    if M < n:
        raise ValueError(f"scan bound M={M} is shorter than n={n}")


def _contexts(p: PermutationView, M: int, width: int) -> dict[tuple[int, ...], int]:
    """Distinct patterns of positions m..min(m+width, M)-1 for 0 <= m < M.

    Maps each distinct context to its length.
    """
    out: dict[tuple[int, ...], int] = {}
    if p.representative is not None:
        g = p.global_ranks(M)
        for m in range(M):
            seg = g[m:m + width]
            out.setdefault(tuple(Pattern.from_order(seg)), len(seg))
    else:
        for m in range(M):
            k = min(width, M - m)
            out.setdefault(tuple(p.pattern_at(range(m, m + k))), k)
    return out


def factor_complexity(p: PermutationView, n: int, M: int, saturation: bool = False) -> ComplexityReport:
    """Number of distinct factors of length n among positions 0..M-1."""
    _check_scan(n, M)
    ctx = _contexts(p, M, n)
    value = sum(1 for length in ctx.values() if length == n)
    rep = ComplexityReport(n, value, M)
    if saturation:
        rep.saturated = factor_complexity(p, n, 2 * M).value == value
    return rep


def word_factor_complexity(w: InfiniteWord, n: int, M: int, saturation: bool = False) -> ComplexityReport:
    _check_scan(n, M)
    pre = w.prefix(M)
    value = len({tuple(pre[s:s + n]) for s in range(M - n + 1)})
    rep = ComplexityReport(n, value, M)
    if saturation:
        rep.saturated = word_factor_complexity(w, n, 2 * M).value == value
    return rep


def _as_window(S) -> Window:
    return S if isinstance(S, Window) else Window(tuple(S))


def s_complexity(p: PermutationView, S, M: int) -> ComplexityReport:
    """Distinct patterns on positions m + S for every m with m + spread < M."""
    S = _as_window(S)
    if S.spread >= M:
        raise ValueError("window spread must be below the scan bound M")
    seen = {p.pattern_at([m + t for t in S.offsets]) for m in range(M - S.spread)}
    return ComplexityReport(len(S), len(seen), M, T=S.spread, windows_tried=1,
                            best_window=S.offsets, kind="s")


def word_s_complexity(w: InfiniteWord, S, M: int) -> ComplexityReport:
    S = _as_window(S)
    if S.spread >= M:
        raise ValueError("window spread must be below the scan bound M")
    pre = w.prefix(M)
    seen = {tuple(pre[m + t] for t in S.offsets) for m in range(M - S.spread)}
    return ComplexityReport(len(S), len(seen), M, T=S.spread, windows_tried=1,
                            best_window=S.offsets, kind="s")


def _context_matrix(ctx: dict[tuple[int, ...], int], width: int):
    keys = sorted(ctx)  # canonical row order
    R = np.full((len(keys), width), -1, dtype=np.int64)
    lengths = np.empty(len(keys), dtype=np.int64)
    for r, key in enumerate(keys):
        R[r, :len(key)] = key
        lengths[r] = ctx[key]
    return R, lengths


def _best_window(R, lengths, n, T, symbols: Optional[int]):
    """Maximize the number of distinct row-restrictions over windows.

    ``symbols`` is the alphabet size for words; ``None`` means rows are rank
    vectors and restrictions are compared as patterns.
    """
    K = R.shape[0]

    def extend(lab, S, cols):
        # labels of S + [t] for each t in cols; shape (K, len(cols))
        sub = R[:, cols]
        if symbols is None:
            slot = np.zeros(sub.shape, dtype=np.int64)
            for a in S:
                slot += sub > R[:, [a]]
            return lab[:, None] * (len(S) + 1) + slot
        return lab[:, None] * symbols + sub

    # a single position: one pattern, or the distinct first symbols of a word
    start = np.zeros(K, dtype=np.int64) if symbols is None else R[:, 0].copy()
    if n == 1:
        return len(np.unique(start)), (0,)
    best = (0, None)

    def rec(S, lab):
        nonlocal best
        last = S[-1]
        if len(S) == n - 1:
            cols = np.arange(last + 1, T + 1)
            if not len(cols):
                return
            labs = extend(lab, S, cols)
            valid = lengths[:, None] > cols[None, :]
            labs = np.where(valid, labs, -1)
            s = np.sort(labs, axis=0)
            counts = (np.diff(s, axis=0) != 0).sum(axis=0) + 1 - (~valid).any(axis=0)
            k = int(np.argmax(counts))
            if counts[k] > best[0]:
                best = (int(counts[k]), tuple(S) + (int(cols[k]),))
            return
        for t in range(last + 1, T + 2 - (n - len(S))):
            labs = extend(lab, S, [t])[:, 0]
            labs = np.where(lengths > t, labs, -1)
            _, inv = np.unique(labs, return_inverse=True)
            rec(S + [t], inv.reshape(-1).astype(np.int64))

    rec([0], start)
    return best


def max_pattern_complexity(p: PermutationView, n: int, T: int = DEFAULT_T, M: int = DEFAULT_M,
                           saturation: bool = False) -> ComplexityReport:
    """Largest S-complexity over windows with n offsets and spread <= T."""
    _check_scan(n, M)
    if T < n - 1:
        raise ValueError(f"spread bound T={T} cannot hold {n} offsets")
    if T >= M:
        raise ValueError("spread bound T must be below M")
    R, lengths = _context_matrix(_contexts(p, M, T + 1), T + 1)
    value, window = _best_window(R, lengths, n, T, None)
    rep = ComplexityReport(n, value, M, T, comb(T, n - 1), window, kind="maxpattern")
    if saturation:
        rep.saturated = max_pattern_complexity(p, n, 2 * T, 2 * M).value == value
    return rep


def word_max_pattern_complexity(w: InfiniteWord, n: int, T: int = DEFAULT_T, M: int = 5000,
                                saturation: bool = False) -> ComplexityReport:
    _check_scan(n, M)
    if T < n - 1:
        raise ValueError(f"spread bound T={T} cannot hold {n} offsets")
    if T >= M:
        raise ValueError("spread bound T must be below M")
    pre = w.prefix(M)
    ctx = {}
    for m in range(M):
        seg = tuple(pre[m:m + T + 1])
        ctx.setdefault(seg, len(seg))
    R, lengths = _context_matrix(ctx, T + 1)
    value, window = _best_window(R, lengths, n, T, w.q)
    rep = ComplexityReport(n, value, M, T, comb(T, n - 1), window, kind="maxpattern")
    if saturation:
        rep.saturated = word_max_pattern_complexity(w, n, 2 * T, 2 * M).value == value
    return rep


def detect_period(p: PermutationView, M: int, t_max: int) -> Optional[int]:
    """Smallest t <= t_max consistent with every pair inside positions 0..M-1."""
    if t_max > M // 2:
        raise ValueError("t_max must be at most M/2")
    g = np.asarray(p.global_ranks(M))
    for t in range(1, t_max + 1):
        a, b = g[:M - t], g[t:]
        if np.array_equal(a[:, None] < a[None, :], b[:, None] < b[None, :]):
            return t
    return None


def is_square(pat: Sequence[int]) -> bool:
    """Even length >= 4 with order-isomorphic halves."""
    n = len(pat)
    if n < 4 or n % 2:
        return False
    h = n // 2
    return Pattern.from_order(pat[:h]) == Pattern.from_order(pat[h:])


def is_square_free(pat: Sequence[int]) -> bool:
    n = len(pat)
    for length in range(4, n + 1, 2):
        for s in range(n - length + 1):
            if is_square(pat[s:s + length]):
                return False
    return True


def count_square_free(n: int, max_n: int = SQUARE_FREE_MAX_N) -> int:
    if n > max_n:
        raise BudgetExceeded(f"enumerating S_{n} exceeds the budget n <= {max_n}")
    return sum(1 for pat in itertools.permutations(range(1, n + 1)) if is_square_free(pat))
