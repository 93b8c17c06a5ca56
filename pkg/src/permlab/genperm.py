"""Constructors for the infinite permutations studied in permlab."""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Sequence

from .errors import ConstructionError, RationalDependenceError, SpecError, UnresolvedComparison
from .numerics import ExactReal, compare, parse_exact, rationally_independent, sqrt
from .patterns import PermutationView, Relation
from .words import InfiniteWord, WORD_SPEC_GRAMMAR, fibonacci_word, parse_word

DEFAULT_LOOKAHEAD = 4096

PERM_SPEC_GRAMMAR = """\
permutation specs:
  wordperm:<word spec>              order of the suffixes .w_i w_{i+1} ... of a word
  sturmian[:w=fib,x=1,y=sqrt2,a0=0] Sturmian permutation, steps +x on 0 and -y on 1
  periodic:n=<n>                    2-periodic family a(n) = 1, 2n, 3, 2n+2, ...
  tmmorphic                         Thue-Morse permutation via the halving morphism
  monotone                          the identity order 0 < 1 < 2 < ...
""" + WORD_SPEC_GRAMMAR


class WordPermutation(PermutationView):
    """Permutation generated by a word: positions ordered like their suffixes.

    Suffixes are compared lexicographically, scanning at most ``lookahead``
    symbols; equal windows raise :class:`UnresolvedComparison`.
    """

    _CHUNK = 64

    def __init__(self, word: InfiniteWord, q: int | None = None, lookahead: int = DEFAULT_LOOKAHEAD):
        if q is not None and q != word.q:
            raise ConstructionError(f"base {q} differs from alphabet size {word.q}")
        self.word = word
        self.q = word.q
        self.lookahead = lookahead
        super().__init__(self._compare_suffixes, None, f"wordperm:{word.name}")

    def _compare_suffixes(self, i, j):
        w, step = self.word, self._CHUNK
        k = 0
        while k < self.lookahead:
            n = min(step, self.lookahead - k)
            a = w[i + k:i + k + n]
            b = w[j + k:j + k + n]
            if a != b:
                for x, y in zip(a, b):
                    if x != y:
                        return Relation.LT if x < y else Relation.GT
            k += n
            step *= 2
        raise UnresolvedComparison(i, j, self.lookahead)


def word_permutation(w: InfiniteWord, q: int | None = None, L: int = DEFAULT_LOOKAHEAD) -> WordPermutation:
    return WordPermutation(w, q, L)


class SturmianPermutation(PermutationView):
    """Representative a_0 = a0, a_{i+1} = a_i + x if w_i = 0 else a_i - y."""

    def __init__(self, word: InfiniteWord, x: ExactReal, y: ExactReal, a0: ExactReal = 0):
        if compare(x, 0) <= 0 or compare(y, 0) <= 0:
            raise ConstructionError("steps x and y must be positive")
        if not rationally_independent(x, y):
            raise RationalDependenceError(
                f"x={x} and y={y} are rationally dependent; the order may tie"
            )
        self.word, self.x, self.y, self.a0 = word, x, y, a0
        self._zeros = [0]
        self._ones = [0]
        self._lock = threading.Lock()
        super().__init__(self._gamma_counts, self.value, "sturmian")

    def counts(self, i: int) -> tuple[int, int]:
        """(number of 0s, number of 1s) among w_0 ... w_{i-1}."""
        if i >= len(self._zeros):
            with self._lock:
                z, o = self._zeros, self._ones
                if i >= len(z):
                    syms = self.word[len(z) - 1:max(i, 2 * len(z))]
                    nz, no = list(z), list(o)
                    for s in syms:
                        nz.append(nz[-1] + (s == 0))
                        no.append(no[-1] + (s != 0))
                    self._zeros, self._ones = nz, no
        return self._zeros[i], self._ones[i]

    def value(self, i: int) -> ExactReal:
        z, o = self.counts(i)
        return self.a0 + z * self.x - o * self.y

    def _gamma_counts(self, i, j):
        zi, oi = self.counts(i)
        zj, oj = self.counts(j)
        # a_i - a_j = (zi - zj) x - (oi - oj) y
        c = compare((zi - zj) * self.x, (oi - oj) * self.y)
        if c == 0:
            raise RationalDependenceError(f"a_{i} == a_{j}")
        return Relation.LT if c < 0 else Relation.GT


def sturmian_permutation(w: InfiniteWord | None = None, x: ExactReal = 1,
                         y: ExactReal | None = None, a0: ExactReal = 0) -> SturmianPermutation:
    """Defaults: Fibonacci word, x = 1, y = sqrt(2), a0 = 0."""
    return SturmianPermutation(w if w is not None else fibonacci_word(), x,
                               y if y is not None else sqrt(2), a0)


def _by_value(rep):
    def gamma(i, j):
        return Relation.LT if rep(i) < rep(j) else Relation.GT
    return gamma


def periodic_family(n: int) -> PermutationView:
    """alpha(n), represented by 1, 2n, 3, 2n+2, 5, 2n+4, ..."""
    if n < 2:
        raise ValueError("alpha(n) needs n >= 2")

    def rep(i):
        return i + 1 if i % 2 == 0 else 2 * n + i - 1

    return PermutationView(_by_value(rep), rep, f"periodic:n={n}")


def shift_periodic(block: Sequence[int], step: int) -> PermutationView:
    """Representative a_{kt+r} = block[r] + k*step; it is t-periodic for t = len(block)."""
    t = len(block)
    block = tuple(block)

    def rep(i):
        k, r = divmod(i, t)
        return block[r] + k * step

    def gamma(i, j):
        a, b = rep(i), rep(j)
        if a == b:
            raise ConstructionError(f"positions {i} and {j} share the value {a}")
        return Relation.LT if a < b else Relation.GT

    return PermutationView(gamma, rep, f"shift:{list(block)}+{step}")


def monotone() -> PermutationView:
    return PermutationView(lambda i, j: Relation.LT if i < j else Relation.GT, lambda i: i, "monotone")


def halving_image(x: Fraction) -> tuple[Fraction, Fraction]:
    """Image of one value under the Thue-Morse halving morphism."""
    half = Fraction(x) / 2
    if x > 0:
        return half, half - 1
    return half, half + 1


class _MorphicStream:
    def __init__(self):
        self.values = [Fraction(0), Fraction(1)]
        self.lock = threading.Lock()

    def get(self, i):
        vals = self.values
        if i >= len(vals):
            with self.lock:
                vals = list(self.values)
                while len(vals) <= i:
                    # fixed point: s[2k], s[2k+1] = image(s[k])
                    vals.extend(halving_image(vals[len(vals) // 2]))
                self.values = vals
        return vals[i]


def tm_morphic_representative(count: int) -> list[Fraction]:
    """First ``count`` dyadic values 0, 1, 1/2, -1/2, 1/4, -3/4, -1/4, 3/4, ..."""
    if count < 1:
        raise ValueError("count must be >= 1")
    s = _MorphicStream()
    s.get(count - 1)
    return s.values[:count]


def tm_morphic_permutation() -> PermutationView:
    s = _MorphicStream()
    return PermutationView(_by_value(s.get), s.get, "tmmorphic")


def _kv(body):
    out = {}
    for item in filter(None, (x.strip() for x in body.split(","))):
        k, sep, v = item.partition("=")
        if not sep:
            raise SpecError(f"expected key=value, got {item!r}")
        out[k.strip()] = v.strip()
    return out


def parse_perm(spec: str, lookahead: int = DEFAULT_LOOKAHEAD) -> PermutationView:
    """Build a permutation from a CLI spec string; see ``PERM_SPEC_GRAMMAR``."""
    spec = spec.strip()
    head, _, body = spec.partition(":")
    try:
        if head == "wordperm":
            return word_permutation(parse_word(body), L=lookahead)
        if head == "sturmian":
            kv = _kv(body)
            w = parse_word(kv.get("w", "fib"))
            return sturmian_permutation(w, parse_exact(kv.get("x", "1")),
                                        parse_exact(kv.get("y", "sqrt2")),
                                        parse_exact(kv.get("a0", "0")))
        if head == "periodic":
            return periodic_family(int(_kv(body)["n"]))
        if head == "tmmorphic" and not body:
            return tm_morphic_permutation()
        if head == "monotone" and not body:
            return monotone()
    except SpecError as exc:
        raise SpecError(f"{exc}\n{PERM_SPEC_GRAMMAR}") from None
    except (KeyError, ValueError) as exc:
        raise SpecError(f"bad permutation spec {spec!r}: {exc}\n{PERM_SPEC_GRAMMAR}") from None
    raise SpecError(f"unknown permutation spec {spec!r}\n{PERM_SPEC_GRAMMAR}")
