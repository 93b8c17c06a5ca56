"""Lazily evaluated infinite words.

An :class:`InfiniteWord` pulls symbols from a deterministic stream into an
append-only memo.  Concurrent readers see only the settled prefix; a lock
admits one writer at a time.
"""
from __future__ import annotations

import itertools
import random
import re
import threading
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import ConstructionError, SpecError
from .numerics import ExactReal, compare, floor_exact, parse_exact, QuadraticSurd

WORD_SPEC_GRAMMAR = """\
word specs:
  tm                                Thue-Morse word 0110 1001 ...
  pd                                period-doubling word (0->01, 1->00)
  fib                               Fibonacci word (0->01, 1->0)
  const[:symbol=0]                  constant word
  random[:seed=0,q=2]               seeded pseudo-random word
  mech:alpha=<x>,rho=<x>            mechanical word floor((n+1)a+r) - floor(na+r)
  morphic:0->01,1->10;seed=0        fixed point of a morphism ('→' also accepted)
  ultper:u=<digits>,v=<digits>      ultimately periodic word u v v v ...
exact reals: 3/4, -2, sqrt2, 2√3, (-1+1√5)/2"""


class InfiniteWord:
    """A memoized symbol stream over the alphabet ``{0, ..., q-1}``."""

    def __init__(self, stream: Iterable[int], q: int, name: str = "word"):
        self.q = q
        self.name = name
        self._source: Iterator[int] = iter(stream)
        self._cache: list[int] = []
        self._lock = threading.Lock()

    @classmethod
    def from_rule(cls, rule: Callable[[int], int], q: int, name: str = "word"):
        return cls(map(rule, itertools.count()), q, name)

    def _extend(self, n):
        with self._lock:
            cache = self._cache
            if len(cache) >= n:
                return
            # build privately, publish with one extend so readers never see a torn cell
            fresh = list(itertools.islice(self._source, n - len(cache)))
            if len(fresh) < n - len(cache):
                raise ConstructionError(f"word {self.name!r} stream ended early")
            cache.extend(fresh)

    def symbol_at(self, i: int) -> int:
        if i < 0:
            raise IndexError("infinite words are indexed from 0")
        if i >= len(self._cache):
            self._extend(max(i + 1, 2 * len(self._cache), 64))
        return self._cache[i]

    def prefix(self, n: int) -> list[int]:
        if n > len(self._cache):
            self._extend(max(n, 2 * len(self._cache)))
        return self._cache[:n]

    def __getitem__(self, key):
        if isinstance(key, slice):
            if key.stop is None or (key.start or 0) < 0 or key.stop < 0:
                raise IndexError("only bounded non-negative slices are supported")
            if key.stop > len(self._cache):
                self._extend(max(key.stop, 2 * len(self._cache)))
            return self._cache[key]
        return self.symbol_at(key)

    def __repr__(self):
        head = "".join(map(str, self.prefix(16)))
        return f"<InfiniteWord {self.name} {head}...>"


@dataclass(frozen=True)
class Morphism:
    images: Mapping[int, tuple[int, ...]]

    def __post_init__(self):
        images = {int(k): tuple(v) for k, v in self.images.items()}
        for k, v in images.items():
            if not v:
                raise ConstructionError(f"image of {k} is empty")
            for s in v:
                if s not in images:
                    raise ConstructionError(f"symbol {s} in image of {k} has no image")
        object.__setattr__(self, "images", images)

    @property
    def alphabet_size(self) -> int:
        return max(self.images) + 1

    def apply(self, word: Sequence[int]) -> list[int]:
        return [s for c in word for s in self.images[c]]

    def is_prolongable(self, seed: int) -> bool:
        image = self.images.get(seed, ())
        return len(image) >= 2 and image[0] == seed


def _fixed_point_stream(m: Morphism, seed: int) -> Iterator[int]:
    buf = list(m.images[seed])
    pos = 1  # next symbol of buf whose image is not yet appended
    k = 0
    while True:
        while k >= len(buf):
            buf.extend(m.images[buf[pos]])
            pos += 1
        yield buf[k]
        k += 1


def morphic_word(m: Morphism, seed: int = 0, name: str | None = None) -> InfiniteWord:
    """Fixed point of ``m`` starting with ``seed``."""
    if not m.is_prolongable(seed):
        raise ConstructionError(f"morphism is not prolongable at {seed}")
    return InfiniteWord(_fixed_point_stream(m, seed), m.alphabet_size,
                        name or f"morphic(seed={seed})")


def thue_morse() -> InfiniteWord:
    return morphic_word(Morphism({0: (0, 1), 1: (1, 0)}), 0, "tm")


def period_doubling() -> InfiniteWord:
    return morphic_word(Morphism({0: (0, 1), 1: (0, 0)}), 0, "pd")


def fibonacci_word() -> InfiniteWord:
    return morphic_word(Morphism({0: (0, 1), 1: (0,)}), 0, "fib")


def constant_word(symbol: int = 0) -> InfiniteWord:
    return InfiniteWord(itertools.repeat(symbol), symbol + 1, f"const{symbol}")


def mechanical_word(alpha: ExactReal, rho: ExactReal = 0, name: str | None = None) -> InfiniteWord:
    """Lower mechanical word of slope ``alpha`` and intercept ``rho``."""
    if compare(alpha, 0) <= 0 or compare(alpha, 1) >= 0:
        raise ConstructionError("mechanical word slope must lie in (0, 1)")

    def rule(n):
        return floor_exact((n + 1) * alpha + rho) - floor_exact(n * alpha + rho)

    return InfiniteWord.from_rule(rule, 2, name or f"mech({alpha},{rho})")


def ultimately_periodic(u: Sequence[int], v: Sequence[int], q: int | None = None) -> InfiniteWord:
    if not v:
        raise ConstructionError("period block v must be non-empty")
    u, v = tuple(u), tuple(v)
    q = q or max(u + v) + 1
    label = "".join(map(str, u)) + "(" + "".join(map(str, v)) + ")"
    return InfiniteWord(itertools.chain(u, itertools.cycle(v)), q, f"ultper:{label}")


def random_word(seed: int = 0, q: int = 2) -> InfiniteWord:
    rng = random.Random(seed)
    return InfiniteWord(iter(lambda: rng.randrange(q), None), q, f"random(seed={seed})")


def symbol_at(w: InfiniteWord, i: int) -> int:
    return w.symbol_at(i)


def _kv(body: str) -> dict[str, str]:
    out = {}
    for item in filter(None, (s.strip() for s in body.split(","))):
        if "=" not in item:
            raise SpecError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _digits(s: str) -> tuple[int, ...]:
    if not re.fullmatch(r"\d*", s):
        raise SpecError(f"expected a digit string, got {s!r}")
    return tuple(int(c) for c in s)


def parse_word(spec: str) -> InfiniteWord:
    """Build a word from a CLI spec string; see ``WORD_SPEC_GRAMMAR``."""
    spec = spec.strip()
    head, _, body = spec.partition(":")
    try:
        if head == "tm" and not body:
            return thue_morse()
        if head == "pd" and not body:
            return period_doubling()
        if head == "fib" and not body:
            return fibonacci_word()
        if head == "const":
            return constant_word(int(_kv(body).get("symbol", 0)))
        if head == "random":
            kv = _kv(body)
            return random_word(int(kv.get("seed", 0)), int(kv.get("q", 2)))
        if head == "mech":
            kv = _kv(body)
            return mechanical_word(parse_exact(kv["alpha"]), parse_exact(kv.get("rho", "0")))
        if head == "morphic":
            rules, _, tail = body.partition(";")
            images = {}
            for rule in filter(None, (r.strip() for r in rules.split(","))):
                lhs, rhs = re.split(r"->|→", rule)
                images[int(lhs)] = _digits(rhs.strip())
            seed = int(_kv(tail).get("seed", 0)) if tail else 0
            return morphic_word(Morphism(images), seed, spec)
        if head == "ultper":
            # tolerate the literal "uvvv...:" prefix from the documented form
            body = re.sub(r"^uv+(?:…|\.\.\.)?:", "", body)
            kv = _kv(body)
            return ultimately_periodic(_digits(kv.get("u", "")), _digits(kv["v"]))
    except (KeyError, ValueError) as exc:
        raise SpecError(f"bad word spec {spec!r}: {exc}\n{WORD_SPEC_GRAMMAR}") from None
    raise SpecError(f"unknown word spec {spec!r}\n{WORD_SPEC_GRAMMAR}")
