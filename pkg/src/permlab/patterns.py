"""Finite patterns, the order relation between positions, and factors."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Callable, Iterable, Optional, Sequence

from .errors import InvalidPairError, NonInjectiveError
from .numerics import ExactReal, compare


class Relation(str, enum.Enum):
    LT = "<"
    GT = ">"

    @property
    def opposite(self) -> Relation:
        return Relation.GT if self is Relation.LT else Relation.LT

    def __str__(self):
        return self.value


class Pattern(tuple):
    """A finite permutation as a 1-based rank vector, e.g. ``Pattern((2, 4, 3, 1))``."""

    def __new__(cls, ranks: Iterable[int]):
        ranks = tuple(int(r) for r in ranks)
        if sorted(ranks) != list(range(1, len(ranks) + 1)):
            raise ValueError(f"{ranks} is not a rank vector over 1..{len(ranks)}")
        return super().__new__(cls, ranks)

    @classmethod
    def _trusted(cls, ranks):
        return super().__new__(cls, ranks)

    @classmethod
    def parse(cls, text: str) -> Pattern:
        text = text.strip().strip("[]")
        if "," in text:
            return cls(int(x) for x in text.split(","))
        return cls(int(c) for c in text)

    @classmethod
    def from_order(cls, keys: Sequence) -> Pattern:
        """Pattern of a sequence of pairwise-distinct natively comparable keys."""
        order = sorted(range(len(keys)), key=keys.__getitem__)
        ranks = [0] * len(keys)
        for r, idx in enumerate(order, 1):
            ranks[idx] = r
        return cls._trusted(ranks)

    def restrict(self, positions: Sequence[int]) -> Pattern:
        """Renormalized pattern induced on ``positions``."""
        return Pattern.from_order([self[i] for i in positions])

    def relation(self, i: int, j: int) -> Relation:
        return Relation.LT if self[i] < self[j] else Relation.GT

    def __str__(self):
        if len(self) <= 9:
            return "".join(map(str, self))
        return ",".join(map(str, self))

    def __repr__(self):
        return f"Pattern({str(self)!r})"


def pattern_of(values: Sequence[ExactReal]) -> Pattern:
    """Rank vector of pairwise-distinct exact reals."""
    order = sorted(range(len(values)), key=cmp_to_key(lambda i, j: compare(values[i], values[j])))
    for a, b in zip(order, order[1:]):
        if compare(values[a], values[b]) == 0:
            raise NonInjectiveError(f"values at {a} and {b} coincide")
    ranks = [0] * len(values)
    for r, idx in enumerate(order, 1):
        ranks[idx] = r
    return Pattern._trusted(ranks)


class PermutationView:
    """An infinite permutation on N given by an exact comparator.

    ``gamma(i, j)`` returns the :class:`Relation` between positions ``i != j``.
    When ``representative`` is given it maps an index to an exact real whose
    order realizes the permutation; it is then used as a fast sort key.
    """

    def __init__(
        self,
        gamma: Callable[[int, int], Relation],
        representative: Optional[Callable[[int], ExactReal]] = None,
        name: str = "perm",
    ):
        self._gamma = gamma
        self.representative = representative
        self.name = name

    def gamma(self, i: int, j: int) -> Relation:
        return self._gamma(i, j)

    def _cmp(self, i, j):
        if i == j:
            return 0
        return -1 if self._gamma(i, j) is Relation.LT else 1

    def pattern_at(self, indices: Sequence[int]) -> Pattern:
        """Pattern induced on the given (distinct) positions, in the given order."""
        if self.representative is not None:
            return Pattern.from_order([self.representative(i) for i in indices])
        order = sorted(range(len(indices)), key=cmp_to_key(lambda a, b: self._cmp(indices[a], indices[b])))
        ranks = [0] * len(indices)
        for r, idx in enumerate(order, 1):
            ranks[idx] = r
        return Pattern._trusted(ranks)

    def global_ranks(self, count: int) -> list[int]:
        """0-based rank of each of the positions ``0..count-1`` among them."""
        if self.representative is not None:
            vals = [self.representative(i) for i in range(count)]
            order = sorted(range(count), key=vals.__getitem__)
        else:
            order = sorted(range(count), key=cmp_to_key(self._cmp))
        ranks = [0] * count
        for r, idx in enumerate(order):
            ranks[idx] = r
        return ranks

    def __repr__(self):
        return f"<PermutationView {self.name}>"


def gamma_of(p: PermutationView, i: int, j: int) -> Relation:
    if i == j:
        raise InvalidPairError(f"gamma is undefined on the diagonal ({i}, {j})")
    if i < 0 or j < 0:
        raise InvalidPairError("positions are non-negative")
    return p.gamma(i, j)


def factor(p: PermutationView, s: int, n: int) -> Pattern:
    """Pattern on positions ``s, ..., s+n-1`` (0-based)."""
    if n < 1:
        raise ValueError("factor length must be >= 1")
    return p.pattern_at(range(s, s + n))


@dataclass(frozen=True)
class Window:
    offsets: tuple[int, ...]

    def __post_init__(self):
        offs = tuple(self.offsets)
        if not offs or offs[0] != 0:
            raise ValueError("a window starts at offset 0")
        if any(b <= a for a, b in zip(offs, offs[1:])):
            raise ValueError("window offsets must be strictly increasing")
        object.__setattr__(self, "offsets", offs)

    def __len__(self):
        return len(self.offsets)

    @property
    def spread(self) -> int:
        return self.offsets[-1]

    @classmethod
    def contiguous(cls, n: int) -> Window:
        return cls(tuple(range(n)))


def is_t_periodic(pat: Sequence[int], t: int) -> bool:
    """True iff the relation between i, j equals that between i+t, j+t inside ``pat``."""
    if t < 1:
        raise ValueError("period must be >= 1")
    n = len(pat)
    for i in range(n - t):
        for j in range(i + 1, n - t):
            if (pat[i] < pat[j]) != (pat[i + t] < pat[j + t]):
                return False
    return True
