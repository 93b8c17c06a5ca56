import pytest

from permlab.analysis import factor_complexity
from permlab.errors import BudgetExceeded
from permlab.genperm import word_permutation
from permlab.makarov import complexity_table, count_primitive_words, divisors, max_complexity, mobius, psi
from permlab.words import fibonacci_word, period_doubling, random_word, thue_morse


def test_mobius():
    assert [mobius(n) for n in (1, 2, 4, 6, 30, 12, 7)] == [1, -1, 0, 1, -1, 0, -1]


def test_psi_examples():
    assert [psi(t) for t in (1, 2, 4)] == [2, 2, 12]


def test_max_complexity_examples():
    assert [max_complexity(n) for n in (2, 3, 4, 5)] == [2, 6, 18, 48]
    with pytest.raises(ValueError):
        max_complexity(1)


def _primitive_by_strings(t):
    count = 0
    for x in range(2 ** t):
        w = format(x, f"0{t}b")
        count += all(w != w[:d] * (t // d) for d in range(1, t) if t % d == 0)
    return count


def test_count_primitive_words():
    assert [count_primitive_words(t) for t in (1, 3, 6)] == [2, 6, 54]
    for t in range(1, 12):
        assert count_primitive_words(t) == _primitive_by_strings(t)
    with pytest.raises(BudgetExceeded):
        count_primitive_words(21)


def test_psi_matches_enumeration():
    for t in range(1, 19):
        assert psi(t) == count_primitive_words(t)


def test_mobius_inversion_identity():
    for t in range(1, 19):
        assert sum(psi(d) for d in divisors(t)) == 2 ** t


def test_table_is_monotone():
    rows = complexity_table(12)
    assert [r["t"] for r in rows] == list(range(1, 13))
    ps = [r["p"] for r in rows]
    assert ps == sorted(ps)
    assert rows[-1]["oracle"] == rows[-1]["psi"]


@pytest.mark.parametrize("make", [thue_morse, fibonacci_word, period_doubling, lambda: random_word(7)])
def test_observed_complexity_below_maximum(make):
    p = word_permutation(make())
    for length in range(2, 8):
        assert factor_complexity(p, length, 4000).value <= max_complexity(length)
