"""Exit criteria.  Each test asserts its criterion at the stated tolerance and
time limit; the terminal summary prints one PASS/FAIL line per criterion."""
import io
import itertools
import time
from contextlib import contextmanager
from fractions import Fraction
from math import gcd

import pytest

from permlab.analysis import (
    count_square_free, detect_period, factor_complexity, is_square, is_square_free,
    max_pattern_complexity, word_factor_complexity, word_max_pattern_complexity,
)
from permlab.automaton import crosscheck, evaluate, tm_automaton
from permlab.cli import run
from permlab.finewilf import (
    enumerate_periodic_patterns, filter_periodic_patterns, find_nongcd_witness, is_monotone,
    verify_theorem3, word_period_classes,
)
from permlab.genperm import periodic_family, sturmian_permutation, tm_morphic_representative, word_permutation
from permlab.makarov import count_primitive_words, divisors, max_complexity, psi
from permlab.patterns import Relation, factor, gamma_of, is_t_periodic, pattern_of
from permlab.words import fibonacci_word, period_doubling, random_word, thue_morse

pytestmark = pytest.mark.criterion

F = Fraction


@contextmanager
def within(seconds):
    start = time.perf_counter()
    yield
    elapsed = time.perf_counter() - start
    assert elapsed < seconds, f"took {elapsed:.1f}s, limit {seconds}s"


def test_01_tm_prefix_pattern():
    with within(1):
        tm = word_permutation(thue_morse())
        assert str(factor(tm, 0, 4)) == "2431"
        lt, gt = Relation.LT, Relation.GT
        expected = {(0, 1): lt, (0, 2): lt, (0, 3): gt, (1, 2): gt, (1, 3): gt, (2, 3): gt}
        assert {pair: gamma_of(tm, *pair) for pair in expected} == expected


def test_02_fine_wilf_words():
    with within(1):
        not_tight = []
        for p in range(1, 9):
            for q in range(p + 1, 9):
                g = gcd(p, q)
                L = p + q - g
                classes = word_period_classes(L, {p, q})
                assert classes == [list(range(r, L, g)) for r in range(g)], (p, q)
                if len(word_period_classes(L - 1, {p, q})) <= g:
                    not_tight.append((p, q))
        assert not not_tight, f"length p+q-gcd-1 already has gcd classes for {not_tight}"


def test_03_coprime_periods_force_monotone():
    with within(30):
        for p, q in [(2, 3), (3, 4), (2, 5), (3, 5), (4, 5)]:
            pats = enumerate_periodic_patterns(p + q, {p, q})
            n = p + q
            assert [list(x) for x in pats] == [list(range(1, n + 1)), list(range(n, 0, -1))], (p, q)
            shorter = enumerate_periodic_patterns(n - 1, {p, q})
            assert any(not is_monotone(x) for x in shorter), (p, q)


def test_04_general_periods():
    with within(60):
        for n in range(11, 15):
            rep = verify_theorem3(4, 6, n)
            assert rep.bound == n - 10 + 5
            assert rep.patterns_checked > 0 and rep.holds, rep.counterexample
        for n in range(11, 21):
            w = find_nongcd_witness(4, 6, n)
            assert w is not None, n
            assert is_t_periodic(w, 4) and is_t_periodic(w, 6) and not is_t_periodic(w, 2)


def test_05_backtracking_equals_brute_force():
    with within(60):
        for L in range(1, 9):
            for r in range(5):
                for periods in itertools.combinations((2, 3, 4, 5), r):
                    assert enumerate_periodic_patterns(L, periods) == filter_periodic_patterns(L, periods), (L, periods)


def test_06_sturmian_word_complexity():
    with within(5):
        w = fibonacci_word()
        for n in range(1, 11):
            assert word_factor_complexity(w, n, 5000).value == n + 1


def test_07_word_maximal_pattern_complexity():
    with within(120):
        w = fibonacci_word()
        for n in range(1, 5):
            rep = word_max_pattern_complexity(w, n, T=24, M=5000, saturation=True)
            assert rep.value == 2 * n and rep.saturated, rep


def test_08_sturmian_permutation_maximal_pattern_complexity():
    with within(120):
        p = sturmian_permutation()
        for n in range(1, 7):
            rep = max_pattern_complexity(p, n, T=24, M=2000, saturation=True)
            assert rep.value == n and rep.saturated, rep


def test_09_ultimately_periodic_complexity():
    with within(5):
        p = periodic_family(2)
        assert len({factor_complexity(p, n, 500).value for n in range(3, 11)}) == 1
        assert detect_period(p, 500, 10) == 2


def test_10_periodic_family_distinct():
    with within(5):
        undistinguished = []
        for n in range(2, 11):
            for start in range(4):
                for length in range(1, 13):
                    assert is_t_periodic(factor(periodic_family(n), start, length), 2)
        for n, m in itertools.combinations(range(2, 11), 2):
            a, b = periodic_family(n), periodic_family(m)
            if not any(factor(a, s, length) != factor(b, s, length)
                       for length in range(1, 7) for s in range(40)):
                undistinguished.append((n, m))
        assert not undistinguished, f"no factor of length <= 6 separates {undistinguished}"


def test_11_makarov_formulas():
    with within(30):
        for t in range(1, 19):
            assert psi(t) == count_primitive_words(t)
            assert sum(psi(d) for d in divisors(t)) == 2 ** t
        assert [max_complexity(k) for k in (2, 3, 4, 5)] == [2, 6, 18, 48]
        for make in (thue_morse, fibonacci_word, period_doubling, lambda: random_word(0)):
            p = word_permutation(make())
            for k in range(2, 8):
                assert factor_complexity(p, k, 4000).value <= max_complexity(k)


def test_12_morphic_representative():
    with within(1):
        vals = tm_morphic_representative(64)
        assert vals[:8] == [F(0), F(1), F(1, 2), F(-1, 2), F(1, 4), F(-3, 4), F(-1, 4), F(3, 4)]
        assert pattern_of(vals) == factor(word_permutation(thue_morse()), 0, 64)


def test_13_tm_automaton():
    with within(5):
        aut = tm_automaton()
        assert crosscheck(aut, word_permutation(thue_morse()), 512) == []
        for i in range(512):
            for j in range(i + 1, 512):
                assert {evaluate(aut, i, j), evaluate(aut, j, i)} == {"<", ">"}


def test_14_squares():
    with within(120):
        for n in (4, 6):
            h = n // 2
            for pat in itertools.permutations(range(1, n + 1)):
                oracle = pattern_of([F(x) for x in pat[:h]]) == pattern_of([F(x) for x in pat[h:]])
                assert is_square(pat) == oracle
        assert count_square_free(3) == 6
        for n in range(1, 8):
            direct = sum(
                1 for pat in itertools.permutations(range(n))
                if not any(all((pat[s + a] < pat[s + b]) == (pat[s + h + a] < pat[s + h + b])
                               for a in range(h) for b in range(a + 1, h))
                           for h in range(2, n // 2 + 1) for s in range(n - 2 * h + 1))
            )
            assert count_square_free(n) == direct
        counts = [count_square_free(n) for n in range(3, 9)]
        assert all(c > 0 for c in counts)
        assert counts == sorted(counts) and len(set(counts)) == len(counts)


CLI_RUNS = [
    ["factor", "--perm", "wordperm:tm", "--start", "0", "--len", "4"],
    ["gamma", "--perm", "wordperm:tm", "--i", "0", "--j", "3"],
    ["finewilf", "words", "--p", "4", "--q", "6"],
    ["finewilf", "perms", "--p", "2", "--q", "3"],
    ["finewilf", "perms", "--p", "4", "--q", "6", "--n", "14"],
    ["finewilf", "witness", "--p", "4", "--q", "6", "--n", "20"],
    ["complexity", "--word", "fib", "--n", "1-10", "--M", "5000"],
    ["complexity", "--word", "fib", "--kind", "maxpattern", "--n", "1-3", "--T", "12", "--M", "2000"],
    ["complexity", "--perm", "sturmian", "--kind", "maxpattern", "--n", "1-4", "--T", "12", "--M", "1000"],
    ["complexity", "--perm", "periodic:n=2", "--n", "3-10", "--M", "500"],
    ["period", "--perm", "periodic:n=2", "--M", "500", "--t-max", "10"],
    ["makarov", "table", "--max-n", "12"],
    ["squares", "--n", "3-7"],
    ["automaton", "check", "--perm", "wordperm:tm", "--N", "128"],
    ["plot", "--perm", "periodic:n=2", "--N", "40"],
    ["plot", "--witness", "4,6,20"],
]


def test_15_cli_determinism():
    def once(argv):
        out, err = io.StringIO(), io.StringIO()
        return run(argv, stdout=out, stderr=err), out.getvalue().encode()

    for argv in CLI_RUNS:
        for fmt in ([], ["--format", "json"], ["--format", "csv"]):
            if argv[0] == "plot" and fmt:
                continue
            first = once(argv + fmt)
            assert first[0] == 0, argv
            assert once(argv + fmt) == first, argv
