'''Tests for the exhaustive pattern-search oracle.'''

from fractions import Fraction
from itertools import product
from math import comb

import pytest

from monoflag.constructions import (
    alternating_word,
    folded_word,
    proper_form_word,
)
from monoflag.hspoly import generate_hs, minimize_simplex
from monoflag.oracle import brute_min, f_skn
from monoflag.words import (
    Word,
    count_monotone,
    make_word,
    monotone_density,
    normalize_pattern,
    parse_word,
)


def flipped(w: Word) -> Word:
    return Word(tuple(w.alphabet_size - 1 - c for c in w.letters),
                w.alphabet_size)


class TestBruteMin:
    def test_binary_five(self):
        count, winners = brute_min(2, 3, 5)
        assert count == 5
        assert winners == [parse_word('01010'), parse_word('10101')]

    def test_exhaustive_binary_cross_check(self):
        counts = {}
        for letters in product(range(2), repeat=6):
            w = make_word(letters, 2)
            counts[normalize_pattern(w).letters] = count_monotone(w, 3).total
        count, winners = brute_min(2, 3, 6)
        assert count == min(counts.values())
        achievers = {p for p, c in counts.items() if c == count}
        assert achievers == {w.letters for w in winners}

    def test_exhaustive_ternary_cross_check(self):
        counts = {}
        for letters in product(range(3), repeat=5):
            w = make_word(letters, 3)
            counts[normalize_pattern(w).letters] = count_monotone(w, 3).total
        count, winners = brute_min(3, 3, 5)
        assert count == 2
        achievers = {p for p, c in counts.items() if c == count}
        assert achievers == {w.letters for w in winners}

    def test_pairs_always_monotone(self):
        for s in (2, 4):
            for n in (4, 7):
                assert brute_min(s, 2, n)[0] == comb(n, 2)

    def test_whole_word_case(self):
        count, winners = brute_min(2, 3, 3)
        assert count == 0
        assert winners == [parse_word('010'), parse_word('101')]

    def test_counter_agrees_on_winners(self):
        count, winners = brute_min(4, 3, 7)
        assert count == 8
        assert len(winners) == 2
        assert all(count_monotone(w, 3).total == count for w in winners)

    def test_single_letter_subwords(self):
        # every word scores n, so all 1 + 14 + 36 patterns minimize
        count, winners = brute_min(3, 1, 4)
        assert count == 4
        assert len(winners) == 51

    def test_guard(self):
        with pytest.raises(ValueError, match='guard'):
            brute_min(6, 3, 20)
        with pytest.raises(ValueError, match='guard'):
            brute_min(3, 3, 5, cap=10)

    def test_validation(self):
        with pytest.raises(ValueError, match='exceeds'):
            brute_min(2, 4, 3)
        with pytest.raises(ValueError, match='positive'):
            brute_min(0, 3, 5)
        with pytest.raises(ValueError, match='positive'):
            brute_min(2, 3, 0)


class TestDensity:
    def test_binary_values(self):
        assert f_skn(2, 3, 5) == Fraction(1, 2)
        assert f_skn(2, 3, 7) == Fraction(3, 5)
        assert f_skn(2, 4, 7) == Fraction(1, 5)

    def test_nondecreasing_in_n(self):
        for k in (3, 4):
            values = [f_skn(2, k, n) for n in range(k, 11)]
            assert all(a <= b for a, b in zip(values, values[1:]))
            assert all(v <= Fraction(k, 2 ** (k - 1)) for v in values)

    def test_nonincreasing_in_s(self):
        values = [f_skn(s, 3, 7) for s in (2, 3, 4)]
        assert values == [Fraction(3, 5), Fraction(13, 35), Fraction(8, 35)]

    def test_alternating_minimizes_binary(self):
        for n in (5, 7, 9, 11, 13):
            for k in (3, 4):
                _, winners = brute_min(2, k, n)
                alt = alternating_word(n)
                assert winners == [alt, flipped(alt)]

    def test_proper_form_attains_ternary_minimum(self):
        for n in (3, 5, 7, 9):
            count, winners = brute_min(3, 3, n)
            by_y = {y: count_monotone(proper_form_word(n, y), 3).total
                    for y in range((n + 1) // 2)}
            assert count == min(by_y.values())
            patterns = {w.letters for w in winners}
            hits = [y for y, c in by_y.items() if c == count]
            assert any(normalize_pattern(proper_form_word(n, y)).letters
                       in patterns for y in hits)

    def test_some_ternary_minimizers_are_not_proper(self):
        # the structure claim is existential: at n = 7 the repeating
        # word 1021021 ties the proper form 1020201 at 13
        count, winners = brute_min(3, 3, 7)
        assert count == 13
        patterns = {w.letters for w in winners}
        assert normalize_pattern(proper_form_word(7, 1)).letters in patterns
        assert parse_word('1021021').letters in patterns

    def test_construction_never_beats_oracle(self):
        best = minimize_simplex(generate_hs(3))
        for n in (5, 7, 9):
            built = monotone_density(folded_word(3, best.point, n), 3)
            assert f_skn(3, 3, n) <= built
