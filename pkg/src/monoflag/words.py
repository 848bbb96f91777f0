'''Words over a finite ordered alphabet and exact monotone subword counting.

A k-subword of an n-word w is the letter sequence read along k positions in
increasing order; it is monotone when it is non-decreasing or non-increasing.
Counting is done by dynamic programming in O(n*s*k), never by enumerating
position subsets, and every count is an exact arbitrary-precision integer.
Positions are 1-based throughout.
'''

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, NamedTuple, Optional, Tuple


@dataclass(frozen=True)
class Word:
    '''An n-word over the alphabet {0, ..., alphabet_size - 1}.'''

    letters: Tuple[int, ...]
    alphabet_size: int

    def __post_init__(self):
        if self.alphabet_size < 1:
            raise ValueError('alphabet size must be at least 1')
        for c in self.letters:
            if not 0 <= c < self.alphabet_size:
                raise ValueError(
                    'letter %r out of range for alphabet of size %d'
                    % (c, self.alphabet_size))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def letter(self, t: int) -> int:
        '''The letter at 1-based position t.'''
        if not 1 <= t <= len(self.letters):
            raise ValueError('position %d out of range [1, %d]'
                             % (t, len(self.letters)))
        return self.letters[t - 1]


class MonotoneCount(NamedTuple):
    '''Exact counts of monotone k-subwords, split by direction.

    A subword that is both non-decreasing and non-increasing is constant,
    so total = nondecreasing + nonincreasing - constant.
    '''

    nondecreasing: int
    nonincreasing: int
    constant: int
    total: int


def make_word(letters: Iterable[int], alphabet_size: Optional[int] = None) -> Word:
    '''Build a Word, inferring the alphabet size from the letters if omitted.'''
    tup = tuple(int(c) for c in letters)
    if alphabet_size is None:
        alphabet_size = max(tup) + 1 if tup else 1
    return Word(tup, alphabet_size)


def parse_word(text: str, alphabet_size: Optional[int] = None) -> Word:
    '''Parse a word from its serialized form.

    Two forms are accepted everywhere a word is CLI input: a string of
    digits (alphabets of size at most 10) and comma-separated naturals.
    '''
    text = text.strip()
    if not text:
        return make_word((), alphabet_size)
    if ',' in text:
        parts = [p.strip() for p in text.split(',')]
        return make_word((int(p) for p in parts), alphabet_size)
    if not text.isdigit():
        raise ValueError('cannot parse word %r' % text)
    return make_word((int(ch) for ch in text), alphabet_size)


def format_word(w: Word) -> str:
    '''Serialize a word: digit string for s <= 10, comma-separated otherwise.'''
    if w.alphabet_size <= 10:
        return ''.join(str(c) for c in w.letters)
    return ','.join(str(c) for c in w.letters)


def _count_nondecreasing(letters: Tuple[int, ...], s: int, k: int) -> int:
    # dp[c][j] = number of non-decreasing j-subwords of the processed prefix
    # whose last letter is c.  Appending a position with letter c extends
    # every (j-1)-subword ending in a letter <= c.
    dp = [[0] * (k + 1) for _ in range(s)]
    for c in letters:
        col = dp[c]
        for j in range(k, 1, -1):
            total = 0
            for b in range(c + 1):
                total += dp[b][j - 1]
            col[j] += total
        col[1] += 1
    return sum(dp[c][k] for c in range(s))


def count_monotone(w: Word, k: int) -> MonotoneCount:
    '''Count the monotone k-subwords of w exactly.

    The non-increasing count is obtained by rerunning the non-decreasing
    dynamic program on the letter-reversed word (c -> s-1-c), and constant
    subwords (counted by both runs) are subtracted once.  k larger than
    len(w) yields all-zero counts.
    '''
    if k < 1:
        raise ValueError('k must be at least 1')
    s = w.alphabet_size
    nondec = _count_nondecreasing(w.letters, s, k)
    flipped = tuple(s - 1 - c for c in w.letters)
    noninc = _count_nondecreasing(flipped, s, k)
    const = sum(comb(cnt, k) for cnt in Counter(w.letters).values())
    return MonotoneCount(nondec, noninc, const, nondec + noninc - const)


def monotone_density(w: Word, k: int) -> Fraction:
    '''The exact density m(k, w) / C(n, k) of monotone k-subwords.'''
    n = len(w)
    if k < 1:
        raise ValueError('k must be at least 1')
    if k > n:
        raise ValueError('k = %d exceeds word length %d' % (k, n))
    return Fraction(count_monotone(w, k).total, comb(n, k))


def q_less(letter: int, t: int, w: Word) -> int:
    '''Occurrences of the letter strictly before 1-based position t.'''
    if not 1 <= t <= len(w):
        raise ValueError('position %d out of range [1, %d]' % (t, len(w)))
    return sum(1 for c in w.letters[:t - 1] if c == letter)


def q_greater(letter: int, t: int, w: Word) -> int:
    '''Occurrences of the letter strictly after 1-based position t.'''
    if not 1 <= t <= len(w):
        raise ValueError('position %d out of range [1, %d]' % (t, len(w)))
    return sum(1 for c in w.letters[t:] if c == letter)


def normalize_pattern(w: Word) -> Word:
    '''Replace each letter by its rank among the distinct letters of w.

    The result uses the letters {0, ..., t-1} exactly, where t is the number
    of distinct letters, preserves the relative order of every position pair,
    and is idempotent.  Monotone counts are invariant under this relabeling.
    '''
    distinct = sorted(set(w.letters))
    rank = {c: i for i, c in enumerate(distinct)}
    return Word(tuple(rank[c] for c in w.letters), max(1, len(distinct)))


def binary_flip_delta(w: Word, t: int, k: int) -> int:
    '''m(k, w) - m(k, w*) where w* swaps the distinct letters at t-1, t.

    Closed form: only k-subsets using both flipped positions change status.
    With the pair reading (1, 0), such a subset is monotone in w exactly
    when it picks h ones before position t-1 and k-2-h zeros after t, and
    monotone in w* exactly when it picks zeros before and ones after, so

        delta = sum_h [ C(q<(1, t-1), h) * C(q>(0, t), k-2-h)
                      - C(q<(0, t-1), h) * C(q>(1, t), k-2-h) ].

    The (0, 1) reading is the mirror image and negates the sum.
    '''
    if w.alphabet_size != 2:
        raise ValueError('flip delta is defined for binary words only')
    n = len(w)
    if not 2 <= t <= n:
        raise ValueError('position %d out of range [2, %d]' % (t, n))
    a, b = w.letter(t - 1), w.letter(t)
    if a == b:
        raise ValueError('letters at positions %d, %d are equal; '
                         'flip is undefined' % (t - 1, t))
    ones_before = q_less(1, t - 1, w)
    zeros_before = q_less(0, t - 1, w)
    ones_after = q_greater(1, t, w)
    zeros_after = q_greater(0, t, w)
    delta = 0
    for h in range(k - 1):
        delta += (comb(ones_before, h) * comb(zeros_after, k - 2 - h)
                  - comb(zeros_before, h) * comb(ones_after, k - 2 - h))
    return delta if a == 1 else -delta
