'''Generators for the explicit word families used by the extremal arguments.

All constructions return Word values; block lengths in folded words use
floor(x_i * n), with leftover letters absorbed by the central block.  Any
two members of the same folded family differ by O(n^2) monotone triples,
so the flooring choice does not affect limiting densities.
'''

from fractions import Fraction
from itertools import permutations
from math import floor
from typing import Sequence, Tuple

from monoflag.words import Word, count_monotone


def alternating_word(n: int) -> Word:
    '''The binary word 0101... of length n.'''
    if n < 0:
        raise ValueError('length must be non-negative')
    return Word(tuple(t % 2 for t in range(n)), 2)


def proper_form_word(n: int, y: int) -> Word:
    '''The ternary palindrome 1^y 0202...0 1^y of odd length n.

    The central block has length n - 2y and alternates 0 and 2, starting
    and ending with 0.
    '''
    if n % 2 == 0:
        raise ValueError('proper form words have odd length')
    if not 0 <= 2 * y < n:
        raise ValueError('y must satisfy 0 <= y < n/2')
    middle = tuple(0 if i % 2 == 0 else 2 for i in range(n - 2 * y))
    return Word((1,) * y + middle + (1,) * y, 3)


def folded_segments(s: int) -> Tuple[Tuple[int, ...], ...]:
    '''Letter sets of the 2r+1 folded-word segments, outermost first.

    Side block i uses the i-th innermost letter pair (a singleton middle
    letter for odd s when i = 1) and the central segment uses the extreme
    pair (0, s-1); the right half repeats the left in reverse.
    '''
    if s < 3:
        raise ValueError('alphabet size must be at least 3')
    r = (s - 1) // 2
    sides = []
    for i in range(1, r + 1):
        if s % 2 == 1 and i == 1:
            sides.append(((s - 1) // 2,))
        elif s % 2 == 0:
            sides.append((s // 2 - i, s // 2 - 1 + i))
        else:
            sides.append(((s - 1) // 2 - (i - 1), (s - 1) // 2 + (i - 1)))
    return tuple(sides) + ((0, s - 1),) + tuple(reversed(sides))


def _alternating_block(first: int, second: int, length: int) -> Tuple[int, ...]:
    return tuple(first if i % 2 == 0 else second for i in range(length))


def _palindromic_center(first: int, second: int, length: int) -> Tuple[int, ...]:
    # Odd length: an alternating run is already a palindrome.  Even length:
    # mirror the first half, repeating the middle letter once; this keeps
    # the palindrome property at an O(1) cost in letters.
    if length % 2 == 1:
        return _alternating_block(first, second, length)
    half = _alternating_block(first, second, length // 2)
    return half + half[::-1]


def folded_word(s: int, x: Sequence, n: int) -> Word:
    '''A palindromic n-word made of nested two-letter alternating blocks.

    Reading from the outside in, block i occupies floor(x_i * n) positions
    on each side and uses the i-th innermost letter pair; the central block
    uses the extreme pair (0, s-1).  For odd s the outermost block is the
    constant middle letter (s-1)/2.  Block phases are fixed by the worked
    examples: for even s the side blocks start on their smaller letter and
    the center on the larger, for odd s the side blocks start on their
    larger letter and the center on the smaller.
    '''
    if s < 3:
        raise ValueError('alphabet size must be at least 3')
    r = (s - 1) // 2
    fractions = tuple(x)
    if len(fractions) != r:
        raise ValueError('expected %d block fractions, got %d'
                         % (r, len(fractions)))
    if any(xi < 0 for xi in fractions):
        raise ValueError('block fractions must be non-negative')
    if sum(fractions) > Fraction(1, 2):
        raise ValueError('block fractions must sum to at most 1/2')
    if n < 0:
        raise ValueError('length must be non-negative')

    segments = folded_segments(s)
    left = []
    for i in range(1, r + 1):
        length = floor(fractions[i - 1] * n)
        letters = segments[i - 1]
        if len(letters) == 1:
            left.extend(letters * length)
        elif s % 2 == 0:
            left.extend(_alternating_block(letters[0], letters[1], length))
        else:
            left.extend(_alternating_block(letters[1], letters[0], length))

    center_length = n - 2 * len(left)
    if s % 2 == 0:
        center = _palindromic_center(s - 1, 0, center_length)
    else:
        center = _palindromic_center(0, s - 1, center_length)
    return Word(tuple(left) + center + tuple(reversed(left)), s)


def bucketed_word(perm: Sequence[int], s: int) -> Word:
    '''Collapse a permutation of [n] into an n-word over s equal buckets.

    Position i receives letter l when perm[i] lies in (l*n/s, (l+1)*n/s],
    so every monotone subsequence of the permutation becomes a monotone
    subword of the result.
    '''
    n = len(perm)
    if s < 1:
        raise ValueError('bucket count must be positive')
    if n % s != 0:
        raise ValueError('bucket count %d must divide length %d' % (s, n))
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError('not a permutation of 1..%d' % n)
    letters = tuple((v * s + n - 1) // n - 1 for v in perm)
    return Word(letters, s)


def _monotone_subsequences(perm: Tuple[int, ...], k: int) -> int:
    # A permutation is a word with all letters distinct, so the word DP
    # applies unchanged (values shifted to 0-based letters).
    n = len(perm)
    if n == 0:
        return 0
    w = Word(tuple(v - 1 for v in perm), n)
    return count_monotone(w, k).total


def min_monotone_permutation(n: int, k: int, cap: int = 10) -> Tuple[int, ...]:
    '''A permutation of [n] minimizing the number of monotone k-subsequences.

    Exhaustive search; ties are broken by lexicographic order of the
    one-line notation.  n above the cap is rejected (n! blowup).
    '''
    if n > cap:
        raise ValueError('n = %d exceeds the search cap %d' % (n, cap))
    if n < 0 or k < 1:
        raise ValueError('need n >= 0 and k >= 1')
    best = None
    best_count = None
    for perm in permutations(range(1, n + 1)):
        c = _monotone_subsequences(perm, k)
        if best_count is None or c < best_count:
            best, best_count = perm, c
    return best
