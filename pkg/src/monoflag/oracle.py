'''Exhaustive minimum of monotone k-subword counts at small n.

The count is grown incrementally by a branch-and-bound walk, one
letter at a time, independently of the counting module; agreement with
count_monotone is therefore a meaningful cross-check rather than a
tautology.  Words over s letters are explored through their order
patterns (relabelings onto 0..t-1 preserving every comparison), each
pattern once no matter how many letter subsets realize it.
'''

from fractions import Fraction
from math import comb
from typing import List, Tuple

from monoflag.words import Word


def _surjective_words(n: int, t: int) -> int:
    return sum((-1) ** i * comb(t, i) * (t - i) ** n for i in range(t + 1))


def brute_min(s: int, k: int, n: int,
              cap: int = 20000000) -> Tuple[int, List[Word]]:
    '''Exact minimum of m(k, w) over n-words on s letters, with every
    minimizing pattern.

    Monotone counts only grow as a word is extended, so any prefix
    whose completed count already exceeds the incumbent is cut.  The
    cap guards the pattern count before starting; it comfortably
    admits s <= 4 with n <= 12 and s <= 6 with n <= 9.
    '''
    if s < 1 or k < 1 or n < 1:
        raise ValueError('s, k and n must be positive')
    if k > n:
        raise ValueError('k = %d exceeds word length %d' % (k, n))
    tmax = min(s, n)
    candidates = sum(_surjective_words(n, t) for t in range(1, tmax + 1))
    if candidates > cap:
        raise ValueError('%d candidate patterns exceed the guard %d'
                         % (candidates, cap))
    best = [-1]
    winners: List[Tuple[int, ...]] = []
    word = [0] * n
    for t in range(1, tmax + 1):
        # up[j][c]: non-decreasing j-subwords ending with letter c so
        # far; down likewise non-increasing, flat constant.
        up = [[0] * t for _ in range(k + 1)]
        down = [[0] * t for _ in range(k + 1)]
        flat = [[0] * t for _ in range(k + 1)]
        seen = [False] * t

        def walk(pos: int, used: int, done: int) -> None:
            if 0 <= best[0] < done:
                return
            if pos == n:
                if best[0] < 0 or done < best[0]:
                    best[0] = done
                    winners.clear()
                winners.append(tuple(word))
                return
            left = n - pos - 1
            for c in range(t):
                fresh = not seen[c]
                if t - used - fresh > left:
                    continue
                new_up = [0] * (k + 1)
                new_down = [0] * (k + 1)
                new_flat = [0] * (k + 1)
                new_up[1] = new_down[1] = new_flat[1] = 1
                for j in range(2, k + 1):
                    new_up[j] = sum(up[j - 1][:c + 1])
                    new_down[j] = sum(down[j - 1][c:])
                    new_flat[j] = flat[j - 1][c]
                for j in range(1, k + 1):
                    up[j][c] += new_up[j]
                    down[j][c] += new_down[j]
                    flat[j][c] += new_flat[j]
                seen[c] = True
                word[pos] = c
                walk(pos + 1, used + fresh,
                     done + new_up[k] + new_down[k] - new_flat[k])
                seen[c] = not fresh
                for j in range(1, k + 1):
                    up[j][c] -= new_up[j]
                    down[j][c] -= new_down[j]
                    flat[j][c] -= new_flat[j]

        walk(0, 0, 0)
    return best[0], [Word(w, max(w) + 1) for w in winners]


def f_skn(s: int, k: int, n: int, cap: int = 20000000) -> Fraction:
    '''The exact minimum density f(s, k, n) = min m(k, w) / C(n, k).'''
    count, _ = brute_min(s, k, n, cap=cap)
    return Fraction(count, comb(n, k))
