'''Word graphs: edge-colored complete graphs on word positions.

A word w of length n colors the pair {i, j} (i < j) with 0 if w_i < w_j,
1 if w_i > w_j and 2 if w_i = w_j.  Isomorphism is a color-preserving
vertex bijection; the colors themselves are never interchanged, which is
what makes e.g. "001" and "110" inequivalent.  G(s, l) denotes the set of
graphs of l-letter words over an s-letter alphabet up to isomorphism;
only the letter-order pattern of a word matters, so enumeration iterates
words whose letter set is an initial segment {0..d-1}, d <= min(s, l).
'''

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from monoflag.kernels import canon_colors
from monoflag.words import Word, format_word, make_word, parse_word

_MAX_CANON_ORDER = 10
_DEFAULT_LENGTH_CAP = 8


def _pair_index(i: int, j: int) -> int:
    return j * (j - 1) // 2 + i


@dataclass(frozen=True)
class WordGraph:
    '''A complete graph on `order` vertices with pair colors in {0,1,2},
    stored incrementally: pair (i, j), i < j, at index j*(j-1)//2 + i.'''

    order: int
    colors: Tuple[int, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError('graph needs at least one vertex')
        if len(self.colors) != self.order * (self.order - 1) // 2:
            raise ValueError('expected %d pair colors, got %d'
                             % (self.order * (self.order - 1) // 2,
                                len(self.colors)))
        if any(c not in (0, 1, 2) for c in self.colors):
            raise ValueError('pair colors must be 0, 1 or 2')

    def color(self, u: int, v: int) -> int:
        '''The color of the unordered pair {u, v}, vertices 1-based.'''
        if not (1 <= u <= self.order and 1 <= v <= self.order) or u == v:
            raise ValueError('invalid vertex pair (%d, %d)' % (u, v))
        i, j = min(u, v) - 1, max(u, v) - 1
        return self.colors[_pair_index(i, j)]

    @cached_property
    def canonical_key(self) -> bytes:
        return bytes([self.order]) + canonical_form(self)


def graph_of_word(w: Word) -> WordGraph:
    letters = tuple(w)
    colors = []
    for j in range(len(letters)):
        for i in range(j):
            if letters[i] < letters[j]:
                colors.append(0)
            elif letters[i] > letters[j]:
                colors.append(1)
            else:
                colors.append(2)
    return WordGraph(len(letters), tuple(colors))


def canonical_form(g: WordGraph) -> bytes:
    '''The minimal incremental edge-color string over all vertex orders;
    two graphs get equal strings exactly when they are isomorphic.'''
    if g.order > _MAX_CANON_ORDER:
        raise ValueError('canonical form supported up to order %d'
                         % _MAX_CANON_ORDER)
    return canon_colors(g.order, g.colors)


def _equality_classes(g: WordGraph) -> Optional[List[int]]:
    '''Vertex -> class id under the color-2 relation, or None when that
    relation is not transitive.'''
    n = g.order
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for j in range(n):
        for i in range(j):
            if g.colors[_pair_index(i, j)] == 2:
                parent[find(i)] = find(j)
    for j in range(n):
        for i in range(j):
            if find(i) == find(j) and g.colors[_pair_index(i, j)] != 2:
                return None
    roots: Dict[int, int] = {}
    return [roots.setdefault(find(v), len(roots)) for v in range(n)]


def realizing_word(g: WordGraph) -> Word:
    '''A word whose graph equals g, letters 0..(classes-1) in value order.

    Raises ValueError when g is not realizable: the color-2 relation must
    be an equivalence, and the letter comparisons between its classes must
    be consistent and acyclic.
    '''
    labels = _equality_classes(g)
    if labels is None:
        raise ValueError('color-2 relation is not an equivalence')
    classes = max(labels) + 1
    greater: List[set] = [set() for _ in range(classes)]
    for j in range(g.order):
        for i in range(j):
            a, b = labels[i], labels[j]
            if a == b:
                continue
            if g.colors[_pair_index(i, j)] == 1:
                a, b = b, a
            if a in greater[b]:
                raise ValueError('inconsistent letter comparisons')
            greater[a].add(b)
    rank: Dict[int, int] = {}
    remaining = set(range(classes))
    while remaining:
        minimal = [c for c in remaining
                   if all(c not in greater[d] for d in remaining)]
        if not minimal:
            raise ValueError('cyclic letter comparisons')
        for c in sorted(minimal):
            rank[c] = len(rank)
            remaining.discard(c)
    return make_word([rank[labels[v]] for v in range(g.order)])


def is_realizable(g: WordGraph) -> bool:
    try:
        word = realizing_word(g)
    except ValueError:
        return False
    return graph_of_word(word).colors == g.colors


def _normalized_patterns(length: int,
                         max_letters: int) -> Iterator[Tuple[int, ...]]:
    '''All length-`length` words whose letter set is {0..m} with
    m < max_letters, in lexicographic order.'''
    word = [0] * length
    seen = [0] * max_letters

    def extend(pos: int, top: int, missing: int) -> Iterator[Tuple[int, ...]]:
        # top: 1 + the largest letter used; missing: letters below top
        # not yet used.  A branch stays alive while the remaining
        # positions can still plug every gap.
        if pos == length:
            if missing == 0:
                yield tuple(word)
            return
        room = length - pos - 1
        for v in range(max_letters):
            if v < top:
                gap = missing - (seen[v] == 0)
            else:
                gap = missing + (v - top)
            if gap > room:
                if v >= top:
                    break
                continue
            word[pos] = v
            seen[v] += 1
            yield from extend(pos + 1, max(top, v + 1), gap)
            seen[v] -= 1

    yield from extend(0, 0, 0)


def _generate_classes(s: int, l: int) -> List[Tuple[bytes, Word]]:
    '''One (canonical key, lexicographically least word) pair per
    isomorphism class of G(s, l), sorted by key.'''
    classes: Dict[bytes, Word] = {}
    for pattern in _normalized_patterns(l, min(s, l)):
        word = make_word(pattern)
        key = graph_of_word(word).canonical_key
        if key not in classes:
            classes[key] = word
    return sorted(classes.items())


def _cache_path(s: int, l: int) -> Optional[Path]:
    root = os.environ.get('MONOFLAG_CACHE_DIR')
    if not root:
        return None
    return Path(root) / ('graphs-s%d-l%d.txt' % (s, l))


def export_graph_classes(words: List[Word], s: int, l: int) -> str:
    '''The line-oriented exchange format: "s l count" then one canonical
    representative word per line.'''
    lines = ['%d %d %d' % (s, l, len(words))]
    lines.extend(format_word(w) for w in words)
    return '\n'.join(lines) + '\n'


def _load_cache(path: Path, s: int, l: int) -> Optional[List[Word]]:
    try:
        lines = path.read_text().splitlines()
    except OSError:
        return None
    if not lines:
        return None
    header = lines[0].split()
    if header[:2] != [str(s), str(l)] or len(lines) - 1 != int(header[2]):
        return None
    return [parse_word(line) for line in lines[1:]]


def representative_words(s: int, l: int,
                         cap: int = _DEFAULT_LENGTH_CAP) -> List[Word]:
    '''The lexicographically least word of each class of G(s, l), ordered
    by canonical key.  Results are cached under MONOFLAG_CACHE_DIR when
    that variable is set.'''
    if s < 2:
        raise ValueError('alphabet size must be at least 2')
    if l < 1:
        raise ValueError('word length must be positive')
    if l > cap:
        raise ValueError('length %d above the cost cap %d '
                         '(raise cap= to override)' % (l, cap))
    path = _cache_path(s, l)
    if path is not None:
        cached = _load_cache(path, s, l)
        if cached is not None:
            return cached
    words = [word for _, word in _generate_classes(s, l)]
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(export_graph_classes(words, s, l))
    return words


def enumerate_word_graphs(s: int, l: int,
                          cap: int = _DEFAULT_LENGTH_CAP) -> List[WordGraph]:
    '''One representative WordGraph per isomorphism class of G(s, l),
    deterministically ordered by canonical key.'''
    return [graph_of_word(w) for w in representative_words(s, l, cap)]


def monotone_clique_density(g: WordGraph, k: int) -> Fraction:
    '''The fraction of k-vertex subsets whose pairs avoid color 0 or
    avoid color 1; equals monotone_density(w, k) when g is the graph
    of w.'''
    if k < 1 or k > g.order:
        raise ValueError('clique size %d out of range' % k)
    count = 0
    for subset in combinations(range(g.order), k):
        has_up = has_down = False
        for a, b in combinations(subset, 2):
            c = g.colors[_pair_index(a, b)]
            if c == 0:
                has_up = True
            elif c == 1:
                has_down = True
        if not (has_up and has_down):
            count += 1
    return Fraction(count, comb(g.order, k))


def _induced_colors(g: WordGraph, verts: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(g.colors[_pair_index(verts[i], verts[j])]
                 for j in range(len(verts)) for i in range(j))


def subgraph_density(h: WordGraph, g: WordGraph) -> Fraction:
    '''The fraction of |V(h)|-subsets of V(g) inducing a copy of h.'''
    if h.order > g.order:
        raise ValueError('pattern graph larger than host')
    if g.order > _MAX_CANON_ORDER:
        raise ValueError('host graphs supported up to order %d'
                         % _MAX_CANON_ORDER)
    target = canonical_form(h)
    seen: Dict[Tuple[int, ...], bytes] = {}
    count = 0
    for verts in combinations(range(g.order), h.order):
        induced = _induced_colors(g, verts)
        form = seen.get(induced)
        if form is None:
            form = canon_colors(h.order, induced)
            seen[induced] = form
        if form == target:
            count += 1
    return Fraction(count, comb(g.order, h.order))
