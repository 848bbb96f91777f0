'''Types, flags, flag densities, and integer pair-expectation tables.

A type is a word graph whose vertices carry the labels 1..h; a flag is a
word graph M with an injective embedding of those labels.  Two flags are
isomorphic when a color-preserving vertex bijection maps equally labeled
vertices to each other.  For a type sigma and flag size l, averaging the
joint density of two flags over all embeddings theta into a host graph H
gives rational numbers with a fixed denominator N; the tables scaled by N
are integral and become SDP constraint coefficients.
'''

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb, perm
from typing import Dict, List, Sequence, Tuple

from monoflag.wordgraphs import (WordGraph, _pair_index, graph_of_word,
                                 is_realizable)
from monoflag.words import make_word

_FLAG_SIZE_CAP = 6


@dataclass(frozen=True)
class TypeSigma:
    '''A bijectively labeled word graph; labels[j] is the vertex carrying
    label j+1.'''

    graph: WordGraph
    labels: Tuple[int, ...]

    def __post_init__(self):
        if sorted(self.labels) != list(range(self.graph.order)):
            raise ValueError('labels must be a bijection onto the vertices')
        if not is_realizable(self.graph):
            raise ValueError('type graph is not a word graph')

    @property
    def size(self) -> int:
        return self.graph.order

    def label_colors(self) -> Tuple[int, ...]:
        '''Pair colors in label order: (1,2), (1,3), (2,3), ...'''
        return tuple(
            self.graph.colors[_pair_index(min(self.labels[a], self.labels[b]),
                                          max(self.labels[a], self.labels[b]))]
            for b in range(self.size) for a in range(b))


@dataclass(frozen=True)
class Flag:
    '''A word graph with labeled vertices: embedding[j] carries label j+1.
    The flag's type is whatever the labeled vertices induce.'''

    graph: WordGraph
    embedding: Tuple[int, ...]

    def __post_init__(self):
        if len(set(self.embedding)) != len(self.embedding):
            raise ValueError('embedding must be injective')
        if any(not 0 <= v < self.graph.order for v in self.embedding):
            raise ValueError('embedding vertex out of range')

    @property
    def size(self) -> int:
        return self.graph.order

    def type_colors(self) -> Tuple[int, ...]:
        e = self.embedding
        return tuple(
            self.graph.colors[_pair_index(min(e[a], e[b]), max(e[a], e[b]))]
            for b in range(len(e)) for a in range(b))

    def form(self) -> bytes:
        '''Canonical string under flag isomorphism: labeled vertices are
        pinned in label order, unlabeled ones minimize the color string.'''
        return _flag_form(self.graph, self.embedding)


def _order_colors(g: WordGraph, order: Sequence[int]) -> bytes:
    return bytes(g.colors[_pair_index(min(order[i], order[j]),
                                      max(order[i], order[j]))]
                 for j in range(len(order)) for i in range(j))


def _flag_form(g: WordGraph, theta: Sequence[int]) -> bytes:
    rest = [v for v in range(g.order) if v not in set(theta)]
    return min(_order_colors(g, tuple(theta) + p)
               for p in permutations(rest))


def _induced_flag(k: Flag, subset: Sequence[int]) -> Flag:
    verts = sorted(subset)
    where = {v: i for i, v in enumerate(verts)}
    colors = tuple(k.graph.colors[_pair_index(verts[i], verts[j])]
                   for j in range(len(verts)) for i in range(j))
    return Flag(WordGraph(len(verts), colors),
                tuple(where[v] for v in k.embedding))


# The eight isomorphism classes of 3-vertex word graphs, one generating
# word each, ordered so the flag counts line up with the published table
# (the 330/305/203 columns for a 4-letter alphabet); ties between the two
# members of a count pair are broken by canonical key.
_SIGMA_WORDS = ('012', '021', '001', '120', '010', '210', '100', '000')


@lru_cache(maxsize=None)
def default_types(s: int) -> Tuple[TypeSigma, ...]:
    '''The nine types the SDP uses: the size-1 type, then the eight
    size-3 classes, each labeled by position in its generating word.'''
    if s < 3:
        raise ValueError('alphabet size must be at least 3')
    types = [TypeSigma(WordGraph(1, ()), (0,))]
    for text in _SIGMA_WORDS:
        g = graph_of_word(make_word(int(c) for c in text))
        types.append(TypeSigma(g, (0, 1, 2)))
    return tuple(types)


def _patterns(length: int, max_letters: int):
    from monoflag.wordgraphs import _normalized_patterns
    return _normalized_patterns(length, max_letters)


@lru_cache(maxsize=None)
def enumerate_flags(sigma: TypeSigma, l: int, s: int) -> Tuple[Flag, ...]:
    '''All sigma-flags on l vertices over an s-letter alphabet, up to
    flag isomorphism, ordered by canonical flag form.'''
    h = sigma.size
    if not h < l <= _FLAG_SIZE_CAP:
        raise ValueError('flag size must satisfy %d < l <= %d'
                         % (h, _FLAG_SIZE_CAP))
    if s < 2:
        raise ValueError('alphabet size must be at least 2')
    target = sigma.label_colors()
    found: Dict[bytes, Flag] = {}
    for pattern in _patterns(l, min(s, l)):
        g = graph_of_word(make_word(pattern))
        for theta in permutations(range(l), h):
            flag = Flag(g, theta)
            if flag.type_colors() != target:
                continue
            form = flag.form()
            if form not in found:
                found[form] = flag
    return tuple(flag for _, flag in sorted(found.items()))


def flag_density(f: Flag, k: Flag) -> Fraction:
    '''The probability that a uniformly random |f|-subset of k's vertices
    containing the labeled ones induces a flag isomorphic to f.'''
    h = len(f.embedding)
    if h != len(k.embedding):
        raise ValueError('flags have types of different sizes')
    if k.size < f.size or f.type_colors() != k.type_colors():
        return Fraction(0)
    labeled = set(k.embedding)
    rest = [v for v in range(k.size) if v not in labeled]
    target = f.form()
    hits = sum(1 for extra in combinations(rest, f.size - h)
               if _induced_flag(k, list(extra) + list(labeled)).form()
               == target)
    return Fraction(hits, comb(k.size - h, f.size - h))


def joint_density(f: Flag, f2: Flag, k: Flag) -> Fraction:
    '''The probability that two random |f|-subsets of k's vertices,
    disjoint outside the labeled set which both contain, induce flags
    isomorphic to f and f2 respectively.'''
    h = len(f.embedding)
    if h != len(f2.embedding) or h != len(k.embedding):
        raise ValueError('flags have types of different sizes')
    if f.size != f2.size:
        raise ValueError('joint density needs equally sized flags')
    if f.type_colors() != f2.type_colors():
        raise ValueError('flags have different types')
    free = f.size - h
    n = k.size
    if n < 2 * f.size - h or f.type_colors() != k.type_colors():
        return Fraction(0)
    labeled = set(k.embedding)
    rest = [v for v in range(n) if v not in labeled]
    t_f, t_f2 = f.form(), f2.form()
    hits = 0
    for left in combinations(rest, free):
        remaining = [v for v in rest if v not in left]
        left_form = _induced_flag(k, list(left) + list(labeled)).form()
        if left_form != t_f:
            continue
        for right in combinations(remaining, free):
            if _induced_flag(k, list(right) + list(labeled)).form() == t_f2:
                hits += 1
    total = comb(len(rest), free) * comb(len(rest) - free, free)
    return Fraction(hits, total)


def pair_scale(n: int, h: int, l: int) -> int:
    '''The denominator N of E_theta[joint density] on an n-vertex host:
    injective embeddings times ordered subset pairs.'''
    free = l - h
    return perm(n, h) * comb(n - h, free) * comb(n - h - free, free)


@lru_cache(maxsize=None)
def _flag_index(sigma: TypeSigma, l: int, s: int) -> Dict[bytes, int]:
    return {flag.form(): u
            for u, flag in enumerate(enumerate_flags(sigma, l, s))}


@dataclass(frozen=True)
class PairExpectationTable:
    '''Integer matrix: entry [u,v] = N * E_theta[p(F_u, F_v; (H, theta))]
    for one host graph H; N = pair_scale makes every entry integral.'''

    type_index: int
    flag_count: int
    scale: int
    entries: Tuple[Tuple[int, ...], ...]

    def expectation(self, u: int, v: int) -> Fraction:
        return Fraction(self.entries[u][v], self.scale)


def pair_expectation_table(sigma: TypeSigma, l: int, host: WordGraph,
                           s: int, type_index: int = 0) -> PairExpectationTable:
    '''The scaled pairwise expectation matrix of sigma's flags of size l
    over all embeddings into the host graph.

    Entry [u,v] counts the triples (theta, U, U'): theta an embedding of
    sigma, (U, U') an ordered pair of l-subsets intersecting exactly in
    Im(theta), with flag classes u and v.  Dividing by pair_scale gives
    the exact expectation, so integrality holds by construction.
    '''
    h = sigma.size
    n = host.order
    free = l - h
    if n < 2 * l - h:
        raise ValueError('host order %d below 2l-h = %d' % (n, 2 * l - h))
    index = _flag_index(sigma, l, s)
    t = len(index)
    target = sigma.label_colors()
    entries = [[0] * t for _ in range(t)]
    for theta in permutations(range(n), h):
        if Flag(host, theta).type_colors() != target:
            continue
        labeled = list(theta)
        rest = [v for v in range(n) if v not in theta]
        for left in combinations(rest, free):
            remaining = [v for v in rest if v not in left]
            u = index[_induced_flag(Flag(host, tuple(theta)),
                                    list(left) + labeled).form()]
            for right in combinations(remaining, free):
                v = index[_induced_flag(Flag(host, tuple(theta)),
                                        list(right) + labeled).form()]
                entries[u][v] += 1
    return PairExpectationTable(
        type_index=type_index,
        flag_count=t,
        scale=pair_scale(n, h, l),
        entries=tuple(tuple(row) for row in entries))


def c_h(types: Sequence[TypeSigma], sizes: Sequence[int],
        q_matrices: Sequence[Sequence[Sequence]], host: WordGraph,
        s: int) -> Fraction:
    '''sum_i sum_{u,v} Q_i[u,v] * E_theta[p(F_u, F_v; (host, theta))],
    exact for rational Q.'''
    if not len(types) == len(sizes) == len(q_matrices):
        raise ValueError('types, sizes and matrices must align')
    total = Fraction(0)
    for i, (sigma, l, q) in enumerate(zip(types, sizes, q_matrices)):
        table = pair_expectation_table(sigma, l, host, s, type_index=i)
        t = table.flag_count
        if len(q) != t or any(len(row) != t for row in q):
            raise ValueError('Q matrix %d has wrong dimensions' % i)
        acc = Fraction(0)
        for u in range(t):
            for v in range(t):
                if q[u][v]:
                    acc += Fraction(q[u][v]) * table.entries[u][v]
        total += acc / table.scale
    return total
