'''Integer-exact semidefinite program assembly and SDPA sparse emission.

One equality constraint per host graph H_j in G(s, l), with right-hand
side a_j = C(l,3) f_3(H_j); nine PSD blocks, one per standard type,
holding the quadratic-form matrices; and a diagonal slack block of
order m + 1 whose [1,1] entry is the objective.  Every stored
coefficient is a raw anchored-subset-pair count, hence an integer, so
files round-trip exactly and bounds evaluate in rational arithmetic.
The solver is external: we only write and read files.
'''

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb
from typing import List, Sequence, Tuple

import numpy as np

from monoflag import kernels
from monoflag.flags import default_types, enumerate_flags, pair_expectation_table
from monoflag.wordgraphs import (
    WordGraph,
    graph_of_word,
    monotone_clique_density,
    representative_words,
)
from monoflag.words import Word

BLOCK_COUNT = 9
SLACK_BLOCK = 10


@dataclass(frozen=True, eq=False)
class SdpProblem:
    '''Assembled program: constraint data in canonical host order.

    Type-block entries of each constraint matrix are stored flat as
    (block, row, col, value) runs delimited by offsets, upper triangle
    only; the slack entries ([1,1] and [j+1,j+1], both 1) are implied.
    '''

    s: int
    l: int
    words: Tuple[Word, ...]
    flag_counts: Tuple[int, ...]
    a: np.ndarray
    offsets: np.ndarray
    entry_blocks: np.ndarray
    entry_rows: np.ndarray
    entry_cols: np.ndarray
    entry_values: np.ndarray

    @property
    def m(self) -> int:
        return len(self.words)

    @property
    def scale(self) -> int:
        '''Denominator relating right-hand sides to densities.'''
        return comb(self.l, 3)

    @property
    def block_sizes(self) -> Tuple[int, ...]:
        '''All ten block orders, the diagonal slack block negative.'''
        return self.flag_counts + (-(self.m + 1),)

    def entries_of(self, j: int) -> List[Tuple[int, int, int, int]]:
        '''Type-block entries of constraint j as (block, u, v, value),
        0-based, u <= v.'''
        lo = int(self.offsets[j])
        hi = int(self.offsets[j + 1])
        return [(int(self.entry_blocks[k]), int(self.entry_rows[k]),
                 int(self.entry_cols[k]), int(self.entry_values[k]))
                for k in range(lo, hi)]


def _attr_matrix(g: WordGraph) -> List[List[int]]:
    a = [[0] * g.order for _ in range(g.order)]
    k = 0
    for j in range(g.order):
        for i in range(j):
            a[i][j] = a[j][i] = g.colors[k]
            k += 1
    return a


@lru_cache(maxsize=None)
def _classifier_tables(s: int):
    '''Lookup tables for kernels.classify_pairs_l7.

    map27 sends the packed color triple of an ordered anchor to its
    type block (1..8) or -1; sig1 and sig3 send packed base-3 color
    strings, anchor vertices first, to indices into the sorted flag
    lists.  Every vertex ordering of every flag is entered, so any
    consistent read order hits its class.
    '''
    types = default_types(s)
    lists = [enumerate_flags(types[i], 4 if i == 0 else 5, s)
             for i in range(BLOCK_COUNT)]
    map27 = np.full(27, -1, dtype=np.int8)
    for b in range(1, BLOCK_COUNT):
        c = types[b].label_colors()
        map27[9 * c[0] + 3 * c[1] + c[2]] = b
    sig1 = np.full(729, -1, dtype=np.int16)
    for idx, f in enumerate(lists[0]):
        a = _attr_matrix(f.graph)
        e = f.embedding[0]
        rest = [v for v in range(4) if v != e]
        for p0, p1, p2 in permutations(rest):
            key = (a[e][p0] + 3 * a[e][p1] + 9 * a[p0][p1]
                   + 27 * a[e][p2] + 81 * a[p0][p2] + 243 * a[p1][p2])
            assert sig1[key] in (-1, idx)
            sig1[key] = idx
    sig3 = np.full((BLOCK_COUNT - 1, 2187), -1, dtype=np.int16)
    for b in range(1, BLOCK_COUNT):
        for idx, f in enumerate(lists[b]):
            a = _attr_matrix(f.graph)
            f0, f1, f2 = f.embedding
            rest = [v for v in range(5) if v not in f.embedding]
            for p, q in permutations(rest):
                key = (a[f0][p] + 3 * a[f1][p] + 9 * a[f2][p]
                       + 27 * a[f0][q] + 81 * a[f1][q] + 243 * a[f2][q]
                       + 729 * a[p][q])
                assert sig3[b - 1][key] in (-1, idx)
                sig3[b - 1][key] = idx
    return map27, sig1, sig3, tuple(len(fl) for fl in lists)


def _rhs(g: WordGraph, scale: int) -> int:
    value = monotone_clique_density(g, 3) * scale
    if value.denominator != 1:
        raise ArithmeticError('non-integral right-hand side %s' % value)
    return int(value)


def assemble_problem(s: int, l: int = 7, cap: int = 8) -> SdpProblem:
    '''Build the program over G(s, l).

    l = 7 runs through the batch classification kernel; the other
    supported sizes (5, 6, 8) fall back to per-host expectation tables,
    which is fine for the small 5-vertex program and increasingly slow
    beyond it.  Flag sizes are (l + 1) // 2 for the point type and
    (l + 3) // 2 for the triangle types.
    '''
    if s < 3:
        raise ValueError('alphabet size must be at least 3')
    if l not in (5, 6, 7, 8):
        raise ValueError('unsupported host size %d' % l)
    words = representative_words(s, l, cap=cap)
    scale = comb(l, 3)
    a = np.array([_rhs(graph_of_word(w), scale) for w in words],
                 dtype=np.int64)
    offsets = [0]
    parts_b: List[np.ndarray] = []
    parts_u: List[np.ndarray] = []
    parts_v: List[np.ndarray] = []
    parts_n: List[np.ndarray] = []
    if l == 7:
        map27, sig1, sig3, flag_counts = _classifier_tables(s)
        for w in words:
            g = graph_of_word(w)
            codes = kernels.classify_pairs_l7(
                bytes(g.colors), map27, sig1, sig3)
            uniq, counts = np.unique(np.asarray(codes), return_counts=True)
            parts_b.append((uniq >> 28).astype(np.int8))
            parts_u.append(((uniq >> 14) & 0x3FFF).astype(np.int16))
            parts_v.append((uniq & 0x3FFF).astype(np.int16))
            parts_n.append(counts.astype(np.int32))
            offsets.append(offsets[-1] + len(uniq))
    else:
        types = default_types(s)
        sizes = [(l + 1) // 2 if i == 0 else (l + 3) // 2
                 for i in range(BLOCK_COUNT)]
        lists = [enumerate_flags(types[i], sizes[i], s)
                 for i in range(BLOCK_COUNT)]
        flag_counts = tuple(len(fl) for fl in lists)
        for w in words:
            g = graph_of_word(w)
            rows_b: List[int] = []
            rows_u: List[int] = []
            rows_v: List[int] = []
            rows_n: List[int] = []
            for i in range(BLOCK_COUNT):
                table = pair_expectation_table(
                    types[i], sizes[i], g, s, type_index=i)
                for u in range(table.flag_count):
                    row = table.entries[u]
                    for v in range(u, table.flag_count):
                        if row[v]:
                            rows_b.append(i)
                            rows_u.append(u)
                            rows_v.append(v)
                            rows_n.append(row[v])
            parts_b.append(np.array(rows_b, dtype=np.int8))
            parts_u.append(np.array(rows_u, dtype=np.int16))
            parts_v.append(np.array(rows_v, dtype=np.int16))
            parts_n.append(np.array(rows_n, dtype=np.int32))
            offsets.append(offsets[-1] + len(rows_b))
    return SdpProblem(
        s=s, l=l, words=tuple(words), flag_counts=flag_counts, a=a,
        offsets=np.array(offsets, dtype=np.int64),
        entry_blocks=np.concatenate(parts_b),
        entry_rows=np.concatenate(parts_u),
        entry_cols=np.concatenate(parts_v),
        entry_values=np.concatenate(parts_n))


def _emit(p: SdpProblem, fh, chunk: int = 200000) -> None:
    fh.write('"monoflag problem: s=%d l=%d\n' % (p.s, p.l))
    fh.write('%d\n' % p.m)
    fh.write('%d\n' % SLACK_BLOCK)
    fh.write(' '.join(str(t) for t in p.block_sizes) + '\n')
    fh.write(' '.join(str(int(x)) for x in p.a) + '\n')
    lines = ['0 %d 1 1 1' % SLACK_BLOCK]
    blocks = p.entry_blocks
    rows = p.entry_rows
    cols = p.entry_cols
    values = p.entry_values
    for j in range(p.m):
        lo = int(p.offsets[j])
        hi = int(p.offsets[j + 1])
        for k in range(lo, hi):
            lines.append('%d %d %d %d %d' % (
                j + 1, blocks[k] + 1, rows[k] + 1, cols[k] + 1, values[k]))
        lines.append('%d %d 1 1 1' % (j + 1, SLACK_BLOCK))
        lines.append('%d %d %d %d 1' % (j + 1, SLACK_BLOCK, j + 2, j + 2))
        if len(lines) >= chunk:
            fh.write('\n'.join(lines) + '\n')
            lines = []
    if lines:
        fh.write('\n'.join(lines) + '\n')


def write_sdpa_sparse(problem: SdpProblem, sink) -> None:
    '''Write the problem to a path or text file object.

    Layout: one comment line, then m, the block count, the block sizes
    (slack negative, marking it diagonal), the a vector, and one line
    per nonzero as "matno blockno i j value" with matno 0 for the
    objective, 1-based indices, upper triangle only, in (matno,
    blockno, i, j) order.  Re-emission is byte-identical.
    '''
    if hasattr(sink, 'write'):
        _emit(problem, sink)
    else:
        with open(sink, 'w') as fh:
            _emit(problem, fh)


@dataclass(frozen=True)
class ParsedSdpa:
    '''Structural content of an SDPA sparse file.'''

    m: int
    block_sizes: Tuple[int, ...]
    a: Tuple[Fraction, ...]
    entries: Tuple[Tuple[int, int, int, int, Fraction], ...]


def _tokens(fh):
    for line in fh:
        stripped = line.lstrip()
        if stripped.startswith('"') or stripped.startswith('*'):
            continue
        for ch in ',(){}':
            line = line.replace(ch, ' ')
        yield from line.split()


def parse_sdpa_sparse(source) -> ParsedSdpa:
    '''Read an SDPA sparse file from a path or text file object.

    Values are kept exact: decimal tokens become Fractions, so files we
    wrote (all integers) parse back to equal integers.
    '''
    if hasattr(source, 'read'):
        stream = _tokens(source)
    else:
        with open(source) as fh:
            return parse_sdpa_sparse(fh)
    try:
        m = int(next(stream))
        nblocks = int(next(stream))
        sizes = tuple(int(next(stream)) for _ in range(nblocks))
        a = tuple(Fraction(next(stream)) for _ in range(m))
    except StopIteration:
        raise ValueError('truncated SDPA file') from None
    entries = []
    record = []
    for tok in stream:
        record.append(tok)
        if len(record) == 5:
            entries.append((int(record[0]), int(record[1]),
                            int(record[2]), int(record[3]),
                            Fraction(record[4])))
            record = []
    if record:
        raise ValueError('trailing tokens in SDPA file')
    return ParsedSdpa(m=m, block_sizes=sizes, a=a, entries=tuple(entries))


def problem_from_parsed(parsed: ParsedSdpa, s: int) -> SdpProblem:
    '''Rebuild an SdpProblem from a parsed file, preserving its order.

    Certificates must be verified against the constraint order of the
    file they were produced for, which need not match what
    assemble_problem would emit.  Host words are not recorded in the
    format, so the result carries empty placeholders; l is inferred
    from max a_j = C(l,3), attained by the constant word.  Entries are
    validated to be integers with the two implied slack coefficients
    present for every constraint.
    '''
    if s < 3:
        raise ValueError('alphabet size must be at least 3')
    if len(parsed.block_sizes) != SLACK_BLOCK:
        raise ValueError('expected %d blocks, got %d'
                         % (SLACK_BLOCK, len(parsed.block_sizes)))
    m = parsed.m
    if abs(parsed.block_sizes[-1]) != m + 1:
        raise ValueError('slack block must have order m + 1')
    flag_counts = tuple(parsed.block_sizes[:BLOCK_COUNT])
    if any(t < 1 for t in flag_counts):
        raise ValueError('type blocks must have positive order')
    if any(x.denominator != 1 or x < 0 for x in parsed.a):
        raise ValueError('right-hand sides must be non-negative integers')
    scale = max(int(x) for x in parsed.a)
    for l in range(3, 12):
        if comb(l, 3) == scale:
            break
    else:
        raise ValueError('max right-hand side %d is not a C(l,3)' % scale)
    rows_b: List[List[Tuple[int, int, int, int]]] = [[] for _ in range(m)]
    slack_seen = [0] * m
    objective = 0
    for matno, blockno, i, j, value in parsed.entries:
        if value.denominator != 1:
            raise ValueError('non-integer coefficient %s' % value)
        if not 1 <= blockno <= SLACK_BLOCK or i < 1 or j < i:
            raise ValueError('malformed entry (%d,%d,%d,%d)'
                             % (matno, blockno, i, j))
        if matno == 0:
            if (blockno, i, j, value) != (SLACK_BLOCK, 1, 1, Fraction(1)):
                raise ValueError('objective must be the slack [1,1] entry')
            objective += 1
            continue
        if not 1 <= matno <= m:
            raise ValueError('constraint number %d out of range' % matno)
        if blockno == SLACK_BLOCK:
            if value != 1 or i != j or i not in (1, matno + 1):
                raise ValueError('unexpected slack entry in constraint %d'
                                 % matno)
            slack_seen[matno - 1] |= 1 if i == 1 else 2
            continue
        t = flag_counts[blockno - 1]
        if j > t:
            raise ValueError('entry outside block %d' % blockno)
        rows_b[matno - 1].append((blockno - 1, i - 1, j - 1, int(value)))
    if objective != 1:
        raise ValueError('expected exactly one objective entry')
    if any(seen != 3 for seen in slack_seen):
        raise ValueError('a constraint lacks its two slack entries')
    offsets = [0]
    flat: List[Tuple[int, int, int, int]] = []
    for j in range(m):
        flat.extend(sorted(rows_b[j]))
        offsets.append(len(flat))
    return SdpProblem(
        s=s, l=l, words=tuple(Word((), 1) for _ in range(m)),
        flag_counts=flag_counts,
        a=np.array([int(x) for x in parsed.a], dtype=np.int64),
        offsets=np.array(offsets, dtype=np.int64),
        entry_blocks=np.array([e[0] for e in flat], dtype=np.int8),
        entry_rows=np.array([e[1] for e in flat], dtype=np.int16),
        entry_cols=np.array([e[2] for e in flat], dtype=np.int16),
        entry_values=np.array([e[3] for e in flat], dtype=np.int32))


def _ldl_psd(matrix: Sequence[Sequence[Fraction]]) -> bool:
    '''Exact positive-semidefiniteness by rational elimination.

    No pivoting is needed: a PSD matrix with a zero diagonal entry must
    have that whole row zero, and a negative pivot refutes outright.
    '''
    n = len(matrix)
    a = [[Fraction(matrix[i][j]) for j in range(n)] for i in range(n)]
    for k in range(n):
        d = a[k][k]
        if d < 0:
            return False
        if d == 0:
            if any(a[k][j] != 0 for j in range(k + 1, n)):
                return False
            continue
        for i in range(k + 1, n):
            f = a[i][k] / d
            if f == 0:
                continue
            row_k = a[k]
            row_i = a[i]
            for j in range(k, n):
                row_i[j] -= f * row_k[j]
    return True


def lower_bound_from_Q(problem: SdpProblem, q_blocks,
                       check_psd: bool = True) -> Fraction:
    '''Exact lower bound on f(s,3) certified by the given PSD blocks.

    q_blocks holds nine symmetric rational matrices sized like the
    emitted type blocks, on the same scale as the written problem (the
    entries multiply raw counts).  Returns
    min_j (a_j - sum_i <Q_i, block_i(A_j)>) / C(l,3).
    '''
    if len(q_blocks) != BLOCK_COUNT:
        raise ValueError('expected %d blocks, got %d'
                         % (BLOCK_COUNT, len(q_blocks)))
    q: List[List[List[Fraction]]] = []
    for i, (block, t) in enumerate(zip(q_blocks, problem.flag_counts)):
        if len(block) != t or any(len(row) != t for row in block):
            raise ValueError('block %d is not %d x %d' % (i, t, t))
        rows = [[Fraction(x) for x in row] for row in block]
        for u in range(t):
            for v in range(u):
                if rows[u][v] != rows[v][u]:
                    raise ValueError('block %d is not symmetric' % i)
        q.append(rows)
    if check_psd:
        for i, block in enumerate(q):
            if not _ldl_psd(block):
                raise ValueError('block %d is not positive semidefinite' % i)
    best = None
    for j in range(problem.m):
        total = Fraction(0)
        for b, u, v, value in problem.entries_of(j):
            coeff = q[b][u][v]
            if coeff:
                total += (2 * value if u != v else value) * coeff
        candidate = int(problem.a[j]) - total
        if best is None or candidate < best:
            best = candidate
    return Fraction(best, problem.scale)
