'''Integer Cholesky certificates and their exact verification.

A solver hands back a floating block solution of the program written
by monoflag.sdp.  Scaling each Cholesky factor by an integer D and
rounding entrywise gives an integer matrix L whose Gram product
M = L Lt is positive semidefinite by construction, however the floats
behaved.  Verification then recomputes every constraint residual
b_j = tr(A_j M) / D^2 - a_j in arbitrary-precision integers and
concedes epsilon = max |b_j| from the objective, so the resulting
bound (slack M[1,1] / D^2 - epsilon) / C(l,3) is rigorous.  Residual
magnitudes reach val * M ~ 1260 * 4e17, past 64 bits, which is why
nothing on the verification path is allowed to be a machine word.
'''

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Sequence, Tuple

import numpy as np

from monoflag.sdp import BLOCK_COUNT, SLACK_BLOCK, SdpProblem


@dataclass(frozen=True)
class Certificate:
    '''Rounded factor L: nine lower triangles plus a slack diagonal.

    Row i of a square block holds the i + 1 entries L[i][0..i]; the
    slack solution block is diagonal, so its factor is stored as the
    m + 1 diagonal entries only.  Values are plain integers, already
    scaled by the denominator D.
    '''

    s: int
    denominator: int
    blocks: Tuple[Tuple[Tuple[int, ...], ...], ...]
    slack: Tuple[int, ...]

    def __post_init__(self):
        if self.denominator < 1:
            raise ValueError('denominator must be a positive integer')
        if len(self.blocks) != BLOCK_COUNT:
            raise ValueError('expected %d square blocks, got %d'
                             % (BLOCK_COUNT, len(self.blocks)))
        for b, rows in enumerate(self.blocks):
            for i, row in enumerate(rows):
                if len(row) != i + 1:
                    raise ValueError('block %d is not lower-triangular' % b)
        if not self.slack:
            raise ValueError('slack diagonal is empty')

    @property
    def block_orders(self) -> Tuple[int, ...]:
        return tuple(len(rows) for rows in self.blocks)

    @property
    def min_diagonal(self) -> int:
        '''Smallest diagonal entry of L across all ten blocks.'''
        smallest = min(self.slack)
        for rows in self.blocks:
            for i, row in enumerate(rows):
                if row[i] < smallest:
                    smallest = row[i]
        return smallest


@dataclass(frozen=True)
class VerifiedBound:
    '''Outcome of exact verification.

    epsilon carries denominator D^2; bound is
    (trace_cm - max |residual|) / (C(l,3) D^2), a rigorous lower bound
    on the triple density; max_violation_index is the constraint whose
    residual attains epsilon.
    '''

    trace_cm: int
    epsilon: Fraction
    bound: Fraction
    max_violation_index: int


def variable_count(problem: SdpProblem) -> int:
    '''Scalar unknowns of the program: the upper triangles of the nine
    PSD blocks plus the m + 1 slack diagonal entries.'''
    return sum(comb(t + 1, 2) for t in problem.flag_counts) + problem.m + 1


_RIDGES = (0.0, 1e-12, 1e-11, 1e-10)


def round_solution(solution, denominator: int = 1000000, *,
                   s: int) -> Certificate:
    '''Round a floating block solution to an integer certificate.

    solution holds the nine square PSD blocks followed by the slack
    diagonal (a vector, or a diagonal matrix).  Each square block is
    Cholesky-factored, retrying with a growing ridge when the solver
    left it marginally indefinite, and L = round(D L') is taken
    entrywise; slack entries are rounded from D sqrt(x).  A rounded
    diagonal entry of zero means D is too small to certify anything.
    '''
    if len(solution) != BLOCK_COUNT + 1:
        raise ValueError('expected %d blocks including slack, got %d'
                         % (BLOCK_COUNT + 1, len(solution)))
    blocks = []
    for b in range(BLOCK_COUNT):
        x = np.asarray(solution[b], dtype=np.float64)
        if x.ndim != 2 or x.shape[0] != x.shape[1]:
            raise ValueError('block %d is not a square matrix' % b)
        lower = None
        for ridge in _RIDGES:
            try:
                lower = np.linalg.cholesky(x + ridge * np.eye(len(x)))
                break
            except np.linalg.LinAlgError:
                continue
        if lower is None:
            raise ValueError('Cholesky failed on block %d: solution too '
                             'close to the boundary of the PSD cone' % b)
        scaled = lower * denominator
        blocks.append(tuple(tuple(int(round(float(scaled[i, j])))
                                  for j in range(i + 1))
                            for i in range(len(x))))
    diag = np.asarray(solution[BLOCK_COUNT], dtype=np.float64)
    if diag.ndim == 2:
        diag = np.diagonal(diag).copy()
    if diag.ndim != 1:
        raise ValueError('slack block must be a vector or a matrix')
    if np.any(diag < 0):
        raise ValueError('slack diagonal has negative entries: solution '
                         'is not numerically PSD')
    slack = tuple(int(round(float(v) * denominator))
                  for v in np.sqrt(diag))
    cert = Certificate(s=s, denominator=denominator,
                       blocks=tuple(blocks), slack=slack)
    if cert.min_diagonal <= 0:
        raise ValueError('a rounded diagonal entry is not positive; '
                         'increase the denominator D')
    return cert


def _gram(rows: Sequence[Sequence[int]]) -> np.ndarray:
    '''Exact M = L Lt as an object array of Python ints.

    A direct int64 product is exact whenever t max|L|^2 stays under
    2^63; factors up to 2^31 go through a 20-bit split whose partial
    products provably fit, and anything larger falls back to object
    arithmetic.
    '''
    t = len(rows)
    maxabs = max((abs(v) for row in rows for v in row), default=0)
    if maxabs * maxabs * t < 2 ** 63:
        lower = np.zeros((t, t), dtype=np.int64)
        for i, row in enumerate(rows):
            lower[i, :i + 1] = row
        return (lower @ lower.T).astype(object)
    if maxabs < 2 ** 31:
        lower = np.zeros((t, t), dtype=np.int64)
        for i, row in enumerate(rows):
            lower[i, :i + 1] = row
        hi = lower >> 20
        lo = lower & 0xFFFFF
        hh = hi @ hi.T
        cross = hi @ lo.T + lo @ hi.T
        ll = lo @ lo.T
        return (hh.astype(object) * (1 << 40)
                + cross.astype(object) * (1 << 20)
                + ll.astype(object))
    lower = np.zeros((t, t), dtype=object)
    for i, row in enumerate(rows):
        lower[i, :i + 1] = [int(v) for v in row]
    return lower @ lower.T


def verify_certificate(problem: SdpProblem,
                       cert: Certificate) -> VerifiedBound:
    '''Extract the rigorous bound a certificate proves for a problem.

    No floating point anywhere: M = L Lt per block, every residual
    tr(A_j M) - a_j D^2 over the integers (slack contributes
    L[0]^2 + L[j]^2), epsilon is the largest magnitude, and the bound
    reads (M_slack[0,0] - max |residual|) / (C(l,3) D^2).  A certificate
    with any nonpositive diagonal entry proves nothing and is rejected.
    '''
    if cert.s != problem.s:
        raise ValueError('certificate is for s=%d, problem has s=%d'
                         % (cert.s, problem.s))
    if cert.block_orders != problem.flag_counts:
        raise ValueError('certificate block orders %s do not match '
                         'problem blocks %s'
                         % (cert.block_orders, problem.flag_counts))
    if len(cert.slack) != problem.m + 1:
        raise ValueError('slack diagonal has %d entries, expected %d'
                         % (len(cert.slack), problem.m + 1))
    if cert.min_diagonal <= 0:
        raise ValueError('certificate has a nonpositive diagonal entry')
    grams = [_gram(rows) for rows in cert.blocks]
    squares = [v * v for v in cert.slack]
    entry_m = np.empty(len(problem.entry_values), dtype=object)
    for b in range(BLOCK_COUNT):
        sel = np.flatnonzero(problem.entry_blocks == b)
        if len(sel):
            entry_m[sel] = grams[b][problem.entry_rows[sel],
                                    problem.entry_cols[sel]]
    mult = np.where(problem.entry_rows == problem.entry_cols, 1, 2)
    coeff = (problem.entry_values.astype(np.int64) * mult).astype(object)
    terms = entry_m * coeff
    d2 = cert.denominator ** 2
    eps_num = -1
    worst = 0
    for j in range(problem.m):
        lo = int(problem.offsets[j])
        hi = int(problem.offsets[j + 1])
        inner = int(terms[lo:hi].sum()) if hi > lo else 0
        residual = inner + squares[0] + squares[j + 1] - int(problem.a[j]) * d2
        if abs(residual) > eps_num:
            eps_num = abs(residual)
            worst = j
    return VerifiedBound(
        trace_cm=squares[0],
        epsilon=Fraction(eps_num, d2),
        bound=Fraction(squares[0] - eps_num, problem.scale * d2),
        max_violation_index=worst)


def verification_report(cert: Certificate, result: VerifiedBound) -> dict:
    '''JSON-ready summary of a verification run.'''
    return {
        's': cert.s,
        'D': cert.denominator,
        'trace_CM': result.trace_cm,
        'epsilon': str(result.epsilon),
        'bound': str(result.bound),
        'bound_decimal': float(result.bound),
        'min_diagonal': cert.min_diagonal,
    }


def _write(cert: Certificate, fh) -> None:
    fh.write('MONOCERT v1\n')
    fh.write('s=%d D=%d blocks=%d\n'
             % (cert.s, cert.denominator, BLOCK_COUNT + 1))
    for b, rows in enumerate(cert.blocks):
        fh.write('block %d %d lower\n' % (b + 1, len(rows)))
        fh.write('\n'.join(' '.join(str(v) for v in row)
                           for row in rows) + '\n')
    fh.write('block %d %d diag\n' % (SLACK_BLOCK, len(cert.slack)))
    fh.write('\n'.join(str(v) for v in cert.slack) + '\n')


def write_certificate(cert: Certificate, sink) -> None:
    '''Write MONOCERT v1 to a path or text file object.

    Layout: the magic line, an "s= D= blocks=" line, then per block a
    "block <idx> <order> <diag|lower>" header followed by the integer
    entries, lower triangles row-major and the slack diagonal one value
    per line.
    '''
    if hasattr(sink, 'write'):
        _write(cert, sink)
    else:
        with open(sink, 'w') as fh:
            _write(cert, fh)


def read_certificate(source) -> Certificate:
    '''Read a MONOCERT v1 file from a path or text file object.'''
    if not hasattr(source, 'read'):
        with open(source) as fh:
            return read_certificate(fh)
    tokens = source.read().split()
    pos = 0

    def take() -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError('truncated certificate file')
        pos += 1
        return tokens[pos - 1]

    if take() != 'MONOCERT' or take() != 'v1':
        raise ValueError('not a MONOCERT v1 file')
    header = {}
    for _ in range(3):
        key, sep, value = take().partition('=')
        if sep != '=' or key not in ('s', 'D', 'blocks'):
            raise ValueError('malformed certificate header')
        header[key] = int(value)
    if len(header) != 3 or header['blocks'] != BLOCK_COUNT + 1:
        raise ValueError('malformed certificate header')
    blocks: List[Tuple[Tuple[int, ...], ...]] = []
    slack: Tuple[int, ...] = ()
    for b in range(BLOCK_COUNT + 1):
        if take() != 'block' or int(take()) != b + 1:
            raise ValueError('expected header of block %d' % (b + 1))
        order = int(take())
        kind = take()
        if b < BLOCK_COUNT:
            if kind != 'lower':
                raise ValueError('square block %d must be lower' % (b + 1))
            blocks.append(tuple(tuple(int(take()) for _ in range(i + 1))
                                for i in range(order)))
        else:
            if kind != 'diag':
                raise ValueError('slack block must be diag')
            slack = tuple(int(take()) for _ in range(order))
    if pos != len(tokens):
        raise ValueError('trailing tokens in certificate file')
    return Certificate(s=header['s'], denominator=header['D'],
                       blocks=tuple(blocks), slack=slack)


def read_published_certificate(source, s: int,
                               denominator: int = 1000000) -> Certificate:
    '''Best-effort reader for externally distributed certificates.

    Expected layout: per square block a "Block <k> of L (dimension
    <d>)" header followed by the lower triangle row by row, then
    "Slack block of L (diagonal of order <n>)" followed by n integers.
    Those files record neither s nor the scale D, so both must be
    supplied by the caller.
    '''
    if not hasattr(source, 'read'):
        with open(source) as fh:
            return read_published_certificate(fh, s, denominator)
    tokens = source.read().replace('(', ' ').replace(')', ' ').split()
    pos = 0

    def take(expected: str = '') -> str:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError('truncated certificate file')
        pos += 1
        token = tokens[pos - 1]
        if expected and token != expected:
            raise ValueError('expected %r, found %r at token %d'
                             % (expected, token, pos - 1))
        return token

    blocks = []
    for b in range(BLOCK_COUNT):
        take('Block')
        if int(take()) != b + 1:
            raise ValueError('square blocks out of order')
        take('of')
        take('L')
        take('dimension')
        order = int(take())
        blocks.append(tuple(tuple(int(take()) for _ in range(i + 1))
                            for i in range(order)))
    for word in ('Slack', 'block', 'of', 'L', 'diagonal', 'of', 'order'):
        take(word)
    slack = tuple(int(take()) for _ in range(int(take())))
    if pos != len(tokens):
        raise ValueError('trailing tokens in certificate file')
    return Certificate(s=s, denominator=denominator,
                       blocks=tuple(blocks), slack=slack)


def read_solver_solution(source, block_sizes: Sequence[int]) -> List[np.ndarray]:
    '''Primal blocks from a solver output file in CSDP layout.

    The first line holds the dual vector and is skipped; every further
    line reads "matno blockno i j value", and only matno 2 (the primal
    X) contributes.  Square blocks come back dense symmetric and the
    slack block as its diagonal vector, ready for round_solution.
    '''
    if not hasattr(source, 'read'):
        with open(source) as fh:
            return read_solver_solution(fh, block_sizes)
    sizes = [abs(int(t)) for t in block_sizes]
    if len(sizes) != BLOCK_COUNT + 1:
        raise ValueError('expected %d block sizes, got %d'
                         % (BLOCK_COUNT + 1, len(sizes)))
    square = [np.zeros((t, t)) for t in sizes[:BLOCK_COUNT]]
    slack = np.zeros(sizes[BLOCK_COUNT])
    source.readline()
    for line in source:
        parts = line.split()
        if not parts:
            continue
        if int(parts[0]) != 2:
            continue
        blockno = int(parts[1])
        i = int(parts[2])
        j = int(parts[3])
        value = float(parts[4])
        if not 1 <= blockno <= SLACK_BLOCK:
            raise ValueError('block number %d out of range' % blockno)
        if blockno == SLACK_BLOCK:
            if i != j:
                raise ValueError('slack block entry off the diagonal')
            slack[i - 1] = value
        else:
            square[blockno - 1][i - 1, j - 1] = value
            square[blockno - 1][j - 1, i - 1] = value
    return square + [slack]
