'''Pure-Python fallbacks for the performance-critical kernels.

The compiled module monoflag._kernels implements the same functions with
the same semantics; monoflag.kernels picks whichever is available.
'''

from itertools import combinations

import numpy as np

IMPLEMENTATION = 'pure'


def canon_colors(n, colors):
    '''Lexicographically minimal incremental edge-color string of a
    complete edge-colored graph over all vertex orderings.

    colors lists the color of pair (i, j), i < j, at index j*(j-1)//2+i;
    the output lists, for each placed vertex, its colors toward the
    previously placed vertices in placement order.  Vertex orderings are
    searched depth-first, branching only on exact block ties, with
    interchangeable vertices merged and worse-than-best prefixes cut.
    '''
    if n <= 1:
        return b''
    col = [[0] * n for _ in range(n)]
    idx = 0
    for j in range(n):
        for i in range(j):
            col[i][j] = col[j][i] = colors[idx]
            idx += 1
    cur = bytearray(n * (n - 1) // 2)
    chosen = [0] * n
    used = [False] * n
    best = None

    def place(depth, pos):
        nonlocal best
        if depth == n:
            leaf = bytes(cur)
            if best is None or leaf < best:
                best = leaf
            return
        groups = {}
        for v in range(n):
            if used[v]:
                continue
            duplicate = False
            for u in range(v):
                if not used[u] and all(
                        col[u][x] == col[v][x]
                        for x in range(n) if x != u and x != v):
                    duplicate = True
                    break
            if duplicate:
                continue
            block = bytes(col[chosen[i]][v] for i in range(depth))
            groups.setdefault(block, []).append(v)
        block = min(groups)
        end = pos + depth
        cur[pos:end] = block
        if best is not None and bytes(cur[:end]) > best[:end]:
            return
        for v in groups[block]:
            chosen[depth] = v
            used[v] = True
            place(depth + 1, end)
            used[v] = False

    place(0, 0)
    return best


def classify_pairs_l7(colors, map27, sig1, sig3):
    '''Classify every anchored subset pair of a 7-vertex host.

    For the point type, each vertex anchors ten unordered splits of the
    remaining six into two 4-subsets sharing the anchor; for each
    triangle type, each anchoring triple whose colors match (looked up
    through map27) anchors three splits of the remaining four into two
    5-subsets.  sig1 and sig3 map packed base-3 color strings, anchor
    first, to flag indices.  Each split yields one packed code
    (block << 28) | (u << 14) | v with u <= v, emitted twice when
    u == v so that code multiplicities are the entries of the symmetric
    ordered-pair count matrices.
    '''
    attr = [[0] * 7 for _ in range(7)]
    idx = 0
    for j in range(7):
        for i in range(j):
            attr[i][j] = attr[j][i] = colors[idx]
            idx += 1
    out = []

    def emit(block, u, v):
        if u > v:
            u, v = v, u
        code = (block << 28) | (u << 14) | v
        out.append(code)
        if u == v:
            out.append(code)

    def flag4(t, a):
        return int(sig1[attr[t][a[0]]
                        + 3 * attr[t][a[1]] + 9 * attr[a[0]][a[1]]
                        + 27 * attr[t][a[2]] + 81 * attr[a[0]][a[2]]
                        + 243 * attr[a[1]][a[2]]])

    def flag5(table, t0, t1, t2, a0, a1):
        return int(table[attr[t0][a0] + 3 * attr[t1][a0]
                         + 9 * attr[t2][a0] + 27 * attr[t0][a1]
                         + 81 * attr[t1][a1] + 243 * attr[t2][a1]
                         + 729 * attr[a0][a1]])

    for t in range(7):
        rest = [v for v in range(7) if v != t]
        first = rest[0]
        for extra in combinations(rest[1:], 2):
            half = (first,) + extra
            other = tuple(v for v in rest if v not in half)
            emit(0, flag4(t, half), flag4(t, other))

    for t0 in range(7):
        for t1 in range(7):
            if t1 == t0:
                continue
            for t2 in range(7):
                if t2 == t0 or t2 == t1:
                    continue
                block = int(map27[9 * attr[t0][t1]
                                  + 3 * attr[t0][t2] + attr[t1][t2]])
                if block < 0:
                    continue
                table = sig3[block - 1]
                r = [v for v in range(7) if v not in (t0, t1, t2)]
                for a, b in (((r[0], r[1]), (r[2], r[3])),
                             ((r[0], r[2]), (r[1], r[3])),
                             ((r[0], r[3]), (r[1], r[2]))):
                    emit(block,
                         flag5(table, t0, t1, t2, a[0], a[1]),
                         flag5(table, t0, t1, t2, b[0], b[1]))

    return np.array(out, dtype=np.int64)
