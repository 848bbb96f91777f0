# cython: boundscheck=False, wraparound=False, cdivision=True
'''Compiled kernels; monoflag._kernels_py documents the semantics.'''

from libc.string cimport memcmp, memcpy

import numpy as np

IMPLEMENTATION = 'compiled'

DEF MAX_N = 10
DEF MAX_PAIRS = 45


cdef void _place(int depth, int pos, int n,
                 const unsigned char* col, unsigned char* cur,
                 int* chosen, unsigned char* used,
                 unsigned char* best, int* have_best) noexcept:
    cdef int total = n * (n - 1) // 2
    cdef int v, u, x, i, dup, same
    cdef unsigned char block[MAX_N]
    cdef unsigned char minblock[MAX_N]
    cdef int cands[MAX_N]
    cdef int ncand = 0
    cdef int have_min = 0
    cdef int cmp_res

    if depth == n:
        if not have_best[0] or memcmp(cur, best, total) < 0:
            memcpy(best, cur, total)
            have_best[0] = 1
        return

    for v in range(n):
        if used[v]:
            continue
        dup = 0
        for u in range(v):
            if used[u]:
                continue
            same = 1
            for x in range(n):
                if x != u and x != v and col[u * n + x] != col[v * n + x]:
                    same = 0
                    break
            if same:
                dup = 1
                break
        if dup:
            continue
        for i in range(depth):
            block[i] = col[chosen[i] * n + v]
        if not have_min:
            cmp_res = -1
        else:
            cmp_res = memcmp(block, minblock, depth)
        if cmp_res < 0:
            memcpy(minblock, block, depth)
            have_min = 1
            ncand = 0
        if cmp_res <= 0:
            cands[ncand] = v
            ncand += 1

    memcpy(cur + pos, minblock, depth)
    if have_best[0] and memcmp(cur, best, pos + depth) > 0:
        return
    for i in range(ncand):
        v = cands[i]
        chosen[depth] = v
        used[v] = 1
        _place(depth + 1, pos + depth, n, col, cur, chosen, used,
               best, have_best)
        used[v] = 0


def canon_colors(int n, colors):
    if n <= 1:
        return b''
    if n > MAX_N:
        raise ValueError('canonical form supported up to order %d' % MAX_N)
    cdef unsigned char col[MAX_N * MAX_N]
    cdef unsigned char cur[MAX_PAIRS]
    cdef unsigned char best[MAX_PAIRS]
    cdef int chosen[MAX_N]
    cdef unsigned char used[MAX_N]
    cdef int have_best = 0
    cdef int idx = 0
    cdef int i, j, c
    for j in range(n):
        for i in range(j):
            c = colors[idx]
            idx += 1
            col[i * n + j] = <unsigned char>c
            col[j * n + i] = <unsigned char>c
    for i in range(n):
        used[i] = 0
    _place(0, 0, n, col, cur, chosen, used, best, &have_best)
    return (<char*>best)[:n * (n - 1) // 2]


def classify_pairs_l7(const unsigned char[::1] colors,
                      const signed char[::1] map27,
                      const short[::1] sig1,
                      const short[:, ::1] sig3):
    cdef int attr[7][7]
    cdef int rest[6]
    cdef int idx = 0
    cdef int i, j, k, t, t0, t1, t2, block, u, v, split
    cdef int a0, a1, a2, b0, b1, b2, x0, x1, y0, y1
    cdef long long code
    cdef int n_out = 0
    out_arr = np.empty(1500, dtype=np.int64)
    cdef long long[::1] out = out_arr

    for j in range(7):
        for i in range(j):
            attr[i][j] = colors[idx]
            attr[j][i] = colors[idx]
            idx += 1

    # point type: anchor t, ten splits of the other six into 3 + 3
    for t in range(7):
        k = 0
        for i in range(7):
            if i != t:
                rest[k] = i
                k += 1
        a0 = rest[0]
        for i in range(1, 6):
            for j in range(i + 1, 6):
                a1 = rest[i]
                a2 = rest[j]
                b0 = -1
                b1 = -1
                for k in range(1, 6):
                    if k == i or k == j:
                        continue
                    if b0 < 0:
                        b0 = rest[k]
                    elif b1 < 0:
                        b1 = rest[k]
                    else:
                        b2 = rest[k]
                u = sig1[attr[t][a0] + 3 * attr[t][a1]
                         + 9 * attr[a0][a1] + 27 * attr[t][a2]
                         + 81 * attr[a0][a2] + 243 * attr[a1][a2]]
                v = sig1[attr[t][b0] + 3 * attr[t][b1]
                         + 9 * attr[b0][b1] + 27 * attr[t][b2]
                         + 81 * attr[b0][b2] + 243 * attr[b1][b2]]
                if u > v:
                    u, v = v, u
                code = (<long long>u << 14) | v
                out[n_out] = code
                n_out += 1
                if u == v:
                    out[n_out] = code
                    n_out += 1

    # triangle types: each matching ordered anchor, three splits of the
    # other four into 2 + 2
    for t0 in range(7):
        for t1 in range(7):
            if t1 == t0:
                continue
            for t2 in range(7):
                if t2 == t0 or t2 == t1:
                    continue
                block = map27[9 * attr[t0][t1] + 3 * attr[t0][t2]
                              + attr[t1][t2]]
                if block < 0:
                    continue
                k = 0
                for i in range(7):
                    if i != t0 and i != t1 and i != t2:
                        rest[k] = i
                        k += 1
                for split in range(3):
                    x0 = rest[0]
                    x1 = rest[split + 1]
                    if split == 0:
                        y0 = rest[2]
                        y1 = rest[3]
                    elif split == 1:
                        y0 = rest[1]
                        y1 = rest[3]
                    else:
                        y0 = rest[1]
                        y1 = rest[2]
                    u = sig3[block - 1,
                             attr[t0][x0] + 3 * attr[t1][x0]
                             + 9 * attr[t2][x0] + 27 * attr[t0][x1]
                             + 81 * attr[t1][x1] + 243 * attr[t2][x1]
                             + 729 * attr[x0][x1]]
                    v = sig3[block - 1,
                             attr[t0][y0] + 3 * attr[t1][y0]
                             + 9 * attr[t2][y0] + 27 * attr[t0][y1]
                             + 81 * attr[t1][y1] + 243 * attr[t2][y1]
                             + 729 * attr[y0][y1]]
                    if u > v:
                        u, v = v, u
                    code = ((<long long>block << 28)
                            | (<long long>u << 14) | v)
                    out[n_out] = code
                    n_out += 1
                    if u == v:
                        out[n_out] = code
                        n_out += 1

    return out_arr[:n_out]
