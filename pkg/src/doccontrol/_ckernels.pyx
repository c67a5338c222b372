# cython: language_level=3
"""Compiled matching kernels; same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.intp_t idx_t


def hopcroft_karp(Py_ssize_t n, idx_t[::1] ptr, idx_t[::1] idx):
    mate_out_arr = np.full(n, -1, dtype=np.intp)
    mate_in_arr = np.full(n, -1, dtype=np.intp)
    if n == 0:
        return mate_out_arr, mate_in_arr
    cdef idx_t[::1] mate_out = mate_out_arr
    cdef idx_t[::1] mate_in = mate_in_arr
    cdef idx_t[::1] dist = np.zeros(n, dtype=np.intp)
    cdef idx_t[::1] queue = np.empty(n, dtype=np.intp)
    cdef idx_t[::1] it = np.empty(n, dtype=np.intp)
    cdef idx_t[::1] stack = np.empty(n, dtype=np.intp)
    cdef idx_t[::1] chosen = np.empty(n, dtype=np.intp)
    cdef idx_t inf = n + 1
    cdef idx_t found, head, tail, u, v, w, k, root, top, nchosen, j
    cdef bint advanced

    while True:
        head = 0
        tail = 0
        for u in range(n):
            if mate_out[u] == -1:
                dist[u] = 0
                queue[tail] = u
                tail += 1
            else:
                dist[u] = inf
        found = inf
        while head < tail:
            u = queue[head]
            head += 1
            if dist[u] >= found:
                continue
            for k in range(ptr[u], ptr[u + 1]):
                w = mate_in[idx[k]]
                if w == -1:
                    if found == inf:
                        found = dist[u] + 1
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue[tail] = w
                    tail += 1
        if found == inf:
            break

        for u in range(n):
            it[u] = ptr[u]
        for root in range(n):
            if mate_out[root] != -1:
                continue
            top = 0
            stack[0] = root
            nchosen = 0
            while top >= 0:
                u = stack[top]
                advanced = False
                while it[u] < ptr[u + 1]:
                    v = idx[it[u]]
                    it[u] += 1
                    w = mate_in[v]
                    if w == -1:
                        if dist[u] + 1 == found:
                            chosen[nchosen] = v
                            nchosen += 1
                            for j in range(top + 1):
                                mate_out[stack[j]] = chosen[j]
                                mate_in[chosen[j]] = stack[j]
                            top = -1
                            advanced = True
                            break
                    elif dist[w] == dist[u] + 1:
                        chosen[nchosen] = v
                        nchosen += 1
                        top += 1
                        stack[top] = w
                        advanced = True
                        break
                if not advanced:
                    dist[u] = inf
                    top -= 1
                    if nchosen > 0:
                        nchosen -= 1

    return mate_out_arr, mate_in_arr


def ordered_augment(Py_ssize_t n, idx_t[::1] ptr, idx_t[::1] idx,
                    idx_t[::1] mo, idx_t[::1] mi, idx_t[::1] roots):
    if n == 0:
        return 1
    cdef idx_t[::1] seen = np.zeros(n, dtype=np.intp)
    cdef idx_t[::1] via = np.zeros(n, dtype=np.intp)
    cdef idx_t[::1] cursor = np.zeros(n, dtype=np.intp)
    cdef idx_t[::1] stack = np.empty(n, dtype=np.intp)
    cdef idx_t stamp = 0
    cdef idx_t passes = 0
    cdef idx_t r, v, u, w, x, y, j, top, nroots = roots.shape[0], ri
    cdef bint grew

    while True:
        passes += 1
        grew = False
        for ri in range(nroots):
            r = roots[ri]
            if mi[r] != -1:
                continue
            stamp += 1
            top = 0
            stack[0] = r
            cursor[r] = ptr[r]
            while top >= 0:
                v = stack[top]
                if cursor[v] == ptr[v + 1]:
                    top -= 1
                    continue
                u = idx[cursor[v]]
                cursor[v] += 1
                if seen[u] == stamp:
                    continue
                seen[u] = stamp
                via[v] = u
                w = mo[u]
                if w == -1:
                    for j in range(top + 1):
                        x = stack[j]
                        y = via[x]
                        mi[x] = y
                        mo[y] = x
                    grew = True
                    break
                top += 1
                stack[top] = w
                cursor[w] = ptr[w]
        if not grew:
            break

    return passes
