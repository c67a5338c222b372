"""Pure-Python matching kernels.

Reference implementation of the two hot loops; ``_ckernels.pyx`` mirrors it
line for line. Both operate on compact node positions ``0..n-1`` and the
bipartite split graph where position ``u``'s out-copy connects to the
in-copy of every successor. ``mate_out[u]`` is the in-copy matched to
out-copy ``u`` and ``mate_in[v]`` the out-copy matched to in-copy ``v``;
``-1`` marks a free copy.
"""

from collections import deque

import numpy as np


def hopcroft_karp(n, out_ptr, out_idx):
    """Maximum matching by Hopcroft-Karp, roots scanned in ascending position.

    Returns ``(mate_out, mate_in)`` as ``intp`` arrays.
    """
    ptr = out_ptr.tolist()
    idx = out_idx.tolist()
    mate_out = [-1] * n
    mate_in = [-1] * n
    inf = n + 1
    dist = [0] * n

    while True:
        # BFS layering from the free out-copies
        queue = deque()
        for u in range(n):
            if mate_out[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = inf
        found = inf
        while queue:
            u = queue.popleft()
            if dist[u] >= found:
                continue
            for k in range(ptr[u], ptr[u + 1]):
                w = mate_in[idx[k]]
                if w == -1:
                    if found == inf:
                        found = dist[u] + 1
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if found == inf:
            break

        # layered DFS, iterative
        it = ptr[:-1]
        for root in range(n):
            if mate_out[root] != -1:
                continue
            stack = [root]
            chosen = []
            while stack:
                u = stack[-1]
                advanced = False
                while it[u] < ptr[u + 1]:
                    v = idx[it[u]]
                    it[u] += 1
                    w = mate_in[v]
                    if w == -1:
                        if dist[u] + 1 == found:
                            chosen.append(v)
                            # flip the path root .. u -> v
                            for j in range(len(stack)):
                                a = stack[j]
                                b = chosen[j]
                                mate_out[a] = b
                                mate_in[b] = a
                            stack = []
                            advanced = True
                            break
                    elif dist[w] == dist[u] + 1:
                        chosen.append(v)
                        stack.append(w)
                        advanced = True
                        break
                if not advanced:
                    dist[u] = inf
                    stack.pop()
                    if chosen:
                        chosen.pop()

    return np.asarray(mate_out, dtype=np.intp), np.asarray(mate_in, dtype=np.intp)


def ordered_augment(n, in_ptr, in_idx, mate_out, mate_in, order):
    """Grow a matching by augmenting searches rooted at free in-copies.

    Free in-copies are tried in ``order``; each search is a depth-first
    alternating walk over predecessors (ascending position) that stops at
    the first free out-copy. Passes repeat until one finds no augmenting
    path. ``mate_out`` and ``mate_in`` are updated in place.

    Returns the number of passes made.
    """
    ptr = in_ptr.tolist()
    idx = in_idx.tolist()
    mo = mate_out.tolist()
    mi = mate_in.tolist()
    roots = order.tolist()
    seen = [0] * n
    via = [0] * n
    cursor = [0] * n
    stamp = 0
    passes = 0

    while True:
        passes += 1
        grew = False
        for r in roots:
            if mi[r] != -1:
                continue
            stamp += 1
            stack = [r]
            cursor[r] = ptr[r]
            while stack:
                v = stack[-1]
                if cursor[v] == ptr[v + 1]:
                    stack.pop()
                    continue
                u = idx[cursor[v]]
                cursor[v] += 1
                if seen[u] == stamp:
                    continue
                seen[u] = stamp
                via[v] = u
                w = mo[u]
                if w == -1:
                    for x in stack:
                        y = via[x]
                        mi[x] = y
                        mo[y] = x
                    grew = True
                    break
                stack.append(w)
                cursor[w] = ptr[w]
        if not grew:
            break

    mate_out[:] = mo
    mate_in[:] = mi
    return passes
