"""Compiled core of the branch and bound in :mod:`hgx.solver`.

Sets of candidate edges are rows of ``W`` uint64 words.  The depth-first
search keeps its whole stack in caller-owned arrays so it can stop after a
node quota and resume where it left off.
"""

import numpy as np
from numba import njit

ONE = np.uint64(1)
ZERO = np.uint64(0)
M1 = np.uint64(0x5555555555555555)
M2 = np.uint64(0x3333333333333333)
M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
H01 = np.uint64(0x0101010101010101)
S1 = np.uint64(1)
S2 = np.uint64(2)
S4 = np.uint64(4)
S56 = np.uint64(56)


@njit(cache=True, inline="always")
def popc(x):
    x = x - ((x >> S1) & M1)
    x = (x & M2) + ((x >> S2) & M2)
    x = (x + (x >> S4)) & M4
    return np.int64((x * H01) >> S56)


@njit(cache=True, inline="always")
def lowest(x):
    return popc((x & (~x + ONE)) - ONE)


@njit(cache=True)
def count(a):
    c = 0
    for k in range(a.shape[0]):
        c += popc(a[k])
    return c


@njit(cache=True)
def count_and(a, b):
    c = 0
    for k in range(a.shape[0]):
        c += popc(a[k] & b[k])
    return c


@njit(cache=True)
def is_empty(a):
    for k in range(a.shape[0]):
        if a[k] != ZERO:
            return False
    return True


@njit(cache=True)
def first_bit(a):
    for k in range(a.shape[0]):
        if a[k] != ZERO:
            return 64 * k + lowest(a[k])
    return -1


@njit(cache=True)
def clear_bit(a, i):
    a[i >> 6] &= ~(ONE << np.uint64(i & 63))


@njit(cache=True)
def set_bit(a, i):
    a[i >> 6] |= ONE << np.uint64(i & 63)


@njit(cache=True)
def tighten(chosen, live, vm, pm, n, r, sym):
    """Labelling rules: vertex 0 has maximum degree, vertex 1 maximum codegree with 0."""
    if not sym:
        return True
    W = live.shape[0]
    while True:
        before = count(live)
        d0 = count_and(chosen, vm[0]) + count_and(live, vm[0])
        for v in range(1, n):
            dv = count_and(chosen, vm[v])
            if dv > d0:
                return False
            if dv == d0:
                for k in range(W):
                    live[k] &= ~vm[v, k]
        if r >= 3:
            c01 = count_and(chosen, pm[1]) + count_and(live, pm[1])
            for v in range(2, n):
                cv = count_and(chosen, pm[v])
                if cv > c01:
                    return False
                if cv == c01:
                    for k in range(W):
                        live[k] &= ~pm[v, k]
        if count(live) == before:
            return True


@njit(cache=True)
def include_into(i, chosen, live, adj, out_chosen, out_live, out_adj, conf, ptr, idx, vm, pm, n, r, sym):
    """Child state after choosing candidate ``i``; False when the labelling rules fail."""
    W = chosen.shape[0]
    out_chosen[:] = chosen
    out_live[:] = live
    out_adj[:, :] = adj
    set_bit(out_chosen, i)
    clear_bit(out_live, i)
    for t in range(ptr[i], ptr[i + 1]):
        row = conf[idx[t]]
        dead = False
        c = 0
        for k in range(W):
            rest = row[k] & ~out_chosen[k]
            if rest & ~out_live[k]:
                dead = True
                break
            c += popc(rest)
        if dead:
            continue
        if c == 1:
            for k in range(W):
                out_live[k] &= ~(row[k] & ~out_chosen[k])
        elif c == 2:
            a = -1
            b = -1
            for k in range(W):
                rest = row[k] & ~out_chosen[k]
                while rest:
                    low = rest & (~rest + ONE)
                    pos = 64 * k + lowest(rest)
                    if a < 0:
                        a = pos
                    else:
                        b = pos
                    rest ^= low
            set_bit(out_adj[a], b)
            set_bit(out_adj[b], a)
    return tighten(out_chosen, out_live, vm, pm, n, r, sym)


@njit(cache=True)
def exclude_into(i, chosen, live, adj, out_chosen, out_live, out_adj, after, vm, pm, n, r, sym):
    W = chosen.shape[0]
    out_chosen[:] = chosen
    out_live[:] = live
    out_adj[:, :] = adj
    clear_bit(out_live, i)
    if sym:
        for k in range(W):
            out_live[k] &= ~after[i, k]
    return tighten(out_chosen, out_live, vm, pm, n, r, sym)


@njit(cache=True)
def degree_bound(chosen, live, vm, n, r):
    cap = count_and(chosen, vm[0]) + count_and(live, vm[0])
    total = 0
    for v in range(n):
        d = count_and(chosen, vm[v]) + count_and(live, vm[v])
        total += d if d < cap else cap
    return total // r


@njit(cache=True)
def has_bit(a, i):
    return (a[i >> 6] >> np.uint64(i & 63)) & ONE != ZERO


@njit(cache=True)
def link_is_lexmax(chosen, live, upto, pos, n):
    """No transposition of vertices ``1..n-1`` makes the decided part of the link of
    vertex 0 lexicographically larger.

    Link edges ``(0, a, b)`` are the first candidates, in row-major order, so their
    status is settled for every index below ``upto`` and for dead candidates.
    """
    for p in range(1, n):
        for q in range(p + 1, n):
            for a in range(1, n):
                for b in range(a + 1, n):
                    j = pos[a, b]
                    sa = q if a == p else (p if a == q else a)
                    sb = q if b == p else (p if b == q else b)
                    k = pos[sa, sb] if sa < sb else pos[sb, sa]
                    if j == k:
                        continue
                    if not (j < upto or not has_bit(live, j)) or not (k < upto or not has_bit(live, k)):
                        break
                    x = has_bit(chosen, j)
                    y = has_bit(chosen, k)
                    if x != y:
                        if y:
                            return False
                        break
                else:
                    continue
                break
    return True


@njit(cache=True)
def min_degree(chosen, live, vm, n):
    low = 1 << 62
    for v in range(n):
        d = count_and(chosen, vm[v]) + count_and(live, vm[v])
        if d < low:
            low = d
    return low


@njit(cache=True)
def cover_exceeds(live, adj, rem, cand, budget):
    """True when a greedy clique cover of the live pair-conflict graph needs more than ``budget`` cliques."""
    W = live.shape[0]
    rem[:] = live
    used = 0
    while not is_empty(rem):
        if used >= budget:
            return True
        j = first_bit(rem)
        clear_bit(rem, j)
        used += 1
        # greedily grow a clique inside adj[j]
        for k in range(W):
            cand[k] = adj[j, k] & rem[k]
        while not is_empty(cand):
            b = first_bit(cand)
            clear_bit(rem, b)
            for k in range(W):
                cand[k] &= adj[b, k]
            clear_bit(cand, b)
    return False


@njit(cache=True)
def run(
    st_chosen, st_live, st_adj, st_size, st_branch, st_i, depth,
    best, best_mask, conf, ptr, idx, vm, pm, after, pos, n, r, sym, ceiling, sub, limit,
):
    """Advance the search by at most ``limit`` nodes.  ``depth[0] < 0`` once finished.

    ``sub`` is the optimum on ``n-1`` vertices (negative when unknown): deleting
    any vertex ``v`` leaves a valid hypergraph, so ``|H| <= sub + deg(v)``.
    """
    rem = np.empty(st_chosen.shape[1], dtype=np.uint64)
    cand = np.empty(st_chosen.shape[1], dtype=np.uint64)
    nodes = 0
    link_size = (n - 1) * (n - 2) // 2
    d = depth[0]
    while d >= 0:
        b = st_branch[d]
        if b == 0:
            if nodes >= limit:
                break
            nodes += 1
            size = st_size[d]
            if size > best[0]:
                best[0] = size
                best_mask[:] = st_chosen[d]
            live = st_live[d]
            if best[0] >= ceiling or is_empty(live):
                d -= 1
                continue
            room = best[0] - size
            if count(live) <= room:
                d -= 1
                continue
            if sym and degree_bound(st_chosen[d], live, vm, n, r) <= best[0]:
                d -= 1
                continue
            i = first_bit(live)
            if sym and r == 3 and i <= link_size and not link_is_lexmax(st_chosen[d], live, i, pos, n):
                d -= 1
                continue
            if sub >= 0 and sub + min_degree(st_chosen[d], live, vm, n) <= best[0]:
                d -= 1
                continue
            if not cover_exceeds(live, st_adj[d], rem, cand, room):
                d -= 1
                continue
            st_i[d] = i
            st_branch[d] = 1
            ok = include_into(
                i, st_chosen[d], live, st_adj[d], st_chosen[d + 1], st_live[d + 1], st_adj[d + 1],
                conf, ptr, idx, vm, pm, n, r, sym,
            )
            if ok:
                st_size[d + 1] = size + 1
                st_branch[d + 1] = 0
                d += 1
        elif b == 1:
            st_branch[d] = 2
            ok = exclude_into(
                st_i[d], st_chosen[d], st_live[d], st_adj[d], st_chosen[d + 1], st_live[d + 1], st_adj[d + 1],
                after, vm, pm, n, r, sym,
            )
            if ok:
                st_size[d + 1] = st_size[d]
                st_branch[d + 1] = 0
                d += 1
        else:
            d -= 1
    depth[0] = d
    return nodes
