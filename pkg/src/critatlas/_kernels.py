"""Compiled kernels over the flat rotation-system layout.

A graph with ``n`` vertices is stored as ``off`` (int32, length n+1) and
``adj`` (int32, length 2|E|): the rotation of ``v`` is
``adj[off[v]:off[v+1]]`` in counterclockwise order.  Index ``k`` into ``adj``
is the dart from the owning vertex to ``adj[k]``.  The face to the left of a
dart ``u->v`` continues with ``v->rot_v[pos(u)+1]``.

Everything here is pure and allocation-local, so the kernels are safe to call
from several worker processes.
"""

import numpy as np
from numba import njit

I32 = np.int32
I16 = np.int16


# --------------------------------------------------------------------------
# basic structure
# --------------------------------------------------------------------------


@njit(cache=True)
def tails(off):
    n = off.shape[0] - 1
    t = np.empty(off[n], I32)
    for v in range(n):
        for k in range(off[v], off[v + 1]):
            t[k] = v
    return t


@njit(cache=True)
def rot_pos(off, adj, v, w):
    for k in range(off[v], off[v + 1]):
        if adj[k] == w:
            return k - off[v]
    return -1


@njit(cache=True)
def reverse_darts(off, adj):
    n = off.shape[0] - 1
    rev = np.empty(adj.shape[0], I32)
    for v in range(n):
        for k in range(off[v], off[v + 1]):
            w = adj[k]
            p = rot_pos(off, adj, w, v)
            if p < 0:
                return rev, False
            rev[k] = off[w] + p
    return rev, True


@njit(cache=True)
def face_successor(off, adj, rev):
    nxt = np.empty(adj.shape[0], I32)
    for d in range(adj.shape[0]):
        w = adj[d]
        deg = off[w + 1] - off[w]
        j = rev[d] - off[w]
        nxt[d] = off[w] + (j + 1) % deg
    return nxt


@njit(cache=True)
def face_labels(off, adj):
    """Label every dart with its face; returns (labels, face count, ok)."""
    rev, ok = reverse_darts(off, adj)
    lab = np.full(adj.shape[0], -1, I32)
    if not ok:
        return lab, 0, False
    nxt = face_successor(off, adj, rev)
    f = 0
    for d in range(adj.shape[0]):
        if lab[d] >= 0:
            continue
        e = d
        while lab[e] < 0:
            lab[e] = f
            e = nxt[e]
        f += 1
    return lab, f, True


@njit(cache=True)
def face_darts(off, adj, d0):
    """Darts of the face left of ``d0``, in walk order starting with ``d0``."""
    rev, ok = reverse_darts(off, adj)
    nxt = face_successor(off, adj, rev)
    out = np.empty(adj.shape[0], I32)
    m = 0
    e = d0
    while True:
        out[m] = e
        m += 1
        e = nxt[e]
        if e == d0:
            break
    return out[:m]


@njit(cache=True)
def is_connected(off, adj):
    n = off.shape[0] - 1
    if n == 0:
        return True
    seen = np.zeros(n, np.uint8)
    stack = np.empty(n, I32)
    stack[0] = 0
    seen[0] = 1
    sp = 1
    cnt = 1
    while sp > 0:
        sp -= 1
        v = stack[sp]
        for k in range(off[v], off[v + 1]):
            w = adj[k]
            if seen[w] == 0:
                seen[w] = 1
                stack[sp] = w
                sp += 1
                cnt += 1
    return cnt == n


@njit(cache=True)
def euler_ok(off, adj):
    n = off.shape[0] - 1
    lab, f, ok = face_labels(off, adj)
    if not ok:
        return False
    return n - adj.shape[0] // 2 + f == 2


@njit(cache=True)
def has_short_cycle(off, adj, limit):
    """True iff the graph has a cycle of length 3..limit, limit in {3, 4}."""
    n = off.shape[0] - 1
    nb = np.full(n, -1, I32)
    seen = np.full(n, -1, I32)
    mid = np.full(n, -1, I32)
    for v in range(n):
        for k in range(off[v], off[v + 1]):
            nb[adj[k]] = v
        for k in range(off[v], off[v + 1]):
            a = adj[k]
            for kk in range(off[a], off[a + 1]):
                b = adj[kk]
                if b == v:
                    continue
                if nb[b] == v:
                    return True
                if limit >= 4:
                    if seen[b] == v and mid[b] != a:
                        return True
                    seen[b] = v
                    mid[b] = a
    return False


@njit(cache=True)
def bfs_dist(off, adj, sources):
    n = off.shape[0] - 1
    dist = np.full(n, -1, I32)
    q = np.empty(n, I32)
    h = 0
    t = 0
    for s in sources:
        if dist[s] < 0:
            dist[s] = 0
            q[t] = s
            t += 1
    while h < t:
        v = q[h]
        h += 1
        for k in range(off[v], off[v + 1]):
            w = adj[k]
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                q[t] = w
                t += 1
    return dist


# --------------------------------------------------------------------------
# canonical codes
# --------------------------------------------------------------------------


@njit(cache=True)
def _code_into(off, adj, rev, d0, s, best, have_best, buf, lab, entry, order):
    """BFS code of the graph rooted at dart ``d0`` read in direction ``s``.

    Writes into ``buf`` (layout: n, then per vertex its neighbour labels and a
    0 separator; labels are 1-based) while comparing against ``best``.
    Returns -1 (smaller), 0 (equal) or 1 (larger, aborted early).
    """
    n = off.shape[0] - 1
    for v in range(n):
        lab[v] = 0
    tl0 = 0
    # tail of d0
    lo = 0
    hi = n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if off[mid] <= d0:
            lo = mid
        else:
            hi = mid
    tl0 = lo
    cmp = 0
    if have_best:
        cmp = 0
    pos = 0
    buf[0] = n
    if have_best:
        if n < best[0]:
            cmp = -1
        elif n > best[0]:
            return 1
    pos = 1
    lab[tl0] = 1
    entry[tl0] = d0 - off[tl0]
    order[0] = tl0
    nl = 1
    h = 0
    while h < nl:
        x = order[h]
        h += 1
        deg = off[x + 1] - off[x]
        p = entry[x]
        for t in range(deg):
            j = (p + s * t) % deg
            if j < 0:
                j += deg
            k = off[x] + j
            w = adj[k]
            if lab[w] == 0:
                nl += 1
                lab[w] = nl
                entry[w] = rev[k] - off[w]
                order[nl - 1] = w
            val = lab[w]
            if have_best and cmp == 0:
                if val < best[pos]:
                    cmp = -1
                elif val > best[pos]:
                    return 1
            buf[pos] = val
            pos += 1
        if have_best and cmp == 0:
            if 0 < best[pos]:
                cmp = -1
            elif 0 > best[pos]:
                return 1
        buf[pos] = 0
        pos += 1
    if not have_best:
        return -1
    return cmp


@njit(cache=True)
def canon_code(off, adj, starts, dirs, extra):
    """Lexicographically least rooted code over the given start darts.

    ``extra[i]`` encodes information appended after the code for start ``i``
    (the position of a second mark) as a pair of labels computed by the
    caller-independent rule in :func:`_mark_extra`; pass an empty array when
    there is a single mark.  Returns (code, index of the winning start).
    """
    n = off.shape[0] - 1
    rev, ok = reverse_darts(off, adj)
    L = 1 + adj.shape[0] + n
    best = np.zeros(L + 2, I32)
    buf = np.zeros(L + 2, I32)
    lab = np.zeros(n, I32)
    entry = np.zeros(n, I32)
    order = np.zeros(n, I32)
    have = False
    win = -1
    for i in range(starts.shape[0]):
        c = _code_into(off, adj, rev, starts[i], dirs[i], best, have, buf, lab, entry, order)
        if c > 0:
            continue
        # append the second-mark descriptor: kind, then a label pair
        if extra.shape[0] > 0:
            kind = extra[i, 0]
            a = 0
            b = 0
            if kind == 1:
                # face given by its dart list extra[i, 2:2+extra[i,1]]; read
                # darts forward for s=+1 and reversed for s=-1
                m = extra[i, 1]
                a = 1 << 30
                b = 1 << 30
                for q in range(m):
                    d = extra[i, 2 + q]
                    if dirs[i] > 0:
                        x = lab[_tail_of(off, d)]
                        y = lab[adj[d]]
                    else:
                        x = lab[adj[d]]
                        y = lab[_tail_of(off, d)]
                    if x < a or (x == a and y < b):
                        a = x
                        b = y
            else:
                a = lab[extra[i, 2]]
                b = 0
            buf[L] = kind * 4096 + a
            buf[L + 1] = b
            if have and c == 0:
                if buf[L] < best[L] or (buf[L] == best[L] and buf[L + 1] < best[L + 1]):
                    c = -1
                elif buf[L] > best[L] or (buf[L] == best[L] and buf[L + 1] > best[L + 1]):
                    c = 1
            if not have:
                c = -1
        if c < 0 or not have:
            for q in range(L + 2):
                best[q] = buf[q]
            have = True
            win = i
    if extra.shape[0] > 0:
        return best, win
    return best[:L], win


@njit(cache=True)
def _tail_of(off, d):
    lo = 0
    hi = off.shape[0] - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if off[mid] <= d:
            lo = mid
        else:
            hi = mid
    return lo


@njit(cache=True)
def rooted_code(off, adj, d0, s):
    """Full code for one root (no comparison)."""
    n = off.shape[0] - 1
    rev, ok = reverse_darts(off, adj)
    L = 1 + adj.shape[0] + n
    buf = np.zeros(L, I32)
    dummy = np.zeros(1, I32)
    lab = np.zeros(n, I32)
    entry = np.zeros(n, I32)
    order = np.zeros(n, I32)
    _code_into(off, adj, rev, d0, s, dummy, False, buf, lab, entry, order)
    return buf, lab


@njit(cache=True)
def decode(code):
    """Inverse of the BFS code: returns (off, adj) with vertex label-1."""
    n = code[0]
    off = np.zeros(n + 1, I32)
    cnt = 0
    v = 0
    pos = 1
    adj = np.empty(code.shape[0], I32)
    while v < n:
        c = code[pos]
        pos += 1
        if c == 0:
            v += 1
            off[v] = cnt
        else:
            adj[cnt] = c - 1
            cnt += 1
    return off, adj[:cnt].copy()


# --------------------------------------------------------------------------
# identification of face corners (gluing / pasting / folding)
# --------------------------------------------------------------------------


@njit(cache=True)
def zip_corners(off, adj, xs, xa, ys, ya):
    """Identify ``ys[k]`` into ``xs[k]``, splicing rotations at face corners.

    The corner at ``x`` is the one following neighbour ``xa`` (between ``xa``
    and its rotation successor); likewise for ``y``.  Parallel edges that
    arise as cyclically consecutive duplicates are merged.  Returns
    ``(status, off2, adj2, newid)`` where status 0 is success, 1 a loop,
    2 a non-mergeable parallel edge and 3 a broken embedding.
    """
    n = off.shape[0] - 1
    rep = np.arange(n).astype(I32)
    isy = np.zeros(n, np.uint8)
    xi = np.full(n, -1, I32)
    for k in range(xs.shape[0]):
        rep[ys[k]] = xs[k]
        isy[ys[k]] = 1
        xi[xs[k]] = k
    # resolve chains (a y that is also an x of another pair)
    for v in range(n):
        r = rep[v]
        guard = 0
        while rep[r] != r and guard < n:
            r = rep[r]
            guard += 1
        rep[v] = r
    newid = np.full(n, -1, I32)
    m = 0
    for v in range(n):
        if rep[v] == v:
            newid[v] = m
            m += 1
    for v in range(n):
        newid[v] = newid[rep[v]]
    tmp = np.empty(adj.shape[0] + 8, I32)
    out = np.empty(adj.shape[0] + 8, I32)
    off2 = np.zeros(m + 1, I32)
    total = 0
    lists_start = np.zeros(m, I32)
    lists_len = np.zeros(m, I32)
    buf = np.empty(2 * adj.shape[0] + 8, I32)
    for v in range(n):
        if isy[v]:
            continue
        L = 0
        if xi[v] >= 0:
            k = xi[v]
            x = v
            y = ys[k]
            px = rot_pos(off, adj, x, xa[k])
            py = rot_pos(off, adj, y, ya[k])
            if px < 0 or py < 0:
                return 3, off2, out[:0], newid
            dx = off[x + 1] - off[x]
            dy = off[y + 1] - off[y]
            for t in range(dx):
                tmp[L] = adj[off[x] + (px + 1 + t) % dx]
                L += 1
            for t in range(dy):
                tmp[L] = adj[off[y] + (py + 1 + t) % dy]
                L += 1
        else:
            for kk in range(off[v], off[v + 1]):
                tmp[L] = adj[kk]
                L += 1
        # map and drop cyclic consecutive duplicates
        for t in range(L):
            tmp[t] = newid[tmp[t]]
        me = newid[v]
        R = 0
        for t in range(L):
            w = tmp[t]
            if w == me:
                return 1, off2, out[:0], newid
            if R > 0 and buf[total + R - 1] == w:
                continue
            buf[total + R] = w
            R += 1
        while R > 1 and buf[total + R - 1] == buf[total]:
            R -= 1
        # remaining duplicates are parallel edges that cannot be merged
        for a in range(R):
            for b in range(a + 1, R):
                if buf[total + a] == buf[total + b]:
                    return 2, off2, out[:0], newid
        lists_start[me] = total
        lists_len[me] = R
        total += R
    pos = 0
    for v in range(m):
        off2[v] = pos
        for t in range(lists_len[v]):
            out[pos] = buf[lists_start[v] + t]
            pos += 1
    off2[m] = pos
    adj2 = out[:pos].copy()
    rev, ok = reverse_darts(off2, adj2)
    if not ok:
        return 3, off2, adj2, newid
    # each adjacency must be mutual exactly once
    for v in range(m):
        for kk in range(off2[v], off2[v + 1]):
            if rev[rev[kk]] != kk:
                return 3, off2, adj2, newid
    if not euler_ok(off2, adj2):
        return 3, off2, adj2, newid
    return 0, off2, adj2, newid


@njit(cache=True)
def disjoint_union(off1, adj1, off2, adj2):
    n1 = off1.shape[0] - 1
    n2 = off2.shape[0] - 1
    off = np.empty(n1 + n2 + 1, I32)
    adj = np.empty(adj1.shape[0] + adj2.shape[0], I32)
    for v in range(n1 + 1):
        off[v] = off1[v]
    for v in range(1, n2 + 1):
        off[n1 + v] = off1[n1] + off2[v]
    for k in range(adj1.shape[0]):
        adj[k] = adj1[k]
    for k in range(adj2.shape[0]):
        adj[adj1.shape[0] + k] = adj2[k] + n1
    return off, adj


@njit(cache=True)
def walk_vertices(off, adj, d0):
    darts = face_darts(off, adj, d0)
    tl = tails(off)
    out = np.empty(darts.shape[0], I32)
    for i in range(darts.shape[0]):
        out[i] = tl[darts[i]]
    return out


@njit(cache=True)
def glue_paths(off1, adj1, off2, adj2, t):
    """Glue two rooted disk graphs along boundary paths of length ``t``.

    Both graphs are rooted: the outer face lies left of the dart from vertex 0
    to its first rotation neighbour.  The path of the first graph follows its
    outer walk from the root; the second graph's path is the reverse of its
    outer walk's first ``t`` edges.  Returns (status, off, adj, root dart).
    """
    n1 = off1.shape[0] - 1
    W1 = walk_vertices(off1, adj1, off1[0])
    W2 = walk_vertices(off2, adj2, off2[0])
    L1 = W1.shape[0]
    L2 = W2.shape[0]
    off, adj = disjoint_union(off1, adj1, off2, adj2)
    xs = np.empty(t + 1, I32)
    xa = np.empty(t + 1, I32)
    ys = np.empty(t + 1, I32)
    ya = np.empty(t + 1, I32)
    for k in range(t + 1):
        xs[k] = W1[k]
        xa[k] = W1[(k - 1 + L1) % L1]
        ys[k] = W2[t - k] + n1
        ya[k] = W2[(t - k - 1 + L2) % L2] + n1
    st, o, a, newid = zip_corners(off, adj, xs, xa, ys, ya)
    if st != 0:
        return st, o, a, -1
    # outer face of the result is left of (pred(v0) -> v0)
    u = newid[W1[L1 - 1]]
    v = newid[W1[0]]
    p = rot_pos(o, a, u, v)
    return 0, o, a, o[u] + p


# --------------------------------------------------------------------------
# 3-colouring extension
# --------------------------------------------------------------------------


@njit(cache=True)
def _popc(x):
    return (x & 1) + ((x >> 1) & 1) + ((x >> 2) & 1)


@njit(cache=True)
def extends(off, adj, color, eu, ev, dom, assigned, free, stk_v, stk_rem, trail_v, trail_m, tmark):
    """Does the partial colouring ``color`` (-1 = free) extend properly?

    The edge ``eu``-``ev`` (if ``eu >= 0``) is ignored.  Forward checking on
    3-bit domains, variable order smallest domain then lowest id.
    Scratch arrays are passed in to avoid allocation in tight loops.
    """
    n = off.shape[0] - 1
    nf = 0
    for v in range(n):
        c = color[v]
        if c >= 0:
            assigned[v] = 1
            for k in range(off[v], off[v + 1]):
                w = adj[k]
                if color[w] == c:
                    if not ((v == eu and w == ev) or (v == ev and w == eu)):
                        return False
        else:
            assigned[v] = 0
            m = 7
            for k in range(off[v], off[v + 1]):
                w = adj[k]
                cw = color[w]
                if cw >= 0:
                    if (v == eu and w == ev) or (v == ev and w == eu):
                        continue
                    m &= ~(1 << cw)
            if m == 0:
                return False
            dom[v] = m
            free[nf] = v
            nf += 1
    if nf == 0:
        return True
    depth = 0
    tp = 0
    # choose first variable
    while True:
        # select MRV variable
        best = -1
        bc = 4
        for i in range(nf):
            v = free[i]
            if assigned[v] == 0:
                c = _popc(dom[v])
                if c < bc:
                    bc = c
                    best = v
                    if c == 1:
                        break
        if best < 0:
            return True
        stk_v[depth] = best
        stk_rem[depth] = dom[best]
        tmark[depth] = tp
        assigned[best] = 1
        # try colours for stk_v[depth]; backtrack as needed
        while True:
            v = stk_v[depth]
            # undo trail of this level
            while tp > tmark[depth]:
                tp -= 1
                dom[trail_v[tp]] = trail_m[tp]
            rem = stk_rem[depth]
            if rem == 0:
                assigned[v] = 0
                if depth == 0:
                    return False
                depth -= 1
                continue
            c = 0
            if rem & 1:
                c = 0
            elif rem & 2:
                c = 1
            else:
                c = 2
            stk_rem[depth] = rem & ~(1 << c)
            ok = True
            for k in range(off[v], off[v + 1]):
                w = adj[k]
                if assigned[w] == 0 and (dom[w] >> c) & 1:
                    if (v == eu and w == ev) or (v == ev and w == eu):
                        continue
                    trail_v[tp] = w
                    trail_m[tp] = dom[w]
                    tp += 1
                    dom[w] &= ~(1 << c)
                    if dom[w] == 0:
                        ok = False
                        break
            if ok:
                depth += 1
                break


@njit(cache=True)
def _scratch(n):
    return (np.zeros(n, np.int8), np.zeros(n, np.uint8), np.zeros(n, I32),
            np.zeros(n + 1, I32), np.zeros(n + 1, np.int8),
            np.zeros(4 * n * n + 16, I32), np.zeros(4 * n * n + 16, np.int8),
            np.zeros(n + 1, I32))


@njit(cache=True)
def proper_precolorings(off, adj, S):
    """All proper 3-colourings of the subgraph induced by ``S``.

    Colourings are normalised under colour permutation: colours appear in
    order of first use along ``S``.  Returns an int8 array (count, len(S)).
    """
    n = off.shape[0] - 1
    k = S.shape[0]
    idx = np.full(n, -1, I32)
    for i in range(k):
        idx[S[i]] = i
    # earlier neighbours inside S
    nb = np.full((k, 8), -1, I32)
    nbc = np.zeros(k, I32)
    for i in range(k):
        v = S[i]
        for e in range(off[v], off[v + 1]):
            j = idx[adj[e]]
            if j >= 0 and j < i:
                nb[i, nbc[i]] = j
                nbc[i] += 1
    cap = 1024
    out = np.empty((cap, k), np.int8)
    cnt = 0
    cur = np.zeros(k, np.int8)
    used = np.zeros(k + 1, np.int8)  # max colour used among prefix, +1
    c = np.full(k, -1, np.int8)
    i = 0
    while i >= 0:
        c[i] += 1
        limit = 3
        mx = used[i]
        if mx + 1 < limit:
            limit = mx + 1
        if c[i] >= limit:
            c[i] = -1
            i -= 1
            continue
        ok = True
        for t in range(nbc[i]):
            if cur[nb[i, t]] == c[i]:
                ok = False
                break
        if not ok:
            continue
        cur[i] = c[i]
        nm = mx
        if c[i] + 1 > nm:
            nm = c[i] + 1
        used[i + 1] = nm
        if i == k - 1:
            if cnt == cap:
                cap *= 2
                o2 = np.empty((cap, k), np.int8)
                o2[:cnt] = out[:cnt]
                out = o2
            out[cnt] = cur
            cnt += 1
        else:
            i += 1
    return out[:cnt].copy()


@njit(cache=True)
def extension_mask(off, adj, S, P, eu, ev):
    """Boolean per row of ``P``: does it extend (ignoring edge eu-ev)?"""
    n = off.shape[0] - 1
    dom, assigned, free, stk_v, stk_rem, trail_v, trail_m, tmark = _scratch(n)
    color = np.full(n, -1, np.int8)
    res = np.zeros(P.shape[0], np.uint8)
    for r in range(P.shape[0]):
        for i in range(S.shape[0]):
            color[S[i]] = P[r, i]
        if extends(off, adj, color, eu, ev, dom, assigned, free, stk_v, stk_rem, trail_v, trail_m, tmark):
            res[r] = 1
    return res


@njit(cache=True)
def criticality(off, adj, S, P, ext, eu_arr, ev_arr, want_strong):
    """Per-edge rescue test.

    For each edge ``(eu_arr[j], ev_arr[j])`` decide whether some row of ``P``
    outside ``ext`` extends once that edge is removed.  Stops at the first
    edge with no rescuing precolouring unless ``want_strong`` is set, in
    which case the full rescue matrix is needed and every pair is tested.
    Returns (per-edge flags, index of a precolouring rescuing every edge or -1).
    """
    n = off.shape[0] - 1
    dom, assigned, free, stk_v, stk_rem, trail_v, trail_m, tmark = _scratch(n)
    color = np.full(n, -1, np.int8)
    ne = eu_arr.shape[0]
    bad = np.empty(P.shape[0], I32)
    nb = 0
    for r in range(P.shape[0]):
        if ext[r] == 0:
            bad[nb] = r
            nb += 1
    flags = np.zeros(ne, np.uint8)
    if not want_strong:
        # move-to-front list of precolourings that rescued some edge
        order = bad[:nb].copy()
        for j in range(ne):
            for t in range(nb):
                r = order[t]
                for i in range(S.shape[0]):
                    color[S[i]] = P[r, i]
                if extends(off, adj, color, eu_arr[j], ev_arr[j], dom, assigned, free,
                           stk_v, stk_rem, trail_v, trail_m, tmark):
                    flags[j] = 1
                    # move to front
                    for q in range(t, 0, -1):
                        order[q] = order[q - 1]
                    order[0] = r
                    break
            if flags[j] == 0:
                return flags, -1
        return flags, -1
    for t in range(nb):
        r = bad[t]
        for i in range(S.shape[0]):
            color[S[i]] = P[r, i]
        all_ok = True
        for j in range(ne):
            if extends(off, adj, color, eu_arr[j], ev_arr[j], dom, assigned, free,
                       stk_v, stk_rem, trail_v, trail_m, tmark):
                flags[j] = 1
            else:
                all_ok = False
                break
        if all_ok:
            for j in range(ne):
                flags[j] = 1
            return flags, r
    # no single rescuer; still fill the per-edge flags
    for j in range(ne):
        if flags[j]:
            continue
        for t in range(nb):
            r = bad[t]
            for i in range(S.shape[0]):
                color[S[i]] = P[r, i]
            if extends(off, adj, color, eu_arr[j], ev_arr[j], dom, assigned, free,
                       stk_v, stk_rem, trail_v, trail_m, tmark):
                flags[j] = 1
                break
    return flags, -1


# --------------------------------------------------------------------------
# disk helpers
# --------------------------------------------------------------------------


@njit(cache=True)
def disk_code(off, adj, root, reflect):
    """Canonical code of a disk graph whose outer face is left of ``root``."""
    rev, ok = reverse_darts(off, adj)
    darts = face_darts(off, adj, root)
    L = darts.shape[0]
    m = 2 * L if reflect else L
    starts = np.empty(m, I32)
    dirs = np.empty(m, I32)
    for i in range(L):
        starts[i] = darts[i]
        dirs[i] = 1
        if reflect:
            starts[L + i] = rev[darts[i]]
            dirs[L + i] = -1
    code, win = canon_code(off, adj, starts, dirs, np.zeros((0, 0), I32))
    return code


@njit(cache=True)
def min_shortcut_gap(off, adj, root, tmax):
    """Smallest (t - boundary distance) over t-chords with t <= tmax.

    A negative value means a shortcut exists.  Returns a large value when
    there is no t-chord at all.
    """
    n = off.shape[0] - 1
    W = walk_vertices(off, adj, root)
    L = W.shape[0]
    pos = np.full(n, -1, I32)
    for i in range(L):
        pos[W[i]] = i
    best = 1 << 20
    dist = np.full(n, -1, I32)
    q = np.empty(n, I32)
    for ia in range(L):
        a = W[ia]
        for v in range(n):
            dist[v] = -1
        dist[a] = 0
        h = 0
        t = 1
        q[0] = a
        while h < t:
            v = q[h]
            h += 1
            if dist[v] >= tmax:
                continue
            for k in range(off[v], off[v + 1]):
                w = adj[k]
                if pos[w] >= 0:
                    if w == a or dist[w] == 0:
                        continue
                    # one-edge boundary steps are not chords
                    dd = (pos[w] - ia) % L
                    if v == a and (dd == 1 or dd == L - 1):
                        continue
                    d = (pos[w] - ia) % L
                    if L - d < d:
                        d = L - d
                    gap = dist[v] + 1 - d
                    if gap < best:
                        best = gap
                elif dist[w] < 0:
                    dist[w] = dist[v] + 1
                    q[t] = w
                    t += 1
    return best


@njit(cache=True)
def max_internal_face(off, adj, root):
    lab, f, ok = face_labels(off, adj)
    cnt = np.zeros(f, I32)
    for d in range(adj.shape[0]):
        cnt[lab[d]] += 1
    best = 0
    for x in range(f):
        if x != lab[root] and cnt[x] > best:
            best = cnt[x]
    return best


@njit(cache=True)
def paste_face(off, adj, Wf, hoff, hadj):
    """Paste a rooted disk graph into the face walked by ``Wf``.

    ``Wf`` lists the face's vertices in walk order (face on the left).  The
    pasted graph's outer walk from its root is identified with ``Wf``
    reversed: ``Wf[k]`` with ``Wh[-k]``.  Vertex ids of the host graph are
    preserved.  Returns (status, off, adj).
    """
    n = off.shape[0] - 1
    L = Wf.shape[0]
    Wh = walk_vertices(hoff, hadj, hoff[0])
    if Wh.shape[0] != L:
        return 3, off, adj
    o, a = disjoint_union(off, adj, hoff, hadj)
    xs = np.empty(L, I32)
    xa = np.empty(L, I32)
    ys = np.empty(L, I32)
    ya = np.empty(L, I32)
    for k in range(L):
        xs[k] = Wf[k]
        xa[k] = Wf[(k - 1 + L) % L]
        ys[k] = Wh[(L - k) % L] + n
        ya[k] = Wh[(2 * L - k - 1) % L] + n
    st, o2, a2, newid = zip_corners(o, a, xs, xa, ys, ya)
    return st, o2, a2


@njit(cache=True)
def disk_critical(off, adj, root, P):
    """Criticality of a disk graph with respect to its outer cycle.

    ``P`` holds the normalised proper colourings of a cycle of the outer
    length, indexed along the outer walk from ``root``.
    """
    n = off.shape[0] - 1
    W = walk_vertices(off, adj, root)
    L = W.shape[0]
    onb = np.zeros(n, np.uint8)
    for i in range(L):
        onb[W[i]] = 1
    for v in range(n):
        if onb[v] == 0 and off[v + 1] - off[v] <= 2:
            return False
    ne = adj.shape[0] // 2 - L
    if ne == 0:
        return True
    eu = np.empty(ne, I32)
    ev = np.empty(ne, I32)
    c = 0
    posb = np.full(n, -1, I32)
    for i in range(L):
        posb[W[i]] = i
    for v in range(n):
        for k in range(off[v], off[v + 1]):
            w = adj[k]
            if w <= v:
                continue
            if posb[v] >= 0 and posb[w] >= 0:
                d = (posb[v] - posb[w]) % L
                if d == 1 or d == L - 1:
                    if L > 2:
                        continue
            eu[c] = v
            ev[c] = w
            c += 1
    ext = extension_mask(off, adj, W, P, -1, -1)
    flags, w = criticality(off, adj, W, P, ext, eu[:c], ev[:c], False)
    for j in range(c):
        if flags[j] == 0:
            return False
    return True
