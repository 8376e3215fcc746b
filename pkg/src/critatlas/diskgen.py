"""Generation of girth-5 plane graphs that are critical for a precoloured outer cycle.

Catalog members are kept in rooted canonical form: a pair ``(off, adj)`` in
which the outer face lies to the left of the dart from vertex 0 to its first
rotation neighbour.  ``K[i]`` maps canonical keys to members with outer
length ``i``.
"""

from __future__ import annotations

import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import _kernels as K
from .embed import (
    Mark,
    MarkedPlaneGraph,
    PlaneGraph,
    disjoint_union,
    identify_path_pair,
    marked_cycle,
    subdivide,
)

log = logging.getLogger(__name__)

MAX_T = 4


@dataclass(frozen=True)
class GenerationRecord:
    """Which operation produced a graph, with its parameters."""

    op: str
    params: tuple = ()

    def __str__(self):
        return self.op + ("(" + ",".join(map(str, self.params)) + ")" if self.params else "")


@dataclass
class Member:
    key: bytes
    off: np.ndarray
    adj: np.ndarray
    provenance: GenerationRecord
    derivations: int = 1

    @property
    def length(self) -> int:
        return len(K.walk_vertices(self.off, self.adj, self.off[0]))

    @property
    def nontrivial(self) -> bool:
        """G differs from its outer cycle (chords count)."""
        return len(self.adj) // 2 != self.length

    def marked(self) -> MarkedPlaneGraph:
        g = PlaneGraph.from_arrays(self.off, self.adj, check=False)
        return MarkedPlaneGraph(g, [Mark("B", 0, int(self.adj[self.off[0]]))], check=False)


@dataclass
class DiskCatalog:
    """Catalogs K_5 .. K_max, each a dict from canonical key to member."""

    reflect: bool = True
    K: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    def members(self, i: int) -> list[Member]:
        return [self.K[i][k] for k in sorted(self.K[i])]

    def graphs(self, i: int) -> list[MarkedPlaneGraph]:
        return [m.marked() for m in self.members(i)]

    def sizes(self) -> dict:
        return {i: len(v) for i, v in sorted(self.K.items())}

    @property
    def max_length(self) -> int:
        return max(self.K) if self.K else 4


# --------------------------------------------------------------------------
# rooted forms and keys
# --------------------------------------------------------------------------


def _code_key(code: np.ndarray) -> bytes:
    return b"D" + code.astype(np.int16).tobytes()


def root_of(mg: MarkedPlaneGraph) -> tuple[np.ndarray, np.ndarray, int]:
    g = mg.graph
    b = mg.mark("B")
    return g.off, g.adj, g.dart(b.u, b.v)


def canonical_member(off, adj, root, reflect=True, prov=GenerationRecord("input")) -> Member:
    code = K.disk_code(off, adj, root, reflect)
    o, a = K.decode(code)
    return Member(_code_key(code), o, a, prov)


_FORMS: dict = {}


def rooted_forms(m: Member, both: bool) -> list[tuple[np.ndarray, np.ndarray]]:
    """Distinct rootings of a member at its outer face (up to automorphism).

    With ``both`` mirrored rootings are included as well.
    """
    ck = (m.key, both)
    hit = _FORMS.get(ck)
    if hit is not None:
        return hit
    off, adj = m.off, m.adj
    rev, _ = K.reverse_darts(off, adj)
    darts = K.face_darts(off, adj, off[0])
    seen = set()
    out = []
    cand = [(int(d), 1) for d in darts]
    if both:
        cand += [(int(rev[d]), -1) for d in darts]
    for d, s in cand:
        code, _ = K.rooted_code(off, adj, d, s)
        b = code.tobytes()
        if b not in seen:
            seen.add(b)
            out.append(K.decode(code))
    _FORMS[ck] = out
    return out


# --------------------------------------------------------------------------
# operations on marked graphs
# --------------------------------------------------------------------------


def _outer_walk(mg: MarkedPlaneGraph) -> list[int]:
    return list(mg.face("B").vertices)


def _orient_path(walk: list[int], P: list[int]) -> tuple[list[int], bool]:
    """Return P along the walk direction and whether it had to be reversed."""
    L = len(walk)
    pos = {v: i for i, v in enumerate(walk)}
    if any(v not in pos for v in P):
        raise ValueError("path is not on the outer face")
    fwd = all((pos[P[k + 1]] - pos[P[k]]) % L == 1 for k in range(len(P) - 1))
    if fwd:
        return list(P), False
    bwd = all((pos[P[k]] - pos[P[k + 1]]) % L == 1 for k in range(len(P) - 1))
    if not bwd:
        raise ValueError("path is not a subpath of the outer face")
    return list(P[::-1]), True


def _remark(g: PlaneGraph, u: int, v: int) -> MarkedPlaneGraph:
    return MarkedPlaneGraph(g, [Mark("B", u, v)], check=False)


def op_U(G1: MarkedPlaneGraph, P1, G2: MarkedPlaneGraph, P2) -> MarkedPlaneGraph:
    """Glue G1 and G2 by identifying P1[k] with P2[k] along their outer faces.

    G2 is mirrored when needed so that the two paths run in opposite
    directions along the outer walks, which is what a plane gluing requires.
    """
    if len(P1) != len(P2) or len(P1) < 2:
        raise ValueError("paths must have equal positive length")
    w1 = _outer_walk(G1)
    P1o, rev1 = _orient_path(w1, list(P1))
    q = list(P2) if rev1 else list(P2[::-1])
    if not _is_along(_outer_walk(G2), q):
        b = G2.mark("B")
        G2 = MarkedPlaneGraph(G2.graph.mirror(), [Mark("B", b.v, b.u)], check=False)
        if not _is_along(_outer_walk(G2), q):
            raise ValueError("second path is not a subpath of the outer face")
    n1 = G1.graph.n
    u = disjoint_union(G1.graph, G2.graph)
    h, newid = identify_path_pair(u, P1o, [x + n1 for x in q])
    pred = w1[(w1.index(P1o[0]) - 1) % len(w1)]
    return _remark(h, int(newid[pred]), int(newid[P1o[0]]))


def _is_along(walk, P) -> bool:
    L = len(walk)
    pos = {v: i for i, v in enumerate(walk)}
    return all(v in pos for v in P) and \
        all((pos[P[k + 1]] - pos[P[k]]) % L == 1 for k in range(len(P) - 1))


def op_S(G: MarkedPlaneGraph, e) -> MarkedPlaneGraph:
    """Subdivide the outer edge ``e``."""
    u, v = e
    b = G.mark("B")
    h = subdivide(G.graph, u, v)
    x = G.graph.n
    bu, bv = b.u, b.v
    if {bu, bv} == {u, v}:
        bv = x if bu == u or bu == v else bv
    return _remark(h, bu, bv)


def op_J(G: MarkedPlaneGraph, P) -> MarkedPlaneGraph:
    """Replace the outer path v0 w1 w2 w3 v4 by v0 v1 v2 v3 v4 with v2 ~ w2."""
    v0, w1, w2, w3, v4 = _orient_path(_outer_walk(G), list(P))[0]
    rot = [list(r) for r in G.graph.rotations]
    n = len(rot)
    a, b, c = n, n + 1, n + 2
    rot[v0].insert(rot[v0].index(w1), a)
    rot[v4].insert(rot[v4].index(w3) + 1, c)
    rot[w2].insert(rot[w2].index(w1) + 1, b)
    rot += [[v0, b], [w2, a, c], [b, v4]]
    return _remark(PlaneGraph(rot, check=False), v0, a)


def interior_neighbours(G: MarkedPlaneGraph, P) -> list[int]:
    """y_1 = u_1, ..., y_k = u_3 around u_2, away from the outer face."""
    u0, u1, u2, u3, u4 = _orient_path(_outer_walk(G), list(P))[0]
    r = G.graph.rotation(u2)
    d = len(r)
    i = r.index(u1)
    ys = [r[(i - s) % d] for s in range(d)]
    assert ys[-1] == u3
    return ys


def op_X(G: MarkedPlaneGraph, P, e, j: int) -> MarkedPlaneGraph:
    """Split the middle vertex of the outer path P at edge ``e`` and reroute.

    ``e`` is an edge u2 y_i with 2 <= i <= k in the order of
    :func:`interior_neighbours`; u2 keeps y_1..y_{i-1}, a new vertex takes
    y_i..y_k, and a new outer path u0 x1 .. x_{4+j} u4 is added with
    x2 ~ u2 and x_{3+j} ~ the new vertex.
    """
    if j not in (0, 1):
        raise ValueError("j must be 0 or 1")
    u0, u1, u2, u3, u4 = _orient_path(_outer_walk(G), list(P))[0]
    ys = interior_neighbours(G, [u0, u1, u2, u3, u4])
    y = e[1] if e[0] == u2 else e[0]
    if u2 not in e or y not in ys:
        raise ValueError("edge must be incident with the middle vertex")
    i = ys.index(y)  # zero-based: y_{i+1}
    if i == 0:
        raise ValueError("edge must differ from u1 u2")
    rot = [list(r) for r in G.graph.rotations]
    n = len(rot)
    u2b = n
    xs = list(range(n + 1, n + 5 + j + 1 - 1))  # x1 .. x_{4+j}
    x = {k + 1: xs[k] for k in range(4 + j)}
    first = ys[:i]   # y_1 .. y_i-1 (stay at u2)
    second = ys[i:]  # y_i .. y_k (move to u2'')
    rot[u2] = first[::-1] + [x[2]]
    rot_u2b = second[::-1] + [x[3 + j]]
    for w in second:
        rot[w][rot[w].index(u2)] = u2b
    rot[u0].insert(rot[u0].index(u1), x[1])
    rot[u4].insert(rot[u4].index(u3) + 1, x[4 + j])
    rot.append(rot_u2b)
    extra = {}
    extra[x[1]] = [u0, x[2]]
    extra[x[2]] = [u2, x[1], x[3]]
    if j == 1:
        extra[x[3]] = [x[2], x[4]]
    extra[x[3 + j]] = [x[4 + j], u2b, x[2 + j]]
    extra[x[4 + j]] = [x[3 + j], u4]
    for k in range(4 + j):
        rot.append(extra[x[k + 1]])
    return _remark(PlaneGraph(rot, check=False), u0, x[1])


# --------------------------------------------------------------------------
# array-level versions used by the generator
# --------------------------------------------------------------------------


def _rot_lists(off, adj):
    return [list(adj[off[v]:off[v + 1]]) for v in range(len(off) - 1)]


def _arrays(rot):
    off = np.zeros(len(rot) + 1, np.int32)
    for i, r in enumerate(rot):
        off[i + 1] = off[i] + len(r)
    adj = np.fromiter((w for r in rot for w in r), np.int32, count=int(off[-1]))
    return off, adj


def _j_form(off, adj):
    """J applied at the path W[0..4] of a rooted form."""
    W = K.walk_vertices(off, adj, off[0])
    rot = _rot_lists(off, adj)
    v0, w1, w2, w3, v4 = (int(v) for v in W[:5])
    n = len(rot)
    a, b, c = n, n + 1, n + 2
    rot[v0].insert(rot[v0].index(w1), a)
    rot[v4].insert(rot[v4].index(w3) + 1, c)
    rot[w2].insert(rot[w2].index(w1) + 1, b)
    rot += [[v0, b], [w2, a, c], [b, v4]]
    o, ad = _arrays(rot)
    return o, ad, int(o[v0] + rot[v0].index(a))


def _x_forms(off, adj, j):
    """All X(G, W[0..4], f_i, j) for a rooted form; yields (off, adj, root)."""
    W = K.walk_vertices(off, adj, off[0])
    u0, u1, u2, u3, u4 = (int(v) for v in W[:5])
    base = _rot_lists(off, adj)
    r = base[u2]
    d = len(r)
    i1 = r.index(u1)
    ys = [int(r[(i1 - s) % d]) for s in range(d)]
    n = len(base)
    for i in range(1, len(ys)):
        rot = [list(q) for q in base]
        u2b = n
        x = {k + 1: n + 1 + k for k in range(4 + j)}
        first, second = ys[:i], ys[i:]
        rot[u2] = first[::-1] + [x[2]]
        for w in second:
            rot[w][rot[w].index(u2)] = u2b
        rot[u0].insert(rot[u0].index(u1), x[1])
        rot[u4].insert(rot[u4].index(u3) + 1, x[4 + j])
        rot.append(second[::-1] + [x[3 + j]])
        rot.append([u0, x[2]])
        rot.append([u2, x[1], x[3]])
        if j == 1:
            rot.append([x[2], x[4]])
        rot.append([x[4 + j], u2b, x[2 + j]])
        rot.append([x[3 + j], u4])
        o, a = _arrays(rot)
        yield o, a, int(o[u0] + rot[u0].index(x[1])), i + 1


def _precolorings(ell: int) -> np.ndarray:
    hit = _PRE.get(ell)
    if hit is None:
        off = np.zeros(ell + 1, np.int32)
        adj = np.empty(2 * ell, np.int32)
        for v in range(ell):
            off[v + 1] = 2 * (v + 1)
            adj[2 * v] = (v + 1) % ell
            adj[2 * v + 1] = (v - 1) % ell
        hit = K.proper_precolorings(off, adj, np.arange(ell, dtype=np.int32))
        _PRE[ell] = hit
    return hit


_PRE: dict = {}


def critical_form(off, adj, root) -> bool:
    ell = len(K.walk_vertices(off, adj, root))
    return bool(K.disk_critical(off, adj, root, _precolorings(ell)))


# --------------------------------------------------------------------------
# catalog construction
# --------------------------------------------------------------------------


def base_catalogs(reflect: bool = True) -> DiskCatalog:
    """K_5, K_6, K_7: only the bare cycles (a nontrivial member needs length >= 8)."""
    cat = DiskCatalog(reflect=reflect)
    for i in (5, 6, 7):
        off, adj, root = root_of(marked_cycle(i))
        m = canonical_member(off, adj, root, reflect, GenerationRecord("cycle", (i,)))
        cat.K[i] = {m.key: m}
    return cat


class _Pool:
    """Candidates for one outer length, deduplicated by canonical key."""

    def __init__(self, ell, reflect, catalog_prefilter=True):
        self.ell = ell
        self.reflect = reflect
        self.seen: dict = {}
        self.new: dict = {}
        self.funnel = Counter()

    def offer(self, off, adj, root, prov, source):
        f = self.funnel
        f[source + ":generated"] += 1
        if K.has_short_cycle(off, adj, 4):
            f[source + ":girth"] += 1
            return
        code = K.disk_code(off, adj, root, self.reflect)
        key = _code_key(code)
        hit = self.seen.get(key)
        if hit is not None:
            if hit is not False:
                hit.derivations += 1
            f[source + ":duplicate"] += 1
            return
        o, a = K.decode(code)
        if len(a) // 2 > len(K.walk_vertices(o, a, o[0])):
            # nontrivial members have every internal face shorter than ell - 2
            if K.max_internal_face(o, a, o[0]) > self.ell - 3:
                self.seen[key] = False
                f[source + ":face-bound"] += 1
                return
        if not K.disk_critical(o, a, o[0], _precolorings(self.ell)):
            self.seen[key] = False
            f[source + ":not-critical"] += 1
            return
        m = Member(key, o, a, prov)
        self.seen[key] = m
        self.new[key] = m
        f[source + ":kept"] += 1

    def take_new(self):
        out = self.new
        self.new = {}
        return out


def _candidates_U(cat: DiskCatalog, i: int, pool: _Pool):
    both = cat.reflect
    for t in range(1, MAX_T + 1):
        for i1 in range(5, i):
            i2 = i + 2 * t - i1
            if i2 < i1 or i2 > i - 1:
                continue
            for m1 in cat.members(i1):
                f1 = rooted_forms(m1, False)
                for m2 in cat.members(i2):
                    f2 = rooted_forms(m2, both)
                    for a1, (o1, ad1) in enumerate(f1):
                        for a2, (o2, ad2) in enumerate(f2):
                            st, o, a, root = K.glue_paths(o1, ad1, o2, ad2, t)
                            if st != 0:
                                pool.funnel["U:rejected"] += 1
                                continue
                            pool.offer(o, a, root, GenerationRecord(
                                "U", (i1, i2, t, m1.key.hex()[:12], m2.key.hex()[:12], a1, a2)), "U")


def _candidates_S(cat: DiskCatalog, i: int, pool: _Pool):
    for m in cat.members(i - 1):
        for a1, (o, ad) in enumerate(rooted_forms(m, False)):
            rot = _rot_lists(o, ad)
            v = int(ad[o[0]])
            x = len(rot)
            rot[0][rot[0].index(v)] = x
            rot[v][rot[v].index(0)] = x
            rot.append([v, 0])
            oo, aa = _arrays(rot)
            pool.offer(oo, aa, int(oo[0] + rot[0].index(x)), GenerationRecord("S", (m.key.hex()[:12], a1)), "S")


def _x_admissible(off, adj, root) -> bool:
    """Pruning used for the X branch: no shortcut of length <= 4."""
    return K.min_shortcut_gap(off, adj, root, 4) >= 0


def _paste_all(off, adj, root, cat: DiskCatalog, ell: int, prune_shortcuts: bool):
    """Every graph obtained by pasting catalog members into internal faces."""
    lab, nf, ok = K.face_labels(off, adj)
    outer = lab[root]
    rev, _ = K.reverse_darts(off, adj)
    faces = []
    seen = set()
    for d in range(len(adj)):
        f = lab[d]
        if f == outer or f in seen:
            continue
        seen.add(f)
        Wf = K.walk_vertices(off, adj, d)
        if len(Wf) >= 8:
            faces.append(Wf)
    # vertex ids of the host never change, so the root is found again by ends
    tl = K.tails(off)
    ru, rv = int(tl[root]), int(adj[root])
    choices = []
    for Wf in faces:
        L = len(Wf)
        if L > cat.max_length:
            return
        opts = [None]
        for m in cat.members(L):
            if m.nontrivial:
                opts.extend(rooted_forms(m, cat.reflect))
        # a face longer than ell - 3 must not stay empty
        if L > ell - 3:
            opts = opts[1:]
        choices.append(opts)

    def rec(k, o, a):
        if k == len(faces):
            yield o, a, int(o[ru] + K.rot_pos(o, a, ru, rv))
            return
        for h in choices[k]:
            if h is None:
                yield from rec(k + 1, o, a)
                continue
            st, o2, a2 = K.paste_face(o, a, faces[k], h[0], h[1])
            if st != 0:
                continue
            if K.has_short_cycle(o2, a2, 4):
                continue
            r2 = int(o2[ru] + K.rot_pos(o2, a2, ru, rv))
            if prune_shortcuts and K.min_shortcut_gap(o2, a2, r2, 4) < 0:
                continue
            yield from rec(k + 1, o2, a2)

    yield from rec(0, off, adj)


def _adjacent_deg2(off, adj) -> bool:
    deg = np.diff(off)
    for v in range(len(off) - 1):
        if deg[v] == 2:
            for w in adj[off[v]:off[v + 1]]:
                if deg[w] == 2:
                    return True
    return False


def _candidates_X(cat: DiskCatalog, i: int, pool: _Pool, pruned: bool):
    for j in (0, 1):
        src = i - j - 1
        if src not in cat.K:
            continue
        for m in cat.members(src):
            if not m.nontrivial:
                continue
            for a1, (o, ad) in enumerate(rooted_forms(m, False)):
                for xo, xa, xr, fi in _x_forms(o, ad, j):
                    if K.has_short_cycle(xo, xa, 4):
                        pool.funnel["X:girth"] += 1
                        continue
                    if pruned and not _x_admissible(xo, xa, xr):
                        pool.funnel["X:shortcut"] += 1
                        continue
                    for po, pa, pr in _paste_all(xo, xa, xr, cat, i, pruned):
                        if pruned and _adjacent_deg2(po, pa):
                            pool.funnel["X:adjacent-deg2"] += 1
                            continue
                        pool.offer(po, pa, pr, GenerationRecord("X", (m.key.hex()[:12], a1, fi, j)), "X")


def j_closure_pool(pool: _Pool, start: dict) -> dict:
    """Iterate S_{k+1} = T(J'(S_k)) from the critical set ``start``."""
    result = dict(start)
    level = start
    depth = 0
    while level:
        depth += 1
        for m in level.values():
            for a1, (o, ad) in enumerate(rooted_forms(m, False)):
                jo, ja, jr = _j_form(o, ad)
                pool.offer(jo, ja, jr, GenerationRecord("J", (m.key.hex()[:12], a1)), "J")
        level = pool.take_new()
        result.update(level)
    pool.funnel["J:depth"] = depth
    return result


def j_closure(S: Iterable[MarkedPlaneGraph], reflect: bool = True) -> list[MarkedPlaneGraph]:
    """J(S): the critical members of S and everything reachable by J from them."""
    S = list(S)
    if not S:
        return []
    ell = S[0].face("B").length
    pool = _Pool(ell, reflect)
    for mg in S:
        off, adj, root = root_of(mg)
        pool.offer(off, adj, root, GenerationRecord("input"), "in")
    start = pool.take_new()
    res = j_closure_pool(pool, start)
    return [res[k].marked() for k in sorted(res)]


def build_catalog(i: int, cat: DiskCatalog, pruned: bool = True) -> dict:
    """Compute K_i from K_5 .. K_{i-1} and store it in ``cat``.

    With ``pruned`` the X branch only keeps graphs without shortcuts of
    length at most 4 and without adjacent degree-2 vertices, and X is only
    applied to nontrivial members; completeness is preserved because every
    other critical graph is produced by U, S or J.
    """
    if i <= 7:
        raise ValueError("lengths 5..7 come from base_catalogs")
    missing = [k for k in range(5, i) if k not in cat.K]
    if missing:
        raise ValueError(f"catalogs missing for lengths {missing}")
    t0 = time.time()
    pool = _Pool(i, cat.reflect)
    c = marked_cycle(i)
    pool.offer(*root_of(c), GenerationRecord("cycle", (i,)), "C")
    _candidates_U(cat, i, pool)
    log.info("K_%d: U done (%d kept) %.1fs", i, len(pool.new), time.time() - t0)
    _candidates_S(cat, i, pool)
    log.info("K_%d: S done (%d kept) %.1fs", i, len(pool.new), time.time() - t0)
    _candidates_X(cat, i, pool, pruned)
    log.info("K_%d: X done (%d kept) %.1fs", i, len(pool.new), time.time() - t0)
    start = pool.take_new()
    full = j_closure_pool(pool, start)
    log.info("K_%d: J closure done (%d members) %.1fs", i, len(full), time.time() - t0)
    cat.K[i] = full
    pool.funnel["seconds"] = round(time.time() - t0, 1)
    cat.stats[i] = dict(pool.funnel)
    return full


def build_all(max_len: int = 16, reflect: bool = True, cat: DiskCatalog | None = None,
              pruned: bool = True, progress=None) -> DiskCatalog:
    if cat is None:
        cat = base_catalogs(reflect)
    for i, fam in base_catalogs(cat.reflect).K.items():
        cat.K.setdefault(i, fam)
    for i in range(8, max_len + 1):
        if i in cat.K:
            continue
        build_catalog(i, cat, pruned)
        if progress:
            progress(i, cat)
    return cat


# --------------------------------------------------------------------------
# summaries and persistence
# --------------------------------------------------------------------------


def member_meta(m: Member) -> dict:
    """Structural columns stored next to each catalog member."""
    off, adj = m.off, m.adj
    root = int(off[0])
    return {
        "length": m.length,
        "n": len(off) - 1,
        "m": len(adj) // 2,
        "nontrivial": m.nontrivial,
        "shortcut2": bool(K.min_shortcut_gap(off, adj, root, 2) < 0),
        "shortcut4": bool(K.min_shortcut_gap(off, adj, root, 4) < 0),
        "adjacent_deg2": _adjacent_deg2(off, adj),
        "max_face": int(K.max_internal_face(off, adj, root)),
        "provenance": str(m.provenance),
        "derivations": m.derivations,
    }


def filtered_count(cat: DiskCatalog, i: int, tmax: int, adjacent_deg2: bool) -> int:
    """Nontrivial members of K_i without shortcuts of length <= tmax.

    With ``adjacent_deg2`` members with two adjacent degree-2 vertices are
    dropped as well.
    """
    n = 0
    for m in cat.K[i].values():
        if not m.nontrivial:
            continue
        if K.min_shortcut_gap(m.off, m.adj, int(m.off[0]), tmax) < 0:
            continue
        if adjacent_deg2 and _adjacent_deg2(m.off, m.adj):
            continue
        n += 1
    return n


def shortcut_free(cat: DiskCatalog, lengths, tmax: int = MAX_T) -> dict:
    """Nontrivial members without a shortcut of length <= tmax, per length."""
    out = {}
    for i in lengths:
        out[i] = [m for m in cat.members(i) if m.nontrivial
                  and K.min_shortcut_gap(m.off, m.adj, int(m.off[0]), tmax) >= 0]
    return out


def is_two_connected(m: Member) -> bool:
    """A connected plane graph is 2-connected iff every face is bounded by a cycle."""
    return all(f.is_cycle() for f in m.marked().graph.faces())


def bound_violations(cat: DiskCatalog, lengths, min_length: int = 10) -> list:
    """Members breaking |E| <= 18 l - 160 or (longest internal face) <= l - 3."""
    bad = []
    for i in lengths:
        if i < min_length:
            continue
        for m in cat.members(i):
            if not m.nontrivial:
                continue
            edges = len(m.adj) // 2
            face = int(K.max_internal_face(m.off, m.adj, int(m.off[0])))
            if edges > 18 * i - 160 or face > i - 3:
                bad.append((i, m.key, edges, face))
    return bad


META_COLUMNS = ["length", "n", "m", "nontrivial", "shortcut2", "shortcut4",
                "adjacent_deg2", "max_face", "provenance", "derivations"]


def save_catalog(cat: DiskCatalog, store, lengths=None) -> None:
    for i in lengths or sorted(cat.K):
        fam = f"disk/K{i}"
        store.families[fam] = {}
        for m in cat.members(i):
            store.put(fam, m.marked(), None, member_meta(m))
        store.save(fam, META_COLUMNS)


def load_catalog(store, max_len: int = 16, cat: DiskCatalog | None = None) -> DiskCatalog:
    """Read K_5 .. K_max_len from ``store``; lengths that are missing are skipped.

    K_5 .. K_7 hold only the bare cycles and are filled in when not stored.
    """
    if cat is None:
        cat = DiskCatalog(reflect=store.reflect)
    for i in range(5, max_len + 1):
        fam = f"disk/K{i}"
        if i in cat.K or fam not in store:
            continue
        members = {}
        for _, e in store.entries(fam):
            off, adj, root = root_of(e.graph)
            m = canonical_member(off, adj, root, cat.reflect,
                                 GenerationRecord(e.meta.get("provenance", "stored")))
            m.derivations = int(e.meta.get("derivations", 1) or 1)
            members[m.key] = m
        cat.K[i] = members
    base = base_catalogs(cat.reflect)
    for i in (5, 6, 7):
        cat.K.setdefault(i, base.K[i])
    return cat
