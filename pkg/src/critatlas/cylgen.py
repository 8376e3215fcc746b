"""Plane graphs critical for two precoloured short faces ("cylinder graphs").

A cylinder graph is a MarkedPlaneGraph with marks ``C1`` and ``C2``, each a
face of length 3 or 4.  Level ``k`` of a :class:`CylinderCatalog` holds the
critical graphs with exactly ``k`` further cycles of length at most 4, every
one of which separates C1 from C2.  Level 0 is obtained from the disk
catalogs by identifying two opposite segments of the outer face; higher
levels come from gluing a level-0 graph onto a boundary of a level k-1 graph.
"""

from __future__ import annotations

import logging
import random
import re
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .color import c_pair, is_critical
from .embed import (
    EmbeddingError,
    Mark,
    MarkedPlaneGraph,
    PlaneGraph,
    WouldCreateParallel,
    canonical_key,
    disjoint_union,
    from_key,
    girth_ok,
    identify_path_pair,
    mark_distance,
    short_cycles,
    suppress_degree2,
    zip_corners,
)

log = logging.getLogger(__name__)

ROLES = ("C1", "C2")


class GirthViolation(EmbeddingError):
    """An unmarked cycle of length at most 4 (or a parallel edge) would appear."""


class DegenerateBoundary(EmbeddingError):
    """A boundary would not be a cycle of length 3 or 4."""


class AmbiguousName(LookupError):
    pass


# --------------------------------------------------------------------------
# small helpers
# --------------------------------------------------------------------------


def _other(role: str) -> str:
    return "C2" if role == "C1" else "C1"


def mirror_marked(mg: MarkedPlaneGraph) -> MarkedPlaneGraph:
    """Mirror image; a face left of u->v becomes the face left of v->u."""
    marks = [mk if mk.is_vertex else Mark(mk.role, mk.v, mk.u) for mk in mg.marks]
    return MarkedPlaneGraph(mg.graph.mirror(), marks, check=False)


def _remap_mark(mk: Mark, newid, shift: int = 0) -> Mark:
    if mk.is_vertex:
        return Mark(mk.role, int(newid[mk.u + shift]))
    return Mark(mk.role, int(newid[mk.u + shift]), int(newid[mk.v + shift]))


def _cycle_edges(cyc) -> frozenset:
    k = len(cyc)
    return frozenset((min(cyc[i], cyc[(i + 1) % k]), max(cyc[i], cyc[(i + 1) % k])) for i in range(k))


def _face_sides(mg: MarkedPlaneGraph, cut: frozenset):
    """Face labels and the connected side of every face once ``cut`` is removed."""
    g = mg.graph
    lab, nf, _ = K.face_labels(g.off, g.adj)
    rev = g.rev
    tl = K.tails(g.off)
    parent = list(range(nf))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d in range(len(g.adj)):
        u, v = int(tl[d]), int(g.adj[d])
        if (min(u, v), max(u, v)) in cut:
            continue
        a, b = find(lab[d]), find(lab[rev[d]])
        if a != b:
            parent[a] = b
    return lab, [find(x) for x in range(nf)]


def _mark_faces(mg: MarkedPlaneGraph, lab) -> dict:
    g = mg.graph
    out = {}
    for mk in mg.marks:
        if not mk.is_vertex:
            out[mk.role] = {int(lab[g.dart(mk.u, mk.v)])}
        else:
            out[mk.role] = {int(lab[d]) for d in range(g.off[mk.u], g.off[mk.u + 1])}
    return out


def separates(mg: MarkedPlaneGraph, cyc) -> bool:
    """Does the cycle ``cyc`` (vertex sequence) separate C1 from C2?

    A vertex mark lying on the cycle is not separated from anything.
    """
    for mk in mg.marks:
        if mk.is_vertex and mk.u in cyc:
            return False
    lab, side = _face_sides(mg, _cycle_edges(cyc))
    fs = _mark_faces(mg, lab)
    s1 = {side[f] for f in fs["C1"]}
    s2 = {side[f] for f in fs["C2"]}
    return not (s1 & s2)


def internal_short_cycles(mg: MarkedPlaneGraph) -> list[tuple[int, ...]]:
    """Cycles of length at most 4 other than the marked faces."""
    marked = {_cycle_edges(mg.face(mk.role).vertices) for mk in mg.marks if not mk.is_vertex}
    return [c for c in short_cycles(mg.graph, 4) if _cycle_edges(c) not in marked]


def cylinder_level(mg: MarkedPlaneGraph) -> int | None:
    """Number of internal (<=4)-cycles, or None if one of them does not separate."""
    cyc = internal_short_cycles(mg)
    if all(separates(mg, c) for c in cyc):
        return len(cyc)
    return None


def _mark_ok(mg: MarkedPlaneGraph, role: str, lengths=(3, 4)) -> bool:
    mk = mg.mark(role)
    if mk.is_vertex:
        return True
    fw = mg.face(role)
    return fw.is_cycle() and fw.length in lengths


# --------------------------------------------------------------------------
# segment identification and its inverse
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SegmentSplit:
    """Outer walk W of a disk graph split into arcs A1, Q, A2, Q' from ``start``.

    A1 = W[start .. start+a1], Q the next ``p`` edges, A2 the next ``a2``
    edges and Q' the final ``p`` edges back to W[start].  Indices refer to the
    normalised outer walk ``h.face("B").vertices``.
    """

    start: int
    a1: int
    a2: int
    p: int

    def __post_init__(self):
        if not (1 <= self.a1 <= 4 and 1 <= self.a2 <= 4 and 0 <= self.p <= 4):
            raise ValueError(f"invalid split {self}")

    @property
    def length(self) -> int:
        return self.a1 + self.a2 + 2 * self.p


def segment_splits(L: int, arcs=(3, 4), max_p: int = 4):
    """All splits of an outer walk of length ``L`` with arc lengths in ``arcs``."""
    for a1 in arcs:
        for a2 in arcs:
            rest = L - a1 - a2
            if rest < 0 or rest % 2 or rest // 2 > max_p:
                continue
            for s in range(L):
                yield SegmentSplit(s, a1, a2, rest // 2)


def identify_segments(h: MarkedPlaneGraph, s: SegmentSplit) -> MarkedPlaneGraph:
    """Identify Q with the reverse of Q' so that A1 and A2 close into faces."""
    W = h.face("B").vertices
    L = len(W)
    if s.length != L:
        raise ValueError(f"split of length {s.length} for outer walk of length {L}")

    def at(i):
        return W[(s.start + i) % L]

    Q = [at(s.a1 + k) for k in range(s.p + 1)]
    Qp = [at(s.a1 + s.p + s.a2 + k) for k in range(s.p + 1)]
    try:
        g, newid = identify_path_pair(h.graph, Q, Qp, at(s.a1 - 1), at(s.a1 + s.p + s.a2 - 1))
    except WouldCreateParallel as exc:
        raise GirthViolation(str(exc)) from None
    m1 = Mark("C1", int(newid[at(0)]), int(newid[at(1)]))
    m2 = Mark("C2", int(newid[at(s.a1 + s.p)]), int(newid[at(s.a1 + s.p + 1)]))
    for mk, ln in ((m1, s.a1), (m2, s.a2)):
        fw = g.face_of(mk.u, mk.v)
        if fw.length != ln or not fw.is_cycle() or ln < 3:
            raise DegenerateBoundary(f"boundary {mk.role} has length {fw.length}")
    mg = MarkedPlaneGraph(g, [m1, m2], check=False)
    if g.face_of(m1.u, m1.v).same_face(g.face_of(m2.u, m2.v)):
        raise DegenerateBoundary("boundaries coincide")
    if not girth_ok(mg):
        raise GirthViolation("short unmarked cycle")
    return mg


def _corner(fw, v):
    """(a, b) with the face walk passing a -> v -> b."""
    a = b = None
    for x, y in fw.darts:
        if y == v:
            a = x
        if x == v:
            b = y
    return a, b


def _segment(rot, x, y):
    """Cyclic run of ``rot`` from ``x`` to ``y`` inclusive."""
    i = rot.index(x)
    out = []
    while True:
        w = rot[i % len(rot)]
        out.append(w)
        if w == y:
            return out
        i += 1


def cut_along_path(mg: MarkedPlaneGraph, P) -> tuple[MarkedPlaneGraph, SegmentSplit]:
    """Cut a cylinder graph open along the C1-C2 path ``P``.

    Every vertex of P is split in two and the edges of P are doubled; the two
    boundaries and both copies of P form the outer face B of the returned
    disk graph.  The split reproduces ``mg`` under :func:`identify_segments`.
    """
    g = mg.graph
    P = list(P)
    t = len(P) - 1
    f1, f2 = mg.face("C1"), mg.face("C2")
    if P[0] not in f1.vertices or P[-1] not in f2.vertices:
        raise ValueError("path must run from C1 to C2")
    rot = [list(r) for r in g.rotations]
    n = g.n
    left, right = [], []
    for i, v in enumerate(P):
        if t == 0:
            a1, b1 = _corner(f1, v)
            a2, b2 = _corner(f2, v)
            lo, ro = (b2, a1), (b1, a2)
        elif i == 0:
            a, b = _corner(f1, v)
            lo, ro = (P[1], a), (b, P[1])
        elif i == t:
            a, b = _corner(f2, v)
            lo, ro = (b, P[t - 1]), (P[t - 1], a)
        else:
            lo, ro = (P[i + 1], P[i - 1]), (P[i - 1], P[i + 1])
        left.append(_segment(rot[v], *lo))
        right.append(_segment(rot[v], *ro))
    pos = {v: i for i, v in enumerate(P)}
    new = [list(r) for r in rot] + [None] * (t + 1)
    for i, v in enumerate(P):
        new[v] = left[i]
        seg = []
        for w in right[i]:
            j = pos.get(w)
            if j is not None and abs(j - i) == 1:
                seg.append(n + j)
            else:
                seg.append(w)
                new[w] = [n + i if x == v else x for x in new[w]]
        new[n + i] = seg
    H = PlaneGraph(new, check=False)
    b = right[0][0]
    hb = MarkedPlaneGraph(H, [Mark("B", n, b)], check=False)
    W = hb.face("B").vertices
    start = next(i for i in range(len(W)) if W[i] == n and W[(i + 1) % len(W)] == b)
    return hb, SegmentSplit(start, f1.length, f2.length, t)


def shared_edge_pair(l1: int, l2: int) -> MarkedPlaneGraph:
    """Two marked cycles of lengths l1, l2 sharing exactly one edge 0-1."""
    a = list(range(2, l1))             # path 1 -> a... -> 0 on one side
    b = list(range(l1, l1 + l2 - 2))   # path 0 -> b... -> 1 on the other
    n = l1 + l2 - 2
    rot = [None] * n
    rot[0] = [1, a[-1], b[0]]
    rot[1] = [0, b[-1], a[0]]
    seq = [1] + a + [0]
    for i in range(1, len(seq) - 1):
        rot[seq[i]] = [seq[i - 1], seq[i + 1]]
    seq = [0] + b + [1]
    for i in range(1, len(seq) - 1):
        rot[seq[i]] = [seq[i - 1], seq[i + 1]]
    g = PlaneGraph(rot)
    return MarkedPlaneGraph(g, [Mark("C1", 0, 1), Mark("C2", 1, 0)])


# --------------------------------------------------------------------------
# catalog
# --------------------------------------------------------------------------


@dataclass
class CylMember:
    key: bytes
    graph: MarkedPlaneGraph
    level: int
    c12: int
    c21: int
    distance: int
    lengths: tuple
    class_c: bool
    provenance: str = ""
    derivations: int = 1

    def c_into(self, role: str) -> int:
        """c(G, other boundary, ``role``)."""
        return self.c12 if role == "C2" else self.c21

    @property
    def c_sorted(self) -> tuple[int, int]:
        return tuple(sorted((self.c12, self.c21)))

    def meta(self) -> dict:
        return {"level": self.level, "l1": self.lengths[0], "l2": self.lengths[1],
                "distance": self.distance, "c12": self.c12, "c21": self.c21,
                "class_c": self.class_c, "provenance": self.provenance,
                "derivations": self.derivations}


META_COLUMNS = ["name", "level", "l1", "l2", "distance", "c12", "c21", "class_c",
                "provenance", "derivations"]


def make_member(mg: MarkedPlaneGraph, level: int, provenance: str = "") -> CylMember:
    key = canonical_key(mg)
    g = from_key(key)
    c12, c21 = c_pair(g)
    return CylMember(key, g, level, c12, c21, mark_distance(g),
                     (g.mark_length("C1"), g.mark_length("C2")), is_class_c(g), provenance)


@dataclass
class CylinderCatalog:
    levels: dict = field(default_factory=dict)
    funnel: Counter = field(default_factory=Counter)

    def members(self, k: int) -> list[CylMember]:
        lv = self.levels.get(k, {})
        return [lv[x] for x in sorted(lv)]

    def all_members(self) -> list[CylMember]:
        return [m for k in sorted(self.levels) for m in self.members(k)]

    def sizes(self) -> dict:
        return {k: len(v) for k, v in sorted(self.levels.items())}

    def get(self, key: bytes) -> CylMember | None:
        for lv in self.levels.values():
            if key in lv:
                return lv[key]
        return None


def enumerate_base(cat, max_len: int = 16, funnel: Counter | None = None) -> dict:
    """Level 0: critical cylinder graphs without internal (<=4)-cycles.

    ``cat`` is a DiskCatalog holding K_6 .. K_max_len.  Every split of every
    outer face into two arcs of length 3 or 4 and two opposite segments of
    length at most 4 is identified; boundaries sharing an edge are added
    directly since no cut along a path produces them.
    """
    funnel = funnel if funnel is not None else Counter()
    seen: dict = {}
    out: dict = {}

    def offer(mg, prov):
        key = canonical_key(mg)
        if key in seen:
            funnel["duplicate"] += 1
            if seen[key] is not None:
                seen[key].derivations += 1
            return
        if not is_critical(mg):
            funnel["not-critical"] += 1
            seen[key] = None
            return
        m = make_member(mg, 0, prov)
        seen[key] = out[key] = m
        funnel["kept"] += 1

    for l1, l2 in ((3, 3), (3, 4), (4, 4)):
        mg = shared_edge_pair(l1, l2)
        if girth_ok(mg):
            offer(mg, f"shared-edge({l1},{l2})")
        else:
            funnel["girth"] += 1
    for L in range(6, max_len + 1):
        if L not in cat.K:
            continue
        for m in cat.members(L):
            h = m.marked()
            for s in segment_splits(L):
                funnel["generated"] += 1
                try:
                    mg = identify_segments(h, s)
                except GirthViolation:
                    funnel["girth"] += 1
                    continue
                except EmbeddingError:
                    funnel["degenerate"] += 1
                    continue
                offer(mg, f"identify({m.key.hex()[:12]},{s.start},{s.a1},{s.a2},{s.p})")
    return out


def suppress_closure(members) -> set:
    """Keys of the valid graphs reached by suppressing degree-2 vertices of
    4-boundaries (each boundary at most once)."""
    out = set()
    todo = [m.graph for m in members]
    while todo:
        mg = todo.pop()
        g = mg.graph
        for mk in mg.marks:
            if mk.is_vertex or mg.mark_length(mk.role) != 4:
                continue
            for x in mg.mark_vertices(mk.role):
                if g.degree(x) != 2:
                    continue
                try:
                    h = suppress_degree2(g, x)
                except EmbeddingError:
                    continue
                marks = []
                for mk2 in mg.marks:
                    if mk2.is_vertex:
                        marks.append(Mark(mk2.role, mk2.u - (mk2.u > x)))
                        continue
                    u, v = (w - (w > x) for w in _dart_avoiding(mg, mk2, x))
                    marks.append(Mark(mk2.role, u, v))
                r = MarkedPlaneGraph(h, marks, check=False)
                if not (_mark_ok(r, "C1") and _mark_ok(r, "C2")) or not girth_ok(r):
                    continue
                if not is_critical(r):
                    continue
                key = canonical_key(r)
                if key not in out:
                    out.add(key)
                    todo.append(r)
    return out


def _dart_avoiding(mg, mk, x):
    """A dart of mark ``mk`` whose ends avoid ``x`` (suppression keeps it)."""
    for u, v in mg.face(mk.role).darts:
        if x not in (u, v):
            return u, v
    raise DegenerateBoundary("no dart avoids the suppressed vertex")


# --------------------------------------------------------------------------
# gluing
# --------------------------------------------------------------------------


def glue_at_cycle(g1: MarkedPlaneGraph, r1: str, g2: MarkedPlaneGraph, r2: str) -> list:
    """Glue face ``r1`` of g1 to face ``r2`` of g2 in every way.

    All rotations of the identification and both orientations of g2 are
    tried.  The result keeps g1's other boundary as C1 and g2's other
    boundary as C2; the glued cycle becomes an internal separating cycle.
    """
    X = g1.face(r1).vertices
    ell = len(X)
    if g2.mark_length(r2) != ell:
        raise ValueError("glued faces must have equal length")
    n1 = g1.graph.n
    o1 = g1.mark(_other(r1))
    out = []
    for h in (g2, mirror_marked(g2)):
        Y = [y + n1 for y in h.face(r2).vertices]
        o2 = h.mark(_other(r2))
        u = disjoint_union(g1.graph, h.graph)
        for sh in range(ell):
            pairs = []
            for k in range(ell):
                j = (sh - k) % ell
                pairs.append((X[k], X[k - 1], Y[j], Y[j - 1]))
            try:
                g, newid = zip_corners(u, pairs)
            except EmbeddingError:
                continue
            m1 = _remap_mark(o1, newid)
            m2 = _remap_mark(o2, newid, n1)
            out.append(MarkedPlaneGraph(g, [Mark("C1", *m1[1:]), Mark("C2", *m2[1:])], check=False))
    return out


def precoloring_total(ell: int) -> int:
    """Proper 3-colourings of a cycle of length ``ell``: 2^ell + 2(-1)^ell."""
    return 2 ** ell + 2 * (-1) ** ell


def enumerate_levels(base: dict, max_level: int = 6, funnel: Counter | None = None,
                     progress=None) -> CylinderCatalog:
    """Glue level-0 graphs onto boundaries of level k-1 graphs, k = 1..max_level.

    A pair is tried only when c(g1, C1, C) + c(g2, C2, C) reaches the number
    of colourings of the glued cycle C; otherwise every precolouring of the
    glued graph extends.  Results are kept when every internal (<=4)-cycle
    separates the boundaries, there are exactly k of them and the graph is
    critical.
    """
    cat = CylinderCatalog()
    if funnel is not None:
        cat.funnel = funnel
    f = cat.funnel
    cat.levels[0] = dict(base)
    seen: dict = {k: None for k in base}
    bases = [base[k] for k in sorted(base)]
    for k in range(1, max_level + 1):
        new: dict = {}
        later: set = set()
        for h in cat.members(k - 1):
            for rh in ROLES:
                if h.graph.mark(rh).is_vertex:
                    continue
                ell = h.graph.mark_length(rh)
                need = precoloring_total(ell)
                for b in bases:
                    for rb in ROLES:
                        if b.graph.mark_length(rb) != ell:
                            continue
                        if h.c_into(rh) + b.c_into(rb) < need:
                            f["pruned-c"] += 1
                            continue
                        for mg in glue_at_cycle(h.graph, rh, b.graph, rb):
                            f["generated"] += 1
                            key = canonical_key(mg)
                            if key in seen:
                                f["duplicate"] += 1
                                hit = seen[key]
                                if hit is not None:
                                    hit.derivations += 1
                                continue
                            if key in later:
                                f["other-level"] += 1
                                continue
                            if not (_mark_ok(mg, "C1") and _mark_ok(mg, "C2")):
                                f["degenerate"] += 1
                                seen[key] = None
                                continue
                            lv = cylinder_level(mg)
                            if lv is None:
                                f["non-separating"] += 1
                                seen[key] = None
                                continue
                            if lv != k:
                                # may still be reached again when level lv is built
                                f["other-level"] += 1
                                later.add(key)
                                continue
                            seen[key] = None
                            if not is_critical(mg):
                                f["not-critical"] += 1
                                continue
                            m = make_member(mg, k, f"glue({h.key.hex()[:12]},{rh},{b.key.hex()[:12]},{rb})")
                            seen[key] = new[key] = m
                            f["kept"] += 1
        cat.levels[k] = new
        log.info("cylinder level %d: %d members", k, len(new))
        if progress:
            progress(k, cat)
    return cat


# --------------------------------------------------------------------------
# class C
# --------------------------------------------------------------------------


def class_c(n: int, choices=None) -> MarkedPlaneGraph:
    """Apply the ladder extension ``n`` times to a 4-cycle.

    The outer face v1 v2 v3 v4 (v1, v3 of degree 2) receives new vertices
    v2', v3', v4' with edges v1v2', v2'v3', v3'v4', v4'v1, v3v3'; the new
    outer face is v1 v2' v3' v4'.  Its two degree-2 vertices v2', v4' can play
    the role of v1 in the next step; ``choices[i]`` (0 or 1, default 0)
    selects v2' or v4'.  C1 is the inner face of the start cycle and C2 the
    final outer face.
    """
    rot = [[3, 1], [0, 2], [1, 3], [2, 0]]
    outer = [0, 1, 2, 3]
    for i in range(n):
        v1, a, v3, b = outer
        x2, x3, x4 = len(rot), len(rot) + 1, len(rot) + 2
        r = rot[v1]
        j = r.index(b)
        rot[v1] = r[:j + 1] + [x4, x2] + r[j + 1:]
        r = rot[v3]
        j = r.index(a)
        rot[v3] = r[:j + 1] + [x3] + r[j + 1:]
        rot.append([v1, x3])
        rot.append([x4, v3, x2])
        rot.append([x3, v1])
        c = choices[i] if choices is not None else 0
        outer = [x2, x3, x4, v1] if c == 0 else [x4, v1, x2, x3]
    g = PlaneGraph(rot)
    return MarkedPlaneGraph(g, [Mark("C1", 1, 0), Mark("C2", outer[0], outer[1])])


def _delete_vertices(g: PlaneGraph, dead) -> tuple[PlaneGraph, list]:
    dead = set(dead)
    keep = [v for v in range(g.n) if v not in dead]
    new = {v: i for i, v in enumerate(keep)}
    rot = [[new[w] for w in g.rotation(v) if w not in dead] for v in keep]
    return PlaneGraph(rot, check=False), new


def _peel(mg: MarkedPlaneGraph, budget: list) -> bool:
    g = mg.graph
    if g.n == 4 and g.m == 4:
        return True
    if budget[0] <= 0:
        return False
    budget[0] -= 1
    deg = g.degrees()
    for mk in mg.marks:
        if mk.is_vertex or mg.mark_length(mk.role) != 4:
            continue
        F = mg.face(mk.role).vertices
        for i in range(4):
            v1, x2, x3, x4 = (F[(i + k) % 4] for k in range(4))
            if deg[v1] != 4 or deg[x2] != 2 or deg[x4] != 2 or deg[x3] != 3:
                continue
            v3 = next(w for w in g.rotation(x3) if w not in (x2, x4))
            if deg[v3] != 3:
                continue
            r = g.rotation(v1)
            # v1's rotation reads ... b, x4, x2, a ...
            j = r.index(x4)
            if r[(j + 1) % 4] != x2:
                continue
            b = r[(j - 1) % 4]
            h, new = _delete_vertices(g, (x2, x3, x4))
            other = mg.mark(_other(mk.role))
            if other.is_vertex or any(w in (x2, x3, x4) for w in (other.u, other.v)):
                continue
            fw = h.face_of(new[b], new[v1])
            if fw.length != 4 or not fw.is_cycle():
                continue
            marks = {mk.role: Mark(mk.role, new[b], new[v1]),
                     other.role: Mark(other.role, new[other.u], new[other.v])}
            r2 = MarkedPlaneGraph(h, [marks["C1"], marks["C2"]], check=False)
            if r2.face("C1").same_face(r2.face("C2")):
                continue
            if _peel(r2, budget):
                return True
    return False


def is_class_c(mg: MarkedPlaneGraph) -> bool:
    """Membership in class C by peeling the last extension step repeatedly.

    Both boundaries are tried as the outer face of the last step; the search
    backtracks, so the answer does not depend on the order of attempts.
    """
    if mg.is_disk or any(mk.is_vertex for mk in mg.marks):
        return False
    g = mg.graph
    if (g.n - 4) % 3 or g.m != 4 + 5 * ((g.n - 4) // 3):
        return False
    if mg.mark_length("C1") != 4 or mg.mark_length("C2") != 4:
        return False
    return _peel(mg, [64 * (g.n + 1)])


# --------------------------------------------------------------------------
# single-vertex boundaries
# --------------------------------------------------------------------------


def reduce_triangle_marks(mg: MarkedPlaneGraph) -> list[MarkedPlaneGraph]:
    """Replace marked triangles with two degree-2 vertices by their third vertex.

    Returns the reduced graphs (one boundary reduced, or both when possible).
    """
    g = mg.graph
    deg = g.degrees()
    red = {}
    for mk in mg.marks:
        if mk.is_vertex or mg.mark_length(mk.role) != 3:
            continue
        vs = mg.mark_vertices(mk.role)
        low = [v for v in vs if deg[v] == 2]
        if len(low) == 2:
            red[mk.role] = (next(v for v in vs if v not in low), low)
    out = []
    options = [dict([kv]) for kv in red.items()]
    if len(red) == 2:
        options.append(red)
    for opt in options:
        dead = [v for _, low in opt.values() for v in low]
        h, new = _delete_vertices(g, dead)
        marks = []
        for mk in mg.marks:
            if mk.role in opt:
                marks.append(Mark(mk.role, new[opt[mk.role][0]]))
            else:
                marks.append(Mark(mk.role, new[mk.u], new[mk.v]))
        out.append(MarkedPlaneGraph(h, marks, check=False))
    return out


def vertex_boundary_graphs(members) -> dict:
    """Nontrivial critical graphs with a single-vertex boundary derived from
    catalog members whose triangle boundary has two vertices of degree 2."""
    out = {}
    for m in members:
        for r in reduce_triangle_marks(m.graph):
            if not r.nontrivial:
                continue
            if not K.is_connected(r.graph.off, r.graph.adj):
                continue
            if cylinder_level(r) is None or not is_critical(r):
                continue
            key = canonical_key(r)
            out.setdefault(key, r)
    return {k: out[k] for k in sorted(out)}


# --------------------------------------------------------------------------
# structural predicates and the special lists
# --------------------------------------------------------------------------


def _mark_vertex_sets(mg):
    return set(mg.mark_vertices("C1")), set(mg.mark_vertices("C2"))


def boundary_paths(mg: MarkedPlaneGraph, tmax: int):
    """Paths of length <= tmax from C1 to C2 whose inner vertices avoid both."""
    A, B = _mark_vertex_sets(mg)
    rot = mg.graph.rotations
    if A & B:
        for v in A & B:
            yield (v,)
    path = []

    def dfs(v):
        if len(path) - 1 >= tmax:
            return
        for w in rot[v]:
            if w in path:
                continue
            if w in B:
                yield tuple(path + [w])
            elif w not in A:
                path.append(w)
                yield from dfs(w)
                path.pop()

    for s in sorted(A - B):
        path.append(s)
        yield from dfs(s)
        path.pop()


def has_bridge(g: PlaneGraph) -> bool:
    """A bridge is an edge with the same face on both sides."""
    lab, _, _ = K.face_labels(g.off, g.adj)
    return bool(np.any(lab == lab[g.rev]))


def _faces_excluding_marks(mg):
    marked = [mg.face(mk.role) for mk in mg.marks if not mk.is_vertex]
    return [f for f in mg.graph.faces() if not any(f.same_face(m) for m in marked)]


def _edges_of_path(p):
    return {(min(a, b), max(a, b)) for a, b in zip(p, p[1:])}


def _filter_f(mg: MarkedPlaneGraph, dist: int) -> bool:
    if dist < 2:
        return False
    faces = _faces_excluding_marks(mg)
    big = [F for F in faces if F.length >= 7]
    if not big:
        return False
    paths = list(boundary_paths(mg, 4))
    cycles = internal_short_cycles(mg)
    p2 = [_edges_of_path(p) for p in paths if len(p) - 1 == 2]
    for Mp in big:
        emp = {(min(a, b), max(a, b)) for a, b in Mp.darts}
        for M in faces:
            if M.same_face(Mp):
                continue
            em = {(min(a, b), max(a, b)) for a, b in M.darts}
            for e in sorted(em & emp):
                if not all(e in q for q in p2):
                    continue
                for x in sorted(set(M.vertices)):
                    ok = all(e in _edges_of_path(p) or x in p for p in paths)
                    ok = ok and all(e in _cycle_edges(c) or x in c for c in cycles)
                    if ok:
                        return True
    return False


def filter_membership(mg: MarkedPlaneGraph) -> set:
    """Which of the six special lists (a)..(f) the graph belongs to."""
    if not mg.nontrivial:
        return set()
    dist = mark_distance(mg)
    faces = _faces_excluding_marks(mg)
    longest = max((F.length for F in faces), default=0)
    cycles = internal_short_cycles(mg)
    pre = set(mg.boundary_vertices())
    common = set(range(mg.graph.n))
    for c in cycles:
        common &= set(c)
    out = set()
    if dist >= 3 and longest >= 7:
        out.add("a")
    if dist >= 3 and (common - pre):
        out.add("b")
    if dist >= 3 and (common & pre):
        out.add("c")
    if dist >= 2 and longest >= 9:
        out.add("d")
    if dist >= 2 and has_bridge(mg.graph):
        out.add("e")
    if _filter_f(mg, dist):
        out.add("f")
    return out


def special_filters(graphs) -> dict[str, list[bytes]]:
    """Keys of the graphs in each special list; ``graphs`` maps key -> graph."""
    out = {c: [] for c in "abcdef"}
    for key in sorted(graphs):
        for c in filter_membership(graphs[key]):
            out[c].append(key)
    return out


# --------------------------------------------------------------------------
# far-apart boundaries: every precolouring extends
# --------------------------------------------------------------------------


def all_precolorings_extend(mg: MarkedPlaneGraph) -> bool:
    from .color import extension_table

    return bool(extension_table(mg).extends.all())


def random_far_instance(rng: random.Random, min_dist: int = 4, steps: int = 12,
                        max_tries: int = 200) -> MarkedPlaneGraph:
    """A random connected plane graph with two short marked faces.

    Starts from boundaries of length 3 or 4 joined by a path of length
    ``min_dist`` (plus a random extra 0..2) and repeatedly adds paths across
    unmarked faces, keeping every unmarked cycle of length >= 5 and the
    boundary distance >= ``min_dist``.
    """
    l1, l2 = rng.choice((3, 4)), rng.choice((3, 4))
    d = min_dist + rng.randrange(3)
    # C1 = 0..l1-1, path l1-1 -> p1 .. -> first vertex of C2
    rot: list[list[int]] = []
    for i in range(l1):
        rot.append([(i + 1) % l1, (i - 1) % l1])
    c2 = [l1 + d - 1 + i for i in range(l2)]
    path = [l1 - 1] + [l1 + i for i in range(d - 1)] + [c2[0]]
    while len(rot) < c2[-1] + 1:
        rot.append([])
    for i in range(1, len(path) - 1):
        rot[path[i]] = [path[i - 1], path[i + 1]]
    for i, v in enumerate(c2):
        rot[v] = [c2[(i + 1) % l2], c2[(i - 1) % l2]]
    rot[path[0]].append(path[1])
    rot[c2[0]].append(path[-2])
    g = PlaneGraph(rot)
    mg = MarkedPlaneGraph(g, [Mark("C1", 1, 0), Mark("C2", c2[1], c2[0])])
    if mg.face("C1").length != l1:
        mg = MarkedPlaneGraph(g, [Mark("C1", 0, 1), mg.mark("C2")])
    if mg.face("C2").length != l2:
        mg = MarkedPlaneGraph(g, [mg.mark("C1"), Mark("C2", c2[0], c2[1])])
    for _ in range(steps):
        for _ in range(max_tries):
            cand = _add_random_path(mg, rng)
            if cand is None:
                continue
            if mark_distance(cand) < min_dist or not girth_ok(cand):
                continue
            mg = cand
            break
    return mg


def _add_random_path(mg: MarkedPlaneGraph, rng: random.Random):
    faces = _faces_excluding_marks(mg)
    F = rng.choice(faces)
    W = list(F.darts)
    L = len(W)
    i, j = sorted(rng.sample(range(L), 2))
    t = rng.randrange(1, 4)
    # dart W[i] = (x, xn) enters corner at x between W[i-1] and W[i]
    x, xn = W[i]
    y, yn = W[j]
    if x == y:
        return None
    g = mg.graph
    rot = [list(r) for r in g.rotations]
    n = g.n
    inner = list(range(n, n + t - 1))
    seq = [x] + inner + [y]
    if t == 1 and g.has_edge(x, y):
        return None
    # in rot(x) the corner of F lies before xn (face left of W[i-1] turns into xn)
    rx = rot[x]
    rx.insert(rx.index(xn), seq[1])
    ry = rot[y]
    ry.insert(ry.index(yn), seq[-2])
    for k in range(1, len(seq) - 1):
        rot.append([seq[k + 1], seq[k - 1]])
    try:
        h = PlaneGraph(rot)
        h.faces()
        out = MarkedPlaneGraph(h, mg.marks)
    except EmbeddingError:
        return None
    return out


# --------------------------------------------------------------------------
# decomposition along separating cycles
# --------------------------------------------------------------------------


def cycle_chain(mg: MarkedPlaneGraph) -> list[tuple[int, ...]]:
    """Internal (<=4)-cycles ordered from C1 towards C2.

    Assumes every one of them separates the boundaries; the order is by the
    number of faces on the C1 side.
    """
    out = []
    for cyc in internal_short_cycles(mg):
        lab, side = _face_sides(mg, _cycle_edges(cyc))
        s1 = side[next(iter(_mark_faces(mg, lab)["C1"]))]
        out.append((sum(1 for s in side if s == s1), cyc))
    out.sort()
    return [c for _, c in out]


def cut_at_cycle(mg: MarkedPlaneGraph, cyc, keep: str) -> MarkedPlaneGraph:
    """The part of ``mg`` on the ``keep`` side of the separating cycle ``cyc``.

    ``cyc`` becomes the face of the other role.
    """
    g = mg.graph
    lab, side = _face_sides(mg, _cycle_edges(cyc))
    s = side[next(iter(_mark_faces(mg, lab)[keep]))]
    tl = K.tails(g.off)
    kept = set()
    mark_dart = None
    for d in range(len(g.adj)):
        u, v = int(tl[d]), int(g.adj[d])
        if side[lab[d]] == s or side[lab[g.rev[d]]] == s:
            kept.add((u, v))
        if side[lab[d]] != s and side[lab[g.rev[d]]] == s:
            mark_dart = (u, v)
    verts = sorted({u for u, _ in kept} | {mk.u for mk in mg.marks if mk.role == keep})
    new = {v: i for i, v in enumerate(verts)}
    rot = [[new[w] for w in g.rotation(v) if (v, w) in kept] for v in verts]
    h = PlaneGraph(rot, check=False)
    old = mg.mark(keep)
    marks = {keep: _remap_mark(old, new),
             _other(keep): Mark(_other(keep), new[mark_dart[0]], new[mark_dart[1]])}
    return MarkedPlaneGraph(h, [marks["C1"], marks["C2"]], check=False)


def between(mg: MarkedPlaneGraph, i: int, j: int, chain=None) -> MarkedPlaneGraph:
    """The subgraph drawn between the i-th and j-th cycle of C1, K_1, ..., C2."""
    chain = cycle_chain(mg) if chain is None else chain
    k = len(chain) + 1
    if not 0 <= i < j <= k:
        raise ValueError("need 0 <= i < j <= number of cycles + 1")
    h = mg
    if j < k:
        h = cut_at_cycle(h, chain[j - 1], "C1")
    if i > 0:
        cyc = chain[i - 1]
        h = cut_at_cycle(h, cyc if j == k else _relabel_cycle(mg, h, cyc), "C2")
    return h


def _relabel_cycle(mg, h, cyc):
    """Find ``cyc`` of ``mg`` inside the cut graph ``h`` by its position in the chain."""
    target = len(cyc)
    sep = cycle_chain(h)
    # the chain of h is a prefix of the chain of mg
    idx = cycle_chain(mg).index(cyc)
    c = sep[idx]
    if len(c) != target:
        raise DegenerateBoundary("cycle chain changed while cutting")
    return c


def pieces(mg: MarkedPlaneGraph) -> list[MarkedPlaneGraph]:
    """Level-0 pieces between consecutive cycles of the chain."""
    chain = cycle_chain(mg)
    return [between(mg, i, i + 1, chain) for i in range(len(chain) + 1)]


# --------------------------------------------------------------------------
# names
# --------------------------------------------------------------------------

_TOKEN = re.compile(r"([ZOTRDAX])(\d*)('?)")


def name_tokens(name: str) -> tuple[list[str], str]:
    """Split a composed name into lower names and a variant letter.

    ``"Z4X5'"`` gives (["Z4", "X5'"], "") and ``"Z3A11b"`` gives
    (["Z3", "A11"], "b").
    """
    variant = ""
    if name[-1] in "ab":
        name, variant = name[:-1], name[-1]
    toks = []
    pos = 0
    while pos < len(name):
        m = _TOKEN.match(name, pos)
        if not m or (m.group(1) != "R" and not m.group(2)):
            raise ValueError(f"cannot parse name {name!r}")
        toks.append(m.group(0))
        pos = m.end()
    return toks, variant


def _token_level(tok: str) -> int:
    return 1 if tok[0] in "DAX" else 0


def _stem(name: str) -> str:
    toks, _ = name_tokens(name)
    return "".join(t.rstrip("'") for t in toks)


@dataclass
class NameReport:
    """Result of matching catalog members with published names.

    ``names`` maps key -> name for every member matched uniquely (or by key
    order among embeddings of the same graph, listed in ``by_key_order``).
    ``ambiguous`` lists (names, keys) groups that the available descriptors
    cannot split; ``unmatched`` lists published names with no member and
    ``unnamed`` keys of members with no published name.
    """

    names: dict = field(default_factory=dict)
    candidates: dict = field(default_factory=dict)
    ambiguous: list = field(default_factory=list)
    by_key_order: list = field(default_factory=list)
    unmatched: list = field(default_factory=list)
    unnamed: list = field(default_factory=list)

    def label(self, key: bytes) -> str:
        if key in self.names:
            return self.names[key]
        c = self.candidates.get(key)
        return "|".join(sorted(c)) if c else ""


def _level1_letter(mg: MarkedPlaneGraph) -> str:
    (cyc,) = internal_short_cycles(mg)
    if len(cyc) == 3:
        return "D"
    if mg.mark_length("C1") == 4 and mg.mark_length("C2") == 4:
        return "A"
    return "X"


def _pieces_fit(hint, got: list) -> bool:
    """``got`` = two candidate-name sets of the pieces of a level-1 member."""
    one, other, banned = hint
    for a, b in (got, got[::-1]):
        if a & one and (other is None or b & other) and not (b - banned) == set() \
                and not (a - banned) == set():
            return True
    return False


def _compose_fits(toks: list, spans: list) -> bool:
    """``spans[(i, j)]`` = candidate names of the sub-member between K_i, K_j."""
    def walk(i, ts):
        if not ts:
            return i == k
        j = i + 1 + _token_level(ts[0])
        return j <= k and ts[0] in spans.get((i, j), ()) and walk(j, ts[1:])

    k = max(j for _, j in spans)
    return walk(0, toks) or walk(0, toks[::-1])


def name_assignment(cat: CylinderCatalog, strict: bool = False) -> NameReport:
    """Match members with the published names using only structural evidence.

    Level 0: boundary distance (letter Z/O/T/R) and the unordered c pair.
    Level 1: kind of separating cycle (D/A/X), c pair and the level-0 pieces
    it is glued from.  Higher levels: names are compositions of lower names
    and must agree with the names of the sub-members between the cycles.
    Groups left with several names are split by membership in the special
    lists, then by key order when the names only differ by primes or a/b.
    """
    from . import constants as T

    rep = NameReport()
    rows = {n: (lv, tuple(sorted((a, b)))) for n, lv, a, b in T.table_rows()}
    published = {n: lv for n, (lv, _) in rows.items() if n not in T.UNMATCHED_LABELS}
    for lst in T.SPECIAL_LISTS.values():
        for n in lst:
            if n[0] != "J" and n not in published:
                published[n] = len(name_tokens(n)[0]) - 1 + sum(
                    _token_level(t) for t in name_tokens(n)[0])
    for lv, lst in T.DEEP_NAMES.items():
        for n in lst:
            published[n] = lv
    special = {}
    for c, lst in T.SPECIAL_LISTS.items():
        for n in lst:
            special.setdefault(n, set()).add(c)

    def c_ok(n, m):
        return n not in rows or rows[n][1] == m.c_sorted

    known: dict = {}   # key -> set of candidate names after resolution
    levels = sorted(cat.levels)
    for lv in levels:
        members = cat.members(lv)
        names = sorted(n for n, l in published.items() if l == lv)
        cand = {}
        for m in members:
            if m.class_c and lv >= 3:
                cand[m.key] = set()
                continue
            if lv == 0:
                opts = {n for n in names if T.DISTANCE_LETTER[n[0]] == m.distance and c_ok(n, m)}
            elif lv == 1:
                letter = _level1_letter(m.graph)
                got = [known.get(canonical_key(p), set()) for p in pieces(m.graph)]
                opts = {n for n in names if n[0] == letter and c_ok(n, m)
                        and (n not in T.LEVEL1_PIECES or _pieces_fit(T.LEVEL1_PIECES[n], got))}
            else:
                chain = cycle_chain(m.graph)
                k = len(chain) + 1
                spans = {(i, j): known.get(canonical_key(between(m.graph, i, j, chain)), set())
                         for i in range(k) for j in range(i + 1, min(i + 2, k) + 1)
                         if (i, j) != (0, k)}
                opts = set()
                for n in names:
                    toks, _ = name_tokens(n)
                    alias = T.DEEP_ALIASES.get(n)
                    ok = _compose_fits(toks, spans) or (
                        alias is not None and _compose_fits(name_tokens(alias)[0], spans))
                    if ok and c_ok(n, m):
                        opts.add(n)
            cand[m.key] = opts
        _resolve(rep, cand, {m.key: m for m in members}, special)
        for m in members:
            known[m.key] = {rep.names[m.key]} if m.key in rep.names else cand[m.key]
        rep.candidates.update(cand)
        used = set().union(*cand.values()) if cand else set()
        rep.unmatched.extend(n for n in names if n not in used)
        rep.unnamed.extend(m.key for m in members if not cand[m.key] and not m.class_c)
    rep.unmatched.extend(n for n in T.UNMATCHED_LABELS if n not in rep.names.values())
    if strict and rep.ambiguous:
        raise AmbiguousName(rep.ambiguous)
    return rep


def _resolve(rep: NameReport, cand: dict, members: dict, special: dict) -> None:
    """Split bipartite components of (member, candidate name) into names."""
    todo = {k for k, v in cand.items() if v}
    while todo:
        seed = todo.pop()
        keys, names = {seed}, set(cand[seed])
        grow = True
        while grow:
            grow = False
            for k in list(todo):
                if cand[k] & names:
                    todo.discard(k)
                    keys.add(k)
                    names |= cand[k]
                    grow = True
        groups = [(sorted(keys), sorted(names))]
        if len(keys) > 1 or len(names) > 1:
            # split by membership in the special lists
            by_sig: dict = {}
            for k in keys:
                sig = frozenset(filter_membership(members[k].graph))
                by_sig.setdefault(sig, [set(), set()])[0].add(k)
            for n in names:
                sig = frozenset(special.get(n, ()))
                by_sig.setdefault(sig, [set(), set()])[1].add(n)
            if all(len(ks) == len(ns) for ks, ns in by_sig.values()):
                groups = [(sorted(ks), sorted(ns)) for ks, ns in by_sig.values() if ks]
        for ks, ns in groups:
            ns = [n for n in ns if any(n in cand[k] for k in ks)]
            if len(ks) == 1 and len(ns) == 1:
                rep.names[ks[0]] = ns[0]
            elif len(ks) == len(ns) and len({_stem(n) for n in ns}) == 1 \
                    and all(set(ns) <= cand[k] for k in ks):
                for k, n in zip(ks, ns):
                    rep.names[k] = n
                rep.by_key_order.append((ns, ks))
            else:
                rep.ambiguous.append((ns, ks))


# --------------------------------------------------------------------------
# persistence and tables
# --------------------------------------------------------------------------


def save_cylinder(cat: CylinderCatalog, store, report: NameReport | None = None) -> None:
    """Write every level as family ``cyl/level{k}`` with META_COLUMNS."""
    for k in sorted(cat.levels):
        fam = f"cyl/level{k}"
        store.families[fam] = {}
        for m in cat.members(k):
            meta = m.meta()
            meta["name"] = report.label(m.key) if report else ""
            store.put(fam, m.graph, None, meta)
        store.save(fam, META_COLUMNS)


def load_cylinder(store, max_level: int = 6) -> CylinderCatalog:
    """Read the levels written by :func:`save_cylinder` (missing levels are skipped)."""
    cat = CylinderCatalog()
    for k in range(max_level + 1):
        fam = f"cyl/level{k}"
        if fam not in store:
            continue
        lv = {}
        for key, e in store.entries(fam):
            g = from_key(key)
            md = e.meta
            lv[key] = CylMember(key, g, int(md["level"]), int(md["c12"]), int(md["c21"]),
                                int(md["distance"]), (int(md["l1"]), int(md["l2"])),
                                md["class_c"] == "1", md.get("provenance", ""),
                                int(md.get("derivations", 1) or 1))
        cat.levels[k] = lv
    return cat


def ctable_rows(cat: CylinderCatalog, report: NameReport, max_level: int = 2) -> list[dict]:
    """One row per member of levels 0..max_level, with the published pair."""
    from . import constants as T

    pub = {n: (a, b) for n, _, a, b in T.table_rows()}
    rows = []
    for k in range(max_level + 1):
        for m in cat.members(k):
            label = report.label(m.key)
            opts = [n for n in label.split("|") if n in pub]
            expect = sorted({tuple(sorted(pub[n])) for n in opts})
            rows.append({
                "level": k, "name": label, "l1": m.lengths[0], "l2": m.lengths[1],
                "distance": m.distance, "c12": m.c12, "c21": m.c21,
                "published": ";".join(f"{a}/{b}" for a, b in expect),
                "match": int(bool(expect) and all(e == m.c_sorted for e in expect)),
                "key": m.key.hex(),
            })
    rows.sort(key=lambda r: (r["level"], r["name"], r["key"]))
    return rows


def c_multiset_check(cat: CylinderCatalog, level: int) -> tuple[Counter, Counter]:
    """(published, computed) multisets of unordered c pairs for one level."""
    from . import constants as T

    table = {0: T.BASE_TABLE, 1: T.LEVEL1_TABLE, 2: T.LEVEL2_TABLE}[level]
    pub = Counter(tuple(sorted((a, b))) for _, _, a, b in table)
    got = Counter(m.c_sorted for m in cat.members(level))
    return pub, got
