"""Precoloring extension, criticality tests and non-extension counts."""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import _kernels as K
from .embed import MarkedPlaneGraph, PlaneGraph

Precoloring = dict  # vertex -> colour in {0, 1, 2}


def _subgraph_arrays(vertices, edges):
    """Local (off, adj) for the subgraph on ``vertices`` with ``edges``."""
    idx = {v: i for i, v in enumerate(vertices)}
    nb = [[] for _ in vertices]
    for a, b in edges:
        nb[idx[a]].append(idx[b])
        nb[idx[b]].append(idx[a])
    off = np.zeros(len(vertices) + 1, np.int32)
    for i, r in enumerate(nb):
        off[i + 1] = off[i] + len(r)
    adj = np.array([w for r in nb for w in r], np.int32)
    return off, adj


def _all_colorings(vertices, edges, normalized: bool) -> np.ndarray:
    off, adj = _subgraph_arrays(vertices, edges)
    P = K.proper_precolorings(off, adj, np.arange(len(vertices), dtype=np.int32))
    if normalized:
        return P
    return np.concatenate([P2 for P2 in _permuted(P)]) if len(P) else P


_PERMS = np.array([[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]], np.int8)


def _permuted(P: np.ndarray):
    """All colour permutations of normalised rows, without duplicates."""
    seen = set()
    for perm in _PERMS:
        Q = perm[P]
        for row in Q:
            b = row.tobytes()
            if b not in seen:
                seen.add(b)
                yield row[None, :]


def _mark_subgraph(mg: MarkedPlaneGraph, roles=None):
    roles = roles or [m.role for m in mg.marks]
    verts = []
    edges = set()
    for r in roles:
        for v in mg.mark_vertices(r):
            if v not in verts:
                verts.append(v)
        edges.update(mg.mark_edges(r))
    return verts, sorted(edges)


def enumerate_precolorings(mg: MarkedPlaneGraph) -> list[Precoloring]:
    """All labelled proper 3-colourings of the marked subgraph, in a fixed order."""
    verts, edges = _mark_subgraph(mg)
    P = _labelled(verts, edges)
    return [dict(zip(verts, map(int, row))) for row in P]


def _labelled(verts, edges) -> np.ndarray:
    """Labelled proper colourings in lexicographic order."""
    P = _all_colorings(verts, edges, normalized=False)
    if len(P) == 0:
        return P
    order = np.lexsort(P.T[::-1])
    return P[order]


def _color_array(g: PlaneGraph, phi: Precoloring) -> np.ndarray:
    c = np.full(g.n, -1, np.int8)
    for v, col in phi.items():
        c[v] = col
    return c


def extends(mg: MarkedPlaneGraph | PlaneGraph, phi: Precoloring, skip_edge=None) -> bool:
    """Does ``phi`` extend to a proper 3-colouring (optionally ignoring one edge)?"""
    g = mg.graph if isinstance(mg, MarkedPlaneGraph) else mg
    n = g.n
    eu, ev = skip_edge if skip_edge is not None else (-1, -1)
    scratch = K._scratch(n)
    return bool(K.extends(g.off, g.adj, _color_array(g, phi), eu, ev, *scratch))


@dataclass
class ExtensionTable:
    """Which normalised precolourings of the marks extend to the whole graph.

    Rows of ``colorings`` list one representative per colour-permutation
    class of proper colourings of the marked subgraph ``vertices``.
    """

    vertices: np.ndarray
    colorings: np.ndarray
    extends: np.ndarray

    @classmethod
    def build(cls, mg: MarkedPlaneGraph, skip_edge=None) -> "ExtensionTable":
        verts, edges = _mark_subgraph(mg)
        S = np.array(verts, np.int32)
        P = _all_colorings(verts, edges, normalized=True)
        eu, ev = skip_edge if skip_edge is not None else (-1, -1)
        ext = K.extension_mask(mg.graph.off, mg.graph.adj, S, P, eu, ev)
        return cls(S, P, ext.astype(bool))

    def __contains__(self, phi: Precoloring) -> bool:
        row = np.array([phi[int(v)] for v in self.vertices], np.int8)
        # normalise by first appearance
        m = {}
        for c in row:
            if int(c) not in m:
                m[int(c)] = len(m)
        row = np.array([m[int(c)] for c in row], np.int8)
        hit = np.flatnonzero((self.colorings == row).all(axis=1))
        return bool(self.extends[hit[0]]) if len(hit) else False

    @property
    def nonextending(self) -> int:
        return int((~self.extends).sum())


_MEMO: "OrderedDict[bytes, ExtensionTable]" = OrderedDict()
_MEMO_CAP = 4096


def extension_table(mg: MarkedPlaneGraph) -> ExtensionTable:
    """Memoised :class:`ExtensionTable` for this exact labelled graph."""
    k = (mg.graph.off.tobytes(), mg.graph.adj.tobytes(), mg.marks)
    t = _MEMO.get(k)
    if t is None:
        t = ExtensionTable.build(mg)
        _MEMO[k] = t
        if len(_MEMO) > _MEMO_CAP:
            _MEMO.popitem(last=False)
    return t


def free_edges(mg: MarkedPlaneGraph) -> list[tuple[int, int]]:
    """Edges not belonging to any marked face."""
    be = mg.boundary_edges()
    return [e for e in mg.graph.edges() if e not in be]


def low_degree_inside(mg: MarkedPlaneGraph) -> bool:
    """Some vertex outside the marks has degree at most two."""
    inside = set(mg.boundary_vertices())
    deg = mg.graph.degrees()
    return any(deg[v] <= 2 for v in range(mg.graph.n) if v not in inside)


def _rescue(mg: MarkedPlaneGraph, strong: bool):
    edges = free_edges(mg)
    if not edges:
        return True, True
    if low_degree_inside(mg):
        return False, False
    t = ExtensionTable.build(mg)
    eu = np.array([e[0] for e in edges], np.int32)
    ev = np.array([e[1] for e in edges], np.int32)
    flags, witness = K.criticality(mg.graph.off, mg.graph.adj, t.vertices, t.colorings,
                                   t.extends.astype(np.uint8), eu, ev, strong)
    return bool(flags.all()), witness >= 0


def is_critical(mg: MarkedPlaneGraph) -> bool:
    """Every edge outside the marks is needed: deleting it lets some
    non-extending precolouring extend.  The bare marked subgraph counts."""
    return _rescue(mg, False)[0]


def is_strongly_critical(mg: MarkedPlaneGraph) -> bool:
    """One precolouring fails on the graph but extends after deleting any
    single edge outside the marks."""
    return _rescue(mg, True)[1]


def strong_witness(mg: MarkedPlaneGraph) -> Precoloring | None:
    edges = free_edges(mg)
    t = ExtensionTable.build(mg)
    if not edges:
        bad = np.flatnonzero(~t.extends)
        if len(bad) == 0:
            return None
        return dict(zip(map(int, t.vertices), map(int, t.colorings[bad[0]])))
    eu = np.array([e[0] for e in edges], np.int32)
    ev = np.array([e[1] for e in edges], np.int32)
    _, w = K.criticality(mg.graph.off, mg.graph.adj, t.vertices, t.colorings,
                         t.extends.astype(np.uint8), eu, ev, True)
    if w < 0:
        return None
    return dict(zip(map(int, t.vertices), map(int, t.colorings[w])))


# --------------------------------------------------------------------------
# c-values
# --------------------------------------------------------------------------


def _pair_rows(mg: MarkedPlaneGraph, F1: str, F2: str):
    """Joint rows (psi normalised on F1) x (all labelled phi on F2).

    Returns (S, rows, psi index per row, consistent flag per row, psi count).
    """
    v1, e1 = _mark_subgraph(mg, [F1])
    v2, e2 = _mark_subgraph(mg, [F2])
    psis = _all_colorings(v1, e1, normalized=True)
    phis = _labelled(v2, e2)
    S = list(v1) + [v for v in v2 if v not in v1]
    pos = {v: i for i, v in enumerate(S)}
    n1 = len(v1)
    rows = np.empty((len(psis) * len(phis), len(S)), np.int8)
    which = np.repeat(np.arange(len(psis)), len(phis))
    ok = np.ones(len(rows), bool)
    shared = [(i2, pos[v]) for i2, v in enumerate(v2) if v in pos and pos[v] < n1]
    fresh = [(i2, pos[v]) for i2, v in enumerate(v2) if pos[v] >= n1]
    r = 0
    for psi in psis:
        for phi in phis:
            rows[r, :n1] = psi
            for i2, p in fresh:
                rows[r, p] = phi[i2]
            for i2, p in shared:
                if phi[i2] != psi[p]:
                    ok[r] = False
            r += 1
    return np.array(S, np.int32), rows, which, ok, len(psis)


def nonextending_counts(mg: MarkedPlaneGraph, F1: str, F2: str) -> np.ndarray:
    """c(G, F1, psi, F2) for every normalised precolouring psi of F1."""
    S, rows, which, ok, npsi = _pair_rows(mg, F1, F2)
    ext = np.zeros(len(rows), bool)
    if ok.any():
        sub = np.flatnonzero(ok)
        ext[sub] = K.extension_mask(mg.graph.off, mg.graph.adj, S, rows[sub], -1, -1).astype(bool)
    bad = ~ext
    return np.bincount(which[bad], minlength=npsi)


def count_nonextending(mg: MarkedPlaneGraph, F1: str, psi: Precoloring, F2: str) -> int:
    """Number of proper colourings phi of F2 with psi + phi not extending.

    A phi disagreeing with psi on a shared vertex counts as non-extending.
    """
    v2, e2 = _mark_subgraph(mg, [F2])
    g = mg.graph
    cnt = 0
    for phi in _labelled(v2, e2):
        col = _color_array(g, psi)
        clash = False
        for v, c in zip(v2, phi):
            if col[v] >= 0 and col[v] != c:
                clash = True
                break
            col[v] = c
        if clash or not K.extends(g.off, g.adj, col, -1, -1, *K._scratch(g.n)):
            cnt += 1
    return cnt


def c_max(mg: MarkedPlaneGraph, F1: str, F2: str) -> int:
    cs = nonextending_counts(mg, F1, F2)
    return int(cs.max()) if len(cs) else 0


def c_pair(mg: MarkedPlaneGraph) -> tuple[int, int]:
    """(c(G, C1, C2), c(G, C2, C1)) for a cylinder graph."""
    return c_max(mg, "C1", "C2"), c_max(mg, "C2", "C1")


def precoloring_count(mg: MarkedPlaneGraph, role: str) -> int:
    verts, edges = _mark_subgraph(mg, [role])
    return len(_labelled(verts, edges))


# --------------------------------------------------------------------------
# reference implementation over all subgraphs (small graphs only)
# --------------------------------------------------------------------------


def is_critical_exhaustive(mg: MarkedPlaneGraph, strong: bool = False) -> bool:
    """Criticality straight from the definition, by enumerating colourings.

    Every proper subgraph containing the marks is a choice of a set of
    removed vertices outside the marks plus a set of removed free edges.  For
    each labelled 3-colouring of all vertices we record which free edges it
    violates; a precolouring extends to the subgraph keeping edge set ``E'``
    iff some colouring agreeing with it violates nothing in ``E'``.  Removing
    a vertex only matters through its incident edges, except for isolated
    vertices outside the marks, which are handled separately.
    """
    g = mg.graph
    n = g.n
    if n > 13:
        raise ValueError("exhaustive oracle limited to 13 vertices")
    verts, bedges = _mark_subgraph(mg)
    fe = free_edges(mg)
    m = len(fe)
    # all colourings of the whole graph proper on the marked subgraph
    cols = np.array(list(product(range(3), repeat=n)), np.int8)
    for a, b in bedges:
        cols = cols[cols[:, a] != cols[:, b]]
    viol = np.zeros(len(cols), np.int64)
    for j, (a, b) in enumerate(fe):
        viol |= (cols[:, a] == cols[:, b]).astype(np.int64) << j
    S = np.array(verts)
    proj = cols[:, S]
    keys = (proj.astype(np.int64) * (3 ** np.arange(len(S)))).sum(axis=1)
    uniq, inv = np.unique(keys, return_inverse=True)
    full = (1 << m) - 1
    # extends to G: some colouring violating nothing
    ext_g = np.zeros(len(uniq), bool)
    ext_g[inv[viol == 0]] = True
    bad = ~ext_g
    if not bad.any() and m > 0:
        return False
    # for each non-extending precolouring, the set of kept-edge masks it
    # extends to is {E' : E' & viol(c) == 0 for some c}; mark by superset sum
    size = 1 << m
    proper = np.arange(size) != full
    if strong:
        for p in np.flatnonzero(bad):
            vm = np.zeros(size, bool)
            vm[full ^ viol[inv == p]] = True
            sub = _subset_closure(vm, m)
            if sub[proper].all() and _isolated_ok(mg):
                return True
        return m == 0
    vm = np.zeros(size, bool)
    vm[full ^ viol[bad[inv]]] = True
    sub = _subset_closure(vm, m)
    return bool(sub[proper].all()) and _isolated_ok(mg)


def _subset_closure(vm: np.ndarray, m: int) -> np.ndarray:
    """sub[E] = exists F with vm[F] and E subset of F."""
    sub = vm.copy()
    for j in range(m):
        bit = 1 << j
        idx = np.arange(len(sub))
        lo = idx[(idx & bit) == 0]
        sub[lo] |= sub[lo | bit]
    return sub


def _isolated_ok(mg) -> bool:
    """An isolated vertex outside the marks could be dropped for free."""
    inside = set(mg.boundary_vertices())
    for v in range(mg.graph.n):
        if v not in inside and mg.graph.degree(v) == 0:
            return False
    return True
