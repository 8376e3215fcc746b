"""Plane graphs as rotation systems: faces, cycles, distances and canonical keys."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import _kernels as K


class EmbeddingError(ValueError):
    pass


class EulerViolation(EmbeddingError):
    """The rotation system does not describe a sphere embedding."""


class WouldCreateLoop(EmbeddingError):
    pass


class WouldCreateParallel(EmbeddingError):
    pass


class EmbeddingBroken(EmbeddingError):
    pass


def _arrays(rotations: Sequence[Sequence[int]]):
    off = np.zeros(len(rotations) + 1, np.int32)
    for i, r in enumerate(rotations):
        off[i + 1] = off[i] + len(r)
    adj = np.fromiter((w for r in rotations for w in r), np.int32, count=int(off[-1]))
    return off, adj


class PlaneGraph:
    """Connected simple graph with a counterclockwise rotation at each vertex."""

    __slots__ = ("off", "adj", "_rev", "_faces")

    def __init__(self, rotations: Sequence[Sequence[int]], check: bool = True):
        off, adj = _arrays(rotations)
        self._init(off, adj, check)

    @classmethod
    def from_arrays(cls, off, adj, check: bool = True) -> "PlaneGraph":
        g = cls.__new__(cls)
        g._init(np.ascontiguousarray(off, np.int32), np.ascontiguousarray(adj, np.int32), check)
        return g

    def _init(self, off, adj, check):
        self.off = off
        self.adj = adj
        self._rev = None
        self._faces = None
        off.setflags(write=False)
        adj.setflags(write=False)
        if check:
            self._validate()

    def _validate(self):
        n = self.n
        if n <= 0:
            raise EmbeddingError("graph must have at least one vertex")
        for v in range(n):
            r = self.rotation(v)
            if len(set(r)) != len(r):
                raise EmbeddingError(f"vertex {v} lists a neighbour twice")
            for w in r:
                if w == v:
                    raise EmbeddingError(f"loop at vertex {v}")
                if not 0 <= w < n:
                    raise EmbeddingError(f"vertex {v} has out-of-range neighbour {w}")
        rev, ok = K.reverse_darts(self.off, self.adj)
        if not ok:
            raise EmbeddingError("rotation system is not symmetric")
        if not K.is_connected(self.off, self.adj):
            raise EmbeddingError("graph is disconnected")
        if not K.euler_ok(self.off, self.adj):
            raise EulerViolation("V - E + F != 2")

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.off) - 1

    @property
    def m(self) -> int:
        return len(self.adj) // 2

    def rotation(self, v: int) -> tuple[int, ...]:
        return tuple(int(w) for w in self.adj[self.off[v]:self.off[v + 1]])

    @property
    def rotations(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.rotation(v) for v in range(self.n))

    def degree(self, v: int) -> int:
        return int(self.off[v + 1] - self.off[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.off)

    def has_edge(self, u: int, v: int) -> bool:
        return K.rot_pos(self.off, self.adj, u, v) >= 0

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for v in range(self.n):
            for w in self.rotation(v):
                if v < w:
                    out.append((v, w))
        return out

    def dart(self, u: int, v: int) -> int:
        p = K.rot_pos(self.off, self.adj, u, v)
        if p < 0:
            raise KeyError((u, v))
        return int(self.off[u] + p)

    def dart_ends(self, d: int) -> tuple[int, int]:
        u = int(np.searchsorted(self.off, d, side="right") - 1)
        return u, int(self.adj[d])

    @property
    def rev(self) -> np.ndarray:
        if self._rev is None:
            self._rev, _ = K.reverse_darts(self.off, self.adj)
        return self._rev

    def next_in_face(self, u: int, v: int) -> int:
        """Vertex following ``v`` on the face to the left of ``u->v``."""
        r = self.rotation(v)
        return r[(r.index(u) + 1) % len(r)]

    def faces(self) -> list["FaceWalk"]:
        if self._faces is None:
            self._faces = trace_faces(self)
        return self._faces

    def face_of(self, u: int, v: int) -> "FaceWalk":
        return FaceWalk.from_dart(self, u, v)

    def mirror(self) -> "PlaneGraph":
        return PlaneGraph([r[::-1] for r in self.rotations], check=False)

    def relabel(self, perm: Sequence[int]) -> "PlaneGraph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        rot = [None] * self.n
        for v in range(self.n):
            rot[perm[v]] = [perm[w] for w in self.rotation(v)]
        return PlaneGraph(rot, check=False)

    def __eq__(self, other):
        return isinstance(other, PlaneGraph) and np.array_equal(self.off, other.off) \
            and np.array_equal(self.adj, other.adj)

    def __hash__(self):
        return hash((self.off.tobytes(), self.adj.tobytes()))

    def __repr__(self):
        return f"PlaneGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class FaceWalk:
    """Closed walk of directed edges bounding one face (face on the left)."""

    darts: tuple[tuple[int, int], ...]

    @classmethod
    def from_dart(cls, g: PlaneGraph, u: int, v: int) -> "FaceWalk":
        ds = K.face_darts(g.off, g.adj, g.dart(u, v))
        tl = K.tails(g.off)
        return cls(tuple((int(tl[d]), int(g.adj[d])) for d in ds))

    @property
    def length(self) -> int:
        return len(self.darts)

    def __len__(self):
        return len(self.darts)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(u for u, _ in self.darts)

    def is_cycle(self) -> bool:
        vs = self.vertices
        return len(set(vs)) == len(vs)

    def same_face(self, other: "FaceWalk") -> bool:
        return set(self.darts) == set(other.darts)


def trace_faces(g: PlaneGraph) -> list[FaceWalk]:
    lab, f, ok = K.face_labels(g.off, g.adj)
    if not ok:
        raise EmbeddingError("rotation system is not symmetric")
    if g.n - g.m + f != 2:
        raise EulerViolation(f"V - E + F = {g.n - g.m + f}")
    tl = K.tails(g.off)
    rev, _ = K.reverse_darts(g.off, g.adj)
    nxt = K.face_successor(g.off, g.adj, rev)
    seen = np.zeros(len(g.adj), bool)
    out = []
    for d0 in range(len(g.adj)):
        if seen[d0]:
            continue
        walk = []
        d = d0
        while not seen[d]:
            seen[d] = True
            walk.append((int(tl[d]), int(g.adj[d])))
            d = nxt[d]
        out.append(FaceWalk(tuple(walk)))
    return out


# --------------------------------------------------------------------------
# marks
# --------------------------------------------------------------------------


class Mark(NamedTuple):
    """A marked face (dart ``u->v`` with the face on its left) or vertex (``v`` None)."""

    role: str
    u: int
    v: int | None = None

    @property
    def is_vertex(self) -> bool:
        return self.v is None


class MarkedPlaneGraph:
    """Plane graph with one outer mark ``B`` or a cylinder pair ``C1``/``C2``."""

    __slots__ = ("graph", "marks", "_key")

    def __init__(self, graph: PlaneGraph, marks: Iterable[Mark], check: bool = True):
        self.graph = graph
        ms = []
        for mk in marks:
            mk = Mark(*mk)
            if not mk.is_vertex:
                mk = _normalize_mark(graph, mk)
            ms.append(mk)
        self.marks = tuple(ms)
        self._key = None
        if check:
            self._validate()

    def _validate(self):
        roles = [m.role for m in self.marks]
        if roles not in (["B"], ["C1", "C2"]):
            raise EmbeddingError(f"unsupported mark roles {roles}")
        faces = []
        for mk in self.marks:
            if mk.is_vertex:
                if mk.role == "B":
                    raise EmbeddingError("the outer mark must be a face")
                continue
            fw = self.graph.face_of(mk.u, mk.v)
            if not fw.is_cycle():
                raise EmbeddingError(f"marked face {mk.role} is not a cycle")
            faces.append(fw)
        if len(faces) == 2 and faces[0].same_face(faces[1]):
            raise EmbeddingError("marked faces coincide")

    @property
    def is_disk(self) -> bool:
        return self.marks[0].role == "B"

    def mark(self, role: str) -> Mark:
        for mk in self.marks:
            if mk.role == role:
                return mk
        raise KeyError(role)

    def face(self, role: str = "B") -> FaceWalk | None:
        mk = self.mark(role)
        if mk.is_vertex:
            return None
        return self.graph.face_of(mk.u, mk.v)

    def mark_vertices(self, role: str) -> tuple[int, ...]:
        mk = self.mark(role)
        if mk.is_vertex:
            return (mk.u,)
        return self.face(role).vertices

    def mark_edges(self, role: str) -> list[tuple[int, int]]:
        fw = self.face(role)
        if fw is None:
            return []
        return [(min(a, b), max(a, b)) for a, b in fw.darts]

    def boundary_vertices(self) -> tuple[int, ...]:
        seen = []
        for mk in self.marks:
            for v in self.mark_vertices(mk.role):
                if v not in seen:
                    seen.append(v)
        return tuple(seen)

    def boundary_edges(self) -> set[tuple[int, int]]:
        out = set()
        for mk in self.marks:
            out.update(self.mark_edges(mk.role))
        return out

    def mark_length(self, role: str) -> int:
        mk = self.mark(role)
        return 0 if mk.is_vertex else self.face(role).length

    @property
    def nontrivial(self) -> bool:
        """True unless the graph is exactly the union of its marks."""
        return self.graph.m != len(self.boundary_edges()) or \
            self.graph.n != len(self.boundary_vertices())

    def key(self, reflect: bool = True) -> bytes:
        if reflect:
            if self._key is None:
                self._key = canonical_key(self, True)
            return self._key
        return canonical_key(self, False)

    def with_roles_swapped(self) -> "MarkedPlaneGraph":
        a, b = self.marks
        return MarkedPlaneGraph(self.graph, [Mark("C1", b.u, b.v), Mark("C2", a.u, a.v)], check=False)

    def internal_faces(self) -> list[FaceWalk]:
        marked = [self.face(mk.role) for mk in self.marks if not mk.is_vertex]
        return [f for f in self.graph.faces() if not any(f.same_face(m) for m in marked)]

    def __repr__(self):
        ms = ", ".join(f"{m.role}:{m.u}" + ("" if m.v is None else f"->{m.v}") for m in self.marks)
        return f"MarkedPlaneGraph(n={self.graph.n}, m={self.graph.m}, {ms})"


def _normalize_mark(g: PlaneGraph, mk: Mark) -> Mark:
    fw = g.face_of(mk.u, mk.v)
    u, v = min(fw.darts)
    return Mark(mk.role, u, v)


# --------------------------------------------------------------------------
# cycles, distances, chords
# --------------------------------------------------------------------------


def short_cycles(g: PlaneGraph, L: int) -> list[tuple[int, ...]]:
    """Every cycle of length 3..L, once each, as a vertex sequence.

    Each cycle starts at its smallest vertex and its second vertex is the
    smaller of the two neighbours of the start on the cycle.
    """
    if L > 6:
        raise ValueError("short_cycles is meant for L <= 6")
    out = []
    rot = g.rotations
    for s in range(g.n):
        path = [s]
        on = {s}

        def dfs(v):
            for w in rot[v]:
                if w == s and len(path) >= 3:
                    if path[1] < path[-1]:
                        out.append(tuple(path))
                elif w > s and w not in on and len(path) < L:
                    path.append(w)
                    on.add(w)
                    dfs(w)
                    path.pop()
                    on.discard(w)

        dfs(s)
    return out


def girth(g: PlaneGraph) -> int | None:
    """Length of a shortest cycle, or None for a tree."""
    best = None
    for s in range(g.n):
        dist = {s: 0}
        par = {s: -1}
        q = deque([s])
        while q:
            v = q.popleft()
            for w in g.rotation(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    par[w] = v
                    q.append(w)
                elif par[v] != w:
                    c = dist[v] + dist[w] + 1
                    if best is None or c < best:
                        best = c
    return best


def girth_ok(mg: MarkedPlaneGraph) -> bool:
    """Every cycle of length at most 4 bounds a marked face."""
    marked = []
    for mk in mg.marks:
        if not mk.is_vertex:
            marked.append(frozenset(mg.face(mk.role).vertices))
    if not marked or all(len(s) >= 5 for s in marked):
        return not K.has_short_cycle(mg.graph.off, mg.graph.adj, 4)
    cyc = short_cycles(mg.graph, 4)
    return all(frozenset(c) in marked for c in cyc)


def distance(g: PlaneGraph, S1: Iterable[int], S2: Iterable[int]) -> int:
    src = np.array(sorted(set(S1)), np.int32)
    tgt = list(set(S2))
    if len(src) == 0 or not tgt:
        raise ValueError("vertex sets must be non-empty")
    d = K.bfs_dist(g.off, g.adj, src)
    return int(min(d[t] for t in tgt))


def mark_distance(mg: MarkedPlaneGraph) -> int:
    a, b = mg.marks
    return distance(mg.graph, mg.mark_vertices(a.role), mg.mark_vertices(b.role))


def chords(mg: MarkedPlaneGraph, t_max: int, role: str = "B"):
    """Yield (path, boundary distance) for every t-chord with t <= t_max."""
    g = mg.graph
    walk = mg.face(role).vertices
    ell = len(walk)
    pos = {v: i for i, v in enumerate(walk)}
    rot = g.rotations
    for a in walk:
        path = [a]
        on = {a}

        def dfs(v):
            for w in rot[v]:
                if w in on:
                    continue
                if w in pos:
                    if len(path) == 1 and (pos[w] - pos[a]) % ell in (1, ell - 1):
                        continue
                    if pos[w] > pos[a]:
                        d = pos[w] - pos[a]
                        yield tuple(path) + (w,), min(d, ell - d)
                elif len(path) < t_max:
                    path.append(w)
                    on.add(w)
                    yield from dfs(w)
                    path.pop()
                    on.discard(w)

        yield from dfs(a)


def has_shortcut(mg: MarkedPlaneGraph, t_max: int) -> bool:
    for p, d in chords(mg, t_max):
        if len(p) - 1 < d:
            return True
    return False


def has_adjacent_degree2(mg: MarkedPlaneGraph) -> bool:
    g = mg.graph
    deg = g.degrees()
    return any(deg[u] == 2 and deg[v] == 2 for u, v in g.edges())


# --------------------------------------------------------------------------
# canonical forms
# --------------------------------------------------------------------------

_EMPTY_EXTRA = np.zeros((0, 0), np.int32)


def _face_darts_idx(g: PlaneGraph, mk: Mark) -> np.ndarray:
    return K.face_darts(g.off, g.adj, g.dart(mk.u, mk.v))


def _starts(g: PlaneGraph, darts: np.ndarray, reflect: bool):
    st = [darts]
    dr = [np.ones(len(darts), np.int32)]
    if reflect:
        st.append(g.rev[darts])
        dr.append(-np.ones(len(darts), np.int32))
    return np.concatenate(st).astype(np.int32), np.concatenate(dr)


def canonical_code(mg: MarkedPlaneGraph, reflect: bool = True) -> np.ndarray:
    g = mg.graph
    if mg.is_disk:
        d = _face_darts_idx(g, mg.marks[0])
        starts, dirs = _starts(g, d, reflect)
        code, _ = K.canon_code(g.off, g.adj, starts, dirs, _EMPTY_EXTRA)
        return code
    a, b = mg.marks
    if a.is_vertex and b.is_vertex:
        # roots are the darts leaving either marked vertex, read both ways
        starts, dirs, extras = [], [], []
        for root, other in ((a, b), (b, a)):
            d = np.arange(g.off[root.u], g.off[root.u + 1], dtype=np.int32)
            for s in ((1, -1) if reflect else (1,)):
                starts.append(d)
                dirs.append(np.full(len(d), s, np.int32))
                ex = np.zeros((len(d), 3), np.int32)
                ex[:, 0] = 2
                ex[:, 2] = other.u
                extras.append(ex)
        code, _ = K.canon_code(g.off, g.adj, np.concatenate(starts),
                               np.concatenate(dirs), np.concatenate(extras))
        return code
    all_starts, all_dirs, extras = [], [], []
    for root, other in ((a, b), (b, a)):
        if root.is_vertex:
            continue
        d = _face_darts_idx(g, root)
        starts, dirs = _starts(g, d, reflect)
        if other.is_vertex:
            ex = np.zeros((len(starts), 3), np.int32)
            ex[:, 0] = 2
            ex[:, 2] = other.u
        else:
            od = _face_darts_idx(g, other)
            ex = np.zeros((len(starts), 2 + len(od)), np.int32)
            ex[:, 0] = 1
            ex[:, 1] = len(od)
            ex[:, 2:] = od
        all_starts.append(starts)
        all_dirs.append(dirs)
        extras.append(ex)
    w = max(e.shape[1] for e in extras)
    extras = [np.pad(e, ((0, 0), (0, w - e.shape[1]))) for e in extras]
    code, _ = K.canon_code(g.off, g.adj, np.concatenate(all_starts),
                           np.concatenate(all_dirs), np.concatenate(extras))
    return code


def canonical_key(mg: MarkedPlaneGraph, reflect: bool = True) -> bytes:
    """Byte key equal for two marked graphs iff they are embedding-isomorphic.

    With ``reflect`` the isomorphisms may reverse all rotations; cylinder
    marks are matched as an unordered pair.
    """
    if mg.is_disk:
        tag = b"D"
    elif all(mk.is_vertex for mk in mg.marks):
        tag = b"V"
    else:
        tag = b"C"
    return tag + canonical_code(mg, reflect).astype(np.int16).tobytes()


def from_key(key: bytes) -> MarkedPlaneGraph:
    """Rebuild the canonical representative encoded by a key."""
    code = np.frombuffer(key[1:], np.int16).astype(np.int32)
    if key[:1] == b"D":
        off, adj = K.decode(code)
        g = PlaneGraph.from_arrays(off, adj, check=False)
        return MarkedPlaneGraph(g, [Mark("B", 0, int(adj[off[0]]))], check=False)
    L = len(code) - 2
    off, adj = K.decode(code[:L])
    g = PlaneGraph.from_arrays(off, adj, check=False)
    kind, a = divmod(int(code[L]), 4096)
    b = int(code[L + 1])
    m1 = Mark("C1", 0) if key[:1] == b"V" else Mark("C1", 0, int(adj[off[0]]))
    m2 = Mark("C2", a - 1, None) if kind == 2 else Mark("C2", a - 1, b - 1)
    return MarkedPlaneGraph(g, [m1, m2], check=False)


def rooted_forms(g: PlaneGraph, outer_dart: int, reflect: bool = True):
    """All rootings of a disk graph at its outer face, up to automorphism.

    Returns a list of (off, adj) pairs in which the outer face lies to the
    left of the dart from vertex 0 to its first rotation neighbour.  With
    ``reflect`` mirrored rootings are included.
    """
    darts = K.face_darts(g.off, g.adj, outer_dart)
    starts, dirs = _starts(g, darts, reflect)
    seen = set()
    out = []
    for d, s in zip(starts, dirs):
        code, _ = K.rooted_code(g.off, g.adj, int(d), int(s))
        b = code.tobytes()
        if b in seen:
            continue
        seen.add(b)
        out.append(K.decode(code))
    return out


# --------------------------------------------------------------------------
# edits
# --------------------------------------------------------------------------


def subdivide(g: PlaneGraph, u: int, v: int) -> PlaneGraph:
    """Replace edge uv by a path u x v with a new vertex x = n."""
    rot = [list(r) for r in g.rotations]
    x = g.n
    rot[u][rot[u].index(v)] = x
    rot[v][rot[v].index(u)] = x
    rot.append([v, u])
    return PlaneGraph(rot, check=False)


def suppress_degree2(g: PlaneGraph, x: int) -> PlaneGraph:
    """Replace the 2-path through degree-2 vertex ``x`` by a single edge."""
    r = g.rotation(x)
    if len(r) != 2:
        raise EmbeddingBroken(f"vertex {x} has degree {len(r)}")
    u, v = r
    if u == v:
        raise WouldCreateLoop((u, v))
    if g.has_edge(u, v):
        raise WouldCreateParallel((u, v))
    rot = [list(q) for q in g.rotations]
    rot[u][rot[u].index(x)] = v
    rot[v][rot[v].index(x)] = u
    del rot[x]
    perm = [i if i < x else i - 1 for i in range(g.n)]
    rot = [[perm[w] for w in q] for q in rot]
    return PlaneGraph(rot, check=False)


def zip_corners(g: PlaneGraph, pairs):
    """Identify vertices at face corners: ``pairs`` holds (x, xa, y, ya).

    ``y`` is merged into ``x``; the corner at ``x`` following neighbour
    ``xa`` receives the rotation of ``y`` read from the corner following
    ``ya``.  Returns (graph, old-to-new vertex map).
    """
    xs, xa, ys, ya = (np.array(c, np.int32) for c in zip(*pairs))
    st, off, adj, newid = K.zip_corners(g.off, g.adj, xs, xa, ys, ya)
    if st == 1:
        raise WouldCreateLoop(pairs)
    if st == 2:
        raise WouldCreateParallel(pairs)
    if st == 3:
        raise EmbeddingBroken(pairs)
    return PlaneGraph.from_arrays(off, adj, check=False), newid


def identify_path_pair(g: PlaneGraph, p: Sequence[int], q: Sequence[int],
                       p_pred: int | None = None, q_pred: int | None = None):
    """Identify p[k] with q[t-k] (k = 0..t) for two face paths of length t.

    Both paths follow face walks with the face on their left.  The vertex
    preceding each path on its walk is looked up from the first edge, or
    given explicitly (needed when t = 0).  Arising parallel edges along the
    paths are merged.  Returns (graph, old-to-new vertex map).
    """
    t = len(p) - 1
    if len(q) != len(p):
        raise ValueError("paths must have equal length")

    def walk_around(path, pred):
        if pred is None:
            if len(path) < 2:
                raise ValueError("predecessor required for a single-vertex path")
            fw = g.face_of(path[0], path[1]).darts
            pred = fw[-1][0]
        return [pred] + list(path[:-1])

    pp = walk_around(p, p_pred)
    qp = walk_around(q, q_pred)
    pairs = []
    for k in range(t + 1):
        x, y = p[k], q[t - k]
        if x == y:
            continue
        pairs.append((x, pp[k], y, qp[t - k]))
    if any(x == q[t - k] for k, x in enumerate(p)) and not pairs:
        return g, np.arange(g.n)
    return zip_corners(g, pairs)


def split_vertex(g: PlaneGraph, v: int, i: int, j: int) -> PlaneGraph:
    """Split ``v``: it keeps rotation positions i..j-1, new vertex n gets j..i-1."""
    r = list(g.rotation(v))
    d = len(r)
    a = [r[(i + k) % d] for k in range((j - i) % d or d)]
    b = [w for w in r if w not in a]
    if not a or not b:
        raise EmbeddingBroken("split must leave both parts non-empty")
    # keep cyclic order of b starting at position j
    b = [r[(j + k) % d] for k in range(d - len(a))]
    rot = [list(q) for q in g.rotations]
    x = g.n
    rot[v] = a
    for w in b:
        rot[w][rot[w].index(v)] = x
    rot.append(b)
    return PlaneGraph(rot, check=False)


def disjoint_union(g1: PlaneGraph, g2: PlaneGraph) -> PlaneGraph:
    off, adj = K.disjoint_union(g1.off, g1.adj, g2.off, g2.adj)
    return PlaneGraph.from_arrays(off, adj, check=False)


def check_sphere(g: PlaneGraph) -> None:
    """Raise if ``g`` is not a simple connected sphere rotation system."""
    g._validate()


# --------------------------------------------------------------------------
# rotg v1 text format
# --------------------------------------------------------------------------


def format_rotg(mg: MarkedPlaneGraph, comment: str | None = None) -> str:
    g = mg.graph
    lines = []
    if comment:
        for c in comment.splitlines():
            lines.append(f"# {c}")
    lines.append(f"{g.n} {g.m}")
    for v in range(g.n):
        lines.append(f"{v}: " + " ".join(str(w) for w in g.rotation(v)))
    for mk in mg.marks:
        if mk.is_vertex:
            lines.append(f"mark {mk.role}: vertex {mk.u}")
        else:
            lines.append(f"mark {mk.role}: {mk.u} {mk.v}")
    return "\n".join(lines) + "\n"


def parse_rotg(text: str) -> list[MarkedPlaneGraph]:
    """Parse concatenated rotg v1 records."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    out = []
    i = 0
    while i < len(rows):
        head = rows[i].split()
        if len(head) != 2:
            raise ValueError(f"bad record header: {rows[i]!r}")
        n, m = int(head[0]), int(head[1])
        rot = [None] * n
        for k in range(n):
            lhs, _, rhs = rows[i + 1 + k].partition(":")
            rot[int(lhs)] = [int(w) for w in rhs.split()]
        i += 1 + n
        marks = []
        while i < len(rows) and rows[i].startswith("mark"):
            lhs, _, rhs = rows[i][4:].partition(":")
            role = lhs.strip()
            parts = rhs.split()
            if parts[0] == "vertex":
                marks.append(Mark(role, int(parts[1])))
            else:
                marks.append(Mark(role, int(parts[0]), int(parts[1])))
            i += 1
        g = PlaneGraph(rot)
        if g.m != m:
            raise ValueError(f"edge count {g.m} does not match header {m}")
        out.append(MarkedPlaneGraph(g, marks))
    return out


def cycle_graph(n: int) -> PlaneGraph:
    return PlaneGraph([[(i + 1) % n, (i - 1) % n] for i in range(n)])


def marked_cycle(n: int) -> MarkedPlaneGraph:
    """The bare n-cycle with its outer face marked."""
    g = cycle_graph(n)
    return MarkedPlaneGraph(g, [Mark("B", 0, 1)])
