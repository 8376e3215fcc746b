"""Independent reference generators used only by the tests."""

from critatlas.embed import Mark, MarkedPlaneGraph, PlaneGraph, canonical_key, cycle_graph


def _ears(mg: MarkedPlaneGraph, nmax: int):
    """Every graph obtained by drawing one path across an internal face."""
    g = mg.graph
    outer = mg.face("B")
    for F in g.faces():
        if F.same_face(outer):
            continue
        W = list(F.darts)
        L = len(W)
        for i in range(L):
            for j in range(i + 1, L):
                x, xn = W[i]
                y, yn = W[j]
                if x == y:
                    continue
                a, b = j - i, L - (j - i)
                for t in range(1, nmax - g.n + 2):
                    if a + t < 5 or b + t < 5:
                        continue
                    if t == 1 and g.has_edge(x, y):
                        continue
                    rot = [list(r) for r in g.rotations]
                    seq = [x] + list(range(g.n, g.n + t - 1)) + [y]
                    rot[x].insert(rot[x].index(xn), seq[1])
                    rot[y].insert(rot[y].index(yn), seq[-2])
                    for k in range(1, len(seq) - 1):
                        rot.append([seq[k + 1], seq[k - 1]])
                    b0 = mg.mark("B")
                    yield MarkedPlaneGraph(PlaneGraph(rot, check=False), [b0], check=False)


def girth5_disks(ell: int, nmax: int) -> dict:
    """All 2-connected plane graphs of girth >= 5 with outer cycle of length
    ``ell`` and at most ``nmax`` vertices, keyed by canonical key.

    Every such graph has an ear decomposition starting at the outer cycle in
    which each ear is drawn inside a face of the previous graph, and each
    intermediate graph again has girth >= 5.
    """
    start = MarkedPlaneGraph(cycle_graph(ell), [Mark("B", 1, 0)])
    if start.face("B").length != ell or len(start.graph.faces()) != 2:
        raise AssertionError("unexpected cycle embedding")
    seen = {canonical_key(start): start}
    todo = [start]
    while todo:
        mg = todo.pop()
        for h in _ears(mg, nmax):
            k = canonical_key(h)
            if k not in seen:
                seen[k] = h
                todo.append(h)
    return seen
