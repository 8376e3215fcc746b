import random
from collections import Counter
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critatlas import cylgen as C
from critatlas.color import (
    ExtensionTable,
    c_pair,
    count_nonextending,
    enumerate_precolorings,
    extends,
    free_edges,
    is_critical,
    is_critical_exhaustive,
    nonextending_counts,
    precoloring_count,
)
from critatlas.embed import Mark, MarkedPlaneGraph, PlaneGraph, marked_cycle, subdivide


def brute_extends(g, phi):
    """Try every colouring of the free vertices."""
    free = [v for v in range(g.n) if v not in phi]
    edges = g.edges()
    for cols in product(range(3), repeat=len(free)):
        c = dict(phi)
        c.update(zip(free, cols))
        if all(c[u] != c[v] for u, v in edges):
            return True
    return False


def brute_c(mg, f1, f2):
    """max over psi on f1 of #phi on f2 with psi + phi not extending."""
    v1 = mg.mark_vertices(f1)
    v2 = mg.mark_vertices(f2)
    e1 = mg.mark_edges(f1)
    e2 = mg.mark_edges(f2)
    best = 0
    for p in product(range(3), repeat=len(v1)):
        psi = dict(zip(v1, p))
        if any(psi[u] == psi[v] for u, v in e1):
            continue
        cnt = 0
        for q in product(range(3), repeat=len(v2)):
            phi = dict(zip(v2, q))
            if any(phi[u] == phi[v] for u, v in e2):
                continue
            if any(psi.get(v, phi[v]) != phi[v] for v in v2) or not brute_extends(mg.graph, {**psi, **phi}):
                cnt += 1
        best = max(best, cnt)
    return best


def cycle_with_chord(n, a, b):
    rot = [[(i + 1) % n, (i - 1) % n] for i in range(n)]
    rot[a].insert(1, b)
    rot[b].insert(1, a)
    g = PlaneGraph(rot)
    outer = next(f for f in g.faces() if f.length == n)
    return MarkedPlaneGraph(g, [Mark("B", *outer.darts[0])])


@pytest.mark.parametrize("ell", range(3, 13))
def test_precolorings_of_a_cycle(ell):
    assert precoloring_count(marked_cycle(ell), "B") == 2 ** ell + 2 * (-1) ** ell


def test_precolorings_are_proper_and_distinct():
    mg = marked_cycle(6)
    ps = enumerate_precolorings(mg)
    assert len({tuple(sorted(p.items())) for p in ps}) == len(ps) == 66
    for p in ps:
        assert all(p[u] != p[v] for u, v in mg.mark_edges("B"))


def test_extension_table_covers_colour_classes():
    t = ExtensionTable.build(marked_cycle(8))
    assert len(t.colorings) * 6 == precoloring_count(marked_cycle(8), "B")
    assert t.extends.all()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_extends_matches_brute_force(seed):
    rng = random.Random(seed)
    mg = [cycle_with_chord(8, 0, 4), cycle_with_chord(9, 0, 4), C.class_c(2),
          C.shared_edge_pair(4, 5)][seed % 4]
    g = mg.graph
    vs = rng.sample(range(g.n), rng.randint(1, g.n))
    phi = {v: rng.randrange(3) for v in vs}
    if any(phi[u] == phi[v] for u, v in g.edges() if u in phi and v in phi):
        return
    assert extends(mg, phi) == brute_extends(g, phi)


def test_chord_of_eight_cycle_is_critical():
    # the chord cuts two pentagons; it is needed for the colourings whose
    # ends get equal colours
    mg = cycle_with_chord(8, 0, 4)
    assert is_critical(mg)
    assert is_critical_exhaustive(mg)


def test_degree_two_inner_vertex_is_not_critical():
    # an inner vertex with two neighbours always gets a colour
    mg = cycle_with_chord(10, 0, 5)
    b = mg.mark("B")
    h = MarkedPlaneGraph(subdivide(mg.graph, 0, 5), [Mark("B", b.u, b.v)])
    assert not is_critical(h)
    assert not is_critical_exhaustive(h)


def test_criticality_matches_exhaustive_oracle(small_disk):
    checked = 0
    for ell in range(8, 12):
        for mg in small_disk.graphs(ell):
            if mg.graph.n <= 12:
                assert is_critical(mg) and is_critical_exhaustive(mg)
                checked += 1
    assert checked >= 10


def test_subdivided_members_agree_with_oracle(small_disk):
    for mg in small_disk.graphs(10):
        if not mg.nontrivial:
            continue
        if mg.graph.n >= 13:
            continue
        u, v = free_edges(mg)[0]
        h = subdivide(mg.graph, u, v)
        b = mg.mark("B")
        sub = MarkedPlaneGraph(h, [Mark("B", b.u, b.v)])
        assert is_critical(sub) == is_critical_exhaustive(sub)


@pytest.mark.parametrize("l1,l2,want", [(4, 4, (15, 15)), (3, 4, (5, 15))])
def test_shared_edge_c_values(l1, l2, want):
    mg = C.shared_edge_pair(l1, l2)
    got = c_pair(mg)
    assert sorted(got) == sorted(want)
    assert got == (brute_c(mg, "C1", "C2"), brute_c(mg, "C2", "C1"))


def test_count_functions_agree():
    # counts are invariant under colour permutation, so every normalised
    # count shows up six times among the labelled precolourings
    mg = C.class_c(1)
    fast = Counter(nonextending_counts(mg, "C1", "C2").tolist())
    v1, e1 = mg.mark_vertices("C1"), mg.mark_edges("C1")
    slow = Counter()
    for p in product(range(3), repeat=len(v1)):
        psi = dict(zip(v1, p))
        if all(psi[u] != psi[v] for u, v in e1):
            slow[count_nonextending(mg, "C1", psi, "C2")] += 1
    assert slow == Counter({k: 6 * n for k, n in fast.items()})
