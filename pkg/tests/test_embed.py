import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from critatlas import cylgen as C
from critatlas.embed import (
    EmbeddingError,
    EulerViolation,
    Mark,
    MarkedPlaneGraph,
    PlaneGraph,
    canonical_key,
    cycle_graph,
    disjoint_union,
    format_rotg,
    from_key,
    girth,
    girth_ok,
    has_shortcut,
    mark_distance,
    marked_cycle,
    parse_rotg,
    short_cycles,
    subdivide,
    suppress_degree2,
)


def cycle_with_chord(n, a, b):
    """n-cycle plus chord a-b, the n-face marked as boundary."""
    rot = [[(i + 1) % n, (i - 1) % n] for i in range(n)]
    rot[a].insert(1, b)
    rot[b].insert(1, a)
    g = PlaneGraph(rot)
    outer = next(f for f in g.faces() if f.length == n)
    return MarkedPlaneGraph(g, [Mark("B", *outer.darts[0])])


def relabelled(mg, perm):
    g = mg.graph.relabel(perm)
    marks = [Mark(m.role, perm[m.u]) if m.is_vertex else Mark(m.role, perm[m.u], perm[m.v])
             for m in mg.marks]
    return MarkedPlaneGraph(g, marks)


def mirrored(mg):
    return C.mirror_marked(mg)


# -- rotation systems -------------------------------------------------------


def test_cycle_has_two_faces():
    g = cycle_graph(7)
    assert g.n == 7 and g.m == 7
    assert sorted(f.length for f in g.faces()) == [7, 7]


def test_euler_violation_detected():
    # K4 with a rotation that is not planar
    rot = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]]
    with pytest.raises(EulerViolation):
        PlaneGraph(rot)


def test_asymmetric_rotation_rejected():
    with pytest.raises(EmbeddingError):
        PlaneGraph([[1], [2], [0]])


def test_face_left_of_dart():
    mg = marked_cycle(6)
    fw = mg.face("B")
    assert fw.length == 6 and fw.is_cycle()
    assert len(mg.graph.faces()) == 2


def test_chord_splits_face():
    mg = cycle_with_chord(8, 0, 4)
    lengths = sorted(f.length for f in mg.graph.faces())
    assert lengths == [5, 5, 8]
    assert mg.nontrivial
    assert mg.face("B").length == 8


def test_mark_normalised_to_least_dart():
    g = cycle_graph(5)
    a = MarkedPlaneGraph(g, [Mark("B", 3, 2)])
    b = MarkedPlaneGraph(g, [Mark("B", 1, 0)])
    assert a.mark("B") == b.mark("B")


def test_marked_faces_must_differ():
    g = cycle_graph(4)
    with pytest.raises(EmbeddingError):
        MarkedPlaneGraph(g, [Mark("C1", 1, 0), Mark("C2", 2, 1)])


# -- cycles and distances ---------------------------------------------------


def test_short_cycles_of_shared_edge_pair():
    mg = C.shared_edge_pair(4, 4)
    cyc = short_cycles(mg.graph, 4)
    assert sorted(len(c) for c in cyc) == [4, 4]
    assert girth(mg.graph) == 4
    assert girth_ok(mg)


def test_girth_ok_rejects_unmarked_triangle():
    mg = C.shared_edge_pair(3, 3)
    assert not girth_ok(mg)


def test_mark_distance_of_class_c():
    assert [mark_distance(C.class_c(n)) for n in range(6)] == [0, 0, 1, 2, 3, 4]


def test_shortcut_detection():
    # the 8-cycle with a 5+5 chord: the chord joins vertices 4 apart
    assert has_shortcut(cycle_with_chord(8, 0, 4), 1)
    assert not has_shortcut(marked_cycle(8), 4)


# -- edits ------------------------------------------------------------------


def test_subdivide_and_suppress_are_inverse():
    g = cycle_graph(5)
    h = subdivide(g, 0, 1)
    assert h.n == 6 and h.m == 6
    back = suppress_degree2(h, 5)
    assert MarkedPlaneGraph(back, [Mark("B", 1, 0)]).key() == marked_cycle(5).key()


def test_identify_path_pair_closes_bowtie():
    # identifying two opposite vertices of a 6-cycle gives two triangles
    h = marked_cycle(6)
    s = C.SegmentSplit(0, 3, 3, 0)
    mg = C.identify_segments(h, s)
    assert mg.graph.n == 5 and mg.graph.m == 6
    assert (mg.mark_length("C1"), mg.mark_length("C2")) == (3, 3)


def test_disjoint_union_counts():
    u = disjoint_union(cycle_graph(5), cycle_graph(6))
    assert u.n == 11 and u.m == 11


# -- canonical keys ---------------------------------------------------------


def test_key_distinguishes_chord_positions():
    a = cycle_with_chord(10, 0, 5)
    b = cycle_with_chord(10, 0, 4)
    assert canonical_key(a) != canonical_key(b)


def test_key_roundtrip_through_from_key(small_disk):
    for mg in small_disk.graphs(11):
        k = canonical_key(mg)
        assert canonical_key(from_key(k)) == k


def test_cylinder_key_ignores_role_order():
    mg = C.shared_edge_pair(3, 4)
    assert canonical_key(mg) == canonical_key(mg.with_roles_swapped())


def reduced_bowties(cylinder):
    # a bowtie reduced on both sides is a lone vertex; it has no rooted code
    return [r for m in cylinder.members(0) for r in C.reduce_triangle_marks(m.graph)
            if r.graph.m > 0]


def test_vertex_mark_keys_roundtrip(cylinder):
    reduced = reduced_bowties(cylinder)
    assert reduced
    for r in reduced:
        k = canonical_key(r)
        both = all(mk.is_vertex for mk in r.marks)
        assert k[:1] == (b"V" if both else b"C")
        assert canonical_key(from_key(k)) == k
    assert canonical_key(C.shared_edge_pair(4, 4))[:1] == b"C"


def test_reflection_switch():
    # a chiral disk graph: the two mirror images are equal only with reflection
    mg = cycle_with_chord(11, 0, 5)
    m = mirrored(mg)
    assert canonical_key(mg, reflect=True) == canonical_key(m, reflect=True)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.booleans())
def test_key_invariant_under_relabelling(seed, mirror):
    rng = random.Random(seed)
    base = [C.class_c(3), C.shared_edge_pair(3, 4), cycle_with_chord(12, 0, 6),
            C.random_far_instance(rng, steps=4)]
    mg = base[seed % len(base)]
    perm = list(range(mg.graph.n))
    rng.shuffle(perm)
    other = relabelled(mg, perm)
    if mirror:
        other = mirrored(other)
    assert canonical_key(other) == canonical_key(mg)


# -- rotg -------------------------------------------------------------------


def test_rotg_roundtrip_keeps_keys(small_disk):
    graphs = small_disk.graphs(12)
    text = "".join(format_rotg(g, "member") for g in graphs)
    back = parse_rotg(text)
    assert [canonical_key(g) for g in back] == [canonical_key(g) for g in graphs]


def test_rotg_vertex_marks_roundtrip(cylinder):
    r = reduced_bowties(cylinder)[0]
    (back,) = parse_rotg(format_rotg(r))
    assert back.marks == r.marks


def test_rotg_rejects_bad_edge_count():
    text = "5 6\n0: 1 4\n1: 2 0\n2: 3 1\n3: 4 2\n4: 0 3\nmark B: 1 0\n"
    with pytest.raises(ValueError):
        parse_rotg(text)
