"""Acceptance suite: one recorded PASS/FAIL line per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see the lines inline; they
are repeated in the terminal summary either way.  Two criteria are stated
more broadly than what holds for the computed catalogs; their literal form
is kept as a strict xfail next to the form that does hold, and the analysis
is in notes/decisions.md.
"""

import random
from collections import Counter

import pytest

from critatlas import constants as T
from critatlas import cylgen as C
from critatlas import diskgen as D
from critatlas.color import c_pair, free_edges, is_critical, is_critical_exhaustive
from critatlas.embed import MarkedPlaneGraph, PlaneGraph, canonical_key, subdivide

from conftest import record

ORACLE_MAX_N = 12


# 1 ------------------------------------------------------------------------


def test_criterion_1_catalog_counts(disk16):
    got = {i: len(disk16.K[i]) for i in range(13, 17)}
    want = {i: T.DISK_COUNTS[i] for i in range(13, 17)}
    fresh = D.build_all(13)
    same = all(set(fresh.K[i]) == set(disk16.K[i]) for i in range(5, 14))
    ok = got == want and same
    record("criterion 1 catalog counts", ok,
           f"K13..K16 = {list(got.values())}, fresh K<=13 rebuild identical: {same}")
    assert got == want
    assert same


# 2 ------------------------------------------------------------------------


def test_criterion_2_filtered_counts(disk16):
    got = {i: D.filtered_count(disk16, i, 2, True) for i in range(13, 17)}
    ok = got == T.DISK_FILTERED
    record("criterion 2 filtered counts", ok, f"{list(got.values())} at lengths 13..16")
    assert ok


# 3 ------------------------------------------------------------------------


def _shortcut4_survivors(disk16):
    free = D.shortcut_free(disk16, range(5, 17), 4)
    return {i: len(v) for i, v in free.items()}, free


@pytest.mark.xfail(strict=True, reason="the length-12 survivor does not exist; the one "
                   "survivor of length <= 12 has length 10 (see notes/decisions.md)")
def test_criterion_3_shortcut_free_literal(disk16):
    counts, _ = _shortcut4_survivors(disk16)
    want = {12: 1, 13: 0, 14: 1, 15: 0, 16: 1}
    got = {i: counts[i] for i in want}
    ok = got == want
    lengths = [i for i, c in counts.items() for _ in range(c)]
    record("criterion 3 no shortcut <= 4 at 12/14/16", ok,
           f"survivor lengths {lengths}; expected one each at 12, 14, 16")
    assert ok


def test_criterion_3_shortcut_free_one_small_survivor(disk16):
    counts, free = _shortcut4_survivors(disk16)
    small = sum(c for i, c in counts.items() if i <= 12)
    exact = {i: counts[i] for i in T.NO_SHORTCUT4_EXACT}
    ok = exact == T.NO_SHORTCUT4_EXACT and small == T.NO_SHORTCUT4_UP_TO_12
    (g10,) = free[10]
    deg = Counter(int(d) for d in g10.marked().graph.degrees())
    two_conn = all(D.is_two_connected(m) for v in free.values() for m in v)
    record("criterion 3 (one survivor of length <= 12, one each at 14 and 16)", ok,
           f"lengths 13..16 {list(exact.values())}, up to 12: {small} (length 10, "
           f"n={len(g10.off) - 1}, degrees {dict(sorted(deg.items()))}), 2-connected: {two_conn}")
    assert ok and two_conn
    assert deg == Counter({2: 5, 3: 10})


# 4 ------------------------------------------------------------------------


def test_criterion_4_cylinder_base(cylinder, names):
    base = cylinder.members(0)
    dist = Counter(m.distance for m in base)
    recomputed = all(c_pair(m.graph) == (m.c12, m.c21) for m in base)
    # every printed row must be met by a member carrying that name, in the
    # printed direction or its reverse (the direction depends on the drawing)
    rows_ok = 0
    for name, _, a, b in T.BASE_TABLE:
        hits = [m for m in base if name in names.label(m.key).split("|")]
        if hits and all((m.c12, m.c21) in ((a, b), (b, a)) for m in hits):
            rows_ok += 1
    pub, got = C.c_multiset_check(cylinder, 0)
    ok = (len(base) == 22 and rows_ok == 22 and pub == got and recomputed
          and dist[3] == 1 and max(dist) == 3)
    record("criterion 4 cylinder base", ok,
           f"{len(base)} members, {rows_ok}/22 rows, distances {dict(sorted(dist.items()))}")
    assert ok


# 5 ------------------------------------------------------------------------


def test_criterion_5_gluing_levels(cylinder, names):
    sizes = cylinder.sizes()
    multisets = {k: C.c_multiset_check(cylinder, k) for k in (1, 2)}
    ms_ok = all(p == g for p, g in multisets.values())
    non_c = {k: sum(not m.class_c for m in cylinder.members(k)) for k in range(3, 7)}
    deep_named = sorted(names.names[m.key] for k in (3, 4) for m in cylinder.members(k)
                        if not m.class_c and m.key in names.names)
    want_deep = sorted(n for lst in T.DEEP_NAMES.values() for n in lst)
    ok = (sizes[1] == T.LEVEL_SIZES[1] and sizes[2] == T.LEVEL_SIZES[2] and ms_ok
          and non_c == T.DEEP_NON_C and deep_named == want_deep)
    record("criterion 5 gluing levels", ok,
           f"sizes {sizes} (33/31 counted from drawings), c multisets match: {ms_ok}, "
           f"non-class-C at levels 3..6: {list(non_c.values())}")
    assert ok


# 6 ------------------------------------------------------------------------


@pytest.mark.xfail(strict=True, reason="class C members and deeper gluings have boundary "
                   "distance above 3; the bound covers graphs without further short "
                   "cycles (see notes/decisions.md)")
def test_criterion_6_distance_all_members_literal(cylinder):
    dist = Counter(m.distance for m in cylinder.all_members())
    ok = max(dist) <= 3
    record("criterion 6 distance <= 3 over all members", ok,
           f"distances {dict(sorted(dist.items()))}")
    assert ok


def test_criterion_6_distance_and_far_instances(cylinder):
    base_max = max(m.distance for m in cylinder.members(0))
    rng = random.Random(20240611)
    extended = 0
    for _ in range(100):
        mg = C.random_far_instance(rng)
        assert C.mark_distance(mg) >= 4
        extended += C.all_precolorings_extend(mg)
    ok = base_max <= 3 and extended == 100
    record("criterion 6 (distance <= 3 without further short cycles; far instances)", ok,
           f"level-0 max distance {base_max}, {extended}/100 far instances extend")
    assert ok


# 7 ------------------------------------------------------------------------


def _corpus(disk16, cylinder):
    graphs = [g for i in sorted(disk16.K) for g in disk16.graphs(i)]
    graphs += [m.graph for m in cylinder.all_members()]
    graphs = [g for g in graphs if g.graph.n <= ORACLE_MAX_N]
    # perturbed copies give non-critical cases: subdivide or drop a free edge
    extra = []
    for g in graphs:
        fe = free_edges(g)
        if not fe:
            continue
        u, v = fe[0]
        if g.graph.n < ORACLE_MAX_N:
            extra.append(MarkedPlaneGraph(subdivide(g.graph, u, v), g.marks, check=False))
        rot = [[w for w in r if {x, w} != {u, v}] for x, r in enumerate(g.graph.rotations)]
        try:
            extra.append(MarkedPlaneGraph(PlaneGraph(rot), g.marks))
        except Exception:
            pass
    return graphs + extra


def test_criterion_7_oracle_equivalence(disk16, cylinder):
    corpus = _corpus(disk16, cylinder)
    fast = [is_critical(g) for g in corpus]
    slow = [is_critical_exhaustive(g) for g in corpus]
    agree = sum(a == b for a, b in zip(fast, slow))
    ok = agree == len(corpus)
    record("criterion 7 oracle equivalence", ok,
           f"{agree}/{len(corpus)} graphs with <= {ORACLE_MAX_N} vertices agree "
           f"({sum(fast)} critical)")
    assert ok
    assert 0 < sum(fast) < len(corpus)


# 8 ------------------------------------------------------------------------


def test_criterion_8_bounds(disk16):
    bad = D.bound_violations(disk16, range(T.BOUND_MIN_LENGTH, 17), T.BOUND_MIN_LENGTH)
    checked = sum(1 for i in range(10, 17) for m in disk16.members(i) if m.nontrivial)
    record("criterion 8 edge and face bounds", not bad,
           f"{len(bad)} violations among {checked} nontrivial members")
    assert not bad


# 9 ------------------------------------------------------------------------


def test_criterion_9_class_c():
    member = [C.is_class_c(C.class_c(n)) for n in range(11)]
    crit = [is_critical(C.class_c(n)) for n in range(7)]
    ok = all(member) and all(crit)
    record("criterion 9 class C", ok,
           f"recognised n=0..10: {sum(member)}/11, critical n=0..6: {sum(crit)}/7")
    assert ok
    keys = {canonical_key(C.class_c(n)) for n in range(11)}
    assert len(keys) == 11
