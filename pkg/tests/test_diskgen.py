import pytest

from critatlas import cylgen as C
from critatlas import diskgen as D
from critatlas.catalog import CatalogStore
from critatlas.color import is_critical
from critatlas.constants import DISK_COUNTS
from critatlas.embed import canonical_key, girth_ok, marked_cycle

from oracles import girth5_disks


def test_small_catalog_sizes(small_disk):
    assert small_disk.sizes() == {i: DISK_COUNTS[i] for i in range(5, 13)}


def test_members_are_critical_girth_five_disks(small_disk):
    for ell in range(5, 12):
        for mg in small_disk.graphs(ell):
            assert mg.face("B").length == ell
            assert girth_ok(mg)
            assert is_critical(mg)


def test_members_are_two_connected(small_disk):
    for ell in range(8, 13):
        assert all(D.is_two_connected(m) for m in small_disk.members(ell))


@pytest.mark.parametrize("ell,nmax", [(8, 13), (9, 13)])
def test_catalog_matches_ear_enumeration(small_disk, ell, nmax):
    # independent route: grow every girth-5 disk from the bare cycle by
    # inserting ears, keep the critical ones
    found = {k for k, mg in girth5_disks(ell, nmax).items() if girth_ok(mg) and is_critical(mg)}
    ours = {canonical_key(mg) for mg in small_disk.graphs(ell) if mg.graph.n <= nmax}
    assert found == ours


def test_keys_match_member_keys(small_disk):
    for m in small_disk.members(11):
        assert canonical_key(m.marked()) == m.key


def test_rebuild_is_identical(small_disk):
    again = D.build_all(11)
    for ell in range(5, 12):
        assert set(again.K[ell]) == set(small_disk.K[ell])


def test_orientation_only_catalogs_are_larger(small_disk):
    # without reflections mirror pairs are counted twice
    ori = D.build_all(11, reflect=False)
    for ell in range(5, 12):
        mirrored = sum(1 for m in small_disk.members(ell)
                       if canonical_key(m.marked(), reflect=False)
                       != canonical_key(C.mirror_marked(m.marked()), reflect=False))
        assert ori.sizes()[ell] == DISK_COUNTS[ell] + mirrored


def test_subdividing_outer_edge_keeps_length_plus_one(small_disk):
    mg = small_disk.graphs(10)[-1]
    b = mg.mark("B")
    h = D.op_S(mg, (b.u, b.v))
    assert h.face("B").length == 11
    assert h.graph.n == mg.graph.n + 1


def test_gluing_two_cycles_along_an_edge():
    # two pentagons glued along a path of length 1 give the 8-cycle with a chord
    g = D.op_U(marked_cycle(5), [0, 1], marked_cycle(5), [0, 1])
    assert g.face("B").length == 8
    assert g.graph.m == 9
    assert is_critical(g)


def test_j_closure_stays_inside_catalog(small_disk):
    ell = 11
    members = small_disk.graphs(ell)
    closure = D.j_closure(members[:3])
    keys = set(small_disk.K[ell])
    assert {canonical_key(g) for g in closure} <= keys


def test_small_lengths_respect_bounds(small_disk):
    assert D.bound_violations(small_disk, range(10, 13)) == []


def test_no_shortcut_free_members_below_ten(small_disk):
    free = D.shortcut_free(small_disk, range(5, 13))
    assert {i: len(v) for i, v in free.items() if v} == {10: 1}


def test_catalog_store_roundtrip(tmp_path, small_disk):
    st = CatalogStore(tmp_path)
    D.save_catalog(small_disk, st, [8, 9, 10, 11])
    back = D.load_catalog(CatalogStore(tmp_path), 11)
    for ell in range(5, 12):
        assert set(back.K[ell]) == set(small_disk.K[ell])
