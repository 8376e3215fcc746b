"""Grow the disk catalogs K_5 .. K_11 and look at a few members.

A member of K_l is a plane graph of girth 5 whose outer face is a cycle of
length l, and in which every edge off the outer cycle is needed to stop
some 3-colouring of the outer cycle from extending.

    python3 demos/01_disk_catalogs.py
"""

from critatlas import diskgen as D
from critatlas.color import is_critical, precoloring_count
from critatlas.embed import format_rotg

cat = D.build_all(11)
print("catalog sizes:", cat.sizes())

# the bare cycle is always a member; everything else has inner structure
for ell in (8, 9):
    print(f"\nK_{ell}:")
    for m in cat.members(ell):
        mg = m.marked()
        print(f"  n={mg.graph.n:2d} m={mg.graph.m:2d} from {m.provenance}")

# an 8-cycle has 2^8 + 2 = 258 proper 3-colourings; the chord of the
# nontrivial K_8 member kills the ones that give its ends equal colours
chorded = [m.marked() for m in cat.members(8) if m.nontrivial][0]
print("\nprecolourings of the 8-face:", precoloring_count(chorded, "B"))
print("critical:", is_critical(chorded))
print(format_rotg(chorded, "the chorded 8-cycle"))

# members without a shortcut of length <= 4: only one exists up to length 11
free = D.shortcut_free(cat, range(5, 12), 4)
for ell, ms in free.items():
    for m in ms:
        mg = m.marked()
        print(f"shortcut-free member: length {ell}, n={mg.graph.n}, m={mg.graph.m}, "
              f"degrees {sorted(map(int, mg.graph.degrees()))}")
