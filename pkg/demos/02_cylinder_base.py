"""Level 0 of the cylinder catalog: two short boundary faces, no other short cycle.

Each graph is made by cutting a disk catalog member's outer face into two
arcs of length 3 or 4 plus two opposite segments, then identifying the
segments.  The c values say how many colourings of one boundary fail to
combine with the worst colouring of the other.

The full run needs K_6 .. K_16; this script reads them from the store built
by ``critatlas disk build`` (or ``$CRITATLAS_STORE``).

    python3 demos/02_cylinder_base.py
"""

import os

from critatlas import cylgen as C
from critatlas.catalog import CatalogStore

store = CatalogStore(os.environ.get("CRITATLAS_STORE", "atlas"))
cyl = C.load_cylinder(store, 2)
if 0 not in cyl.levels:
    raise SystemExit("no cylinder catalog found; run `critatlas cyl base` and `critatlas cyl glue` first")

names = C.name_assignment(cyl)
print(f"{'name':14} {'lengths':8} {'dist':>4} {'c12':>4} {'c21':>4}  derivation")
for m in cyl.members(0):
    print(f"{names.label(m.key):14} {str(m.lengths):8} {m.distance:4d} {m.c12:4d} {m.c21:4d}  {m.provenance}")

# gluing two members along equal boundaries only pays off when their c
# values cover all colourings of the glued cycle
print("\nlevel sizes:", cyl.sizes())
pub, got = C.c_multiset_check(cyl, 1)
print("level 1 c multiset matches the published table:", pub == got)
