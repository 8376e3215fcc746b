"""Class C ladders and boundaries that are far apart.

Class C starts from a 4-cycle and repeatedly wraps a new 4-face around the
old one.  Every graph in it is critical, so boundary distance alone does
not bound critical cylinders; the short separating 4-cycles are what let
the ladder grow.  Without such cycles, boundaries at distance 4 or more
never block a colouring.

    python3 demos/03_class_c_and_far_boundaries.py
"""

import random

from critatlas import cylgen as C
from critatlas.color import c_pair, is_critical
from critatlas.embed import mark_distance

for n in range(6):
    mg = C.class_c(n)
    print(f"class_c({n}): n={mg.graph.n:2d} m={mg.graph.m:2d} distance={mark_distance(mg)} "
          f"short separating cycles={C.cylinder_level(mg)} critical={is_critical(mg)} c={c_pair(mg)}")

rng = random.Random(1)
ok = 0
for _ in range(20):
    mg = C.random_far_instance(rng)
    ok += C.all_precolorings_extend(mg)
print(f"\nrandom instances with boundaries at distance >= 4: {ok}/20 extend every precolouring")
