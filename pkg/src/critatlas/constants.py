"""Published reference values: catalog sizes, c-value tables and named lists.

c-value rows are ``(name, level, c_a, c_b)`` with the two directed values
in the order printed; comparisons use the unordered pair because the
printed direction depends on which boundary is drawn outside.
"""

# disk catalogs K_i: number of critical graphs with outer face of length i
DISK_COUNTS = {5: 1, 6: 1, 7: 1, 8: 2, 9: 3, 10: 6, 11: 12, 12: 37,
               13: 108, 14: 427, 15: 1746, 16: 7969}

# nontrivial members with no shortcut of length <= 2 and no two adjacent
# vertices of degree two
DISK_FILTERED = {13: 0, 14: 8, 15: 13, 16: 76}

# nontrivial members with no shortcut of length <= 4: one graph each at
# lengths 14 and 16, one more of length at most 12, nothing else up to 16
NO_SHORTCUT4_EXACT = {13: 0, 14: 1, 15: 0, 16: 1}
NO_SHORTCUT4_UP_TO_12 = 1

# edge bound |E| <= 18 l - 160 and internal face bound m(G) <= l - 3 hold for
# nontrivial members with l >= 10
EDGE_BOUND = (18, -160)
BOUND_MIN_LENGTH = 10

# level 0: no further cycle of length <= 4.  Letter = boundary distance.
BASE_TABLE = [
    ("Z1", 0, 15, 15), ("Z2", 0, 12, 12), ("Z3", 0, 16, 16), ("Z4", 0, 5, 15),
    ("Z5", 0, 4, 12), ("Z6", 0, 4, 4),
    ("O1", 0, 6, 6), ("O2", 0, 12, 11), ("O3", 0, 11, 11), ("O4", 0, 12, 12),
    ("O5", 0, 2, 6), ("O6", 0, 4, 11), ("O7", 0, 2, 2),
    ("T1", 0, 8, 8), ("T2", 0, 1, 2), ("T3", 0, 4, 4), ("T4", 0, 3, 3),
    ("T5", 0, 2, 2), ("T6", 0, 2, 2), ("T7", 0, 2, 2), ("T8", 0, 2, 2),
    ("R", 0, 4, 4),
]
DISTANCE_LETTER = {"Z": 0, "O": 1, "T": 2, "R": 3}

# level 1: one separating cycle.  D: it is a triangle; A: a 4-cycle between
# two 4-faces; X: a 4-cycle with a triangle boundary.  X5' has no row of
# its own and shares the X5 row (same graph, other embedding).
LEVEL1_TABLE = [
    ("D1", 1, 12, 12), ("D2", 1, 4, 12), ("D3", 1, 8, 12), ("D4", 1, 4, 8),
    ("D5", 1, 15, 15), ("D6", 1, 6, 6), ("D7", 1, 11, 12), ("D8", 1, 2, 6),
    ("D9", 1, 2, 4), ("D10", 1, 6, 4), ("D11", 1, 6, 6),
    ("A1", 1, 9, 9), ("A2", 1, 1, 3), ("A3", 1, 2, 3), ("A4", 1, 4, 2),
    ("A5", 1, 4, 6), ("A5'", 1, 4, 6), ("A6", 1, 2, 1), ("A7", 1, 2, 3),
    ("A8", 1, 10, 10), ("A9", 1, 9, 8), ("A10", 1, 2, 2), ("A11", 1, 14, 14),
    ("A12", 1, 4, 4), ("A12'", 1, 4, 4), ("A13", 1, 4, 4),
    ("X1", 1, 9, 3), ("X2", 1, 3, 3), ("X3", 1, 1, 1), ("X4", 1, 2, 1),
    ("X5", 1, 4, 2), ("X5'", 1, 4, 2), ("X6", 1, 2, 1),
]

# which level-0 pieces a level-1 graph is glued from: (one side, other side,
# pieces excluded on both sides); None = unconstrained
LEVEL1_PIECES = {
    **{n: ({"Z5", "Z6"}, {"Z4"}, set()) for n in ("D1", "D2")},
    **{n: ({"Z5", "Z6"}, {"O6"}, set()) for n in ("D3", "D4")},
    **{n: ({"Z4"}, None, {"Z5", "Z6", "O6"}) for n in ("D5", "D6", "D8")},
    "D7": ({"Z4"}, {"O6"}, set()),
    **{n: ({"O6"}, None, {"Z4", "Z5", "Z6"}) for n in ("D9", "D10", "D11")},
    **{n: ({"Z1", "Z2", "O2"}, {"Z1", "O2", "O4", "T3", "T4"}, set())
       for n in ("A1", "A2", "A3")},
    **{n: ({"O2", "O3"}, {"Z3", "O2", "O3", "O4", "T1"}, {"Z1", "Z2"})
       for n in ("A4", "A5", "A5'", "A6", "A7")},
    **{n: ({"O4"}, {"Z3", "O1", "O4", "T1"}, {"Z1", "Z2", "O2", "O3"})
       for n in ("A8", "A9", "A10")},
    **{n: ({"Z3"}, None, {"Z1", "Z2", "O2", "O3", "O4"})
       for n in ("A11", "A12", "A12'", "A13")},
}

# level 2 (two separating cycles); names are compositions of lower names
LEVEL2_TABLE = [
    ("Z4D2", 2, 12, 12), ("Z4Z4", 2, 12, 8), ("Z4D8", 2, 6, 6), ("Z4Z9", 2, 6, 4),
    ("O6D4", 2, 8, 8), ("O6D9", 2, 4, 4), ("Z4X1b", 2, 9, 9), ("Z4X3", 2, 1, 3),
    ("Z4X4a", 2, 2, 3), ("Z4X4b", 2, 2, 3), ("Z4X5", 2, 4, 6), ("Z4X5'", 2, 4, 6),
    ("Z4X6a", 2, 2, 3), ("Z4X6b", 2, 2, 3), ("Z5X5", 2, 4, 6), ("Z5X5'", 2, 4, 6),
    ("Z4X2", 2, 3, 9), ("Z6X5", 2, 4, 2), ("Z6X5'", 2, 4, 2), ("Z1A1", 2, 3, 3),
    ("Z4A1", 2, 3, 1), ("Z4X1a", 2, 1, 1), ("Z3A8a", 2, 4, 4), ("Z3A8b", 2, 8, 8),
    ("Z3A9a", 2, 4, 4), ("Z3A9b", 2, 4, 4), ("Z3A11a", 2, 12, 12),
    ("Z3A11b", 2, 12, 12), ("Z3A13", 2, 4, 4), ("O4A8", 2, 2, 2), ("O4A9", 2, 2, 2),
]

# labels of the level-2 table that do not compose from lower names
UNMATCHED_LABELS = ("Z4Z4", "Z4Z9")

# non-class-C graphs with three or four separating cycles.  Z4X4Z4a/b is
# also written Z4X2Z4a/b; the composition decides which spelling fits.
DEEP_NAMES = {
    3: ["X5D2", "X5'D2", "X5D4", "X5'D4", "Z4X4Z4a", "Z4X4Z4b", "Z4Z4A1",
        "Z3A8Z3", "Z3A9Z3", "Z4Z4X1"],
    4: ["Z4Z4Z1Z4Z4a", "Z4Z4Z1Z4Z4b"],
}
DEEP_ALIASES = {"Z4X4Z4a": "Z4X2Z4a", "Z4X4Z4b": "Z4X2Z4b"}

LEVEL_SIZES = {0: 22, 1: 33, 2: 31}
DEEP_NON_C = {3: 10, 4: 2, 5: 0, 6: 0}

# critical graphs with a single-vertex boundary (triangle boundary reduced)
J_NAMES = ["J1", "J2", "J3", "J4", "J5"]

# the six special lists (distance / face-length / short-cycle conditions)
SPECIAL_LISTS = {
    "a": ["D9", "D10", "A12", "A12'", "Z4D8", "Z4D9", "O6D9", "Z5X5", "Z5X5'"],
    "b": ["R", "J5", "D9", "D10", "A10", "A12", "A12'", "Z4D4", "O6D4", "Z4X4b",
          "Z3A9b", "O4A9"],
    "c": ["R", "A12", "A12'", "Z4X4b"],
    "d": ["D6", "D10"],
    "e": ["J4", "J5", "D6", "D8", "D9", "D10", "Z4D8", "Z4D9", "O6D9"],
    "f": ["D9", "D10", "A7", "A12", "A12'"],
}


def table_rows():
    return BASE_TABLE + LEVEL1_TABLE + LEVEL2_TABLE
