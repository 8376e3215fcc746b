"""Command-line driver: build, verify and query the catalogs.

Progress goes to standard error; every command ends with one summary line
of ``key=value`` fields on standard output.  Exit status: 0 success, 1 a
count or table differs from the published value, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import random
import sys
import time
from pathlib import Path

from . import constants as T
from . import cylgen as C
from . import diskgen as D
from .catalog import CatalogStore, UnknownFamily
from .color import is_critical, is_critical_exhaustive

log = logging.getLogger("critatlas")

DEFAULT_ROOT = "atlas"


class UsageError(Exception):
    pass


def _summary(fields: dict) -> None:
    print(" ".join(f"{k}={v}" for k, v in fields.items()), flush=True)


def threads_from_env() -> int:
    raw = os.environ.get("CRITATLAS_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"CRITATLAS_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"CRITATLAS_THREADS must be a positive integer, got {raw!r}")
    return n


def _store(args) -> CatalogStore:
    return CatalogStore(args.root, reflect=not args.orient_only)


def _disk(args, max_len: int) -> D.DiskCatalog:
    st = _store(args)
    cat = D.load_catalog(st, max_len)
    missing = [i for i in range(8, max_len + 1) if i not in cat.K]
    if missing:
        raise UsageError(f"disk catalogs {missing} not in {st.root}; run `disk build --max {max_len}`")
    return cat


def _cyl(args, max_level: int) -> C.CylinderCatalog:
    cat = C.load_cylinder(_store(args), max_level)
    if 0 not in cat.levels:
        raise UsageError(f"no cylinder catalog in {args.root}; run `cyl base` first")
    return cat


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_disk_build(args) -> int:
    if not 5 <= args.max:
        raise UsageError("--max must be at least 5")
    if args.max > 16:
        log.warning("lengths above 16 are experimental; no published counts to compare")
    st = _store(args)
    cat = D.load_catalog(st, args.max)

    def progress(i, cat):
        D.save_catalog(cat, st, [i])
        log.info("K_%d: %d members, %.1fs", i, len(cat.K[i]), cat.stats[i].get("seconds", 0))

    t0 = time.time()
    cat = D.build_all(args.max, cat.reflect, cat, progress=progress)
    D.save_catalog(cat, st, [5, 6, 7])
    sizes = cat.sizes()
    fields = {"cmd": "disk-build", "max": args.max}
    bad = []
    for i in range(5, args.max + 1):
        fields[f"K{i}"] = sizes[i]
        if cat.reflect and i in T.DISK_COUNTS and sizes[i] != T.DISK_COUNTS[i]:
            bad.append(f"K{i}")
    fields["seconds"] = round(time.time() - t0, 1)
    fields["mismatch"] = ",".join(bad) or "none"
    fields["status"] = "fail" if bad else "ok"
    _summary(fields)
    return 1 if bad else 0


def cmd_disk_verify(args) -> int:
    cat = _disk(args, args.max)
    lengths = range(8, args.max + 1)
    survivors = D.shortcut_free(cat, lengths)
    filtered = {i: D.filtered_count(cat, i, 2, True) for i in lengths if i >= 13}
    bounds = D.bound_violations(cat, lengths)
    fields = {"cmd": "disk-verify-crit16"}
    bad = []
    for i in lengths:
        fields[f"free{i}"] = len(survivors[i])
        if i in T.NO_SHORTCUT4_EXACT and len(survivors[i]) != T.NO_SHORTCUT4_EXACT[i]:
            bad.append(f"free{i}")
    small = sum(len(survivors[i]) for i in lengths if i <= 12)
    if args.max >= 12 and small != T.NO_SHORTCUT4_UP_TO_12:
        bad.append("free<=12")
    for i, n in filtered.items():
        fields[f"filtered{i}"] = n
        if i in T.DISK_FILTERED and n != T.DISK_FILTERED[i]:
            bad.append(f"filtered{i}")
    not2c = sum(not D.is_two_connected(m) for v in survivors.values() for m in v)
    fields["not_2connected"] = not2c
    fields["bound_violations"] = len(bounds)
    if not2c:
        bad.append("2connected")
    if bounds:
        bad.append("bounds")
    fields["mismatch"] = ",".join(bad) or "none"
    fields["status"] = "fail" if bad else "ok"
    _summary(fields)
    return 1 if bad else 0


def cmd_cyl_base(args) -> int:
    cat = _disk(args, args.max)
    funnel = C.Counter()
    base = C.enumerate_base(cat, args.max, funnel)
    log.info("base funnel: %s", dict(funnel))
    cc = C.CylinderCatalog(levels={0: base}, funnel=funnel)
    report = C.name_assignment(cc)
    st = _store(args)
    C.save_cylinder(cc, st, report)
    pub, got = C.c_multiset_check(cc, 0)
    dists = [m.distance for m in base.values()]
    bad = []
    if len(base) != T.LEVEL_SIZES[0]:
        bad.append("members")
    if pub != got:
        bad.append("ctable")
    if dists.count(3) != 1 or max(dists) != 3:
        bad.append("distance")
    _summary({"cmd": "cyl-base", "members": len(base), "max_distance": max(dists),
              "distance3": dists.count(3), "ctable": "match" if pub == got else "differ",
              "mismatch": ",".join(bad) or "none", "status": "fail" if bad else "ok"})
    return 1 if bad else 0


def cmd_cyl_glue(args) -> int:
    base = _cyl(args, 0).levels[0]
    funnel = C.Counter()
    t0 = time.time()
    cc = C.enumerate_levels(base, args.levels, funnel)
    log.info("glue funnel: %s", dict(funnel))
    report = C.name_assignment(cc)
    C.save_cylinder(cc, _store(args), report)
    fields = {"cmd": "cyl-glue", "levels": args.levels}
    bad = []
    for k in range(1, args.levels + 1):
        ms = cc.members(k)
        non_c = sum(not m.class_c for m in ms)
        fields[f"level{k}"] = len(ms)
        fields[f"nonC{k}"] = non_c
        if k in T.LEVEL_SIZES and len(ms) != T.LEVEL_SIZES[k]:
            bad.append(f"level{k}")
        if k in (1, 2):
            pub, got = C.c_multiset_check(cc, k)
            if pub != got:
                bad.append(f"ctable{k}")
        if k in T.DEEP_NON_C and non_c != T.DEEP_NON_C[k]:
            bad.append(f"nonC{k}")
    fields["ambiguous"] = len(report.ambiguous)
    fields["unmatched"] = ",".join(report.unmatched) or "none"
    fields["seconds"] = round(time.time() - t0, 1)
    fields["mismatch"] = ",".join(bad) or "none"
    fields["status"] = "fail" if bad else "ok"
    _summary(fields)
    return 1 if bad else 0


def cmd_ctable(args) -> int:
    cc = _cyl(args, 2)
    if 2 not in cc.levels:
        raise UsageError("levels 1 and 2 missing; run `cyl glue --levels 2`")
    report = C.name_assignment(cc)
    rows = C.ctable_rows(cc, report, 2)
    out = Path(args.out) if args.out else Path(args.root) / "ctable.tsv"
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), delimiter="\t", lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    bad = [f"level{k}" for k in range(3) if C.c_multiset_check(cc, k)[0] != C.c_multiset_check(cc, k)[1]]
    _summary({"cmd": "ctable", "rows": len(rows), "out": out,
              "name_match": sum(r["match"] for r in rows),
              "mismatch": ",".join(bad) or "none", "status": "fail" if bad else "ok"})
    return 1 if bad else 0


def cmd_filters(args) -> int:
    cc = _cyl(args, 6)
    report = C.name_assignment(cc)
    graphs = {m.key: m.graph for m in cc.all_members()}
    jg = C.vertex_boundary_graphs(cc.all_members())
    graphs.update(jg)
    lists = C.special_filters(graphs)
    out = Path(args.out) if args.out else Path(args.root) / "filters.tsv"
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w") as fh:
        fh.write("list\tname\tkey\n")
        for c, keys in lists.items():
            for k in keys:
                name = report.label(k) or ("J" if k in jg else "")
                fh.write(f"{c}\t{name}\t{k.hex()}\n")
    fields = {"cmd": "filters", "J": len(jg)}
    bad = [] if len(jg) == len(T.J_NAMES) else ["J"]
    for c, keys in lists.items():
        fields[c] = len(keys)
        if len(keys) != len(T.SPECIAL_LISTS[c]):
            bad.append(c)
    fields["out"] = out
    fields["mismatch"] = ",".join(bad) or "none"
    fields["status"] = "fail" if bad else "ok"
    _summary(fields)
    return 1 if bad else 0


def cmd_classc(args) -> int:
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    choices = [int(c) for c in args.choices] if args.choices else None
    if choices is not None and (len(choices) != args.n or set(choices) - {0, 1}):
        raise UsageError("--choices needs n digits, each 0 or 1")
    mg = C.class_c(args.n, choices)
    member = C.is_class_c(mg)
    crit = is_critical(mg) if args.n <= args.crit_max else None
    from .color import c_pair

    c12, c21 = c_pair(mg) if args.n <= args.crit_max else ("-", "-")
    ok = member and crit is not False
    _summary({"cmd": "classc", "n": args.n, "vertices": mg.graph.n, "edges": mg.graph.m,
              "is_class_c": int(member), "critical": "-" if crit is None else int(crit),
              "c12": c12, "c21": c21, "status": "ok" if ok else "fail"})
    return 0 if ok else 1


def cmd_export(args) -> int:
    st = _store(args)
    try:
        path = st.export(args.family, args.format, args.out)
    except UnknownFamily:
        raise UsageError(f"unknown family {args.family!r} in {st.root}") from None
    _summary({"cmd": "export", "family": args.family, "format": args.format,
              "records": len(st.keys(args.family)), "out": path, "status": "ok"})
    return 0


def cmd_selftest(args) -> int:
    """Small-instance oracles that run in seconds without a store."""
    t0 = time.time()
    failures = []
    cat = D.build_all(10)
    for i, n in cat.sizes().items():
        if n != T.DISK_COUNTS[i]:
            failures.append(f"K{i}")
    checked = 0
    for i in range(8, 11):
        for mg in cat.graphs(i):
            if mg.graph.n <= 12:
                checked += 1
                if is_critical(mg) != is_critical_exhaustive(mg):
                    failures.append(f"oracle-K{i}")
    for n in range(4):
        mg = C.class_c(n)
        if not (C.is_class_c(mg) and is_critical(mg)):
            failures.append(f"classc{n}")
    for l1, l2, want in ((3, 4, (5, 15)), (4, 4, (15, 15))):
        m = C.make_member(C.shared_edge_pair(l1, l2), 0)
        if m.c_sorted != want:
            failures.append(f"shared{l1}{l2}")
    rng = random.Random(0)
    for _ in range(10):
        if not C.all_precolorings_extend(C.random_far_instance(rng)):
            failures.append("far")
            break
    _summary({"cmd": "selftest", "oracle_graphs": checked, "seconds": round(time.time() - t0, 1),
              "failures": ",".join(failures) or "none", "status": "fail" if failures else "ok"})
    return 1 if failures else 0


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="critatlas", description=__doc__.splitlines()[0])
    p.add_argument("--root", default=os.environ.get("CRITATLAS_STORE", DEFAULT_ROOT),
                   help="catalog store directory (default: $CRITATLAS_STORE or ./atlas)")
    p.add_argument("--orient-only", action="store_true",
                   help="identify graphs only up to orientation-preserving isomorphism")
    p.add_argument("-q", "--quiet", action="store_true", help="no progress on stderr")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    disk = sub.add_parser("disk", help="disk catalogs K_i")
    dsub = disk.add_subparsers(dest="disk_cmd", required=True, parser_class=_Parser)
    b = dsub.add_parser("build", help="generate K_8 .. K_max, resuming from the store")
    b.add_argument("--max", type=int, default=16)
    b.set_defaults(func=cmd_disk_build)
    v = dsub.add_parser("verify-crit16", help="shortcut-free survivors, filtered counts, bounds")
    v.add_argument("--max", type=int, default=16)
    v.set_defaults(func=cmd_disk_verify)

    cyl = sub.add_parser("cyl", help="cylinder catalogs")
    csub = cyl.add_subparsers(dest="cyl_cmd", required=True, parser_class=_Parser)
    cb = csub.add_parser("base", help="level 0 from the disk catalogs")
    cb.add_argument("--max", type=int, default=16)
    cb.set_defaults(func=cmd_cyl_base)
    cg = csub.add_parser("glue", help="levels 1..k by gluing")
    cg.add_argument("--levels", type=int, default=6)
    cg.set_defaults(func=cmd_cyl_glue)

    ct = sub.add_parser("ctable", help="c-value table TSV for levels 0..2")
    ct.add_argument("--out")
    ct.set_defaults(func=cmd_ctable)
    fl = sub.add_parser("filters", help="the six special lists and single-vertex boundaries")
    fl.add_argument("--out")
    fl.set_defaults(func=cmd_filters)
    cc = sub.add_parser("classc", help="build and check a class-C graph")
    cc.add_argument("--n", type=int, required=True)
    cc.add_argument("--choices", help="n digits 0/1 selecting the next degree-2 corner")
    cc.add_argument("--crit-max", type=int, default=6, help="largest n checked for criticality")
    cc.set_defaults(func=cmd_classc)
    ex = sub.add_parser("export", help="export a family as rotg, json or dot")
    ex.add_argument("family", help="e.g. disk/K10 or cyl/level0")
    ex.add_argument("--format", choices=("rotg", "json", "dot"), default="json")
    ex.add_argument("--out")
    ex.set_defaults(func=cmd_export)
    st = sub.add_parser("selftest", help="brute-force oracles on small instances")
    st.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        threads_from_env()
        logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                            stream=sys.stderr, format="%(levelname)s %(message)s")
        return args.func(args)
    except UsageError as exc:
        print(f"critatlas: {exc}", file=sys.stderr)
        _summary({"status": "usage-error"})
        return 2


if __name__ == "__main__":
    sys.exit(main())
