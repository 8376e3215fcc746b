"""On-disk catalog store: rotg records, TSV metadata, manifest and exports."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from .embed import MarkedPlaneGraph, canonical_key, format_rotg, parse_rotg

GENERATOR_VERSION = "critatlas 0.1.0"


class IoFailure(OSError):
    pass


class UnknownFamily(KeyError):
    pass


class ManifestMismatch(ValueError):
    """A record file does not match the checksum stored in the manifest."""


@dataclass
class Entry:
    graph: MarkedPlaneGraph
    provenance: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)


class CatalogStore:
    """A directory of graph families.

    A family such as ``disk/K13`` is stored as ``disk/K13.rotg`` (records in
    canonical-key order) and ``disk/K13.meta.tsv``; ``manifest.txt`` lists
    every record file with its SHA-256 and record count.
    """

    def __init__(self, root, reflect: bool = True):
        self.root = Path(root)
        self.reflect = reflect
        self.families: dict[str, dict[bytes, Entry]] = {}

    # -- in-memory ---------------------------------------------------------

    def put(self, family: str, mg: MarkedPlaneGraph, provenance=None, meta=None) -> bool:
        fam = self.families.setdefault(family, {})
        key = canonical_key(mg, self.reflect)
        e = fam.get(key)
        inserted = e is None
        if inserted:
            e = fam[key] = Entry(mg)
        if provenance is not None:
            e.provenance.append(str(provenance))
        if meta:
            e.meta.update(meta)
        return inserted

    def keys(self, family: str) -> list[bytes]:
        return sorted(self._fam(family))

    def entries(self, family: str) -> list[tuple[bytes, Entry]]:
        fam = self._fam(family)
        return [(k, fam[k]) for k in sorted(fam)]

    def graphs(self, family: str) -> list[MarkedPlaneGraph]:
        return [e.graph for _, e in self.entries(family)]

    def __contains__(self, family: str) -> bool:
        return family in self.families or (self.root / f"{family}.rotg").exists()

    def _fam(self, family):
        if family not in self.families:
            if (self.root / f"{family}.rotg").exists():
                self.load(family)
            else:
                raise UnknownFamily(family)
        return self.families[family]

    # -- persistence -------------------------------------------------------

    def save(self, family: str, columns: list[str] | None = None) -> Path:
        ents = self.entries(family)
        path = self.root / f"{family}.rotg"
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            chunks = []
            for k, e in ents:
                prov = "; ".join(e.provenance[:3])
                more = len(e.provenance) - 3
                if more > 0:
                    prov += f"; +{more} more"
                chunks.append(format_rotg(e.graph, f"key {k.hex()}\nprovenance {prov}"))
            data = "".join(chunks).encode()
            path.write_bytes(data)
            cols = columns or sorted({c for _, e in ents for c in e.meta})
            lines = ["\t".join(["key"] + cols)]
            for k, e in ents:
                lines.append("\t".join([k.hex()] + [_cell(e.meta.get(c, "")) for c in cols]))
            (self.root / f"{family}.meta.tsv").write_text("\n".join(lines) + "\n")
            self._write_manifest(family, hashlib.sha256(data).hexdigest(), len(ents))
        except OSError as exc:
            raise IoFailure(str(exc)) from exc
        return path

    def load(self, family: str, verify: bool = True) -> list[MarkedPlaneGraph]:
        path = self.root / f"{family}.rotg"
        try:
            data = path.read_bytes()
        except FileNotFoundError:
            raise UnknownFamily(family) from None
        except OSError as exc:
            raise IoFailure(str(exc)) from exc
        if verify:
            self.verify(family, data)
        graphs = parse_rotg(data.decode())
        meta = self._read_meta(family)
        fam = {}
        for mg in graphs:
            k = canonical_key(mg, self.reflect)
            fam[k] = Entry(mg, meta=meta.get(k.hex(), {}))
        self.families[family] = fam
        return graphs

    def _read_meta(self, family):
        p = self.root / f"{family}.meta.tsv"
        if not p.exists():
            return {}
        rows = p.read_text().splitlines()
        head = rows[0].split("\t")
        out = {}
        for r in rows[1:]:
            cells = r.split("\t")
            out[cells[0]] = dict(zip(head[1:], cells[1:]))
        return out

    def manifest(self) -> dict[str, tuple[str, int]]:
        p = self.root / "manifest.txt"
        out = {}
        if p.exists():
            for line in p.read_text().splitlines():
                if not line or line.startswith("#"):
                    continue
                name, digest, count = line.split()
                out[name] = (digest, int(count))
        return out

    def _write_manifest(self, family, digest, count):
        man = self.manifest()
        man[f"{family}.rotg"] = (digest, count)
        lines = [f"# {GENERATOR_VERSION}"]
        for name in sorted(man):
            d, c = man[name]
            lines.append(f"{name}  {d}  {c}")
        tmp = self.root / "manifest.txt.tmp"
        tmp.write_text("\n".join(lines) + "\n")
        os.replace(tmp, self.root / "manifest.txt")

    def verify(self, family: str, data: bytes | None = None) -> None:
        name = f"{family}.rotg"
        man = self.manifest()
        if name not in man:
            raise ManifestMismatch(f"{name} missing from manifest")
        if data is None:
            data = (self.root / name).read_bytes()
        if hashlib.sha256(data).hexdigest() != man[name][0]:
            raise ManifestMismatch(f"checksum mismatch for {name}")

    # -- export ------------------------------------------------------------

    def export(self, family: str, fmt: str, out_dir=None) -> Path:
        ents = self.entries(family)
        out_dir = Path(out_dir) if out_dir else self.root / "export"
        base = out_dir / family
        base.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "rotg":
            path = base.with_suffix(".rotg")
            path.write_text("".join(format_rotg(e.graph, f"key {k.hex()}") for k, e in ents))
        elif fmt == "json":
            path = base.with_suffix(".json")
            recs = [to_json(e.graph, k, e.meta) for k, e in ents]
            path.write_text(json.dumps(recs, indent=1, sort_keys=True) + "\n")
        elif fmt == "dot":
            path = base.with_suffix(".dot")
            path.write_text("".join(to_dot(e.graph, f"g{i}") for i, (_, e) in enumerate(ents)))
        else:
            raise ValueError(f"unknown export format {fmt!r}")
        return path


def _cell(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    return str(v)


def to_json(mg: MarkedPlaneGraph, key: bytes | None = None, meta=None) -> dict:
    return {
        "key": (key or canonical_key(mg)).hex(),
        "n": mg.graph.n,
        "rotations": [list(r) for r in mg.graph.rotations],
        "marks": [{"role": m.role, "u": m.u, "v": m.v} for m in mg.marks],
        "meta": {k: _cell(v) for k, v in (meta or {}).items()},
    }


def to_dot(mg: MarkedPlaneGraph, name: str = "g") -> str:
    """Graphviz description; edges of marked faces are drawn bold and coloured."""
    styles = {"B": "red", "C1": "red", "C2": "blue"}
    marked = {}
    for mk in mg.marks:
        for e in mg.mark_edges(mk.role):
            marked.setdefault(e, styles.get(mk.role, "red"))
    vmark = {mk.u: styles.get(mk.role) for mk in mg.marks if mk.is_vertex}
    lines = [f"graph {name} {{"]
    for v in range(mg.graph.n):
        extra = f' [style=filled, fillcolor={vmark[v]}]' if v in vmark else ""
        lines.append(f"  {v}{extra};")
    for u, v in mg.graph.edges():
        c = marked.get((u, v))
        style = f" [color={c}, penwidth=2.5]" if c else ""
        lines.append(f"  {u} -- {v}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
