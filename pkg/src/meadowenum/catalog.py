"""Versioned JSON catalogs of rings, lattices and meadows, plus DOT export."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .build import DirectedLatticeOfRings
from .errors import FormatError
from .lattices import Lattice
from .ring_enum import GENERATOR_VERSION
from .rings import RingTable, iter_bases

FORMAT_VERSION = 1
KINDS = {"rings": RingTable, "lattices": Lattice, "meadows": DirectedLatticeOfRings}


def generator_hash(kind: str) -> str:
    blob = json.dumps({"kind": kind, "format": FORMAT_VERSION, "generator": GENERATOR_VERSION},
                      sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def sort_key(entry) -> tuple:
    if isinstance(entry, (RingTable, Lattice)):
        return (entry.key,)
    # meadows: vertex count, lattice shape, ring classes, then the labels themselves
    return (entry.order, entry.lattice.key, tuple(R.key for R in entry.rings), entry.edge_maps)


@dataclass(frozen=True)
class CatalogFile:
    kind: str
    version: int
    generator: str
    entries: list

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "version": self.version,
            "generator": self.generator,
            "entries": [e.to_json() for e in self.entries],
        }


def dumps(kind: str, entries, sort: bool = True) -> str:
    if kind not in KINDS:
        raise FormatError(f"unknown catalog kind {kind!r}")
    entries = sorted(entries, key=sort_key) if sort else list(entries)
    cat = CatalogFile(kind, FORMAT_VERSION, generator_hash(kind), entries)
    return json.dumps(cat.to_json(), separators=(",", ":")) + "\n"


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write to a temp file in the target directory, then rename over the target."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_catalog(kind: str, entries, path, sort: bool = True) -> None:
    write_atomic(path, dumps(kind, entries, sort))


def parse_catalog(obj) -> CatalogFile:
    if not isinstance(obj, dict) or not {"kind", "version", "entries"} <= obj.keys():
        raise FormatError("not a catalog file: expected kind, version and entries")
    if obj["version"] != FORMAT_VERSION:
        raise FormatError(f"catalog format version {obj['version']!r}, expected {FORMAT_VERSION}")
    kind = obj["kind"]
    if kind not in KINDS:
        raise FormatError(f"unknown catalog kind {kind!r}")
    try:
        entries = [KINDS[kind].from_json(e) for e in obj["entries"]]
    except (KeyError, TypeError, IndexError) as exc:
        raise FormatError(f"malformed {kind} entry: {exc}") from None
    return CatalogFile(kind, obj["version"], obj.get("generator", ""), entries)


def load_catalog_file(path) -> CatalogFile:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None
    return parse_catalog(obj)


def load_catalog(path) -> list:
    return load_catalog_file(path).entries


# -- DOT ---------------------------------------------------------------------------

def generator_images(dl: DirectedLatticeOfRings, edge) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Additive generators of the upper ring (the unit first) and their images."""
    u, v = edge
    R = dl.rings[u]
    gens = next(iter_bases(R, first=R.one))[::-1] if R.order > 1 else (R.zero,)
    h = dl.edge_homs[edge].map
    return tuple(gens), tuple(h[g] for g in gens)


def _ring_label(R: RingTable) -> str:
    return f"{R.name or 'R'} ({R.order})" if R.order > 1 else "{a} (1)"


def export_dot(dl: DirectedLatticeOfRings, name: str = "meadow") -> str:
    """Hasse diagram with ring labels; edges point down and carry generator images."""
    lines = [f"digraph {name} {{", "  rankdir=TB;"]
    for v, R in enumerate(dl.rings):
        lines.append(f'  v{v} [label="{_ring_label(R)}"];')
    for u, v in sorted(dl.lattice.covers):
        gens, imgs = generator_images(dl, (u, v))
        src = ",".join(map(str, gens))
        dst = ",".join(map(str, imgs))
        lines.append(f'  v{u} -> v{v} [label="[{src}] -> [{dst}]"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
