"""Access to the bundled instance corpus and its manifest.

The manifest is a comma-separated text file mapping instance name to
its file path (relative to the manifest) and, when one is known, the
best-known order-1 makespan used for repetition baselines.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .instance import Instance, parse_extended, parse_orlib


@dataclass(frozen=True)
class ManifestEntry:
    name: str
    path: str
    best1: float | None


def parse_manifest(text: str) -> list[ManifestEntry]:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) not in (2, 3):
            raise ValueError(f"manifest line {lineno}: expected 'name,path[,best1]', got {raw!r}")
        best1 = float(fields[2]) if len(fields) == 3 and fields[2] else None
        entries.append(ManifestEntry(name=fields[0], path=fields[1], best1=best1))
    return entries


def load_instance_file(path: Path, name: str | None = None) -> Instance:
    """Parse a file, picking the format from its first data line."""
    text = path.read_text()
    inst_name = name if name is not None else path.stem
    if _looks_extended(text):
        return parse_extended(text, name=inst_name)
    return parse_orlib(text, name=inst_name)


def _looks_extended(text: str) -> bool:
    """Extended lines lead with an op count: token count is odd."""
    lines = [l.strip() for l in text.splitlines() if l.strip() and not l.strip().startswith("#")]
    if len(lines) < 2:
        return False
    return len(lines[1].split()) % 2 == 1


def load_corpus_dir(directory: Path) -> dict[str, Instance]:
    """All *.jss instances of a directory keyed by file stem."""
    corpus = {}
    for path in sorted(directory.glob("*.jss")):
        corpus[path.stem] = load_instance_file(path)
    return corpus


def bundled_data_dir() -> Path:
    return Path(resources.files("cjsp") / "data")


def bundled_manifest() -> list[ManifestEntry]:
    return parse_manifest((bundled_data_dir() / "manifest.txt").read_text())


def load_bundled_corpus() -> dict[str, Instance]:
    base = bundled_data_dir()
    corpus = {}
    for entry in bundled_manifest():
        corpus[entry.name] = load_instance_file(base / entry.path, name=entry.name)
    return corpus


def load_bundled_instance(name: str) -> Instance:
    base = bundled_data_dir()
    for entry in bundled_manifest():
        if entry.name == name:
            return load_instance_file(base / entry.path, name=entry.name)
    raise KeyError(f"no bundled instance named {name!r}")


def bundled_registry():
    """Best-known registry shipped with the package (stock values plus
    reference results for the hand-crafted instances)."""
    from .bench import BestKnownRegistry

    return BestKnownRegistry.from_csv((bundled_data_dir() / "registry.csv").read_text())
