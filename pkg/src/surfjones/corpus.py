"""Link corpora: one ``name code`` pair per line, plus optional JSON metadata.

The text is kept line by line so that :meth:`Corpus.serialize` reproduces the
input exactly, comments and spacing included.  Metadata lives in a sidecar
file ``<stem>.meta.json`` keyed by entry name.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .gauss import Diagram, GaussCodeError, parse_link

_LINE = re.compile(r"^(\S+)(\s+)(\S+)(\s*)$")


class CorpusError(ValueError):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Expectation:
    invariant: str  # bracket, jk_unreduced, jk_reduced, jones, jk_vertical_mirror, ...
    value: str
    source: str
    discrepancy: str | None = None


@dataclass
class CorpusEntry:
    name: str
    code: str
    line: int
    meta: dict = field(default_factory=dict)

    @property
    def diagram(self) -> Diagram:
        return parse_link(self.code)

    @property
    def expectations(self) -> list[Expectation]:
        return [Expectation(**e) for e in self.meta.get("expected", [])]

    def expected(self, invariant: str) -> list[Expectation]:
        return [e for e in self.expectations if e.invariant == invariant]


@dataclass
class Corpus:
    lines: list[str]
    entries: list[CorpusEntry]
    trailing_newline: bool = True

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def names(self) -> list[str]:
        return [e.name for e in self.entries]

    def get(self, name: str) -> CorpusEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def serialize(self) -> str:
        text = "\n".join(self.lines)
        return text + "\n" if self.trailing_newline and self.lines else text


def parse_corpus(text: str, meta: dict | None = None) -> Corpus:
    meta = meta or {}
    trailing = text.endswith("\n")
    lines = text.split("\n")
    if trailing:
        lines.pop()
    entries: list[CorpusEntry] = []
    seen: set[str] = set()
    for i, raw in enumerate(lines, start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        m = _LINE.match(raw)
        if m is None:
            raise CorpusError("expected 'name code'", i)
        name, code = m.group(1), m.group(3)
        if name in seen:
            raise CorpusError(f"duplicate name {name!r}", i)
        seen.add(name)
        try:
            parse_link(code)
        except GaussCodeError as exc:
            raise CorpusError(f"{name}: {exc}", i) from exc
        entries.append(CorpusEntry(name, code, i, meta.get(name, {})))
    return Corpus(lines, entries, trailing)


def meta_path(path: Path) -> Path:
    return path.with_name(path.stem + ".meta.json")


def load_corpus(path: str | Path | None = None) -> Corpus:
    """Load a corpus file; without a path, the bundled corpus."""
    if path is None:
        base = resources.files("surfjones") / "data"
        text = (base / "corpus.txt").read_text(encoding="utf-8")
        meta = json.loads((base / "corpus.meta.json").read_text(encoding="utf-8"))
        return parse_corpus(text, meta)
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    mp = meta_path(path)
    meta = json.loads(mp.read_text(encoding="utf-8")) if mp.exists() else {}
    return parse_corpus(text, meta)


def bundled_corpus_path() -> Path:
    return Path(str(resources.files("surfjones") / "data" / "corpus.txt"))
