"""Word vector ingestion and auxiliary count tables.

The embedding store is an immutable vocabulary + N x d float64 matrix.  Text
formats handled here: the ".vec" format (header "N d", then one
"word v1 ... vd" row per line), plain UTF-8 corpora, and "word<TAB>count"
TSV tables.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

import numpy as np

from ._util import ParseError, atomic_write_text

VEC_PRECISION = "%.9g"

_COUNT_RE = re.compile(r"\d+")


@dataclass(frozen=True, eq=False)
class EmbeddingSet:
    """Vocabulary plus row-aligned dense vectors.

    Immutable after construction (the matrix is marked read-only), so
    instances can be shared freely across worker threads.  ``normalized``
    records whether every row has unit L2 norm.
    """

    words: tuple[str, ...]
    vectors: np.ndarray
    normalized: bool = False
    _index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        vectors = np.ascontiguousarray(self.vectors, dtype=np.float64)
        if vectors.ndim != 2:
            raise ValueError(f"vectors must be a 2-d matrix, got shape {vectors.shape}")
        if len(self.words) != vectors.shape[0]:
            raise ValueError(
                f"{len(self.words)} words but {vectors.shape[0]} vector rows"
            )
        if vectors.size and not np.isfinite(vectors).all():
            raise ValueError("vectors contain non-finite components")
        index: dict[str, int] = {}
        for position, word in enumerate(self.words):
            if word in index:
                raise ValueError(f"duplicate word {word!r}")
            index[word] = position
        vectors.setflags(write=False)
        object.__setattr__(self, "words", tuple(self.words))
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "_index", index)

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in self._index

    def row(self, word: str) -> int:
        try:
            return self._index[word]
        except KeyError:
            raise KeyError(f"word {word!r} not in vocabulary") from None

    def vector(self, word: str) -> np.ndarray:
        return self.vectors[self.row(word)]


@dataclass(frozen=True)
class CountTable:
    """Map word -> nonnegative occurrence/synset/cluster count."""

    entries: dict[str, int]

    def __post_init__(self) -> None:
        for word, count in self.entries.items():
            if not isinstance(count, int) or count < 0:
                raise ValueError(f"count for {word!r} must be a nonnegative integer, got {count!r}")

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries

    def __getitem__(self, word: str) -> int:
        return self.entries[word]

    def get(self, word: str, default: int | None = None) -> int | None:
        return self.entries.get(word, default)

    def items(self):
        return self.entries.items()


def load_vec_file(path) -> EmbeddingSet:
    """Parse a ".vec" text file into an EmbeddingSet, preserving file order.

    Raises ParseError (with the offending line number) on a malformed
    header, wrong row arity, unparseable or non-finite numbers, duplicate
    words, or a row count that contradicts the header.
    """
    with open(path, encoding="utf-8") as handle:
        header = handle.readline()
        if not header.strip():
            raise ParseError(f"{path}:1: expected header 'N d', got empty line")
        parts = header.split()
        if len(parts) != 2:
            raise ParseError(f"{path}:1: expected header 'N d', got {header.strip()!r}")
        try:
            declared, dim = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"{path}:1: header fields must be integers, got {header.strip()!r}") from None
        if declared < 0 or dim < 1:
            raise ParseError(f"{path}:1: header needs N >= 0 and d >= 1, got N={declared} d={dim}")

        words: list[str] = []
        seen: dict[str, int] = {}
        rows = np.empty((declared, dim), dtype=np.float64)
        filled = 0
        for lineno, line in enumerate(handle, start=2):
            fields = line.split()
            if not fields:
                continue
            word, values = fields[0], fields[1:]
            if len(values) != dim:
                raise ParseError(
                    f"{path}:{lineno}: expected {dim} components for {word!r}, got {len(values)}"
                )
            if word in seen:
                raise ParseError(
                    f"{path}:{lineno}: duplicate word {word!r} (first seen on line {seen[word]})"
                )
            try:
                vector = [float(value) for value in values]
            except ValueError:
                raise ParseError(f"{path}:{lineno}: unparseable number in row for {word!r}") from None
            if not all(np.isfinite(vector)):
                raise ParseError(f"{path}:{lineno}: non-finite component in row for {word!r}")
            if filled >= declared:
                raise ParseError(f"{path}:{lineno}: more rows than the declared {declared}")
            rows[filled] = vector
            seen[word] = lineno
            words.append(word)
            filled += 1
        if filled != declared:
            raise ParseError(f"{path}: header declares {declared} rows, found {filled}")
    return EmbeddingSet(words=tuple(words), vectors=rows)


def save_vec_file(embeddings: EmbeddingSet, path) -> None:
    """Write the ".vec" text format at 9 significant digits."""
    lines = [f"{len(embeddings)} {embeddings.dim}"]
    for word, row in zip(embeddings.words, embeddings.vectors):
        rendered = " ".join(VEC_PRECISION % value for value in row)
        lines.append(f"{word} {rendered}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def l2_normalize_all(embeddings: EmbeddingSet) -> EmbeddingSet:
    """Scale every row to unit L2 norm; word order is unchanged."""
    norms = np.linalg.norm(embeddings.vectors, axis=1)
    zero = np.flatnonzero(norms == 0.0)
    if zero.size:
        raise ValueError(f"cannot normalize zero vector for word {embeddings.words[zero[0]]!r}")
    return EmbeddingSet(
        words=embeddings.words,
        vectors=embeddings.vectors / norms[:, None],
        normalized=True,
    )


def tokenize(text: str) -> Iterator[str]:
    """Lowercase, split on whitespace, strip non-alphanumeric affixes.

    Tokens emptied by stripping (pure punctuation) are dropped.
    """
    for raw in text.lower().split():
        start, end = 0, len(raw)
        while start < end and not raw[start].isalnum():
            start += 1
        while end > start and not raw[end - 1].isalnum():
            end -= 1
        if end > start:
            yield raw[start:end]


def count_frequencies(tokens: Iterable[str]) -> CountTable:
    """Exact occurrence count per token; an empty stream gives an empty table."""
    return CountTable(entries=dict(Counter(tokens)))


def count_corpus(path) -> CountTable:
    """Token frequencies of a plain-text corpus under `tokenize`."""
    counts: Counter[str] = Counter()
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            counts.update(tokenize(line))
    return CountTable(entries=dict(counts))


def load_count_table(path) -> CountTable:
    """Parse a "word<TAB>count" TSV; counts must be nonnegative integers."""
    entries: dict[str, int] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 2 or not fields[0]:
                raise ParseError(f"{path}:{lineno}: expected 'word<TAB>count', got {line!r}")
            word, raw_count = fields
            if not _COUNT_RE.fullmatch(raw_count):
                raise ParseError(
                    f"{path}:{lineno}: count for {word!r} must be a nonnegative integer, got {raw_count!r}"
                )
            if word in entries:
                raise ParseError(f"{path}:{lineno}: duplicate word {word!r}")
            entries[word] = int(raw_count)
    return CountTable(entries=entries)


def save_count_table(table: CountTable | Mapping[str, int], path) -> None:
    entries = table.entries if isinstance(table, CountTable) else dict(table)
    lines = [f"{word}\t{count}" for word, count in sorted(entries.items())]
    atomic_write_text(path, "\n".join(lines) + ("\n" if lines else ""))
