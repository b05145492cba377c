"""Pretrained word vectors from `.vec`-style text files.

Format: optional header line "<count> <dim>", then one word per line followed
by its components. Only vectors for the requested vocabulary are kept, so
multi-gigabyte vector files stream through without being materialized.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .corpus import WordEntry


class EmbeddingError(Exception):
    pass


class FileUnreadable(EmbeddingError):
    pass


class DimensionMismatch(EmbeddingError):
    pass


class EmptyIntersection(EmbeddingError):
    """None of the requested words exist in the vector file."""


class ZeroVector(EmbeddingError):
    pass


@dataclass
class EmbeddingTable:
    dimension: int
    vectors: dict[str, np.ndarray]
    warnings: list[str] = field(default_factory=list)

    def __contains__(self, word: str) -> bool:
        return word in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def get(self, word: str) -> np.ndarray | None:
        return self.vectors.get(word)


def _looks_like_header(line: str) -> bool:
    parts = line.split()
    if len(parts) != 2:
        return False
    return all(p.isdigit() for p in parts)


def load_vectors(path: str | Path, vocabulary: set[str] | None) -> EmbeddingTable:
    """Load vectors for exactly the requested vocabulary (None keeps every
    word in the file, which is how a long-lived service warms its cache).

    Malformed lines and all-zero vectors are skipped with a warning record;
    a component-count mismatch against the established dimension raises
    DimensionMismatch, and an empty result raises EmptyIntersection.
    """
    path = Path(path)
    try:
        fh = path.open("r", encoding="utf-8", errors="strict")
    except OSError as exc:
        raise FileUnreadable(f"cannot read {path}: {exc}") from exc

    wanted = None if vocabulary is None else set(vocabulary)
    vectors: dict[str, np.ndarray] = {}
    warnings: list[str] = []
    dim: int | None = None

    with fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if lineno == 1 and _looks_like_header(line):
                dim = int(line.split()[1])
                continue
            word, _, rest = line.partition(" ")
            parts = rest.split()
            if dim is None:
                dim = len(parts)
            if len(parts) != dim:
                raise DimensionMismatch(
                    f"{path}:{lineno}: expected {dim} components, got {len(parts)}"
                )
            if wanted is not None and word not in wanted:
                continue
            try:
                vec = np.array([float(p) for p in parts], dtype=np.float64)
            except ValueError:
                warnings.append(f"{path}:{lineno}: unparsable components for {word!r}")
                continue
            if not np.isfinite(vec).all():
                warnings.append(f"{path}:{lineno}: non-finite vector for {word!r}")
                continue
            if not vec.any():
                warnings.append(f"{path}:{lineno}: all-zero vector for {word!r}")
                continue
            vectors[word] = vec

    if not vectors:
        requested = "any" if wanted is None else f"the {len(wanted)} requested"
        raise EmptyIntersection(f"none of {requested} words found in {path}")
    return EmbeddingTable(dimension=int(dim or 0), vectors=vectors, warnings=warnings)


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity, clamped to [-1, 1] against rounding."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape {a.shape} vs {b.shape}")
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise ZeroVector("cosine undefined for zero vectors")
    return float(np.clip(float(a @ b) / (na * nb), -1.0, 1.0))


def drop_oov(entries: list[WordEntry], table: EmbeddingTable) -> list[WordEntry]:
    """Keep only entries with a vector in the table, attaching the vectors.
    Order is preserved."""
    out = []
    for entry in entries:
        vec = table.get(entry.surface)
        if vec is not None:
            out.append(WordEntry(surface=entry.surface, count=entry.count, vector=vec))
    return out
