"""Dense retrieval: exact top-K passages by embedding inner product.

The index is an exhaustive scan (no approximate structures), so results are
provably the prefix of the full score ordering. Ties break by ascending
passage id. Passages are embedded from "title text".
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .corpus import Corpus, RankedList
from .encoders import Encoder
from .errors import DimMismatchError, MissingFileError, VersionMismatchError

_MAGIC = b"SRDI"
_VERSION = 1


@dataclass
class DenseIndex:
    dim: int
    ids: tuple[str, ...]
    matrix: np.ndarray  # (n, dim) float64

    def __post_init__(self):
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("index passage ids must be distinct")
        if self.matrix.shape != (len(self.ids), self.dim):
            raise DimMismatchError(
                f"matrix shape {self.matrix.shape} does not match "
                f"({len(self.ids)}, {self.dim})")

    def __len__(self) -> int:
        return len(self.ids)


def passage_embedding_text(title: str, text: str) -> str:
    return f"{title} {text}"


def build_dense_index(corpus: Corpus, encoder: Encoder) -> DenseIndex:
    ids = []
    rows = []
    for p in corpus:
        emb = np.asarray(encoder.encode(passage_embedding_text(p.title, p.text)),
                         dtype=np.float64)
        if emb.shape != (encoder.dim,):
            raise DimMismatchError(
                f"encoder produced shape {emb.shape}, expected ({encoder.dim},)")
        ids.append(p.id)
        rows.append(emb)
    matrix = np.stack(rows) if rows else np.zeros((0, encoder.dim))
    return DenseIndex(dim=encoder.dim, ids=tuple(ids), matrix=matrix)


def dense_search(index: DenseIndex, q_emb: np.ndarray, k: int) -> RankedList:
    """Exact top-k by inner product, ties broken by ascending passage id."""
    q_emb = np.asarray(q_emb, dtype=np.float64)
    if q_emb.shape != (index.dim,):
        raise DimMismatchError(
            f"query embedding has shape {q_emb.shape}, index dim is {index.dim}")
    if k <= 0 or len(index) == 0:
        return RankedList(entries=())
    scores = index.matrix @ q_emb
    # primary key: score descending; secondary: passage id ascending
    order = np.lexsort((np.asarray(index.ids), -scores))
    top = order[: min(k, len(order))]
    return RankedList(entries=tuple((index.ids[i], float(scores[i])) for i in top))


def persist_dense_index(index: DenseIndex, path: str) -> None:
    """Binary layout: magic, version u32, dim u32, count u32, then per entry
    id length u32 + utf-8 id + dim little-endian float64 values.
    """
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<III", _VERSION, index.dim, len(index)))
        for i, pid in enumerate(index.ids):
            raw = pid.encode("utf-8")
            fh.write(struct.pack("<I", len(raw)))
            fh.write(raw)
            fh.write(struct.pack(f"<{index.dim}d", *index.matrix[i]))


def load_dense_index(path: str) -> DenseIndex:
    import os

    if not os.path.exists(path):
        raise MissingFileError(f"no such file: {path}")
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] != _MAGIC:
        raise VersionMismatchError("not a dense index file")
    try:
        version, dim, count = struct.unpack_from("<III", data, 4)
        if version != _VERSION:
            raise VersionMismatchError(f"unsupported index version {version}")
        offset = 16
        ids = []
        rows = []
        for _ in range(count):
            (id_len,) = struct.unpack_from("<I", data, offset)
            offset += 4
            pid = data[offset:offset + id_len].decode("utf-8")
            offset += id_len
            row = struct.unpack_from(f"<{dim}d", data, offset)
            offset += 8 * dim
            ids.append(pid)
            rows.append(row)
    except struct.error as exc:
        raise VersionMismatchError(f"truncated or corrupt index file: {exc}") from None
    matrix = np.array(rows, dtype=np.float64).reshape(count, dim)
    return DenseIndex(dim=dim, ids=tuple(ids), matrix=matrix)
