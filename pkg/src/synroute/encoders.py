"""Text encoder interface plus the deterministic hashing encoder used in
tests and offline runs.

Any object with a `dim` attribute and an `encode(text) -> np.ndarray` method
satisfies the interface; production deployments can plug in a neural encoder
behind the same surface.
"""

from __future__ import annotations

import hashlib
import re
from typing import Protocol, runtime_checkable

import numpy as np

_TOKEN_RE = re.compile(r"[a-z0-9]+")


@runtime_checkable
class Encoder(Protocol):
    dim: int

    def encode(self, text: str) -> np.ndarray: ...


class HashEncoder:
    """Bag-of-words embedding: lowercase word tokens hashed into a fixed-dim
    vector, then L2-normalized. Identical texts give identical embeddings;
    empty texts give the zero vector.
    """

    def __init__(self, dim: int = 256):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim

    def bucket(self, token: str) -> int:
        digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
        return int.from_bytes(digest, "little") % self.dim

    def encode(self, text: str) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=np.float64)
        for token in _TOKEN_RE.findall(text.lower()):
            vec[self.bucket(token)] += 1.0
        norm = np.linalg.norm(vec)
        if norm > 0:
            vec /= norm
        return vec


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))
