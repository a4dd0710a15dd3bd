"""Deterministic seeding helpers."""

from __future__ import annotations

import zlib

import numpy as np


def stable_key(text: str) -> int:
    """Map a string (profile id, sampler name) to a process-independent integer."""

    return zlib.crc32(text.encode("utf-8"))


def spawn_rng(seed: int, *keys: int) -> np.random.Generator:
    """Return a generator whose stream depends only on ``seed`` and ``keys``."""

    return np.random.default_rng(np.random.SeedSequence([int(seed), *(int(k) for k in keys)]))


def derive_seed(seed: int, *keys: int) -> int:
    """Return a 32-bit child seed for APIs that want a plain integer."""

    sequence = np.random.SeedSequence([int(seed), *(int(k) for k in keys)])
    return int(sequence.generate_state(1)[0])


__all__ = ["derive_seed", "spawn_rng", "stable_key"]
