"""シード付き乱数ストリームの導出."""

from __future__ import annotations

import zlib

import numpy as np


def _label_key(label: int | float | str) -> int:
    if isinstance(label, bool):
        return int(label)
    if isinstance(label, int):
        return label & 0xFFFFFFFF
    if isinstance(label, float):
        # mm 単位に丸めて距離などの浮動小数ラベルを安定させる
        return round(label * 1000) & 0xFFFFFFFF
    return zlib.crc32(label.encode("utf-8"))


def derive_rng(seed: int, *labels: int | float | str) -> np.random.Generator:
    """マスターシードとラベル列から独立な乱数ストリームを導出する.

    同じ (seed, labels) からは常に同じストリームが得られ、ラベルを追加しても
    既存ストリームは変化しない。

    Examples:
        >>> a = derive_rng(1, "distance", 25.0).integers(0, 100, 3)
        >>> b = derive_rng(1, "distance", 25.0).integers(0, 100, 3)
        >>> bool((a == b).all())
        True

    """
    spawn_key = tuple(_label_key(label) for label in labels)
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=spawn_key))
