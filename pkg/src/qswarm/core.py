"""Geometry primitives shared by every engine: points, world bounds, distances."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Vec2:
    """A 2-D position or displacement in world units. Components are always finite."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"Vec2 components must be finite, got ({self.x!r}, {self.y!r})")

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class WorldBounds:
    """Closed axis-aligned rectangle the particles live in."""

    x_min: float = 0.0
    x_max: float = 100.0
    y_min: float = 0.0
    y_max: float = 100.0

    def __post_init__(self):
        for name in ("x_min", "x_max", "y_min", "y_max"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"world.{name} must be finite")
        if not self.x_min < self.x_max:
            raise ValueError(f"world.x_min must be < world.x_max (got {self.x_min} >= {self.x_max})")
        if not self.y_min < self.y_max:
            raise ValueError(f"world.y_min must be < world.y_max (got {self.y_min} >= {self.y_max})")

    @property
    def width(self) -> float:
        return self.x_max - self.x_min

    @property
    def height(self) -> float:
        return self.y_max - self.y_min

    def center(self) -> Vec2:
        return Vec2((self.x_min + self.x_max) / 2.0, (self.y_min + self.y_max) / 2.0)

    def contains(self, p: Vec2) -> bool:
        return self.x_min <= p.x <= self.x_max and self.y_min <= p.y <= self.y_max


def euclidean_distance(a: Vec2, b: Vec2) -> float:
    """Straight-line distance sqrt((ax-bx)^2 + (ay-by)^2)."""
    return math.sqrt((a.x - b.x) ** 2 + (a.y - b.y) ** 2)


def clamp_to_world(p: Vec2, world: WorldBounds) -> Vec2:
    """Pull each component of ``p`` into the closed world rectangle. Idempotent."""
    return Vec2(
        min(max(p.x, world.x_min), world.x_max),
        min(max(p.y, world.y_min), world.y_max),
    )


def positions_array(positions) -> np.ndarray:
    """(M, 2) float array from a Vec2 sequence, pair sequence, or existing array."""
    if isinstance(positions, np.ndarray):
        arr = np.asarray(positions, dtype=float)
    else:
        arr = np.array([(p.x, p.y) if isinstance(p, Vec2) else (p[0], p[1]) for p in positions],
                       dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"positions must have shape (M, 2), got {arr.shape}")
    return arr


def pairwise_distances(arr: np.ndarray) -> np.ndarray:
    """(M, M) matrix of sqrt(dx^2 + dy^2) distances; zero diagonal."""
    diff = arr[:, None, :] - arr[None, :, :]
    return np.sqrt((diff ** 2).sum(axis=-1))
