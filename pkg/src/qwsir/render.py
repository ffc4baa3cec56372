"""Snapshot rendering of a lattice realization to RGB buffers and PPM files.

Colour convention (highest precedence first): active walkers red, removed
sites green, visited sites yellow, susceptible agents blue, empty sites
white.
"""

from __future__ import annotations

import numpy as np

from .epidemic import EMPTY, REMOVED, SUSCEPTIBLE, LatticeState

__all__ = ["render_snapshot", "write_ppm", "COLORS"]

COLORS = {
    "walker": (255, 0, 0),
    "removed": (0, 160, 0),
    "visited": (255, 255, 0),
    "susceptible": (0, 0, 255),
    "empty": (255, 255, 255),
}


def render_snapshot(lattice: LatticeState) -> np.ndarray:
    """Render the lattice to an (L, L, 3) uint8 buffer (row = y, col = x)."""
    L = lattice.L
    img = np.empty((L, L, 3), dtype=np.uint8)
    sites_t = lattice.sites.T  # index [y, x]
    img[:] = COLORS["empty"]
    img[sites_t == SUSCEPTIBLE] = COLORS["susceptible"]
    img[lattice.visited.T] = COLORS["visited"]
    img[sites_t == REMOVED] = COLORS["removed"]
    for w in lattice.walkers:
        img[w.y, w.x] = COLORS["walker"]
    return img


def write_ppm(img: np.ndarray, path) -> None:
    """Write an (H, W, 3) uint8 buffer as a binary PPM (P6) file."""
    h, w, _ = img.shape
    with open(path, "wb") as f:
        f.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        f.write(img.tobytes())
