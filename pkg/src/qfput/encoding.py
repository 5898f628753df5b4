"""Binary displacement grids.

Each lattice site stores its displacement in a b-bit register. A GridSpec
fixes how register values map to physical displacements (either an
offset-binary grid or a two's-complement grid over the same set of points)
and how DFT frequency indices map to signed momenta.
"""

from dataclasses import dataclass

import numpy as np

ENCODINGS = ("offset", "twos")


@dataclass(frozen=True)
class GridSpec:
    """Per-site displacement grid: b bits spanning [-q_max, q_max - dq].

    encoding_kind "offset" maps register x to -q_max + x*dq; "twos" reads x
    as a two's-complement integer times dq. Both cover the same grid points.
    """

    bits_per_site: int
    q_max: float
    encoding_kind: str = "offset"

    def __post_init__(self):
        if not 2 <= self.bits_per_site <= 12:
            raise ValueError(f"bits_per_site must be in [2, 12], got {self.bits_per_site}")
        if self.q_max <= 0:
            raise ValueError(f"q_max must be positive, got {self.q_max}")
        if self.encoding_kind not in ENCODINGS:
            raise ValueError(f"encoding_kind must be one of {ENCODINGS}, got {self.encoding_kind!r}")

    @property
    def n_points(self) -> int:
        return 1 << self.bits_per_site

    @property
    def spacing(self) -> float:
        """Grid spacing dq = 2*q_max / 2^b."""
        return 2.0 * self.q_max / self.n_points


def position_value(grid: GridSpec, x: int) -> float:
    """Displacement encoded by register value x."""
    if not 0 <= x < grid.n_points:
        raise ValueError(f"register value {x} outside [0, {grid.n_points})")
    if grid.encoding_kind == "offset":
        return -grid.q_max + x * grid.spacing
    half = grid.n_points // 2
    signed = x if x < half else x - grid.n_points
    return signed * grid.spacing


def position_values(grid: GridSpec) -> np.ndarray:
    """All 2^b grid displacements, indexed by register value."""
    x = np.arange(grid.n_points)
    if grid.encoding_kind == "offset":
        return -grid.q_max + x * grid.spacing
    half = grid.n_points // 2
    return np.where(x < half, x, x - grid.n_points) * grid.spacing


def momentum_value(grid: GridSpec, s: int, hbar: float = 1.0) -> float:
    """Signed momentum for DFT frequency index s (centered convention).

    Indices below 2^(b-1) are non-negative frequencies, the rest wrap to
    negative ones, so the kinetic phase sees physically signed momenta.
    """
    if not 0 <= s < grid.n_points:
        raise ValueError(f"frequency index {s} outside [0, {grid.n_points})")
    half = grid.n_points // 2
    wrapped = s if s < half else s - grid.n_points
    return 2.0 * np.pi * hbar / (grid.n_points * grid.spacing) * wrapped


def momentum_values(grid: GridSpec, hbar: float = 1.0) -> np.ndarray:
    """All 2^b signed momenta, indexed by DFT frequency index."""
    s = np.arange(grid.n_points)
    half = grid.n_points // 2
    wrapped = np.where(s < half, s, s - grid.n_points)
    return 2.0 * np.pi * hbar / (grid.n_points * grid.spacing) * wrapped


def bit_weight(grid: GridSpec, r: int) -> int:
    """Signed integer weight of bit r in the register-to-integer map."""
    b = grid.bits_per_site
    if not 0 <= r < b:
        raise ValueError(f"bit index {r} outside [0, {b})")
    if grid.encoding_kind == "twos" and r == b - 1:
        return -(1 << r)
    return 1 << r
