"""Physics of the periodic beta-FPUT chain.

H = sum_j p_j^2/(2m) + sum_j [ (kappa/2)(q_{j+1}-q_j)^2 + (beta/4)(q_{j+1}-q_j)^4 ]

with periodic boundary conditions (bond N-1 wraps to site 0). The module
also provides the brute-force dense Hamiltonian on a displacement grid,
which serves as the ground-truth oracle for small register sizes.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .encoding import GridSpec, momentum_values, position_values
from .errors import CapacityError

# Dense-oracle guard: eigendecomposition above 2^14 stops being interactive.
ORACLE_MAX_BITS = 14


@dataclass(frozen=True)
class ModelParams:
    """Physical constants of an N-site chain."""

    n_sites: int
    mass: float = 1.0
    kappa: float = 1.0
    beta: float = 0.0
    lattice_spacing: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.n_sites < 2:
            raise ValueError(f"n_sites must be >= 2, got {self.n_sites}")
        for name in ("mass", "kappa", "lattice_spacing", "hbar"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.beta < 0:
            raise ValueError(f"beta must be non-negative, got {self.beta}")


def dispersion(params: ModelParams, k: int) -> float:
    """Angular frequency omega_k = sqrt((2 kappa/m)(1 - cos(2 pi k / N)))."""
    if not 0 <= k < params.n_sites:
        raise ValueError(f"mode index {k} outside [0, {params.n_sites})")
    arg = 2.0 * np.pi * k / params.n_sites
    return float(np.sqrt(2.0 * params.kappa / params.mass * (1.0 - np.cos(arg))))


def potential_energy(params: ModelParams, q) -> float:
    """Bond-sum potential for a displacement configuration (periodic)."""
    q = np.asarray(q, dtype=float)
    if q.shape != (params.n_sites,):
        raise ValueError(f"expected {params.n_sites} displacements, got shape {q.shape}")
    d = np.roll(q, -1) - q
    return float(np.sum(0.5 * params.kappa * d**2 + 0.25 * params.beta * d**4))


def kinetic_energy(params: ModelParams, p) -> float:
    """sum_j p_j^2 / (2m)."""
    p = np.asarray(p, dtype=float)
    if p.shape != (params.n_sites,):
        raise ValueError(f"expected {params.n_sites} momenta, got shape {p.shape}")
    return float(np.sum(p**2) / (2.0 * params.mass))


def default_grid(params: ModelParams, bits: int, encoding: str = "offset") -> GridSpec:
    """Grid wide enough to hold several harmonic ground-state widths.

    q_max = 4 * sqrt(hbar / (2 m omega_max)) * sqrt(b); the sqrt(b) factor
    grows the box with resolution so wrap-around leakage keeps shrinking.
    """
    omega_max = max(dispersion(params, k) for k in range(params.n_sites))
    q_max = 4.0 * np.sqrt(params.hbar / (2.0 * params.mass * omega_max)) * np.sqrt(bits)
    return GridSpec(bits_per_site=bits, q_max=float(q_max), encoding_kind=encoding)


def total_bits(params: ModelParams, grid: GridSpec) -> int:
    return params.n_sites * grid.bits_per_site


def _check_oracle_scale(params: ModelParams, grid: GridSpec) -> int:
    nb = total_bits(params, grid)
    if nb > ORACLE_MAX_BITS:
        raise CapacityError(
            f"dense oracle limited to N*b <= {ORACLE_MAX_BITS} total bits, got {nb}"
        )
    return 1 << nb


@lru_cache(maxsize=32)
def site_registers(n_sites: int, bits: int) -> np.ndarray:
    """Register value of every site for every global index, shape (N, 2^(N b)).

    Site j occupies bits [j*b, (j+1)*b) of the global index (site-major,
    site 0 least significant).
    """
    dim = 1 << (n_sites * bits)
    idx = np.arange(dim, dtype=np.int64)
    mask = (1 << bits) - 1
    return np.stack([(idx >> (j * bits)) & mask for j in range(n_sites)])


@lru_cache(maxsize=32)
def potential_diagonal(params: ModelParams, grid: GridSpec) -> np.ndarray:
    """V evaluated at every grid point of the full lattice, shape (2^(N b),)."""
    regs = site_registers(params.n_sites, grid.bits_per_site)
    qvals = position_values(grid)
    q = qvals[regs]  # (N, dim)
    d = np.roll(q, -1, axis=0) - q
    return np.sum(0.5 * params.kappa * d**2 + 0.25 * params.beta * d**4, axis=0)


def _dft_matrix(n: int) -> np.ndarray:
    """Unitary forward DFT, kernel exp(-2 pi i x s / n) / sqrt(n)."""
    x = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(x, x) / n) / np.sqrt(n)


@lru_cache(maxsize=16)
def _site_kinetic_block(grid: GridSpec, mass: float, hbar: float) -> np.ndarray:
    """Dense one-site kinetic operator F^dag diag(p^2/2m) F."""
    f = _dft_matrix(grid.n_points)
    d = momentum_values(grid, hbar) ** 2 / (2.0 * mass)
    return f.conj().T @ (d[:, None] * f)


def build_dense_hamiltonian(params: ModelParams, grid: GridSpec) -> np.ndarray:
    """Brute-force H = T + V on the full grid. Oracle scale only."""
    dim = _check_oracle_scale(params, grid)
    ds = grid.n_points
    h = np.diag(potential_diagonal(params, grid).astype(complex))
    t1 = _site_kinetic_block(grid, params.mass, params.hbar)
    for j in range(params.n_sites):
        post = ds**j
        pre = dim // (post * ds)
        h4 = h.reshape(pre, ds, post, pre, ds, post)
        for i in range(pre):
            for k in range(post):
                h4[i, :, k, i, :, k] += t1
    return h


@lru_cache(maxsize=4)
def dense_eigensystem(params: ModelParams, grid: GridSpec):
    """Eigenvalues and eigenvectors of the dense oracle Hamiltonian."""
    h = build_dense_hamiltonian(params, grid)
    vals, vecs = np.linalg.eigh(h)
    return vals, vecs
