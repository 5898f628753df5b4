"""Hermitian cosine/sine quadratures of the Fourier-mode displacement.

The complex mode amplitude (1/sqrt(N)) sum_j q_j exp(-2 pi i j k / N) is not
Hermitian; its real standing-wave parts

    Qc = sum_j q_j cos(2 pi j k / N) / sqrt(N)
    Qs = sum_j q_j sin(2 pi j k / N) / sqrt(N)

are, and they commute (real combinations of commuting positions), so their
exponentials factor exactly and compile to parallel single-qubit phase
rotations on the displacement bits. The complex operator is recovered as
Qc - i Qs.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .encoding import GridSpec, bit_weight, position_values
from .errors import CapacityError
from .model import ORACLE_MAX_BITS, site_registers
from .state import LatticeState, apply_diagonal_phase

WHICH = ("cos", "sin")


@dataclass(frozen=True)
class QuadratureWeights:
    """Site weight rows for one mode: w_cos[j], w_sin[j], both over sqrt(N)."""

    mode_k: int
    w_cos: tuple
    w_sin: tuple

    def row(self, which: str) -> np.ndarray:
        if which not in WHICH:
            raise ValueError(f"which must be one of {WHICH}, got {which!r}")
        return np.array(self.w_cos if which == "cos" else self.w_sin)


def weights(n_sites: int, k: int) -> QuadratureWeights:
    """Standing-wave site weights for mode k of an N-site ring."""
    if not 0 <= k < n_sites:
        raise ValueError(f"mode index {k} outside [0, {n_sites})")
    j = np.arange(n_sites)
    phase = 2.0 * np.pi * j * k / n_sites
    root = np.sqrt(n_sites)
    return QuadratureWeights(
        mode_k=k,
        w_cos=tuple(np.cos(phase) / root),
        w_sin=tuple(np.sin(phase) / root),
    )


@lru_cache(maxsize=64)
def _cached_diagonal(n_sites: int, k: int, grid: GridSpec, which: str) -> np.ndarray:
    w = weights(n_sites, k).row(which)
    regs = site_registers(n_sites, grid.bits_per_site)
    q = position_values(grid)
    return np.tensordot(w, q[regs], axes=(0, 0))


def quadrature_diagonal(
    n_sites: int, wts: QuadratureWeights, grid: GridSpec, which: str
) -> np.ndarray:
    """sum_j w_j q(x_j) at every global grid index, shape (2^(N b),)."""
    return _cached_diagonal(n_sites, wts.mode_k, grid, which)


def apply_exp_quadrature(
    state: LatticeState, grid: GridSpec, wts: QuadratureWeights, which: str, theta: float
) -> LatticeState:
    """exp(i theta Q) as a diagonal phase over the grid."""
    diag = quadrature_diagonal(state.n_sites, wts, grid, which)
    return apply_diagonal_phase(state, theta * diag)


def rz_angles(grid: GridSpec, wts: QuadratureWeights, which: str, theta: float) -> list:
    """Per-bit phase angles (site j, bit r, phi) with phi = theta dq w_j w_r^bit.

    Together with rz_global_phase these reproduce exp(i theta Q): the bit-r
    qubit of site j in state |1> contributes phi to the diagonal phase.
    Angles are left unreduced (no mod 2 pi) so synthesis-precision budgets
    can be derived from them later.
    """
    w = wts.row(which)
    dq = grid.spacing
    out = []
    for j, wj in enumerate(w):
        for r in range(grid.bits_per_site):
            out.append((j, r, theta * dq * wj * bit_weight(grid, r)))
    return out


def rz_global_phase(grid: GridSpec, wts: QuadratureWeights, which: str, theta: float) -> float:
    """State-independent phase folding the offset-grid constant -q_max per site.

    Two's-complement grids decompose q exactly over signed bit weights, so
    their offset vanishes.
    """
    if grid.encoding_kind == "twos":
        return 0.0
    return float(-theta * grid.q_max * np.sum(wts.row(which)))


def quadrature_bound(grid: GridSpec, wts: QuadratureWeights, which: str) -> float:
    """Exact max of |sum_j w_j q_j| over the grid (separable per-site extremes)."""
    q = position_values(grid)
    w = wts.row(which)
    hi = sum(np.max(wj * q) for wj in w)
    lo = sum(np.min(wj * q) for wj in w)
    return float(max(hi, -lo))


def commutator_norm(n_sites: int, k: int, grid: GridSpec) -> float:
    """Max-norm of the commutator of the dense cos/sin quadrature matrices.

    Both operators are diagonal in the position basis, so this is exactly
    zero; the function computes it from the dense matrices rather than
    asserting it. Above 2^10 the O(dim^3) product is replaced by the exact
    elementwise identity [A, B]_{ik} = B_{ik} (a_i - a_k), valid once A is
    verified strictly diagonal.
    """
    nb = n_sites * grid.bits_per_site
    if nb > ORACLE_MAX_BITS:
        raise CapacityError(
            f"dense commutator limited to N*b <= {ORACLE_MAX_BITS} total bits, got {nb}"
        )
    wts = weights(n_sites, k)
    dc = quadrature_diagonal(n_sites, wts, grid, "cos")
    ds = quadrature_diagonal(n_sites, wts, grid, "sin")
    a = np.diag(dc)
    b = np.diag(ds)
    if a.shape[0] <= 1024:
        comm = a @ b - b @ a
        return float(np.max(np.abs(comm)))
    np.fill_diagonal(a, 0.0)
    if np.max(np.abs(a)) != 0.0:
        raise AssertionError("cosine quadrature matrix is not strictly diagonal")
    b *= dc[:, None] - dc[None, :]
    return float(np.max(np.abs(b)))
