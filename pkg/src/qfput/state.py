"""Full lattice wavefunction over N b-bit site registers.

Amplitudes are stored as one complex vector of length 2^(N b) in site-major
layout: global index X = sum_j x_j * 2^(j b), so site 0 occupies the least
significant bits. All exported operations either preserve the l2 norm or
renormalize explicitly.
"""

import struct
from dataclasses import dataclass

import numpy as np

from .encoding import GridSpec, position_values
from .errors import CapacityError
from .model import ModelParams, dispersion

# Refuse to allocate statevectors above this many total bits (2^26 complex
# doubles is 1 GiB); raised deliberately via config for bigger machines.
DEFAULT_MAX_STATE_BITS = 26

_CHECKPOINT_MAGIC = b"FPUTSTAT"


@dataclass
class LatticeState:
    """Complex amplitude vector plus the (N, b) shape fingerprint."""

    amplitudes: np.ndarray
    n_sites: int
    bits: int

    def __post_init__(self):
        expected = 1 << (self.n_sites * self.bits)
        if self.amplitudes.shape != (expected,):
            raise ValueError(
                f"amplitude vector has shape {self.amplitudes.shape}, "
                f"expected ({expected},) for N={self.n_sites}, b={self.bits}"
            )

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    @property
    def fingerprint(self) -> tuple:
        return (self.n_sites, self.bits)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "LatticeState":
        return LatticeState(self.amplitudes.copy(), self.n_sites, self.bits)


def _check_capacity(n_sites: int, bits: int, max_bits: int = DEFAULT_MAX_STATE_BITS) -> int:
    nb = n_sites * bits
    if nb > max_bits:
        raise CapacityError(f"statevector needs {nb} total bits (> {max_bits} allowed)")
    return 1 << nb


def default_width(params: ModelParams) -> float:
    """sqrt(hbar / (2 m omega_bar)) with omega_bar the mean nonzero mode frequency."""
    freqs = [dispersion(params, k) for k in range(params.n_sites)]
    nonzero = [w for w in freqs if w > 0]
    return float(np.sqrt(params.hbar / (2.0 * params.mass * np.mean(nonzero))))


def init_product_gaussian(
    params: ModelParams,
    grid: GridSpec,
    width: float | None = None,
    center: float = 0.0,
    max_bits: int = DEFAULT_MAX_STATE_BITS,
) -> LatticeState:
    """Normalized product of identical per-site Gaussians exp(-(q-center)^2/(4 sigma^2)).

    The default width approximates the harmonic ground state; `center`
    displaces every site (useful for breaking inversion symmetry).
    """
    if width is None:
        width = default_width(params)
    if width <= 0:
        raise ValueError(f"width must be positive, got {width}")
    _check_capacity(params.n_sites, grid.bits_per_site, max_bits)
    q = position_values(grid)
    site = np.exp(-((q - center) ** 2) / (4.0 * width**2)).astype(complex)
    amps = site
    for _ in range(params.n_sites - 1):
        amps = np.kron(site, amps)  # later sites to higher bits
    amps = amps / np.linalg.norm(amps)
    return LatticeState(amps, params.n_sites, grid.bits_per_site)


def inner(lhs: LatticeState, rhs: LatticeState) -> complex:
    """<lhs|rhs> with the conjugate on the left argument."""
    if lhs.fingerprint != rhs.fingerprint:
        raise ValueError(f"shape mismatch: {lhs.fingerprint} vs {rhs.fingerprint}")
    return complex(np.vdot(lhs.amplitudes, rhs.amplitudes))


def apply_diagonal_phase(state: LatticeState, phase: np.ndarray) -> LatticeState:
    """Multiply amplitude X by exp(i * phase[X]); phase is real, so unitary."""
    if phase.shape != state.amplitudes.shape:
        raise ValueError(f"phase vector shape {phase.shape} != state dim {state.dim}")
    return LatticeState(state.amplitudes * np.exp(1j * phase), state.n_sites, state.bits)


def site_expectations(state: LatticeState, grid: GridSpec) -> np.ndarray:
    """<q_j> for every site."""
    prob = np.abs(state.amplitudes) ** 2
    q = position_values(grid)
    ds = grid.n_points
    out = np.empty(state.n_sites)
    for j in range(state.n_sites):
        post = ds**j
        marg = prob.reshape(-1, ds, post).sum(axis=(0, 2))
        out[j] = marg @ q
    return out


def edge_probability(state: LatticeState) -> float:
    """Largest per-site probability of sitting on a grid boundary cell."""
    prob = np.abs(state.amplitudes) ** 2
    ds = 1 << state.bits
    worst = 0.0
    for j in range(state.n_sites):
        post = ds**j
        marg = prob.reshape(-1, ds, post).sum(axis=(0, 2))
        worst = max(worst, float(marg[0] + marg[-1]))
    return worst


def save_checkpoint(state: LatticeState, path) -> None:
    """Binary dump: 8-byte magic, u32 N, u32 b, then (re, im) doubles, little-endian."""
    header = _CHECKPOINT_MAGIC + struct.pack("<II", state.n_sites, state.bits)
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(state.amplitudes, dtype="<c16").tobytes())


def load_checkpoint(path) -> LatticeState:
    with open(path, "rb") as fh:
        header = fh.read(16)
        if len(header) != 16 or header[:8] != _CHECKPOINT_MAGIC:
            raise ValueError(f"{path}: not a lattice-state checkpoint")
        n_sites, bits = struct.unpack("<II", header[8:])
        data = np.frombuffer(fh.read(), dtype="<c16")
    expected = 1 << (n_sites * bits)
    if data.size != expected:
        raise ValueError(
            f"{path}: payload holds {data.size} amplitudes, header implies {expected}"
        )
    return LatticeState(data.astype(complex), n_sites, bits)
