"""Fourier field representation on the periodic unit torus.

Fields live on [0,1)^2 and are expanded in the basis exp(2*pi*i*k.x) with
integer wavevectors |k|_inf <= N.  Coefficients are stored on a centered
(2N+1) x (2N+1) array, index [a, b] <-> k = (a - N, b - N), so conjugation
is a plain double flip.  The physical collocation grid has N_G = 2N points
per direction; the +N and -N (Nyquist) modes alias on that grid, and the
forward transform resolves the ambiguity by splitting each Nyquist bin
equally between the +N and -N coefficients ("balanced" convention).  With
that convention physical -> spectral -> physical is the identity for every
real grid, and spectral -> physical -> spectral is the identity on balanced
fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.fft as _fft

from .errors import GridMismatch

# pocketfft thread count; threads split whole 1D transforms, so results
# stay bitwise deterministic (1 wins below ~512^2 on small machines)
FFT_WORKERS = 1

__all__ = [
    "GridSpec",
    "SpectralField",
    "PhysicalField",
    "VelocityField",
    "to_physical",
    "to_spectral",
    "sample_on_grid",
]


@dataclass(frozen=True)
class GridSpec:
    """Mode cutoff and the derived physical/padded grid sizes.

    n_modes is the largest retained |k|_inf; the physical grid has
    n_grid = 2*n_modes points per direction and the quadrature grid used
    for non-quadratic integrands has n_padded = 3*n_modes points.
    """

    n_modes: int

    def __post_init__(self):
        if self.n_modes < 4:
            raise ValueError(f"n_modes must be >= 4, got {self.n_modes}")
        if self.n_modes % 2 != 0:
            raise ValueError(f"n_modes must be even, got {self.n_modes}")

    @property
    def n_grid(self) -> int:
        return 2 * self.n_modes

    @property
    def n_padded(self) -> int:
        return 3 * self.n_modes

    @property
    def band(self) -> int:
        """Side length of the centered coefficient array, 2*n_modes + 1."""
        return 2 * self.n_modes + 1

    @cached_property
    def k1(self) -> np.ndarray:
        """First wavevector component on the centered band, shape (band, band)."""
        k = np.arange(-self.n_modes, self.n_modes + 1, dtype=np.float64)
        return np.broadcast_to(k[:, None], (self.band, self.band)).copy()

    @cached_property
    def k2(self) -> np.ndarray:
        k = np.arange(-self.n_modes, self.n_modes + 1, dtype=np.float64)
        return np.broadcast_to(k[None, :], (self.band, self.band)).copy()

    @cached_property
    def k_sq(self) -> np.ndarray:
        """|k|^2 (integer-mode units) on the centered band."""
        return self.k1**2 + self.k2**2

    @cached_property
    def k_inf(self) -> np.ndarray:
        """|k|_inf on the centered band."""
        return np.maximum(np.abs(self.k1), np.abs(self.k2))

    @cached_property
    def inv_two_pi_k_sq(self) -> np.ndarray:
        """1 / (2*pi*|k|^2) with the k = 0 entry zeroed (Biot-Savart symbol)."""
        inv = np.zeros_like(self.k_sq)
        nz = self.k_sq > 0
        inv[nz] = 1.0 / (2.0 * np.pi * self.k_sq[nz])
        inv.flags.writeable = False
        return inv

    def coords(self, m: int | None = None) -> tuple[np.ndarray, np.ndarray]:
        """Collocation coordinates (x1, x2) on an m-point grid (default n_grid)."""
        m = self.n_grid if m is None else m
        x = np.arange(m) / m
        return np.meshgrid(x, x, indexing="ij")


def _lock(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SpectralField:
    """Complex Fourier coefficients of a real scalar field, |k|_inf <= N."""

    grid: GridSpec
    coeffs: np.ndarray

    def __post_init__(self):
        b = self.grid.band
        if self.coeffs.shape != (b, b):
            raise ValueError(
                f"coefficient array must be {(b, b)}, got {self.coeffs.shape}"
            )
        object.__setattr__(self, "coeffs", _lock(np.ascontiguousarray(self.coeffs, dtype=np.complex128)))

    @classmethod
    def zeros(cls, grid: GridSpec) -> "SpectralField":
        return cls(grid, np.zeros((grid.band, grid.band), dtype=np.complex128))

    @classmethod
    def from_modes(cls, grid: GridSpec, modes: dict[tuple[int, int], complex]) -> "SpectralField":
        """Build a field from a {(k1, k2): coefficient} dictionary."""
        c = np.zeros((grid.band, grid.band), dtype=np.complex128)
        n = grid.n_modes
        for (a, b), v in modes.items():
            if max(abs(a), abs(b)) > n:
                raise ValueError(f"mode {(a, b)} outside |k|_inf <= {n}")
            c[a + n, b + n] = v
        return cls(grid, c)

    def mode(self, k1: int, k2: int) -> complex:
        n = self.grid.n_modes
        return complex(self.coeffs[k1 + n, k2 + n])

    def conj_flip(self) -> np.ndarray:
        """Coefficients of the complex conjugate field, conj(c(-k))."""
        return np.conj(self.coeffs[::-1, ::-1])

    def hermitian_defect(self) -> float:
        """Max |c(k) - conj(c(-k))| over the band."""
        return float(np.abs(self.coeffs - self.conj_flip()).max())

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.coeffs).all())

    def l2_norm(self) -> float:
        """L2 norm via Parseval, sqrt(sum |c_k|^2)."""
        return float(np.sqrt(np.sum(np.abs(self.coeffs) ** 2)))


@dataclass(frozen=True)
class PhysicalField:
    """Real samples on the N_G x N_G collocation grid, point (i,j) -> (i,j)/N_G."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        m = self.grid.n_grid
        if self.values.shape != (m, m):
            raise ValueError(f"value array must be {(m, m)}, got {self.values.shape}")
        object.__setattr__(self, "values", _lock(np.ascontiguousarray(self.values, dtype=np.float64)))


@dataclass(frozen=True)
class VelocityField:
    """Divergence-free, mean-free velocity as a pair of spectral components."""

    u1: SpectralField
    u2: SpectralField

    def __post_init__(self):
        if self.u1.grid != self.u2.grid:
            raise GridMismatch("velocity components live on different grids")

    @property
    def grid(self) -> GridSpec:
        return self.u1.grid

    def l2_norm(self) -> float:
        return float(np.sqrt(self.u1.l2_norm() ** 2 + self.u2.l2_norm() ** 2))

    def divergence_defect(self) -> float:
        """max_k |k . u_k| in integer-mode units (0 for a solenoidal field)."""
        g = self.grid
        return float(np.abs(g.k1 * self.u1.coeffs + g.k2 * self.u2.coeffs).max())

    def is_finite(self) -> bool:
        return self.u1.is_finite() and self.u2.is_finite()


# --- transforms -------------------------------------------------------------

def _fold_to_bins(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Centered band -> FFT bins of the 2n grid; +n rows/cols fold onto -n."""
    e = coeffs[0 : 2 * n, 0 : 2 * n].copy()
    e[0, :] += coeffs[2 * n, 0 : 2 * n]
    e[:, 0] += coeffs[0 : 2 * n, 2 * n]
    e[0, 0] += coeffs[2 * n, 2 * n]
    return np.fft.ifftshift(e)


def _unfold_from_bins(bins: np.ndarray, n: int) -> np.ndarray:
    """FFT bins of the 2n grid -> centered band, Nyquist bins split in half."""
    s = np.fft.fftshift(bins)  # rows/cols ordered k = -n .. n-1
    c = np.zeros((2 * n + 1, 2 * n + 1), dtype=np.complex128)
    c[0 : 2 * n, 0 : 2 * n] = s
    c[2 * n, 0 : 2 * n] = s[0, :] / 2
    c[0, 0 : 2 * n] = s[0, :] / 2
    c[:, 2 * n] = c[:, 0] / 2
    c[:, 0] = c[:, 0] / 2
    return c


def hermitianize(coeffs: np.ndarray) -> np.ndarray:
    """Project a centered coefficient array onto exact Hermitian symmetry."""
    return (coeffs + np.conj(coeffs[::-1, ::-1])) / 2


def to_physical(f: SpectralField) -> PhysicalField:
    """Evaluate sum_k c_k exp(2*pi*i*k.x) on the N_G collocation grid."""
    g = f.grid
    bins = _fold_to_bins(f.coeffs, g.n_modes)
    vals = _fft.ifft2(bins, workers=FFT_WORKERS) * g.n_grid**2
    return PhysicalField(g, vals.real)


def to_spectral(p: PhysicalField) -> SpectralField:
    """Discrete Fourier coefficients, normalized so the modal sum reproduces
    the grid values exactly (inverse of to_physical on the balanced band)."""
    g = p.grid
    bins = _fft.fft2(p.values, workers=FFT_WORKERS) / g.n_grid**2
    c = _unfold_from_bins(bins, g.n_modes)
    return SpectralField(g, hermitianize(c))


def embed_band(f: SpectralField, m: int) -> np.ndarray:
    """Place the centered band into the FFT layout of an m-point grid.

    m must be at least 2*n_modes + 2 so that +N and -N occupy distinct bins.
    """
    n = f.grid.n_modes
    if m < 2 * n + 2:
        raise ValueError(f"target grid {m} cannot hold modes up to |k|={n}")
    out = np.zeros((m, m), dtype=np.complex128)
    idx = np.arange(-n, n + 1) % m
    out[np.ix_(idx, idx)] = f.coeffs
    return out


def extract_band(bins: np.ndarray, n: int) -> np.ndarray:
    """Read the centered |k|_inf <= n band out of an m-point FFT layout."""
    m = bins.shape[0]
    if m < 2 * n + 2:
        raise ValueError(f"source grid {m} cannot hold modes up to |k|={n}")
    idx = np.arange(-n, n + 1) % m
    return bins[np.ix_(idx, idx)].copy()


def sample_on_grid(f: SpectralField, m: int) -> np.ndarray:
    """Evaluate the field on an m x m collocation grid (m >= 2N+2), real part."""
    vals = _fft.ifft2(embed_band(f, m), workers=FFT_WORKERS) * m**2
    return vals.real
