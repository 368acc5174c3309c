"""Spectral calculus and dealiased products.

All derivative multipliers carry the unit-torus factor 2*pi: differentiation
in direction j multiplies mode k by 2*pi*i*k_j.  Quadratic products are
evaluated on an internal 4N-point grid, which is large enough that no
aliased image of any sum mode |k+l|_inf <= 2N lands back inside the
retained band |k|_inf <= N; the result therefore equals the exactly
truncated convolution, including at the +-N boundary modes.
"""

from __future__ import annotations

import numpy as np
import scipy.fft as _fft

from .errors import GridMismatch, NonZeroMean
from .grid import (
    FFT_WORKERS,
    GridSpec,
    SpectralField,
    VelocityField,
    embed_band,
    extract_band,
)

__all__ = [
    "dealiased_product",
    "gradient",
    "laplacian",
    "divergence",
    "curl",
    "biot_savart",
    "project_leray",
]

TWO_PI = 2.0 * np.pi

MEAN_TOL = 1e-12


def product_grid_size(grid: GridSpec) -> int:
    """FFT size used for quadratic products (4N: alias-free for |k|_inf <= N)."""
    return 4 * grid.n_modes


def dealiased_product(f: SpectralField, g: SpectralField) -> SpectralField:
    """Truncation to |k|_inf <= N of the exact convolution sum_l f_l g_{k-l}.

    Both fields are zero-padded onto the product grid, multiplied pointwise
    in physical space, transformed back, and truncated.  Works for arbitrary
    complex coefficient arrays (Hermitian symmetry is preserved but not
    required).
    """
    if f.grid != g.grid:
        raise GridMismatch(f"grids differ: {f.grid} vs {g.grid}")
    grid = f.grid
    m = product_grid_size(grid)
    fv = _fft.ifft2(embed_band(f, m), workers=FFT_WORKERS) * m**2
    gv = _fft.ifft2(embed_band(g, m), workers=FFT_WORKERS) * m**2
    h = _fft.fft2(fv * gv, workers=FFT_WORKERS) / m**2
    return SpectralField(grid, extract_band(h, grid.n_modes))


def _product_sum(pairs, grid: GridSpec, out_modes: int | None = None) -> np.ndarray:
    """Coefficients of sum_i f_i * g_i, truncated to |k|_inf <= out_modes.

    pairs is a sequence of (coeffs, coeffs) tuples on the same grid.  The
    transforms are batched; out_modes defaults to the grid cutoff and may be
    raised up to 2N, in which case the FFT size grows so the wider band is
    still exact (m >= 2*(2N) + 2).
    """
    n = grid.n_modes
    out_modes = n if out_modes is None else out_modes
    m = product_grid_size(grid) if out_modes <= n else 4 * n + 2
    stack = np.zeros((2 * len(pairs), m, m), dtype=np.complex128)
    idx = np.arange(-n, n + 1) % m
    sel = np.ix_(idx, idx)
    for i, (a, b) in enumerate(pairs):
        stack[2 * i][sel] = a
        stack[2 * i + 1][sel] = b
    phys = _fft.ifft2(stack, axes=(-2, -1), workers=FFT_WORKERS) * m**2
    prod = np.zeros((m, m), dtype=np.complex128)
    for i in range(len(pairs)):
        prod += phys[2 * i] * phys[2 * i + 1]
    h = _fft.fft2(prod, workers=FFT_WORKERS) / m**2
    return extract_band(h, out_modes)


def _real_product_sum(pairs, grid: GridSpec) -> np.ndarray:
    """Like _product_sum for Hermitian (real-field) inputs, truncated to the
    grid band, via half-spectrum transforms.

    The returned centered band is exactly Hermitian: negative-k2 entries are
    conjugated copies of the stored half, and the k2 = 0 column is
    symmetrized.
    """
    n = grid.n_modes
    m = product_grid_size(grid)
    half = m // 2 + 1
    rows = np.arange(-n, n + 1) % m
    sel = np.ix_(rows, np.arange(n + 1))
    buf = np.zeros((m, half), dtype=np.complex128)

    def back(coeffs):
        buf[sel] = coeffs[:, n:]
        # per-slice c2r is markedly faster than one batched multi-axis call
        return _fft.irfft2(buf, s=(m, m), workers=FFT_WORKERS) * m**2

    prod = np.zeros((m, m), dtype=np.float64)
    for a, b in pairs:
        prod += back(a) * back(b)
    h = _fft.rfft2(prod, workers=FFT_WORKERS) / m**2
    out = np.empty((grid.band, grid.band), dtype=np.complex128)
    out[:, n:] = h[sel]
    out[:, :n] = np.conj(out[::-1, n + 1 :])[:, ::-1]
    col = out[:, n]
    out[:, n] = (col + np.conj(col[::-1])) / 2
    return out


def gradient(f: SpectralField) -> tuple[SpectralField, SpectralField]:
    """(d/dx1 f, d/dx2 f): component j has coefficients 2*pi*i*k_j c_k."""
    g = f.grid
    d1 = SpectralField(g, TWO_PI * 1j * g.k1 * f.coeffs)
    d2 = SpectralField(g, TWO_PI * 1j * g.k2 * f.coeffs)
    return d1, d2


def laplacian(f: SpectralField) -> SpectralField:
    """Coefficients -(2*pi*|k|)^2 c_k."""
    g = f.grid
    return SpectralField(g, -(TWO_PI**2) * g.k_sq * f.coeffs)


def divergence(u: VelocityField) -> SpectralField:
    g = u.grid
    return SpectralField(g, TWO_PI * 1j * (g.k1 * u.u1.coeffs + g.k2 * u.u2.coeffs))


def curl(u: VelocityField) -> SpectralField:
    """Scalar curl d1 u2 - d2 u1."""
    g = u.grid
    return SpectralField(g, TWO_PI * 1j * (g.k1 * u.u2.coeffs - g.k2 * u.u1.coeffs))


def biot_savart(omega: SpectralField) -> VelocityField:
    """Divergence-free velocity with curl(u) = omega and zero mean.

    Per mode: u_k = i (k2, -k1) w_k / (2*pi*|k|^2); the 2*pi compensates the
    unit-torus frequency scaling so curl inverts exactly.  The k = 0 mode of
    omega must vanish (mean-free vorticity); a non-negligible mean raises
    NonZeroMean rather than being silently dropped.
    """
    g = omega.grid
    n = g.n_modes
    mean = abs(omega.coeffs[n, n])
    if mean > MEAN_TOL * max(omega.l2_norm(), 1e-300):
        raise NonZeroMean(
            f"mean vorticity {mean:.3e} exceeds {MEAN_TOL:.0e} * ||omega||"
        )
    scaled = g.inv_two_pi_k_sq * omega.coeffs
    u1 = SpectralField(g, 1j * g.k2 * scaled)
    u2 = SpectralField(g, -1j * g.k1 * scaled)
    return VelocityField(u1, u2)


def project_leray(u1: SpectralField, u2: SpectralField) -> VelocityField:
    """Per-mode projection (I - k k^T / |k|^2); the k = 0 mode is zeroed."""
    if u1.grid != u2.grid:
        raise GridMismatch("components live on different grids")
    g = u1.grid
    n = g.n_modes
    ksq = g.k_sq.copy()
    ksq[n, n] = 1.0  # avoid 0/0; the mode is zeroed below
    s = (g.k1 * u1.coeffs + g.k2 * u2.coeffs) / ksq
    p1 = u1.coeffs - g.k1 * s
    p2 = u2.coeffs - g.k2 * s
    p1[n, n] = 0.0
    p2[n, n] = 0.0
    return VelocityField(SpectralField(g, p1), SpectralField(g, p2))
