"""Initial vorticity constructions: mollified vortex sheets, confined
eddies, and truncated-mollifier kernels for rough data.

All builders return mean-free, Hermitian-symmetric spectral fields.  The
mollifier is the radial third-order B-spline

    psi(r) = (80 / 7 pi) [ (r+1)_+^3 - 4 (r+1/2)_+^3 + 6 r_+^3
                           - 4 (r-1/2)_+^3 + (r-1)_+^3 ],

supported on r < 1, non-negative, with unit plane integral
2 pi int_0^1 psi(r) r dr = 1.  Its rescaling psi_rho(x) = rho^-2 psi(|x|/rho)
concentrates the unit mass on a disk of radius rho.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.special import j0, roots_legendre

from .errors import OverlappingEddies
from .grid import GridSpec, PhysicalField, SpectralField, to_spectral
from .operators import curl, project_leray

__all__ = [
    "SheetSpec",
    "EddySpec",
    "bspline_mollifier",
    "sheet_vorticity",
    "sheet_arc_length_integrand",
    "confined_eddy_velocity",
    "kissing_vortices",
    "good_kernel",
    "taylor_green_vorticity",
]


def bspline_mollifier(r):
    """Radial B-spline profile psi(r); zero for r >= 1, >= 0 on [0, 1]."""
    r = np.asarray(r, dtype=np.float64)
    cub = lambda t: np.where(t > 0.0, t, 0.0) ** 3
    val = (80.0 / (7.0 * np.pi)) * (
        cub(r + 1.0) - 4.0 * cub(r + 0.5) + 6.0 * cub(r) - 4.0 * cub(r - 0.5) + cub(r - 1.0)
    )
    return val if val.ndim else float(val)


def _min_image(d: np.ndarray) -> np.ndarray:
    """Minimum-image convention on the unit torus."""
    return d - np.round(d)


@dataclass(frozen=True)
class SheetSpec:
    """Sinusoidal vortex sheet x2 = amplitude * sin(2 pi x1), mollified
    with width rho_n and discretized by a (2*quadrature_m + 1)-point
    windowed quadrature along the curve."""

    amplitude: float = 0.2
    rho_n: float = 0.05
    quadrature_m: int = 400


def sheet_curve(xi: np.ndarray, amplitude: float) -> tuple[np.ndarray, np.ndarray]:
    """Graph and slope of the sheet curve: (g(xi), g'(xi))."""
    g = amplitude * np.sin(2.0 * np.pi * xi)
    gp = 2.0 * np.pi * amplitude * np.cos(2.0 * np.pi * xi)
    return g, gp


def sheet_arc_length_integrand(xi, amplitude: float = 0.2):
    """sqrt(1 + g'(xi)^2), the length element of the sheet graph."""
    _, gp = sheet_curve(np.asarray(xi, dtype=np.float64), amplitude)
    return np.sqrt(1.0 + gp**2)


def sheet_vorticity(grid: GridSpec, spec: SheetSpec) -> SpectralField:
    """Vorticity of the mollified sinusoidal sheet, mean removed.

    At each grid point x the curve integral of psi_rho against arc length is
    approximated by the windowed sum

        (rho_n / M) * sum_{i=-M..M} psi_rho(x - (xi_i, g(xi_i)))
                                    * sqrt(1 + g'(xi_i)^2),

    with xi_i = x1 + i * rho_n / M.  The window covers the full mollifier
    support since psi_rho vanishes beyond distance rho_n.  The grid mean is
    subtracted afterwards so the total vorticity is exactly zero.
    """
    if spec.rho_n <= 1.0 / grid.n_padded:
        warnings.warn(
            f"mollifier width {spec.rho_n:.4g} is below the padded grid "
            f"spacing 1/{grid.n_padded}; the sheet is under-resolved",
            stacklevel=2,
        )
    ng = grid.n_grid
    m = spec.quadrature_m
    rho = spec.rho_n
    x = np.arange(ng) / ng
    offsets = np.arange(-m, m + 1) * (rho / m)
    vals = np.empty((ng, ng), dtype=np.float64)
    for a in range(ng):
        xi = x[a] + offsets
        g, gp = sheet_curve(xi, spec.amplitude)
        w = np.sqrt(1.0 + gp**2)
        d1 = _min_image(x[a] - xi)
        d2 = _min_image(x[None, :] - g[:, None])
        r = np.sqrt(d1[:, None] ** 2 + d2**2) / rho
        psi = bspline_mollifier(r) / rho**2
        vals[a, :] = (rho / m) * (psi * w[:, None]).sum(axis=0)
    vals -= vals.mean()
    f = to_spectral(PhysicalField(grid, vals))
    c = f.coeffs.copy()
    c[grid.n_modes, grid.n_modes] = 0.0
    return SpectralField(grid, c)


@dataclass(frozen=True)
class EddySpec:
    """Superposition of confined eddies of common radius at the given centers."""

    centers: tuple = field(default=((1.0 / 3.0, 0.0), (2.0 / 3.0, 0.0)))
    radius: float = 1.0 / 6.0
    rho_n: float = 10.0 / 128.0


def confined_eddy_velocity(r_scaled, rho_n: float):
    """Tangential speed profile of one confined eddy in the scaled radius.

    v = 0 inside r < 1/4, ramps as 2 pi (r - 1/4) up to r = 1/2, then decays
    as pi (tanh((1-r)/rho_n) + 1)/4; the jump at r = 1/2 is bounded by
    pi (1 - tanh(1/(2 rho_n)))/4 and vanishes as rho_n -> 0.
    """
    if rho_n <= 0:
        raise ValueError(f"rho_n must be > 0, got {rho_n}")
    r = np.asarray(r_scaled, dtype=np.float64)
    ramp = 2.0 * np.pi * (r - 0.25)
    tail = np.pi * (np.tanh((1.0 - r) / rho_n) + 1.0) / 4.0
    v = np.where(r < 0.25, 0.0, np.where(r <= 0.5, ramp, tail))
    return v if v.ndim else float(v)


def kissing_vortices(grid: GridSpec, spec: EddySpec) -> SpectralField:
    """Vorticity of superposed confined eddies (curl of the sampled velocity).

    The velocity of each eddy, v(|x - c|/R) in the tangential direction, is
    sampled on the collocation grid with periodic minimum-image distances,
    the sum is Leray-projected, and the scalar curl is returned.  Centers
    closer than 2R (periodically) raise OverlappingEddies.
    """
    centers = [np.asarray(c, dtype=np.float64) for c in spec.centers]
    for i in range(len(centers)):
        for j in range(i + 1, len(centers)):
            d = np.hypot(*_min_image(centers[i] - centers[j]))
            if d < 2.0 * spec.radius:
                raise OverlappingEddies(
                    f"centers {tuple(centers[i])} and {tuple(centers[j])} are "
                    f"{d:.4g} apart; need >= {2 * spec.radius:.4g}"
                )
    x1, x2 = grid.coords()
    u1 = np.zeros_like(x1)
    u2 = np.zeros_like(x1)
    for c in centers:
        d1 = _min_image(x1 - c[0])
        d2 = _min_image(x2 - c[1])
        dist = np.hypot(d1, d2)
        v = confined_eddy_velocity(dist / spec.radius, spec.rho_n)
        with np.errstate(invalid="ignore", divide="ignore"):
            t1 = np.where(dist > 0, -d2 / dist, 0.0)
            t2 = np.where(dist > 0, d1 / dist, 0.0)
        u1 += v * t1
        u2 += v * t2
    s1 = to_spectral(PhysicalField(grid, u1))
    s2 = to_spectral(PhysicalField(grid, u2))
    return curl(project_leray(s1, s2))


def mollifier_transform(s, nodes: int | None = None):
    """Plane Fourier transform of the B-spline profile at radial frequency s.

    Psi_hat(s) = 2 pi int_0^1 psi(r) J0(2 pi s r) r dr, evaluated by
    Gauss-Legendre quadrature with the node count scaled to the number of
    Bessel oscillations (accuracy ~1e-12 over the range used here).
    Psi_hat(0) = 1 by the unit-mass normalization.
    """
    s = np.asarray(s, dtype=np.float64)
    smax = float(s.max()) if s.size else 0.0
    if nodes is None:
        nodes = max(48, int(2.0 * smax) + 32)
    xg, wg = roots_legendre(nodes)
    # split at the spline knot r = 1/2 so each panel integrand is smooth
    r = np.concatenate([0.25 * (xg + 1.0), 0.25 * (xg + 1.0) + 0.5])
    w = np.concatenate([0.25 * wg, 0.25 * wg])
    profile = bspline_mollifier(r) * r * w
    arg = 2.0 * np.pi * np.multiply.outer(s, r)
    val = 2.0 * np.pi * (j0(arg) * profile).sum(axis=-1)
    return val if val.ndim else float(val)


def good_kernel(grid: GridSpec, rho_n: float) -> SpectralField:
    """Band truncation of the periodized mollifier psi_rho_n as a convolver.

    Coefficients are the mollifier transform sampled at rho_n * k over the
    retained band; convolution against it is per-mode multiplication.  For
    rho_n shrinking slower than 1/N the kernel keeps an L1 norm within o(1)
    of the mollifier's.
    """
    if rho_n <= 0:
        raise ValueError(f"rho_n must be > 0, got {rho_n}")
    ksq = grid.k_sq
    uniq, inverse = np.unique(ksq.ravel(), return_inverse=True)
    vals = mollifier_transform(rho_n * np.sqrt(uniq))
    c = vals[inverse].reshape(ksq.shape).astype(np.complex128)
    return SpectralField(grid, c)


def taylor_green_vorticity(grid: GridSpec) -> SpectralField:
    """Stationary cellular flow: stream function cos(2 pi x1) cos(2 pi x2).

    The vorticity -8 pi^2 cos(2 pi x1) cos(2 pi x2) is set spectrally exactly
    (coefficients -2 pi^2 on the four modes (+-1, +-1)).
    """
    amp = -2.0 * np.pi**2
    return SpectralField.from_modes(
        grid,
        {(1, 1): amp, (1, -1): amp, (-1, 1): amp, (-1, -1): amp},
    )
