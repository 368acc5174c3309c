"""Spectral-viscosity right-hand sides.

The semi-discrete system evolves the retained band |k|_inf <= N of either
the velocity (primitive form) or the vorticity.  Viscosity acts through a
smooth per-mode multiplier

    Q_k = 1 - exp(-(|k|/k0)^alpha),        |k| Euclidean, Q_0 = 0,

scaled by eps_N = epsilon / N_G, so the dissipative term on mode k is
-eps_N * (2*pi*|k|)^2 * Q_k.  With epsilon = 0 the scheme reduces to the
plain truncated spectral method.  k0 = 0 is accepted as the fully-viscous
limit (Q_k = 1 for every k != 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .grid import GridSpec, SpectralField, VelocityField, hermitianize
from .operators import (
    TWO_PI,
    _product_sum,
    _real_product_sum,
    biot_savart,
    gradient,
    project_leray,
)

__all__ = [
    "SVConfig",
    "q_cutoff",
    "build_q_multiplier",
    "rhs_primitive",
    "rhs_vorticity",
    "error_terms",
    "ErrorTerms",
]


def q_cutoff(k_abs, k0: float, cutoff_alpha: float):
    """Scalar cutoff profile 1 - exp(-(|k|/k0)^alpha) at radius |k| >= 0."""
    k_abs = np.asarray(k_abs, dtype=np.float64)
    if k0 == 0:
        val = np.where(k_abs > 0, 1.0, 0.0)
    else:
        val = -np.expm1(-((k_abs / k0) ** cutoff_alpha))
    return val if val.ndim else float(val)


def build_q_multiplier(grid: GridSpec, k0: float, cutoff_alpha: float) -> np.ndarray:
    """Viscosity multiplier table Q_k over the centered band.

    Q_k = 1 - exp(-(|k|/k0)^cutoff_alpha) with Euclidean |k| in integer-mode
    units; Q at k = 0 is exactly zero.  k0 = 0 yields the sharp limit
    (Q_k = 1 for all k != 0).
    """
    if k0 < 0:
        raise ValueError(f"k0 must be >= 0, got {k0}")
    if cutoff_alpha < 2:
        raise ValueError(f"cutoff_alpha must be >= 2, got {cutoff_alpha}")
    q = q_cutoff(np.sqrt(grid.k_sq), k0, cutoff_alpha)
    q[grid.n_modes, grid.n_modes] = 0.0
    return q


@dataclass(frozen=True)
class SVConfig:
    """Viscosity amplitude and cutoff shape, bound to a grid.

    eps_n = epsilon / n_grid and the multiplier table are derived once and
    shared read-only.
    """

    grid: GridSpec
    epsilon: float
    k0_fraction: float = 1.0 / 3.0
    cutoff_alpha: float = 18.0

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if not (0 <= self.k0_fraction <= 1):
            raise ValueError(f"k0_fraction must be in [0, 1], got {self.k0_fraction}")

    @property
    def k0(self) -> float:
        return self.k0_fraction * self.grid.n_modes

    @property
    def eps_n(self) -> float:
        return self.epsilon / self.grid.n_grid

    @cached_property
    def q_hat(self) -> np.ndarray:
        q = build_q_multiplier(self.grid, self.k0, self.cutoff_alpha)
        q.flags.writeable = False
        return q

    @cached_property
    def viscous_multiplier(self) -> np.ndarray:
        """-eps_N * (2*pi*|k|)^2 * Q_k, the viscous symbol on the band."""
        m = -self.eps_n * (TWO_PI**2) * self.grid.k_sq * self.q_hat
        m.flags.writeable = False
        return m


def _zero_mean(c: np.ndarray, n: int) -> np.ndarray:
    c[n, n] = 0.0
    return c


def rhs_vorticity(omega: SpectralField, cfg: SVConfig) -> SpectralField:
    """Tendency -P_N(u . grad omega) + viscous term, u = biot_savart(omega).

    The input must be (exactly) Hermitian-symmetric; the advective product
    runs through half-spectrum transforms and the output is exactly
    Hermitian and mean-free.
    """
    g = omega.grid
    u = biot_savart(omega)
    w1, w2 = gradient(omega)
    adv = _real_product_sum(
        [(u.u1.coeffs, w1.coeffs), (u.u2.coeffs, w2.coeffs)], g
    )
    out = -adv + cfg.viscous_multiplier * omega.coeffs
    return SpectralField(g, _zero_mean(out, g.n_modes))


def rhs_primitive(u: VelocityField, cfg: SVConfig) -> VelocityField:
    """Tendency of the velocity form: Leray-projected advection plus viscosity.

    The input is assumed divergence-free and mean-free; the output is
    divergence-free and mean-free by construction.
    """
    g = u.grid
    d1u1, d2u1 = gradient(u.u1)
    d1u2, d2u2 = gradient(u.u2)
    adv1 = _real_product_sum([(u.u1.coeffs, d1u1.coeffs), (u.u2.coeffs, d2u1.coeffs)], g)
    adv2 = _real_product_sum([(u.u1.coeffs, d1u2.coeffs), (u.u2.coeffs, d2u2.coeffs)], g)
    proj = project_leray(SpectralField(g, adv1), SpectralField(g, adv2))
    t1 = -proj.u1.coeffs + cfg.viscous_multiplier * u.u1.coeffs
    t2 = -proj.u2.coeffs + cfg.viscous_multiplier * u.u2.coeffs
    n = g.n_modes
    return VelocityField(
        SpectralField(g, _zero_mean(t1, n)), SpectralField(g, _zero_mean(t2, n))
    )


@dataclass(frozen=True)
class ErrorTerms:
    """Truncation and viscosity-deficit error terms with their grid norms.

    err1 lives on the doubled band (modes N < |k|_inf <= 2N of the exact
    advection product); err2 on the original band.  norms maps
    {"err1", "err2"} to {"l1", "l2", "lp"} grid-quadrature values.
    """

    err1: SpectralField
    err2: SpectralField
    norms: dict


def error_terms(omega: SpectralField, cfg: SVConfig, p: float = 4.0) -> ErrorTerms:
    """Split the tendency defect into projection and viscosity-deficit parts.

    err1 = (I - P_N)(u . grad omega) evaluated exactly on the band
    N < |k|_inf <= 2N; err2 = eps_N * Laplacian(R * omega) with R = 1 - Q.
    """
    from .diagnostics import lp_norm  # local import to avoid a cycle

    g = omega.grid
    n = g.n_modes
    u = biot_savart(omega)
    w1, w2 = gradient(omega)
    full = _product_sum(
        [(u.u1.coeffs, w1.coeffs), (u.u2.coeffs, w2.coeffs)], g, out_modes=2 * n
    )
    inner = slice(n, 3 * n + 1)  # |k|_inf <= n block of the doubled band
    full[inner, inner] = 0.0
    wide = GridSpec(2 * n)
    err1 = SpectralField(wide, hermitianize(full))

    r_hat = 1.0 - cfg.q_hat
    c2 = -cfg.eps_n * (TWO_PI**2) * g.k_sq * r_hat * omega.coeffs
    err2 = SpectralField(g, hermitianize(_zero_mean(c2, n)))

    norms = {
        name: {
            "l1": lp_norm(f, 1.0),
            "l2": lp_norm(f, 2.0),
            "lp": lp_norm(f, p),
        }
        for name, f in (("err1", err1), ("err2", err2))
    }
    return ErrorTerms(err1, err2, norms)
