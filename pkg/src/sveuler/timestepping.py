"""Explicit SSP-RK3 time stepping with an adaptive CFL step.

The three-stage Shu-Osher scheme

    s1 = u + dt R(u)
    s2 = 3/4 u + 1/4 (s1 + dt R(s1))
    u' = 1/3 u + 2/3 (s2 + dt R(s2))

drives either the vorticity state (SpectralField) or the primitive state
(VelocityField, re-projected divergence-free after every stage).  The step
size combines an advective bound cfl * dx / max|u| with an explicit viscous
bound cfl * dx^2 / (4 pi^2 eps_N); pinning dt_min = dt_max gives a fixed
step.  Integration lands bitwise-exactly on requested observation times by
assigning the target time instead of accumulating increments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import NonFinite, VelocityBlowup
from .grid import SpectralField, VelocityField, to_physical
from .operators import biot_savart, project_leray
from .sv import SVConfig

__all__ = ["StepperConfig", "ssp_rk3_step", "adaptive_dt", "integrate", "IntegrationResult"]

State = SpectralField | VelocityField


@dataclass(frozen=True)
class StepperConfig:
    cfl: float = 0.5
    t_end: float = 1.0
    dt_max: float = 1e-2
    dt_min: float = 1e-9
    formulation: str = "vorticity"  # or "primitive"
    velocity_ceiling: float = 1e3

    def __post_init__(self):
        if not (0 < self.cfl <= 1):
            raise ValueError(f"cfl must be in (0, 1], got {self.cfl}")
        if self.dt_min > self.dt_max:
            raise ValueError(f"dt_min {self.dt_min} exceeds dt_max {self.dt_max}")
        if self.formulation not in ("vorticity", "primitive"):
            raise ValueError(f"unknown formulation {self.formulation!r}")


def _lincomb(terms) -> np.ndarray:
    out = terms[0][0] * terms[0][1]
    for a, c in terms[1:]:
        out += a * c
    return out


def _euler_stage(state: State, dt: float, rhs: Callable) -> State:
    """state + dt * rhs(state), re-projected for velocity states."""
    r = rhs(state)
    if isinstance(state, SpectralField):
        return SpectralField(state.grid, state.coeffs + dt * r.coeffs)
    u1 = SpectralField(state.grid, state.u1.coeffs + dt * r.u1.coeffs)
    u2 = SpectralField(state.grid, state.u2.coeffs + dt * r.u2.coeffs)
    return project_leray(u1, u2)


def _blend(a: float, sa: State, b: float, sb: State) -> State:
    if isinstance(sa, SpectralField):
        return SpectralField(sa.grid, _lincomb([(a, sa.coeffs), (b, sb.coeffs)]))
    u1 = SpectralField(sa.grid, _lincomb([(a, sa.u1.coeffs), (b, sb.u1.coeffs)]))
    u2 = SpectralField(sa.grid, _lincomb([(a, sa.u2.coeffs), (b, sb.u2.coeffs)]))
    return project_leray(u1, u2)


def ssp_rk3_step(state: State, dt: float, rhs: Callable) -> State:
    """One Shu-Osher SSP-RK3 step; raises NonFinite on blow-up."""
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    s1 = _euler_stage(state, dt, rhs)
    s2 = _blend(0.75, state, 0.25, _euler_stage(s1, dt, rhs))
    out = _blend(1.0 / 3.0, state, 2.0 / 3.0, _euler_stage(s2, dt, rhs))
    if not out.is_finite():
        raise NonFinite("non-finite coefficients after RK step")
    return out


def max_grid_speed(state: State) -> float:
    """max over collocation points of |u|, reconstructing u for vorticity states."""
    u = biot_savart(state) if isinstance(state, SpectralField) else state
    v1 = to_physical(u.u1).values
    v2 = to_physical(u.u2).values
    return float(np.hypot(v1, v2).max())


def adaptive_dt(state: State, sv_cfg: SVConfig, cfg: StepperConfig) -> float:
    """CFL step: min of advective and viscous bounds, clamped to [dt_min, dt_max]."""
    umax = max_grid_speed(state)
    if umax > cfg.velocity_ceiling:
        raise VelocityBlowup(
            f"max |u| = {umax:.4g} exceeds ceiling {cfg.velocity_ceiling:.4g}"
        )
    dx = 1.0 / sv_cfg.grid.n_grid
    dt = cfg.dt_max
    if umax > 0:
        dt = min(dt, cfg.cfl * dx / umax)
    if sv_cfg.eps_n > 0:
        dt = min(dt, cfg.cfl * dx**2 / (4.0 * np.pi**2 * sv_cfg.eps_n))
    return max(dt, cfg.dt_min)


@dataclass
class IntegrationResult:
    state: State
    t: float
    n_steps: int
    observations: list = field(default_factory=list)


def integrate(
    state: State,
    rhs: Callable,
    sv_cfg: SVConfig,
    cfg: StepperConfig,
    observe_times=(),
    observer: Callable | None = None,
    step_callback: Callable | None = None,
) -> IntegrationResult:
    """Advance to cfg.t_end, hitting each observation time exactly.

    observer(t, state) fires at every requested time (including t = 0 when
    listed); step_callback(t, dt, state) fires after every accepted step.
    Step errors are re-raised with the failing time attached.
    """
    if cfg.t_end < 0:
        raise ValueError(f"t_end must be >= 0, got {cfg.t_end}")
    pending = sorted({float(s) for s in observe_times if 0.0 <= float(s) <= cfg.t_end})
    result = IntegrationResult(state=state, t=0.0, n_steps=0)

    def _observe(t, s):
        if observer is not None:
            observer(t, s)
        result.observations.append((t, s))

    if pending and pending[0] == 0.0:
        _observe(0.0, state)
        pending.pop(0)

    t = 0.0
    while t < cfg.t_end:
        try:
            dt = adaptive_dt(state, sv_cfg, cfg)
            target = pending[0] if pending else cfg.t_end
            clipped = t + dt >= target
            if clipped:
                dt = target - t
            state = ssp_rk3_step(state, dt, rhs)
        except (NonFinite, VelocityBlowup) as exc:
            raise type(exc)(f"{exc} (last good time t = {t:.6g})") from exc
        t = target if clipped else t + dt
        result.n_steps += 1
        if step_callback is not None:
            step_callback(t, dt, state)
        if pending and t == pending[0]:
            _observe(t, state)
            pending.pop(0)

    result.state = state
    result.t = t
    return result
