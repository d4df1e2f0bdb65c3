"""Direct integration of the piecewise systems: return maps, displacement,
limit-cycle location and the finite-difference bifurcation increment.

The hot stepping loop lives in a kernel module with two interchangeable
implementations: a Cython extension (``pwlienard._kernel_cy``) and a pure
Python twin (``pwlienard._kernel_py``).  The compiled one is used when it
imported successfully; set ``PWLIENARD_BACKEND=python`` to force the
fallback.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

from .errors import (EscapeAnnulus, MaxStepsExceeded, NonTransversalCrossing,
                     PwLienardError)
from .systems import Case, LienardSystem

_FORCED = os.environ.get("PWLIENARD_BACKEND", "")
if _FORCED == "python":
    from . import _kernel_py as _kernel
else:
    try:
        from . import _kernel_cy as _kernel  # type: ignore[attr-defined]
    except ImportError:
        if _FORCED == "compiled":
            raise
        from . import _kernel_py as _kernel

BACKEND = _kernel.BACKEND_NAME


@dataclass(frozen=True)
class SimConfig:
    lam: float = 0.0
    eps: float = 0.0
    rk_tol: float = 1e-10
    event_tol: float = 1e-12
    max_steps: int = 2_000_000
    r_min: float = 1e-3
    r_max: float = 50.0

    def __post_init__(self):
        if self.r_min >= self.r_max:
            raise ValueError("r_min must be below r_max")
        if self.lam < 0 or self.eps < 0:
            raise ValueError("lambda and eps must be non-negative")


@dataclass(frozen=True)
class CycleReport:
    section_coord: float
    h_star: float
    radius: float
    residual: float
    stability_slope: float
    side_sequence: tuple

    def to_json(self) -> dict:
        return {
            "section_coord": self.section_coord,
            "h_star": self.h_star,
            "radius": self.radius,
            "residual": self.residual,
            "stability_slope": self.stability_slope,
            "side_sequence": list(self.side_sequence),
        }


@dataclass
class CycleScan:
    cycles: list = field(default_factory=list)
    non_isolated: bool = False
    grid: list = field(default_factory=list)
    displacements: list = field(default_factory=list)


def vector_field(sys: LienardSystem, state, side: float):
    """Right-hand side with sgn replaced by the supplied side value."""
    x, y = state
    fc = sys.float_coeffs()
    mode = 0 if sys.case is Case.SWITCH_Y else 1
    return _kernel_field(mode, fc, sys.lam, sys.eps, x, y, side)


def _kernel_field(mode, fc, lam, eps, x, y, side):
    from ._kernel_py import _field  # reference formula, cheap for single calls

    return _field(mode, fc["a0"], fc["a1"], fc["b0"], fc["b1"], fc["c"],
                  lam, eps, 1.0, x, y, side)


def _mode_of(sys: LienardSystem) -> int:
    return 0 if sys.case is Case.SWITCH_Y else 1


def _run(sys: LienardSystem, mode: int, x0: float, y0: float,
         config: SimConfig, direction: float = 1.0):
    fc = sys.float_coeffs()
    lam = config.lam if (config.lam or config.eps) else sys.lam
    eps = config.eps if (config.lam or config.eps) else sys.eps
    status, x, y, t, crossings = _kernel.integrate_return(
        mode, fc["a0"], fc["a1"], fc["b0"], fc["b1"], fc["c"],
        lam, eps, x0, y0, config.rk_tol, config.event_tol,
        config.max_steps, config.r_min, config.r_max, direction)
    if status == 1:
        raise EscapeAnnulus(
            f"trajectory left [{config.r_min}, {config.r_max}] at t = {t:.4f}")
    if status == 2:
        raise MaxStepsExceeded(f"no return after {config.max_steps} steps")
    if status == 3:
        raise NonTransversalCrossing(
            f"switching-line crossing with normal velocity below guard at t = {t:.4f}")
    if status != 0:
        raise PwLienardError(f"kernel returned unknown status {status}")
    return x, y, t, crossings


def advance_to_section(sys: LienardSystem, start: float, config: SimConfig,
                       direction: float = 1.0):
    """One full return from the section; returns (coord, time, crossings).

    The section is {y = 0, x > 0} for switch-on-y systems and
    {x = 0, y > 0} for switch-on-x systems; ``start`` is the positive
    section coordinate (x resp. y).
    """
    if start <= config.r_min or start >= config.r_max:
        raise EscapeAnnulus(f"start {start} outside the annulus")
    mode = _mode_of(sys)
    if mode == 0:
        x, y, t, crossings = _run(sys, mode, start, 0.0, config, direction)
        return x, t, crossings
    x, y, t, crossings = _run(sys, mode, 0.0, start, config, direction)
    return y, t, crossings


def displacement(sys: LienardSystem, r: float, config: SimConfig) -> float:
    """d(r) = return coordinate minus r; zeros correspond to periodic orbits."""
    coord, _t, _c = advance_to_section(sys, r, config)
    return coord - r


def find_cycles(sys: LienardSystem, r_range, grid_n: int,
                config: SimConfig) -> CycleScan:
    """Grid scan for sign changes of the displacement, bisection refinement."""
    lo, hi = r_range
    scan = CycleScan()
    rs = [lo + (hi - lo) * i / (grid_n - 1) for i in range(grid_n)]
    ds = []
    for r in rs:
        try:
            ds.append(displacement(sys, r, config))
        except PwLienardError:
            ds.append(math.nan)
    scan.grid = rs
    scan.displacements = ds
    finite = [abs(d) for d in ds if not math.isnan(d)]
    if finite and max(finite) <= 1e-8 * max(1.0, hi):
        scan.non_isolated = True
        return scan
    for i in range(grid_n - 1):
        d0, d1 = ds[i], ds[i + 1]
        if math.isnan(d0) or math.isnan(d1) or d0 == 0.0 or d0 * d1 >= 0:
            continue
        r_star, d_star, sides = _refine_cycle(sys, rs[i], rs[i + 1], d0, d1,
                                              config)
        slope = _secant_slope(sys, r_star, config, 1e-4 * max(1.0, r_star))
        scan.cycles.append(CycleReport(
            section_coord=r_star,
            h_star=0.5 * r_star * r_star,
            radius=r_star,
            residual=abs(d_star),
            stability_slope=slope,
            side_sequence=sides,
        ))
    return scan


def _refine_cycle(sys, r_lo, r_hi, d_lo, d_hi, config):
    sides = ()
    d_mid = d_lo
    r_mid = r_lo
    for _ in range(200):
        r_mid = 0.5 * (r_lo + r_hi)
        coord, _t, crossings = advance_to_section(sys, r_mid, config)
        d_mid = coord - r_mid
        sides = tuple(c[3] for c in crossings)
        if abs(d_mid) <= 1e-9 * max(1.0, r_mid) or r_hi - r_lo < 1e-13:
            break
        if (d_lo > 0) != (d_mid > 0):
            r_hi, d_hi = r_mid, d_mid
        else:
            r_lo, d_lo = r_mid, d_mid
    return r_mid, d_mid, sides


def _secant_slope(sys, r_star, config, delta):
    try:
        d_plus = displacement(sys, r_star + delta, config)
        d_minus = displacement(sys, r_star - delta, config)
    except PwLienardError:
        return math.nan
    return (d_plus - d_minus) / (2.0 * delta)


def bifurcation_increment(sys: LienardSystem, h: float, lam: float,
                          eps: float, rk_tol: float = 1e-12) -> float:
    """H+(return) - H+(start) over one full return in Melnikov coordinates.

    Switch-on-y systems are integrated in the swapped coordinates (kernel
    mode 2), where both the switching line and the section are the y-axis
    and H+ = y^2/2 + lam * G(y); switch-on-x systems integrate directly.
    """
    fc = sys.float_coeffs()
    big_g = [0.0] + [c / (k + 1) for k, c in enumerate(fc["c"])]

    def poly(coeffs, v):
        acc = 0.0
        for cc in reversed(coeffs):
            acc = acc * v + cc
        return acc

    config = SimConfig(lam=lam, eps=eps, rk_tol=rk_tol)
    if sys.case is Case.SWITCH_Y:
        # start ordinate a solves a^2/2 + lam*G(a) = h (Newton from sqrt(2h))
        a = math.sqrt(2.0 * h)
        for _ in range(60):
            f_val = 0.5 * a * a + lam * poly(big_g, a) - h
            f_der = a + lam * poly(fc["c"], a)
            step = f_val / f_der
            a -= step
            if abs(step) <= 1e-15 * max(1.0, a):
                break
        x, y, _t, _c = _run(sys, 2, 0.0, a, config)
        return (0.5 * y * y + lam * poly(big_g, y)) - h
    a = math.sqrt(2.0 * h)
    x, y, _t, _c = _run(sys, 1, 0.0, a, config)
    return 0.5 * y * y - h


def theorem_form_equivalent(sys: LienardSystem, folded: LienardSystem,
                            r_values, config: SimConfig, tol: float = 1e-7):
    """Check that the multi-parameter and folded systems return identically."""
    worst = 0.0
    for r in r_values:
        c1, _t1, _x1 = advance_to_section(sys, r, config)
        c2, _t2, _x2 = advance_to_section(folded, r, config)
        worst = max(worst, abs(c1 - c2))
    return worst <= tol, worst
