"""Closed-form budgets: phase diagram, TQC constraints, refresh overhead, measurement time."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from itertools import permutations

import numpy as np

from ..hamiltonians import Couplings, HyperfineField, SpinOrbitParams
from ..lattice import HoneycombLattice
from .toric import toric_coupling


def phase_classify(j: Couplings) -> str:
    """``"B"`` if every coupling obeys the triangle inequality (boundary included), else ``"A"``."""
    vals = j.as_tuple()
    if min(vals) < 0:
        raise ValueError("phase classification needs non-negative couplings")
    gapless = all(a <= b + c for a, b, c in permutations(vals))
    return "B" if gapless else "A"


def hyperfine_correlation(fields: HyperfineField, lattice: HoneycombLattice) -> float:
    """``<dh_x,j dh_y,k>`` averaged over z-link dimers ``(j, k)``.

    Equals ``dh_x * dh_y`` for a uniform field. Falls back to an on-site
    average when the patch has no z-links.
    """
    dh = fields.dh
    dimers = lattice.z_dimers()
    if not dimers:
        return float(np.mean(dh[:, 0] * dh[:, 1]))
    return float(np.mean([dh[j, 0] * dh[k, 1] for j, k in dimers]))


@dataclass(frozen=True)
class ConstraintReport:
    j_eff: float
    t_max: float
    so_budget: float
    hf_budget: float
    so_ok: bool
    hf_ok: bool
    hierarchy_ok: bool
    t: float | None = None
    time_ok: bool | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def max_bch_time(j: Couplings) -> float:
    """Largest ``t`` with ``t^2 J_a^2 J_z < J_eff`` for both ``a`` in x, y.

    Reduces to ``J_x / (4 J_z^2)`` when ``J_x = J_y``.
    """
    j_eff = toric_coupling(j)
    if j.jx == j.jy:
        return abs(j.jx) / (4.0 * j.jz**2)
    big = max(j.jx**2, j.jy**2)
    return math.sqrt(j_eff / (j.jz * big)) if big else 0.0


def perturbation_budgets(
    j: Couplings,
    so: SpinOrbitParams = SpinOrbitParams(),
    hf_xy: float = 0.0,
    *,
    hf_magnitude: float = 0.0,
    t: float | None = None,
) -> ConstraintReport:
    """Compare BCH, spin-orbit and hyperfine scales with the plaquette coupling.

    Args:
        j: couplings, ``J_z > 0``.
        so: spin-orbit vectors; only ``d_x d_y`` enters the budget.
        hf_xy: hyperfine correlation ``<dh_x dh_y>`` across a dimer.
        hf_magnitude: typical ``|dh|`` for the hierarchy check.
        t: optional BCH time step to test against ``t_max``.
    """
    j_eff = toric_coupling(j)
    t_max = max_bch_time(j)
    so_budget = abs(2.0 * so.d[0] * so.d[1]) / j.jz
    hf_budget = abs(hf_xy) / j.jz
    middle = max(abs(j.jx), abs(j.jy))
    small = max([abs(v) for v in so.c + so.d] + [abs(hf_magnitude)])
    hierarchy_ok = j.jz > middle > small
    time_ok = None if t is None else abs(t) < t_max
    return ConstraintReport(
        j_eff, t_max, so_budget, hf_budget,
        so_budget < j_eff, hf_budget < j_eff, hierarchy_ok, t, time_ok,
    )


def refresh_overhead(tau_rot, tau, scheme: str = "efficient"):
    """Refresh time over refresh interval: ``(2 tau_rot + tau) / tau``, tripled for the standard scheme.

    Only integer constants enter the arithmetic, so ``Fraction`` inputs give
    exact rational results (the standard/efficient ratio is then exactly 3).
    Float inputs follow ordinary rounding.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    if tau_rot < 0:
        raise ValueError("tau_rot must be non-negative")
    base = (2 * tau_rot + tau) / tau
    if scheme in ("efficient", "efc"):
        return base
    if scheme in ("standard", "std"):
        return 3 * base
    raise ValueError(f"unknown scheme {scheme!r}")


def measurement_cycle_time(j_meas: float) -> float:
    """One stabilizer measurement cycle, ``pi / J_meas`` (hbar = 1)."""
    if j_meas <= 0:
        raise ValueError("J_meas must be positive")
    return math.pi / j_meas


def measurement_report(j_meas: float, jz: float) -> dict:
    return {
        "j_meas": j_meas,
        "cycle_time": measurement_cycle_time(j_meas),
        "j_meas_exceeds_jz": j_meas > jz,
    }
