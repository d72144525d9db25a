"""Time-dependent spectra of the first-order BCH effective Hamiltonian."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionError
from ..pauli import DENSE_SITE_CAP, OperatorSum, commutator, to_dense

DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class SpectrumCurve:
    times: np.ndarray
    eigenvalues: np.ndarray  # (len(times), 2^N), ascending per row
    gaps: np.ndarray  # excitation gap above the lowest level
    gaps_flipped: np.ndarray  # same for -H_eff (gap below the highest level)


def excitation_gap(energies: np.ndarray, tol: float = DEGENERACY_TOL) -> float:
    """Distance from the lowest level to the next distinct level.

    Levels within ``tol`` of the ground energy count as degenerate with it;
    returns 0 when the whole spectrum is one level.
    """
    e = np.sort(np.asarray(energies, dtype=float))
    above = e[e > e[0] + tol]
    return float(above[0] - e[0]) if above.size else 0.0


def spectrum_sweep(
    h_s: OperatorSum,
    h_r: OperatorSum,
    t_grid,
    *,
    energy_scale: float = 1.0,
    cap: int = DENSE_SITE_CAP,
) -> SpectrumCurve:
    """Eigenvalues of ``H_eff(t) = (H_S + H_R)/2 - i (t/4) [H_S, H_R]`` on a grid.

    ``energy_scale`` (``J_z``) sets the degeneracy tolerance
    ``1e-9 * energy_scale`` used for the gap.

    Raises:
        ValueError: ``H_eff`` is not Hermitian at some grid point.
    """
    if h_s.n_sites != h_r.n_sites:
        raise DimensionError("H_S and H_R act on different registers")
    static = to_dense((h_s + h_r) / 2, cap)
    slope = to_dense((-0.25j) * commutator(h_s, h_r), cap)
    times = np.asarray(t_grid, dtype=float)
    tol = DEGENERACY_TOL * energy_scale
    rows, gaps, flipped = [], [], []
    for t in times:
        h = static + t * slope
        if not np.allclose(h, h.conj().T, atol=1e-12):
            raise ValueError(f"effective Hamiltonian is not Hermitian at t={t}")
        w = np.linalg.eigvalsh(h)
        rows.append(w)
        gaps.append(excitation_gap(w, tol))
        flipped.append(excitation_gap(-w, tol))
    return SpectrumCurve(times, np.array(rows), np.array(gaps), np.array(flipped))
