import numpy as np
import pytest

from kitaevdyn.analysis.spectrum import SpectrumCurve, excitation_gap, spectrum_sweep
from kitaevdyn.errors import DimensionError
from kitaevdyn.hamiltonians import effective_bch_hamiltonian, heisenberg, kitaev
from kitaevdyn.pauli import OperatorSum, PauliString, to_dense
from kitaevdyn.pulses import efficient_pattern, rotated_hamiltonian


def test_excitation_gap():
    assert excitation_gap([0.0, 0.0, 1e-12, 0.5, 2.0]) == 0.5
    assert excitation_gap([1.0, 1.0]) == 0.0
    assert excitation_gap([3.0, -1.0, 0.0]) == 1.0


def test_sweep_matches_dense_effective_hamiltonian(hexagon, j_case_i):
    h_s = heisenberg(hexagon, j_case_i)
    h_r = rotated_hamiltonian(h_s, efficient_pattern(hexagon))
    grid = [0.0, 0.5, 1.2]
    curve = spectrum_sweep(h_s, h_r, grid)
    assert isinstance(curve, SpectrumCurve) and curve.eigenvalues.shape == (3, 64)
    for t, row in zip(grid, curve.eigenvalues):
        oracle = np.linalg.eigvalsh(to_dense(effective_bch_hamiltonian(h_s, h_r, t)))
        np.testing.assert_allclose(row, oracle, atol=1e-12)
    # t = 0 is the Kitaev model with a 4-fold degenerate ground level on one hexagon
    w0 = curve.eigenvalues[0]
    assert np.sum(w0 < w0[0] + 1e-9) == 4
    np.testing.assert_allclose(w0, np.linalg.eigvalsh(to_dense(kitaev(hexagon, j_case_i))), atol=1e-12)
    np.testing.assert_allclose(curve.gaps_flipped[0], excitation_gap(-w0))


def test_gap_positive_up_to_unit_time(hexagon, j_case_i):
    h_s = heisenberg(hexagon, j_case_i)
    h_r = rotated_hamiltonian(h_s, efficient_pattern(hexagon))
    curve = spectrum_sweep(h_s, h_r, np.linspace(0, 1.0, 21))
    assert np.all(curve.gaps > 0)


def test_errors():
    a = OperatorSum(2, [PauliString.from_label("XX")])
    with pytest.raises(DimensionError):
        spectrum_sweep(a, OperatorSum.zero(3), [0.0])
    # a non-Hermitian slope: [H_S, H_R] with complex coefficient in H_S
    bad = OperatorSum(1, [PauliString.from_label("X", 1 + 1j)])
    with pytest.raises(ValueError):
        spectrum_sweep(bad, OperatorSum(1, [PauliString.from_label("Z")]), [0.5])
