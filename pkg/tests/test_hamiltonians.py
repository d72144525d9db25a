import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kitaevdyn.errors import DimensionError
from kitaevdyn.hamiltonians import (
    Couplings,
    HyperfineField,
    SpinOrbitParams,
    effective_bch_hamiltonian,
    heisenberg,
    hyperfine,
    kitaev,
    spin_orbit,
    unwanted_first_order,
)
from kitaevdyn.lattice import HoneycombLattice, build_patch
from kitaevdyn.pauli import OperatorSum, PauliString, commutator, to_dense
from kitaevdyn.pulses import efficient_pattern, rotated_hamiltonian
from oracles import SIGMA, kron_string

ONE_BOND = HoneycombLattice(2, ((0, 1, "z"),))
vec = st.tuples(*[st.floats(-1, 1, allow_nan=False)] * 3)


def site_op(n, site, mat):
    ops = [np.eye(2)] * n
    ops[site] = mat
    out = ops[0]
    for m in ops[1:]:
        out = np.kron(out, m)
    return out


def test_heisenberg_dense_oracle(hexagon, j_generic):
    n = hexagon.n_sites
    dense = sum(
        j_generic[a] * site_op(n, i, SIGMA[a.upper()]) @ site_op(n, k, SIGMA[a.upper()])
        for i, k, _ in hexagon.bonds for a in "xyz"
    )
    h = heisenberg(hexagon, j_generic)
    assert len(h.terms) == 3 * len(hexagon.bonds)
    np.testing.assert_allclose(to_dense(h), dense, atol=1e-12)


def test_kitaev_sign_and_terms(hexagon, j_generic):
    k = kitaev(hexagon, j_generic)
    assert len(k.terms) == len(hexagon.bonds)
    assert k.coefficient({0: "X", 1: "X"}) == j_generic.jx
    assert kitaev(hexagon, j_generic, -1) == -k
    with pytest.raises(ValueError):
        kitaev(hexagon, j_generic, 2)


def test_spin_orbit_examples():
    op = spin_orbit(ONE_BOND, SpinOrbitParams(d=(0, 0, 0.4)))
    assert op == OperatorSum(2, [PauliString.from_label("XY", 0.4), PauliString.from_label("YX", -0.4)])
    op = spin_orbit(ONE_BOND, SpinOrbitParams(c=(0.7, 0, 0)))
    assert op == OperatorSum(2, [PauliString.from_label("XI", 0.7), PauliString.from_label("IX", -0.7)])


@given(vec, vec)
def test_spin_orbit_vector_oracle(c, d):
    s0 = [kron_string(a + "I") for a in "XYZ"]
    s1 = [kron_string("I" + a) for a in "XYZ"]
    cross = [s0[1] @ s1[2] - s0[2] @ s1[1], s0[2] @ s1[0] - s0[0] @ s1[2], s0[0] @ s1[1] - s0[1] @ s1[0]]
    dense = sum(c[a] * (s0[a] - s1[a]) + d[a] * cross[a] for a in range(3))
    op = spin_orbit(ONE_BOND, SpinOrbitParams(c, d))
    np.testing.assert_allclose(to_dense(op), dense, atol=1e-12)
    assert op.is_hermitian()


def test_spin_orbit_hexagon_hermitian(hexagon):
    assert spin_orbit(hexagon, SpinOrbitParams((0.1, 0.2, 0.3), (0.3, 0.2, 0.1))).is_hermitian()
    assert SpinOrbitParams().is_zero
    with pytest.raises(ValueError):
        SpinOrbitParams(c=(np.inf, 0, 0))


def test_hyperfine_uniform(hexagon):
    op = hyperfine(HyperfineField.uniform(6, (0.1, 0.1, 0.1)))
    assert len(op.terms) == 18
    assert all(abs(t.coeff + 0.1) < 1e-15 for t in op.terms)
    assert hyperfine(HyperfineField.uniform(6)).is_empty


def test_hyperfine_random_reproducible():
    a = HyperfineField.random(6, (0.1, 0.2, 0.3), seed=5)
    b = HyperfineField.random(6, (0.1, 0.2, 0.3), seed=5)
    c = HyperfineField.random(6, (0.1, 0.2, 0.3), seed=6)
    assert a == b and hash(a) == hash(b) and hyperfine(a) == hyperfine(b)
    assert a != c
    with pytest.raises(ValueError):
        HyperfineField(np.zeros((3, 2)))


def test_couplings():
    j = Couplings(0.3, 0.4, 1.0)
    assert j["y"] == 0.4 and j["Z"] == 1.0
    assert j.scaled(2).as_tuple() == (0.6, 0.8, 2.0)
    with pytest.raises(ValueError):
        Couplings(np.nan, 0, 1)


def test_effective_bch(hexagon, j_case_i):
    h_s = heisenberg(hexagon, j_case_i)
    h_r = rotated_hamiltonian(h_s, efficient_pattern(hexagon))
    assert effective_bch_hamiltonian(h_s, h_r, 0.0) == (h_s + h_r) / 2
    h = effective_bch_hamiltonian(h_s, h_r, 0.5)
    assert h.is_hermitian()
    assert np.allclose(np.linalg.eigvals(to_dense(h)).imag, 0, atol=1e-10)
    k = kitaev(hexagon, j_case_i)
    assert effective_bch_hamiltonian(k, k, 0.9) == k
    with pytest.raises(DimensionError):
        effective_bch_hamiltonian(h_s, OperatorSum.zero(2), 0.1)


def test_unwanted_first_order(hexagon, j_case_i):
    h_s = heisenberg(hexagon, j_case_i)
    h_r = rotated_hamiltonian(h_s, efficient_pattern(hexagon))
    uw = unwanted_first_order(h_s, h_r, 0.3)
    assert uw.is_hermitian() and not uw.is_empty
    assert unwanted_first_order(h_s, h_s, 0.3).is_empty
    dense = -0.25j * 0.3 * (to_dense(h_s) @ to_dense(h_r) - to_dense(h_r) @ to_dense(h_s))
    np.testing.assert_allclose(to_dense(uw), dense, atol=1e-12)
    assert uw == (-0.25j * 0.3) * commutator(h_s, h_r)
