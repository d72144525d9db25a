import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm
from scipy.special import jv

from kitaevdyn.analysis.fidelity import MODEL_CASES
from kitaevdyn.errors import ContractError
from kitaevdyn.hamiltonians import heisenberg
from kitaevdyn.pauli import OperatorSum, PauliString, to_dense
from kitaevdyn.propagator import (
    ExactEvolver,
    PulsedEvolutionSpec,
    PulsedPropagator,
    bessel_j,
    chebyshev_propagator,
    chebyshev_tail_bound,
    evolve_chebyshev,
    evolve_exact,
    max_chebyshev_step,
    pulsed_evolution,
    segment_hamiltonians,
    segment_time,
    spectral_bounds,
    unitarity_defect,
)
from kitaevdyn.pulses import efficient_sequence, rotated_hamiltonian, standard_sequence
from oracles import kron_pulse, opnorm


def random_hamiltonian(n, seed):
    rng = np.random.default_rng(seed)
    terms = [
        PauliString.from_label("".join(rng.choice(list("IXYZ"), n)), rng.normal())
        for _ in range(8)
    ]
    return OperatorSum(n, terms)


def test_exact_half_pi_x():
    h = OperatorSum(1, [PauliString.from_label("X", np.pi / 2)])
    np.testing.assert_allclose(evolve_exact(h, 1.0), -1j * np.array([[0, 1], [1, 0]]), atol=1e-15)


@pytest.mark.parametrize("seed", range(4))
def test_exact_matches_expm(seed):
    h = random_hamiltonian(3, seed)
    np.testing.assert_allclose(evolve_exact(h, 0.7), expm(-0.7j * to_dense(h)), atol=1e-12)
    np.testing.assert_allclose(ExactEvolver(h)(0.7), evolve_exact(h, 0.7), atol=1e-13)


def test_exact_rejects_non_hermitian():
    with pytest.raises(ContractError):
        evolve_exact(OperatorSum(1, [PauliString.from_label("Z", 1j)]), 1.0)


@given(st.floats(-40, 40, allow_nan=False), st.integers(0, 25))
def test_bessel_matches_scipy(x, order):
    np.testing.assert_allclose(bessel_j(order, x), jv(np.arange(order + 1), x), atol=1e-14)


def test_tail_bound_and_step():
    assert chebyshev_tail_bound(6, 0.1) < chebyshev_tail_bound(6, 1.0)
    dt = max_chebyshev_step(2.0, 6, 1e-10)
    assert chebyshev_tail_bound(6, 2.0 * dt) <= 1e-10
    assert max_chebyshev_step(0.0) == np.inf


@pytest.mark.parametrize("seed", range(3))
def test_spectral_bounds_enclose_spectrum(seed):
    h = random_hamiltonian(3, seed)
    center, half = spectral_bounds(h)
    w = np.linalg.eigvalsh(to_dense(h))
    assert center - half - 1e-12 <= w.min() and w.max() <= center + half + 1e-12


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 50), st.floats(0.0, 3.0))
def test_chebyshev_matches_exact(seed, t):
    h = random_hamiltonian(3, seed)
    res = chebyshev_propagator(h, t)
    assert opnorm(res.unitary - evolve_exact(h, t)) <= max(1e-9, 10 * res.tail_bound)
    assert unitarity_defect(res.unitary) < 1e-8


def test_chebyshev_single_step_truncation_visible(hexagon):
    h = MODEL_CASES["i"].hamiltonian(hexagon)
    one = chebyshev_propagator(h, 0.2, steps=1)
    auto = chebyshev_propagator(h, 0.2)
    exact = evolve_exact(h, 0.2)
    assert opnorm(one.unitary - exact) > 1e-6 > opnorm(auto.unitary - exact)
    # frozen step counts for the default order and tolerance
    assert auto.steps == 9 and chebyshev_propagator(h, 1.0).steps == 43


def test_chebyshev_explicit_range_and_errors():
    h = random_hamiltonian(2, 1)
    w = np.linalg.eigvalsh(to_dense(h))
    u = evolve_chebyshev(h, 0.5, spectral_range=(w.min(), w.max()))
    assert opnorm(u - evolve_exact(h, 0.5)) < 1e-9
    with pytest.raises(ValueError):
        chebyshev_propagator(h, 0.5, order=0)
    with pytest.raises(ValueError):
        chebyshev_propagator(h, 0.5, steps=0)
    ident = OperatorSum.identity(2, 0.3)
    np.testing.assert_allclose(evolve_chebyshev(ident, 2.0), np.exp(-0.6j) * np.eye(4), atol=1e-14)


def test_efficient_pulsed_evolution_literal_product(hexagon, j_generic):
    h = heisenberg(hexagon, j_generic)
    seq = efficient_sequence(hexagon)
    p = kron_pulse(seq.stages[0].pattern)
    hd = to_dense(h)
    t, n = 0.8, 3
    tau = t / n
    cycle = expm(-1j * tau * hd) @ p.conj().T @ expm(-1j * tau * hd) @ p
    u = pulsed_evolution(PulsedEvolutionSpec(seq, t, n), h)
    np.testing.assert_allclose(u, np.linalg.matrix_power(cycle, n), atol=1e-11)
    u_cheb = pulsed_evolution(PulsedEvolutionSpec(seq, t, n, method="chebyshev"), h)
    assert opnorm(u - u_cheb) < 1e-8


def test_standard_segments_and_timing(hexagon, j_generic):
    h = heisenberg(hexagon, j_generic)
    seq = standard_sequence(hexagon)
    segs = segment_hamiltonians(h, seq)
    assert len(segs) == 12
    p1, p2 = seq.stages[0].pattern, seq.stages[1].pattern
    assert segs[3] == rotated_hamiltonian(rotated_hamiltonian(h, p1), p2)
    assert segment_time(PulsedEvolutionSpec(seq, 1.0, 2)) == 0.25
    assert segment_time(PulsedEvolutionSpec(seq, 1.0, 2, standard_time="full")) == 0.5
    assert segment_time(PulsedEvolutionSpec(efficient_sequence(hexagon), 1.0, 2)) == 0.5


@pytest.mark.parametrize("scheme", ["efficient", "standard"])
def test_first_order_target(hexagon, j_generic, scheme):
    # for t -> 0 the cycle reproduces exp(-i t H_tgt) with error O(t^2)
    h = heisenberg(hexagon, j_generic)
    seq = efficient_sequence(hexagon) if scheme == "efficient" else standard_sequence(hexagon)
    h_tgt = 2 * sum(
        (OperatorSum(6, [PauliString(6, ((i, t.upper()), (k, t.upper())), j_generic[t])])
         for i, k, t in hexagon.bonds), OperatorSum.zero(6))
    errs = []
    for t in (0.02, 0.01):
        u = PulsedPropagator(h, seq)(PulsedEvolutionSpec(seq, t))
        errs.append(opnorm(u - evolve_exact(h_tgt, t)))
    assert errs[0] / errs[1] == pytest.approx(4.0, rel=0.05)


def test_spec_validation(hexagon):
    seq = efficient_sequence(hexagon)
    with pytest.raises(ValueError):
        PulsedEvolutionSpec(seq, 1.0, 0)
    with pytest.raises(ValueError):
        PulsedEvolutionSpec(seq, 1.0, method="magic")
    with pytest.raises(ValueError):
        PulsedEvolutionSpec(seq, 1.0, standard_time="t/6")
