import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from kitaevdyn.analysis.budgets import (
    hyperfine_correlation,
    max_bch_time,
    measurement_cycle_time,
    measurement_report,
    perturbation_budgets,
    phase_classify,
    refresh_overhead,
)
from kitaevdyn.analysis.toric import toric_coupling
from kitaevdyn.hamiltonians import Couplings, HyperfineField, SpinOrbitParams

pos = st.floats(1e-3, 10, allow_nan=False)


def test_phase_examples():
    assert phase_classify(Couplings(0.3, 0.3, 1.0)) == "A"
    assert phase_classify(Couplings(1.0, 1.0, 1.0)) == "B"
    assert phase_classify(Couplings(0.5, 0.5, 1.0)) == "B"  # boundary belongs to B
    with pytest.raises(ValueError):
        phase_classify(Couplings(-0.1, 1, 1))


@given(pos, pos, pos)
def test_phase_permutation_invariant(a, b, c):
    labels = {phase_classify(Couplings(*p)) for p in [(a, b, c), (b, c, a), (c, a, b), (b, a, c)]}
    assert len(labels) == 1


@given(pos, pos, pos, st.floats(0.1, 10))
def test_toric_coupling_homogeneous(jx, jy, jz, lam):
    j = Couplings(jx, jy, jz)
    assert toric_coupling(j.scaled(lam)) == pytest.approx(lam * toric_coupling(j), rel=1e-12)
    assert toric_coupling(Couplings(0.0, jy, jz)) == 0.0


def test_closed_forms():
    j = Couplings(0.3, 0.3, 1.0)
    assert abs(toric_coupling(j) - 5.0625e-4) <= 1e-12
    assert abs(max_bch_time(j) - 0.075) <= 1e-12


@given(pos, pos, pos)
def test_bch_time_general_case(jx, jy, jz):
    j = Couplings(jx, jy, jz)
    t = max_bch_time(j)
    # boundary of t^2 J_a^2 J_z < J_eff for the larger of J_x, J_y
    assert t**2 * max(jx, jy) ** 2 * jz == pytest.approx(toric_coupling(j), rel=1e-9)


def test_budget_examples():
    j = Couplings(0.3, 0.3, 1.0)
    small = perturbation_budgets(j, SpinOrbitParams(d=(1e-3,) * 3), 1e-6, hf_magnitude=1e-3)
    assert small.so_ok and small.hf_ok and small.hierarchy_ok
    big = perturbation_budgets(j, SpinOrbitParams(d=(0.1, 0.1, 0.0)))
    assert big.so_budget == pytest.approx(0.02) and not big.so_ok
    assert big.j_eff == pytest.approx(5.0625e-4)
    # signs cannot fake a pass
    assert perturbation_budgets(j, SpinOrbitParams(d=(0.1, -0.1, 0))).so_budget == pytest.approx(0.02)
    timed = perturbation_budgets(j, t=0.05)
    assert timed.time_ok and not perturbation_budgets(j, t=0.1).time_ok
    assert set(small.to_dict()) >= {"j_eff", "t_max", "so_budget", "hf_budget"}


def test_hyperfine_correlation(two_hexagons):
    uni = HyperfineField.uniform(10, (0.2, 0.3, 0.0))
    assert hyperfine_correlation(uni, two_hexagons) == pytest.approx(0.06)
    rnd = HyperfineField.random(10, (0.1, 0.1, 0.1), seed=4)
    dims = two_hexagons.z_dimers()
    expected = np.mean([rnd.dh[j, 0] * rnd.dh[k, 1] for j, k in dims])
    assert hyperfine_correlation(rnd, two_hexagons) == pytest.approx(expected)


fractions = st.fractions(min_value=0, max_value=100, max_denominator=10**6)


@given(fractions, fractions.filter(lambda x: x > 0))
def test_refresh_ratio_exact(tau_rot, tau):
    eff = refresh_overhead(tau_rot, tau)
    std = refresh_overhead(tau_rot, tau, "standard")
    assert isinstance(std, Fraction)
    assert std / eff == 3
    assert eff == (2 * tau_rot + tau) / tau


@given(st.floats(0, 100), st.floats(1e-6, 100))
def test_refresh_ratio_floats(tau_rot, tau):
    eff = refresh_overhead(tau_rot, tau, "efc")
    std = refresh_overhead(tau_rot, tau, "std")
    assert std == 3 * eff
    assert abs(std / eff - 3) <= 2 * math.ulp(3.0)


def test_refresh_errors():
    with pytest.raises(ValueError):
        refresh_overhead(0.1, 0)
    with pytest.raises(ValueError):
        refresh_overhead(-0.1, 1)
    with pytest.raises(ValueError):
        refresh_overhead(0.1, 1, "fast")


def test_measurement():
    assert measurement_cycle_time(2.0) == pytest.approx(math.pi / 2)
    rep = measurement_report(2.0, 1.0)
    assert rep["j_meas_exceeds_jz"] and rep["cycle_time"] == pytest.approx(math.pi / 2)
    with pytest.raises(ValueError):
        measurement_cycle_time(0)
