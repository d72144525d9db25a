"""Dynamical engineering of the Kitaev honeycomb model from Heisenberg couplings with pi-pulses."""

__version__ = "0.1.0"

from .errors import ConfigError, ContractError, DimensionError, ResourceError, SynthesisError
from .hamiltonians import Couplings, HyperfineField, SpinOrbitParams, heisenberg, hyperfine, kitaev, spin_orbit
from .lattice import HoneycombLattice, build_patch
from .pauli import OperatorSum, PauliString, PulsePattern, commutator, normalize, to_dense
from .pulses import (
    PulseSequence,
    averaged_hamiltonian,
    efficient_pattern,
    efficient_sequence,
    standard_sequence,
    verify_target,
)
from .propagator import PulsedEvolutionSpec, evolve_chebyshev, evolve_exact, pulsed_evolution

__all__ = [
    "ConfigError", "ContractError", "DimensionError", "ResourceError", "SynthesisError",
    "Couplings", "HyperfineField", "SpinOrbitParams", "heisenberg", "hyperfine", "kitaev", "spin_orbit",
    "HoneycombLattice", "build_patch",
    "OperatorSum", "PauliString", "PulsePattern", "commutator", "normalize", "to_dense",
    "PulseSequence", "averaged_hamiltonian", "efficient_pattern", "efficient_sequence",
    "standard_sequence", "verify_target",
    "PulsedEvolutionSpec", "evolve_chebyshev", "evolve_exact", "pulsed_evolution",
]
