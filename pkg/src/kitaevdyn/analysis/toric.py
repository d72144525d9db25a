"""Toric-code limit: plaquette operators, dimer projection, perturbation theory."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ContractError
from ..hamiltonians import Couplings
from ..lattice import HoneycombLattice, external_axes
from ..pauli import DENSE_SITE_CAP, OperatorSum, PauliString, normalize, to_dense

# Projection of sigma_a (x) sigma_b onto the dimer ground space {|00>, |11>}
# of -J_z Z Z, written as (phase, effective axis). Missing pairs flip one spin
# of the dimer and are annihilated.
DIMER_RULES: dict[tuple[str, str], tuple[int, str]] = {
    ("I", "I"): (1, "I"),
    ("X", "X"): (1, "X"),
    ("Y", "Y"): (-1, "X"),
    ("X", "Y"): (1, "Y"),
    ("Y", "X"): (1, "Y"),
    ("Z", "I"): (1, "Z"),
    ("I", "Z"): (1, "Z"),
    ("Z", "Z"): (1, "I"),
}


def plaquette_operator(lattice: HoneycombLattice, p: int) -> PauliString:
    """``W_p``: each plaquette site carries the axis of its external link.

    On a hexagon labelled 1..6 this is ``Z1 Y2 X3 Z4 Y5 X6``.
    """
    if not 0 <= p < len(lattice.plaquettes):
        raise IndexError(f"plaquette {p} out of range (have {len(lattice.plaquettes)})")
    plaq = lattice.plaquettes[p]
    axes = external_axes(plaq)
    return PauliString(lattice.n_sites, tuple((s, a.upper()) for s, a in zip(plaq.sites, axes)))


@dataclass(frozen=True)
class EffectiveSpinResult:
    mapped: OperatorSum  # on len(dimers) effective sites
    unmapped: tuple[PauliString, ...]  # annihilated by the projection or off-dimer


def effective_spin_map(op: OperatorSum, dimer_pairs) -> EffectiveSpinResult:
    """Project ``op`` onto the dimer ground space, one effective spin per pair.

    Effective site ``k`` stands for ``dimer_pairs[k] = (a, b)``; the rule
    applied is ``DIMER_RULES[(axis_a, axis_b)]``. Terms with an
    unpaired site or a single flipped dimer spin are returned in ``unmapped``.
    """
    pairs = [tuple(p) for p in dimer_pairs]
    owner: dict[int, tuple[int, int]] = {}
    for k, (a, b) in enumerate(pairs):
        for slot, site in enumerate((a, b)):
            if site in owner:
                raise ValueError(f"site {site} appears in two dimers")
            owner[site] = (k, slot)
    if not pairs:
        raise ValueError("need at least one dimer")
    n_eff = len(pairs)

    mapped, unmapped = [], []
    for term in normalize(op).terms:
        if any(s not in owner for s in term.sites):
            unmapped.append(term)
            continue
        coeff = term.coeff
        axes = []
        for k, (a, b) in enumerate(pairs):
            rule = DIMER_RULES.get((term.axis_at(a), term.axis_at(b)))
            if rule is None:
                break
            phase, eff = rule
            coeff *= phase
            if eff != "I":
                axes.append((k, eff))
        else:
            mapped.append(PauliString(n_eff, tuple(axes), coeff))
            continue
        unmapped.append(term)
    return EffectiveSpinResult(normalize(OperatorSum(n_eff, mapped)), tuple(unmapped))


def toric_coupling(j: Couplings) -> float:
    """Fourth-order plaquette coupling ``J_x^2 J_y^2 / (16 J_z^3)``."""
    if j.jz <= 0:
        raise ValueError("J_z must be positive")
    return j.jx**2 * j.jy**2 / (16.0 * j.jz**3)


@dataclass(frozen=True)
class SecondOrderResult:
    ground_energy: float
    ground_basis: np.ndarray  # (2^N, g) orthonormal columns
    first_order: np.ndarray  # P V P in that basis
    heff: np.ndarray  # second-order correction in that basis


def second_order_effective(
    h0: OperatorSum,
    v: OperatorSum,
    ground_energy_tolerance: float = 1e-9,
    cap: int = DENSE_SITE_CAP,
) -> SecondOrderResult:
    """Second-order degenerate perturbation theory on the ground manifold of ``h0``.

    ``<a|H2|b> = sum_{j not in ground} <a|V|j><j|V|b> / (E0 - E_j)``

    Raises:
        ContractError: ``h0`` has no excited states (the whole space is degenerate).
    """
    if h0.n_sites != v.n_sites:
        raise ContractError("H0 and V act on different registers")
    w, vecs = np.linalg.eigh(to_dense(h0, cap))
    e0 = w[0]
    ground = w <= e0 + ground_energy_tolerance * max(1.0, abs(e0))
    if ground.all():
        raise ContractError("H0 has no excited states; no degeneracy structure to expand around")
    v_eig = vecs.conj().T @ to_dense(v, cap) @ vecs
    coupling = v_eig[np.ix_(~ground, ground)]
    denom = e0 - w[~ground]
    heff = coupling.conj().T @ (coupling / denom[:, None])
    first = v_eig[np.ix_(ground, ground)]
    return SecondOrderResult(float(e0), vecs[:, ground], first, 0.5 * (heff + heff.conj().T))
