"""Hamiltonian constructors on a honeycomb patch.

All pair sums run over lattice bonds. Energies are in whatever unit the
caller uses; the CLI normalises to ``J_z = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError
from .lattice import LINK_TYPES, HoneycombLattice
from .pauli import OperatorSum, PauliString, commutator, normalize

_UPPER = {"x": "X", "y": "Y", "z": "Z"}


@dataclass(frozen=True)
class Couplings:
    jx: float
    jy: float
    jz: float

    def __post_init__(self):
        if not all(np.isfinite([self.jx, self.jy, self.jz])):
            raise ValueError("couplings must be finite")

    def __getitem__(self, axis: str) -> float:
        return {"x": self.jx, "y": self.jy, "z": self.jz}[axis.lower()]

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.jx, self.jy, self.jz)

    def scaled(self, factor: float) -> "Couplings":
        return Couplings(self.jx * factor, self.jy * factor, self.jz * factor)


@dataclass(frozen=True)
class SpinOrbitParams:
    c: tuple[float, float, float] = (0.0, 0.0, 0.0)
    d: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(float(v) for v in self.c))
        object.__setattr__(self, "d", tuple(float(v) for v in self.d))
        if len(self.c) != 3 or len(self.d) != 3 or not np.all(np.isfinite(self.c + self.d)):
            raise ValueError("spin-orbit vectors must be finite 3-vectors")

    @property
    def is_zero(self) -> bool:
        return not any(self.c) and not any(self.d)


@dataclass(frozen=True)
class HyperfineField:
    """Static per-site field ``dh[j] = (dh_x, dh_y, dh_z)``."""

    dh: np.ndarray = field(compare=False)
    mode: str = "uniform"
    seed: int | None = None

    def __post_init__(self):
        arr = np.array(self.dh, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 3 or not np.all(np.isfinite(arr)):
            raise ValueError("hyperfine field must be a finite (n_sites, 3) array")
        arr.setflags(write=False)
        object.__setattr__(self, "dh", arr)

    @classmethod
    def uniform(cls, n_sites: int, dh=(0.0, 0.0, 0.0)) -> "HyperfineField":
        return cls(np.tile(np.asarray(dh, dtype=float), (n_sites, 1)), "uniform")

    @classmethod
    def random(cls, n_sites: int, sigma=(0.0, 0.0, 0.0), seed: int = 0) -> "HyperfineField":
        """Independent zero-mean Gaussian components with standard deviations ``sigma``."""
        rng = np.random.default_rng(seed)
        return cls(rng.normal(size=(n_sites, 3)) * np.asarray(sigma, dtype=float), "random", seed)

    @property
    def n_sites(self) -> int:
        return self.dh.shape[0]

    def __eq__(self, other):
        if not isinstance(other, HyperfineField):
            return NotImplemented
        return self.mode == other.mode and np.array_equal(self.dh, other.dh)

    def __hash__(self):
        return hash((self.mode, self.dh.tobytes()))


def _pair(n, i, j, a, b, coeff):
    return PauliString(n, ((i, a), (j, b)), coeff)


def heisenberg(lattice: HoneycombLattice, j: Couplings) -> OperatorSum:
    """``sum_<ij> (J_x X_i X_j + J_y Y_i Y_j + J_z Z_i Z_j)`` over every bond."""
    n = lattice.n_sites
    terms = [
        _pair(n, i, k, _UPPER[a], _UPPER[a], j[a])
        for i, k, _ in lattice.bonds
        for a in LINK_TYPES
    ]
    return normalize(OperatorSum(n, terms))


def kitaev(lattice: HoneycombLattice, j: Couplings, sign: int = 1) -> OperatorSum:
    """``sign * sum_a J_a sum_{a-links} sigma^a sigma^a``.

    ``sign=+1`` is what pulse averaging of the Heisenberg form produces;
    ``sign=-1`` is the ferromagnetic textbook convention.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    n = lattice.n_sites
    terms = [_pair(n, i, k, _UPPER[t], _UPPER[t], sign * j[t]) for i, k, t in lattice.bonds]
    return normalize(OperatorSum(n, terms))


def spin_orbit(lattice: HoneycombLattice, p: SpinOrbitParams) -> OperatorSum:
    """Bond sum of ``c.(sigma_j - sigma_k) + d.(sigma_j x sigma_k)`` with ``j < k``."""
    n = lattice.n_sites
    terms = []
    cx, cy, cz = p.c
    dx, dy, dz = p.d
    for a, b, _ in lattice.bonds:
        j, k = min(a, b), max(a, b)
        for coeff, axis in ((cx, "X"), (cy, "Y"), (cz, "Z")):
            terms.append(PauliString(n, ((j, axis),), coeff))
            terms.append(PauliString(n, ((k, axis),), -coeff))
        terms += [
            _pair(n, j, k, "Y", "Z", dx), _pair(n, j, k, "Z", "Y", -dx),
            _pair(n, j, k, "Z", "X", dy), _pair(n, j, k, "X", "Z", -dy),
            _pair(n, j, k, "X", "Y", dz), _pair(n, j, k, "Y", "X", -dz),
        ]
    return normalize(OperatorSum(n, terms))


def hyperfine(fields: HyperfineField) -> OperatorSum:
    """``-sum_j (dh_x X_j + dh_y Y_j + dh_z Z_j)``."""
    n = fields.n_sites
    terms = [
        PauliString(n, ((site, axis),), -fields.dh[site, col])
        for site in range(n)
        for col, axis in enumerate(("X", "Y", "Z"))
    ]
    return normalize(OperatorSum(n, terms))


def effective_bch_hamiltonian(h_s: OperatorSum, h_r: OperatorSum, t: float) -> OperatorSum:
    """``(H_S + H_R - i (t/2) [H_S, H_R]) / 2``; Hermitian for real ``t``."""
    if h_s.n_sites != h_r.n_sites:
        raise DimensionError("H_S and H_R act on different registers")
    return (h_s + h_r + (-0.5j * t) * commutator(h_s, h_r)) / 2


def unwanted_first_order(h_s: OperatorSum, h_r: OperatorSum, t: float) -> OperatorSum:
    """Leading BCH error ``-i t [H_S, H_R] / 4``."""
    if h_s.n_sites != h_r.n_sites:
        raise DimensionError("H_S and H_R act on different registers")
    return (-0.25j * t) * commutator(h_s, h_r)
