"""Symbolic Pauli-string algebra.

A :class:`PauliString` is a coefficient times a tensor product of single-site
Pauli matrices; identity factors are represented by absence, so a string costs
O(support) regardless of register size. :class:`OperatorSum` is a linear
combination of strings on a fixed register and is the type every Hamiltonian
in the package lives in.

Site ``i`` of an ``n``-site register is the ``i``-th Kronecker factor, i.e.
bit ``n - 1 - i`` of a computational-basis index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionError, ResourceError

PAULI_AXES = ("X", "Y", "Z")
PULSE_AXES = (None, "x", "y", "z")

DEFAULT_EPS = 1e-12
DENSE_SITE_CAP = 12

# (a, b) -> (phase, c) with sigma_a sigma_b = phase * sigma_c ("" is identity)
_PRODUCT = {
    ("X", "X"): (1, ""),
    ("Y", "Y"): (1, ""),
    ("Z", "Z"): (1, ""),
    ("X", "Y"): (1j, "Z"),
    ("Y", "X"): (-1j, "Z"),
    ("Y", "Z"): (1j, "X"),
    ("Z", "Y"): (-1j, "X"),
    ("Z", "X"): (1j, "Y"),
    ("X", "Z"): (-1j, "Y"),
}

MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliString:
    """``coeff * prod_site sigma^{axis}_site`` on an ``n_sites`` register.

    ``axes`` is a tuple of ``(site, axis)`` pairs sorted by site, with axis in
    ``{"X", "Y", "Z"}``. An empty ``axes`` is the identity.
    """

    n_sites: int
    axes: tuple[tuple[int, str], ...] = ()
    coeff: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "axes", tuple(sorted((int(s), a) for s, a in self.axes)))
        object.__setattr__(self, "coeff", complex(self.coeff))
        seen = set()
        for site, axis in self.axes:
            if axis not in PAULI_AXES:
                raise ValueError(f"invalid Pauli axis {axis!r} at site {site}")
            if not 0 <= site < self.n_sites:
                raise DimensionError(f"site {site} outside register of {self.n_sites} sites")
            if site in seen:
                raise ValueError(f"site {site} appears twice")
            seen.add(site)

    @classmethod
    def from_dict(cls, n_sites: int, axes: Mapping[int, str], coeff: complex = 1.0) -> "PauliString":
        return cls(n_sites, tuple((s, a.upper()) for s, a in axes.items() if a.upper() != "I"), coeff)

    @classmethod
    def from_label(cls, label: str, coeff: complex = 1.0) -> "PauliString":
        """Build from a dense label such as ``"XIZ"`` (site 0 first)."""
        return cls(len(label), tuple((i, a) for i, a in enumerate(label.upper()) if a != "I"), coeff)

    @property
    def sites(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.axes)

    def axis_at(self, site: int) -> str:
        for s, a in self.axes:
            if s == site:
                return a
        return "I"

    def label(self) -> str:
        chars = ["I"] * self.n_sites
        for s, a in self.axes:
            chars[s] = a
        return "".join(chars)

    def with_coeff(self, coeff: complex) -> "PauliString":
        return PauliString(self.n_sites, self.axes, coeff)

    def commutes_with(self, other: "PauliString") -> bool:
        mine = dict(self.axes)
        clashes = sum(1 for s, a in other.axes if s in mine and mine[s] != a)
        return clashes % 2 == 0

    def __matmul__(self, other: "PauliString") -> "PauliString":
        return multiply(self, other)

    def __repr__(self):
        body = " ".join(f"{a}{s}" for s, a in self.axes) or "I"
        return f"PauliString({self.coeff:.6g} * {body}, n={self.n_sites})"


def multiply(a: PauliString, b: PauliString) -> PauliString:
    """Product ``a @ b`` with the accumulated phase."""
    if a.n_sites != b.n_sites:
        raise DimensionError(f"cannot multiply strings on {a.n_sites} and {b.n_sites} sites")
    out = dict(a.axes)
    phase = a.coeff * b.coeff
    for site, axis in b.axes:
        if site in out:
            ph, res = _PRODUCT[(out[site], axis)]
            phase *= ph
            if res:
                out[site] = res
            else:
                del out[site]
        else:
            out[site] = axis
    return PauliString(a.n_sites, tuple(out.items()), phase)


@dataclass(frozen=True)
class PulsePattern:
    """Per-site pi-rotation axes; ``None`` means the site is not pulsed.

    A pi rotation about ``a`` preserves ``sigma_a`` and negates the other two
    Pauli components. Global phases are dropped.
    """

    axes: tuple[str | None, ...]

    def __post_init__(self):
        axes = tuple(None if a in (None, "none", "-") else str(a).lower() for a in self.axes)
        for a in axes:
            if a not in PULSE_AXES:
                raise ValueError(f"invalid pulse axis {a!r}")
        object.__setattr__(self, "axes", axes)

    @classmethod
    def identity(cls, n_sites: int) -> "PulsePattern":
        return cls((None,) * n_sites)

    @classmethod
    def from_dict(cls, n_sites: int, assignment: Mapping[int, str | None]) -> "PulsePattern":
        axes: list[str | None] = [None] * n_sites
        for site, axis in assignment.items():
            if not 0 <= site < n_sites:
                raise DimensionError(f"pulse on site {site} outside register of {n_sites} sites")
            axes[site] = axis
        return cls(tuple(axes))

    @property
    def n_sites(self) -> int:
        return len(self.axes)

    def sign(self, site: int, pauli_axis: str) -> int:
        pulse = self.axes[site]
        if pulse is None or pulse.upper() == pauli_axis:
            return 1
        return -1

    def compose(self, other: "PulsePattern") -> "PulsePattern":
        """Pattern equivalent (up to phase) to applying ``self`` then ``other``."""
        if self.n_sites != other.n_sites:
            raise DimensionError("patterns defined on different registers")
        out = []
        for a, b in zip(self.axes, other.axes):
            if a is None:
                out.append(b)
            elif b is None:
                out.append(a)
            elif a == b:
                out.append(None)
            else:
                out.append(({"x", "y", "z"} - {a, b}).pop())
        return PulsePattern(tuple(out))

    def __str__(self):
        return " ".join(a or "-" for a in self.axes)


def conjugate_by_pulse(term: PauliString, pattern: PulsePattern) -> PauliString:
    """``P^dagger term P`` for the pulse pattern ``P`` (sign bookkeeping only)."""
    if pattern.n_sites != term.n_sites:
        raise DimensionError(
            f"pattern on {pattern.n_sites} sites applied to string on {term.n_sites} sites"
        )
    sign = 1
    for site, axis in term.axes:
        sign *= pattern.sign(site, axis)
    return term if sign == 1 else term.with_coeff(-term.coeff)


class OperatorSum:
    """Linear combination of Pauli strings on ``n_sites`` sites.

    The constructor keeps terms as given; :func:`normalize` (and every
    arithmetic operation) merges duplicates, drops coefficients below ``eps``
    and sorts terms canonically. Instances are treated as immutable.
    """

    __slots__ = ("n_sites", "terms", "eps")

    def __init__(self, n_sites: int, terms: Iterable[PauliString] = (), eps: float = DEFAULT_EPS):
        if n_sites < 1:
            raise DimensionError("an operator needs at least one site")
        terms = tuple(terms)
        for t in terms:
            if t.n_sites != n_sites:
                raise DimensionError(f"term on {t.n_sites} sites in a {n_sites}-site sum")
        self.n_sites = n_sites
        self.terms = terms
        self.eps = eps

    @classmethod
    def from_terms(cls, n_sites: int, items: Iterable[tuple[complex, Mapping[int, str]]]) -> "OperatorSum":
        """Convenience constructor from ``(coeff, {site: axis})`` pairs; normalized."""
        return normalize(cls(n_sites, [PauliString.from_dict(n_sites, ax, c) for c, ax in items]))

    @classmethod
    def zero(cls, n_sites: int) -> "OperatorSum":
        return cls(n_sites)

    @classmethod
    def identity(cls, n_sites: int, coeff: complex = 1.0) -> "OperatorSum":
        return cls(n_sites, [PauliString(n_sites, (), coeff)])

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def is_empty(self) -> bool:
        return len(normalize(self).terms) == 0

    def as_dict(self) -> dict[tuple[tuple[int, str], ...], complex]:
        return {t.axes: t.coeff for t in normalize(self).terms}

    def coefficient(self, axes: Mapping[int, str] | Sequence[tuple[int, str]]) -> complex:
        key = tuple(sorted(axes.items() if isinstance(axes, Mapping) else axes))
        return self.as_dict().get(key, 0.0)

    def norm1(self) -> float:
        """Sum of absolute coefficients (an upper bound on the spectral radius)."""
        return float(sum(abs(t.coeff) for t in normalize(self).terms))

    def is_hermitian(self, tol: float = DEFAULT_EPS) -> bool:
        # Pauli strings are Hermitian, so the sum is iff every coefficient is real.
        return all(abs(t.coeff.imag) <= tol for t in normalize(self).terms)

    def support(self) -> set[int]:
        return {s for t in self.terms for s in t.sites}

    def _check(self, other: "OperatorSum"):
        if not isinstance(other, OperatorSum):
            return NotImplemented
        if other.n_sites != self.n_sites:
            raise DimensionError(f"operators on {self.n_sites} and {other.n_sites} sites")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return normalize(OperatorSum(self.n_sites, self.terms + other.terms, self.eps))

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, float, complex, np.number)):
            return NotImplemented
        return normalize(
            OperatorSum(self.n_sites, [t.with_coeff(t.coeff * scalar) for t in self.terms], self.eps)
        )

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return normalize(
            OperatorSum(self.n_sites, [multiply(a, b) for a in self.terms for b in other.terms], self.eps)
        )

    def __eq__(self, other):
        if not isinstance(other, OperatorSum):
            return NotImplemented
        return self.n_sites == other.n_sites and normalize(self).terms == normalize(other).terms

    def __hash__(self):
        return hash((self.n_sites, normalize(self).terms))

    def __repr__(self):
        shown = ", ".join(repr(t) for t in self.terms[:4])
        more = f", ... ({len(self.terms)} terms)" if len(self.terms) > 4 else ""
        return f"OperatorSum(n={self.n_sites}, [{shown}{more}])"

    def to_dense(self, cap: int = DENSE_SITE_CAP) -> np.ndarray:
        return to_dense(self, cap)


def _term_key(t: PauliString):
    return (len(t.axes), t.axes)


def normalize(op: OperatorSum, eps: float | None = None) -> OperatorSum:
    """Merge duplicate strings, drop ``|coeff| < eps`` and sort canonically."""
    eps = op.eps if eps is None else eps
    merged: dict[tuple[tuple[int, str], ...], complex] = {}
    for t in op.terms:
        merged[t.axes] = merged.get(t.axes, 0.0) + t.coeff
    terms = [PauliString(op.n_sites, axes, c) for axes, c in merged.items() if abs(c) >= eps]
    terms.sort(key=_term_key)
    return OperatorSum(op.n_sites, terms, op.eps)


def commutator(a: OperatorSum, b: OperatorSum) -> OperatorSum:
    """Exact ``[a, b] = ab - ba``. Only anticommuting string pairs contribute."""
    if a.n_sites != b.n_sites:
        raise DimensionError(f"operators on {a.n_sites} and {b.n_sites} sites")
    out = []
    for s in normalize(a).terms:
        for t in normalize(b).terms:
            if not s.commutes_with(t):
                p = multiply(s, t)
                out.append(p.with_coeff(2 * p.coeff))
    return normalize(OperatorSum(a.n_sites, out, a.eps))


def string_to_dense(term: PauliString, cap: int = DENSE_SITE_CAP) -> np.ndarray:
    return to_dense(OperatorSum(term.n_sites, [term]), cap)


def to_dense(op: OperatorSum, cap: int = DENSE_SITE_CAP) -> np.ndarray:
    """Dense ``2^n x 2^n`` matrix of ``op``.

    Each string ``i^{#Y} X^x Z^z`` is a signed permutation, so it is written
    straight into the output without Kronecker products.
    """
    n = op.n_sites
    if n > cap:
        raise ResourceError(f"{n} sites exceeds the dense cap of {cap}")
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    cols = np.arange(dim)
    for t in op.terms:
        xmask = zmask = ny = 0
        for site, axis in t.axes:
            bit = 1 << (n - 1 - site)
            if axis in ("X", "Y"):
                xmask |= bit
            if axis in ("Y", "Z"):
                zmask |= bit
            ny += axis == "Y"
        parity = np.zeros(dim, dtype=np.int64)
        z = cols & zmask
        while np.any(z):
            parity ^= z & 1
            z >>= 1
        vals = t.coeff * (1j**ny) * (1 - 2 * parity)
        out[cols ^ xmask, cols] += vals
    return out


def pulse_to_dense(pattern: PulsePattern, cap: int = DENSE_SITE_CAP) -> np.ndarray:
    """Unitary of the pattern with the ``-i`` phase per pulse dropped."""
    term = PauliString(
        pattern.n_sites, tuple((s, a.upper()) for s, a in enumerate(pattern.axes) if a is not None)
    )
    return string_to_dense(term, cap)
