"""Time evolution: exact oracle, Chebyshev propagator, pulsed sequences.

Units: hbar = 1, so ``U(t) = exp(-i H t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .pauli import DENSE_SITE_CAP, OperatorSum, normalize, to_dense
from .pulses import PulseSequence, rotated_hamiltonian

DEFAULT_ORDER = 6
# per-step bound on the truncated Bessel tail of the default Chebyshev step
DEFAULT_STEP_TOL = 1e-10


def _eigh(h: OperatorSum, cap: int):
    if not h.is_hermitian():
        raise ContractError("exact evolution needs a Hermitian Hamiltonian")
    return np.linalg.eigh(to_dense(h, cap))


def evolve_exact(h: OperatorSum, t: float, cap: int = DENSE_SITE_CAP) -> np.ndarray:
    """``exp(-i H t)`` by Hermitian eigendecomposition."""
    w, v = _eigh(h, cap)
    return (v * np.exp(-1j * w * t)) @ v.conj().T


class ExactEvolver:
    """Caches one eigendecomposition and evaluates ``exp(-i H t)`` for many ``t``."""

    def __init__(self, h: OperatorSum, cap: int = DENSE_SITE_CAP):
        self.energies, self.vectors = _eigh(h, cap)

    def __call__(self, t: float) -> np.ndarray:
        v = self.vectors
        return (v * np.exp(-1j * self.energies * t)) @ v.conj().T


def bessel_j(order: int, x: float) -> np.ndarray:
    """``J_0(x) .. J_order(x)``.

    Power series for ``|x| < 1``; Miller's downward recurrence otherwise,
    normalised with ``J_0 + 2 sum_k J_2k = 1``. Accurate to machine
    precision for the small orders and arguments used here.
    """
    ax = abs(x)
    if ax < 1.0:
        out = np.zeros(order + 1)
        half = 0.5 * ax
        lead = 1.0  # (x/2)^n / n!
        for n in range(order + 1):
            term, total, m = lead, 0.0, 0
            while abs(term) > 1e-18 * abs(total) or m == 0:
                total += term
                m += 1
                term *= -half * half / (m * (m + n))
                if term == 0.0:
                    break
            out[n] = total
            lead *= half / (n + 1)
    else:
        start = 2 * ((max(order, int(ax)) + int(math.sqrt(40.0 * max(order, ax))) + 20) // 2)
        vals = np.zeros(start + 2)
        vals[start] = 1e-300
        for k in range(start, 0, -1):
            vals[k - 1] = 2.0 * k / ax * vals[k] - vals[k + 1]
            if abs(vals[k - 1]) > 1e250:
                vals[k - 1 :] *= 1e-250
        norm = vals[0] + 2.0 * vals[2::2].sum()
        out = vals[: order + 1] / norm
    if x < 0:
        out[1::2] *= -1
    return out


def spectral_bounds(h: OperatorSum) -> tuple[float, float]:
    """``(center, half_width)`` from the identity coefficient and the Pauli 1-norm."""
    terms = normalize(h).terms
    center = sum(t.coeff.real for t in terms if not t.axes)
    half = sum(abs(t.coeff) for t in terms if t.axes)
    return center, half


def chebyshev_tail_bound(order: int, x: float) -> float:
    """Bound on ``||sum_{k > order} 2 J_k(x) T_k||`` (``|T_k| <= 1`` on the spectrum)."""
    ks = bessel_j(order + 40, x)
    return float(2.0 * np.abs(ks[order + 1 :]).sum())


def max_chebyshev_step(half_width: float, order: int = DEFAULT_ORDER, tol: float = DEFAULT_STEP_TOL) -> float:
    """Largest ``dt`` whose truncated tail bound at ``half_width * dt`` stays below ``tol``."""
    if half_width == 0.0:
        return math.inf
    lo, hi = 0.0, 1.0
    while chebyshev_tail_bound(order, hi) < tol:
        hi *= 2.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if chebyshev_tail_bound(order, mid) < tol:
            lo = mid
        else:
            hi = mid
    return lo / half_width


@dataclass(frozen=True)
class ChebyshevResult:
    unitary: np.ndarray
    steps: int
    tail_bound: float  # summed over steps


def _chebyshev_step(hs: np.ndarray, center: float, half: float, dt: float, order: int) -> np.ndarray:
    dim = hs.shape[0]
    eye = np.eye(dim, dtype=complex)
    if half == 0.0:
        return eye * np.exp(-1j * center * dt)
    coeffs = bessel_j(order, half * dt)
    scaled = (hs - center * eye) / half
    t_prev, t_cur = eye, scaled
    u = coeffs[0] * eye
    if order >= 1:
        u = u + 2.0 * (-1j) * coeffs[1] * scaled
    for k in range(2, order + 1):
        t_next = 2.0 * scaled @ t_cur - t_prev
        u = u + 2.0 * (-1j) ** k * coeffs[k] * t_next
        t_prev, t_cur = t_cur, t_next
    return u * np.exp(-1j * center * dt)


def chebyshev_propagator(
    h: OperatorSum,
    t: float,
    order: int = DEFAULT_ORDER,
    *,
    steps: int | None = None,
    spectral_range: tuple[float, float] | None = None,
    step_tol: float = DEFAULT_STEP_TOL,
    cap: int = DENSE_SITE_CAP,
) -> ChebyshevResult:
    """Truncated Chebyshev expansion of ``exp(-i H t)``.

    Per step ``dt``::

        U ~ exp(-i b dt) sum_{k=0}^{order} (2 - delta_k0) (-i)^k J_k(a dt) T_k((H - b)/a)

    with ``b`` the spectral centre and ``a`` the half width, taken from the
    Pauli 1-norm unless ``spectral_range=(e_min, e_max)`` is given. The
    number of steps defaults to ``ceil(|t| / dt_max)`` where ``dt_max`` keeps
    the per-step tail bound below ``step_tol``; the step grid is fixed by
    ``H`` so the error grows with ``t``.
    """
    if order < 1:
        raise ValueError("Chebyshev order must be >= 1")
    hs = to_dense(h, cap)
    if spectral_range is None:
        center, half = spectral_bounds(h)
    else:
        lo, hi = spectral_range
        center, half = 0.5 * (lo + hi), 0.5 * (hi - lo) * (1 + 1e-12)
    if steps is None:
        dt_max = max_chebyshev_step(half, order, step_tol)
        steps = 1 if not math.isfinite(dt_max) else max(1, math.ceil(abs(t) / dt_max))
    if steps < 1:
        raise ValueError("steps must be >= 1")
    dt = t / steps
    u1 = _chebyshev_step(hs, center, half, dt, order)
    u = np.linalg.matrix_power(u1, steps)
    tail = steps * chebyshev_tail_bound(order, half * abs(dt)) if half else 0.0
    return ChebyshevResult(u, steps, tail)


def evolve_chebyshev(h: OperatorSum, t: float, order: int = DEFAULT_ORDER, **kwargs) -> np.ndarray:
    return chebyshev_propagator(h, t, order, **kwargs).unitary


@dataclass(frozen=True)
class PulsedEvolutionSpec:
    """Pulsed evolution over total engineered time ``total_time``.

    ``standard_time``: ``"matched"`` runs each of the twelve free-evolution
    segments of the standard cycle for ``t / 2`` so its first-order exponent
    equals the efficient cycle's ``-i t (H_S + H_R)``; ``"full"`` runs every
    segment for ``t`` as the operator product is literally written.
    """

    sequence: PulseSequence
    total_time: float
    bch_reps: int = 1
    method: str = "exact"
    order: int = DEFAULT_ORDER
    standard_time: str = "matched"

    def __post_init__(self):
        if self.bch_reps < 1:
            raise ValueError("bch_reps must be >= 1")
        if self.method not in ("exact", "chebyshev"):
            raise ValueError(f"unknown propagator method {self.method!r}")
        if self.standard_time not in ("matched", "full"):
            raise ValueError(f"unknown standard_time {self.standard_time!r}")

    @property
    def scheme(self) -> str:
        return self.sequence.scheme


def segment_hamiltonians(h: OperatorSum, seq: PulseSequence) -> list[OperatorSum]:
    """Free-evolution Hamiltonians of one cycle, in matrix-product order.

    Efficient: ``[H, P H P]``. Standard, per block ``a``:
    ``[H, P1 H P1, P2 H P2, P2 P1 H P1 P2]`` which realises
    ``U_a^(1) U_a^(2)`` with the nested step-2 average.
    """
    out = []
    for _, stages in seq.blocks():
        seg = [h]
        for st in stages:
            seg = seg + [rotated_hamiltonian(x, st.pattern) for x in seg]
        out.extend(seg)
    return out


def segment_time(spec: PulsedEvolutionSpec) -> float:
    tau = spec.total_time / spec.bch_reps
    if spec.scheme == "standard" and spec.standard_time == "matched":
        return tau / 2
    return tau


class PulsedPropagator:
    """Builds ``U_P(t)`` for many ``t`` with the segment Hamiltonians fixed."""

    def __init__(self, h: OperatorSum, seq: PulseSequence, method: str = "exact",
                 order: int = DEFAULT_ORDER, cap: int = DENSE_SITE_CAP):
        self.seq = seq
        self.method = method
        self.order = order
        self.cap = cap
        self.segments = segment_hamiltonians(h, seq)
        if method == "exact":
            self._evolvers = [ExactEvolver(s, cap) for s in self.segments]
        elif method != "chebyshev":
            raise ValueError(f"unknown propagator method {method!r}")

    def cycle(self, tau: float) -> np.ndarray:
        if self.method == "exact":
            mats = [ev(tau) for ev in self._evolvers]
        else:
            mats = [evolve_chebyshev(s, tau, self.order, cap=self.cap) for s in self.segments]
        u = mats[0]
        for m in mats[1:]:
            u = u @ m
        return u

    def __call__(self, spec: PulsedEvolutionSpec) -> np.ndarray:
        return np.linalg.matrix_power(self.cycle(segment_time(spec)), spec.bch_reps)


def pulsed_evolution(spec: PulsedEvolutionSpec, h: OperatorSum, cap: int = DENSE_SITE_CAP) -> np.ndarray:
    """``U_P(t)``: ``n`` repetitions of the pulse cycle at time step ``t / n``.

    Efficient: ``[exp(-i tau H) exp(-i tau H_R)]^n``. Pulses are absorbed
    into conjugated Hamiltonians, so global phases differ from a literal
    pulse product; ``|Tr|`` and spectra are unaffected.
    """
    return PulsedPropagator(h, spec.sequence, spec.method, spec.order, cap)(spec)


def unitarity_defect(u: np.ndarray) -> float:
    """``||U^dagger U - I||_2``."""
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0]), 2))
