"""Pulse patterns that turn the Heisenberg Hamiltonian into the Kitaev one.

Averaging ``H`` with its pulse-conjugated copy keeps a bond term
``sigma^b_i sigma^b_j`` iff the two pulse signs on that bond multiply to +1.
For an ``a``-link the admissible axis pairs are therefore ``{none, a}`` and
the two axes other than ``a`` -- every other pair leaves a wrong component
behind. Patterns are found by constraint propagation plus backtracking, and
every construction is checked by exact symbolic comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import DimensionError, SynthesisError
from .lattice import LINK_TYPES, HoneycombLattice
from .pauli import PULSE_AXES, OperatorSum, PulsePattern, conjugate_by_pulse, normalize

Bond = tuple[int, int, str]
Pair = tuple[str | None, str | None]

__all__ = [
    "PulsePattern",
    "Stage",
    "PulseSequence",
    "VerificationReport",
    "efficient_constraints",
    "ising_constraints",
    "selection_constraints",
    "solve_pattern",
    "efficient_pattern",
    "efficient_sequence",
    "standard_sequence",
    "rotated_hamiltonian",
    "averaged_hamiltonian",
    "verify_target",
    "link_report",
]


def _others(axis: str) -> tuple[str, str]:
    b, c = (t for t in LINK_TYPES if t != axis)
    return b, c


def _symmetric(pairs: Iterable[Pair]) -> frozenset[Pair]:
    out = set()
    for a, b in pairs:
        out.add((a, b))
        out.add((b, a))
    return frozenset(out)


def keep_only(axis: str) -> frozenset[Pair]:
    """Axis pairs on a bond that keep ``axis`` and cancel the other two."""
    b, c = _others(axis)
    return _symmetric([(None, axis), (b, c)])


def _flips(pulse: str | None, axis: str) -> bool:
    return pulse is not None and pulse != axis


def efficient_constraints(lattice: HoneycombLattice) -> dict[Bond, frozenset[Pair]]:
    """One-step rule: each ``a``-link keeps only its own ``a a`` term."""
    return {bond: keep_only(bond[2]) for bond in lattice.bonds}


def ising_constraints(lattice: HoneycombLattice, axis: str) -> dict[Bond, frozenset[Pair]]:
    """First standard step: keep ``axis axis`` on every bond, whatever its type."""
    return {bond: keep_only(axis) for bond in lattice.bonds}


def selection_constraints(lattice: HoneycombLattice, axis: str) -> dict[Bond, frozenset[Pair]]:
    """Second standard step: keep the ``axis``-Ising term only on ``axis``-links.

    A pulse flips ``sigma^axis`` iff it is about one of the other two axes, so
    the endpoints of ``axis``-links must agree on flipping and the endpoints
    of all other links must disagree.
    """
    out = {}
    for bond in lattice.bonds:
        same = bond[2] == axis
        out[bond] = frozenset(
            (p, q) for p in PULSE_AXES for q in PULSE_AXES
            if (_flips(p, axis) == _flips(q, axis)) == same
        )
    return out


def solve_pattern(
    lattice: HoneycombLattice | int,
    link_constraints: Mapping[Bond, Iterable[Pair]],
    preference: Callable[[int], Iterable[str | None]] | None = None,
) -> PulsePattern:
    """Find a per-site axis assignment meeting every bond's admissible pairs.

    Sites are assigned in index order; candidate axes are tried in the order
    given by ``preference(site)`` (default ``none, x, y, z``). Arc consistency
    is maintained after every assignment, so the search is deterministic and
    odd-cycle conflicts are caught early.

    Raises:
        SynthesisError: no assignment exists. ``certificate`` lists the bonds
            whose constraints emptied a site's candidate set.
    """
    n = lattice if isinstance(lattice, int) else lattice.n_sites
    constraints = {bond: frozenset(pairs) for bond, pairs in link_constraints.items()}
    empty = [bond for bond, pairs in constraints.items() if not pairs]
    if empty:
        raise SynthesisError(f"{len(empty)} link(s) admit no axis pair", empty)

    arcs: dict[int, list[tuple[int, Bond, frozenset[Pair]]]] = {s: [] for s in range(n)}
    for bond, pairs in constraints.items():
        i, j, _ = bond
        if not (0 <= i < n and 0 <= j < n):
            raise DimensionError(f"constraint on bond {bond} outside {n} sites")
        arcs[i].append((j, bond, pairs))
        arcs[j].append((i, bond, frozenset((b, a) for a, b in pairs)))

    order = preference or (lambda site: PULSE_AXES)
    domains = [[a for a in order(s) if a in PULSE_AXES] for s in range(n)]
    conflicts: list[Bond] = []

    def propagate(doms, queue):
        # AC-3; queue holds sites whose domain changed
        while queue:
            s = queue.pop()
            for t, bond, pairs in arcs[s]:
                # pairs are oriented (axis_s, axis_t)
                keep = [b for b in doms[t] if any((a, b) in pairs for a in doms[s])]
                if len(keep) != len(doms[t]):
                    doms[t] = keep
                    if not keep:
                        conflicts.append(bond)
                        return False
                    queue.append(t)
        return True

    def search(doms, site):
        if site == n:
            return doms
        for axis in doms[site]:
            trial = [list(d) for d in doms]
            trial[site] = [axis]
            if propagate(trial, [site]):
                found = search(trial, site + 1)
                if found is not None:
                    return found
        return None

    if not propagate(domains, list(range(n))):
        raise SynthesisError("link constraints are inconsistent", sorted(set(conflicts)))
    solved = search(domains, 0)
    if solved is None:
        raise SynthesisError("no pulse assignment satisfies the link constraints",
                             sorted(set(conflicts)))
    return PulsePattern(tuple(d[0] for d in solved))


def efficient_pattern(lattice: HoneycombLattice) -> PulsePattern:
    """One-step pattern.

    Each site first tries the axis of its missing (external) link, which on
    a full hexagon gives the all-pulsed ``{b, c}`` arrangement on every link;
    sites with all three links fall back to ``none, x, y, z``.
    """

    def preference(site):
        first = list(lattice.missing_links(site))
        return first + [a for a in PULSE_AXES if a not in first]

    return solve_pattern(lattice, efficient_constraints(lattice), preference)


@dataclass(frozen=True)
class Stage:
    pattern: PulsePattern
    label: str
    block: str


@dataclass(frozen=True)
class PulseSequence:
    """Ordered pulse stages.

    Stages sharing a ``block`` are nested averages (step 2 acts on the output
    of step 1); different blocks are summed.
    """

    stages: tuple[Stage, ...]

    def __post_init__(self):
        if not self.stages:
            raise ValueError("a pulse sequence needs at least one stage")

    @property
    def scheme(self) -> str:
        return "efficient" if len(self.stages) == 1 else "standard"

    def blocks(self) -> list[tuple[str, list[Stage]]]:
        out: dict[str, list[Stage]] = {}
        for st in self.stages:
            out.setdefault(st.block, []).append(st)
        return list(out.items())


def efficient_sequence(lattice: HoneycombLattice, pattern: PulsePattern | None = None) -> PulseSequence:
    pattern = efficient_pattern(lattice) if pattern is None else pattern
    return PulseSequence((Stage(pattern, "efficient", "efficient"),))


def standard_sequence(lattice: HoneycombLattice) -> PulseSequence:
    """Six stages ``step1-a, step2-a`` for ``a`` in x, y, z.

    ``step1-a`` rotates one sublattice about ``a`` (all bonds become
    ``a``-Ising); ``step2-a`` 2-colours the graph obtained by contracting
    ``a``-links so the Ising term survives on ``a``-links only.
    """
    stages = []
    for axis in LINK_TYPES:
        p1 = solve_pattern(lattice, ising_constraints(lattice, axis))
        p2 = solve_pattern(lattice, selection_constraints(lattice, axis))
        stages.append(Stage(p1, f"step1-{axis}", axis))
        stages.append(Stage(p2, f"step2-{axis}", axis))
    return PulseSequence(tuple(stages))


def rotated_hamiltonian(h: OperatorSum, pattern: PulsePattern) -> OperatorSum:
    """``P^dagger H P`` term by term."""
    if pattern.n_sites != h.n_sites:
        raise DimensionError(f"pattern on {pattern.n_sites} sites, operator on {h.n_sites}")
    return OperatorSum(h.n_sites, [conjugate_by_pulse(t, pattern) for t in h.terms], h.eps)


def averaged_hamiltonian(h: OperatorSum, seq: PulseSequence) -> OperatorSum:
    total = OperatorSum.zero(h.n_sites)
    for _, stages in seq.blocks():
        part = h
        for st in stages:
            part = (part + rotated_hamiltonian(part, st.pattern)) / 2
        total = total + part
    return total


@dataclass(frozen=True)
class VerificationReport:
    equal: bool
    averaged: OperatorSum
    residual: OperatorSum

    def __bool__(self):
        return self.equal


def verify_target(h_s: OperatorSum, seq: PulseSequence, target: OperatorSum) -> VerificationReport:
    """Compare the stage-averaged Hamiltonian with ``target`` exactly."""
    averaged = averaged_hamiltonian(h_s, seq)
    residual = normalize(averaged - target)
    return VerificationReport(len(residual.terms) == 0, averaged, residual)


def link_report(lattice: HoneycombLattice, residual: OperatorSum) -> list[tuple[Bond, bool]]:
    """Per-bond status: ``False`` if a residual term lives on that bond or its sites."""
    bad_sites: set[int] = set()
    bad_pairs: set[tuple[int, int]] = set()
    for t in normalize(residual).terms:
        sites = t.sites
        if len(sites) == 2:
            bad_pairs.add((sites[0], sites[1]))
        else:
            bad_sites.update(sites)
    out = []
    for bond in lattice.bonds:
        i, j, _ = bond
        ok = (min(i, j), max(i, j)) not in bad_pairs and i not in bad_sites and j not in bad_sites
        out.append((bond, ok))
    return out
