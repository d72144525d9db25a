"""Text formats: lattice/pulse files, Hamiltonian dumps, CSV/JSON outputs.

Lattice file (line oriented, ``#`` starts a comment)::

    sites 6
    bond 0 1 x
    plaquette 0 1 2 3 4 5 links x z y x z y
    pulse 0 z            # optional; omitted sites are unpulsed ("none")

Hamiltonian dump, one term per line: real part, imaginary part, then
``site:axis`` factors (nothing for the identity)::

    # n_sites 6
    0.29999999999999999 0 0:X 1:X
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass
from pathlib import Path

from .lattice import HoneycombLattice, Plaquette
from .pauli import OperatorSum, PauliString, PulsePattern, normalize


@dataclass(frozen=True)
class LatticeFile:
    lattice: HoneycombLattice
    pattern: PulsePattern | None = None


def dump_lattice(lattice: HoneycombLattice, pattern: PulsePattern | None = None) -> str:
    lines = [
        f"# honeycomb patch rows={lattice.rows} cols={lattice.cols} boundary={lattice.boundary}",
        f"sites {lattice.n_sites}",
    ]
    lines += [f"bond {i} {j} {t}" for i, j, t in lattice.bonds]
    for p in lattice.plaquettes:
        lines.append("plaquette " + " ".join(map(str, p.sites)) + " links " + " ".join(p.links))
    if pattern is not None:
        lines += [f"pulse {s} {a or 'none'}" for s, a in enumerate(pattern.axes)]
    return "\n".join(lines) + "\n"


def parse_lattice(text: str) -> LatticeFile:
    n_sites = None
    bonds, plaquettes, pulses = [], [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head == "sites":
                n_sites = int(rest[0])
            elif head == "bond":
                bonds.append((int(rest[0]), int(rest[1]), rest[2]))
            elif head == "plaquette":
                k = rest.index("links")
                plaquettes.append(Plaquette(tuple(map(int, rest[:k])), tuple(rest[k + 1 :])))
            elif head == "pulse":
                pulses[int(rest[0])] = None if rest[1] == "none" else rest[1]
            else:
                raise ValueError(f"unknown record {head!r}")
        except (IndexError, ValueError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    if n_sites is None:
        raise ValueError("missing 'sites' record")
    lattice = HoneycombLattice(n_sites, tuple(bonds), tuple(plaquettes))
    pattern = PulsePattern.from_dict(n_sites, pulses) if pulses else None
    return LatticeFile(lattice, pattern)


def read_lattice(path) -> LatticeFile:
    return parse_lattice(Path(path).read_text())


def dump_hamiltonian(op: OperatorSum) -> str:
    lines = [f"# n_sites {op.n_sites}"]
    for t in normalize(op).terms:
        factors = " ".join(f"{s}:{a}" for s, a in t.axes)
        lines.append(f"{t.coeff.real!r} {t.coeff.imag!r} {factors}".rstrip())
    return "\n".join(lines) + "\n"


def parse_hamiltonian(text: str) -> OperatorSum:
    n_sites = None
    terms = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("# n_sites"):
            n_sites = int(line.split()[2])
            continue
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        re_, im, *factors = line.split()
        axes = tuple((int(f.split(":")[0]), f.split(":")[1]) for f in factors)
        terms.append((complex(float(re_), float(im)), axes))
    if n_sites is None:
        raise ValueError("missing '# n_sites' header")
    return normalize(OperatorSum(n_sites, [PauliString(n_sites, ax, c) for c, ax in terms]))


def _fmt(x) -> str:
    return repr(float(x))


def fidelity_csv(curves) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "F", "scheme", "n", "case"])
    for c in curves:
        for t, f in zip(c.times, c.values):
            w.writerow([_fmt(t), _fmt(f), c.scheme, c.n, c.case])
    return buf.getvalue()


def spectrum_csv(curve) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    dim = curve.eigenvalues.shape[1]
    w.writerow(["t"] + [f"eig_{k}" for k in range(dim)] + ["gap", "gap_flipped"])
    for t, row, g, gf in zip(curve.times, curve.eigenvalues, curve.gaps, curve.gaps_flipped):
        w.writerow([_fmt(t)] + [_fmt(e) for e in row] + [_fmt(g), _fmt(gf)])
    return buf.getvalue()


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def sha256_file(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
