"""Finite honeycomb patches with typed (x/y/z) links.

Geometry convention (pointy-top hexagons, rows shifted right by half a
hexagon so a patch is a rhombus). Walking clockwise around a hexagon from its
top vertex the sites are labelled 1..6 (0..5 here) and the links are::

    1-2: x   2-3: z   3-4: y   4-5: x   5-6: z   6-1: y

Vertical links are z-links, so horizontally adjacent hexagons share a z-link,
and the external link of every site carries the axis that site has in the
plaquette operator ``Z1 Y2 X3 Z4 Y5 X6``.

Every vertex is the top (``"T"``) or the bottom (``"B"``) vertex of exactly one
hexagon, which gives it a canonical key. Closed patches wrap those keys
modulo ``(rows, cols)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import networkx as nx

LINK_TYPES = ("x", "y", "z")

# (kind, d_row, d_col) of the six vertices of hexagon (r, c), clockwise from the top
_HEX_VERTICES = (
    ("T", 0, 0),
    ("B", -1, 1),
    ("T", 1, 0),
    ("B", 0, 0),
    ("T", 1, -1),
    ("B", -1, 0),
)
# link type of edge k, joining vertex k and vertex k+1
_HEX_LINKS = ("x", "z", "y", "x", "z", "y")


@dataclass(frozen=True)
class Plaquette:
    sites: tuple[int, ...]
    links: tuple[str, ...]  # links[k] joins sites[k] and sites[k+1 mod 6]


@dataclass(frozen=True)
class HoneycombLattice:
    n_sites: int
    bonds: tuple[tuple[int, int, str], ...]
    plaquettes: tuple[Plaquette, ...] = ()
    rows: int = 0
    cols: int = 0
    boundary: str = "open"
    _adj: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        seen = set()
        adj: dict[int, dict[str, int]] = {s: {} for s in range(self.n_sites)}
        for i, j, link in self.bonds:
            if link not in LINK_TYPES:
                raise ValueError(f"bad link type {link!r}")
            if not (0 <= i < self.n_sites and 0 <= j < self.n_sites) or i == j:
                raise ValueError(f"bad bond ({i}, {j})")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"duplicate bond {key}")
            seen.add(key)
            for a, b in ((i, j), (j, i)):
                if link in adj[a]:
                    raise ValueError(f"site {a} has two {link}-links")
                adj[a][link] = b
        object.__setattr__(self, "_adj", adj)

    def neighbors(self, site: int) -> dict[str, int]:
        """Map link type -> neighbouring site."""
        return dict(self._adj[site])

    def degree(self, site: int) -> int:
        return len(self._adj[site])

    def missing_links(self, site: int) -> tuple[str, ...]:
        return tuple(t for t in LINK_TYPES if t not in self._adj[site])

    def bonds_of_type(self, link: str) -> list[tuple[int, int]]:
        return [(i, j) for i, j, t in self.bonds if t == link]

    def bond_census(self) -> dict[str, int]:
        c = Counter(t for _, _, t in self.bonds)
        return {t: c.get(t, 0) for t in LINK_TYPES}

    def link_type(self, i: int, j: int) -> str | None:
        for t, k in self._adj[i].items():
            if k == j:
                return t
        return None

    def z_dimers(self) -> list[tuple[int, int]]:
        return self.bonds_of_type("z")


def _canonical(kind, r, c, rows, cols, closed):
    if closed:
        return (kind, r % rows, c % cols)
    return (kind, r, c)


def build_patch(rows: int, cols: int, boundary: str = "open") -> HoneycombLattice:
    """Patch of ``rows x cols`` hexagons.

    Sites are numbered in order of first appearance, walking hexagons
    row-major and each hexagon clockwise from its top vertex. Open patches
    keep all six sites of every hexagon and omit bonds to absent neighbours.
    Closed patches are tori and need ``rows, cols >= 2`` so no bond repeats.
    """
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    if boundary not in ("open", "closed"):
        raise ValueError(f"boundary must be 'open' or 'closed', got {boundary!r}")
    closed = boundary == "closed"
    if closed and (rows < 2 or cols < 2):
        raise ValueError("closed patches need rows, cols >= 2")

    index: dict[tuple, int] = {}
    bonds: list[tuple[int, int, str]] = []
    seen_bonds: set[tuple[int, int]] = set()
    plaquettes = []
    for r in range(rows):
        for c in range(cols):
            ring = []
            for kind, dr, dc in _HEX_VERTICES:
                key = _canonical(kind, r + dr, c + dc, rows, cols, closed)
                if key not in index:
                    index[key] = len(index)
                ring.append(index[key])
            for k, link in enumerate(_HEX_LINKS):
                i, j = ring[k], ring[(k + 1) % 6]
                key = (min(i, j), max(i, j))
                if key not in seen_bonds:
                    seen_bonds.add(key)
                    bonds.append((key[0], key[1], link))
            # start at the lower-indexed of the two sites with an external z-link
            if ring[3] < ring[0]:
                ring = ring[3:] + ring[:3]
            plaquettes.append(Plaquette(tuple(ring), _HEX_LINKS))
    return HoneycombLattice(len(index), tuple(bonds), tuple(plaquettes), rows, cols, boundary)


def plaquette_sites(lattice: HoneycombLattice, p: int) -> tuple[int, ...]:
    """Ordered sites of plaquette ``p``, clockwise.

    The start is the lowest-indexed site whose external link is a z-link (the
    top or bottom vertex); either choice gives link sequence ``x z y x z y``
    and the 1..6 labels used by ``Z1 Y2 X3 Z4 Y5 X6``.
    """
    if not 0 <= p < len(lattice.plaquettes):
        raise IndexError(f"plaquette {p} out of range (have {len(lattice.plaquettes)})")
    return lattice.plaquettes[p].sites


def external_axes(plaquette: Plaquette) -> tuple[str, ...]:
    """For each plaquette site, the link type not used by the plaquette there."""
    out = []
    for k in range(6):
        inner = {plaquette.links[k - 1], plaquette.links[k]}
        out.append((set(LINK_TYPES) - inner).pop())
    return tuple(out)


def contract_links(lattice: HoneycombLattice, link: str) -> tuple[dict[int, int], list[tuple[int, int]]]:
    """Contract every ``link``-type bond.

    Returns the site -> cluster map and the edge list of the contracted graph.
    A bond joining two sites of one cluster survives as a self-loop.
    """
    parent = list(range(lattice.n_sites))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in lattice.bonds_of_type(link):
        parent[find(i)] = find(j)
    cluster = {s: find(s) for s in range(lattice.n_sites)}
    edges = [(cluster[i], cluster[j]) for i, j, t in lattice.bonds if t != link]
    return cluster, edges


def is_bipartite(nodes, edges) -> bool:
    """Two-colourability of the graph; a self-loop makes it non-bipartite."""
    g = nx.MultiGraph()
    g.add_nodes_from(nodes)
    g.add_edges_from(edges)
    return nx.is_bipartite(g)
