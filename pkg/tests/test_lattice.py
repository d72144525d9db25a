import pytest
from hypothesis import given
from hypothesis import strategies as st

from kitaevdyn.lattice import (
    HoneycombLattice,
    build_patch,
    contract_links,
    external_axes,
    is_bipartite,
    plaquette_sites,
)


@pytest.mark.parametrize(
    "rows,cols,boundary,sites,bonds,plaqs,euler",
    [
        (1, 1, "open", 6, 6, 1, 2),
        (1, 2, "open", 10, 11, 2, 2),
        (2, 2, "open", 16, 19, 4, 2),
        (2, 2, "closed", 8, 12, 4, 0),
        (3, 3, "closed", 18, 27, 9, 0),
    ],
)
def test_counts_and_euler(rows, cols, boundary, sites, bonds, plaqs, euler):
    lat = build_patch(rows, cols, boundary)
    assert (lat.n_sites, len(lat.bonds), len(lat.plaquettes)) == (sites, bonds, plaqs)
    outer = 1 if boundary == "open" else 0
    assert lat.n_sites - len(lat.bonds) + len(lat.plaquettes) + outer == euler


def test_two_hexagon_census_fixture(two_hexagons):
    # hand enumeration: hexagon A has x 0-1, 3-4; z 1-2, 4-5; y 2-3, 0-5;
    # hexagon B adds x 6-7, 2-9; z 7-8; y 8-9, 1-6 and shares z 1-2
    assert two_hexagons.bond_census() == {"x": 4, "y": 4, "z": 3}
    assert set(two_hexagons.plaquettes[0].sites) & set(two_hexagons.plaquettes[1].sites) == {1, 2}
    assert two_hexagons.link_type(1, 2) == "z"


def test_single_hexagon_labels(hexagon):
    assert plaquette_sites(hexagon, 0) == (0, 1, 2, 3, 4, 5)
    assert hexagon.plaquettes[0].links == ("x", "z", "y", "x", "z", "y")
    assert external_axes(hexagon.plaquettes[0]) == ("z", "y", "x", "z", "y", "x")


@pytest.mark.parametrize("shape", [(1, 1, "open"), (2, 3, "open"), (2, 2, "closed"), (3, 4, "closed")])
def test_plaquette_cycles(shape):
    lat = build_patch(*shape)
    for plaq in lat.plaquettes:
        sites = plaq.sites
        assert len(set(sites)) == 6
        for k in range(6):
            assert lat.link_type(sites[k], sites[(k + 1) % 6]) == plaq.links[k]
        # start: lowest-indexed site whose external link is z
        ext_z = [s for s, a in zip(sites, external_axes(plaq)) if a == "z"]
        assert sites[0] == min(ext_z)


@given(st.integers(2, 4), st.integers(2, 4))
def test_closed_patch_is_three_regular(rows, cols):
    lat = build_patch(rows, cols, "closed")
    assert all(lat.degree(s) == 3 for s in range(lat.n_sites))
    assert lat.bond_census() == {t: rows * cols for t in "xyz"}


@given(st.integers(1, 4), st.integers(1, 4))
def test_open_patch_one_link_per_type(rows, cols):
    lat = build_patch(rows, cols)
    for s in range(lat.n_sites):
        kinds = list(lat.neighbors(s))
        assert len(kinds) == len(set(kinds)) == lat.degree(s)
        assert set(lat.missing_links(s)) | set(kinds) == {"x", "y", "z"}


@pytest.mark.parametrize("shape,expected", [((2, 2), True), ((2, 4), True), ((3, 3), False)])
def test_contracted_graph_bipartite(shape, expected):
    lat = build_patch(*shape, "closed")
    cluster, edges = contract_links(lat, "x")
    assert is_bipartite(set(cluster.values()), edges) is expected


def test_contraction_keeps_self_loops():
    lat = HoneycombLattice(3, ((0, 1, "x"), (1, 2, "y"), (0, 2, "z")))
    cluster, edges = contract_links(lat, "x")
    assert cluster[0] == cluster[1]
    assert (cluster[1], cluster[2]) in edges
    assert is_bipartite([0], [(0, 0)]) is False


def test_validation():
    with pytest.raises(ValueError):
        build_patch(0, 1)
    with pytest.raises(ValueError):
        build_patch(1, 2, "closed")
    with pytest.raises(ValueError):
        build_patch(1, 1, "twisted")
    with pytest.raises(ValueError):
        HoneycombLattice(3, ((0, 1, "x"), (1, 2, "x")))
    with pytest.raises(ValueError):
        HoneycombLattice(2, ((0, 1, "x"), (1, 0, "y")))
    with pytest.raises(ValueError):
        HoneycombLattice(2, ((0, 1, "w"),))
    with pytest.raises(IndexError):
        plaquette_sites(build_patch(1, 1), 1)
