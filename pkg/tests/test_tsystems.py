import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prakit.groups import automorphism_group, build_group
from prakit.pragraph import all_moves, apply_move, components
from prakit.tsystems import aut_generators, check_component_tsystem_map, direct_orbit_labels, tsystems

from .oracles import bfs_components


def brute_tsystem_count(G, k):
    """Orbits of moves x automorphisms, by merging oracle components under Aut."""
    comps = bfs_components(G.table.tolist(), G.inv.tolist(), k, extended=True)
    where = {t: i for i, c in enumerate(comps) for t in c}
    parent = list(range(len(comps)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for phi in automorphism_group(G):
        for i, c in enumerate(comps):
            t = min(c)
            j = where[tuple(int(phi[g]) for g in t)]
            a, b = find(i), find(j)
            if a != b:
                parent[a] = b
    return len({find(i) for i in range(len(comps))})


@pytest.mark.parametrize("spec,k,comps,tsys", [
    ("ab:5", 1, 2, 1),
    ("ab:5,5", 2, 2, 1),
    ("psl2:5", 3, 1, 1),
    ("ab:1", 1, 1, 1),
    ("alt:5", 2, 3, 2),
])
def test_tsystem_examples(spec, k, comps, tsys):
    r = tsystems(build_group(spec), k)
    assert (r.component_count, r.tsystem_count) == (comps, tsys)


def test_ab5_single_orbit_of_four():
    r = tsystems(build_group("ab:5"), 1)
    assert r.orbit_sizes == [4]


@pytest.mark.parametrize("spec,k", [("sym:3", 2), ("sym:3", 3), ("alt:4", 2), ("ab:5,5", 2), ("alt:5", 2),
                                    ("ab:6", 2), ("ab:2,2", 2)])
def test_tsystem_count_matches_oracle(spec, k):
    G = build_group(spec)
    r = tsystems(G, k)
    assert r.tsystem_count == brute_tsystem_count(G, k)
    assert r.tsystem_count <= r.component_count
    assert sum(r.orbit_sizes) == components(G, k).vertex_count


@pytest.mark.parametrize("spec,k", [("sym:3", 4), ("ab:5,5", 2), ("ab:1", 1), ("alt:4", 3), ("alt:5", 2)])
def test_map_verdicts(spec, k):
    v = check_component_tsystem_map(build_group(spec), k)
    assert v.consistent and v.well_defined and v.surjective


def test_sym3_k4_biconditional():
    v = check_component_tsystem_map(build_group("sym:3"), 4)
    assert v.connected and v.tsystem_count == 1
    assert v.biconditional_applies and v.biconditional_holds


def test_ab55_k2_no_biconditional_claim():
    v = check_component_tsystem_map(build_group("ab:5,5"), 2)
    assert (v.component_count, v.tsystem_count) == (2, 1)
    assert not v.biconditional_applies and v.biconditional_holds is None


def test_aut_generators_generate():
    G = build_group("alt:5")
    autos = automorphism_group(G)
    gens = aut_generators(G, autos)
    assert 1 <= len(gens) <= 4
    labels = direct_orbit_labels(G, 2, autos)
    assert len(np.unique(labels[labels >= 0])) == 2


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 119), st.lists(st.integers(0, 59), min_size=3, max_size=3),
       st.sampled_from(all_moves(3)))
def test_automorphisms_commute_with_moves(ai, ids, m):
    G = build_group("alt:5")
    phi = automorphism_group(G)[ai]
    t = tuple(ids)
    lhs = tuple(int(phi[g]) for g in apply_move(G, t, m))
    rhs = apply_move(G, tuple(int(phi[g]) for g in t), m)
    assert lhs == rhs


def test_automorphisms_commute_exhaustively_small():
    G = build_group("sym:3")
    moves = all_moves(2)
    for phi in automorphism_group(G):
        for a in range(6):
            for b in range(6):
                for m in moves:
                    lhs = tuple(int(phi[g]) for g in apply_move(G, (a, b), m))
                    assert lhs == apply_move(G, (int(phi[a]), int(phi[b])), m)
