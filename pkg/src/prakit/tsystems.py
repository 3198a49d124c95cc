"""T_k-systems: orbits of Aut(F_k) x Aut(G) on generating k-tuples.

Components of the extended graph are already closed under Aut(F_k), since the
Nielsen moves generate it. So a T-system is an Aut(G)-orbit of components, and
the orbit computation runs on component representatives instead of tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .groups import FiniteGroupTable, automorphism_group, min_generators
from .pragraph import GenTuple, component_labels


@dataclass
class TSystemReport:
    group: str
    k: int
    component_count: int
    tsystem_count: int
    orbit_sizes: list[int]
    representatives: list[tuple[int, ...]]
    component_orbit: list[int] = field(repr=False, default_factory=list)


def _weights(n: int, k: int) -> np.ndarray:
    return n ** np.arange(k - 1, -1, -1, dtype=np.int64)


def _unpack(keys: np.ndarray, n: int, k: int) -> np.ndarray:
    out = np.empty((len(keys), k), dtype=np.int64)
    rem = keys.astype(np.int64)
    for pos in range(k - 1, -1, -1):
        out[:, pos] = rem % n
        rem = rem // n
    return out


def aut_generators(G: FiniteGroupTable, autos=None) -> list[np.ndarray]:
    """A small subset of Aut(G) that generates it (greedy, by closure)."""
    autos = automorphism_group(G) if autos is None else autos
    seen = {tuple(autos[0].tolist())}
    gens: list[np.ndarray] = []
    for a in autos:
        if tuple(a.tolist()) in seen:
            continue
        gens.append(a)
        frontier = list(seen)
        # saturate: close the known set under right multiplication by all gens
        while frontier:
            nxt = []
            for s in frontier:
                sv = np.asarray(s)
                for g in gens:
                    c = tuple(g[sv].tolist())
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        if len(seen) == len(autos):
            break
    return gens


def tsystems(G: FiniteGroupTable, k: int, autos=None, labels=None) -> TSystemReport:
    """Exact T_k-system census: Aut(G) acting on the components of X~_k."""
    n = G.order
    if labels is None:
        _, labels = component_labels(G, k, extended=True)
    autos = automorphism_group(G) if autos is None else autos
    roots, counts = np.unique(labels[labels >= 0], return_counts=True)
    C = len(roots)
    if C == 0:
        return TSystemReport(G.label, k, 0, 0, [], [])
    reps = _unpack(roots, n, k)
    w = _weights(n, k)
    src, dst = [], []
    for a in autos:
        img = (a[reps] * w).sum(axis=1)
        tgt = labels[img]
        src.append(np.arange(C))
        dst.append(np.searchsorted(roots, tgt))
    src = np.concatenate(src)
    dst = np.concatenate(dst)
    adj = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(C, C))
    m, orbit = connected_components(adj, directed=False)

    sizes = np.bincount(orbit, weights=counts, minlength=m).astype(np.int64)
    first = np.full(m, -1, dtype=np.int64)
    for c in range(C - 1, -1, -1):  # roots are sorted, so keep the smallest
        first[orbit[c]] = roots[c]
    order = np.lexsort((first, -sizes))
    rank = np.empty(m, dtype=np.int64)
    rank[order] = np.arange(m)
    return TSystemReport(
        G.label, k, C, int(m),
        sizes[order].tolist(),
        [GenTuple.from_key(int(first[o]), k, n).ids for o in order],
        rank[orbit].tolist(),
    )


@dataclass
class MapVerdict:
    group: str
    k: int
    d: int
    component_count: int
    tsystem_count: int
    connected: bool
    well_defined: bool
    surjective: bool
    biconditional_applies: bool
    biconditional_holds: bool | None
    consistent: bool
    notes: list[str] = field(default_factory=list)


def direct_orbit_labels(G: FiniteGroupTable, k: int, autos=None) -> np.ndarray:
    """Orbit labels of Aut(F_k) x Aut(G) on V_k, from one tuple-level census."""
    gens = aut_generators(G, autos)
    perms = np.array(gens, dtype=np.int64).reshape(len(gens), G.order)
    _, labels = component_labels(G, k, extended=True, perms=perms)
    return labels


def check_component_tsystem_map(G: FiniteGroupTable, k: int) -> MapVerdict:
    """Check the components -> T-systems map against a direct orbit census.

    Well defined: every component lands inside a single direct orbit, and the
    component-level orbits coincide with the direct ones. Surjective: every
    direct orbit contains a component. For k >= 2d(G) also check that X~_k is
    connected exactly when there is a single T-system.
    """
    autos = automorphism_group(G)
    _, labels = component_labels(G, k, extended=True)
    rep = tsystems(G, k, autos=autos, labels=labels)
    direct = direct_orbit_labels(G, k, autos)
    notes = []

    on = labels >= 0
    roots = np.unique(labels[on])
    comp_idx = np.searchsorted(roots, labels[on])
    mine = np.asarray(rep.component_orbit, dtype=np.int64)[comp_idx] if len(roots) else comp_idx
    theirs = direct[on]
    # well defined: a component never straddles two direct orbits
    pairs_comp = np.unique(np.stack([comp_idx, theirs]), axis=1) if len(theirs) else np.zeros((2, 0))
    well = pairs_comp.shape[1] == len(roots)
    # the two orbit partitions must agree as partitions
    pairs = np.unique(np.stack([mine, theirs]), axis=1) if len(theirs) else np.zeros((2, 0))
    n_direct = len(np.unique(theirs))
    agree = pairs.shape[1] == n_direct == rep.tsystem_count
    if not well:
        notes.append("a component meets more than one orbit")
    if not agree:
        notes.append("component orbits (%d) disagree with direct orbits (%d)" % (rep.tsystem_count, n_direct))
    surj = len(np.unique(pairs_comp[1])) == n_direct if len(theirs) else True

    d = min_generators(G)
    applies = k >= 2 * d
    connected = rep.component_count == 1
    holds = None
    if applies:
        holds = connected == (rep.tsystem_count == 1)
        if not holds:
            notes.append("k >= 2d but connectivity and single T-system disagree")
    ok = well and agree and surj and rep.tsystem_count <= rep.component_count and holds is not False
    return MapVerdict(G.label, k, d, rep.component_count, rep.tsystem_count, connected,
                      bool(well and agree), bool(surj), applies, holds, bool(ok), notes)
