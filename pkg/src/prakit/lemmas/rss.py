"""Regular semisimple elements in cosets of 2x2 matrix groups."""

from __future__ import annotations

from ..groups import FiniteGroupTable, centralizer, is_regular_semisimple


def find_rss_in_coset(G: FiniteGroupTable, x: int, D) -> int | None:
    """First x*d (d in D, increasing id order) that is regular semisimple."""
    if not G.is_matrix_group:
        raise TypeError("%s is not a 2x2 matrix group" % G.label)
    for d in sorted(set(int(v) for v in D)):
        y = G.mul(x, d)
        if is_regular_semisimple(G, y):
            return y
    return None


def rss_centralizer_orders(G: FiniteGroupTable) -> dict[int, int]:
    """Centralizer order of every regular semisimple element, keyed by id."""
    return {g: len(centralizer(G, g)) for g in range(G.order) if is_regular_semisimple(G, g)}
