"""Gaschütz-type exponents in finite abelian groups.

Given a, b_1..b_n in K with <a, b_1..b_n> = L and d(L) <= n, find m_i such that
the elements m_i a + b_i still generate L. Work prime by prime in L/pL (a
vector space over F_p), glue the residues by CRT, and lift through the
Frattini quotient: a set generates L as soon as it generates L/Phi(L).
"""

from __future__ import annotations

import itertools

from ..errors import SpecError
from ..finfield import make_field, prime_factors
from ..groups import AbelianGroup
from .linalg import kernel, rank


def multiple(K: AbelianGroup, m: int, L) -> frozenset:
    return frozenset(K.scale(m, x) for x in L)


def frattini(K: AbelianGroup, L=None) -> frozenset:
    """Phi(L) = intersection of pL over the primes p dividing |L| (L defaults to K)."""
    L = frozenset(K.elements()) if L is None else frozenset(L)
    out = L
    for p in prime_factors(len(L)):
        out &= multiple(K, p, L)
    return out


class _Quotient:
    """Coordinates on L/pL with respect to a basis picked from ``gens``."""

    def __init__(self, K: AbelianGroup, L: frozenset, p: int, gens):
        self.p = p
        pL = multiple(K, p, L)
        basis, span = [], set(pL)
        for g in gens:
            if g not in span:
                basis.append(g)
                # span grows from |pL| p^r to |pL| p^(r+1)
                span = {K.add(x, K.scale(c, g)) for x in span for c in range(p)}
        self.dim = len(basis)
        self.coords = {}
        for cs in itertools.product(range(p), repeat=self.dim):
            base = K.zero
            for c, b in zip(cs, basis):
                base = K.add(base, K.scale(c, b))
            for y in pL:
                self.coords[K.add(base, y)] = list(cs)

    def __call__(self, x):
        return self.coords[x]


def _residues(K, L, p, a, bs) -> list[int]:
    """Exponents mod p making the images of m_i a + b_i span L/pL."""
    n = len(bs)
    Q = _Quotient(K, L, p, [a] + list(bs))
    if Q.dim > n:
        raise SpecError("L/%dL has dimension %d > n = %d; no exponents exist" % (p, Q.dim, n))
    F = make_field(p)
    B = [Q(b) for b in bs]
    if rank(F, B) == Q.dim:
        return [0] * n  # the b_i already span
    # dim span(b) = dim - 1 < n, so the b_i satisfy a relation sum c_i b_i = 0
    cols = [[B[i][r] for i in range(n)] for r in range(Q.dim)]
    rel = kernel(F, cols, n)[0] if cols else [1] * n
    j = max(i for i in range(n) if rel[i])
    # with b_j -> a + b_j the relation yields c_j a, hence a, hence b_j
    return [1 if i == j else 0 for i in range(n)]


def _crt(residues: dict[int, int]) -> int:
    m, mod = 0, 1
    for p, r in residues.items():
        # solve m + mod*t = r (mod p)
        t = ((r - m) * pow(mod, -1, p)) % p
        m += mod * t
        mod *= p
    return m


def gaschuetz_exponents(K: AbelianGroup, a, bs) -> list[int]:
    """Integers m_i with <m_1 a + b_1, ..., m_n a + b_n> = <a, b_1, ..., b_n>."""
    a = K.element(a)
    bs = [K.element(b) for b in bs]
    if not bs:
        raise SpecError("need at least one b")
    L = K.subgroup([a] + bs)
    primes = prime_factors(len(L))
    per_prime = [_residues(K, L, p, a, bs) for p in primes]
    ms = [_crt({p: r[i] for p, r in zip(primes, per_prime)}) for i in range(len(bs))]
    ms = [m % K.exponent for m in ms]
    got = K.subgroup([K.add(K.scale(m, a), b) for m, b in zip(ms, bs)])
    if got != L:
        raise AssertionError("exponents %r fail to generate" % (ms,))  # pragma: no cover
    return ms


def verify_exponents(K: AbelianGroup, a, bs, ms) -> bool:
    a = K.element(a)
    bs = [K.element(b) for b in bs]
    return K.subgroup([K.add(K.scale(m, a), b) for m, b in zip(ms, bs)]) == K.subgroup([a] + bs)
