"""Concrete finite groups as materialized tables.

Group specs (exact grammar)::

    psl2:<q> | sl2:<q> | pgl2:<q> | sym:<n> | alt:<n> | ab:<d1>,<d2>,...

Every group is a :class:`FiniteGroupTable` whose elements carry integer ids.
The identity is always id 0; the remaining elements follow in increasing
descriptor order. Descriptors are

* permutations: image tuples on ``0..n-1``; products are left-to-right,
  ``(a*b)(x) = b(a(x))``;
* abelian groups: residue vectors;
* 2x2 matrix groups: ``(a, b, c, d)`` raw field ints, canonicalized. For
  ``psl2`` the representative is the smaller of M, -M (flattened entries
  compared as raw ints); for ``pgl2`` the first nonzero entry is scaled to 1.
"""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import CapExceeded, SpecError
from .finfield import FieldCtx, FieldElement, field_of_order

MAX_ORDER = 10**6
TABLE_LIMIT = 10**4
AUT_LIMIT = 2000

_SPEC_RE = re.compile(r"^(psl2|sl2|pgl2|sym|alt):(\d+)$|^ab:(\d+(?:,\d+)*)$")


@dataclass(frozen=True)
class Mat2:
    a: FieldElement
    b: FieldElement
    c: FieldElement
    d: FieldElement

    @classmethod
    def from_raw(cls, F: FieldCtx, raw) -> Mat2:
        return cls(*(FieldElement(F, v) for v in raw))

    @property
    def raw(self) -> tuple[int, int, int, int]:
        return (self.a.value, self.b.value, self.c.value, self.d.value)

    def det(self) -> FieldElement:
        return self.a * self.d - self.b * self.c

    def trace(self) -> FieldElement:
        return self.a + self.d

    def __mul__(self, o: Mat2) -> Mat2:
        return Mat2(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                    self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)


@dataclass(frozen=True)
class AbelianGroup:
    """Z/d1 x ... x Z/dm with d1 | d2 | ... | dm, written additively."""

    factors: tuple[int, ...]

    def __post_init__(self):
        if not self.factors or any(d < 1 for d in self.factors):
            raise SpecError("invariant factors must be positive")
        for x, y in zip(self.factors, self.factors[1:]):
            if y % x:
                raise SpecError("invariant factors must form a divisibility chain: %r" % (self.factors,))

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.factors if d > 1)

    @property
    def exponent(self) -> int:
        return self.factors[-1]

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.factors)

    def element(self, v) -> tuple[int, ...]:
        v = tuple(int(x) for x in v)
        if len(v) != len(self.factors):
            raise SpecError("expected a vector of length %d" % len(self.factors))
        return tuple(x % d for x, d in zip(v, self.factors))

    def elements(self):
        return itertools.product(*(range(d) for d in self.factors))

    def add(self, u, v):
        return tuple((x + y) % d for x, y, d in zip(u, v, self.factors))

    def neg(self, u):
        return tuple(-x % d for x, d in zip(u, self.factors))

    def scale(self, m: int, u):
        return tuple(m * x % d for x, d in zip(u, self.factors))

    def subgroup(self, gens) -> frozenset:
        """The subgroup generated by ``gens``, as a frozenset of vectors."""
        seen = {self.zero}
        frontier = [self.zero]
        gens = [tuple(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.add(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def spec(self) -> str:
        return "ab:" + ",".join(map(str, self.factors))


class FiniteGroupTable:
    """A fully enumerated finite group with integer element ids."""

    def __init__(self, label, kind, elements, inv, table=None, product=None,
                 field=None, abelian=None, degree=None):
        self.label = label
        self.kind = kind
        self.elements = elements
        self.index = {d: i for i, d in enumerate(elements)}
        self.identity = 0
        self.inv = inv
        self.table = table
        self.field = field
        self.abelian = abelian
        self.degree = degree
        self._product = product
        self._memo: dict[tuple[int, int], int] = {}
        self.mt = table.tolist() if table is not None else None
        self.invl = inv.tolist()

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return "<FiniteGroupTable %s order=%d>" % (self.label, self.order)

    def mul(self, a: int, b: int) -> int:
        if self.mt is not None:
            return self.mt[a][b]
        key = (a, b)
        r = self._memo.get(key)
        if r is None:
            r = self.index[self._product(self.elements[a], self.elements[b])]
            self._memo[key] = r
        return r

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.invl[a], -n
        r = self.identity
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    @property
    def is_matrix_group(self) -> bool:
        return self.kind in ("psl2", "sl2", "pgl2")

    def matrix(self, g: int) -> Mat2:
        if not self.is_matrix_group:
            raise TypeError("%s is not a matrix group" % self.label)
        return Mat2.from_raw(self.field, self.elements[g])

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        if self.table is None:
            for g in range(n):
                x, k = g, 1
                while x != self.identity:
                    x, k = self.mul(x, g), k + 1
                orders[g] = k
            return orders
        ar = np.arange(n)
        cur = ar.copy()
        step = 1
        while (orders == 0).any():
            hit = (cur == self.identity) & (orders == 0)
            orders[hit] = step
            cur = self.table[cur, ar]
            step += 1
        return orders

    @cached_property
    def class_sizes(self) -> np.ndarray:
        """Conjugacy class size of every element."""
        n = self.order
        if self.table is None:
            raise CapExceeded("conjugacy classes need a materialized table")
        ar = np.arange(n)
        sizes = np.zeros(n, dtype=np.int64)
        inv = self.inv
        for g in range(n):
            if sizes[g]:
                continue
            cls = np.unique(self.table[self.table[inv, g], ar])
            sizes[cls] = len(cls)
        return sizes

    @cached_property
    def lattice(self) -> SubgroupLattice:
        return SubgroupLattice(self)

    # -- element literals ----------------------------------------------------

    def format_element(self, g: int) -> str:
        d = self.elements[g]
        if self.kind in ("sym", "alt"):
            return _format_cycles(d)
        if self.kind == "ab":
            return "(" + ",".join(map(str, d)) + ")"
        return "[[%d,%d],[%d,%d]]" % d

    def parse_element(self, text: str) -> int:
        s = text.strip()
        if s in ("e", "id"):
            return self.identity
        try:
            if self.kind in ("sym", "alt"):
                if s == "1":
                    return self.identity
                desc = _parse_cycles(s, self.degree)
            elif self.kind == "ab":
                body = s[1:-1] if s.startswith("(") and s.endswith(")") else s
                desc = self.abelian.element(int(x) for x in body.split(","))
            else:
                if s == "1":
                    return self.identity
                nums = [int(x) for x in re.findall(r"-?\d+", s)]
                if len(nums) != 4:
                    raise SpecError("a 2x2 matrix needs 4 entries: %r" % text)
                desc = _canonical_matrix(self.kind, self.field, [self.field(x).value for x in nums])
        except (ValueError, TypeError) as exc:
            raise SpecError("cannot parse element %r of %s: %s" % (text, self.label, exc)) from None
        if desc not in self.index:
            raise SpecError("%r is not an element of %s" % (text, self.label))
        return self.index[desc]


def _format_cycles(perm) -> str:
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [i], perm[i]
        seen.add(i)
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        out.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(out) or "()"


def _parse_cycles(s: str, n: int) -> tuple[int, ...]:
    if not re.fullmatch(r"(\(\s*(\d+(\s+\d+)*)?\s*\))+", s):
        raise SpecError("bad cycle notation %r" % s)
    perm = list(range(n))
    # product of cycles, applied left to right
    for body in re.findall(r"\(([^)]*)\)", s):
        pts = [int(x) - 1 for x in body.split()]
        if len(set(pts)) != len(pts) or any(not 0 <= x < n for x in pts):
            raise SpecError("bad cycle %r for degree %d" % (body, n))
        cyc = list(range(n))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            cyc[a] = b
        perm = [cyc[perm[x]] for x in range(n)]
    return tuple(perm)


def _canonical_matrix(kind, F, raw):
    a, b, c, d = raw
    if kind == "sl2":
        return (a, b, c, d)
    if kind == "psl2":
        neg = tuple(F.neg(x) for x in raw)
        return min(tuple(raw), neg)
    for x in raw:
        if x:
            s = F.inv(x)
            return tuple(F.mul(s, y) for y in raw)
    raise SpecError("zero matrix")


# --- builders -------------------------------------------------------------------

def parse_spec(spec: str):
    m = _SPEC_RE.match(spec.strip())
    if not m:
        raise SpecError("malformed group spec %r" % spec)
    if m.group(3) is not None:
        return "ab", tuple(int(x) for x in m.group(3).split(","))
    return m.group(1), int(m.group(2))


def group_order(spec: str) -> int:
    kind, arg = parse_spec(spec)
    if kind == "ab":
        return AbelianGroup(arg).order
    if kind in ("sym", "alt"):
        f = math.factorial(arg)
        return f if kind == "sym" or arg < 2 else f // 2
    if field_of_order_or_none(arg) is None:
        raise SpecError("%d is not a prime power" % arg)
    q = arg
    full = q * (q * q - 1)
    return full // math.gcd(2, q - 1) if kind == "psl2" else full


def field_of_order_or_none(q):
    try:
        return field_of_order(q)
    except ValueError:
        return None


def build_group(spec: str) -> FiniteGroupTable:
    """Materialize the group described by ``spec``."""
    kind, arg = parse_spec(spec)
    label = spec.strip()
    if kind in ("sym", "alt") and arg < 1:
        raise SpecError("degree must be positive")
    n = group_order(spec)
    if n > MAX_ORDER:
        raise CapExceeded("|%s| = %d exceeds the %d cap" % (label, n, MAX_ORDER))
    if kind == "ab":
        return _build_abelian(label, AbelianGroup(arg))
    if kind in ("sym", "alt"):
        return _build_perm(label, kind, arg)
    return _build_matrix(label, kind, field_of_order(arg))


def _assemble(label, kind, descs, codes_of, row_codes, inv_descs, product, **kw):
    """Order descriptors, then build the inverse and (if small) the product table."""
    ident = kw.pop("identity")
    rest = sorted(d for d in descs if d != ident)
    elements = [ident] + rest
    n = len(elements)
    arr = np.array(elements, dtype=np.int64).reshape(n, -1)
    codes = codes_of(arr)
    order = np.argsort(codes, kind="stable")
    sorted_codes = codes[order]

    def lookup(c):
        pos = np.searchsorted(sorted_codes, c)
        if np.any(pos >= n) or np.any(sorted_codes[np.minimum(pos, n - 1)] != c):
            raise AssertionError("product left the group")  # pragma: no cover
        return order[pos]

    inv = lookup(codes_of(np.array(inv_descs(elements), dtype=np.int64).reshape(n, -1))).astype(np.int32)
    table = None
    if n <= TABLE_LIMIT:
        table = np.empty((n, n), dtype=np.int32)
        for i in range(n):
            table[i] = lookup(row_codes(arr, i))
    return FiniteGroupTable(label, kind, elements, inv, table, product, **kw)


def _build_perm(label, kind, n):
    perms = [p for p in itertools.permutations(range(n))
             if kind == "sym" or _parity(p) == 0]
    base = n ** np.arange(n - 1, -1, -1, dtype=np.int64)

    def codes_of(P):
        return P @ base

    def row_codes(P, i):
        return P[:, P[i]] @ base

    def inv_descs(elements):
        return [tuple(np.argsort(p).tolist()) for p in elements]

    def product(a, b):
        return tuple(b[a[x]] for x in range(n))

    if n == 0:  # pragma: no cover
        raise SpecError("degree must be positive")
    return _assemble(label, kind, perms, codes_of, row_codes, inv_descs, product,
                     identity=tuple(range(n)), degree=n)


def _parity(p):
    seen, par = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, ln = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            ln += 1
        par ^= (ln - 1) & 1
    return par


def _build_abelian(label, K: AbelianGroup):
    f = np.array(K.factors, dtype=np.int64)
    m = len(f)
    base = np.array([math.prod(K.factors[i + 1:]) for i in range(m)], dtype=np.int64)

    def codes_of(V):
        return V @ base

    def row_codes(V, i):
        return ((V + V[i]) % f) @ base

    def inv_descs(elements):
        return [K.neg(v) for v in elements]

    return _assemble(label, "ab", list(K.elements()), codes_of, row_codes, inv_descs, K.add,
                     identity=K.zero, abelian=K)


def _build_matrix(label, kind, F: FieldCtx):
    q = F.q
    descs = []
    if kind == "pgl2":
        for b, c, d in itertools.product(range(q), repeat=3):
            if F.sub(d, F.mul(b, c)):
                descs.append((1, b, c, d))
        for c, d in itertools.product(range(1, q), range(q)):
            descs.append((0, 1, c, d))
    else:
        for a, b, c in itertools.product(range(q), repeat=3):
            if a:
                descs.append((a, b, c, F.div(F.add(1, F.mul(b, c)), a)))
            elif b and F.mul(b, c) == F.neg(1):
                descs.extend((0, b, c, d) for d in range(q))
        if kind == "psl2":
            descs = sorted({_canonical_matrix("psl2", F, d) for d in descs})
    base = np.array([q**3, q**2, q, 1], dtype=np.int64)

    def canon(M):
        if kind == "sl2":
            return M
        if kind == "psl2":
            N = F.neg_vec(M)
            cm, cn = M @ base, N @ base
            return np.where((cm <= cn)[:, None], M, N)
        nz = M != 0
        first = np.argmax(nz, axis=1)
        lead = M[np.arange(len(M)), first]
        s = F.exp_arr[(-F.log_arr[lead]) % (q - 1)]
        return F.mul_vec(M, s[:, None])

    def codes_of(M):
        return M @ base

    def row_codes(M, i):
        a, b, c, d = M[i].tolist()
        A, B, C, D = M.T
        out = np.stack([F.add_vec(F.mul_vec(a, A), F.mul_vec(b, C)),
                        F.add_vec(F.mul_vec(a, B), F.mul_vec(b, D)),
                        F.add_vec(F.mul_vec(c, A), F.mul_vec(d, C)),
                        F.add_vec(F.mul_vec(c, B), F.mul_vec(d, D))], axis=1)
        return canon(out) @ base

    def inv_descs(elements):
        out = []
        for a, b, c, d in elements:
            s = F.inv(F.sub(F.mul(a, d), F.mul(b, c)))
            out.append(_canonical_matrix(kind, F, [F.mul(s, d), F.mul(s, F.neg(b)),
                                                  F.mul(s, F.neg(c)), F.mul(s, a)]))
        return out

    def product(x, y):
        a, b, c, d = x
        e, f, g, h = y
        raw = [F.add(F.mul(a, e), F.mul(b, g)), F.add(F.mul(a, f), F.mul(b, h)),
               F.add(F.mul(c, e), F.mul(d, g)), F.add(F.mul(c, f), F.mul(d, h))]
        return _canonical_matrix(kind, F, raw)

    return _assemble(label, kind, descs, codes_of, row_codes, inv_descs, product,
                     identity=(1, 0, 0, 1), field=F)


# --- subgroup generation ----------------------------------------------------------

def closure(G: FiniteGroupTable, S) -> list[int]:
    """The subgroup generated by S, as a sorted id list (breadth-first saturation)."""
    gens = sorted(set(S))
    gens = sorted(set(gens) | {G.invl[g] for g in gens})
    seen = {G.identity}
    frontier = [G.identity]
    mul = G.mul
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = mul(x, s)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen)


def is_generating(G: FiniteGroupTable, tup) -> bool:
    """True iff the entries of ``tup`` generate G.

    Stops as soon as the partial closure is larger than |G|/2: no proper
    subgroup is that big.
    """
    n = G.order
    if n == 1:
        return True
    gens = set(tup)
    gens |= {G.invl[g] for g in gens}
    gens.discard(G.identity)
    if not gens:
        return False
    half = n // 2
    seen = {G.identity}
    frontier = [G.identity]
    mul = G.mul
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = mul(x, s)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > half:
                        return True
                    nxt.append(y)
        frontier = nxt
    return False


def centralizer(G: FiniteGroupTable, g: int) -> list[int]:
    if G.table is not None:
        return np.flatnonzero(G.table[:, g] == G.table[g, :]).tolist()
    return [x for x in range(G.order) if G.mul(x, g) == G.mul(g, x)]


def is_regular_semisimple(G: FiniteGroupTable, g: int) -> bool:
    """Distinct eigenvalues over the algebraic closure: trace^2 != 4 det."""
    if not G.is_matrix_group:
        raise TypeError("%s is not built from 2x2 matrices" % G.label)
    F = G.field
    a, b, c, d = G.elements[g]
    tr = F.add(a, d)
    det = F.sub(F.mul(a, d), F.mul(b, c))
    return F.mul(tr, tr) != F.mul(4 % F.p, det)


class SubgroupLattice:
    """Memoized join automaton: state = subgroup H, transition (H, g) -> <H, g>.

    Folding a tuple through it from the trivial subgroup decides generation
    with k lookups once the relevant rows exist.
    """

    def __init__(self, G: FiniteGroupTable):
        self.G = G
        self.masks: list[int] = []
        self.elems: list[list[int]] = []
        self.gens: list[list[int]] = []
        self.index: dict[int, int] = {}
        self.rows: dict[int, list[int]] = {}
        self.trivial = self._state([], [G.identity])
        self.full_mask = (1 << G.order) - 1

    def _state(self, gens, elems) -> int:
        mask = 0
        for x in elems:
            mask |= 1 << x
        sid = self.index.get(mask)
        if sid is None:
            sid = len(self.masks)
            self.index[mask] = sid
            self.masks.append(mask)
            self.elems.append(sorted(elems))
            self.gens.append(list(gens))
        return sid

    @property
    def full(self) -> int | None:
        return self.index.get(self.full_mask)

    def size(self, sid: int) -> int:
        return len(self.elems[sid])

    def row(self, sid: int) -> list[int]:
        r = self.rows.get(sid)
        if r is not None:
            return r
        G = self.G
        n = G.order
        H = self.elems[sid]
        mask = self.masks[sid]
        r = [-1] * n
        for h in H:
            r[h] = sid
        for g in range(n):
            if r[g] != -1:
                continue
            gens = self.gens[sid] + [g]
            tid = self._state(gens, closure(G, gens))
            # <H, g> = <H, hg> for h in H
            for h in H:
                r[G.mul(h, g)] = tid
        self.rows[sid] = r
        assert mask == self.masks[sid]
        return r

    def join(self, sid: int, g: int) -> int:
        return self.row(sid)[g]

    def fold(self, tup) -> int:
        s = self.trivial
        for g in tup:
            s = self.row(s)[g]
        return s

    def generates(self, tup) -> bool:
        return self.size(self.fold(tup)) == self.G.order

    def fold_all(self, k: int) -> np.ndarray:
        """State reached by every tuple in G^k, indexed by packed key."""
        n = self.G.order
        cur = np.zeros(1, dtype=np.int32)
        cur[0] = self.trivial
        ar = np.arange(n)
        for _ in range(k):
            needed = np.unique(cur)
            for s in needed.tolist():
                self.row(s)
            trans = np.full((len(self.masks), n), -1, dtype=np.int32)
            for s, r in self.rows.items():
                trans[s] = r
            cur = trans[cur[:, None], ar[None, :]].ravel()
        return cur


def generation_mask(G: FiniteGroupTable, k: int) -> np.ndarray:
    """Boolean mask over packed keys of G^k marking generating tuples."""
    if k == 0:
        return np.array([G.order == 1])
    lat = G.lattice
    states = lat.fold_all(k)
    sizes = np.array([len(e) for e in lat.elems], dtype=np.int64)
    return sizes[states] == G.order


def random_generating_tuple(G: FiniteGroupTable, k: int, rng, attempts: int = 10**4):
    for _ in range(attempts):
        t = [int(x) for x in rng.integers(0, G.order, size=k)]
        if is_generating(G, t):
            return t
    return None


def min_generators(G: FiniteGroupTable) -> int:
    """d(G), the minimal size of a generating set."""
    n = G.order
    if n == 1:
        return 0
    if G.abelian is not None:
        return G.abelian.rank
    if int(G.element_orders.max()) == n:
        return 1
    rng = random.Random(0)
    for _ in range(500):
        if is_generating(G, (rng.randrange(n), rng.randrange(n))):
            return 2
    if n > TABLE_LIMIT:
        raise CapExceeded("exhaustive d(G) search needs |G| <= %d" % TABLE_LIMIT)
    lat = G.lattice
    level = {lat.trivial}
    k = 0
    while True:
        k += 1
        nxt = set()
        for s in level:
            nxt.update(lat.row(s))
        if any(lat.size(s) == n for s in nxt):
            return k
        level = nxt


# --- automorphisms -------------------------------------------------------------

def _cayley_edges(G, gens):
    """BFS tree and full edge list of the right Cayley graph for ``gens``."""
    n = G.order
    parent_layers = []
    seen = np.zeros(n, dtype=bool)
    seen[G.identity] = True
    frontier = [G.identity]
    while frontier:
        layer = []
        nxt = []
        for x in frontier:
            for gi, g in enumerate(gens):
                y = G.mul(x, g)
                if not seen[y]:
                    seen[y] = True
                    layer.append((x, gi, y))
                    nxt.append(y)
        if layer:
            parent_layers.append(np.array(layer, dtype=np.int64))
        frontier = nxt
    X = np.repeat(np.arange(n), len(gens))
    GI = np.tile(np.arange(len(gens)), n)
    Y = np.array([G.mul(x, gens[gi]) for x, gi in zip(X.tolist(), GI.tolist())], dtype=np.int64)
    return parent_layers, X, GI, Y


def automorphism_group(G: FiniteGroupTable) -> list[np.ndarray]:
    """All automorphisms of G as id permutations, identity first.

    Brute force over images of a small generating set; orders and class
    sizes must be preserved, so candidates are filtered on both.
    """
    n = G.order
    if n > AUT_LIMIT:
        raise CapExceeded("automorphism search needs |G| <= %d" % AUT_LIMIT)
    if n == 1:
        return [np.zeros(1, dtype=np.int64)]
    orders = G.element_orders
    csizes = G.class_sizes
    sig = list(zip(orders.tolist(), csizes.tolist()))
    by_sig: dict = {}
    for x, s in enumerate(sig):
        by_sig.setdefault(s, []).append(x)

    d = min_generators(G)
    rng = np.random.default_rng(12345)
    best, best_cost = None, None
    for _ in range(300):
        t = random_generating_tuple(G, d, rng, attempts=2000)
        if t is None:
            continue
        cost = math.prod(len(by_sig[sig[g]]) for g in t)
        if best is None or cost < best_cost:
            best, best_cost = t, cost
    if best is None:
        raise AssertionError("no generating tuple found")  # pragma: no cover
    gens = best
    layers, X, GI, Y = _cayley_edges(G, gens)
    table = G.table
    autos = []
    for imgs in itertools.product(*(by_sig[sig[g]] for g in gens)):
        img = np.array(imgs, dtype=np.int64)
        phi = np.full(n, -1, dtype=np.int64)
        phi[G.identity] = G.identity
        for lay in layers:
            phi[lay[:, 2]] = table[phi[lay[:, 0]], img[lay[:, 1]]]
        if not np.array_equal(table[phi[X], img[GI]], phi[Y]):
            continue
        if len(np.unique(phi)) != n:
            continue
        autos.append(phi)
    autos.sort(key=lambda a: a.tolist())
    return autos
