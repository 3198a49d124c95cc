"""Common eigenspaces, the potential w(S), and greedy subset selection.

w(S) is the sum of squared dimensions of the common eigenspaces of S, computed
over a splitting field of all characteristic polynomials involved. w is
non-increasing in S, and two nested sets have equal w exactly when they have
the same invariant lines; the greedy loop below adds, at each step, the first
member of T that strictly lowers w, until w(S) = w(T).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import CapExceeded, SpecError
from ..finfield import FieldCtx, FieldElement, embedding, make_field, poly_roots, splitting_degree
from .linalg import block_diag, charpoly, exterior_power, kernel, matmul, matvec, sub_scalar

SPLIT_CAP = 1 << 20
SUBSPACE_MAX_DIM = 4


@dataclass(frozen=True)
class RepMatrix:
    """A square matrix over a FieldCtx, stored as raw ints."""

    field: FieldCtx
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise SpecError("matrix is not square")
        q = self.field.q
        if any(not 0 <= x < q for r in self.rows for x in r):
            raise SpecError("entries must be raw field elements in [0, %d)" % q)

    @classmethod
    def of(cls, F: FieldCtx, rows) -> RepMatrix:
        conv = [[x.value if isinstance(x, FieldElement) else int(x) for x in r] for r in rows]
        return cls(F, tuple(tuple(r) for r in conv))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def entries(self) -> list[list[FieldElement]]:
        return [[FieldElement(self.field, x) for x in r] for r in self.rows]

    def raw(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __mul__(self, other: RepMatrix) -> RepMatrix:
        return RepMatrix.of(self.field, matmul(self.field, self.rows, other.rows))


@dataclass
class EigenDecomposition:
    """Common eigenspaces over GF(q^m); each entry is (eigenvalues, basis)."""

    field: FieldCtx
    degree: int
    spaces: list[tuple[tuple[int, ...], list[list[int]]]]

    @property
    def dims(self) -> list[int]:
        return [len(b) for _, b in self.spaces]

    @property
    def w(self) -> int:
        return sum(d * d for d in self.dims)


def _check_same(S) -> tuple[FieldCtx, int]:
    F, n = S[0].field, S[0].n
    for M in S:
        if M.field is not F or M.n != n:
            raise SpecError("matrices must share size and field")
    return F, n


def split_field(S, F: FieldCtx | None = None) -> tuple[FieldCtx, int]:
    """Smallest GF(q^m) over which every characteristic polynomial in S splits."""
    if not S:
        return F, 1
    F, _ = _check_same(S)
    m = 1
    for M in S:
        m = math.lcm(m, splitting_degree(F, charpoly(F, M.rows)))
    if F.q**m > SPLIT_CAP:
        raise CapExceeded("splitting field GF(%d^%d) is over the %d cap" % (F.q, m, SPLIT_CAP))
    return make_field(F.p, F.e * m), m


class _Splitter:
    """Refines eigenspace decompositions inside a fixed splitting field."""

    def __init__(self, T, n: int, F: FieldCtx | None = None):
        self.n = n
        self.E, self.m = split_field(T, F)
        self.cache: dict[RepMatrix, tuple[list[list[int]], list[int]]] = {}
        if T:
            emb = embedding(T[0].field, self.E)
            for M in T:
                if M not in self.cache:
                    A = [[emb[x] for x in r] for r in M.rows]
                    self.cache[M] = (A, poly_roots(self.E, charpoly(self.E, A)))

    def whole(self) -> list[tuple[tuple[int, ...], list[list[int]]]]:
        return [((), [[1 if i == j else 0 for j in range(self.n)] for i in range(self.n)])]

    def refine(self, spaces, M: RepMatrix):
        E = self.E
        A, roots = self.cache[M]
        out = []
        for vals, basis in spaces:
            # x = B y lies in ker(A - lam) iff (A - lam) B y = 0
            Bt = [list(c) for c in zip(*basis)]
            for lam in roots:
                AB = matmul(E, sub_scalar(E, A, lam), Bt)
                ys = kernel(E, AB, len(basis))
                if ys:
                    vecs = [matvec(E, Bt, y) for y in ys]
                    out.append((vals + (lam,), vecs))
        return out


def common_eigenspaces(S, n: int | None = None) -> EigenDecomposition:
    S = list(S)
    if not S:
        if n is None:
            raise SpecError("dimension needed for the empty set")
        sp = _Splitter([], n)
        return EigenDecomposition(None, 1, sp.whole())
    _, dim = _check_same(S)
    if n is not None and n != dim:
        raise SpecError("matrix size %d does not match n = %d" % (dim, n))
    sp = _Splitter(S, dim)
    spaces = sp.whole()
    for M in S:
        spaces = sp.refine(spaces, M)
    return EigenDecomposition(sp.E, sp.m, spaces)


def w_potential(S, n: int | None = None) -> int:
    return common_eigenspaces(S, n).w


@dataclass
class GreedyResult:
    indices: list[int]
    subset: list[RepMatrix]
    w_path: list[int] = field(default_factory=list)  # w after 0, 1, 2, ... picks
    w_target: int = 0


def greedy_line_subset(T, n: int | None = None) -> GreedyResult:
    """Greedy S subset of T with w(S) = w(T); each pick strictly lowers w.

    Picks the first member of T (input order) that lowers w. Returns the empty
    set when w(empty) = w(T) already.
    """
    T = list(T)
    if not T:
        raise SpecError("T must be non-empty")
    _, dim = _check_same(T)
    if n is not None and n != dim:
        raise SpecError("matrix size %d does not match n = %d" % (dim, n))
    sp = _Splitter(T, dim)
    full = sp.whole()
    for M in T:
        full = sp.refine(full, M)
    target = sum(len(b) ** 2 for _, b in full)

    spaces = sp.whole()
    w = dim * dim
    picked: list[int] = []
    path = [w]
    guard = dim**4
    while w > target:
        if len(picked) >= guard:
            raise AssertionError("greedy loop exceeded n^4 steps")  # pragma: no cover
        for idx, M in enumerate(T):
            if idx in picked:
                continue
            cand = sp.refine(spaces, M)
            cw = sum(len(b) ** 2 for _, b in cand)
            if cw < w:
                picked.append(idx)
                spaces, w = cand, cw
                path.append(w)
                break
        else:
            raise AssertionError("no member of T lowers w(S) = %d > w(T) = %d" % (w, target))
    return GreedyResult(picked, [T[i] for i in picked], path, target)


def wedge_block(M: RepMatrix) -> RepMatrix:
    """M + wedge^2 M + ... + wedge^n M as one block-diagonal matrix (size 2^n - 1)."""
    F = M.field
    A = M.raw()
    blocks = [exterior_power(F, A, k) for k in range(1, M.n + 1)]
    return RepMatrix.of(F, block_diag(blocks))


def greedy_subspace_subset(T, n: int | None = None) -> GreedyResult:
    """Greedy selection on the exterior-power block representation.

    A k-dimensional subspace is invariant exactly when its wedge line is, so a
    subset that preserves all invariant lines of the block representation
    preserves all invariant subspaces of the original one.
    """
    T = list(T)
    if not T:
        raise SpecError("T must be non-empty")
    _, dim = _check_same(T)
    if dim > SUBSPACE_MAX_DIM:
        raise CapExceeded("subspace greedy needs n <= %d (block size 2^n - 1)" % SUBSPACE_MAX_DIM)
    if n is not None and n != dim:
        raise SpecError("matrix size %d does not match n = %d" % (dim, n))
    res = greedy_line_subset([wedge_block(M) for M in T])
    return GreedyResult(res.indices, [T[i] for i in res.indices], res.w_path, res.w_target)
