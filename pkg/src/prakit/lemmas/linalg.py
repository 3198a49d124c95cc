"""Dense linear algebra over a FieldCtx; matrices are lists of rows of raw ints."""

from __future__ import annotations

import itertools

from ..finfield import FieldCtx


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(F: FieldCtx, A, B) -> list[list[int]]:
    m, inner, n = len(A), len(B), len(B[0]) if B else 0
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        Ai = A[i]
        row = out[i]
        for t in range(inner):
            a = Ai[t]
            if a == 0:
                continue
            Bt = B[t]
            for j in range(n):
                if Bt[j]:
                    row[j] = F.add(row[j], F.mul(a, Bt[j]))
    return out


def matvec(F: FieldCtx, A, v) -> list[int]:
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return out


def sub_scalar(F: FieldCtx, A, lam: int) -> list[list[int]]:
    """A - lam*I."""
    B = [list(r) for r in A]
    for i in range(len(B)):
        B[i][i] = F.sub(B[i][i], lam)
    return B


def rref(F: FieldCtx, A) -> tuple[list[list[int]], list[int]]:
    R = [list(r) for r in A]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    piv = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        s = F.inv(R[r][c])
        R[r] = [F.mul(s, x) for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(R[i], R[r])]
        piv.append(c)
        r += 1
        if r == rows:
            break
    return R, piv


def rank(F: FieldCtx, A) -> int:
    return len(rref(F, A)[1]) if A else 0


def kernel(F: FieldCtx, A, ncols: int | None = None) -> list[list[int]]:
    """Basis of {x : A x = 0}, one vector per free column."""
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if not A:
        return identity(n)
    R, piv = rref(F, A)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, pc in enumerate(piv):
            v[pc] = F.neg(R[r][f])
        basis.append(v)
    return basis


def det(F: FieldCtx, A) -> int:
    M = [list(r) for r in A]
    n = len(M)
    d = 1
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = F.neg(d)
        d = F.mul(d, M[c][c])
        s = F.inv(M[c][c])
        for i in range(c + 1, n):
            if M[i][c]:
                f = F.mul(M[i][c], s)
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[c])]
    return d


def _hessenberg(F: FieldCtx, A) -> list[list[int]]:
    H = [list(r) for r in A]
    n = len(H)
    for c in range(n - 2):
        p = next((i for i in range(c + 1, n) if H[i][c]), None)
        if p is None:
            continue
        if p != c + 1:
            H[p], H[c + 1] = H[c + 1], H[p]
            for row in H:
                row[p], row[c + 1] = row[c + 1], row[p]
        s = F.inv(H[c + 1][c])
        for i in range(c + 2, n):
            f = F.mul(H[i][c], s)
            if not f:
                continue
            # row_i -= f row_{c+1}, then col_{c+1} += f col_i keeps similarity
            H[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(H[i], H[c + 1])]
            for row in H:
                row[c + 1] = F.add(row[c + 1], F.mul(f, row[i]))
    return H


def charpoly(F: FieldCtx, A) -> list[int]:
    """det(xI - A), coefficients low to high (monic)."""
    n = len(A)
    H = _hessenberg(F, A)
    polys = [[1]]
    for m in range(1, n + 1):
        # p_m = (x - h_mm) p_{m-1} - sum_i h_{i,m} prod_{j>i} h_{j,j-1} p_{i-1}
        prev = polys[-1]
        cur = [0] + prev
        h = H[m - 1][m - 1]
        for t, c in enumerate(prev):
            cur[t] = F.sub(cur[t], F.mul(h, c))
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = F.mul(prod, H[i][i - 1])
            if not prod:
                break
            f = F.mul(H[i - 1][m - 1], prod)
            for t, c in enumerate(polys[i - 1]):
                cur[t] = F.sub(cur[t], F.mul(f, c))
        polys.append(cur)
    return polys[n]


def exterior_power(F: FieldCtx, A, k: int) -> list[list[int]]:
    """The matrix of wedge^k A on the basis e_I, I a k-subset in lex order."""
    n = len(A)
    subsets = list(itertools.combinations(range(n), k))
    return [[det(F, [[A[i][j] for j in J] for i in I]) for J in subsets] for I in subsets]


def block_diag(blocks) -> list[list[int]]:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            out[off + i][off:off + len(row)] = row
        off += len(b)
    return out


def span_basis(F: FieldCtx, vectors, n: int) -> list[list[int]]:
    """Row-reduced basis of the span of ``vectors``."""
    if not vectors:
        return []
    R, piv = rref(F, vectors)
    return R[:len(piv)]
