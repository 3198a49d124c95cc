"""Compiled union-find census over packed tuple keys."""

import numpy as np
from numba import njit

# move kinds in the encoded move array
R, L, P, I = 0, 1, 2, 3


@njit(cache=True)
def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def _union(parent, a, b):
    ra = _find(parent, a)
    rb = _find(parent, b)
    if ra == rb:
        return
    # smaller key becomes the root, so roots are component minima
    if ra < rb:
        parent[rb] = ra
    else:
        parent[ra] = rb


@njit(cache=True)
def census(table, inv, mask, n, k, moves, perms):
    """Union every generating key with its move (and optional perm) neighbours.

    ``moves`` rows are (kind, i, j, sign) with 0-based positions. ``perms`` rows
    are element-id permutations applied coordinatewise (may have zero rows).
    Returns the fully compressed parent array; non-generating keys map to -1.
    """
    N = mask.shape[0]
    parent = np.arange(N).astype(np.int32)
    w = np.empty(k, dtype=np.int64)
    acc = 1
    for pos in range(k - 1, -1, -1):
        w[pos] = acc
        acc *= n
    g = np.empty(k, dtype=np.int64)
    nm = moves.shape[0]
    npm = perms.shape[0]
    for key in range(N):
        if not mask[key]:
            continue
        rem = key
        for pos in range(k - 1, -1, -1):
            g[pos] = rem % n
            rem //= n
        for m in range(nm):
            kind = moves[m, 0]
            i = moves[m, 1]
            j = moves[m, 2]
            if kind == 0 or kind == 1:
                h = g[j]
                if moves[m, 3] < 0:
                    h = inv[h]
                if kind == 0:
                    new = table[g[i], h]
                else:
                    new = table[h, g[i]]
                nk = key + (new - g[i]) * w[i]
            elif kind == 2:
                nk = key + (g[j] - g[i]) * w[i] + (g[i] - g[j]) * w[j]
            else:
                nk = key + (inv[g[i]] - g[i]) * w[i]
            # the move set is closed under inverses, so each edge is seen from both ends
            if nk > key:
                _union(parent, key, nk)
        for m in range(npm):
            nk = 0
            for pos in range(k):
                nk += perms[m, g[pos]] * w[pos]
            if nk != key:
                _union(parent, key, nk)
    for key in range(N):
        if mask[key]:
            parent[key] = _find(parent, key)
        else:
            parent[key] = -1
    return parent


@njit(cache=True)
def _apply(table, inv, g, kind, i, j, sign):
    if kind == 0 or kind == 1:
        h = g[j]
        if sign < 0:
            h = inv[h]
        return table[g[i], h] if kind == 0 else table[h, g[i]]
    if kind == 3:
        return inv[g[i]]
    return -1  # swaps handled by the caller


@njit(cache=True)
def bfs_redundant(table, inv, n, k, moves, positions, start_key):
    """Shortest move-index path from start_key to a tuple with an identity
    entry at one of ``positions``. Empty result if start is already there;
    ``[-1]`` if unreachable.
    """
    N = n**k
    w = np.empty(k, dtype=np.int64)
    acc = 1
    for pos in range(k - 1, -1, -1):
        w[pos] = acc
        acc *= n
    par = np.full(N, -1, dtype=np.int64)
    pmv = np.full(N, -1, dtype=np.int16)
    g = np.empty(k, dtype=np.int64)
    np_ = positions.shape[0]
    nm = moves.shape[0]
    queue = np.empty(N, dtype=np.int64)
    head, tail = 0, 0
    queue[tail] = start_key
    tail += 1
    par[start_key] = start_key
    found = -1
    fin = -1
    level_end = tail
    while head < tail and found < 0:
        # no goal on this level: look for a one-move finish before expanding
        for q in range(head, level_end):
            key = queue[q]
            rem = key
            for pos in range(k - 1, -1, -1):
                g[pos] = rem % n
                rem //= n
            if q == 0 and head == 0:
                for a in range(np_):
                    if g[positions[a]] == 0:
                        return np.empty(0, dtype=np.int64)
            for a in range(np_):
                i = positions[a]
                for b in range(np_):
                    j = positions[b]
                    if i != j and (g[i] == g[j] or g[i] == inv[g[j]]):
                        fin = i * 4 * k + j * 4 + (2 if g[i] == g[j] else 0)
                        found = key
                        break
                if found >= 0:
                    break
            if found >= 0:
                break
        if found >= 0:
            break
        nxt_end = tail
        for q in range(head, level_end):
            key = queue[q]
            rem = key
            for pos in range(k - 1, -1, -1):
                g[pos] = rem % n
                rem //= n
            for m in range(nm):
                kind = moves[m, 0]
                i = moves[m, 1]
                j = moves[m, 2]
                if kind == 2:
                    nk = key + (g[j] - g[i]) * w[i] + (g[i] - g[j]) * w[j]
                else:
                    new = _apply(table, inv, g, kind, i, j, moves[m, 3])
                    nk = key + (new - g[i]) * w[i]
                if par[nk] >= 0:
                    continue
                par[nk] = key
                pmv[nk] = m
                queue[nxt_end] = nk
                nxt_end += 1
                rem = nk
                hit = False
                for pos in range(k - 1, -1, -1):
                    d = rem % n
                    rem //= n
                    for a in range(np_):
                        if positions[a] == pos and d == 0:
                            hit = True
                if hit:
                    found = nk
                    break
            if found >= 0:
                break
        head = level_end
        tail = nxt_end
        level_end = tail
    if found < 0:
        return np.full(1, -1, dtype=np.int64)
    path = []
    x = found
    while x != start_key:
        path.append(np.int64(pmv[x]))
        x = par[x]
    out = np.empty(len(path) + (1 if fin >= 0 else 0), dtype=np.int64)
    for a in range(len(path)):
        out[a] = path[len(path) - 1 - a]
    if fin >= 0:
        # encoded finishing move: -(code + 2) where code = i*4k + j*4 + (2 if g_i == g_j)
        out[len(path)] = -(fin + 2)
    return out


@njit(cache=True)
def _move(table, inv, g, kind, i, j, sign):
    if kind == 2:
        g[i], g[j] = g[j], g[i]
    else:
        g[i] = _apply(table, inv, g, kind, i, j, sign)


@njit(cache=True)
def walk(table, inv, moves, state, idx, record):
    """Apply moves[idx[t]] in order to ``state`` (in place).

    With ``record`` the state after every step is returned, one row per step.
    """
    k = state.shape[0]
    traj = np.empty((idx.shape[0] if record else 0, k), dtype=np.int64)
    for t in range(idx.shape[0]):
        m = idx[t]
        _move(table, inv, state, moves[m, 0], moves[m, 1], moves[m, 2], moves[m, 3])
        if record:
            traj[t] = state
    return traj


@njit(cache=True)
def walk_sample(table, inv, moves, state, idx, thin, coords):
    """Take ``thin`` steps, then emit state[coords[s]]; repeat for every s."""
    out = np.empty(coords.shape[0], dtype=np.int64)
    t = 0
    for s in range(coords.shape[0]):
        for _ in range(thin):
            m = idx[t]
            t += 1
            _move(table, inv, state, moves[m, 0], moves[m, 1], moves[m, 2], moves[m, 3])
        out[s] = state[coords[s]]
    return out
