"""Nielsen moves and the product replacement graphs X_k(G) and its extension.

Tuples are vertices of the graph of generating k-tuples. ``X_k`` uses only the
R/L moves; the extended graph adds the swaps ``P`` and inversions ``I``.
Indices in moves are 1-based, exactly as in the wire format::

    R+ i j | R- i j | L+ i j | L- i j | P i j | I i
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import CapExceeded, SpecError
from .groups import FiniteGroupTable, generation_mask, is_generating

ENUM_CAP = 10**8


@dataclass(frozen=True)
class GenTuple:
    """A k-tuple of element ids of a group of order ``n``.

    ``key`` packs the ids in mixed radix n, first coordinate most significant,
    so key order is lexicographic tuple order.
    """

    ids: tuple[int, ...]
    n: int

    @property
    def k(self) -> int:
        return len(self.ids)

    @property
    def key(self) -> int:
        key = 0
        for g in self.ids:
            key = key * self.n + g
        return key

    @classmethod
    def from_key(cls, key: int, k: int, n: int) -> GenTuple:
        ids = []
        for _ in range(k):
            key, r = divmod(key, n)
            ids.append(r)
        return cls(tuple(reversed(ids)), n)

    def __iter__(self):
        return iter(self.ids)

    def __len__(self):
        return len(self.ids)

    def __getitem__(self, i):
        return self.ids[i]


@dataclass(frozen=True)
class NielsenMove:
    kind: str
    i: int
    j: int | None = None
    sign: int = 0

    def __post_init__(self):
        if self.kind not in ("R", "L", "P", "I"):
            raise SpecError("unknown move kind %r" % self.kind)
        if self.i < 1:
            raise SpecError("move indices are 1-based")
        if self.kind == "I":
            if self.j is not None or self.sign:
                raise SpecError("I takes a single index and no sign")
            return
        if self.j is None or self.j < 1 or self.j == self.i:
            raise SpecError("%s needs two distinct 1-based indices" % self.kind)
        if self.kind in ("R", "L"):
            if self.sign not in (1, -1):
                raise SpecError("%s needs sign +1 or -1" % self.kind)
        else:
            if self.sign:
                raise SpecError("P takes no sign")
            if self.i > self.j:
                i, j = self.j, self.i
                object.__setattr__(self, "i", i)
                object.__setattr__(self, "j", j)

    def check(self, k: int) -> None:
        if self.i > k or (self.j is not None and self.j > k):
            raise SpecError("move %s out of range for k=%d" % (self, k))

    def __str__(self):
        if self.kind == "I":
            return "I %d" % self.i
        if self.kind == "P":
            return "P %d %d" % (self.i, self.j)
        return "%s%s %d %d" % (self.kind, "+" if self.sign > 0 else "-", self.i, self.j)


def inverse_move(m: NielsenMove) -> NielsenMove:
    if m.kind in ("R", "L"):
        return NielsenMove(m.kind, m.i, m.j, -m.sign)
    return m


_TOKEN_RE = re.compile(r"(R\+|R-|L\+|L-|P|I)")


@dataclass
class NielsenWord:
    """An ordered list of moves, applied left to right."""

    moves: list[NielsenMove] = field(default_factory=list)

    def __len__(self):
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def __add__(self, other: NielsenWord) -> NielsenWord:
        return NielsenWord(self.moves + other.moves)

    def inverse(self) -> NielsenWord:
        return NielsenWord([inverse_move(m) for m in reversed(self.moves)])

    def apply(self, G: FiniteGroupTable, t):
        return apply_word(G, t, self)

    def __str__(self):
        return "\n".join(str(m) for m in self.moves)

    @classmethod
    def parse(cls, text: str) -> NielsenWord:
        toks = text.split()
        moves, pos = [], 0
        while pos < len(toks):
            head = toks[pos]
            if not _TOKEN_RE.fullmatch(head):
                raise SpecError("bad move token %r" % head)
            nargs = 1 if head == "I" else 2
            args = toks[pos + 1: pos + 1 + nargs]
            if len(args) != nargs or not all(a.isdigit() for a in args):
                raise SpecError("move %r needs %d integer indices" % (head, nargs))
            a = [int(x) for x in args]
            if head == "I":
                moves.append(NielsenMove("I", a[0]))
            elif head == "P":
                moves.append(NielsenMove("P", a[0], a[1]))
            else:
                moves.append(NielsenMove(head[0], a[0], a[1], 1 if head[1] == "+" else -1))
            pos += 1 + nargs
        return cls(moves)


def all_moves(k: int, extended: bool = True) -> list[NielsenMove]:
    """R/L moves (4k(k-1)), then P (k(k-1)/2) and I (k) when extended."""
    out = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i != j:
                for kind in ("R", "L"):
                    for s in (1, -1):
                        out.append(NielsenMove(kind, i, j, s))
    if extended:
        out += [NielsenMove("P", i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
        out += [NielsenMove("I", i) for i in range(1, k + 1)]
    return out


def _ids(t) -> tuple[int, ...]:
    return t.ids if isinstance(t, GenTuple) else tuple(int(x) for x in t)


def _wrap(G, like, ids):
    return GenTuple(ids, G.order) if isinstance(like, GenTuple) else ids


def _step(G: FiniteGroupTable, ids: tuple[int, ...], m: NielsenMove) -> tuple[int, ...]:
    out = list(ids)
    i = m.i - 1
    if m.kind == "I":
        out[i] = G.invl[ids[i]]
        return tuple(out)
    j = m.j - 1
    if m.kind == "P":
        out[i], out[j] = ids[j], ids[i]
        return tuple(out)
    h = ids[j] if m.sign > 0 else G.invl[ids[j]]
    out[i] = G.mul(ids[i], h) if m.kind == "R" else G.mul(h, ids[i])
    return tuple(out)


def apply_move(G: FiniteGroupTable, t, m: NielsenMove):
    ids = _ids(t)
    m.check(len(ids))
    return _wrap(G, t, _step(G, ids, m))


def apply_word(G: FiniteGroupTable, t, word) -> tuple | GenTuple:
    ids = _ids(t)
    for m in word:
        m.check(len(ids))
        ids = _step(G, ids, m)
    return _wrap(G, t, ids)


def neighbors(G: FiniteGroupTable, t, extended: bool = True):
    ids = _ids(t)
    return [(m, _wrap(G, t, _step(G, ids, m))) for m in all_moves(len(ids), extended)]


# --- censuses -------------------------------------------------------------------

def _check_cap(G: FiniteGroupTable, k: int) -> None:
    if G.order**k > ENUM_CAP:
        raise CapExceeded("|G|^k = %d^%d exceeds the %d enumeration cap" % (G.order, k, ENUM_CAP))
    if k and G.table is None:
        raise CapExceeded("censuses need a materialized multiplication table")


def enumerate_generating_tuples(G: FiniteGroupTable, k: int):
    """Every generating k-tuple, in packed-key order."""
    _check_cap(G, k)
    mask = generation_mask(G, k)
    for key in np.flatnonzero(mask).tolist():
        yield GenTuple.from_key(key, k, G.order)


def _encode(moves) -> np.ndarray:
    code = {"R": 0, "L": 1, "P": 2, "I": 3}
    rows = [(code[m.kind], m.i - 1, (m.j or m.i) - 1, m.sign) for m in moves]
    return np.array(rows, dtype=np.int64).reshape(len(rows), 4)


def component_labels(G: FiniteGroupTable, k: int, extended: bool = True, perms=None):
    """Generation mask and union-find roots (component minimum key, -1 off V_k)."""
    _check_cap(G, k)
    mask = generation_mask(G, k)
    if k == 0:
        return mask, np.where(mask, 0, -1).astype(np.int32)
    P = np.zeros((0, G.order), dtype=np.int64) if perms is None else np.asarray(perms, dtype=np.int64)
    labels = _kernels.census(G.table.astype(np.int64), G.inv.astype(np.int64), mask,
                             G.order, k, _encode(all_moves(k, extended)), P.reshape(-1, G.order))
    return mask, labels


@dataclass
class ComponentReport:
    group: str
    k: int
    extended: bool
    vertex_count: int
    component_count: int
    sizes: list[int]
    representatives: list[tuple[int, ...]]

    @property
    def graph(self) -> str:
        return "extended" if self.extended else "plain"

    @property
    def connected(self) -> bool:
        return self.component_count == 1


def components_from_labels(G, k, extended, labels) -> ComponentReport:
    roots, counts = np.unique(labels[labels >= 0], return_counts=True)
    order = np.lexsort((roots, -counts))
    sizes = counts[order].tolist()
    reps = [GenTuple.from_key(int(r), k, G.order).ids for r in roots[order]]
    return ComponentReport(G.label, k, extended, int(counts.sum()), len(roots), sizes, reps)


def components(G: FiniteGroupTable, k: int, extended: bool = True) -> ComponentReport:
    """Exact component census of X_k (plain) or its extension.

    Components are listed by decreasing size; each representative is the
    lexicographically smallest tuple of its component.
    """
    _, labels = component_labels(G, k, extended)
    return components_from_labels(G, k, extended, labels)


# --- searches -------------------------------------------------------------------

def _moves_on(positions, extended):
    pos = sorted(p + 1 for p in positions)
    out = []
    for m in all_moves(max(pos) if pos else 0, extended):
        if m.i in pos and (m.j is None or m.j in pos):
            out.append(m)
    return out


def _bfs(G, start, moves, goal, finisher=None, max_states=None):
    """Shortest move sequence from start to a tuple satisfying ``goal``.

    Level-synchronous. ``finisher(s)`` may name a single move taking s to a
    goal; it is consulted only once a whole level holds no goal, which keeps
    the returned path shortest while skipping the last (widest) level.
    """
    parent = {start: None}

    def trace(t):
        path = []
        while parent[t] is not None:
            t, mv = parent[t]
            path.append(mv)
        return path[::-1]

    if goal(start):
        return []
    level = [start]
    while level:
        if finisher is not None:
            for s in level:
                m = finisher(s)
                if m is not None:
                    return trace(s) + [m]
        nxt = []
        for s in level:
            for m in moves:
                t = _step(G, s, m)
                if t in parent:
                    continue
                parent[t] = (s, m)
                if goal(t):
                    return trace(t)
                nxt.append(t)
        if max_states is not None and len(parent) > max_states:
            raise CapExceeded("search exceeded %d states" % max_states)
        level = nxt
    return None


def _verified(G, t, word, check) -> NielsenWord:
    end = apply_word(G, t, word)
    if not check(end):
        raise AssertionError("word failed to replay")  # pragma: no cover
    return word


def connect_path(G: FiniteGroupTable, t1, t2, extended: bool = True, max_states=None):
    """A NielsenWord taking t1 to t2 (bidirectional BFS), or None if not connected."""
    a, b = _ids(t1), _ids(t2)
    if len(a) != len(b):
        raise SpecError("tuples have different lengths")
    if a == b:
        return NielsenWord([])
    moves = all_moves(len(a), extended)
    fwd = {a: None}
    bwd = {b: None}
    qf, qb = [a], [b]

    def path(parents, s):
        out = []
        while parents[s] is not None:
            s, m = parents[s]
            out.append(m)
        return out

    while qf and qb:
        forward = len(qf) <= len(qb)
        q, mine, other = (qf, fwd, bwd) if forward else (qb, bwd, fwd)
        nxt = []
        meet = None
        for s in q:
            for m in moves:
                t = _step(G, s, m)
                if t in mine:
                    continue
                mine[t] = (s, m)
                if t in other:
                    meet = t
                    break
                nxt.append(t)
            if meet is not None:
                break
        if meet is not None:
            head = path(fwd, meet)[::-1]
            tail = [inverse_move(m) for m in path(bwd, meet)]
            word = NielsenWord(head + tail)
            return _verified(G, a, word, lambda e: e == b)
        if forward:
            qf = nxt
        else:
            qb = nxt
        if max_states is not None and len(fwd) + len(bwd) > max_states:
            raise CapExceeded("search exceeded %d states" % max_states)
    return None


FAST_BFS_CAP = 4 * 10**6


def _fast_redundant(G, ids, moves, positions):
    n, k = G.order, len(ids)
    key = GenTuple(ids, n).key
    out = _kernels.bfs_redundant(G.table, G.inv, n, k, _encode(moves),
                                 np.asarray(positions, dtype=np.int64), key)
    if len(out) == 1 and out[0] == -1:
        return None
    path = []
    for c in out.tolist():
        if c >= 0:
            path.append(moves[c])
        else:
            code = -c - 2
            i, rest = divmod(code, 4 * k)
            j, same = divmod(rest, 4)
            path.append(NielsenMove("R", i + 1, j + 1, -1 if same else 1))
    return path


def to_redundant(G: FiniteGroupTable, t, positions=None, extended: bool = True, max_states=None):
    """Shortest word making some coordinate (among ``positions``) the identity.

    Returns None when no such tuple is reachable. Only moves among
    ``positions`` (0-based, default all) are used.
    """
    ids = _ids(t)
    positions = list(range(len(ids))) if positions is None else sorted(positions)
    e = G.identity
    inv = G.invl
    goal = lambda s: any(s[p] == e for p in positions)  # noqa: E731

    def finisher(s):
        # g_i * g_j^-1 = 1 iff g_i = g_j; g_i * g_j = 1 iff g_i = g_j^-1
        for i in positions:
            for j in positions:
                if i != j:
                    if s[i] == s[j]:
                        return NielsenMove("R", i + 1, j + 1, -1)
                    if s[i] == inv[s[j]]:
                        return NielsenMove("R", i + 1, j + 1, 1)
        return None

    moves = _moves_on(positions, extended)
    n, k = G.order, len(ids)
    if G.table is not None and n**k <= FAST_BFS_CAP and (max_states is None or max_states >= n**k):
        path = _fast_redundant(G, ids, moves, positions)
    else:
        path = _bfs(G, ids, moves, goal, finisher, max_states)
    if path is None:
        return None
    return _verified(G, ids, NielsenWord(path), goal)


def _cayley_path(G, gens, target):
    """Shortest list of (gen index, sign) whose product is ``target``."""
    e = G.identity
    if target == e:
        return []
    parent = {e: None}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for gi, g in enumerate(gens):
            for s in (1, -1):
                y = G.mul(x, g if s > 0 else G.invl[g])
                if y in parent:
                    continue
                parent[y] = (x, gi, s)
                if y == target:
                    out = []
                    while parent[y] is not None:
                        y, gi2, s2 = parent[y]
                        out.append((gi2, s2))
                    return out[::-1]
                queue.append(y)
    return None


def _rewrite_slot(G, cur, slot, sources, value):
    """R-moves turning coordinate ``slot`` into ``value`` using the ``sources`` slots."""
    gens = [cur[s] for s in sources]
    need = G.mul(G.invl[cur[slot]], value)
    steps = _cayley_path(G, gens, need)
    if steps is None:
        raise AssertionError("target is outside the subgroup of the source slots")  # pragma: no cover
    return [NielsenMove("R", slot + 1, sources[gi] + 1, s) for gi, s in steps]


def _permutation_word(cur, target):
    cur = list(cur)
    moves = []
    for pos in range(len(target)):
        if cur[pos] == target[pos]:
            continue
        j = next(j for j in range(pos + 1, len(cur)) if cur[j] == target[pos])
        moves.append(NielsenMove("P", pos + 1, j + 1))
        cur[pos], cur[j] = cur[j], cur[pos]
    return moves


def connect_to_canonical(G: FiniteGroupTable, t, gamma1: int, gamma2: int, max_states=None):
    """A word sending t to (1, ..., 1, gamma1, gamma2), or None if unreachable.

    Make one coordinate trivial and park it last; make a second one trivial
    inside the remaining prefix and park it second to last; build gamma1 and
    gamma2 in the two free slots from the prefix; finally cancel the prefix
    against gamma1, gamma2. If the prefix admits no second trivial coordinate
    (k - 1 = d(G)), the rest is found by bidirectional search.
    """
    ids = _ids(t)
    k = len(ids)
    e = G.identity
    if k < 2:
        raise SpecError("canonical target needs k >= 2")
    if not is_generating(G, (gamma1, gamma2)):
        raise SpecError("(gamma1, gamma2) does not generate %s" % G.label)
    target = (e,) * (k - 2) + (gamma1, gamma2)
    if sorted(ids) == sorted(target):
        return _verified(G, ids, NielsenWord(_permutation_word(ids, target)), lambda s: s == target)

    word: list[NielsenMove] = []
    cur = ids

    def push(moves):
        nonlocal cur
        for m in moves:
            cur = _step(G, cur, m)
        word.extend(moves)

    def park(candidates, slot):
        i = max(p for p in candidates if cur[p] == e)
        if i != slot:
            push([NielsenMove("P", i + 1, slot + 1)])

    done = False
    if k >= 3:
        w1 = to_redundant(G, cur, max_states=max_states)
        if w1 is None:
            return None
        push(list(w1))
        park(range(k), k - 1)
        prefix = list(range(k - 1))
        w2 = to_redundant(G, cur, positions=prefix, max_states=max_states) if k >= 4 else None
        if w2 is not None:
            push(list(w2))
            park(prefix, k - 2)
            body = list(range(k - 2))
            push(_rewrite_slot(G, cur, k - 2, body, gamma1))
            push(_rewrite_slot(G, cur, k - 1, body, gamma2))
            for slot in body:
                push(_rewrite_slot(G, cur, slot, [k - 2, k - 1], e))
            done = True
    if not done:
        rest = connect_path(G, cur, target, extended=True, max_states=max_states)
        if rest is None:
            return None
        push(list(rest))
    return _verified(G, ids, NielsenWord(word), lambda s: s == target)
