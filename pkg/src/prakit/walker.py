"""The product replacement random walk and its element sampler.

Randomness comes from numpy's PCG64 through ``SeedSequence``; move indices are
drawn in chunks and replayed by a compiled kernel, so a seed fixes the whole
trajectory bit for bit. Every step moves along an edge (no lazy holding).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy import stats

from . import _kernels
from .errors import SpecError
from .groups import FiniteGroupTable, is_generating, random_generating_tuple
from .pragraph import GenTuple, _encode, _step, all_moves

CHUNK = 1 << 16
START_ATTEMPTS = 10**4


@dataclass
class WalkConfig:
    k: int
    burn_in: int = 0
    seed: int | None = None
    policy: str = "plain"  # "plain": R/L only; "extended": adds P and I
    check_every: int = 0  # 0 disables the generation check

    def __post_init__(self):
        if self.k < 0 or self.burn_in < 0 or self.check_every < 0:
            raise SpecError("k, burn_in and check_every must be non-negative")
        if self.policy not in ("plain", "extended"):
            raise SpecError("policy must be 'plain' or 'extended'")

    @property
    def extended(self) -> bool:
        return self.policy == "extended"


@dataclass
class WalkStats:
    histogram: list[int]
    samples: int
    tv: float
    chi2: float
    p_value: float
    steps: int = 0

    def to_dict(self):
        return asdict(self)


class LeftGeneratingSet(AssertionError):
    """The walk produced a tuple that no longer generates."""


def make_rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def spawn(seed, n: int) -> list[np.random.Generator]:
    """Independent streams for parallel chains."""
    return [np.random.Generator(np.random.PCG64(s)) for s in np.random.SeedSequence(seed).spawn(n)]


def pra_step(G: FiniteGroupTable, t, rng, policy: str = "plain"):
    """One move drawn uniformly from the policy's move set."""
    ids = t.ids if isinstance(t, GenTuple) else tuple(t)
    moves = all_moves(len(ids), policy == "extended")
    if not moves:
        return t  # k = 1 under the plain policy: no edges
    out = _step(G, ids, moves[int(rng.integers(len(moves)))])
    return GenTuple(out, G.order) if isinstance(t, GenTuple) else out


def _fold_rows(G: FiniteGroupTable, traj: np.ndarray) -> np.ndarray:
    """Generation flag for every row of a trajectory, via the join automaton."""
    lat = G.lattice
    cur = np.full(len(traj), lat.trivial, dtype=np.int64)
    for col in traj.T:
        out = np.empty_like(cur)
        for s in np.unique(cur).tolist():
            sel = cur == s
            out[sel] = np.asarray(lat.row(s), dtype=np.int64)[col[sel]]
        cur = out
    sizes = np.array([len(e) for e in lat.elems], dtype=np.int64)
    return sizes[cur] == G.order


def _python_walk(G, state, idx, moves):
    ids = tuple(int(x) for x in state)
    for m in idx.tolist():
        ids = _step(G, ids, moves[m])
    state[:] = ids


def walk(G: FiniteGroupTable, start, steps: int, rng, policy: str = "plain", check_every: int = 0):
    """Run ``steps`` moves from ``start``; returns the final tuple.

    With ``check_every = c > 0`` the tuple is tested for generation after every
    c-th step (c = 1 checks every step) and ``LeftGeneratingSet`` is raised on
    failure.
    """
    state = np.array(start, dtype=np.int64)
    k = len(state)
    moves = all_moves(k, policy == "extended")
    if not moves or steps == 0:
        return tuple(state.tolist())
    enc = _encode(moves)
    done = 0
    while done < steps:
        c = min(CHUNK, steps - done)
        idx = rng.integers(0, len(moves), size=c)
        if G.table is None:
            _python_walk(G, state, idx, moves)
            if check_every and not is_generating(G, state.tolist()):
                raise LeftGeneratingSet("walk left V_k near step %d" % (done + c))
        else:
            record = check_every > 0
            traj = _kernels.walk(G.table, G.inv, enc, state, idx, record)
            if record:
                rows = np.arange(check_every - 1 - done % check_every, c, check_every)
                ok = _fold_rows(G, traj[rows])
                if not ok.all():
                    bad = int(rows[np.argmin(ok)]) + done + 1
                    raise LeftGeneratingSet("walk left V_k at step %d" % bad)
        done += c
    return tuple(state.tolist())


def start_tuple(G: FiniteGroupTable, k: int, rng, attempts: int = START_ATTEMPTS):
    t = random_generating_tuple(G, k, rng, attempts)
    if t is None:
        raise RuntimeError("no generating %d-tuple found in %d attempts" % (k, attempts))
    return tuple(t)


def sample_element(G: FiniteGroupTable, cfg: WalkConfig, rng=None, start=None) -> int:
    """Burn in from a (random) generating tuple, output one coordinate."""
    rng = make_rng(cfg.seed) if rng is None else rng
    t = start_tuple(G, cfg.k, rng) if start is None else tuple(start)
    t = walk(G, t, cfg.burn_in, rng, cfg.policy, cfg.check_every)
    return int(t[int(rng.integers(len(t)))])


def sample_elements(G: FiniteGroupTable, cfg: WalkConfig, count: int, rng=None, start=None,
                    thin: int = 1) -> np.ndarray:
    """``count`` outputs from a single chain.

    One burn-in, then ``thin`` steps between consecutive outputs; each output
    is a uniformly chosen coordinate of the current tuple.
    """
    if thin < 1:
        raise SpecError("thin must be >= 1")
    rng = make_rng(cfg.seed) if rng is None else rng
    t = start_tuple(G, cfg.k, rng) if start is None else tuple(start)
    t = walk(G, t, cfg.burn_in, rng, cfg.policy, cfg.check_every)
    state = np.array(t, dtype=np.int64)
    moves = all_moves(cfg.k, cfg.extended)
    enc = _encode(moves)
    out = np.empty(count, dtype=np.int64)
    per = max(1, CHUNK // thin)
    done = 0
    while done < count:
        c = min(per, count - done)
        if not moves:
            out[done:done + c] = state[rng.integers(0, cfg.k, size=c)]
            done += c
            continue
        idx = rng.integers(0, len(moves), size=c * thin)
        coords = rng.integers(0, cfg.k, size=c)
        if G.table is None:
            for s in range(c):
                _python_walk(G, state, idx[s * thin:(s + 1) * thin], moves)
                out[done + s] = state[coords[s]]
        else:
            out[done:done + c] = _kernels.walk_sample(G.table, G.inv, enc, state, idx, thin, coords)
        done += c
    return out


def uniformity_report(samples, G, steps: int = 0) -> WalkStats:
    """Histogram, TV distance to uniform and a chi-square test.

    ``G`` is the group or just its order.
    """
    n = G if isinstance(G, int) else G.order
    samples = np.asarray(samples, dtype=np.int64)
    if samples.size == 0:
        raise SpecError("no samples")
    hist = np.bincount(samples, minlength=n)
    if len(hist) > n:
        raise SpecError("sample id out of range")
    N = int(samples.size)
    tv = 0.5 * float(np.abs(hist / N - 1.0 / n).sum())
    expected = N / n
    chi2 = float(((hist - expected) ** 2 / expected).sum())
    p = float(stats.chi2.sf(chi2, n - 1)) if n > 1 else 1.0
    return WalkStats(hist.tolist(), N, tv, chi2, p, steps)
