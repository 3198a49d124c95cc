"""Command line harness: one JSON report per run on stdout.

Exit codes: 0 ok, 1 usage or parse error, 2 resource cap, 3 negative verdict
(not connected, no redundant tuple reachable, word fails to replay, ...).

Tuple literals are element literals separated by top-level commas or
semicolons, e.g. ``"(1 2 3),(1 2)"`` for sym:n, ``"(1,0),(0,1)"`` for ab:5,5,
``"[[1,1],[0,1]];[[0,1],[4,0]]"`` for 2x2 matrix groups.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .errors import CapExceeded, SpecError
from .groups import (
    AbelianGroup,
    automorphism_group,
    build_group,
    is_generating,
    min_generators,
    parse_spec,
)
from .pragraph import (
    NielsenWord,
    apply_word,
    components,
    connect_path,
    connect_to_canonical,
    to_redundant,
)

SCHEMA_VERSION = 1
THREADS_ENV = "PRAKIT_THREADS"

OK, USAGE, CAP, NEGATIVE = 0, 1, 2, 3


@dataclass
class RunReport:
    command: str
    group: str | None
    params: dict
    results: dict
    seed: int | None = None
    wall_time: float = 0.0
    version: str = __version__
    schema_version: int = SCHEMA_VERSION
    exit_code: int = field(default=OK, repr=False)

    def to_json(self) -> str:
        d = asdict(self)
        d.pop("exit_code")
        return json.dumps(d, indent=2)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, "%s: error: %s\n" % (self.prog, message))


def split_top_level(text: str) -> list[str]:
    """Split at commas/semicolons that are not inside () or []."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise SpecError("unbalanced brackets in %r" % text)
        if ch in ",;" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise SpecError("unbalanced brackets in %r" % text)
    parts.append("".join(cur))
    parts = [p.strip() for p in parts]
    if any(not p for p in parts):
        raise SpecError("empty entry in tuple literal %r" % text)
    return parts


def parse_tuple(G, text: str) -> tuple[int, ...]:
    return tuple(G.parse_element(p) for p in split_top_level(text))


def fmt_tuple(G, t) -> list[str]:
    return [G.format_element(int(g)) for g in t]


def _word_payload(G, start, word: NielsenWord | None) -> dict:
    if word is None:
        return {"found": False, "word": None, "length": None, "end": None}
    end = apply_word(G, start, word)
    return {"found": True, "word": [str(m) for m in word], "length": len(word), "end": fmt_tuple(G, end)}


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _histogram(values):
    vals, counts = np.unique(np.asarray(values, dtype=np.int64), return_counts=True)
    return list(zip(vals.tolist(), counts.tolist()))


# --- commands --------------------------------------------------------------------

def cmd_components(a) -> RunReport:
    G = build_group(a.group)
    r = components(G, a.k, extended=a.extended)
    if a.out:
        _write_csv(a.out, ["size", "count"], _histogram(r.sizes))
    res = {
        "graph": r.graph,
        "vertex_count": r.vertex_count,
        "component_count": r.component_count,
        "connected": r.connected,
        "sizes": r.sizes,
        "representatives": [fmt_tuple(G, t) for t in r.representatives],
    }
    return RunReport("components", G.label, {"k": a.k, "extended": a.extended}, res)


def cmd_tsystems(a) -> RunReport:
    from .tsystems import check_component_tsystem_map, tsystems

    G = build_group(a.group)
    r = tsystems(G, a.k)
    res = {
        "component_count": r.component_count,
        "tsystem_count": r.tsystem_count,
        "orbit_sizes": r.orbit_sizes,
        "representatives": [fmt_tuple(G, t) for t in r.representatives],
    }
    code = OK
    if a.check:
        v = check_component_tsystem_map(G, a.k)
        res["check"] = {
            "d": v.d,
            "well_defined": v.well_defined,
            "surjective": v.surjective,
            "biconditional_applies": v.biconditional_applies,
            "biconditional_holds": v.biconditional_holds,
            "consistent": v.consistent,
            "notes": v.notes,
        }
        code = OK if v.consistent else NEGATIVE
    if a.out:
        _write_csv(a.out, ["size", "count"], _histogram(r.orbit_sizes))
    return RunReport("tsystems", G.label, {"k": a.k, "check": a.check}, res, exit_code=code)


def cmd_walk(a) -> RunReport:
    from .walker import WalkConfig, make_rng, sample_elements, uniformity_report

    G = build_group(a.group)
    seed = a.seed if a.seed is not None else int(np.random.SeedSequence().entropy % (1 << 63))
    cfg = WalkConfig(a.k, a.burnin, seed, a.policy, a.check_every)
    rng = make_rng(seed)
    start = parse_tuple(G, a.start) if a.start else None
    if start is not None and (len(start) != a.k or not is_generating(G, start)):
        raise SpecError("start tuple must be a generating %d-tuple" % a.k)
    samples = sample_elements(G, cfg, a.samples, rng=rng, start=start, thin=a.thin)
    stats = uniformity_report(samples, G, steps=a.burnin + a.samples * a.thin)
    if a.dump:
        with open(a.dump, "w") as fh:
            fh.write("\n".join(map(str, samples.tolist())) + "\n")
    params = {"k": a.k, "burn_in": a.burnin, "samples": a.samples, "thin": a.thin,
              "policy": a.policy, "check_every": a.check_every}
    return RunReport("walk", G.label, params, stats.to_dict(), seed=seed)


def cmd_connect(a) -> RunReport:
    G = build_group(a.group)
    t1, t2 = parse_tuple(G, a.t1), parse_tuple(G, a.t2)
    for t in (t1, t2):
        if len(t) != a.k:
            raise SpecError("tuple %s has length %d, expected %d" % (fmt_tuple(G, t), len(t), a.k))
    word = connect_path(G, t1, t2, extended=not a.plain, max_states=a.max_states)
    res = _word_payload(G, t1, word)
    res["connected"] = word is not None
    params = {"k": a.k, "t1": fmt_tuple(G, t1), "t2": fmt_tuple(G, t2), "extended": not a.plain}
    return RunReport("connect", G.label, params, res, exit_code=OK if word is not None else NEGATIVE)


def cmd_redundant(a) -> RunReport:
    G = build_group(a.group)
    t = parse_tuple(G, a.tuple)
    word = to_redundant(G, t, extended=not a.plain, max_states=a.max_states)
    res = _word_payload(G, t, word)
    params = {"tuple": fmt_tuple(G, t), "extended": not a.plain}
    return RunReport("redundant", G.label, params, res, exit_code=OK if word is not None else NEGATIVE)


def cmd_canonical(a) -> RunReport:
    G = build_group(a.group)
    t = parse_tuple(G, a.tuple)
    gam = parse_tuple(G, a.gammas)
    if len(gam) != 2:
        raise SpecError("--gammas needs exactly two elements")
    word = connect_to_canonical(G, t, gam[0], gam[1], max_states=a.max_states)
    res = _word_payload(G, t, word)
    params = {"tuple": fmt_tuple(G, t), "gammas": fmt_tuple(G, gam)}
    return RunReport("canonical", G.label, params, res, exit_code=OK if word is not None else NEGATIVE)


def cmd_gaschuetz(a) -> RunReport:
    from .lemmas import gaschuetz_exponents, verify_exponents

    kind, args = parse_spec(a.group)
    if kind != "ab":
        raise SpecError("gaschuetz needs an abelian spec ab:d1,...")
    K = AbelianGroup(tuple(args))
    G = build_group(a.group)
    A = G.elements[G.parse_element(a.a)]
    bs = [G.elements[x] for x in parse_tuple(G, a.bs)]
    ms = gaschuetz_exponents(K, A, bs)
    res = {"m": ms, "verified": verify_exponents(K, A, bs, ms)}
    params = {"a": G.format_element(G.index[A]), "b": [G.format_element(G.index[b]) for b in bs]}
    return RunReport("gaschuetz", G.label, params, res)


def load_matrices(path):
    """JSON: {"p": 5, "e": 1, "matrices": [[[...], ...], ...]} with raw entries."""
    from .finfield import make_field
    from .lemmas import RepMatrix

    with open(path) as fh:
        doc = json.load(fh)
    try:
        F = make_field(int(doc["p"]), int(doc.get("e", 1)))
        return [RepMatrix.of(F, m) for m in doc["matrices"]]
    except (KeyError, TypeError) as exc:
        raise SpecError("bad matrix file %s: %s" % (path, exc)) from None


def cmd_greedy(a) -> RunReport:
    from .lemmas import greedy_line_subset, greedy_subspace_subset

    T = load_matrices(a.file)
    fn = greedy_subspace_subset if a.subspace else greedy_line_subset
    r = fn(T, a.n)
    res = {"indices": r.indices, "size": len(r.indices), "w_path": r.w_path, "w_target": r.w_target}
    return RunReport("greedy", None, {"file": a.file, "n": a.n, "subspace": a.subspace}, res)


def cmd_group_info(a) -> RunReport:
    G = build_group(a.group)
    res = {
        "order": G.order,
        "kind": G.kind,
        "identity": G.format_element(G.identity),
        "abelian": bool(G.abelian is not None or (G.table is not None and np.array_equal(G.table, G.table.T))),
        "d": min_generators(G),
        "element_orders": dict((str(k), v) for k, v in _histogram(G.element_orders)),
        "class_count": int((1.0 / G.class_sizes).sum().round()) if G.table is not None else None,
    }
    if a.aut:
        res["aut_order"] = len(automorphism_group(G))
    return RunReport("group-info", G.label, {"aut": a.aut}, res)


def cmd_verify(a) -> RunReport:
    G = build_group(a.group)
    t = parse_tuple(G, a.tuple)
    text = a.word
    if a.word_file:
        with open(a.word_file) as fh:
            text = fh.read()
    if text is None:
        raise SpecError("give a word or --word-file")
    if text.strip().startswith("["):
        text = "\n".join(json.loads(text))
    word = NielsenWord.parse(text)
    end = apply_word(G, t, word)
    ok = is_generating(G, end) == is_generating(G, t)
    res = {"end": fmt_tuple(G, end), "length": len(word), "generating": is_generating(G, end)}
    if a.expect:
        target = parse_tuple(G, a.expect)
        res["matches"] = tuple(end) == tuple(target)
        ok = ok and res["matches"]
    res["replays"] = ok
    return RunReport("verify", G.label, {"tuple": fmt_tuple(G, t)}, res, exit_code=OK if ok else NEGATIVE)


# --- wiring ----------------------------------------------------------------------

COMMANDS = {
    "components": cmd_components,
    "tsystems": cmd_tsystems,
    "walk": cmd_walk,
    "connect": cmd_connect,
    "redundant": cmd_redundant,
    "canonical": cmd_canonical,
    "gaschuetz": cmd_gaschuetz,
    "greedy": cmd_greedy,
    "group-info": cmd_group_info,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="prakit", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--config", help="JSON file of default options (flags win)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("components", help="component census of X_k or its extension")
    s.add_argument("group")
    s.add_argument("k", type=int)
    s.add_argument("--extended", action="store_true")
    s.add_argument("--out", help="CSV of the component-size histogram")

    s = sub.add_parser("tsystems", help="T_k-system census")
    s.add_argument("group")
    s.add_argument("k", type=int)
    s.add_argument("--check", action="store_true", help="cross-check against a direct orbit census")
    s.add_argument("--out")

    s = sub.add_parser("walk", help="product replacement sampler")
    s.add_argument("group")
    s.add_argument("k", type=int)
    s.add_argument("--burnin", type=int, default=1000)
    s.add_argument("--samples", type=int, default=10000)
    s.add_argument("--seed", type=int)
    s.add_argument("--thin", type=int, default=1)
    s.add_argument("--policy", choices=["plain", "extended"], default="plain")
    s.add_argument("--check-every", type=int, default=0)
    s.add_argument("--start", help="start tuple literal (default: random generating tuple)")
    s.add_argument("--dump", help="write raw samples, one id per line")

    s = sub.add_parser("connect", help="word joining two tuples")
    s.add_argument("group")
    s.add_argument("k", type=int)
    s.add_argument("t1")
    s.add_argument("t2")
    s.add_argument("--plain", action="store_true", help="R/L moves only")
    s.add_argument("--max-states", type=int)

    s = sub.add_parser("redundant", help="shortest word to a tuple with an identity entry")
    s.add_argument("group")
    s.add_argument("tuple")
    s.add_argument("--plain", action="store_true")
    s.add_argument("--max-states", type=int)

    s = sub.add_parser("canonical", help="word to (1,...,1,g1,g2)")
    s.add_argument("group")
    s.add_argument("tuple")
    s.add_argument("--gammas", required=True, help="two elements, e.g. '(1 2 3),(3 4 5)'")
    s.add_argument("--max-states", type=int)

    s = sub.add_parser("gaschuetz", help="exponents m_i with <m_i a + b_i> = <a, b>")
    s.add_argument("group", help="abelian spec ab:d1,...")
    s.add_argument("a")
    s.add_argument("bs", help="b_1;...;b_n")

    s = sub.add_parser("greedy", help="greedy invariant line/subspace subset")
    s.add_argument("file", help="JSON matrix file")
    s.add_argument("n", type=int)
    s.add_argument("--subspace", action="store_true")

    s = sub.add_parser("group-info", help="basic invariants of a group")
    s.add_argument("group")
    s.add_argument("--aut", action="store_true", help="also count automorphisms")

    s = sub.add_parser("verify", help="replay a Nielsen word")
    s.add_argument("group")
    s.add_argument("tuple")
    s.add_argument("word", nargs="?", help="moves in wire format, or a JSON list of moves")
    s.add_argument("--word-file")
    s.add_argument("--expect", help="tuple the word must reach")
    return p


def _apply_config(parser, argv, args):
    with open(args.config) as fh:
        cfg = json.load(fh)
    defaults = {k.replace("-", "_"): v for k, v in cfg.items() if not isinstance(v, dict)}
    defaults.update({k.replace("-", "_"): v for k, v in cfg.get(args.command, {}).items()})
    sub = parser._subparsers._group_actions[0].choices[args.command]
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def _threads():
    n = os.environ.get(THREADS_ENV)
    if not n:
        return None
    import numba

    n = max(1, min(int(n), numba.config.NUMBA_NUM_THREADS))
    numba.set_num_threads(n)
    return n


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        if args.config:
            args = _apply_config(parser, argv, args)
        threads = _threads()
        report = COMMANDS[args.command](args)
    except SpecError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return USAGE
    except CapExceeded as exc:
        print("cap exceeded: %s" % exc, file=sys.stderr)
        return CAP
    except (OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return USAGE
    if threads is not None:
        report.params["threads"] = threads
    report.wall_time = round(time.perf_counter() - t0, 6)
    print(report.to_json())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
