"""Component census of X_k / X~_k for a list of groups; one JSON line per run."""

import argparse
import json
import time

from prakit.groups import build_group
from prakit.pragraph import components


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("groups", nargs="+", help="group specs, e.g. psl2:5 alt:5")
    ap.add_argument("-k", type=int, nargs="+", default=[3])
    ap.add_argument("--plain", action="store_true", help="R/L moves only")
    a = ap.parse_args()
    for spec in a.groups:
        G = build_group(spec)
        for k in a.k:
            t0 = time.perf_counter()
            r = components(G, k, extended=not a.plain)
            print(json.dumps({"group": spec, "k": k, "graph": r.graph, "vertices": r.vertex_count,
                              "components": r.component_count, "sizes": r.sizes[:10],
                              "seconds": round(time.perf_counter() - t0, 3)}), flush=True)


if __name__ == "__main__":
    main()
