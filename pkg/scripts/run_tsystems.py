"""Components vs T-systems for each (group, k), with the direct orbit cross-check."""

import argparse
import json
import time
from dataclasses import asdict

from prakit.groups import build_group
from prakit.tsystems import check_component_tsystem_map


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("groups", nargs="+")
    ap.add_argument("--kmin", type=int, default=2)
    ap.add_argument("--kmax", type=int, default=4)
    a = ap.parse_args()
    for spec in a.groups:
        G = build_group(spec)
        for k in range(a.kmin, a.kmax + 1):
            t0 = time.perf_counter()
            v = check_component_tsystem_map(G, k)
            row = asdict(v)
            row["seconds"] = round(time.perf_counter() - t0, 3)
            print(json.dumps(row), flush=True)


if __name__ == "__main__":
    main()
