"""TV distance to uniform of the walker's output as the burn-in grows."""

import argparse
import json

from prakit.groups import build_group
from prakit.walker import WalkConfig, sample_elements, uniformity_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("group")
    ap.add_argument("k", type=int)
    ap.add_argument("--burnins", type=int, nargs="+", default=[0, 10, 100, 1000, 10000])
    ap.add_argument("--samples", type=int, default=10**5)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--policy", choices=["plain", "extended"], default="plain")
    a = ap.parse_args()
    G = build_group(a.group)
    for b in a.burnins:
        cfg = WalkConfig(a.k, burn_in=b, seed=a.seed, policy=a.policy)
        r = uniformity_report(sample_elements(G, cfg, a.samples), G)
        print(json.dumps({"group": a.group, "k": a.k, "burn_in": b, "samples": r.samples,
                          "tv": r.tv, "chi2": r.chi2}), flush=True)


if __name__ == "__main__":
    main()
