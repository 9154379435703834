"""Repeat the bootstrap consistency and block-variance diagnostics over many seeds.

    python scripts/consistency_study.py --seeds 20 -o mc.json

Consistency: PAR(1), n in {300, 1200, 4800}, b = ceil(n**0.4), B = R = 1000.
Block variance: envelope 1 + 0.5 cos(2 pi t / 3) on iid N(0, 1) noise, n = 500,
b in {9, 51, 249}, R = 2000, sigma^2 = M(f^2) = 1.125.
"""

import argparse
import json
import time

import numpy as np

from cyclboot.apfunc import TWO_PI, APFunction
from cyclboot.diagnostics import block_variance_profile, mbb_consistency_check
from cyclboot.sim import ModulatedModel, Par1Model

N_LIST = (300, 1200, 4800)
BLOCKS = (9, 51, 249)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=20)
    ap.add_argument("--first-seed", type=int, default=0)
    ap.add_argument("--output", "-o")
    args = ap.parse_args()

    env = APFunction.cosine(TWO_PI / 3, 0.5, 1.0)
    sigma2 = (env * env).mean.real
    model = ModulatedModel(env)
    out = {"consistency": [], "blockvar": []}
    t0 = time.time()
    for s in range(args.first_seed, args.first_seed + args.seeds):
        rep = mbb_consistency_check(Par1Model(), list(N_LIST), q=0.4, B=1000, R=1000, seed=s)
        devs = [block_variance_profile(model, 500, b, 2000, seed=s, sigma2=sigma2).sup_dev
                for b in BLOCKS]
        out["consistency"].append(rep.distances)
        out["blockvar"].append(devs)
        print(f"seed {s}: ks {np.round(rep.distances, 3).tolist()}  "
              f"sup_dev {np.round(devs, 3).tolist()}  ({time.time() - t0:.0f}s)", flush=True)
    ks, dev = np.array(out["consistency"]), np.array(out["blockvar"])
    print("ks mean by n", np.round(ks.mean(0), 4).tolist())
    print("sup_dev mean by b", np.round(dev.mean(0), 4).tolist())
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(out, fh, indent=1)


if __name__ == "__main__":
    main()
