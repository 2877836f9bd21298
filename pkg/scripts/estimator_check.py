"""Type-I error at b = 2 for the ERADE-targeted designs under both plug-in
estimators (raw MLE vs (S + 1/2)/(n + 1)).

The pathological type-I inflation at the minimal burn-in only appears when
early estimates can hit 0 or 1, i.e. under the raw MLE.
"""

import argparse

from burnin.designs import make_design
from burnin.harness import PROFILES, run_oc


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nsim", type=int, default=10000)
    a = ap.parse_args()
    for name, factory in PROFILES.items():
        prof = factory(n_sim_oc=a.nsim)
        for key in ("n1", "r1"):
            for est in ("mle", "half"):
                oc = run_oc(prof, make_design(key, estimator=est), "MIN", which="null")
                print(f"{name:8s} {key} {est:4s} type1_z1 = {100 * oc.type1_z1:6.2f}%")


if __name__ == "__main__":
    main()
