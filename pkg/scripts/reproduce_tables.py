"""Regenerate every table and figure data set into an output directory.

    python scripts/reproduce_tables.py --out results --threads 4

Full budgets (1000 metric / 10000 OC replications) take a few minutes per
OC table on one core; pass --quick for a smoke run.
"""

import argparse
import time
from pathlib import Path

from burnin.harness import compare_to_published, reproduce_table
from burnin.parallel import default_workers


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="results")
    ap.add_argument("--threads", type=int, default=default_workers())
    ap.add_argument("--seed", type=int, default=20251018)
    ap.add_argument("--quick", action="store_true", help="100 metric / 1000 OC replications")
    ap.add_argument("--ids", default="fig1,fig2,t1,t2,t3,t4")
    a = ap.parse_args()

    out = Path(a.out)
    out.mkdir(parents=True, exist_ok=True)
    ov = {"seed": a.seed, "workers": a.threads}
    if a.quick:
        ov.update(n_sim_metrics=100, n_sim_oc=1000)
    for tid in a.ids.split(","):
        t0 = time.time()
        art = reproduce_table(tid, ov)
        (out / f"{tid}.csv").write_bytes(art.csv_bytes)
        (out / f"{tid}.json").write_bytes(art.json_bytes)
        diff = compare_to_published(art)
        (out / f"{tid}_vs_published.txt").write_text("\n".join(diff) + "\n")
        print(f"{tid}: {len(art.rows)} rows in {time.time() - t0:.1f}s")
        if tid not in ("fig1", "fig2"):
            print("\n".join(diff))


if __name__ == "__main__":
    main()
