"""Write the tables behind figures 2-8 into a results directory.

    python scripts/reproduce_figures.py --out results --seeds 20
"""
import argparse
import time
from pathlib import Path

from uavrelay.config import load_config
from uavrelay.experiments import FIGURES, reproduce_figure


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--seeds", type=int, default=20, help="replications per point (seeds 0..n-1)")
    ap.add_argument("--config")
    ap.add_argument("--only", type=int, nargs="*", default=list(FIGURES))
    args = ap.parse_args()

    cfg = load_config(args.config)
    out = Path(args.out)
    for n in args.only:
        t0 = time.perf_counter()
        table = reproduce_figure(n, cfg, out / f"figure{n}.csv", range(args.seeds))
        print(f"figure {n}: {len(table.rows)} rows in {time.perf_counter() - t0:.1f}s -> {out / f'figure{n}.csv'}")
        print(table.to_csv())


if __name__ == "__main__":
    main()
