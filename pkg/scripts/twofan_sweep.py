"""Run the 2-fan search on random two-shock data and tabulate where it lands.

    python3 scripts/twofan_sweep.py --n 200 --seed 0 --out sweep.csv
"""

import argparse
import csv
import sys

import numpy as np

from eulerfan import twofan
from eulerfan.errors import FanError
from eulerfan.sampling import SamplerConfig, random_two_shock


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--c-v-min", type=float, default=0.6)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    cfg = SamplerConfig(c_v_range=(args.c_v_min, 3.0))
    fields = ["rho_minus", "rho_plus", "p_minus", "p_plus", "jump", "c_v", "status", "j", "k", "eps_over_max", "min_margin", "passed"]
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for _ in range(args.n):
        data, gas = random_two_shock(rng, cfg)
        row = {
            "rho_minus": data.left.rho,
            "rho_plus": data.right.rho,
            "p_minus": data.left.p,
            "p_plus": data.right.p,
            "jump": data.right.v2 - data.left.v2,
            "c_v": gas.c_v,
        }
        try:
            res = twofan.search(data, gas)
            row.update(
                status="ok",
                j=res.j,
                k=res.k,
                eps_over_max=res.eps / res.eps_max,
                min_margin=min(res.margins.values()),
                passed=res.report.passed,
            )
        except FanError as exc:
            row.update(status=exc.code)
        w.writerow(row)


if __name__ == "__main__":
    main()
