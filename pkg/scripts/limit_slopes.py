"""First-order slopes of the 2-fan coefficients as eps = delta -> 0.

The coefficients approach the 1D fan linearly; the slope sets how small
``eps`` must be for a given absolute accuracy.

    python3 scripts/limit_slopes.py --n 100
"""

import argparse

import numpy as np

from eulerfan import twofan
from eulerfan.riemann1d import solve_two_shock_fan
from eulerfan.sampling import random_two_shock

NAMES = ("mu0", "mu1", "mu2", "C1", "C2", "gamma1", "gamma2")


def slopes(data, gas, e=2.0**-30):
    fan = solve_two_shock_fan(data, gas)
    rdata, _ = twofan.shift_to_rest_frame(data, fan)
    rfan = twofan.rest_frame_fan(fan)
    mu0, mu1, mu2 = twofan.mu_speeds(rfan, rdata, e)
    C1, C2, g1, g2 = twofan.c_gamma(rfan, rdata, gas, e, e)
    errs = (mu0 - rfan.sigma_minus, mu1, mu2 - rfan.sigma_plus, C1, C2, g1, g2)
    return np.abs(np.array(errs, dtype=float)) / e


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--seed", type=int, default=4)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    s = np.array([slopes(*random_two_shock(rng)) for _ in range(args.n)])
    worst = s.max(axis=1)
    print(f"{'quantity':>8} {'median':>10} {'p90':>10} {'max':>10}")
    for i, name in enumerate(NAMES):
        col = s[:, i]
        print(f"{name:>8} {np.median(col):10.3g} {np.quantile(col, 0.9):10.3g} {col.max():10.3g}")
    print(f"eps needed for 1e-6 on every quantity: median {np.median(1e-6 / worst):.2g}, worst {np.min(1e-6 / worst):.2g}")
    print(f"fraction meeting 1e-6 at eps = 2**-24: {np.mean(worst * 2.0**-24 < 1e-6):.2f}")


if __name__ == "__main__":
    main()
