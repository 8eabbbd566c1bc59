"""Velocity-jump thresholds of the 1-fan construction versus the middle density.

    python3 scripts/threshold_table.py --c-v 1.0
"""

import argparse

import numpy as np

from eulerfan import onefan
from eulerfan.gas import GasModel, RiemannData

CASES = {
    "rho_- < rho_+": RiemannData.from_values(1.0, 0.0, 1.0, 2.0, 0.0, 1.5),
    "rho_- > rho_+": RiemannData.from_values(2.0, 0.0, 1.0, 1.0, 0.0, 1.5),
    "rho_- = rho_+": RiemannData.from_values(1.0, 0.0, 2.0, 1.0, 0.0, 1.0),
}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--c-v", type=float, default=1.0)
    ap.add_argument("--n", type=int, default=8)
    args = ap.parse_args()
    gas = GasModel(args.c_v)
    for name, tpl in CASES.items():
        base = onefan.min_rho1(gas, tpl)
        print(f"{name}  min rho1 = {base:.6g}  (fixed {onefan.fixed_side(tpl)} velocity)")
        print(f"  {'rho1/min':>9} {'u_bar':>12} {'U':>12} {'binding margin':>16}")
        for rho1, res in onefan.threshold_scan(tpl, gas, np.geomspace(1.05, 4.0, args.n)):
            if res is None:
                print(f"  {rho1 / base:9.3f} {'exhausted':>12}")
                continue
            bind = min(res.margins_at_u_bar, key=res.margins_at_u_bar.get)
            print(f"  {rho1 / base:9.3f} {res.u_bar:12.6g} {res.U:12.6g} {bind:>16}")


if __name__ == "__main__":
    main()
