#!/usr/bin/env python3
"""Sweep the feasibility window and ladder start probability over K.

Prints, for each ladder length, the window endpoints, the analytic
maximum of the exclusion constraint, and the largest start probability
attainable inside the window.
"""

import argparse
import math

from spin1ladder.ladder import phi_window


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-K", type=int, default=11)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"{'K':>3} {'phi_min':>12} {'phi_max':>12} {'width':>10} "
          f"{'max_rhs':>12} {'max_start_p':>12}")
    for k in range(1, args.max_K + 1):
        w = phi_window(k, seed=args.seed)
        width = w.phi_max_deg - w.phi_min_deg
        # the start probability cos^2(phi)/3 is largest at the window edge
        start = math.cos(math.radians(w.phi_min_deg)) ** 2 / 3.0
        print(f"{k:>3} {w.phi_min_deg:>12.6f} {w.phi_max_deg:>12.6f} "
              f"{width:>10.6f} {w.maximum:>12.9f} {start:>12.9f}")


if __name__ == "__main__":
    main()
