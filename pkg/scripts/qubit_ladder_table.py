#!/usr/bin/env python3
"""Tabulate the maximal end-of-chain probability of the two-qubit ladder.

Reproduces the monotone growth of the Hardy-type probability with ladder
length and the degree of entanglement at which each maximum occurs.
"""

import argparse

from spin1ladder.qubit import optimize, results_csv


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-K", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--restarts", type=int, default=100)
    args = parser.parse_args()

    results = [optimize(k, seed=args.seed, restarts=args.restarts)
               for k in range(1, args.max_K + 1)]
    print(results_csv(results, restarts=args.restarts), end="")


if __name__ == "__main__":
    main()
