#!/usr/bin/env python3
"""Convergence study: reconstruction error versus sample count.

Runs a seeded smooth planar motion and a tilted rigid spatial rotation at a
ladder of sample counts and prints the formula-versus-oracle error together
with the ratio to the previous row (second-order quadrature gives ratios
near 4 when the count doubles).
"""

import argparse

import numpy as np

from shapesphere import (
    derive_masses,
    equilateral_configuration,
    generate,
    reconstruct_q1,
    reconstruct_spatial,
)


def planar_error(n, seed):
    masses = derive_masses(1, 2, 3)
    motion = generate("random_smooth", masses=masses, seed=seed, duration=3.0, samples=n)
    report = reconstruct_q1(motion, include_oracle=True)
    return abs(report.total - report.oracle)


def spatial_error(n):
    masses = derive_masses(1, 1, 1)
    config = np.concatenate(
        [equilateral_configuration(masses).as_array(), np.zeros((3, 1))], axis=1
    )
    motion = generate(
        "rigid_rotation",
        masses=masses,
        config=config,
        rate=0.8,
        duration=2.0,
        samples=n,
        axis=np.array([0.3, 0.1, 1.0]),
    )
    report = reconstruct_spatial(motion, e=np.array([0.0, 0.0, 1.0]), include_oracle=True)
    return abs(report.total - report.oracle)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=11)
    args = parser.parse_args()

    counts = [625, 1250, 2500, 5000, 10000, 20000]
    print(f"{'n':>7s} {'planar error':>14s} {'ratio':>7s} {'spatial error':>14s}")
    previous = None
    for n in counts:
        err = planar_error(n, args.seed)
        ratio = "" if previous is None else f"{previous / err:7.2f}"
        print(f"{n:7d} {err:14.3e} {ratio:>7s} {spatial_error(n):14.3e}")
        previous = err


if __name__ == "__main__":
    main()
