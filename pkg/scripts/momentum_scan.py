#!/usr/bin/env python3
"""Scan the mode-equation pipeline over a momentum grid.

For a smooth-step expansion profile, prints per-momentum mixing
amplitudes, created density, vacuum entropy against its closed form,
and the normalization / self-convergence diagnostics.
"""

import argparse
import math

from cosmopair.dynamics import ScaleFactorProfile, momentum_point


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--epsilon", type=float, default=1.0)
    parser.add_argument("--rho", type=float, default=1.0)
    parser.add_argument("--mass", type=float, default=1.0)
    parser.add_argument("--pmin", type=float, default=0.1)
    parser.add_argument("--pmax", type=float, default=10.0)
    parser.add_argument("--points", type=int, default=20)
    parser.add_argument("--tol", type=float, default=1e-9)
    args = parser.parse_args()

    profile = ScaleFactorProfile.smooth_step(args.epsilon, args.rho)
    ratio = (args.pmax / args.pmin) ** (1.0 / (args.points - 1))
    direction = (1.0 / math.sqrt(3.0),) * 3
    print(f"{'p':>9} {'A':>12} {'n(p)':>12} {'S_num':>12} {'S_closed':>12} "
          f"{'norm_res':>10} {'self_conv':>10}")
    for k in range(args.points):
        p = args.pmin * ratio ** k
        point = momentum_point(tuple(p * c for c in direction), args.mass,
                               profile, tol=args.tol)
        print(f"{p:9.4f} {point.a:12.8f} {point.n_created:12.4e} "
              f"{point.s_numeric:12.4e} {point.s_closed:12.4e} "
              f"{point.normalization_residual:10.2e} {point.self_convergence:10.2e}")


if __name__ == "__main__":
    main()
