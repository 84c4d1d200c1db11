#!/usr/bin/env python3
"""Entropy-versus-density curves for all scenarios and a few input states.

Writes one CSV per scenario into --outdir (default: current directory)
with the numeric and closed-form entropies of the vacuum and
representative excited inputs, and prints the worst gap between them.
"""

import argparse
import pathlib

from cosmopair.bogoliubov import Scenario
from cosmopair.cli import occupation_to_state_token
from cosmopair.entanglement import spin_spinless_relation, sweep

STATES = {
    Scenario.CHARGE_ONLY: (0b0000, 0b0001, 0b0101, 0b0110, 0b1111),
    Scenario.CHARGE_AND_ANGULAR_MOMENTUM: (0b0000, 0b0001, 0b0101, 0b0110, 0b1111),
    Scenario.SPINLESS: (0b00, 0b01, 0b11),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=81)
    parser.add_argument("--lambda", dest="lam", type=float, default=0.5)
    parser.add_argument("--outdir", default=".")
    args = parser.parse_args()

    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    worst = 0.0
    for scenario, states in STATES.items():
        rows = ["state,n,lambda,S_numeric,S_closed,discrepancy"]
        grid = [k * scenario.n_max / (args.points - 1) for k in range(args.points)]
        for occupation in states:
            token = occupation_to_state_token(occupation, scenario)
            results = sweep(scenario, occupation, grid, [args.lam])
            for r in results:
                rows.append(f"{token},{r.n:.15g},{r.lam:.15g},{r.s_numeric:.15g},"
                            f"{r.s_closed:.15g},{r.discrepancy:.3e}")
                worst = max(worst, r.discrepancy)
        path = outdir / f"entropy_{scenario.value.replace('-', '_')}.csv"
        path.write_text("\n".join(rows) + "\n")
        print(f"wrote {path} ({len(rows) - 1} rows)")
    scaling = max(spin_spinless_relation(0.05 * k)[2] for k in range(81))
    print(f"worst numeric vs closed-form gap: {worst:.3e}")
    print(f"worst spinful = 2 x spinless residual: {scaling:.3e}")


if __name__ == "__main__":
    main()
