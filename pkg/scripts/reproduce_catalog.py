#!/usr/bin/env python3
"""Print the regression table for the fixed state catalog.

For every named state: M and its two sides, the partition measure G where
the combinatorial search is affordable, and the detection verdict. G on the
4x4 states enumerates tens of millions of groupings and takes around a
minute each; pass --full to include them.
"""

import argparse

from ncorr import (
    bell,
    classify,
    partition_measure,
    phi_p,
    truncation_measure,
    varsigma,
    sigma,
    sigma_prime,
    sigma_dprime,
    tau,
    zeta,
    zeta_prime,
    xi,
    xi_prime,
)

CATALOG = [
    ("varsigma", varsigma),
    ("sigma", sigma),
    ("sigma_prime", sigma_prime),
    ("sigma_dprime", sigma_dprime),
    ("tau", tau),
    ("zeta", zeta),
    ("zeta_prime", zeta_prime),
    ("xi", xi),
    ("xi_prime", xi_prime),
    ("bell(2)", lambda: bell(2)),
    ("bell(4)", lambda: bell(4)),
    ("phi_p(0.25)", lambda: phi_p(0.25)),
]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--full", action="store_true", help="also compute G on the 4x4 states (slow)")
    args = ap.parse_args()

    g_budget = 16 if args.full else 9
    header = f"{'state':<14} {'dims':<6} {'M':>10} {'M_A':>10} {'M_B':>10} {'G':>10}  verdict (decided by)"
    print(header)
    print("-" * len(header))
    for name, builder in CATALOG:
        state = builder()
        report = truncation_measure(state)
        dims = f"{state.dims.dA}x{state.dims.dB}"
        if state.dims.total <= g_budget:
            g_text = f"{partition_measure(state):10.6f}"
        else:
            g_text = f"{'-':>10}"
        verdict = classify(state)
        decided = verdict.decided_by or "none"
        print(
            f"{name:<14} {dims:<6} {report.value:10.6f} {report.side_a:10.6f} "
            f"{report.side_b:10.6f} {g_text}  {verdict.verdict} ({decided})"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
