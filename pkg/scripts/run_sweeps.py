"""Run every law sweep and print a one-line summary per suite.

Usage: python3 scripts/run_sweeps.py [--max-time 3] [--max-states 3]
"""

import argparse
import time
from dataclasses import dataclass

from catdyn import lawsuite


@dataclass(frozen=True)
class SweepConfig:
    max_time: int = 3
    max_states: int = 3


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-time", type=int, default=SweepConfig.max_time)
    parser.add_argument("--max-states", type=int, default=SweepConfig.max_states)
    args = parser.parse_args()
    cfg = SweepConfig(args.max_time, args.max_states)

    t0 = time.perf_counter()
    systems = lawsuite.cached_sweep(cfg.max_time, cfg.max_states)
    print(f"enumerated {len(systems)} flows in {time.perf_counter() - t0:.2f}s")

    failed = False
    suites = [lawsuite.backend_law_suite, lawsuite.representation_suite, lawsuite.shift_transfer_suite,
              lawsuite.subshift_suite, lawsuite.commutative_iso_suite, lawsuite.stationary_suite]
    for suite in suites:
        t0 = time.perf_counter()
        res = suite() if suite is lawsuite.backend_law_suite else suite(systems)
        print(f"{res.summary()} in {time.perf_counter() - t0:.2f}s")
        for key, value in res.notes.items():
            print(f"    {key}: {value}")
        for f in res.failures[:5]:
            print(f"    {f}")
        failed |= not res.ok
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
