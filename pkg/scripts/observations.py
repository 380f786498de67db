"""Print exploratory measurements on the flow sweep.

None of these are claimed as theorems: the Koopman pre-flow's action laws,
whether ordinary stationary states are always enriched-stationary, and the
size of the subshift when time is not commutative.
"""

from collections import defaultdict

from catdyn import lawsuite
from catdyn.finset import FINSET
from catdyn.subshift import subshift


def main() -> None:
    systems = lawsuite.cached_sweep()
    obs = lawsuite.koopman_observation(systems)
    for kind, (good, total) in obs.items():
        print(f"Koopman on [Ω,2] is a left action: {good}/{total} ({kind} time)")

    stationary = lawsuite.stationary_suite(systems)
    print("stationary states also enriched-stationary:",
          stationary.notes["stationary states also enriched-stationary"])

    sizes = defaultdict(lambda: defaultdict(int))
    for s in systems:
        if s.monoid.is_commutative():
            continue
        n = FINSET.size(s.flow.omega)
        sizes[n][len(subshift(s.flow).members)] += 1
    for n in sorted(sizes):
        hist = ", ".join(f"|E|={k}: {v}" for k, v in sorted(sizes[n].items()))
        print(f"noncommutative time, |Ω|={n}: {hist}")


if __name__ == "__main__":
    main()
