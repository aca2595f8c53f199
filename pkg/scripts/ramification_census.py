"""Census of ramification sets of (a, b / Q) over a box of integer parameters.

Checks Hilbert reciprocity (even cardinality) on every algebra and tallies
the division / indefinite types.
"""

import argparse
import itertools
import time
from collections import Counter
from dataclasses import dataclass

from quatkuga.quaternion import QuaternionAlgebra, classify_algebra, ramification_set


@dataclass
class CensusConfig:
    bound: int = 30


def run(cfg: CensusConfig) -> Counter:
    tally = Counter()
    for a, b in itertools.product(range(-cfg.bound, cfg.bound + 1), repeat=2):
        if a == 0 or b == 0:
            continue
        A = QuaternionAlgebra(a, b)
        ram = ramification_set(A)
        if len(ram) % 2:
            raise AssertionError(f"odd ramification set for {A}: {ram}")
        division, indefinite = classify_algebra(A)
        tally[("division" if division else "split", "indefinite" if indefinite else "definite")] += 1
        tally[f"|ram|={len(ram)}"] += 1
    return tally


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--bound", type=int, default=CensusConfig.bound)
    cfg = CensusConfig(**vars(p.parse_args()))
    t = time.perf_counter()
    tally = run(cfg)
    for key, n in sorted(tally.items(), key=str):
        print(f"{key}: {n}")
    print(f"({time.perf_counter() - t:.2f}s, reciprocity held everywhere)")


if __name__ == "__main__":
    main()
