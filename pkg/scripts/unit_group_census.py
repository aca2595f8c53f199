"""Norm-one units of the maximal order of (2,-3): counts by type and height."""

import argparse
from collections import Counter
from dataclasses import dataclass

from quatkuga.kuga.families import paper_order
from quatkuga.orders import congruence_membership, element_type, norm_one_search, torsion_certificate


@dataclass
class UnitConfig:
    height: int = 4
    level: int = 2


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--height", type=int, default=UnitConfig.height)
    p.add_argument("--level", type=int, default=UnitConfig.level)
    cfg = UnitConfig(**vars(p.parse_args()))
    L = paper_order()
    units = norm_one_search(L, cfg.height)
    kinds = Counter(element_type(u) for u in units)
    orders = Counter(torsion_certificate(u)[1] for u in units if torsion_certificate(u)[0])
    cong = [u for u in units if congruence_membership(u, L, cfg.level)]
    print(f"height {cfg.height}: {len(units)} norm-one elements")
    for k, n in sorted(kinds.items()):
        print(f"  {k}: {n}")
    print(f"  torsion orders: {dict(sorted(orders.items()))}")
    noncentral = [u for u in cong if element_type(u) != "central"]
    print(f"  congruent to 1 mod {cfg.level}: {len(cong)}, non-central torsion among them: "
          f"{sum(torsion_certificate(u)[0] for u in noncentral)}")


if __name__ == "__main__":
    main()
