"""Period matrices and polarization type of the false elliptic family at a few points."""

import argparse
from dataclasses import dataclass, field

from quatkuga.config import parse_tau_flag, tau_label
from quatkuga.exact import format_scalar
from quatkuga.kuga.families import PAPER_ALGEBRA, build_false_elliptic, paper_generators, paper_order
from quatkuga.kuga.periods import period_matrix


@dataclass
class PeriodConfig:
    taus: list = field(default_factory=lambda: ["0,1", "1,1", "1/2,3/2", "-2/3,1/5"])


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--tau", action="append", help="re,im (repeatable)")
    args = p.parse_args()
    cfg = PeriodConfig(args.tau) if args.tau else PeriodConfig()

    data = build_false_elliptic(PAPER_ALGEBRA, paper_order(), paper_generators())
    print(f"E1 on the order basis (scale {data.meta['scale']}):")
    for row in data.meta["E1"].rows:
        print("  " + " ".join(f"{format_scalar(x):>3}" for x in row))
    for text in cfg.taus:
        tau = parse_tau_flag(text)
        pm = period_matrix(data, tau)
        rel = pm.bilinear_relations()
        print(f"tau = {tau_label(tau)}: Delta = {pm.deltas}, "
              f"relations {'hold' if rel['first_zero'] and rel['positive'] else 'FAIL'}")
        for row in pm.pi.rows:
            print("  " + " | ".join(format_scalar(x) for x in row))


if __name__ == "__main__":
    main()
