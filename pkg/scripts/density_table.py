"""Tabulate EX^r(n, H_v^e) / C(n, r) over a range of n for a few patterns.

    python3 scripts/density_table.py --threads 4
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from clusterfree.multigraph import ForbiddenPattern
from clusterfree.search import density_sequence


@dataclass
class DensityConfig:
    # (v, e, r, first n, last n)
    cases: list[tuple[int, int, int, int, int]] = field(default_factory=lambda: [
        (2, 2, 2, 2, 7),
        (2, 3, 2, 2, 7),
        (3, 3, 2, 3, 7),
        (3, 4, 2, 3, 7),
        (4, 4, 2, 4, 7),
        (4, 3, 3, 4, 7),
    ])
    budget: int = 10**6
    threads: int = 1


def run(cfg: DensityConfig) -> None:
    for v, e, r, lo, hi in cfg.cases:
        p = ForbiddenPattern(v, e, r)
        seq = density_sequence(p, range(lo, hi + 1), budget=cfg.budget, threads=cfg.threads)
        limit = Fraction(e, comb(v, r))
        print(f"H_{v}^{e}, r={r}   limit e/C(v,r) = {limit}")
        for n, ex, ratio in seq.points:
            print(f"  n={n:2}  EX={ex:4}  ratio={str(ratio):>7} = {float(ratio):.4f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--budget", type=int, default=DensityConfig.budget)
    ap.add_argument("--threads", type=int, default=DensityConfig.threads)
    a = ap.parse_args()
    run(DensityConfig(budget=a.budget, threads=a.threads))


if __name__ == "__main__":
    main()
