"""Generate every construction on a (k, nu) grid and check the cluster/matching claims.

    python3 scripts/construction_grid.py --k 3 4 5 --nu 1 2 3 --extra 3
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from clusterfree.constructions import DESIGNATED_D, ConstructionParams, build
from clusterfree.family import find_d_cluster, matching_number


@dataclass
class GridConfig:
    ks: tuple[int, ...] = (3, 4, 5)
    nus: tuple[int, ...] = (1, 2, 3)
    extra: int = 3  # n = k*nu + 1 + extra*k


def applicable(k: int, nu: int) -> list[str]:
    names = ["S", "L1", "L2"]
    if nu == 1 and k >= 4:
        names.append("L3")
    if nu >= 2:
        names.append("L4")
    return names


def run(cfg: GridConfig) -> bool:
    ok = True
    print(f"{'name':4} {'n':>3} {'k':>2} {'nu':>2} {'size':>7} {'closed':>7} {'d':>2} free  matching  secs")
    for k in cfg.ks:
        for nu in cfg.nus:
            n = k * nu + 1 + cfg.extra * k
            p = ConstructionParams(n, k, nu)
            for name in applicable(k, nu):
                t = time.perf_counter()
                fam, closed = build(name, p)
                d = DESIGNATED_D[name]
                free = find_d_cluster(fam, d) is None
                match = matching_number(fam)[0]
                row_ok = free and match == nu + 1 and len(fam) == closed
                ok &= row_ok
                print(f"{name:4} {n:3} {k:2} {nu:2} {len(fam):7} {closed:7} {d:2} {str(free):5} "
                      f"{match:8}  {time.perf_counter() - t:5.2f}{'' if row_ok else '  <-- FAIL'}")
    return ok


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, nargs="+", default=list(GridConfig.ks))
    ap.add_argument("--nu", type=int, nargs="+", default=list(GridConfig.nus))
    ap.add_argument("--extra", type=int, default=GridConfig.extra)
    a = ap.parse_args()
    raise SystemExit(0 if run(GridConfig(tuple(a.k), tuple(a.nu), a.extra)) else 1)


if __name__ == "__main__":
    main()
