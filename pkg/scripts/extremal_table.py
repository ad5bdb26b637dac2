"""Exact f(n,k,d,nu) and g(n,k,d,t) on small parameters, next to the best construction.

    python3 scripts/extremal_table.py --max-n 9 --budget 1000000
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from clusterfree.constructions import DESIGNATED_D, ConstructionParams, build
from clusterfree.errors import ParameterError
from clusterfree.search import compute_f_exact, compute_g_exact


@dataclass
class ExtremalConfig:
    max_n: int = 9
    ks: tuple[int, ...] = (2, 3)
    ds: tuple[int, ...] = (3, 4)
    nus: tuple[int, ...] = (0, 1, 2)
    budget: int = 10**6
    threads: int = 1


def best_construction(n: int, k: int, d: int, nu: int) -> str:
    out = []
    for name, dd in DESIGNATED_D.items():
        if dd != d and name != "S":
            continue
        try:
            fam, _ = build(name, ConstructionParams(n, k, nu))
        except ParameterError:
            continue
        out.append((len(fam), name))
    if not out:
        return "-"
    size, name = max(out)
    return f"{name}={size}"


def run(cfg: ExtremalConfig) -> None:
    print(f"{'n':>2} {'k':>2} {'d':>2} {'nu':>2} {'f':>12} {'status':>17} {'g(t=nu+1)':>10} {'construction':>13}  secs")
    for k in cfg.ks:
        for d in cfg.ds:
            for nu in cfg.nus:
                for n in range(k * (nu + 1), cfg.max_n + 1):
                    t = time.perf_counter()
                    f = compute_f_exact(n, k, d, nu, budget=cfg.budget, threads=cfg.threads)
                    g = "-"
                    if nu + 1 >= 2:
                        g = compute_g_exact(n, k, d, nu + 1, budget=cfg.budget, threads=cfg.threads).display_value
                    print(f"{n:2} {k:2} {d:2} {nu:2} {f.display_value:>12} {f.status.value:>17} {g:>10} "
                          f"{best_construction(n, k, d, nu):>13}  {time.perf_counter() - t:5.2f}", flush=True)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=ExtremalConfig.max_n)
    ap.add_argument("--budget", type=int, default=ExtremalConfig.budget)
    ap.add_argument("--threads", type=int, default=ExtremalConfig.threads)
    a = ap.parse_args()
    run(ExtremalConfig(max_n=a.max_n, budget=a.budget, threads=a.threads))


if __name__ == "__main__":
    main()
