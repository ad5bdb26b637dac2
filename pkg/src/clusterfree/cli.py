"""Command-line front end.

Data goes to stdout as ``key value`` lines (or one JSON object with --json);
diagnostics go to stderr.  Exit codes: 0 success / proven, 1 failed check or
unproven result, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from .bounds import REPORT_BUDGET, bound_report
from .cache import CacheRecord, ResultCache, digest, witness_text
from .constructions import CONSTRUCTIONS, ConstructionParams, build
from .errors import ConstructionUndefinedError, FormatError, ParameterError, ResourceError
from .family import DEFAULT_BUDGET, SetFamily, find_d_cluster, matching_number, read_family, write_family
from .multigraph import ForbiddenPattern, Multigraph, read_multigraph
from .search import (
    SearchResult,
    Status,
    compute_f_exact,
    compute_g_exact,
    turan_multigraph,
    turan_simple,
    turan_tight_path,
)

log = logging.getLogger("clusterfree")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, data: dict) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=False))
    else:
        for key, val in data.items():
            if isinstance(val, (list, tuple)):
                val = " ".join(map(str, val))
            print(f"{key} {val}")


# ---------------------------------------------------------------------------
# construct / verify


def cmd_construct(args) -> int:
    inner = read_multigraph(args.inner) if args.inner else None
    p = ConstructionParams(args.n, args.k, args.nu, args.d)
    fam, closed = build(args.name, p, inner=inner, budget=args.budget)
    if args.out:
        write_family(fam, args.out, fmt=args.format)
    _emit(args, {"construction": args.name, "size": len(fam), "closed_form": closed,
                 "out": args.out or "-"})
    if len(fam) != closed:
        log.error("generated size %d differs from closed form %d", len(fam), closed)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    fam = read_family(args.path)
    if args.d < 2:
        raise UsageError("d must be >= 2")
    data: dict = {"members": len(fam)}
    ok = True
    witness = find_d_cluster(fam, args.d) if args.d <= len(fam) else None
    if witness is None:
        data["cluster"] = "cluster-free"
    else:
        ok = False
        data["cluster"] = [" ".join(map(str, fam.members[i])) for i in witness.indices] if args.json \
            else "; ".join(" ".join(map(str, fam.members[i])) for i in witness.indices)
        data["cluster_indices"] = list(witness.indices)
        data["cluster_union"] = witness.union_size
    value, mw = matching_number(fam, budget=args.budget)
    data["matching"] = value
    data["matching_indices"] = list(mw.indices)
    if args.expect_matching is not None and value != args.expect_matching:
        ok = False
        data["matching_expected"] = args.expect_matching
    _emit(args, data)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# cached searches


def _result_from_record(rec: CacheRecord) -> SearchResult:
    witness = None
    if rec.witness is not None:
        witness = SetFamily.from_text(rec.witness) if rec.problem in ("f", "g") else Multigraph.from_text(rec.witness)
    return SearchResult(rec.problem, rec.params, rec.value, Status(rec.status), witness)


def _cached_search(args, problem: str, params: dict, compute: Callable[[], SearchResult]) -> tuple[SearchResult, int]:
    """Returns (result, exit code adjustment: 1 when a recheck disagreed)."""
    cache = ResultCache.from_env(args.cache)
    hit = cache.get(problem, params) if cache is not None else None
    if hit is not None and hit.status != Status.LOWER_BOUND_ONLY.value:
        if not args.recheck:
            log.info("cache hit for %s %s", problem, params)
            return _result_from_record(hit), 0
        fresh = compute()
        rec = CacheRecord.from_result(fresh)
        same = (rec.value, rec.status, rec.witness_digest) == (hit.value, hit.status, hit.witness_digest)
        if not same:
            print(f"recheck mismatch for {problem} {params}: cached {hit.value}/{hit.witness_digest}, "
                  f"fresh {rec.value}/{rec.witness_digest}", file=sys.stderr)
            cache.put(rec)
            return fresh, 1
        log.info("recheck agrees with cache for %s %s", problem, params)
        return fresh, 0
    fresh = compute()
    if cache is not None:
        cache.put(CacheRecord.from_result(fresh))
    return fresh, 0


def _report_result(args, res: SearchResult, mismatch: int) -> int:
    text = witness_text(res.witness)
    wpath = "-"
    if text is not None and args.witness_out:
        Path(args.witness_out).write_text(text)
        wpath = args.witness_out
    data = {"problem": res.problem, **res.params, "value": res.display_value, "status": res.status.value,
            "witness": wpath, "witness_digest": digest(text) or "-", "nodes": res.stats.nodes}
    _emit(args, data)
    if res.status is Status.INFEASIBLE:
        print("infeasible", file=sys.stderr)
    if mismatch or res.status in (Status.LOWER_BOUND_ONLY, Status.INFEASIBLE):
        return EXIT_FAIL
    return EXIT_OK


def cmd_turan(args) -> int:
    if args.kind == "pattern":
        if args.v is None or args.e is None:
            raise UsageError("turan pattern needs --v and --e")
        pat = ForbiddenPattern(args.v, args.e, args.r, simple=args.simple)
        params = {"n": args.n, "r": args.r, "v": args.v, "e": args.e}
        solver = turan_simple if args.simple else turan_multigraph
        problem = "ex" if args.simple else "EX"
        res, mm = _cached_search(args, problem, params,
                                 lambda: solver(args.n, pat, budget=args.budget, threads=args.threads))
    else:
        if args.l is None:
            raise UsageError("turan tight-path needs --l")
        params = {"n": args.n, "r": args.r, "l": args.l}
        res, mm = _cached_search(args, "ex_path", params,
                                 lambda: turan_tight_path(args.n, args.r, args.l, budget=args.budget,
                                                          threads=args.threads))
    if res.status is Status.UNBOUNDED:
        print(f"unbounded: pattern cannot embed in {args.n} vertices", file=sys.stderr)
    return _report_result(args, res, mm)


def cmd_extremal(args) -> int:
    if args.problem == "f":
        params = {"n": args.n, "k": args.k, "d": args.d, "nu": args.param}
        fn = lambda: compute_f_exact(args.n, args.k, args.d, args.param, budget=args.budget, threads=args.threads)
    else:
        params = {"n": args.n, "k": args.k, "d": args.d, "t": args.param}
        fn = lambda: compute_g_exact(args.n, args.k, args.d, args.param, budget=args.budget, threads=args.threads)
    res, mm = _cached_search(args, args.problem, params, fn)
    return _report_result(args, res, mm)


def cmd_report(args) -> int:
    rep = bound_report(args.n, args.k, args.d, args.nu, budget=args.budget or REPORT_BUDGET)
    print(rep.to_json())
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON object on stdout")
    common.add_argument("--cache", default=None, help="cache directory (default: $CLUSTERFREE_CACHE)")
    common.add_argument("--budget", type=int, default=None, help="search node limit")
    common.add_argument("--threads", type=int, default=1, help="worker processes for search subtrees")
    common.add_argument("--recheck", action="store_true", help="recompute cached results and compare")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="clusterfree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="generate S or L1-L5")
    p.add_argument("name", choices=CONSTRUCTIONS)
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("nu", type=int)
    p.add_argument("-d", type=int, default=None, help="cluster parameter (L5)")
    p.add_argument("-o", "--out", default=None, help="write the family here")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--inner", default=None, help="multigraph file for L5")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="d-cluster and matching check of a family file")
    p.add_argument("path")
    p.add_argument("d", type=int)
    p.add_argument("--expect-matching", type=int, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("turan", parents=[common], help="exact Turán numbers")
    p.add_argument("kind", choices=("pattern", "tight-path"))
    p.add_argument("n", type=int)
    p.add_argument("r", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--e", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--simple", action="store_true", help="simple r-graphs only")
    p.add_argument("--witness-out", default=None)
    p.set_defaults(func=cmd_turan)

    p = sub.add_parser("extremal", parents=[common], help="exact f(n,k,d,nu) or g(n,k,d,t)")
    p.add_argument("problem", choices=("f", "g"))
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("d", type=int)
    p.add_argument("param", type=int, metavar="nu-or-t")
    p.add_argument("--witness-out", default=None)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("report", parents=[common], help="bound expressions as JSON")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("d", type=int)
    p.add_argument("nu", type=int)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    if args.budget is None and args.command != "report":
        args.budget = DEFAULT_BUDGET
    try:
        return args.func(args)
    except (UsageError, ParameterError, ConstructionUndefinedError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except (FormatError, OSError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
