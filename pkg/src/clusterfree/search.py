"""Exact branch-and-bound for Turán numbers and the extremal numbers f and g.

Every problem here maximises the size of a subset of a fixed, canonically
ordered candidate list subject to a hereditary constraint (d-cluster-freeness,
bounded v-set spans, no tight path).  One engine serves them all:

* nodes enumerate solutions by "next member = i" in ascending candidate order,
  so solutions are visited in lexicographic order of their sorted index lists
  and the first optimum reached is the lexicographically least one;
* after a candidate is added, the problem removes the candidates that became
  infeasible ("kills"), so every live candidate is individually addable;
* the root's children are independent subtrees.  They share nothing but the
  global lower bound computed up front, which makes value, status and witness
  identical for any worker count.
"""

from __future__ import annotations

import multiprocessing as mp
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Any, Iterable, Optional, Sequence, Union

from .errors import InvariantViolation, ParameterError, ResourceError
from .family import (
    DEFAULT_BUDGET,
    SetFamily,
    find_d_cluster,
    is_t_wise_intersecting,
    iter_bits,
    matching_number,
    to_mask,
)
from .multigraph import (
    ForbiddenPattern,
    Multigraph,
    contains_tight_path,
    find_tight_path,
    is_pattern_free,
)


class Status(str, Enum):
    PROVEN_OPTIMAL = "proven-optimal"
    LOWER_BOUND_ONLY = "lower-bound-only"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass
class SearchStats:
    nodes: int = 0
    prunes: int = 0
    subtrees: int = 0
    wall_time: float = 0.0

    def merge(self, other: "SearchStats") -> None:
        self.nodes += other.nodes
        self.prunes += other.prunes
        self.subtrees += other.subtrees


@dataclass
class SearchResult:
    problem: str
    params: dict
    value: Optional[int]
    status: Status
    witness: Union[SetFamily, Multigraph, None] = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def display_value(self) -> str:
        if self.status in (Status.INFEASIBLE, Status.UNBOUNDED):
            return self.status.value
        return str(self.value)

    @property
    def proven(self) -> bool:
        return self.status is Status.PROVEN_OPTIMAL


# ---------------------------------------------------------------------------
# problem definitions


class _Problem:
    """A hereditary maximisation problem over ``n_cand`` ordered candidates."""

    n_cand: int = 0

    def root(self) -> tuple[Any, int]:
        """State after the fixed part, and the bitset of candidates still addable."""
        raise NotImplementedError

    def add(self, state: Any, i: int) -> Any:
        raise NotImplementedError

    def kills(self, new_state: Any, i: int, cand: int) -> int:
        """Candidates in ``cand`` that cannot join ``new_state`` (which already holds i)."""
        raise NotImplementedError

    def drop(self, cand: int, i: int) -> int:
        """Remove i from the live set when the search moves past it."""
        return cand & ~(1 << i)

    def bound(self, state: Any, cand: int) -> int:
        """Upper bound on how many more candidates can be added."""
        return cand.bit_count()


class _ClusterFreeProblem(_Problem):
    """Add k-sets to a fixed seed family without creating a d-cluster."""

    def __init__(self, n: int, k: int, d: int, seed: Sequence[tuple[int, ...]]):
        self.n, self.k, self.d = n, k, d
        self.cap = 2 * k
        seed_set = {tuple(s) for s in seed}
        self.seed = [to_mask(s) for s in sorted(seed_set)]
        self.cands = [c for c in combinations(range(1, n + 1), k) if c not in seed_set]
        self.cmask = [to_mask(c) for c in self.cands]
        self.n_cand = len(self.cands)
        self.all = (1 << self.n_cand) - 1
        self.cont = [0] * (n + 1)
        for i, c in enumerate(self.cands):
            for v in c:
                self.cont[v] |= 1 << i
        self.base_value = len(self.seed)
        self._compat: dict[int, int] = {}

    def compat(self, union: int) -> int:
        hit = self._compat.get(union)
        if hit is not None:
            return hit
        slack = self.cap - union.bit_count()
        if slack < 0:
            res = 0
        elif slack >= self.k:
            res = self.all
        else:
            counters = [0] * (slack + 1)
            for x in range(1, self.n + 1):
                if union >> x & 1:
                    continue
                mx = self.cont[x]
                for j in range(slack, 0, -1):
                    counters[j] |= counters[j - 1] & mx
                counters[0] |= mx
            res = self.all & ~counters[slack]
        if len(self._compat) < 500_000:
            self._compat[union] = res
        return res

    def avoid(self, inter: int) -> int:
        res = self.all
        for x in iter_bits(inter):
            res &= ~self.cont[x]
        return res

    def _new_kills(self, members: list[int], new: int, cand: int) -> int:
        """Candidates c closing a d-cluster with ``new`` and d-2 of ``members``."""
        need = self.d - 2
        if need == 0:
            return cand & self.avoid(new)
        killed = 0
        cap = self.cap

        def rec(start: int, union: int, inter: int, left: int) -> None:
            nonlocal killed
            if left == 0:
                killed |= cand & self.compat(union) & self.avoid(inter)
                return
            for j in range(start, len(members) - left + 1):
                u = union | members[j]
                if u.bit_count() > cap:
                    continue
                rec(j + 1, u, inter & members[j], left - 1)

        rec(0, new, new, need)
        return killed

    def root(self) -> tuple[list[int], int]:
        members: list[int] = []
        cand = self.all
        for s in self.seed:
            cand &= ~self._new_kills(members, s, cand)
            members.append(s)
        return members, cand

    def add(self, state: list[int], i: int) -> list[int]:
        return state + [self.cmask[i]]

    def kills(self, new_state: list[int], i: int, cand: int) -> int:
        return self._new_kills(new_state[:-1], self.cmask[i], cand)

    def family(self, chosen: Iterable[int]) -> SetFamily:
        seed = [tuple(v for v in range(1, self.n + 1) if s >> v & 1) for s in self.seed]
        return SetFamily.from_sets(self.n, self.k, seed + [self.cands[i] for i in chosen])


class _SpanProblem(_Problem):
    """Edges (or edge copies) subject to: every v-set spans at most e-1 of them.

    With ``copies > 1`` candidate ``(edge, j)`` is the j-th copy of an edge;
    copy j may only be present together with copies 1..j-1, which removes
    the symmetry between identical copies.
    """

    def __init__(self, n: int, r: int, v: int, e: int, copies: int = 1):
        self.n, self.r, self.v, self.e = n, r, v, e
        self.copies = copies
        self.edges = list(combinations(range(1, n + 1), r))
        self.cands = [(ed, j) for ed in self.edges for j in range(1, copies + 1)]
        self.n_cand = len(self.cands)
        self.vsets = list(combinations(range(1, n + 1), v))
        vidx = {vs: i for i, vs in enumerate(self.vsets)}
        self.cap = e - 1
        self.q = comb(n - r, v - r)
        # v-sets through each edge, and candidate bitsets per v-set
        self.through: list[list[int]] = []
        self.in_vset = [0] * len(self.vsets)
        for ci, (ed, _) in enumerate(self.cands):
            rest = [x for x in range(1, n + 1) if x not in ed]
            ids = [vidx[tuple(sorted(ed + extra))] for extra in combinations(rest, v - r)]
            self.through.append(ids)
            for s in ids:
                self.in_vset[s] |= 1 << ci
        # later copies of the same edge, dropped together with an earlier one
        self.tail = []
        for ci, (ed, j) in enumerate(self.cands):
            bits = 0
            for jj in range(j + 1, copies + 1):
                bits |= 1 << (ci + jj - j)
            self.tail.append(bits)
        self.all = (1 << self.n_cand) - 1

    def root(self) -> tuple[list[int], int]:
        if self.cap <= 0:
            return [0] * len(self.vsets), 0
        return [0] * len(self.vsets), self.all

    def add(self, state: list[int], i: int) -> list[int]:
        spans = list(state)
        for s in self.through[i]:
            spans[s] += 1
        return spans

    def kills(self, new_state: list[int], i: int, cand: int) -> int:
        killed = 0
        for s in self.through[i]:
            if new_state[s] >= self.cap:
                killed |= self.in_vset[s]
        return cand & killed

    def drop(self, cand: int, i: int) -> int:
        return cand & ~(1 << i) & ~self.tail[i]

    def bound(self, state: list[int], cand: int) -> int:
        # each new copy raises q v-set spans, none past its residual capacity
        total = 0
        for s, span in enumerate(state):
            live = (cand & self.in_vset[s]).bit_count()
            if live:
                res = self.cap - span
                total += live if live < res else res
        return min(cand.bit_count(), total // self.q)

    def multigraph(self, chosen: Iterable[int]) -> Multigraph:
        mult: dict[tuple[int, ...], int] = {}
        for i in chosen:
            ed = self.cands[i][0]
            mult[ed] = mult.get(ed, 0) + 1
        return Multigraph.from_edges(self.n, self.r, mult)


class _PartialSteinerProblem(_Problem):
    """r-sets with every (r-1)-set in at most one chosen edge (no tight 2-path)."""

    def __init__(self, n: int, r: int):
        self.n, self.r = n, r
        self.cands = list(combinations(range(1, n + 1), r))
        self.n_cand = len(self.cands)
        self.subs = list(combinations(range(1, n + 1), r - 1))
        sidx = {s: i for i, s in enumerate(self.subs)}
        self.sub_of = [[sidx[s] for s in combinations(c, r - 1)] for c in self.cands]
        self.through = [0] * len(self.subs)
        for ci, ids in enumerate(self.sub_of):
            for s in ids:
                self.through[s] |= 1 << ci

    def root(self) -> tuple[None, int]:
        return None, (1 << self.n_cand) - 1

    def add(self, state: None, i: int) -> None:
        return None

    def kills(self, new_state: None, i: int, cand: int) -> int:
        killed = 0
        for s in self.sub_of[i]:
            killed |= self.through[s]
        return cand & killed

    def bound(self, state: None, cand: int) -> int:
        # live (r-1)-sets: each new edge consumes r of them
        live = 0
        for bits in self.through:
            if cand & bits:
                live += 1
        return min(cand.bit_count(), live // self.r)

    def multigraph(self, chosen: Iterable[int]) -> Multigraph:
        return Multigraph.from_edges(self.n, self.r, [self.cands[i] for i in chosen])


class _TightPathProblem(_Problem):
    """Generic P_l-freeness by direct path search (small instances)."""

    def __init__(self, n: int, r: int, l: int):
        self.n, self.r, self.l = n, r, l
        self.cands = list(combinations(range(1, n + 1), r))
        self.n_cand = len(self.cands)

    def root(self) -> tuple[tuple[int, ...], int]:
        if self.l == 1:
            return (), 0
        return (), (1 << self.n_cand) - 1

    def add(self, state: tuple[int, ...], i: int) -> tuple[int, ...]:
        return state + (i,)

    def kills(self, new_state: tuple[int, ...], i: int, cand: int) -> int:
        killed = 0
        base = [self.cands[j] for j in new_state]
        for c in iter_bits(cand):
            g = Multigraph.from_edges(self.n, self.r, base + [self.cands[c]])
            if find_tight_path(g, self.l) is not None:
                killed |= 1 << c
        return killed

    def multigraph(self, chosen: Iterable[int]) -> Multigraph:
        return Multigraph.from_edges(self.n, self.r, [self.cands[i] for i in chosen])


# ---------------------------------------------------------------------------
# engine


class _Budget(Exception):
    pass


class _Ceiling(Exception):
    pass


def _dfs(problem: _Problem, state: Any, cand: int, chosen: list[int], best: list,
         budget: int, ceiling: Optional[int], stats: SearchStats, trail: list) -> None:
    """``best`` is [value, chosen-list], improved in place; each improvement is
    also appended to ``trail`` as (node number, value, chosen)."""
    stats.nodes += 1
    if stats.nodes > budget:
        raise _Budget
    size = len(chosen)
    if size > best[0]:
        best[0], best[1] = size, list(chosen)
        trail.append((stats.nodes, size, best[1]))
        if ceiling is not None and size >= ceiling:
            raise _Ceiling
    if not cand:
        return
    if size + problem.bound(state, cand) <= best[0]:
        stats.prunes += 1
        return
    while cand:
        i = (cand & -cand).bit_length() - 1
        new_state = problem.add(state, i)
        above = cand & ~(1 << i)
        chosen.append(i)
        _dfs(problem, new_state, above & ~problem.kills(new_state, i, above),
             chosen, best, budget, ceiling, stats, trail)
        chosen.pop()
        cand = problem.drop(cand, i)
        if cand and size + problem.bound(state, cand) <= best[0]:
            stats.prunes += 1
            return


def _greedy(problem: _Problem, state: Any, cand: int) -> list[int]:
    chosen = []
    while cand:
        i = (cand & -cand).bit_length() - 1
        state = problem.add(state, i)
        above = cand & ~(1 << i)
        cand = above & ~problem.kills(state, i, above)
        chosen.append(i)
    return chosen


@dataclass
class _Frontier:
    state: Any
    cand: int
    chosen: list[int]


def _subtree(problem: _Problem, node: _Frontier, lb: int, budget: int,
             ceiling: Optional[int]) -> tuple[list, SearchStats]:
    """Search one root subtree; returns its improvement trail and stats."""
    stats = SearchStats(subtrees=1)
    best: list = [lb - 1, None]
    trail: list = []
    try:
        _dfs(problem, node.state, node.cand, list(node.chosen), best, budget, ceiling, stats, trail)
    except (_Budget, _Ceiling):
        pass
    return trail, stats


_WORKER_PROBLEM: Optional[_Problem] = None


def _worker(args):
    node, lb, budget, ceiling = args
    return _subtree(_WORKER_PROBLEM, node, lb, budget, ceiling)


def _parallel_subtrees(problem: _Problem, frontier: list, lb: int, budget: int,
                       ceiling: Optional[int], threads: int) -> list:
    """Run subtrees on a process pool, in order, at most ``threads`` in flight.

    Subtree i is capped at the budget minus the nodes of the earlier subtrees
    already finished; that cap is never below what a sequential run would
    allow it, so the sequential replay in ``_run`` stays exact.  Subtrees
    that a sequential run could never reach are not started.
    """
    global _WORKER_PROBLEM
    _WORKER_PROBLEM = problem
    out: list = [None] * len(frontier)
    try:
        with ProcessPoolExecutor(max_workers=threads, mp_context=mp.get_context("fork")) as pool:
            pending: dict = {}
            nxt = 0
            done_prefix = 0  # subtrees 0..done_prefix-1 are finished
            spent = 0  # nodes of that finished prefix
            stop = False
            while nxt < len(frontier) or pending:
                while not stop and nxt < len(frontier) and len(pending) < threads:
                    cap = budget - spent
                    if cap <= 0:
                        stop = True
                        break
                    fut = pool.submit(_worker, (frontier[nxt], lb, cap, ceiling))
                    pending[fut] = nxt
                    nxt += 1
                if not pending:
                    break
                finished, _ = wait(list(pending), return_when=FIRST_COMPLETED)
                for fut in finished:
                    out[pending.pop(fut)] = fut.result()
                while done_prefix < len(frontier) and out[done_prefix] is not None:
                    trail, st = out[done_prefix]
                    spent += st.nodes
                    if ceiling is not None and trail and trail[-1][1] >= ceiling:
                        stop = True
                    done_prefix += 1
                if stop:
                    for fut in pending:
                        fut.cancel()
    finally:
        _WORKER_PROBLEM = None
    return out


def _run(problem: _Problem, forced: Sequence[int] = (), budget: int = DEFAULT_BUDGET,
         threads: int = 1, ceiling: Optional[int] = None,
         lower: Optional[list[int]] = None) -> tuple[list[int], bool, SearchStats]:
    """Maximise; returns (chosen candidates, proven, stats).

    ``forced`` candidates are added at the root (symmetry fixing).  ``ceiling``
    is a proven upper bound on the number of added candidates: reaching it
    ends the search.  ``budget`` is one node limit shared by all root subtrees.
    """
    t0 = time.perf_counter()
    state, cand = problem.root()
    chosen = []
    for i in forced:
        if not cand >> i & 1:
            raise ParameterError(f"forced candidate {i} is infeasible")
        state = problem.add(state, i)
        rest = cand & ~(1 << i)
        cand = rest & ~problem.kills(state, i, rest)
        chosen.append(i)
    greedy = chosen + _greedy(problem, state, cand)
    incumbent = greedy if lower is None or len(lower) <= len(greedy) else list(lower)
    lb = len(incumbent)
    stats = SearchStats()

    # one root subtree per choice of the next member
    frontier = []
    c = cand
    while c:
        i = (c & -c).bit_length() - 1
        s2 = problem.add(state, i)
        above = c & ~(1 << i)
        frontier.append(_Frontier(s2, above & ~problem.kills(s2, i, above), chosen + [i]))
        c = problem.drop(c, i)

    # Subtrees are charged against one budget in index order.  A parallel run
    # gives every subtree the full budget and then replays the sequential
    # accounting from the recorded trails, so both modes agree exactly.
    raw = None
    if threads > 1 and len(frontier) > 1:
        raw = _parallel_subtrees(problem, frontier, lb, budget, ceiling, threads)

    best_val, best_sol = len(chosen), list(chosen)
    exhausted_any = False
    remaining = budget
    for idx, f in enumerate(frontier):
        if remaining <= 0:
            exhausted_any = True
            break
        if raw is None:
            trail, st = _subtree(problem, f, lb, remaining, ceiling)
        elif raw[idx] is None:
            exhausted_any = True
            break
        else:
            trail, st = raw[idx]
        used = min(st.nodes, remaining + 1)
        if used > remaining:
            exhausted_any = True
            trail = [t for t in trail if t[0] <= remaining]
        st.nodes = used
        stats.merge(st)
        remaining -= used
        if trail and trail[-1][1] > best_val:
            best_val, best_sol = trail[-1][1], trail[-1][2]
        if ceiling is not None and best_val >= ceiling:
            break  # later subtrees can at best tie, and ties go to the earlier one
    if len(incumbent) > best_val:
        best_val, best_sol = len(incumbent), incumbent
    proven = not exhausted_any or (ceiling is not None and best_val >= ceiling)
    stats.wall_time = time.perf_counter() - t0
    return best_sol, proven, stats


# ---------------------------------------------------------------------------
# public solvers

# proven values of f(n,k,d,1) and g(n,k,d,2), for the cross-check between them
_PROVEN_F1: dict[tuple[int, int, int], int] = {}
_PROVEN_G2: dict[tuple[int, int, int], int] = {}


def _status(proven: bool) -> Status:
    return Status.PROVEN_OPTIMAL if proven else Status.LOWER_BOUND_ONLY


def averaging_ceiling(n: int, r: int, v: int, e: int) -> int:
    """Each v-set holds at most e-1 edges and each edge lies in C(n-r, v-r) v-sets."""
    return (e - 1) * comb(n, v) // comb(n - r, v - r)


def turan_multigraph(n: int, p: ForbiddenPattern, budget: int = DEFAULT_BUDGET,
                     threads: int = 1) -> SearchResult:
    """EX^r(n, H_v^e): most edges (with multiplicity) with every v-set spanning < e."""
    if p.simple:
        raise ParameterError("turan_multigraph needs a multigraph pattern (simple=False)")
    params = {"n": n, "r": p.r, "v": p.v, "e": p.e}
    if n < p.v:
        return SearchResult("EX", params, None, Status.UNBOUNDED)
    ceiling = averaging_ceiling(n, p.r, p.v, p.e)
    if ceiling == 0:
        return SearchResult("EX", params, 0, Status.PROVEN_OPTIMAL, Multigraph(n, p.r))
    # a single edge never exceeds e-1 copies: any v-set through it caps it
    problem = _SpanProblem(n, p.r, p.v, p.e, copies=p.e - 1)
    chosen, proven, stats = _run(problem, forced=[0], budget=budget, threads=threads, ceiling=ceiling)
    g = problem.multigraph(chosen)
    if not is_pattern_free(g, p):
        raise InvariantViolation(f"EX witness is not pattern-free: {g}")
    return SearchResult("EX", params, g.edge_count, _status(proven), g, stats)


def turan_simple(n: int, p: ForbiddenPattern, budget: int = DEFAULT_BUDGET,
                 threads: int = 1) -> SearchResult:
    """ex^r(n, H_v^e) over simple r-graphs."""
    if not p.simple:
        raise ParameterError("turan_simple needs a simple pattern (simple=True)")
    params = {"n": n, "r": p.r, "v": p.v, "e": p.e}
    if n < p.v:
        g = Multigraph.from_edges(n, p.r, combinations(range(1, n + 1), p.r))
        return SearchResult("ex", params, g.edge_count, Status.PROVEN_OPTIMAL, g)
    ceiling = min(comb(n, p.r), averaging_ceiling(n, p.r, p.v, p.e))
    if ceiling == 0:
        return SearchResult("ex", params, 0, Status.PROVEN_OPTIMAL, Multigraph(n, p.r))
    problem = _SpanProblem(n, p.r, p.v, p.e, copies=1)
    chosen, proven, stats = _run(problem, forced=[0], budget=budget, threads=threads, ceiling=ceiling)
    g = problem.multigraph(chosen)
    if not is_pattern_free(g, p):
        raise InvariantViolation(f"ex witness is not pattern-free: {g}")
    return SearchResult("ex", params, g.edge_count, _status(proven), g, stats)


def tight_path_ceiling(n: int, r: int) -> int:
    """Every (r-1)-set in at most one edge: at most C(n, r-1)/r edges."""
    return comb(n, r - 1) // r


def turan_tight_path(n: int, r: int, l: int, budget: int = DEFAULT_BUDGET,
                     threads: int = 1) -> SearchResult:
    """ex(n, P_l^r): most edges of an r-graph on [n] with no tight l-path."""
    if l < 1 or r < 2:
        raise ParameterError(f"need l >= 1 and r >= 2, got l={l}, r={r}")
    params = {"n": n, "r": r, "l": l}
    if l == 1 or n < r:
        return SearchResult("ex_path", params, 0, Status.PROVEN_OPTIMAL, Multigraph(max(n, 0), r))
    if n < l + r - 1:
        g = Multigraph.from_edges(n, r, combinations(range(1, n + 1), r))
        return SearchResult("ex_path", params, g.edge_count, Status.PROVEN_OPTIMAL, g)
    if l == 2:
        problem: _Problem = _PartialSteinerProblem(n, r)
        ceiling = tight_path_ceiling(n, r)
    else:
        problem = _TightPathProblem(n, r, l)
        ceiling = comb(n, r)
    chosen, proven, stats = _run(problem, forced=[0], budget=budget, threads=threads, ceiling=ceiling)
    g = problem.multigraph(chosen)
    if contains_tight_path(g, l):
        raise InvariantViolation(f"tight-path witness contains P_{l}: {g}")
    if l == 2 and g.edge_count > tight_path_ceiling(n, r):
        raise InvariantViolation("partial Steiner system above C(n,r-1)/r")
    return SearchResult("ex_path", params, g.edge_count, _status(proven), g, stats)


def _verify_family(fam: SetFamily, d: int) -> None:
    if d <= len(fam) and find_d_cluster(fam, d) is not None:
        raise InvariantViolation(f"witness family has a {d}-cluster")


def _solve_seeded(n: int, k: int, d: int, seed: Sequence[tuple[int, ...]], budget: int,
                  threads: int) -> Optional[tuple[SetFamily, bool, SearchStats]]:
    seed_family = SetFamily.from_sets(n, k, seed)
    if d <= len(seed_family) and find_d_cluster(seed_family, d) is not None:
        return None
    problem = _ClusterFreeProblem(n, k, d, seed)
    chosen, proven, stats = _run(problem, budget=budget, threads=threads)
    return problem.family(chosen), proven, stats


def compute_f_exact(n: int, k: int, d: int, nu: int, budget: int = DEFAULT_BUDGET,
                    threads: int = 1) -> SearchResult:
    """f(n,k,d,nu): largest d-cluster-free k-uniform family with matching number >= nu+1.

    All (nu+1)-matchings are equivalent under relabelling, so the search fixes
    the blocks {1..k}, {k+1..2k}, ... and extends them.
    """
    if k < 1 or d < 2 or nu < 0:
        raise ParameterError(f"need k >= 1, d >= 2, nu >= 0; got k={k}, d={d}, nu={nu}")
    params = {"n": n, "k": k, "d": d, "nu": nu}
    if n < k * (nu + 1):
        return SearchResult("f", params, None, Status.INFEASIBLE)
    seed = [tuple(range(i * k + 1, (i + 1) * k + 1)) for i in range(nu + 1)]
    solved = _solve_seeded(n, k, d, seed, budget, threads)
    if solved is None:
        return SearchResult("f", params, None, Status.INFEASIBLE)
    fam, proven, stats = solved
    _verify_family(fam, d)
    if matching_number(fam)[0] < nu + 1:
        raise InvariantViolation("f witness lost its matching")
    res = SearchResult("f", params, len(fam), _status(proven), fam, stats)
    if proven and nu == 1:
        _cross_check_g2(n, k, d, f1=res.value)
    return res


def empty_intersection_seeds(n: int, k: int, t: int) -> list[list[tuple[int, ...]]]:
    """One representative per relabelling class of t distinct k-sets with empty intersection.

    A t-tuple is determined up to relabelling by how many vertices carry each
    membership pattern (a nonempty proper subset of the t sets); the
    representatives place those vertices consecutively, pattern by pattern.
    """
    from itertools import permutations

    patterns = [P for P in range(1, (1 << t) - 1)]
    perms = list(permutations(range(t)))

    def permute(P: int, perm: tuple[int, ...]) -> int:
        return sum(1 << perm[i] for i in range(t) if P >> i & 1)

    pindex = {P: j for j, P in enumerate(patterns)}
    seen: set[tuple[int, ...]] = set()
    out: list[list[tuple[int, ...]]] = []

    def rec(j: int, counts: list[int], deg: list[int], used: int) -> None:
        if j == len(patterns):
            if any(x != k for x in deg):
                return
            key = min(
                tuple(counts[pindex[permute(P, perm)]] for P in patterns)
                for perm in perms
            )
            # canonical key: the lexicographically least relabelled count vector
            if key in seen:
                return
            seen.add(key)
            sets: list[list[int]] = [[] for _ in range(t)]
            v = 1
            for P, c in zip(patterns, counts):
                for _ in range(c):
                    for i in range(t):
                        if P >> i & 1:
                            sets[i].append(v)
                    v += 1
            tuples = [tuple(s) for s in sets]
            if len(set(tuples)) == t:
                out.append(sorted(tuples))
            return
        P = patterns[j]
        members = [i for i in range(t) if P >> i & 1]
        room = min(k - deg[i] for i in members)
        room = min(room, n - used)
        for c in range(room, -1, -1):
            for i in members:
                deg[i] += c
            counts.append(c)
            rec(j + 1, counts, deg, used + c)
            counts.pop()
            for i in members:
                deg[i] -= c

    rec(0, [], [0] * t, 0)
    return out


def compute_g_exact(n: int, k: int, d: int, t: int, budget: int = DEFAULT_BUDGET,
                    threads: int = 1) -> SearchResult:
    """g(n,k,d,t): largest d-cluster-free k-uniform family that is not t-wise intersecting."""
    if t < 2:
        raise ParameterError(f"t must be >= 2 (t-wise intersecting is undefined below), got {t}")
    if k < 1 or d < 2:
        raise ParameterError(f"need k >= 1 and d >= 2, got k={k}, d={d}")
    params = {"n": n, "k": k, "d": d, "t": t}
    best: Optional[SetFamily] = None
    proven_all = True
    stats = SearchStats()
    for seed in empty_intersection_seeds(n, k, t):
        solved = _solve_seeded(n, k, d, seed, budget, threads)
        if solved is None:
            continue
        fam, proven, st = solved
        stats.merge(st)
        stats.wall_time += st.wall_time
        proven_all &= proven
        if best is None or len(fam) > len(best) or (len(fam) == len(best) and fam.members < best.members):
            best = fam
    if best is None:
        return SearchResult("g", params, None, Status.INFEASIBLE, stats=stats)
    _verify_family(best, d)
    if is_t_wise_intersecting(best, t):
        raise InvariantViolation("g witness is t-wise intersecting")
    res = SearchResult("g", params, len(best), _status(proven_all), best, stats)
    if proven_all and t == 2:
        _cross_check_g2(n, k, d, g2=res.value)
    return res


def _cross_check_g2(n: int, k: int, d: int, f1: Optional[int] = None, g2: Optional[int] = None) -> None:
    """Not 2-wise intersecting means two disjoint members, i.e. matching number >= 2."""
    key = (n, k, d)
    if f1 is not None:
        _PROVEN_F1[key] = f1
    if g2 is not None:
        _PROVEN_G2[key] = g2
    if key in _PROVEN_F1 and key in _PROVEN_G2 and _PROVEN_F1[key] != _PROVEN_G2[key]:
        raise InvariantViolation(f"g({n},{k},{d},2)={_PROVEN_G2[key]} differs from f({n},{k},{d},1)={_PROVEN_F1[key]}")


@dataclass
class DensitySequence:
    pattern: ForbiddenPattern
    points: list[tuple[int, int, Fraction]]


def density_sequence(p: ForbiddenPattern, n_range: Iterable[int], budget: int = DEFAULT_BUDGET,
                     threads: int = 1) -> DensitySequence:
    """EX(n)/C(n,r) for each n; checks it is non-increasing and below e/C(v,r)."""
    points = []
    limit = Fraction(p.e, comb(p.v, p.r))
    for n in n_range:
        if n < p.v:
            raise ParameterError(f"n={n} < v={p.v}: EX is unbounded there")
        res = turan_multigraph(n, p, budget=budget, threads=threads)
        if not res.proven:
            raise ResourceError(f"EX({n}) not proven within budget {budget}")
        ratio = Fraction(res.value, comb(n, p.r))
        if points and ratio > points[-1][2]:
            raise InvariantViolation(f"EX ratio increased at n={n}: {points[-1][2]} -> {ratio}")
        if not ratio < limit:
            raise InvariantViolation(f"EX({n}) = {res.value} is not below e/C(v,r)*C(n,r)")
        points.append((n, res.value, ratio))
    return DensitySequence(p, points)
