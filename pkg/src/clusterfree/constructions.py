"""The extremal families S and L1-L5 with their closed-form sizes.

All constructions share one fixed layout on [n]: apex y = 1, blocks
C_i = {2+(i-1)k, ..., 1+ik} for i = 1..nu, and W = everything else.  Inside a
block, "the m-th vertex" c_m^i means position m in ascending order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

from .errors import ConstructionUndefinedError, ParameterError, ResourceError
from .family import DEFAULT_BUDGET, SetFamily
from .multigraph import ForbiddenPattern, Multigraph, is_pattern_free
from .search import turan_tight_path


def binom(n: int, k: int) -> int:
    """C(n, k) with C(n, k) = 0 for k < 0."""
    return comb(n, k) if k >= 0 and n >= 0 else 0


@dataclass(frozen=True)
class ConstructionParams:
    n: int
    k: int
    nu: int
    d: Optional[int] = None

    def __post_init__(self) -> None:
        if self.k < 2 or self.nu < 0:
            raise ParameterError(f"need k >= 2 and nu >= 0, got k={self.k}, nu={self.nu}")
        if self.n < self.k * self.nu + 1 + (self.k - 1):
            raise ParameterError(
                f"layout needs n >= k*nu + k = {self.k * self.nu + self.k}, got n={self.n}"
            )

    @property
    def apex(self) -> int:
        return 1

    @property
    def blocks(self) -> list[tuple[int, ...]]:
        k = self.k
        return [tuple(range(2 + (i - 1) * k, 2 + i * k)) for i in range(1, self.nu + 1)]

    @property
    def W(self) -> tuple[int, ...]:
        return tuple(range(2 + self.nu * self.k, self.n + 1))

    @property
    def w_size(self) -> int:
        """n - k*nu - 1, the size of W."""
        return self.n - self.k * self.nu - 1


def _star_part(p: ConstructionParams) -> list[tuple[int, ...]]:
    return [(p.apex,) + a for a in combinations(p.W, p.k - 1)]


def _apex_layer(p: ConstructionParams, cores, w_count: int) -> list[tuple[int, ...]]:
    """{y} ∪ A ∪ B for each core A and each B in C(W, w_count)."""
    if w_count < 0:
        return []
    out = []
    for a in cores:
        for b in combinations(p.W, w_count):
            out.append((p.apex,) + tuple(a) + b)
    return out


def construct_S(p: ConstructionParams) -> SetFamily:
    return SetFamily.from_sets(p.n, p.k, _star_part(p) + p.blocks)


def size_S(p: ConstructionParams) -> int:
    return binom(p.w_size, p.k - 1) + p.nu


def construct_L1(p: ConstructionParams) -> SetFamily:
    """S plus, for each pair of blocks, the sets through both of their first vertices."""
    k = p.k
    blocks = p.blocks
    extra = []
    for l in range(1, p.nu // 2 + 1):
        a_blk, b_blk = blocks[2 * l - 2], blocks[2 * l - 1]
        va, vb = a_blk[0], b_blk[0]
        others = sorted(set(a_blk + b_blk) - {va, vb})
        for i in range(2, k):
            cores = [(va, vb) + rest for rest in combinations(others, i - 2)]
            extra += _apex_layer(p, cores, k - 1 - i)
    return SetFamily.from_sets(p.n, k, _star_part(p) + extra + blocks)


def size_L1(p: ConstructionParams) -> int:
    n1, k = p.w_size, p.k
    middle = sum((p.nu // 2) * binom(2 * k - 2, i - 2) * binom(n1, k - 1 - i) for i in range(2, k))
    return binom(n1, k - 1) + middle + p.nu


def _path_free_triples(nu: int, budget: int) -> Multigraph:
    res = turan_tight_path(nu, 3, 2, budget=budget)
    if not res.proven:
        raise ResourceError(f"ex({nu}, P_2^3) not proven within budget {budget}")
    return res.witness


def construct_L2(p: ConstructionParams, budget: int = DEFAULT_BUDGET) -> SetFamily:
    """S plus first-vertex pairs of consecutive blocks (times C(W,k-3)) and, on
    each later vertex class V_j, an extremal P_2^3-free 3-graph (times C(W,k-4)).

    For k = 3 the last layer is empty and the result is the intermediate family.
    """
    k, nu = p.k, p.nu
    blocks = p.blocks
    pairs = [(blocks[2 * i - 2][0], blocks[2 * i - 1][0]) for i in range(1, nu // 2 + 1)]
    extra = _apex_layer(p, pairs, k - 3)
    if k >= 4 and nu >= 3:
        inner = _path_free_triples(nu, budget)
        for j in range(2, k + 1):
            vj = [blk[j - 1] for blk in blocks]
            triples = [tuple(vj[x - 1] for x in e) for e in inner.support]
            extra += _apex_layer(p, triples, k - 4)
    return SetFamily.from_sets(p.n, k, _star_part(p) + extra + blocks)


def size_L2(p: ConstructionParams, budget: int = DEFAULT_BUDGET) -> int:
    n1, k, nu = p.w_size, p.k, p.nu
    ex_nu = _path_free_triples(nu, budget).edge_count if nu >= 3 else 0
    return binom(n1, k - 1) + (nu // 2) * binom(n1, k - 3) + (k - 1) * ex_nu * binom(n1, k - 4) + nu


def path_free_inner(n1: int, r: int, budget: int = DEFAULT_BUDGET) -> Multigraph:
    """A P_2^r-free r-graph on [n1] with ex(n1, P_2^r) edges."""
    res = turan_tight_path(n1, r, 2, budget=budget)
    if res.proven:
        return res.witness
    if r == 2:
        # P_2^2-free graphs are matchings
        return Multigraph.from_edges(n1, 2, [(2 * i + 1, 2 * i + 2) for i in range(n1 // 2)])
    raise ResourceError(f"ex({n1}, P_2^{r}) not proven within budget {budget}")


def construct_L3(p: ConstructionParams, budget: int = DEFAULT_BUDGET) -> SetFamily:
    """nu = 1: S plus {y, v} ∪ A for the edges A of an extremal P_2^{k-2}-free graph on W."""
    if p.nu != 1:
        raise ParameterError(f"L3 is defined for nu = 1, got nu={p.nu}")
    if p.k < 4:
        raise ParameterError(f"L3 needs k >= 4, got k={p.k}")
    inner = path_free_inner(p.w_size, p.k - 2, budget)
    W = p.W
    v = p.blocks[0][0]
    extra = [(p.apex, v) + tuple(W[x - 1] for x in e) for e in inner.support]
    return SetFamily.from_sets(p.n, p.k, _star_part(p) + extra + p.blocks)


def size_L3(p: ConstructionParams, budget: int = DEFAULT_BUDGET) -> int:
    n1 = p.w_size
    return binom(n1, p.k - 1) + path_free_inner(n1, p.k - 2, budget).edge_count + 1


def construct_L4(p: ConstructionParams) -> SetFamily:
    """nu >= 2: S plus {y} ∪ e ∪ B, e running over positional matchings between
    every left block (first floor(nu/2)) and every right block."""
    if p.nu < 2:
        raise ParameterError(f"L4 needs nu >= 2, got nu={p.nu}")
    if p.k < 3:
        raise ParameterError(f"L4 needs k >= 3, got k={p.k}")
    blocks = p.blocks
    half = p.nu // 2
    edges = [
        (left[m], right[m])
        for left in blocks[:half]
        for right in blocks[half:]
        for m in range(p.k)
    ]
    extra = _apex_layer(p, edges, p.k - 3)
    return SetFamily.from_sets(p.n, p.k, _star_part(p) + extra + blocks)


def size_L4(p: ConstructionParams) -> int:
    n1, k = p.w_size, p.k
    return binom(n1, k - 1) + k * (p.nu * p.nu // 4) * binom(n1, k - 3) + p.nu


def l5_pattern(k: int, d: int) -> ForbiddenPattern:
    """Inner multigraphs must avoid every (k-2)-multigraph on k-1 vertices with d-2 edges."""
    return ForbiddenPattern(v=k - 1, e=d - 2, r=k - 2, simple=False)


def construct_L5(p: ConstructionParams, inner: Multigraph) -> SetFamily:
    """d >= 5: S plus {y, c_m^i} ∪ E for every block i and m = 1..mult(E).

    ``inner`` is a (k-2)-multigraph on [n-k*nu-1]; vertex x is placed on the
    x-th vertex of W.
    """
    if p.d is None or p.d < 5:
        raise ParameterError(f"L5 needs d >= 5, got d={p.d}")
    k = p.k
    if inner.r != k - 2 or inner.n != p.w_size:
        raise ParameterError(f"inner must be a {k - 2}-multigraph on {p.w_size} vertices")
    for e, m in inner.edges:
        if m > k:
            raise ConstructionUndefinedError(
                f"edge {e} has multiplicity {m} > k={k}: not enough distinct block vertices"
            )
    if not is_pattern_free(inner, l5_pattern(k, p.d)):
        raise ParameterError(f"inner multigraph contains {k - 1} vertices spanning {p.d - 2} edges")
    W = p.W
    extra = []
    for e, m in inner.edges:
        core = tuple(W[x - 1] for x in e)
        for blk in p.blocks:
            for c in blk[:m]:
                extra.append((p.apex, c) + core)
    return SetFamily.from_sets(p.n, k, _star_part(p) + extra + p.blocks)


def size_L5(p: ConstructionParams, inner: Multigraph) -> int:
    return binom(p.w_size, p.k - 1) + p.nu * inner.edge_count + p.nu


CONSTRUCTIONS = ("S", "L1", "L2", "L3", "L4", "L5")

# the d at which each construction is claimed cluster-free (L5: its own d)
DESIGNATED_D = {"S": 3, "L1": 3, "L2": 3, "L3": 4, "L4": 4}


def build(name: str, p: ConstructionParams, inner: Optional[Multigraph] = None,
          budget: int = DEFAULT_BUDGET) -> tuple[SetFamily, int]:
    """Generate a construction by name; returns (family, closed-form size)."""
    if name == "S":
        return construct_S(p), size_S(p)
    if name == "L1":
        return construct_L1(p), size_L1(p)
    if name == "L2":
        return construct_L2(p, budget), size_L2(p, budget)
    if name == "L3":
        return construct_L3(p, budget), size_L3(p, budget)
    if name == "L4":
        return construct_L4(p), size_L4(p)
    if name == "L5":
        if inner is None:
            inner = Multigraph(p.w_size, p.k - 2)
        return construct_L5(p, inner), size_L5(p, inner)
    raise ParameterError(f"unknown construction {name!r}; choose from {', '.join(CONSTRUCTIONS)}")
