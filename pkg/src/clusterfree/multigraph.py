"""r-uniform multigraphs, span-based pattern freeness, tight paths, designs."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from math import comb
from pathlib import Path
from typing import Iterable, Mapping, Optional

from .errors import FormatError, ParameterError

Edge = tuple[int, ...]
MAX_SERIAL_MULTIPLICITY = 2**31 - 1


@dataclass(frozen=True)
class Multigraph:
    """r-multigraph on [n]; ``edges`` holds (edge, multiplicity) in canonical order."""

    n: int
    r: int
    edges: tuple[tuple[Edge, int], ...] = ()

    def __post_init__(self) -> None:
        merged: dict[Edge, int] = {}
        for e, mult in self.edges:
            s = tuple(sorted(int(v) for v in e))
            if len(s) != self.r or len(set(s)) != self.r:
                raise ParameterError(f"edge {tuple(e)} is not an {self.r}-set")
            if s and (s[0] < 1 or s[-1] > self.n):
                raise ParameterError(f"edge {s} has a vertex outside 1..{self.n}")
            if mult < 1:
                raise ParameterError(f"multiplicity of {s} must be >= 1, got {mult}")
            merged[s] = merged.get(s, 0) + int(mult)
        object.__setattr__(self, "edges", tuple(sorted(merged.items())))

    @classmethod
    def from_edges(cls, n: int, r: int, edges: Mapping[Edge, int] | Iterable[Edge]) -> "Multigraph":
        """Build from a {edge: multiplicity} map or an iterable of edges (repeats add up)."""
        if isinstance(edges, Mapping):
            items = [(tuple(e), m) for e, m in edges.items() if m]
        else:
            items = [(tuple(e), 1) for e in edges]
        return cls(n, r, tuple(items))

    @cached_property
    def multiplicity(self) -> dict[Edge, int]:
        return dict(self.edges)

    @property
    def edge_count(self) -> int:
        return sum(m for _, m in self.edges)

    @property
    def is_simple(self) -> bool:
        return all(m == 1 for _, m in self.edges)

    @property
    def support(self) -> tuple[Edge, ...]:
        return tuple(e for e, _ in self.edges)

    def with_edge(self, edge: Iterable[int], mult: int = 1) -> "Multigraph":
        return Multigraph(self.n, self.r, self.edges + ((tuple(edge), mult),))

    def relabel(self, mapping: Mapping[int, int], n: Optional[int] = None) -> "Multigraph":
        return Multigraph(n if n is not None else self.n, self.r,
                          tuple((tuple(mapping[v] for v in e), m) for e, m in self.edges))

    def span(self, vertices: Iterable[int]) -> int:
        """Edges (with multiplicity) inside a vertex set."""
        vs = set(vertices)
        return sum(m for e, m in self.edges if vs.issuperset(e))

    def to_text(self) -> str:
        lines = [f"{self.n} {self.r}"]
        simple = self.is_simple
        for e, m in self.edges:
            if m > MAX_SERIAL_MULTIPLICITY:
                raise OverflowError(f"multiplicity {m} of {e} exceeds 2^31-1")
            tail = "" if simple else f" {m}"
            lines.append(" ".join(map(str, e)) + tail)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Multigraph":
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not rows:
            raise FormatError("empty multigraph file")
        try:
            head = [int(x) for x in rows[0]]
            if len(head) != 2:
                raise FormatError("first line must be 'n r'")
            n, r = head
            items = []
            for row in rows[1:]:
                vals = [int(x) for x in row]
                if len(vals) == r:
                    items.append((tuple(vals), 1))
                elif len(vals) == r + 1:
                    if vals[-1] > MAX_SERIAL_MULTIPLICITY:
                        raise OverflowError(f"multiplicity {vals[-1]} exceeds 2^31-1")
                    items.append((tuple(vals[:-1]), vals[-1]))
                else:
                    raise FormatError(f"edge line {row} has wrong length for r={r}")
            return cls(n, r, tuple(items))
        except ValueError as exc:
            if isinstance(exc, FormatError):
                raise
            raise FormatError(str(exc)) from None


def read_multigraph(path: str | Path) -> Multigraph:
    return Multigraph.from_text(Path(path).read_text())


def complete_graph(n: int, r: int) -> Multigraph:
    return Multigraph.from_edges(n, r, combinations(range(1, n + 1), r))


@dataclass(frozen=True)
class ForbiddenPattern:
    """Every r-(multi)graph on v vertices with e edges; simple=True restricts to r-graphs."""

    v: int
    e: int
    r: int
    simple: bool = False

    def __post_init__(self) -> None:
        if self.r > self.v:
            raise ParameterError(f"pattern needs r <= v, got r={self.r}, v={self.v}")
        if self.e < 1:
            raise ParameterError(f"pattern needs e >= 1, got {self.e}")


@dataclass(frozen=True)
class DesignParams:
    t: int
    lam: int

    def __post_init__(self) -> None:
        if self.t < 0 or self.lam < 1:
            raise ParameterError(f"bad design parameters t={self.t}, lambda={self.lam}")


class Freeness(enum.Enum):
    FREE = "free"
    NOT_FREE = "not-free"
    VACUOUS = "vacuously-free"  # fewer than v vertices: nothing can embed

    def __bool__(self) -> bool:
        return self is not Freeness.NOT_FREE


def _check_pattern(g: Multigraph, p: ForbiddenPattern) -> None:
    if g.r != p.r:
        raise ParameterError(f"uniformity mismatch: graph r={g.r}, pattern r={p.r}")
    if p.simple and not g.is_simple:
        raise ParameterError("simple pattern requested for a graph with repeated edges")


def _heavy_vsets(g: Multigraph, p: ForbiddenPattern):
    """v-subsets spanning at least e edges, counted with multiplicity."""
    mult = g.multiplicity
    vertices = sorted({v for e in mult for v in e})
    # only vertices touching edges can raise a span; pad with isolated ones after
    if not mult:
        return
    n_iso = g.n - len(vertices)
    for size in range(max(p.r, p.v - n_iso), min(p.v, len(vertices)) + 1):
        for core in combinations(vertices, size):
            total = 0
            for e in combinations(core, p.r):
                total += mult.get(e, 0)
            if total >= p.e:
                # count the v-sets: choose the rest among isolated vertices
                yield core, comb(n_iso, p.v - size)


def is_pattern_free(g: Multigraph, p: ForbiddenPattern) -> Freeness:
    """No v vertices span e or more edges (the span criterion)."""
    _check_pattern(g, p)
    if g.n < p.v:
        return Freeness.VACUOUS
    for _ in _heavy_vsets(g, p):
        return Freeness.NOT_FREE
    return Freeness.FREE


def count_pattern_copies(g: Multigraph, p: ForbiddenPattern) -> int:
    """Number of v-subsets of [n] spanning at least e edges."""
    _check_pattern(g, p)
    if g.n < p.v:
        return 0
    return sum(w for _, w in _heavy_vsets(g, p))


def contains_tight_path(g: Multigraph, l: int) -> bool:
    """Is there a vertex sequence of length l+r-1 whose l windows of r are all edges?"""
    if not g.is_simple:
        raise ParameterError("tight paths are defined for simple graphs")
    if l < 1:
        raise ParameterError(f"path length must be >= 1, got {l}")
    return find_tight_path(g, l) is not None


def find_tight_path(g: Multigraph, l: int) -> Optional[tuple[int, ...]]:
    r = g.r
    edges = set(g.support)
    if not edges:
        return None
    if l == 1:
        return next(iter(g.support))
    # windows keyed by their first r-1 vertices as a set
    by_prefix: dict[frozenset, list[Edge]] = {}
    for e in edges:
        for sub in combinations(e, r - 1):
            by_prefix.setdefault(frozenset(sub), []).append(e)

    def extend(seq: list[int], count: int) -> bool:
        if count == l:
            return True
        tail = seq[len(seq) - (r - 1):] if r > 1 else []
        for e in by_prefix.get(frozenset(tail), ()):
            (w,) = set(e) - set(tail)
            if w in seq:
                continue
            seq.append(w)
            if extend(seq, count + 1):
                return True
            seq.pop()
        return False

    for e in g.support:
        for order in permutations(e):
            seq = list(order)
            if extend(seq, 1):
                return tuple(seq)
    return None


def codegree_at_most_one(g: Multigraph) -> bool:
    """Every (r-1)-set lies in at most one edge (shadow degree check)."""
    deg = Counter(sub for e, m in g.edges for sub in combinations(e, g.r - 1) for _ in range(m))
    return all(c <= 1 for c in deg.values())


def is_design(g: Multigraph, params: DesignParams) -> bool:
    """Every t-subset of [n] lies in exactly lambda edges."""
    if not g.is_simple:
        raise ParameterError("design check needs a simple graph")
    t, lam = params.t, params.lam
    if not t <= g.r <= g.n:
        raise ParameterError(f"need t <= r <= n, got t={t}, r={g.r}, n={g.n}")
    cover = Counter(sub for e in g.support for sub in combinations(e, t))
    if len(cover) != comb(g.n, t):
        return False
    return all(c == lam for c in cover.values())
