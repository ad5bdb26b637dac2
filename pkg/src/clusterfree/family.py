"""k-uniform set families on [n] and the exact predicates used throughout.

Vertices are 1-based.  Internally a member is also held as an int bitmask with
bit ``v`` set for vertex ``v``, and the search routines below work with a
second kind of bitset: ints indexed by *member position*, so that "all members
containing x" or "all members compatible with a partial selection" are single
integers combined with ``&``/``|``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence

from .errors import FormatError, ParameterError, ResourceError

DEFAULT_BUDGET = 10**7

Member = tuple[int, ...]


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def from_mask(mask: int) -> Member:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the positions of set bits in ascending order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def popcount(x: int) -> int:
    return x.bit_count()


@dataclass(frozen=True)
class SetFamily:
    """A family of distinct k-subsets of [n], kept in lexicographic order."""

    n: int
    k: int
    members: tuple[Member, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0 or self.k < 0:
            raise ParameterError(f"n and k must be non-negative, got n={self.n}, k={self.k}")
        canon = []
        for m in self.members:
            s = tuple(sorted(int(v) for v in m))
            if len(s) != self.k or len(set(s)) != self.k:
                raise ParameterError(f"member {tuple(m)} is not a {self.k}-set")
            if s and (s[0] < 1 or s[-1] > self.n):
                raise ParameterError(f"member {s} has a vertex outside 1..{self.n}")
            canon.append(s)
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise ParameterError(f"duplicate member {a}")
        object.__setattr__(self, "members", tuple(canon))

    @classmethod
    def from_sets(cls, n: int, k: int, sets: Iterable[Iterable[int]], dedupe: bool = False) -> "SetFamily":
        items = [tuple(sorted(s)) for s in sets]
        if dedupe:
            items = list(dict.fromkeys(items))
        return cls(n, k, tuple(items))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Member]:
        return iter(self.members)

    def __contains__(self, item: Iterable[int]) -> bool:
        return self.index_of(item) is not None

    def index_of(self, item: Iterable[int]) -> Optional[int]:
        return self._position.get(tuple(sorted(item)))

    @cached_property
    def _position(self) -> dict[Member, int]:
        return {m: i for i, m in enumerate(self.members)}

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(to_mask(m) for m in self.members)

    @cached_property
    def containing(self) -> tuple[int, ...]:
        """``containing[x]`` is the member-index bitset of members holding x."""
        out = [0] * (self.n + 1)
        for i, m in enumerate(self.members):
            for v in m:
                out[v] |= 1 << i
        return tuple(out)

    @property
    def all_bits(self) -> int:
        return (1 << len(self.members)) - 1

    def union(self, other: Iterable[Iterable[int]]) -> "SetFamily":
        return SetFamily.from_sets(self.n, self.k, list(self.members) + [tuple(s) for s in other], dedupe=True)

    def subfamily(self, indices: Iterable[int]) -> "SetFamily":
        return SetFamily(self.n, self.k, tuple(self.members[i] for i in indices))

    # -- serialization ---------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.n} {self.k}"]
        lines.extend(" ".join(map(str, m)) for m in self.members)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SetFamily":
        rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        if not rows:
            raise FormatError("empty family file")
        try:
            head = [int(x) for x in rows[0]]
            body = [tuple(int(x) for x in r) for r in rows[1:]]
        except ValueError as exc:
            raise FormatError(f"non-integer token: {exc}") from None
        if len(head) != 2:
            raise FormatError("first line must be 'n k'")
        try:
            return cls.from_sets(head[0], head[1], body)
        except ParameterError as exc:
            raise FormatError(str(exc)) from None

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "k": self.k, "members": [list(m) for m in self.members]})

    @classmethod
    def from_json(cls, text: str) -> "SetFamily":
        try:
            obj = json.loads(text)
            return cls.from_sets(int(obj["n"]), int(obj["k"]), obj["members"])
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise FormatError(f"bad family JSON: {exc}") from None
        except ParameterError as exc:
            raise FormatError(str(exc)) from None


def read_family(path: str | Path) -> SetFamily:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return SetFamily.from_json(text)
    return SetFamily.from_text(text)


def write_family(family: SetFamily, path: str | Path, fmt: str = "text") -> None:
    Path(path).write_text(family.to_json() + "\n" if fmt == "json" else family.to_text())


# ---------------------------------------------------------------------------
# d-clusters


@dataclass(frozen=True)
class ClusterWitness:
    indices: tuple[int, ...]
    union_size: int
    d: int


@dataclass(frozen=True)
class MatchingWitness:
    indices: tuple[int, ...] = ()

    @property
    def size(self) -> int:
        return len(self.indices)


class _ClusterSearch:
    """Depth-first search for d members with union <= 2k and empty intersection.

    Members are tried in index order at every depth, so the first hit is the
    lexicographically least index tuple.  Two prunes are applied:

    * union: a candidate B is kept only if |U ∪ B| <= 2k for the running union U;
    * killer lookahead: every vertex x of the running intersection must be
      missed by some later member K.  Picking the x with the fewest such
      "killers", every remaining member B must satisfy |U ∪ B ∪ K| <= 2k for one
      of them (or be a killer itself).
    """

    KILLER_LIMIT = 48

    def __init__(self, family: SetFamily, d: int):
        self.fam = family
        self.d = d
        self.cap = 2 * family.k
        self.masks = family.masks
        self.contain = family.containing
        self.all = family.all_bits
        self.vertices = range(1, family.n + 1)
        self._compat: dict[int, int] = {}

    def compat(self, union: int) -> int:
        """Member bitset of B with |union ∪ B| <= 2k."""
        hit = self._compat.get(union)
        if hit is not None:
            return hit
        slack = self.cap - union.bit_count()
        if slack < 0:
            res = 0
        elif slack >= self.fam.k:
            res = self.all
        else:
            # counters[j] = members with >= j+1 vertices outside the union
            counters = [0] * (slack + 1)
            for x in self.vertices:
                if union >> x & 1:
                    continue
                mx = self.contain[x]
                if not mx:
                    continue
                for j in range(slack, 0, -1):
                    counters[j] |= counters[j - 1] & mx
                counters[0] |= mx
            res = self.all & ~counters[slack]
        if len(self._compat) < 200_000:
            self._compat[union] = res
        return res

    def run(self) -> Optional[tuple[int, ...]]:
        chosen: list[int] = []
        masks = self.masks
        for i in range(len(masks)):
            chosen.append(i)
            if self._extend(chosen, masks[i], masks[i]):
                return tuple(chosen)
            chosen.pop()
        return None

    def _extend(self, chosen: list[int], union: int, inter: int) -> bool:
        remaining = self.d - len(chosen)
        if remaining == 0:
            return inter == 0
        last = chosen[-1]
        cand = self.compat(union) & ~((1 << (last + 1)) - 1)
        if cand.bit_count() < remaining:
            return False
        contain = self.contain
        if remaining == 1:
            miss = cand
            for x in iter_bits(inter):
                miss &= ~contain[x]
                if not miss:
                    return False
            chosen.append((miss & -miss).bit_length() - 1)
            return True
        best_x_killers = -1
        best_count = None
        for x in iter_bits(inter):
            killers = cand & ~contain[x]
            if not killers:
                return False
            c = killers.bit_count()
            if best_count is None or c < best_count:
                best_count, best_x_killers = c, killers
        if best_count is not None and best_count <= self.KILLER_LIMIT:
            allowed = best_x_killers
            masks = self.masks
            for kidx in iter_bits(best_x_killers):
                allowed |= self.compat(union | masks[kidx])
            cand &= allowed
            if cand.bit_count() < remaining:
                return False
        masks = self.masks
        for i in iter_bits(cand):
            chosen.append(i)
            if self._extend(chosen, union | masks[i], inter & masks[i]):
                return True
            chosen.pop()
        return False


def find_d_cluster(family: SetFamily, d: int) -> Optional[ClusterWitness]:
    """Return the lexicographically least d-cluster of ``family``, or None."""
    if d < 2 or d > len(family):
        raise ParameterError(f"need 2 <= d <= |F| = {len(family)}, got d={d}")
    found = _ClusterSearch(family, d).run()
    if found is None:
        return None
    union = 0
    for i in found:
        union |= family.masks[i]
    return ClusterWitness(found, union.bit_count(), d)


def is_d_cluster_free(family: SetFamily, d: int) -> bool:
    if d < 2:
        raise ParameterError(f"d must be >= 2, got {d}")
    if d > len(family):
        return True
    return find_d_cluster(family, d) is None


# ---------------------------------------------------------------------------
# matching number


def _greedy_matching(masks: Sequence[int]) -> list[int]:
    used = 0
    out = []
    for i, m in enumerate(masks):
        if not m & used:
            out.append(i)
            used |= m
    return out


def matching_number(family: SetFamily, budget: int = DEFAULT_BUDGET) -> tuple[int, MatchingWitness]:
    """Exact maximum number of pairwise disjoint members, with a witness.

    Branch on the live vertex of least degree: either one of the members
    through it is used, or none is.  Upper bounds are min(|live vertices|//k,
    size of a greedy hitting set of the live members).
    """
    m = len(family)
    if m == 0:
        return 0, MatchingWitness(())
    masks = family.masks
    contain = family.containing
    k = family.k
    if k == 0:
        return 1, MatchingWitness((0,))
    n = family.n
    conflict = []
    for mask in masks:
        c = 0
        for v in from_mask(mask):
            c |= contain[v]
        conflict.append(c)

    best = _greedy_matching(masks)
    nodes = 0

    def upper(cand: int) -> tuple[int, int]:
        live = 0
        xmin, dmin = -1, None
        degs = {}
        for x in range(1, n + 1):
            cx = cand & contain[x]
            if cx:
                live += 1
                dx = cx.bit_count()
                degs[x] = cx
                if dmin is None or dx < dmin:
                    xmin, dmin = x, dx
        ub = live // k
        # greedy hitting set: every vertex meets at most one matched member
        rest = cand
        hits = 0
        while rest and hits < ub:
            bx = max(degs, key=lambda x: (rest & degs[x]).bit_count())
            rest &= ~degs[bx]
            hits += 1
        if not rest:
            ub = min(ub, hits)
        return ub, xmin

    def rec(cand: int, chosen: list[int]) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise ResourceError(f"matching search exceeded {budget} nodes")
        if len(chosen) > len(best):
            best = list(chosen)
        if not cand:
            return
        ub, x = upper(cand)
        if len(chosen) + ub <= len(best):
            return
        through = cand & contain[x]
        for i in iter_bits(through):
            chosen.append(i)
            rec(cand & ~conflict[i], chosen)
            chosen.pop()
            if len(chosen) + ub <= len(best):
                return
        rec(cand & ~through, chosen)

    rec(family.all_bits, [])
    return len(best), MatchingWitness(tuple(sorted(best)))


# ---------------------------------------------------------------------------
# intersection structure


def is_t_wise_intersecting(family: SetFamily, t: int) -> bool:
    if t < 2:
        raise ParameterError(f"t must be >= 2, got {t}")
    return find_empty_t_tuple(family, t) is None


def find_empty_t_tuple(family: SetFamily, t: int) -> Optional[tuple[int, ...]]:
    """Least t distinct member indices with empty common intersection, if any."""
    if len(family) < t:
        return None
    masks = family.masks
    contain = family.containing
    m = len(masks)

    def rec(start: int, inter: int, chosen: list[int]) -> bool:
        remaining = t - len(chosen)
        if remaining == 0:
            return inter == 0
        # some later member must miss each vertex of inter
        later = family.all_bits & ~((1 << start) - 1)
        for x in iter_bits(inter):
            if not later & ~contain[x]:
                return False
        for i in range(start, m - remaining + 1):
            chosen.append(i)
            if rec(i + 1, inter & masks[i], chosen):
                return True
            chosen.pop()
        return False

    chosen: list[int] = []
    full = (1 << (family.n + 1)) - 2
    return tuple(chosen) if rec(0, full, chosen) else None


def is_star(family: SetFamily) -> Optional[int]:
    """Least vertex lying in every member; the empty family is a star at 1."""
    if not family.members:
        return 1
    common = (1 << (family.n + 1)) - 2
    for mask in family.masks:
        common &= mask
    if not common:
        return None
    return (common & -common).bit_length() - 1


def link(family: SetFamily, x: int) -> tuple[SetFamily, SetFamily]:
    """Split into (members containing x, members avoiding x)."""
    if not 1 <= x <= family.n:
        raise ParameterError(f"vertex {x} outside 1..{family.n}")
    inside = tuple(m for m in family.members if x in m)
    outside = tuple(m for m in family.members if x not in m)
    return SetFamily(family.n, family.k, inside), SetFamily(family.n, family.k, outside)


def shadow(family: SetFamily) -> SetFamily:
    if family.k < 1:
        raise ParameterError("shadow needs k >= 1")
    subs = {c for m in family.members for c in combinations(m, family.k - 1)}
    return SetFamily(family.n, family.k - 1, tuple(subs))
