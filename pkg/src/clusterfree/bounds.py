"""Numeric evaluation of the lower/upper bound expressions for f(n,k,d,nu).

Upper bounds that hold only for large n carry an o(1) term; it is set to 0 and
the entry is flagged ``asymptotic``.  Nothing here asserts those bounds.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

from .constructions import (
    ConstructionParams,
    binom,
    build,
    l5_pattern,
    path_free_inner,
)
from .errors import ConstructionUndefinedError, ParameterError, ResourceError
from .family import find_d_cluster, matching_number
from .multigraph import Multigraph
from .search import compute_g_exact, turan_multigraph, turan_tight_path

Number = Union[int, Fraction]
REPORT_BUDGET = 10**5


@dataclass
class Entry:
    """One labelled quantity: a constant or a bound expression.

    ``theorem`` names the parameter regime the expression belongs to.
    """

    symbol: str
    theorem: str
    role: str
    value: Optional[Number]
    status: str = "exact"
    asymptotic: bool = False
    note: str = ""

    def as_json(self) -> dict[str, Any]:
        out = asdict(self)
        v = self.value
        if isinstance(v, Fraction):
            out["value"] = v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return out


@dataclass
class BoundReport:
    n: int
    k: int
    d: int
    nu: int
    lower_bound_value: int
    lower_bound_construction: str
    constructions: dict[str, Any] = field(default_factory=dict)
    constants: list[Entry] = field(default_factory=list)
    bounds: list[Entry] = field(default_factory=list)

    def constant(self, symbol: str) -> Entry:
        for e in self.constants:
            if e.symbol == symbol:
                return e
        raise KeyError(symbol)

    def bound(self, symbol: str) -> Entry:
        for e in self.bounds:
            if e.symbol == symbol:
                return e
        raise KeyError(symbol)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n, "k": self.k, "d": self.d, "nu": self.nu,
                "lower_bound_value": self.lower_bound_value,
                "lower_bound_construction": self.lower_bound_construction,
                "constructions": self.constructions,
                "constants": [e.as_json() for e in self.constants],
                "bounds": [e.as_json() for e in self.bounds],
            },
            indent=2,
        )


def _verified_size(name: str, p: ConstructionParams, d: int, inner: Optional[Multigraph],
                   budget: int) -> dict[str, Any]:
    try:
        fam, closed = build(name, p, inner=inner, budget=budget)
    except (ParameterError, ResourceError, ConstructionUndefinedError) as exc:
        return {"size": None, "verified": False, "note": str(exc)}
    free = d > len(fam) or find_d_cluster(fam, d) is None
    matching = matching_number(fam)[0]
    ok = free and matching >= p.nu + 1 and len(fam) == closed
    return {"size": len(fam), "closed_form": closed, "cluster_free": free,
            "matching_number": matching, "verified": ok}


def bound_report(n: int, k: int, d: int, nu: int, budget: int = REPORT_BUDGET) -> BoundReport:
    if not 3 <= d <= k:
        raise ParameterError(f"need 3 <= d <= k, got d={d}, k={k}")
    if nu < 0:
        raise ParameterError(f"nu must be >= 0, got {nu}")
    p = ConstructionParams(n, k, nu, d)
    n1 = p.w_size
    consts: list[Entry] = []
    bounds: list[Entry] = []
    candidates: list[tuple[str, Optional[Multigraph]]] = [("S", None)]

    # M_d = g(k*nu, k, d, nu-1); t = nu-1 < 2 has no meaning
    m_entry = Entry(f"M_{d}", {3: "d=3", 4: "d=4"}.get(d, "d>=5"), "g(k*nu, k, d, nu-1)", None, "not computed")
    if nu - 1 >= 2:
        res = compute_g_exact(k * nu, k, d, nu - 1, budget=budget)
        if res.value is not None:
            m_entry.value, m_entry.status = res.value, res.status.value
        else:
            m_entry.status = res.status.value
    else:
        m_entry.note = "t = nu-1 < 2"
    consts.append(m_entry)

    if d == 3:
        candidates += [("L1", None), ("L2", None)]
        ex_nu = turan_tight_path(nu, 3, 2, budget=budget).value if nu >= 3 else 0
        c1 = max((k - 1) * ex_nu, 2 * (k - 1) * (nu // 2))
        c2 = Fraction(k, 3) * binom(nu, 2) + (k - 1) * nu
        consts.append(Entry("ex(nu,P_2^3)", "d=3", "inner Turán number", ex_nu))
        consts.append(Entry("c_1", "d=3", "lower estimate", c1))
        consts.append(Entry("c_2", "d=3", "upper estimate", c2))
        head = binom(n1, k - 1) + (nu // 2) * binom(n1, k - 3)
        bounds.append(Entry("f_lower", "d=3", "lower bound with c_1 at its estimate",
                            head + c1 * binom(n1, k - 4) + nu, asymptotic=True))
        upper = head + c2 * binom(n1, k - 4)
        if isinstance(m_entry.value, int):
            bounds.append(Entry("f_upper", "d=3", "upper bound, o(1) = 0", upper + m_entry.value,
                                status=m_entry.status, asymptotic=True))
        else:
            bounds.append(Entry("f_upper", "d=3", "upper bound without M_3, o(1) = 0", upper,
                                status="requires M_3", asymptotic=True))
        if nu == 1:
            bounds.append(Entry("f(n,k,3,1)", "d=3, nu=1", "asymptotic value",
                                binom(n - k - 1, k - 1) + 1, asymptotic=True))
    elif d == 4:
        cp = k * (nu * nu // 4)
        consts.append(Entry("c'_1", "d=4", "lower estimate k*floor(nu^2/4)", cp))
        consts.append(Entry("c'_2", "d=4", "lower estimate k*floor(nu^2/4)", cp, status="lower estimate",
                            note="exact value unknown"))
        bounds.append(Entry("f_lower", "d=4", "lower bound with c'_1 at its estimate",
                            binom(n1, k - 1) + cp * binom(n1, k - 3), asymptotic=True))
        bounds.append(Entry("f_upper", "d=4", "upper bound", None,
                            status="requires unknown c'_2", asymptotic=True))
        if nu == 1 and k >= 4:
            candidates.append(("L3", None))
            try:
                ex_in = path_free_inner(n1, k - 2, budget).edge_count
                bounds.append(Entry("f_lower_nu1", "d=4", "lower bound for nu = 1",
                                    binom(n - k - 1, k - 1) + ex_in + 1))
            except ResourceError as exc:
                bounds.append(Entry("f_lower_nu1", "d=4", "lower bound for nu = 1", None,
                                    status="not computed", note=str(exc)))
        if nu >= 2:
            candidates.append(("L4", None))
    else:
        pat = l5_pattern(k, d)
        res = turan_multigraph(n1, pat, budget=budget) if n1 >= pat.v else None
        if res is None:
            consts.append(Entry("EX^{k-2}(n',H_{k-1}^{d-2})", "d>=5", "inner Turán number", None,
                                status="unbounded"))
        else:
            ex_val = res.value
            consts.append(Entry("EX^{k-2}(n',H_{k-1}^{d-2})", "d>=5", "inner Turán number", ex_val,
                                status=res.status.value))
            bounds.append(Entry("f_lower", "d>=5", "lower bound",
                                binom(n1, k - 1) + nu * ex_val + nu, status=res.status.value))
            bounds.append(Entry("f_upper", "d>=5", "upper bound, o(1) = 0",
                                binom(n1, k - 1) + nu * ex_val, status=res.status.value,
                                asymptotic=True))
            candidates.append(("L5", res.witness))

    table: dict[str, Any] = {}
    best, best_name = -1, ""
    for name, inner in candidates:
        info = _verified_size(name, p, d, inner, budget)
        table[name] = info
        if info["verified"] and info["size"] > best:
            best, best_name = info["size"], name
    return BoundReport(n, k, d, nu, best, best_name, table, consts, bounds)
