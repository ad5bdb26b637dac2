from itertools import combinations, combinations_with_replacement, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterfree.errors import FormatError, ParameterError
from clusterfree.multigraph import (
    DesignParams,
    ForbiddenPattern,
    Freeness,
    Multigraph,
    codegree_at_most_one,
    complete_graph,
    contains_tight_path,
    count_pattern_copies,
    find_tight_path,
    is_design,
    is_pattern_free,
    read_multigraph,
)

from oracles import naive_tight_path, pair_cover_ok

FANO = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]


@st.composite
def multigraphs(draw, max_n=6, max_r=3, max_mult=3, max_edges=8, simple=False):
    r = draw(st.integers(1, max_r))
    n = draw(st.integers(r, max_n))
    pool = list(combinations(range(1, n + 1), r))
    chosen = draw(st.lists(st.sampled_from(pool), max_size=max_edges, unique=True))
    top = 1 if simple else max_mult
    mults = draw(st.lists(st.integers(1, top), min_size=len(chosen), max_size=len(chosen)))
    return Multigraph.from_edges(n, r, dict(zip(chosen, mults)))


# -- type and serialization ---------------------------------------------------


def test_multigraph_basics():
    g = Multigraph.from_edges(4, 2, [(2, 1), (1, 2), (3, 4)])
    assert g.multiplicity == {(1, 2): 2, (3, 4): 1}
    assert g.edge_count == 3 and not g.is_simple
    assert g.span([1, 2, 3]) == 2
    with pytest.raises(ParameterError):
        Multigraph.from_edges(3, 2, [(1, 4)])
    with pytest.raises(ParameterError):
        Multigraph(3, 2, (((1, 2), 0),))
    with pytest.raises(ParameterError):
        ForbiddenPattern(v=2, e=1, r=3)
    with pytest.raises(ParameterError):
        ForbiddenPattern(v=3, e=0, r=2)


@given(multigraphs())
def test_text_round_trip(g):
    assert Multigraph.from_text(g.to_text()) == g


def test_serialization_limits(tmp_path):
    g = Multigraph.from_edges(3, 2, {(1, 2): 2**31})
    with pytest.raises(OverflowError):
        g.to_text()
    with pytest.raises(OverflowError):
        Multigraph.from_text(f"3 2\n1 2 {2**31}\n")
    with pytest.raises(FormatError):
        Multigraph.from_text("")
    with pytest.raises(FormatError):
        Multigraph.from_text("3 2\n1 2 3 4\n")
    (tmp_path / "g.txt").write_text("4 2\n1 2 3\n3 4\n")
    assert read_multigraph(tmp_path / "g.txt").edge_count == 4


# -- pattern freeness -----------------------------------------------------------


def test_pattern_examples():
    assert is_pattern_free(complete_graph(4, 2), ForbiddenPattern(2, 2, 2)) is Freeness.FREE
    g = Multigraph.from_edges(3, 2, {(1, 2): 3})
    assert is_pattern_free(g, ForbiddenPattern(2, 3, 2)) is Freeness.NOT_FREE
    path = Multigraph.from_edges(4, 3, [(1, 2, 3), (2, 3, 4)])
    assert is_pattern_free(path, ForbiddenPattern(4, 2, 3, simple=True)) is Freeness.NOT_FREE


def test_pattern_vacuous_and_errors():
    res = is_pattern_free(Multigraph(1, 2), ForbiddenPattern(2, 2, 2))
    assert res is Freeness.VACUOUS and bool(res)
    assert not Freeness.NOT_FREE
    with pytest.raises(ParameterError):
        is_pattern_free(complete_graph(4, 2), ForbiddenPattern(3, 2, 3))
    with pytest.raises(ParameterError):
        is_pattern_free(Multigraph.from_edges(3, 2, {(1, 2): 2}), ForbiddenPattern(2, 2, 2, simple=True))


def test_count_examples():
    assert count_pattern_copies(complete_graph(4, 2), ForbiddenPattern(3, 3, 2)) == 4
    assert count_pattern_copies(Multigraph(6, 3), ForbiddenPattern(4, 1, 3)) == 0
    assert count_pattern_copies(complete_graph(5, 3), ForbiddenPattern(4, 4, 3, simple=True)) == 5
    # isolated vertices pad v-sets
    assert count_pattern_copies(Multigraph.from_edges(5, 2, [(1, 2)]), ForbiddenPattern(3, 1, 2)) == 3


def _embeds(g, v, e):
    """Some sub-multigraph of g with exactly e edges lives on at most v vertices.

    A member of H_v^e embeds in g exactly when such a sub-multigraph exists
    (pad its support with isolated vertices up to v).
    """
    items = list(g.edges)
    for take in product(*[range(m + 1) for _, m in items]):
        if sum(take) != e:
            continue
        support = {x for (ed, _), t in zip(items, take) if t for x in ed}
        if len(support) <= v:
            return True
    return False


def test_span_criterion_equals_containment_oracle():
    """All 2-multigraphs with n <= 5 and at most 5 edges, every (v, e)."""
    checked = 0
    for n in range(2, 6):
        pairs = list(combinations(range(1, n + 1), 2))
        for total in range(0, 6):
            for multiset in combinations_with_replacement(pairs, total):
                g = Multigraph.from_edges(n, 2, list(multiset))
                for v in range(2, n + 1):
                    for e in range(1, 7):
                        p = ForbiddenPattern(v, e, 2)
                        assert bool(is_pattern_free(g, p)) == (not _embeds(g, v, e)), (g, v, e)
                        checked += 1
    assert checked > 50000


@given(multigraphs(), st.integers(1, 6), st.integers(1, 7))
@settings(max_examples=200, deadline=None)
def test_count_zero_iff_free(g, v, e):
    if v < g.r or g.n < v:
        return
    p = ForbiddenPattern(v, e, g.r)
    assert (count_pattern_copies(g, p) == 0) == bool(is_pattern_free(g, p))
    # the count is the number of heavy v-sets
    heavy = sum(1 for vs in combinations(range(1, g.n + 1), v) if g.span(vs) >= e)
    assert count_pattern_copies(g, p) == heavy


@given(multigraphs(), st.integers(2, 5), st.integers(1, 6), st.data())
@settings(max_examples=150, deadline=None)
def test_count_monotone_under_additions(g, v, e, data):
    if v < g.r or g.n < v:
        return
    p = ForbiddenPattern(v, e, g.r)
    edge = data.draw(st.sampled_from(list(combinations(range(1, g.n + 1), g.r))))
    assert count_pattern_copies(g.with_edge(edge), p) >= count_pattern_copies(g, p)


@given(multigraphs(simple=True), st.integers(2, 5), st.integers(1, 6))
@settings(max_examples=150, deadline=None)
def test_simple_and_multigraph_patterns_agree_on_simple_graphs(g, v, e):
    if v < g.r or g.n < v:
        return
    assert is_pattern_free(g, ForbiddenPattern(v, e, g.r, simple=True)) == \
        is_pattern_free(g, ForbiddenPattern(v, e, g.r, simple=False))


# -- tight paths and designs --------------------------------------------------------


def test_tight_path_examples():
    assert contains_tight_path(Multigraph.from_edges(4, 3, [(1, 2, 3), (2, 3, 4)]), 2)
    assert not contains_tight_path(Multigraph.from_edges(6, 2, [(1, 2), (3, 4), (5, 6)]), 2)
    assert not contains_tight_path(Multigraph.from_edges(7, 3, FANO), 2)
    with pytest.raises(ParameterError):
        contains_tight_path(Multigraph.from_edges(3, 2, {(1, 2): 2}), 2)


@given(multigraphs(max_n=6, max_r=3, max_edges=6, simple=True))
@settings(max_examples=150, deadline=None)
def test_tight_path_two_iff_codegree(g):
    if g.r < 2:
        return
    assert contains_tight_path(g, 2) == (not codegree_at_most_one(g))


@given(multigraphs(max_n=6, max_r=3, max_edges=6, simple=True), st.integers(1, 3))
@settings(max_examples=150, deadline=None)
def test_tight_path_matches_naive(g, l):
    assert contains_tight_path(g, l) == naive_tight_path(g.support, g.r, l)
    seq = find_tight_path(g, l)
    if seq is not None:
        assert len(set(seq)) == l + g.r - 1
        assert all(tuple(sorted(seq[i:i + g.r])) in g.multiplicity for i in range(l))


def test_design_examples():
    fano = Multigraph.from_edges(7, 3, FANO)
    assert is_design(fano, DesignParams(2, 1))
    assert not is_design(Multigraph.from_edges(7, 3, FANO[:-1]), DesignParams(2, 1))
    assert is_design(complete_graph(6, 3), DesignParams(3, 1))
    assert is_design(complete_graph(6, 3), DesignParams(2, 4))
    with pytest.raises(ParameterError):
        is_design(Multigraph.from_edges(3, 2, {(1, 2): 2}), DesignParams(1, 1))


@given(multigraphs(max_n=6, max_r=3, simple=True), st.integers(0, 3), st.integers(1, 3))
@settings(max_examples=150, deadline=None)
def test_design_matches_naive(g, t, lam):
    if t > g.r:
        return
    assert is_design(g, DesignParams(t, lam)) == pair_cover_ok(g.support, g.n, t, lam)
