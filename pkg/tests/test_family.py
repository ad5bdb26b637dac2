import random
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterfree.constructions import ConstructionParams, construct_L1, construct_L4, construct_S
from clusterfree.errors import FormatError, ParameterError, ResourceError
from clusterfree.family import (
    SetFamily,
    find_d_cluster,
    find_empty_t_tuple,
    is_d_cluster_free,
    is_star,
    is_t_wise_intersecting,
    link,
    matching_number,
    read_family,
    shadow,
    write_family,
)

from oracles import naive_has_cluster, naive_matching, naive_t_intersecting


def fam(n, k, *sets):
    return SetFamily.from_sets(n, k, sets)


def star(n, k, apex=1):
    return SetFamily.from_sets(n, k, [s for s in combinations(range(1, n + 1), k) if apex in s])


@st.composite
def families(draw, max_n=10, max_k=4, max_m=12):
    k = draw(st.integers(1, max_k))
    n = draw(st.integers(k, max_n))
    pool = list(combinations(range(1, n + 1), k))
    m = draw(st.integers(0, min(max_m, len(pool))))
    idx = draw(st.lists(st.integers(0, len(pool) - 1), min_size=m, max_size=m, unique=True))
    return SetFamily.from_sets(n, k, [pool[i] for i in idx])


# -- SetFamily ------------------------------------------------------------


def test_canonical_order_and_validation():
    f = fam(5, 2, (4, 3), (2, 1), (5, 1))
    assert f.members == ((1, 2), (1, 5), (3, 4))
    with pytest.raises(ParameterError):
        fam(5, 2, (1, 2), (2, 1))
    with pytest.raises(ParameterError):
        fam(5, 2, (1, 6))
    with pytest.raises(ParameterError):
        fam(5, 2, (1, 2, 3))
    assert len(SetFamily.from_sets(5, 2, [(1, 2), (2, 1)], dedupe=True)) == 1


@given(families())
def test_text_and_json_round_trip(f):
    assert SetFamily.from_text(f.to_text()) == f
    assert SetFamily.from_json(f.to_json()) == f
    assert SetFamily.from_text(f.to_text()).to_text() == f.to_text()


def test_file_io(tmp_path):
    f = fam(6, 3, (1, 2, 3), (4, 5, 6))
    write_family(f, tmp_path / "a.txt")
    write_family(f, tmp_path / "a.json", fmt="json")
    assert read_family(tmp_path / "a.txt") == f
    assert read_family(tmp_path / "a.json") == f
    (tmp_path / "e.txt").write_text("")
    with pytest.raises(FormatError):
        read_family(tmp_path / "e.txt")
    (tmp_path / "b.txt").write_text("6 3\n1 2 x\n")
    with pytest.raises(FormatError):
        read_family(tmp_path / "b.txt")
    (tmp_path / "c.txt").write_text("# comment\n4 2\n1 2\n")
    assert len(read_family(tmp_path / "c.txt")) == 1


# -- find_d_cluster ---------------------------------------------------------


def test_cluster_examples():
    f = fam(6, 3, (1, 2, 3), (1, 4, 5), (2, 4, 6))
    w = find_d_cluster(f, 3)
    assert w.indices == (0, 1, 2) and w.union_size == 6
    assert find_d_cluster(star(6, 3), 3) is None
    assert find_d_cluster(construct_L1(ConstructionParams(20, 3, 2)), 3) is None
    assert not is_d_cluster_free(fam(4, 2, (1, 2), (3, 4)), 2)
    assert is_d_cluster_free(fam(4, 2, (1, 2)), 2)
    assert is_d_cluster_free(construct_L4(ConstructionParams(20, 3, 2)), 4)


def test_cluster_parameter_errors():
    f = fam(4, 2, (1, 2), (3, 4))
    with pytest.raises(ParameterError):
        find_d_cluster(f, 1)
    with pytest.raises(ParameterError):
        find_d_cluster(f, 3)
    assert is_d_cluster_free(f, 3)


def test_cluster_oracle_random():
    rng = random.Random(20240611)
    disagreements = 0
    for _ in range(300):
        k = rng.randint(1, 4)
        n = rng.randint(k, 10)
        pool = list(combinations(range(1, n + 1), k))
        members = rng.sample(pool, rng.randint(0, min(12, len(pool))))
        f = SetFamily.from_sets(n, k, members)
        for d in (2, 3, 4):
            if d > len(f):
                continue
            w = find_d_cluster(f, d)
            if (w is not None) != naive_has_cluster(f.members, k, d):
                disagreements += 1
    assert disagreements == 0


@given(families(max_n=8, max_k=3, max_m=9), st.integers(2, 4))
@settings(max_examples=150, deadline=None)
def test_cluster_witness_is_lex_least(f, d):
    if d > len(f):
        return
    w = find_d_cluster(f, d)
    expected = None
    for idx in combinations(range(len(f)), d):
        sets = [set(f.members[i]) for i in idx]
        if len(set().union(*sets)) <= 2 * f.k and not set.intersection(*sets):
            expected = idx
            break
    assert (w.indices if w else None) == expected


@given(families(max_n=8, max_k=3, max_m=8), st.integers(2, 3), st.data())
@settings(max_examples=100, deadline=None)
def test_cluster_monotone_under_superfamily(f, d, data):
    if d > len(f) or is_d_cluster_free(f, d):
        return
    pool = [s for s in combinations(range(1, f.n + 1), f.k) if s not in f]
    extra = data.draw(st.lists(st.sampled_from(pool), unique=True)) if pool else []
    assert not is_d_cluster_free(f.union(extra), d)


@given(st.integers(3, 7), st.integers(2, 3), st.integers(2, 5))
@settings(max_examples=30, deadline=None)
def test_star_is_cluster_free_and_intersecting(n, k, d):
    s = star(n, k)
    assert is_d_cluster_free(s, d)
    for t in (2, 3):
        assert is_t_wise_intersecting(s, t)


# -- matching ---------------------------------------------------------------


def test_matching_examples():
    assert matching_number(fam(6, 2, (1, 2), (3, 4), (5, 6)))[0] == 3
    assert matching_number(star(5, 2))[0] == 1
    assert matching_number(construct_S(ConstructionParams(10, 3, 1)))[0] == 2
    value, w = matching_number(SetFamily(5, 2))
    assert value == 0 and w.indices == ()


@given(families(max_n=9, max_k=3, max_m=12))
@settings(max_examples=200, deadline=None)
def test_matching_matches_brute_force(f):
    value, w = matching_number(f)
    assert value == naive_matching(f.members)
    chosen = [set(f.members[i]) for i in w.indices]
    assert len(chosen) == value
    assert all(not a & b for a, b in combinations(chosen, 2))


def test_matching_budget():
    f = SetFamily.from_sets(9, 3, combinations(range(1, 10), 3))
    with pytest.raises(ResourceError):
        matching_number(f, budget=0)
    assert matching_number(f, budget=10)[0] == 3


@given(families())
@settings(max_examples=150, deadline=None)
def test_matching_two_iff_not_intersecting(f):
    assert (matching_number(f)[0] >= 2) == (not is_t_wise_intersecting(f, 2))


# -- t-wise intersecting, stars, links, shadow --------------------------------


def test_t_wise_examples():
    assert is_t_wise_intersecting(star(6, 3), 4)
    f = fam(5, 3, (1, 2, 3), (1, 2, 4), (3, 4, 5))
    assert not is_t_wise_intersecting(f, 3)
    assert find_empty_t_tuple(f, 3) == (0, 1, 2)
    assert not is_t_wise_intersecting(fam(4, 2, (1, 2), (3, 4)), 2)
    assert is_t_wise_intersecting(fam(4, 2, (1, 2)), 2)
    with pytest.raises(ParameterError):
        is_t_wise_intersecting(f, 1)


@given(families(max_m=9), st.integers(2, 4))
@settings(max_examples=150, deadline=None)
def test_t_wise_matches_brute_force(f, t):
    assert is_t_wise_intersecting(f, t) == naive_t_intersecting(f.members, t)


def test_star_examples():
    assert is_star(star(5, 2)) == 1
    assert is_star(fam(4, 2, (1, 2), (3, 4))) is None
    assert is_star(SetFamily(4, 2)) == 1
    s = construct_S(ConstructionParams(10, 3, 1))
    inside, _ = link(s, 1)
    assert is_star(inside) == 1
    assert is_star(fam(5, 3, (2, 3, 4), (2, 3, 5))) == 2


def test_link_examples():
    s = star(5, 2)
    assert link(s, 1) == (s, SetFamily(5, 2))
    a, b = link(fam(4, 2, (1, 2), (3, 4)), 1)
    assert a.members == ((1, 2),) and b.members == ((3, 4),)
    inside, outside = link(construct_S(ConstructionParams(10, 3, 1)), 1)
    assert len(inside) == comb(6, 2) and outside.members == ((2, 3, 4),)
    with pytest.raises(ParameterError):
        link(s, 6)


@given(families(), st.data())
def test_link_partitions(f, data):
    x = data.draw(st.integers(1, f.n))
    a, b = link(f, x)
    assert len(a) + len(b) == len(f)
    assert all(x in m for m in a) and all(x not in m for m in b)
    assert (a.n, a.k, b.n, b.k) == (f.n, f.k, f.n, f.k)


def test_shadow_examples():
    assert shadow(fam(3, 3, (1, 2, 3))).members == ((1, 2), (1, 3), (2, 3))
    assert len(shadow(SetFamily(4, 3))) == 0
    assert shadow(fam(4, 3, (1, 2, 3), (2, 3, 4))).members == ((1, 2), (1, 3), (2, 3), (2, 4), (3, 4))


@given(families())
def test_shadow_size_bounds(f):
    if not f.members:
        return
    sh = shadow(f)
    assert f.k <= len(sh) <= len(f) * f.k
    assert sh.k == f.k - 1
    assert all(any(set(s) <= set(m) for m in f) for s in sh)
