import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcw.strata import (
    StrataError,
    StratumLabel,
    basepoint_block,
    codim1_face_count,
    codim2_consistency,
    collapse_blocks,
    covering_dimension_drops,
    disjoint_collections,
    enumerate_nested,
    face_intersection,
    face_poset,
    flatten,
    induction_schedule,
    is_nested,
    legal_codim2_pairs,
    propagator_index_set,
    quotient,
    quotient_blocks,
    s_dot_a,
    schedule_closure_ok,
    stratum_dimension,
)


def test_codim1_faces_n2():
    assert enumerate_nested(2, 1) == [((0, 1),), ((0, 2),), ((1, 2),), ((0, 1, 2),)]


def test_size_two_families_n2():
    two = [f for f in enumerate_nested(2, 2) if len(f) == 2]
    assert len(two) == 3
    assert all((0, 1, 2) in f for f in two)


@pytest.mark.parametrize("n", range(1, 9))
def test_codim1_count(n):
    assert len(enumerate_nested(n, 1)) == codim1_face_count(n) == 2 ** (n + 1) - n - 2


def test_nested_bound():
    with pytest.raises(StrataError):
        enumerate_nested(9, 1)


def _brute_nested(n, max_size):
    subs = [s for r in range(2, n + 2) for s in itertools.combinations(range(n + 1), r)]
    out = set()
    for k in range(1, max_size + 1):
        for fam in itertools.combinations(subs, k):
            if all(not set(a) & set(b) or set(a) <= set(b) or set(b) <= set(a) for a, b in itertools.combinations(fam, 2)):
                out.add(frozenset(fam))
    return out


@pytest.mark.parametrize("n,size", [(2, 3), (3, 3), (3, 4), (4, 2)])
def test_enumeration_matches_brute_force(n, size):
    fams = enumerate_nested(n, size)
    assert len(fams) == len(set(fams))
    assert {frozenset(f) for f in fams} == _brute_nested(n, size)
    assert all(is_nested(f) for f in fams)


def test_poset_n2():
    poset = face_poset(2)
    top = ((0, 1, 2),)
    above = [g for f, g in poset.covers if f == top]
    assert len(above) == 3
    assert all(top[0] in g for g in above)


@pytest.mark.parametrize("n", range(1, 5))
def test_poset_is_transitive_and_graded(n):
    poset = face_poset(n)
    assert covering_dimension_drops(poset)
    up = {}
    for f, g in poset.covers:
        assert len(g) == len(f) + 1 and set(f) < set(g)
        assert stratum_dimension(n, f) - stratum_dimension(n, g) == 1
        up.setdefault(f, []).append(g)
    for f, gs in up.items():
        for g in gs:
            for h in up.get(g, []):
                assert set(f) < set(h)
                assert h in poset.closure(f)


@pytest.mark.parametrize("n", range(1, 6))
def test_covering_dimension_drop(n):
    assert covering_dimension_drops(face_poset(n))


def test_stratum_dimension():
    assert stratum_dimension(3, ()) == 12
    assert stratum_dimension(3, [(1, 2), (0, 3)], base_dim=2) == 12
    assert StratumLabel(((1, 2),), 3).dim == 11


def test_face_intersection():
    assert face_intersection((1, 2), (1, 2, 3)) == ((1, 2), (1, 2, 3))
    assert face_intersection((1, 2), (2, 3)) is None


def test_quotient_examples():
    assert quotient(3, {1, 2}) == ((0,), (1, 2), (3,))
    q = quotient(3, {0, 1})
    assert q == ((0, 1), (2,), (3,))
    assert basepoint_block(q) == (0, 1)
    with pytest.raises(StrataError):
        quotient(3, {1})


@pytest.mark.parametrize("n", range(1, 6))
def test_quotient_size(n):
    for r in range(2, n + 2):
        for s in itertools.combinations(range(n + 1), r):
            assert len(quotient(n, s)) == n + 2 - len(s)


def test_s_dot_a_examples():
    assert s_dot_a(3, [], [1, 2]) == ((1, 2),)
    assert s_dot_a(3, [(1, 2)], [(1, 2), 3]) == ((1, 2, 3),)
    with pytest.raises(StrataError):
        s_dot_a(3, [], [1])
    with pytest.raises(StrataError):
        s_dot_a(3, [(1, 2)], [(1, 3), 0])


@pytest.mark.parametrize("n", range(1, 6))
def test_collapse_coherence(n):
    for coll in disjoint_collections(n):
        blocks = quotient_blocks(n, coll)
        for r in range(2, len(blocks) + 1):
            for a in itertools.combinations(blocks, r):
                via = flatten(collapse_blocks(blocks, a))
                assert via == quotient_blocks(n, s_dot_a(n, coll, a))


def test_codim2_examples():
    assert codim2_consistency(3, {1, 2}, {0, 3})
    assert codim2_consistency(3, {1, 2}, {1, 2, 3})
    with pytest.raises(StrataError):
        codim2_consistency(3, {1, 2}, {2, 3})


def test_codim2_pairs_n2():
    pairs = legal_codim2_pairs(2)
    assert len(pairs) == 3
    assert all(codim2_consistency(2, a, d) for a, d in pairs)


@pytest.mark.parametrize("n", range(1, 6))
def test_codim2_sweep(n):
    pairs = legal_codim2_pairs(n)
    assert all(codim2_consistency(n, a, d) for a, d in pairs)


def test_propagator_index_examples():
    assert propagator_index_set(2) == [((1,), (2,)), ((2,), (1,))]
    assert len(propagator_index_set(4, [(1, 2)])) == 6


@pytest.mark.parametrize("n", range(1, 6))
def test_propagator_index_size_and_symmetry(n):
    for coll in disjoint_collections(n):
        idx = propagator_index_set(n, coll)
        r = len(quotient_blocks(n, coll)) - 1
        assert len(idx) == r * (r - 1)
        s = set(idx)
        assert all((y, x) in s for x, y in idx)


def test_schedule_small():
    assert induction_schedule(2) == [[()]]
    layers = induction_schedule(3)
    assert len(layers) == 2
    assert layers[1] == [()]
    assert len(layers[0]) == 6


@pytest.mark.parametrize("n", range(2, 7))
def test_schedule_closure(n):
    layers = induction_schedule(n)
    sizes = [len(quotient_blocks(n, layer[0])) for layer in layers]
    assert sizes == list(range(3, n + 2))
    assert all(len(quotient_blocks(n, c)) == s for layer, s in zip(layers, sizes) for c in layer)
    assert schedule_closure_ok(n)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.data())
def test_quotient_is_ordered_partition(n, data):
    colls = disjoint_collections(n)
    coll = data.draw(st.sampled_from(colls))
    blocks = quotient_blocks(n, coll)
    assert sorted(x for b in blocks for x in b) == list(range(n + 1))
    mins = [b[0] for b in blocks]
    assert mins == sorted(mins) and len(set(mins)) == len(mins)
