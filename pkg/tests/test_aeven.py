import itertools
import random
from fractions import Fraction

import pytest

from gcw.aeven import Method, a_even, a_even_dim, ihx_expansions, ihx_relation_matrix, ihx_relations
from gcw.complex import differential, graded_component
from gcw.enumeration import CapExceeded, admissible_classes
from gcw.graph import LabeledGraph, automorphisms, canonicalize, parse_key

K4_KEY = "4:6:1-2,1-3,1-4,2-3,2-4,3-4"


@pytest.mark.parametrize("k,dim", [(0, 0), (1, 0), (2, 1), (3, 0)])
def test_low_degree_dimensions(k, dim):
    assert a_even_dim(k) == dim
    assert a_even_dim(k, Method.COKER) == dim


def test_k2_generated_by_k4():
    rep = a_even(2)
    assert rep.generators == (K4_KEY,)
    assert rep.to_record() == {
        "k": 2, "num_trivalent_classes": 1, "num_relations": 0, "rank": 0, "dim": 1, "method": "ihx",
    }


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_methods_agree(k):
    assert a_even_dim(k, "ihx") == a_even_dim(k, "coker")


def test_small_relation_matrices_empty():
    for k in (1, 2):
        assert ihx_relations(k) == []
        assert ihx_relation_matrix(k).nrows == 0
    # no simple graph on 3 vertices has a vertex of valence 4
    pairs = list(itertools.combinations(range(1, 4), 2))
    for r in range(len(pairs) + 1):
        for edges in itertools.combinations(pairs, r):
            assert max(LabeledGraph.from_edges(3, edges).valences()) <= 2


@pytest.mark.parametrize("k", [1, 2, 3])
def test_connectivity_modes_coincide_for_small_k(k):
    assert graded_component(0, 2 * k).keys == graded_component(0, 2 * k, connected_only=True).keys
    assert a_even_dim(k) == a_even_dim(k, connected_only=True)


def test_disconnected_k4_pair_survives_only_in_full_mode():
    assert a_even_dim(4) == 1
    assert a_even_dim(4, connected_only=True) == 0


def test_bound_and_domain():
    with pytest.raises(CapExceeded):
        a_even(6)
    with pytest.raises(ValueError):
        a_even(-1)


@pytest.mark.parametrize("k", [3, 4])
def test_relation_rows_match_differential_up_to_orbit_weights(k):
    """delta[Y, G] = IHX[Y, G] * |Aut G| / |Aut Y| on every nonvanishing source Y."""
    R = ihx_relation_matrix(k)
    D = differential(0, 2 * k)
    assert D.col_keys == R.col_keys
    rrow = {key: i for i, key in enumerate(R.row_keys)}
    aut = {key: len(automorphisms(parse_key(key)[0])) for key in R.row_keys + R.col_keys}
    for i, ykey in enumerate(D.row_keys):
        r = rrow[ykey]
        for j, gkey in enumerate(D.col_keys):
            expect = R.entries.get((r, j), 0) * Fraction(aut[gkey], aut[ykey])
            assert D.entries.get((i, j), 0) == expect


def test_expansions_are_trivalent_and_new_edge_first():
    for y in admissible_classes(5, 8):
        if sorted(y.valences()) != [3, 3, 3, 3, 4]:
            continue
        exps = ihx_expansions(y)
        assert len(exps) == 3
        for g, idx in exps:
            assert idx == 0 and g.edges[0][1] == g.p
            assert all(v == 3 for v in g.valences())
    with pytest.raises(ValueError):
        ihx_expansions(LabeledGraph.from_edges(4, itertools.combinations(range(1, 5), 2)))


def _terms(y, keep):
    acc = {}
    for g, _ in ihx_expansions(y):
        cf = canonicalize(g)
        acc[cf.key] = acc.get(cf.key, 0) + cf.edge_perm_parity
    # signs on generators with an odd automorphism carry no meaning
    return {k: v for k, v in acc.items() if v and k in keep}


@pytest.mark.parametrize("k", [3, 4])
def test_relation_rows_invariant_under_relabeling(k):
    rng = random.Random(k)
    keep = set(graded_component(0, 2 * k).keys)
    for rel in ihx_relations(k):
        y = parse_key(rel.source_key)[0]
        base = _terms(y, keep)
        assert base == {key: c for key, c in rel.terms if key in keep}
        for _ in range(5):
            perm = list(range(1, y.p + 1))
            rng.shuffle(perm)
            edges = [(perm[u - 1], perm[v - 1]) for u, v in y.edges]
            rng.shuffle(edges)
            moved = _terms(LabeledGraph.from_edges(y.p, edges), keep)
            assert moved == base or moved == {key: -c for key, c in base.items()}
