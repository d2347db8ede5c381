import random
from fractions import Fraction

import pytest

from conftest import brute_automorphisms, prism
from gcw.complex import (
    ComplexError,
    average_map,
    component_pq,
    differential,
    forget_map,
    graded_component,
    homology,
    homology_dim,
    m_range,
)
from gcw.graph import canonicalize, contract_edge, decoration_count
from gcw.linalg import RationalSparseMatrix, kernel_basis, rank_nullity

K4_KEY = "4:6:1-2,1-3,1-4,2-3,2-4,3-4"
BIDEGREES = [(m, n) for n in (2, 4, 6) for m in m_range(n)]


def test_component_pq():
    assert component_pq(0, 4) == (4, 6)
    assert component_pq(2, 8) == (6, 10)
    with pytest.raises(ValueError):
        component_pq(0, 3)


def test_k4_column_is_zero():
    d = differential(0, 4)
    assert d.col_keys == [K4_KEY]
    assert d.is_zero()


def test_prism_contractions():
    g = prism()
    good = [e for e in range(g.q) if contract_edge(g, e).admissible]
    matching = [i for i, (u, v) in enumerate(g.edges) if (u <= 3) != (v <= 3)]
    assert good == matching and len(good) == 3
    # decorated prism columns see at most those three targets
    d = differential(0, 6, decorated=True)
    prism_key = canonicalize(g).key
    cols = [j for j, key in enumerate(d.col_keys) if key.split("|")[0] == prism_key]
    assert cols
    for j in cols:
        assert 0 < sum(1 for (r, c) in d.entries if c == j) <= 3


@pytest.mark.parametrize("m,n", BIDEGREES)
@pytest.mark.parametrize("decorated", [False, True])
def test_d_squared_zero(m, n, decorated):
    d0 = differential(m, n, decorated)
    d1 = differential(m + 1, n, decorated)
    assert d0.shape == (graded_component(m + 1, n, decorated).dim, graded_component(m, n, decorated).dim)
    assert (d1 @ d0).is_zero()


@pytest.mark.parametrize("m,n", BIDEGREES)
def test_chain_map_and_splitting(m, n):
    i0, i1 = average_map(m, n), average_map(m + 1, n)
    assert differential(m, n, True) @ i0 == i1 @ differential(m, n)
    assert forget_map(m, n) @ i0 == RationalSparseMatrix.identity(i0.ncols)


@pytest.mark.parametrize("m,n", [(0, 4), (0, 6), (1, 6), (2, 6), (3, 6)])
def test_average_map_orbit_oracle(m, n):
    """Each decorated class of an even graph gets sign * |Aut| / |A|."""
    src = graded_component(m, n)
    M = average_map(m, n)
    cols = {}
    for (r, c), x in M.entries.items():
        cols.setdefault(c, []).append(x)
    for j, gen in enumerate(src.basis):
        aut = len(brute_automorphisms(gen.graph))
        total = decoration_count(gen.graph)
        vals = cols.get(j, [])
        assert len(vals) == total // aut
        assert all(abs(x) == Fraction(aut, total) for x in vals)
        assert sum(abs(x) for x in vals) == 1


def test_k4_average_and_forget():
    i = average_map(0, 4)
    assert i.entries == {(0, 0): Fraction(1)} or i.entries == {(0, 0): Fraction(-1)}
    f = forget_map(0, 4)
    assert abs(f.entries[(0, 0)]) == 1


def test_known_homology():
    assert homology_dim(4, 0) == 1
    assert homology_dim(4, 0, decorated=True) >= 1
    assert all(homology_dim(2, m) == 0 for m in m_range(2))
    rep = homology(0, 4)
    assert rep.to_record() == {
        "m": 0, "n": 4, "decorated": False, "dim_space": 1,
        "rank_d_in": 0, "dim_ker_d_out": 1, "homology_dim": 1,
    }


def test_empty_components_give_zero():
    assert graded_component(-1, 4).dim == 0
    assert homology_dim(4, 3) == 0


def _homology_from(d_in, d_out):
    return rank_nullity(d_out).kernel_dim - rank_nullity(d_in).rank


@pytest.mark.parametrize("m,n", [(0, 6), (1, 6), (2, 6), (0, 4)])
def test_homology_independent_of_basis_order(m, n):
    rng = random.Random(m * 10 + n)
    d_in = differential(m - 1, n, True)
    d_out = differential(m, n, True)
    mid = list(range(d_out.ncols))
    lo = list(range(d_in.ncols))
    hi = list(range(d_out.nrows))
    for perm in (mid, lo, hi):
        rng.shuffle(perm)
    d_in_p = d_in.permuted(mid, lo)
    d_out_p = d_out.permuted(hi, mid)
    assert (d_out_p @ d_in_p).is_zero()
    assert _homology_from(d_in_p, d_out_p) == homology_dim(n, m, decorated=True)


@pytest.mark.parametrize("m,n", BIDEGREES)
def test_decorated_homology_dominates(m, n):
    plain = homology_dim(n, m)
    assert homology_dim(n, m, decorated=True) >= plain
    # f sends decorated cocycles onto at least the undecorated classes
    K = kernel_basis(differential(m, n, True))
    d_in = differential(m - 1, n)
    FK = forget_map(m, n) @ K
    induced = rank_nullity(FK.hstack(d_in)).rank - rank_nullity(d_in).rank
    assert induced >= plain


def test_homology_refuses_broken_complex(monkeypatch):
    import gcw.complex as cx

    bad = RationalSparseMatrix.identity(1)
    monkeypatch.setattr(cx, "differential", lambda *a, **k: bad)
    monkeypatch.setattr(cx, "image_in_kernel", lambda a, b: False)
    with pytest.raises(ComplexError):
        cx.homology(0, 4)
