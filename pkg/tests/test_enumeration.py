import itertools
import json

import pytest

from conftest import brute_automorphisms, brute_isomorphic, k33, prism
from gcw.enumeration import (
    CapExceeded,
    EnumerationRequest,
    Generator,
    admissible_classes,
    brute_force_oracle,
    decorated_classes,
    enumerate_basis,
    read_jsonl,
    write_jsonl,
)
from gcw.graph import canonicalize, decoration_count, orientation_class, OrientationClass


def test_k4_only_generator():
    gens = enumerate_basis(EnumerationRequest(4, 6))
    assert [g.key for g in gens] == ["4:6:1-2,1-3,1-4,2-3,2-4,3-4"]


def test_k4_by_subset_brute_force():
    pairs = list(itertools.combinations(range(1, 5), 2))
    found = []
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        deg = [sum(v in e for e in edges) for v in range(1, 5)]
        if len(edges) == 6 and min(deg) >= 3:
            found.append(edges)
    assert len(found) == 1


def test_no_simple_cubic_graph_on_two_vertices():
    assert enumerate_basis(EnumerationRequest(2, 3)) == []


def test_decorated_k4_single_class():
    (g,) = admissible_classes(4, 6)
    gens = enumerate_basis(EnumerationRequest(4, 6, decorated=True))
    assert len(gens) == 1
    # orbit sizes under Aut(K4) sum to the 24 decorations
    auts = brute_automorphisms(g)
    assert len(gens) * len(auts) == decoration_count(g) == 24


def test_oracle_refuses_large_p():
    with pytest.raises(ValueError):
        brute_force_oracle(EnumerationRequest(8, 12))


def test_oracle_trivial_requests():
    assert brute_force_oracle(EnumerationRequest(0, 0)) == []
    assert brute_force_oracle(EnumerationRequest(3, 0)) == []


def test_oracle_sees_k33_and_prism_as_distinct_classes():
    classes = admissible_classes(6, 9, connected_only=True)
    assert len(classes) == 2
    assert not brute_isomorphic(*classes)
    keys = {canonicalize(k33()).key, canonicalize(prism()).key}
    assert {format(g) for g in []} == set()
    assert {canonicalize(g).key for g in classes} == keys
    # both vanish undecorated, but survive decorated
    assert brute_force_oracle(EnumerationRequest(6, 9, connected_only=True)) == []
    assert len(brute_force_oracle(EnumerationRequest(6, 9, True, True))) == 720 // 72 + 720 // 12


@pytest.mark.parametrize("p", range(1, 6))
@pytest.mark.parametrize("decorated", [False, True])
@pytest.mark.parametrize("connected_only", [False, True])
def test_agrees_with_oracle(p, decorated, connected_only):
    for q in range(0, 11):
        req = EnumerationRequest(p, q, decorated, connected_only)
        assert [g.key for g in enumerate_basis(req)] == [g.key for g in brute_force_oracle(req)]


def test_sorted_and_duplicate_free():
    for p, q in [(6, 9), (6, 10), (8, 12), (7, 11)]:
        for dec in (False, True) if p <= 6 else (False,):
            keys = [g.key for g in enumerate_basis(EnumerationRequest(p, q, dec))]
            assert keys == sorted(set(keys))


def test_decorated_count_weighted_by_orbits():
    for p, q in [(4, 6), (6, 9), (5, 8), (6, 10), (5, 9)]:
        total = 0
        for g in admissible_classes(p, q):
            total += len(decorated_classes(g)) * len(brute_automorphisms(g))
            assert len(decorated_classes(g)) * len(brute_automorphisms(g)) == decoration_count(g)
        assert total == sum(decoration_count(g) for g in admissible_classes(p, q))


def test_admissible_excess_nonnegative():
    for p in range(1, 9):
        for q in range(0, 3 * p // 2):
            assert admissible_classes(p, q) == []


def test_cap(tmp_path):
    with pytest.raises(CapExceeded):
        enumerate_basis(EnumerationRequest(9, 20), cap=3)


def test_jsonl_cache_roundtrip(tmp_path):
    req = EnumerationRequest(6, 10, decorated=False)
    gens = enumerate_basis(req, cache_dir=tmp_path)
    path = tmp_path / "basis_6_10_0_0.jsonl"
    assert path.exists()
    records = [json.loads(line) for line in path.read_text().splitlines()]
    assert records == [g.to_record() for g in gens]
    assert all(set(r) == {"key", "p", "q", "n", "m", "decorated"} for r in records)
    assert enumerate_basis(req, cache_dir=tmp_path) == gens
    with path.open() as fh:
        assert read_jsonl(fh) == gens


def test_env_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("GCW_CACHE_DIR", str(tmp_path))
    enumerate_basis(EnumerationRequest(5, 8, decorated=True))
    assert (tmp_path / "basis_5_8_1_0.jsonl").exists()


def test_generator_record_fields():
    (g,) = enumerate_basis(EnumerationRequest(4, 6, decorated=True))
    assert g.to_record() == {"key": g.key, "p": 4, "q": 6, "n": 4, "m": 0, "decorated": True}
    assert Generator.from_key(g.key) == g
