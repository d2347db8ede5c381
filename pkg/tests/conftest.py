import itertools
from fractions import Fraction

import pytest

from gcw.graph import LabeledGraph


def complete_graph(p):
    return LabeledGraph.from_edges(p, itertools.combinations(range(1, p + 1), 2))


def prism():
    return LabeledGraph.from_edges(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6), (1, 4), (2, 5), (3, 6)])


def k33():
    return LabeledGraph.from_edges(6, [(a, b) for a in (1, 2, 3) for b in (4, 5, 6)])


def brute_isomorphic(g, h):
    """Exhaustive search over all vertex bijections."""
    if g.p != h.p or g.q != h.q:
        return False
    target = set(h.edges)
    for s in itertools.permutations(range(1, g.p + 1)):
        if all((min(s[u - 1], s[v - 1]), max(s[u - 1], s[v - 1])) in target for u, v in g.edges):
            return True
    return False


def brute_automorphisms(g):
    es = set(g.edges)
    return [
        s
        for s in itertools.permutations(range(1, g.p + 1))
        if all((min(s[u - 1], s[v - 1]), max(s[u - 1], s[v - 1])) in es for u, v in g.edges)
    ]


def inversion_sign(seq):
    """Parity by counting inversions (independent of cycle counting)."""
    inv = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inv % 2 else 1


@pytest.fixture
def K4():
    return complete_graph(4)


@pytest.fixture
def PRISM():
    return prism()


@pytest.fixture
def K33():
    return k33()


def naive_rank(rows):
    """Dense Gaussian elimination over Fractions, first nonzero pivot."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return 0
    nr, nc = len(a), len(a[0])
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(nr):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r
