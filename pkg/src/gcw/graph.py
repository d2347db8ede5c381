"""Labeled graphs, canonical forms, orientations, contraction and decorations.

Vertices are 1-based throughout the public API.  An *orientation* of a graph
is the order of its edge list; a generator is always stored with the
orientation given by the canonical (lexicographically sorted) edge order, so
every sign lives in a coefficient.
"""
from __future__ import annotations

import enum
import itertools
from collections import Counter
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator, NamedTuple, Sequence

from . import _kernels
from ._canon_py import relabel_rows

Edge = tuple[int, int]
Decoration = tuple[int, ...]


class GraphError(ValueError):
    """Raised for structurally malformed graphs or decorations."""


@dataclass(frozen=True)
class LabeledGraph:
    """A finite simple graph on vertices ``1..p`` with an ordered edge list."""

    p: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.p < 0:
            raise GraphError(f"negative vertex count {self.p}")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not u < v:
                raise GraphError(f"edge ({u},{v}) must satisfy u < v")
            if u < 1 or v > self.p:
                raise GraphError(f"edge ({u},{v}) out of range 1..{self.p}")
            if (u, v) in seen:
                raise GraphError(f"multiple edge ({u},{v})")
            seen.add((u, v))

    @classmethod
    def from_edges(cls, p: int, edges: Iterable[Sequence[int]]) -> LabeledGraph:
        """Build a graph, normalizing each pair to ``(min, max)``."""
        return cls(p, tuple((min(e), max(e)) for e in edges))

    @property
    def q(self) -> int:
        return len(self.edges)

    def valences(self) -> list[int]:
        vals = [0] * self.p
        for u, v in self.edges:
            vals[u - 1] += 1
            vals[v - 1] += 1
        return vals

    def adjacency_masks(self) -> list[int]:
        """0-based adjacency bitmasks (bit ``w`` of entry ``v`` set iff ``v~w``)."""
        adj = [0] * self.p
        for u, v in self.edges:
            adj[u - 1] |= 1 << (v - 1)
            adj[v - 1] |= 1 << (u - 1)
        return adj

    def is_connected(self) -> bool:
        if self.p == 0:
            return True
        adj = self.adjacency_masks()
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            v = 0
            f = frontier
            while f:
                if f & 1:
                    nxt |= adj[v]
                f >>= 1
                v += 1
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.p) - 1

    def relabel(self, vertex_map: Sequence[int]) -> LabeledGraph:
        """Apply ``v -> vertex_map[v-1]`` keeping the edge order."""
        return LabeledGraph.from_edges(
            self.p, ((vertex_map[u - 1], vertex_map[v - 1]) for u, v in self.edges)
        )

    def sorted(self) -> LabeledGraph:
        return LabeledGraph(self.p, tuple(sorted(self.edges)))

    def to_text(self) -> str:
        lines = [f"{self.p} {self.q}"]
        lines.extend(f"{u} {v}" for u, v in sorted(self.edges))
        return "\n".join(lines) + "\n"


def parse_graphs(text: str) -> list[LabeledGraph]:
    """Parse the plain-text graph format (``p q`` header, then ``q`` edge lines)."""
    tokens = text.split()
    out = []
    pos = 0
    while pos < len(tokens):
        p, q = int(tokens[pos]), int(tokens[pos + 1])
        pos += 2
        edges = []
        for _ in range(q):
            if pos + 1 >= len(tokens):
                raise GraphError("truncated graph record")
            edges.append((int(tokens[pos]), int(tokens[pos + 1])))
            pos += 2
        if edges != sorted(edges):
            raise GraphError("edge lines must be lexicographically sorted")
        out.append(LabeledGraph(p, tuple(edges)))
    return out


class Bidegree(NamedTuple):
    n: int
    m: int


def bidegree(g: LabeledGraph) -> Bidegree:
    return Bidegree(2 * g.q - 2 * g.p, 2 * g.q - 3 * g.p)


def is_admissible(g: LabeledGraph) -> bool:
    """Simple (guaranteed by construction) with every valence at least 3."""
    return all(k >= 3 for k in g.valences())


def permutation_parity(perm: Sequence[int]) -> int:
    """Sign of a permutation of ``0..n-1`` given as images."""
    n = len(perm)
    seen = [False] * n
    sign = 1
    for i in range(n):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def edge_permutation(edges: Sequence[Edge], target: Sequence[Edge], vertex_map: Sequence[int]) -> list[int]:
    """Position in ``target`` of the image of each edge under ``vertex_map``."""
    index = {e: i for i, e in enumerate(target)}
    out = []
    for u, v in edges:
        a, b = vertex_map[u - 1], vertex_map[v - 1]
        out.append(index[(a, b) if a < b else (b, a)])
    return out


def format_key(g: LabeledGraph, decoration: Decoration | None = None) -> str:
    key = f"{g.p}:{g.q}:" + ",".join(f"{u}-{v}" for u, v in g.edges)
    if decoration is not None:
        key += "|" + ",".join(str(t) for t in decoration)
    return key


def parse_key(key: str) -> tuple[LabeledGraph, Decoration | None]:
    """Inverse of :func:`format_key`."""
    body, _, dec = key.partition("|")
    p, q, edge_part = body.split(":", 2)
    edges = []
    if edge_part:
        for item in edge_part.split(","):
            u, v = item.split("-")
            edges.append((int(u), int(v)))
    if len(edges) != int(q):
        raise GraphError(f"key {key!r} declares {q} edges but lists {len(edges)}")
    g = LabeledGraph(int(p), tuple(edges))
    decoration = None
    if "|" in key:
        decoration = tuple(int(t) for t in dec.split(",")) if dec else ()
    return g, decoration


@dataclass(frozen=True)
class CanonicalForm:
    graph: LabeledGraph
    vertex_map: tuple[int, ...]
    edge_perm_parity: int
    key: str
    decoration: Decoration | None = None


def _search(g: LabeledGraph):
    return _kernels.search(g.adjacency_masks())


def _canonical_labeling(g: LabeledGraph) -> tuple[list[int], list[list[int]]]:
    """0-based canonical positions and automorphism generators (0-based images)."""
    lab, gens = _search(g)
    # An input already in canonical form keeps the identity labeling.
    ident = list(range(g.p))
    if lab != ident:
        adj = g.adjacency_masks()
        if relabel_rows(adj, ident) == relabel_rows(adj, lab):
            lab = ident
    return lab, gens


def check_decoration(g: LabeledGraph, d: Sequence[int]) -> None:
    n = bidegree(g).n
    if len(d) != n:
        raise GraphError(f"decoration has length {len(d)}, expected n(G) = {n}")
    counts = Counter(d)
    for v, k in enumerate(g.valences(), start=1):
        if counts.get(v, 0) != k - 2:
            raise GraphError(f"vertex {v} has {counts.get(v, 0)} preimages, expected {k - 2}")
    if any(t < 1 or t > g.p for t in d):
        raise GraphError("decoration value out of range")


def canonicalize(g: LabeledGraph, d: Sequence[int] | None = None) -> CanonicalForm:
    """Canonical form of ``g`` (or of the decorated graph ``(g, d)``).

    In decorated mode the decoration fixes the labeling: vertices are ranked by
    their smallest preimage, which is invariant under decorated isomorphism.
    """
    if d is None:
        lab, _ = _canonical_labeling(g)
        vertex_map = tuple(x + 1 for x in lab)
        decoration = None
    else:
        d = tuple(d)
        check_decoration(g, d)
        first = {}
        for t, v in enumerate(d):
            first.setdefault(v, t)
        order = sorted(range(1, g.p + 1), key=lambda v: first[v])
        vm = [0] * g.p
        for rank, v in enumerate(order, start=1):
            vm[v - 1] = rank
        vertex_map = tuple(vm)
        decoration = tuple(vertex_map[v - 1] for v in d)
    canon = g.relabel(vertex_map).sorted()
    perm = edge_permutation(g.edges, canon.edges, vertex_map)
    return CanonicalForm(
        graph=canon,
        vertex_map=vertex_map,
        edge_perm_parity=permutation_parity(perm),
        key=format_key(canon, decoration),
        decoration=decoration,
    )


def automorphism_generators(g: LabeledGraph) -> list[tuple[int, ...]]:
    """Generators of Aut(g) as 1-based vertex images."""
    _, gens = _search(g)
    return [tuple(x + 1 for x in gen) for gen in gens]


def automorphisms(g: LabeledGraph) -> list[tuple[int, ...]]:
    """Every automorphism of ``g`` (closure of the generators), sorted."""
    ident = tuple(range(1, g.p + 1))
    gens = automorphism_generators(g)
    group = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for s in gens:
                c = tuple(s[a[v] - 1] for v in range(g.p))
                if c not in group:
                    group.add(c)
                    nxt.append(c)
        frontier = nxt
    return sorted(group)


def automorphism_edge_parity(g: LabeledGraph, sigma: Sequence[int]) -> int:
    return permutation_parity(edge_permutation(g.edges, g.edges, sigma))


class OrientationClass(enum.Enum):
    NONZERO = "nonzero"
    ZERO = "zero"


def orientation_class(g: LabeledGraph, d: Sequence[int] | None = None) -> OrientationClass:
    """ZERO iff an automorphism (fixing ``d``) permutes the edges oddly."""
    if d is None:
        candidates = automorphism_generators(g)
    else:
        d = tuple(d)
        candidates = [s for s in automorphisms(g) if tuple(s[v - 1] for v in d) == d]
    for s in candidates:
        if automorphism_edge_parity(g, s) < 0:
            return OrientationClass.ZERO
    return OrientationClass.NONZERO


class Contraction(NamedTuple):
    graph: LabeledGraph
    admissible: bool
    edge_correspondence: dict[int, int]
    vertex_map: tuple[int, ...]


def contract_edge(g: LabeledGraph, e_index: int) -> Contraction:
    """Collapse edge ``e_index`` (0-based).

    The merged vertex takes the smaller label and higher labels shift down.
    Surviving edges keep their source order; ``edge_correspondence`` maps each
    surviving source index to its position in the result.  When two edges
    become parallel the result keeps one copy and ``admissible`` is False.
    """
    if not 0 <= e_index < g.q:
        raise IndexError(f"edge index {e_index} out of range")
    u, v = g.edges[e_index]
    vertex_map = []
    for w in range(1, g.p + 1):
        if w == v:
            vertex_map.append(u)
        elif w > v:
            vertex_map.append(w - 1)
        else:
            vertex_map.append(w)
    new_edges: list[Edge] = []
    position: dict[Edge, int] = {}
    corr = {}
    admissible = True
    for i, (a, b) in enumerate(g.edges):
        if i == e_index:
            continue
        x, y = vertex_map[a - 1], vertex_map[b - 1]
        ne = (x, y) if x < y else (y, x)
        if ne in position:
            admissible = False
            corr[i] = position[ne]
            continue
        position[ne] = len(new_edges)
        corr[i] = len(new_edges)
        new_edges.append(ne)
    h = LabeledGraph(g.p - 1, tuple(new_edges))
    if admissible:
        admissible = is_admissible(h)
    return Contraction(h, admissible, corr, tuple(vertex_map))


def contraction_sign(
    source_order: Sequence[int],
    e_index: int,
    edge_correspondence: dict[int, int],
    target_order: Sequence[int],
) -> int:
    """Sign relating ``o/e`` to a target orientation.

    ``source_order`` lists source edge indices in orientation order and
    ``target_order`` lists target edge indices in the target's orientation
    order.  The sign is the parity of moving ``e`` to the front times the
    parity of the permutation taking the restricted order to ``target_order``.
    """
    pos = list(source_order).index(e_index)
    sign = -1 if pos % 2 else 1
    restricted = [edge_correspondence[i] for i in source_order if i != e_index]
    where = {t: k for k, t in enumerate(target_order)}
    if sorted(restricted) != sorted(where) or len(set(restricted)) != len(restricted):
        raise GraphError("edge correspondence is not a bijection onto the target edges")
    return sign * permutation_parity([where[t] for t in restricted])


def decoration_count(g: LabeledGraph) -> int:
    """|A(g)| = (2q-2p)! / prod (k_i - 2)!."""
    n = bidegree(g).n
    assert n >= 0, "admissible graphs have n >= 0"
    denom = 1
    for k in g.valences():
        denom *= factorial(k - 2)
    return factorial(n) // denom


def iter_decorations(g: LabeledGraph) -> Iterator[Decoration]:
    """All decorations in lexicographic order (multiset permutations)."""
    vals = g.valences()
    n = bidegree(g).n
    assert n >= 0, "admissible graphs have n >= 0"
    remaining = [k - 2 for k in vals]
    if any(r < 0 for r in remaining):
        raise GraphError("decorations need every valence >= 2")
    word = [0] * n

    def rec(t):
        if t == n:
            yield tuple(word)
            return
        for v in range(g.p):
            if remaining[v]:
                remaining[v] -= 1
                word[t] = v + 1
                yield from rec(t + 1)
                remaining[v] += 1

    yield from rec(0)


def decorations_of(g: LabeledGraph) -> list[Decoration]:
    return list(iter_decorations(g))


def contract_decoration(d: Sequence[int], vertex_map: Sequence[int]) -> Decoration:
    """Push a decoration through the vertex quotient of a contraction."""
    return tuple(vertex_map[v - 1] for v in d)


def all_pairs(p: int) -> list[Edge]:
    return list(itertools.combinations(range(1, p + 1), 2))
