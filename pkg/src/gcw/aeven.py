"""Trivalent graphs modulo IHX, computed directly and as a cokernel."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .complex import differential, graded_component
from .enumeration import DEFAULT_CAP, CapExceeded, admissible_classes
from .graph import LabeledGraph, canonicalize, format_key
from .linalg import RationalSparseMatrix, rank_nullity

MAX_K = 5


class Method(enum.Enum):
    IHX = "ihx"
    COKER = "coker"


@dataclass(frozen=True)
class IhxRelation:
    source_key: str
    terms: tuple[tuple[str, int], ...]


def ihx_expansions(y: LabeledGraph) -> list[tuple[LabeledGraph, int]]:
    """The three trivalent expansions of the unique 4-valent vertex of ``y``.

    The split vertex ``w`` keeps one pair of its neighbours, a new vertex
    ``p+1`` takes the other pair, and the new edge ``(w, p+1)`` comes first in
    the edge order; every other edge inherits the position of its source edge.
    Returns ``(graph, new_edge_index)`` with ``new_edge_index == 0``.
    """
    vals = y.valences()
    fours = [v for v, k in enumerate(vals, start=1) if k == 4]
    if len(fours) != 1 or any(k != 3 for v, k in enumerate(vals, start=1) if v != fours[0]):
        raise ValueError("IHX source must have exactly one 4-valent vertex, the rest trivalent")
    w = fours[0]
    a, b, c, d = sorted(x for e in y.edges for x in e if w in e and x != w)
    new = y.p + 1
    out = []
    for moved in ((c, d), (b, d), (b, c)):
        edges = [(w, new)]
        for u, v in y.edges:
            if w in (u, v):
                x = v if u == w else u
                if x in moved:
                    edges.append((x, new))
                    continue
            edges.append((u, v))
        out.append((LabeledGraph.from_edges(new, edges), 0))
    return out


def ihx_relations(k: int, connected_only: bool = False, cap: int = DEFAULT_CAP) -> list[IhxRelation]:
    """One relation per isomorphism class of one-4-valent-vertex sources."""
    if k < 1:
        return []
    sources = admissible_classes(2 * k - 1, 3 * k - 1, connected_only, cap)
    rels = []
    for y in sources:
        acc: dict[str, int] = {}
        for g, _ in ihx_expansions(y):
            cf = canonicalize(g)
            acc[cf.key] = acc.get(cf.key, 0) + cf.edge_perm_parity
        terms = tuple((key, c) for key, c in sorted(acc.items()) if c)
        rels.append(IhxRelation(format_key(y), terms))
    return rels


def ihx_relation_matrix(k: int, connected_only: bool = False, cap: int = DEFAULT_CAP) -> RationalSparseMatrix:
    """Rows: relation sources; columns: the trivalent basis on ``2k`` vertices.

    Terms landing on a generator that vanishes by an odd automorphism drop out.
    """
    basis = graded_component(0, 2 * k, False, connected_only, cap) if k >= 1 else None
    cols = basis.keys if basis else []
    col = {key: j for j, key in enumerate(cols)}
    rels = ihx_relations(k, connected_only, cap)
    M = RationalSparseMatrix.zeros(len(rels), len(cols), [r.source_key for r in rels], cols)
    for i, rel in enumerate(rels):
        for key, c in rel.terms:
            j = col.get(key)
            if j is not None:
                M.add(i, j, c)
    return M


@dataclass(frozen=True)
class AevenReport:
    k: int
    num_trivalent_classes: int
    num_relations: int
    rank: int
    dim: int
    method: str
    generators: tuple[str, ...] = ()

    def to_record(self) -> dict:
        return {
            "k": self.k,
            "num_trivalent_classes": self.num_trivalent_classes,
            "num_relations": self.num_relations,
            "rank": self.rank,
            "dim": self.dim,
            "method": self.method,
        }


def a_even(k: int, method: Method | str = Method.IHX, connected_only: bool = False,
           cap: int = DEFAULT_CAP, max_k: int = MAX_K) -> AevenReport:
    method = Method(method)
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > max_k:
        raise CapExceeded(f"k={k} exceeds the configured bound {max_k}")
    if k == 0:
        return AevenReport(0, 0, 0, 0, 0, method.value)
    basis = graded_component(0, 2 * k, False, connected_only, cap)
    if method is Method.IHX:
        M = ihx_relation_matrix(k, connected_only, cap)
    else:
        # rows of d^{0,2k} are the relations of the dual complex
        M = differential(0, 2 * k, False, connected_only, cap).transpose()
    r = rank_nullity(M).rank
    dim = basis.dim - r
    gens = ()
    if dim and r == 0:
        gens = tuple(basis.keys)
    return AevenReport(k, basis.dim, M.nrows, r, dim, method.value, gens)


def a_even_dim(k: int, method: Method | str = Method.IHX, connected_only: bool = False,
               cap: int = DEFAULT_CAP) -> int:
    return a_even(k, method, connected_only, cap).dim
