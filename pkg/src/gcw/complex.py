"""Differentials, the average and forget chain maps, and homology dimensions.

A graded component at bidegree ``(m, n)`` is spanned by graphs with
``p = n - m`` vertices and ``q = 3n/2 - m`` edges.  All matrices map a
source basis (columns) to a target basis (rows) and are exact over Q.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .enumeration import DEFAULT_CAP, EnumerationRequest, Generator, enumerate_basis
from .graph import (
    canonicalize,
    contract_decoration,
    contract_edge,
    decoration_count,
    iter_decorations,
)
from .linalg import RationalSparseMatrix, image_in_kernel, rank_nullity

log = logging.getLogger(__name__)


class ComplexError(AssertionError):
    """A chain-complex identity failed (a programming error, never user input)."""


@dataclass(frozen=True)
class GradedComponent:
    m: int
    n: int
    decorated: bool
    basis: tuple[Generator, ...]
    connected_only: bool = False

    @property
    def pq(self) -> tuple[int, int]:
        return component_pq(self.m, self.n)

    @property
    def keys(self) -> list[str]:
        return [g.key for g in self.basis]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self) -> dict[str, int]:
        return {g.key: i for i, g in enumerate(self.basis)}


def component_pq(m: int, n: int) -> tuple[int, int]:
    if n % 2:
        raise ValueError(f"n must be even, got {n}")
    return n - m, 3 * n // 2 - m


@lru_cache(maxsize=None)
def graded_component(m: int, n: int, decorated: bool = False, connected_only: bool = False,
                     cap: int = DEFAULT_CAP) -> GradedComponent:
    p, q = component_pq(m, n)
    basis = enumerate_basis(EnumerationRequest(p, q, decorated, connected_only), cap=cap)
    return GradedComponent(m, n, decorated, tuple(basis), connected_only)


def _contraction_terms(gen: Generator):
    """Yield ``(target_key, sign)`` for every admissible contraction of ``gen``.

    The source orientation is the canonical edge order; moving edge ``e`` to
    the front costs ``(-1)^e`` and the surviving edges keep their order, which
    ``contract_edge`` preserves as the target's edge order.
    """
    g = gen.graph
    for e in range(g.q):
        c = contract_edge(g, e)
        if not c.admissible:
            continue
        d = None
        if gen.decoration is not None:
            d = contract_decoration(gen.decoration, c.vertex_map)
        cf = canonicalize(c.graph, d)
        yield cf.key, (-1 if e % 2 else 1) * cf.edge_perm_parity


def differential(m: int, n: int, decorated: bool = False, connected_only: bool = False,
                 cap: int = DEFAULT_CAP) -> RationalSparseMatrix:
    """Matrix of the edge-contraction differential (m, n) -> (m+1, n)."""
    src = graded_component(m, n, decorated, connected_only, cap)
    tgt = graded_component(m + 1, n, decorated, connected_only, cap)
    row = tgt.index()
    M = RationalSparseMatrix.zeros(tgt.dim, src.dim, tgt.keys, src.keys)
    for j, gen in enumerate(src.basis):
        for key, sign in _contraction_terms(gen):
            i = row.get(key)
            if i is None:
                # target vanishes by an odd automorphism
                continue
            M.add(i, j, sign)
    return M


def average_map(m: int, n: int, connected_only: bool = False, cap: int = DEFAULT_CAP) -> RationalSparseMatrix:
    """i(G, o) = (1/|A(G)|) * sum over all decorations of (G, rho, o)."""
    src = graded_component(m, n, False, connected_only, cap)
    tgt = graded_component(m, n, True, connected_only, cap)
    row = tgt.index()
    M = RationalSparseMatrix.zeros(tgt.dim, src.dim, tgt.keys, src.keys)
    for j, gen in enumerate(src.basis):
        weight = Fraction(1, decoration_count(gen.graph))
        for d in iter_decorations(gen.graph):
            cf = canonicalize(gen.graph, d)
            M.add(row[cf.key], j, cf.edge_perm_parity * weight)
    return M


def forget_map(m: int, n: int, connected_only: bool = False, cap: int = DEFAULT_CAP) -> RationalSparseMatrix:
    """f(G, rho, o) = (G, o)."""
    src = graded_component(m, n, True, connected_only, cap)
    tgt = graded_component(m, n, False, connected_only, cap)
    row = tgt.index()
    M = RationalSparseMatrix.zeros(tgt.dim, src.dim, tgt.keys, src.keys)
    for j, gen in enumerate(src.basis):
        cf = canonicalize(gen.graph)
        i = row.get(cf.key)
        if i is not None:
            M.add(i, j, cf.edge_perm_parity)
    return M


@dataclass(frozen=True)
class HomologyReport:
    m: int
    n: int
    decorated: bool
    dim_space: int
    rank_d_in: int
    dim_ker_d_out: int
    homology_dim: int

    def to_record(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "decorated": self.decorated,
            "dim_space": self.dim_space,
            "rank_d_in": self.rank_d_in,
            "dim_ker_d_out": self.dim_ker_d_out,
            "homology_dim": self.homology_dim,
        }


def homology(m: int, n: int, decorated: bool = False, connected_only: bool = False,
             cap: int = DEFAULT_CAP) -> HomologyReport:
    d_in = differential(m - 1, n, decorated, connected_only, cap)
    d_out = differential(m, n, decorated, connected_only, cap)
    if not image_in_kernel(d_in, d_out):
        raise ComplexError(f"d^2 != 0 at (m={m}, n={n}, decorated={decorated})")
    r_in = rank_nullity(d_in).rank
    ker_out = rank_nullity(d_out).kernel_dim
    return HomologyReport(m, n, decorated, d_out.ncols, r_in, ker_out, ker_out - r_in)


def homology_dim(n: int, m: int, decorated: bool = False, connected_only: bool = False,
                 cap: int = DEFAULT_CAP) -> int:
    return homology(m, n, decorated, connected_only, cap).homology_dim


def m_range(n: int) -> range:
    """Excesses that can carry admissible graphs of degree n/2 (plus empty edges)."""
    return range(0, max(n, 1))
