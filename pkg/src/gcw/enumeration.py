"""Isomorphism-free generation of admissible (decorated) graphs."""
from __future__ import annotations

import itertools
import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path

from .graph import (
    Decoration,
    LabeledGraph,
    OrientationClass,
    automorphism_generators,
    automorphisms,
    canonicalize,
    check_decoration,
    format_key,
    is_admissible,
    iter_decorations,
    orientation_class,
    parse_key,
    permutation_parity,
)

log = logging.getLogger(__name__)

DEFAULT_CAP = 5_000_000


class CapExceeded(RuntimeError):
    """The number of generators exceeds the configured cap."""


@dataclass(frozen=True)
class EnumerationRequest:
    p: int
    q: int
    decorated: bool = False
    connected_only: bool = False


@dataclass(frozen=True)
class Generator:
    """A basis element: a canonical (decorated) graph with canonical orientation."""

    key: str
    graph: LabeledGraph
    decoration: Decoration | None = None

    @property
    def p(self) -> int:
        return self.graph.p

    @property
    def q(self) -> int:
        return self.graph.q

    @property
    def n(self) -> int:
        return 2 * self.q - 2 * self.p

    @property
    def m(self) -> int:
        return 2 * self.q - 3 * self.p

    @property
    def decorated(self) -> bool:
        return self.decoration is not None

    @classmethod
    def from_key(cls, key: str) -> Generator:
        g, d = parse_key(key)
        return cls(key, g, d)

    def to_record(self) -> dict:
        return {"key": self.key, "p": self.p, "q": self.q, "n": self.n, "m": self.m, "decorated": self.decorated}


def _edge_orbit_reps(g: LabeledGraph, gens) -> list[tuple[int, int]]:
    """One non-edge per orbit of the group generated by ``gens``."""
    present = set(g.edges)
    reps = []
    seen = set()
    for e in itertools.combinations(range(1, g.p + 1), 2):
        if e in present or e in seen:
            continue
        reps.append(e)
        stack = [e]
        seen.add(e)
        while stack:
            a, b = stack.pop()
            for s in gens:
                x, y = s[a - 1], s[b - 1]
                f = (x, y) if x < y else (y, x)
                if f not in seen:
                    seen.add(f)
                    stack.append(f)
    return reps


def _deficit(vals: list[int]) -> int:
    return sum(3 - k for k in vals if k < 3)


def admissible_classes(p: int, q: int, connected_only: bool = False, cap: int = DEFAULT_CAP) -> list[LabeledGraph]:
    """Canonical representatives of every admissible graph with ``p`` vertices and ``q`` edges.

    Edges are added one at a time to canonical representatives, one new edge
    per orbit of non-edges, and children are deduplicated by canonical key at
    every level.  Branches that cannot reach minimum valence 3 with the
    remaining edges are cut.
    """
    if p <= 0 or q <= 0 or 2 * q < 3 * p or q > p * (p - 1) // 2:
        return []
    level = {format_key(LabeledGraph(p, ())): LabeledGraph(p, ())}
    for j in range(q):
        remaining = q - j - 1
        nxt: dict[str, LabeledGraph] = {}
        for g in level.values():
            gens = automorphism_generators(g)
            for u, v in _edge_orbit_reps(g, gens):
                h = LabeledGraph(p, tuple(sorted(g.edges + ((u, v),))))
                if _deficit(h.valences()) > 2 * remaining:
                    continue
                cf = canonicalize(h)
                if cf.key not in nxt:
                    nxt[cf.key] = cf.graph
                    if len(nxt) > cap:
                        raise CapExceeded(f"more than {cap} intermediate classes at p={p}, q={q}")
        level = nxt
        log.debug("p=%d q=%d: %d classes with %d edges", p, q, len(level), j + 1)
    out = [g for g in level.values() if is_admissible(g)]
    if connected_only:
        out = [g for g in out if g.is_connected()]
    return [g for _, g in sorted((format_key(g), g) for g in out)]


def decorated_classes(g: LabeledGraph) -> list[Generator]:
    """One generator per decorated-isomorphism class of decorations of ``g``."""
    keys = {}
    for d in iter_decorations(g):
        cf = canonicalize(g, d)
        if cf.key not in keys:
            keys[cf.key] = Generator(cf.key, cf.graph, cf.decoration)
    return [keys[k] for k in sorted(keys)]


def _cache_path(req: EnumerationRequest, cache_dir: str | os.PathLike | None) -> Path | None:
    if cache_dir is None:
        cache_dir = os.environ.get("GCW_CACHE_DIR")
    if not cache_dir:
        return None
    name = f"basis_{req.p}_{req.q}_{int(req.decorated)}_{int(req.connected_only)}.jsonl"
    return Path(cache_dir) / name


def write_jsonl(generators, fh) -> None:
    for gen in generators:
        fh.write(json.dumps(gen.to_record(), sort_keys=True) + "\n")


def read_jsonl(fh) -> list[Generator]:
    return [Generator.from_key(json.loads(line)["key"]) for line in fh if line.strip()]


def enumerate_basis(
    req: EnumerationRequest,
    cap: int = DEFAULT_CAP,
    cache_dir: str | os.PathLike | None = None,
) -> list[Generator]:
    """Sorted basis of V^{p,q} (or its decorated version).

    Undecorated generators whose orientation class is ZERO are dropped.
    Decorated graphs have no non-trivial automorphisms, so every decorated
    class is kept.
    """
    path = _cache_path(req, cache_dir)
    if path is not None and path.exists():
        with path.open() as fh:
            gens = read_jsonl(fh)
        if len(gens) > cap:
            raise CapExceeded(f"{len(gens)} generators exceed cap {cap}")
        return gens
    graphs = admissible_classes(req.p, req.q, req.connected_only, cap)
    if req.decorated:
        gens = []
        for g in graphs:
            gens.extend(decorated_classes(g))
            if len(gens) > cap:
                raise CapExceeded(f"more than {cap} decorated generators at p={req.p}, q={req.q}")
        gens.sort(key=lambda x: x.key)
    else:
        gens = [Generator(format_key(g), g) for g in graphs if orientation_class(g) is OrientationClass.NONZERO]
    if len(gens) > cap:
        raise CapExceeded(f"{len(gens)} generators exceed cap {cap}")
    if path is not None:
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(f".tmp{os.getpid()}")
            with tmp.open("w") as fh:
                write_jsonl(gens, fh)
            tmp.replace(path)
        except OSError as exc:
            log.warning("basis cache disabled: %s", exc)
    return gens


# -- brute-force oracle -------------------------------------------------------

ORACLE_MAX_P = 7


def _brute_form(p: int, edges, perms) -> tuple:
    best = None
    for s in perms:
        img = tuple(sorted((min(s[u - 1], s[v - 1]), max(s[u - 1], s[v - 1])) for u, v in edges))
        if best is None or img < best:
            best = img
    return best


def _brute_automorphisms(p: int, edges, perms) -> list[tuple[int, ...]]:
    es = set(edges)
    out = []
    for s in perms:
        if all((min(s[u - 1], s[v - 1]), max(s[u - 1], s[v - 1])) in es for u, v in edges):
            out.append(s)
    return out


def brute_force_oracle(req: EnumerationRequest) -> list[Generator]:
    """Exhaustive reference for :func:`enumerate_basis` (tests only).

    Every labeled edge set is generated; classes are formed by minimizing the
    sorted edge list over all vertex permutations, and automorphisms are found
    by testing every permutation.
    """
    p, q = req.p, req.q
    if p > ORACLE_MAX_P:
        raise ValueError(f"brute-force oracle refuses p > {ORACLE_MAX_P}")
    if p <= 0 or q <= 0:
        return []
    perms = list(itertools.permutations(range(1, p + 1)))
    pairs = list(itertools.combinations(range(1, p + 1), 2))
    reps = {}
    for edges in itertools.combinations(pairs, q):
        deg = [0] * p
        for u, v in edges:
            deg[u - 1] += 1
            deg[v - 1] += 1
        if min(deg) < 3:
            continue
        g = LabeledGraph(p, edges)
        if req.connected_only and not g.is_connected():
            continue
        form = _brute_form(p, edges, perms)
        reps.setdefault(form, g)
    out = []
    for form, g in reps.items():
        h = LabeledGraph(p, form)
        auts = _brute_automorphisms(p, h.edges, perms)
        if not req.decorated:
            odd = any(_edge_parity(h, s) < 0 for s in auts)
            if not odd:
                out.append(Generator(canonicalize(h).key, canonicalize(h).graph))
            continue
        seen = set()
        for d in _all_decorations(h):
            if d in seen:
                continue
            orbit = {tuple(s[v - 1] for v in d) for s in auts}
            seen |= orbit
            cf = canonicalize(h, d)
            out.append(Generator(cf.key, cf.graph, cf.decoration))
    out.sort(key=lambda x: x.key)
    return out


def _edge_parity(g: LabeledGraph, s) -> int:
    index = {e: i for i, e in enumerate(g.edges)}
    perm = [index[(min(s[u - 1], s[v - 1]), max(s[u - 1], s[v - 1]))] for u, v in g.edges]
    return permutation_parity(perm)


def _all_decorations(g: LabeledGraph):
    # independent of iter_decorations: filter all words by preimage counts
    vals = g.valences()
    n = 2 * g.q - 2 * g.p
    for word in set(itertools.permutations([v for v in range(1, g.p + 1) for _ in range(vals[v - 1] - 2)], n)):
        check_decoration(g, word)
        yield word


def decorated_orbit_sizes(g: LabeledGraph) -> dict[str, int]:
    """Size of each Aut(g)-orbit of decorations, keyed by decorated class key."""
    auts = automorphisms(g)
    sizes = {}
    for d in iter_decorations(g):
        k = canonicalize(g, d).key
        sizes[k] = sizes.get(k, 0) + 1
    # every decoration lies in exactly one orbit; orbit size = |Aut| (free action)
    assert all(s == len(auts) for s in sizes.values())
    return sizes
