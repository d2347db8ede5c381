"""Index combinatorics of compactified configuration spaces.

The ground set is ``{0, 1, ..., n}`` with ``0`` the basepoint.  Subsets are
sorted tuples; a family or collection is a tuple of subsets sorted by
``(len, subset)``.  Quotient sets are tuples of blocks ordered by their
minimal element.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

Subset = tuple[int, ...]
Family = tuple[Subset, ...]
Blocks = tuple[Subset, ...]

MAX_N = 8
FIBER_DIM = 4


class StrataError(ValueError):
    pass


def _subset_key(s: Subset) -> tuple:
    return (len(s), s)


def normalize_family(sets: Iterable[Iterable[int]]) -> Family:
    return tuple(sorted((tuple(sorted(set(s))) for s in sets), key=_subset_key))


def family_key(f: Family) -> tuple:
    return (len(f), tuple(_subset_key(s) for s in f))


def ground_set(n: int) -> Subset:
    if n < 1:
        raise StrataError(f"n must be >= 1, got {n}")
    return tuple(range(n + 1))


def compatible(a: Subset, b: Subset) -> bool:
    """Disjoint or nested."""
    sa, sb = set(a), set(b)
    return not (sa & sb) or sa <= sb or sb <= sa


def is_nested(family: Iterable[Iterable[int]]) -> bool:
    f = normalize_family(family)
    if len(set(f)) != len(f):
        return False
    if any(len(s) < 2 for s in f):
        return False
    return all(compatible(a, b) for a, b in itertools.combinations(f, 2))


def is_disjoint_collection(coll: Iterable[Iterable[int]]) -> bool:
    c = normalize_family(coll)
    if any(len(s) < 2 for s in c):
        return False
    seen: set[int] = set()
    for s in c:
        if seen & set(s):
            return False
        seen |= set(s)
    return True


def admissible_subsets(n: int) -> list[Subset]:
    """Subsets of ``{0..n}`` with at least two elements, ordered by (size, lex)."""
    g = ground_set(n)
    out = [s for r in range(2, len(g) + 1) for s in itertools.combinations(g, r)]
    return sorted(out, key=_subset_key)


def enumerate_nested(n: int, max_size: int | None = None, include_empty: bool = False) -> list[Family]:
    """Every nested family with ``1 <= |family| <= max_size``, sorted."""
    if n > MAX_N:
        raise StrataError(f"n={n} exceeds the combinatorial bound {MAX_N}")
    subsets = admissible_subsets(n)
    if max_size is None:
        max_size = len(subsets)
    out: list[Family] = [()] if include_empty else []

    def rec(start: int, current: list[Subset]):
        if len(current) == max_size:
            return
        for i in range(start, len(subsets)):
            s = subsets[i]
            if all(compatible(s, t) for t in current):
                current.append(s)
                out.append(tuple(current))
                rec(i + 1, current)
                current.pop()

    rec(0, [])
    return sorted(out, key=family_key)


def codim1_face_count(n: int) -> int:
    return 2 ** (n + 1) - n - 2


@dataclass(frozen=True)
class StratumLabel:
    family: Family
    n: int
    base_dim: int = 0
    fiber_dim: int = FIBER_DIM

    @property
    def codim(self) -> int:
        return len(self.family)

    @property
    def dim(self) -> int:
        return self.fiber_dim * self.n - len(self.family) + self.base_dim


def stratum_dimension(n: int, family: Family, base_dim: int = 0, fiber_dim: int = FIBER_DIM) -> int:
    return StratumLabel(normalize_family(family), n, base_dim, fiber_dim).dim


@dataclass(frozen=True)
class FacePoset:
    n: int
    faces: tuple[Family, ...]
    covers: tuple[tuple[Family, Family], ...]

    def closure(self, f: Family) -> list[Family]:
        """Strata in the closure of the face ``f``: all superfamilies."""
        sf = set(f)
        return [g for g in self.faces if sf <= set(g)]


def face_poset(n: int, max_size: int | None = None) -> FacePoset:
    """Nested families (the empty one is the open stratum) with covering pairs ``F < G``."""
    faces = enumerate_nested(n, max_size, include_empty=True)
    by_size: dict[int, list[Family]] = {}
    for f in faces:
        by_size.setdefault(len(f), []).append(f)
    covers = []
    for f in faces:
        sf = set(f)
        for g in by_size.get(len(f) + 1, []):
            if sf <= set(g):
                covers.append((f, g))
    return FacePoset(n, tuple(faces), tuple(covers))


def face_intersection(s: Subset, r: Subset) -> Family | None:
    """The closed faces of ``s`` and ``r`` meet in the face of ``{s, r}`` when nested."""
    fam = normalize_family([s, r])
    if len(fam) == 2 and is_nested(fam):
        return fam
    return None


# -- quotient sets -------------------------------------------------------------


def quotient_blocks(n: int, coll: Iterable[Iterable[int]]) -> Blocks:
    """Blocks of ``{0..n}`` after collapsing each member of a disjoint collection."""
    g = ground_set(n)
    c = normalize_family(coll)
    if not is_disjoint_collection(c):
        raise StrataError(f"not a disjoint collection of >=2-element sets: {c}")
    if any(x not in g for s in c for x in s):
        raise StrataError("collection leaves the ground set")
    covered = {x for s in c for x in s}
    blocks = list(c) + [(x,) for x in g if x not in covered]
    return tuple(sorted(blocks, key=lambda b: b[0]))


def quotient(n: int, s: Iterable[int]) -> Blocks:
    s = tuple(sorted(set(s)))
    if len(s) < 2:
        raise StrataError(f"collapsed set needs at least 2 elements, got {s}")
    return quotient_blocks(n, [s])


def basepoint_block(blocks: Blocks) -> Subset:
    for b in blocks:
        if 0 in b:
            return b
    raise StrataError("no block contains the basepoint")


def _resolve_blocks(blocks: Blocks, items: Iterable) -> list[Subset]:
    """Accept blocks or representatives; ints ``i`` stand for the block ``[i]``."""
    owner = {x: b for b in blocks for x in b}
    out = []
    for it in items:
        if isinstance(it, int):
            if it not in owner:
                raise StrataError(f"element {it} not in the ground set")
            b = owner[it]
        else:
            b = tuple(sorted(it))
            if b not in blocks:
                raise StrataError(f"{b} is not a block of the quotient")
        if b in out:
            raise StrataError(f"block {b} listed twice")
        out.append(b)
    return out


def image_blocks(blocks: Blocks, subset: Iterable[int]) -> list[Subset]:
    """Blocks of a quotient met by ``subset``, ordered by minimal element."""
    owner = {x: b for b in blocks for x in b}
    return sorted({owner[x] for x in subset}, key=lambda b: b[0])


def s_dot_a(n: int, coll: Iterable[Iterable[int]], a: Iterable) -> Family:
    """The collection on ``{0..n}`` from collapsing ``coll`` then the blocks ``a``.

    Members are the preimages with at least two elements of the points of
    ``(n/coll)/a``.
    """
    blocks = quotient_blocks(n, coll)
    chosen = _resolve_blocks(blocks, a)
    if len(chosen) < 2:
        raise StrataError("A must contain at least two blocks")
    merged = tuple(sorted(x for b in chosen for x in b))
    rest = [b for b in blocks if b not in chosen]
    return normalize_family([merged] + [b for b in rest if len(b) >= 2])


def collapse_blocks(blocks: Blocks, a: Iterable) -> tuple[tuple[Subset, ...], ...]:
    """``(n/S)/A`` as blocks of blocks, ordered by minimal representative."""
    chosen = _resolve_blocks(blocks, a)
    merged = tuple(sorted(chosen, key=lambda b: b[0]))
    out = [merged] + [(b,) for b in blocks if b not in chosen]
    return tuple(sorted(out, key=lambda bb: min(x for b in bb for x in b)))


def flatten(blocks_of_blocks) -> Blocks:
    return tuple(tuple(sorted(x for b in bb for x in b)) for bb in blocks_of_blocks)


# -- codimension-2 consistency -------------------------------------------------


def codim2_consistency(n: int, a: Iterable[int], d: Iterable[int]) -> bool:
    """Both iteration orders of collapsing reach the same stratum and quotient.

    Disjoint ``a, d``: collapsing ``d`` then the image of ``a`` and collapsing
    ``a`` then the image of ``d`` must both give the collection ``{a, d}`` and
    the quotient ``n/{a, d}``.  Nested ``a < d``: collapsing ``a`` then the
    image ``d/a`` must give ``n/d``, and the fibre index ``d/a`` must agree
    with the image of ``d`` in ``n/a``.
    """
    a = tuple(sorted(set(a)))
    d = tuple(sorted(set(d)))
    g = set(ground_set(n))
    if len(a) < 2 or len(d) < 2 or not set(a) <= g or not set(d) <= g:
        raise StrataError("A and D must be subsets of {0..n} with at least 2 elements")
    sa, sd = set(a), set(d)
    if sa & sd and not sa < sd:
        raise StrataError("A and D must be disjoint or satisfy A < D")
    label = normalize_family([a, d])
    if not is_nested(label):
        return False
    if not sa & sd:
        target = quotient_blocks(n, [a, d])
        via_d = s_dot_a(n, [d], list(a))
        via_a = s_dot_a(n, [a], list(d))
        blocks_d = flatten(collapse_blocks(quotient(n, d), list(a)))
        blocks_a = flatten(collapse_blocks(quotient(n, a), list(d)))
        # the fibres are indexed by a and d themselves in both orders
        return (
            normalize_family(via_d) == label
            and normalize_family(via_a) == label
            and blocks_d == target
            and blocks_a == target
        )
    # nested: a is a proper subset of d
    target = quotient(n, d)
    qa = quotient(n, a)
    d_image = image_blocks(qa, d)
    via_a = s_dot_a(n, [a], d_image)
    blocks_via_a = flatten(collapse_blocks(qa, d_image))
    # d/a computed inside d alone
    inner = [a] + [(x,) for x in d if x not in sa]
    inner = sorted(inner, key=lambda b: b[0])
    return (
        via_a == normalize_family([d])
        and blocks_via_a == target
        and d_image == inner
        and len(inner) == len(d) - len(a) + 1
    )


def legal_codim2_pairs(n: int) -> list[tuple[Subset, Subset]]:
    """Ordered pairs ``(A, D)`` with ``A, D`` disjoint, or ``A`` a proper subset of ``D``."""
    subs = admissible_subsets(n)
    out = []
    for a in subs:
        for d in subs:
            sa, sd = set(a), set(d)
            if (not sa & sd) or sa < sd:
                out.append((a, d))
    return out


# -- propagator bookkeeping ----------------------------------------------------


def propagator_index_set(n: int, coll: Iterable[Iterable[int]] = ()) -> list[tuple[Subset, Subset]]:
    """Ordered pairs of distinct blocks of ``n/coll`` avoiding the basepoint block."""
    blocks = quotient_blocks(n, coll)
    base = basepoint_block(blocks)
    free = [b for b in blocks if b != base]
    return [(x, y) for x in free for y in free if x != y]


def disjoint_collections(n: int, include_empty: bool = True) -> list[Family]:
    """All collections of pairwise disjoint subsets of ``{0..n}`` of size >= 2."""
    subs = admissible_subsets(n)
    out: list[Family] = [()] if include_empty else []

    def rec(start: int, used: set[int], current: list[Subset]):
        for i in range(start, len(subs)):
            s = subs[i]
            if used & set(s):
                continue
            current.append(s)
            out.append(normalize_family(current))
            rec(i + 1, used | set(s), current)
            current.pop()

    rec(0, set(), [])
    return sorted(set(out), key=family_key)


def induction_schedule(n: int) -> list[list[Family]]:
    """Layers of collections by quotient size ``|n/S| = 3, 4, ..., n+1``."""
    if n < 2:
        raise StrataError("the schedule needs n >= 2")
    layers: dict[int, list[Family]] = {}
    for c in disjoint_collections(n):
        size = len(quotient_blocks(n, c))
        if size >= 3:
            layers.setdefault(size, []).append(c)
    return [layers[k] for k in sorted(layers)]


def schedule_closure_ok(n: int) -> bool:
    """Every ``S.A`` with ``|n/(S.A)| >= 3`` needed by a layer sits in an earlier layer."""
    layers = induction_schedule(n)
    placed: dict[Family, int] = {}
    for idx, layer in enumerate(layers):
        for c in layer:
            placed[c] = idx
    for idx, layer in enumerate(layers):
        for c in layer:
            blocks = quotient_blocks(n, c)
            for r in range(2, len(blocks) + 1):
                for a in itertools.combinations(blocks, r):
                    sa = s_dot_a(n, c, a)
                    if len(quotient_blocks(n, sa)) < 3:
                        continue
                    if placed.get(sa, len(layers)) >= idx:
                        return False
    return True


def covering_dimension_drops(poset: FacePoset, base_dim: int = 0) -> bool:
    return all(
        stratum_dimension(poset.n, f, base_dim) - stratum_dimension(poset.n, g, base_dim) == 1
        for f, g in poset.covers
    )


def parse_family(items: Sequence[Sequence[int]]) -> Family:
    return normalize_family(items)
