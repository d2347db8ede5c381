"""Pure-Python canonical labeling search.

Graphs are passed as a list of adjacency bitmasks over vertices ``0..p-1``.
The search refines an ordered partition to an equitable one, individualizes
vertices of the first non-singleton cell and keeps the leaf whose relabeled
adjacency rows are lexicographically largest.  Subtrees are pruned with the
automorphisms found so far (generators fixing the individualized prefix), and
every leaf is compared with both the first leaf and the current best leaf, so
the returned generators generate the full automorphism group.

This module mirrors ``_canon_ext.pyx`` exactly; the two must return identical
results.
"""


def _popcount(x):
    return bin(x).count("1")


def refine(adj, cells):
    """Split cells until every vertex of a cell has the same neighbour counts."""
    while True:
        masks = []
        for cell in cells:
            m = 0
            for v in cell:
                m |= 1 << v
            masks.append(m)
        new_cells = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sigs = {}
            for v in cell:
                a = adj[v]
                sig = tuple(_popcount(a & m) for m in masks)
                sigs.setdefault(sig, []).append(v)
            if len(sigs) == 1:
                new_cells.append(cell)
                continue
            changed = True
            for sig in sorted(sigs):
                new_cells.append(sigs[sig])
        cells = new_cells
        if not changed:
            return cells


def relabel_rows(adj, lab):
    """Adjacency rows of the graph relabeled by ``lab`` (vertex -> position)."""
    p = len(adj)
    rows = [0] * p
    for v in range(p):
        a = adj[v]
        r = 0
        w = 0
        while a:
            if a & 1:
                r |= 1 << (p - 1 - lab[w])
            a >>= 1
            w += 1
        rows[lab[v]] = r
    return tuple(rows)


def _orbit_roots(p, gens, prefix):
    parent = list(range(p))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        if any(g[v] != v for v in prefix):
            continue
        for v in range(p):
            a, b = find(v), find(g[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(v) for v in range(p)]


def search(adj):
    """Return ``(best_lab, gens)`` for the graph with adjacency masks ``adj``.

    ``best_lab[v]`` is the canonical position of vertex ``v``; ``gens`` is a
    list of automorphisms (as vertex images) generating the full group.
    """
    p = len(adj)
    if p == 0:
        return [], []
    state = {"first": None, "first_code": None, "best": None, "best_code": None}
    gens = []

    def leaf(cells):
        lab = [0] * p
        for i, cell in enumerate(cells):
            lab[cell[0]] = i
        code = relabel_rows(adj, lab)
        if state["first"] is None:
            state["first"] = lab
            state["first_code"] = code
            state["best"] = lab
            state["best_code"] = code
            return
        if code == state["first_code"]:
            gens.append(_compose_inverse(state["first"], lab))
        if code > state["best_code"]:
            state["best"] = lab
            state["best_code"] = code
        elif code == state["best_code"] and lab is not state["best"]:
            if state["best_code"] != state["first_code"]:
                gens.append(_compose_inverse(state["best"], lab))

    def rec(cells, prefix):
        cells = refine(adj, cells)
        target = None
        for i, cell in enumerate(cells):
            if len(cell) > 1:
                target = i
                break
        if target is None:
            leaf(cells)
            return
        cell = cells[target]
        tried = []
        for v in sorted(cell):
            if tried:
                roots = _orbit_roots(p, gens, prefix)
                if any(roots[v] == roots[u] for u in tried):
                    continue
            rest = [u for u in cell if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1:]
            rec(child, prefix + [v])
            tried.append(v)

    rec([list(range(p))], [])
    return state["best"], gens


def _compose_inverse(lab1, lab2):
    # sigma = lab1^{-1} o lab2 : v -> lab1^{-1}(lab2(v))
    inv = [0] * len(lab1)
    for v, pos in enumerate(lab1):
        inv[pos] = v
    return [inv[lab2[v]] for v in range(len(lab2))]
