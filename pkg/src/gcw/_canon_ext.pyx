# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled canonical labeling search (twin of ``_canon_py``).

Adjacency is held in ``unsigned long long`` masks, so graphs are limited to
64 vertices.  Results are identical to the pure-Python search.
"""

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

ctypedef unsigned long long u64

cdef enum:
    MAXV = 64


cdef int _refine(int p, u64* adj, int* order, int* start, int ncells) except -1:
    # cells are order[start[c]:start[c+1]]; returns the new number of cells
    cdef u64 masks[MAXV]
    cdef int counts[MAXV * MAXV]
    cdef int c, i, j, v, s, e, size, nnew, pos
    cdef bint changed
    while True:
        for c in range(ncells):
            masks[c] = 0
            for i in range(start[c], start[c + 1]):
                masks[c] |= (<u64>1) << order[i]
        for v in range(p):
            for c in range(ncells):
                counts[v * MAXV + c] = __builtin_popcountll(adj[v] & masks[c])
        changed = False
        new_order = []
        new_start = [0]
        pos = 0
        for c in range(ncells):
            s = start[c]
            e = start[c + 1]
            size = e - s
            if size == 1:
                new_order.append(order[s])
                pos += 1
                new_start.append(pos)
                continue
            sigs = {}
            for i in range(s, e):
                v = order[i]
                sig = tuple([counts[v * MAXV + j] for j in range(ncells)])
                lst = sigs.get(sig)
                if lst is None:
                    sigs[sig] = [v]
                else:
                    lst.append(v)
            if len(sigs) == 1:
                for i in range(s, e):
                    new_order.append(order[i])
                pos += size
                new_start.append(pos)
                continue
            changed = True
            for sig in sorted(sigs):
                lst = sigs[sig]
                new_order.extend(lst)
                pos += len(lst)
                new_start.append(pos)
        nnew = len(new_start) - 1
        for i in range(p):
            order[i] = new_order[i]
        for c in range(nnew + 1):
            start[c] = new_start[c]
        ncells = nnew
        if not changed:
            return ncells


cdef tuple _relabel_rows(int p, u64* adj, int* lab):
    cdef u64 rows[MAXV]
    cdef int v, w
    cdef u64 a, r
    for v in range(p):
        a = adj[v]
        r = 0
        w = 0
        while a:
            if a & 1:
                r |= (<u64>1) << (p - 1 - lab[w])
            a >>= 1
            w += 1
        rows[lab[v]] = r
    return tuple([rows[v] for v in range(p)])


def relabel_rows(adj, lab):
    cdef int p = len(adj)
    cdef u64 cadj[MAXV]
    cdef int clab[MAXV]
    cdef int v
    for v in range(p):
        cadj[v] = adj[v]
        clab[v] = lab[v]
    return _relabel_rows(p, cadj, clab)


def refine(adj, cells):
    cdef int p = len(adj)
    cdef u64 cadj[MAXV]
    cdef int order[MAXV]
    cdef int start[MAXV + 1]
    cdef int i, c, ncells
    for i in range(p):
        cadj[i] = adj[i]
    i = 0
    start[0] = 0
    for c, cell in enumerate(cells):
        for v in cell:
            order[i] = v
            i += 1
        start[c + 1] = i
    ncells = _refine(p, cadj, order, start, len(cells))
    return [[order[i] for i in range(start[c], start[c + 1])] for c in range(ncells)]


cdef list _orbit_roots(int p, list gens, list prefix):
    cdef int parent[MAXV]
    cdef int v, a, b, x
    cdef bint ok
    for v in range(p):
        parent[v] = v
    for g in gens:
        ok = True
        for v in prefix:
            if g[v] != v:
                ok = False
                break
        if not ok:
            continue
        for v in range(p):
            a = v
            while parent[a] != a:
                a = parent[a]
            b = <int>g[v]
            while parent[b] != b:
                b = parent[b]
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    out = []
    for v in range(p):
        x = v
        while parent[x] != x:
            x = parent[x]
        out.append(x)
    return out


cdef class _Search:
    cdef int p
    cdef u64 adj[MAXV]
    cdef public list gens
    cdef object first, first_code, best, best_code

    def __init__(self, adj):
        self.p = len(adj)
        for v in range(self.p):
            self.adj[v] = adj[v]
        self.gens = []
        self.first = None
        self.first_code = None
        self.best = None
        self.best_code = None

    cdef _leaf(self, int* order):
        cdef int lab[MAXV]
        cdef int i
        for i in range(self.p):
            lab[order[i]] = i
        code = _relabel_rows(self.p, self.adj, lab)
        plab = [lab[i] for i in range(self.p)]
        if self.first is None:
            self.first = plab
            self.first_code = code
            self.best = plab
            self.best_code = code
            return
        if code == self.first_code:
            self.gens.append(_compose_inverse(self.first, plab))
        if code > self.best_code:
            self.best = plab
            self.best_code = code
        elif code == self.best_code:
            if self.best_code != self.first_code:
                self.gens.append(_compose_inverse(self.best, plab))

    cdef _rec(self, int* order_in, int* start_in, int ncells, list prefix):
        cdef int order[MAXV]
        cdef int start[MAXV + 1]
        cdef int corder[MAXV]
        cdef int cstart[MAXV + 1]
        cdef int i, c, target, s, e, v, k
        for i in range(self.p):
            order[i] = order_in[i]
        for c in range(ncells + 1):
            start[c] = start_in[c]
        ncells = _refine(self.p, self.adj, order, start, ncells)
        target = -1
        for c in range(ncells):
            if start[c + 1] - start[c] > 1:
                target = c
                break
        if target < 0:
            self._leaf(order)
            return
        s = start[target]
        e = start[target + 1]
        cell = sorted([order[i] for i in range(s, e)])
        cell_unsorted = [order[i] for i in range(s, e)]
        tried = []
        for v in cell:
            if tried:
                roots = _orbit_roots(self.p, self.gens, prefix)
                skip = False
                for u in tried:
                    if roots[v] == roots[u]:
                        skip = True
                        break
                if skip:
                    continue
            # child partition: cells[:target] + [[v], rest] + cells[target+1:]
            for i in range(s):
                corder[i] = order[i]
            corder[s] = v
            k = s + 1
            for u in cell_unsorted:
                if u != v:
                    corder[k] = u
                    k += 1
            for i in range(e, self.p):
                corder[i] = order[i]
            for c in range(target + 1):
                cstart[c] = start[c]
            cstart[target + 1] = s + 1
            for c in range(target + 1, ncells + 1):
                cstart[c + 1] = start[c]
            self._rec(corder, cstart, ncells + 1, prefix + [v])
            tried.append(v)

    def run(self):
        cdef int order[MAXV]
        cdef int start[2]
        cdef int i
        if self.p == 0:
            return [], []
        for i in range(self.p):
            order[i] = i
        start[0] = 0
        start[1] = self.p
        self._rec(order, start, 1, [])
        return self.best, self.gens


def _compose_inverse(lab1, lab2):
    cdef int n = len(lab1)
    inv = [0] * n
    for v in range(n):
        inv[lab1[v]] = v
    return [inv[lab2[v]] for v in range(n)]


def search(adj):
    if len(adj) > MAXV:
        raise ValueError("compiled search supports at most 64 vertices")
    return _Search(adj).run()
