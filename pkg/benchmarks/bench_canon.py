"""Compare the compiled and pure-Python canonical labeling kernels.

    python benchmarks/bench_canon.py [--repeat 3] [--graphs 300]

Times the raw search on random graphs and on every admissible class of a few
bidegrees, and checks that both kernels return identical labelings.
"""
import argparse
import itertools
import random
import sys
import time

from gcw import _canon_py, _kernels
from gcw.enumeration import admissible_classes


def random_graphs(count, seed):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        p = rng.randint(6, 14)
        pairs = list(itertools.combinations(range(p), 2))
        adj = [0] * p
        for u, v in pairs:
            if rng.random() < 0.35:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        out.append(adj)
    return out


def class_graphs():
    graphs = []
    for p, q in [(8, 12), (8, 13), (9, 14), (10, 15)]:
        graphs.extend(g.adjacency_masks() for g in admissible_classes(p, q))
    return graphs


def best_time(fn, graphs, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for adj in graphs:
            fn(adj)
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--graphs", type=int, default=300)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    if _kernels.compiled_search is None:
        print("compiled kernel not available; build with `pip install --no-build-isolation -e .`")
        return 1

    suites = {
        "random": random_graphs(args.graphs, args.seed),
        "admissible classes": class_graphs(),
    }
    print(f"{'suite':<20} {'graphs':>7} {'python [s]':>11} {'cython [s]':>11} {'speedup':>8}")
    for name, graphs in suites.items():
        for adj in graphs:
            if _canon_py.search(adj) != _kernels.compiled_search(adj):
                print(f"kernels disagree on {adj}", file=sys.stderr)
                return 2
        tp = best_time(_canon_py.search, graphs, args.repeat)
        tc = best_time(_kernels.compiled_search, graphs, args.repeat)
        print(f"{name:<20} {len(graphs):>7} {tp:>11.4f} {tc:>11.4f} {tp / tc:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
