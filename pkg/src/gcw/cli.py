"""Command-line interface: ``gcw {enum,homology,aeven,check,strata,matrix}``.

Exit codes: 0 success, 1 failed internal identity, 2 resource cap, 3 bad arguments.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import _kernels
from .aeven import MAX_K, a_even
from .complex import ComplexError, average_map, differential, forget_map, homology, m_range
from .enumeration import DEFAULT_CAP, CapExceeded, EnumerationRequest, enumerate_basis, write_jsonl
from .linalg import write_matrix
from .strata import (
    StrataError,
    codim1_face_count,
    codim2_consistency,
    enumerate_nested,
    face_poset,
    induction_schedule,
    legal_codim2_pairs,
    quotient_blocks,
    schedule_closure_ok,
    stratum_dimension,
)

EXIT_OK, EXIT_ASSERT, EXIT_CAP, EXIT_ARGS = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ARGS, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    cache_dir: str | None = None
    connected_only: bool = False
    generator_cap: int = DEFAULT_CAP
    thread_count: int | None = None  # None means AUTO

    @classmethod
    def from_args(cls, args) -> RunConfig:
        cache_dir = getattr(args, "cache_dir", None) or os.environ.get("GCW_CACHE_DIR") or None
        threads = os.environ.get("GCW_THREADS", "auto")
        thread_count = None if threads.lower() == "auto" else int(threads)
        cfg = cls(cache_dir, getattr(args, "connected_only", False), getattr(args, "cap", DEFAULT_CAP), thread_count)
        if cfg.generator_cap < 1:
            raise UsageError("--cap must be >= 1")
        if cfg.thread_count is not None and cfg.thread_count < 1:
            raise UsageError("GCW_THREADS must be a positive integer or 'auto'")
        if cfg.cache_dir:
            try:
                Path(cfg.cache_dir).mkdir(parents=True, exist_ok=True)
            except OSError:
                cfg.cache_dir = None
        if cfg.cache_dir:
            os.environ["GCW_CACHE_DIR"] = cfg.cache_dir
        else:
            os.environ.pop("GCW_CACHE_DIR", None)
        return cfg


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _family_json(f):
    return [list(s) for s in f]


# -- commands ------------------------------------------------------------------


def cmd_enum(args, cfg: RunConfig) -> int:
    req = EnumerationRequest(args.p, args.q, args.decorated, cfg.connected_only)
    gens = enumerate_basis(req, cap=cfg.generator_cap)
    write_jsonl(gens, sys.stdout)
    return EXIT_OK


def cmd_homology(args, cfg: RunConfig) -> int:
    n = args.n
    if n % 2:
        raise UsageError("--n must be even")
    ms = range(args.m_min, args.m_max + 1) if args.m_max is not None else m_range(n)
    if args.m_max is not None and args.m_min > args.m_max:
        raise UsageError("--m-min must not exceed --m-max")
    rows = [homology(m, n, args.decorated, cfg.connected_only, cfg.generator_cap).to_record() for m in ms]
    _emit({"n": n, "decorated": args.decorated, "connected_only": cfg.connected_only, "rows": rows})
    return EXIT_OK


def cmd_aeven(args, cfg: RunConfig) -> int:
    rep = a_even(args.k, args.method, cfg.connected_only, cfg.generator_cap, max_k=args.max_k)
    rec = rep.to_record()
    rec["connected_only"] = cfg.connected_only
    rec["generators"] = list(rep.generators)
    _emit(rec)
    return EXIT_OK


def _check_d2(max_n: int, cfg: RunConfig):
    for n in range(2, max_n + 1, 2):
        for dec in (False, True):
            if dec and n > 6:
                continue
            for m in m_range(n):
                d0 = differential(m, n, dec, cfg.connected_only, cfg.generator_cap)
                d1 = differential(m + 1, n, dec, cfg.connected_only, cfg.generator_cap)
                yield f"d2 n={n} m={m} decorated={dec}", (d1 @ d0).is_zero()


def _check_chainmap(max_n: int, cfg: RunConfig):
    from .linalg import RationalSparseMatrix

    for n in range(2, max_n + 1, 2):
        for m in m_range(n):
            i0 = average_map(m, n, cfg.connected_only, cfg.generator_cap)
            i1 = average_map(m + 1, n, cfg.connected_only, cfg.generator_cap)
            dt = differential(m, n, True, cfg.connected_only, cfg.generator_cap)
            d = differential(m, n, False, cfg.connected_only, cfg.generator_cap)
            f0 = forget_map(m, n, cfg.connected_only, cfg.generator_cap)
            yield f"chain n={n} m={m}", (dt @ i0) == (i1 @ d)
            yield f"split n={n} m={m}", (f0 @ i0) == RationalSparseMatrix.identity(i0.ncols)


def _check_counts(max_n: int, cfg: RunConfig):
    from .enumeration import admissible_classes, brute_force_oracle
    from .graph import decoration_count, decorations_of

    max_p = min(max_n, 6)
    for p in range(1, max_p + 1):
        for q in range(0, 11):
            for g in admissible_classes(p, q):
                yield f"|A| p={p} q={q} {g.edges}", len(decorations_of(g)) == decoration_count(g)
            for dec in (False, True):
                req = EnumerationRequest(p, q, dec, cfg.connected_only)
                a = [x.key for x in enumerate_basis(req, cap=cfg.generator_cap)]
                b = [x.key for x in brute_force_oracle(req)]
                yield f"oracle p={p} q={q} decorated={dec}", a == b


def _check_strata(max_n: int, cfg: RunConfig):
    for n in range(1, max_n + 1):
        pairs = legal_codim2_pairs(n)
        yield f"codim2 n={n} ({len(pairs)} pairs)", all(codim2_consistency(n, a, d) for a, d in pairs)
        yield f"codim1 count n={n}", len(enumerate_nested(n, 1)) == codim1_face_count(n)
        poset = face_poset(n)
        yield f"covering dims n={n}", all(
            stratum_dimension(n, f) - stratum_dimension(n, g) == 1 for f, g in poset.covers
        )
        if n >= 2:
            yield f"schedule closure n={n}", schedule_closure_ok(n)


SUITES = {"d2": _check_d2, "chainmap": _check_chainmap, "counts": _check_counts, "strata": _check_strata}


def cmd_check(args, cfg: RunConfig) -> int:
    if args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    if args.suite == "strata" and args.max_n > 8:
        raise UsageError("strata checks support --max-n <= 8")
    checks = []
    for name, ok in SUITES[args.suite](args.max_n, cfg):
        checks.append({"name": name, "passed": bool(ok)})
        print(f"{'PASS' if ok else 'FAIL'} {name}", file=sys.stderr)
    passed = all(c["passed"] for c in checks)
    _emit({"suite": args.suite, "max_n": args.max_n, "passed": passed, "checks": checks})
    print("PASS" if passed else "FAIL", file=sys.stderr)
    return EXIT_OK if passed else EXIT_ASSERT


def cmd_strata(args, cfg: RunConfig) -> int:
    n = args.n
    out: dict = {"n": n, "op": args.op}
    if args.op == "faces":
        fams = enumerate_nested(n, 1)
        out["faces"] = [{"family": _family_json(f), "dim": stratum_dimension(n, f)} for f in fams]
    elif args.op == "poset":
        poset = face_poset(n, args.max_size)
        out["faces"] = [{"family": _family_json(f), "dim": stratum_dimension(n, f)} for f in poset.faces]
        out["covers"] = [[_family_json(f), _family_json(g)] for f, g in poset.covers]
    elif args.op == "codim2":
        pairs = []
        for a, d in legal_codim2_pairs(n):
            kind = "nested" if set(a) < set(d) else "disjoint"
            pairs.append({"A": list(a), "D": list(d), "kind": kind, "consistent": codim2_consistency(n, a, d)})
        out["pairs"] = pairs
        out["all_consistent"] = all(p["consistent"] for p in pairs)
    else:
        layers = induction_schedule(n)
        out["layers"] = [
            {"quotient_size": len(quotient_blocks(n, layer[0])), "collections": [_family_json(c) for c in layer]}
            for layer in layers
        ]
        out["closure_ok"] = schedule_closure_ok(n)
    _emit(out)
    return EXIT_OK


def cmd_matrix(args, cfg: RunConfig) -> int:
    if args.n % 2:
        raise UsageError("--n must be even")
    if args.kind == "d":
        M = differential(args.m, args.n, args.decorated, cfg.connected_only, cfg.generator_cap)
    elif args.kind == "i":
        M = average_map(args.m, args.n, cfg.connected_only, cfg.generator_cap)
    else:
        M = forget_map(args.m, args.n, cfg.connected_only, cfg.generator_cap)
    write_matrix(M, sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gcw", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"gcw 0.1.0 ({_kernels.BACKEND} kernel)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, graphs=True):
        p.add_argument("--cache-dir", help="basis cache directory (default: $GCW_CACHE_DIR)")
        if graphs:
            p.add_argument("--connected-only", action="store_true", help="restrict to connected graphs")
            p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="maximum generators per component")

    p = sub.add_parser("enum", help="list basis generators as JSONL")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--decorated", action="store_true")
    common(p)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("homology", help="graph cohomology dimensions at fixed n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m-min", type=int, default=0)
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--decorated", action="store_true")
    common(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("aeven", help="trivalent graphs modulo IHX")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=["ihx", "coker"], default="ihx")
    p.add_argument("--max-k", type=int, default=MAX_K)
    common(p)
    p.set_defaults(func=cmd_aeven)

    p = sub.add_parser("check", help="run an invariant suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--max-n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("strata", help="compactification strata combinatorics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--op", choices=["faces", "poset", "codim2", "schedule"], required=True)
    p.add_argument("--max-size", type=int, default=None)
    common(p, graphs=False)
    p.set_defaults(func=cmd_strata)

    p = sub.add_parser("matrix", help="export a differential or chain map")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kind", choices=["d", "i", "f"], default="d")
    p.add_argument("--decorated", action="store_true", help="decorated differential (kind d only)")
    common(p)
    p.set_defaults(func=cmd_matrix)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        return args.func(args, cfg)
    except CapExceeded as exc:
        print(f"gcw: resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ComplexError, AssertionError) as exc:
        print(f"gcw: internal check failed: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    except (UsageError, StrataError, ValueError) as exc:
        print(f"gcw: {exc}", file=sys.stderr)
        return EXIT_ARGS


if __name__ == "__main__":
    sys.exit(main())
