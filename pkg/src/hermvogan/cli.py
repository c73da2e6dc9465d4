"""Command line front end.

    hermvogan classify "A2 paint={1}" [--best-ell] [--method=char|oracle|both]
    hermvogan enumerate "A2" [--rank-max N] [--dedup] [-o out.jsonl]
    hermvogan verify-paper [--rank-max N]
    hermvogan witness "A4 inv=(1 4)(2 3) delta0={1}"

Exit codes: 0 ok, 1 user error, 2 internal inconsistency.
"""
from __future__ import annotations

import argparse
import heapq
import json
import os
import sys
from multiprocessing import Pool
from typing import Iterable, Iterator, Sequence

from .dsl import ParseError, ValidationError, diagram_text, elaborate, parse_diagram
from .regstruct import enumerate_delta0
from .report import MethodDisagreement, classify_report, witness_report
from .rootsys import NotFiniteType, cartan_of_types, connected_types_upto, semisimple_types
from .vogan import enumerate_vogan

OK, USER_ERROR, INTERNAL_ERROR = 0, 1, 2


def _emit(obj, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(obj, ensure_ascii=False) + "\n")


def _error(msg: str, code: int, **extra) -> int:
    _emit(dict({"error": msg}, **extra))
    return code


def cmd_classify(text: str, best_ell: bool = False, method: str = "both") -> int:
    try:
        el = elaborate(parse_diagram(text))
    except (ParseError, ValidationError) as exc:
        return _error(str(exc), USER_ERROR, kind=type(exc).__name__)
    try:
        report = classify_report(el, best_ell=best_ell, methods=method)
    except MethodDisagreement as exc:
        return _error(str(exc), INTERNAL_ERROR, kind="MethodDisagreement")
    print(json.dumps(report, indent=2, ensure_ascii=False))
    return OK


def cmd_witness(text: str) -> int:
    try:
        el = elaborate(parse_diagram(text))
    except (ParseError, ValidationError) as exc:
        return _error(str(exc), USER_ERROR, kind=type(exc).__name__)
    out = witness_report(el)
    print(json.dumps(out, indent=2, ensure_ascii=False))
    bad = [k for k in ("balanced", "pluriclosed") if out[k] is not None and not out[k]["verified"]]
    return INTERNAL_ERROR if bad else OK


# enumeration ---------------------------------------------------------------------

def parse_types(spec: str, rank_max: int | None) -> list[tuple[tuple[str, int], ...]]:
    """'A2', 'A1;B3', a bare letter such as 'D' (ranks up to --rank-max), or
    'all' (every semisimple type up to --rank-max)."""
    spec = spec.strip()
    if spec == "all":
        return semisimple_types(rank_max or 2)
    if len(spec) == 1 and spec in "ABCDEFG":
        return [((letter, n),) for letter, n in connected_types_upto(rank_max or 8) if letter == spec]
    expr = parse_diagram(spec)
    for f in expr.factors:
        if f.swapped or f.inv or f.paint or f.delta0 is not None or expr.ell is not None:
            raise ValidationError("enumerate takes bare types such as 'A2' or 'A1;G2'")
    types = tuple((f.letter, f.rank) for f in expr.factors)
    try:
        cartan_of_types(types)
    except NotFiniteType as exc:
        raise ValidationError(str(exc)) from None
    return [types]


def enumeration_items(types: Iterable[tuple[tuple[str, int], ...]], dedup: bool) -> Iterator[str]:
    for ty in types:
        for vd in enumerate_vogan(cartan_of_types(ty), dedup=dedup):
            for d0 in enumerate_delta0(vd):
                yield diagram_text(vd, d0)


def _work(item: tuple[int, str]) -> tuple[int, str, int]:
    seq, text = item
    try:
        rep = classify_report(elaborate(parse_diagram(text)), best_ell=False, all_delta0=False)
        code = OK
    except MethodDisagreement as exc:
        rep = {"input": text, "error": str(exc)}
        code = INTERNAL_ERROR
    rep = dict({"seq": seq}, **rep)
    return seq, json.dumps(rep, ensure_ascii=False), code


def _ordered(results: Iterable[tuple[int, str, int]]) -> Iterator[tuple[int, str, int]]:
    # workers finish out of order; release lines strictly by sequence number
    heap: list = []
    nxt = 0
    for r in results:
        heapq.heappush(heap, r)
        while heap and heap[0][0] == nxt:
            yield heapq.heappop(heap)
            nxt += 1
    while heap:
        yield heapq.heappop(heap)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("VH_THREADS", "1")))
    except ValueError:
        return 1


def cmd_enumerate(spec: str, rank_max: int | None = None, dedup: bool = False, out: str | None = None) -> int:
    try:
        types = parse_types(spec, rank_max)
    except (ParseError, ValidationError) as exc:
        return _error(str(exc), USER_ERROR, kind=type(exc).__name__)
    items = enumerate(enumeration_items(types, dedup))
    stream = open(out, "w", encoding="utf-8") if out else sys.stdout
    code = OK
    try:
        n = worker_count()
        if n == 1:
            results: Iterable = map(_work, items)
            pool = None
        else:
            pool = Pool(n)
            results = pool.imap_unordered(_work, items, chunksize=8)
        for _, line, c in _ordered(results):
            stream.write(line + "\n")
            code = max(code, c)
        if pool is not None:
            pool.close()
            pool.join()
    finally:
        if out:
            stream.close()
    return code


# verify-paper ----------------------------------------------------------------------

def cmd_verify(rank_max: int) -> int:
    from .audit import MAX_RANK, run_checks

    if not 1 <= rank_max <= MAX_RANK:
        return _error(f"--rank-max must be between 1 and {MAX_RANK}", USER_ERROR)
    results = run_checks(rank_max)
    for r in results:
        _emit(r.as_json())
    ok = all(r.passed for r in results)
    _emit({"summary": "pass" if ok else "fail", "checks": len(results),
           "failed": [r.name for r in results if not r.passed]})
    return OK if ok else INTERNAL_ERROR


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hermvogan", description="Balanced and pluriclosed regular complex structures from Vogan diagrams.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("classify", help="report on one diagram")
    c.add_argument("expr")
    c.add_argument("--best-ell", action="store_true", help="include the compatible l and its kappa")
    c.add_argument("--method", choices=["char", "oracle", "both"], default="both")
    e = sub.add_parser("enumerate", help="JSON-lines over all diagrams of some types")
    e.add_argument("types")
    e.add_argument("--rank-max", type=int)
    e.add_argument("--dedup", action="store_true")
    e.add_argument("-o", "--output")
    v = sub.add_parser("verify-paper", help="re-derive the reference tables and theorem checks")
    v.add_argument("--rank-max", type=int, default=2)
    w = sub.add_parser("witness", help="explicit metric parameters or kappa")
    w.add_argument("expr")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    p = build_parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as exc:
        return USER_ERROR if exc.code else OK
    if args.command == "classify":
        return cmd_classify(args.expr, args.best_ell, args.method)
    if args.command == "enumerate":
        return cmd_enumerate(args.types, args.rank_max, args.dedup, args.output)
    if args.command == "verify-paper":
        return cmd_verify(args.rank_max)
    return cmd_witness(args.expr)


if __name__ == "__main__":
    sys.exit(main())
