"""Exhaustive re-derivation of the reference results at desk scale.

Every check returns a CheckResult; ``run_checks`` drives the ``verify-paper``
command and the acceptance tests share ``sweep``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .classify import (
    Method,
    construct_compatible_ell,
    decide_balanced,
    decide_pluriclosed,
    kappa_problem,
    balanced_columns,
    verify_balanced_witness,
    verify_pluriclosed_witness,
)
from .lpexact import verify_certificate
from .regstruct import (
    InvalidEll,
    EllSubspace,
    build_R,
    check_rset,
    construct_default_ell,
    enumerate_delta0,
    make_structure,
    snow_decomposition_exists,
    validate_ell,
)
from .rootsys import cartan_matrix, cartan_of_types, connected_types_upto, semisimple_types, support
from .tables import RANK2_ROWS, recompute_row, vogan_isomorphic
from .vogan import (
    ComponentType,
    Table1Method,
    VoganDiagram,
    enumerate_vogan,
    make_vogan,
    mixed_family,
    painted_vertex_conditions,
    table1_membership,
)

MAX_RANK = 8


class RankBoundError(ValueError):
    pass


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int = 0
    seconds: float = 0.0
    failures: list[str] = field(default_factory=list)

    def as_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "cases": self.cases,
                "seconds": round(self.seconds, 3), "failures": self.failures[:20]}


def _timed(name: str, fn: Callable[[], tuple[int, list[str]]]) -> CheckResult:
    t = time.perf_counter()
    cases, failures = fn()
    return CheckResult(name, not failures, cases, time.perf_counter() - t, failures)


# rank 2 --------------------------------------------------------------------------

RANK2_TYPES = ((("A", 1), ("A", 1)), (("A", 2),), (("C", 2),), (("G", 2),))


def rank2_universe() -> list[VoganDiagram]:
    out = []
    for ty in RANK2_TYPES:
        out += list(enumerate_vogan(cartan_of_types(ty), dedup=True))
    return out


def check_rank2_table() -> tuple[int, list[str]]:
    universe = rank2_universe()
    fails = []
    for row in RANK2_ROWS:
        got = recompute_row(row, universe)
        if not got.matches(row):
            fails.append(f"{row.name}: expected inner={row.inner} pluriclosed={row.pluriclosed} "
                         f"balanced={row.balanced} dim={row.dim}, got {got}")
    # the rows partition the rank-2 diagrams
    from .tables import _diagram
    listed = [_diagram(t) for row in RANK2_ROWS for t in row.diagrams]
    for u in universe:
        hits = sum(vogan_isomorphic(u, d) for d in listed)
        if hits != 1:
            fails.append(f"{u!r} appears {hits} times in the table")
    return len(RANK2_ROWS), fails


# single Dynkin diagrams -------------------------------------------------------------

def _inner_diagrams(letter: str, n: int) -> Iterable[VoganDiagram]:
    c = cartan_matrix(letter, n)
    for mask in range(1 << n):
        yield make_vogan(c, None, [i for i in range(n) if mask >> i & 1])


def check_table1_methods(rank_max: int) -> tuple[int, list[str]]:
    cases, fails = 0, []
    for letter, n in connected_types_upto(rank_max):
        for vd in _inner_diagrams(letter, n):
            comp = vd.components[0]
            got = {m: table1_membership(vd, comp, m) for m in Table1Method}
            cases += 1
            if len(set(got.values())) != 1:
                fails.append(f"{letter}{n} painted={sorted(vd.painted)}: {got}")
    return cases, fails


def check_single_painted(rank_max: int) -> tuple[int, list[str]]:
    cases, fails = 0, []
    for letter, n in connected_types_upto(rank_max):
        c = cartan_matrix(letter, n)
        for k in range(n):
            vd = make_vogan(c, None, [k])
            conds = painted_vertex_conditions(vd, vd.components[0])
            cases += 1
            if len(set(conds)) != 1:
                fails.append(f"{letter}{n} painted={k + 1}: {conds}")
    return cases, fails


def expected_mixed_families(letter: str, n: int) -> set[str]:
    if letter == "A" and n >= 2:
        return {"sl(n+1,R), n even"} if n % 2 == 0 else {"sl(n+1,R), n odd", "sl((n+1)/2,H), n odd"}
    if letter == "D" and n >= 4:
        return {"so(p,q), p and q odd"}
    if letter == "E" and n == 6:
        return {"EI or EIV"}
    return set()


def check_mixed_shapes(rank_max: int) -> tuple[int, list[str]]:
    cases, fails = 0, []
    for letter, n in connected_types_upto(rank_max):
        seen = set()
        for vd in enumerate_vogan(cartan_matrix(letter, n)):
            comp = vd.components[0]
            if comp.kind is not ComponentType.MIXED:
                continue
            cases += 1
            name = mixed_family(vd, comp)
            if name is None:
                fails.append(f"{letter}{n} {vd!r}: mixed diagram outside every family")
            seen.add(name)
        if seen != expected_mixed_families(letter, n):
            fails.append(f"{letter}{n}: families {sorted(map(str, seen))}")
    return cases, fails


# the example with no Killing-orthogonal splitting -----------------------------------

def snow_example():
    vd = make_vogan(cartan_matrix("A", 4), [3, 2, 1, 0])
    d0 = frozenset({0})
    bad = EllSubspace.of([[1, 0, 0, 0], [0, 0, 1, 0]])
    good = EllSubspace.of([[1, 0, 0, 0], [1, 2, 0, 0]])
    return vd, d0, bad, good


def check_snow_example() -> tuple[int, list[str]]:
    vd, d0, bad, good = snow_example()
    fails = []
    if not validate_ell(vd, d0, bad):
        fails.append("span{H1,H3} should be a valid l")
    if snow_decomposition_exists(vd, d0, bad):
        fails.append("span{H1,H3} should admit no orthogonal splitting")
    if not (validate_ell(vd, d0, good) and snow_decomposition_exists(vd, d0, good)):
        fails.append("span{H1,H1+2H2} should be valid and split")
    rset = build_R(vd, d0)
    pos = set(vd.rs.positive_roots)
    if set(rset.R) != {(-1, 0, 0, 0)} | (pos - {(0, 0, 0, 1)}):
        fails.append("R should be {-a1} with the positive roots other than a4")
    return 1, fails


# the big sweep ----------------------------------------------------------------------

@dataclass
class SweepStats:
    diagrams: int = 0
    structures: int = 0
    balanced_yes: int = 0
    ells: int = 0
    pluriclosed_yes: int = 0
    certificates: int = 0
    failures: dict[str, list[str]] = field(default_factory=dict)
    seconds: float = 0.0

    def fail(self, kind: str, msg: str):
        self.failures.setdefault(kind, []).append(msg)


SWEEP_KINDS = ("method_agreement", "exclusivity", "either_or", "rset", "rr1",
               "delta0_constant", "certificates")


def _rr1(vd: VoganDiagram, d0, rset) -> bool:
    th = vd.involution
    delta1 = set(range(vd.rank)) - set(d0) - {th[v] for v in d0}
    R1 = set(rset.R) - set(rset.R0)
    return all((a in R1) == bool(support(a) & delta1) for a in vd.rs.positive_roots)


def sweep_diagram(vd: VoganDiagram, stats: SweepStats, ells: bool = True) -> None:
    stats.diagrams += 1
    rank = vd.rank
    inner = all(c.is_inner for c in vd.components)
    connected = len(vd.components) == 1
    verdicts = set()
    for d0 in enumerate_delta0(vd):
        stats.structures += 1
        rset = build_R(vd, d0)
        bad = check_rset(vd, d0, rset)
        if bad:
            stats.fail("rset", f"{vd!r} {sorted(d0)}: {bad}")
        if not _rr1(vd, d0, rset):
            stats.fail("rr1", f"{vd!r} {sorted(d0)}")
        s = make_structure(vd, d0)
        prob = balanced_columns(vd, d0).problem
        got = {}
        for m in Method:
            v = decide_balanced(s, m)
            got[m] = v.balanced
            stats.certificates += 1
            if not verify_certificate(prob, v.certificate):
                stats.fail("certificates", f"balanced {m.value} {vd!r} {sorted(d0)}")
            if v.witness is not None:
                stats.certificates += 1
                if not verify_balanced_witness(s, v.witness):
                    stats.fail("certificates", f"witness {vd!r} {sorted(d0)}")
        if len(set(got.values())) != 1:
            stats.fail("method_agreement", f"{vd!r} {sorted(d0)}: {got}")
        balanced = got[Method.ORACLE]
        stats.balanced_yes += balanced
        verdicts.add(balanced)
        if not ells or rank % 2:
            continue
        options = [construct_default_ell(vd, d0)]
        if inner and not d0:
            options.append(construct_compatible_ell(vd))
        plur_any = False
        for ell in options:
            stats.ells += 1
            try:
                st = make_structure(vd, d0, ell)
            except InvalidEll:
                stats.fail("rset", f"constructed l invalid {vd!r} {sorted(d0)}")
                continue
            pv = decide_pluriclosed(st)
            if pv.certificate is not None:
                stats.certificates += 1
                ok = verify_certificate(kappa_problem(vd, pv.J), pv.certificate)
                if pv.witness is not None:
                    ok = ok and verify_pluriclosed_witness(st, pv.witness, pv.J)
                if not ok:
                    stats.fail("certificates", f"kappa {vd!r}")
            stats.pluriclosed_yes += pv.yes
            plur_any |= pv.yes
            if pv.yes and balanced:
                stats.fail("exclusivity", f"{vd!r} {sorted(d0)}")
        if connected and not (balanced or plur_any):
            stats.fail("either_or", f"{vd!r} {sorted(d0)}")
    if len(verdicts) > 1:
        stats.fail("delta0_constant", f"{vd!r}")


def sweep(rank_max: int, rank_min: int = 1, ells: bool = True, dedup: bool = False,
          progress: Callable[[str], None] | None = None) -> SweepStats:
    """Every Vogan diagram of every semisimple type in the rank window."""
    stats = SweepStats()
    t = time.perf_counter()
    for types in semisimple_types(rank_max, rank_min):
        for vd in enumerate_vogan(cartan_of_types(types), dedup=dedup):
            sweep_diagram(vd, stats, ells)
        if progress:
            progress(f"{types} {stats.structures}")
    stats.seconds = time.perf_counter() - t
    return stats


def _from_sweep(stats: SweepStats, kinds: Iterable[str]) -> tuple[int, list[str]]:
    fails = [f"{k}: {m}" for k in kinds for m in stats.failures.get(k, [])]
    return stats.structures, fails


def run_checks(rank_max: int, sweep_rank: int | None = None) -> list[CheckResult]:
    """All checks up to rank_max; products of simple factors are swept up to
    sweep_rank (default min(rank_max, 6))."""
    if not 1 <= rank_max <= MAX_RANK:
        raise RankBoundError(f"rank bound must be between 1 and {MAX_RANK}")
    sweep_rank = min(rank_max, 6) if sweep_rank is None else sweep_rank
    out = []
    if rank_max >= 2:
        out.append(_timed("rank2_table", check_rank2_table))
    out.append(_timed("table1_methods", lambda: check_table1_methods(rank_max)))
    out.append(_timed("single_painted_vertex", lambda: check_single_painted(rank_max)))
    out.append(_timed("mixed_shapes", lambda: check_mixed_shapes(rank_max)))
    out.append(_timed("snow_example", check_snow_example))
    t = time.perf_counter()
    stats = sweep(sweep_rank)
    if rank_max > sweep_rank:
        for letter, n in connected_types_upto(rank_max):
            if n > sweep_rank:
                for vd in enumerate_vogan(cartan_matrix(letter, n), dedup=True):
                    sweep_diagram(vd, stats)
    secs = time.perf_counter() - t
    for name, kinds in (("balanced_methods", ("method_agreement", "delta0_constant", "certificates")),
                        ("exclusivity", ("exclusivity", "either_or")),
                        ("structure_postconditions", ("rset", "rr1"))):
        cases, fails = _from_sweep(stats, kinds)
        out.append(CheckResult(name, not fails, cases, secs, fails))
    return out


__all__ = ["CheckResult", "SweepStats", "run_checks", "sweep", "sweep_diagram", "snow_example",
           "RankBoundError", "MAX_RANK"]
