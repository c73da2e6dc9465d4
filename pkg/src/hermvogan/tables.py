"""Reference data for rank 2: every real semisimple algebra of complex rank 2
with its Vogan diagrams and the none/some/all verdicts.

The same rows supply the cosmetic names attached to rank <= 2 reports.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .classify import construct_compatible_ell, decide_balanced, decide_pluriclosed
from .regstruct import construct_default_ell, enumerate_delta0, make_structure
from .rootsys import isomorphisms
from .vogan import VoganDiagram


@dataclass(frozen=True)
class Rank2Row:
    name: str
    diagrams: tuple[str, ...]
    inner: bool
    pluriclosed: str      # none / some / all
    balanced: str
    dim: int


RANK2_ROWS: tuple[Rank2Row, ...] = (
    Rank2Row("sl(2,C)", ("A1~A1",), False, "none", "all", 6),
    Rank2Row("su(2)+su(2)", ("A1; A1",), True, "some", "none", 6),
    Rank2Row("su(2)+sl(2,R)", ("A1; A1 paint={1}",), True, "some", "none", 6),
    Rank2Row("sl(2,R)+sl(2,R)", ("A1 paint={1}; A1 paint={1}",), True, "some", "none", 6),
    Rank2Row("su(3)", ("A2",), True, "some", "none", 8),
    Rank2Row("su(2,1)", ("A2 paint={1,2}", "A2 paint={1}"), True, "some", "some", 8),
    Rank2Row("sl(3,R)", ("A2 inv=(1 2)",), False, "none", "all", 8),
    Rank2Row("so(5)", ("C2",), True, "some", "none", 10),
    Rank2Row("so(4,1)", ("C2 paint={1}",), True, "none", "all", 10),
    Rank2Row("so(3,2)", ("C2 paint={1,2}", "C2 paint={2}"), True, "some", "some", 10),
    Rank2Row("g2 (compact)", ("G2",), True, "some", "none", 14),
    Rank2Row("g2 (split)", ("G2 paint={1,2}", "G2 paint={1}", "G2 paint={2}"), True, "none", "all", 14),
)


def vogan_isomorphic(a: VoganDiagram, b: VoganDiagram) -> bool:
    """Same diagram up to relabelling vertices (Cartan, involution, paint)."""
    if a.rank != b.rank or len(a.painted) != len(b.painted):
        return False
    for phi in isomorphisms(a.cartan, b.cartan):
        # phi maps vertices of b into a
        if all(a.involution[phi[i]] == phi[b.involution[i]] for i in range(b.rank)) \
                and {phi[i] for i in b.painted} == set(a.painted):
            return True
    return False


def _diagram(text: str) -> VoganDiagram:
    from .dsl import elaborate, parse_diagram
    return elaborate(parse_diagram(text)).vd


def algebra_name(vd: VoganDiagram) -> str | None:
    """Name of the real form for rank <= 2 diagrams, else None."""
    if vd.rank > 2:
        return None
    if vd.rank == 1:
        return "sl(2,R)" if vd.painted else "su(2)"
    for row in RANK2_ROWS:
        if any(vogan_isomorphic(_diagram(t), vd) for t in row.diagrams):
            return row.name
    return None


def quantifier(values: Iterable[bool]) -> str:
    vals = list(values)
    if all(vals):
        return "all"
    return "some" if any(vals) else "none"


def ell_options(vd: VoganDiagram, d0) -> list:
    """The l-subspaces tried when quantifying over complex structures."""
    opts = [construct_default_ell(vd, d0), construct_default_ell(vd, d0, skew=True)]
    if not d0 and all(c.is_inner for c in vd.components):
        opts.append(construct_compatible_ell(vd))
    return opts


@dataclass(frozen=True)
class Rank2Result:
    name: str
    diagrams_ok: bool
    inner: bool
    pluriclosed: str
    balanced: str
    dim: int

    def matches(self, row: Rank2Row) -> bool:
        return (self.diagrams_ok, self.inner, self.pluriclosed, self.balanced, self.dim) == \
            (True, row.inner, row.pluriclosed, row.balanced, row.dim)


def real_dimension(vd: VoganDiagram) -> int:
    return vd.rank + len(vd.rs.all_roots)


def recompute_row(row: Rank2Row, universe: list[VoganDiagram]) -> Rank2Result:
    """Recompute one row from scratch: its diagrams are matched against the
    full rank-2 enumeration, verdicts quantify over diagrams, Delta0 and l."""
    mine = [_diagram(t) for t in row.diagrams]
    matched = [u for u in universe if any(vogan_isomorphic(u, m) for m in mine)]
    diagrams_ok = len(matched) == len(mine)
    plur, bal = [], []
    for vd in mine:
        for d0 in enumerate_delta0(vd):
            bal.append(decide_balanced(make_structure(vd, d0)).balanced)
            for ell in ell_options(vd, d0):
                plur.append(decide_pluriclosed(make_structure(vd, d0, ell)).yes)
    inner = all(vd.is_inner for vd in mine)
    dims = {real_dimension(vd) for vd in mine}
    return Rank2Result(row.name, diagrams_ok, inner, quantifier(plur), quantifier(bal),
                       dims.pop() if len(dims) == 1 else -1)
