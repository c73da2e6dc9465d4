"""A small text format for Vogan diagrams with regular-structure data.

    expr    := item (';' item)*
    item    := factor | 'inv=' cycles | 'ell=' matrix
    factor  := TYPE RANK ['~' TYPE RANK] ['inv=' cycles] ['paint={' idx* '}'] ['delta0={' idx* '}']
    cycles  := ('(' IDX IDX ')')+
    matrix  := '[' row (',' row)* ']'      row := '[' entry (',' entry)* ']'

Indices are 1-based and local to their factor.  ``A2~A2`` is a pair of A2's
exchanged by the involution (vertices 1..2 then 3..4).  A stand-alone
``inv=`` item uses whole-diagram numbering and can exchange factors that are
not next to each other, e.g. ``A1; A1; A1; inv=(1 3)``.  Entries of ``ell``
are Gaussian rationals (``1/2-3i``) or surds (``(1) + (1/3)*sqrt(3)``) in the
basis H_1..H_r of the whole diagram.

Example::

    >>> print(format_expr(parse_diagram("A4 inv=(2 3)(1 4) delta0={1}")))
    A4 inv=(1 4)(2 3) delta0={1}
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exact import Surd, format_surd, parse_surd
from .regstruct import EllSubspace, is_valid_delta0, validate_ell
from .rootsys import CartanMatrix, NotFiniteType, cartan_matrix, direct_sum
from .vogan import InvalidDiagram, VoganDiagram, make_vogan


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, expected: Sequence[str]):
        self.pos = len(text[:pos].encode("utf-8"))
        self.expected = tuple(sorted(set(expected)))
        near = text[pos:pos + 10] or "end of input"
        super().__init__(f"at byte {self.pos}: expected {' or '.join(self.expected)} near {near!r}")


class ValidationError(ValueError):
    pass


@dataclass(frozen=True)
class Factor:
    letter: str
    rank: int
    swapped: bool = False
    inv: tuple[tuple[int, int], ...] = ()
    paint: tuple[int, ...] = ()
    delta0: tuple[int, ...] | None = None

    @property
    def size(self) -> int:
        return 2 * self.rank if self.swapped else self.rank


@dataclass(frozen=True)
class DiagramExpr:
    factors: tuple[Factor, ...]
    ell: tuple[tuple[Surd, ...], ...] | None = None
    swaps: tuple[tuple[int, int], ...] = ()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, *expected: str):
        raise ParseError(self.text, self.pos, expected)

    def ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self, lit: str) -> bool:
        self.ws()
        return self.text.startswith(lit, self.pos)

    def eat(self, lit: str) -> bool:
        if self.peek(lit):
            self.pos += len(lit)
            return True
        return False

    def expect(self, lit: str):
        if not self.eat(lit):
            self.error(repr(lit))

    def number(self) -> int:
        self.ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("integer")
        return int(self.text[start:self.pos])

    def type_rank(self) -> tuple[str, int]:
        self.ws()
        if self.pos >= len(self.text) or self.text[self.pos] not in "ABCDEFG":
            self.error("type letter A-G")
        letter = self.text[self.pos]
        self.pos += 1
        return letter, self.number()

    def index_set(self) -> tuple[int, ...]:
        self.expect("{")
        out = []
        while not self.eat("}"):
            if out:
                self.eat(",")
            self.ws()
            if not self.text[self.pos:self.pos + 1].isdigit():
                self.error("integer", "'}'")
            out.append(self.number())
        return tuple(sorted(set(out)))

    def cycles(self) -> tuple[tuple[int, int], ...]:
        out = []
        self.expect("(")
        while True:
            a = self.number()
            self.eat(",")
            b = self.number()
            self.expect(")")
            out.append((min(a, b), max(a, b)))
            if not self.peek("("):
                break
            self.expect("(")
        return tuple(sorted(out))

    def factor(self) -> Factor:
        letter, rank = self.type_rank()
        swapped = False
        if self.eat("~"):
            start = self.pos
            other = self.type_rank()
            if other != (letter, rank):
                self.pos = start
                raise ParseError(self.text, start, [f"{letter}{rank}"])
            swapped = True
        inv, paint, delta0 = (), (), None
        if self.eat("inv="):
            inv = self.cycles()
        if self.eat("paint="):
            paint = self.index_set()
        if self.eat("delta0="):
            delta0 = self.index_set()
        return Factor(letter, rank, swapped, inv, paint, delta0)

    def matrix(self) -> tuple[tuple[Surd, ...], ...]:
        self.expect("[")
        rows = []
        while True:
            self.expect("[")
            row = []
            while True:
                self.ws()
                depth, start = 0, self.pos
                while self.pos < len(self.text):
                    ch = self.text[self.pos]
                    if ch == "(":
                        depth += 1
                    elif ch == ")":
                        depth -= 1
                    elif depth == 0 and ch in ",]":
                        break
                    self.pos += 1
                try:
                    row.append(parse_surd(self.text[start:self.pos]))
                except ValueError:
                    self.pos = start
                    self.error("matrix entry")
                if self.eat("]"):
                    break
                self.expect(",")
            rows.append(tuple(row))
            if self.eat("]"):
                break
            self.expect(",")
        return tuple(rows)

    def expr(self) -> DiagramExpr:
        factors, ell, swaps = [], None, None
        while True:
            if self.eat("ell="):
                if ell is not None:
                    self.error("factor")
                ell = self.matrix()
            elif self.eat("inv="):
                if swaps is not None:
                    self.error("factor", "'ell='")
                swaps = self.cycles()
            else:
                factors.append(self.factor())
            self.ws()
            if self.pos == len(self.text):
                break
            if not self.eat(";"):
                self.error("';'", "'inv='", "'paint='", "'delta0='", "end of input")
        if not factors:
            self.error("factor")
        return DiagramExpr(tuple(factors), ell, swaps or ())


def parse_diagram(text: str) -> DiagramExpr:
    return _Parser(text).expr()


def _idx(xs: Sequence[int]) -> str:
    return "{" + ",".join(str(x) for x in xs) + "}"


def format_factor(f: Factor) -> str:
    out = f"{f.letter}{f.rank}"
    if f.swapped:
        out += f"~{f.letter}{f.rank}"
    if f.inv:
        out += " inv=" + "".join(f"({a} {b})" for a, b in f.inv)
    if f.paint:
        out += " paint=" + _idx(f.paint)
    if f.delta0 is not None:
        out += " delta0=" + _idx(f.delta0)
    return out


def format_expr(e: DiagramExpr) -> str:
    items = [format_factor(f) for f in e.factors]
    if e.swaps:
        items.append("inv=" + "".join(f"({a} {b})" for a, b in e.swaps))
    if e.ell is not None:
        items.append("ell=[" + ",".join("[" + ",".join(format_surd(x) for x in row) + "]" for row in e.ell) + "]")
    return "; ".join(items)


@dataclass(frozen=True)
class Elaborated:
    vd: VoganDiagram
    delta0: frozenset[int]
    delta0_given: bool
    ell: EllSubspace | None


def elaborate(e: DiagramExpr) -> Elaborated:
    """Turn the syntax into a diagram, Delta0 and optional l (0-based inside)."""
    blocks: list[CartanMatrix] = []
    theta: list[int] = []
    painted: list[int] = []
    d0: list[int] = []
    given = False
    off = 0
    for f in e.factors:
        try:
            c = cartan_matrix(f.letter, f.rank)
        except NotFiniteType as exc:
            raise ValidationError(str(exc)) from None
        n = f.size
        local = list(range(n))
        if f.swapped:
            if f.inv:
                raise ValidationError(f"{format_factor(f)}: a swapped pair takes no inv=")
            blocks += [c, c]
            local = [(i + f.rank) % n for i in range(n)]
        else:
            blocks.append(c)
            for a, b in f.inv:
                for v in (a, b):
                    if not 1 <= v <= n:
                        raise ValidationError(f"{format_factor(f)}: vertex {v} out of range 1..{n}")
                if a == b or local[a - 1] != a - 1 or local[b - 1] != b - 1:
                    raise ValidationError(f"{format_factor(f)}: cycles must be disjoint transpositions")
                local[a - 1], local[b - 1] = b - 1, a - 1
        for label, xs in (("paint", f.paint), ("delta0", f.delta0 or ())):
            for v in xs:
                if not 1 <= v <= n:
                    raise ValidationError(f"{format_factor(f)}: {label} vertex {v} out of range 1..{n}")
        theta += [off + j for j in local]
        painted += [off + v - 1 for v in f.paint]
        if f.delta0 is not None:
            given = True
            d0 += [off + v - 1 for v in f.delta0]
        off += n
    for a, b in e.swaps:
        for v in (a, b):
            if not 1 <= v <= off:
                raise ValidationError(f"inv=: vertex {v} out of range 1..{off}")
        if a == b or theta[a - 1] != a - 1 or theta[b - 1] != b - 1:
            raise ValidationError("inv=: cycles must be disjoint transpositions of fixed vertices")
        theta[a - 1], theta[b - 1] = b - 1, a - 1
    try:
        vd = make_vogan(direct_sum(*blocks), theta, painted)
    except InvalidDiagram as exc:
        raise ValidationError(str(exc)) from None
    d0s = frozenset(d0)
    if not is_valid_delta0(vd, d0s):
        raise ValidationError(f"delta0 {sorted(v + 1 for v in d0s)} is not valid for this diagram")
    ell = None
    if e.ell is not None:
        if any(len(row) != vd.rank for row in e.ell):
            raise ValidationError(f"ell rows must have {vd.rank} entries")
        ell = EllSubspace(e.ell)
        if not validate_ell(vd, d0s, ell):
            raise ValidationError("ell fails the subspace conditions (dimension, l + sigma l, Delta0)")
    return Elaborated(vd, d0s, given, ell)


def diagram_text(vd: VoganDiagram, d0=None, ell: EllSubspace | None = None) -> str:
    """Canonical text of a diagram built from connected Cartan blocks.

    Dynkin components exchanged by the involution must be adjacent in vertex
    order and identically labelled, which holds for everything produced by
    ``elaborate`` and ``enumerate_vogan`` on direct sums.
    """
    from .rootsys import identify

    th = vd.involution
    factors = []
    swaps = []
    comps = list(vd.rs.dynkin_components)
    k = 0
    while k < len(comps):
        comp = comps[k]
        letter, rank, _ = identify(vd.cartan, comp)
        letter = _letter_for(vd.cartan.restrict(comp), letter, rank)
        image = tuple(sorted(th[v] for v in comp))
        loc = {v: i + 1 for i, v in enumerate(comp)}
        if image != comp:
            nxt = comps[k + 1] if k + 1 < len(comps) else None
            if image == nxt and all(th[v] == v + len(comp) for v in comp):
                dd = None if d0 is None else tuple(sorted(
                    v - comp[0] + 1 for v in d0 if comp[0] <= v <= nxt[-1]))
                factors.append(Factor(letter, rank, True, (), (), dd))
                k += 2
                continue
            # exchanged with a factor elsewhere: spell the swap out globally
            swaps += [(v + 1, th[v] + 1) for v in comp if v < th[v]]
        inv = tuple(sorted((loc[v], loc[th[v]]) for v in comp if v < th[v] and th[v] in loc))
        paint = tuple(sorted(loc[v] for v in vd.painted if v in loc))
        dd = None if d0 is None else tuple(sorted(loc[v] for v in d0 if v in loc))
        factors.append(Factor(letter, rank, False, inv, paint, dd))
        k += 1
    # keep Delta0 only where it is non-empty, marking an empty one once
    factors = [f if f.delta0 else Factor(f.letter, f.rank, f.swapped, f.inv, f.paint, None) for f in factors]
    if d0 is not None and not d0:
        f = factors[0]
        factors[0] = Factor(f.letter, f.rank, f.swapped, f.inv, f.paint, ())
    rows = None if ell is None else ell.rows
    return format_expr(DiagramExpr(tuple(factors), rows, tuple(sorted(swaps))))


def _letter_for(block: CartanMatrix, letter: str, rank: int) -> str:
    # canonical labels only: C2 is stored as its own matrix
    if block == cartan_matrix(letter, rank):
        return letter
    if rank == 2 and letter == "B" and block == cartan_matrix("C", 2):
        return "C"
    raise ValueError("block is not in canonical vertex order")
