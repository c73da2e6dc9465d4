"""Vogan diagrams: conjugation on roots, root classes, components, Table-1 tests."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Iterator, Sequence

from .rootsys import (
    CartanMatrix,
    Root,
    RootSystem,
    automorphisms,
    build_root_system,
    cartan_matrix,
    identify,
    support,
)


class NotConnected(ValueError):
    pass


class InvalidDiagram(ValueError):
    pass


class RootKind(Enum):
    COMPLEX = "complex"
    COMPACT = "compact"
    NONCOMPACT = "noncompact"


@dataclass(frozen=True)
class RootClass:
    kind: RootKind

    @property
    def imaginary(self) -> bool:
        return self.kind is not RootKind.COMPLEX

    @property
    def sign(self) -> int | None:
        return {RootKind.COMPACT: 1, RootKind.NONCOMPACT: -1}.get(self.kind)


COMPLEX = RootClass(RootKind.COMPLEX)
COMPACT = RootClass(RootKind.COMPACT)
NONCOMPACT = RootClass(RootKind.NONCOMPACT)


class ComponentType(Enum):
    COMPACT = "Compact"
    INNER = "Inner"
    COMPLEX = "ComplexType"
    MIXED = "Mixed"


@dataclass(frozen=True)
class VoganComponent:
    vertices: tuple[int, ...]
    dynkin: tuple[tuple[int, ...], ...]
    kind: ComponentType

    @property
    def is_inner(self) -> bool:
        return self.kind in (ComponentType.COMPACT, ComponentType.INNER)


@dataclass(frozen=True, eq=False)
class VoganDiagram:
    rs: RootSystem
    involution: tuple[int, ...]
    painted: frozenset[int]

    def __post_init__(self):
        n = self.rs.rank
        th = self.involution
        if sorted(th) != list(range(n)):
            raise InvalidDiagram("involution is not a permutation of the vertices")
        if any(th[th[i]] != i for i in range(n)):
            raise InvalidDiagram("involution does not square to the identity")
        a = self.rs.cartan.entries
        if any(a[th[i]][th[j]] != a[i][j] for i in range(n) for j in range(n)):
            raise InvalidDiagram("involution is not a Dynkin diagram automorphism")
        bad = [v + 1 for v in sorted(self.painted) if not 0 <= v < n or th[v] != v]
        if bad:
            raise InvalidDiagram(f"painted vertices {bad} are not fixed by the involution")

    @property
    def cartan(self) -> CartanMatrix:
        return self.rs.cartan

    @property
    def rank(self) -> int:
        return self.rs.rank

    def key(self):
        return (self.rs.cartan, self.involution, tuple(sorted(self.painted)))

    def __eq__(self, other):
        return isinstance(other, VoganDiagram) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        cyc = [(i + 1, j + 1) for i, j in enumerate(self.involution) if i < j]
        return (f"VoganDiagram(rank={self.rank}, swaps={cyc}, "
                f"painted={sorted(v + 1 for v in self.painted)})")

    @cached_property
    def twisted(self) -> tuple[int, ...]:
        """Swapped vertices i < theta(i) that are joined to their image."""
        th = self.involution
        return tuple(i for i in range(self.rank) if i < th[i] and self.cartan.adjacent(i, th[i]))

    @cached_property
    def root_classes(self) -> dict[Root, RootClass]:
        return {b: _classify(self, b) for b in self.rs.all_roots}

    @cached_property
    def components(self) -> tuple[VoganComponent, ...]:
        return tuple(_components(self))

    @property
    def fixed_vertices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.rank) if self.involution[i] == i)

    @property
    def is_inner(self) -> bool:
        return all(self.involution[i] == i for i in range(self.rank))


def make_vogan(cartan: CartanMatrix | RootSystem, involution: Sequence[int] | None = None,
               painted: Sequence[int] = ()) -> VoganDiagram:
    """Build a diagram from 0-based data; ``involution=None`` means the identity."""
    rs = cartan if isinstance(cartan, RootSystem) else build_root_system(cartan)
    th = tuple(range(rs.rank)) if involution is None else tuple(involution)
    return VoganDiagram(rs, th, frozenset(painted))


def sigma_root(vd: VoganDiagram, a: Sequence[int]) -> Root:
    """sigma(alpha_i) = -alpha_theta(i), extended linearly."""
    th = vd.involution
    return tuple(-a[th[k]] for k in range(len(a)))


def _classify(vd: VoganDiagram, a: Root) -> RootClass:
    th = vd.involution
    if any(a[k] != a[th[k]] for k in range(len(a))):
        return COMPLEX
    # Painted parity, corrected on each swapped pair that is joined by an edge
    # (the middle edge of an even A_n reversal): such a pair contributes a
    # factor -1 per unit of alpha_i.
    parity = sum(a[i] for i in vd.painted) + sum(a[i] for i in vd.twisted)
    return NONCOMPACT if parity % 2 else COMPACT


def classify_root(vd: VoganDiagram, a: Sequence[int]) -> RootClass:
    a = tuple(a)
    cls = vd.root_classes.get(a)
    if cls is None:
        raise ValueError(f"{a} is not a root")
    return cls


def imaginary_positive(vd: VoganDiagram, comp: Sequence[int] | None = None) -> list[tuple[Root, int]]:
    """[(alpha, s_alpha)] over imaginary positive roots (optionally inside comp)."""
    allowed = None if comp is None else set(comp)
    out = []
    for b in vd.rs.positive_roots:
        c = vd.root_classes[b]
        if c.imaginary and (allowed is None or support(b) <= allowed):
            out.append((b, c.sign))
    return out


def _components(vd: VoganDiagram) -> Iterator[VoganComponent]:
    th = vd.involution
    dyn = vd.rs.dynkin_components
    done: set[tuple[int, ...]] = set()
    for c in dyn:
        if c in done:
            continue
        image = tuple(sorted(th[v] for v in c))
        done.update({c, image})
        if image != c:
            verts = tuple(sorted(c + image))
            yield VoganComponent(verts, (c, image), ComponentType.COMPLEX)
        elif all(th[v] == v for v in c):
            kind = ComponentType.INNER if vd.painted & set(c) else ComponentType.COMPACT
            yield VoganComponent(c, (c,), kind)
        else:
            yield VoganComponent(c, (c,), ComponentType.MIXED)


def vogan_components(vd: VoganDiagram) -> list[VoganComponent]:
    return list(vd.components)


def component_of(vd: VoganDiagram, vertices: Sequence[int]) -> VoganComponent:
    want = set(vertices)
    for comp in vd.components:
        if want <= set(comp.vertices):
            return comp
    raise NotConnected("vertex set spans several Vogan components")


# Table 1 -----------------------------------------------------------------------

class Table1Method(Enum):
    HIGHEST_ROOT = "HighestRoot"
    PATTERN = "Pattern"
    NO_SUM_RULE = "NoSumRule"


def _check_component(vd: VoganDiagram, comp: VoganComponent) -> None:
    if comp not in vd.components:
        raise NotConnected("not a connected Vogan component of this diagram")


def _painted_in(vd: VoganDiagram, comp: VoganComponent) -> list[int]:
    return sorted(vd.painted & set(comp.vertices))


def _by_highest_root(vd: VoganDiagram, comp: VoganComponent) -> bool:
    if not comp.is_inner:
        return False
    p = _painted_in(vd, comp)
    if not p:
        return True
    if len(p) > 1:
        return False
    return vd.rs.highest_root(comp.vertices)[p[0]] == 1


def _table1_rows(letter: str, n: int) -> set[int] | None:
    """Canonical (0-based) single painted vertices of the Table-1 rows; None if no row."""
    if letter == "A":
        return set(range(n))
    if letter == "B":
        return {0}
    if letter == "C" and n >= 3:
        return {n - 1}
    if letter == "D" and n >= 4:
        return {0, n - 2}
    if letter == "E" and n == 6:
        return {5}
    if letter == "E" and n == 7:
        return {6}
    return None


def _by_pattern(vd: VoganDiagram, comp: VoganComponent) -> bool:
    if not comp.is_inner:
        return False
    p = _painted_in(vd, comp)
    if not p:
        return True
    if len(p) > 1:
        return False
    letter, n, phi = identify(vd.cartan, comp.vertices)
    rows = _table1_rows(letter, n)
    if rows is None:
        return False
    canon = cartan_matrix(letter, n)
    orbit = {psi[k] for psi in automorphisms(canon) for k in rows}
    return phi.index(p[0]) in orbit


def _by_no_sum(vd: VoganDiagram, comp: VoganComponent) -> bool:
    if not comp.is_inner:
        return False
    nc = [b for b, s in imaginary_positive(vd, comp.vertices) if s == -1]
    for i, a in enumerate(nc):
        for b in nc[i:]:
            if vd.rs.is_root(tuple(x + y for x, y in zip(a, b))):
                return False
    return True


def table1_membership(vd: VoganDiagram, comp: VoganComponent,
                      method: Table1Method = Table1Method.HIGHEST_ROOT) -> bool:
    _check_component(vd, comp)
    return {
        Table1Method.HIGHEST_ROOT: _by_highest_root,
        Table1Method.PATTERN: _by_pattern,
        Table1Method.NO_SUM_RULE: _by_no_sum,
    }[Table1Method(method)](vd, comp)


def painted_vertex_conditions(vd: VoganDiagram, comp: VoganComponent) -> tuple[bool, bool, bool, bool]:
    """For an inner component with one painted vertex k, the four conditions
    (listed in Table 1, c_k(top) = 1, c_k <= 1 on all positive roots,
    alpha_k + alpha never a root for noncompact positive alpha)."""
    _check_component(vd, comp)
    p = _painted_in(vd, comp)
    if not comp.is_inner or len(p) != 1:
        raise ValueError("needs an inner component with exactly one painted vertex")
    k = p[0]
    rs = vd.rs
    listed = _by_pattern(vd, comp)
    top = rs.highest_root(comp.vertices)[k] == 1
    pos = rs.positive_roots_on(comp.vertices)
    bounded = all(b[k] <= 1 for b in pos)
    nc = [b for b in pos if vd.root_classes[b] is NONCOMPACT]
    no_step = not any(rs.is_root(tuple(x + int(i == k) for i, x in enumerate(b))) for b in nc)
    return listed, top, bounded, no_step


# Table 3 shapes ------------------------------------------------------------------

def _conj(perm: Sequence[int], by: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(perm)
    for i, j in enumerate(perm):
        out[by[i]] = by[j]
    return tuple(out)


def mixed_family(vd: VoganDiagram, comp: VoganComponent) -> str | None:
    """Name of the non-inner, non-complex connected family matched by comp."""
    _check_component(vd, comp)
    if comp.kind is not ComponentType.MIXED:
        return None
    letter, n, phi = identify(vd.cartan, comp.vertices)
    where = {v: k for k, v in enumerate(phi)}
    theta = tuple(where[vd.involution[phi[k]]] for k in range(n))
    canon = cartan_matrix(letter, n)
    auts = automorphisms(canon)

    def conjugate_to(model: tuple[int, ...]) -> bool:
        return any(_conj(model, psi) == theta for psi in auts)

    if letter == "A" and n >= 2 and conjugate_to(tuple(reversed(range(n)))):
        if n % 2 == 0:
            return "sl(n+1,R), n even"
        mid = phi[n // 2]
        return "sl(n+1,R), n odd" if mid in vd.painted else "sl((n+1)/2,H), n odd"
    if letter == "D":
        model = tuple(range(n - 2)) + (n - 1, n - 2)
        if conjugate_to(model):
            return "so(p,q), p and q odd"
    if letter == "E" and n == 6 and conjugate_to((5, 1, 4, 3, 2, 0)):
        return "EI or EIV"
    return None


# enumeration -------------------------------------------------------------------

def diagram_involutions(cartan: CartanMatrix) -> list[tuple[int, ...]]:
    return [p for p in automorphisms(cartan) if all(p[p[i]] == i for i in range(len(p)))]


def canonical_key(vd: VoganDiagram, auts: Sequence[tuple[int, ...]] | None = None):
    """Smallest image of (theta, P) under the Dynkin automorphisms."""
    if auts is None:
        auts = automorphisms(vd.cartan)
    return min((_conj(vd.involution, phi), tuple(sorted(phi[v] for v in vd.painted)))
               for phi in auts)


def enumerate_vogan(cartan: CartanMatrix, dedup: bool = False) -> Iterator[VoganDiagram]:
    """Every (theta, P); order: involutions sorted, then P by size and lexicographically."""
    rs = build_root_system(cartan)
    auts = automorphisms(cartan) if dedup else None
    seen = set()
    for th in diagram_involutions(cartan):
        fixed = [i for i in range(rs.rank) if th[i] == i]
        for size in range(len(fixed) + 1):
            for paint in combinations(fixed, size):
                vd = VoganDiagram(rs, th, frozenset(paint))
                if dedup:
                    k = canonical_key(vd, auts)
                    if k in seen:
                        continue
                    seen.add(k)
                yield vd
