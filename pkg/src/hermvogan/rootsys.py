"""Finite root systems from Cartan matrices, over the integers.

Convention: ``a[i][j] = <alpha_i^vee, alpha_j>``, so the simple reflection is
``s_i(beta) = beta - (sum_j a[i][j] c_j) alpha_i``.  Vertex numbering follows
Bourbaki: B_n has alpha_n short, C_n has alpha_n long, D_n forks at n-2,
E_n is the chain 1-3-4-5-6-7-8 with 2 attached to 4, F4 has the double bond
between 2 and 3, and G2 has alpha_1 short.  Roots are integer tuples.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction as Q
from functools import cached_property, lru_cache
from math import gcd
from typing import Iterator, Sequence

Root = tuple[int, ...]


class NotFiniteType(ValueError):
    pass


@dataclass(frozen=True)
class CartanMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        a = self.entries
        n = len(a)
        for i in range(n):
            if len(a[i]) != n:
                raise ValueError("Cartan matrix must be square")
            if a[i][i] != 2:
                raise ValueError(f"diagonal entry a[{i + 1}][{i + 1}] must be 2")
            for j in range(n):
                if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                    raise ValueError(f"bad off-diagonal pair at ({i + 1},{j + 1})")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "CartanMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries[ij[0]][ij[1]]

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and self.entries[i][j] != 0

    def neighbours(self, i: int) -> list[int]:
        return [j for j in range(self.n) if self.adjacent(i, j)]

    def components(self) -> list[tuple[int, ...]]:
        """Connected components of the Dynkin graph, sorted by least vertex."""
        seen: set[int] = set()
        out = []
        for s in range(self.n):
            if s in seen:
                continue
            comp, todo = [], [s]
            seen.add(s)
            while todo:
                v = todo.pop()
                comp.append(v)
                for w in self.neighbours(v):
                    if w not in seen:
                        seen.add(w)
                        todo.append(w)
            out.append(tuple(sorted(comp)))
        return out

    def restrict(self, vertices: Sequence[int]) -> "CartanMatrix":
        return CartanMatrix(tuple(tuple(self.entries[i][j] for j in vertices) for i in vertices))


def _chain(n: int) -> dict[tuple[int, int], tuple[int, int]]:
    return {(i, i + 1): (-1, -1) for i in range(1, n)}


def cartan_matrix(letter: str, rank: int) -> CartanMatrix:
    """Canonical Cartan matrix of a connected finite type (1-based Bourbaki labels)."""
    letter = letter.upper()
    n = rank
    bonds: dict[tuple[int, int], tuple[int, int]]  # (i, j) -> (a_ij, a_ji)
    if letter == "A" and n >= 1:
        bonds = _chain(n)
    elif letter == "B" and n >= 2:
        bonds = _chain(n)
        bonds[(n - 1, n)] = (-1, -2)
    elif letter == "C" and n >= 2:
        bonds = _chain(n)
        bonds[(n - 1, n)] = (-2, -1)
    elif letter == "D" and n >= 4:
        bonds = _chain(n - 1)
        bonds[(n - 2, n)] = (-1, -1)
    elif letter == "E" and n in (6, 7, 8):
        bonds = {(1, 3): (-1, -1), (2, 4): (-1, -1)}
        for i in range(3, n):
            bonds[(i, i + 1)] = (-1, -1)
    elif letter == "F" and n == 4:
        bonds = {(1, 2): (-1, -1), (2, 3): (-1, -2), (3, 4): (-1, -1)}
    elif letter == "G" and n == 2:
        bonds = {(1, 2): (-3, -1)}
    else:
        raise NotFiniteType(f"no finite type {letter}{rank}")
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for (i, j), (aij, aji) in bonds.items():
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji
    return CartanMatrix.of(a)


def direct_sum(*parts: CartanMatrix) -> CartanMatrix:
    n = sum(p.n for p in parts)
    a = [[0] * n for _ in range(n)]
    off = 0
    for p in parts:
        for i in range(p.n):
            for j in range(p.n):
                a[off + i][off + j] = p.entries[i][j]
        off += p.n
    return CartanMatrix.of(a)


def classical_positive_count(letter: str, rank: int) -> int:
    r = rank
    return {
        "A": r * (r + 1) // 2,
        "B": r * r,
        "C": r * r,
        "D": r * (r - 1),
        "E": {6: 36, 7: 63, 8: 120}.get(r, -1),
        "F": 24,
        "G": 6,
    }[letter.upper()]


# graph isomorphism -----------------------------------------------------------

def _bfs_order(a: CartanMatrix) -> list[int]:
    order: list[int] = []
    for comp in a.components():
        seen = {comp[0]}
        q = deque([comp[0]])
        while q:
            v = q.popleft()
            order.append(v)
            for w in a.neighbours(v):
                if w not in seen:
                    seen.add(w)
                    q.append(w)
    return order


def isomorphisms(a: CartanMatrix, b: CartanMatrix) -> Iterator[tuple[int, ...]]:
    """Yield every phi with a[phi i][phi j] == b[i][j] (phi: vertices of b -> a)."""
    n = b.n
    if a.n != n:
        return
    order = _bfs_order(b)
    deg_a = [len(a.neighbours(v)) for v in range(n)]
    deg_b = [len(b.neighbours(v)) for v in range(n)]
    phi = [-1] * n
    used = [False] * n

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(phi)
            return
        i = order[k]
        for v in range(n):
            if used[v] or deg_a[v] != deg_b[i]:
                continue
            if any(a.entries[v][phi[j]] != b.entries[i][j] or a.entries[phi[j]][v] != b.entries[j][i]
                   for j in order[:k]):
                continue
            phi[i], used[v] = v, True
            yield from extend(k + 1)
            phi[i], used[v] = -1, False

    yield from extend(0)


def automorphisms(a: CartanMatrix) -> list[tuple[int, ...]]:
    return sorted(isomorphisms(a, a))


_CANDIDATES = [("A", 1, 99), ("B", 2, 99), ("C", 3, 99), ("D", 4, 99),
               ("E", 6, 8), ("F", 4, 4), ("G", 2, 2)]


def identify(a: CartanMatrix, comp: Sequence[int]) -> tuple[str, int, tuple[int, ...]]:
    """Finite type of one connected block.

    Returns (letter, rank, phi) where phi[k] is the actual vertex playing the
    role of canonical vertex k (0-based).  Rank-2 B and C coincide and are
    reported as B2.
    """
    sub = a.restrict(comp)
    n = sub.n
    for letter, lo, hi in _CANDIDATES:
        if not lo <= n <= hi:
            continue
        canon = cartan_matrix(letter, n)
        phi = next(isomorphisms(sub, canon), None)
        if phi is not None:
            return letter, n, tuple(comp[k] for k in phi)
    raise NotFiniteType(f"block on vertices {[v + 1 for v in comp]} is not of finite type")


def type_label(a: CartanMatrix) -> str:
    """E.g. ``A2+G2`` (components in vertex order)."""
    return "+".join(f"{l}{r}" for l, r, _ in (identify(a, c) for c in a.components()))


# root systems ----------------------------------------------------------------

def height(a: Root) -> int:
    return sum(a)


def support(a: Root) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(a) if c)


def _sort_key(a: Root):
    return (sum(a), a)


def _add(a: Root, b: Root) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _neg(a: Root) -> Root:
    return tuple(-x for x in a)


def symmetrizer(a: CartanMatrix) -> tuple[int, ...]:
    """Minimal positive integers d with d_i a_ij = d_j a_ji."""
    d: list[Q | None] = [None] * a.n
    for comp in a.components():
        d[comp[0]] = Q(1)
        todo = [comp[0]]
        while todo:
            i = todo.pop()
            for j in a.neighbours(i):
                want = d[i] * a.entries[i][j] / a.entries[j][i]
                if d[j] is None:
                    d[j] = want
                    todo.append(j)
                elif d[j] != want:
                    raise NotFiniteType("Cartan matrix is not symmetrizable")
        den = 1
        for v in comp:
            den = den * d[v].denominator // gcd(den, d[v].denominator)
        ints = [int(d[v] * den) for v in comp]
        g = 0
        for x in ints:
            g = gcd(g, x)
        for v, x in zip(comp, ints):
            d[v] = Q(x // g)
    return tuple(int(x) for x in d)


def reflect(a: CartanMatrix, i: int, beta: Root) -> Root:
    pairing = sum(a.entries[i][j] * beta[j] for j in range(a.n))
    if pairing == 0:
        return beta
    out = list(beta)
    out[i] -= pairing
    return tuple(out)


def roots_by_reflection(a: CartanMatrix, limit: int = 4096) -> set[Root]:
    """Breadth-first closure of the simple roots under the simple reflections."""
    n = a.n
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                g = reflect(a, i, beta)
                if g not in seen:
                    seen.add(g)
                    nxt.append(g)
        if len(seen) > limit:
            raise NotFiniteType("root closure does not terminate")
        frontier = nxt
    return seen


def roots_by_strings(a: CartanMatrix, limit: int = 4096) -> set[Root]:
    """Positive roots grown height by height from alpha_i-strings, plus negatives.

    For a positive root beta the alpha_i-string through it runs from
    beta - p alpha_i to beta + q alpha_i with p - q = <beta, alpha_i^vee>;
    p is read off the roots already found at lower height.
    """
    n = a.n
    layer = {tuple(int(i == j) for j in range(n)) for i in range(n)}
    pos = set(layer)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(n):
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) not in pos:
                        break
                    p += 1
                q = p - sum(a.entries[i][j] * beta[j] for j in range(n))
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    nxt.add(tuple(up))
        pos |= nxt
        if len(pos) > limit:
            raise NotFiniteType("root strings do not terminate")
        layer = nxt
    return pos | {_neg(b) for b in pos}


@dataclass(frozen=True, eq=False)
class RootSystem:
    cartan: CartanMatrix
    all_roots: tuple[Root, ...]
    positive_roots: tuple[Root, ...]
    symmetrizer: tuple[int, ...]
    dynkin_components: tuple[tuple[int, ...], ...]
    _root_set: frozenset = field(repr=False, compare=False, default=frozenset())

    def __eq__(self, other):
        return isinstance(other, RootSystem) and other.cartan == self.cartan

    def __hash__(self):
        return hash(self.cartan)

    @property
    def rank(self) -> int:
        return self.cartan.n

    @cached_property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        """Symmetrized Cartan matrix (d_i a_ij); diagonal 2 d_i."""
        a, d = self.cartan.entries, self.symmetrizer
        return tuple(tuple(d[i] * a[i][j] for j in range(self.rank)) for i in range(self.rank))

    def is_root(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._root_set

    def inner_product(self, a: Sequence[int], b: Sequence[int]) -> Q:
        g = self.gram
        n = self.rank
        return Q(sum(a[i] * g[i][j] * b[j] for i in range(n) for j in range(n)))

    def component_of(self, vertex: int) -> tuple[int, ...]:
        return next(c for c in self.dynkin_components if vertex in c)

    def positive_roots_on(self, component: Sequence[int]) -> list[Root]:
        comp = set(component)
        return [b for b in self.positive_roots if support(b) <= comp]

    def highest_root(self, component: Sequence[int]) -> Root:
        comp = tuple(sorted(component))
        if comp not in self.dynkin_components:
            raise ValueError("highest_root needs one connected Dynkin component")
        return _highest(self, comp)

    def simple_root(self, i: int) -> Root:
        return tuple(int(i == j) for j in range(self.rank))


@lru_cache(maxsize=None)
def _highest(rs: RootSystem, comp: tuple[int, ...]) -> Root:
    cands = rs.positive_roots_on(comp)
    top = max(cands, key=_sort_key)
    assert all(all(x <= y for x, y in zip(b, top)) for b in cands)
    return top


@lru_cache(maxsize=None)
def build_root_system(cartan: CartanMatrix) -> RootSystem:
    for comp in cartan.components():
        identify(cartan, comp)
    d = symmetrizer(cartan)
    roots = sorted(roots_by_reflection(cartan), key=_sort_key)
    pos = tuple(b for b in roots if sum(b) > 0)
    return RootSystem(
        cartan=cartan,
        all_roots=tuple(roots),
        positive_roots=pos,
        symmetrizer=d,
        dynkin_components=tuple(cartan.components()),
        _root_set=frozenset(roots),
    )


def root_system(letter: str, rank: int) -> RootSystem:
    return build_root_system(cartan_matrix(letter, rank))



def connected_types(rank: int) -> list[tuple[str, int]]:
    """Connected finite types of the given rank, each listed once (C2 = B2)."""
    out = [("A", rank)]
    if rank >= 2:
        out.append(("B", rank))
    if rank >= 3:
        out.append(("C", rank))
    if rank >= 4:
        out.append(("D", rank))
    if rank in (6, 7, 8):
        out.append(("E", rank))
    if rank == 4:
        out.append(("F", 4))
    if rank == 2:
        out.append(("G", 2))
    return out


def connected_types_upto(rank_max: int) -> list[tuple[str, int]]:
    return [t for k in range(1, rank_max + 1) for t in connected_types(k)]


def semisimple_types(rank_max: int, rank_min: int = 1) -> list[tuple[tuple[str, int], ...]]:
    """Multisets of connected types with total rank in [rank_min, rank_max]."""
    pool = connected_types_upto(rank_max)
    out = []

    def grow(start: int, acc: list, total: int):
        if acc and total >= rank_min:
            out.append(tuple(acc))
        for k in range(start, len(pool)):
            t = pool[k]
            if total + t[1] <= rank_max:
                grow(k, acc + [t], total + t[1])

    grow(0, [], 0)
    return sorted(out, key=lambda ts: (sum(r for _, r in ts), len(ts), ts))


def cartan_of_types(types) -> CartanMatrix:
    return direct_sum(*(cartan_matrix(l, r) for l, r in types))
