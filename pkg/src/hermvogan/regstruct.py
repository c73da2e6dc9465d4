"""Discrete and linear data of regular complex structures.

Vectors of the complexified Cartan are written in the basis H_1..H_r (one per
simple root).  Conjugation is antilinear, sigma(H_i) = -H_theta(i).  The real
form h has the canonical basis

    i H_i                               for theta-fixed i
    H_i - H_j,  i (H_i + H_j)           for each swapped pair i < j = theta(i)

and in that basis sigma is plain complex conjugation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .exact import (
    GaussianRational,
    I,
    Surd,
    inverse,
    matmul,
    nullspace,
    rank,
    to_surd,
)
from .rootsys import Root, support
from .vogan import VoganDiagram, sigma_root


class InvalidDelta0(ValueError):
    pass


class OddRank(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class InvalidEll(ValueError):
    pass


class InvariantViolation(AssertionError):
    pass


Delta0 = frozenset


def _neg(a: Root) -> Root:
    return tuple(-x for x in a)


def _key(a: Root):
    return (sum(a), a)


# Delta_0 -----------------------------------------------------------------------

def is_valid_delta0(vd: VoganDiagram, d0) -> bool:
    th = vd.involution
    d0 = set(d0)
    if any(not 0 <= v < vd.rank or th[v] == v for v in d0):
        return False
    image = {th[v] for v in d0}
    if d0 & image:
        return False
    return not any(vd.cartan.adjacent(a, b) for a in d0 for b in image)


def enumerate_delta0(vd: VoganDiagram) -> list[frozenset[int]]:
    cx = [i for i in range(vd.rank) if vd.involution[i] != i]
    out = []
    for k in range(len(cx) + 1):
        for s in combinations(cx, k):
            if is_valid_delta0(vd, s):
                out.append(frozenset(s))
    return out


# the root set R ------------------------------------------------------------------

@dataclass(frozen=True)
class RSet:
    R0: tuple[Root, ...]
    R0plus: tuple[Root, ...]
    R: tuple[Root, ...]
    R2: tuple[Root, ...]
    R3: tuple[Root, ...]


def check_rset(vd: VoganDiagram, d0, rset: RSet) -> list[str]:
    """Names of violated structural conditions (empty when all hold)."""
    rs = vd.rs
    R = set(rset.R)
    bad = []
    for a in rset.R:
        for b in rset.R:
            s = tuple(x + y for x, y in zip(a, b))
            if rs.is_root(s) and s not in R:
                bad.append("A1: R is not closed")
                break
        else:
            continue
        break
    sR = {sigma_root(vd, a) for a in R}
    if R & sR or R | sR != set(rs.all_roots):
        bad.append("A2: R and sigma R do not partition the roots")
    if {a for a in R if _neg(a) in R} != set(rset.R0):
        bad.append("A3: R and -R do not meet exactly in R0")
    image = {_neg(sigma_root(vd, a)) for a in rset.R3}
    if image & set(rset.R3) or image | set(rset.R3) != set(rset.R2):
        bad.append("R3 and -sigma R3 do not partition R2")
    return bad


def build_R(vd: VoganDiagram, d0) -> RSet:
    if not is_valid_delta0(vd, d0):
        raise InvalidDelta0(f"invalid Delta0 {sorted(v + 1 for v in d0)}")
    return _build_R(vd, frozenset(d0))


@lru_cache(maxsize=4096)
def _build_R(vd: VoganDiagram, d0: frozenset[int]) -> RSet:
    rs = vd.rs
    R0 = [a for a in rs.all_roots if support(a) <= d0]
    R0plus = [a for a in R0 if sum(a) > 0]
    msR0 = {_neg(sigma_root(vd, a)) for a in R0plus}
    R = sorted({_neg(a) for a in R0plus} | {a for a in rs.positive_roots if a not in msR0}, key=_key)
    R0plus_set = set(R0plus)
    R2 = [a for a in rs.positive_roots
          if not vd.root_classes[a].imaginary and a not in R0plus_set and a not in msR0]
    R3 = []
    for a in R2:
        partner = _neg(sigma_root(vd, a))
        if a <= partner:  # lexicographically smallest of the orbit
            R3.append(a)
    out = RSet(tuple(R0), tuple(R0plus), tuple(R), tuple(R2), tuple(R3))
    bad = check_rset(vd, d0, out)
    if bad:
        raise InvariantViolation("; ".join(bad))
    return out


def moduli_dim(vd: VoganDiagram, d0) -> int:
    r = vd.rank
    if r % 2:
        raise OddRank("moduli dimension needs even rank")
    return r * (r // 2 - len(d0))


# l-subspaces ---------------------------------------------------------------------

@dataclass(frozen=True)
class EllSubspace:
    rows: tuple[tuple[Surd, ...], ...]

    @classmethod
    def of(cls, rows: Sequence[Sequence]) -> "EllSubspace":
        return cls(tuple(tuple(to_surd(x) for x in row) for row in rows))

    @property
    def m(self) -> int:
        return len(self.rows)


def sigma_vec(vd: VoganDiagram, v: Sequence) -> list:
    th = vd.involution
    return [-to_surd(v[th[k]]).conj() for k in range(len(v))]


def real_basis(vd: VoganDiagram) -> list[list[GaussianRational]]:
    """Canonical real basis of h, as H-coordinate vectors."""
    r = vd.rank
    th = vd.involution
    out = []
    for i in range(r):
        j = th[i]
        if j == i:
            v = [GaussianRational()] * r
            v[i] = I
            out.append(v)
        elif i < j:
            v = [GaussianRational()] * r
            v[i], v[j] = GaussianRational(1), GaussianRational(-1)
            w = [GaussianRational()] * r
            w[i], w[j] = I, I
            out += [v, w]
    return out


@lru_cache(maxsize=1024)
def _basis_pair(vd: VoganDiagram):
    B = [[to_surd(x) for x in col] for col in zip(*real_basis(vd))]  # columns = basis
    return B, inverse(B)


def to_real_coords(vd: VoganDiagram, v: Sequence) -> list[Surd]:
    _, Binv = _basis_pair(vd)
    return [sum((Binv[i][k] * to_surd(v[k]) for k in range(len(v))), Surd()) for i in range(len(v))]


def from_real_coords(vd: VoganDiagram, z: Sequence) -> list[Surd]:
    B, _ = _basis_pair(vd)
    return [sum((B[i][k] * to_surd(z[k]) for k in range(len(z))), Surd()) for i in range(len(z))]


def _simple_H(r: int, i: int) -> list[Surd]:
    return [Surd.coerce(int(k == i)) for k in range(r)]


def _in_span(rows: Sequence[Sequence], v: Sequence) -> bool:
    return rank(list(rows) + [list(v)]) == rank(rows) if rows else all(x == 0 for x in v)


@lru_cache(maxsize=8192)
def unpainted(vd: VoganDiagram) -> VoganDiagram:
    """Same Cartan and involution with no paint; everything on the Cartan side
    (sigma, l, J) is blind to painting, so caches key on this."""
    return vd if not vd.painted else VoganDiagram(vd.rs, vd.involution, frozenset())


def validate_ell(vd: VoganDiagram, d0, ell: EllSubspace) -> bool:
    r = vd.rank
    if any(len(row) != r for row in ell.rows):
        raise DimensionMismatch(f"l rows must have length {r}")
    return _validate_ell(unpainted(vd), frozenset(d0), ell)


@lru_cache(maxsize=8192)
def _validate_ell(vd: VoganDiagram, d0: frozenset, ell: EllSubspace) -> bool:
    r = vd.rank
    if r % 2 or ell.m != r // 2:
        return False
    rows = [list(row) for row in ell.rows]
    if rank(rows) != ell.m:
        return False
    if rank(rows + [sigma_vec(vd, row) for row in rows]) != r:
        return False
    return all(_in_span(rows, _simple_H(r, a)) for a in d0)


def construct_default_ell(vd: VoganDiagram, d0, skew: bool = False) -> EllSubspace:
    """U + W with U spanned by H_alpha (alpha in Delta0) and W built from a real
    basis f of the real orthogonal complement of U + sigma U, paired as
    f_{2j-1} + i f_{2j} (or f_{2j-1} + (1+i) f_{2j} when ``skew``)."""
    if vd.rank % 2:
        raise OddRank("l-subspaces need even rank")
    if not is_valid_delta0(vd, d0):
        raise InvalidDelta0("invalid Delta0")
    return _default_ell(unpainted(vd), frozenset(d0), skew)


@lru_cache(maxsize=8192)
def _default_ell(vd: VoganDiagram, d0: frozenset, skew: bool) -> EllSubspace:
    r = vd.rank
    U = [_simple_H(r, a) for a in sorted(d0)]
    spanning = []
    for u in U:
        z = to_real_coords(vd, u)
        spanning.append([x.real().rational_part().re for x in z])
        spanning.append([x.imag().rational_part().re for x in z])
    f = nullspace(spanning, r) if spanning else [[Q(int(i == j)) for j in range(r)] for i in range(r)]
    coef = GaussianRational(1, 1) if skew else I
    W = []
    for j in range(0, len(f), 2):
        z = [to_surd(a) + coef * to_surd(b) for a, b in zip(f[j], f[j + 1])]
        W.append(from_real_coords(vd, z))
    return EllSubspace.of(U + W)


def j_on_cartan(vd: VoganDiagram, ell: EllSubspace) -> tuple[tuple[Surd, ...], ...]:
    """Matrix of J on h in the canonical real basis (columns are images)."""
    return _j_on_cartan(unpainted(vd), ell)


@lru_cache(maxsize=8192)
def _j_on_cartan(vd: VoganDiagram, ell: EllSubspace) -> tuple[tuple[Surd, ...], ...]:
    r = vd.rank
    if r % 2 or ell.m != r // 2 or any(len(row) != r for row in ell.rows):
        raise InvalidEll("l has the wrong shape")
    rows = [list(row) for row in ell.rows]
    cols = rows + [sigma_vec(vd, row) for row in rows]  # eigenvectors for +i, -i
    P = [list(c) for c in zip(*cols)]
    try:
        Pinv = inverse(P)
    except ZeroDivisionError:
        raise InvalidEll("l + sigma l is not the whole Cartan") from None
    D = [[(I if i < ell.m else -I) if i == j else Surd() for j in range(r)] for i in range(r)]
    JH = matmul(matmul(P, D), Pinv)
    B, Binv = _basis_pair(vd)
    J = matmul(matmul(Binv, JH), B)
    J = tuple(tuple(to_surd(x) for x in row) for row in J)
    if not all(x.is_real() for row in J for x in row):
        raise InvalidEll("J does not preserve the real form")
    return J


def killing_gram(vd: VoganDiagram) -> list[list[Q]]:
    """Bilinear Gram matrix of H_1..H_r (symmetrized Cartan matrix)."""
    return [[Q(x) for x in row] for row in vd.rs.gram]


def snow_decomposition_exists(vd: VoganDiagram, d0, ell: EllSubspace) -> bool:
    """Whether l = h0 + h1 with h1 Killing-orthogonal to h0 + sigma h0."""
    r = vd.rank
    rset = build_R(vd, d0)
    Rset = set(rset.R)
    both = {a for a in Rset if _neg(a) in Rset}
    g = killing_gram(vd)
    # H_alpha for alpha in R cap -R, expanded in H_1..H_r (linear in alpha)
    h0 = [list(a) for a in both]
    h0 = [[Surd.coerce(Q(x)) for x in row] for row in h0]
    h0_dim = rank(h0) if h0 else 0
    rows = [list(row) for row in ell.rows]
    if any(not _in_span(rows, v) for v in h0):
        return False
    cone = h0 + [sigma_vec(vd, v) for v in h0]
    # s = {v : v^T G w = 0 for w in cone}; l cap s via coefficients c with
    # (sum_k c_k l_k)^T G w = 0
    if cone:
        Gw = [[sum((g[i][j] * w[j] for j in range(r)), Surd()) for i in range(r)] for w in cone]
        constraints = [[sum((row[i] * gw[i] for i in range(r)), Surd()) for row in rows] for gw in Gw]
        inter = ell.m - rank(constraints)
    else:
        inter = ell.m
    return inter == ell.m - h0_dim


@dataclass(frozen=True)
class RegularStructure:
    vd: VoganDiagram
    delta0: frozenset[int]
    rset: RSet
    ell: EllSubspace | None = None


def make_structure(vd: VoganDiagram, d0=(), ell: EllSubspace | None = None) -> RegularStructure:
    d0 = frozenset(d0)
    rset = build_R(vd, d0)
    if ell is not None and not validate_ell(vd, d0, ell):
        raise InvalidEll("l fails the subspace conditions")
    return RegularStructure(vd, d0, rset, ell)
