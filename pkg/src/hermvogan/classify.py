"""Balanced and pluriclosed deciders with certificates and witnesses."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction as Q
from functools import lru_cache
from typing import Sequence

from .exact import (
    GaussianRational,
    I,
    Surd,
    matmul,
    solve,
    to_surd,
    transpose,
)
from .lpexact import (
    AlternativeCertificate,
    AlternativeProblem,
    Dual,
    Primal,
    solve_alternative,
    verify_certificate,
)
from .regstruct import (
    EllSubspace,
    OddRank,
    RegularStructure,
    build_R,
    j_on_cartan,
    unpainted,
    validate_ell,
)
from .rootsys import Root, support
from .vogan import (
    VoganComponent,
    VoganDiagram,
    imaginary_positive,
    sigma_root,
    table1_membership,
)


class MissingEll(ValueError):
    pass


class NotInner(ValueError):
    pass


class NoRealSolution(ValueError):
    pass


def _sub(a: Root, b: Root) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def _neg(a: Root) -> Root:
    return tuple(-x for x in a)


# the linear system ----------------------------------------------------------------

@dataclass(frozen=True)
class BalancedColumns:
    rows: tuple[int, ...]              # vertices carrying the equations
    imaginary: tuple[tuple[Root, int], ...]   # (alpha, s_alpha) per M column
    orbits: tuple[Root, ...]           # R3 representative per N column
    problem: AlternativeProblem


def balanced_columns(vd: VoganDiagram, d0, comp: Sequence[int] | None = None) -> BalancedColumns:
    rset = build_R(vd, d0)
    rows = tuple(range(vd.rank)) if comp is None else tuple(sorted(comp))
    inside = set(rows)
    imag = [(a, s) for a, s in imaginary_positive(vd) if support(a) <= inside]
    orbits = [b for b in rset.R3 if support(b) <= inside]
    mcols = [[s * a[i] for i in rows] for a, s in imag]
    ncols = []
    for b in orbits:
        d = _sub(b, sigma_root(vd, b))
        ncols.append([d[i] for i in rows])
    prob = AlternativeProblem.from_columns(len(rows), mcols, ncols)
    return BalancedColumns(rows, tuple(imag), tuple(orbits), prob)


@lru_cache(maxsize=1 << 16)
def _solve(prob: AlternativeProblem) -> AlternativeCertificate:
    # identical simple factors recur across products; their systems coincide
    return solve_alternative(prob)


def balanced_problem(vd: VoganDiagram, d0) -> AlternativeProblem:
    return balanced_columns(vd, d0).problem


# metric parameters ------------------------------------------------------------------

@dataclass(frozen=True)
class MetricParameters:
    lam: dict[Root, Q]
    mu: dict[Root, GaussianRational]
    D: dict[Root, Q]


@dataclass(frozen=True)
class ComponentBalance:
    component: VoganComponent
    table1: bool
    certificate: AlternativeCertificate
    columns: BalancedColumns


class Method(Enum):
    CHARACTERIZATION = "Characterization"
    ORACLE = "Oracle"


@dataclass(frozen=True)
class BalancedVerdict:
    balanced: bool
    method: Method
    components: tuple[ComponentBalance, ...]
    certificate: AlternativeCertificate
    witness: MetricParameters | None = None

    @property
    def table1(self) -> tuple[bool, ...]:
        return tuple(c.table1 for c in self.components)


def table1_dual_certificate(vd: VoganDiagram, comp: VoganComponent) -> Dual:
    """Obstruction vector for a Table-1 component read off from its painting:
    all ones when unpainted, -e_k when alpha_k is the single painted vertex."""
    if not table1_membership(vd, comp):
        raise ValueError("component is not listed in Table 1")
    painted = sorted(vd.painted & set(comp.vertices))
    if not painted:
        return Dual(tuple(Q(1) for _ in comp.vertices))
    return Dual(tuple(Q(-1) if v == painted[0] else Q(0) for v in comp.vertices))


def _combine(vd: VoganDiagram, d0, parts: Sequence[ComponentBalance]) -> AlternativeCertificate:
    """Assemble per-component certificates into one for the whole problem."""
    whole = balanced_columns(vd, d0)
    dual = next((p for p in parts if isinstance(p.certificate, Dual)), None)
    if dual is not None:
        y = [Q(0)] * vd.rank
        for v, val in zip(dual.columns.rows, dual.certificate.y):
            y[v] = val
        return Dual(tuple(y))
    x, t = {}, {}
    for p in parts:
        for (a, _), val in zip(p.columns.imaginary, p.certificate.x):
            x[a] = val
        for b, val in zip(p.columns.orbits, p.certificate.t):
            t[b] = val
    return Primal(tuple(x[a] for a, _ in whole.imaginary), tuple(t[b] for b in whole.orbits))


def decide_balanced(structure: RegularStructure, method: Method | str = Method.ORACLE) -> BalancedVerdict:
    method = Method(method)
    vd, d0 = structure.vd, structure.delta0
    parts = []
    for comp in vd.components:
        cols = balanced_columns(vd, d0, comp.vertices)
        listed = table1_membership(vd, comp)
        if method is Method.CHARACTERIZATION and listed:
            cert: AlternativeCertificate = table1_dual_certificate(vd, comp)
        else:
            cert = _solve(cols.problem)
        parts.append(ComponentBalance(comp, listed, cert, cols))
    if method is Method.CHARACTERIZATION:
        balanced = not any(p.table1 for p in parts)
    else:
        balanced = all(isinstance(p.certificate, Primal) for p in parts)
    cert = _combine(vd, d0, parts)
    witness = None
    if balanced and isinstance(cert, Primal):
        witness = balanced_witness(structure, cert)
    return BalancedVerdict(balanced, method, tuple(parts), cert, witness)


def _mu_from_t(t: Q) -> tuple[Q, Q, Q]:
    """(lambda_beta, lambda_partner, mu) with mu / D = t and D > 0."""
    if t == 0:
        return Q(1), Q(1), Q(0)
    return Q(1), 1 + 1 / abs(t), Q(1 if t > 0 else -1)


def _parameters(structure: RegularStructure, imag_x: dict[Root, Q], orbit_t: dict[Root, Q]) -> MetricParameters:
    vd = structure.vd
    lam: dict[Root, Q] = {a: Q(1) for a in structure.rset.R}
    mu: dict[Root, GaussianRational] = {}
    D: dict[Root, Q] = {}
    for a, x in imag_x.items():
        lam[a] = 1 / x
    for b, t in orbit_t.items():
        partner = _neg(sigma_root(vd, b))
        lb, lp, m = _mu_from_t(t)
        lam[b], lam[partner] = lb, lp
        mu[b] = mu[partner] = GaussianRational(m)
        D[b] = D[partner] = lb * lp - m * m
    return MetricParameters(lam, mu, D)


def balanced_witness(structure: RegularStructure, cert: Primal) -> MetricParameters:
    """lambda = 1/x on imaginary roots; on each R3 orbit lambda_beta = 1,
    lambda_{-sigma beta} = 1 + 1/|t|, mu = sign(t), so that mu/D = t exactly."""
    cols = balanced_columns(structure.vd, structure.delta0)
    if not verify_certificate(cols.problem, cert) or not isinstance(cert, Primal):
        raise ValueError("balanced_witness needs a verified primal certificate")
    x = {a: v for (a, _), v in zip(cols.imaginary, cert.x)}
    t = {b: v for b, v in zip(cols.orbits, cert.t)}
    return _parameters(structure, x, t)


def witness_from_lambda(structure: RegularStructure, lam: dict[Root, Q]) -> MetricParameters:
    """Complete prescribed lambda on imaginary roots (default 1) to a witness by
    solving for the orbit coefficients exactly."""
    cols = balanced_columns(structure.vd, structure.delta0)
    x = {a: 1 / Q(lam.get(a, 1)) for a, _ in cols.imaginary}
    r = len(cols.rows)
    rhs = [-sum((s * a[i] * x[a] for a, s in cols.imaginary), Q(0)) for i in range(r)]
    N = [list(row) for row in cols.problem.N]
    if cols.orbits:
        t = solve(N, rhs)
    else:
        t = [] if all(v == 0 for v in rhs) else None
    if t is None:
        raise NoRealSolution("imaginary part of the sum is not in the span of beta - sigma beta")
    return _parameters(structure, x, dict(zip(cols.orbits, t)))


def verify_balanced_witness(structure: RegularStructure, mp: MetricParameters) -> bool:
    vd, rset = structure.vd, structure.rset
    if any(a not in mp.lam or mp.lam[a] <= 0 for a in rset.R):
        return False
    for a in rset.R2:
        partner = _neg(sigma_root(vd, a))
        if a not in mp.mu or partner not in mp.mu or mp.mu[partner] != mp.mu[a].conj():
            return False
        d = mp.lam[a] * mp.lam[partner] - mp.mu[a].norm2()
        if d <= 0 or mp.D.get(a) != d:
            return False
    total = [GaussianRational() for _ in range(vd.rank)]
    for a, s in imaginary_positive(vd):
        for i in range(vd.rank):
            total[i] = total[i] + Q(s * a[i]) / mp.lam[a]
    for a in rset.R2:
        coef = mp.mu[_neg(sigma_root(vd, a))] / mp.D[a]
        for i in range(vd.rank):
            total[i] = total[i] + coef * a[i]
    return all(v == 0 for v in total)


# pluriclosed ------------------------------------------------------------------------

class Reason(Enum):
    NOT_INNER = "NotInner"
    NOT_TABLE1 = "NotTable1"
    NO_KAPPA = "NoKappa"


@dataclass(frozen=True)
class PluriclosedWitness:
    kappa: tuple[Q, ...]                  # one per Dynkin component
    lam: dict[Root, Q]
    cartan_form: tuple[tuple[Q, ...], ...]


@dataclass(frozen=True)
class PluriclosedVerdict:
    yes: bool
    reason: Reason | None = None
    certificate: AlternativeCertificate | None = None
    witness: PluriclosedWitness | None = None
    J: list = field(default=None, repr=False)


def _factor_gram(vd: VoganDiagram, comp: Sequence[int]) -> list[list[Q]]:
    g = vd.rs.gram
    inside = set(comp)
    r = vd.rank
    return [[Q(g[i][j]) if i in inside and j in inside else Q(0) for j in range(r)] for i in range(r)]


def kappa_problem(vd: VoganDiagram, J: Sequence[Sequence[Surd]]) -> AlternativeProblem:
    """Rows: rational coordinates (per radicand) of J^T G_i J - G_i; column i = factor i."""
    return _kappa_problem(unpainted(vd), tuple(tuple(row) for row in J))


@lru_cache(maxsize=8192)
def _kappa_problem(vd: VoganDiagram, J) -> AlternativeProblem:
    factors = vd.rs.dynkin_components
    Jt = transpose(J)
    cols = []
    for comp in factors:
        G = _factor_gram(vd, comp)
        D = matmul(matmul(Jt, G), J)
        diff = [[to_surd(D[i][j]) - G[i][j] for j in range(vd.rank)] for i in range(vd.rank)]
        cols.append(diff)
    keys = set()
    for diff in cols:
        for row in diff:
            for x in row:
                keys.update(x.terms)
    rows = []
    for i in range(vd.rank):
        for j in range(vd.rank):
            for s in sorted(keys):
                for part in ("re", "im"):
                    row = [getattr(diff[i][j].terms.get(s, GaussianRational()), part) for diff in cols]
                    if any(row) and row not in rows:
                        rows.append(row)
    mcols = [[row[k] for row in rows] for k in range(len(factors))]
    return AlternativeProblem.from_columns(len(rows), mcols, [])


def cartan_form(vd: VoganDiagram, kappa: Sequence[Q]) -> list[list[Q]]:
    r = vd.rank
    out = [[Q(0)] * r for _ in range(r)]
    for k, comp in zip(kappa, vd.rs.dynkin_components):
        G = _factor_gram(vd, comp)
        for i in range(r):
            for j in range(r):
                out[i][j] += k * G[i][j]
    return out


def decide_pluriclosed(structure: RegularStructure) -> PluriclosedVerdict:
    if structure.ell is None:
        raise MissingEll("pluriclosed verdict needs an l-subspace")
    vd = structure.vd
    if any(not c.is_inner for c in vd.components):
        return PluriclosedVerdict(False, Reason.NOT_INNER)
    if not all(table1_membership(vd, c) for c in vd.components):
        return PluriclosedVerdict(False, Reason.NOT_TABLE1)
    J = j_on_cartan(vd, structure.ell)
    cert = _solve(kappa_problem(vd, J))
    if isinstance(cert, Dual):
        return PluriclosedVerdict(False, Reason.NO_KAPPA, cert, None, J)
    kappa = cert.x
    lam = {}
    for k, comp in zip(kappa, vd.rs.dynkin_components):
        for a in vd.rs.positive_roots_on(comp):
            lam[a] = k
    G = cartan_form(vd, kappa)
    w = PluriclosedWitness(tuple(kappa), lam, tuple(tuple(r) for r in G))
    if not verify_pluriclosed_witness(structure, w, J):
        raise AssertionError("pluriclosed witness failed its own check")
    return PluriclosedVerdict(True, None, cert, w, J)


def verify_pluriclosed_witness(structure: RegularStructure, w: PluriclosedWitness,
                               J: Sequence[Sequence[Surd]] | None = None) -> bool:
    vd = structure.vd
    rs = vd.rs
    if any(k <= 0 for k in w.kappa):
        return False
    for k, comp in zip(w.kappa, rs.dynkin_components):
        pos = rs.positive_roots_on(comp)
        posset = set(pos)
        for a in pos:
            for b in pos:
                c = tuple(x + y for x, y in zip(a, b))
                if c not in posset:
                    continue
                s = {r: vd.root_classes[r].sign for r in (a, b, c)}
                if s[c] * w.lam[c] != s[a] * w.lam[a] + s[b] * w.lam[b] - k:
                    return False
    if J is None:
        J = j_on_cartan(vd, structure.ell)
    G = [[to_surd(x) for x in row] for row in w.cartan_form]
    lhs = matmul(matmul(transpose(J), G), J)
    return all(lhs[i][j] == G[i][j] for i in range(vd.rank) for j in range(vd.rank))


def construct_compatible_ell(vd: VoganDiagram) -> EllSubspace:
    """+i eigenspace of a J that rotates an orthogonal basis of h pairwise.

    Gram-Schmidt (unnormalized) for G = Gram with all kappa = 1 in the basis
    iH_1..iH_r; on each pair (u, v) set J u = c v, J v = -u / c with
    c = sqrt(G(u,u) / G(v,v)), which keeps J orthogonal for G.
    """
    if any(not c.is_inner for c in vd.components):
        raise NotInner("compatible l needs an all-inner diagram")
    if vd.rank % 2:
        raise OddRank("l-subspaces need even rank")
    return _compatible_ell(tuple(tuple(row) for row in vd.rs.gram))


@lru_cache(maxsize=1024)
def _compatible_ell(gram) -> EllSubspace:
    r = len(gram)
    G = [[Q(x) for x in row] for row in gram]

    def form(u, v):
        return sum((u[i] * G[i][j] * v[j] for i in range(r) for j in range(r)), Q(0))

    basis: list[list[Q]] = []
    for k in range(r):
        e = [Q(int(i == k)) for i in range(r)]
        for v in basis:
            f = form(e, v) / form(v, v)
            e = [x - f * y for x, y in zip(e, v)]
        basis.append(e)
    rows = []
    for j in range(0, r, 2):
        u, v = basis[j], basis[j + 1]
        c = Surd.sqrt(form(u, u) / form(v, v))
        w = [to_surd(a) - I * c * b for a, b in zip(u, v)]   # u - i J u
        rows.append([I * x for x in w])                      # iH_k -> H-coordinates
    return EllSubspace.of(rows)


def exclusivity_check(vd: VoganDiagram, d0, ell: EllSubspace | None) -> bool:
    from .regstruct import make_structure

    s = make_structure(vd, d0, ell)
    bal = decide_balanced(s).balanced
    if ell is None:
        return True
    return not (bal and decide_pluriclosed(s).yes)
