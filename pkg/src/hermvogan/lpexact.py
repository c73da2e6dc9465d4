"""Exact theorem of the alternative with free variables.

Given rational M (r x p) and N (r x q), exactly one of the following holds:

    Primal:  M x + N t = 0 with every x_i > 0
    Dual:    N^T y = 0, M^T y >= 0, M^T y != 0

Primal feasibility is decided as feasibility of {M x + N t = 0, x >= 1}
(equivalent by homogeneity) with a two-phase simplex over Fractions using
Bland's least-index rule.  When phase one ends with positive infeasibility
the simplex multipliers give the dual vector directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Sequence

from .exact import primitive_integer


class ShapeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class AlternativeProblem:
    M: tuple[tuple[Q, ...], ...]
    N: tuple[tuple[Q, ...], ...]
    p: int
    q: int

    @property
    def r(self) -> int:
        return len(self.M)

    @classmethod
    def of(cls, M: Sequence[Sequence], N: Sequence[Sequence] | None = None,
           p: int | None = None, q: int | None = None) -> "AlternativeProblem":
        """Rows of M and N; column counts can be given for zero-row problems."""
        Mt = tuple(tuple(Q(x) for x in row) for row in M)
        if N is None or (len(N) == 0 and Mt):
            N = [[] for _ in Mt]
        Nt = tuple(tuple(Q(x) for x in row) for row in N)
        if len(Mt) != len(Nt):
            raise ShapeMismatch("M and N need the same number of rows")
        p = len(Mt[0]) if Mt else (p or 0)
        q = len(Nt[0]) if Nt else (q or 0)
        if any(len(row) != p for row in Mt) or any(len(row) != q for row in Nt):
            raise ShapeMismatch("ragged matrix")
        return cls(Mt, Nt, p, q)

    @classmethod
    def from_columns(cls, r: int, mcols: Sequence[Sequence], ncols: Sequence[Sequence]) -> "AlternativeProblem":
        M = [[Q(c[i]) for c in mcols] for i in range(r)]
        N = [[Q(c[i]) for c in ncols] for i in range(r)]
        return cls(tuple(map(tuple, M)), tuple(map(tuple, N)), len(mcols), len(ncols))


@dataclass(frozen=True)
class Primal:
    x: tuple[Q, ...]
    t: tuple[Q, ...]


@dataclass(frozen=True)
class Dual:
    y: tuple[Q, ...]


AlternativeCertificate = Primal | Dual


def _phase_one(A: list[list[Q]], b: list[Q]):
    """Feasibility of A z = b, z >= 0.

    Returns ("feasible", z) or ("infeasible", y) with A^T y >= 0, b.y < 0.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    sign = [(-1 if bi < 0 else 1) for bi in b]
    # tableau rows: structural | artificial | rhs
    T = [[sign[i] * v for v in A[i]] + [Q(int(i == k)) for k in range(m)] + [sign[i] * b[i]]
         for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m

    while True:
        # duals pi_i = cost of basic artificials through B^{-1}
        cost_b = [Q(1) if v >= n else Q(0) for v in basis]
        entering = None
        for j in range(width):
            if j in basis:
                continue
            cj = Q(1) if j >= n else Q(0)
            red = cj - sum((cost_b[k] * T[k][j] for k in range(m) if cost_b[k]), Q(0))
            if red < 0:
                entering = j
                break
        if entering is None:
            break
        best = None
        for k in range(m):
            a = T[k][entering]
            if a > 0:
                ratio = T[k][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[k] < basis[best[1]]):
                    best = (ratio, k)
        if best is None:  # cannot happen: phase-one objective is bounded below
            raise AssertionError("unbounded phase-one direction")
        k = best[1]
        piv = T[k][entering]
        T[k] = [v / piv for v in T[k]]
        for i in range(m):
            if i != k and T[i][entering] != 0:
                f = T[i][entering]
                T[i] = [x - f * y for x, y in zip(T[i], T[k])]
        basis[k] = entering

    infeas = sum((T[k][-1] for k in range(m) if basis[k] >= n), Q(0))
    if infeas == 0:
        z = [Q(0)] * n
        for k, v in enumerate(basis):
            if v < n:
                z[v] = T[k][-1]
        return "feasible", z
    # pi = c_B^T B^{-1}; the artificial block of the tableau holds B^{-1}.
    pi = [sum((T[k][n + i] for k in range(m) if basis[k] >= n), Q(0)) for i in range(m)]
    y = [-sign[i] * pi[i] for i in range(m)]
    return "infeasible", y


def solve_alternative(prob: AlternativeProblem) -> AlternativeCertificate:
    r, p, q = prob.r, prob.p, prob.q
    if p == 0:
        return Primal((), tuple(Q(0) for _ in range(q)))
    if r == 0:
        return Primal(tuple(Q(1) for _ in range(p)), tuple(Q(0) for _ in range(q)))
    # x = 1 + u, t = t+ - t-, all of u, t+, t- >= 0:  M u + N t+ - N t- = -M 1
    A = [list(prob.M[i]) + list(prob.N[i]) + [-v for v in prob.N[i]] for i in range(r)]
    b = [-sum(prob.M[i], Q(0)) for i in range(r)]
    status, z = _phase_one(A, b)
    if status == "feasible":
        x = [1 + u for u in z[:p]]
        t = [z[p + j] - z[p + q + j] for j in range(q)]
        scaled = primitive_integer(x + t)
        return Primal(tuple(scaled[:p]), tuple(scaled[p:]))
    return Dual(tuple(primitive_integer(z)))


def verify_certificate(prob: AlternativeProblem, cert: AlternativeCertificate) -> bool:
    r, p, q = prob.r, prob.p, prob.q
    if isinstance(cert, Primal):
        if len(cert.x) != p or len(cert.t) != q:
            raise ShapeMismatch("certificate length does not match the problem")
        if any(Q(v) <= 0 for v in cert.x):
            return False
        for i in range(r):
            s = sum((prob.M[i][j] * cert.x[j] for j in range(p)), Q(0))
            s += sum((prob.N[i][j] * cert.t[j] for j in range(q)), Q(0))
            if s != 0:
                return False
        return True
    if isinstance(cert, Dual):
        if len(cert.y) != r:
            raise ShapeMismatch("certificate length does not match the problem")
        y = cert.y
        for j in range(q):
            if sum((prob.N[i][j] * y[i] for i in range(r)), Q(0)) != 0:
                return False
        mty = [sum((prob.M[i][j] * y[i] for i in range(r)), Q(0)) for j in range(p)]
        return all(v >= 0 for v in mty) and any(v != 0 for v in mty)
    raise TypeError("not a certificate")
