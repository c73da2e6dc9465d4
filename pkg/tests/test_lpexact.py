import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from hermvogan.lpexact import AlternativeProblem, Dual, Primal, ShapeMismatch, solve_alternative, verify_certificate


def random_problem(rng, lo=-3, hi=3):
    r, p, q = rng.randint(1, 6), rng.randint(1, 6), rng.randint(0, 6)
    M = [[rng.randint(lo, hi) for _ in range(p)] for _ in range(r)]
    N = [[rng.randint(lo, hi) for _ in range(q)] for _ in range(r)]
    return AlternativeProblem.of(M, N)


def float_feasible(prob):
    """Floating point oracle: (primal feasible, dual feasible) via two LPs."""
    r, p, q = prob.r, prob.p, prob.q
    M = [[float(x) for x in row] for row in prob.M]
    N = [[float(x) for x in row] for row in prob.N]
    # x >= 1, t free, M x + N t = 0
    A = [M[i] + N[i] for i in range(r)]
    res = linprog([0] * (p + q), A_eq=A, b_eq=[0] * r,
                  bounds=[(1, None)] * p + [(None, None)] * q, method="highs")
    primal = res.status == 0
    # N^T y = 0, M^T y >= 0, sum(M^T y) = 1
    A_eq = [[N[i][j] for i in range(r)] for j in range(q)]
    A_eq.append([sum(M[i]) for i in range(r)])
    b_eq = [0] * q + [1]
    A_ub = [[-M[i][j] for i in range(r)] for j in range(p)]
    res = linprog([0] * r, A_ub=A_ub, b_ub=[0] * p, A_eq=A_eq, b_eq=b_eq,
                  bounds=[(None, None)] * r, method="highs")
    dual = res.status == 0
    return primal, dual


def test_examples():
    prob = AlternativeProblem.of([[1]])
    assert solve_alternative(prob) == Dual((Q(1),))
    assert verify_certificate(prob, Dual((Q(1),)))
    assert not verify_certificate(prob, Primal((Q(1),), ()))

    a2 = AlternativeProblem.from_columns(2, [(-1, 0), (0, -1), (1, 1)], [])
    cert = solve_alternative(a2)
    assert cert == Primal((Q(1), Q(1), Q(1)), ())
    assert verify_certificate(a2, Primal((Q(1), Q(1), Q(1)), ()))

    assert solve_alternative(AlternativeProblem.of([[1, -1]])) == Primal((Q(1), Q(1)), ())


def test_free_columns_can_absorb():
    # x + t = 0 with t free: t = -x
    prob = AlternativeProblem.of([[1]], [[1]])
    cert = solve_alternative(prob)
    assert isinstance(cert, Primal) and verify_certificate(prob, cert)


def test_dual_respects_free_columns():
    # x1 = 0 forced, x2 free of sign constraints via t
    prob = AlternativeProblem.of([[1, 0], [0, 1]], [[0], [1]])
    cert = solve_alternative(prob)
    assert isinstance(cert, Dual) and verify_certificate(prob, cert)
    assert cert.y[1] == 0


def test_fuzz_against_float_oracle():
    rng = random.Random(20261016)
    kinds = {"Primal": 0, "Dual": 0}
    for _ in range(1000):
        prob = random_problem(rng)
        cert = solve_alternative(prob)
        assert verify_certificate(prob, cert)
        primal, dual = float_feasible(prob)
        assert primal != dual, prob          # the alternative: exactly one
        assert isinstance(cert, Primal) == primal, prob
        kinds[type(cert).__name__] += 1
    # both outcomes exercised
    assert min(kinds.values()) > 100, kinds


def test_certificates_are_primitive_integers():
    rng = random.Random(7)
    for _ in range(200):
        cert = solve_alternative(random_problem(rng))
        vals = cert.x + cert.t if isinstance(cert, Primal) else cert.y
        assert all(v.denominator == 1 for v in vals)


problems = st.integers(1, 5).flatmap(lambda r: st.tuples(
    st.lists(st.lists(st.integers(-3, 3), min_size=r, max_size=r), min_size=1, max_size=5),
    st.lists(st.lists(st.integers(-3, 3), min_size=r, max_size=r), max_size=3),
)).map(lambda mn: AlternativeProblem.from_columns(len(mn[0][0]), mn[0], mn[1]))


@given(problems, st.data())
def test_column_scaling_keeps_kind(prob, data):
    j = data.draw(st.integers(0, prob.p - 1))
    c = data.draw(st.fractions(min_value=Q(1, 10), max_value=10).filter(lambda x: x > 0))
    M = [list(row) for row in prob.M]
    for row in M:
        row[j] *= c
    scaled = AlternativeProblem.of(M, [list(row) for row in prob.N], prob.p, prob.q)
    assert type(solve_alternative(scaled)) is type(solve_alternative(prob))


@given(problems)
def test_deterministic_and_verified(prob):
    a, b = solve_alternative(prob), solve_alternative(prob)
    assert a == b
    assert verify_certificate(prob, a)


@given(problems)
def test_flipped_kind_never_verifies(prob):
    cert = solve_alternative(prob)
    if isinstance(cert, Primal):
        # any y with M^T y >= 0, != 0, N^T y = 0 would contradict y.(Mx+Nt) = 0
        for y in ([1] * prob.r, [-1] * prob.r):
            assert not verify_certificate(prob, Dual(tuple(Q(v) for v in y)))
    else:
        ones = Primal(tuple(Q(1) for _ in range(prob.p)), tuple(Q(0) for _ in range(prob.q)))
        assert not verify_certificate(prob, ones)


def test_shape_mismatch():
    prob = AlternativeProblem.of([[1, 2]])
    with pytest.raises(ShapeMismatch):
        verify_certificate(prob, Primal((Q(1),), ()))
    with pytest.raises(ShapeMismatch):
        verify_certificate(prob, Dual((Q(1), Q(1))))
    with pytest.raises(ShapeMismatch):
        AlternativeProblem.of([[1, 2], [1]])
    with pytest.raises(ShapeMismatch):
        AlternativeProblem.of([[1]], [[1], [2]])
