from fractions import Fraction as Q

import pytest
import sympy
from hypothesis import given, strategies as st

from hermvogan.exact import (
    GaussianRational,
    I,
    Surd,
    format_gaussian,
    format_surd,
    inverse,
    matmul,
    identity,
    nullspace,
    parse_gaussian,
    parse_surd,
    primitive_integer,
    rank,
    squarefree_split,
)

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gauss = st.builds(GaussianRational, rats, rats)
radicands = st.sampled_from([1, 2, 3, 5, 6, 7, 10, 15, 30])
surds = st.dictionaries(radicands, gauss, max_size=3).map(Surd)


def to_sympy(x: Surd):
    return sum((sympy.Rational(c.re.numerator, c.re.denominator)
                + sympy.I * sympy.Rational(c.im.numerator, c.im.denominator)) * sympy.sqrt(s)
               for s, c in x.terms.items())


@given(gauss)
def test_gaussian_text_roundtrip(z):
    assert parse_gaussian(format_gaussian(z)) == z


@pytest.mark.parametrize("text,value", [
    ("3/2", GaussianRational(Q(3, 2))),
    ("-i", GaussianRational(0, -1)),
    ("1/2+3i", GaussianRational(Q(1, 2), 3)),
    ("2 - 1/3*i", GaussianRational(2, Q(-1, 3))),
])
def test_gaussian_parse(text, value):
    assert parse_gaussian(text) == value


def test_gaussian_rejects_garbage():
    with pytest.raises(ValueError):
        parse_gaussian("1+2j")


@given(gauss, gauss)
def test_gaussian_field_axioms(a, b):
    assert a * b == b * a
    assert (a + b) - b == a
    if a:
        assert a * a.inverse() == 1
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a * a.conj()).im == 0 and (a * a.conj()).re == a.norm2()


@pytest.mark.parametrize("n,f,s", [(12, 2, 3), (1, 1, 1), (50, 5, 2), (30, 1, 30), (72, 6, 2)])
def test_squarefree_split(n, f, s):
    assert squarefree_split(n) == (f, s)


@given(surds, surds)
def test_surd_arithmetic_matches_sympy(a, b):
    assert sympy.simplify(to_sympy(a + b) - (to_sympy(a) + to_sympy(b))) == 0
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0


@given(surds)
def test_surd_inverse(a):
    if not a:
        with pytest.raises(ZeroDivisionError):
            a.inverse()
        return
    assert a * a.inverse() == 1


@given(st.dictionaries(radicands, rats.map(GaussianRational), max_size=3).map(Surd))
def test_surd_sign_matches_float(a):
    v = float(to_sympy(a))
    if abs(v) > 1e-9:
        assert a.sign() == (1 if v > 0 else -1)
    else:
        assert a.sign() == 0 or abs(v) < 1e-9


@given(surds)
def test_surd_text_roundtrip(a):
    assert parse_surd(format_surd(a)) == a


def test_sqrt_normalizes():
    assert Surd.sqrt(12) == 2 * Surd.sqrt(3)
    assert Surd.sqrt(Q(3, 4)) * 2 == Surd.sqrt(3)
    assert Surd.sqrt(Q(2, 3)) == Surd.sqrt(6) / 3
    assert Surd.sqrt(3) * Surd.sqrt(3) == 3
    assert Surd.sqrt(2) * Surd.sqrt(3) == Surd.sqrt(6)
    assert (Surd.sqrt(2) + 1 - Surd.sqrt(2)).is_gaussian()


def test_linear_algebra_exact():
    A = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
    Ai = inverse(A)
    assert Ai[0][0] == Q(3, 4)
    assert matmul(A, Ai) == [[Q(int(i == j)) for j in range(3)] for i in range(3)]
    assert rank([[1, 2], [2, 4]]) == 1
    ns = nullspace([[1, 1, 0]], 3)
    assert len(ns) == 2 and all(v[0] + v[1] == 0 for v in ns)
    assert identity(2) == [[1, 0], [0, 1]]
    M = [[I, 1], [1, -I]]
    assert rank(M) == 1


@given(st.lists(rats, min_size=1, max_size=6))
def test_primitive_integer(v):
    out = primitive_integer(v)
    assert all(x.denominator == 1 for x in out)
    nz = [x for x in v if x]
    if nz:
        ratio = out[v.index(nz[0])] / nz[0]
        assert ratio > 0 and all(o == ratio * x for o, x in zip(out, v))
