from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from hermvogan.classify import (
    Method,
    MissingEll,
    NotInner,
    Reason,
    balanced_problem,
    balanced_witness,
    construct_compatible_ell,
    decide_balanced,
    decide_pluriclosed,
    exclusivity_check,
    kappa_problem,
    verify_balanced_witness,
    verify_pluriclosed_witness,
    witness_from_lambda,
)
from hermvogan.exact import GaussianRational, Surd, matmul, transpose
from hermvogan.lpexact import Dual, Primal, verify_certificate
from hermvogan.regstruct import (
    EllSubspace,
    OddRank,
    construct_default_ell,
    enumerate_delta0,
    j_on_cartan,
    make_structure,
    validate_ell,
)
from hermvogan.rootsys import cartan_matrix, cartan_of_types, connected_types_upto, direct_sum, semisimple_types
from hermvogan.vogan import enumerate_vogan, imaginary_positive, make_vogan, table1_membership


def vd_of(letter, n, inv=(), painted=()):
    th = list(range(n))
    for a, b in inv:
        th[a - 1], th[b - 1] = b - 1, a - 1
    return make_vogan(cartan_matrix(letter, n), th, [p - 1 for p in painted])


def complex_pair(letter, n):
    c = cartan_matrix(letter, n)
    return make_vogan(direct_sum(c, c), [i + n for i in range(n)] + list(range(n)))


def col_set(prob, which="M"):
    mat = prob.M if which == "M" else prob.N
    return sorted(tuple(row[j] for row in mat) for j in range(len(mat[0]) if mat else 0))


# balanced problem --------------------------------------------------------------------

def test_a2_both_painted_columns():
    prob = balanced_problem(vd_of("A", 2, painted=[1, 2]), ())
    assert col_set(prob) == sorted([(-1, 0), (0, -1), (1, 1)])
    assert prob.q == 0


def test_complex_component_has_no_positive_columns():
    vd = complex_pair("A", 2)
    prob = balanced_problem(vd, ())
    assert prob.p == 0
    assert decide_balanced(make_structure(vd)).balanced


def test_a4_swap_orbit_columns():
    vd = vd_of("A", 4, [(1, 4), (2, 3)])
    prob = balanced_problem(vd, ())
    complex_pos = [a for a in vd.rs.positive_roots if not vd.root_classes[a].imaginary]
    assert prob.q == len(complex_pos) // 2
    assert len(complex_pos) == 8 and prob.p == 2


# deciders on the small examples --------------------------------------------------------

@pytest.mark.parametrize("method", list(Method))
def test_balanced_examples(method):
    assert decide_balanced(make_structure(vd_of("A", 2, painted=[1, 2])), method).balanced
    assert not decide_balanced(make_structure(vd_of("A", 2)), method).balanced
    assert decide_balanced(make_structure(vd_of("C", 2, painted=[1])), method).balanced


def test_verify_witness_examples():
    s = make_structure(vd_of("A", 2))
    ones = {a: Q(1) for a in s.rset.R}
    from hermvogan.classify import MetricParameters
    assert not verify_balanced_witness(s, MetricParameters(ones, {}, {}))
    s = make_structure(vd_of("A", 2, painted=[1, 2]))
    assert verify_balanced_witness(s, MetricParameters({a: Q(1) for a in s.rset.R}, {}, {}))


def test_witness_a2_both_painted():
    s = make_structure(vd_of("A", 2, painted=[1, 2]))
    w = balanced_witness(s, Primal((Q(1), Q(1), Q(1)), ()))
    assert set(w.lam.values()) == {Q(1)} and w.mu == {}


def test_witness_complex_component():
    s = make_structure(complex_pair("A", 1))
    v = decide_balanced(s)
    assert v.witness is not None and verify_balanced_witness(s, v.witness)
    assert all(m == 0 for m in v.witness.mu.values())


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("paint", [False, True])
def test_quaternionic_family_witness(k, paint):
    # A_{2k-1}, reversed, middle vertex alpha_k fixed; lambda_{alpha_k} = 1/(k-1)
    n = 2 * k - 1
    vd = vd_of("A", n, [(i, n + 1 - i) for i in range(1, k)], [k] if paint else [])
    s = make_structure(vd)
    ak = tuple(int(i == k - 1) for i in range(n))
    w = witness_from_lambda(s, {ak: Q(1, k - 1)})
    assert w.lam[ak] == Q(1, k - 1)
    assert verify_balanced_witness(s, w)


def test_witness_rejects_tampering():
    s = make_structure(vd_of("A", 4, [(1, 4), (2, 3)]), {0})
    w = decide_balanced(s).witness
    assert verify_balanced_witness(s, w)
    a = next(iter(w.mu))
    bad = dict(w.mu)
    bad[a] = bad[a] + 1
    from hermvogan.classify import MetricParameters
    assert not verify_balanced_witness(s, MetricParameters(w.lam, bad, w.D))
    lam = dict(w.lam)
    lam[next(iter(lam))] = Q(-1)
    assert not verify_balanced_witness(s, MetricParameters(lam, w.mu, w.D))


# pluriclosed -------------------------------------------------------------------------

def test_pluriclosed_not_inner():
    vd = complex_pair("A", 1)
    s = make_structure(vd, (), construct_default_ell(vd, ()))
    assert decide_pluriclosed(s).reason is Reason.NOT_INNER
    vd = vd_of("A", 4, [(1, 4), (2, 3)])
    s = make_structure(vd, (), construct_default_ell(vd, ()))
    assert decide_pluriclosed(s).reason is Reason.NOT_INNER


def test_pluriclosed_not_table1():
    vd = vd_of("A", 2, painted=[1, 2])
    s = make_structure(vd, (), construct_default_ell(vd, ()))
    v = decide_pluriclosed(s)
    assert not v.yes and v.reason is Reason.NOT_TABLE1


def test_su3_depends_on_ell():
    vd = vd_of("A", 2)
    s = make_structure(vd, (), EllSubspace.of([[1, GaussianRational(0, 1)]]))
    v = decide_pluriclosed(s)
    assert not v.yes and v.reason is Reason.NO_KAPPA
    assert isinstance(v.certificate, Dual)
    assert verify_certificate(kappa_problem(vd, v.J), v.certificate)
    s = make_structure(vd, (), construct_compatible_ell(vd))
    v = decide_pluriclosed(s)
    assert v.yes and v.witness.kappa == (Q(1),)


def test_missing_ell():
    with pytest.raises(MissingEll):
        decide_pluriclosed(make_structure(vd_of("A", 2)))


def test_compatible_ell_a2_by_hand():
    # orthogonal basis u = e1, v = e2 + e1/2 with G(u,u) = 2, G(v,v) = 3/2
    vd = vd_of("A", 2)
    ell = construct_compatible_ell(vd)
    assert validate_ell(vd, (), ell)
    J = j_on_cartan(vd, ell)
    G = [[Surd.coerce(2), Surd.coerce(-1)], [Surd.coerce(-1), Surd.coerce(2)]]
    assert matmul(matmul(transpose(J), G), J) == [list(r) for r in G]
    # J u is a multiple of v
    Ju = [J[0][0], J[1][0]]
    assert Ju[0] * 2 == Ju[1]


def test_compatible_ell_errors():
    with pytest.raises(NotInner):
        construct_compatible_ell(vd_of("A", 2, [(1, 2)]))
    with pytest.raises(OddRank):
        construct_compatible_ell(vd_of("A", 3))


EVEN_INNER = [vd for types in semisimple_types(6) for vd in enumerate_vogan(cartan_of_types(types), dedup=True)
              if vd.rank % 2 == 0 and vd.is_inner and all(table1_membership(vd, c) for c in vd.components)]


@pytest.mark.parametrize("vd", EVEN_INNER[::5], ids=repr)
def test_compatible_ell_never_fails_on_kappa(vd):
    ell = construct_compatible_ell(vd)
    s = make_structure(vd, (), ell)
    v = decide_pluriclosed(s)
    assert v.yes, v.reason
    assert all(k > 0 for k in v.witness.kappa)
    assert verify_pluriclosed_witness(s, v.witness, v.J)


@pytest.mark.parametrize("letter,n", connected_types_upto(8))
def test_root_equation_reduces_to_one_noncompact(letter, n):
    # with lambda = kappa, s(a+b) = s(a) + s(b) - 1 exactly when at most one of a, b is noncompact
    for vd in enumerate_vogan(cartan_matrix(letter, n), dedup=True):
        comp = vd.components[0]
        if not comp.is_inner or not table1_membership(vd, comp):
            continue
        pos = set(vd.rs.positive_roots)
        sgn = {a: vd.root_classes[a].sign for a in pos}
        for a in pos:
            for b in pos:
                c = tuple(x + y for x, y in zip(a, b))
                if c in pos:
                    assert sgn[c] == sgn[a] + sgn[b] - 1
                    assert min(sgn[a], sgn[b]) == 1 or max(sgn[a], sgn[b]) == 1


# exclusivity -------------------------------------------------------------------------

def test_exclusivity_examples():
    vd = vd_of("A", 2, painted=[1, 2])
    assert exclusivity_check(vd, (), construct_default_ell(vd, ()))
    vd = vd_of("A", 2)
    assert exclusivity_check(vd, (), construct_compatible_ell(vd))
    for painted in ([1], [2], [1, 2]):
        vd = vd_of("G", 2, painted=painted)
        assert decide_balanced(make_structure(vd)).balanced
        for ell in (construct_default_ell(vd, ()), construct_compatible_ell(vd)):
            assert not decide_pluriclosed(make_structure(vd, (), ell)).yes
            assert exclusivity_check(vd, (), ell)


# both methods, with certificates, on a sampled slice of rank <= 4 -----------------------

ALL4 = [(vd, d0) for types in semisimple_types(4) for vd in enumerate_vogan(cartan_of_types(types))
        for d0 in enumerate_delta0(vd)]


@settings(max_examples=200)
@given(st.sampled_from(ALL4))
def test_methods_agree_and_certificates_verify(case):
    vd, d0 = case
    s = make_structure(vd, d0)
    prob = balanced_problem(vd, d0)
    verdicts = [decide_balanced(s, m) for m in Method]
    assert len({v.balanced for v in verdicts}) == 1
    for v in verdicts:
        assert verify_certificate(prob, v.certificate)
        assert isinstance(v.certificate, Primal) == v.balanced
        if v.witness is not None:
            assert verify_balanced_witness(s, v.witness)
            assert all(l > 0 for l in v.witness.lam.values())
            assert all(d > 0 for d in v.witness.D.values())
