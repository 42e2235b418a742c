import pytest
from hypothesis import given, settings, strategies as st

from qhowe.errors import ConfigError, ContextError, DomainError
from qhowe.linalg import Matrix
from qhowe.quantumgroup import (
    PBWElem,
    RepAssignment,
    adjoint_matrices,
    casimir,
    casimir_eigenvalue,
    casimir_is_central,
    char_add,
    char_equal,
    char_shift,
    char_tensor,
    char_verma,
    check_relations,
    commutator_identities,
    pbw_mul,
    relations_by_action,
    rep_eval,
    sl2_presentation,
    sln_presentation,
    standard_matrices,
    tensor_rep,
)
from qhowe.scalars import ONE, WeightExpr, qpow
from qhowe.verma import Weight, pi_hat_lambda
from qhowe.weylop import CommPoly, D, G, X, apply

pbw_monos = st.tuples(st.integers(0, 2), st.integers(-2, 2), st.integers(0, 2), st.integers(-2, 2))
pbw_elems = st.lists(pbw_monos, min_size=1, max_size=2).map(
    lambda ms: sum((PBWElem.mono(a, b, c, qpow(e)) for a, b, c, e in ms), PBWElem()))

GENERIC_REP = pi_hat_lambda(Weight.generic(), "y")


@settings(max_examples=40, deadline=None)
@given(pbw_elems, pbw_elems)
def test_pbw_product_is_a_homomorphism(a, b):
    assert rep_eval(GENERIC_REP, pbw_mul(a, b)) == rep_eval(GENERIC_REP, a) * rep_eval(GENERIC_REP, b)


@settings(max_examples=30, deadline=None)
@given(pbw_elems, pbw_elems, pbw_elems)
def test_pbw_product_associates(a, b, c):
    assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("s", range(0, 9))
def test_commutator_identities(s):
    r1, r2 = commutator_identities(s)
    assert r1.is_zero() and r2.is_zero()


def test_commutator_identities_base_two():
    for s in range(1, 4):
        assert all(r.is_zero() for r in commutator_identities(s, d=2))


def test_casimir_central_and_eigenvalue():
    assert casimir_is_central(1)
    assert casimir_is_central(2)
    lam = Weight.generic()
    cas = rep_eval(pi_hat_lambda(lam, "y"), casimir())
    v = CommPoly.monomial({"y": 0})
    assert apply(cas, v) == v * casimir_eigenvalue(lam.expr)


@given(st.integers(-6, 6))
def test_casimir_eigenvalue_symmetry(m):
    w = WeightExpr.integer(m)
    assert casimir_eigenvalue(w) == casimir_eigenvalue(WeightExpr.integer(-m - 2))


def test_matrix_representations():
    assert check_relations(adjoint_matrices(), sl2_presentation()).passed
    for n in (2, 3, 4):
        pres = sln_presentation(n)
        assert check_relations(standard_matrices(n), pres).passed
        assert check_relations(standard_matrices(n, dual=True), pres).passed


def test_broken_representation_is_reported():
    bad = RepAssignment({"E": X("x"), "K": G("x", 2), "F": D("x")}, 1, "bad")
    report = check_relations(bad, sl2_presentation())
    assert not report.passed
    assert {f.relation for f in report.failures} >= {"[E,F]=(K-Kinv)/(q-q^-1)"}
    samples = [CommPoly.monomial({"x": k}) for k in range(3)]
    assert relations_by_action(bad, sl2_presentation(), samples)


def test_missing_generator():
    with pytest.raises(ConfigError):
        check_relations(RepAssignment({"E": X("x")}, 1, "partial"), sl2_presentation())


def test_tensor_rep_of_verma_modules():
    rep = tensor_rep(pi_hat_lambda(Weight.generic("t"), "x"), pi_hat_lambda(Weight.generic("u"), "y"))
    assert check_relations(rep, sl2_presentation()).passed
    with pytest.raises(ContextError):
        tensor_rep(GENERIC_REP, GENERIC_REP)


def test_serre_relations_present():
    names = [r.name for r in sln_presentation(3).relations]
    assert "Serre E1^2E2" in names and "Serre F2^2F1" in names
    with pytest.raises(DomainError):
        sln_presentation(1)


def test_characters():
    top = WeightExpr.symbol("t")
    m = char_verma(5, top)
    assert m.coeffs == (1,) * 6
    sq = char_tensor(m, m)
    assert sq.coeffs == (1, 2, 3, 4, 5, 6)
    shifted = char_shift(m, 2, 5)
    assert shifted.coeffs == (0, 0, 1, 1, 1, 1)
    lower = char_verma(5, top.shift(-4))
    assert char_add(m, lower).coeffs == (1, 1, 2, 2, 2, 2)
    assert char_equal(m, char_verma(3, top))
    with pytest.raises(DomainError):
        char_add(m, char_verma(3, top.shift(-1)))


def test_pbw_json_and_matrix_shape():
    elem = PBWElem.mono(1, -1, 2, qpow(1))
    data = elem.to_json()
    assert data and isinstance(data, dict)
    assert isinstance(adjoint_matrices().images["E"], Matrix)
    assert adjoint_matrices().images["E"].shape == (3, 3)
    assert PBWElem.gen("K") * PBWElem.gen("Kinv") == PBWElem.mono() * ONE
