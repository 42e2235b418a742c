import random

import pytest
from hypothesis import given, settings, strategies as st

from qhowe.errors import ContextError, DomainError
from qhowe.ncpoly import (
    NCPoly,
    associativity_fuzz,
    center_basis,
    is_central,
    make_ring,
    monomials_of_degree,
    normal_form,
    p_q,
)
from qhowe.scalars import ONE, q, qpow

Q_COMMUTING = [("x_n", 2), ("x_n", 3), ("y_n", 3), ("xy_n", 2), ("xy_n", 3)]
ALL_RINGS = [("xyz_sl2", None)] + Q_COMMUTING


def inversion_oracle(ring, letters):
    """Normal form of a word in a q-commuting ring by counting inversions."""
    coeff = ONE
    for a in range(len(letters)):
        for b in range(a + 1, len(letters)):
            j, i = letters[a], letters[b]
            if j > i:
                coeff = coeff * ring.rules[(j, i)][0]
    exps = [0] * ring.nvars
    for g in letters:
        exps[g] += 1
    return NCPoly(ring, {tuple(exps): coeff})


def random_poly(ring, rng, terms=2, max_degree=4):
    out = NCPoly(ring, {})
    for _ in range(terms):
        exps = [0] * ring.nvars
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(ring.nvars)] += 1
        out = out + NCPoly(ring, {tuple(exps): qpow(rng.randint(-2, 2)) * rng.randint(1, 3)})
    return out


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(Q_COMMUTING), st.data())
def test_normal_form_matches_inversion_count(kind, data):
    ring = make_ring(*kind)
    letters = data.draw(st.lists(st.integers(0, ring.nvars - 1), max_size=7))
    word = [(ring.variables[g], 1) for g in letters]
    assert normal_form(ring, word) == inversion_oracle(ring, letters)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(ALL_RINGS), st.integers(0, 10**6))
def test_polynomial_products_associate(kind, seed):
    ring = make_ring(*kind)
    rng = random.Random(seed)
    f, g, h = (random_poly(ring, rng) for _ in range(3))
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@pytest.mark.parametrize("kind", ALL_RINGS)
def test_associativity_fuzz_clean(kind):
    assert associativity_fuzz(make_ring(*kind), 500, max_degree=5, seed=11) == []


def test_xyz_relations():
    ring = make_ring("xyz_sl2")
    x, y, z = (NCPoly.gen(ring, v) for v in "xyz")
    assert z * x == x * z * qpow(-2)
    assert y * z == z * y * qpow(-2)
    assert y * x == x * y + z * z * q * (qpow(2) - qpow(-2))


def test_xy_mixed_relations():
    ring = make_ring("xy_n", 3)
    x1, x3, y1, y2, y3 = (NCPoly.gen(ring, v) for v in ("x1", "x3", "y1", "y2", "y3"))
    assert x1 * y3 * q == y3 * x1
    assert x3 * y1 == y1 * x3 * q
    assert x1 * y1 == y1 * x1
    assert y2 * y1 == y1 * y2 * q


def test_p_q_central_in_xyz():
    ring = make_ring("xyz_sl2")
    p = p_q(ring)
    assert is_central(ring, p)
    assert is_central(ring, p ** 3)
    assert not is_central(ring, NCPoly.gen(ring, "x"))


@pytest.mark.parametrize("n", [2, 3])
def test_xy_center_is_trivial(n):
    ring = make_ring("xy_n", n)
    basis = center_basis(ring, 3)
    assert len(basis) == 1 and basis[0] == NCPoly.one(ring)
    assert not is_central(ring, p_q(ring))


def test_monomials_of_degree_counts():
    assert len(monomials_of_degree(3, 4)) == 15
    assert monomials_of_degree(2, 2) == [(2, 0), (1, 1), (0, 2)]


def test_rule_text_and_errors():
    ring = make_ring("xyz_sl2")
    assert ring.rule_text(2, 0).startswith("y*x -> (1)*x*y")
    with pytest.raises(DomainError):
        make_ring("xy_n", 1)
    with pytest.raises(DomainError):
        make_ring("nope")
    with pytest.raises(ContextError):
        NCPoly.gen(ring, "w")
    with pytest.raises(ContextError):
        NCPoly.one(ring) + NCPoly.one(make_ring("x_n", 2))
    with pytest.raises(DomainError):
        normal_form(ring, [("x", -1)])
    with pytest.raises(DomainError):
        p_q(make_ring("x_n", 2))
