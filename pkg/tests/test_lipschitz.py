import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cliffpin import linalg as la
from cliffpin import lipschitz as lp
from cliffpin.blades import CliffordElement, Signature, signatures_up_to
from cliffpin.errors import ContractError, InputError
from cliffpin.reps import build_irrep, compute_anticommutant, compute_schur, special_twisting_element
from cliffpin.suites import irrep_for

import oracles


def I(n, c=1):
    return la.scalar_matrix(n, c)


# ---------------------------------------------------------------- pairing


def test_pairing_hyperbolic_line():
    form = lp.find_canonical_pairing(build_irrep(Signature(1, 0), eps=1))
    assert form.B == ((Fraction(1),),)
    assert (form.sym, form.type) == (1, 1)


def test_pairing_complex_volume_is_antisymmetric():
    rep = build_irrep(Signature(3, 0))
    form = lp.find_canonical_pairing(rep)
    w = rep.omega()
    assert form.transpose(w) == la.neg(w)


def test_pairing_quaternion_volume():
    rep = build_irrep(Signature(0, 2))
    form = lp.find_canonical_pairing(rep)
    w = rep.omega()
    lhs = form.transpose(w)
    # compute the inverse independently, by solving w X = I
    assert lhs == la.inverse(w)
    assert la.matmul(lhs, w) == I(rep.dim)


@pytest.mark.parametrize("sig", signatures_up_to(5), ids=str)
def test_pairing_laws(sig):
    rep = irrep_for(sig)
    rec = rep.record
    form = lp.find_canonical_pairing(rep)
    n = rep.dim
    assert la.transpose(form.B) == la.scale(form.sym, form.B)
    assert la.det(form.B) != 0
    ee = rec.eps_d if rec.simple else -rec.eps_d
    assert form.type == ee
    for g in rep.gammas:
        # v^t = eps_e v, written without the inverse: g^T B = eps_e B g
        assert la.matmul(la.transpose(g), form.B) == la.scale(ee, la.matmul(form.B, g))
    w = rep.omega()
    beta = rec.beta
    assert la.matmul(form.transpose(w), w) == I(n, beta)
    for s in compute_schur(rep).im_basis:
        assert form.transpose(s) == la.neg(s)


# ------------------------------------------------------------------- norms


def test_norm_examples():
    rep = build_irrep(Signature(1, 0), eps=1)
    form = lp.find_canonical_pairing(rep)
    assert lp.lipschitz_norm(rep, form, rep.gammas[0]) == I(1)

    rep = build_irrep(Signature(0, 2))
    form = lp.find_canonical_pairing(rep)
    g12 = la.matmul(rep.gammas[0], rep.gammas[1])
    assert lp.lipschitz_norm(rep, form, g12) == I(rep.dim)

    rep = build_irrep(Signature(3, 0))
    form = lp.find_canonical_pairing(rep)
    assert lp.lipschitz_norm(rep, form, rep.omega()) == I(rep.dim)


@given(oracles.signatures(dmax=4), st.integers(0, 5), st.integers(0, 10**6))
@settings(max_examples=40)
def test_norm_on_pin_products(sig, k, seed):
    rep = irrep_for(sig)
    form = lp.find_canonical_pairing(rep)
    sample = lp.sample_pin_factors(rep, k, random.Random(seed))
    expected = 1
    for h in sample.norms:
        expected *= form.type * h
    assert lp.lipschitz_norm(rep, form, sample.matrix) == I(rep.dim, expected)


# -------------------------------------------------------- Lipschitz group


def test_vector_acts_by_minus_reflection():
    rep = build_irrep(Signature(2, 0))
    elem = lp.is_lipschitz(rep, rep.gammas[0])
    assert elem.witness == la.neg(lp.reflection_matrix(rep.sig, [1, 0]))
    assert elem.witness == ((Fraction(1), 0), (0, Fraction(-1)))


def test_special_twisting_flips_the_sign():
    rep = build_irrep(Signature(2, 0))
    mu = special_twisting_element(rep)
    elem = lp.is_lipschitz(rep, la.matmul(mu, rep.gammas[0]))
    assert elem.witness == lp.reflection_matrix(rep.sig, [1, 0])
    assert lp.special_adjoint_sign_check(rep, [Fraction(3, 5), Fraction(4, 5)])


def test_non_lipschitz_element():
    rep = build_irrep(Signature(0, 2))
    a = la.add(I(rep.dim), rep.gammas[0])
    assert not lp.is_lipschitz(rep, a).in_lipschitz


def test_singular_element_rejected():
    rep = build_irrep(Signature(1, 1))
    with pytest.raises(InputError):
        lp.is_lipschitz(rep, la.add(I(rep.dim), rep.gammas[0]))


@given(oracles.signatures(dmax=4), st.integers(1, 4), st.integers(0, 10**6))
@settings(max_examples=40)
def test_witness_is_product_of_minus_reflections(sig, k, seed):
    rep = irrep_for(sig)
    sample = lp.sample_pin_factors(rep, k, random.Random(seed))
    expected = la.identity(sig.d)
    for v in sample.vectors:
        expected = la.matmul(expected, la.neg(lp.reflection_matrix(sig, v)))
    assert lp.is_lipschitz(rep, sample.matrix).witness == expected


def test_reflection_along_null_vector():
    with pytest.raises(InputError):
        lp.reflection_matrix(Signature(1, 1), [1, 1])


# -------------------------------------------------------------- membership


@pytest.mark.parametrize("sig", [Signature(2, 0), Signature(1, 1), Signature(0, 4), Signature(3, 0)], ids=str)
def test_volume_is_even(sig):
    rep = build_irrep(sig)
    mem = lp.reduced_membership(rep, lp.find_canonical_pairing(rep), rep.omega())
    assert mem.in_L0 and not mem.in_L1


@pytest.mark.parametrize("sig", [Signature(2, 0), Signature(1, 1), Signature(2, 2)], ids=str)
def test_vector_is_odd_in_even_dimension(sig):
    rep = build_irrep(sig)
    mem = lp.reduced_membership(rep, lp.find_canonical_pairing(rep), rep.gammas[0])
    assert mem.in_L1 and mem.det_Ad0 == -1


def test_scalar_two_is_not_reduced():
    rep = build_irrep(Signature(2, 0))
    form = lp.find_canonical_pairing(rep)
    two = I(rep.dim, 2)
    assert lp.is_lipschitz(rep, two).witness == la.identity(2)
    assert lp.lipschitz_norm(rep, form, two) == I(rep.dim, 4)
    mem = lp.reduced_membership(rep, form, two)
    assert not mem.in_reduced and mem.norm_sign == 1


def test_membership_requires_lipschitz():
    rep = build_irrep(Signature(0, 2))
    with pytest.raises(ContractError):
        lp.reduced_membership(rep, lp.find_canonical_pairing(rep), la.add(I(rep.dim), rep.gammas[0]))


# ----------------------------------------------------------------- sampling


def test_sample_empty_product():
    rep = build_irrep(Signature(2, 0))
    assert lp.sample_pin_element(rep, 0, 1) == I(rep.dim)


def test_sample_spin_plane():
    rep = build_irrep(Signature(2, 0))
    a = lp.sample_pin_element(rep, 2, 11)
    assert lp.lipschitz_norm(rep, lp.find_canonical_pairing(rep), a) in (I(2), I(2, -1))


def test_sample_forced_first_vector():
    rep = build_irrep(Signature(1, 1))
    assert lp.sample_pin_element(rep, 1, 3, forced_first=[1, 0]) == rep.gammas[0]


def test_sample_deterministic_and_validated():
    rep = build_irrep(Signature(2, 1), eps=1)
    assert lp.sample_pin_element(rep, 3, 5) == lp.sample_pin_element(rep, 3, 5)
    with pytest.raises(InputError):
        lp.sample_pin_element(rep, -1, 5)
    with pytest.raises(InputError):
        lp.sample_pin_element(rep, 1, 5, forced_first=[2, 0, 0])


# ----------------------------------------------------- group identification


def statuses(reports):
    return {r["property"]: r["status"] for r in reports}


@pytest.mark.parametrize("eps", [1, -1])
def test_identification_hyperbolic_line(eps):
    rep = build_irrep(Signature(1, 0), eps)
    reports = lp.verify_group_identification(rep, n_samples=30)
    assert set(statuses(reports).values()) == {"pass"}
    assert "reduced_group_is_Spin" in statuses(reports)
    # the reduced group of a one-dimensional rep is {+1, -1}
    for pin, s, kappa, a in lp._reduced_samples(rep, random.Random(1), 20):
        assert a in (I(1), I(1, -1))


@pytest.mark.parametrize("sig", [Signature(0, 2), Signature(3, 0), Signature(0, 3), Signature(2, 2)], ids=str)
def test_identification_small(sig):
    rep = irrep_for(sig)
    assert set(statuses(lp.verify_group_identification(rep, n_samples=30)).values()) == {"pass"}


def test_quaternion_volume_fixed_by_its_adjoint():
    rep = build_irrep(Signature(0, 2))
    w = compute_anticommutant(rep).u
    assert w == rep.omega()
    assert la.matmul(la.matmul(w, w), la.inverse(w)) == w


def test_complex_rotation_of_twisting_element():
    rep = build_irrep(Signature(3, 0))
    J = compute_schur(rep).im_basis[0]
    u = compute_anticommutant(rep).u
    n = rep.dim
    x, y = Fraction(3, 5), Fraction(4, 5)
    a = la.add(I(n, x), la.scale(y, J))
    lhs = la.matmul(la.matmul(a, u), la.inverse(a))
    # u J = -J u, so (x + yJ) u (x - yJ) = (x + yJ)^2 u
    rhs = la.matmul(la.add(I(n, x * x - y * y), la.scale(2 * x * y, J)), u)
    assert lhs == rhs


# ----------------------------------------------------- twisted automorphisms


def test_twisted_identity_element():
    rep = build_irrep(Signature(2, 0))
    u = compute_anticommutant(rep).u
    one = rep.identity()
    sigma_u = la.matmul(la.matmul(la.matmul(one, u), one), la.inverse(u))
    assert sigma_u == one
    assert lp.phi0_of(rep, one) == list(compute_schur(rep).basis)


def test_twisting_element_conjugates_complex_schur():
    rep = build_irrep(Signature(3, 0))
    u = compute_anticommutant(rep).u
    one, J = compute_schur(rep).basis
    assert lp.phi0_of(rep, u) == [one, la.neg(J)]


@pytest.mark.parametrize("sig", [Signature(2, 0), Signature(3, 0), Signature(0, 2), Signature(1, 2)], ids=str)
def test_twisted_composition_law(sig):
    (report,) = lp.twisted_automorphism_check(build_irrep(sig), samples=6)
    assert report["status"] == "pass"


def test_twisted_requires_simple():
    with pytest.raises(ContractError):
        lp.twisted_automorphism_check(build_irrep(Signature(1, 0), eps=1))


def test_factor_reduced_reproduces_vector_product():
    rep = build_irrep(Signature(0, 4))
    a = lp.sample_pin_element(rep, 3, 2)
    fac = lp.factor_reduced(rep, a)
    assert fac is not None and fac.kappa == 0
    assert la.matmul(rep.image(fac.clifford), fac.schur) == a
    assert isinstance(fac.clifford, CliffordElement)
