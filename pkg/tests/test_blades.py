import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cliffpin.blades import (
    CliffordElement,
    InvolutionKind,
    NormKind,
    Signature,
    clifford_product,
    format_element,
    improved_reversion,
    involution,
    norm,
    parity,
    parse_element,
    reversion,
    signatures_up_to,
    solve_center_and_twisted_center,
    twisted_reversion,
    volume_element,
)
from cliffpin.errors import InputError, ResourceLimitError, SignatureMismatchError
from cliffpin.kernels import blade_sign

import oracles


def e(sig, *idx):
    x = CliffordElement.scalar(sig, 1)
    for i in idx:
        x = x * CliffordElement.generator(sig, i)
    return x


def random_element(rng, sig, nterms=4):
    n = 1 << sig.d
    return CliffordElement(
        sig, {rng.randrange(n): Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(nterms)}
    )


# ---------------------------------------------------------------- products


def test_generator_square_positive():
    sig = Signature(1, 0)
    assert e(sig, 1) * e(sig, 1) == CliffordElement.scalar(sig, 1)


def test_bivector_square_in_quaternions():
    sig = Signature(0, 2)
    b = e(sig, 1, 2)
    assert b * b == CliffordElement.scalar(sig, -1)


def test_product_matches_regular_representation():
    sig = Signature(2, 1)
    a, b = e(sig, 1, 2, 3), e(sig, 2)
    La = oracles.left_regular_matrix(2, 3, oracles.to_words(a))
    Lb = oracles.left_regular_matrix(2, 3, oracles.to_words(b))
    # first column of L(a)L(b) is the coordinate vector of ab
    col = [row[0] for row in oracles.matmul(La, Lb)]
    words = oracles.all_words(3)
    expected = oracles.from_words(sig, {w: c for w, c in zip(words, col) if c})
    assert clifford_product(a, b) == expected
    assert expected == CliffordElement.blade(sig, 0b101, -1)


@pytest.mark.parametrize("sig", signatures_up_to(5), ids=str)
def test_blade_sign_matches_word_sorting(sig):
    n = 1 << sig.d
    for a in range(n):
        for b in range(n):
            sign, word = oracles.word_product(
                sig.p,
                [i + 1 for i in range(sig.d) if a >> i & 1],
                [i + 1 for i in range(sig.d) if b >> i & 1],
            )
            assert blade_sign(a, b, sig.neg_mask) == sign
            assert word == tuple(i + 1 for i in range(sig.d) if (a ^ b) >> i & 1)


@given(oracles.sig_and_elements(2))
def test_product_matches_word_oracle(data):
    sig, a, b = data
    expected = oracles.element_product(sig.p, oracles.to_words(a), oracles.to_words(b))
    assert a * b == oracles.from_words(sig, expected)


@pytest.mark.parametrize("sig", signatures_up_to(6), ids=str)
def test_associativity(sig):
    rng = random.Random(sig.p * 31 + sig.q)
    for _ in range(200):
        a, b, c = (random_element(rng, sig, 3) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_signature_mismatch_rejected():
    with pytest.raises(SignatureMismatchError):
        e(Signature(1, 0), 1) * e(Signature(0, 1), 1)
    with pytest.raises(InputError):
        e(Signature(2, 0), 1) + e(Signature(1, 1), 1)


@pytest.mark.parametrize("p,q", [(-1, 2), (0, 0)])
def test_bad_signature(p, q):
    with pytest.raises(InputError):
        Signature(p, q)


# ------------------------------------------------------------- involutions


def test_parity_fixes_even_blade():
    sig = Signature(2, 0)
    assert parity(e(sig, 1, 2)) == e(sig, 1, 2)


def test_reversion_of_trivector():
    sig = Signature(3, 0)
    assert reversion(e(sig, 1, 2, 3)) == -e(sig, 1, 2, 3)


def test_improved_reversion_of_volume():
    sig = Signature(3, 0)
    nu = volume_element(sig)
    assert improved_reversion(nu) == -nu


@given(oracles.sig_and_elements(1))
def test_involution_group(data):
    sig, a = data
    for f in (parity, reversion, twisted_reversion, improved_reversion):
        assert f(f(a)) == a
    assert twisted_reversion(a) == reversion(parity(a))
    assert twisted_reversion(a) == parity(reversion(a))


@given(oracles.sig_and_elements(2))
def test_reversions_are_anti_automorphisms(data):
    sig, a, b = data
    assert reversion(a * b) == reversion(b) * reversion(a)
    assert twisted_reversion(a * b) == twisted_reversion(b) * twisted_reversion(a)
    assert improved_reversion(a * b) == improved_reversion(b) * improved_reversion(a)
    assert parity(a * b) == parity(a) * parity(b)


@given(oracles.sig_and_elements(1, max_terms=1))
def test_reversion_reverses_words(data):
    sig, a = data
    # reverse the word and re-multiply generator by generator
    for w, c in oracles.to_words(a).items():
        rev = CliffordElement.scalar(sig, c)
        for g in reversed(w):
            rev = rev * CliffordElement.generator(sig, g)
        assert reversion(a) == rev


@pytest.mark.parametrize("sig", signatures_up_to(7), ids=str)
def test_improved_reversion_preserves_volume_class(sig):
    nu = volume_element(sig)
    tau_nu = improved_reversion(nu)
    assert tau_nu in (nu, -nu)
    # the improved reversion fixes grade one only up to the parity twist
    v = CliffordElement.generator(sig, 1)
    assert improved_reversion(v) in (v, -v)


# ------------------------------------------------------------------- norms


def test_norms_of_unit_vector():
    sig = Signature(1, 0)
    assert norm(NormKind.N, e(sig, 1)) == CliffordElement.scalar(sig, 1)
    assert norm(NormKind.NTWISTED, e(sig, 1)) == CliffordElement.scalar(sig, -1)


def test_improved_norm_of_hyperbolic_zero_divisor():
    sig = Signature(1, 0)
    one = CliffordElement.scalar(sig, 1)
    assert norm(NormKind.NIMPROVED, one + volume_element(sig)).is_zero()


@given(oracles.signatures(), st.data())
def test_twisted_norm_on_homogeneous_parts(sig, data):
    for grades, sign in (([0, 2, 4, 6], 1), ([1, 3, 5], -1)):
        a = data.draw(oracles.elements(sig, grades=set(grades)))
        assert norm(NormKind.NTWISTED, a) == sign * norm(NormKind.N, a)


@given(oracles.signatures(), st.data())
def test_norm_multiplicative_on_vector_products(sig, data):
    k = data.draw(st.integers(1, 5))
    g = CliffordElement.scalar(sig, 1)
    expected = Fraction(1)
    for _ in range(k):
        coords = data.draw(st.lists(oracles.fractions, min_size=sig.d, max_size=sig.d))
        h = sum(Fraction(sig.metric(i)) * c * c for i, c in enumerate(coords))
        if h == 0:
            continue
        g = g * CliffordElement.vector(sig, coords)
        expected *= h
    assert norm(NormKind.N, g) == CliffordElement.scalar(sig, expected)


# ----------------------------------------------------------- volume element


@pytest.mark.parametrize("sig", signatures_up_to(9), ids=str)
def test_volume_law(sig):
    nu = volume_element(sig)
    s = oracles.sigma(sig.p, sig.q)
    one = CliffordElement.scalar(sig, 1)
    assert nu * nu == s * one
    assert reversion(nu) == (-1) ** (sig.d // 2) * nu
    nu_inv = s * nu
    assert nu * nu_inv == one
    assert reversion(nu) == (-1) ** sig.q * nu_inv


@pytest.mark.parametrize("p,q,expected", [(10, 1, 1), (3, 0, -1), (1, 1, 1)])
def test_volume_square_examples(p, q, expected):
    sig = Signature(p, q)
    nu = volume_element(sig)
    assert nu * nu == CliffordElement.scalar(sig, expected)


# ------------------------------------------------------------------ center


def brute_center(sig):
    """Blades commuting (resp. anticommuting) with every generator."""
    z, a = [], []
    for w in oracles.all_words(sig.d):
        signs = set()
        for g in range(1, sig.d + 1):
            s1, _ = oracles.word_product(sig.p, (g,), w)
            s2, _ = oracles.word_product(sig.p, w, (g,))
            signs.add(s1 * s2)
        if signs == {1}:
            z.append(w)
        elif signs == {-1}:
            a.append(w)
    return z, a


@pytest.mark.parametrize("sig", signatures_up_to(5), ids=str)
def test_center_against_brute_force(sig):
    z, a = solve_center_and_twisted_center(sig)
    bz, ba = brute_center(sig)
    # every basis element is a single blade, so compare the supports
    assert all(len(x.terms) == 1 for x in z + a)
    assert sorted(w for x in z for w in oracles.to_words(x)) == sorted(bz)
    assert sorted(w for x in a for w in oracles.to_words(x)) == sorted(ba)


def test_center_examples():
    sig = Signature(2, 0)
    one, nu = CliffordElement.scalar(sig, 1), volume_element(sig)
    assert solve_center_and_twisted_center(sig) == ([one], [nu])
    for sig in (Signature(1, 0), Signature(1, 2)):
        one, nu = CliffordElement.scalar(sig, 1), volume_element(sig)
        assert solve_center_and_twisted_center(sig) == ([one, nu], [])


def test_center_bound():
    with pytest.raises(ResourceLimitError):
        solve_center_and_twisted_center(Signature(7, 0), max_dim=6)


# -------------------------------------------------------------- text format


@pytest.mark.parametrize(
    "text,canonical",
    [
        ("e2e1", "-1*e1e2"),
        ("1/2 + e1", "1/2 + 1*e1"),
        ("3*e1e1", "3"),
        ("-2*e3 + 2*e3", "0"),
        ("e1e2e1", "-1*e2"),
    ],
)
def test_parse_examples(text, canonical):
    assert format_element(parse_element(Signature(3, 0), text)) == canonical


@pytest.mark.parametrize("text", ["", "e9", "x*e1", "1/0*e1", "+"])
def test_parse_rejects(text):
    with pytest.raises(InputError):
        parse_element(Signature(3, 0), text)


@given(oracles.sig_and_elements(1))
def test_format_round_trip(data):
    sig, a = data
    assert parse_element(sig, format_element(a)) == a
