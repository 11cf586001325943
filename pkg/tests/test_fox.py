"""Fox derivatives, membership chain, p_w, root counting, SU certificates."""

import random

import pytest

from wordmetric.fox import (
    IN_F2PRIME_NOT_F2SECOND,
    IN_F2SECOND,
    NOT_IN_F2PRIME,
    SURJECTIVE,
    SURJECTIVE_TRIVIALLY,
    UNKNOWN,
    GroupRingElem,
    LaurentPoly1,
    abelianized_derivatives,
    count_Wn,
    derived_membership,
    fox_derivative,
    fox_identity_holds,
    specialize_details,
    specialize_pw,
    su_certificate,
)
from wordmetric.words import Word, parse_word


def random_word(rng, max_syllables=6):
    letters = []
    for _ in range(rng.randint(1, max_syllables)):
        letters.append((rng.choice("xy"), rng.choice([-3, -2, -1, 1, 2, 3])))
    return Word(tuple(letters))


class TestGroupRing:
    def test_ring_axioms_random(self):
        rng = random.Random(0)
        for _ in range(30):
            a = GroupRingElem.of(random_word(rng), rng.randint(-3, 3))
            b = GroupRingElem.of(random_word(rng), rng.randint(-3, 3))
            c = GroupRingElem.of(random_word(rng), rng.randint(-3, 3))
            assert (a + b) * c == a * c + b * c
            assert a * (b + c) == a * b + a * c
            assert (a * b) * c == a * (b * c)
            assert a + b == b + a

    def test_no_zero_coefficients_stored(self):
        a = GroupRingElem.of(parse_word("x"), 2)
        b = GroupRingElem.of(parse_word("x"), -2)
        assert (a + b).is_zero()
        assert not (a + b).terms


class TestFoxDerivative:
    def test_generators(self):
        x = parse_word("x")
        assert fox_derivative(x, "x") == GroupRingElem.one()
        assert fox_derivative(x, "y").is_zero()

    def test_inverse_rule(self):
        # d(x^-1)/dx = -x^-1
        d = fox_derivative(parse_word("x^-1"), "x")
        assert d == GroupRingElem.of(parse_word("x^-1"), -1)

    def test_fundamental_identity_random(self):
        rng = random.Random(1)
        for _ in range(50):
            assert fox_identity_holds(random_word(rng))

    def test_power_formula(self):
        # d(x^a)/dx = 1 + x + ... + x^{a-1}
        d = fox_derivative(parse_word("x^3"), "x")
        expected = (
            GroupRingElem.one()
            + GroupRingElem.of(parse_word("x"))
            + GroupRingElem.of(parse_word("x^2"))
        )
        assert d == expected


class TestMembership:
    def test_chain_examples(self):
        assert derived_membership(parse_word("x y")) == NOT_IN_F2PRIME
        assert derived_membership(parse_word("[x,y]")) == IN_F2PRIME_NOT_F2SECOND
        assert (
            derived_membership(parse_word("[[x,y],[x,y^2]]")) == IN_F2SECOND
        )

    def test_trivial_rejected(self):
        with pytest.raises(ValueError):
            derived_membership(Word(()))

    def test_commutators_of_generators(self):
        for a in range(1, 4):
            for b in range(1, 4):
                w = parse_word(f"[x^{a},y^{b}]")
                assert derived_membership(w) == IN_F2PRIME_NOT_F2SECOND


class TestSpecialization:
    def test_commutator_closed_form(self):
        # p_{[x^a,y^b]} = -b (X^{-a} - 1) up to units
        for a in range(1, 6):
            for b in range(1, 6):
                p = specialize_pw(parse_word(f"[x^{a},y^{b}]"))
                expected = LaurentPoly1({-a: -b, 0: b})
                assert p.equals_up_to_units(expected)

    def test_specialization_nonzero(self):
        rng = random.Random(2)
        found = 0
        while found < 20:
            w = random_word(rng)
            if w.cyclic_reduce().is_trivial():
                continue
            if derived_membership(w) != IN_F2PRIME_NOT_F2SECOND:
                continue
            found += 1
            spec = specialize_details(w)
            assert not spec.p.is_zero()

    def test_rejects_wrong_membership(self):
        with pytest.raises(ValueError):
            specialize_pw(parse_word("x"))
        with pytest.raises(ValueError):
            specialize_pw(parse_word("[[x,y],[x,y^2]]"))


class TestRootCounting:
    def test_commutator_wn(self):
        p = specialize_pw(parse_word("[x,y]"))
        # p ~ X^{-1} - 1: the only root of unity is 1, but 1 is an nth root
        # for every n, so |W_n| = 1 always
        for n in range(1, 15):
            assert count_Wn(p, n) == 1

    def test_counts_match_explicit_roots(self):
        # p = X^2 - 1 has roots ±1
        p = LaurentPoly1({0: -1, 2: 1})
        assert count_Wn(p, 1) == 1
        assert count_Wn(p, 2) == 2
        assert count_Wn(p, 3) == 1
        assert count_Wn(p, 4) == 2

    def test_no_roots(self):
        p = LaurentPoly1({0: 2})  # constant 2: no roots at all
        assert count_Wn(p, 6) == 0

    def test_zero_poly_rejected(self):
        with pytest.raises(ValueError):
            count_Wn(LaurentPoly1({}), 3)


class TestCertificates:
    def test_surjective(self):
        cert = su_certificate(parse_word("[x,y]"), 9)
        assert cert.verdict == SURJECTIVE
        assert cert.wn == 1

    def test_trivially_surjective(self):
        cert = su_certificate(parse_word("x y"), 4)
        assert cert.verdict == SURJECTIVE_TRIVIALLY

    def test_unknown_for_second_derived(self):
        cert = su_certificate(parse_word("[[x,y],[x,y^2]]"), 5)
        assert cert.verdict == UNKNOWN

    def test_serialization_round_trip(self):
        import json

        cert = su_certificate(parse_word("[x^2,y^3]"), 6)
        blob = json.dumps(cert.to_dict(), sort_keys=True)
        assert json.loads(blob)["verdict"] == cert.verdict


class TestInvolutionConsistency:
    def test_derivatives_vanish_iff_second_derived(self):
        rng = random.Random(3)
        for _ in range(50):
            w = random_word(rng)
            if w.cyclic_reduce().is_trivial():
                continue
            dx, dy = abelianized_derivatives(w)
            if w.abelianization() == (0, 0):
                both_zero = dx.is_zero() and dy.is_zero()
                assert both_zero == (derived_membership(w) == IN_F2SECOND)
