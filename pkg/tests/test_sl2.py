"""SL2 over finite fields: projective action, classifier, trace machinery."""

import itertools
import random

import pytest

from wordmetric.ffield import embed, make_field
from wordmetric.perms import Permutation
from wordmetric.sl2 import (
    SL2Elem,
    classify_cycle_type,
    evaluate_word_sl2,
    isotypic_word_value,
    near_cycle_word_value,
    projective_permutation,
    solve_trace,
    unipotent_trace_poly,
)
from wordmetric.words import parse_word


def all_sl2(field):
    for a, b, c, d in itertools.product(range(field.q), repeat=4):
        if field.sub(field.mul(a, d), field.mul(b, c)) == 1:
            yield SL2Elem(field, a, b, c, d)


def random_sl2(field, rng):
    while True:
        a, b, c = (rng.randrange(field.q) for _ in range(3))
        if a:
            # d = (1 + bc) / a
            d = field.mul(field.add(1, field.mul(b, c)), field.inv(a))
            return SL2Elem(field, a, b, c, d)


class TestGroupStructure:
    def test_mul_inverse_identity(self):
        F = make_field(7, 1)
        rng = random.Random(0)
        for _ in range(50):
            g = random_sl2(F, rng)
            h = random_sl2(F, rng)
            assert (g * g.inverse()) == SL2Elem.identity(F)
            assert (g * h).inverse() == h.inverse() * g.inverse()

    def test_order_annihilates(self):
        for p, e in ((5, 1), (7, 1), (3, 2)):
            F = make_field(p, e)
            rng = random.Random(p + e)
            for _ in range(30):
                g = random_sl2(F, rng)
                o = g.order()
                assert g**o == SL2Elem.identity(F)
                for d in range(1, o):
                    if o % d == 0:
                        assert g**d != SL2Elem.identity(F)

    def test_projective_action_is_a_homomorphism(self):
        F = make_field(5, 1)
        rng = random.Random(1)
        for _ in range(40):
            g = random_sl2(F, rng)
            h = random_sl2(F, rng)
            assert projective_permutation(g * h) == projective_permutation(
                g
            ) * projective_permutation(h)


class TestClassifier:
    @pytest.mark.parametrize("p,e", [(2, 1), (3, 1), (5, 1), (2, 2)])
    def test_matches_enumeration_small(self, p, e):
        F = make_field(p, e)
        for g in all_sl2(F):
            assert classify_cycle_type(g) == projective_permutation(g).cycle_type()

    def test_central_elements_fix_everything(self):
        F = make_field(7, 1)
        minus = SL2Elem(F, 6, 0, 0, 6)
        assert classify_cycle_type(minus) == ((1, 8),)

    def test_unipotent_shape(self):
        F = make_field(9 // 3, 2)  # F_9
        g = SL2Elem(F, 1, 1, 0, 1)
        assert classify_cycle_type(g) == ((1, 1), (3, 3))


class TestTracePolynomial:
    def test_commutator_closed_form(self):
        # tr [x,y](g_U, h) = U^2 + 2 for the standard unipotent pair
        for p in (5, 7, 11):
            F = make_field(p, 1)
            poly = unipotent_trace_poly(parse_word("[x,y]"), F)
            assert list(poly.coeffs) == [2 % p, 0, 1]

    def test_degree_and_leading_coefficient(self):
        rng = random.Random(2)
        for p in (5, 7):
            F = make_field(p, 1)
            for _ in range(20):
                l = rng.randint(1, 3)
                exps = []
                lead = 1
                for _ in range(2 * l):
                    e = rng.choice([-2, -1, 1, 2])
                    exps.append(e)
                prod = 1
                for e in exps:
                    prod = prod * e % p
                if prod % p == 0:
                    continue
                text = " ".join(
                    f"{'x' if i % 2 == 0 else 'y'}^{e}" for i, e in enumerate(exps)
                )
                poly = unipotent_trace_poly(parse_word(text), F)
                assert poly.degree == l
                assert poly.leading() == prod % p

    def test_trace_poly_matches_direct_evaluation(self):
        F = make_field(11, 1)
        w = parse_word("x^-1 y^-1 x y^2")
        poly = unipotent_trace_poly(w, F)
        for u in range(11):
            g = SL2Elem(F, 1, 0, u, 1)
            h = SL2Elem(F, 1, 1, 0, 1)
            assert poly.evaluate(u) == evaluate_word_sl2(w, g, h).trace()


class TestSolveTrace:
    @pytest.mark.parametrize("p,e", [(5, 1), (7, 1), (3, 2)])
    def test_hits_every_trace(self, p, e):
        F = make_field(p, e)
        w = parse_word("[x,y]")
        for t in range(F.q):
            sol = solve_trace(w, F, t)
            assert sol.m <= 2
            expected = t if sol.m == 1 else embed(F, sol.field)(t)
            assert evaluate_word_sl2(w, sol.g, sol.h).trace() == expected

    def test_swapped_word(self):
        F = make_field(7, 1)
        w = parse_word("[y,x]")
        for t in range(7):
            sol = solve_trace(w, F, t)
            expected = t if sol.m == 1 else embed(F, sol.field)(t)
            assert evaluate_word_sl2(w, sol.g, sol.h).trace() == expected


class TestIsotypic:
    def test_cycle_structure(self):
        w = parse_word("[x,y]")
        iso = isotypic_word_value(w, 2, make_field(5, 1))
        sigma = iso.sigma
        q = iso.field.q
        assert sigma.cycle_type() == ((1, 2), (2, (q - 1) // 2))

    def test_preimages_re_evaluate(self):
        w = parse_word("[x,y]")
        for k, p in ((2, 5), (3, 7), (5, 11)):
            iso = isotypic_word_value(w, k, make_field(p, 1))
            assert iso.sigma == projective_permutation(
                evaluate_word_sl2(w, iso.g, iso.h)
            )

    def test_two_fixed_points_rest_k_cycles(self):
        w = parse_word("x^-1 y^-1 x y^2")
        iso = isotypic_word_value(w, 3, make_field(7, 1))
        pairs = dict(iso.sigma.cycle_type())
        assert pairs[1] == 2
        assert set(pairs) == {1, 3}


class TestNearCycle:
    def test_defect_bound(self):
        w = parse_word("[x,y]")
        for p in (11, 13, 17):
            F = make_field(p, 1)
            near = near_cycle_word_value(w, F)
            assert near.sigma == projective_permutation(
                evaluate_word_sl2(w, near.g, near.h)
            )
            cycles = len(near.sigma.cycles())
            assert cycles == max(1, near.defect)

    def test_requires_large_field(self):
        with pytest.raises(ValueError):
            near_cycle_word_value(parse_word("[x,y]"), make_field(5, 1))
