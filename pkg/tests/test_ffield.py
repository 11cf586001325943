"""Finite fields, polynomials over them, embeddings, root finding."""

import random

import pytest

from wordmetric.ffield import (
    Field,
    FqPoly,
    element_of_order,
    embed,
    factorize,
    find_any_root,
    is_prime,
    make_field,
    min_extension_root,
)

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 4), (5, 3)]


def test_is_prime_matches_trial_division():
    for n in range(2, 500):
        naive = all(n % d for d in range(2, n))
        assert is_prime(n) == naive


def test_factorize_reassembles():
    rng = random.Random(0)
    for _ in range(100):
        n = rng.randint(2, 10**6)
        prod = 1
        for p, e in factorize(n).items():
            assert is_prime(p)
            prod *= p**e
        assert prod == n


@pytest.mark.parametrize("p,e", FIELDS)
class TestFieldAxioms:
    def test_additive_group(self, p, e):
        F = make_field(p, e)
        rng = random.Random(p * 100 + e)
        for _ in range(30):
            a, b, c = (rng.randrange(F.q) for _ in range(3))
            assert F.add(a, b) == F.add(b, a)
            assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
            assert F.add(a, F.neg(a)) == 0

    def test_multiplicative_group(self, p, e):
        F = make_field(p, e)
        rng = random.Random(p * 200 + e)
        for _ in range(30):
            a = rng.randrange(1, F.q)
            b = rng.randrange(1, F.q)
            assert F.mul(a, F.inv(a)) == 1
            assert F.mul(a, b) == F.mul(b, a)

    def test_distributivity(self, p, e):
        F = make_field(p, e)
        rng = random.Random(p * 300 + e)
        for _ in range(30):
            a, b, c = (rng.randrange(F.q) for _ in range(3))
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))

    def test_frobenius_is_additive(self, p, e):
        F = make_field(p, e)
        rng = random.Random(p * 400 + e)
        for _ in range(20):
            a, b = rng.randrange(F.q), rng.randrange(F.q)
            assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
            assert F.frobenius(a) == F.pow(a, p)

    def test_generator_has_full_order(self, p, e):
        F = make_field(p, e)
        g = F.multiplicative_generator()
        assert F.element_order(g) == F.q - 1


class TestOrders:
    def test_element_of_order(self):
        F = make_field(13, 1)
        for k in (1, 2, 3, 4, 6, 12):
            assert F.element_order(element_of_order(F, k)) == k

    def test_element_of_order_rejects_nondivisor(self):
        F = make_field(7, 1)
        with pytest.raises(ValueError):
            element_of_order(F, 5)


class TestEmbeddings:
    def test_embedding_is_a_ring_hom(self):
        small = make_field(3, 1)
        big = make_field(3, 4)
        f = embed(small, big)
        for a in range(small.q):
            for b in range(small.q):
                assert f(small.add(a, b)) == big.add(f(a), f(b))
                assert f(small.mul(a, b)) == big.mul(f(a), f(b))

    def test_tower_embedding(self):
        small = make_field(2, 2)
        big = make_field(2, 4)
        f = embed(small, big)
        assert f(0) == 0 and f(1) == 1
        orders = {small.element_order(a) for a in range(1, small.q)}
        assert {big.element_order(f(a)) for a in range(1, small.q)} == orders

    def test_incompatible_extension_rejected(self):
        with pytest.raises(ValueError):
            embed(make_field(2, 3), make_field(2, 4))


class TestPolynomials:
    def test_divmod_identity(self):
        F = make_field(5, 1)
        rng = random.Random(7)
        for _ in range(50):
            a = FqPoly(F, [rng.randrange(5) for _ in range(rng.randint(1, 8))])
            b = FqPoly(F, [rng.randrange(5) for _ in range(rng.randint(1, 5))])
            if b.is_zero():
                continue
            q, r = a.divmod(b)
            assert q * b + r == a
            assert r.is_zero() or r.degree < b.degree

    def test_gcd_divides_both(self):
        F = make_field(3, 1)
        rng = random.Random(8)
        for _ in range(50):
            a = FqPoly(F, [rng.randrange(3) for _ in range(rng.randint(1, 6))])
            b = FqPoly(F, [rng.randrange(3) for _ in range(rng.randint(1, 6))])
            if a.is_zero() or b.is_zero():
                continue
            g = a.gcd(b)
            assert (a % g).is_zero() and (b % g).is_zero()

    def test_evaluate_matches_horner_by_hand(self):
        F = make_field(7, 1)
        # 3 + 2X + X^2 at X=4: 3 + 8 + 16 = 27 = 6 mod 7
        poly = FqPoly(F, [3, 2, 1])
        assert poly.evaluate(4) == 6


class TestRoots:
    def test_find_any_root_linear_and_split(self):
        F = make_field(11, 1)
        # (X-3)(X-5) = X^2 - 8X + 15
        poly = FqPoly(F, [15 % 11, (-8) % 11, 1])
        root = find_any_root(poly)
        assert root in (3, 5)

    def test_find_any_root_irreducible_returns_none(self):
        F = make_field(3, 1)
        # X^2 + 1 has no root mod 3
        assert find_any_root(FqPoly(F, [1, 0, 1])) is None

    def test_min_extension_root_degree_bound(self):
        rng = random.Random(9)
        for p in (3, 5, 7):
            F = make_field(p, 1)
            for _ in range(20):
                coeffs = [rng.randrange(p) for _ in range(rng.randint(2, 5))]
                coeffs.append(rng.randrange(1, p))
                poly = FqPoly(F, coeffs)
                l = poly.degree
                found = min_extension_root(poly, l)
                assert found is not None
                m, root, big = found
                assert 1 <= m <= l
                lifted = poly.map_coeffs(embed(F, big) if m > 1 else (lambda a: a), big)
                assert lifted.evaluate(root) == 0
                # minimality: no root in any strictly smaller extension
                for mm in range(1, m):
                    sub = make_field(p, mm)
                    sub_poly = poly.map_coeffs(
                        embed(F, sub) if mm > 1 else (lambda a: a), sub
                    )
                    assert all(sub_poly.evaluate(a) for a in range(sub.q))
