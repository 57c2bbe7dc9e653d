"""Ring, derivative, and bracket operations on homogeneous polynomials."""

import random
from fractions import Fraction

import pytest

from quanticflow.algebra import (
    BinaryQuantic,
    HomogeneousPoly,
    add,
    evaluate,
    evaluate_float,
    jacobian,
    mul,
    partial_p,
    partial_q,
    poisson,
    poly_pow,
    scale,
    source,
)

P = HomogeneousPoly.monomial(1, 0)  # p
Q = HomogeneousPoly.monomial(1, 1)  # q


def poly(degree, coeffs):
    return HomogeneousPoly.make(degree, coeffs)


def rand_poly(rng, degree, lo=-6, hi=6):
    return poly(degree, [rng.randint(lo, hi) for _ in range(degree + 1)])


class TestExpand:
    def test_fermat_quintic(self):
        u = BinaryQuantic.make(5, [1, 0, 0, 0, 0, 1])
        assert u.expand() == poly(5, [1, 0, 0, 0, 0, 1])

    def test_binomial_factor(self):
        # binom(5,1) = 5, so a = (0,1,0,0,0,0) expands to 5 p^4 q
        u = BinaryQuantic.make(5, [0, 1, 0, 0, 0, 0])
        assert u.expand() == poly(5, [0, 5, 0, 0, 0, 0])

    def test_square_of_binomial(self):
        u = BinaryQuantic.make(2, [1, 1, 1])
        assert u.expand() == poly(2, [1, 2, 1])  # (p+q)^2

    def test_roundtrip_random(self):
        rng = random.Random(7)
        for _ in range(100):
            n = rng.randint(1, 10)
            u = BinaryQuantic.make(
                n, [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n + 1)]
            )
            assert BinaryQuantic.contract(u.expand()) == u


class TestDerivatives:
    def test_partial_p(self):
        assert partial_p(poly(5, [1, 0, 0, 0, 0, 1])) == poly(4, [5, 0, 0, 0, 0])

    def test_partial_q(self):
        assert partial_q(poly(5, [0, 5, 0, 0, 0, 0])) == poly(4, [5, 0, 0, 0, 0])

    def test_degree_zero_derivative_is_zero(self):
        c = poly(0, [3])
        assert partial_p(c).is_zero and partial_q(c).is_zero

    def test_euler_identity_explicit(self):
        x = HomogeneousPoly.monomial(5, 2)  # p^3 q^2
        lhs = mul(P, partial_p(x)) + mul(Q, partial_q(x))
        assert lhs == scale(x, 5)

    def test_euler_identity_random(self):
        rng = random.Random(11)
        for _ in range(200):
            d = rng.randint(1, 9)
            x = rand_poly(rng, d)
            assert mul(P, partial_p(x)) + mul(Q, partial_q(x)) == scale(x, d)


class TestRingOps:
    def test_product_of_conjugates(self):
        assert mul(poly(1, [1, 1]), poly(1, [1, -1])) == poly(2, [1, 0, -1])

    def test_pow(self):
        assert poly_pow(HomogeneousPoly.monomial(2, 1), 3) == HomogeneousPoly.monomial(6, 3)

    def test_add(self):
        assert add(poly(2, [1, 0, 0]), poly(2, [0, 1, 0])) == poly(2, [1, 1, 0])

    def test_add_degree_mismatch_rejected(self):
        with pytest.raises(ValueError, match="degree mismatch"):
            add(poly(2, [1, 0, 0]), poly(3, [1, 0, 0, 1]))

    def test_add_zero_poly_crosses_degree_class(self):
        z = HomogeneousPoly.zero(5)
        x = poly(2, [1, 2, 3])
        assert add(x, z) == x

    def test_ring_axioms_random(self):
        rng = random.Random(13)
        for _ in range(100):
            d = rng.randint(0, 5)
            x, y, z = (rand_poly(rng, d) for _ in range(3))
            assert mul(mul(x, y), z) == mul(x, mul(y, z))
            assert mul(x, add(y, z)) == add(mul(x, y), mul(x, z))

    def test_zero_poly_equality_across_degrees(self):
        assert HomogeneousPoly.zero(3) == HomogeneousPoly.zero(7)


class TestJacobianPoisson:
    def test_jacobian_p_q(self):
        assert jacobian(P, Q) == poly(0, [1])

    def test_jacobian_self_is_zero(self):
        u = BinaryQuantic.make(6, [1, -2, 3, 0, 1, 2, -1]).expand()
        assert jacobian(u, u).is_zero

    def test_jacobian_worked_example(self):
        # (p^5+q^5, p^3 q^3) = 15 p^7 q^2 - 15 p^2 q^7, by expanding
        # X_p Y_q - X_q Y_p = 5p^4*3p^3q^2 - 5q^4*3p^2q^3
        x = poly(5, [1, 0, 0, 0, 0, 1])
        y = HomogeneousPoly.monomial(6, 3)
        expected = poly(9, [0, 0, 15, 0, 0, 0, 0, -15, 0, 0])
        assert jacobian(x, y) == expected

    def test_poisson_q_p(self):
        assert poisson(Q, P) == poly(0, [1])

    def test_antisymmetry_and_leibniz_random(self):
        rng = random.Random(17)
        for _ in range(100):
            x = rand_poly(rng, rng.randint(1, 5))
            y = rand_poly(rng, rng.randint(1, 5))
            z = rand_poly(rng, rng.randint(1, 5))
            assert jacobian(x, y) == -jacobian(y, x)
            assert poisson(x, y) + poisson(y, x) == HomogeneousPoly.zero(
                x.degree + y.degree - 2
            )
            assert jacobian(x, mul(y, z)) == (
                mul(y, jacobian(x, z)) + mul(z, jacobian(x, y))
            )


class TestEvalSource:
    def test_eval_values(self):
        x = poly(5, [1, 0, 0, 0, 0, 1])
        assert evaluate(x, 1, 1) == 2
        assert evaluate(x, 2, 1) == 33
        assert evaluate(HomogeneousPoly.monomial(6, 3), 1, 1) == 1

    def test_eval_homogeneity(self):
        rng = random.Random(19)
        for _ in range(50):
            d = rng.randint(1, 7)
            x = rand_poly(rng, d)
            lam = Fraction(rng.randint(1, 5), rng.randint(1, 5))
            p0, q0 = Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))
            assert evaluate(x, lam * p0, lam * q0) == lam ** d * evaluate(x, p0, q0)

    def test_eval_float_matches_exact(self):
        x = poly(4, [1, -2, 3, -4, 5])
        assert evaluate_float(x, 1.5, -0.5) == pytest.approx(
            float(evaluate(x, Fraction(3, 2), Fraction(-1, 2))), rel=1e-14
        )

    def test_source(self):
        assert source(HomogeneousPoly.monomial(6, 3)) == 0
        assert source(HomogeneousPoly.monomial(9, 0, 2)) == 2
        u = BinaryQuantic.make(7, [Fraction(3, 4), 1, 0, 0, 2, 0, 0, -1])
        assert source(u.expand()) == Fraction(3, 4)


class TestQuanticJson:
    def test_roundtrip(self):
        u = BinaryQuantic.make(5, ["1", "-2/3", "0", "4", "0", "1/7"])
        assert BinaryQuantic.from_json_dict(u.to_json_dict()) == u

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError, match="exactly"):
            BinaryQuantic.from_json_dict({"order": 5, "coefficients": ["1", "2"]})

    def test_bad_rational_rejected(self):
        with pytest.raises(ValueError):
            BinaryQuantic.from_json_dict(
                {"order": 1, "coefficients": ["1", "x/y"]}
            )
