import math
from fractions import Fraction

import numpy as np
import pytest

from pincover import pin2
from pincover.clifford import geometric_product, orthogonal_matrix
from pincover.pin2 import (
    PIN_MINUS,
    PIN_PLUS,
    angle,
    canonical_sign,
    compose,
    e1,
    e2,
    evaluate,
    even,
    inverse,
    is_periodic,
    lift_o2,
    minus_one,
    mul,
    o2_matrix,
    odd,
    one,
    project,
    reflection,
    rotation,
    scalar_value,
)

HALF = Fraction(1, 2)


def test_angle_form_normalizes_constant_mod_two():
    assert angle(const=Fraction(5, 2)) == angle(const=HALF)
    assert angle(theta=1, const=-1) == angle(theta=1, const=1)
    assert angle(theta=HALF) != angle(theta=-HALF)


def test_angle_substitution():
    # theta -> theta + pi, phi -> -phi
    a = angle(theta=-HALF, phi=2)
    image = a.substitute(angle(theta=1, const=1), angle(phi=-1))
    assert image == angle(theta=-HALF, phi=-2, const=-HALF)


def test_sign_absorption():
    x = odd(PIN_MINUS, angle(theta=1, const=HALF))
    assert -x == odd(PIN_MINUS, angle(theta=1, const=Fraction(3, 2)))
    assert -(-x) == x


def test_sphere_deck_square_pin_minus_is_identity():
    # odd(theta + 3pi/2) * odd(theta + pi/2) = even(0) = 1
    a = odd(PIN_MINUS, angle(theta=1, const=Fraction(3, 2)))
    b = odd(PIN_MINUS, angle(theta=1, const=HALF))
    assert mul(a, b) == one(PIN_MINUS)
    assert scalar_value(mul(a, b)) == 1


def test_sphere_deck_square_pin_plus_is_minus_one():
    a = odd(PIN_PLUS, angle(theta=1, const=Fraction(3, 2)))
    b = odd(PIN_PLUS, angle(theta=1, const=HALF))
    assert mul(a, b) == minus_one(PIN_PLUS)
    assert scalar_value(mul(a, b)) == -1


def test_even_inverse():
    for kind in (PIN_PLUS, PIN_MINUS):
        s = angle(theta=HALF, const=Fraction(1, 3))
        assert mul(even(kind, s), even(kind, -s)) == one(kind)


def test_unit_vector_squares():
    assert scalar_value(mul(e1(PIN_PLUS), e1(PIN_PLUS))) == 1
    assert scalar_value(mul(e1(PIN_MINUS), e1(PIN_MINUS))) == -1
    assert scalar_value(mul(e2(PIN_PLUS), e2(PIN_PLUS))) == 1
    assert scalar_value(mul(e2(PIN_MINUS), e2(PIN_MINUS))) == -1


def generators(kind):
    return [
        even(kind, angle(theta=HALF)),
        even(kind, angle(theta=-HALF)),
        even(kind, angle(phi=HALF)),
        even(kind, angle(phi=-HALF)),
        odd(kind, angle()),
        odd(kind, angle(const=HALF)),
        even(kind, angle(const=1)),
    ]


@pytest.mark.parametrize("kind", [PIN_PLUS, PIN_MINUS])
def test_group_laws_exact(kind):
    gens = generators(kind)
    for x in gens:
        assert mul(x, inverse(x)) == one(kind)
        assert mul(inverse(x), x) == one(kind)
        for y in gens:
            for z in gens:
                assert mul(mul(x, y), z) == mul(x, mul(y, z))


@pytest.mark.parametrize("kind", [PIN_PLUS, PIN_MINUS])
def test_project_is_two_to_one_homomorphism(kind):
    gens = generators(kind)
    for x in gens:
        for y in gens:
            assert project(mul(x, y)) == compose(project(x), project(y))
        plus, minus = lift_o2(project(x), kind)
        assert {plus, minus} == {canonical_sign(x), -canonical_sign(x)}
        assert minus == -plus


def test_project_rotation_lift():
    # R~_theta = even(theta/2) covers the rotation by theta (pin-)
    x = even(PIN_MINUS, angle(theta=HALF))
    assert project(x) == rotation(angle(theta=1))
    # +- lifts project equally
    assert project(-x) == project(x)


def test_project_e1_is_j1():
    for kind in (PIN_PLUS, PIN_MINUS):
        assert project(e1(kind)) == pin2.J1
        mat = o2_matrix(project(e1(kind)))
        assert np.allclose(mat, np.diag([-1.0, 1.0]))


def test_lift_rotation():
    got = lift_o2(rotation(angle(theta=1)), PIN_MINUS)
    assert got == (even(PIN_MINUS, angle(theta=HALF)),
                   even(PIN_MINUS, angle(theta=HALF, const=1)))


def test_lift_sphere_reflection():
    for kind in (PIN_PLUS, PIN_MINUS):
        got = lift_o2(reflection(angle(theta=1, const=HALF)), kind)
        assert got == (odd(kind, angle(theta=1, const=HALF)),
                       odd(kind, angle(theta=1, const=Fraction(3, 2))))


def test_lift_j2_is_plus_minus_e2():
    for kind in (PIN_PLUS, PIN_MINUS):
        got = lift_o2(pin2.J2, kind)
        assert got == (e2(kind), -e2(kind))


def test_evaluate_basis():
    for kind in (PIN_PLUS, PIN_MINUS):
        for t0 in (0.0, 1.3):
            u = evaluate(one(kind), t0)
            assert abs(u.coefficient(0) - 1.0) < 1e-12
            v = evaluate(e2(kind), t0)
            assert abs(v.coefficient(0b10) - 1.0) < 1e-12
            assert v.norm() == pytest.approx(1.0)


@pytest.mark.parametrize("kind", [PIN_PLUS, PIN_MINUS])
def test_evaluate_is_homomorphism_against_numeric_oracle(kind):
    rng = np.random.default_rng(5)
    gens = generators(kind)
    worst = 0.0
    for _ in range(1000):
        x = gens[rng.integers(len(gens))]
        y = gens[rng.integers(len(gens))]
        t0, p0 = rng.uniform(0, 2 * math.pi, size=2)
        lhs = evaluate(mul(x, y), t0, p0)
        rhs = geometric_product(evaluate(x, t0, p0), evaluate(y, t0, p0))
        worst = max(worst, (lhs - rhs).norm())
    assert worst < 1e-9


@pytest.mark.parametrize("kind", [PIN_PLUS, PIN_MINUS])
def test_project_consistent_with_twisted_adjoint(kind):
    rng = np.random.default_rng(17)
    for x in generators(kind):
        t0, p0 = rng.uniform(0, 2 * math.pi, size=2)
        numeric = orthogonal_matrix(evaluate(x, t0, p0))
        symbolic = o2_matrix(project(x), t0, p0)
        assert np.allclose(numeric, symbolic, atol=1e-9)


def test_is_periodic():
    # even(-theta/2) picks up -pi under theta -> theta + 2pi: not periodic
    assert not is_periodic(even(PIN_MINUS, angle(theta=-HALF)), 2)
    assert is_periodic(odd(PIN_MINUS, angle(const=HALF)), 2)
    assert is_periodic(even(PIN_MINUS, angle(theta=1)), 2)
    assert is_periodic(even(PIN_MINUS, angle(theta=-HALF, phi=1)), 2, var="phi")
    assert not is_periodic(even(PIN_MINUS, angle(phi=HALF)), 2, var="phi")


def test_kind_mismatch_raises():
    with pytest.raises(ValueError):
        mul(one(PIN_PLUS), one(PIN_MINUS))


def test_canonical_sign():
    x = even(PIN_MINUS, angle(theta=1, const=Fraction(7, 4)))
    assert canonical_sign(x) == -x
    y = even(PIN_MINUS, angle(theta=1, const=Fraction(3, 4)))
    assert canonical_sign(y) == y
