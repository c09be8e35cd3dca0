import math

import numpy as np
import pytest

from pincover.clifford import (
    Multivector,
    Signature,
    bilinear_form,
    fiber_group_tag,
    geometric_product,
    is_pin_element,
    lift_orthogonal,
    orthogonal_matrix,
    twisted_adjoint,
)

TOL = 1e-9


def rotation2(t):
    return np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])


def random_orthogonal(rng, n):
    q, r = np.linalg.qr(rng.normal(size=(n, n)))
    return q * np.sign(np.diag(r))


def random_multivector(rng, sig):
    masks = rng.integers(0, 1 << sig.n, size=4)
    return Multivector(sig, {int(m): float(c) for m, c in zip(masks, rng.normal(size=4))})


def test_square_of_e1_negative_signature():
    sig = Signature(0, 2)
    e1 = Multivector.basis_vector(sig, 0)
    assert (e1 * e1).approx_eq(Multivector.scalar(sig, -1.0))


def test_bivector_square_positive_signature():
    sig = Signature(2, 0)
    e1 = Multivector.basis_vector(sig, 0)
    e2 = Multivector.basis_vector(sig, 1)
    e12 = e1 * e2
    assert e12.coefficient(0b11) == 1.0
    assert (e12 * e12).approx_eq(Multivector.scalar(sig, -1.0))
    assert (e2 * e1).approx_eq(-e12)


def test_plus_minus_e1_has_order_four_in_negative_signature():
    # {+-1, +-e1} contains an order-4 element exactly when e1^2 = -1
    for n in range(1, 4):
        sig = Signature(0, n)
        e1 = Multivector.basis_vector(sig, 0)
        sq = e1 * e1
        assert sq.approx_eq(Multivector.scalar(sig, -1.0))
        fourth = sq * sq
        assert fourth.approx_eq(Multivector.scalar(sig, 1.0))


@pytest.mark.parametrize("n", range(1, 7))
def test_fiber_group_tags(n):
    assert fiber_group_tag(Signature(0, n)) == "Z4"
    assert fiber_group_tag(Signature(n, 0)) == "Z2xZ2"


@pytest.mark.parametrize("sig", [Signature(3, 0), Signature(0, 3)])
def test_reflection_action_of_e1(sig):
    e1 = Multivector.basis_vector(sig, 0)
    e2 = Multivector.basis_vector(sig, 1)
    assert twisted_adjoint(e1, e1).approx_eq(-e1)
    assert twisted_adjoint(e1, e2).approx_eq(e2)


def test_rotor_rotation_angle_matches_matrix_oracle():
    # u = cos(t/2) + sin(t/2) e1e2 acting on e1, against a 2x2 rotation matrix
    t = math.pi / 3
    for sig in (Signature(2, 0), Signature(0, 2)):
        u = Multivector(sig, {0: math.cos(t / 2), 0b11: math.sin(t / 2)})
        rotated = twisted_adjoint(u, Multivector.basis_vector(sig, 0)).vector_part()
        # the adjoint of the rotor rotates by t, with orientation fixed by e1^2
        expected = rotation2(t if sig.q == 2 else -t) @ np.array([1.0, 0.0])
        assert np.allclose(rotated, expected, atol=TOL)


def test_associativity_random():
    rng = np.random.default_rng(7)
    for sig in (Signature(3, 0), Signature(0, 3), Signature(0, 5)):
        for _ in range(200):
            a, b, c = (random_multivector(rng, sig) for _ in range(3))
            assert ((a * b) * c).approx_eq(a * (b * c), tol=1e-9 * 100)


def test_vector_anticommutator_is_twice_bilinear_form():
    rng = np.random.default_rng(11)
    for sig in (Signature(4, 0), Signature(0, 4)):
        for _ in range(200):
            v = Multivector.from_vector(sig, rng.normal(size=sig.n))
            w = Multivector.from_vector(sig, rng.normal(size=sig.n))
            lhs = v * w + w * v
            rhs = Multivector.scalar(sig, 2.0 * bilinear_form(v, w))
            assert lhs.approx_eq(rhs, tol=TOL * 100)


def test_twisted_adjoint_preserves_metric():
    rng = np.random.default_rng(13)
    for sig in (Signature(3, 0), Signature(0, 3)):
        m = random_orthogonal(rng, sig.n)
        u, _ = lift_orthogonal(m, sig)
        for _ in range(50):
            v = Multivector.from_vector(sig, rng.normal(size=sig.n))
            w = Multivector.from_vector(sig, rng.normal(size=sig.n))
            lhs = bilinear_form(twisted_adjoint(u.value, v), twisted_adjoint(u.value, w))
            assert abs(lhs - bilinear_form(v, w)) < 1e-8


def test_lift_identity():
    for sig in (Signature(2, 0), Signature(0, 2)):
        u, v = lift_orthogonal(np.eye(2), sig)
        assert u.value.approx_eq(Multivector.scalar(sig, 1.0))
        assert v.value.approx_eq(Multivector.scalar(sig, -1.0))
        assert u.factor_count == 0


def test_lift_j1_is_plus_minus_e1():
    j1 = np.diag([-1.0, 1.0, 1.0])
    for sig in (Signature(3, 0), Signature(0, 3)):
        u, v = lift_orthogonal(j1, sig)
        e1 = Multivector.basis_vector(sig, 0)
        assert u.value.approx_eq(e1)
        assert v.value.approx_eq(-e1)
        assert u.parity == "odd"


def test_lift_quarter_turn_round_trip():
    m = rotation2(math.pi / 2)
    for sig in (Signature(2, 0), Signature(0, 2)):
        u, minus_u = lift_orthogonal(m, sig)
        assert np.allclose(orthogonal_matrix(u), m, atol=TOL)
        assert np.allclose(orthogonal_matrix(minus_u), m, atol=TOL)
        assert u.parity == "even"
        # the lift is +-(cos(pi/4) + sin(pi/4) e1e2) up to the bivector sign
        assert abs(abs(u.value.coefficient(0)) - math.cos(math.pi / 4)) < TOL
        assert abs(abs(u.value.coefficient(0b11)) - math.sin(math.pi / 4)) < TOL


def test_lift_round_trip_random():
    rng = np.random.default_rng(2024)
    cases = 0
    while cases < 100:
        n = int(rng.integers(1, 7))
        m = random_orthogonal(rng, n)
        for sig in (Signature(n, 0), Signature(0, n)):
            u, minus_u = lift_orthogonal(m, sig)
            assert np.allclose(orthogonal_matrix(u), m, atol=1e-8)
            assert minus_u.value.approx_eq(-u.value)
            assert is_pin_element(u)
        cases += 1


def test_lift_rejects_non_orthogonal():
    with pytest.raises(ValueError):
        lift_orthogonal(np.array([[1.0, 1.0], [0.0, 1.0]]), Signature(2, 0))


def test_signature_validation():
    with pytest.raises(ValueError):
        Signature(-1, 0)
    with pytest.raises(ValueError):
        Signature(7, 6)


def test_inverse_of_versor():
    sig = Signature(0, 2)
    e1 = Multivector.basis_vector(sig, 0)
    assert geometric_product(e1, e1.inverse()).approx_eq(Multivector.scalar(sig, 1.0))
    zero = Multivector(sig, {})
    with pytest.raises(ValueError):
        zero.inverse()
