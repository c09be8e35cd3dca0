from fractions import Fraction

import pytest

from pincover import pin2
from pincover.pin2 import angle
from pincover.surface import (
    build,
    cover_diagram,
    double,
    jacobian,
    orientation_double_cover,
)

F = Fraction


def test_build_klein_bottle():
    k2 = build("k2")
    assert not k2.orientable
    assert k2.boundary_components == 0
    assert [occ for occ in k2.word.word] == [("a", 1), ("b", 1), ("a", 1), ("b", -1)]
    # (x, 0) ~ (2pi - x, 2pi)
    assert k2.same_point((F(1, 3), 0), (2 - F(1, 3), 2))
    assert k2.same_point((0, F(1, 2)), (2, F(1, 2)))


def test_build_sphere_and_cylinder():
    s2 = build("s2")
    assert s2.model_kind == "two-disc"
    cyl = build("cyl")
    assert cyl.boundary_components == 2
    assert cyl.same_point((0, F(1, 2)), (2, F(1, 2)))
    with pytest.raises(ValueError):
        cyl.reduce((0, 3))


def test_build_families():
    assert build("sigma(3)").euler_characteristic() == 2 - 6
    assert build("n(2,1)").euler_characteristic() == 2 - 4 - 1
    assert build("n(2,2)").euler_characteristic() == 2 - 4 - 2
    assert build("sigma(1)").name == "t2"
    assert build("n(0,2)").name == "k2"
    with pytest.raises(ValueError):
        build("mystery")


def grid_points(n=16):
    step = F(2, n)
    return [(i * step, j * step) for i in range(n) for j in range(n)]


def check_involution(tau, points):
    for p in points:
        q = tau.domain.reduce(p)
        assert tau.apply(tau.apply(q)) == q
        if tau.fixed_point_free:
            assert tau.apply(q) != q


def test_klein_deck_involution():
    cover = orientation_double_cover(build("k2"))
    assert cover.total.name == "t2"
    tau = cover.deck
    assert tau.apply((F(1, 4), F(1, 3))) == (F(5, 4), 2 - F(1, 3))
    assert tau.orientation_reversing
    check_involution(tau, grid_points())
    # quotient sanity: tau-orbits map to single K^2 points under (x, y) -> folding
    assert jacobian(tau) == pin2.J2


def test_rp2_deck_involution():
    cover = orientation_double_cover(build("rp2"))
    assert cover.total.name == "s2"
    tau = cover.deck
    assert tau.is_equatorial
    # on the equator: theta -> theta + pi
    assert tau.apply((F(1, 3), 0)) == (F(4, 3), 0)
    j = jacobian(tau)
    assert j == pin2.reflection(angle(theta=1, const=F(1, 2)))


def test_moebius_deck_involution():
    cover = orientation_double_cover(build("moebius"))
    assert cover.total.name == "cyl"
    tau = cover.deck
    assert tau.apply((F(1, 4), F(1, 3))) == (F(5, 4), 2 - F(1, 3))
    check_involution(tau, [(x, y) for x, y in grid_points() if 0 <= y <= 2])


def test_family_cover_has_no_geometry():
    cover = orientation_double_cover(build("n(2,1)"))
    assert cover.total.name == "sigma(4)"
    assert not cover.has_geometry()


def test_double_of_cylinder():
    d = double(build("cyl"))
    assert d.total.name == "t2"
    assert d.tau.apply((F(1, 3), F(1, 5))) == (2 - F(1, 3), F(1, 5))
    # tau3 fixes exactly the boundary image x in {0, pi}
    assert d.tau.apply((0, F(1, 5))) == (0, F(1, 5))
    assert d.tau.apply((1, F(1, 5))) == (1, F(1, 5))
    # euler characteristic additivity: chi(X^d) = 2 chi(X) - chi(boundary)
    assert d.total.euler_characteristic() == 2 * 0 - 0


def test_double_of_moebius():
    d = double(build("moebius"))
    assert d.total.name == "k2"
    assert d.tau.apply((F(1, 3), F(1, 5))) == ((F(1, 5) - F(1, 3)) % 2, F(1, 5))
    assert d.total.euler_characteristic() == 2 * 0 - 0
    # the embedding respects the moebius identifications
    p = d.embed((0, F(1, 3)))
    q = d.embed((2, 2 - F(1, 3)))
    assert p == q


def test_jacobian_of_shear_raises():
    d = double(build("moebius"))
    with pytest.raises(ValueError):
        jacobian(d.tau)


def test_cover_diagram_relations():
    diagram = cover_diagram(build("moebius"))
    results = diagram.check_relations(16)
    assert all(results.values()), results


def test_cover_diagram_tau34_formula():
    diagram = cover_diagram(build("moebius"))
    # tau3(tau4(x, y)) = (x - pi, y + pi), no fixed points mod 2pi
    p = (F(1, 7), F(2, 7))
    assert diagram.tau34(p) == ((F(1, 7) - 1) % 2, (F(2, 7) + 1) % 2)


def test_diagram_jacobians():
    diagram = cover_diagram(build("moebius"))
    assert jacobian(diagram.tau4) == pin2.J1
    assert jacobian(diagram.tau3) == pin2.J1
    assert jacobian(diagram.tau1) == pin2.J2


def test_cover_diagram_prime_node():
    diagram = cover_diagram(build("moebius"))
    assert diagram.prime.orientable
    assert diagram.prime.boundary_components == 0
    # tau' is an involution covering X
    p = (F(3, 8), F(5, 8))
    assert diagram.pi_prime(diagram.tau_prime(p)) == diagram.pi_prime(p)
