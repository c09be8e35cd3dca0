"""Surface models: fundamental polygons, involutions, double covers, doubles.

Flat models live on the square [0, 2pi]^2 with coordinates stored as exact
rationals in units of pi; all identifications are exact modular arithmetic.
The sphere is a two-disc clutching model whose geometry is only ever queried
on the equator.  Families beyond the base cases (sigma_g, N_{g,1}, N_{g,2}
with g >= 1) carry combinatorial gluing words only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import pin2
from .homology import GluingWord, PolygonComplex
from .pin2 import O2PathElement, angle, reflection

Point = tuple[Fraction, Fraction]  # units of pi

FLAT_SQUARE = "flat-square"
TWO_DISC = "two-disc"
FAMILY_ONLY = "family-only"


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# identification rules for the second coordinate wrap, per model
WRAP_NONE = "none"          # coordinate clamped to [0, 2] (boundary)
WRAP_STRAIGHT = "straight"  # v ~ v + 2
WRAP_FLIP_OTHER = "flip"    # (u, v) ~ (f(u), v + 2) with the other coordinate negated


@dataclass(frozen=True)
class SurfaceModel:
    name: str
    model_kind: str
    word: GluingWord
    orientable: bool
    boundary_components: int
    x_wrap: str = WRAP_STRAIGHT
    y_wrap: str = WRAP_STRAIGHT
    genus: int = 0
    cross_caps: int = 0

    @property
    def complex(self) -> PolygonComplex:
        return PolygonComplex.from_word(self.word)

    def euler_characteristic(self) -> int:
        return self.complex.euler_characteristic()

    def is_flat(self) -> bool:
        return self.model_kind == FLAT_SQUARE

    def reduce(self, p: Point) -> Point:
        """Canonical representative of a point modulo the identifications."""
        if self.model_kind != FLAT_SQUARE:
            raise ValueError(f"{self.name} has no square coordinates")
        x, y = frac(p[0]), frac(p[1])
        if self.y_wrap == WRAP_STRAIGHT:
            y %= 2
        elif self.y_wrap == WRAP_FLIP_OTHER:
            k = y // 2
            y %= 2
            if k % 2:
                x = -x
        elif not 0 <= y <= 2:
            raise ValueError(f"{self.name}: y out of range")
        if self.x_wrap == WRAP_STRAIGHT:
            x %= 2
        elif self.x_wrap == WRAP_FLIP_OTHER:
            k = x // 2
            x %= 2
            if k % 2:
                y = 2 - y if self.y_wrap == WRAP_NONE else (-y) % 2
        elif not 0 <= x <= 2:
            raise ValueError(f"{self.name}: x out of range")
        # edge representatives: the wrapped coordinate's seam is taken at 0
        return (x, y)

    def same_point(self, p: Point, q: Point) -> bool:
        return self.reduce(p) == self.reduce(q)


@dataclass(frozen=True)
class Involution:
    """Affine map (x, y) -> M (x, y) + c on the square, or the sphere's equatorial one."""

    name: str
    matrix: tuple[tuple[int, int], tuple[int, int]] | None  # None for equatorial
    shift: tuple[Fraction, Fraction] | None                 # units of pi
    domain: SurfaceModel
    fixed_point_free: bool
    orientation_reversing: bool

    @classmethod
    def affine(cls, name, matrix, shift, domain, fixed_point_free, orientation_reversing):
        m = tuple(tuple(int(e) for e in row) for row in matrix)
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if abs(det) != 1:
            raise ValueError("linear part must be unimodular")
        s = (frac(shift[0]), frac(shift[1]))
        inv = cls(name, m, s, domain, fixed_point_free, orientation_reversing)
        return inv

    @classmethod
    def equatorial(cls, name, domain):
        """The sphere's antipodal map z -> -1/conj(z)."""
        return cls(name, None, None, domain, True, True)

    @property
    def is_equatorial(self) -> bool:
        return self.matrix is None

    def apply_raw(self, p: Point) -> Point:
        if self.is_equatorial:
            # on the equator z = e^{i theta}: theta -> theta + pi
            return (p[0] + 1, p[1])
        m, c = self.matrix, self.shift
        x, y = frac(p[0]), frac(p[1])
        return (m[0][0] * x + m[0][1] * y + c[0], m[1][0] * x + m[1][1] * y + c[1])

    def apply(self, p: Point) -> Point:
        q = self.apply_raw(p)
        if self.is_equatorial:
            return (q[0] % 2, q[1])
        return self.domain.reduce(q)

    def orthogonal_part(self) -> tuple[tuple[int, int], tuple[int, int]]:
        m = self.matrix
        if m is None:
            raise ValueError("equatorial involution has no constant linear part")
        if (m[0][0] * m[0][1] + m[1][0] * m[1][1] != 0
                or m[0][0] ** 2 + m[1][0] ** 2 != 1
                or m[0][1] ** 2 + m[1][1] ** 2 != 1):
            raise ValueError(f"{self.name}: linear part is not orthogonal")
        return m


def jacobian(tau: Involution, at: Point | None = None) -> O2PathElement:
    """Differential of tau as an O(2) path element.

    Flat involutions have a constant differential; the sphere's antipodal map
    is only modelled along the equator, where its differential at angle theta
    is the reflection fixing the line at angle theta.
    """
    if tau.is_equatorial:
        return reflection(angle(theta=1, const=Fraction(1, 2)))
    m = tau.orthogonal_part()
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if det == 1:
        # rotation by a multiple of pi/2
        mapping = {(1, 0): 0, (0, 1): Fraction(1, 2), (-1, 0): 1, (0, -1): Fraction(3, 2)}
        return pin2.rotation(angle(const=mapping[(m[0][0], m[1][0])]))
    # reflection negating the unit vector at angle t: matrix [[-cos2t, -sin2t], [-sin2t, cos2t]]
    mapping = {(-1, 0): 0, (1, 0): Fraction(1, 2), (0, -1): Fraction(1, 4), (0, 1): Fraction(3, 4)}
    return reflection(angle(const=mapping[(m[0][0], m[1][0])]))


# ---------------------------------------------------------------------------
# the model zoo


def _sigma_word(g: int) -> GluingWord:
    parts = []
    for i in range(1, g + 1):
        parts += [f"a{i}", f"b{i}", f"a{i}'", f"b{i}'"]
    return GluingWord.parse(" ".join(parts))


def _n_gk_word(g: int, k: int) -> GluingWord:
    parts = []
    for i in range(1, g + 1):
        parts += [f"a{i}", f"b{i}", f"a{i}'", f"b{i}'"]
    parts += ["x", "x"] if k == 1 else ["c", "d", "c", "d'"]
    return GluingWord.parse(" ".join(parts))


_NAME_RE = re.compile(r"^(sigma|n)\((\d+)(?:,(\d+))?\)$")


def build(name: str) -> SurfaceModel:
    """Surface by name: s2, rp2, t2, k2, cyl, moebius, sigma(g), n(g,1), n(g,2)."""
    key = name.strip().lower()
    if key == "t2":
        return SurfaceModel("t2", FLAT_SQUARE, GluingWord.parse("a b a' b'"),
                            True, 0, WRAP_STRAIGHT, WRAP_STRAIGHT, genus=1)
    if key == "k2":
        # (0,y) ~ (2pi,y) and (x,0) ~ (2pi-x, 2pi): crossing y flips x
        return SurfaceModel("k2", FLAT_SQUARE, GluingWord.parse("a b a b'"),
                            False, 0, WRAP_STRAIGHT, WRAP_FLIP_OTHER, cross_caps=2)
    if key == "cyl":
        return SurfaceModel("cyl", FLAT_SQUARE, GluingWord.parse("u a t' a'", boundary="u t"),
                            True, 2, WRAP_STRAIGHT, WRAP_NONE)
    if key == "moebius":
        # (0,y) ~ (2pi, 2pi-y): crossing x flips y
        return SurfaceModel("moebius", FLAT_SQUARE, GluingWord.parse("u a t a", boundary="u t"),
                            False, 1, WRAP_FLIP_OTHER, WRAP_NONE, cross_caps=1)
    if key == "s2":
        return SurfaceModel("s2", TWO_DISC, GluingWord.parse("a a'"), True, 0)
    if key == "rp2":
        return SurfaceModel("rp2", TWO_DISC, GluingWord.parse("x x"), False, 0, cross_caps=1)
    m = _NAME_RE.match(key)
    if m:
        kind, g, k = m.group(1), int(m.group(2)), m.group(3)
        if kind == "sigma":
            if g == 0:
                return build("s2")
            if g == 1:
                return build("t2")
            return SurfaceModel(key, FAMILY_ONLY, _sigma_word(g), True, 0, genus=g)
        k = int(k) if k else None
        if k not in (1, 2):
            raise ValueError(f"unknown surface {name!r}")
        if g == 0:
            return build("rp2" if k == 1 else "k2")
        return SurfaceModel(key, FAMILY_ONLY, _n_gk_word(g, k), False, 0,
                            genus=g, cross_caps=k)
    raise ValueError(f"unknown surface {name!r}")


SURFACE_NAMES = ["s2", "rp2", "t2", "k2", "cyl", "moebius",
                 "sigma(g)", "n(g,1)", "n(g,2)"]


# ---------------------------------------------------------------------------
# orientation double covers and doubles


@dataclass(frozen=True)
class OrientationCover:
    base: SurfaceModel
    total: SurfaceModel
    deck: Involution | None  # geometric deck involution when the model supports it

    def has_geometry(self) -> bool:
        return self.deck is not None


def orientation_double_cover(x: SurfaceModel) -> OrientationCover:
    if x.orientable:
        raise ValueError(f"{x.name} is already orientable")
    if x.name == "k2":
        t2 = build("t2")
        tau = Involution.affine("k2-deck", ((1, 0), (0, -1)), (1, 0), t2, True, True)
        return OrientationCover(x, t2, tau)
    if x.name == "rp2":
        s2 = build("s2")
        tau = Involution.equatorial("rp2-deck", s2)
        return OrientationCover(x, s2, tau)
    if x.name == "moebius":
        cyl = build("cyl")
        tau = Involution.affine("moebius-deck", ((1, 0), (0, -1)), (1, 2), cyl, True, True)
        return OrientationCover(x, cyl, tau)
    # family-only: the combinatorial cover exists via homology machinery
    return OrientationCover(x, _family_cover_model(x), None)


def _family_cover_model(x: SurfaceModel) -> SurfaceModel:
    from .homology import homology_groups, orientation_double_cover_complex

    cover = orientation_double_cover_complex(x.word)
    h1 = homology_groups(cover.total).h1
    genus = h1[0] // 2
    return build(f"sigma({genus})")


@dataclass(frozen=True)
class Double:
    """Closed double of a surface with boundary, with the boundary-fixing involution."""

    half: SurfaceModel
    total: SurfaceModel
    tau: Involution
    # the embedding marker: half -> total
    embed_name: str

    def embed(self, p: Point) -> Point:
        u, v = frac(p[0]), frac(p[1])
        if self.half.name == "cyl":
            # cylinder square (u periodic, v in [0, 2pi]) onto {x in [0, pi]} in T^2
            return self.total.reduce((v / 2, u))
        if self.half.name == "moebius":
            # moebius square onto the region between the fixed circles of tau2
            return self.total.reduce((u / 2 + v / 2, u))
        raise ValueError("no embedding for this model")


def double(x: SurfaceModel) -> Double:
    if x.boundary_components < 1:
        raise ValueError(f"{x.name} is closed")
    if x.name == "cyl":
        t2 = build("t2")
        tau3 = Involution.affine("cyl-double", ((-1, 0), (0, 1)), (0, 0), t2, False, True)
        return Double(x, t2, tau3, "theta-half")
    if x.name == "moebius":
        k2 = build("k2")
        tau2 = Involution.affine("moebius-double", ((-1, 1), (0, 1)), (0, 0), k2, False, True)
        return Double(x, k2, tau2, "shear-half")
    raise ValueError(f"no double model for {x.name}")


# ---------------------------------------------------------------------------
# the five-space diagram for a non-orientable surface with boundary


@dataclass
class CoverDiagram:
    """X = M^2, X~ = Cyl, X^d = K^2, X~^d = T^2, X' = T^2 with all maps exact.

    Everything is presented through the master torus: tau3 and tau4 generate a
    Klein four-group whose quotients are the five nodes.  The projections are
    explicit piecewise charts; relation failures raise (they would indicate an
    implementation bug, not a mathematical fact).
    """

    base: SurfaceModel        # X
    tilde: SurfaceModel       # X~ (cyl)
    half_double: SurfaceModel  # X^d (k2)
    master: SurfaceModel      # X~^d (t2)
    prime: SurfaceModel       # X' (t2)
    tau1: Involution
    tau2: Involution
    tau3: Involution
    tau4: Involution

    def tau34(self, p: Point) -> Point:
        return self.master.reduce(self.tau3.apply_raw(self.tau4.apply_raw(p)))

    # -- projections ---------------------------------------------------------

    def pi3(self, p: Point) -> Point:
        """T^2 -> Cyl (fold x into [0, pi]); cylinder coords (u, v) = (y, 2x)."""
        x, y = self.master.reduce(p)
        if x > 1:
            x = 2 - x
        return self.tilde.reduce((y, 2 * x))

    def pi1(self, p: Point) -> Point:
        """Cyl -> M^2, the quotient by tau1(u, v) = (u + pi, 2pi - v)."""
        u, v = self.tilde.reduce(p)
        if u < 1:
            return self.base.reduce((2 * u, v))
        return self.base.reduce((2 * u - 2, 2 - v))

    def pi4(self, p: Point) -> Point:
        """T^2 -> K^2, the quotient by tau4; chart (x, y) -> (x + y, 2y) on y in [0, pi)."""
        x, y = self.master.reduce(p)
        if y >= 1:
            x, y = self.master.reduce(self.tau4.apply_raw((x, y)))
        return self.half_double.reduce((x + y, 2 * y))

    def pi4_section(self, p: Point) -> Point:
        """A section of pi4 landing in the y in [0, 1) fundamental domain."""
        big_x, big_y = self.half_double.reduce(p)
        return self.master.reduce((big_x - big_y / 2, big_y / 2))

    def pi2(self, p: Point) -> Point:
        """K^2 -> M^2, induced by pi1 after pi3 through any pi4 preimage."""
        return self.pi1(self.pi3(self.pi4_section(p)))

    def pi34(self, p: Point) -> Point:
        """T^2 -> X' = T^2 / tau34; chart (x, y) -> (2x, y - x)."""
        x, y = self.master.reduce(p)
        return self.prime.reduce((2 * x, y - x))

    def pi34_section(self, p: Point) -> Point:
        xp, yp = self.prime.reduce(p)
        return self.master.reduce((xp / 2, yp + xp / 2))

    def tau_prime(self, p: Point) -> Point:
        """The involution on X' induced by tau3 (equivalently tau4)."""
        return self.pi34(self.tau3.apply(self.pi34_section(p)))

    def pi_prime(self, p: Point) -> Point:
        """X' -> X."""
        return self.pi1(self.pi3(self.pi34_section(p)))

    def embed_tilde(self, p: Point) -> Point:
        """X~ = Cyl into the master torus: (u, v) -> (v/2, u)."""
        u, v = self.tilde.reduce(p)
        return self.master.reduce((v / 2, u))

    def embed_base(self, p: Point) -> Point:
        """X = M^2 into X^d = K^2, between the fixed circles of tau2."""
        u, v = p
        return self.half_double.reduce((frac(u) / 2 + frac(v) / 2, frac(u)))

    # -- relation checks ------------------------------------------------------

    def grid(self, n: int):
        step = Fraction(2, n)
        for i in range(n):
            for j in range(n):
                yield (i * step, j * step)

    def check_relations(self, n: int = 64) -> dict[str, bool]:
        """Verify the diagram identities exactly on an n x n rational grid."""
        results = {
            "pi1_pi3_eq_pi2_pi4": True,
            "tau3_tau4_commute": True,
            "tau4_restricts_to_tau1": True,
            "pi4_restricts_to_pi1": True,
            "tau34_fixed_point_free": True,
            "tau2_involution": True,
            "tau_prime_involution": True,
            "pi_prime_compatible": True,
        }
        for p in self.grid(n):
            if self.pi1(self.pi3(p)) != self.pi2(self.pi4(p)):
                results["pi1_pi3_eq_pi2_pi4"] = False
            a = self.master.reduce(self.tau3.apply_raw(self.tau4.apply_raw(p)))
            b = self.master.reduce(self.tau4.apply_raw(self.tau3.apply_raw(p)))
            if a != b:
                results["tau3_tau4_commute"] = False
            if self.tau34(p) == self.master.reduce(p):
                results["tau34_fixed_point_free"] = False
            if self.pi_prime(self.pi34(p)) != self.pi1(self.pi3(p)):
                results["pi_prime_compatible"] = False
        for p in self.grid(n):
            u, v = p
            if v > 2:
                continue
            # tau4 restricted to the embedded cylinder equals tau1
            lhs = self.master.reduce(self.tau4.apply_raw(self.embed_tilde((u, v))))
            rhs = self.embed_tilde(self.tau1.apply((u, v)))
            if lhs != rhs:
                results["tau4_restricts_to_tau1"] = False
            # pi4 restricted to the embedded cylinder equals pi1 into the
            # embedded copy of X inside X^d
            lhs2 = self.pi4(self.embed_tilde((u, v)))
            if lhs2 != self.embed_base(self.pi1((u, v))):
                results["pi4_restricts_to_pi1"] = False
        for p in self.grid(n):
            q = self.half_double.reduce(p)
            if self.half_double.reduce(self.tau2.apply_raw(self.tau2.apply_raw(q))) != q:
                results["tau2_involution"] = False
            r = self.prime.reduce(p)
            if self.tau_prime(self.tau_prime(r)) != r:
                results["tau_prime_involution"] = False
        return results


def cover_diagram(x: SurfaceModel) -> CoverDiagram:
    if x.name != "moebius":
        raise ValueError("the cover diagram is modelled for the moebius strip")
    t2 = build("t2")
    k2 = build("k2")
    cyl = build("cyl")
    tau1 = Involution.affine("tau1", ((1, 0), (0, -1)), (1, 2), cyl, True, True)
    tau2 = Involution.affine("tau2", ((-1, 1), (0, 1)), (0, 0), k2, False, True)
    tau3 = Involution.affine("tau3", ((-1, 0), (0, 1)), (0, 0), t2, False, True)
    tau4 = Involution.affine("tau4", ((-1, 0), (0, 1)), (1, 1), t2, True, True)
    return CoverDiagram(x, cyl, k2, t2, build("t2"), tau1, tau2, tau3, tau4)
