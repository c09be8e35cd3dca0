"""Exact symbolic algebra of Pin+-(2)-valued paths in one or two angles.

Every element is in canonical form: even(t) = cos t + sin t e1e2 or
odd(t) = cos t e1 + sin t e2, where t = a*theta + c*phi + b*pi with rational
a, c, b.  Since even(t + pi) = -even(t) and odd(t + pi) = -odd(t), global
signs are absorbed into the angle, and equality reduces b mod 2.

The covering map onto O(2) is the one induced by the twisted adjoint in the
matching Clifford algebra: odd(t) covers the reflection negating the unit
vector at angle t for both kinds, while even(t) covers the rotation by 2t
for Pin- and by -2t for Pin+ (the bivector e1e2 conjugates with opposite
orientation in the two signatures).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .clifford import Multivector, Signature

PIN_PLUS = "pin+"
PIN_MINUS = "pin-"
KINDS = (PIN_PLUS, PIN_MINUS)

EVEN = "even"
ODD = "odd"

ROTATION = "rotation"
REFLECTION = "reflection"


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class AngleForm:
    """Affine angle a*theta + c*phi + b*pi with rational a, c, b.

    The constant is stored mod 2 (a shift by 2*pi is the identity for both
    parities); theta and phi coefficients are compared exactly.
    """

    theta: Fraction = Fraction(0)
    phi: Fraction = Fraction(0)
    const: Fraction = Fraction(0)  # in units of pi

    def __post_init__(self):
        object.__setattr__(self, "theta", _frac(self.theta))
        object.__setattr__(self, "phi", _frac(self.phi))
        object.__setattr__(self, "const", _frac(self.const) % 2)

    def __add__(self, other: "AngleForm") -> "AngleForm":
        return AngleForm(self.theta + other.theta, self.phi + other.phi,
                         self.const + other.const)

    def __sub__(self, other: "AngleForm") -> "AngleForm":
        return AngleForm(self.theta - other.theta, self.phi - other.phi,
                         self.const - other.const)

    def __neg__(self) -> "AngleForm":
        return AngleForm(-self.theta, -self.phi, -self.const)

    def shifted(self, half_turns) -> "AngleForm":
        """Add a rational multiple of pi."""
        return AngleForm(self.theta, self.phi, self.const + _frac(half_turns))

    def scaled(self, factor) -> "AngleForm":
        f = _frac(factor)
        return AngleForm(self.theta * f, self.phi * f, self.const * f)

    def substitute(self, theta: "AngleForm", phi: "AngleForm") -> "AngleForm":
        """Replace the coordinates by affine forms (e.g. compose with an involution)."""
        return AngleForm(
            self.theta * theta.theta + self.phi * phi.theta,
            self.theta * theta.phi + self.phi * phi.phi,
            self.const + self.theta * theta.const + self.phi * phi.const,
        )

    def is_constant(self) -> bool:
        return self.theta == 0 and self.phi == 0

    def evaluate(self, theta0: float = 0.0, phi0: float = 0.0) -> float:
        """Value in radians."""
        return (float(self.theta) * theta0 + float(self.phi) * phi0
                + float(self.const) * math.pi)

    def __str__(self):
        parts = []
        for coeff, name in ((self.theta, "θ"), (self.phi, "φ")):
            if coeff == 0:
                continue
            if coeff == 1:
                parts.append(name)
            elif coeff == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{coeff}·{name}")
        if self.const != 0 or not parts:
            c = self.const
            parts.append("0" if c == 0 else ("π" if c == 1 else f"{c}·π"))
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out


ZERO_ANGLE = AngleForm()


def angle(theta=0, phi=0, const=0) -> AngleForm:
    return AngleForm(_frac(theta), _frac(phi), _frac(const))


@dataclass(frozen=True)
class Pin2Element:
    """Canonical-form element even(t) or odd(t) of Pin+-(2), t an AngleForm."""

    kind: str
    parity: str  # EVEN | ODD
    angle: AngleForm

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.parity not in (EVEN, ODD):
            raise ValueError(f"unknown parity {self.parity!r}")

    def __neg__(self) -> "Pin2Element":
        return Pin2Element(self.kind, self.parity, self.angle.shifted(1))

    def __str__(self):
        return f"{self.parity}({self.angle})"

    def __mul__(self, other: "Pin2Element") -> "Pin2Element":
        return mul(self, other)


def even(kind: str, a: AngleForm) -> Pin2Element:
    return Pin2Element(kind, EVEN, a)


def odd(kind: str, a: AngleForm) -> Pin2Element:
    return Pin2Element(kind, ODD, a)


def one(kind: str) -> Pin2Element:
    return even(kind, ZERO_ANGLE)


def minus_one(kind: str) -> Pin2Element:
    return even(kind, angle(const=1))


def e1(kind: str) -> Pin2Element:
    return odd(kind, ZERO_ANGLE)


def e2(kind: str) -> Pin2Element:
    return odd(kind, angle(const=Fraction(1, 2)))


def mul(x: Pin2Element, y: Pin2Element) -> Pin2Element:
    """Closed-form product; x acts after y (left multiplication on fibers)."""
    if x.kind != y.kind:
        raise ValueError("kind mismatch")
    k, s, t = x.kind, x.angle, y.angle
    if x.parity == EVEN and y.parity == EVEN:
        return even(k, s + t)
    if k == PIN_PLUS:
        if x.parity == EVEN:  # even(s) * odd(t)
            return odd(k, t - s)
        if y.parity == EVEN:  # odd(s) * even(t)
            return odd(k, s + t)
        return even(k, t - s)  # odd(s) * odd(t)
    if x.parity == EVEN:  # even(s) * odd(t)
        return odd(k, t + s)
    if y.parity == EVEN:  # odd(s) * even(t)
        return odd(k, s - t)
    return even(k, (s - t).shifted(1))  # odd(s) * odd(t)


def inverse(x: Pin2Element) -> Pin2Element:
    if x.parity == EVEN:
        return even(x.kind, -x.angle)
    if x.kind == PIN_PLUS:
        return odd(x.kind, x.angle)  # unit vectors square to +1
    return odd(x.kind, x.angle.shifted(1))  # to -1


def is_scalar(x: Pin2Element) -> bool:
    return x.parity == EVEN and x.angle.is_constant() and (x.angle.const % 1 == 0)


def scalar_value(x: Pin2Element) -> int:
    """+1 or -1 for elements equal to a scalar."""
    if not is_scalar(x):
        raise ValueError(f"{x} is not +-1")
    return 1 if x.angle.const % 2 == 0 else -1


@dataclass(frozen=True)
class O2PathElement:
    """Rotation by t, or the reflection negating the unit vector at angle t.

    As O(2) values, reflections with angles differing by pi coincide, so a
    reflection's constant is stored mod 1; a rotation's mod 2.
    """

    parity: str  # ROTATION | REFLECTION
    angle: AngleForm

    def __post_init__(self):
        if self.parity not in (ROTATION, REFLECTION):
            raise ValueError(f"unknown parity {self.parity!r}")
        if self.parity == REFLECTION:
            a = self.angle
            object.__setattr__(self, "angle", AngleForm(a.theta, a.phi, a.const % 1))

    def __str__(self):
        return f"{self.parity}({self.angle})"


def rotation(a: AngleForm) -> O2PathElement:
    return O2PathElement(ROTATION, a)


def reflection(a: AngleForm) -> O2PathElement:
    return O2PathElement(REFLECTION, a)


J1 = reflection(ZERO_ANGLE)               # (x, y) -> (-x, y)
J2 = reflection(angle(const=Fraction(1, 2)))  # (x, y) -> (x, -y)


def compose(g: O2PathElement, h: O2PathElement) -> O2PathElement:
    """g after h, i.e. the matrix product g*h."""
    s, t = g.angle, h.angle
    if g.parity == ROTATION and h.parity == ROTATION:
        return rotation(s + t)
    if g.parity == ROTATION:
        return reflection(t + s.scaled(Fraction(1, 2)))
    if h.parity == ROTATION:
        return reflection(s - t.scaled(Fraction(1, 2)))
    return rotation((s - t).scaled(2))


def o2_inverse(g: O2PathElement) -> O2PathElement:
    if g.parity == ROTATION:
        return rotation(-g.angle)
    return g  # reflections are involutions


def o2_matrix(g: O2PathElement, theta0: float = 0.0, phi0: float = 0.0):
    import numpy as np

    t = g.angle.evaluate(theta0, phi0)
    if g.parity == ROTATION:
        return np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
    # negate the unit vector at angle t, fix its orthogonal line
    return np.array([[-math.cos(2 * t), -math.sin(2 * t)],
                     [-math.sin(2 * t), math.cos(2 * t)]])


def project(x: Pin2Element) -> O2PathElement:
    """The O(2) element covered by x under the twisted adjoint."""
    if x.parity == ODD:
        return reflection(x.angle)
    factor = 2 if x.kind == PIN_MINUS else -2
    return rotation(x.angle.scaled(factor))


def lift_o2(g: O2PathElement, kind: str) -> tuple[Pin2Element, Pin2Element]:
    """The two preimages of g under project, differing by an angle shift of pi."""
    if g.parity == REFLECTION:
        first = odd(kind, g.angle)
    else:
        factor = Fraction(1, 2) if kind == PIN_MINUS else Fraction(-1, 2)
        first = even(kind, g.angle.scaled(factor))
    return first, -first


def rotation_lift(kind: str, a: AngleForm) -> Pin2Element:
    """The canonical-branch lift of the rotation by a (continuous in the angle)."""
    return lift_o2(rotation(a), kind)[0]


def canonical_sign(x: Pin2Element) -> Pin2Element:
    """Representative with constant in [0, 1) (the other lift is angle + pi)."""
    if x.angle.const % 2 < 1:
        return x
    return -x


def is_periodic(x: Pin2Element, shift, var: str = "theta") -> bool:
    """Does substituting var -> var + shift (shift in units of pi) fix x exactly?"""
    coeff = x.angle.theta if var == "theta" else x.angle.phi
    return (coeff * _frac(shift)) % 2 == 0


def evaluate(x: Pin2Element, theta0: float = 0.0, phi0: float = 0.0) -> Multivector:
    """Numeric multivector in Cl(2,0) (pin+) or Cl(0,2) (pin-)."""
    sig = Signature(2, 0) if x.kind == PIN_PLUS else Signature(0, 2)
    t = x.angle.evaluate(theta0, phi0)
    if x.parity == EVEN:
        return Multivector(sig, {0: math.cos(t), 0b11: math.sin(t)})
    return Multivector(sig, {0b01: math.cos(t), 0b10: math.sin(t)})
