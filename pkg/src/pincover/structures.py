"""Pin structure descriptors, involution lifting, descent, and doubling.

A descriptor on a trivialized flat model is the O(2)-twist of its covering
map (rotations R_{a theta + b phi} for the four torus structures, their
restrictions for the cylinder, reflection-valued twists for pullbacks).  A
lift of an involution tau is an exact Pin(2)-valued solution L of

    project(L at x) = twist(tau x)^{-1} . jacobian(tau) . twist(x)

that is periodic under every deck shift of the model; its square
L(tau x) * L(x) is computed symbolically and is always exactly +1 or -1.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import pin2
from .characteristic import obstructions
from .pin2 import (
    KINDS,
    O2PathElement,
    Pin2Element,
    ROTATION,
    angle,
    canonical_sign,
    compose,
    is_periodic,
    lift_o2,
    mul,
    o2_inverse,
    rotation,
    rotation_lift,
    scalar_value,
)
from .surface import Involution, SurfaceModel, build, double, jacobian, orientation_double_cover

IDENTITY = "identity"
GAMMA = "gamma"

_XI_LABELS = {(0, 0): "xi0", (1, 0): "xi1", (0, 1): "xi2", (1, 1): "xi3"}


@dataclass(frozen=True)
class PinStructureDescriptor:
    """A pin structure on a trivialized model, identified by its O(2) twist."""

    surface: SurfaceModel
    kind: str
    twist: O2PathElement
    label: str
    boundary_tags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        if self.boundary_tags and len(self.boundary_tags) != self.surface.boundary_components:
            raise ValueError("one boundary tag per boundary component")

    @property
    def twist_coefficients(self) -> tuple[int, int]:
        """(a, b) for rotation twists R_{a theta + b phi}."""
        if self.twist.parity != ROTATION:
            raise ValueError("twist is not a rotation")
        a, b = self.twist.angle.theta, self.twist.angle.phi
        return int(a), int(b)

    def describe(self) -> str:
        return f"{self.label}[{self.kind}] twist={self.twist}"


def periodic_vars(model: SurfaceModel) -> tuple[str, ...]:
    """Deck-shift coordinates (shift 2 pi) for lift well-definedness checks."""
    if model.name in ("t2", "k2"):
        return ("theta", "phi")
    if model.name == "cyl":
        return ("phi",)   # theta runs over [0, pi] only
    if model.name in ("s2", "rp2"):
        return ("theta",)  # the equator coordinate
    if model.name == "moebius":
        return ()
    raise ValueError(f"no lift domain for {model.name}")


def enumerate_structures(model: SurfaceModel, kind: str) -> list[PinStructureDescriptor]:
    """All pin structures of the given kind on a geometric model.

    Torus: the four twists R_{a theta + b phi}, a, b in {0, 1}.  Cylinder: the
    theta-only twists restricted to theta in [0, pi].  Sphere: the unique
    structure (trivial halves glued along a lift of the equatorial clutching).
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if model.name == "t2":
        return [
            PinStructureDescriptor(model, kind, rotation(angle(theta=a, phi=b)),
                                   _XI_LABELS[(a, b)])
            for (a, b) in ((0, 0), (1, 0), (0, 1), (1, 1))
        ]
    if model.name == "cyl":
        return [
            PinStructureDescriptor(model, kind, rotation(angle(theta=a)),
                                   _XI_LABELS[(a, 0)], (IDENTITY, IDENTITY))
            for a in (0, 1)
        ]
    if model.name == "s2":
        # the clutching R_{-2 theta} lifts to a single-valued loop, so the two
        # trivial halves glue; H^1(S^2, Z2) = 0 leaves nothing else
        clutch = rotation_lift(kind, angle(theta=-2))
        if not is_periodic(clutch, 2):
            raise AssertionError("sphere clutching lift must be single-valued")
        return [PinStructureDescriptor(model, kind, rotation(angle()), "xi_s2")]
    raise ValueError(f"no explicit structures on {model.name}; use descend or obstructions")


def tau_coordinate_forms(tau: Involution):
    """(theta, phi) composed with tau, as affine angle forms."""
    if tau.is_equatorial:
        return angle(theta=1, const=1), angle(phi=1)
    m, c = tau.matrix, tau.shift
    return (
        angle(theta=m[0][0], phi=m[0][1], const=c[0]),
        angle(theta=m[1][0], phi=m[1][1], const=c[1]),
    )


def _substitute(element, theta_form, phi_form):
    new_angle = element.angle.substitute(theta_form, phi_form)
    if isinstance(element, Pin2Element):
        return Pin2Element(element.kind, element.parity, new_angle)
    return O2PathElement(element.parity, new_angle)


def pullback(xi: PinStructureDescriptor, tau: Involution) -> PinStructureDescriptor:
    """tau^* xi: same total space, twist J^{-1} . twist(tau x)."""
    th, ph = tau_coordinate_forms(tau)
    moved = _substitute(xi.twist, th, ph)
    new_twist = compose(o2_inverse(jacobian(tau)), moved)
    return PinStructureDescriptor(xi.surface, xi.kind, new_twist,
                                  f"{tau.name}*{xi.label}", xi.boundary_tags)


def equivalence_lift(xi: PinStructureDescriptor, eta: PinStructureDescriptor):
    """Canonical Pin element path rho with project(rho) = twist_eta^{-1} twist_xi,
    plus whether rho is well defined (periodic under all deck shifts)."""
    if xi.surface.name != eta.surface.name or xi.kind != eta.kind:
        raise ValueError("structures live on different surfaces or kinds")
    target = compose(o2_inverse(eta.twist), xi.twist)
    rho = canonical_sign(lift_o2(target, xi.kind)[0])
    ok = all(is_periodic(rho, 2, var) for var in periodic_vars(xi.surface))
    return rho, ok


def are_equivalent(xi: PinStructureDescriptor, eta: PinStructureDescriptor) -> bool:
    """True iff an equivalence over the identity exists (lift periodicity holds)."""
    return equivalence_lift(xi, eta)[1]


@dataclass(frozen=True)
class LiftResult:
    exists: bool
    lift: Pin2Element | None
    square: int | None                      # +1 | -1 when exists
    both_lifts_related_by_gamma: bool
    detail: str = ""

    def as_dict(self):
        return {
            "exists": self.exists,
            "lift": str(self.lift) if self.lift is not None else None,
            "square": self.square,
            "detail": self.detail,
        }


def lift_involution(xi: PinStructureDescriptor, tau: Involution) -> LiftResult:
    """Solve the lifting diagram for d-tilde-tau and compute its exact square."""
    th, ph = tau_coordinate_forms(tau)
    twist_at_tau = _substitute(xi.twist, th, ph)
    rhs = compose(o2_inverse(twist_at_tau), compose(jacobian(tau), xi.twist))
    lift = canonical_sign(lift_o2(rhs, xi.kind)[0])
    domain_vars = periodic_vars(xi.surface)
    if not all(is_periodic(lift, 2, var) for var in domain_vars):
        return LiftResult(False, None, None, True,
                          "no single-valued lift: the candidate changes sign under a deck shift")
    lift_at_tau = _substitute(lift, th, ph)
    square = scalar_value(mul(lift_at_tau, lift))
    other = -lift
    other_square = scalar_value(mul(_substitute(other, th, ph), other))
    if other_square != square:
        raise AssertionError("the two lifts must square identically")
    return LiftResult(True, lift, square, True)


# ---------------------------------------------------------------------------
# descent through the orientation double cover


@dataclass(frozen=True)
class QuotientLabel:
    """A pin structure on the base, named by (upstairs descriptor, lift sign)."""

    upstairs: PinStructureDescriptor
    sheet: str  # "P/dtau" | "P/(dtau.gamma)"

    def describe(self) -> str:
        return f"{self.upstairs.label}/{self.sheet}"


@dataclass(frozen=True)
class DescentReport:
    base: str
    cover: str
    kind: str
    mode: str                                  # "geometric" | "count-only"
    squares: dict[str, int]                    # upstairs label -> square
    qualifying: tuple[str, ...]
    labels: tuple[QuotientLabel, ...]
    count: int
    torsor_count: int
    exists_downstairs: bool
    consistent: bool

    def as_dict(self):
        return {
            "base": self.base,
            "cover": self.cover,
            "kind": self.kind,
            "mode": self.mode,
            "squares": dict(sorted(self.squares.items())),
            "qualifying": list(self.qualifying),
            "structures": [lab.describe() for lab in self.labels],
            "count": self.count,
            "torsor_count": self.torsor_count,
            "exists": self.exists_downstairs,
            "consistent": self.consistent,
        }


def descend(base: SurfaceModel, kind: str) -> DescentReport:
    """Structures on a closed non-orientable base from invariant ones upstairs."""
    if base.orientable:
        raise ValueError(f"{base.name} is orientable; nothing to descend to")
    if base.boundary_components:
        raise ValueError("descent applies to closed bases; see moebius_descent")
    report = obstructions(base)
    exists = report.pin_plus_exists if kind == pin2.PIN_PLUS else report.pin_minus_exists
    torsor = report.count_pin_plus if kind == pin2.PIN_PLUS else report.count_pin_minus
    cover = orientation_double_cover(base)
    if not cover.has_geometry():
        return DescentReport(base.name, cover.total.name, kind, "count-only",
                             {}, (), (), torsor, torsor, exists, True)
    squares = {}
    qualifying = []
    labels = []
    for xi in enumerate_structures(cover.total, kind):
        res = lift_involution(xi, cover.deck)
        if not res.exists:
            continue
        squares[xi.label] = res.square
        if res.square == 1:
            qualifying.append(xi.label)
            labels.append(QuotientLabel(xi, "P/dtau"))
            labels.append(QuotientLabel(xi, "P/(dtau.gamma)"))
    count = 2 * len(qualifying)
    return DescentReport(base.name, cover.total.name, kind, "geometric",
                         squares, tuple(qualifying), tuple(labels),
                         count, torsor, exists, count == torsor)


# ---------------------------------------------------------------------------
# boundary calculus on the cylinder inside the torus (theta in [0, pi])


def _torus_descriptor(a: int, b: int, kind: str) -> PinStructureDescriptor:
    return PinStructureDescriptor(build("t2"), kind, rotation(angle(theta=a, phi=b)),
                                  _XI_LABELS[(a, b)])


def embedded_boundary_frame(at_pi: bool) -> O2PathElement:
    """The adapted frame at a cylinder boundary circle: id at theta=0, -id at theta=pi."""
    return rotation(angle(const=1 if at_pi else 0))


def boundary_fiber(xi: PinStructureDescriptor, at_pi: bool) -> tuple[Pin2Element, Pin2Element]:
    """The two points of the pin fiber over the embedded boundary frame."""
    theta_c = angle(const=1 if at_pi else 0)
    twist_at = O2PathElement(
        xi.twist.parity,
        xi.twist.angle.substitute(theta_c, angle(phi=1)),
    )
    target = compose(o2_inverse(twist_at), embedded_boundary_frame(at_pi))
    first = canonical_sign(lift_o2(target, xi.kind)[0])
    return first, -first


@dataclass(frozen=True)
class BoundaryLiftTable:
    kind: str
    rows: dict[str, tuple[tuple[Pin2Element, Pin2Element], tuple[Pin2Element, Pin2Element]]]
    rho: Pin2Element
    tau3_rho: Pin2Element
    agree_at_zero: bool
    negate_at_pi: bool

    def as_dict(self):
        def fmt(pair):
            return f"±{pair[0]}"

        return {
            "kind": self.kind,
            "rows": {name: {"theta=0": fmt(row[0]), "theta=pi": fmt(row[1])}
                     for name, row in self.rows.items()},
            "rho": str(self.rho),
            "tau3_rho": str(self.tau3_rho),
            "agree_at_zero": self.agree_at_zero,
            "negate_at_pi": self.negate_at_pi,
        }


def boundary_lift_table(kind: str) -> BoundaryLiftTable:
    """The four boundary-lift rows at theta = 0, pi plus the noncommutation witness.

    rho is the cylinder equivalence xi0 -> xi1; tau3_rho the induced one between
    the tau3 pullbacks.  They agree at theta = 0 and differ by a sign at
    theta = pi, so no global sign choice makes the boundary square commute.
    """
    tau3 = double(build("cyl")).tau
    xi0 = _torus_descriptor(0, 0, kind)
    xi1 = _torus_descriptor(1, 0, kind)
    star0 = pullback(xi0, tau3)
    star1 = pullback(xi1, tau3)
    rows = {
        "xi0": (boundary_fiber(xi0, False), boundary_fiber(xi0, True)),
        "xi1": (boundary_fiber(xi1, False), boundary_fiber(xi1, True)),
        "tau3*xi0": (boundary_fiber(star0, False), boundary_fiber(star0, True)),
        "tau3*xi1": (boundary_fiber(star1, False), boundary_fiber(star1, True)),
    }
    rho = canonical_sign(lift_o2(compose(o2_inverse(xi1.twist), xi0.twist), kind)[0])
    tau3_rho = canonical_sign(
        lift_o2(compose(o2_inverse(star1.twist), star0.twist), kind)[0])

    def value_at(x: Pin2Element, theta_const) -> Pin2Element:
        return Pin2Element(x.kind, x.parity,
                           x.angle.substitute(angle(const=theta_const), angle(phi=1)))

    agree = value_at(rho, 0) == value_at(tau3_rho, 0)
    negate = value_at(rho, 1) == -value_at(tau3_rho, 1)
    return BoundaryLiftTable(kind, rows, rho, tau3_rho, agree, negate)


def _deck_glued_holonomy(a: int, kind: str) -> int:
    """theta-loop holonomy of the double of the cylinder twist R_{a theta},
    glued at both seams with the canonical boundary lift of tau3.

    Transport runs over the coordinate frame: across the marked half the fiber
    path lifts twist^{-1}; across the mirrored half it lifts twist^{-1} . j1 in
    the mirrored chart; the seams multiply by the tau3 lift.
    """
    tau3 = double(build("cyl")).tau
    xi = _torus_descriptor(a, 0, kind)
    res = lift_involution(xi, tau3)
    if not res.exists:
        raise AssertionError("tau3 lift must exist for theta twists")
    seam = res.lift  # constant odd element

    def seam_value(theta_const) -> Pin2Element:
        return Pin2Element(seam.kind, seam.parity,
                           seam.angle.substitute(angle(const=theta_const), angle(phi=1)))

    # copy 1: z1(theta) = lift of R_{-a theta}, continuous from 1
    z1 = rotation_lift(kind, angle(theta=-a))
    z1_at_pi = Pin2Element(kind, z1.parity, z1.angle.substitute(angle(const=1), angle(phi=1)))
    z2_at_pi = mul(seam_value(1), z1_at_pi)
    # copy 2 family: lift of R_{-a theta'} j1, canonical branch
    family = canonical_sign(
        lift_o2(compose(rotation(angle(theta=-a)), pin2.J1), kind)[0])
    fam_at_pi = Pin2Element(kind, family.parity,
                            family.angle.substitute(angle(const=1), angle(phi=1)))
    if z2_at_pi == fam_at_pi:
        eps = 1
    elif z2_at_pi == -fam_at_pi:
        eps = -1
    else:
        raise AssertionError("seam landed outside the expected fiber")
    fam_at_zero = Pin2Element(kind, family.parity,
                              family.angle.substitute(angle(const=0), angle(phi=1)))
    z2_at_zero = fam_at_zero if eps == 1 else -fam_at_zero
    end = mul(pin2.inverse(seam_value(0)), z2_at_zero)
    return scalar_value(end)


@dataclass(frozen=True)
class DoubleStructureResult:
    input_label: str
    kind: str
    tags: tuple[str, str]
    induced: PinStructureDescriptor
    canonical_holonomy: int       # holonomy of the d-tilde-tau3 glued double
    identity_conversion_flip: bool  # the one-seam sign from rho vs tau3-transported rho

    def as_dict(self):
        return {
            "input": self.input_label,
            "kind": self.kind,
            "tags": list(self.tags),
            "induced_class": self.induced.label,
            "canonical_holonomy": self.canonical_holonomy,
            "identity_conversion_flip": self.identity_conversion_flip,
        }


def double_structure(xi: PinStructureDescriptor,
                     tags: tuple[str, str] | None = None) -> DoubleStructureResult:
    """Glue two copies of a cylinder structure along the boundary; classify the result.

    tags give the gluing on the two boundary circles relative to the identity
    of the shared total space; an overall flip of both is an equivalence, so
    only the product matters.
    """
    if xi.surface.name != "cyl":
        raise ValueError("double_structure expects a cylinder structure")
    tags = tags or xi.boundary_tags or (IDENTITY, IDENTITY)
    if len(tags) != 2 or any(t not in (IDENTITY, GAMMA) for t in tags):
        raise ValueError("tags must be two of identity|gamma")
    a, _ = xi.twist_coefficients
    hol = _deck_glued_holonomy(a, xi.kind)
    witness = boundary_lift_table(xi.kind)
    if not (witness.agree_at_zero and witness.negate_at_pi):
        raise AssertionError("noncommutation witness failed")
    base_class = 0 if hol == 1 else 1     # class of the canonical-glued double
    flip = 1                              # identity gluing differs by one seam sign
    tag_flip = 1 if tags.count(GAMMA) % 2 else 0
    result_index = (base_class + flip + tag_flip) % 2
    induced = _torus_descriptor(result_index, 0, xi.kind)
    return DoubleStructureResult(xi.label, xi.kind, tuple(tags), induced,
                                 hol, True)


# ---------------------------------------------------------------------------
# the full moebius report


@dataclass(frozen=True)
class MoebiusReport:
    tau4_squares: dict[str, dict[str, int]]     # kind -> label -> square
    tau3_lift_exists: dict[str, dict[str, bool]]
    descending: dict[str, tuple[str, ...]]      # kind -> labels through the diagram

    def as_dict(self):
        return {
            "tau4_squares": self.tau4_squares,
            "tau3_lift_exists": self.tau3_lift_exists,
            "descending": {k: list(v) for k, v in self.descending.items()},
        }


def moebius_descent() -> MoebiusReport:
    """tau4 squares and tau3 compatibility for the four torus structures, both kinds."""
    from .surface import cover_diagram

    diagram = cover_diagram(build("moebius"))
    tau4, tau3 = diagram.tau4, diagram.tau3
    squares = {}
    exists = {}
    descending = {}
    for kind in KINDS:
        squares[kind] = {}
        exists[kind] = {}
        good = []
        for xi in enumerate_structures(build("t2"), kind):
            r4 = lift_involution(xi, tau4)
            r3 = lift_involution(xi, tau3)
            squares[kind][xi.label] = r4.square if r4.exists else None
            exists[kind][xi.label] = r3.exists
            if r4.exists and r4.square == 1 and r3.exists:
                good.append(xi.label)
        descending[kind] = tuple(good)
    return MoebiusReport(squares, exists, descending)
