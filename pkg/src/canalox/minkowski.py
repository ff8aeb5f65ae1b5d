"""Metric algebra of Minkowski 3-space with signature (-, +, +).

The scalar product is ``<u, v> = -u0*v0 + u1*v1 + u2*v2`` (the first
component is the time-like one) and the pseudo-norm is ``sqrt(|<u, u>|)``.
Vectors classify as space-like, time-like, or light-like by the sign of
their self-product; pairs of vectors carry one of three angle notions
depending on the causal type of the plane they span:

* two space-like vectors spanning a space-like plane: an ordinary
  angle via ``cos``,
* two space-like vectors spanning a time-like plane: a hyperbolic
  angle via ``cosh``,
* a space-like and a time-like vector: a hyperbolic angle via ``sinh``.

Exactly one of the three applies to any pair drawn from those
configurations, which is what lets the curve solver select its slope
equation by regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

__all__ = [
    "TAU_CAUSAL",
    "CLAMP_BAND",
    "MVec3",
    "CausalCharacter",
    "AngleKind",
    "LorentzAngle",
    "minkowski_dot",
    "pseudo_norm",
    "causal_character",
    "angle_spacelike_plane",
    "angle_timelike_plane",
    "angle_space_time",
]

# Classification band around <u,u> = 0: an order of magnitude above the
# round-off accumulated by a 3-term dot product in double precision.
TAU_CAUSAL: float = 1e-10

# Inverse-trig arguments within this distance of their boundary are
# clamped; beyond it the caller picked the wrong angle regime.
CLAMP_BAND: float = 1e-9


@dataclass(frozen=True, slots=True)
class MVec3:
    """A vector in Minkowski 3-space; ``x0`` is the time-like coordinate."""

    x0: float
    x1: float
    x2: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x0) and math.isfinite(self.x1) and math.isfinite(self.x2)):
            raise DomainError(f"non-finite vector component in ({self.x0}, {self.x1}, {self.x2})")

    def __add__(self, other: "MVec3") -> "MVec3":
        return MVec3(self.x0 + other.x0, self.x1 + other.x1, self.x2 + other.x2)

    def __sub__(self, other: "MVec3") -> "MVec3":
        return MVec3(self.x0 - other.x0, self.x1 - other.x1, self.x2 - other.x2)

    def __mul__(self, s: float) -> "MVec3":
        return MVec3(self.x0 * s, self.x1 * s, self.x2 * s)

    __rmul__ = __mul__

    def __neg__(self) -> "MVec3":
        return MVec3(-self.x0, -self.x1, -self.x2)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x0, self.x1, self.x2)

    @property
    def is_zero(self) -> bool:
        return self.x0 == 0.0 and self.x1 == 0.0 and self.x2 == 0.0


ZERO = MVec3(0.0, 0.0, 0.0)


class CausalCharacter(Enum):
    SPACE_LIKE = "spacelike"
    TIME_LIKE = "timelike"
    LIGHT_LIKE = "lightlike"


class AngleKind(Enum):
    """Which of the three angle notions a value represents."""

    SPACELIKE_PLANE = "cos"     # space-like pair, space-like plane
    TIMELIKE_PLANE = "cosh"     # space-like pair, time-like plane
    SPACE_TIME = "sinh"         # space-like vs time-like vector


@dataclass(frozen=True, slots=True)
class LorentzAngle:
    """An angle value tagged with the regime it belongs to.

    ``value`` is in radians for the ``cos`` kind (range [0, pi]) and a
    non-negative hyperbolic parameter for the other two kinds.
    """

    kind: AngleKind
    value: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise DomainError(f"non-finite angle value {self.value}")
        if self.value < 0.0:
            raise DomainError(f"angle value must be >= 0, got {self.value}")
        if self.kind is AngleKind.SPACELIKE_PLANE and self.value > math.pi:
            raise DomainError(f"cos-kind angle must lie in [0, pi], got {self.value}")

    @classmethod
    def spacelike_plane(cls, psi: float) -> "LorentzAngle":
        return cls(AngleKind.SPACELIKE_PLANE, psi)

    @classmethod
    def timelike_plane(cls, eta: float) -> "LorentzAngle":
        return cls(AngleKind.TIMELIKE_PLANE, eta)

    @classmethod
    def space_time(cls, phi: float) -> "LorentzAngle":
        return cls(AngleKind.SPACE_TIME, phi)


def minkowski_dot(u: MVec3, v: MVec3) -> float:
    """Scalar product ``-u0*v0 + u1*v1 + u2*v2``; bilinear and symmetric."""
    return -u.x0 * v.x0 + u.x1 * v.x1 + u.x2 * v.x2


def pseudo_norm(u: MVec3) -> float:
    """``sqrt(|<u, u>|)``; zero exactly for light-like and zero vectors."""
    return math.sqrt(abs(minkowski_dot(u, u)))


def causal_character(u: MVec3, tau: float = TAU_CAUSAL) -> CausalCharacter:
    """Classify ``u`` by the sign of ``<u, u>`` with tolerance band ``tau``.

    The zero vector counts as space-like by convention; any other vector
    with ``|<u, u>| <= tau`` is light-like.
    """
    if tau <= 0.0:
        raise ValueError("tau must be positive")
    q = minkowski_dot(u, u)
    if q > tau:
        return CausalCharacter.SPACE_LIKE
    if q < -tau:
        return CausalCharacter.TIME_LIKE
    if u.is_zero:
        return CausalCharacter.SPACE_LIKE
    return CausalCharacter.LIGHT_LIKE


def _require(u: MVec3, v: MVec3, want_u: CausalCharacter, want_v: CausalCharacter,
             op: str, tau: float) -> None:
    got_u = causal_character(u, tau)
    got_v = causal_character(v, tau)
    if got_u is not want_u or got_v is not want_v:
        raise DomainError(
            f"{op} requires a ({want_u.value}, {want_v.value}) pair, "
            f"got ({got_u.value}, {got_v.value})"
        )


def angle_spacelike_plane(u: MVec3, v: MVec3, tau: float = TAU_CAUSAL) -> LorentzAngle:
    """Angle psi in [0, pi] between space-like vectors spanning a space-like plane.

    Defined through ``<u, v> = |u| |v| cos(psi)``.  The plane they span
    is space-like exactly when the cosine ratio lies in (-1, 1); a ratio
    outside [-1 - band, 1 + band] means the pair actually spans a
    time-like plane and is rejected.
    """
    _require(u, v, CausalCharacter.SPACE_LIKE, CausalCharacter.SPACE_LIKE,
             "angle_spacelike_plane", tau)
    if u.is_zero or v.is_zero:
        raise DomainError("angle_spacelike_plane requires nonzero vectors")
    c = minkowski_dot(u, v) / (pseudo_norm(u) * pseudo_norm(v))
    if abs(c) > 1.0 + CLAMP_BAND:
        raise DomainError(
            f"pair spans a time-like plane (|cos ratio| = {abs(c):.12g} > 1); "
            "use angle_timelike_plane"
        )
    return LorentzAngle.spacelike_plane(math.acos(max(-1.0, min(1.0, c))))


def angle_timelike_plane(u: MVec3, v: MVec3, tau: float = TAU_CAUSAL) -> LorentzAngle:
    """Hyperbolic angle eta >= 0 between space-like vectors spanning a time-like plane.

    Defined through ``|<u, v>| = |u| |v| cosh(eta)``.  A ratio below
    ``1 - band`` means the spanned plane is space-like and the ordinary
    angle applies instead.
    """
    _require(u, v, CausalCharacter.SPACE_LIKE, CausalCharacter.SPACE_LIKE,
             "angle_timelike_plane", tau)
    if u.is_zero or v.is_zero:
        raise DomainError("angle_timelike_plane requires nonzero vectors")
    ratio = abs(minkowski_dot(u, v)) / (pseudo_norm(u) * pseudo_norm(v))
    if ratio < 1.0 - CLAMP_BAND:
        raise DomainError(
            f"pair spans a space-like plane (cosh ratio = {ratio:.12g} < 1); "
            "use angle_spacelike_plane"
        )
    return LorentzAngle.timelike_plane(math.acosh(max(1.0, ratio)))


def angle_space_time(u: MVec3, v: MVec3, tau: float = TAU_CAUSAL) -> LorentzAngle:
    """Hyperbolic angle phi >= 0 between a space-like and a time-like vector.

    Defined through ``|<u, v>| = |u| |v| sinh(phi)``.  Accepts the pair in
    either order so the operation is symmetric like the other two.
    """
    got_u = causal_character(u, tau)
    got_v = causal_character(v, tau)
    pair = {got_u, got_v}
    if pair != {CausalCharacter.SPACE_LIKE, CausalCharacter.TIME_LIKE}:
        raise DomainError(
            "angle_space_time requires one space-like and one time-like vector, "
            f"got ({got_u.value}, {got_v.value})"
        )
    ratio = abs(minkowski_dot(u, v)) / (pseudo_norm(u) * pseudo_norm(v))
    return LorentzAngle.space_time(math.asinh(ratio))
