"""The seven canal-surface families and their first fundamental forms.

Each family is the envelope-style position map ``C(u, v)`` of a sphere
family along a spine curve, expressed in the spine's adapted frame.  The
families split by the shape of the profile in the normal plane:

* ``F1``/``F2``: hyperbolic profile ``g(u) (sinh v, cosh v)`` resp.
  ``(cosh v, sinh v)`` on an orthonormal frame, with sign choices
  ``m1, m2 in {-1, +1}``;
* ``F3``: trigonometric profile ``p(u) (cos v, sin v)`` on a frame with
  time-like tangent;
* ``F4``/``F6``: a free function ``b(u, v)`` against a null normal pair,
  with the complementary null coefficient fixed by the radius;
* ``F5``/``F7``: a free function ``b(u, v)`` as the coefficient of the
  unit normal between a null tangent pair, with a radius-driven shift
  along the tangent legs.

For every family the module carries two fundamental-form routes:

* ``fundamental_form_closed`` -- catalogue formulas in E, F, G.  The
  shipped coefficients were re-derived from the position maps and the
  frame conventions; where a legacy transcription of the catalogue
  deviates (three coefficients do), the corrected form is used and the
  applied corrections are flagged in the result metadata.  The legacy
  readings remain available as ``variant="printed"`` so the audit can
  demonstrate which route matches ground truth.
* ``fundamental_form_numeric`` -- central differences of the position
  map itself.  This is the module's ground truth; the closed forms must
  agree with it, and :func:`audit_closed_vs_numeric` measures how well
  they do on a grid.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .errors import DegenerateError, DomainError
from .frames import FrameField, FrenetConvention
from .minkowski import TAU_CAUSAL, MVec3

__all__ = [
    "Radius",
    "BFunc",
    "CanalFamily",
    "SurfaceRegime",
    "FundamentalForm",
    "CanalSurface",
    "FormAuditReport",
    "audit_closed_vs_numeric",
    "regime_from_form",
]

# Central-difference step scale for the numeric fundamental form:
# delta = FD_SCALE * max(1, |u|, |v|) balances truncation and round-off.
FD_SCALE: float = 1e-5

# Denominator guard for h(u) and b(u, v) where they divide.
MIN_DENOM: float = 1e-8

TWO_PI = 2.0 * math.pi


def _central(f: Callable[[float], float], u: float) -> float:
    h = 1e-6 * max(1.0, abs(u))
    return (f(u + h) - f(u - h)) / (2.0 * h)


class Radius:
    """Sphere-radius function ``r(u) > 0`` with derivatives.

    ``d1`` falls back to a central difference of ``value``; when ``d2``
    is unavailable the derived catalogue scalars (g', h', p', t') are
    differenced directly instead of chained through r''.
    """

    def __init__(
        self,
        value: Callable[[float], float],
        d1: Optional[Callable[[float], float]] = None,
        d2: Optional[Callable[[float], float]] = None,
    ):
        self.value = value
        self.d1 = d1 if d1 is not None else (lambda u: _central(value, u))
        self.d2 = d2

    @classmethod
    def constant(cls, c: float) -> "Radius":
        return cls(lambda u: c, lambda u: 0.0, lambda u: 0.0)

    @classmethod
    def linear(cls, a: float, c: float = 0.0) -> "Radius":
        return cls(lambda u: a * u + c, lambda u: a, lambda u: 0.0)

    @classmethod
    def polynomial(cls, coeffs) -> "Radius":
        """Coefficients in increasing order: ``c0 + c1*u + c2*u^2 + ...``."""
        c0 = tuple(float(c) for c in coeffs)
        if not c0:
            raise ValueError("polynomial radius needs at least one coefficient")
        c1 = tuple(i * c for i, c in enumerate(c0))[1:] or (0.0,)
        c2 = tuple(i * c for i, c in enumerate(c1))[1:] or (0.0,)

        def horner(cs):
            def f(u: float) -> float:
                acc = 0.0
                for c in reversed(cs):
                    acc = acc * u + c
                return acc
            return f

        return cls(horner(c0), horner(c1), horner(c2))

    @classmethod
    def from_callables(cls, value, d1=None, d2=None) -> "Radius":
        return cls(value, d1, d2)


class BFunc:
    """Free profile function ``b(u, v)`` with partial derivatives.

    Missing partials are filled by central differences, with a warning:
    differenced partials are accurate enough for plotting but degrade
    the closed-vs-numeric audit headroom.
    """

    def __init__(self, value, du=None, dv=None):
        self.value = value
        if du is None or dv is None:
            warnings.warn(
                "BFunc partial derivatives not supplied; falling back to "
                "central differences",
                stacklevel=2,
            )
        self.du = du if du is not None else self._fd(value, 0)
        self.dv = dv if dv is not None else self._fd(value, 1)

    @staticmethod
    def _fd(value, axis: int):
        def deriv(u: float, v: float) -> float:
            h = 1e-6 * max(1.0, abs(u), abs(v))
            if axis == 0:
                return (value(u + h, v) - value(u - h, v)) / (2.0 * h)
            return (value(u, v + h) - value(u, v - h)) / (2.0 * h)
        return deriv

    @classmethod
    def exponential(cls, c: float, a: float = 0.0, lam: float = 1.0) -> "BFunc":
        """``b(u, v) = c * exp(a*u + lam*v)``; never vanishes for c != 0."""
        if c == 0.0:
            raise ValueError("exponential BFunc requires c != 0")

        def val(u: float, v: float) -> float:
            return c * math.exp(a * u + lam * v)

        return cls(val, lambda u, v: a * val(u, v), lambda u, v: lam * val(u, v))

    @classmethod
    def affine_v(cls, c: float) -> "BFunc":
        """``b(u, v) = v + c``; vanishes on the line v = -c, guard the domain."""
        return cls(lambda u, v: v + c, lambda u, v: 0.0, lambda u, v: 1.0)

    @classmethod
    def from_callables(cls, value, du=None, dv=None) -> "BFunc":
        return cls(value, du, dv)


class CanalFamily(Enum):
    F1 = "F1_sinhN_coshB"
    F2 = "F2_coshN_sinhB"
    F3 = "F3_trig"
    F4 = "F4_nullpair_t"
    F5 = "F5_T_shift_plus"
    F6 = "F6_nullpair_p"
    F7 = "F7_T_shift_minus"

    @property
    def uses_m(self) -> bool:
        return self in (CanalFamily.F1, CanalFamily.F2, CanalFamily.F3)

    @property
    def needs_b(self) -> bool:
        return not self.uses_m

    @property
    def v_wraps(self) -> bool:
        return self is CanalFamily.F3

    @property
    def default_v_domain(self) -> Optional[tuple[float, float]]:
        if self in (CanalFamily.F1, CanalFamily.F2):
            return (-math.inf, math.inf)
        if self is CanalFamily.F3:
            return (0.0, TWO_PI)
        return None  # b-families: the caller owns b's domain

    @property
    def convention(self) -> FrenetConvention:
        return _FAMILY_CONVENTION[self]

    @classmethod
    def parse(cls, tag: str) -> "CanalFamily":
        tag = tag.strip()
        for member in cls:
            if tag == member.name or tag == member.value:
                return member
        raise ValueError(f"unknown canal family {tag!r}")


_FAMILY_CONVENTION = {
    CanalFamily.F1: FrenetConvention.ORTHONORMAL_TIMELIKE_B,
    CanalFamily.F2: FrenetConvention.ORTHONORMAL_TIMELIKE_N,
    CanalFamily.F3: FrenetConvention.ORTHONORMAL_TIMELIKE_T,
    CanalFamily.F4: FrenetConvention.NULL_PAIR_NB,
    CanalFamily.F5: FrenetConvention.NULL_PAIR_TB,
    CanalFamily.F6: FrenetConvention.NULL_PAIR_NB,
    CanalFamily.F7: FrenetConvention.NULL_PAIR_TB,
}


class SurfaceRegime(Enum):
    """Joint causal character of the surface and its meridians."""

    SPACELIKE_SPACELIKE = "spacelike_surface_spacelike_meridians"   # det > 0, E > 0
    TIMELIKE_SPACELIKE = "timelike_surface_spacelike_meridians"     # det < 0, E > 0
    TIMELIKE_TIMELIKE = "timelike_surface_timelike_meridians"       # det < 0, E < 0


def regime_from_form(E: float, F: float, G: float, u: float = math.nan,
                     v: float = math.nan) -> SurfaceRegime:
    """Classify by the signs of (EG - F^2, E); degenerate points are rejected."""
    det = E * G - F * F
    det_scale = max(1.0, abs(E * G), F * F)
    if abs(det) <= TAU_CAUSAL * det_scale:
        raise DegenerateError(
            f"EG - F^2 = {det:.3e} is degenerate at (u, v) = ({u:.6g}, {v:.6g})"
        )
    if det > 0.0:
        if E <= 0.0:
            raise DegenerateError(
                f"positive-definite metric with E = {E:.3e} <= 0 at "
                f"(u, v) = ({u:.6g}, {v:.6g})"
            )
        return SurfaceRegime.SPACELIKE_SPACELIKE
    e_scale = max(1.0, abs(E), abs(F), abs(G))
    if abs(E) <= TAU_CAUSAL * e_scale:
        raise DegenerateError(
            f"light-like meridian (E = {E:.3e}) at (u, v) = ({u:.6g}, {v:.6g})"
        )
    if E > 0.0:
        return SurfaceRegime.TIMELIKE_SPACELIKE
    return SurfaceRegime.TIMELIKE_TIMELIKE


@dataclass(frozen=True)
class FundamentalForm:
    """Coefficients of the induced metric ``E du^2 + 2F du dv + G dv^2``."""

    E: float
    F: float
    G: float
    source: str = "closed"
    corrections: tuple[str, ...] = ()

    @property
    def det(self) -> float:
        return self.E * self.G - self.F * self.F


# Corrections applied to the legacy catalogue transcription, by family.
_CORRECTIONS: dict[CanalFamily, tuple[str, ...]] = {
    CanalFamily.F4: (
        "E: sign between the leading square and the product term is minus",
    ),
    CanalFamily.F5: (
        "E: cross term carries the factor (h' - k1*b)",
    ),
    CanalFamily.F7: (
        "F: the b-proportional term is -b*b_v*(k1*b + h')/h",
    ),
}


class CanalSurface:
    """One parametrized canal-surface family with its evaluation machinery.

    Immutable after construction; all evaluations are pure, so grids may
    be evaluated concurrently.
    """

    def __init__(
        self,
        family: CanalFamily,
        frame: FrameField,
        radius: Radius,
        *,
        m1: int = 1,
        m2: int = 1,
        b: Optional[BFunc] = None,
        u_domain: Optional[tuple[float, float]] = None,
        v_domain: Optional[tuple[float, float]] = None,
    ):
        self.family = family
        self.frame = frame
        self.radius = radius
        if family.uses_m:
            if m1 not in (-1, 1) or m2 not in (-1, 1):
                raise ValueError(f"m1, m2 must be +-1, got ({m1}, {m2})")
            if b is not None:
                raise ValueError(f"{family.name} does not take a free function b")
        else:
            if b is None:
                raise ValueError(f"{family.name} requires a free function b(u, v)")
        self.m1 = int(m1)
        self.m2 = int(m2)
        self.b = b

        self.u_domain = tuple(map(float, u_domain)) if u_domain is not None else frame.domain
        if not (frame.domain[0] <= self.u_domain[0] < self.u_domain[1] <= frame.domain[1]):
            raise ValueError(
                f"u_domain {self.u_domain} is not inside the frame domain {frame.domain}"
            )
        if v_domain is None:
            v_domain = family.default_v_domain
            if v_domain is None:
                raise ValueError(f"{family.name} requires an explicit v_domain (b's domain)")
        self.v_domain = (float(v_domain[0]), float(v_domain[1]))
        if not self.v_domain[0] < self.v_domain[1]:
            raise ValueError(f"v_domain must be a proper interval, got {self.v_domain}")
        self.v_wraps = family.v_wraps

        self._k1 = frame.k1
        self._k2 = frame.k2
        self._scalars = _make_scalars(family, radius)

    # -- domain handling -------------------------------------------------

    def _check_domain(self, u: float, v: float) -> None:
        lo, hi = self.u_domain
        if not (lo <= u <= hi):
            raise DomainError(f"u = {u:.6g} outside [{lo:.6g}, {hi:.6g}]")
        if self.v_wraps:
            return  # trigonometric profile: position is periodic in v
        vlo, vhi = self.v_domain
        if not (vlo <= v <= vhi):
            raise DomainError(f"v = {v:.6g} outside [{vlo:.6g}, {vhi:.6g}]")

    def wrap_v(self, v: float) -> float:
        if not self.v_wraps:
            return v
        vlo, vhi = self.v_domain
        return (v - vlo) % (vhi - vlo) + vlo

    # -- evaluation ------------------------------------------------------

    def position(self, u: float, v: float) -> MVec3:
        """Embedded point ``C(u, v)``, assembled from the frame legs at u."""
        self._check_domain(u, v)
        ct, cn, cb = _position_coeffs(self, u, v)
        al = self.frame.alpha(u)
        T, N, B = self.frame.legs(u)
        return MVec3(
            al.x0 + ct * T.x0 + cn * N.x0 + cb * B.x0,
            al.x1 + ct * T.x1 + cn * N.x1 + cb * B.x1,
            al.x2 + ct * T.x2 + cn * N.x2 + cb * B.x2,
        )

    def tangent_coeffs(self, u: float, v: float) -> tuple[tuple[float, float, float],
                                                          tuple[float, float, float]]:
        """Frame-basis coefficients of the partials ``C_u`` and ``C_v``.

        Uses the family's frame derivative convention; contracting the
        coefficients with the frame's Gram matrix reproduces the closed
        fundamental form.
        """
        return _tangent_coeffs(self, u, v)

    def efg_closed(self, u: float, v: float, variant: str = "corrected"
                   ) -> tuple[float, float, float]:
        """Closed-form (E, F, G) as plain floats; ``variant`` selects the
        corrected catalogue or the legacy ``"printed"`` readings."""
        return _efg(self, u, v, variant)

    def fundamental_form_closed(self, u: float, v: float,
                                variant: str = "corrected") -> FundamentalForm:
        self._check_domain(u, v)
        E, F, G = _efg(self, u, v, variant)
        corrections = _CORRECTIONS.get(self.family, ()) if variant == "corrected" else ()
        return FundamentalForm(E, F, G, source=f"closed/{variant}", corrections=corrections)

    def fd_step(self, u: float, v: float) -> float:
        return FD_SCALE * max(1.0, abs(u), abs(v))

    def fundamental_form_numeric(self, u: float, v: float,
                                 step: Optional[float] = None) -> FundamentalForm:
        """(E, F, G) from central differences of the position map.

        Requires (u, v) at least two steps inside any finite domain edge
        so the differencing stencil stays admissible.
        """
        d = step if step is not None else self.fd_step(u, v)
        lo, hi = self.u_domain
        if u - 2.0 * d < lo or u + 2.0 * d > hi:
            raise DomainError(
                f"u = {u:.6g} is within 2*{d:.3g} of the u-domain boundary"
            )
        if not self.v_wraps:
            vlo, vhi = self.v_domain
            if (math.isfinite(vlo) and v - 2.0 * d < vlo) or \
               (math.isfinite(vhi) and v + 2.0 * d > vhi):
                raise DomainError(
                    f"v = {v:.6g} is within 2*{d:.3g} of the v-domain boundary"
                )
        pu1 = self.position(u + d, v)
        pu0 = self.position(u - d, v)
        pv1 = self.position(u, v + d)
        pv0 = self.position(u, v - d)
        inv = 1.0 / (2.0 * d)
        cu = ((pu1.x0 - pu0.x0) * inv, (pu1.x1 - pu0.x1) * inv, (pu1.x2 - pu0.x2) * inv)
        cv = ((pv1.x0 - pv0.x0) * inv, (pv1.x1 - pv0.x1) * inv, (pv1.x2 - pv0.x2) * inv)
        E = -cu[0] * cu[0] + cu[1] * cu[1] + cu[2] * cu[2]
        F = -cu[0] * cv[0] + cu[1] * cv[1] + cu[2] * cv[2]
        G = -cv[0] * cv[0] + cv[1] * cv[1] + cv[2] * cv[2]
        return FundamentalForm(E, F, G, source="numeric")

    def detect_regime(self, u: float, v: float) -> SurfaceRegime:
        """Causal regime at a point, classified from the numeric form."""
        ff = self.fundamental_form_numeric(u, v)
        return regime_from_form(ff.E, ff.F, ff.G, u, v)


# -- family scalar machinery ---------------------------------------------


def _make_scalars(family: CanalFamily, radius: Radius):
    """Closure returning the family's derived radius scalars at u.

    Derivatives of the derived scalars use the chain rule when r'' is
    available and central differences of the derived value otherwise.
    """
    r, d1, d2 = radius.value, radius.d1, radius.d2

    def base(u: float) -> tuple[float, float]:
        rv = r(u)
        if rv <= 0.0:
            raise DomainError(f"radius r({u:.6g}) = {rv:.6g} must be positive")
        return rv, d1(u)

    def h_of(u: float) -> float:
        rv, s1 = base(u)
        return rv * s1

    def hp_of(u: float, rv: float, s1: float) -> float:
        if d2 is not None:
            return s1 * s1 + rv * d2(u)
        return _central(h_of, u)

    if family in (CanalFamily.F1, CanalFamily.F2):
        def g_of(u: float) -> float:
            rv, s1 = base(u)
            return rv * math.sqrt(1.0 + s1 * s1)

        def scalars(u: float):
            rv, s1 = base(u)
            root = math.sqrt(1.0 + s1 * s1)
            g = rv * root
            h = rv * s1
            if d2 is not None:
                s2 = d2(u)
                gp = s1 * root + rv * s1 * s2 / root
                hp = s1 * s1 + rv * s2
            else:
                gp = _central(g_of, u)
                hp = _central(h_of, u)
            return g, gp, h, hp
        return scalars

    if family is CanalFamily.F3:
        def p_of(u: float) -> float:
            rv, s1 = base(u)
            q = s1 * s1 - 1.0
            if q <= 0.0:
                raise DomainError(
                    f"trigonometric family needs r'(u)^2 > 1, got r'({u:.6g}) = {s1:.6g}"
                )
            return rv * math.sqrt(q)

        def scalars(u: float):
            rv, s1 = base(u)
            q = s1 * s1 - 1.0
            if q <= 0.0:
                raise DomainError(
                    f"trigonometric family needs r'(u)^2 > 1, got r'({u:.6g}) = {s1:.6g}"
                )
            root = math.sqrt(q)
            p = rv * root
            h = rv * s1
            if d2 is not None:
                s2 = d2(u)
                pp = s1 * root + rv * s1 * s2 / root
                hp = s1 * s1 + rv * s2
            else:
                pp = _central(p_of, u)
                hp = _central(h_of, u)
            return p, pp, h, hp
        return scalars

    if family is CanalFamily.F4:
        def t_of(u: float) -> float:
            rv, s1 = base(u)
            return -rv * rv * (1.0 + s1 * s1)

        def scalars(u: float):
            rv, s1 = base(u)
            t = -rv * rv * (1.0 + s1 * s1)
            h = rv * s1
            if d2 is not None:
                s2 = d2(u)
                tp = -2.0 * rv * s1 * (1.0 + s1 * s1) - 2.0 * rv * rv * s1 * s2
                hp = s1 * s1 + rv * s2
            else:
                tp = _central(t_of, u)
                hp = _central(h_of, u)
            return t, tp, h, hp
        return scalars

    if family is CanalFamily.F6:
        def p_of(u: float) -> float:
            rv, s1 = base(u)
            return rv * rv * (1.0 - s1 * s1)

        def scalars(u: float):
            rv, s1 = base(u)
            p = rv * rv * (1.0 - s1 * s1)
            h = rv * s1
            if d2 is not None:
                s2 = d2(u)
                pp = 2.0 * rv * s1 * (1.0 - s1 * s1) - 2.0 * rv * rv * s1 * s2
                hp = s1 * s1 + rv * s2
            else:
                pp = _central(p_of, u)
                hp = _central(h_of, u)
            return p, pp, h, hp
        return scalars

    # F5 / F7: only r, h, h' enter
    def scalars(u: float):
        rv, s1 = base(u)
        h = rv * s1
        if d2 is not None:
            hp = s1 * s1 + rv * d2(u)
        else:
            hp = _central(h_of, u)
        return rv, h, hp
    return scalars


def _b_at(surface: CanalSurface, u: float, v: float) -> tuple[float, float, float]:
    b = surface.b.value(u, v)
    if abs(b) < MIN_DENOM and surface.family in (CanalFamily.F4, CanalFamily.F6):
        raise DomainError(f"b({u:.6g}, {v:.6g}) = {b:.3e} too close to zero")
    return b, surface.b.du(u, v), surface.b.dv(u, v)


def _guard_h(h: float, u: float) -> None:
    if abs(h) < MIN_DENOM:
        raise DomainError(f"h({u:.6g}) = {h:.3e} too close to zero for this family")


def _position_coeffs(surface: CanalSurface, u: float, v: float
                     ) -> tuple[float, float, float]:
    """(T, N, B) coefficients of the position map relative to alpha(u)."""
    fam = surface.family
    m1, m2 = surface.m1, surface.m2
    if fam is CanalFamily.F1:
        g, _, h, _ = surface._scalars(u)
        return h, g * m1 * math.sinh(v), g * m2 * math.cosh(v)
    if fam is CanalFamily.F2:
        g, _, h, _ = surface._scalars(u)
        return h, g * m1 * math.cosh(v), g * m2 * math.sinh(v)
    if fam is CanalFamily.F3:
        p, _, h, _ = surface._scalars(u)
        return -h, p * m1 * math.cos(v), p * m2 * math.sin(v)
    if fam is CanalFamily.F4:
        t, _, h, _ = surface._scalars(u)
        b, _, _ = _b_at(surface, u, v)
        return h, b, t / (2.0 * b)
    if fam is CanalFamily.F5:
        rv, h, _ = surface._scalars(u)
        _guard_h(h, u)
        b = surface.b.value(u, v)
        return -(rv * rv + b * b) / (2.0 * h), b, h
    if fam is CanalFamily.F6:
        p, _, h, _ = surface._scalars(u)
        b, _, _ = _b_at(surface, u, v)
        return -h, b, p / (2.0 * b)
    # F7
    rv, h, _ = surface._scalars(u)
    _guard_h(h, u)
    b = surface.b.value(u, v)
    return (b * b - rv * rv) / (2.0 * h), b, -h


def _tangent_coeffs(surface: CanalSurface, u: float, v: float):
    fam = surface.family
    k1, k2 = surface._k1(u), surface._k2(u)
    m1, m2 = surface.m1, surface.m2
    if fam is CanalFamily.F1:
        g, gp, h, hp = surface._scalars(u)
        sh, ch = math.sinh(v), math.cosh(v)
        cu = (1.0 + hp - k1 * m1 * g * sh,
              k1 * h - k2 * m2 * g * ch + m1 * gp * sh,
              -k2 * m1 * g * sh + m2 * gp * ch)
        cv = (0.0, g * m1 * ch, g * m2 * sh)
        return cu, cv
    if fam is CanalFamily.F2:
        g, gp, h, hp = surface._scalars(u)
        sh, ch = math.sinh(v), math.cosh(v)
        cu = (1.0 + hp - k1 * m1 * g * ch,
              -k1 * h + k2 * m2 * g * sh + m1 * gp * ch,
              k2 * m1 * g * ch + m2 * gp * sh)
        cv = (0.0, g * m1 * sh, g * m2 * ch)
        return cu, cv
    if fam is CanalFamily.F3:
        p, pp, h, hp = surface._scalars(u)
        cs, sn = math.cos(v), math.sin(v)
        cu = (1.0 - hp + k1 * m1 * p * cs,
              -k1 * h - k2 * m2 * p * sn + m1 * pp * cs,
              k2 * m1 * p * cs + m2 * pp * sn)
        cv = (0.0, -p * m1 * sn, p * m2 * cs)
        return cu, cv
    if fam is CanalFamily.F4:
        t, tp, h, hp = surface._scalars(u)
        b, bu, bv = _b_at(surface, u, v)
        b2 = b * b
        cu = (1.0 + hp - k1 * t / (2.0 * b),
              k1 * h + bu + k2 * b,
              (tp * b - bu * t - k2 * b * t) / (2.0 * b2))
        cv = (0.0, bv, -t * bv / (2.0 * b2))
        return cu, cv
    if fam is CanalFamily.F5:
        rv, h, hp = surface._scalars(u)
        _guard_h(h, u)
        b, bu, bv = _b_at(surface, u, v)
        q = rv * rv + b * b
        qu = (2.0 * h * (h + bu * b) - q * hp) / (2.0 * h * h)
        cu = (1.0 - qu + k2 * b,
              bu - k1 * q / (2.0 * h) - k2 * h,
              hp - k1 * b)
        cv = (-b * bv / h, bv, 0.0)
        return cu, cv
    if fam is CanalFamily.F6:
        p, pp, h, hp = surface._scalars(u)
        b, bu, bv = _b_at(surface, u, v)
        b2 = b * b
        cu = (1.0 - hp - k1 * p / (2.0 * b),
              -k1 * h + bu + k2 * b,
              (pp * b - bu * p - k2 * p * b) / (2.0 * b2))
        cv = (0.0, bv, -p * bv / (2.0 * b2))
        return cu, cv
    # F7
    rv, h, hp = surface._scalars(u)
    _guard_h(h, u)
    b, bu, bv = _b_at(surface, u, v)
    q = b * b - rv * rv
    pu = (2.0 * h * bu * b - 2.0 * h * h - q * hp) / (2.0 * h * h)
    cu = (1.0 + pu + k2 * b,
          bu + k1 * q / (2.0 * h) + k2 * h,
          -k1 * b - hp)
    cv = (b * bv / h, bv, 0.0)
    return cu, cv


def _efg(surface: CanalSurface, u: float, v: float, variant: str
         ) -> tuple[float, float, float]:
    if variant not in ("corrected", "printed"):
        raise ValueError(f"unknown closed-form variant {variant!r}")
    printed = variant == "printed"
    fam = surface.family
    k1, k2 = surface._k1(u), surface._k2(u)
    m1, m2 = surface.m1, surface.m2

    if fam is CanalFamily.F1:
        g, gp, h, hp = surface._scalars(u)
        sh, ch = math.sinh(v), math.cosh(v)
        e1 = k1 * h - k2 * m2 * g * ch + m1 * gp * sh
        e2 = k2 * m1 * g * sh - m2 * gp * ch
        e3 = 1.0 - k1 * m1 * g * sh + hp
        E = e1 * e1 - e2 * e2 + e3 * e3
        F = g * (k1 * m1 * h * ch - k2 * m1 * m2 * g + (m1 * m1 - m2 * m2) * gp * ch * sh)
        G = g * g * (m1 * m1 * ch * ch - m2 * m2 * sh * sh)
        return E, F, G

    if fam is CanalFamily.F2:
        g, gp, h, hp = surface._scalars(u)
        sh, ch = math.sinh(v), math.cosh(v)
        e1 = -k1 * h + k2 * m2 * g * sh + m1 * gp * ch
        e2 = k2 * m1 * g * ch + m2 * gp * sh
        e3 = 1.0 - k1 * m1 * g * ch + hp
        E = -e1 * e1 + e2 * e2 + e3 * e3
        F = g * (k1 * m1 * h * sh + k2 * m1 * m2 * g + (-m1 * m1 + m2 * m2) * gp * ch * sh)
        G = g * g * (-m1 * m1 * sh * sh + m2 * m2 * ch * ch)
        return E, F, G

    if fam is CanalFamily.F3:
        p, pp, h, hp = surface._scalars(u)
        cs, sn = math.cos(v), math.sin(v)
        e1 = 1.0 + k1 * m1 * p * cs - hp
        e2 = k1 * h + k2 * m2 * p * sn - m1 * pp * cs
        e3 = k2 * m1 * p * cs + m2 * pp * sn
        E = -e1 * e1 + e2 * e2 + e3 * e3
        F = p * (k1 * m1 * h * sn + k2 * m1 * m2 * p + (-m1 * m1 + m2 * m2) * pp * cs * sn)
        G = p * p * (m1 * m1 * sn * sn + m2 * m2 * cs * cs)
        return E, F, G

    if fam is CanalFamily.F4:
        t, tp, h, hp = surface._scalars(u)
        b, bu, bv = _b_at(surface, u, v)
        b2 = b * b
        lead = 1.0 - k1 * t / (2.0 * b) + hp
        prod = (bu + k2 * b + k1 * h) * (bu * t + k2 * b * t - b * tp) / b2
        E = lead * lead + prod if printed else lead * lead - prod
        k2_terms = 1.0 if printed else 2.0
        F = -bv * (2.0 * bu * t + k2_terms * k2 * b * t + k1 * h * t - b * tp) / (2.0 * b2)
        G = -bv * bv * t / b2
        return E, F, G

    if fam is CanalFamily.F5:
        rv, h, hp = surface._scalars(u)
        _guard_h(h, u)
        b, bu, bv = _b_at(surface, u, v)
        q = b * b + rv * rv
        lead = bu - q * k1 / (2.0 * h) - k2 * h
        cross = 1.0 + k2 * b - (2.0 * h * (h + bu * b) - q * hp) / (2.0 * h * h)
        factor = 1.0 if printed else (hp - k1 * b)
        E = lead * lead + 2.0 * factor * cross
        F = bv * (bu - k1 * q / (2.0 * h) - k2 * h) + bv * b * (b * k1 - hp) / h
        G = bv * bv
        return E, F, G

    if fam is CanalFamily.F6:
        p, pp, h, hp = surface._scalars(u)
        b, bu, bv = _b_at(surface, u, v)
        b2 = b * b
        lead = -1.0 + k1 * p / (2.0 * b) + hp
        E = lead * lead - (bu + k2 * b - k1 * h) * (p * (bu + k2 * b) - pp * b) / b2
        k2_terms = 1.0 if printed else 2.0
        F = -bv * (p * (2.0 * bu + k2_terms * k2 * b - k1 * h) - pp * b) / (2.0 * b2)
        G = -p * bv * bv / b2
        return E, F, G

    # F7
    rv, h, hp = surface._scalars(u)
    _guard_h(h, u)
    b, bu, bv = _b_at(surface, u, v)
    q = b * b - rv * rv
    lead = bu + k1 * q / (2.0 * h) + k2 * h
    E = lead * lead + (k1 * b + hp) * (
        2.0 * h * h - 2.0 * bu * b * h - 2.0 * h * h * (1.0 + k2 * b) + q * hp
    ) / (h * h)
    if printed:
        F = bv * lead + bv * b * (-k1 * b + hp) / h
    else:
        F = bv * lead + bv * b * (-k1 * b - hp) / h
    G = bv * bv
    return E, F, G


# -- closed vs numeric audit ----------------------------------------------


@dataclass(frozen=True)
class FormAuditReport:
    """Worst deviations of a closed-form variant from the numeric form."""

    variant: str
    passed: bool
    n_points: int
    worst: dict  # coefficient -> {dev, rel, u, v, closed, numeric}
    tol_abs: float
    tol_rel: float

    def to_dict(self) -> dict:
        return {
            "variant": self.variant,
            "passed": self.passed,
            "n_points": self.n_points,
            "tol_abs": self.tol_abs,
            "tol_rel": self.tol_rel,
            "worst": self.worst,
        }


def audit_closed_vs_numeric(
    surface: CanalSurface,
    grid: tuple[int, int] = (16, 16),
    *,
    variant: str = "corrected",
    v_window: Optional[tuple[float, float]] = None,
    tol_abs: float = 1e-6,
    tol_rel: float = 1e-6,
) -> FormAuditReport:
    """Compare a closed-form variant against central differences on a grid.

    Points pass when ``|closed - numeric| <= max(tol_abs, tol_rel*|numeric|)``
    per coefficient.  The grid is inset from finite domain edges so the
    differencing stencil stays admissible.
    """
    nu, nv = grid
    if nu < 2 or nv < 2:
        raise ValueError("audit grid must be at least 2x2")
    us = _inset_grid(surface.u_domain, nu)
    if v_window is None:
        vlo, vhi = surface.v_domain
        if math.isfinite(vlo) and math.isfinite(vhi):
            v_window = (vlo, vhi)
        else:
            v_window = (-1.0, 1.0)
    if surface.v_wraps:
        vs = np.linspace(v_window[0], v_window[1], nv, endpoint=False)
    else:
        vs = _inset_grid(v_window, nv)

    worst = {
        name: {"dev": -1.0, "rel": 0.0, "u": math.nan, "v": math.nan,
               "closed": math.nan, "numeric": math.nan}
        for name in ("E", "F", "G")
    }
    passed = True
    n = 0
    for u in us:
        for v in vs:
            u_f, v_f = float(u), float(v)
            num = surface.fundamental_form_numeric(u_f, v_f)
            clo = surface.efg_closed(u_f, v_f, variant)
            for name, num_val, clo_val in zip(("E", "F", "G"), (num.E, num.F, num.G), clo):
                dev = abs(clo_val - num_val)
                if dev > max(tol_abs, tol_rel * abs(num_val)):
                    passed = False
                if dev > worst[name]["dev"]:
                    worst[name] = {
                        "dev": dev,
                        "rel": dev / max(1.0, abs(num_val)),
                        "u": u_f,
                        "v": v_f,
                        "closed": clo_val,
                        "numeric": num_val,
                    }
            n += 1
    return FormAuditReport(variant, passed, n, worst, tol_abs, tol_rel)


def _inset_grid(domain: tuple[float, float], n: int) -> np.ndarray:
    lo, hi = domain
    margin = 3.0 * FD_SCALE * max(1.0, abs(lo), abs(hi))
    return np.linspace(lo + margin, hi - margin, n)
