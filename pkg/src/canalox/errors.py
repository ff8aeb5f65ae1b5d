"""Exception hierarchy shared by all canalox modules."""

from __future__ import annotations


class CanaloxError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(CanaloxError):
    """A run configuration is malformed or self-inconsistent."""


class DomainError(CanaloxError):
    """An evaluation was requested outside the admissible domain.

    Covers points outside declared (u, v) ranges as well as pointwise
    guards such as vanishing denominators or a radius slope leaving the
    range a family requires.
    """


class DegenerateError(CanaloxError):
    """The induced metric is degenerate at the queried point.

    Signals that the point must be excluded from any loxodrome domain:
    no causal regime applies where EG - F^2 (or the meridian coefficient
    E, for time-like surfaces) vanishes.
    """


class FrameAuditError(CanaloxError):
    """A frame field failed its Gram-matrix audit at construction."""

    def __init__(self, worst_u: float, residual: float, entry: tuple[int, int]):
        self.worst_u = worst_u
        self.residual = residual
        self.entry = entry
        legs = ("T", "N", "B")
        super().__init__(
            f"frame audit failed: |<{legs[entry[0]]},{legs[entry[1]]}> - expected| "
            f"= {residual:.3e} at u = {worst_u:.6g}"
        )


class RegimeMismatchError(CanaloxError):
    """The causal regime at a point disagrees with the declared one."""

    def __init__(self, u: float, v: float, expected, found=None):
        self.u = u
        self.v = v
        self.expected = expected
        self.found = found
        found_txt = found.value if found is not None else "none of the admissible regimes"
        super().__init__(
            f"regime mismatch at (u, v) = ({u:.6g}, {v:.6g}): "
            f"declared {expected.value}, found {found_txt}"
        )


class NoRealRootError(CanaloxError):
    """The slope quadratic has no real root at this point.

    No constant-angle curve with the requested angle passes through the
    point in this parametrization.
    """

    def __init__(self, u: float, v: float, discriminant: float):
        self.u = u
        self.v = v
        self.discriminant = discriminant
        super().__init__(
            f"no real slope at (u, v) = ({u:.6g}, {v:.6g}); "
            f"discriminant = {discriminant:.3e}"
        )


class TangentToVError(CanaloxError):
    """The curve tangent is parallel to the v-coordinate direction.

    The slope equation degenerates (quadratic and linear coefficients
    both vanish while the constant term does not), so the curve cannot
    be written as v(u) here.
    """

    def __init__(self, u: float, v: float):
        self.u = u
        self.v = v
        super().__init__(
            f"curve tangent parallel to the v-direction at (u, v) = "
            f"({u:.6g}, {v:.6g}); cannot continue as v(u)"
        )


class StepError(CanaloxError):
    """Integration left the declared v-domain."""

    def __init__(self, u: float, v: float, v_domain: tuple[float, float]):
        self.u = u
        self.v = v
        self.v_domain = v_domain
        super().__init__(
            f"v = {v:.6g} left the domain [{v_domain[0]:.6g}, {v_domain[1]:.6g}] "
            f"at u = {u:.6g}"
        )
