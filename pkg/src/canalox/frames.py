"""Spine curves with adapted frames (T, N, B) and curvature functions.

A :class:`FrameField` bundles a spine curve ``alpha(u)``, three frame
legs, and two curvature functions ``k1(u)``, ``k2(u)``.  The frame is
never differentiated by this library: the surface catalogue consumes
``(T, N, B, k1, k2)`` as given, so the only hard requirement is that the
legs reproduce their declared Gram matrix everywhere on the domain.
Construction therefore runs a Gram audit on a default 64-point grid and
fails loudly on violation.

Three kinds of frame occur in the catalogue, identified by the causal
characters of the legs:

* orthonormal with exactly one time-like leg, e.g. ``(S, S, T)``;
* a space-like ``T`` with a null pair ``(N, B)`` normalized to
  ``<N, B> = 1`` (signature ``(S, L, L)``);
* a null pair ``(T, B)`` with ``<T, B> = 1`` around a unit space-like
  ``N`` (signature ``(L, S, L)``).

Each surface family assumes a specific derivative convention for its
frame (which legs ``k1`` and ``k2`` couple, and with which signs).  The
conventions are listed in :class:`FrenetConvention`; they are offered as
an optional, report-only consistency audit and as exact constructors for
constant-curvature frames, not enforced at construction -- a straight
spine with ``k1 = k2 = 0`` satisfies every convention trivially.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.linalg import expm

from .errors import FrameAuditError
from .minkowski import CausalCharacter, MVec3

# Gram residual admitted at construction; analytic frames should be
# exact, so this catches transcription errors rather than round-off.
TAU_FRAME: float = 1e-8

_S = CausalCharacter.SPACE_LIKE
_T = CausalCharacter.TIME_LIKE
_L = CausalCharacter.LIGHT_LIKE

Signature = tuple[CausalCharacter, CausalCharacter, CausalCharacter]

# Minkowski metric in coordinates (time-like axis first).
_METRIC = np.diag([-1.0, 1.0, 1.0])


def expected_gram(signature: Signature) -> np.ndarray:
    """Expected 3x3 matrix of pairwise leg products for a signature.

    Orthonormal signatures must carry exactly one time-like leg.  The two
    null-leg layouts used by the surface catalogue pair their null legs
    to ``+1``; any other combination does not span the metric with
    signature (-, +, +) and is rejected.
    """
    n_null = signature.count(_L)
    if n_null == 0:
        if signature.count(_T) != 1:
            raise ValueError(
                f"orthonormal signature needs exactly one time-like leg, got {signature}"
            )
        return np.diag([1.0 if c is _S else -1.0 for c in signature])
    if signature == (_S, _L, _L):
        return np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
    if signature == (_L, _S, _L):
        return np.array([[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]])
    raise ValueError(f"unsupported frame signature {signature}")


class FrenetConvention(Enum):
    """Derivative conventions the surface catalogue assumes for its frames.

    Each member fixes the signature of (T, N, B) and the coefficient
    matrix M(k1, k2) in ``(T, N, B)' = M (T, N, B)``.  Every M is an
    infinitesimal isometry of its Gram matrix, so exact solutions of the
    system keep the frame exactly adapted.
    """

    ORTHONORMAL_TIMELIKE_B = "orthonormal timelike B"
    ORTHONORMAL_TIMELIKE_N = "orthonormal timelike N"
    ORTHONORMAL_TIMELIKE_T = "orthonormal timelike T"
    NULL_PAIR_NB = "null pair N,B"
    NULL_PAIR_TB = "null pair T,B"

    @property
    def signature(self) -> Signature:
        return _CONVENTION_SIGNATURE[self]

    def frenet_matrix(self, k1: float, k2: float) -> np.ndarray:
        """Coefficient matrix of the frame derivative system (rows T, N, B)."""
        if self is FrenetConvention.ORTHONORMAL_TIMELIKE_B:
            return np.array([[0.0, k1, 0.0], [-k1, 0.0, -k2], [0.0, -k2, 0.0]])
        if self is FrenetConvention.ORTHONORMAL_TIMELIKE_N:
            return np.array([[0.0, -k1, 0.0], [-k1, 0.0, k2], [0.0, k2, 0.0]])
        if self is FrenetConvention.ORTHONORMAL_TIMELIKE_T:
            return np.array([[0.0, k1, 0.0], [k1, 0.0, k2], [0.0, -k2, 0.0]])
        if self is FrenetConvention.NULL_PAIR_NB:
            return np.array([[0.0, k1, 0.0], [0.0, k2, 0.0], [-k1, 0.0, -k2]])
        return np.array([[0.0, k1, 0.0], [k2, 0.0, -k1], [0.0, -k2, 0.0]])

    def canonical_legs(self) -> np.ndarray:
        """A coordinate frame realizing the signature exactly (rows T, N, B)."""
        return _CANONICAL_LEGS[self].copy()


_CONVENTION_SIGNATURE: dict[FrenetConvention, Signature] = {
    FrenetConvention.ORTHONORMAL_TIMELIKE_B: (_S, _S, _T),
    FrenetConvention.ORTHONORMAL_TIMELIKE_N: (_S, _T, _S),
    FrenetConvention.ORTHONORMAL_TIMELIKE_T: (_T, _S, _S),
    FrenetConvention.NULL_PAIR_NB: (_S, _L, _L),
    FrenetConvention.NULL_PAIR_TB: (_L, _S, _L),
}

_SQ2 = 1.0 / math.sqrt(2.0)
_CANONICAL_LEGS: dict[FrenetConvention, np.ndarray] = {
    FrenetConvention.ORTHONORMAL_TIMELIKE_B: np.array(
        [[0.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 0.0]]
    ),
    FrenetConvention.ORTHONORMAL_TIMELIKE_N: np.array(
        [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]
    ),
    FrenetConvention.ORTHONORMAL_TIMELIKE_T: np.array(
        [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    ),
    FrenetConvention.NULL_PAIR_NB: np.array(
        [[0.0, 0.0, 1.0], [_SQ2, _SQ2, 0.0], [-_SQ2, _SQ2, 0.0]]
    ),
    FrenetConvention.NULL_PAIR_TB: np.array(
        [[_SQ2, _SQ2, 0.0], [0.0, 0.0, 1.0], [-_SQ2, _SQ2, 0.0]]
    ),
}


@dataclass(eq=False)
class FrameField:
    """Spine curve plus frame legs and curvatures on a closed u-interval.

    All function-valued fields must be pure and safe for concurrent
    evaluation; the library never mutates a frame after construction.
    """

    alpha: Callable[[float], MVec3]
    T: Callable[[float], MVec3]
    N: Callable[[float], MVec3]
    B: Callable[[float], MVec3]
    k1: Callable[[float], float]
    k2: Callable[[float], float]
    domain: tuple[float, float]
    signature: Signature
    gram: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        lo, hi = self.domain
        if not (lo < hi):
            raise ValueError(f"frame domain must be a proper interval, got {self.domain}")
        self.gram = expected_gram(self.signature)

    def legs(self, u: float) -> tuple[MVec3, MVec3, MVec3]:
        return self.T(u), self.N(u), self.B(u)

    def legs_array(self, u: float) -> np.ndarray:
        """Rows T, N, B as a 3x3 array (coordinates along columns)."""
        return np.array([self.T(u).as_tuple(), self.N(u).as_tuple(), self.B(u).as_tuple()])


@dataclass(frozen=True)
class FrameAuditReport:
    """Worst Gram-matrix deviations of a frame over a sample grid."""

    max_residual: float
    worst_u: float
    worst_entry: tuple[int, int]
    max_orthogonality_residual: float   # entries whose expected product is 0
    max_unit_residual: float            # entries whose expected product is +-1
    grid_points: int

    @property
    def passed(self) -> bool:
        return self.max_residual <= TAU_FRAME

    def to_dict(self) -> dict:
        legs = ("T", "N", "B")
        i, j = self.worst_entry
        return {
            "max_residual": self.max_residual,
            "worst_u": self.worst_u,
            "worst_entry": f"<{legs[i]},{legs[j]}>",
            "max_orthogonality_residual": self.max_orthogonality_residual,
            "max_unit_residual": self.max_unit_residual,
            "grid_points": self.grid_points,
            "passed": self.passed,
        }


def audit_frame(frame: FrameField, grid_points: int = 64) -> FrameAuditReport:
    """Report the worst deviation of the leg products from the declared Gram."""
    if grid_points < 2:
        raise ValueError("grid_points must be at least 2")
    us = np.linspace(frame.domain[0], frame.domain[1], grid_points)
    expected = frame.gram
    worst = -1.0
    worst_u = us[0]
    worst_entry = (0, 0)
    max_offdiag = 0.0
    max_unit = 0.0
    for u in us:
        legs = frame.legs_array(float(u))
        gram = legs @ _METRIC @ legs.T
        dev = np.abs(gram - expected)
        ij = np.unravel_index(int(np.argmax(dev)), dev.shape)
        if dev[ij] > worst:
            worst = float(dev[ij])
            worst_u = float(u)
            worst_entry = (int(ij[0]), int(ij[1]))
        zero_mask = expected == 0.0
        if zero_mask.any():
            max_offdiag = max(max_offdiag, float(dev[zero_mask].max()))
        if (~zero_mask).any():
            max_unit = max(max_unit, float(dev[~zero_mask].max()))
    return FrameAuditReport(worst, worst_u, worst_entry, max_offdiag, max_unit, grid_points)


def make_frame(
    alpha: Callable[[float], MVec3],
    T: Callable[[float], MVec3],
    N: Callable[[float], MVec3],
    B: Callable[[float], MVec3],
    k1: Callable[[float], float],
    k2: Callable[[float], float],
    domain: tuple[float, float],
    signature: Signature,
    grid_points: int = 64,
    tol: float = TAU_FRAME,
) -> FrameField:
    """Build a frame field, auditing the Gram matrix on a grid.

    Raises :class:`FrameAuditError` carrying the worst offending u and
    residual if any leg product deviates from the declared signature by
    more than ``tol``.
    """
    frame = FrameField(alpha, T, N, B, k1, k2, domain, signature)
    report = audit_frame(frame, grid_points)
    if report.max_residual > tol:
        raise FrameAuditError(report.worst_u, report.max_residual, report.worst_entry)
    return frame


@dataclass(frozen=True)
class FrenetAuditReport:
    """Central-difference residual of a frame against a derivative convention."""

    max_residual: float
    worst_u: float
    worst_leg: str
    grid_points: int
    fd_step: float

    def to_dict(self) -> dict:
        return {
            "max_residual": self.max_residual,
            "worst_u": self.worst_u,
            "worst_leg": self.worst_leg,
            "grid_points": self.grid_points,
            "fd_step": self.fd_step,
        }


def audit_frenet(
    frame: FrameField, convention: FrenetConvention, grid_points: int = 16
) -> FrenetAuditReport:
    """Report-only check that the frame satisfies its derivative convention.

    Compares central differences of the legs against M(k1, k2) applied to
    the frame, on an interior grid.  Not a precondition anywhere: the
    straight-spine case is degenerate for any convention, yet valid.
    """
    lo, hi = frame.domain
    h = 1e-5 * (hi - lo)
    us = np.linspace(lo + h, hi - h, grid_points)
    worst = -1.0
    worst_u = float(us[0])
    worst_leg = "T"
    names = ("T", "N", "B")
    for u in us:
        u = float(u)
        plus = frame.legs_array(u + h)
        minus = frame.legs_array(u - h)
        derivative = (plus - minus) / (2.0 * h)
        predicted = convention.frenet_matrix(frame.k1(u), frame.k2(u)) @ frame.legs_array(u)
        dev = np.abs(derivative - predicted)
        row = int(np.argmax(dev.max(axis=1)))
        if dev.max() > worst:
            worst = float(dev.max())
            worst_u = u
            worst_leg = names[row]
    return FrenetAuditReport(worst, worst_u, worst_leg, grid_points, h)


def _const(value: float) -> Callable[[float], float]:
    return lambda u: value


def constant_frame(
    convention: FrenetConvention,
    domain: tuple[float, float],
    origin: MVec3 = MVec3(0.0, 0.0, 0.0),
) -> FrameField:
    """Straight spine ``alpha(u) = origin + u*T`` with the convention's canonical legs.

    Curvatures are identically zero, so the frame satisfies every
    derivative convention exactly.
    """
    legs = convention.canonical_legs()
    t_vec, n_vec, b_vec = (MVec3(*row) for row in legs)

    def alpha(u: float) -> MVec3:
        return origin + u * t_vec

    return make_frame(
        alpha, _const_vec(t_vec), _const_vec(n_vec), _const_vec(b_vec),
        _const(0.0), _const(0.0), domain, convention.signature,
    )


def _const_vec(v: MVec3) -> Callable[[float], MVec3]:
    return lambda u: v


def constant_curvature_frame(
    convention: FrenetConvention,
    k1: float,
    k2: float,
    domain: tuple[float, float],
    u0: float = 0.0,
    origin: MVec3 = MVec3(0.0, 0.0, 0.0),
) -> FrameField:
    """Exact frame with constant curvatures, built from the matrix exponential.

    The stacked system ``(alpha, T, N, B)' = K (alpha, T, N, B)`` with
    constant K is solved as ``expm(K (u - u0))`` applied to the initial
    state, so the legs satisfy the convention and its Gram matrix to
    machine precision for any (k1, k2).
    """
    K = np.zeros((4, 4))
    K[0, 1] = 1.0
    K[1:, 1:] = convention.frenet_matrix(k1, k2)
    state0 = np.vstack([np.array(origin.as_tuple()), convention.canonical_legs()])

    @lru_cache(maxsize=4096)
    def _state(u: float) -> tuple[tuple[float, ...], ...]:
        s = expm(K * (u - u0)) @ state0
        return tuple(tuple(row) for row in s)

    def _row(i: int) -> Callable[[float], MVec3]:
        return lambda u: MVec3(*_state(u)[i])

    return make_frame(
        _row(0), _row(1), _row(2), _row(3),
        _const(k1), _const(k2), domain, convention.signature,
    )
