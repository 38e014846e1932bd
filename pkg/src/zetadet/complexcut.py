"""Branch-cut complex arithmetic along a ray.

A spectral cut is the ray R_theta = {rho * e^{i*theta} : rho >= 0}.  The cut
logarithm ``log_cut`` returns the branch with imaginary part in the open
window (theta, theta + 2*pi); ``pow_cut`` builds the complex powers
lambda^{-s} used by spectral zeta functions.  ``Sector`` models solid angles
with per-endpoint openness, used for Agmon certification and theorem
hypothesis checks.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import OnCutError, ZeroInputError

TAU = 2.0 * math.pi


def _wrap_cut(theta: float) -> float:
    """Reduce an angle into [-2*pi, 2*pi) by a multiple of 4*pi.

    The window is two turns wide on purpose: theta and theta + 2*pi denote
    different branches and must stay distinguishable.
    """
    return theta - 2.0 * TAU * math.floor((theta + TAU) / (2.0 * TAU))


@dataclass(frozen=True)
class CutAngle:
    """A spectral-cut direction, kept as given plus a normalized key."""

    raw: float = field(compare=False)
    normalized: float = field(init=False, compare=True)

    def __post_init__(self):
        object.__setattr__(self, "normalized", _wrap_cut(float(self.raw)))

    def shifted(self, delta: float) -> "CutAngle":
        return CutAngle(self.normalized + delta)

    def doubled(self) -> "CutAngle":
        return CutAngle(2.0 * self.normalized)

    def __float__(self) -> float:
        return self.normalized


def as_cut(theta) -> CutAngle:
    return theta if isinstance(theta, CutAngle) else CutAngle(float(theta))


def ang_dist(alpha: float, beta: float) -> float:
    """Angular distance between two directions, in [0, pi]."""
    d = math.fmod(alpha - beta, TAU)
    if d < 0.0:
        d += TAU
    return min(d, TAU - d)


def phase(z: complex) -> float:
    """Argument of z in (-pi, pi]; tolerates subnormal components."""
    return math.atan2(z.imag, z.real)


def log_cut(lam: complex, theta, on_cut_tol: float = 0.0) -> complex:
    """Branch of log(lam) with imaginary part in (theta, theta + 2*pi).

    Raises ZeroInputError for lam = 0 and OnCutError when the argument of lam
    is within ``on_cut_tol`` of the cut direction (exact hit for tol = 0).
    """
    lam = complex(lam)
    if lam == 0:
        raise ZeroInputError("log_cut requires a nonzero argument")
    cut = as_cut(theta)
    th = cut.normalized
    arg = phase(lam)
    if ang_dist(arg, th) <= on_cut_tol:
        raise OnCutError(
            f"{lam} lies on the cut ray at angle {th} (tol {on_cut_tol})"
        )
    k = math.ceil((th - arg) / TAU)
    alpha = arg + TAU * k
    # floating-point guard: keep alpha strictly inside (th, th + 2*pi)
    if alpha <= th:
        alpha += TAU
    elif alpha > th + TAU:
        alpha -= TAU
    return complex(math.log(abs(lam)), alpha)


def pow_cut(lam: complex, s: complex, theta, on_cut_tol: float = 0.0) -> complex:
    """lambda^{-s} along the cut: exp(-s * log_cut(lam, theta))."""
    return cmath.exp(-complex(s) * log_cut(lam, theta, on_cut_tol))


@dataclass(frozen=True)
class Sector:
    """Solid angle {rho * e^{i*t} : rho > 0, t in the interval (lo, hi)}.

    Endpoint membership follows ``lo_closed`` / ``hi_closed``.  The origin is
    never a member.
    """

    lo: float
    hi: float
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if not (self.lo < self.hi <= self.lo + TAU):
            raise ValueError("sector requires lo < hi <= lo + 2*pi")

    def contains_direction(self, direction: float) -> bool:
        t = self.lo + math.fmod(direction - self.lo, TAU)
        if t < self.lo:
            t += TAU
        if self.lo < t < self.hi:
            return True
        if t == self.lo and self.lo_closed:
            return True
        if t == self.hi and self.hi_closed:
            return True
        # full-turn sector: hi and lo name the same direction
        if t == self.lo and self.hi == self.lo + TAU and self.hi_closed:
            return True
        return False

    def contains(self, lam: complex) -> bool:
        lam = complex(lam)
        if lam == 0:
            return False
        return self.contains_direction(phase(lam))


def in_sector(lam: complex, sector: Sector) -> bool:
    return sector.contains(lam)
