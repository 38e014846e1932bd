"""Zeta-regularized determinants, graded determinants, and identity checks.

``ldet`` fixes the branch of the log-determinant as -zeta'(0, D).  The
verification routines compute both sides of the determinant/eta identities by
disjoint assembly paths: the left side never touches the squared spectrum or
the eta invariant, so the identities remain genuine cross-checks.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .complexcut import CutAngle, Sector, ang_dist, as_cut, phase
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    HypothesisViolatedError,
    InfiniteCrossingError,
    NotAgmonError,
    NotSymmetricError,
    RealityViolatedError,
)
from .spectrum import (
    GradedSpectrum,
    Restricted,
    Spectrum,
    certify_agmon,
    imaginary_axis_counts,
    is_symmetric_about_real_axis,
    negate_spectrum,
    square_spectrum,
)
from .zetafun import eta_invariant, spectral_zeta, zeta_ds_at_zero

_PI = math.pi


@dataclass(frozen=True)
class LDetResult:
    ldet: complex
    det: complex
    theta: CutAngle


@dataclass(frozen=True)
class DetEtaReport:
    lhs: complex
    rhs_half_square: complex
    eta: complex
    zeta_zero_square: complex
    residual: float
    observed_sign: int | None = None

    @property
    def rhs(self) -> complex:
        return self.rhs_half_square - 1j * _PI * (
            self.eta - 0.5 * self.zeta_zero_square
        )


@dataclass(frozen=True)
class SymmetricDetReport:
    ldet_result: LDetResult
    factored: complex
    m_minus: int
    eta: complex
    zeta_zero_square: complex
    det_square_abs: float
    residual: float


def ldet(
    spec: Spectrum, theta, tol: Tolerances = DEFAULT_TOLERANCES
) -> LDetResult:
    """Log-determinant -zeta_theta'(0, D) and its exponential."""
    cut = as_cut(theta)
    ld = -zeta_ds_at_zero(spec, cut, tol=tol)
    return LDetResult(ld, cmath.exp(ld), cut)


def ldet_restricted(
    spec: Restricted, theta, tol: Tolerances = DEFAULT_TOLERANCES
) -> LDetResult:
    if not isinstance(spec, Restricted):
        raise TypeError("ldet_restricted expects a Restricted spectrum")
    return ldet(spec, theta, tol)


def graded_ldet(
    gspec: GradedSpectrum, theta, tol: Tolerances = DEFAULT_TOLERANCES
) -> LDetResult:
    """Alternating sum over parities of LDet_theta((-1)^j D_j)."""
    cut = as_cut(theta)
    total = 0.0 + 0.0j
    for j, part in gspec.components:
        eff = negate_spectrum(part) if j % 2 else part
        try:
            contrib = -zeta_ds_at_zero(eff, cut, tol=tol)
        except NotAgmonError as exc:
            raise NotAgmonError(
                witness=exc.witness, component=j,
                message="cut is not Agmon for a graded component",
            ) from exc
        total += (-1) ** j * contrib
    return LDetResult(total, cmath.exp(total), cut)


def pick_det_eta_cut(spec: Spectrum) -> CutAngle:
    """Cut in (-pi/2, 0) whose determinant/eta hypothesis sectors are empty.

    Places the cut halfway between -pi/2 and the lowest eigenvalue direction
    in (-pi/2, 0), fourth-quadrant directions and second-quadrant directions
    (shifted by pi) alike.
    """
    radius = spec.default_scan_radius()
    upper = 0.0
    for v, m in spec.points_within(radius):
        if m <= 0:
            continue
        d = phase(v)
        if -_PI / 2.0 < d < 0.0:
            upper = min(upper, d)
        elif _PI / 2.0 < d < _PI:
            upper = min(upper, d - _PI)
    if upper - (-_PI / 2.0) < 1e-6:
        raise NotAgmonError(
            message="no admissible cut in (-pi/2, 0) for this spectrum"
        )
    return CutAngle(0.5 * (upper - _PI / 2.0))


def _check_hypothesis_sectors(spec: Spectrum, theta_val: float):
    """No eigenvalues in the solid angles (-pi/2, theta] and (pi/2, theta+pi]."""
    sectors = (
        Sector(-_PI / 2.0, theta_val, hi_closed=True),
        Sector(_PI / 2.0, theta_val + _PI, hi_closed=True),
    )
    radius = spec.default_scan_radius()
    for sector in sectors:
        for d in spec.tail_directions():
            # lattice tails point along the real axis and never enter these
            # sectors, but beyond the scan radius they deviate by a bounded angle
            dev = spec.tail_deviation(radius)
            for side in (d - dev, d + dev):
                if sector.contains_direction(side):
                    raise HypothesisViolatedError(sector, f"tail near {d}")
        for v, m in spec.points_within(radius):
            if m > 0 and sector.contains(v):
                raise HypothesisViolatedError(sector, v)


def verify_det_eta(
    spec: Spectrum,
    theta,
    tol: Tolerances = DEFAULT_TOLERANCES,
    allow_sign_flip: bool = False,
) -> DetEtaReport:
    """Check LDet_theta(D) = LDet_{2theta}(D^2)/2 - i*pi*(eta - zeta_{2theta}(0, D^2)/2).

    ``theta`` must lie in (-pi/2, 0) with the hypothesis sectors free of
    eigenvalues.  With ``allow_sign_flip`` the sector check is skipped and the
    report carries the observed sign of Det_theta(D) relative to the factored
    side.
    """
    cut = as_cut(theta)
    th = cut.normalized
    if not -_PI / 2.0 < th < 0.0:
        raise ValueError("verify_det_eta requires theta in (-pi/2, 0)")
    hypothesis_ok = True
    try:
        _check_hypothesis_sectors(spec, th)
    except HypothesisViolatedError:
        if not allow_sign_flip:
            raise
        hypothesis_ok = False
    certify_agmon(spec, cut, tol.agmon_epsilon, tol=tol)

    lhs = -zeta_ds_at_zero(spec, cut, tol=tol)

    square = square_spectrum(spec, tol)
    cut2 = cut.doubled()
    half_square = -0.5 * zeta_ds_at_zero(square, cut2, tol=tol)
    eta = eta_invariant(spec, tol)
    z0 = spectral_zeta(square, cut2, 0.0, tol=tol).value
    rhs = half_square - 1j * _PI * (eta - 0.5 * z0)

    sign: int | None = None
    if not hypothesis_ok:
        det_lhs = cmath.exp(lhs)
        det_rhs = cmath.exp(rhs)
        sign = 1 if abs(det_lhs - det_rhs) <= abs(det_lhs + det_rhs) else -1
        residual = abs(det_lhs - sign * det_rhs)
    else:
        residual = abs(lhs - rhs)
    return DetEtaReport(lhs, half_square, eta, z0, residual, sign)


def verify_det_eta_upper(
    spec: Spectrum, theta, tol: Tolerances = DEFAULT_TOLERANCES
) -> DetEtaReport:
    """Upper-half-plane variant: LDet along the ray at theta+pi, + i*pi*(...) sign.

    The branch window is (theta - pi, theta + pi): same ray as direction
    theta + pi, with the window below it.  With the window above the ray the
    two sides differ by 2*pi*i * zeta_{2theta}(0, D^2).
    """
    cut = as_cut(theta)
    th = cut.normalized
    if not -_PI / 2.0 < th < 0.0:
        raise ValueError("verify_det_eta_upper requires theta in (-pi/2, 0)")
    _check_hypothesis_sectors(spec, th)
    upper = cut.shifted(-_PI)
    certify_agmon(spec, upper, tol.agmon_epsilon, tol=tol)

    lhs = -zeta_ds_at_zero(spec, upper, tol=tol)

    square = square_spectrum(spec, tol)
    cut2 = cut.doubled()
    half_square = -0.5 * zeta_ds_at_zero(square, cut2, tol=tol)
    eta = eta_invariant(spec, tol)
    z0 = spectral_zeta(square, cut2, 0.0, tol=tol).value
    rhs = half_square + 1j * _PI * (eta - 0.5 * z0)
    residual = abs(lhs - rhs)
    # reuse the report shape; rhs sign is +, so store the matching residual
    return DetEtaReport(lhs, half_square, eta, z0, residual, None)


def angle_shift_count(
    spec: Spectrum,
    theta1,
    theta2,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> int:
    """Total multiplicity swept between two Agmon cuts.

    Also verifies zeta'_{theta1}(0) - zeta'_{theta2}(0) = 2*pi*i*k and the
    equality of the two determinants.
    """
    c1 = as_cut(theta1)
    c2 = as_cut(theta2)
    lo, hi = sorted((c1.normalized, c2.normalized))
    certify_agmon(spec, c1, tol.agmon_epsilon, tol=tol)
    certify_agmon(spec, c2, tol.agmon_epsilon, tol=tol)

    tails = spec.tail_directions()
    for d in tails:
        t = lo + math.fmod(d - lo, 2.0 * _PI)
        if t < lo:
            t += 2.0 * _PI
        if t <= hi:
            raise InfiniteCrossingError(
                f"lattice tail direction {d} lies in the swept sector"
            )
    radius = spec.default_scan_radius()
    if tails:
        # grow the scan until the tail bands provably clear the sector
        clearance = min(
            min(ang_dist(d, lo), ang_dist(d, hi)) for d in tails
        )
        while spec.tail_deviation(radius) >= clearance:
            radius *= 2.0
            if radius > 1e9:
                raise InfiniteCrossingError(
                    "cannot separate the lattice tails from the swept sector"
                )
    count = 0
    for v, m in spec.points_within(radius):
        d = phase(v)
        t = lo + math.fmod(d - lo, 2.0 * _PI)
        if t < lo:
            t += 2.0 * _PI
        if t <= hi:
            count += m

    d1 = zeta_ds_at_zero(spec, CutAngle(lo), tol=tol)
    d2 = zeta_ds_at_zero(spec, CutAngle(hi), tol=tol)
    scale = 1.0 + abs(d1) + abs(d2)
    if abs(d1 - d2 - 2j * _PI * count) > tol.finite_arithmetic * scale * 10.0:
        raise ArithmeticError(
            "angle-shift identity violated: "
            f"zeta' difference {d1 - d2} vs expected {2j * _PI * count}"
        )
    det1 = cmath.exp(-d1)
    det2 = cmath.exp(-d2)
    if abs(det1 - det2) > tol.finite_arithmetic * (1.0 + abs(det1)) * 10.0:
        raise ArithmeticError("determinants disagree across the angle shift")
    return count


def symmetric_spectrum_det(
    spec: Spectrum, theta, tol: Tolerances = DEFAULT_TOLERANCES
) -> SymmetricDetReport:
    """Factored determinant for spectra symmetric about the real axis.

    Asserts that eta, zeta_{2theta}(0, D^2) and Det_{2theta}(D^2) are real,
    then checks Det_theta(D) against
    (-1)^{m_-} * sqrt(|Det_{2theta}(D^2)|) * exp(-i*pi*(eta - zeta0/2)).
    """
    if not is_symmetric_about_real_axis(spec, tol):
        raise NotSymmetricError("spectrum is not symmetric about the real axis")
    cut = as_cut(theta)
    th = cut.normalized
    if not -_PI / 2.0 < th < 0.0:
        raise ValueError("symmetric_spectrum_det requires theta in (-pi/2, 0)")
    base = ldet(spec, cut, tol)

    square = square_spectrum(spec, tol)
    cut2 = cut.doubled()
    dz_sq = zeta_ds_at_zero(square, cut2, tol=tol)
    eta = eta_invariant(spec, tol)
    z0 = spectral_zeta(square, cut2, 0.0, tol=tol).value
    _, m_minus = imaginary_axis_counts(spec, tol)

    if abs(eta.imag) > tol.reality:
        raise RealityViolatedError("eta invariant", eta.imag)
    if abs(z0.imag) > tol.reality:
        raise RealityViolatedError("zeta_{2theta}(0, D^2)", z0.imag)
    det_square = cmath.exp(-dz_sq)
    if abs(det_square.imag) > tol.reality * (1.0 + abs(det_square)):
        raise RealityViolatedError("Det_{2theta}(D^2)", det_square.imag)

    factored = (
        (-1.0) ** m_minus
        * math.sqrt(abs(det_square))
        * cmath.exp(-1j * _PI * (eta - 0.5 * z0))
    )
    residual = abs(base.det - factored)
    return SymmetricDetReport(
        base, factored, m_minus, eta, z0, abs(det_square), residual
    )
