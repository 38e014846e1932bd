"""Flat line/vector bundles over the circle and their torsion invariants.

A model is determined by log parameters a_j (one per monodromy eigenvalue,
normalized to Re in (0, 1]): the even-degree part of the twisted signature
operator has spectrum {a_j + n : n in Z} and the twisted Laplacian has the
Hermitian family {(n + a_j)(n + conj a_j)}.  The refined torsion is the
graded determinant of the even part; with the convention adopted here the
loop representation attached to a model has eigenvalues exp(2*pi*i*a_j), so
the torsion equals det(I - representation).

Monodromy matrices are integrated with a classical 4th-order scheme from
Phi' + A(x) Phi = 0, Phi(0) = Id; the representation is Phi(2*pi)^{-1}.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence, Tuple

import numpy as np

from .complexcut import CutAngle
from .config import (
    ARG_PAIRING_SIGN,
    CR_MAX_STEP,
    DEFAULT_TOLERANCES,
    MIN_FAMILY_GRID,
    MIN_ODE_STEPS,
    Tolerances,
)
from .determinant import pick_det_eta_cut
from .errors import EigenFailureError, NonAcyclicError
from .spectrum import (
    DirectSum,
    HermQuadLattice,
    Lattice,
    QuadLattice,
    Spectrum,
    dist_to_integers,
    _normalize_log_param,
)
from .zetafun import eta_invariant, zeta_ds_at_zero

_PI = math.pi
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CircleModel:
    """Direct sum of rank-1 flat bundles, given by log parameters."""

    log_params: Tuple[Tuple[complex, int], ...]

    def __post_init__(self):
        lp = tuple((complex(a), int(m)) for a, m in self.log_params)
        object.__setattr__(self, "log_params", lp)
        if not lp:
            raise ValueError("model requires at least one log parameter")
        for a, m in lp:
            if m < 1:
                raise ValueError("multiplicities are positive")

    def spectrum(self) -> Spectrum:
        parts = tuple(Lattice(a, m) for a, m in self.log_params)
        return parts[0] if len(parts) == 1 else DirectSum(parts)

    def rank(self) -> int:
        return sum(m for _, m in self.log_params)

    def representation(self) -> np.ndarray:
        """Diagonal loop representation exp(2*pi*i*a_j), per multiplicity."""
        diag = []
        for a, m in self.log_params:
            diag.extend([cmath.exp(2j * _PI * a)] * m)
        return np.diag(np.array(diag, dtype=complex))


@dataclass(frozen=True)
class TorsionReport:
    torsion: complex
    xi: complex
    eta: complex
    graded_ldet: complex
    ray_singer: float
    im_eta: float
    identity_residual: float
    theta: CutAngle


@dataclass(frozen=True)
class TrsReport:
    torsion: complex
    ray_singer: float
    im_eta: float
    residual_log_ratio: float
    residual_modulus: float
    residual_arg_pairing: float


def build_rank1(
    a: complex, tol: Tolerances = DEFAULT_TOLERANCES
) -> CircleModel:
    """Rank-1 model for the connection d + i*a*dx; spectrum {a + n}."""
    a = complex(a)
    if dist_to_integers(a) <= tol.acyclic_distance:
        raise NonAcyclicError(f"log parameter {a} is within tolerance of an integer")
    return CircleModel(((a, 1),))


def build_from_monodromy(
    m: Sequence[Sequence[complex]] | np.ndarray,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> CircleModel:
    """Model from a monodromy matrix: a_j = log(mu_j) / (2*pi*i), Re in (0, 1]."""
    mat = np.asarray(m, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("monodromy must be a square matrix")
    try:
        eigvals = np.linalg.eigvals(mat)
    except np.linalg.LinAlgError as exc:
        raise EigenFailureError(str(exc)) from exc
    params: list[Tuple[complex, int]] = []
    for mu in eigvals:
        mu = complex(mu)
        if mu == 0:
            raise NonAcyclicError("monodromy matrix is singular")
        a = cmath.log(mu) / (2j * _PI)
        a, _ = _normalize_log_param(a)
        if dist_to_integers(a) <= tol.acyclic_distance:
            raise NonAcyclicError(
                f"monodromy eigenvalue {mu} is within tolerance of 1"
            )
        for i, (b, cnt) in enumerate(params):
            if abs(a - b) <= 1e-9 * (1.0 + abs(b)):
                params[i] = (b, cnt + 1)
                break
        else:
            params.append((a, 1))
    return CircleModel(tuple(params))


def _pick_theta(spec: Spectrum) -> CutAngle:
    return pick_det_eta_cut(spec)


def refined_torsion(
    model: CircleModel, tol: Tolerances = DEFAULT_TOLERANCES
) -> TorsionReport:
    """Graded determinant of the even signature operator, with cross-checks.

    The torsion is exp of the graded log-determinant computed directly from
    the lattice spectrum at the chosen cut; xi and eta are computed from the
    squared spectrum at the doubled cut and the report records the residual
    of graded_ldet = xi - i*pi*eta.
    """
    spec = model.spectrum()
    cut = _pick_theta(spec)
    cut2 = cut.doubled()

    graded = -zeta_ds_at_zero(spec, cut, tol=tol)
    torsion = cmath.exp(graded)

    xi = 0.0 + 0.0j
    for a, m in model.log_params:
        xi += -0.5 * zeta_ds_at_zero(QuadLattice(a, m), cut2, tol=tol)
    eta = sum(eta_invariant(Lattice(a, m), tol) for a, m in model.log_params)
    residual = abs(graded - (xi - 1j * _PI * eta))

    trs = ray_singer_torsion(model, tol)
    return TorsionReport(
        torsion=torsion,
        xi=xi,
        eta=eta,
        graded_ldet=graded,
        ray_singer=trs,
        im_eta=eta.imag,
        identity_residual=residual,
        theta=cut,
    )


def ray_singer_torsion(
    model: CircleModel, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """exp(LDet_{-pi}(Laplacian on 1-forms) / 2), a positive real number."""
    total = 0.0 + 0.0j
    cut = CutAngle(-_PI)
    for a, m in model.log_params:
        total += -zeta_ds_at_zero(HermQuadLattice(a, m), cut, tol=tol)
    return math.exp(0.5 * total.real)


def arg_class(m: Sequence[Sequence[complex]] | np.ndarray) -> complex:
    """log(det M) / (2*pi*i) with the real part reduced into [0, 1)."""
    det = complex(np.linalg.det(np.asarray(m, dtype=complex)))
    if det == 0:
        raise ValueError("arg_class requires an invertible matrix")
    val = cmath.log(det) / (2j * _PI)
    return complex(val.real - math.floor(val.real), val.imag)


def model_arg_class(model: CircleModel) -> complex:
    return arg_class(model.representation())


def trs_comparison(
    model: CircleModel, tol: Tolerances = DEFAULT_TOLERANCES
) -> TrsReport:
    """Residuals of the torsion / Ray-Singer comparison identities."""
    report = refined_torsion(model, tol)
    t_abs = abs(report.torsion)
    trs = report.ray_singer
    r_log = abs(math.log(t_abs / trs) - _PI * report.im_eta)
    r_mod = abs(t_abs - trs * math.exp(_PI * report.im_eta))
    im_arg = model_arg_class(model).imag
    r_arg = abs(math.log(t_abs / trs) - ARG_PAIRING_SIGN * _PI * im_arg)
    return TrsReport(
        torsion=report.torsion,
        ray_singer=trs,
        im_eta=report.im_eta,
        residual_log_ratio=r_log,
        residual_modulus=r_mod,
        residual_arg_pairing=r_arg,
    )


# ---------------------------------------------------------------------------
# connection families, monodromy, variation formulas


@dataclass(frozen=True)
class ConnectionFamily:
    """Connection 1-form coefficient A(x, t) on [0, 2*pi), matrix valued.

    ``a_form`` maps (x, t) to an n x n array; ``psi`` optionally supplies the
    t-derivative of the family.  The sampling grid is uniform with at least
    64 points and A must be 2*pi-periodic.
    """

    a_form: Callable[[float, float], np.ndarray]
    dim: int
    psi: Callable[[float, float], np.ndarray] | None = None
    n_grid: int = 256

    def __post_init__(self):
        if self.n_grid < MIN_FAMILY_GRID:
            raise ValueError(f"sampling grid needs at least {MIN_FAMILY_GRID} points")
        a0 = np.asarray(self.a_form(0.0, 0.0), dtype=complex)
        a1 = np.asarray(self.a_form(_TWO_PI, 0.0), dtype=complex)
        if a0.shape != (self.dim, self.dim):
            raise ValueError("a_form must return dim x dim matrices")
        if not np.allclose(a0, a1, atol=1e-10):
            raise ValueError("connection form must be 2*pi-periodic")

    @staticmethod
    def constant(matrix) -> "ConnectionFamily":
        mat = np.asarray(matrix, dtype=complex)
        return ConnectionFamily(lambda x, t: mat, mat.shape[0])

    @staticmethod
    def rank1_path(a0: complex) -> "ConnectionFamily":
        """A(x, t) = i*(a0 + t), the line-bundle family d + i*(a0+t)*dx."""
        a0 = complex(a0)
        return ConnectionFamily(
            lambda x, t: np.array([[1j * (a0 + t)]], dtype=complex),
            1,
            psi=lambda x, t: np.array([[1j]], dtype=complex),
        )

    @staticmethod
    def diagonal_path(a_values: Sequence[complex], rates: Sequence[complex]) -> "ConnectionFamily":
        a_arr = np.asarray(a_values, dtype=complex)
        r_arr = np.asarray(rates, dtype=complex)
        dim = len(a_arr)
        return ConnectionFamily(
            lambda x, t: np.diag(1j * (a_arr + t * r_arr)),
            dim,
            psi=lambda x, t: np.diag(1j * r_arr),
        )


def monodromy(
    family: ConnectionFamily, steps: int = 256, t: float = 0.0
) -> np.ndarray:
    """Phi(2*pi) from Phi' + A(x) Phi = 0, Phi(0) = Id (classical RK4)."""
    if steps < MIN_ODE_STEPS:
        raise ValueError(f"monodromy integration needs at least {MIN_ODE_STEPS} steps")
    h = _TWO_PI / steps
    phi = np.eye(family.dim, dtype=complex)

    def rhs(x, y):
        return -np.asarray(family.a_form(x, t), dtype=complex) @ y

    x = 0.0
    for _ in range(steps):
        k1 = rhs(x, phi)
        k2 = rhs(x + 0.5 * h, phi + 0.5 * h * k1)
        k3 = rhs(x + 0.5 * h, phi + 0.5 * h * k2)
        k4 = rhs(x + h, phi + h * k3)
        phi = phi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        x += h
    return phi


def _wrap_half(x: float) -> float:
    """Reduce into (-1/2, 1/2]."""
    y = x - math.floor(x)
    if y > 0.5:
        y -= 1.0
    return y


def arg_derivative_check(
    family: ConnectionFamily,
    dt: float,
    t: float = 0.0,
    steps: int = 512,
) -> float:
    """Residual of 2*pi*i * d/dt Arg = -integral of Tr(psi_t) over the circle.

    The left side is the central difference of the Arg class of the
    monodromy (mod-Z aware); the right side is a trapezoid integral of the
    trace of the family derivative.
    """
    if family.psi is None:
        raise ValueError("family carries no psi samples")
    arg_p = arg_class(monodromy(family, steps, t + dt))
    arg_m = arg_class(monodromy(family, steps, t - dt))
    diff = arg_p - arg_m
    deriv = complex(_wrap_half(diff.real), diff.imag) / (2.0 * dt)

    n = family.n_grid
    xs = np.linspace(0.0, _TWO_PI, n, endpoint=False)
    traces = np.array(
        [np.trace(np.asarray(family.psi(x, t), dtype=complex)) for x in xs]
    )
    integral = complex(traces.mean() * _TWO_PI)
    rhs = -integral / (2j * _PI)
    return abs(deriv - rhs)


def eta_variation_check(
    a_path: Callable[[float], complex],
    dt: float,
    t: float = 0.0,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """Residual of d/dt eta(a(t)) = -a'(t) for a rank-1 path (mod-Z aware)."""
    eta_p = eta_invariant(Lattice(complex(a_path(t + dt))), tol)
    eta_m = eta_invariant(Lattice(complex(a_path(t - dt))), tol)
    diff = eta_p - eta_m
    deriv = complex(_wrap_half(diff.real), diff.imag) / (2.0 * dt)
    a_rate = (complex(a_path(t + dt)) - complex(a_path(t - dt))) / (2.0 * dt)
    return abs(deriv - (-a_rate))


@dataclass(frozen=True)
class HolomorphyReport:
    max_cr_residual: float
    max_abs_torsion: float
    grid_shape: Tuple[int, int]


def holomorphy_scan(
    re_range: Tuple[float, float],
    im_range: Tuple[float, float],
    grid: int,
    h: float,
    tol: Tolerances = DEFAULT_TOLERANCES,
    fn: Callable[[complex], complex] | None = None,
) -> HolomorphyReport:
    """Max |d/d(conj a)| of a -> T(a) over a rectangular grid.

    Central differences in the real and imaginary directions approximate the
    conjugate-derivative; for a holomorphic map the result is pure
    discretization error.  ``fn`` replaces the torsion map when supplied.
    """
    if h > CR_MAX_STEP:
        raise ValueError(f"finite-difference step must be <= {CR_MAX_STEP}")
    re_lo, re_hi = re_range
    im_lo, im_hi = im_range
    if grid < 1:
        raise ValueError("grid must be positive")

    if fn is None:
        def fn(a: complex) -> complex:
            return refined_torsion(build_rank1(a, tol), tol).torsion

    def sample(axis_lo, axis_hi):
        if grid == 1:
            return [0.5 * (axis_lo + axis_hi)]
        return [axis_lo + (axis_hi - axis_lo) * i / (grid - 1) for i in range(grid)]

    max_res = 0.0
    max_abs = 0.0
    for re in sample(re_lo, re_hi):
        for im in sample(im_lo, im_hi):
            a = complex(re, im)
            if dist_to_integers(a) < 0.05:
                raise NonAcyclicError(f"grid point {a} too close to an integer")
            d_re = (fn(a + h) - fn(a - h)) / (2.0 * h)
            d_im = (fn(a + 1j * h) - fn(a - 1j * h)) / (2.0 * h)
            dbar = 0.5 * (d_re + 1j * d_im)
            max_res = max(max_res, abs(dbar))
            max_abs = max(max_abs, abs(fn(a)))
    return HolomorphyReport(max_res, max_abs, (grid, grid))
