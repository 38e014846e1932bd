"""Numerical policy: tolerances and continuation-kernel parameters.

Every tolerance used by the library lives here so that tests and the CLI
reference named constants instead of scattered literals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    # branch selection
    on_cut_angle: float = 0.0          # angular half-width treated as "on the cut"
    agmon_epsilon: float = 1e-9        # default spectrum-free half-angle certified
    # spectrum classification
    imag_axis: float = 1e-12           # |Re| below this counts as purely imaginary
    acyclic_distance: float = 1e-8     # minimum distance of a log parameter to Z
    merge_significant_digits: int = 12  # rounding used when merging squared values
    # identity residuals
    identity_residual: float = 1e-9    # determinant/eta identities
    finite_arithmetic: float = 1e-10   # exact finite-spectrum bookkeeping
    closed_form_rel: float = 1e-8      # circle closed form, relative
    kernel_accuracy: float = 1e-10     # Hurwitz zeta kernel acceptance accuracy
    trs_residual: float = 1e-6         # torsion vs Ray-Singer comparisons
    variation_residual: float = 1e-6   # eta / Arg variation formulas
    cr_residual_rel: float = 1e-5      # Cauchy-Riemann residual, relative to max|T|
    reality: float = 1e-10             # imaginary parts required to vanish

    def with_overrides(self, **kwargs) -> "Tolerances":
        return replace(self, **kwargs)


DEFAULT_TOLERANCES = Tolerances()

# Euler-Maclaurin policy: number of explicitly summed terms and the number of
# Bernoulli correction terms.  The remainder is estimated by the first omitted
# correction term.
EM_BERNOULLI_ORDER = 12
EM_MIN_TERMS = 20

# Finite-difference step ceiling for holomorphy scans.
CR_MAX_STEP = 1e-4

# Minimum ODE steps for monodromy integration and minimum sampling grid for
# connection families.
MIN_ODE_STEPS = 64
MIN_FAMILY_GRID = 64

# Empirically frozen global sign relating the torsion/Ray-Singer defect to the
# imaginary part of the Arg class on the circle (orientation convention).
ARG_PAIRING_SIGN = -1.0


def em_num_terms(s: complex, q: complex) -> int:
    """Shift length for the Euler-Maclaurin evaluation of the Hurwitz zeta."""
    return max(EM_MIN_TERMS, math.ceil(10.0 + abs(s.imag) + abs(q)))


def lattice_scan_radius(a: complex) -> float:
    """Default explicit-scan radius for certifying an integer-lattice family."""
    return 10.0 * (2.0 + abs(a))
