"""Operator spectra with algebraic multiplicities.

A spectrum stands in for an injective elliptic operator whose eigenvalues and
algebraic multiplicities are known explicitly.  Variants:

* ``Finite``        — a finite list of (value, multiplicity) pairs.
* ``Lattice``       — the integer-lattice family {a + n : n in Z}, a not in Z.
* ``QuadLattice``   — the squares {(a + n)^2}, produced by squaring a lattice.
* ``HermQuadLattice`` — the Hermitian-Laplacian family {(n+a)(n+conj(a))}.
* ``DirectSum``     — a disjoint union of spectra.
* ``Restricted``    — a base spectrum with reduced per-eigenvalue multiplicities.

All spectra are immutable; operations are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping, Tuple

from .complexcut import CutAngle, ang_dist, as_cut, phase
from .config import DEFAULT_TOLERANCES, Tolerances, lattice_scan_radius
from .errors import NotAgmonError

_PI = math.pi


def merge_key(z: complex, sig_digits: int = 12) -> Tuple[str, str]:
    """Comparison key: both components rounded to ``sig_digits`` significant digits."""
    re = z.real + 0.0
    im = z.imag + 0.0
    return (f"{re:.{sig_digits}g}", f"{im:.{sig_digits}g}")


def dist_to_integers(a: complex) -> float:
    return abs(a - round(a.real))


def _normalize_log_param(a: complex) -> Tuple[complex, int]:
    """Shift a by an integer so its real part lies in (0, 1]."""
    n0 = 1 - math.ceil(a.real)
    return a + n0, n0


@dataclass(frozen=True)
class Eigenvalue:
    value: complex
    multiplicity: int = 1

    def __post_init__(self):
        v = complex(self.value)
        object.__setattr__(self, "value", v)
        if v == 0:
            raise ValueError("eigenvalues must be nonzero")
        if not isinstance(self.multiplicity, int) or self.multiplicity < 1:
            raise ValueError("multiplicity must be a positive integer")


class Spectrum:
    """Base class; concrete spectra implement the enumeration hooks below."""

    def points_within(self, radius: float) -> Iterator[Tuple[complex, int]]:
        """All (value, multiplicity) pairs with |value| <= radius."""
        raise NotImplementedError

    def tail_directions(self) -> Tuple[float, ...]:
        """Accumulation directions of the spectrum at infinity."""
        raise NotImplementedError

    def default_scan_radius(self) -> float:
        raise NotImplementedError

    def tail_deviation(self, radius: float) -> float:
        """Bound on the angular deviation from the tail directions beyond radius."""
        raise NotImplementedError


@dataclass(frozen=True)
class Finite(Spectrum):
    eigenvalues: Tuple[Eigenvalue, ...]

    def __post_init__(self):
        evs = tuple(
            e if isinstance(e, Eigenvalue) else Eigenvalue(*e) for e in self.eigenvalues
        )
        object.__setattr__(self, "eigenvalues", evs)
        keys = [merge_key(e.value) for e in evs]
        if len(set(keys)) != len(keys):
            raise ValueError("finite spectra carry distinct eigenvalues")

    @staticmethod
    def of(*values, multiplicities=None) -> "Finite":
        if multiplicities is None:
            multiplicities = [1] * len(values)
        return Finite(
            tuple(Eigenvalue(complex(v), m) for v, m in zip(values, multiplicities))
        )

    def items(self) -> Tuple[Tuple[complex, int], ...]:
        return tuple((e.value, e.multiplicity) for e in self.eigenvalues)

    def points_within(self, radius):
        for e in self.eigenvalues:
            if abs(e.value) <= radius:
                yield e.value, e.multiplicity

    def tail_directions(self):
        return ()

    def default_scan_radius(self):
        return max((abs(e.value) for e in self.eigenvalues), default=1.0) + 1.0

    def tail_deviation(self, radius):
        return 0.0


@dataclass(frozen=True)
class Lattice(Spectrum):
    """Eigenvalues {a + n : n in Z}, each with multiplicity mu."""

    a: complex
    mu: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        if dist_to_integers(self.a) <= 0.0:
            raise ValueError("lattice parameter must avoid the integers")
        if not isinstance(self.mu, int) or self.mu < 1:
            raise ValueError("multiplicity must be a positive integer")

    def value_at(self, n: int) -> complex:
        return self.a + n

    def points_within(self, radius):
        lo = math.floor(-radius - abs(self.a)) - 1
        hi = math.ceil(radius + abs(self.a)) + 1
        for n in range(lo, hi + 1):
            v = self.a + n
            if abs(v) <= radius:
                yield v, self.mu

    def tail_directions(self):
        return (0.0, _PI)

    def default_scan_radius(self):
        return lattice_scan_radius(self.a)

    def tail_deviation(self, radius):
        return math.asin(min(1.0, abs(self.a.imag) / max(radius, 1.0)))


@dataclass(frozen=True)
class QuadLattice(Spectrum):
    """Eigenvalues {(a + n)^2 : n in Z} for a lattice parameter a.

    ``a`` is stored normalized with real part in (0, 1].
    """

    a: complex
    mu: int = 1

    def __post_init__(self):
        a, _ = _normalize_log_param(complex(self.a))
        object.__setattr__(self, "a", a)
        if dist_to_integers(a) <= 0.0:
            raise ValueError("lattice parameter must avoid the integers")
        if not isinstance(self.mu, int) or self.mu < 1:
            raise ValueError("multiplicity must be a positive integer")

    def value_at(self, n: int) -> complex:
        base = self.a + n
        return base * base

    def points_within(self, radius):
        r = math.sqrt(max(radius, 0.0))
        lo = math.floor(-r - abs(self.a)) - 1
        hi = math.ceil(r + abs(self.a)) + 1
        for n in range(lo, hi + 1):
            v = self.value_at(n)
            if abs(v) <= radius:
                yield v, self.mu

    def tail_directions(self):
        return (0.0,)

    def default_scan_radius(self):
        r = lattice_scan_radius(self.a)
        return r * r

    def tail_deviation(self, radius):
        r = math.sqrt(max(radius, 1.0))
        return 2.0 * math.asin(min(1.0, abs(self.a.imag) / r))


@dataclass(frozen=True)
class HermQuadLattice(Spectrum):
    """Eigenvalues {(n + a)(n + conj(a)) : n in Z} — positive reals."""

    a: complex
    mu: int = 1

    def __post_init__(self):
        a, _ = _normalize_log_param(complex(self.a))
        object.__setattr__(self, "a", a)
        if dist_to_integers(a) <= 0.0:
            raise ValueError("lattice parameter must avoid the integers")
        if not isinstance(self.mu, int) or self.mu < 1:
            raise ValueError("multiplicity must be a positive integer")

    def value_at(self, n: int) -> float:
        return abs(self.a + n) ** 2

    def points_within(self, radius):
        r = math.sqrt(max(radius, 0.0))
        lo = math.floor(-r - abs(self.a)) - 1
        hi = math.ceil(r + abs(self.a)) + 1
        for n in range(lo, hi + 1):
            v = self.value_at(n)
            if abs(v) <= radius:
                yield complex(v), self.mu

    def tail_directions(self):
        return (0.0,)

    def default_scan_radius(self):
        r = lattice_scan_radius(self.a)
        return r * r

    def tail_deviation(self, radius):
        return 0.0


@dataclass(frozen=True)
class DirectSum(Spectrum):
    parts: Tuple[Spectrum, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("direct sum requires at least one part")

    def points_within(self, radius):
        for p in self.parts:
            yield from p.points_within(radius)

    def tail_directions(self):
        dirs = []
        for p in self.parts:
            dirs.extend(p.tail_directions())
        return tuple(sorted(set(dirs)))

    def default_scan_radius(self):
        return max(p.default_scan_radius() for p in self.parts)

    def tail_deviation(self, radius):
        return max(p.tail_deviation(radius) for p in self.parts)


@dataclass(frozen=True)
class Restricted(Spectrum):
    """A base spectrum with per-eigenvalue sub-multiplicities.

    ``sub_mult`` maps an eigenvalue index to its restricted multiplicity
    0 <= m^V <= m.  For a ``Finite`` base the index is the position in the
    eigenvalue tuple; for lattice bases it is the integer n of a + n, with
    unlisted indices keeping the base multiplicity.
    """

    base: Spectrum
    sub_mult: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if isinstance(self.sub_mult, Mapping):
            items = tuple(sorted(self.sub_mult.items()))
        else:
            items = tuple(sorted(tuple(p) for p in self.sub_mult))
        object.__setattr__(self, "sub_mult", items)
        if isinstance(self.base, Finite):
            for idx, m in items:
                if not 0 <= idx < len(self.base.eigenvalues):
                    raise ValueError(f"index {idx} outside the finite base")
                if not 0 <= m <= self.base.eigenvalues[idx].multiplicity:
                    raise ValueError("sub-multiplicity exceeds the base multiplicity")
        elif isinstance(self.base, (Lattice, QuadLattice)):
            for _, m in items:
                if not 0 <= m <= self.base.mu:
                    raise ValueError("sub-multiplicity exceeds the base multiplicity")
        else:
            raise TypeError(
                "restrictions are supported over Finite and lattice bases only"
            )

    def overrides(self) -> Mapping[int, int]:
        return dict(self.sub_mult)

    def effective_finite(self) -> Finite:
        if not isinstance(self.base, Finite):
            raise TypeError("effective_finite requires a Finite base")
        ov = self.overrides()
        evs = []
        for i, e in enumerate(self.base.eigenvalues):
            m = ov.get(i, e.multiplicity)
            if m > 0:
                evs.append(Eigenvalue(e.value, m))
        return Finite(tuple(evs)) if evs else Finite(())

    def points_within(self, radius):
        ov = self.overrides()
        if isinstance(self.base, Finite):
            for i, e in enumerate(self.base.eigenvalues):
                m = ov.get(i, e.multiplicity)
                if m > 0 and abs(e.value) <= radius:
                    yield e.value, m
        else:
            mu = self.base.mu
            r = radius if isinstance(self.base, Lattice) else math.sqrt(radius)
            lo = math.floor(-r - abs(self.base.a)) - 1
            hi = math.ceil(r + abs(self.base.a)) + 1
            for n in range(lo, hi + 1):
                m = ov.get(n, mu)
                if m > 0:
                    v = self.base.value_at(n)
                    if abs(v) <= radius:
                        yield v, m

    def tail_directions(self):
        return self.base.tail_directions()

    def default_scan_radius(self):
        return self.base.default_scan_radius()

    def tail_deviation(self, radius):
        return self.base.tail_deviation(radius)


@dataclass(frozen=True)
class GradedSpectrum:
    """Parity-indexed components (j, spectrum) feeding the graded determinant."""

    components: Tuple[Tuple[int, Spectrum], ...]

    def __post_init__(self):
        comps = tuple((int(j), s) for j, s in self.components)
        object.__setattr__(self, "components", comps)
        parities = [j for j, _ in comps]
        if len(set(parities)) != len(parities):
            raise ValueError("graded components carry distinct parities")
        if any(j < 0 for j in parities):
            raise ValueError("parities are nonnegative")
        if not comps:
            raise ValueError("graded spectrum requires at least one component")


@dataclass(frozen=True)
class AgmonCertificate:
    theta: CutAngle
    epsilon: float
    scan_radius: float


def certify_agmon(
    spec: Spectrum,
    theta,
    epsilon: float,
    scan_radius: float | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> AgmonCertificate:
    """Certify that no eigenvalue direction is within ``epsilon`` of the cut.

    Finite spectra are checked exhaustively.  Lattice-type spectra are checked
    explicitly up to ``scan_radius`` and their tails are covered by the
    accumulation directions plus a conservative angular-deviation bound.
    """
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    cut = as_cut(theta)
    th = cut.normalized
    if scan_radius is None:
        scan_radius = spec.default_scan_radius()
    dev = spec.tail_deviation(scan_radius)
    for d in spec.tail_directions():
        if ang_dist(th, d) <= epsilon + dev:
            raise NotAgmonError(
                message=f"lattice tail direction {d} approaches the cut at {th}"
            )
    for value, m in spec.points_within(scan_radius):
        if m <= 0:
            continue
        if ang_dist(phase(value), th) <= epsilon:
            raise NotAgmonError(witness=value)
    return AgmonCertificate(cut, epsilon, scan_radius)


def imaginary_axis_counts(
    spec: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES
) -> Tuple[int, int]:
    """Multiplicity counts (m_plus, m_minus) on the imaginary half-axes."""
    if isinstance(spec, Finite):
        mp = mm = 0
        for v, m in spec.items():
            if abs(v.real) <= tol.imag_axis:
                if v.imag > 0:
                    mp += m
                elif v.imag < 0:
                    mm += m
        return mp, mm
    if isinstance(spec, Lattice):
        mp = mm = 0
        center = -round(spec.a.real)
        for n in (center - 1, center, center + 1):
            v = spec.a + n
            if abs(v.real) <= tol.imag_axis:
                if v.imag > 0:
                    mp += spec.mu
                elif v.imag < 0:
                    mm += spec.mu
        return mp, mm
    if isinstance(spec, DirectSum):
        mp = mm = 0
        for p in spec.parts:
            a, b = imaginary_axis_counts(p, tol)
            mp += a
            mm += b
        return mp, mm
    if isinstance(spec, Restricted):
        ov = spec.overrides()
        if isinstance(spec.base, Finite):
            return imaginary_axis_counts(spec.effective_finite(), tol)
        if isinstance(spec.base, Lattice):
            mp = mm = 0
            center = -round(spec.base.a.real)
            for n in (center - 1, center, center + 1):
                v = spec.base.a + n
                if abs(v.real) <= tol.imag_axis:
                    m = ov.get(n, spec.base.mu)
                    if v.imag > 0:
                        mp += m
                    elif v.imag < 0:
                        mm += m
            return mp, mm
    raise TypeError(f"imaginary-axis counts undefined for {type(spec).__name__}")


def is_symmetric_about_real_axis(
    spec: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """True iff conj(lambda) occurs with the same multiplicity as lambda."""
    sig = tol.merge_significant_digits
    if isinstance(spec, Finite):
        counts: dict = {}
        for v, m in spec.items():
            counts[merge_key(v, sig)] = counts.get(merge_key(v, sig), 0) + m
        for v, m in spec.items():
            if counts.get(merge_key(v.conjugate(), sig), 0) != counts[merge_key(v, sig)]:
                return False
        return True
    if isinstance(spec, Lattice):
        return abs(spec.a.imag) <= tol.imag_axis
    if isinstance(spec, HermQuadLattice):
        return True
    if isinstance(spec, QuadLattice):
        if abs(spec.a.imag) <= tol.imag_axis:
            return True
        two_re = 2.0 * spec.a.real
        return abs(two_re - round(two_re)) <= tol.imag_axis
    if isinstance(spec, DirectSum):
        finite_parts = [p for p in spec.parts if isinstance(p, Finite)]
        lattice_parts = [p for p in spec.parts if isinstance(p, Lattice)]
        other = [p for p in spec.parts if not isinstance(p, (Finite, Lattice))]
        if other:
            return all(is_symmetric_about_real_axis(p, tol) for p in spec.parts)
        merged = Finite(())
        if finite_parts:
            evs: dict = {}
            for p in finite_parts:
                for v, m in p.items():
                    k = merge_key(v, sig)
                    evs[k] = (v, evs.get(k, (v, 0))[1] + m)
            merged = Finite(tuple(Eigenvalue(v, m) for v, m in evs.values()))
            if not is_symmetric_about_real_axis(merged, tol):
                return False
        lat: dict = {}
        for p in lattice_parts:
            atil, _ = _normalize_log_param(p.a)
            k = merge_key(atil, sig)
            lat[k] = lat.get(k, 0) + p.mu
        for p in lattice_parts:
            atil, _ = _normalize_log_param(p.a)
            if lat.get(merge_key(atil.conjugate(), sig), 0) != lat[merge_key(atil, sig)]:
                return False
        return True
    if isinstance(spec, Restricted):
        if isinstance(spec.base, Finite):
            return is_symmetric_about_real_axis(spec.effective_finite(), tol)
        if not is_symmetric_about_real_axis(spec.base, tol):
            return False
        # real lattice base: every eigenvalue is real, any override is fine
        return True
    raise TypeError(f"symmetry test undefined for {type(spec).__name__}")


def square_spectrum(spec: Spectrum, tol: Tolerances = DEFAULT_TOLERANCES) -> Spectrum:
    """Eigenvalues squared; coinciding squares merge by summing multiplicities."""
    sig = tol.merge_significant_digits
    if isinstance(spec, Finite):
        acc: dict = {}
        for v, m in spec.items():
            sq = v * v
            k = merge_key(sq, sig)
            if k in acc:
                acc[k] = (acc[k][0], acc[k][1] + m)
            else:
                acc[k] = (sq, m)
        return Finite(tuple(Eigenvalue(v, m) for v, m in acc.values()))
    if isinstance(spec, Lattice):
        return QuadLattice(spec.a, spec.mu)
    if isinstance(spec, DirectSum):
        return DirectSum(tuple(square_spectrum(p, tol) for p in spec.parts))
    if isinstance(spec, Restricted):
        if isinstance(spec.base, Finite):
            return square_spectrum(spec.effective_finite(), tol)
        if isinstance(spec.base, Lattice):
            _, n0 = _normalize_log_param(spec.base.a)
            remapped = {n + n0: m for n, m in spec.sub_mult}
            base = QuadLattice(spec.base.a, spec.base.mu)
            return Restricted(base, tuple(sorted(remapped.items())))
    raise TypeError(f"squaring undefined for {type(spec).__name__}")


def negate_spectrum(spec: Spectrum) -> Spectrum:
    """Every eigenvalue negated; lattices re-index to Lattice(-a)."""
    if isinstance(spec, Finite):
        return Finite(
            tuple(Eigenvalue(-e.value, e.multiplicity) for e in spec.eigenvalues)
        )
    if isinstance(spec, Lattice):
        return Lattice(-spec.a, spec.mu)
    if isinstance(spec, DirectSum):
        return DirectSum(tuple(negate_spectrum(p) for p in spec.parts))
    if isinstance(spec, Restricted):
        if isinstance(spec.base, Finite):
            return Restricted(negate_spectrum(spec.base), spec.sub_mult)
        if isinstance(spec.base, Lattice):
            return Restricted(
                Lattice(-spec.base.a, spec.base.mu),
                tuple(sorted((-n, m) for n, m in spec.sub_mult)),
            )
    raise TypeError(f"negation undefined for {type(spec).__name__}")


def total_multiplicity_within(spec: Spectrum, radius: float) -> int:
    return sum(m for _, m in spec.points_within(radius))
