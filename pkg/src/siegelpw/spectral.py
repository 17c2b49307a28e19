"""Frequency-side representation of holomorphic functions on the Siegel domain.

A holomorphic function of controlled growth is encoded here by a field of
rank-one operators on the negative half of the frequency axis: at frequency
``λ < 0`` the operator acts on the truncated Gaussian-weighted polynomial
space as ``f ↦ ⟨f, v(λ)⟩ e_0``, so the field is stored through its vector part
``v(λ)``.  The module provides

* named closed-form families (:class:`KernelProfile`,
  :class:`DirichletKernelProfile`, :class:`FiniteProfile`), sampled fields
  (:class:`SampledProfile`), and the frequency-multiplication operator
  :func:`spectral_derivative`;
* weighted spectral norms and pairings (:func:`l2nu_norm_sq`,
  :func:`l2nu_inner_product`) by half-line quadrature matched to each
  family's decay;
* synthesis back to the domain (:func:`synthesize`,
  :func:`synthesize_dirichlet`), with resolution estimated by node-count
  doubling;
* holomorphic-space norms over the domain chart
  (:func:`space_norm_sq`) by tensor-product quadrature, including the
  boundary-limit norm via geometrically shrinking height slices and
  Richardson extrapolation, so both sides of each norm identity can be
  produced independently and compared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from typing import Callable, Mapping, Sequence, Union

import numpy as np

from . import fock as _fock
from . import quadrature as _quad
from .errors import DivergentIntegralError, InvalidParameterError, UnderResolvedError
from .gammaexpr import GammaExpression, paley_wiener_constant
from .siegel import (
    HorocyclicCoordinates,
    SiegelPoint,
    point_from_json,
    point_to_json,
    psi,
    rho,
)

__all__ = [
    "KernelProfile",
    "DirichletKernelProfile",
    "FiniteTerm",
    "FiniteProfile",
    "DerivedProfile",
    "SampledProfile",
    "SpectralProfile",
    "sample_profile",
    "spectral_derivative",
    "apply_field",
    "l2nu_norm_sq",
    "l2nu_inner_product",
    "synthesize",
    "synthesize_dirichlet",
    "ProfileFunction",
    "PointwiseFunction",
    "holomorphy_residuals",
    "Hardy",
    "Bergman",
    "WeightedDirichlet",
    "DruryArveson",
    "Dirichlet",
    "SpaceTag",
    "spectral_weight",
    "norm_identity_constant",
    "ChartNormRules",
    "hardy_slice_norms",
    "space_norm_sq",
    "profile_to_json",
    "profile_from_json",
]


# --------------------------------------------------------------------------
# small helpers
# --------------------------------------------------------------------------


def _plancherel(n: int) -> float:
    """Normalization of the frequency integral, (2π)^-(n+1)."""
    return (2.0 * math.pi) ** (-(n + 1))


def _as_chart(point: SiegelPoint | HorocyclicCoordinates) -> HorocyclicCoordinates:
    if isinstance(point, HorocyclicCoordinates):
        return point
    if isinstance(point, SiegelPoint):
        return psi(point)
    raise InvalidParameterError(
        f"expected a domain point or chart coordinates, got {type(point).__name__}"
    )


def _pairing_form(z_components, t, h, z0: np.ndarray, t0: float, h0: float):
    """Two times the Hermitian pairing of the chart point (z,t,h) against the
    interior point (z0,t0,h0); its real part is positive on the domain."""
    zsq = sum(np.abs(zj) ** 2 for zj in z_components)
    cross = sum(zj * np.conj(z0j) for zj, z0j in zip(z_components, z0))
    z0sq = float(np.sum(np.abs(z0) ** 2))
    return (
        (h + h0)
        + 0.25 * (zsq + z0sq)
        - 0.5 * np.real(cross)
        - 1j * ((t - t0) + 0.5 * np.imag(cross))
    )


def _monomial(z_components, alpha) -> np.ndarray | complex:
    out = None
    for zj, aj in zip(z_components, alpha):
        if aj:
            factor = zj**aj
            out = factor if out is None else out * factor
    return out if out is not None else 1.0 + 0.0j


def _conjugate_p_values(truncation: _fock.FockTruncation, mu, z_components, t):
    """Conjugated matrix coefficients against the lowest-degree vector.

    Returns ``conj(p_alpha(-mu, z, t))`` for every enumerated index, shaped
    ``(dim,) + broadcast(mu, z, t)``; ``p_alpha`` is the pairing of the
    translated lowest-degree vector with ``e_alpha`` at negative frequency.
    """
    mu = np.asarray(mu, dtype=float)
    zsq = sum(np.abs(zj) ** 2 for zj in z_components)
    prefactor = np.asarray(np.exp(mu * (1j * t - 0.25 * zsq)))
    out = np.empty((truncation.dim,) + prefactor.shape, dtype=np.complex128)
    for i, alpha in enumerate(truncation.indices):
        amp = math.exp(-0.5 * alpha.log_factorial)
        out[i] = prefactor * amp * (0.5 * mu) ** (0.5 * alpha.degree) * _monomial(
            z_components, alpha
        )
    return out


@lru_cache(maxsize=512)
def _cached_laguerre(exponent: float, scale: float, node_count: int) -> _quad.HalfLineRule:
    return _quad.gauss_laguerre(exponent, scale, node_count)


# --------------------------------------------------------------------------
# half-line integration engine
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class _Piece:
    """One closed-form summand of a half-line integral: the integrand is
    ``values(mu) * mu^power * e^(-scale*mu)`` with ``values`` bounded and
    oscillating at the stated frequency."""

    power: float
    scale: float
    frequency: float
    values: Callable[[np.ndarray], np.ndarray]


def _check_piece(piece: _Piece) -> None:
    if piece.power <= -1.0:
        raise DivergentIntegralError(
            f"frequency integral diverges at 0 (power {piece.power} <= -1)"
        )
    if piece.scale <= 0.0:
        raise DivergentIntegralError(
            f"frequency integral diverges at infinity (decay rate {piece.scale} <= 0)"
        )


def _pieces_value(pieces: Sequence[_Piece], node_count: int) -> complex:
    total = 0.0 + 0.0j
    for piece in pieces:
        rule = _cached_laguerre(piece.power, piece.scale, node_count)
        total += complex(np.sum(rule.weights * piece.values(rule.nodes)))
    return total


def _auto_node_count(pieces: Sequence[_Piece], base: int) -> int:
    extra = 0.0
    for piece in pieces:
        ratio = piece.frequency / piece.scale
        extra = max(extra, 6.0 * ratio * (abs(piece.power) + 3.0))
    return min(3000, base + int(extra))


def _resolved_value(
    pieces: Sequence[_Piece], node_count: int | None, rtol: float, atol: float, base: int = 96
) -> complex:
    if not pieces:
        return 0.0 + 0.0j
    for piece in pieces:
        _check_piece(piece)
    count = node_count if node_count is not None else _auto_node_count(pieces, base)
    if count < 2:
        raise InvalidParameterError(f"node count must be at least 2, got {count}")
    coarse = _pieces_value(pieces, count)
    fine = _pieces_value(pieces, 2 * count)
    if abs(fine - coarse) > rtol * abs(fine) + atol:
        raise UnderResolvedError(
            "frequency quadrature unresolved: node-count doubling moved the value "
            f"by {abs(fine - coarse):.3e} (|value| ~ {abs(fine):.3e}); raise node_count"
        )
    return fine


# --------------------------------------------------------------------------
# profile families
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class KernelProfile:
    """Rank-one field whose synthesis is a reproducing-kernel slice through
    ``base``.

    The vector part at frequency ``-mu`` is ``normalization * mu^(nu+1) *
    e^(-h0*mu)`` times the conjugated matrix-coefficient row of the base
    point.  ``normalization`` is fixed so that the weighted spectral norm of
    the field equals the order-``m``/weight-``nu`` holomorphic-space norm of
    the synthesized slice; the boundary-limit case (``nu = -1``, ``m = 0``)
    has normalization 1.
    """

    n: int
    nu: float
    base: SiegelPoint
    m: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidParameterError(f"dimension must be at least 1, got {self.n}")
        if self.base.n != self.n:
            raise InvalidParameterError(
                f"base point has dimension {self.base.n}, expected {self.n}"
            )
        if not isinstance(self.m, int) or self.m < 0:
            raise InvalidParameterError(f"derivative order must be a nonnegative int, got {self.m}")
        if self.nu <= -(self.n + 2):
            raise InvalidParameterError(
                f"weight must exceed -(n+2) = {-(self.n + 2)}, got {self.nu}"
            )
        if 2 * self.m + self.nu + 1 < -1e-12:
            raise InvalidParameterError(
                f"need 2m+nu >= -1, got m={self.m}, nu={self.nu}"
            )
        if rho(self.base) <= 0:
            raise InvalidParameterError("base point must lie in the open domain")

    @cached_property
    def chart(self) -> HorocyclicCoordinates:
        return psi(self.base)

    @property
    def _boundary_limit(self) -> bool:
        return abs(2 * self.m + self.nu + 1) < 1e-12

    def normalization_expression(self) -> GammaExpression:
        if self._boundary_limit:
            return GammaExpression()
        return paley_wiener_constant(self.n, self.m, self.nu).reciprocal()

    @cached_property
    def normalization(self) -> float:
        return self.normalization_expression().value

    # -- spectral data -----------------------------------------------------

    def hs_pure_terms(self) -> list[tuple[float, float, float]]:
        c = self.normalization
        return [(c * c, 2.0 * self.nu + 2.0, 2.0 * self.chart.h)]

    def hs_norm_sq_values(self, mu) -> np.ndarray:
        mu = np.asarray(mu, dtype=float)
        c = self.normalization
        return c * c * mu ** (2.0 * self.nu + 2.0) * np.exp(-2.0 * self.chart.h * mu)

    @property
    def trace_mu_power(self) -> float:
        return self.nu + 1.0

    def trace_values(self, mu, z_components, t) -> np.ndarray:
        """Trace of the field at frequency ``-mu`` against the adjoint of the
        translated representation operator at chart position ``(z, t)``."""
        ch = self.chart
        z0sq = float(np.sum(np.abs(ch.z) ** 2))
        zsq = sum(np.abs(zj) ** 2 for zj in z_components)
        cross = sum(zj * np.conj(z0j) for zj, z0j in zip(z_components, ch.z))
        exponent = mu * (
            -(ch.h + 0.25 * (zsq + z0sq)) + 0.5 * cross + 1j * (t - ch.t)
        )
        return self.normalization * mu ** (self.nu + 1.0) * np.exp(exponent)

    def coefficient_values(self, truncation: _fock.FockTruncation, mu) -> np.ndarray:
        """Vector part on the enumerated basis, shaped ``(dim,) + shape(mu)``."""
        ch = self.chart
        mu = np.asarray(mu, dtype=float)
        radial = self.normalization * mu ** (self.nu + 1.0) * np.exp(-ch.h * mu)
        z0 = [np.asarray(z0j) for z0j in ch.z]
        return radial * _conjugate_p_values(truncation, mu, z0, ch.t)

    # -- synthesis ---------------------------------------------------------

    def synthesis_decay(self, h: float) -> float:
        return h + self.chart.h

    def synthesis_pieces(self, coords: HorocyclicCoordinates) -> list[_Piece]:
        ch = self.chart
        dz = coords.z - ch.z
        scale = coords.h + ch.h + 0.25 * float(np.sum(np.abs(dz) ** 2))
        cross = complex(np.sum(coords.z * np.conj(ch.z)))
        phase = (coords.t - ch.t) + 0.5 * cross.imag
        amp = complex(self.normalization)
        power = self.n + self.nu + 1.0
        return [
            _Piece(power, scale, abs(phase), lambda mu, a=amp, p=phase: a * np.exp(1j * p * mu))
        ]


@dataclass(frozen=True)
class DirichletKernelProfile:
    """Rank-one field for the logarithmic-kernel slice through ``base`` with
    the value at the distinguished center subtracted.

    The vector part carries ``mu^(-n-1)``, so plain synthesis diverges at
    frequency zero; use :func:`synthesize_dirichlet`, which integrates the
    center-subtracted combination.  When ``base`` is the center itself the
    field vanishes identically.
    """

    n: int
    m: int
    base: SiegelPoint

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidParameterError(f"dimension must be at least 1, got {self.n}")
        if self.base.n != self.n:
            raise InvalidParameterError(
                f"base point has dimension {self.base.n}, expected {self.n}"
            )
        if not isinstance(self.m, int) or 2 * self.m <= self.n + 1:
            raise InvalidParameterError(f"need integer 2m > n+1, got m={self.m}, n={self.n}")
        if rho(self.base) <= 0:
            raise InvalidParameterError("base point must lie in the open domain")

    @cached_property
    def chart(self) -> HorocyclicCoordinates:
        return psi(self.base)

    def normalization_expression(self) -> GammaExpression:
        from fractions import Fraction

        k = 2 * self.m - self.n - 1
        return GammaExpression(two_exp=Fraction(k), gamma_den=(float(k),))

    @cached_property
    def normalization(self) -> float:
        return self.normalization_expression().value

    @property
    def is_zero(self) -> bool:
        ch = self.chart
        return bool(np.all(ch.z == 0) and ch.t == 0.0 and ch.h == 1.0)

    # -- spectral data -----------------------------------------------------

    def hs_pure_terms(self) -> None:
        return None

    @property
    def _small_mu_vanishing_order(self) -> int:
        """Order of the zero of the squared vector length's bracket at
        frequency 0 (1 generically, 2 when the base has no transverse part)."""
        ch = self.chart
        return 1 if float(np.sum(np.abs(ch.z) ** 2)) > 0.0 else 2

    @property
    def hs_decay(self) -> float:
        return 2.0 * min(self.chart.h, 1.0)

    def hs_norm_sq_values(self, mu) -> np.ndarray:
        ch = self.chart
        mu = np.asarray(mu, dtype=float)
        z0sq = float(np.sum(np.abs(ch.z) ** 2))
        beta = ch.h + 1.0 + 0.25 * z0sq
        bracket = (
            np.exp(-2.0 * ch.h * mu)
            - 2.0 * np.exp(-beta * mu) * np.cos(mu * ch.t)
            + np.exp(-2.0 * mu)
        )
        c = self.normalization
        return c * c * mu ** (-2.0 * self.n - 2.0) * np.maximum(bracket, 0.0)

    @property
    def trace_mu_power(self) -> float:
        return -self.n - 1.0

    def trace_values(self, mu, z_components, t) -> np.ndarray:
        ch = self.chart
        z0sq = float(np.sum(np.abs(ch.z) ** 2))
        zsq = sum(np.abs(zj) ** 2 for zj in z_components)
        cross = sum(zj * np.conj(z0j) for zj, z0j in zip(z_components, ch.z))
        base_part = np.exp(
            mu * (-(ch.h + 0.25 * (zsq + z0sq)) + 0.5 * cross + 1j * (t - ch.t))
        )
        center_part = np.exp(mu * (-(1.0 + 0.25 * zsq) + 1j * t))
        return self.normalization * mu ** (-self.n - 1.0) * (base_part - center_part)

    def coefficient_values(self, truncation: _fock.FockTruncation, mu) -> np.ndarray:
        ch = self.chart
        mu = np.asarray(mu, dtype=float)
        z0 = [np.asarray(z0j) for z0j in ch.z]
        rows = np.exp(-ch.h * mu) * _conjugate_p_values(truncation, mu, z0, ch.t)
        rows = np.array(rows, copy=True)
        rows[0] = rows[0] - np.exp(-mu)
        return self.normalization * mu ** (-self.n - 1.0) * rows

    # -- synthesis ---------------------------------------------------------

    def synthesis_decay(self, h: float) -> float:
        return min(h, 1.0) + min(self.chart.h, 1.0)

    def synthesis_pieces(self, coords: HorocyclicCoordinates) -> list[_Piece]:
        raise DivergentIntegralError(
            "plain synthesis of the logarithmic-kernel field diverges at frequency 0; "
            "use synthesize_dirichlet"
        )


@dataclass(frozen=True)
class FiniteTerm:
    """One basis slot of a finite field: the vector part on slot ``alpha`` is
    ``coefficient * |λ|^power * e^(decay*λ)`` (``decay > 0`` keeps the field
    integrable at large frequency)."""

    alpha: _fock.MultiIndex
    coefficient: complex = 1.0 + 0.0j
    power: float = 0.0
    decay: float = 1.0

    def __post_init__(self) -> None:
        if not isinstance(self.alpha, _fock.MultiIndex):
            object.__setattr__(self, "alpha", _fock.MultiIndex(self.alpha))
        object.__setattr__(self, "coefficient", complex(self.coefficient))
        if not np.isfinite([self.coefficient.real, self.coefficient.imag]).all():
            raise InvalidParameterError("term coefficient must be finite")
        if not math.isfinite(self.power):
            raise InvalidParameterError("term power must be finite")
        if not (self.decay > 0.0):
            raise InvalidParameterError(f"term decay must be positive, got {self.decay}")


@dataclass(frozen=True)
class FiniteProfile:
    """Rank-one field supported on finitely many basis slots, each with a
    power-times-exponential radial part."""

    n: int
    terms: tuple[FiniteTerm, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidParameterError(f"dimension must be at least 1, got {self.n}")
        object.__setattr__(self, "terms", tuple(self.terms))
        seen = set()
        for term in self.terms:
            if not isinstance(term, FiniteTerm):
                raise InvalidParameterError("terms must be FiniteTerm instances")
            if len(term.alpha) != self.n:
                raise InvalidParameterError(
                    f"term index {tuple(term.alpha)} has length {len(term.alpha)}, expected {self.n}"
                )
            if term.alpha in seen:
                raise InvalidParameterError(f"duplicate term index {tuple(term.alpha)}")
            seen.add(term.alpha)

    # -- spectral data -----------------------------------------------------

    def hs_pure_terms(self) -> list[tuple[float, float, float]]:
        return [
            (abs(term.coefficient) ** 2, 2.0 * term.power, 2.0 * term.decay)
            for term in self.terms
        ]

    def hs_norm_sq_values(self, mu) -> np.ndarray:
        mu = np.asarray(mu, dtype=float)
        total = np.zeros(mu.shape)
        for term in self.terms:
            total = total + abs(term.coefficient) ** 2 * mu ** (2.0 * term.power) * np.exp(
                -2.0 * term.decay * mu
            )
        return total

    @property
    def trace_mu_power(self) -> float:
        if not self.terms:
            return 0.0
        return min(term.power + 0.5 * term.alpha.degree for term in self.terms)

    def trace_values(self, mu, z_components, t) -> np.ndarray:
        zsq = sum(np.abs(zj) ** 2 for zj in z_components)
        common = np.exp(mu * (1j * t - 0.25 * zsq))
        total = 0.0
        for term in self.terms:
            amp = (
                np.conj(term.coefficient)
                * math.exp(-0.5 * term.alpha.log_factorial - 0.5 * term.alpha.degree * math.log(2.0))
            )
            total = total + amp * mu ** (term.power + 0.5 * term.alpha.degree) * np.exp(
                -term.decay * mu
            ) * _monomial(z_components, term.alpha)
        return total * common

    def coefficient_values(self, truncation: _fock.FockTruncation, mu) -> np.ndarray:
        mu = np.asarray(mu, dtype=float)
        out = np.zeros((truncation.dim,) + mu.shape, dtype=np.complex128)
        for term in self.terms:
            if term.alpha.degree > truncation.max_degree:
                raise InvalidParameterError(
                    f"term index {tuple(term.alpha)} exceeds truncation degree {truncation.max_degree}"
                )
            out[truncation.index_of(term.alpha)] = (
                term.coefficient * mu**term.power * np.exp(-term.decay * mu)
            )
        return out

    # -- synthesis ---------------------------------------------------------

    def synthesis_decay(self, h: float) -> float:
        if not self.terms:
            return h + 1.0
        return h + min(term.decay for term in self.terms)

    def synthesis_pieces(self, coords: HorocyclicCoordinates) -> list[_Piece]:
        zsq = float(np.sum(np.abs(coords.z) ** 2))
        pieces = []
        for term in self.terms:
            amp = (
                np.conj(term.coefficient)
                * complex(_monomial(list(coords.z), term.alpha))
                * math.exp(-0.5 * term.alpha.log_factorial - 0.5 * term.alpha.degree * math.log(2.0))
            )
            power = self.n + term.power + 0.5 * term.alpha.degree
            scale = coords.h + term.decay + 0.25 * zsq
            phase = coords.t
            pieces.append(
                _Piece(power, scale, abs(phase), lambda mu, a=amp, p=phase: a * np.exp(1j * p * mu))
            )
        return pieces


@dataclass(frozen=True)
class DerivedProfile:
    """A base field multiplied by the ``order``-th power of the frequency;
    synthesis of the derived field is the ``order``-th height derivative of
    the base synthesis."""

    base: "SpectralProfile"
    order: int

    def __post_init__(self) -> None:
        if not isinstance(self.order, int) or self.order < 0:
            raise InvalidParameterError(
                f"derivative order must be a nonnegative int, got {self.order}"
            )

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def _sign(self) -> float:
        return -1.0 if self.order % 2 else 1.0

    def hs_pure_terms(self):
        terms = self.base.hs_pure_terms()
        if terms is None:
            return None
        return [(amp, power + 2.0 * self.order, decay) for amp, power, decay in terms]

    def hs_norm_sq_values(self, mu) -> np.ndarray:
        mu = np.asarray(mu, dtype=float)
        return mu ** (2.0 * self.order) * self.base.hs_norm_sq_values(mu)

    @property
    def hs_decay(self) -> float:
        return self.base.hs_decay

    @property
    def trace_mu_power(self) -> float:
        return self.base.trace_mu_power + self.order

    def trace_values(self, mu, z_components, t) -> np.ndarray:
        return self._sign * mu**self.order * self.base.trace_values(mu, z_components, t)

    def coefficient_values(self, truncation: _fock.FockTruncation, mu) -> np.ndarray:
        mu = np.asarray(mu, dtype=float)
        return self._sign * mu**self.order * self.base.coefficient_values(truncation, mu)

    def synthesis_decay(self, h: float) -> float:
        return self.base.synthesis_decay(h)

    def synthesis_pieces(self, coords: HorocyclicCoordinates) -> list[_Piece]:
        sign = self._sign
        return [
            _Piece(
                piece.power + self.order,
                piece.scale,
                piece.frequency,
                lambda mu, f=piece.values, s=sign: s * f(mu),
            )
            for piece in self.base.synthesis_pieces(coords)
        ]


@dataclass(frozen=True)
class SampledProfile:
    """Rank-one field given by vector-part samples on the nodes of a fixed
    half-line rule; spectral norms and synthesis reuse that rule, so no
    resolution estimate is available."""

    truncation: _fock.FockTruncation
    rule: _quad.HalfLineRule
    coefficients: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.array(self.coefficients, dtype=np.complex128)
        expected = (self.truncation.dim, self.rule.nodes.size)
        if coeffs.shape != expected:
            raise InvalidParameterError(
                f"coefficient array must have shape {expected}, got {coeffs.shape}"
            )
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def n(self) -> int:
        return self.truncation.n

    def hs_at_nodes(self) -> np.ndarray:
        return np.sum(np.abs(self.coefficients) ** 2, axis=0)

    def trace_at_nodes(self, z_components, t) -> list[np.ndarray]:
        """Trace against the adjoint representation operator at each stored node."""
        out = []
        for i, mu in enumerate(self.rule.nodes):
            p_conj = _conjugate_p_values(self.truncation, float(mu), z_components, t)
            column = np.conj(self.coefficients[:, i]).reshape(
                (self.truncation.dim,) + (1,) * (np.ndim(p_conj) - 1)
            )
            out.append(np.sum(column * p_conj, axis=0))
        return out


SpectralProfile = Union[
    KernelProfile, DirichletKernelProfile, FiniteProfile, DerivedProfile, SampledProfile
]


def sample_profile(
    profile: SpectralProfile, truncation: _fock.FockTruncation, rule: _quad.HalfLineRule
) -> SampledProfile:
    """Freeze a closed-form field into vector-part samples on a rule's nodes."""
    if isinstance(profile, SampledProfile):
        raise InvalidParameterError("profile is already sampled")
    coeffs = profile.coefficient_values(truncation, rule.nodes)
    return SampledProfile(truncation, rule, coeffs)


def spectral_derivative(profile: SpectralProfile, order: int) -> SpectralProfile:
    """Multiply the field by the ``order``-th power of the frequency variable.

    Synthesizing the result gives the ``order``-th height derivative of the
    original synthesis; the weighted spectral norm with the weight shifted by
    ``2*order`` reproduces the original norm exactly.
    """
    if not isinstance(order, int) or order < 0:
        raise InvalidParameterError(f"derivative order must be a nonnegative int, got {order}")
    if order == 0:
        return profile
    if isinstance(profile, SampledProfile):
        factor = (-profile.rule.nodes) ** order
        return SampledProfile(profile.truncation, profile.rule, profile.coefficients * factor)
    if isinstance(profile, DerivedProfile):
        return DerivedProfile(profile.base, profile.order + order)
    return DerivedProfile(profile, order)


def apply_field(
    profile: SpectralProfile,
    truncation: _fock.FockTruncation,
    lam: float,
    vector: _fock.FockVector,
) -> _fock.FockVector:
    """Apply the rank-one operator at frequency ``lam`` to a truncated vector.

    The field vanishes on nonnegative frequencies; on negative frequencies the
    image is the pairing against the vector part, carried by the
    lowest-degree basis vector.
    """
    if vector.truncation != truncation:
        raise InvalidParameterError("vector truncation does not match")
    if not math.isfinite(lam):
        raise InvalidParameterError(f"frequency must be finite, got {lam}")
    out = np.zeros(truncation.dim, dtype=np.complex128)
    if lam < 0.0:
        v = profile.coefficient_values(truncation, np.asarray(-lam, dtype=float))
        out[0] = np.sum(vector.coeffs * np.conj(v))
    return _fock.FockVector(truncation, out)


# --------------------------------------------------------------------------
# weighted spectral norms and pairings
# --------------------------------------------------------------------------


def _numeric_halfline(
    values: Callable[[np.ndarray], np.ndarray],
    scale: float,
    node_count: int | None,
    rtol: float,
    atol: float,
    base: int = 160,
) -> complex:
    """Integrate a decaying integrand over (0, ∞) with density-free weights,
    estimating resolution by node-count doubling."""
    if scale <= 0.0:
        raise DivergentIntegralError(
            f"frequency integral diverges at infinity (decay rate {scale} <= 0)"
        )
    count = node_count if node_count is not None else base

    def run(k: int) -> complex:
        rule = _cached_laguerre(0.0, scale, k)
        return complex(np.sum(rule.plain_weights() * values(rule.nodes)))

    coarse = run(count)
    fine = run(2 * count)
    if abs(fine - coarse) > rtol * abs(fine) + atol:
        raise UnderResolvedError(
            "frequency quadrature unresolved: node-count doubling moved the value "
            f"by {abs(fine - coarse):.3e} (|value| ~ {abs(fine):.3e}); raise node_count"
        )
    return fine


def l2nu_norm_sq(
    profile: SpectralProfile,
    nu: float,
    *,
    node_count: int | None = None,
    rtol: float = 1e-9,
    atol: float = 1e-300,
) -> float:
    """Squared spectral norm: the frequency integral of the squared vector
    length against ``mu^(n-nu-1)``, normalized by (2π)^-(n+1).

    Closed-form families with pure power-times-exponential radial parts are
    integrated by exactly matched Gauss rules; other families use a smooth
    half-line rule matched to their decay.
    """
    n = profile.n
    weight_power = n - nu - 1.0
    if isinstance(profile, SampledProfile):
        integrand = profile.hs_at_nodes() * profile.rule.nodes**weight_power
        return float(_plancherel(n) * np.sum(profile.rule.plain_weights() * integrand))
    pure = profile.hs_pure_terms()
    if pure is not None:
        total = 0.0
        for amplitude, power, decay in pure:
            exponent = power + weight_power
            if exponent <= -1.0:
                raise DivergentIntegralError(
                    f"spectral norm diverges at frequency 0 (exponent {exponent} <= -1)"
                )
            if decay <= 0.0:
                raise DivergentIntegralError(
                    f"spectral norm diverges at infinity (decay {decay} <= 0)"
                )
            count = node_count if node_count is not None else 96
            rule = _cached_laguerre(exponent, decay, count)
            mass = float(np.sum(rule.weights))
            fine = float(np.sum(_cached_laguerre(exponent, decay, 2 * count).weights))
            if abs(fine - mass) > rtol * abs(fine) + atol:
                raise UnderResolvedError("frequency quadrature unresolved on a pure term")
            total += amplitude * fine
        return _plancherel(n) * total
    if isinstance(profile, DirichletKernelProfile) and profile.is_zero:
        return 0.0
    # numeric path (logarithmic-kernel family): the bracket vanishes at
    # frequency 0, taming the negative power; check the combined exponent.
    if isinstance(profile, DirichletKernelProfile):
        vanish = profile._small_mu_vanishing_order
        if weight_power - 2.0 * n - 2.0 + vanish <= -1.0:
            raise DivergentIntegralError(
                f"spectral norm diverges at frequency 0 for weight {nu}"
            )
        decay = profile.hs_decay
    elif isinstance(profile, DerivedProfile) and isinstance(profile.base, DirichletKernelProfile):
        inner = profile.base
        if inner.is_zero:
            return 0.0
        vanish = inner._small_mu_vanishing_order
        if weight_power + 2.0 * profile.order - 2.0 * n - 2.0 + vanish <= -1.0:
            raise DivergentIntegralError(
                f"spectral norm diverges at frequency 0 for weight {nu}"
            )
        decay = inner.hs_decay
    else:
        raise InvalidParameterError(
            f"no spectral-norm path for profile type {type(profile).__name__}"
        )
    value = _numeric_halfline(
        lambda mu: profile.hs_norm_sq_values(mu) * mu**weight_power,
        decay,
        node_count,
        rtol,
        atol,
    )
    return _plancherel(n) * float(value.real)


def _unwrap_derived(profile: SpectralProfile) -> tuple[SpectralProfile, int]:
    if isinstance(profile, DerivedProfile):
        return profile.base, profile.order
    return profile, 0


def _cross_pieces(f: SpectralProfile, g: SpectralProfile) -> list[_Piece]:
    """Closed-form pieces of the node-wise pairing ⟨v_g(-mu), v_f(-mu)⟩."""
    if isinstance(f, KernelProfile) and isinstance(g, KernelProfile):
        chf, chg = f.chart, g.chart
        amp = complex(f.normalization * g.normalization)
        power = f.nu + g.nu + 2.0
        dz = chf.z - chg.z
        scale = chf.h + chg.h + 0.25 * float(np.sum(np.abs(dz) ** 2))
        cross = complex(np.sum(chg.z * np.conj(chf.z)))
        phase = (chg.t - chf.t) + 0.5 * cross.imag
        return [
            _Piece(power, scale, abs(phase), lambda mu, a=amp, p=phase: a * np.exp(1j * p * mu))
        ]
    if isinstance(f, KernelProfile) and isinstance(g, FiniteProfile):
        ch = f.chart
        zsq = float(np.sum(np.abs(ch.z) ** 2))
        pieces = []
        for term in g.terms:
            amp = (
                term.coefficient
                * f.normalization
                * complex(_monomial(list(np.conj(ch.z)), term.alpha))
                * math.exp(-0.5 * term.alpha.log_factorial - 0.5 * term.alpha.degree * math.log(2.0))
            )
            power = term.power + f.nu + 1.0 + 0.5 * term.alpha.degree
            scale = term.decay + ch.h + 0.25 * zsq
            phase = -ch.t
            pieces.append(
                _Piece(power, scale, abs(phase), lambda mu, a=amp, p=phase: a * np.exp(1j * p * mu))
            )
        return pieces
    if isinstance(f, FiniteProfile) and isinstance(g, FiniteProfile):
        f_map = {term.alpha: term for term in f.terms}
        pieces = []
        for term in g.terms:
            other = f_map.get(term.alpha)
            if other is None:
                continue
            amp = term.coefficient * np.conj(other.coefficient)
            pieces.append(
                _Piece(
                    term.power + other.power,
                    term.decay + other.decay,
                    0.0,
                    lambda mu, a=amp: np.full(mu.shape, a),
                )
            )
        return pieces
    raise InvalidParameterError(
        f"no closed pairing for profile types {type(f).__name__} x {type(g).__name__}"
    )


def _dirichlet_cross_values(f: DirichletKernelProfile, g: DirichletKernelProfile, mu):
    chf, chg = f.chart, g.chart
    fsq = float(np.sum(np.abs(chf.z) ** 2))
    gsq = float(np.sum(np.abs(chg.z) ** 2))
    cross = complex(np.sum(chg.z * np.conj(chf.z)))
    overlap = np.exp(
        mu * (-(chf.h + chg.h) - 0.25 * (fsq + gsq) + 0.5 * cross + 1j * (chg.t - chf.t))
    )
    p_g_conj = np.exp(mu * (1j * chg.t - 0.25 * gsq))
    p_f = np.exp(mu * (-1j * chf.t - 0.25 * fsq))
    term_g = np.exp(-(chg.h + 1.0) * mu) * p_g_conj
    term_f = np.exp(-(chf.h + 1.0) * mu) * p_f
    bracket = overlap - term_g - term_f + np.exp(-2.0 * mu)
    return f.normalization * g.normalization * mu ** (-2.0 * f.n - 2.0) * bracket


def l2nu_inner_product(
    f_profile: SpectralProfile,
    g_profile: SpectralProfile,
    nu: float,
    *,
    node_count: int | None = None,
    rtol: float = 1e-9,
    atol: float = 1e-300,
) -> complex:
    """Weighted spectral pairing of two fields, oriented so that it matches
    the holomorphic-space inner product ⟨F, G⟩ of the syntheses of
    ``f_profile`` and ``g_profile`` (first slot linear, second conjugated),
    up to the space's norm-identity constant.
    """
    f_base, f_order = _unwrap_derived(f_profile)
    g_base, g_order = _unwrap_derived(g_profile)
    if f_base.n != g_base.n:
        raise InvalidParameterError("profiles have different dimensions")
    n = f_base.n
    weight_power = n - nu - 1.0
    extra = f_order + g_order
    sign = -1.0 if extra % 2 else 1.0
    if isinstance(f_base, DirichletKernelProfile) and isinstance(g_base, DirichletKernelProfile):
        if f_base.is_zero or g_base.is_zero:
            return 0.0 + 0.0j
        exponent_at_zero = weight_power + extra - 2.0 * n - 2.0 + 1.0
        if exponent_at_zero <= -1.0:
            raise DivergentIntegralError(
                f"spectral pairing diverges at frequency 0 for weight {nu}"
            )
        decay = min(
            f_base.chart.h + g_base.chart.h,
            f_base.chart.h + 1.0,
            g_base.chart.h + 1.0,
            2.0,
        )
        value = _numeric_halfline(
            lambda mu: sign
            * mu ** (weight_power + extra)
            * _dirichlet_cross_values(f_base, g_base, mu),
            decay,
            node_count,
            rtol,
            atol,
        )
        return _plancherel(n) * value
    if isinstance(f_base, FiniteProfile) and isinstance(g_base, KernelProfile):
        swapped = l2nu_inner_product(
            g_profile, f_profile, nu, node_count=node_count, rtol=rtol, atol=atol
        )
        return complex(np.conj(swapped))
    pieces = [
        _Piece(
            piece.power + weight_power + extra,
            piece.scale,
            piece.frequency,
            lambda mu, fval=piece.values, s=sign: s * fval(mu),
        )
        for piece in _cross_pieces(f_base, g_base)
    ]
    value = _resolved_value(pieces, node_count, rtol, atol)
    return _plancherel(n) * value


# --------------------------------------------------------------------------
# synthesis
# --------------------------------------------------------------------------


def synthesize(
    profile: SpectralProfile,
    point: SiegelPoint | HorocyclicCoordinates,
    *,
    node_count: int | None = None,
    rtol: float = 1e-8,
    atol: float = 1e-300,
) -> complex:
    """Value at an interior point of the holomorphic function carried by the
    field: the frequency integral of ``e^(-h*mu)`` times the field's trace
    against the adjoint representation operator, against ``mu^n``, normalized
    by (2π)^-(n+1).  Resolution is estimated by node-count doubling.
    """
    coords = _as_chart(point)
    if coords.h <= 0.0:
        raise InvalidParameterError(
            f"synthesis requires an interior point (positive height), got height {coords.h}"
        )
    n = profile.n
    if isinstance(profile, SampledProfile):
        traces = profile.trace_at_nodes(list(coords.z), coords.t)
        weights = profile.rule.plain_weights()
        nodes = profile.rule.nodes
        total = sum(
            w * mu**n * math.exp(-coords.h * mu) * complex(tr)
            for w, mu, tr in zip(weights, nodes, traces)
        )
        return _plancherel(n) * total
    if n + profile.trace_mu_power <= -1.0:
        raise DivergentIntegralError(
            "synthesis integral diverges at frequency 0; "
            "for the logarithmic-kernel family use synthesize_dirichlet"
        )
    pieces = profile.synthesis_pieces(coords)
    return _plancherel(n) * _resolved_value(pieces, node_count, rtol, atol)


def synthesize_dirichlet(
    profile: SpectralProfile,
    point: SiegelPoint | HorocyclicCoordinates,
    constant: complex = 0.0,
    *,
    node_count: int | None = None,
    rtol: float = 1e-8,
    atol: float = 1e-300,
) -> complex:
    """Center-subtracted synthesis plus an affine constant.

    Integrates ``mu^n`` times the difference between the field's weighted
    trace at the target point and at the distinguished center, which cancels
    the frequency-zero divergence of the logarithmic-kernel family; at the
    center itself the integrand vanishes identically and the constant is
    returned exactly.
    """
    coords = _as_chart(point)
    if coords.h <= 0.0:
        raise InvalidParameterError(
            f"synthesis requires an interior point (positive height), got height {coords.h}"
        )
    if isinstance(profile, SampledProfile):
        raise InvalidParameterError("center-subtracted synthesis needs a closed-form profile")
    n = profile.n
    z_components = list(coords.z)
    center_z = [np.zeros_like(zj) for zj in coords.z]
    scale = min(profile.synthesis_decay(coords.h), profile.synthesis_decay(1.0))

    def integrand(mu: np.ndarray) -> np.ndarray:
        at_point = np.exp(-coords.h * mu) * profile.trace_values(mu, z_components, coords.t)
        at_center = np.exp(-mu) * profile.trace_values(mu, center_z, 0.0)
        return mu**n * (at_point - at_center)

    value = _numeric_halfline(integrand, scale, node_count, rtol, atol)
    return _plancherel(n) * value + constant


# --------------------------------------------------------------------------
# chart-evaluable functions
# --------------------------------------------------------------------------


def _closed_profile_values(profile: SpectralProfile, z_components, t, h):
    """Closed-form chart values of the synthesized function, or None."""
    base, order = _unwrap_derived(profile)
    n = base.n
    if isinstance(base, KernelProfile):
        ch = base.chart
        pairing = _pairing_form(z_components, t, h, ch.z, ch.t, ch.h)
        s = n + 2.0 + base.nu + order
        sign = -1.0 if order % 2 else 1.0
        amp = sign * base.normalization * _plancherel(n) * math.gamma(s)
        return amp * np.power(pairing, -s)
    if isinstance(base, FiniteProfile):
        zsq = sum(np.abs(zj) ** 2 for zj in z_components)
        sign = -1.0 if order % 2 else 1.0
        total = 0.0
        for term in base.terms:
            s = n + 1.0 + term.power + 0.5 * term.alpha.degree + order
            amp = (
                sign
                * np.conj(term.coefficient)
                * math.exp(-0.5 * term.alpha.log_factorial - 0.5 * term.alpha.degree * math.log(2.0))
                * _plancherel(n)
                * math.gamma(s)
            )
            denom = (h + term.decay + 0.25 * zsq) - 1j * t
            total = total + amp * _monomial(z_components, term.alpha) * np.power(denom, -s)
        return total if base.terms else np.zeros(np.broadcast(*z_components, t, h).shape, complex)
    if isinstance(base, DirichletKernelProfile):
        ch = base.chart
        at_base = _pairing_form(z_components, t, h, ch.z, ch.t, ch.h)
        center = np.zeros(base.n, dtype=np.complex128)
        at_center = _pairing_form(z_components, t, h, center, 0.0, 1.0)
        amp = base.normalization * _plancherel(n)
        if order == 0:
            center_zero = [np.asarray(0.0 + 0.0j) for _ in range(n)]
            fixed = complex(_pairing_form(center_zero, 0.0, 1.0, ch.z, ch.t, ch.h))
            return amp * (
                np.log(at_center) - np.log(at_base) + np.log(fixed) - math.log(2.0)
            )
        sign = -1.0 if order % 2 else 1.0
        return (
            amp
            * sign
            * math.gamma(order)
            * (np.power(at_base, -float(order)) - np.power(at_center, -float(order)))
        )
    return None


@dataclass(frozen=True)
class ProfileFunction:
    """Chart-evaluable view of a synthesized field, plus an optional additive
    constant (the constant is dropped by height derivatives).

    ``evaluation`` selects closed-form values when the family admits them
    ("auto"/"closed") or forces the frequency-quadrature path ("quadrature");
    the logarithmic-kernel family's quadrature path is center-subtracted.
    """

    profile: SpectralProfile
    constant: complex = 0.0 + 0.0j
    evaluation: str = "auto"
    node_count: int = 160

    def __post_init__(self) -> None:
        if self.evaluation not in ("auto", "closed", "quadrature"):
            raise InvalidParameterError(
                f'evaluation must be "auto", "closed", or "quadrature", got {self.evaluation!r}'
            )
        if isinstance(self.profile, SampledProfile):
            raise InvalidParameterError("chart evaluation needs a closed-form profile")
        object.__setattr__(self, "constant", complex(self.constant))

    @property
    def n(self) -> int:
        return self.profile.n

    def chart_values(self, z_components, t, h) -> np.ndarray:
        use_closed = self.evaluation in ("auto", "closed")
        if use_closed:
            closed = _closed_profile_values(self.profile, z_components, t, h)
            if closed is not None:
                return closed + self.constant
            if self.evaluation == "closed":
                raise InvalidParameterError(
                    f"no closed form for profile type {type(self.profile).__name__}"
                )
        return self._quadrature_values(z_components, t, h) + self.constant

    def _quadrature_values(self, z_components, t, h) -> np.ndarray:
        profile = self.profile
        n = profile.n
        base, _ = _unwrap_derived(profile)
        subtracted = isinstance(base, DirichletKernelProfile)
        scale = min(profile.synthesis_decay(0.0), profile.synthesis_decay(1.0))
        exponent = n + profile.trace_mu_power
        if not subtracted and exponent <= -1.0:
            raise DivergentIntegralError("synthesis integral diverges at frequency 0")
        rule = _cached_laguerre(0.0 if subtracted else max(exponent, 0.0), scale, self.node_count)
        weights = rule.plain_weights()
        total = 0.0
        center_z = [0.0 + 0.0j] * n
        for w, mu in zip(weights, rule.nodes):
            mu = float(mu)
            term = mu**n * np.exp(-h * mu) * profile.trace_values(mu, z_components, t)
            if subtracted:
                term = term - mu**n * math.exp(-mu) * complex(
                    profile.trace_values(mu, center_z, 0.0)
                )
            total = total + w * term
        return _plancherel(n) * total

    def height_derivative(self, order: int) -> "ProfileFunction":
        if order == 0:
            return self
        return ProfileFunction(
            spectral_derivative(self.profile, order),
            0.0,
            self.evaluation,
            self.node_count,
        )


@dataclass(frozen=True, eq=False)
class PointwiseFunction:
    """Chart adapter around a plain point-by-point callable; slow (Python
    loop), intended for small rules and cross-checks.  Height derivatives
    must be supplied as additional callables keyed by order."""

    n: int
    values: Callable[[SiegelPoint], complex]
    height_derivatives: Mapping[int, Callable[[SiegelPoint], complex]] = field(
        default_factory=dict
    )

    def chart_values(self, z_components, t, h) -> np.ndarray:
        from .siegel import psi_inv

        broad = np.broadcast(*z_components, t, h)
        out = np.empty(broad.shape, dtype=np.complex128)
        flat = out.reshape(-1)
        for i, parts in enumerate(broad):
            zs = np.array(parts[: self.n], dtype=np.complex128)
            coords = HorocyclicCoordinates(zs, float(np.real(parts[self.n])), float(np.real(parts[self.n + 1])))
            flat[i] = self.values(psi_inv(coords))
        return out

    def height_derivative(self, order: int) -> "PointwiseFunction":
        if order == 0:
            return self
        func = self.height_derivatives.get(order)
        if func is None:
            raise InvalidParameterError(
                f"no analytic height derivative of order {order} was supplied"
            )
        return PointwiseFunction(self.n, func, {})


def holomorphy_residuals(
    F, point: SiegelPoint | HorocyclicCoordinates, step: float = 1e-4
) -> float:
    """Largest Cauchy–Riemann residual of a chart function at a point.

    Checks that the height derivative matches ``i`` times the transverse
    derivative and that each antiholomorphic derivative in the tangential
    slots equals ``i z_j / 4`` times the transverse derivative, using
    Richardson-refined central differences; returns the maximum magnitude.
    """
    coords = _as_chart(point)
    if coords.h <= 0.0:
        raise InvalidParameterError("residuals require an interior point")
    if step <= 0.0 or step >= coords.h / 4.0:
        step = min(step if step > 0.0 else 1e-4, coords.h / 8.0)

    def value(dz: np.ndarray, dt: float, dh: float) -> complex:
        zs = [np.asarray(coords.z[j] + dz[j]) for j in range(len(coords.z))]
        return complex(F.chart_values(zs, coords.t + dt, coords.h + dh))

    zero = np.zeros(len(coords.z), dtype=np.complex128)

    def derivative(direction: Callable[[float], tuple]) -> complex:
        def central(s: float) -> complex:
            plus = value(*direction(s))
            minus = value(*direction(-s))
            return (plus - minus) / (2.0 * s)

        return (4.0 * central(0.5 * step) - central(step)) / 3.0

    d_t = derivative(lambda s: (zero, s, 0.0))
    d_h = derivative(lambda s: (zero, 0.0, s))
    residuals = [abs(d_h - 1j * d_t)]
    for j in range(len(coords.z)):
        unit = np.zeros(len(coords.z), dtype=np.complex128)
        unit[j] = 1.0
        d_x = derivative(lambda s, u=unit: (s * u, 0.0, 0.0))
        d_y = derivative(lambda s, u=unit: (1j * s * u, 0.0, 0.0))
        d_zbar = 0.5 * (d_x + 1j * d_y)
        residuals.append(abs(d_zbar - 0.25j * coords.z[j] * d_t))
    return max(residuals)


# --------------------------------------------------------------------------
# space tags and chart norms
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Hardy:
    """Boundary-limit space: squared norm is the increasing limit of height
    slices of the squared chart values."""


@dataclass(frozen=True)
class Bergman:
    """Weighted volume space with weight ``h^nu`` (``nu > -1``)."""

    nu: float


@dataclass(frozen=True)
class WeightedDirichlet:
    """Derivative-regularized space: weight ``h^(2m+nu)`` against the squared
    order-``m`` height derivative, for ``-(n+2) < nu < -1`` and ``2m+nu > -1``."""

    nu: float
    m: int


@dataclass(frozen=True)
class DruryArveson:
    """The weighted-Dirichlet space at the distinguished weight ``nu = -(n+1)``."""

    m: int = 1


@dataclass(frozen=True)
class Dirichlet:
    """Endpoint weight ``nu = -(n+2)``: squared seminorm of the order-``m``
    height derivative plus the squared value at the distinguished center."""

    m: int


SpaceTag = Union[Hardy, Bergman, WeightedDirichlet, DruryArveson, Dirichlet]


def _tag_data(tag: SpaceTag, n: int) -> tuple[float | None, int, float, bool]:
    """(height-weight exponent, derivative order, spectral weight, add center value)."""
    if isinstance(tag, Hardy):
        return None, 0, -1.0, False
    if isinstance(tag, Bergman):
        if not tag.nu > -1.0:
            raise InvalidParameterError(f"volume weight must exceed -1, got {tag.nu}")
        return tag.nu, 0, tag.nu, False
    if isinstance(tag, WeightedDirichlet):
        if not (-(n + 2) < tag.nu < -1.0):
            raise InvalidParameterError(
                f"weight must lie in (-(n+2), -1) = ({-(n + 2)}, -1), got {tag.nu}"
            )
        if not isinstance(tag.m, int) or tag.m < 1 or not (2 * tag.m + tag.nu > -1.0):
            raise InvalidParameterError(f"need integer m with 2m+nu > -1, got m={tag.m}, nu={tag.nu}")
        return 2 * tag.m + tag.nu, tag.m, tag.nu, False
    if isinstance(tag, DruryArveson):
        if not isinstance(tag.m, int) or 2 * tag.m <= n:
            raise InvalidParameterError(f"need integer 2m > n, got m={tag.m}, n={n}")
        return 2 * tag.m - n - 1.0, tag.m, -(n + 1.0), False
    if isinstance(tag, Dirichlet):
        if not isinstance(tag.m, int) or 2 * tag.m <= n + 1:
            raise InvalidParameterError(f"need integer 2m > n+1, got m={tag.m}, n={n}")
        return 2 * tag.m - n - 2.0, tag.m, -(n + 2.0), True
    raise InvalidParameterError(f"unknown space tag {tag!r}")


def spectral_weight(tag: SpaceTag, n: int) -> float:
    """The weight at which the spectral norm matches the tagged space."""
    return _tag_data(tag, n)[2]


def norm_identity_constant(tag: SpaceTag, n: int) -> GammaExpression:
    """Constant relating the tagged squared space norm (its derivative part)
    to the weighted squared spectral norm."""
    _, order, weight, _ = _tag_data(tag, n)
    if isinstance(tag, Hardy):
        return GammaExpression()
    return paley_wiener_constant(n, order, weight)


@dataclass(frozen=True)
class ChartNormRules:
    """Tensor-product quadrature layout for chart-volume norms.

    Each tangential slot contributes a radial axis (algebraic-tail map, with
    the polar Jacobian folded in) and a periodic angle axis; the transverse
    axis uses the whole-line algebraic-tail map; the height axis carries the
    space's weight exactly near 0 and an exponential-stretch far field.  Tail
    drift monitoring recomputes the integral with the far fields pushed
    outward and flags growth (divergence) or disagreement (under-resolution).
    """

    radial_scale: float = 1.2
    radial_panels: int = 3
    radial_order: int = 14
    angle_count: int = 16
    t_scale: float = 1.5
    t_panels: int = 5
    t_order: int = 14
    h_split: float = 1.0
    h_panels: int = 3
    h_order: int = 14
    h_tail_panels: int = 3
    h_tail_order: int = 12
    tail_stretch: float = 2.0
    drift_tolerance: float = 5e-4
    check_tails: bool = True
    hardy_start_height: float = 0.4
    hardy_levels: int = 7
    max_points: int = 40_000_000

    @classmethod
    def smoke(cls) -> "ChartNormRules":
        """Coarse preset for high-dimensional sanity checks."""
        return cls(
            radial_panels=2,
            radial_order=8,
            angle_count=8,
            t_panels=3,
            t_order=8,
            h_panels=2,
            h_order=8,
            h_tail_panels=2,
            h_tail_order=8,
            hardy_levels=5,
        )

    def stretched(self) -> "ChartNormRules":
        return replace(
            self,
            radial_scale=self.radial_scale * self.tail_stretch,
            t_scale=self.t_scale * self.tail_stretch,
            h_split=self.h_split * self.tail_stretch,
            check_tails=False,
        )


def _volume_axes(n: int, height_beta: float | None, rules: ChartNormRules) -> list[_quad.Axis1D]:
    radial = _quad.tan_half_axis(rules.radial_scale, rules.radial_panels, rules.radial_order)
    radial = _quad.Axis1D(radial.mapping, radial.params, radial.nodes, radial.weights * radial.nodes)
    angle = _quad.angle_axis(rules.angle_count)
    axes: list[_quad.Axis1D] = [radial] * n + [angle] * n
    axes.append(_quad.tan_axis(rules.t_scale, rules.t_panels, rules.t_order))
    if height_beta is not None:
        axes.append(
            _quad.power_tail_axis(
                height_beta,
                split=rules.h_split,
                panels=rules.h_panels,
                order=rules.h_order,
                tail_panels=rules.h_tail_panels,
                tail_order=rules.h_tail_order,
            )
        )
    return axes


def _contract(values: np.ndarray, axes: Sequence[_quad.Axis1D]) -> float:
    total = values
    for axis in reversed(axes):
        total = np.tensordot(total, axis.weights, axes=([-1], [0]))
    return float(total)


def _volume_integral(
    G, n: int, height_beta: float | None, rules: ChartNormRules, fixed_height: float | None = None
) -> float:
    axes = _volume_axes(n, height_beta, rules)
    box = _quad.BoxRule(tuple(axes))
    if box.point_count > rules.max_points:
        raise InvalidParameterError(
            f"chart rule has {box.point_count} points, over the limit {rules.max_points}; "
            "reduce the per-axis orders (see ChartNormRules.smoke())"
        )
    grids = box.grids()
    z_components = [grids[j] * np.exp(1j * grids[n + j]) for j in range(n)]
    t_grid = grids[2 * n]
    h_grid = grids[2 * n + 1] if height_beta is not None else fixed_height
    values = G.chart_values(z_components, t_grid, h_grid)
    integrand = np.abs(values) ** 2
    full_shape = tuple(axis.node_count for axis in axes)
    integrand = np.broadcast_to(integrand, full_shape)
    return _contract(np.ascontiguousarray(integrand), axes)


def _checked_volume(
    G, n: int, height_beta: float | None, rules: ChartNormRules, fixed_height: float | None = None
) -> float:
    value = _volume_integral(G, n, height_beta, rules, fixed_height)
    if not rules.check_tails:
        return value
    stretched = _volume_integral(G, n, height_beta, rules.stretched(), fixed_height)
    drift = abs(stretched - value) / max(abs(value), abs(stretched), 1e-300)
    if drift > rules.drift_tolerance:
        if stretched > value * (1.0 + rules.drift_tolerance):
            raise DivergentIntegralError(
                "chart integral grows as the far-field panels are pushed outward "
                f"(drift {drift:.3e}); the norm diverges for this function/space pair"
            )
        raise UnderResolvedError(
            f"chart integral unresolved: far-field stretch moved the value by {drift:.3e}"
        )
    return value


def hardy_slice_norms(F, rules: ChartNormRules | None = None) -> list[tuple[float, float]]:
    """Squared slice norms on a geometrically shrinking ladder of heights.

    Returns ``(height, squared slice norm)`` pairs with the height halved at
    each step; for functions with a boundary-limit norm the values increase
    as the height shrinks and converge to the squared norm.
    """
    rules = rules or ChartNormRules()
    if rules.hardy_levels < 2:
        raise InvalidParameterError("need at least two slice levels")
    out = []
    for k in range(rules.hardy_levels):
        height = rules.hardy_start_height * 2.0**-k
        slice_rules = rules if k == 0 else replace(rules, check_tails=False)
        value = _checked_volume(F, F.n, None, slice_rules, fixed_height=height)
        out.append((height, value))
    return out


def _richardson_limit(slice_values: Sequence[float]) -> float:
    table = [list(slice_values)]
    level = len(slice_values)
    for j in range(1, level):
        prev = table[j - 1]
        factor = 2.0**j
        table.append(
            [(factor * prev[i] - prev[i - 1]) / (factor - 1.0) for i in range(1, len(prev))]
        )
    return table[-1][-1]


def space_norm_sq(F, tag: SpaceTag, rules: ChartNormRules | None = None) -> float:
    """Squared norm of a chart-evaluable function in the tagged holomorphic
    space, by tensor-product chart quadrature.

    Volume-type tags integrate the squared order-``m`` height derivative
    against the height weight; the endpoint tag adds the squared value at the
    distinguished center; the boundary-limit tag extrapolates the
    geometrically shrinking height slices (Richardson).
    """
    if not hasattr(F, "chart_values"):
        raise InvalidParameterError(
            "F must be chart-evaluable (ProfileFunction or PointwiseFunction)"
        )
    rules = rules or ChartNormRules()
    n = F.n
    height_beta, order, _, add_center = _tag_data(tag, n)
    if isinstance(tag, Hardy):
        slices = hardy_slice_norms(F, rules)
        return _richardson_limit([value for _, value in slices])
    G = F.height_derivative(order) if order else F
    total = _checked_volume(G, n, height_beta, rules)
    if add_center:
        center = [np.asarray(0.0 + 0.0j) for _ in range(n)]
        total += float(abs(complex(F.chart_values(center, 0.0, 1.0))) ** 2)
    return total


# --------------------------------------------------------------------------
# JSON interfaces
# --------------------------------------------------------------------------


def profile_to_json(profile: SpectralProfile) -> dict:
    if isinstance(profile, KernelProfile):
        return {
            "family": "kernel",
            "nu": profile.nu,
            "m": profile.m,
            "base": point_to_json(profile.base),
        }
    if isinstance(profile, DirichletKernelProfile):
        return {"family": "dirichlet", "m": profile.m, "base": point_to_json(profile.base)}
    if isinstance(profile, FiniteProfile):
        terms = []
        for term in profile.terms:
            terms.append(
                {
                    "alpha": list(term.alpha),
                    "profile": {
                        "power": term.power,
                        "decay": term.decay,
                        "coeff": [term.coefficient.real, term.coefficient.imag],
                    },
                }
            )
        return {"family": "finite", "n": profile.n, "terms": terms}
    if isinstance(profile, DerivedProfile):
        return {
            "family": "derived",
            "order": profile.order,
            "base": profile_to_json(profile.base),
        }
    raise InvalidParameterError(f"no JSON form for profile type {type(profile).__name__}")


def profile_from_json(doc: dict) -> SpectralProfile:
    try:
        family = doc["family"]
    except (TypeError, KeyError) as exc:
        raise InvalidParameterError("profile document needs a 'family' key") from exc
    if family == "kernel":
        base = point_from_json(doc["base"])
        return KernelProfile(base.n, float(doc["nu"]), base, int(doc.get("m", 0)))
    if family == "dirichlet":
        base = point_from_json(doc["base"])
        return DirichletKernelProfile(base.n, int(doc["m"]), base)
    if family == "finite":
        terms = []
        for item in doc.get("terms", []):
            radial = item.get("profile", {})
            coeff = radial.get("coeff", [1.0, 0.0])
            terms.append(
                FiniteTerm(
                    _fock.MultiIndex(item["alpha"]),
                    complex(coeff[0], coeff[1]),
                    float(radial.get("power", 0.0)),
                    float(radial.get("decay", 1.0)),
                )
            )
        return FiniteProfile(int(doc["n"]), tuple(terms))
    if family == "derived":
        return DerivedProfile(profile_from_json(doc["base"]), int(doc["order"]))
    raise InvalidParameterError(f"unknown profile family {family!r}")
