"""Closed-form reproducing kernels on the half-space and the unit ball.

Every holomorphic space handled by this package (boundary-pairing,
weighted-volume, derivative-weighted, and logarithmic-endpoint on the
half-space; logarithmic on the unit ball) has a reproducing kernel that is a
power or a logarithm of one Hermitian pairing.  This module evaluates those
kernels with principal-branch bookkeeping, carries every normalization as an
exact :class:`~siegelpw.gammaexpr.GammaExpression`, and packages the checks
the verification suites are built from:

* reproducing-property checks, by the spectral transform or by chart
  quadrature with norm polarization,
* the renormalized invariance identity of the dotted logarithmic kernel
  under half-space automorphisms,
* the ball/half-space transfer comparison through the rational ball map,
* Gram matrices and the dotted Gram norm identity,
* the closed-form constant of the weighted pairing-power integral, with
  nested-quadrature and Monte Carlo cross-checks, and the report-only
  difference-integral growth ratio.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .errors import DivergentIntegralError, InvalidParameterError, KernelDomainError
from .gammaexpr import (
    GammaExpression,
    ball_dirichlet_constant,
    bergman_constant,
    dirichlet_log_constant,
    szego_constant,
    weighted_dirichlet_constant,
)
from .siegel import (
    BallPoint,
    SiegelPoint,
    apply,
    base_point,
    cayley,
    classify,
    psi,
    rho,
)
from .quadrature import (
    BoxRule,
    angle_axis,
    integrate_box,
    monte_carlo,
    power_ratio_integral,
    power_tail_axis,
    tan_axis,
)
from . import spectral as sp

__all__ = [
    "Szego",
    "Bergman",
    "WeightedDirichlet",
    "DirichletLog",
    "BallDirichlet",
    "KernelId",
    "kernel_constant",
    "q_pairing",
    "kernel_eval",
    "kernel_profile",
    "kernel_slice",
    "space_tag_for",
    "FunctionCombination",
    "KERNEL_QUADRATURE_RULES",
    "space_inner_product",
    "reproducing_check",
    "mobius_invariance_check",
    "cayley_transfer_check",
    "gram_matrix",
    "dotted_gram_identity_check",
    "q_power_integral_constant",
    "q_power_integral_nested",
    "q_power_integral_mc",
    "DifferenceIntegralReport",
    "difference_integral_ratio",
]


# ---------------------------------------------------------------------------
# Kernel identifiers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Szego:
    """Boundary-pairing kernel: constant times the pairing to the power
    ``-(n+1)``.  The only kernel defined for boundary points (the pair must
    still carry positive total height)."""


@dataclass(frozen=True)
class Bergman:
    """Weighted volume-pairing kernel with height weight exponent ``nu > -1``:
    constant times the pairing to the power ``-(n+2+nu)``."""

    nu: float = 0.0

    def __post_init__(self) -> None:
        nu = float(self.nu)
        if not nu > -1.0:
            raise InvalidParameterError(
                f"volume weight exponent must exceed -1, got {nu}"
            )
        object.__setattr__(self, "nu", nu)


@dataclass(frozen=True)
class WeightedDirichlet:
    """Order-``m`` derivative-pairing kernel with height weight exponent
    ``nu < -1`` (and ``nu > -(n+2)``, checked against the dimension at use
    time).  Same pairing power ``-(n+2+nu)`` as the volume case, with the
    normalization adjusted for the ``m``-fold height derivative."""

    nu: float
    m: int

    def __post_init__(self) -> None:
        nu = float(self.nu)
        m = self.m
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise InvalidParameterError(
                f"derivative order must be a positive integer, got {m!r}"
            )
        if not nu < -1.0:
            raise InvalidParameterError(
                f"derivative-pairing weight exponent must be below -1, got {nu}"
            )
        if not 2 * m + nu > -1.0:
            raise InvalidParameterError(
                f"need 2m + nu > -1 for a convergent pairing, got m={m}, nu={nu}"
            )
        object.__setattr__(self, "nu", nu)


@dataclass(frozen=True)
class DirichletLog:
    """Logarithmic endpoint kernel of derivative order ``m`` (requires
    ``2m > n+1`` at use time).  The full kernel is ``1 + c*log(ratio)``; the
    dotted variant drops the constant term and spans the subspace vanishing
    at the distinguished center."""

    m: int
    dotted: bool = False

    def __post_init__(self) -> None:
        m = self.m
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise InvalidParameterError(
                f"derivative order must be a positive integer, got {m!r}"
            )


@dataclass(frozen=True)
class BallDirichlet:
    """Logarithmic kernel of the unit ball: constant times
    ``log(1/(1 - <omega, zeta>))`` in the full Hermitian inner product."""


KernelId = Union[Szego, Bergman, WeightedDirichlet, DirichletLog, BallDirichlet]

_HALF_SPACE_IDS = (Szego, Bergman, WeightedDirichlet, DirichletLog)


def _validate_dimension(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidParameterError(f"lateral dimension must be a positive integer, got {n!r}")


def kernel_constant(kid: KernelId, n: int) -> GammaExpression:
    """Exact normalization constant of the kernel in lateral dimension ``n``."""
    _validate_dimension(n)
    if isinstance(kid, Szego):
        return szego_constant(n)
    if isinstance(kid, Bergman):
        return bergman_constant(n, kid.nu)
    if isinstance(kid, WeightedDirichlet):
        if not kid.nu > -(n + 2.0):
            raise InvalidParameterError(
                f"derivative-pairing weight exponent must exceed -(n+2) = {-(n + 2)}, "
                f"got {kid.nu}"
            )
        return weighted_dirichlet_constant(n, kid.m, kid.nu)
    if isinstance(kid, DirichletLog):
        if not 2 * kid.m > n + 1:
            raise InvalidParameterError(
                f"logarithmic kernel needs 2m > n+1, got m={kid.m}, n={n}"
            )
        return dirichlet_log_constant(n, kid.m)
    if isinstance(kid, BallDirichlet):
        return ball_dirichlet_constant(n)
    raise InvalidParameterError(f"unknown kernel id {kid!r}")


# ---------------------------------------------------------------------------
# The Hermitian pairing
# ---------------------------------------------------------------------------


def q_pairing(first: SiegelPoint, second: SiegelPoint) -> complex:
    """Hermitian pairing whose diagonal is the defining height.

    Holomorphic in ``first``, conjugate-holomorphic in ``second``;
    ``q_pairing(p, p) == rho(p)`` and swapping the arguments conjugates the
    value.  Its real part is positive whenever the total height of the pair
    is positive.
    """
    if not isinstance(first, SiegelPoint) or not isinstance(second, SiegelPoint):
        raise InvalidParameterError("the pairing expects two half-space points")
    if first.n != second.n:
        raise InvalidParameterError(
            f"points live in different dimensions ({first.n} and {second.n})"
        )
    cross = complex(np.sum(first.zeta_prime * np.conj(second.zeta_prime)))
    return (first.zeta_last - second.zeta_last.conjugate()) / 2j - 0.25 * cross


def _chart_pairing(z_parts, s, k, z0: np.ndarray, t0: float, h0: float):
    """Twice the pairing between the running chart point ``(z, s, k)`` and the
    fixed chart point ``(z0, t0, h0)``, vectorized over arrays (running point
    in the holomorphic slot)."""
    abs_sq = 0.0
    cross = 0.0
    for z, w0 in zip(z_parts, z0):
        abs_sq = abs_sq + np.abs(z) ** 2
        cross = cross + z * np.conj(w0)
    base_abs_sq = float(np.sum(np.abs(z0) ** 2))
    real = k + h0 + 0.25 * (abs_sq + base_abs_sq) - 0.5 * np.real(cross)
    imag = -((s - t0) + 0.5 * np.imag(cross))
    return real + 1j * imag


# ---------------------------------------------------------------------------
# Kernel evaluation
# ---------------------------------------------------------------------------


def _require_half_space_pair(kid, first, second) -> None:
    if not isinstance(first, SiegelPoint) or not isinstance(second, SiegelPoint):
        raise InvalidParameterError(
            f"{type(kid).__name__} is a half-space kernel and expects half-space points"
        )
    if first.n != second.n:
        raise InvalidParameterError(
            f"points live in different dimensions ({first.n} and {second.n})"
        )
    if isinstance(kid, Szego):
        for p in (first, second):
            if classify(p) == "exterior":
                raise KernelDomainError(
                    "boundary-pairing kernel needs points of the closed half-space"
                )
        if not rho(first) + rho(second) > 0.0:
            raise KernelDomainError(
                "boundary-pairing kernel needs positive total height for the pair"
            )
        return
    for p in (first, second):
        if classify(p) != "interior":
            raise KernelDomainError(
                f"{type(kid).__name__} kernel is defined for interior points only"
            )


def _nu_of(kid) -> float:
    if isinstance(kid, Szego):
        return -1.0
    return kid.nu


def _log_ratio(q_first: complex, q_second: complex, q_cross: complex, tracking: bool) -> complex:
    if q_first == 0 or q_second == 0 or q_cross == 0:
        raise KernelDomainError("the pairing vanished; the pair is outside the kernel domain")
    if tracking:
        # Each factor stays in the right half-plane on the domain, so the
        # per-factor principal logarithms form a continuous branch of the
        # combined logarithm.
        return cmath.log(q_first) + cmath.log(q_second) - cmath.log(q_cross)
    ratio = q_first * q_second / q_cross
    if ratio.real <= 0:
        raise KernelDomainError(
            "principal-branch ambiguity: the pairing ratio left the right "
            "half-plane; evaluate with continuity tracking instead"
        )
    return cmath.log(ratio)


def _ball_eval(first, second) -> complex:
    if not isinstance(first, BallPoint) or not isinstance(second, BallPoint):
        raise InvalidParameterError("the ball kernel expects two unit-ball points")
    if first.n != second.n:
        raise InvalidParameterError(
            f"ball points live in different dimensions ({first.n} and {second.n})"
        )
    if first.n < 1:
        raise InvalidParameterError("the ball kernel needs at least two complex coordinates")
    inner = complex(np.sum(first.omega * np.conj(second.omega)))
    # |inner| < 1 for interior points, so 1 - inner stays in the right
    # half-plane and the principal logarithm is branch-safe.
    return ball_dirichlet_constant(first.n).value * (-cmath.log(1.0 - inner))


def kernel_eval(kid: KernelId, first, second, *, tracking: bool = True) -> complex:
    """Evaluate the kernel, holomorphic in ``first`` and conjugate-holomorphic
    in ``second``.

    Power kernels use the principal power of the pairing, which is safe
    because the pairing has positive real part on the admissible pairs.  The
    logarithmic kernel combines three pairing logarithms; with ``tracking``
    (the default) each factor gets its own principal logarithm, which is a
    continuous branch on the whole domain.  ``tracking=False`` takes a single
    principal logarithm of the combined ratio and raises
    :class:`~siegelpw.errors.KernelDomainError` if the ratio leaves the right
    half-plane.
    """
    if isinstance(kid, BallDirichlet):
        return _ball_eval(first, second)
    if not isinstance(kid, _HALF_SPACE_IDS):
        raise InvalidParameterError(f"unknown kernel id {kid!r}")
    _require_half_space_pair(kid, first, second)
    n = first.n
    constant = kernel_constant(kid, n).value
    if isinstance(kid, DirichletLog):
        center = base_point(n)
        value = constant * _log_ratio(
            q_pairing(first, center),
            q_pairing(center, second),
            q_pairing(first, second),
            tracking,
        )
        if not kid.dotted:
            value += 1.0
        return value
    q = q_pairing(first, second)
    if q == 0:
        raise KernelDomainError("the pairing vanished; the pair is outside the kernel domain")
    if q.real <= 0:
        raise KernelDomainError(
            "the pairing left the right half-plane; the pair is outside the kernel domain"
        )
    exponent = n + 2.0 + _nu_of(kid)
    return constant * cmath.exp(-exponent * cmath.log(q))


# ---------------------------------------------------------------------------
# Kernel slices as chart-evaluable functions
# ---------------------------------------------------------------------------


def kernel_profile(kid: KernelId, base: SiegelPoint):
    """Spectral profile whose synthesis is the kernel slice ``K(., base)``."""
    if isinstance(kid, BallDirichlet):
        raise InvalidParameterError("the ball kernel has no half-space spectral profile")
    if not isinstance(base, SiegelPoint):
        raise InvalidParameterError("kernel slices are anchored at half-space points")
    n = base.n
    kernel_constant(kid, n)  # validates the id against the dimension
    if isinstance(kid, Szego):
        return sp.KernelProfile(n, -1.0, base, 0)
    if isinstance(kid, Bergman):
        return sp.KernelProfile(n, kid.nu, base, 0)
    if isinstance(kid, WeightedDirichlet):
        return sp.KernelProfile(n, kid.nu, base, kid.m)
    return sp.DirichletKernelProfile(n, kid.m, base)


def kernel_slice(kid: KernelId, base: SiegelPoint) -> sp.ProfileFunction:
    """Chart-evaluable kernel slice ``K(., base)`` (full logarithmic slices
    carry their constant term; dotted ones vanish at the center)."""
    profile = kernel_profile(kid, base)
    constant = 1.0 if isinstance(kid, DirichletLog) and not kid.dotted else 0.0
    return sp.ProfileFunction(profile, constant)


def space_tag_for(kid: KernelId):
    """Norm tag of the holomorphic space the kernel reproduces."""
    if isinstance(kid, Szego):
        return sp.Hardy()
    if isinstance(kid, Bergman):
        return sp.Bergman(kid.nu)
    if isinstance(kid, WeightedDirichlet):
        return sp.WeightedDirichlet(kid.nu, kid.m)
    if isinstance(kid, DirichletLog):
        return sp.Dirichlet(kid.m)
    raise InvalidParameterError("the ball kernel has no half-space norm tag")


# ---------------------------------------------------------------------------
# Linear combinations and polarized inner products
# ---------------------------------------------------------------------------

#: Quadrature layout for products of kernel slices anchored at different
#: points: such products spread further along the transverse and far-height
#: directions than a single slice, so those axes carry extra panels.
KERNEL_QUADRATURE_RULES = sp.ChartNormRules(
    radial_panels=4,
    radial_order=16,
    t_panels=7,
    t_order=16,
    h_tail_panels=5,
    h_tail_order=16,
)


@dataclass(frozen=True)
class FunctionCombination:
    """Finite linear combination of chart-evaluable functions.

    Behaves like a single chart-evaluable function (``n``, ``chart_values``,
    ``height_derivative``), so norm routines accept it directly; height
    derivatives distribute across the terms.
    """

    terms: tuple

    def __post_init__(self) -> None:
        try:
            terms = tuple((complex(c), f) for c, f in self.terms)
        except (TypeError, ValueError) as exc:
            raise InvalidParameterError(
                "terms must be (coefficient, function) pairs"
            ) from exc
        if not terms:
            raise InvalidParameterError("a function combination needs at least one term")
        dims = {f.n for _, f in terms}
        if len(dims) != 1:
            raise InvalidParameterError("combination terms live in different dimensions")
        object.__setattr__(self, "terms", terms)

    @property
    def n(self) -> int:
        return self.terms[0][1].n

    def chart_values(self, z_components, t, h):
        total = None
        for coeff, func in self.terms:
            piece = coeff * np.asarray(func.chart_values(z_components, t, h), dtype=np.complex128)
            total = piece if total is None else total + piece
        return total

    def height_derivative(self, order: int) -> "FunctionCombination":
        if order == 0:
            return self
        return FunctionCombination(
            tuple((c, f.height_derivative(order)) for c, f in self.terms)
        )


def space_inner_product(F, G, tag, rules: sp.ChartNormRules | None = None) -> complex:
    """Inner product in the tagged space by norm polarization.

    Four squared norms of the combinations ``F + cG`` (``c`` in ``{1, -1, i,
    -i}``) recover the inner product, linear in ``F`` and conjugate-linear in
    ``G``.  The tail-drift guard of the quadrature layout runs on the first
    (dominant) combination only; the near-cancelling combinations reuse the
    validated layout, where a relative drift ratio would be meaningless.
    """
    base = rules or KERNEL_QUADRATURE_RULES
    unguarded = replace(base, check_tails=False)

    def norm_sq(coeff: complex, check_rules) -> float:
        combo = FunctionCombination(((1.0 + 0.0j, F), (coeff, G)))
        return sp.space_norm_sq(combo, tag, check_rules)

    real_part = 0.25 * (norm_sq(1.0 + 0.0j, base) - norm_sq(-1.0 + 0.0j, unguarded))
    imag_part = 0.25 * (norm_sq(1.0j, unguarded) - norm_sq(-1.0j, unguarded))
    return complex(real_part, imag_part)


# ---------------------------------------------------------------------------
# Reproducing-property check
# ---------------------------------------------------------------------------


def reproducing_check(
    kid: KernelId,
    zeta: SiegelPoint,
    omega0: SiegelPoint,
    *,
    method: str = "spectral",
    rules: sp.ChartNormRules | None = None,
    node_count: int | None = None,
) -> float:
    """Relative error of the reproducing identity
    ``<K(., omega0), K(., zeta)> = K(zeta, omega0)`` in the kernel's space.

    ``method='spectral'`` pairs the two slice transforms on the spectral
    side; ``method='quadrature'`` polarizes the chart-quadrature norm
    (``rules`` defaults to :data:`KERNEL_QUADRATURE_RULES`).
    """
    if isinstance(kid, BallDirichlet):
        raise InvalidParameterError("the reproducing check runs on half-space kernels")
    if not isinstance(zeta, SiegelPoint) or not isinstance(omega0, SiegelPoint):
        raise InvalidParameterError("the reproducing check expects half-space points")
    for p in (zeta, omega0):
        if classify(p) != "interior":
            raise KernelDomainError("kernel slices belong to the space for interior anchors only")
    expected = kernel_eval(kid, zeta, omega0)
    tag = space_tag_for(kid)
    n = zeta.n
    if method == "spectral":
        weight = sp.spectral_weight(tag, n)
        paley = sp.norm_identity_constant(tag, n).value
        inner = sp.l2nu_inner_product(
            kernel_profile(kid, omega0),
            kernel_profile(kid, zeta),
            weight,
            node_count=node_count,
        )
        value = paley * inner
        if isinstance(kid, DirichletLog) and not kid.dotted:
            # Both full logarithmic slices equal one at the distinguished
            # center, adding exactly one center product.
            value += 1.0
    elif method == "quadrature":
        value = space_inner_product(
            kernel_slice(kid, omega0), kernel_slice(kid, zeta), tag, rules
        )
    else:
        raise InvalidParameterError("method must be 'spectral' or 'quadrature'")
    return abs(value - expected) / abs(expected)


# ---------------------------------------------------------------------------
# Invariance and transfer checks
# ---------------------------------------------------------------------------


def mobius_invariance_check(phi, first: SiegelPoint, second: SiegelPoint, *, m: int = 2) -> float:
    """Relative defect of the renormalized invariance identity of the dotted
    logarithmic kernel under a half-space automorphism:

    ``Kdot(z, w) = Kdot(pz, pw) - Kdot(pz, pc) - Kdot(pc, pw) + Kdot(pc, pc)``

    where ``p`` prefixes the image under ``phi`` and ``c`` is the
    distinguished center.  The four-term combination cancels the anchoring of
    the kernel at the center, so the identity is exact for every automorphism.
    """
    kid = DirichletLog(m, dotted=True)
    n = first.n
    center = base_point(n)
    lhs = kernel_eval(kid, first, second)
    p_first = apply(phi, first)
    p_second = apply(phi, second)
    p_center = apply(phi, center)
    rhs = (
        kernel_eval(kid, p_first, p_second)
        - kernel_eval(kid, p_first, p_center)
        - kernel_eval(kid, p_center, p_second)
        + kernel_eval(kid, p_center, p_center)
    )
    scale = max(abs(lhs), abs(rhs))
    if scale == 0.0:
        return 0.0
    return abs(lhs - rhs) / scale


def cayley_transfer_check(first: BallPoint, second: BallPoint, *, m: int = 2) -> float:
    """Relative error of the ball/half-space kernel transfer through the
    rational ball map.

    The ball kernel and the dotted logarithmic kernel at the image pair are
    proportional logarithms of the same quantity, so comparing their
    exponentials (each scaled by its own constant) removes the branch
    bookkeeping entirely: both sides must equal ``1/(1 - <omega, zeta>)``.
    """
    if not isinstance(first, BallPoint) or not isinstance(second, BallPoint):
        raise InvalidParameterError("the transfer check expects two unit-ball points")
    if first.n != second.n:
        raise InvalidParameterError(
            f"ball points live in different dimensions ({first.n} and {second.n})"
        )
    n = first.n
    ball_value = kernel_eval(BallDirichlet(), first, second)
    half_value = kernel_eval(DirichletLog(m, dotted=True), cayley(first), cayley(second))
    ball_scale = ball_dirichlet_constant(n).value
    half_scale = kernel_constant(DirichletLog(m), n).value
    lhs = cmath.exp(ball_value / ball_scale)
    rhs = cmath.exp(half_value / half_scale)
    return abs(lhs - rhs) / abs(lhs)


# ---------------------------------------------------------------------------
# Gram matrices
# ---------------------------------------------------------------------------


def gram_matrix(kid: KernelId, points: Sequence) -> np.ndarray:
    """Hermitian Gram matrix ``G[j, k] = K(p_j, p_k)``; positive
    semidefinite because the kernel reproduces its space."""
    pts = list(points)
    if not pts:
        raise InvalidParameterError("a Gram matrix needs at least one point")
    size = len(pts)
    out = np.empty((size, size), dtype=np.complex128)
    for j in range(size):
        out[j, j] = kernel_eval(kid, pts[j], pts[j])
        for k in range(j + 1, size):
            out[j, k] = kernel_eval(kid, pts[j], pts[k])
            out[k, j] = np.conj(out[j, k])
    return out


def dotted_gram_identity_check(
    points: Sequence[SiegelPoint],
    coeffs: Sequence[complex],
    *,
    m: int = 2,
    rules: sp.ChartNormRules | None = None,
) -> float:
    """Relative error between the chart-quadrature squared norm of a finite
    combination of dotted logarithmic slices and its Gram-matrix value
    ``sum_jk conj(a_j) a_k Kdot(p_j, p_k)``."""
    pts = list(points)
    vec = np.asarray([complex(c) for c in coeffs], dtype=np.complex128)
    if not pts or len(pts) != vec.shape[0]:
        raise InvalidParameterError("need matching, nonempty points and coefficients")
    kid = DirichletLog(m, dotted=True)
    combo = FunctionCombination(
        tuple((c, kernel_slice(kid, p)) for c, p in zip(vec, pts))
    )
    lhs = sp.space_norm_sq(combo, sp.Dirichlet(m), rules or KERNEL_QUADRATURE_RULES)
    gram = gram_matrix(kid, pts)
    rhs = complex(np.conj(vec) @ gram @ vec)
    if rhs.real <= 0.0:
        raise InvalidParameterError("the Gram value degenerated; pick independent points")
    return abs(lhs - rhs.real) / rhs.real


# ---------------------------------------------------------------------------
# The weighted pairing-power integral
# ---------------------------------------------------------------------------


def _validate_power_exponents(a: float, b: float) -> tuple[float, float]:
    a = float(a)
    b = float(b)
    if not a > -1.0:
        raise DivergentIntegralError(
            f"height weight exponent {a} makes the boundary factor non-integrable (need a > -1)"
        )
    if not b > 0.0:
        raise DivergentIntegralError(
            f"decay budget {b} leaves a divergent far tail (need b > 0)"
        )
    return a, b


def q_power_integral_constant(a: float, b: float, n: int) -> GammaExpression:
    """Closed-form constant ``C`` of the weighted pairing-power integral

    ``integral over the half-space of height(w)^a * |q_pairing(zeta, w)|^(-(a+b+n+2)) dV(w)
    = C * height(zeta)^(-b)``

    for every interior ``zeta``.  The boundary-distance weight needs
    ``a > -1`` and the far tail needs ``b > 0``; outside that range the
    integral diverges and :class:`~siegelpw.errors.DivergentIntegralError`
    is raised.
    """
    _validate_dimension(n)
    a, b = _validate_power_exponents(a, b)
    half_g = 0.5 * (a + b + n + 2.0)
    return GammaExpression(
        two_exp=Fraction(2 * (n + 1)),
        pi_exp=Fraction(n + 1),
        gamma_num=(a + 1.0, b),
        gamma_den=(half_g, half_g),
    )


def q_power_integral_nested(
    a: float,
    b: float,
    n: int,
    *,
    height: float = 1.0,
    node_count: int = 48,
) -> float:
    """The same integral evaluated by nested one-dimensional quadrature of
    its exact measure reduction (no Gamma/Beta identities), at the axis point
    with the given height.  Returns the full integral value, i.e. the
    constant times ``height**(-b)``.

    Reduction chain, every step an elementary substitution: the boundary
    coordinate scales out against the real part of the pairing; the lateral
    integral goes to polar form (exact sphere factor) and the quarter-square
    substitution; scaling the height coordinate by the shifted radial one
    separates the remaining double integral.  Each surviving factor is a
    half-line power-ratio integral, evaluated by
    :func:`~siegelpw.quadrature.power_ratio_integral` with no truncation.
    """
    _validate_dimension(n)
    a, b = _validate_power_exponents(a, b)
    if not height > 0.0:
        raise InvalidParameterError(f"height must be positive, got {height}")
    g = a + b + n + 2.0
    # Centered slice integral of (A^2 + tau^2)^(-g/2) over the real line,
    # as the square substitution of the symmetric ratio.
    sym_factor = power_ratio_integral(-0.5, 0.5 * g, node_count)
    radial_factor = power_ratio_integral(n - 1.0, g - 2.0 - a, node_count)
    height_factor = power_ratio_integral(a, g - 1.0, node_count)
    sphere_factor = (4.0**n) * (math.pi**n) / math.gamma(n)
    return (
        (2.0**g)
        * sym_factor
        * sphere_factor
        * radial_factor
        * height_factor
        * height ** (-b)
    )


def q_power_integral_mc(
    a: float,
    b: float,
    n: int,
    *,
    zeta: SiegelPoint | None = None,
    sample_count: int = 200_000,
    seed: int = 0,
) -> tuple[float, float]:
    """Monte Carlo cross-check of the weighted pairing-power integral at an
    arbitrary interior ``zeta`` (default: the distinguished center).

    Importance sampling from the integrand's own power-law family: the
    proposal is the normalized integrand with the height exponent ``b``
    halved, drawn exactly through the same chain of substitutions that
    yields the closed-form constant (height and quarter-square radial parts
    are Beta-prime ratios of Gammas, the transverse part a scaled Student
    t).  The importance weights are then bounded by construction —
    independent per-coordinate heavy-tail proposals put too little mass on
    the joint far field, which makes the sample variance infinite and the
    reported standard error untrustworthy.  Returns
    ``(estimate, standard_error)``.
    """
    _validate_dimension(n)
    a, b = _validate_power_exponents(a, b)
    if zeta is None:
        zeta = base_point(n)
    if not isinstance(zeta, SiegelPoint) or zeta.n != n:
        raise InvalidParameterError("zeta must be a half-space point of the given dimension")
    if classify(zeta) != "interior":
        raise KernelDomainError("the integral is anchored at an interior point")
    chart = psi(zeta)
    z0 = np.asarray(chart.z, dtype=np.complex128)
    t0, h0 = chart.t, chart.h
    g = a + b + n + 2.0
    b_proposal = 0.5 * b
    g_proposal = a + b_proposal + n + 2.0
    normalizer = q_power_integral_constant(a, b_proposal, n).value * h0 ** (-b_proposal)

    def proposal_density(z_parts, s, k):
        two_q = _chart_pairing(z_parts, s, k, z0, t0, h0)
        return (k**a) * (0.5 * np.abs(two_q)) ** (-g_proposal) / normalizer

    def sampler(rng: np.random.Generator, count: int):
        # Height: k/h0 ~ BetaPrime(a+1, b'), the exact k-marginal.
        k = h0 * rng.standard_gamma(a + 1.0, count) / rng.standard_gamma(b_proposal, count)
        # Quarter-square lateral radius: v ~ BetaPrime(n, a+b'+1).
        v = rng.standard_gamma(float(n), count) / rng.standard_gamma(a + b_proposal + 1.0, count)
        radius = 2.0 * np.sqrt((h0 + k) * v)
        direction = rng.normal(size=(2 * n, count))
        direction /= np.linalg.norm(direction, axis=0)
        z_parts = [
            z0[j] + radius * (direction[j] + 1j * direction[n + j]) for j in range(n)
        ]
        # Transverse: (A^2 + s'^2)^(-g'/2) is a Student t with g'-1 degrees
        # of freedom, scaled by A and centered where the pairing is real.
        scale = (h0 + k) * (1.0 + v)
        dof = g_proposal - 1.0
        offset = scale * rng.standard_t(dof, count) / math.sqrt(dof)
        cross = sum(zp * np.conj(z0[j]) for j, zp in enumerate(z_parts))
        s = t0 - 0.5 * np.imag(cross) + offset
        xs = [zp.real for zp in z_parts]
        ys = [zp.imag for zp in z_parts]
        return [*xs, *ys, s, k], proposal_density(z_parts, s, k)

    def integrand(*coords):
        xs = coords[:n]
        ys = coords[n : 2 * n]
        s = coords[2 * n]
        k = coords[2 * n + 1]
        z_parts = [x + 1j * y for x, y in zip(xs, ys)]
        two_q = _chart_pairing(z_parts, s, k, z0, t0, h0)
        return (k**a) * (0.5 * np.abs(two_q)) ** (-g)

    estimate, stderr = monte_carlo(sampler, integrand, sample_count, seed)
    return float(estimate.real), stderr


# ---------------------------------------------------------------------------
# Report-only difference-integral growth ratio
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DifferenceIntegralReport:
    """Chart-quadrature value of the anchored difference integral, the growth
    envelope ``(1 + |zeta|^2)^(2m+1) / height(zeta)``, and their ratio.  The
    ratio is reported, never asserted: boundedness of the ratio over the
    domain is the open quantitative statement this check only illustrates."""

    lhs: float
    envelope: float
    ratio: float


def difference_integral_ratio(
    zeta: SiegelPoint,
    m: int = 2,
    *,
    radial=(3, 10),
    angle_count: int = 12,
    time=(3, 10),
    height=(3, 10),
) -> DifferenceIntegralReport:
    """Evaluate ``integral of |q(zeta, w)^(-m) - q(center, w)^(-m)|^2 *
    height(w)^(2m-n-2) dV(w)`` by chart quadrature and compare it with the
    growth envelope.

    Implemented for lateral dimension one; higher dimensions reduce to the
    same axes only when ``zeta`` sits on the symmetry axis (zero lateral
    part), which is also supported.
    """
    if not isinstance(zeta, SiegelPoint):
        raise InvalidParameterError("the difference integral is anchored at a half-space point")
    if classify(zeta) != "interior":
        raise KernelDomainError("the difference integral needs an interior anchor")
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise InvalidParameterError(f"derivative order must be a positive integer, got {m!r}")
    n = zeta.n
    if not 2 * m > n + 1:
        raise InvalidParameterError(f"the weight needs 2m > n+1, got m={m}, n={n}")
    chart = psi(zeta)
    z0 = np.asarray(chart.z, dtype=np.complex128)
    t0, h0 = chart.t, chart.h
    axis_centered = float(np.sum(np.abs(z0) ** 2)) == 0.0
    if n > 1 and not axis_centered:
        raise InvalidParameterError(
            "off-axis anchors are supported in lateral dimension one only"
        )
    r_panels, r_order = radial
    t_panels, t_order = time
    k_panels, k_order = height
    time_spread = 2.0 + abs(t0) + float(np.sum(np.abs(z0) ** 2))
    r_axis = power_tail_axis(
        2.0 * n - 1.0, split=2.0 * (1.0 + math.sqrt(h0)), panels=r_panels, order=r_order
    )
    t_axis = tan_axis(time_spread, panels=t_panels, order=t_order)
    k_axis = power_tail_axis(
        2.0 * m - n - 2.0, split=max(h0, 1.0), panels=k_panels, order=k_order
    )

    def difference_sq(z_parts, s, k):
        q_zeta = 0.5 * np.conj(_chart_pairing(z_parts, s, k, z0, t0, h0))
        q_center = 0.5 * np.conj(
            _chart_pairing(z_parts, s, k, np.zeros(n, dtype=np.complex128), 0.0, 1.0)
        )
        diff = q_zeta ** (-m) - q_center ** (-m)
        return np.abs(diff) ** 2

    if axis_centered:
        # Radially symmetric in the lateral variable: the angular integral is
        # the exact sphere factor.
        rule = BoxRule((r_axis, t_axis, k_axis))
        sphere_factor = 2.0 * (math.pi**n) / math.gamma(n)

        def integrand(r, s, k):
            z_parts = [r + 0.0j] + [np.zeros_like(r) + 0.0j] * (n - 1)
            return difference_sq(z_parts, s, k)

        lhs = sphere_factor * integrate_box(rule, integrand).real
    else:
        rule = BoxRule((r_axis, angle_axis(angle_count), t_axis, k_axis))

        def integrand(r, theta, s, k):
            return difference_sq([r * np.exp(1j * theta)], s, k)

        lhs = integrate_box(rule, integrand).real
    point_sq = float(np.sum(np.abs(zeta.zeta_prime) ** 2)) + abs(zeta.zeta_last) ** 2
    envelope = (1.0 + point_sq) ** (2 * m + 1) / rho(zeta)
    return DifferenceIntegralReport(lhs=lhs, envelope=envelope, ratio=lhs / envelope)
