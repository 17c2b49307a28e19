"""Batch verification driver and evaluators.

``siegelpw verify --suite all`` runs the library's identity checks and emits
a machine-readable report (JSON by default, CSV and gnuplot-friendly data on
request).  The ``kernel eval``, ``synth``, ``norm``, and ``da-norm``
subcommands evaluate single objects for scripting.

Every flag has a config-file equivalent (``--config file.json`` holding one
JSON object keyed by flag name); values given on the command line override
the file.  Exit codes: 0 all checks passed, 1 at least one check failed,
2 configuration error (unknown suite, malformed input, invalid parameters).
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import sys
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Callable, Mapping, Sequence

import numpy as np

from . import bargmann as bg
from . import drury_arveson as da
from . import fock as fk
from . import heisenberg as hb
from . import kernels as kr
from . import quadrature as quad
from . import spectral as sp
from .errors import (
    ConfigError,
    DivergentIntegralError,
    InvalidParameterError,
    SiegelPWError,
)
from .gammaexpr import paley_wiener_constant
from .siegel import (
    BallPoint,
    Dilation,
    HeisenbergTranslation,
    HorocyclicCoordinates,
    Inversion,
    SiegelPoint,
    Unitary,
    apply,
    ball_point_from_json,
    base_point,
    cayley,
    chart_from_json,
    point_from_json,
    psi_inv,
    rho,
)

__all__ = [
    "SuiteConfig",
    "CheckResult",
    "SuiteReport",
    "SUITE_NAMES",
    "run_suite",
    "main",
]


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteConfig:
    """Validated settings shared by every check in a suite run."""

    n: int = 1
    nu: float = 0.0
    m: int = 2
    tol: float | None = None
    seed: int = 0
    pairs: int = 100
    fast: bool = False
    jobs: int | None = None

    def __post_init__(self):
        if self.n not in (1, 2):
            raise InvalidParameterError(f"dimension must be 1 or 2, got {self.n!r}")
        if not isinstance(self.nu, (int, float)) or isinstance(self.nu, bool):
            raise InvalidParameterError(f"weight must be a real number, got {self.nu!r}")
        if not self.nu > -1.0:
            raise InvalidParameterError(
                f"the volume-weight flag needs nu > -1, got {self.nu}"
            )
        if not isinstance(self.m, int) or isinstance(self.m, bool) or self.m < 1:
            raise InvalidParameterError(
                f"derivative order must be a positive integer, got {self.m!r}"
            )
        if self.tol is not None and not self.tol > 0.0:
            raise InvalidParameterError(f"tolerance must be positive, got {self.tol!r}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool) or not (
            0 <= self.seed < 2**64
        ):
            raise InvalidParameterError(
                f"seed must be an unsigned 64-bit integer, got {self.seed!r}"
            )
        if not isinstance(self.pairs, int) or isinstance(self.pairs, bool) or self.pairs < 1:
            raise InvalidParameterError(
                f"pair count must be a positive integer, got {self.pairs!r}"
            )
        if self.jobs is not None and (
            not isinstance(self.jobs, int) or isinstance(self.jobs, bool) or self.jobs < 1
        ):
            raise InvalidParameterError(
                f"worker count must be a positive integer, got {self.jobs!r}"
            )


def _check_rng(cfg: SuiteConfig, check_id: str) -> np.random.Generator:
    """Deterministic per-check stream: independent of check scheduling."""
    return np.random.default_rng(
        np.random.SeedSequence([cfg.seed, zlib.crc32(check_id.encode())])
    )


def _chart_rules(cfg: SuiteConfig, reinforced: bool = False) -> sp.ChartNormRules:
    if cfg.fast or cfg.n >= 2:
        return sp.ChartNormRules.smoke()
    return kr.KERNEL_QUADRATURE_RULES if reinforced else sp.ChartNormRules()


def _rules_label(rules: sp.ChartNormRules) -> str:
    return (
        f"chart radial {rules.radial_panels}x{rules.radial_order}, "
        f"angles {rules.angle_count}, t {rules.t_panels}x{rules.t_order}, "
        f"h-tail {rules.h_tail_panels}x{rules.h_tail_order}"
    )


def _rand_interior(rng, n: int, spread: float = 0.7, h_lo: float = 0.3, h_hi: float = 2.0) -> SiegelPoint:
    z = rng.normal(0.0, spread, n) + 1j * rng.normal(0.0, spread, n)
    return psi_inv(
        HorocyclicCoordinates(z=z, t=float(rng.normal(0.0, spread)), h=float(rng.uniform(h_lo, h_hi)))
    )


def _rand_ball(rng, n: int, radius: float = 0.6) -> BallPoint:
    vec = rng.normal(0.0, 1.0, n + 1) + 1j * rng.normal(0.0, 1.0, n + 1)
    vec *= rng.uniform(0.05, radius) / np.linalg.norm(vec)
    return BallPoint(omega=vec)


def _rand_heisenberg(rng, n: int, z_scale: float = 1.0) -> hb.HeisenbergElement:
    z = rng.normal(0.0, z_scale, n) + 1j * rng.normal(0.0, z_scale, n)
    return hb.HeisenbergElement(z=z, t=float(rng.normal(0.0, 1.0)))


# ---------------------------------------------------------------------------
# Report containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    anchor: str
    lhs: complex
    rhs: complex
    rel_error: float
    tolerance: float
    passed: bool
    rules: str
    seconds: float

    def to_row(self) -> dict:
        """JSON-ready row; non-finite numbers become null so the document
        stays strict JSON (an informational check has a null tolerance)."""
        return {
            "id": self.check_id,
            "anchor": self.anchor,
            "lhs": _json_number(self.lhs),
            "rhs": _json_number(self.rhs),
            "rel_error": _json_finite(self.rel_error),
            "tolerance": _json_finite(self.tolerance),
            "passed": self.passed,
            "rules": self.rules,
            "seconds": self.seconds,
        }


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    config: SuiteConfig
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_json(self) -> dict:
        cfg = asdict(self.config)
        return {
            "suite": self.suite,
            "config": cfg,
            "passed": self.passed,
            "checks": [check.to_row() for check in self.checks],
        }

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer)
        header = [
            "id",
            "anchor",
            "lhs",
            "rhs",
            "rel_error",
            "tolerance",
            "passed",
            "rules",
            "seconds",
        ]
        writer.writerow(header)
        for check in self.checks:
            writer.writerow(
                [
                    check.check_id,
                    check.anchor,
                    _csv_number(check.lhs),
                    _csv_number(check.rhs),
                    repr(check.rel_error),
                    repr(check.tolerance),
                    "pass" if check.passed else "fail",
                    check.rules,
                    f"{check.seconds:.3f}",
                ]
            )
        return buffer.getvalue()

    def to_gnuplot(self) -> str:
        lines = [
            f"# suite {self.suite} seed {self.config.seed} n {self.config.n}",
            "# columns: index rel_error tolerance passed id",
        ]
        for index, check in enumerate(self.checks, start=1):
            lines.append(
                f"{index} {check.rel_error:.6e} {check.tolerance:.6e} "
                f"{int(check.passed)} {check.check_id}"
            )
        return "\n".join(lines) + "\n"


def _json_finite(value: float):
    return float(value) if math.isfinite(value) else None


def _json_number(value):
    if isinstance(value, complex):
        if value.imag == 0.0:
            return _json_finite(value.real)
        return [value.real, value.imag]
    return _json_finite(float(value))


def _csv_number(value):
    if isinstance(value, complex) and value.imag != 0.0:
        return repr(value)
    real = value.real if isinstance(value, complex) else value
    return repr(float(real))


# ---------------------------------------------------------------------------
# Check harness
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckData:
    """What a check callable reports back before harness bookkeeping."""

    lhs: complex
    rhs: complex
    rel_error: float
    tolerance: float
    fast_tolerance: float | None = None
    rules: str = "exact arithmetic"


@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    anchor: str
    run: Callable[[SuiteConfig, np.random.Generator], CheckData]


def _rel(lhs: complex, rhs: complex) -> float:
    scale = max(abs(lhs), abs(rhs))
    if scale == 0.0:
        return 0.0
    return abs(lhs - rhs) / scale


# ---------------------------------------------------------------------------
# Suite: group
# ---------------------------------------------------------------------------


def _component_deviation(a: hb.HeisenbergElement, b: hb.HeisenbergElement) -> float:
    """Largest coordinate gap; the homogeneous norm's fourth root would
    inflate a ~1e-16 rounding error in t to ~1e-8."""
    return max(float(np.max(np.abs(a.z - b.z))), abs(a.t - b.t))


def _check_group_associativity(cfg: SuiteConfig, rng) -> CheckData:
    worst = 0.0
    for _ in range(min(cfg.pairs, 200)):
        a, b, c = (_rand_heisenberg(rng, cfg.n) for _ in range(3))
        left = hb.mul(hb.mul(a, b), c)
        right = hb.mul(a, hb.mul(b, c))
        worst = max(worst, _component_deviation(left, right))
    return CheckData(worst, 0.0, worst, 1e-13)


def _check_group_identity_inverse(cfg: SuiteConfig, rng) -> CheckData:
    unit = hb.identity(cfg.n)
    worst = 0.0
    for _ in range(min(cfg.pairs, 200)):
        a = _rand_heisenberg(rng, cfg.n)
        worst = max(
            worst,
            _component_deviation(hb.mul(a, unit), a),
            _component_deviation(hb.mul(unit, a), a),
            _component_deviation(hb.mul(a, hb.inv(a)), unit),
        )
    return CheckData(worst, 0.0, worst, 1e-13)


def _check_group_norm_homogeneity(cfg: SuiteConfig, rng) -> CheckData:
    worst = 0.0
    for _ in range(min(cfg.pairs, 200)):
        a = _rand_heisenberg(rng, cfg.n)
        delta = float(rng.uniform(0.2, 3.0))
        lhs = hb.homogeneous_norm(hb.dilate(delta, a))
        rhs = delta * hb.homogeneous_norm(a)
        worst = max(worst, _rel(lhs, rhs))
    return CheckData(lhs, rhs, worst, 1e-13)


def _check_group_distance_dilation(cfg: SuiteConfig, rng) -> CheckData:
    worst = 0.0
    for _ in range(min(cfg.pairs, 200)):
        a, b = _rand_heisenberg(rng, cfg.n), _rand_heisenberg(rng, cfg.n)
        delta = float(rng.uniform(0.2, 3.0))
        lhs = hb.distance(hb.dilate(delta, a), hb.dilate(delta, b))
        rhs = delta * hb.distance(a, b)
        worst = max(worst, _rel(lhs, rhs))
    return CheckData(lhs, rhs, worst, 1e-13)


# ---------------------------------------------------------------------------
# Suite: fock
# ---------------------------------------------------------------------------


def _fock_truncation(cfg: SuiteConfig) -> fk.FockTruncation:
    degree = 3 if (cfg.fast or cfg.n >= 2) else 4
    return fk.FockTruncation(n=cfg.n, max_degree=degree)


def _check_fock_pairing(cfg: SuiteConfig, rng) -> CheckData:
    lam = -2.0
    trunc = _fock_truncation(cfg)
    worst = 0.0
    vectors = [fk.basis_vector(trunc, alpha) for alpha in trunc.indices]
    for i, f in enumerate(vectors):
        for j, g in enumerate(vectors):
            by_quad = fk.gaussian_pairing(
                lam,
                cfg.n,
                lambda *z, vec=f: fk.evaluate(vec, lam, list(z)),
                lambda *z, vec=g: fk.evaluate(vec, lam, list(z)),
                node_count=20,
            )
            expected = 1.0 if i == j else 0.0
            worst = max(worst, abs(by_quad - expected))
    return CheckData(
        by_quad, expected, worst, 1e-10, rules="Gauss-Hermite pairs, 20 nodes"
    )


def _check_fock_kernel_truncation(cfg: SuiteConfig, rng) -> CheckData:
    lam = -2.0
    degree = 10
    trunc = fk.FockTruncation(n=1, max_degree=degree)
    worst_ratio = 0.0
    for _ in range(10):
        z = [complex(rng.normal(0, 0.5), rng.normal(0, 0.5))]
        w = [complex(rng.normal(0, 0.5), rng.normal(0, 0.5))]
        closed = complex(fk.reproducing_kernel(z, w, lam))
        partial = complex(fk.kernel_partial_sum(trunc, lam, z, w))
        bound = fk.kernel_tail_bound(degree, 0.5 * abs(lam) * abs(z[0]) * abs(w[0]))
        floor = 5e-14 * max(1.0, abs(closed))  # rounding allowance under the bound
        worst_ratio = max(worst_ratio, abs(closed - partial) / (bound + floor))
    return CheckData(
        abs(closed - partial), bound, worst_ratio, 1.0, rules="series truncation bound"
    )


def _check_fock_truncation_budget(cfg: SuiteConfig, rng) -> CheckData:
    worst = 0.0
    for lam, radius, tol in ((-2.0, 0.8, 1e-8), (1.5, 1.2, 1e-10)):
        degree = fk.suggested_truncation(lam, radius, tol)
        x = 0.5 * abs(lam) * radius * radius
        worst = max(worst, fk.kernel_tail_bound(degree, x) / tol)
    return CheckData(worst, 1.0, worst, 1.0, rules="series truncation bound")


# ---------------------------------------------------------------------------
# Suite: bargmann
# ---------------------------------------------------------------------------


def _check_bargmann_homomorphism(cfg: SuiteConfig, rng) -> CheckData:
    lam = -2.0
    degree = 8 if (cfg.fast or cfg.n >= 2) else 10
    trunc = fk.FockTruncation(n=cfg.n, max_degree=degree)
    block = [i for i, alpha in enumerate(trunc.indices) if alpha.degree <= 4]
    worst = 0.0
    for _ in range(3):
        a = _rand_heisenberg(rng, cfg.n, z_scale=0.1)
        b = _rand_heisenberg(rng, cfg.n, z_scale=0.1)
        product = bg.rep_matrix(lam, a, trunc).entries @ bg.rep_matrix(lam, b, trunc).entries
        direct = bg.rep_matrix(lam, hb.mul(a, b), trunc).entries
        grid = np.ix_(block, block)
        worst = max(worst, float(np.max(np.abs(product[grid] - direct[grid]))))
    return CheckData(
        worst, 0.0, worst, 1e-8, rules=f"matrix block degree<=4 of {degree}"
    )


def _check_bargmann_unitarity(cfg: SuiteConfig, rng) -> CheckData:
    lam = -2.0
    degree = 8 if (cfg.fast or cfg.n >= 2) else 10
    trunc = fk.FockTruncation(n=cfg.n, max_degree=degree)
    worst = 0.0
    for _ in range(2):
        a = _rand_heisenberg(rng, cfg.n)
        matrix = bg.rep_matrix(lam, a, trunc)
        norms_sq = np.sum(np.abs(matrix.entries) ** 2, axis=0)
        for j, beta in enumerate(trunc.indices):
            if beta.degree <= 4:
                deficit = 1.0 - float(norms_sq[j])
                bound = bg.column_defect_bound(lam, a, trunc, beta.degree)
                worst = max(worst, deficit - bound, float(norms_sq[j]) - 1.0)
    return CheckData(worst, 0.0, worst, 1e-9, rules=f"columns of degree<=4 of {degree}")


def _check_bargmann_derivative_fields(cfg: SuiteConfig, rng) -> CheckData:
    lam = -2.0
    trunc = fk.FockTruncation(n=cfg.n, max_degree=4 if cfg.n >= 2 else 6)
    worst = max(
        bg.dsigma_check(lam, path, trunc) for path in ("T", "Z", "Zbar_right")
    )
    return CheckData(worst, 0.0, worst, 1e-6, rules="central differences, extrapolated")


def _check_bargmann_projection_tail(cfg: SuiteConfig, rng) -> CheckData:
    lam = -2.0
    degree = 8 if (cfg.fast or cfg.n >= 2) else 12
    trunc = fk.FockTruncation(n=cfg.n, max_degree=degree)
    worst = 0.0
    for _ in range(3):
        a = _rand_heisenberg(rng, cfg.n)
        row = bg.p0_row(lam, a, trunc)
        deficit = 1.0 - fk.norm_sq(row)
        bound = bg.p0_tail_deficit_bound(lam, a, degree)
        worst = max(worst, deficit / bound if bound > 0 else deficit)
    return CheckData(deficit, bound, worst, 1.0, rules="series truncation bound")


# ---------------------------------------------------------------------------
# Suite: paley-wiener
# ---------------------------------------------------------------------------


def _check_pw_volume_identity(cfg: SuiteConfig, rng) -> CheckData:
    rules = _chart_rules(cfg)
    base = _rand_interior(rng, cfg.n, spread=0.4)
    profile = sp.KernelProfile(cfg.n, cfg.nu, base)
    F = sp.ProfileFunction(profile)
    volume = sp.space_norm_sq(F, sp.Bergman(cfg.nu), rules)
    constant = sp.norm_identity_constant(sp.Bergman(cfg.nu), cfg.n).value
    spectral = constant * sp.l2nu_norm_sq(profile, cfg.nu)
    return CheckData(
        volume, spectral, _rel(volume, spectral), 1e-3, 2e-2, _rules_label(rules)
    )


def _check_pw_volume_identity_finite(cfg: SuiteConfig, rng) -> CheckData:
    rules = _chart_rules(cfg)
    terms = (
        sp.FiniteTerm((0,) * cfg.n, 1.0, 0.0, 1.0),
        sp.FiniteTerm((2,) + (0,) * (cfg.n - 1), -0.2 + 0.5j, 0.5, 0.7),
    )
    profile = sp.FiniteProfile(cfg.n, terms)
    F = sp.ProfileFunction(profile)
    volume = sp.space_norm_sq(F, sp.Bergman(cfg.nu), rules)
    constant = sp.norm_identity_constant(sp.Bergman(cfg.nu), cfg.n).value
    spectral = constant * sp.l2nu_norm_sq(profile, cfg.nu)
    return CheckData(
        volume, spectral, _rel(volume, spectral), 1e-3, 2e-2, _rules_label(rules)
    )


def _check_pw_derivative_identity(cfg: SuiteConfig, rng) -> CheckData:
    rules = _chart_rules(cfg, reinforced=True)
    nu = -1.5 if cfg.n == 1 else -2.5
    base = _rand_interior(rng, cfg.n, spread=0.3)
    profile = sp.KernelProfile(cfg.n, nu, base, 1)
    F = sp.ProfileFunction(profile)
    volume = sp.space_norm_sq(F, sp.WeightedDirichlet(nu, 1), rules)
    constant = sp.norm_identity_constant(sp.WeightedDirichlet(nu, 1), cfg.n).value
    spectral = constant * sp.l2nu_norm_sq(profile, nu)
    return CheckData(
        volume, spectral, _rel(volume, spectral), 1e-3, 2e-2, _rules_label(rules)
    )


def _check_pw_m_independence_quadrature(cfg: SuiteConfig, rng) -> CheckData:
    rules = _chart_rules(cfg, reinforced=True)
    nu = -1.5 if cfg.n == 1 else -2.5
    base = _rand_interior(rng, cfg.n, spread=0.3)
    profile = sp.KernelProfile(cfg.n, nu, base, 1)
    F = sp.ProfileFunction(profile)
    spectral = sp.l2nu_norm_sq(profile, nu)
    worst = 0.0
    for m in (1, 2):
        volume = sp.space_norm_sq(F, sp.WeightedDirichlet(nu, m), rules)
        constant = paley_wiener_constant(cfg.n, m, nu).value
        worst = max(worst, _rel(volume, constant * spectral))
    return CheckData(
        volume, constant * spectral, worst, 1e-3, 2e-2, _rules_label(rules)
    )


def _check_pw_m_independence_spectral(cfg: SuiteConfig, rng) -> CheckData:
    """At two admissible derivative orders the Gamma constant times the
    weighted spectral norm of the kernel slice reproduces the same
    closed-form diagonal value, so the order drops out of the identity."""
    base = _rand_interior(rng, cfg.n, spread=0.4)
    if cfg.n == 1:
        cases = [(-2.0, 1), (-2.0, 2), (-1.5, 1), (-1.5, 2)]
    else:
        cases = [(-3.0, 2), (-3.0, 3), (-2.5, 1), (-2.5, 2)]
    worst = 0.0
    for nu, m in cases:
        profile = sp.KernelProfile(cfg.n, nu, base, m)
        constant = paley_wiener_constant(cfg.n, m, nu).value
        lhs = constant * sp.l2nu_norm_sq(profile, nu)
        rhs = kr.kernel_eval(kr.WeightedDirichlet(nu, m), base, base).real
        worst = max(worst, _rel(lhs, rhs))
    return CheckData(lhs, rhs, worst, 1e-10, rules="weighted spectral quadrature")


def _check_pw_endpoint_identity(cfg: SuiteConfig, rng) -> CheckData:
    rules = _chart_rules(cfg, reinforced=True)
    m = max(cfg.m, 2) if cfg.n == 1 else 2
    base = _rand_interior(rng, cfg.n, spread=0.3)
    profile = sp.DirichletKernelProfile(cfg.n, m, base)
    F = sp.ProfileFunction(profile)
    volume = sp.space_norm_sq(F, sp.Dirichlet(m), rules)
    constant = paley_wiener_constant(cfg.n, m, -(cfg.n + 2.0)).value
    spectral = constant * sp.l2nu_norm_sq(profile, -(cfg.n + 2.0))
    return CheckData(
        volume, spectral, _rel(volume, spectral), 1e-3, 2e-2, _rules_label(rules)
    )


def _check_pw_endpoint_center(cfg: SuiteConfig, rng) -> CheckData:
    base = _rand_interior(rng, cfg.n, spread=0.4)
    profile = sp.DirichletKernelProfile(cfg.n, 2, base)
    offset = 0.8 - 0.45j
    got = sp.synthesize_dirichlet(profile, base_point(cfg.n), offset)
    return CheckData(
        got, offset, abs(got - offset), 1e-14, rules="closed-form synthesis"
    )


def _check_pw_hardy_slices(cfg: SuiteConfig, rng) -> CheckData:
    rules = _chart_rules(cfg)
    base = _rand_interior(rng, cfg.n, spread=0.3, h_lo=0.7, h_hi=1.3)
    profile = sp.KernelProfile(cfg.n, -1.0, base)
    F = sp.ProfileFunction(profile)
    slices = sp.hardy_slice_norms(F, rules)
    values = [value for _, value in slices]
    if not all(b > a for a, b in zip(values, values[1:])):
        return CheckData(values[-1], values[0], math.inf, 2e-4, 5e-3, _rules_label(rules))
    limit = sp.space_norm_sq(F, sp.Hardy(), rules)
    spectral = sp.l2nu_norm_sq(profile, -1.0)
    return CheckData(
        limit, spectral, _rel(limit, spectral), 2e-4, 5e-3, _rules_label(rules)
    )


def _check_pw_cr_residuals(cfg: SuiteConfig, rng) -> CheckData:
    where = _rand_interior(rng, cfg.n, spread=0.3)
    kernel_fn = sp.ProfileFunction(sp.KernelProfile(cfg.n, cfg.nu, _rand_interior(rng, cfg.n, spread=0.3)))
    log_fn = sp.ProfileFunction(
        sp.DirichletKernelProfile(cfg.n, 2, _rand_interior(rng, cfg.n, spread=0.3))
    )
    worst = max(
        sp.holomorphy_residuals(kernel_fn, where),
        sp.holomorphy_residuals(log_fn, where),
    )
    return CheckData(worst, 0.0, worst, 1e-6, rules="central differences, step 1e-4")


# ---------------------------------------------------------------------------
# Suite: kernels
# ---------------------------------------------------------------------------


def _spectral_check_ids(cfg: SuiteConfig):
    ids = [kr.Szego(), kr.Bergman(cfg.nu), kr.Bergman(1.5)]
    if cfg.n == 1:
        ids += [kr.WeightedDirichlet(-1.5, 1), kr.WeightedDirichlet(-2.0, 1)]
    else:
        ids += [kr.WeightedDirichlet(-2.5, 1), kr.WeightedDirichlet(-3.0, 2)]
    ids += [kr.DirichletLog(cfg.n + 1), kr.DirichletLog(cfg.n + 1, dotted=True)]
    return ids


def _check_kernels_reproducing_spectral(cfg: SuiteConfig, rng) -> CheckData:
    zeta, omega = _rand_interior(rng, cfg.n), _rand_interior(rng, cfg.n)
    worst = max(
        kr.reproducing_check(kid, zeta, omega, method="spectral")
        for kid in _spectral_check_ids(cfg)
    )
    return CheckData(worst, 0.0, worst, 1e-10, rules="weighted spectral quadrature")


def _check_kernels_reproducing_quadrature(cfg: SuiteConfig, rng) -> CheckData:
    rules = _chart_rules(cfg, reinforced=True)
    zeta, omega = _rand_interior(rng, cfg.n), _rand_interior(rng, cfg.n)
    err = kr.reproducing_check(
        kr.Bergman(cfg.nu), zeta, omega, method="quadrature", rules=rules
    )
    expected = kr.kernel_eval(kr.Bergman(cfg.nu), zeta, omega)
    return CheckData(expected, expected, err, 1e-4, 5e-3, _rules_label(rules))


def _check_kernels_mobius(cfg: SuiteConfig, rng) -> CheckData:
    generators = [
        Dilation(1.4),
        HeisenbergTranslation(
            HorocyclicCoordinates(
                z=np.full(cfg.n, 0.3 - 0.2j), t=0.4, h=0.0
            )
        ),
        Unitary(np.diag(np.exp(1j * np.linspace(0.7, 1.3, cfg.n)))),
        Inversion(),
    ]
    worst = 0.0
    m = cfg.n + 1
    for index in range(cfg.pairs):
        zeta, omega = _rand_interior(rng, cfg.n), _rand_interior(rng, cfg.n)
        phi = generators[index % len(generators)]
        worst = max(worst, kr.mobius_invariance_check(phi, zeta, omega, m=m))
    return CheckData(worst, 0.0, worst, 1e-11, rules=f"{cfg.pairs} random pairs")


def _check_kernels_cayley(cfg: SuiteConfig, rng) -> CheckData:
    worst = 0.0
    for _ in range(cfg.pairs):
        first, second = _rand_ball(rng, cfg.n), _rand_ball(rng, cfg.n)
        worst = max(worst, kr.cayley_transfer_check(first, second, m=cfg.n + 1))
    return CheckData(worst, 0.0, worst, 1e-10, rules=f"{cfg.pairs} random pairs")


def _check_kernels_gram_psd(cfg: SuiteConfig, rng) -> CheckData:
    points = [_rand_interior(rng, cfg.n) for _ in range(8)]
    worst = 0.0
    for kid in _spectral_check_ids(cfg):
        gram = kr.gram_matrix(kid, points)
        eigenvalues = np.linalg.eigvalsh(gram)
        trace = float(np.trace(gram).real)
        worst = max(worst, max(0.0, -float(eigenvalues.min())) / trace)
    return CheckData(worst, 0.0, worst, 1e-10, rules="8-point Gram spectra")


def _check_kernels_qpower_nested(cfg: SuiteConfig, rng) -> CheckData:
    worst = 0.0
    for a, b in ((0.0, 1.0), (1.0, 0.5)):
        constant = kr.q_power_integral_constant(a, b, cfg.n).value
        nested = kr.q_power_integral_nested(a, b, cfg.n)
        worst = max(worst, abs(nested - constant) / constant)
    return CheckData(nested, constant, worst, 1e-10, rules="nested Gauss-Jacobi, 48 nodes")


def _check_kernels_qpower_mc(cfg: SuiteConfig, rng) -> CheckData:
    samples = 50_000 if cfg.fast else 200_000
    worst = 0.0
    for a, b in ((0.0, 1.0), (1.0, 0.5)):
        constant = kr.q_power_integral_constant(a, b, cfg.n).value
        estimate, stderr = kr.q_power_integral_mc(
            a, b, cfg.n, sample_count=samples, seed=cfg.seed
        )
        worst = max(worst, abs(estimate - constant) / (3.0 * stderr))
    return CheckData(
        estimate, constant, worst, 1.0, rules=f"importance sampling, {samples} draws"
    )


def _check_kernels_qpower_divergence(cfg: SuiteConfig, rng) -> CheckData:
    failures = 0.0
    for a, b in ((-1.0, 1.0), (0.0, 0.0), (-1.5, 2.0), (1.0, -0.25)):
        try:
            kr.q_power_integral_constant(a, b, cfg.n)
            failures += 1.0
        except DivergentIntegralError:
            pass
    return CheckData(failures, 0.0, failures, 0.5, rules="divergence dichotomy")


# ---------------------------------------------------------------------------
# Suite: dirichlet
# ---------------------------------------------------------------------------


def _check_dirichlet_reproducing_spectral(cfg: SuiteConfig, rng) -> CheckData:
    m = cfg.n + 1
    zeta, omega = _rand_interior(rng, cfg.n), _rand_interior(rng, cfg.n)
    worst = max(
        kr.reproducing_check(kr.DirichletLog(m, dotted=dotted), zeta, omega)
        for dotted in (False, True)
    )
    return CheckData(worst, 0.0, worst, 1e-10, rules="weighted spectral quadrature")


def _check_dirichlet_reproducing_quadrature(cfg: SuiteConfig, rng) -> CheckData:
    rules = _chart_rules(cfg, reinforced=True)
    m = cfg.n + 1
    zeta, omega = _rand_interior(rng, cfg.n), _rand_interior(rng, cfg.n)
    err = kr.reproducing_check(
        kr.DirichletLog(m), zeta, omega, method="quadrature", rules=rules
    )
    expected = kr.kernel_eval(kr.DirichletLog(m), zeta, omega)
    return CheckData(expected, expected, err, 1e-4, 5e-3, _rules_label(rules))


def _check_dirichlet_constant_slice(cfg: SuiteConfig, rng) -> CheckData:
    rules = _chart_rules(cfg, reinforced=True)
    m = cfg.n + 1
    zeta = _rand_interior(rng, cfg.n)
    value = 0.75 - 0.4j
    constant_fn = sp.ProfileFunction(sp.FiniteProfile(cfg.n, ()), value)
    got = kr.space_inner_product(
        constant_fn, kr.kernel_slice(kr.DirichletLog(m), zeta), sp.Dirichlet(m), rules
    )
    return CheckData(got, value, abs(got - value), 1e-10, 1e-8, _rules_label(rules))


def _check_dirichlet_gram_identity(cfg: SuiteConfig, rng) -> CheckData:
    rules = _chart_rules(cfg, reinforced=True)
    m = cfg.n + 1
    points = [_rand_interior(rng, cfg.n) for _ in range(3)]
    coeffs = [1.0, -0.5 + 0.3j, 0.25j]
    err = kr.dotted_gram_identity_check(points, coeffs, m=m, rules=rules)
    return CheckData(err, 0.0, err, 1e-3, 2e-2, _rules_label(rules))


def _check_dirichlet_mobius(cfg: SuiteConfig, rng) -> CheckData:
    return _check_kernels_mobius(cfg, rng)


def _check_dirichlet_cayley(cfg: SuiteConfig, rng) -> CheckData:
    return _check_kernels_cayley(cfg, rng)


def _check_dirichlet_difference_report(cfg: SuiteConfig, rng) -> CheckData:
    """Report-only: the growth envelope's constant is not pinned down, so the
    empirical ratio is published without asserting a bound."""
    m = cfg.n + 1
    if cfg.n == 1:
        zeta = _rand_interior(rng, cfg.n, spread=0.5)
    else:
        zeta = psi_inv(
            HorocyclicCoordinates(z=np.zeros(cfg.n, dtype=complex), t=0.4, h=0.8)
        )
    report = kr.difference_integral_ratio(zeta, m)
    finite = math.isfinite(report.lhs) and report.lhs >= 0.0
    return CheckData(
        report.lhs,
        report.envelope,
        report.ratio if finite else math.inf,
        math.inf,
        rules="report-only: empirical envelope ratio",
    )


# ---------------------------------------------------------------------------
# Suite: drury-arveson
# ---------------------------------------------------------------------------


def _check_da_documented_value(cfg: SuiteConfig, rng) -> CheckData:
    f = da.parse_ball_polynomial("z1*z2", dim=cfg.n + 1)
    coeff = da.da_norm_coeff_sq(f)
    integral = da.da_norm_integral_sq(f)
    worst = max(abs(coeff - 0.5) / 0.5, abs(integral - coeff) / coeff)
    return CheckData(coeff, 0.5, worst, 1e-12, rules="sphere moments + radial Gauss")


def _check_da_monomial_identity(cfg: SuiteConfig, rng) -> CheckData:
    import itertools

    dim = cfg.n + 1
    worst = 0.0
    for alpha in itertools.product(range(9), repeat=dim):
        if not 0 < sum(alpha) <= 8:
            continue
        f = da.BallPolynomial.monomial(alpha)
        coeff = da.da_norm_coeff_sq(f)
        worst = max(worst, abs(da.da_norm_integral_sq(f) - coeff) / coeff)
    return CheckData(worst, 0.0, worst, 1e-8, rules="sphere moments + radial Gauss")


def _check_da_random_identity(cfg: SuiteConfig, rng) -> CheckData:
    import itertools

    dim = cfg.n + 1
    indices = [
        alpha for alpha in itertools.product(range(9), repeat=dim) if sum(alpha) <= 8
    ]
    count = min(cfg.pairs, 50) if cfg.fast else max(cfg.pairs, 50)
    worst = 0.0
    for _ in range(count):
        chosen = rng.choice(len(indices), size=12, replace=False)
        f = da.BallPolynomial(
            dim,
            {
                tuple(indices[i]): complex(rng.normal(), rng.normal())
                for i in chosen
            },
        )
        coeff = da.da_norm_coeff_sq(f)
        worst = max(worst, abs(da.da_norm_integral_sq(f) - coeff) / coeff)
    return CheckData(worst, 0.0, worst, 1e-8, rules=f"{count} random degree<=8 polynomials")


def _check_da_ladder_closed_form(cfg: SuiteConfig, rng) -> CheckData:
    worst = 0.0
    for k in (1, 2, 3):
        for degree in range(9):
            alpha = (degree,) + (0,) * cfg.n
            out = da.script_r(k, da.BallPolynomial.monomial(alpha))
            expected = math.comb(k + degree, k)
            worst = max(
                worst, abs(out.coefficients[alpha] - expected) / expected
            )
    return CheckData(worst, 0.0, worst, 1e-13, rules="step recursion vs binomial")


def _check_da_sphere_mc(cfg: SuiteConfig, rng) -> CheckData:
    alpha = (2, 1) if cfg.n == 1 else (2, 1, 1)
    samples = 50_000 if cfg.fast else 200_000
    gauss = rng.normal(size=(samples, len(alpha))) + 1j * rng.normal(
        size=(samples, len(alpha))
    )
    xi = gauss / np.linalg.norm(gauss, axis=1, keepdims=True)
    values = np.prod(np.abs(xi) ** (2 * np.asarray(alpha)), axis=1)
    mean = float(values.mean())
    stderr = float(values.std(ddof=1) / math.sqrt(samples))
    expected = da.sphere_monomial_moment(alpha)
    return CheckData(
        mean, expected, abs(mean - expected) / (3.0 * stderr), 1.0,
        rules=f"uniform sphere sampling, {samples} draws",
    )


def _check_da_dot_dirichlet(cfg: SuiteConfig, rng) -> CheckData:
    dim = cfg.n + 1
    constant = da.BallPolynomial.constant(dim, 3.0 - 1.0j)
    paired = da.parse_ball_polynomial("z1*z2", dim=dim)
    worst = max(
        da.dot_dirichlet_norm_coeff_sq(constant),
        abs(da.dot_dirichlet_norm_coeff_sq(paired) - 1.0),
    )
    return CheckData(
        da.dot_dirichlet_norm_coeff_sq(paired), 1.0, worst, 1e-13,
        rules="coefficient weights",
    )


# ---------------------------------------------------------------------------
# Suite registry
# ---------------------------------------------------------------------------


SUITES: Mapping[str, tuple[CheckSpec, ...]] = {
    "group": (
        CheckSpec("group-associativity", "boundary-group product law", _check_group_associativity),
        CheckSpec("group-identity-inverse", "unit and inverse elements", _check_group_identity_inverse),
        CheckSpec("group-norm-homogeneity", "gauge scales linearly under dilation", _check_group_norm_homogeneity),
        CheckSpec("group-distance-dilation", "distance scales linearly under dilation", _check_group_distance_dilation),
    ),
    "fock": (
        CheckSpec("fock-kernel-truncation", "kernel series tail within analytic bound", _check_fock_kernel_truncation),
        CheckSpec("fock-pairing-orthogonality", "monomials orthogonal with closed-form norms", _check_fock_pairing),
        CheckSpec("fock-truncation-budget", "suggested degree meets requested tolerance", _check_fock_truncation_budget),
    ),
    "bargmann": (
        CheckSpec("bargmann-derivative-fields", "differentiated action identities", _check_bargmann_derivative_fields),
        CheckSpec("bargmann-homomorphism", "matrix composition follows group product", _check_bargmann_homomorphism),
        CheckSpec("bargmann-projection-tail", "vacuum-row deficit within tail bound", _check_bargmann_projection_tail),
        CheckSpec("bargmann-unitarity", "columns near-unit within truncation bound", _check_bargmann_unitarity),
    ),
    "paley-wiener": (
        CheckSpec("pw-cr-residuals", "synthesized functions are holomorphic", _check_pw_cr_residuals),
        CheckSpec("pw-derivative-identity", "derivative-weight norm identity", _check_pw_derivative_identity),
        CheckSpec("pw-endpoint-center", "endpoint synthesis pins the center value", _check_pw_endpoint_center),
        CheckSpec("pw-endpoint-identity", "endpoint norm identity", _check_pw_endpoint_identity),
        CheckSpec("pw-hardy-slices", "height slices increase to the boundary norm", _check_pw_hardy_slices),
        CheckSpec("pw-m-independence-quadrature", "derivative order drops out (chart side)", _check_pw_m_independence_quadrature),
        CheckSpec("pw-m-independence-spectral", "derivative order drops out (spectral side)", _check_pw_m_independence_spectral),
        CheckSpec("pw-volume-identity", "volume norm identity for a kernel field", _check_pw_volume_identity),
        CheckSpec("pw-volume-identity-finite", "volume norm identity for a finite field", _check_pw_volume_identity_finite),
    ),
    "kernels": (
        CheckSpec("kernels-cayley-transfer", "ball/half-space kernel transfer", _check_kernels_cayley),
        CheckSpec("kernels-gram-psd", "Gram matrices positive semidefinite", _check_kernels_gram_psd),
        CheckSpec("kernels-mobius-invariance", "renormalized invariance under automorphisms", _check_kernels_mobius),
        CheckSpec("kernels-power-integral-divergence", "divergent exponent pairs rejected", _check_kernels_qpower_divergence),
        CheckSpec("kernels-power-integral-mc", "closed constant within Monte Carlo band", _check_kernels_qpower_mc),
        CheckSpec("kernels-power-integral-nested", "closed constant matches nested quadrature", _check_kernels_qpower_nested),
        CheckSpec("kernels-reproducing-quadrature", "kernel reproduces itself (chart side)", _check_kernels_reproducing_quadrature),
        CheckSpec("kernels-reproducing-spectral", "kernel reproduces itself (spectral side)", _check_kernels_reproducing_spectral),
    ),
    "dirichlet": (
        CheckSpec("dirichlet-cayley-transfer", "ball/half-space kernel transfer", _check_dirichlet_cayley),
        CheckSpec("dirichlet-constant-slice", "constants reproduce through the full kernel", _check_dirichlet_constant_slice),
        CheckSpec("dirichlet-difference-report", "growth-envelope ratio (report only)", _check_dirichlet_difference_report),
        CheckSpec("dirichlet-gram-identity", "combination norm equals Gram value", _check_dirichlet_gram_identity),
        CheckSpec("dirichlet-mobius-invariance", "renormalized invariance under automorphisms", _check_dirichlet_mobius),
        CheckSpec("dirichlet-reproducing-quadrature", "log kernel reproduces itself (chart side)", _check_dirichlet_reproducing_quadrature),
        CheckSpec("dirichlet-reproducing-spectral", "log kernel reproduces itself (spectral side)", _check_dirichlet_reproducing_spectral),
    ),
    "drury-arveson": (
        CheckSpec("da-documented-value", "paired-coordinate norm is one half", _check_da_documented_value),
        CheckSpec("da-dot-dirichlet", "constants-removed coefficient norm values", _check_da_dot_dirichlet),
        CheckSpec("da-ladder-closed-form", "radial ladder matches binomial eigenvalue", _check_da_ladder_closed_form),
        CheckSpec("da-monomial-identity", "coefficient norm equals integral norm (monomials)", _check_da_monomial_identity),
        CheckSpec("da-random-identity", "coefficient norm equals integral norm (random)", _check_da_random_identity),
        CheckSpec("da-sphere-moment-mc", "sphere moments within Monte Carlo band", _check_da_sphere_mc),
    ),
}

SUITE_NAMES: tuple[str, ...] = tuple(SUITES) + ("all",)


def _specs_for(name: str) -> tuple[CheckSpec, ...]:
    if name == "all":
        merged: list[CheckSpec] = []
        for specs in SUITES.values():
            merged.extend(specs)
        return tuple(merged)
    try:
        return SUITES[name]
    except KeyError:
        raise ConfigError(
            f"unknown suite {name!r}; choose from {', '.join(SUITE_NAMES)}"
        ) from None


def _run_check(spec: CheckSpec, cfg: SuiteConfig) -> CheckResult:
    rng = _check_rng(cfg, spec.check_id)
    started = time.perf_counter()
    try:
        data = spec.run(cfg, rng)
    except Exception as exc:  # a raising check fails; it must not kill the run
        data = CheckData(
            math.nan,
            math.nan,
            math.inf,
            0.0,
            rules=f"raised {type(exc).__name__}: {exc}",
        )
    elapsed = time.perf_counter() - started
    tolerance = data.tolerance
    if cfg.fast and data.fast_tolerance is not None:
        tolerance = data.fast_tolerance
    if cfg.tol is not None and math.isfinite(tolerance):
        tolerance = cfg.tol
    return CheckResult(
        check_id=spec.check_id,
        anchor=spec.anchor,
        lhs=data.lhs,
        rhs=data.rhs,
        rel_error=data.rel_error,
        tolerance=tolerance,
        passed=bool(data.rel_error <= tolerance),
        rules=data.rules,
        seconds=elapsed,
    )


def run_suite(name: str, config: SuiteConfig | None = None) -> SuiteReport:
    """Run one named check suite (or ``'all'``) and return its report.

    Checks execute on a worker pool; the report is sorted by check id, so its
    content is independent of scheduling and, for a fixed config, of run
    order (wall times aside).
    """
    cfg = config or SuiteConfig()
    specs = _specs_for(name)
    workers = cfg.jobs or min(4, len(specs))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda spec: _run_check(spec, cfg), specs))
    results.sort(key=lambda check: check.check_id)
    return SuiteReport(suite=name, config=cfg, checks=tuple(results))


# ---------------------------------------------------------------------------
# Point / kernel-id decoding for the eval commands
# ---------------------------------------------------------------------------


def _load_json_argument(text: str, label: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{label} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{label} must be a JSON object")
    return doc


def _point_from_any_json(doc: dict):
    """Accept a chart point {'z','t','h'}, a raw point
    {'zeta_prime','zeta_last'}, or a ball point {'omega'}."""
    if "omega" in doc:
        return ball_point_from_json(doc)
    if "z" in doc:
        return psi_inv(chart_from_json(doc))
    if "zeta_prime" in doc:
        return point_from_json(doc)
    raise ConfigError(
        "point JSON needs 'z'/'t'/'h' (chart), 'zeta_prime'/'zeta_last' (raw), "
        "or 'omega' (ball)"
    )


_KERNEL_ID_NAMES = ("szego", "bergman", "weighted-dirichlet", "dirichlet-log", "ball-dirichlet")


def _kernel_id_from_args(name: str, nu: float | None, m: int | None, dotted: bool):
    if name == "szego":
        return kr.Szego()
    if name == "bergman":
        return kr.Bergman(0.0 if nu is None else nu)
    if name == "weighted-dirichlet":
        if nu is None or m is None:
            raise ConfigError(
                "the derivative-weighted kernel needs both --nu and --m"
            )
        return kr.WeightedDirichlet(nu, m)
    if name == "dirichlet-log":
        return kr.DirichletLog(2 if m is None else m, dotted=dotted)
    if name == "ball-dirichlet":
        return kr.BallDirichlet()
    raise ConfigError(
        f"unknown kernel id {name!r}; choose from {', '.join(_KERNEL_ID_NAMES)}"
    )


_SPACE_NAMES = ("hardy", "bergman", "weighted-dirichlet", "drury-arveson", "dirichlet")


def _space_tag_from_args(name: str, nu: float | None, m: int | None, n: int):
    if name == "hardy":
        return sp.Hardy()
    if name == "bergman":
        return sp.Bergman(0.0 if nu is None else nu)
    if name == "weighted-dirichlet":
        if nu is None or m is None:
            raise ConfigError(
                "the derivative-weighted space needs both --nu and --m"
            )
        return sp.WeightedDirichlet(nu, m)
    if name == "drury-arveson":
        return sp.DruryArveson(1 if m is None else m)
    if name == "dirichlet":
        return sp.Dirichlet(2 if m is None else m)
    raise ConfigError(
        f"unknown space {name!r}; choose from {', '.join(_SPACE_NAMES)}"
    )


# ---------------------------------------------------------------------------
# Subcommand implementations
# ---------------------------------------------------------------------------


def _emit(doc: dict, out_path: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _cmd_verify(args: argparse.Namespace) -> int:
    settings = _merge_config(args)
    suite = settings.pop("suite", "all")
    out_path = settings.pop("out", None)
    csv_path = settings.pop("csv", None)
    gnuplot_path = settings.pop("emit_gnuplot", None)
    cfg = SuiteConfig(**settings)
    if suite not in SUITE_NAMES:
        raise ConfigError(
            f"unknown suite {suite!r}; choose from {', '.join(SUITE_NAMES)}"
        )
    report = run_suite(suite, cfg)
    _emit(report.to_json(), out_path)
    if csv_path:
        with open(csv_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(report.to_csv())
    if gnuplot_path:
        with open(gnuplot_path, "w", encoding="utf-8") as handle:
            handle.write(report.to_gnuplot())
    return 0 if report.passed else 1


_VERIFY_CONFIG_KEYS = {
    "suite": str,
    "n": int,
    "nu": float,
    "m": int,
    "tol": float,
    "seed": int,
    "pairs": int,
    "fast": bool,
    "jobs": int,
    "out": str,
    "csv": str,
    "emit_gnuplot": str,
}


def _merge_config(args: argparse.Namespace) -> dict:
    """Config-file values under CLI values; every flag has a file key."""
    settings: dict = {}
    if args.config is not None:
        try:
            with open(args.config, "r", encoding="utf-8") as handle:
                file_doc = json.load(handle)
        except OSError as exc:
            raise ConfigError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(file_doc, dict):
            raise ConfigError("config file must hold one JSON object")
        for key, value in file_doc.items():
            slot = key.replace("-", "_")
            if slot not in _VERIFY_CONFIG_KEYS:
                raise ConfigError(
                    f"unknown config key {key!r}; valid keys: "
                    + ", ".join(sorted(_VERIFY_CONFIG_KEYS))
                )
            expected = _VERIFY_CONFIG_KEYS[slot]
            if expected is float and isinstance(value, int) and not isinstance(value, bool):
                value = float(value)
            if not isinstance(value, expected) or (
                expected is int and isinstance(value, bool)
            ):
                raise ConfigError(
                    f"config key {key!r} must be {expected.__name__}"
                )
            settings[slot] = value
    for key in _VERIFY_CONFIG_KEYS:
        if key == "fast":
            continue  # store_true flags have no "unset" marker; handled below
        cli_value = getattr(args, key, None)
        if cli_value is not None:
            settings[key] = cli_value
    if args.fast:
        settings["fast"] = True
    settings.setdefault("fast", False)
    return settings


def _cmd_kernel_eval(args: argparse.Namespace) -> int:
    kid = _kernel_id_from_args(args.id, args.nu, args.m, args.dotted)
    first = _point_from_any_json(_load_json_argument(args.omega, "--omega"))
    second = _point_from_any_json(_load_json_argument(args.zeta, "--zeta"))
    value = kr.kernel_eval(kid, first, second)
    n = first.n
    doc = {
        "id": args.id,
        "n": n,
        "value": [value.real, value.imag],
        "constant": kr.kernel_constant(kid, n).text,
    }
    _emit(doc, args.out)
    return 0


def _cmd_synth(args: argparse.Namespace) -> int:
    profile = sp.profile_from_json(_load_json_argument(args.profile, "--profile"))
    target = _point_from_any_json(_load_json_argument(args.zeta, "--zeta"))
    if isinstance(profile, sp.DirichletKernelProfile):
        center_value = complex(args.center_value_re, args.center_value_im)
        value = sp.synthesize_dirichlet(profile, target, center_value)
    else:
        value = sp.synthesize(profile, target)
    doc = {
        "profile": sp.profile_to_json(profile),
        "value": [value.real, value.imag],
    }
    _emit(doc, args.out)
    return 0


def _cmd_norm(args: argparse.Namespace) -> int:
    profile = sp.profile_from_json(_load_json_argument(args.profile, "--profile"))
    n = getattr(profile, "n", None)
    if n is None:
        raise ConfigError("this profile family does not carry a dimension")
    tag = _space_tag_from_args(args.space, args.nu, args.m, n)
    weight = sp.spectral_weight(tag, n)
    constant = sp.norm_identity_constant(tag, n)
    spectral = constant.value * sp.l2nu_norm_sq(profile, weight)
    doc: dict = {
        "space": args.space,
        "n": n,
        "constant": constant.text,
        "spectral": spectral,
    }
    rules = sp.ChartNormRules.smoke() if args.fast else sp.ChartNormRules()
    if args.method in ("quadrature", "both"):
        F = sp.ProfileFunction(profile)
        volume = sp.space_norm_sq(F, tag, rules)
        doc["quadrature"] = volume
        if args.method == "both":
            doc.update(
                {
                    "identity": "chart norm equals constant times spectral norm",
                    "lhs": volume,
                    "rhs": spectral,
                    "rel_error": _rel(volume, spectral),
                    "rules": _rules_label(rules),
                }
            )
    _emit(doc, args.out)
    return 0


def _cmd_da_norm(args: argparse.Namespace) -> int:
    f = da.parse_ball_polynomial(args.poly, dim=args.dim)
    doc: dict = {"poly": str(f), "dim": f.dim}
    if args.method in ("coefficient", "both"):
        doc["coefficient"] = da.da_norm_coeff_sq(f)
        doc["dot_dirichlet"] = da.dot_dirichlet_norm_coeff_sq(f)
    if args.method in ("integral", "both"):
        doc["integral"] = da.da_norm_integral_sq(f)
    if args.method == "both":
        doc["difference"] = abs(doc["coefficient"] - doc["integral"])
    _emit(doc, args.out)
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="siegelpw",
        description="Verification driver and evaluators for holomorphic-space "
        "norm identities on the Siegel upper half-space.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a named check suite")
    verify.add_argument("--suite", choices=SUITE_NAMES, default=None)
    verify.add_argument("--n", type=int, choices=(1, 2), default=None)
    verify.add_argument("--nu", type=float, default=None)
    verify.add_argument("--m", type=int, default=None)
    verify.add_argument("--tol", type=float, default=None)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--pairs", type=int, default=None)
    verify.add_argument("--fast", action="store_true", help="smoke-preset quadrature and smaller sample counts")
    verify.add_argument("--jobs", type=int, default=None)
    verify.add_argument("--out", type=str, default=None, help="write the JSON report here instead of stdout")
    verify.add_argument("--csv", type=str, default=None, help="also write a CSV flattening")
    verify.add_argument("--emit-gnuplot", dest="emit_gnuplot", type=str, default=None, help="also write a plain data file")
    verify.add_argument("--config", type=str, default=None, help="JSON config file; CLI flags override it")
    verify.set_defaults(handler=_cmd_verify)

    kernel = sub.add_parser("kernel", help="pointwise kernel evaluation")
    kernel_sub = kernel.add_subparsers(dest="kernel_command", required=True)
    kernel_eval = kernel_sub.add_parser("eval", help="evaluate one kernel at a pair of points")
    kernel_eval.add_argument("--id", choices=_KERNEL_ID_NAMES, required=True)
    kernel_eval.add_argument("--nu", type=float, default=None)
    kernel_eval.add_argument("--m", type=int, default=None)
    kernel_eval.add_argument("--dotted", action="store_true")
    kernel_eval.add_argument("--omega", type=str, required=True, help="first-slot point JSON")
    kernel_eval.add_argument("--zeta", type=str, required=True, help="second-slot point JSON")
    kernel_eval.add_argument("--out", type=str, default=None)
    kernel_eval.set_defaults(handler=_cmd_kernel_eval)

    synth = sub.add_parser("synth", help="synthesize a field at a point")
    synth.add_argument("--profile", type=str, required=True, help="profile JSON")
    synth.add_argument("--zeta", type=str, required=True, help="target point JSON")
    synth.add_argument("--center-value-re", type=float, default=0.0)
    synth.add_argument("--center-value-im", type=float, default=0.0)
    synth.add_argument("--out", type=str, default=None)
    synth.set_defaults(handler=_cmd_synth)

    norm = sub.add_parser("norm", help="space norm of a profile's synthesis")
    norm.add_argument("--space", choices=_SPACE_NAMES, required=True)
    norm.add_argument("--nu", type=float, default=None)
    norm.add_argument("--m", type=int, default=None)
    norm.add_argument("--profile", type=str, required=True, help="profile JSON")
    norm.add_argument("--method", choices=("spectral", "quadrature", "both"), default="both")
    norm.add_argument("--fast", action="store_true")
    norm.add_argument("--out", type=str, default=None)
    norm.set_defaults(handler=_cmd_norm)

    danorm = sub.add_parser("da-norm", help="coefficient/integral norms of a ball polynomial")
    danorm.add_argument("--dim", type=int, default=None)
    danorm.add_argument("--poly", type=str, required=True)
    danorm.add_argument("--method", choices=("coefficient", "integral", "both"), default="both")
    danorm.add_argument("--out", type=str, default=None)
    danorm.set_defaults(handler=_cmd_da_norm)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except SiegelPWError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
