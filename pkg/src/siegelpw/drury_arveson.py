"""Polynomial calculus on the unit ball of ``C^(n+1)``.

Holomorphic polynomials are stored sparsely by multi-index.  The module
provides the coefficient-side squared norms of the Drury-Arveson space and of
the dotted (constants-removed) Dirichlet space, the radial-derivative ladder
of operators, and an independent integral form of the Drury-Arveson norm that
pairs closed-form sphere moments with a one-dimensional radial quadrature.
"""

from __future__ import annotations

import ast
import math
import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Tuple, Union

from .errors import InvalidParameterError
from .quadrature import _gauss_jacobi_unit
from .siegel import BallPoint

__all__ = [
    "BallPolynomial",
    "MultiIndex",
    "parse_ball_polynomial",
    "radial_derivative",
    "script_r",
    "sphere_monomial_moment",
    "da_norm_coeff_sq",
    "dot_dirichlet_norm_coeff_sq",
    "da_norm_integral_sq",
]

MultiIndex = Tuple[int, ...]

_VARIABLE_PATTERN = re.compile(r"z([1-9][0-9]*)\Z")


def _canonical_exponents(exponents, dim: int) -> MultiIndex:
    alpha = tuple(exponents)
    if len(alpha) != dim:
        raise InvalidParameterError(
            f"multi-index {alpha!r} has length {len(alpha)}, expected {dim}"
        )
    out = []
    for entry in alpha:
        as_int = int(entry)
        if as_int != entry or as_int < 0:
            raise InvalidParameterError(
                f"multi-index entries must be non-negative integers, got {entry!r}"
            )
        out.append(as_int)
    return tuple(out)


@dataclass(frozen=True)
class BallPolynomial:
    """A holomorphic polynomial on the unit ball, stored as a finitely
    supported map from multi-indices (one exponent per complex coordinate)
    to complex coefficients.

    Supports ``+``, ``-``, scalar and polynomial ``*``, and integer powers,
    which is enough arithmetic to assemble any polynomial from coordinates.
    """

    dim: int
    coefficients: Mapping[MultiIndex, complex] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.dim, int) or isinstance(self.dim, bool) or self.dim < 1:
            raise InvalidParameterError(
                f"dimension must be a positive integer, got {self.dim!r}"
            )
        cleaned = {}
        for alpha, value in dict(self.coefficients).items():
            key = _canonical_exponents(alpha, self.dim)
            coeff = complex(value)
            if coeff != 0:
                cleaned[key] = cleaned.get(key, 0.0 + 0.0j) + coeff
        cleaned = {k: v for k, v in cleaned.items() if v != 0}
        object.__setattr__(self, "coefficients", MappingProxyType(cleaned))

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, dim: int, value: complex) -> "BallPolynomial":
        return cls(dim, {(0,) * dim: complex(value)})

    @classmethod
    def coordinate(cls, dim: int, index: int) -> "BallPolynomial":
        """The coordinate function ``z<index>`` (1-based index)."""
        if not isinstance(index, int) or index < 1 or index > dim:
            raise InvalidParameterError(
                f"coordinate index must lie in 1..{dim}, got {index!r}"
            )
        alpha = [0] * dim
        alpha[index - 1] = 1
        return cls(dim, {tuple(alpha): 1.0 + 0.0j})

    @classmethod
    def monomial(cls, exponents: Iterable[int], coefficient: complex = 1.0) -> "BallPolynomial":
        alpha = tuple(exponents)
        return cls(len(alpha), {alpha: complex(coefficient)})

    # -- structure -----------------------------------------------------------

    @property
    def degree(self) -> int:
        """Total degree (0 for constants and for the zero polynomial)."""
        return max((sum(alpha) for alpha in self.coefficients), default=0)

    def terms(self) -> Iterator[Tuple[MultiIndex, complex]]:
        """Deterministically ordered (multi-index, coefficient) pairs."""
        for alpha in sorted(self.coefficients):
            yield alpha, self.coefficients[alpha]

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "BallPolynomial":
        if isinstance(other, BallPolynomial):
            if other.dim != self.dim:
                raise InvalidParameterError(
                    f"polynomials live in different dimensions ({self.dim} and {other.dim})"
                )
            return other
        if isinstance(other, (int, float, complex)) and not isinstance(other, bool):
            return BallPolynomial.constant(self.dim, other)
        raise InvalidParameterError(f"cannot combine a polynomial with {other!r}")

    def __add__(self, other) -> "BallPolynomial":
        rhs = self._coerce(other)
        merged = dict(self.coefficients)
        for alpha, value in rhs.coefficients.items():
            merged[alpha] = merged.get(alpha, 0.0 + 0.0j) + value
        return BallPolynomial(self.dim, merged)

    __radd__ = __add__

    def __neg__(self) -> "BallPolynomial":
        return BallPolynomial(
            self.dim, {alpha: -value for alpha, value in self.coefficients.items()}
        )

    def __sub__(self, other) -> "BallPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BallPolynomial":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "BallPolynomial":
        rhs = self._coerce(other)
        product: dict = {}
        for alpha, a_val in self.coefficients.items():
            for beta, b_val in rhs.coefficients.items():
                key = tuple(x + y for x, y in zip(alpha, beta))
                product[key] = product.get(key, 0.0 + 0.0j) + a_val * b_val
        return BallPolynomial(self.dim, product)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "BallPolynomial":
        if isinstance(other, (int, float, complex)) and not isinstance(other, bool):
            if other == 0:
                raise InvalidParameterError("division of a polynomial by zero")
            return self * (1.0 / complex(other))
        raise InvalidParameterError("polynomials can only be divided by scalars")

    def __pow__(self, exponent) -> "BallPolynomial":
        if not isinstance(exponent, int) or isinstance(exponent, bool) or exponent < 0:
            raise InvalidParameterError(
                f"polynomial powers must be non-negative integers, got {exponent!r}"
            )
        out = BallPolynomial.constant(self.dim, 1.0)
        for _ in range(exponent):
            out = out * self
        return out

    # -- evaluation -----------------------------------------------------------

    def evaluate(self, values: Union[BallPoint, Sequence[complex]]) -> complex:
        """Value of the polynomial at a point (a unit-ball point or a plain
        sequence of ``dim`` complex coordinates)."""
        coords = values.omega if isinstance(values, BallPoint) else values
        vec = [complex(v) for v in coords]
        if len(vec) != self.dim:
            raise InvalidParameterError(
                f"point has {len(vec)} coordinates, polynomial expects {self.dim}"
            )
        total = 0.0 + 0.0j
        for alpha, coeff in self.coefficients.items():
            term = coeff
            for base, power in zip(vec, alpha):
                if power:
                    term *= base**power
            total += term
        return total

    # -- rendering -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        pieces = []
        for alpha, coeff in sorted(
            self.coefficients.items(), key=lambda item: (sum(item[0]), item[0])
        ):
            factors = [
                f"z{j + 1}" if power == 1 else f"z{j + 1}^{power}"
                for j, power in enumerate(alpha)
                if power
            ]
            if coeff.imag == 0.0:
                scalar = format(coeff.real, "g")
            else:
                scalar = f"({coeff:g})"
            if not factors:
                pieces.append(scalar)
            elif scalar == "1":
                pieces.append("*".join(factors))
            elif scalar == "-1":
                pieces.append("-" + "*".join(factors))
            else:
                pieces.append("*".join([scalar] + factors))
        rendered = " + ".join(pieces)
        return rendered.replace("+ -", "- ")


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _eval_parse_node(node, env, dim):
    if isinstance(node, ast.Constant):
        if isinstance(node.value, (int, float, complex)) and not isinstance(
            node.value, bool
        ):
            return node.value
        raise InvalidParameterError(f"unsupported literal {node.value!r}")
    if isinstance(node, ast.Name):
        return env[node.id]
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
        inner = _eval_parse_node(node.operand, env, dim)
        return inner if isinstance(node.op, ast.UAdd) else -inner
    if isinstance(node, ast.BinOp):
        left = _eval_parse_node(node.left, env, dim)
        right = _eval_parse_node(node.right, env, dim)
        if isinstance(node.op, ast.Add):
            return _as_polynomial(left, dim) + right
        if isinstance(node.op, ast.Sub):
            return _as_polynomial(left, dim) - right
        if isinstance(node.op, ast.Mult):
            return _as_polynomial(left, dim) * right
        if isinstance(node.op, ast.Div):
            return _as_polynomial(left, dim) / right
        if isinstance(node.op, ast.Pow):
            if not isinstance(right, int):
                raise InvalidParameterError("exponents must be plain integers")
            base = left if isinstance(left, BallPolynomial) else _as_polynomial(left, dim)
            return base**right
    raise InvalidParameterError("unsupported expression element in polynomial text")


def _as_polynomial(value, dim) -> BallPolynomial:
    if isinstance(value, BallPolynomial):
        return value
    return BallPolynomial.constant(dim, value)


def parse_ball_polynomial(text: str, dim: int | None = None) -> BallPolynomial:
    """Parse a polynomial from text such as ``'z1*z2 + 0.5*z1^3'``.

    Coordinates are ``z1, z2, ...`` (1-based); ``^`` and ``**`` both denote
    powers; coefficients may be real, imaginary (``2j``) or parenthesized
    complex literals.  The dimension defaults to the largest coordinate index
    that appears (at least 1); passing ``dim`` embeds the polynomial in a
    higher-dimensional ball.
    """
    if not isinstance(text, str) or not text.strip():
        raise InvalidParameterError("polynomial text must be a nonempty string")
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise InvalidParameterError(f"could not parse polynomial text: {exc}") from exc
    indices = {}
    for node in ast.walk(tree):
        if isinstance(node, ast.Name):
            match = _VARIABLE_PATTERN.match(node.id)
            if match is None:
                raise InvalidParameterError(
                    f"unknown symbol {node.id!r}; coordinates are z1, z2, ..."
                )
            indices[node.id] = int(match.group(1))
    inferred = max(indices.values(), default=1)
    if dim is None:
        dim = inferred
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise InvalidParameterError(f"dimension must be a positive integer, got {dim!r}")
    if inferred > dim:
        raise InvalidParameterError(
            f"text uses coordinate z{inferred} but the dimension is {dim}"
        )
    env = {name: BallPolynomial.coordinate(dim, k) for name, k in indices.items()}
    result = _eval_parse_node(tree.body, env, dim)
    return _as_polynomial(result, dim)


# ---------------------------------------------------------------------------
# Operators
# ---------------------------------------------------------------------------


def radial_derivative(f: BallPolynomial) -> BallPolynomial:
    """The degree operator ``sum_j z_j d/dz_j``: multiplies each monomial by
    its total degree (annihilating constants)."""
    if not isinstance(f, BallPolynomial):
        raise InvalidParameterError("the radial derivative acts on ball polynomials")
    return BallPolynomial(
        f.dim, {alpha: sum(alpha) * value for alpha, value in f.coefficients.items()}
    )


def script_r(k: int, f: BallPolynomial) -> BallPolynomial:
    """The k-th member of the shifted radial ladder: the identity for
    ``k = 0``, then each step composes with (identity + radial/step).

    On a monomial of degree ``d`` the ladder is diagonal with eigenvalue
    ``prod_{j=1..k} (1 + d/j)``, which telescopes to the binomial value
    ``(k + d)! / (k! d!)``.
    """
    if not isinstance(f, BallPolynomial):
        raise InvalidParameterError("the radial ladder acts on ball polynomials")
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise InvalidParameterError(f"the ladder index must be a non-negative integer, got {k!r}")
    out = f
    for j in range(1, k + 1):
        out = out + radial_derivative(out) / j
    return out


# ---------------------------------------------------------------------------
# Coefficient norms
# ---------------------------------------------------------------------------


def _factorial_ratio_weight(alpha: MultiIndex) -> float:
    """``alpha! / |alpha|!`` through log-Gamma (stable for high degrees)."""
    total = sum(alpha)
    log_weight = sum(math.lgamma(a + 1) for a in alpha) - math.lgamma(total + 1)
    return math.exp(log_weight)


def da_norm_coeff_sq(f: BallPolynomial) -> float:
    """Squared coefficient norm of the Drury-Arveson space: each monomial
    coefficient enters with weight ``alpha!/|alpha|!``."""
    if not isinstance(f, BallPolynomial):
        raise InvalidParameterError("the coefficient norm acts on ball polynomials")
    return float(
        sum(
            _factorial_ratio_weight(alpha) * abs(value) ** 2
            for alpha, value in f.coefficients.items()
        )
    )


def dot_dirichlet_norm_coeff_sq(f: BallPolynomial) -> float:
    """Squared coefficient norm of the constants-removed ball Dirichlet
    space: weight ``|alpha| * alpha!/|alpha|!`` (constants count zero)."""
    if not isinstance(f, BallPolynomial):
        raise InvalidParameterError("the coefficient norm acts on ball polynomials")
    return float(
        sum(
            sum(alpha) * _factorial_ratio_weight(alpha) * abs(value) ** 2
            for alpha, value in f.coefficients.items()
        )
    )


# ---------------------------------------------------------------------------
# Integral norm
# ---------------------------------------------------------------------------


def sphere_monomial_moment(alpha: Iterable[int]) -> float:
    """Mean of ``|xi^alpha|^2`` over the unit sphere of ``C^d`` under the
    rotation-invariant probability measure, ``(d-1)! alpha! / (d-1+|alpha|)!``
    with ``d = len(alpha)``; distinct monomials average to zero by symmetry.
    """
    key = tuple(int(a) for a in alpha)
    if not key or any(a < 0 for a in key):
        raise InvalidParameterError(
            f"need a nonempty multi-index of non-negative integers, got {key!r}"
        )
    d = len(key)
    log_value = (
        math.lgamma(d)
        + sum(math.lgamma(a + 1) for a in key)
        - math.lgamma(d + sum(key))
    )
    return math.exp(log_value)


def da_norm_integral_sq(f: BallPolynomial, radial_order: int | None = None) -> float:
    """Squared Drury-Arveson norm through its volume-integral form: push the
    polynomial through the radial ladder at the boundary dimension, then
    integrate its squared modulus against ``(1 - |z|^2)^(n-1) |z|^(-2n)``
    over the ball of ``C^(n+1)``, scaled by ``n * n! / pi^(n+1)``.

    The angular integral is exact by sphere-moment orthogonality; the radial
    factor becomes ``(1/2) * integral of (1-u)^(n-1) u^d du`` on the unit
    interval after substituting ``u = |z|^2`` (which removes the
    ``|z|^(-2n)`` singularity analytically), and is evaluated by a Gauss rule
    adapted to the ``(1-u)^(n-1)`` endpoint weight.  ``radial_order``
    overrides the rule size (the default already integrates every degree that
    occurs exactly).
    """
    if not isinstance(f, BallPolynomial):
        raise InvalidParameterError("the integral norm acts on ball polynomials")
    n = f.dim - 1
    if n < 1:
        raise InvalidParameterError(
            "the integral norm needs a ball of complex dimension at least 2; "
            "the radial weight is not integrable in one variable"
        )
    ladder = script_r(n, f)
    degrees = sorted({sum(alpha) for alpha in ladder.coefficients})
    if not degrees:
        return 0.0
    order = radial_order if radial_order is not None else max(8, max(degrees) + 2)
    if not isinstance(order, int) or isinstance(order, bool) or order < 1:
        raise InvalidParameterError(
            f"the radial rule size must be a positive integer, got {order!r}"
        )
    # u = |z|^2, then v = 1 - u maps the radial factor to the unit interval
    # with endpoint weight v^(n-1) and polynomial integrand (1-v)^degree.
    nodes, weights = _gauss_jacobi_unit(float(n - 1), order)
    radial_by_degree = {
        d: 0.5 * float((weights * (1.0 - nodes) ** d).sum()) for d in degrees
    }
    total = 0.0
    for alpha, value in ladder.coefficients.items():
        total += (
            abs(value) ** 2
            * sphere_monomial_moment(alpha)
            * radial_by_degree[sum(alpha)]
        )
    return 2.0 * n * total
