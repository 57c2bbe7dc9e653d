"""Weierstrass data for the rescaled Hessian of a quantic Hamiltonian.

Along every Hamilton curve of an order-N quantic U, the rescaled Hessian

    Phi = -[N(N-2)]^2 H

satisfies Phi'^2 = 4 Phi^3 - g2 Phi - g3 with

    g2 = [N^2 (N-2)^2 U]^2 S,      g3 = [N^2 (N-2)^2 U]^3 T,

and Phi' = -[N(N-2)]^3 G.  This module builds those four covariant
polynomials, asserts the identity exactly at construction, classifies when
the equation is proper (g2, g3 constant along the curve) and what kind of
solution Phi then is, and provides a truncated Laurent series for the
Weierstrass P-function as a purely numeric cross-check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    BinaryQuantic,
    HomogeneousPoly,
    RationalLike,
    as_rational,
    evaluate,
    mul,
    poly_pow,
    scale,
)
from .covariants import (
    InternalConsistencyError,
    covariant_g,
    covariant_s,
    covariant_t,
    grad_s,
    grad_t,
    hessian,
)


@dataclass(frozen=True)
class WeierstrassData:
    """Covariant polynomials entering the Weierstrass equation for Phi."""

    order: int
    phi: HomogeneousPoly       # -[N(N-2)]^2 H, degree 2N-4
    phi_dot: HomogeneousPoly   # -[N(N-2)]^3 G, degree 3N-6
    g2poly: HomogeneousPoly    # [N^2(N-2)^2]^2 U^2 S, degree 4N-8
    g3poly: HomogeneousPoly    # [N^2(N-2)^2]^3 U^3 T, degree 6N-12


def build_weierstrass(u: BinaryQuantic) -> WeierstrassData:
    """Construct Phi, Phi', g2, g3 and assert the Weierstrass identity.

    The identity Phi'^2 - (4 Phi^3 - g2poly*Phi - g3poly) = 0 is the main
    syzygy in disguise, so a nonzero residual here is an engine bug.
    """
    n = u.order
    if n < 5:
        raise ValueError(f"Weierstrass data requires N >= 5, got N = {n}")
    m = n * (n - 2)
    x = u.expand()
    h = hessian(u)
    g = covariant_g(u, h)
    s = covariant_s(u)
    t = covariant_t(u)
    phi = scale(h, -(m ** 2))
    phi_dot = scale(g, -(m ** 3))
    g2poly = scale(mul(poly_pow(x, 2), s), m ** 4)
    g3poly = scale(mul(poly_pow(x, 3), t), m ** 6)
    residual = (
        mul(phi_dot, phi_dot)
        - scale(poly_pow(phi, 3), 4)
        + mul(g2poly, phi)
        + g3poly
    )
    if not residual.is_zero:
        raise InternalConsistencyError("Weierstrass identity residual is nonzero")
    return WeierstrassData(n, phi, phi_dot, g2poly, g3poly)


def pointwise_residual(
    w: WeierstrassData, p: RationalLike, q: RationalLike
) -> Fraction:
    """Phi'^2 - 4 Phi^3 + g2*Phi + g3 at a rational point; always exactly 0."""
    phi = evaluate(w.phi, p, q)
    phi_dot = evaluate(w.phi_dot, p, q)
    g2 = evaluate(w.g2poly, p, q)
    g3 = evaluate(w.g3poly, p, q)
    return phi_dot ** 2 - 4 * phi ** 3 + g2 * phi + g3


def discriminant(g2: Fraction, g3: Fraction) -> Fraction:
    """Delta = g2^3 - 27 g3^2."""
    return g2 ** 3 - 27 * g3 ** 2


class SConstancy(enum.Enum):
    IDENTICALLY_ZERO = "identically_zero"
    CONSTANT_NONZERO = "constant_nonzero"
    NONCONSTANT = "nonconstant"


class Category(enum.Enum):
    U_ZERO_INVERSE_SQUARE = "u_zero_inverse_square"
    PROPER_ELEMENTARY = "proper_elementary"  # proper with Delta = 0
    PROPER_WP = "proper_wp"                  # proper with Delta != 0
    IMPROPER = "improper"


@dataclass(frozen=True)
class Classification:
    """Symbol-level classification of the Weierstrass equation on one curve."""

    u_value: Fraction
    s_constant: SConstancy
    proper: bool
    g2: Fraction | None
    g3: Fraction | None
    delta: Fraction | None
    category: Category
    lame_parameter: Fraction

    def to_json_dict(self) -> dict:
        from .algebra import rational_str

        def opt(r):
            return rational_str(r) if r is not None else None

        return {
            "category": self.category.value,
            "u_value": rational_str(self.u_value),
            "s_constant": self.s_constant.value,
            "proper": self.proper,
            "g2": opt(self.g2),
            "g3": opt(self.g3),
            "delta": opt(self.delta),
            "lame_parameter": rational_str(self.lame_parameter),
        }


def classify(
    u: BinaryQuantic, start: tuple[RationalLike, RationalLike]
) -> Classification:
    """Decide, at the symbol level, what the equation does on the curve from start.

    Decision order:
      1. U(start) = 0: g2 = g3 = 0 on the curve and the nonzero solutions are
         inverse squares.
      2. (U,S) and (U,T) both identically zero: proper along every curve; g2,
         g3 are the constants fixed by the start point, Delta sorts elementary
         from genuinely elliptic.  If G is not the zero polynomial (Phi
         nonconstant), the gradient syzygy forces S itself to vanish, which is
         asserted.
      3. Otherwise: improper at the symbol level; pointwise vanishing along
         one particular curve is a numerical-monitoring question, not decided
         here.
    """
    n = u.order
    if n < 5:
        raise ValueError(f"classify requires N >= 5, got N = {n}")
    p0 = as_rational(start[0])
    q0 = as_rational(start[1])
    x = u.expand()
    u0 = evaluate(x, p0, q0)
    s = covariant_s(u)
    lame = Fraction(1, n - 2)

    s_value = evaluate(s, p0, q0)
    ds = grad_s(u, s)
    dt = grad_t(u)
    if s.is_zero:
        s_kind = SConstancy.IDENTICALLY_ZERO
    elif ds.is_zero:
        s_kind = (
            SConstancy.CONSTANT_NONZERO if s_value != 0
            else SConstancy.IDENTICALLY_ZERO
        )
    else:
        s_kind = SConstancy.NONCONSTANT

    if u0 == 0:
        return Classification(
            u_value=u0,
            s_constant=s_kind,
            proper=True,
            g2=Fraction(0),
            g3=Fraction(0),
            delta=Fraction(0),
            category=Category.U_ZERO_INVERSE_SQUARE,
            lame_parameter=lame,
        )

    if ds.is_zero and dt.is_zero:
        m = n * (n - 2)
        t_value = evaluate(covariant_t(u), p0, q0)
        g2 = (m ** 2 * u0) ** 2 * s_value
        g3 = (m ** 2 * u0) ** 3 * t_value
        g = covariant_g(u)
        if not g.is_zero and not s.is_zero:
            # gradient syzygy: (N-4)(U,H)S = 0 when (U,S) = (U,T) = 0
            raise InternalConsistencyError(
                "proper equation with nonconstant Phi must have S = 0"
            )
        delta = discriminant(g2, g3)
        category = Category.PROPER_WP if delta != 0 else Category.PROPER_ELEMENTARY
        return Classification(
            u_value=u0,
            s_constant=s_kind,
            proper=True,
            g2=g2,
            g3=g3,
            delta=delta,
            category=category,
            lame_parameter=lame,
        )

    return Classification(
        u_value=u0,
        s_constant=s_kind,
        proper=False,
        g2=None,
        g3=None,
        delta=None,
        category=Category.IMPROPER,
        lame_parameter=lame,
    )


# Laurent coefficients are kept through z^14 (c_2..c_8); the admissible |z|
# makes the first omitted term, c_9 z^16, below 1e-12 relative to z^-2.
_WP_TERMS = 8
_WP_REL_TOL = 1e-12


def _wp_laurent_coeffs(g2: float, g3: float, kmax: int) -> list[float]:
    """c_k for P(z) = z^-2 + sum_{k>=2} c_k z^(2k-2), via the standard recursion."""
    c = [0.0] * (kmax + 1)
    if kmax >= 2:
        c[2] = g2 / 20.0
    if kmax >= 3:
        c[3] = g3 / 28.0
    for k in range(4, kmax + 1):
        acc = sum(c[m] * c[k - m] for m in range(2, k - 1))
        c[k] = 3.0 * acc / ((2 * k + 1) * (k - 3))
    return c


def wp_radius(g2: float, g3: float) -> float:
    """Largest |z| at which the series truncation stays within tolerance."""
    c = _wp_laurent_coeffs(g2, g3, _WP_TERMS + 1)
    c_next = abs(c[_WP_TERMS + 1])
    if c_next == 0.0:
        return float("inf")
    # require |c_9| |z|^16 < tol * |z|^-2
    return (_WP_REL_TOL / c_next) ** (1.0 / (2 * _WP_TERMS + 2))


def wp_series(g2: float, g3: float, z: float) -> float:
    """Truncated-Laurent Weierstrass P(z; g2, g3); numeric cross-check only."""
    if z == 0.0:
        raise ValueError("wp_series undefined at z = 0")
    if abs(z) > wp_radius(g2, g3):
        raise ValueError(
            f"|z| = {abs(z)} exceeds truncation radius {wp_radius(g2, g3)}"
        )
    c = _wp_laurent_coeffs(g2, g3, _WP_TERMS)
    total = 1.0 / (z * z)
    for k in range(2, _WP_TERMS + 1):
        total += c[k] * z ** (2 * k - 2)
    return total


def wp_series_deriv(g2: float, g3: float, z: float) -> float:
    """Term-wise derivative of the truncated series."""
    if z == 0.0:
        raise ValueError("wp_series_deriv undefined at z = 0")
    if abs(z) > wp_radius(g2, g3):
        raise ValueError(
            f"|z| = {abs(z)} exceeds truncation radius {wp_radius(g2, g3)}"
        )
    c = _wp_laurent_coeffs(g2, g3, _WP_TERMS)
    total = -2.0 / (z * z * z)
    for k in range(2, _WP_TERMS + 1):
        total += (2 * k - 2) * c[k] * z ** (2 * k - 3)
    return total
