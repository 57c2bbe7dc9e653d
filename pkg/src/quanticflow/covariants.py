"""Normalized covariants of a binary quantic and their syzygies.

For an order-N quantic U the engine computes:

    H  = (U_pp U_qq - U_pq^2) / (N^2 (N-1)^2)            degree 2N-4
    G  = (U, H) / (N (N-2))                              degree 3N-6
    S  = (AE - 4BD + 3C^2) / [N(N-1)(N-2)(N-3)]^2        degree 2N-8
    T  = (ACE + 2BCD - AD^2 - B^2E - C^3)
                         / [N(N-1)(N-2)(N-3)]^3          degree 3N-12
    dS = (U, S)                                          degree 3N-10
    dT = (U, T)                                          degree 4N-14

where A..E are the plain fourth partials of U (the coefficients of its
fourth emanant).  All normalizing divisions are checked coefficient by
coefficient: a remainder anywhere means the engine itself is broken, so it
raises InternalConsistencyError rather than rounding.

Four syzygies are exposed as residual polynomials, each of which must be
exactly zero:

    G^2 + 4H^3 + U^3 T - U^2 S H                  (main)
    2(N-2) (U,T) - N (H,S)                        (switch)
    l X (Y,Z) + m Y (Z,X) + n Z (X,Y)             (three quantics)
    (N-4)(U,H) S - (N-2)[(U,S) H - (U,T) U]       (gradient)

The main syzygy also holds for N = 4 (where S and T are the classical
quartic invariants), but the rest of the theory assumes N > 4; the quartic
case is gated behind an explicit flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    BinaryQuantic,
    HomogeneousPoly,
    jacobian,
    mul,
    poly_pow,
    scale,
    source,
)


class InternalConsistencyError(Exception):
    """A normalization that must divide exactly did not."""


def exact_divide(x: HomogeneousPoly, divisor: int) -> HomogeneousPoly:
    """Divide every coefficient by an integer, asserting exactness.

    Exactness means the quotient of each coefficient by the divisor is still
    the rational predicted by the normalization claim, i.e. the division
    introduces no new content.  For integer-coefficient input this reduces to
    plain divisibility, which is what the check enforces.
    """
    out = []
    for c in x.coeffs:
        if c.numerator % divisor != 0 and c.denominator == 1:
            raise InternalConsistencyError(
                f"coefficient {c} not divisible by {divisor}"
            )
        out.append(c / divisor)
    return HomogeneousPoly(x.degree, tuple(out))


def hessian(u: BinaryQuantic) -> HomogeneousPoly:
    """Normalized Hessian H of the quantic (degree 2N-4)."""
    n = u.order
    if n < 2:
        raise ValueError(f"hessian requires N >= 2, got N = {n}")
    from .algebra import partial_p, partial_q

    x = u.expand()
    upp = partial_p(partial_p(x))
    uqq = partial_q(partial_q(x))
    upq = partial_q(partial_p(x))
    det = mul(upp, uqq) - mul(upq, upq)
    return exact_divide(det, n * n * (n - 1) * (n - 1))


def covariant_g(u: BinaryQuantic, h: HomogeneousPoly | None = None) -> HomogeneousPoly:
    """Normalized Jacobian covariant G = (U, H) / (N (N-2)), degree 3N-6."""
    n = u.order
    if n < 3:
        raise ValueError(f"covariant G requires N >= 3, got N = {n}")
    if h is None:
        h = hessian(u)
    return exact_divide(jacobian(u.expand(), h), n * (n - 2))


def emanant4(u: BinaryQuantic):
    """Fourth-emanant coefficients (A, B, C, D, E): the fourth partials of U."""
    n = u.order
    if n < 4:
        raise ValueError(f"fourth emanant requires N >= 4, got N = {n}")
    from .algebra import partial_p, partial_q

    row = [u.expand()]
    for _ in range(4):
        row = [partial_p(row[0])] + [partial_q(x) for x in row]
    return tuple(row)  # (U_pppp, U_pppq, U_ppqq, U_pqqq, U_qqqq)


def covariant_s(u: BinaryQuantic) -> HomogeneousPoly:
    """Quadratic emanant invariant S, degree 2N-8."""
    n = u.order
    a, b, c, d, e = emanant4(u)
    k = n * (n - 1) * (n - 2) * (n - 3)
    raw = mul(a, e) - scale(mul(b, d), 4) + scale(mul(c, c), 3)
    return exact_divide(raw, k * k)


def covariant_t(u: BinaryQuantic) -> HomogeneousPoly:
    """Cubic emanant invariant T, degree 3N-12."""
    n = u.order
    a, b, c, d, e = emanant4(u)
    k = n * (n - 1) * (n - 2) * (n - 3)
    raw = (
        mul(mul(a, c), e)
        + scale(mul(mul(b, c), d), 2)
        - mul(a, mul(d, d))
        - mul(mul(b, b), e)
        - poly_pow(c, 3)
    )
    return exact_divide(raw, k * k * k)


def source_h(a) -> Fraction:
    return a[0] * a[2] - a[1] ** 2


def source_g(a) -> Fraction:
    return a[0] ** 2 * a[3] - 3 * a[0] * a[1] * a[2] + 2 * a[1] ** 3


def source_s(a) -> Fraction:
    return a[0] * a[4] - 4 * a[1] * a[3] + 3 * a[2] ** 2


def source_t(a) -> Fraction:
    return (
        a[0] * a[2] * a[4]
        + 2 * a[1] * a[2] * a[3]
        - a[0] * a[3] ** 2
        - a[1] ** 2 * a[4]
        - a[2] ** 3
    )


def source_ds_leading(a) -> Fraction:
    """S_0, the leading coefficient of (U,S) before the N(N-4) factor."""
    return (
        a[0] ** 2 * a[5]
        - 5 * a[0] * a[1] * a[4]
        + 2 * a[0] * a[2] * a[3]
        + 8 * a[1] ** 2 * a[3]
        - 6 * a[1] * a[2] ** 2
    )


def source_dt_leading(a) -> Fraction:
    """T_0, the leading coefficient of (U,T) before the N(N-4) factor."""
    return (
        a[0] ** 2 * a[2] * a[5]
        - a[0] ** 2 * a[3] * a[4]
        - a[0] * a[1] ** 2 * a[5]
        - 2 * a[0] * a[1] * a[2] * a[4]
        + 4 * a[0] * a[1] * a[3] ** 2
        - a[0] * a[2] ** 2 * a[3]
        + 3 * a[1] ** 3 * a[4]
        - 6 * a[1] ** 2 * a[2] * a[3]
        + 3 * a[1] * a[2] ** 3
    )


def grad_s(u: BinaryQuantic, s: HomogeneousPoly | None = None) -> HomogeneousPoly:
    """(U, S): the derivative of S along the U-flow, degree 3N-10.

    Postcondition (checked): source = N(N-4) * S_0(a).
    """
    n = u.order
    if n < 5:
        raise ValueError(f"(U,S) requires N >= 5, got N = {n}")
    if s is None:
        s = covariant_s(u)
    ds = jacobian(u.expand(), s)
    expected = n * (n - 4) * source_ds_leading(u.a)
    if source(ds) != expected:
        raise InternalConsistencyError(
            f"source of (U,S) is {source(ds)}, expected N(N-4)*S0 = {expected}"
        )
    return ds


def grad_t(u: BinaryQuantic, t: HomogeneousPoly | None = None) -> HomogeneousPoly:
    """(U, T): the derivative of T along the U-flow, degree 4N-14.

    Postcondition (checked): source = N(N-4) * T_0(a).
    """
    n = u.order
    if n < 5:
        raise ValueError(f"(U,T) requires N >= 5, got N = {n}")
    if t is None:
        t = covariant_t(u)
    dt = jacobian(u.expand(), t)
    expected = n * (n - 4) * source_dt_leading(u.a)
    if source(dt) != expected:
        raise InternalConsistencyError(
            f"source of (U,T) is {source(dt)}, expected N(N-4)*T0 = {expected}"
        )
    return dt


# Sign each covariant picks up under (p,q) -> (q,p) with the a-vector
# reversed; equals (-1)^weight of the covariant.
SWAP_SIGNS = {"H": 1, "G": -1, "S": 1, "T": 1, "dS": -1, "dT": -1}


@dataclass(frozen=True)
class CovariantSet:
    """The full covariant bundle of a quantic, with degrees asserted."""

    u: BinaryQuantic
    h: HomogeneousPoly
    g: HomogeneousPoly
    s: HomogeneousPoly
    t: HomogeneousPoly
    ds: HomogeneousPoly  # (U, S)
    dt: HomogeneousPoly  # (U, T)

    @staticmethod
    def compute(u: BinaryQuantic) -> "CovariantSet":
        n = u.order
        if n < 5:
            raise ValueError(f"full covariant set requires N >= 5, got N = {n}")
        h = hessian(u)
        g = covariant_g(u, h)
        s = covariant_s(u)
        t = covariant_t(u)
        ds = grad_s(u, s)
        dt = grad_t(u, t)
        expected = {
            "H": (h, 2 * n - 4),
            "G": (g, 3 * n - 6),
            "S": (s, 2 * n - 8),
            "T": (t, 3 * n - 12),
            "dS": (ds, 3 * n - 10),
            "dT": (dt, 4 * n - 14),
        }
        for name, (poly, deg) in expected.items():
            if poly.degree != deg:
                raise InternalConsistencyError(
                    f"{name} has degree {poly.degree}, expected {deg}"
                )
        return CovariantSet(u, h, g, s, t, ds, dt)

    def as_dict(self) -> dict[str, HomogeneousPoly]:
        return {
            "H": self.h,
            "G": self.g,
            "S": self.s,
            "T": self.t,
            "dS": self.ds,
            "dT": self.dt,
        }


def syzygy_main(u: BinaryQuantic, allow_quartic: bool = False) -> HomogeneousPoly:
    """Residual of G^2 + 4H^3 + U^3 T - U^2 S H; must be zero.

    N = 4 is a specialization outside the standing N > 4 assumption; pass
    allow_quartic=True to evaluate it anyway (experimental).
    """
    n = u.order
    if n < 5 and not (n == 4 and allow_quartic):
        raise ValueError(f"main syzygy requires N >= 5, got N = {n}")
    x = u.expand()
    h = hessian(u)
    g = covariant_g(u, h)
    s = covariant_s(u)
    t = covariant_t(u)
    return (
        mul(g, g)
        + scale(poly_pow(h, 3), 4)
        + mul(poly_pow(x, 3), t)
        - mul(mul(poly_pow(x, 2), s), h)
    )


def syzygy_switch(u: BinaryQuantic) -> HomogeneousPoly:
    """Residual of 2(N-2)(U,T) - N(H,S); must be zero."""
    n = u.order
    if n < 5:
        raise ValueError(f"switch syzygy requires N >= 5, got N = {n}")
    h = hessian(u)
    s = covariant_s(u)
    dt = grad_t(u)
    return scale(dt, 2 * (n - 2)) - scale(jacobian(h, s), n)


def syzygy_three(
    x: HomogeneousPoly, y: HomogeneousPoly, z: HomogeneousPoly
) -> HomogeneousPoly:
    """Residual of l X (Y,Z) + m Y (Z,X) + n Z (X,Y) for any three quantics."""
    lx = scale(mul(x, jacobian(y, z)), x.degree)
    my = scale(mul(y, jacobian(z, x)), y.degree)
    nz = scale(mul(z, jacobian(x, y)), z.degree)
    return lx + my + nz


def syzygy_gradient(u: BinaryQuantic) -> HomogeneousPoly:
    """Residual of (N-4)(U,H)S - (N-2)[(U,S)H - (U,T)U]; must be zero."""
    n = u.order
    if n < 5:
        raise ValueError(f"gradient syzygy requires N >= 5, got N = {n}")
    x = u.expand()
    h = hessian(u)
    s = covariant_s(u)
    t = covariant_t(u)
    ds = grad_s(u, s)
    dt = grad_t(u, t)
    lhs = scale(mul(jacobian(x, h), s), n - 4)
    rhs = scale(mul(ds, h) - mul(dt, x), n - 2)
    return lhs - rhs


def all_syzygy_residuals(u: BinaryQuantic) -> dict[str, HomogeneousPoly]:
    """The four residual polynomials for one quantic (N >= 5).

    The three-quantic syzygy is instantiated on (H, S, U), the same triple
    whose combination with the switch syzygy yields the gradient syzygy.
    """
    cs = CovariantSet.compute(u)
    return {
        "main": syzygy_main(u),
        "switch": syzygy_switch(u),
        "three": syzygy_three(cs.h, cs.s, u.expand()),
        "gradient": syzygy_gradient(u),
    }
