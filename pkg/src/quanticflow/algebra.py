"""Exact arithmetic for dense homogeneous bivariate polynomials.

Coefficients are `fractions.Fraction` throughout, so every identity check in
the rest of the package is an exact zero test, never a small-residual test.

A homogeneous polynomial of degree d in (p, q) is stored densely as the
coefficient sequence c_0..c_d of

    X = sum_k c_k * p^(d-k) * q^k.

The zero polynomial keeps a nominal degree so that `add` stays total within a
degree class; equality treats all-zero polynomials of any nominal degree as
equal.

A binary quantic of order N is the same polynomial written in the classical
binomial convention (a_0, ..., a_N): the raw monomial coefficient of
p^(N-n) q^n is binom(N, n) * a_n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or "num"/"num/den" string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rational_str(r: Fraction) -> str:
    """Serialize a Fraction as "num" or "num/den" (denominator omitted when 1)."""
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


@dataclass(frozen=True)
class HomogeneousPoly:
    """Dense homogeneous bivariate polynomial with exact rational coefficients."""

    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError(f"degree must be non-negative, got {self.degree}")
        if len(self.coeffs) != self.degree + 1:
            raise ValueError(
                f"degree {self.degree} needs {self.degree + 1} coefficients, "
                f"got {len(self.coeffs)}"
            )

    @staticmethod
    def make(degree: int, coeffs: Iterable[RationalLike]) -> "HomogeneousPoly":
        return HomogeneousPoly(degree, tuple(as_rational(c) for c in coeffs))

    @staticmethod
    def zero(degree: int = 0) -> "HomogeneousPoly":
        return HomogeneousPoly(degree, (Fraction(0),) * (degree + 1))

    @staticmethod
    def monomial(degree: int, q_power: int, coeff: RationalLike = 1) -> "HomogeneousPoly":
        """coeff * p^(degree - q_power) * q^q_power."""
        if not 0 <= q_power <= degree:
            raise ValueError(f"q_power {q_power} out of range for degree {degree}")
        cs = [Fraction(0)] * (degree + 1)
        cs[q_power] = as_rational(coeff)
        return HomogeneousPoly(degree, tuple(cs))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomogeneousPoly):
            return NotImplemented
        if self.degree == other.degree:
            return self.coeffs == other.coeffs
        # all-zero polynomials compare equal regardless of nominal degree
        return self.is_zero and other.is_zero

    def __hash__(self):
        if self.is_zero:
            return hash(())
        return hash((self.degree, self.coeffs))

    def __add__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        return add(self, other)

    def __sub__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        return add(self, scale(other, Fraction(-1)))

    def __mul__(self, other: "HomogeneousPoly") -> "HomogeneousPoly":
        return mul(self, other)

    def __neg__(self) -> "HomogeneousPoly":
        return scale(self, Fraction(-1))

    def __repr__(self):
        terms = []
        d = self.degree
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "*".join(
                ([f"p^{d - k}"] if d - k else []) + ([f"q^{k}"] if k else [])
            ) or "1"
            terms.append(f"{rational_str(c)}*{mono}")
        body = " + ".join(terms) if terms else "0"
        return f"HomogeneousPoly(deg={d}: {body})"


def add(x: HomogeneousPoly, y: HomogeneousPoly) -> HomogeneousPoly:
    """Exact sum; both operands must live in the same degree class."""
    if x.degree != y.degree:
        if x.is_zero:
            return y
        if y.is_zero:
            return x
        raise ValueError(f"degree mismatch in add: {x.degree} vs {y.degree}")
    return HomogeneousPoly(x.degree, tuple(a + b for a, b in zip(x.coeffs, y.coeffs)))


def scale(x: HomogeneousPoly, r: RationalLike) -> HomogeneousPoly:
    r = as_rational(r)
    return HomogeneousPoly(x.degree, tuple(r * c for c in x.coeffs))


def mul(x: HomogeneousPoly, y: HomogeneousPoly) -> HomogeneousPoly:
    d = x.degree + y.degree
    out = [Fraction(0)] * (d + 1)
    for i, a in enumerate(x.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(y.coeffs):
            if b != 0:
                out[i + j] += a * b
    return HomogeneousPoly(d, tuple(out))


def poly_pow(x: HomogeneousPoly, k: int) -> HomogeneousPoly:
    if k < 0:
        raise ValueError("negative power")
    result = HomogeneousPoly.make(0, [1])
    base = x
    while k:
        if k & 1:
            result = mul(result, base)
        base = mul(base, base) if k > 1 else base
        k >>= 1
    return result


def partial_p(x: HomogeneousPoly) -> HomogeneousPoly:
    """Formal d/dp; degree-0 input maps to the zero polynomial of degree 0."""
    d = x.degree
    if d == 0:
        return HomogeneousPoly.zero(0)
    return HomogeneousPoly(d - 1, tuple((d - k) * x.coeffs[k] for k in range(d)))


def partial_q(x: HomogeneousPoly) -> HomogeneousPoly:
    d = x.degree
    if d == 0:
        return HomogeneousPoly.zero(0)
    return HomogeneousPoly(d - 1, tuple((k + 1) * x.coeffs[k + 1] for k in range(d)))


def jacobian(x: HomogeneousPoly, y: HomogeneousPoly) -> HomogeneousPoly:
    """(X, Y) = X_p Y_q - X_q Y_p.  Antisymmetric; degree deg X + deg Y - 2."""
    if x.degree == 0 or y.degree == 0:
        return HomogeneousPoly.zero(max(x.degree + y.degree - 2, 0))
    return mul(partial_p(x), partial_q(y)) - mul(partial_q(x), partial_p(y))


def poisson(w: HomogeneousPoly, z: HomogeneousPoly) -> HomogeneousPoly:
    """{W, Z} = W_q Z_p - W_p Z_q, i.e. the Jacobian (Z, W).

    With a Hamiltonian U, {V, U} = (U, V) is the derivative of V along the
    U-flow.
    """
    return jacobian(z, w)


def evaluate(x: HomogeneousPoly, p: RationalLike, q: RationalLike) -> Fraction:
    """Exact value of X at a rational point."""
    p = as_rational(p)
    q = as_rational(q)
    total = Fraction(0)
    for k, c in enumerate(x.coeffs):
        if c != 0:
            total += c * p ** (x.degree - k) * q ** k
    return total


def evaluate_float(x: HomogeneousPoly, p: float, q: float) -> float:
    """Floating-point value of X, for flow monitoring."""
    return eval_float_coeffs(float_coeffs(x), x.degree, p, q)


def float_coeffs(x: HomogeneousPoly) -> tuple[float, ...]:
    return tuple(float(c) for c in x.coeffs)


def eval_float_coeffs(coeffs: Sequence[float], degree: int, p: float, q: float) -> float:
    total = 0.0
    for k, c in enumerate(coeffs):
        if c != 0.0:
            total += c * p ** (degree - k) * q ** k
    return total


def source(x: HomogeneousPoly) -> Fraction:
    """The source (leader): coefficient of p^degree."""
    return x.coeffs[0]


@dataclass(frozen=True)
class BinaryQuantic:
    """Order-N binary form in the binomial convention (a_0, ..., a_N)."""

    order: int
    a: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        if len(self.a) != self.order + 1:
            raise ValueError(
                f"order {self.order} needs {self.order + 1} coefficients, "
                f"got {len(self.a)}"
            )

    @staticmethod
    def make(order: int, a: Iterable[RationalLike]) -> "BinaryQuantic":
        return BinaryQuantic(order, tuple(as_rational(c) for c in a))

    def expand(self) -> HomogeneousPoly:
        """Raw-coefficient polynomial: c_n = binom(N, n) * a_n."""
        n = self.order
        return HomogeneousPoly(
            n, tuple(comb(n, k) * self.a[k] for k in range(n + 1))
        )

    @staticmethod
    def contract(x: HomogeneousPoly) -> "BinaryQuantic":
        """Inverse of expand: a_n = c_n / binom(N, n)."""
        n = x.degree
        return BinaryQuantic(
            n, tuple(x.coeffs[k] / comb(n, k) for k in range(n + 1))
        )

    def to_json_dict(self) -> dict:
        return {
            "order": self.order,
            "coefficients": [rational_str(c) for c in self.a],
        }

    @staticmethod
    def from_json_dict(obj: dict) -> "BinaryQuantic":
        if not isinstance(obj, dict):
            raise ValueError("quantic JSON must be an object")
        try:
            order = obj["order"]
            coeffs = obj["coefficients"]
        except KeyError as exc:
            raise ValueError(f"quantic JSON missing key {exc}") from None
        if not isinstance(order, int):
            raise ValueError("quantic order must be an integer")
        if not isinstance(coeffs, list) or len(coeffs) != order + 1:
            raise ValueError(
                f"quantic of order {order} needs exactly {order + 1} coefficients"
            )
        try:
            a = tuple(as_rational(c) for c in coeffs)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ValueError(f"bad rational coefficient: {exc}") from None
        return BinaryQuantic(order, a)

    @staticmethod
    def load(path) -> "BinaryQuantic":
        with open(path) as fh:
            return BinaryQuantic.from_json_dict(json.load(fh))


def poly_json_dict(x: HomogeneousPoly) -> dict:
    return {
        "degree": x.degree,
        "coefficients": [rational_str(c) for c in x.coeffs],
    }
