"""Exact univariate polynomial and rational-function algebra over the rationals.

Everything here is arbitrary precision and exact: coefficients are
`fractions.Fraction`, arithmetic never rounds, and equality is decidable.
Polynomials are dense coefficient tuples in a single formal variable (written
``s`` throughout), which is all the game solver needs: degrees stay bounded by
the combined pattern length, so sparse storage would buy nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction

Scalar = Union[Fraction, int]


class SingularAtOriginError(ZeroDivisionError):
    """Series expansion requested for a ratio whose denominator vanishes at 0."""


def _coerce(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Polynomial:
    """Dense univariate polynomial; ``coeffs[k]`` is the coefficient of s**k.

    Trailing zeros are trimmed on construction, so the zero polynomial is the
    empty tuple and its degree is -inf (never a stored zero coefficient).
    """

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Scalar] = ()) -> None:
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @staticmethod
    def constant(value: Scalar) -> "Polynomial":
        return Polynomial((value,))

    @staticmethod
    def monomial(exponent: int, coefficient: Scalar = 1) -> "Polynomial":
        """coefficient * s**exponent"""
        if exponent < 0:
            raise ValueError("exponent must be nonnegative")
        return Polynomial((0,) * exponent + (coefficient,))

    @property
    def degree(self) -> "int | float":
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def evaluate(self, at: Scalar) -> Fraction:
        """Exact Horner evaluation."""
        point = _coerce(at)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def __add__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if isinstance(other, (Fraction, int)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        merged = list(a)
        for i, c in enumerate(b):
            merged[i] += c
        return Polynomial(merged)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if isinstance(other, (Fraction, int)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "Polynomial":
        return Polynomial.constant(other) - self

    def __mul__(self, other: "Polynomial | Scalar") -> "Polynomial":
        if isinstance(other, (Fraction, int)):
            return Polynomial(c * other for c in self.coeffs)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial((1,))
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other: "Polynomial") -> "tuple[Polynomial, Polynomial]":
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Polynomial(), self
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        span = len(other.coeffs)
        quot = [Fraction(0)] * (len(rem) - span + 1)
        for i in range(len(quot) - 1, -1, -1):
            c = rem[i + span - 1] / lead
            if c:
                quot[i] = c
                for j, oc in enumerate(other.coeffs):
                    rem[i + j] -= c * oc
        return Polynomial(quot), Polynomial(rem[: span - 1])

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient when the division is exact; raises otherwise."""
        quotient, remainder = divmod(self, other)
        if not remainder.is_zero():
            raise ArithmeticError(f"({self}) is not divisible by ({other})")
        return quotient

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
                continue
            var = "s" if k == 1 else f"s^{k}"
            if c == 1:
                terms.append(var)
            elif c == -1:
                terms.append(f"-{var}")
            else:
                terms.append(f"{c}*{var}")
        return " + ".join(terms).replace("+ -", "- ")


ZERO = Polynomial()
ONE = Polynomial((1,))
S = Polynomial((0, 1))  # the formal variable


def _as_polynomial(value: "Polynomial | Scalar") -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    return Polynomial.constant(value)


@dataclass(frozen=True)
class RationalFunction:
    """Exact ratio of two polynomials.

    Representations are never reduced by polynomial GCDs; evaluation, series
    extraction, and derivatives are exact regardless, and `equivalent` compares
    two ratios by cross multiplication.
    """

    numer: Polynomial
    denom: Polynomial

    def __init__(self, numer: "Polynomial | Scalar", denom: "Polynomial | Scalar" = ONE) -> None:
        top = _as_polynomial(numer)
        bottom = _as_polynomial(denom)
        if bottom.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        object.__setattr__(self, "numer", top)
        object.__setattr__(self, "denom", bottom)

    def evaluate(self, at: Scalar) -> Fraction:
        value = self.denom.evaluate(at)
        if value == 0:
            raise ZeroDivisionError(f"denominator vanishes at s={_coerce(at)}")
        return self.numer.evaluate(at) / value

    def limit(self, at: Scalar) -> Fraction:
        """Value at a point, cancelling any common (s - at) factors first.

        Raises ZeroDivisionError for a genuine pole.
        """
        point = _coerce(at)
        top, bottom = self.numer, self.denom
        while bottom.evaluate(point) == 0:
            if top.evaluate(point) != 0:
                raise ZeroDivisionError(f"pole at s={point}")
            factor = Polynomial((-point, 1))
            top = top.exact_div(factor)
            bottom = bottom.exact_div(factor)
        return top.evaluate(point) / bottom.evaluate(point)

    def derivative(self) -> "RationalFunction":
        n, d = self.numer, self.denom
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def series(self, n: int) -> list[Fraction]:
        """First n+1 Taylor coefficients at 0, by the exact division recurrence.

        c_k = (numer_k - sum_{j>=1} denom_j * c_{k-j}) / denom_0.
        """
        if n < 0:
            raise ValueError("series length must be nonnegative")
        d0 = self.denom.coefficient(0)
        if d0 == 0:
            raise SingularAtOriginError("denominator vanishes at the origin")
        dcs = self.denom.coeffs
        out: list[Fraction] = []
        for k in range(n + 1):
            acc = self.numer.coefficient(k)
            for j in range(1, min(k, len(dcs) - 1) + 1):
                acc -= dcs[j] * out[k - j]
            out.append(acc / d0)
        return out

    def equivalent(self, other: "RationalFunction") -> bool:
        return self.numer * other.denom == other.numer * self.denom

    def _binary(self, other, op):
        if isinstance(other, (Polynomial, Fraction, int)):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return op(other)

    def __add__(self, other):
        def add(rhs: RationalFunction) -> RationalFunction:
            if self.denom == rhs.denom:
                return RationalFunction(self.numer + rhs.numer, self.denom)
            return RationalFunction(
                self.numer * rhs.denom + rhs.numer * self.denom, self.denom * rhs.denom
            )

        return self._binary(other, add)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.numer, self.denom)

    def __sub__(self, other):
        return self._binary(other, lambda rhs: self + (-rhs))

    def __rsub__(self, other):
        return self._binary(other, lambda rhs: rhs + (-self))

    def __mul__(self, other):
        return self._binary(
            other, lambda rhs: RationalFunction(self.numer * rhs.numer, self.denom * rhs.denom)
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        def div(rhs: RationalFunction) -> RationalFunction:
            if rhs.numer.is_zero():
                raise ZeroDivisionError("division by the zero rational function")
            return RationalFunction(self.numer * rhs.denom, self.denom * rhs.numer)

        return self._binary(other, div)

    def __str__(self) -> str:
        return f"({self.numer}) / ({self.denom})"


@dataclass(frozen=True)
class PolyMatrix:
    """Square matrix of polynomials with exact determinants.

    Column indices on the public surface are 1-based, matching the usual
    mathematical convention for Cramer-style column replacement.
    """

    rows: tuple[tuple[Polynomial, ...], ...]

    def __init__(self, rows: Iterable[Iterable["Polynomial | Scalar"]]) -> None:
        grid = tuple(tuple(_as_polynomial(entry) for entry in row) for row in rows)
        if not grid or any(len(row) != len(grid) for row in grid):
            raise ValueError("matrix must be square and nonempty")
        object.__setattr__(self, "rows", grid)

    @staticmethod
    def identity(n: int) -> "PolyMatrix":
        return PolyMatrix([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def replace_column(self, column: int, values: Sequence["Polynomial | Scalar"]) -> "PolyMatrix":
        """New matrix with 1-based `column` replaced by `values`; self unchanged."""
        n = self.dimension
        if not 1 <= column <= n:
            raise IndexError(f"column index {column} out of range 1..{n}")
        if len(values) != n:
            raise ValueError(f"replacement column must have {n} entries")
        j = column - 1
        fresh = tuple(_as_polynomial(v) for v in values)
        return PolyMatrix(
            tuple(row[:j] + (fresh[i],) + row[j + 1 :] for i, row in enumerate(self.rows))
        )

    def evaluate(self, at: Scalar) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(tuple(entry.evaluate(at) for entry in row) for row in self.rows)

    def determinant(self) -> Polynomial:
        """Exact determinant by fraction-free (Bareiss) elimination.

        Every interior division is by the previous pivot and is exact in the
        polynomial ring, so intermediates never leave Polynomial.
        """
        n = self.dimension
        work = [list(row) for row in self.rows]
        sign = 1
        prev = ONE
        for k in range(n - 1):
            if work[k][k].is_zero():
                for r in range(k + 1, n):
                    if not work[r][k].is_zero():
                        work[k], work[r] = work[r], work[k]
                        sign = -sign
                        break
                else:
                    return ZERO
            pivot = work[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    work[i][j] = (work[i][j] * pivot - work[i][k] * work[k][j]).exact_div(prev)
                work[i][k] = ZERO
            prev = pivot
        result = work[n - 1][n - 1]
        return -result if sign < 0 else result

    def determinant_cofactor(self) -> Polynomial:
        """Reference determinant by first-row cofactor expansion.

        Exponential in the dimension; kept as an independent check on the
        Bareiss route and for tiny matrices.
        """
        n = self.dimension
        if n == 1:
            return self.rows[0][0]
        total = ZERO
        for j, entry in enumerate(self.rows[0]):
            if entry.is_zero():
                continue
            minor = PolyMatrix(tuple(row[:j] + row[j + 1 :] for row in self.rows[1:]))
            term = entry * minor.determinant_cofactor()
            total = total + (-term if j % 2 else term)
        return total
