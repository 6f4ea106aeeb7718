"""Hand-checked expectations for the THH / HTH / HHT showcase game.

Every grid here was derived by hand from the overlap definitions (and the
win-probability closed forms re-derived through the leading-number cofactor
formula), so the suites can compare the library against data it did not
produce.
"""

from __future__ import annotations

from fractions import Fraction

from penney.polyalg import Polynomial

EXAMPLE_PATTERNS = ("THH", "HTH", "HHT")


def correlation_grid(p: Fraction) -> list[list[Polynomial]]:
    """Expected overlap-polynomial matrix for the showcase patterns."""
    q = 1 - p
    return [
        [Polynomial([1]), Polynomial([0, p]), Polynomial([0, 0, p * p])],
        [Polynomial([0, 0, p * q]), Polynomial([1, 0, p * q]), Polynomial([0, p])],
        [Polynomial([0, q, p * q]), Polynomial([0, 0, p * q]), Polynomial([1])],
    ]


def conway_grid(p: Fraction) -> list[list[Fraction]]:
    """Expected leading-number matrix: entry (i, j) is patterns[j] * patterns[i]."""
    q = 1 - p
    return [
        [1 / (p * p * q), 1 / (p * q), 1 / q],
        [1 / p, (p * q + 1) / (p * p * q), 1 / (p * q)],
        [(p + 1) / (p * p), 1 / p, 1 / (p * p * q)],
    ]


def closed_form_probs(p: Fraction) -> tuple[Fraction, Fraction, Fraction]:
    """Win probabilities for the showcase game as closed forms in the bias."""
    q = 1 - p
    return (q * (1 + p * q) / (1 + q), q / (1 + q), p * (1 - q * q) / (1 + q))


def det3(grid) -> Fraction:
    """Explicit 3x3 cofactor determinant, independent of the library routines."""
    (a, b, c), (d, e, f), (g, h, i) = grid
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
