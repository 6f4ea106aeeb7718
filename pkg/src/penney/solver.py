"""Win probabilities, per-player generating functions, and waiting times.

The machinery: every ordered pattern pair gets a correlation polynomial that
records where a prefix of one pattern can sit on a suffix of the other,
weighted by the probability of the symbols still needed. Arranging these into
an m-by-m matrix and applying Cramer's rule yields each player's probability
generating function

    g_i(s) = det M_i(s) / (sum_j det M_j(s) + (1 - s) * det M(s)),

where M(s) is the correlation matrix and M_j replaces column j by the
completion monomials P(A_i) * s^len(A_i). Win probabilities and the expected
game length come out of the same determinants evaluated through the Conway
leading numbers, which keeps everything a ratio of plain rationals with no
limit-taking at s = 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .patterns import (
    GameSpec,
    Pattern,
    SourceModel,
    ValidationError,
    overlap_indicator,
    pattern_probability,
    symbols_probability,
    validate_pattern_set,
)
from .polyalg import ONE, S, ZERO, PolyMatrix, Polynomial, RationalFunction


class DegenerateGameError(ArithmeticError):
    """A Conway-matrix denominator vanished; impossible for validated specs."""


def correlation_polynomial(a: Pattern, b: Pattern, model: SourceModel) -> Polynomial:
    """Overlap polynomial of `a` against `b`.

    The coefficient of s**(len(a)-k) is the probability of the last len(a)-k
    symbols of `a`, present exactly when the first k symbols of `a` equal the
    last k symbols of `b`. Its constant term is 1 iff a == b, and for a
    validated pattern set every off-diagonal polynomial vanishes at 0.
    """
    coeffs = [Fraction(0)] * a.length
    for k in range(1, min(a.length, b.length) + 1):
        if overlap_indicator(a, b, k):
            coeffs[a.length - k] = symbols_probability(a.symbols[k:], model)
    return Polynomial(coeffs)


def correlation_matrix(spec: GameSpec) -> PolyMatrix:
    """m-by-m matrix of correlation polynomials; the identity at s = 0."""
    return PolyMatrix(
        [
            [correlation_polynomial(a, b, spec.model) for b in spec.patterns]
            for a in spec.patterns
        ]
    )


def completion_monomials(spec: GameSpec) -> list[Polynomial]:
    """P(pattern) * s**len(pattern) per player: the weight of one straight run."""
    return [
        Polynomial.monomial(p.length, pattern_probability(p, spec.model))
        for p in spec.patterns
    ]


def _pgf_parts(spec: GameSpec) -> tuple[list[Polynomial], Polynomial, Polynomial]:
    """Numerators, correlation determinant, and the shared pgf denominator."""
    matrix = correlation_matrix(spec)
    column = completion_monomials(spec)
    numerators = [
        matrix.replace_column(j, column).determinant()
        for j in range(1, spec.player_count + 1)
    ]
    det_corr = matrix.determinant()
    denominator = sum(numerators, ZERO) + (ONE - S) * det_corr
    return numerators, det_corr, denominator


def winning_pgf(spec: GameSpec, player: int) -> RationalFunction:
    """Generating function of P(the 1-based `player` wins exactly at toss n)."""
    if not 1 <= player <= spec.player_count:
        raise ValueError(f"player index {player} out of range 1..{spec.player_count}")
    numerators, _, denominator = _pgf_parts(spec)
    return RationalFunction(numerators[player - 1], denominator)


def conway_number(a: Pattern, b: Pattern, model: SourceModel) -> Fraction:
    """Leading number a*b: reciprocal prefix probabilities over overlaps.

    Sums 1/P(first k symbols of b) over every k where that prefix of b equals
    the suffix of a; equivalently the correlation polynomial of b against a
    evaluated at 1 and divided by P(b). Both routes are computed and checked.
    """
    total = Fraction(0)
    for k in range(1, min(a.length, b.length) + 1):
        if overlap_indicator(b, a, k):
            total += 1 / symbols_probability(b.symbols[:k], model)
    via_polynomial = correlation_polynomial(b, a, model).evaluate(1) / pattern_probability(
        b, model
    )
    assert total == via_polynomial
    return total


def conway_matrix(spec: GameSpec) -> tuple[tuple[Fraction, ...], ...]:
    """Grid with entry (i, j) = patterns[j] * patterns[i] (leading numbers)."""
    return tuple(
        tuple(conway_number(b, a, spec.model) for b in spec.patterns)
        for a in spec.patterns
    )


def _constant_determinant(grid: Sequence[Sequence[Fraction]]) -> Fraction:
    matrix = PolyMatrix([[Polynomial.constant(v) for v in row] for row in grid])
    return matrix.determinant().coefficient(0)


def _conway_parts(
    spec: GameSpec,
) -> tuple[tuple[tuple[Fraction, ...], ...], list[Fraction], Fraction]:
    grid = conway_matrix(spec)
    column_dets = []
    for j in range(spec.player_count):
        replaced = [row[:j] + (Fraction(1),) + row[j + 1 :] for row in grid]
        column_dets.append(_constant_determinant(replaced))
    total = sum(column_dets)
    if total == 0:
        raise DegenerateGameError(
            "sum of Conway column determinants is zero; the game hypotheses are violated"
        )
    return grid, column_dets, total


def winning_probabilities(spec: GameSpec) -> tuple[Fraction, ...]:
    """Each player's exact probability of seeing their pattern first."""
    _, column_dets, total = _conway_parts(spec)
    return tuple(d / total for d in column_dets)


def two_player_odds(first: Pattern, second: Pattern, model: SourceModel) -> Fraction:
    """Odds P(first wins) : P(second wins) by the classic leading-number ratio."""
    spec = validate_pattern_set([first, second], model)
    denominator = conway_number(first, first, model) - conway_number(first, second, model)
    if denominator == 0:
        raise DegenerateGameError(f"degenerate pair: {first} vs {second}")
    ratio = (
        conway_number(second, second, model) - conway_number(second, first, model)
    ) / denominator
    probs = winning_probabilities(spec)
    assert ratio == probs[0] / probs[1]
    return ratio


def expected_duration(spec: GameSpec) -> Fraction:
    """Exact expected number of tosses until some pattern completes."""
    grid, _, total = _conway_parts(spec)
    return _constant_determinant(grid) / total


def single_pattern_expected_time(pattern: Pattern, model: SourceModel) -> Fraction:
    """Expected tosses until `pattern` first occurs (Solov'ev's sum).

    Adds 1/P(first k symbols) over every self-overlap of length k; agrees with
    conway_number(pattern, pattern, model) and with the chain oracle.
    """
    return sum(
        1 / symbols_probability(pattern.symbols[:k], model)
        for k in range(1, pattern.length + 1)
        if overlap_indicator(pattern, pattern, k)
    )


def game_distribution(spec: GameSpec, horizon: int) -> list[list[Fraction]]:
    """Per player: exact P(that player wins at toss k) for 0 <= k <= horizon."""
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    numerators, _, denominator = _pgf_parts(spec)
    return [RationalFunction(n, denominator).series(horizon) for n in numerators]


def conditional_expected_duration(spec: GameSpec, player: int) -> Fraction:
    """E[game length | the 1-based `player` wins], exact.

    Differentiates the player's (defective) pgf and evaluates at 1, cancelling
    any shared (1 - s) factors by exact polynomial division first.
    """
    if not 1 <= player <= spec.player_count:
        raise ValueError(f"player index {player} out of range 1..{spec.player_count}")
    probability = winning_probabilities(spec)[player - 1]
    if probability == 0:
        raise DegenerateGameError(f"player {player} has zero winning probability")
    pgf = winning_pgf(spec, player)
    return pgf.derivative().limit(1) / probability


@dataclass(frozen=True)
class GameSolution:
    """All solved outputs of one game."""

    spec: GameSpec
    pgfs: tuple[RationalFunction, ...]
    win_probs: tuple[Fraction, ...]
    expected_duration: Fraction
    tail_gf: RationalFunction


def solve_game(spec: GameSpec) -> GameSolution:
    """Solve a validated game once: pgfs, win probabilities, durations, tail gf.

    The tail generating function (coefficients P(game still running after n
    tosses)) comes out as det M(s) over the shared pgf denominator; its value
    at 1 is the expected duration.
    """
    numerators, det_corr, denominator = _pgf_parts(spec)
    pgfs = tuple(RationalFunction(n, denominator) for n in numerators)
    grid, column_dets, total = _conway_parts(spec)
    win_probs = tuple(d / total for d in column_dets)
    duration = _constant_determinant(grid) / total
    tail_gf = RationalFunction(det_corr, denominator)
    at_one = denominator.evaluate(1)
    assert at_one != 0
    assert all(w == n.evaluate(1) / at_one for w, n in zip(win_probs, numerators))
    return GameSolution(spec, pgfs, win_probs, duration, tail_gf)


def response_table(
    opponents: Iterable[Pattern], length: int, model: SourceModel
) -> list[tuple[Pattern, Fraction]]:
    """All admissible patterns of `length`, ranked against the opponents.

    Sorted by win probability descending; ties keep alphabet-lexicographic
    order (the enumeration order), so the ranking is deterministic.
    """
    if length < 1:
        raise ValidationError("response length must be at least 1")
    fixed = list(opponents)
    if fixed:
        validate_pattern_set(fixed, model)
    ranked: list[tuple[Pattern, Fraction]] = []
    for symbols in itertools.product(model.symbols, repeat=length):
        candidate = Pattern(symbols)
        try:
            spec = validate_pattern_set([*fixed, candidate], model)
        except ValidationError:
            continue
        ranked.append((candidate, winning_probabilities(spec)[-1]))
    ranked.sort(key=lambda entry: entry[1], reverse=True)
    return ranked


def best_response(
    opponents: Iterable[Pattern], length: int, model: SourceModel
) -> tuple[Pattern, Fraction]:
    """The admissible pattern of `length` maximizing the new player's win chance."""
    table = response_table(list(opponents), length, model)
    if not table:
        raise ValidationError(
            f"no admissible pattern of length {length} against the given opponents"
        )
    return table[0]
