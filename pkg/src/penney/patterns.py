"""Alphabets with exact symbol probabilities, patterns, and overlap tests.

A game is a source model (finite alphabet, one positive rational probability
per symbol, summing to one) plus a substring-free set of patterns over that
alphabet. Substring-freeness is what makes the winner at the stopping time
unique, so it is enforced here as a hard validation error rather than left to
the solver to misbehave on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class ValidationError(ValueError):
    """A source model, pattern, or pattern set violates the game's hypotheses."""


# Convention for the zero-length pattern: an empty product of probabilities.
EMPTY_WORD_PROBABILITY = Fraction(1)


def _coerce_probability(value) -> Fraction:
    if isinstance(value, float):
        raise ValidationError(
            "symbol probabilities must be exact (Fraction, int, or string), not float"
        )
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ValidationError(f"cannot parse probability {value!r}: {exc}") from None


@dataclass(frozen=True)
class SourceModel:
    """Finite alphabet with one exact positive probability per symbol.

    Symbol labels may be multi-character; no label may be a prefix of another,
    which keeps pattern text unambiguous under longest-match tokenization.
    """

    symbols: tuple[str, ...]
    probs: tuple[Fraction, ...]

    def __init__(self, symbols: Iterable[str], probs: Iterable) -> None:
        labels = tuple(symbols)
        values = tuple(_coerce_probability(p) for p in probs)
        if len(labels) < 2:
            raise ValidationError("a source model needs at least two symbols")
        if len(labels) != len(values):
            raise ValidationError("one probability per symbol required")
        for label in labels:
            if not isinstance(label, str) or not label:
                raise ValidationError(f"symbol label must be a nonempty string: {label!r}")
            if any(ch in ":," or ch.isspace() for ch in label):
                raise ValidationError(f"symbol label may not contain ':', ',' or spaces: {label!r}")
        if len(set(labels)) != len(labels):
            raise ValidationError("symbol labels must be distinct")
        for a in labels:
            for b in labels:
                if a != b and b.startswith(a):
                    raise ValidationError(
                        f"ambiguous alphabet: {a!r} is a prefix of {b!r}"
                    )
        for label, p in zip(labels, values):
            if p <= 0:
                raise ValidationError(
                    f"probability of {label!r} must be positive (got {p}); "
                    "zero-probability symbols would make some patterns wait forever"
                )
        if sum(values) != 1:
            raise ValidationError(f"probabilities must sum to exactly 1 (got {sum(values)})")
        object.__setattr__(self, "symbols", labels)
        object.__setattr__(self, "probs", values)
        object.__setattr__(self, "_lookup", {s: i for i, s in enumerate(labels)})

    @classmethod
    def from_text(cls, text: str) -> "SourceModel":
        """Parse ``"H:1/2,T:1/2"``: comma-separated symbol:probability pairs, exact."""
        symbols, probs = [], []
        for chunk in text.split(","):
            part = chunk.strip()
            if part.count(":") != 1:
                raise ValidationError(f"expected SYMBOL:PROBABILITY, got {part!r}")
            label, value = part.split(":")
            symbols.append(label.strip())
            probs.append(value.strip())
        return cls(symbols, probs)

    @classmethod
    def fair_coin(cls) -> "SourceModel":
        return cls(("H", "T"), (Fraction(1, 2), Fraction(1, 2)))

    def index(self, symbol: str) -> int:
        lookup = getattr(self, "_lookup")
        if symbol not in lookup:
            raise ValidationError(f"symbol {symbol!r} is not in the alphabet")
        return lookup[symbol]

    def probability(self, symbol: str) -> Fraction:
        return self.probs[self.index(symbol)]

    def text(self) -> str:
        return ",".join(f"{s}:{p}" for s, p in zip(self.symbols, self.probs))


@dataclass(frozen=True)
class Pattern:
    """A nonempty string of alphabet symbols a player bets on appearing first."""

    symbols: tuple[str, ...]

    def __init__(self, symbols: Iterable[str]) -> None:
        syms = tuple(symbols)
        if not syms:
            raise ValidationError("a pattern must have at least one symbol")
        object.__setattr__(self, "symbols", syms)

    @property
    def length(self) -> int:
        return len(self.symbols)

    def __str__(self) -> str:
        return "".join(self.symbols)


def parse_pattern(text: str, model: SourceModel) -> Pattern:
    """Tokenize pattern text into alphabet symbols by longest match."""
    if not text:
        raise ValidationError("empty pattern")
    labels = sorted(model.symbols, key=len, reverse=True)
    out: list[str] = []
    i = 0
    while i < len(text):
        for label in labels:
            if text.startswith(label, i):
                out.append(label)
                i += len(label)
                break
        else:
            raise ValidationError(f"unrecognized symbol at position {i} in {text!r}")
    return Pattern(out)


def symbols_probability(symbols: Sequence[str], model: SourceModel) -> Fraction:
    """Probability of seeing the given symbols in a row; empty input gives 1."""
    return math.prod((model.probability(s) for s in symbols), start=EMPTY_WORD_PROBABILITY)


def pattern_probability(pattern: Pattern, model: SourceModel) -> Fraction:
    return symbols_probability(pattern.symbols, model)


def overlap_indicator(a: Pattern, b: Pattern, k: int) -> bool:
    """True iff the first k symbols of `a` equal the last k symbols of `b`."""
    limit = min(a.length, b.length)
    if not 1 <= k <= limit:
        raise ValueError(f"overlap length {k} out of range 1..{limit}")
    return a.symbols[:k] == b.symbols[-k:]


def _contains(haystack: tuple[str, ...], needle: tuple[str, ...]) -> bool:
    width = len(needle)
    return any(haystack[i : i + width] == needle for i in range(len(haystack) - width + 1))


@dataclass(frozen=True)
class GameSpec:
    """A validated game: source model plus distinct, substring-free patterns."""

    model: SourceModel
    patterns: tuple[Pattern, ...]

    def __init__(self, model: SourceModel, patterns: Iterable[Pattern]) -> None:
        pats = tuple(patterns)
        if not pats:
            raise ValidationError("at least one pattern required")
        alphabet = set(model.symbols)
        for idx, pattern in enumerate(pats, start=1):
            for symbol in pattern.symbols:
                if symbol not in alphabet:
                    raise ValidationError(
                        f"pattern {idx} ({pattern}) uses symbol {symbol!r} outside the alphabet"
                    )
        for i in range(len(pats)):
            for j in range(len(pats)):
                if i == j:
                    continue
                if pats[i].symbols == pats[j].symbols:
                    if i < j:
                        raise ValidationError(
                            f"patterns {i + 1} and {j + 1} are duplicates: {pats[i]}"
                        )
                    continue
                if _contains(pats[j].symbols, pats[i].symbols):
                    raise ValidationError(
                        f"pattern {i + 1} ({pats[i]}) occurs inside pattern {j + 1} "
                        f"({pats[j]}); substring-free sets required"
                    )
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "patterns", pats)

    @property
    def player_count(self) -> int:
        return len(self.patterns)


def validate_pattern_set(patterns: Iterable[Pattern], model: SourceModel) -> GameSpec:
    """Validate and freeze a pattern set; raises ValidationError naming offenders."""
    return GameSpec(model, tuple(patterns))
