"""Source models, pattern parsing, overlap machinery, and set validation."""

from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from penney.patterns import (
    EMPTY_WORD_PROBABILITY,
    Pattern,
    SourceModel,
    ValidationError,
    overlap_indicator,
    parse_pattern,
    pattern_probability,
    symbols_probability,
    validate_pattern_set,
)
from specgen import random_spec


class TestSourceModel:
    def test_fair_coin(self, fair):
        assert fair.symbols == ("H", "T")
        assert fair.probs == (F(1, 2), F(1, 2))

    def test_from_text_roundtrip(self):
        model = SourceModel.from_text("H:1/3,T:2/3")
        assert model.probability("H") == F(1, 3)
        assert model.text() == "H:1/3,T:2/3"

    def test_from_text_allows_spaces(self):
        model = SourceModel.from_text(" a:1/4 , b:3/4 ")
        assert model.symbols == ("a", "b")

    def test_probabilities_must_sum_to_one(self):
        with pytest.raises(ValidationError):
            SourceModel(("H", "T"), (F(1, 2), F(1, 3)))

    def test_zero_probability_rejected(self):
        with pytest.raises(ValidationError):
            SourceModel(("H", "T"), (F(1), F(0)))

    def test_needs_two_symbols(self):
        with pytest.raises(ValidationError):
            SourceModel(("H",), (F(1),))

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValidationError):
            SourceModel(("H", "H"), (F(1, 2), F(1, 2)))

    def test_prefix_labels_rejected(self):
        with pytest.raises(ValidationError):
            SourceModel(("A", "AB"), (F(1, 2), F(1, 2)))

    def test_float_probabilities_rejected(self):
        with pytest.raises(ValidationError):
            SourceModel(("H", "T"), (0.5, 0.5))

    def test_bad_format(self):
        with pytest.raises(ValidationError):
            SourceModel.from_text("H=1/2,T=1/2")

    def test_three_symbol_alphabet(self):
        model = SourceModel(("a", "b", "c"), (F(1, 2), F(1, 3), F(1, 6)))
        assert model.probability("c") == F(1, 6)


class TestParsePattern:
    def test_basic(self, fair):
        assert parse_pattern("THH", fair).symbols == ("T", "H", "H")

    def test_empty_rejected(self, fair):
        with pytest.raises(ValidationError):
            parse_pattern("", fair)

    def test_unknown_symbol(self, fair):
        with pytest.raises(ValidationError, match="position 1"):
            parse_pattern("HXT", fair)

    def test_multicharacter_labels(self):
        model = SourceModel(("A", "BB"), (F(1, 2), F(1, 2)))
        assert parse_pattern("ABBA", model).symbols == ("A", "BB", "A")

    def test_pattern_requires_symbols(self):
        with pytest.raises(ValidationError):
            Pattern(())


class TestProbabilities:
    def test_fair_cube(self, fair):
        assert pattern_probability(parse_pattern("THH", fair), fair) == F(1, 8)

    def test_general_bias(self):
        p = F(1, 3)
        model = SourceModel(("H", "T"), (p, 1 - p))
        assert pattern_probability(parse_pattern("THH", model), model) == (1 - p) * p * p

    def test_empty_word_convention(self, fair):
        assert EMPTY_WORD_PROBABILITY == 1
        assert symbols_probability((), fair) == 1

    def test_multiplicative_under_concatenation(self):
        rng = random.Random(9)
        model = SourceModel(("H", "T"), (F(1, 3), F(2, 3)))
        for _ in range(50):
            left = tuple(rng.choice("HT") for _ in range(rng.randint(1, 6)))
            right = tuple(rng.choice("HT") for _ in range(rng.randint(1, 6)))
            assert symbols_probability(left + right, model) == symbols_probability(
                left, model
            ) * symbols_probability(right, model)


class TestOverlapIndicator:
    def test_showcase_overlaps(self, fair):
        thh = parse_pattern("THH", fair)
        hth = parse_pattern("HTH", fair)
        assert overlap_indicator(thh, hth, 2)  # TH == TH
        assert not overlap_indicator(thh, hth, 1)  # T != H

    def test_full_self_overlap(self, fair):
        for text in ("H", "HT", "THH", "HHTH"):
            a = parse_pattern(text, fair)
            assert overlap_indicator(a, a, a.length)

    def test_out_of_range(self, fair):
        a = parse_pattern("TH", fair)
        with pytest.raises(ValueError):
            overlap_indicator(a, a, 0)
        with pytest.raises(ValueError):
            overlap_indicator(a, a, 3)

    def test_validated_sets_have_no_full_cross_overlap(self):
        # a full prefix/suffix match of the shorter pattern would make it a
        # substring of the longer one, which validation forbids
        rng = random.Random(31)
        for _ in range(50):
            spec = random_spec(rng)
            for i, a in enumerate(spec.patterns):
                for j, b in enumerate(spec.patterns):
                    if i != j and a.length <= b.length:
                        assert not overlap_indicator(a, b, a.length)


class TestValidatePatternSet:
    def test_showcase_valid(self, example_spec):
        assert example_spec.player_count == 3

    def test_substring_rejected(self, fair):
        with pytest.raises(ValidationError, match="pattern 1 .* inside pattern 2"):
            validate_pattern_set(
                [parse_pattern("HH", fair), parse_pattern("HHT", fair)], fair
            )

    def test_duplicates_rejected(self, fair):
        with pytest.raises(ValidationError, match="duplicates"):
            validate_pattern_set(
                [parse_pattern("HH", fair), parse_pattern("HH", fair)], fair
            )

    def test_wrong_alphabet_rejected(self, fair):
        other = SourceModel(("a", "b"), (F(1, 2), F(1, 2)))
        with pytest.raises(ValidationError, match="outside the alphabet"):
            validate_pattern_set([parse_pattern("ab", other)], fair)

    def test_needs_a_pattern(self, fair):
        with pytest.raises(ValidationError):
            validate_pattern_set([], fair)

    def test_single_pattern_ok(self, fair):
        spec = validate_pattern_set([parse_pattern("H", fair)], fair)
        assert spec.player_count == 1
