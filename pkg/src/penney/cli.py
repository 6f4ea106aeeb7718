"""Command-line front end: solve, simulate, best-response.

Machine output (--json) carries every number as an exact rational string
("5/12"), never a float, so nothing is lost on the wire; decimal columns are
advisory renderings at --digits precision, rounded half-even.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from . import __version__
from .oracle import simulate
from .patterns import SourceModel, ValidationError, parse_pattern, validate_pattern_set
from .solver import response_table, solve_game

SCHEMA_VERSION = 1


def format_rational(value: Fraction) -> str:
    return str(value)


def format_decimal(value: Fraction, digits: int) -> str:
    """Fixed-point decimal rendering of an exact rational, round-half-even."""
    if digits < 0:
        raise ValueError("digits must be nonnegative")
    negative = value < 0
    num, den = abs(value).numerator, abs(value).denominator
    scaled, rem = divmod(num * 10**digits, den)
    double = 2 * rem
    if double > den or (double == den and scaled % 2 == 1):
        scaled += 1
    sign = "-" if negative and scaled else ""
    if digits == 0:
        return f"{sign}{scaled}"
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def sqrt_decimal(value: Fraction, digits: int) -> str:
    """Decimal rendering (truncated at the last digit) of sqrt of a rational."""
    if value < 0:
        raise ValueError("square root of a negative value")
    num, den = value.numerator, value.denominator
    scaled = math.isqrt(num * den * 10 ** (2 * digits)) // den
    if digits == 0:
        return str(scaled)
    whole, frac = divmod(scaled, 10**digits)
    return f"{whole}.{frac:0{digits}d}"


def _parse_inputs(args) -> tuple[SourceModel, list]:
    model = SourceModel.from_text(args.alphabet)
    patterns = [parse_pattern(token.strip(), model) for token in args.patterns.split(",")]
    return model, patterns


def _alphabet_block(model: SourceModel) -> dict:
    return {
        "symbols": list(model.symbols),
        "probabilities": [format_rational(p) for p in model.probs],
    }


def _header(command: str, model: SourceModel) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": command,
        "alphabet": _alphabet_block(model),
    }


def cmd_solve(args) -> dict:
    model, patterns = _parse_inputs(args)
    spec = validate_pattern_set(patterns, model)
    solution = solve_game(spec)
    digits = args.digits

    players = []
    for i, (pattern, prob, pgf) in enumerate(
        zip(spec.patterns, solution.win_probs, solution.pgfs), start=1
    ):
        conditional = pgf.derivative().limit(1) / prob
        players.append(
            {
                "player": i,
                "pattern": str(pattern),
                "win_probability": format_rational(prob),
                "win_probability_decimal": format_decimal(prob, digits),
                "conditional_expected_duration": format_rational(conditional),
                "conditional_expected_duration_decimal": format_decimal(conditional, digits),
            }
        )

    doc = _header("solve", model)
    doc["patterns"] = [str(p) for p in spec.patterns]
    doc["players"] = players
    doc["expected_duration"] = format_rational(solution.expected_duration)
    doc["expected_duration_decimal"] = format_decimal(solution.expected_duration, digits)
    if args.series is not None:
        doc["series"] = {
            "horizon": args.series,
            "players": [
                {
                    "player": i,
                    "pattern": str(pattern),
                    "coefficients": [format_rational(c) for c in pgf.series(args.series)],
                }
                for i, (pattern, pgf) in enumerate(zip(spec.patterns, solution.pgfs), start=1)
            ],
        }
    return doc


def cmd_simulate(args) -> dict:
    model, patterns = _parse_inputs(args)
    spec = validate_pattern_set(patterns, model)
    solution = solve_game(spec)
    report = simulate(spec, args.trials, args.seed)
    digits = args.digits

    players = []
    for i, (pattern, exact, empirical, win_count) in enumerate(
        zip(spec.patterns, solution.win_probs, report.empirical_probs, report.wins), start=1
    ):
        error = abs(empirical - exact)
        sigma_sq = exact * (1 - exact) / report.trials
        players.append(
            {
                "player": i,
                "pattern": str(pattern),
                "wins": win_count,
                "exact_probability": format_rational(exact),
                "exact_probability_decimal": format_decimal(exact, digits),
                "empirical_probability": format_rational(empirical),
                "empirical_probability_decimal": format_decimal(empirical, digits),
                "absolute_error": format_rational(error),
                "absolute_error_decimal": format_decimal(error, digits),
                "three_sigma_decimal": sqrt_decimal(9 * sigma_sq, digits),
                "within_three_sigma": error * error <= 9 * sigma_sq,
            }
        )

    doc = _header("simulate", model)
    doc["patterns"] = [str(p) for p in spec.patterns]
    doc["trials"] = report.trials
    doc["seed"] = report.seed
    doc["players"] = players
    doc["total_tosses"] = report.total_tosses
    doc["mean_tosses"] = format_rational(report.mean_tosses)
    doc["mean_tosses_decimal"] = format_decimal(report.mean_tosses, digits)
    doc["expected_duration"] = format_rational(solution.expected_duration)
    doc["expected_duration_decimal"] = format_decimal(solution.expected_duration, digits)
    return doc


def cmd_best_response(args) -> dict:
    model = SourceModel.from_text(args.alphabet)
    opponents = [parse_pattern(token.strip(), model) for token in args.opponents.split(",")]
    table = response_table(opponents, args.length, model)
    if not table:
        raise ValidationError(
            f"no admissible pattern of length {args.length} against the given opponents"
        )
    digits = args.digits
    best_pattern, best_prob = table[0]

    doc = _header("best-response", model)
    doc["opponents"] = [str(p) for p in opponents]
    doc["length"] = args.length
    doc["best"] = {
        "pattern": str(best_pattern),
        "win_probability": format_rational(best_prob),
        "win_probability_decimal": format_decimal(best_prob, digits),
    }
    if args.verbose:
        doc["candidates"] = [
            {
                "pattern": str(pattern),
                "win_probability": format_rational(prob),
                "win_probability_decimal": format_decimal(prob, digits),
            }
            for pattern, prob in table
        ]
    return doc


def _table_rows(rows: list[list[str]]) -> str:
    widths = [max(len(row[c]) for row in rows) for c in range(len(rows[0]))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows)


def render_table(doc: dict) -> str:
    lines = [
        f"alphabet: {', '.join(f'{s}:{p}' for s, p in zip(doc['alphabet']['symbols'], doc['alphabet']['probabilities']))}"
    ]
    command = doc["command"]
    if command == "solve":
        rows = [["player", "pattern", "P(win)", "decimal", "E[length|win]", "decimal"]]
        for p in doc["players"]:
            rows.append(
                [
                    str(p["player"]),
                    p["pattern"],
                    p["win_probability"],
                    p["win_probability_decimal"],
                    p["conditional_expected_duration"],
                    p["conditional_expected_duration_decimal"],
                ]
            )
        lines.append(_table_rows(rows))
        lines.append(
            f"expected game length: {doc['expected_duration']} ({doc['expected_duration_decimal']})"
        )
        if "series" in doc:
            horizon = doc["series"]["horizon"]
            rows = [["toss"] + [p["pattern"] for p in doc["series"]["players"]]]
            for k in range(horizon + 1):
                rows.append(
                    [str(k)] + [p["coefficients"][k] for p in doc["series"]["players"]]
                )
            lines.append(f"win distribution through toss {horizon}:")
            lines.append(_table_rows(rows))
    elif command == "simulate":
        lines.append(f"trials: {doc['trials']}  seed: {doc['seed']}")
        rows = [["player", "pattern", "exact", "empirical", "|error|", "3-sigma", "ok"]]
        for p in doc["players"]:
            rows.append(
                [
                    str(p["player"]),
                    p["pattern"],
                    p["exact_probability_decimal"],
                    p["empirical_probability_decimal"],
                    p["absolute_error_decimal"],
                    p["three_sigma_decimal"],
                    "yes" if p["within_three_sigma"] else "NO",
                ]
            )
        lines.append(_table_rows(rows))
        lines.append(
            f"mean tosses: {doc['mean_tosses_decimal']}  exact expectation: {doc['expected_duration_decimal']}"
        )
    else:
        lines.append(f"opponents: {', '.join(doc['opponents'])}  length: {doc['length']}")
        best = doc["best"]
        lines.append(
            f"best response: {best['pattern']} with win probability "
            f"{best['win_probability']} ({best['win_probability_decimal']})"
        )
        if "candidates" in doc:
            rows = [["pattern", "P(win)", "decimal"]]
            for c in doc["candidates"]:
                rows.append([c["pattern"], c["win_probability"], c["win_probability_decimal"]])
            lines.append(_table_rows(rows))
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="penney",
        description="Exact win probabilities and waiting times for pattern-race games.",
    )
    parser.add_argument("--version", action="version", version=f"penney {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--alphabet",
        default="H:1/2,T:1/2",
        help="symbol:probability pairs, exact rationals (default: fair coin)",
    )
    common.add_argument("--digits", type=int, default=6, help="decimal digits to display")
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")

    solve = sub.add_parser("solve", parents=[common], help="exact win probabilities and durations")
    solve.add_argument("--patterns", required=True, help="comma-separated patterns, one per player")
    solve.add_argument(
        "--series", type=int, default=None, metavar="N", help="also print P(win at toss k), k<=N"
    )
    solve.set_defaults(handler=cmd_solve)

    sim = sub.add_parser("simulate", parents=[common], help="seeded Monte Carlo cross-check")
    sim.add_argument("--patterns", required=True, help="comma-separated patterns, one per player")
    sim.add_argument("--trials", type=int, default=100000, help="number of games to play")
    sim.add_argument("--seed", type=int, default=0, help="generator seed")
    sim.set_defaults(handler=cmd_simulate)

    best = sub.add_parser(
        "best-response", parents=[common], help="exhaustive best reply against fixed opponents"
    )
    best.add_argument("--opponents", required=True, help="comma-separated opponent patterns")
    best.add_argument("--length", type=int, required=True, help="length of the reply pattern")
    best.add_argument("--verbose", action="store_true", help="print the full ranked table")
    best.set_defaults(handler=cmd_best_response)
    return parser


def main(argv: "list[str] | None" = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.digits < 0:
        parser.error("--digits must be nonnegative")
    if getattr(args, "series", None) is not None and args.series < 0:
        parser.error("--series must be nonnegative")
    if getattr(args, "trials", None) is not None and args.trials < 1:
        parser.error("--trials must be at least 1")
    if getattr(args, "length", None) is not None and args.length < 1:
        parser.error("--length must be at least 1")
    try:
        doc = args.handler(args)
    except ValidationError as exc:
        print(f"penney: {exc}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"penney: internal error: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(doc, indent=2) if args.json else render_table(doc))
    return 0


def run() -> None:
    sys.exit(main())
