"""Command-line front end: load a presentation matrix or ideal from JSON, run
a degree or colength computation, emit an auditable text or JSON report.

Exit codes: 0 on success, 1 on input errors, 2 when a required colength is not
finite (or a codimension check fails), with diagnostics on stdout either way.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .errors import (
    AllTrialsNotFiniteError,
    NotFiniteError,
    SymdetError,
)
from .matrices import IdealSpec, SymPolyMatrix, sym_matrix_from_json
from .polar import (
    GenericityOptions,
    check_codim,
    mixed_polar_degree,
    polar_degree_hypersurface,
    polar_is_empty,
    total_polar_degree_corank2,
)
from .poly_core import DEFAULT_PRIME, QQ, Field, PrimeField
from .standard_basis import (
    DEFAULT_DEGREE_CAP,
    DEFAULT_STEP_CAP,
    colength_local,
)

SEED_ENV_VAR = "SYMDET_SEED"


@dataclass
class JobConfig:
    """A fully resolved CLI invocation."""

    command: str
    input_path: str
    field_mode: str = "Q"
    prime: int = DEFAULT_PRIME
    trials: int = 3
    seed: int = 0
    output: str = "text"
    degree_cap: int = DEFAULT_DEGREE_CAP
    step_cap: int = DEFAULT_STEP_CAP
    witness: bool = False
    i: int | None = None
    j: int | None = None
    corank: int | None = None
    r: int | None = None
    l: int | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("--trials must be at least 1")
        if self.step_cap <= 0 or self.degree_cap < 2:
            raise ValueError("caps must be positive (--degree-cap at least 2)")
        if self.field_mode == "Fp":
            PrimeField(self.prime)  # validates primality

    @property
    def field(self) -> Field:
        return PrimeField(self.prime) if self.field_mode == "Fp" else QQ

    def options(self) -> GenericityOptions:
        return GenericityOptions(
            trials=self.trials,
            seed=self.seed,
            step_cap=self.step_cap,
            degree_cap=self.degree_cap,
            include_witness=self.witness,
        )


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {env!r}") from exc
    return 0


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise SymdetError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SymdetError(f"{path} is not valid JSON: {exc}") from exc


def load_matrix(path: str, field: Field = QQ) -> SymPolyMatrix:
    """Load and validate a presentation matrix from its JSON file."""
    return sym_matrix_from_json(_read_json(path), field)


def load_ideal(path: str, field: Field = QQ) -> IdealSpec:
    return IdealSpec.from_json(_read_json(path), field)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def _emit(config: JobConfig, payload: dict, lines: list[str]) -> None:
    if config.field_mode == "Fp":
        payload = dict(payload)
        payload["field"] = f"F{config.prime}"
        payload["probabilistic"] = True
        lines = lines + [f"field: F{config.prime} (probabilistic; authoritative runs use Q)"]
    if config.output == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _mixed_lines(report) -> list[str]:
    lines = [
        f"mixed polar (i={report.i}, j={report.j}) for n={report.n}, q={report.q}",
        f"case: {report.case.value}",
    ]
    for entry in report.per_level:
        sign = "+" if entry.sign > 0 else "-"
        lines.append(f"  l={entry.level}  colength {entry.colength}  sign {sign}")
    lines.append(f"degree: {report.degree}")
    lines.append(f"trial degrees: {report.trial_degrees} (seed {report.seed})")
    if report.disagreement:
        lines.append(f"WARNING: finite trials disagreed: {report.disagreement}")
    if report.note:
        lines.append(f"note: {report.note}")
    return lines


def _total_lines(report) -> list[str]:
    lines = [f"polar-curve degree (corank 2), n={report.n}, q={report.q}, d={report.d}"]
    for term in report.binomial_terms:
        lines.append(
            f"  C({report.d + 2},{term['i']}) * deg(i={term['i']}, j={term['j']})"
            f" = {term['coeff']} * {term['degree']}"
        )
    lines.append(f"pre-halving sum: {report.pre_halving_sum}")
    lines.append(f"degree: {report.degree}")
    return lines


def _hypersurface_lines(report) -> list[str]:
    lines = [f"polar-curve degree (corank 1), n={report.n}, q={report.q}"]
    if report.colength is not None:
        lines.append(f"kernel-locus colength: {report.colength}")
        lines.append(f"factor: {report.factor} = 2^(q-1)")
    if report.note:
        lines.append(f"note: {report.note}")
    lines.append(f"degree: {report.degree}")
    return lines


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _run_mixed(config: JobConfig) -> int:
    matrix = load_matrix(config.input_path, config.field)
    report = mixed_polar_degree(matrix, config.i, config.j, config.options())
    _emit(config, report.to_json(), _mixed_lines(report))
    return 0


def _run_polar_degree(config: JobConfig) -> int:
    matrix = load_matrix(config.input_path, config.field)
    if config.corank == 2:
        report = total_polar_degree_corank2(matrix, config.options())
        _emit(config, report.to_json(), _total_lines(report))
    else:
        report = polar_degree_hypersurface(matrix, config.options())
        _emit(config, report.to_json(), _hypersurface_lines(report))
    return 0


def _run_colength(config: JobConfig) -> int:
    ideal = load_ideal(config.input_path, config.field)
    result = colength_local(ideal, config.step_cap)
    payload = result.to_json()
    payload["label"] = ideal.label
    lines = [f"ideal: {ideal.label or config.input_path}"]
    if result.is_finite:
        lines.append(f"colength: {result.value}")
        lines.append(f"standard monomials: {payload['witness']}")
    else:
        lines.append("colength: not finite (positive-dimensional at the origin)")
    _emit(config, payload, lines)
    return 0 if result.is_finite else 2


def _run_check_codim(config: JobConfig) -> int:
    matrix = load_matrix(config.input_path, config.field)
    report = check_codim(matrix, config.r, config.options())
    verdict = "PASS" if report.passed else "FAIL"
    lines = [
        f"rank bound r={config.r} on a {matrix.n}x{matrix.n} presentation in {matrix.num_vars} variables",
        f"expected codim {report.expected}, sampled codim {report.sampled}, {verdict}",
    ]
    payload = report.to_json()
    payload["verdict"] = verdict
    _emit(config, payload, lines)
    return 0 if report.passed else 2


def _run_is_empty(config: JobConfig) -> int:
    matrix = load_matrix(config.input_path, config.field)
    empty = polar_is_empty(matrix.n, config.r, config.l)
    payload = {
        "n": matrix.n,
        "r": config.r,
        "l": config.l,
        "empty": empty,
        "bound": config.r * (config.r + 1) // 2 - 1,
    }
    lines = [
        f"polar variety of dimension {config.l} for the rank <= {config.r} locus: "
        + ("empty" if empty else "not forced empty"),
        f"emptiness holds for dimensions <= {payload['bound']}",
    ]
    _emit(config, payload, lines)
    return 0


_RUNNERS = {
    "mixed-polar": _run_mixed,
    "polar-degree": _run_polar_degree,
    "colength": _run_colength,
    "check-codim": _run_check_codim,
    "is-empty": _run_is_empty,
}


def run(config: JobConfig) -> int:
    """Execute a resolved job; returns the process exit code."""
    try:
        return _RUNNERS[config.command](config)
    except (NotFiniteError, AllTrialsNotFiniteError) as exc:
        print(f"not finite: {exc}")
        for line in getattr(exc, "diagnostics", []):
            print(f"  {line}")
        return 2
    except (SymdetError, ValueError) as exc:
        print(f"error: {exc}")
        return 1


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=["Q", "Fp"], default="Q")
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    common.add_argument("--trials", type=int, default=3)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)
    common.add_argument("--step-cap", type=int, default=DEFAULT_STEP_CAP)
    common.add_argument("--output", choices=["text", "json"], default="text")
    common.add_argument("--witness", action="store_true")
    common.add_argument("input", help="path to the JSON input file")

    parser = argparse.ArgumentParser(
        prog="symdet",
        description="Polar-curve degrees of symmetric determinantal singularities, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mixed-polar", parents=[common], help="degree of one mixed polar")
    p.add_argument("-i", type=int, required=True)
    p.add_argument("-j", type=int, required=True)

    p = sub.add_parser("polar-degree", parents=[common], help="total polar-curve degree")
    p.add_argument("--corank", type=int, choices=[1, 2], required=True)

    sub.add_parser("colength", parents=[common], help="local colength of an ideal")

    p = sub.add_parser("check-codim", parents=[common], help="sampled vs expected codimension")
    p.add_argument("--r", type=int, required=True)

    p = sub.add_parser("is-empty", parents=[common], help="forced emptiness of a polar variety")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--l", type=int, required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = JobConfig(
            command=args.command,
            input_path=args.input,
            field_mode=args.field,
            prime=args.prime,
            trials=args.trials,
            seed=_resolve_seed(args.seed),
            output=args.output,
            degree_cap=args.degree_cap,
            step_cap=args.step_cap,
            witness=args.witness,
            i=getattr(args, "i", None),
            j=getattr(args, "j", None),
            corank=getattr(args, "corank", None),
            r=getattr(args, "r", None),
            l=getattr(args, "l", None),
        )
    except ValueError as exc:
        print(f"error: {exc}")
        return 1
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
