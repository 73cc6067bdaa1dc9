"""Command-line entry point: ``python -m app.cli <subcommand> ...``.

Payloads go to stdout (json, csv or pretty); logs and error messages go to
stderr. Exit codes: 0 ok, 1 failed verification, 2 invalid input, 3 resource
cap, 4 numeric failure. Every payload is checked against its pydantic response
model before it is printed; `schema <subcommand>` prints that model as JSON Schema.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from pydantic import BaseModel

from app.core.errors import InfProbError, InputValidationError
from app.core.json_response import dumps, fraction_text, to_jsonable
from app.models.functional import InfFunctional
from app.models.laurent import LaurentPoly
from app.models.words import ColorWord
from app.schemas.cumulants import CumulantResponse
from app.schemas.moments import EnumerationResponse, MomentPolyResponse
from app.schemas.runs import SimulationResponse, VerificationResponse
from app.schemas.transforms import DensityResponse, TransformResponse
from app.services.cumulants import check_inf_freeness, moments_to_cumulants
from app.services.genus import goe_moment_poly, wishart_limit_extraction, wishart_moment_poly
from app.services.measures import density_rows, mp_moment
from app.services.noncrossing import ENUMERATION_KINDS, count_diagrams, enumerate_diagrams
from app.services.sampling import ensemble_batcher, estimate_moment, infinitesimal_estimator
from app.services.transforms import ENSEMBLES, ensemble_transform, semicircle_moment
from app.services.verify import build_family, verify_non_freeness, verify_universal_rule, verify_wishart_freeness

logger = logging.getLogger("infprob")

FORMATS = ("json", "csv", "pretty")

RESPONSE_MODELS: dict[str, type[BaseModel]] = {
    "goe-moments": MomentPolyResponse,
    "wishart-moments": MomentPolyResponse,
    "enumerate": EnumerationResponse,
    "cumulants": CumulantResponse,
    "transform": TransformResponse,
    "density": DensityResponse,
    "simulate": SimulationResponse,
    "verify": VerificationResponse,
}


@dataclass
class RunConfig:
    subcommand: str
    params: dict[str, Any] = field(default_factory=dict)
    output_format: str = "json"
    verbose: bool = False


# -- argument parsing -------------------------------------------------------------------


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not a comma separated list of integers") from exc


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, dest="output_format", default=None, help="Output format (default: json).")
    p.add_argument("--json", action="store_const", const="json", dest="output_format", help="Shorthand for --format json.")
    p.add_argument("--csv", action="store_const", const="csv", dest="output_format", help="Shorthand for --format csv.")
    p.add_argument("--pretty", action="store_const", const="pretty", dest="output_format", help="Shorthand for --format pretty.")
    p.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="infprob", description="Exact infinitesimal free probability toolkit.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("goe-moments", help="E(tr Xⁿ) for the GOE as a polynomial in 1/N.")
    p.add_argument("--n", type=int, required=True)
    _add_output_flags(p)

    p = sub.add_parser("wishart-moments", help="Moment polynomial in M and N of a word in independent Wisharts.")
    p.add_argument("--word", required=True, help='Colors like "1,1,2" or letters like "XXY".')
    p.add_argument("--c", type=_rational, default=None, help="With c (and --cprime) also print the N⁰/N⁻¹ limits.")
    p.add_argument("--cprime", type=_rational, default=Fraction(0))
    _add_output_flags(p)

    p = sub.add_parser("enumerate", help="Enumerate or count a diagram class.")
    p.add_argument("kind", choices=ENUMERATION_KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", action="store_true", help="Print the count only.")
    _add_output_flags(p)

    p = sub.add_parser("cumulants", help="Infinitesimal cumulants of a functional read from JSON.")
    p.add_argument("--moments-file", required=True, help='JSON {"values": {"x x": [φ, φ′], ...}}; "-" reads stdin.')
    p.add_argument("--infinitesimal", action="store_true", help="Also emit κ′ next to κ.")
    p.add_argument("--groups", default=None, help='Letter groups for a freeness check, e.g. "x|y" or "a b|c".')
    _add_output_flags(p)

    p = sub.add_parser("transform", help="g from r or r from g on a named ensemble.")
    p.add_argument("direction", choices=("g-from-r", "r-from-g"))
    p.add_argument("--ensemble", choices=ENSEMBLES, default="goe")
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--c", type=_rational, default=Fraction(1))
    p.add_argument("--cprime", type=_rational, default=Fraction(1))
    _add_output_flags(p)

    p = sub.add_parser("density", help="(x, μ, μ′) rows on a grid of the support.")
    p.add_argument("--ensemble", choices=ENSEMBLES, default="wishart")
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--cprime", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=200)
    _add_output_flags(p)

    p = sub.add_parser("simulate", help="Monte-Carlo estimate of E tr Xⁿ.")
    p.add_argument("ensemble", choices=ENSEMBLES)
    p.add_argument("--n", type=int, required=True, help="Power of X.")
    p.add_argument("--N", type=int, default=None, dest="size", help="Matrix size.")
    p.add_argument("--sizes", type=_int_list, default=None, help="Several sizes: also estimate the 1/N correction.")
    p.add_argument("--M", type=int, default=None, dest="rows", help="Rows of the Wishart factor.")
    p.add_argument("--c", type=_rational, default=Fraction(1))
    p.add_argument("--cprime", type=_rational, default=Fraction(0))
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=None)
    _add_output_flags(p)

    p = sub.add_parser("verify", help="Run a verification suite.")
    p.add_argument("suite", choices=("universal-rule", "non-freeness", "wishart-freeness"))
    p.add_argument("--family", choices=("rank1", "tiled"), default="rank1")
    p.add_argument("--lambda", type=_rational, default=Fraction(2), dest="lam")
    p.add_argument("--letters", type=int, default=1, help="Number of distinct constant matrices.")
    p.add_argument("--assignment", type=_int_list, default=None, help="Letters of A₁…Aₙ, e.g. 1,2,1,2.")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--c", type=_rational, default=Fraction(2))
    p.add_argument("--cprime", type=_rational, default=Fraction(3))
    p.add_argument("--order", type=int, default=6)
    _add_output_flags(p)

    p = sub.add_parser("schema", help="JSON schema of the payload another subcommand prints.")
    p.add_argument("target", choices=tuple(RESPONSE_MODELS))
    _add_output_flags(p)
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    subcommand = args.pop("subcommand")
    output_format = args.pop("output_format") or "json"
    verbose = args.pop("verbose")
    return RunConfig(subcommand, args, output_format, verbose)


# -- commands ---------------------------------------------------------------------------------


def _poly_payload(word: str, poly: LaurentPoly, limits: tuple[Fraction, Fraction] | None = None) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "word": word,
        "variables": list(poly.variables),
        "coefficients": poly.to_dict(),
        "text": str(poly),
    }
    if limits is not None:
        payload["limit"], payload["infinitesimal"] = fraction_text(limits[0]), fraction_text(limits[1])
    return payload


def cmd_goe_moments(p: dict[str, Any]) -> dict[str, Any]:
    n = p["n"]
    poly = goe_moment_poly(n)
    return _poly_payload(f"x^{n}", poly, (poly.coefficient(0), poly.coefficient(-1)))


def cmd_wishart_moments(p: dict[str, Any]) -> dict[str, Any]:
    word = ColorWord.parse(p["word"])
    poly = wishart_moment_poly(word)
    limits = wishart_limit_extraction(word, p["c"], p["cprime"]) if p["c"] is not None else None
    return _poly_payload(str(word), poly, limits)


def cmd_enumerate(p: dict[str, Any]) -> dict[str, Any]:
    if p["count"]:
        return {"kind": p["kind"], "n": p["n"], "count": count_diagrams(p["kind"], p["n"])}
    items = enumerate_diagrams(p["kind"], p["n"])
    return {"kind": p["kind"], "n": p["n"], "count": len(items), "items": [item.to_dict() for item in items]}


def _read_payload(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except OSError as exc:
        raise InputValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputValidationError(f"{path} is not valid JSON: {exc}") from exc


def cmd_cumulants(p: dict[str, Any]) -> dict[str, Any]:
    payload = _read_payload(p["moments_file"])
    if not isinstance(payload, dict) or "values" not in payload:
        raise InputValidationError('the moments file needs a "values" object')
    functional = InfFunctional.from_dict(payload)
    data = moments_to_cumulants(functional).to_dict()
    if not p["infinitesimal"]:
        data["values"] = {word: pair[0] for word, pair in data["values"].items()}
    if p["groups"]:
        groups = [group.split() if " " in group.strip() else list(group.strip()) for group in p["groups"].split("|")]
        data["freeness"] = check_inf_freeness(functional, groups).to_dict()
    return data


def cmd_transform(p: dict[str, Any]) -> dict[str, Any]:
    return ensemble_transform(p["direction"], p["ensemble"], p["order"], p["c"], p["cprime"])


def cmd_density(p: dict[str, Any]) -> dict[str, Any]:
    return density_rows(p["ensemble"], p["grid"], p["c"], p["cprime"])


def _wishart_rows(N: int, p: dict[str, Any]) -> int:
    if p["rows"] is not None and not p["sizes"]:
        return p["rows"]
    rows = p["c"] * N + p["cprime"]
    if rows.denominator != 1 or rows < 1:
        raise InputValidationError(f"M = cN + c′ = {rows} is not a positive integer at N = {N}")
    return int(rows)


def _exact_moment(p: dict[str, Any], N: int, M: int | None) -> Fraction:
    if p["ensemble"] == "goe":
        return goe_moment_poly(p["n"]).evaluate(N=N)
    return wishart_moment_poly(ColorWord.of([1] * p["n"])).evaluate(M=M, N=N)


def cmd_simulate(p: dict[str, Any]) -> dict[str, Any]:
    ensemble, n = p["ensemble"], p["n"]
    if p["sizes"]:
        if ensemble == "goe":
            limit = float(semicircle_moment(n))
        else:
            limit = float(mp_moment(n, p["c"]))

        def make_sampler(N: int) -> Callable[..., Any]:
            return ensemble_batcher(ensemble, N, _wishart_rows(N, p) if ensemble == "wishart" else None)

        estimate = infinitesimal_estimator(make_sampler, n, p["sizes"], p["samples"], p["seed"], limit=limit)
        return {"ensemble": ensemble, "n": n, "seed": p["seed"], **estimate.to_dict()}
    if p["size"] is None:
        raise InputValidationError("give --N or --sizes")
    N = p["size"]
    M = _wishart_rows(N, p) if ensemble == "wishart" else None
    stats = estimate_moment(ensemble_batcher(ensemble, N, M), n, p["samples"], p["seed"])
    exact = _exact_moment(p, N, M)
    z_score = (stats.mean - float(exact)) / stats.std_error if stats.std_error > 0 else 0.0
    payload: dict[str, Any] = {"ensemble": ensemble, "n": n, "N": N}
    if M is not None:
        payload["M"] = M
    payload.update({"seed": p["seed"], **stats.to_dict(), "exact": exact, "exact_float": float(exact), "z_score": z_score})
    return payload


def cmd_verify(p: dict[str, Any]) -> dict[str, Any]:
    suite = p["suite"]
    if suite == "universal-rule":
        letters = max(p["assignment"]) if p["assignment"] else p["letters"]
        family = build_family(p["family"], p["lam"], letters)
        return verify_universal_rule(family, p["n"], p["assignment"])
    if suite == "non-freeness":
        return verify_non_freeness(p["n"])
    return verify_wishart_freeness(p["c"], p["cprime"], p["order"])


def cmd_schema(p: dict[str, Any]) -> dict[str, Any]:
    return RESPONSE_MODELS[p["target"]].model_json_schema()


COMMANDS: dict[str, Callable[[dict[str, Any]], dict[str, Any]]] = {
    "goe-moments": cmd_goe_moments,
    "wishart-moments": cmd_wishart_moments,
    "enumerate": cmd_enumerate,
    "cumulants": cmd_cumulants,
    "transform": cmd_transform,
    "density": cmd_density,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "schema": cmd_schema,
}


# -- rendering ------------------------------------------------------------------------------


def _csv_rows(payload: dict[str, Any]) -> tuple[list[str], list[list[Any]]]:
    if "columns" in payload and "rows" in payload:
        return list(payload["columns"]), payload["rows"]
    if "coefficients" in payload:
        return ["monomial", "coefficient"], [[k, v] for k, v in payload["coefficients"].items()]
    if "series" in payload:
        series = payload["series"]
        rows = [[k, v, d] for k, (v, d) in enumerate(zip(series["values"], series["derivatives"]))]
        return ["index", "value", "derivative"], rows
    if "values" in payload and isinstance(payload["values"], dict):
        rows = [[word, *(value if isinstance(value, list) else [value])] for word, value in payload["values"].items()]
        width = max((len(row) for row in rows), default=2)
        return ["word", "kappa", "kappa_prime"][:width], rows
    flat = to_jsonable(payload)
    return ["key", "value"], [[k, v if not isinstance(v, (dict, list)) else json.dumps(v)] for k, v in flat.items()]


def render(payload: dict[str, Any], output_format: str) -> str:
    if output_format == "json":
        return dumps(payload, indent=2)
    if output_format == "csv":
        header, rows = _csv_rows(payload)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(to_jsonable(rows))
        return buffer.getvalue().rstrip("\n")
    if "text" in payload:
        return str(payload["text"])
    if set(payload) == {"kind", "n", "count"}:
        return str(payload["count"])
    lines = []
    for key, value in to_jsonable(payload).items():
        shown = json.dumps(value, ensure_ascii=False) if isinstance(value, (dict, list)) else value
        lines.append(f"{key}: {shown}")
    return "\n".join(lines)


# -- entry points ---------------------------------------------------------------------------


def validate_payload(subcommand: str, payload: dict[str, Any]) -> dict[str, Any]:
    """The JSON form of `payload`, checked against the response model of its subcommand."""
    data = to_jsonable(payload)
    model = RESPONSE_MODELS.get(subcommand)
    if model is not None:
        model.model_validate(data)
    return data


def run(config: RunConfig) -> int:
    command = COMMANDS.get(config.subcommand)
    if command is None:
        print(f"unknown subcommand {config.subcommand!r}", file=sys.stderr)
        return 2
    if config.output_format not in FORMATS:
        print(f"unknown format {config.output_format!r}", file=sys.stderr)
        return 2
    try:
        payload = command(config.params)
    except InfProbError as exc:
        logger.debug("%s failed", config.subcommand, exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    validate_payload(config.subcommand, payload)
    print(render(payload, config.output_format))
    if payload.get("passed") is False:
        return 1
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    config = parse_config(argv)
    logging.basicConfig(
        level=logging.DEBUG if config.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
