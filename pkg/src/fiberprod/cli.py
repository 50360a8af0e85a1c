"""Command-line front end: scenario ingestion, example corpus, and the
formula-vs-oracle verification harness.

Exit codes: 0 success, 1 validation error, 2 computational budget exceeded,
3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from typing import List, Optional, Sequence, Tuple

import jsonschema

from . import fiber, oracle, series, structure
from .errors import (
    BudgetExceeded,
    FiberprodError,
    InternalInconsistency,
    ValidationError,
)
from .fiber import BettiSequence, PoincareInputs
from .oracle import DEFAULT_CHAR, MonomialIdeal, QuotientPresentation
from .series import DEFAULT_ORDER, Polynomial, RationalFunction, TruncatedSeries
from .structure import FiberData

SCHEMA_VERSION = "1"
KINDS = ("series", "betti", "depth", "classify", "resolve", "verify")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_BUDGET = 2
EXIT_INCONSISTENT = 3


def _load_schema(kind: str) -> dict:
    text = resources.files("fiberprod.schemas").joinpath(f"{kind}.json").read_text()
    return json.loads(text)


def validate_payload(kind: str, payload: dict) -> None:
    if kind not in KINDS:
        raise ValidationError(f"unknown scenario kind {kind!r}")
    try:
        jsonschema.validate(payload, _load_schema(kind))
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ValidationError(f"scenario field {path}: {exc.message}") from exc


def load_scenario(path: str, expected_kind: str) -> dict:
    with open(path) as fh:
        data = json.load(fh)
    if "kind" in data:
        kind = data["kind"]
        payload = data.get("payload", {})
    else:
        kind, payload = expected_kind, data
    if kind != expected_kind:
        raise ValidationError(
            f"scenario kind {kind!r} does not match subcommand {expected_kind!r}"
        )
    validate_payload(kind, payload)
    return payload


def corpus_ids() -> List[str]:
    out = []
    for entry in resources.files("fiberprod.corpus").iterdir():
        if entry.name.endswith(".json"):
            out.append(entry.name[: -len(".json")])
    return sorted(out)


def load_corpus_scenario(scenario_id: str) -> dict:
    text = resources.files("fiberprod.corpus").joinpath(f"{scenario_id}.json").read_text()
    return json.loads(text)


# --- verify harness ---------------------------------------------------------


@dataclass(frozen=True)
class VerifyReport:
    formula_series: TruncatedSeries
    oracle_series: TruncatedSeries
    relation: str
    first_divergence: Optional[int]
    exact_asserted: bool
    notes: Tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "formula_series": self.formula_series.to_json(),
            "oracle_series": self.oracle_series.to_json(),
            "relation": self.relation,
            "first_divergence": self.first_divergence,
            "exact_asserted": self.exact_asserted,
            "notes": list(self.notes),
        }


def compare_series(
    a: TruncatedSeries, b: TruncatedSeries
) -> Tuple[str, Optional[int]]:
    """Coefficientwise relation of a (formula) against b (oracle)."""
    n = min(a.order, b.order)
    first = next((i for i in range(n + 1) if a[i] != b[i]), None)
    if first is None:
        return "equal", None
    a_ge = all(a[i] >= b[i] for i in range(n + 1))
    b_ge = all(b[i] >= a[i] for i in range(n + 1))
    if a_ge:
        return "formula-dominates", first
    if b_ge:
        return "oracle-dominates", first
    return "incomparable", first


def _module_over(base: MonomialIdeal, module_gens: Sequence, char: int) -> QuotientPresentation:
    gens = list(module_gens) + [list(g) for g in base.generators]
    module = MonomialIdeal.of(base.num_vars, gens)
    return QuotientPresentation(base.num_vars, char, base, module)


def run_verify(
    payload: dict,
    order: Optional[int] = None,
    char: Optional[int] = None,
    max_internal: Optional[int] = None,
    threads: int = 1,
) -> VerifyReport:
    variables = payload["vars"]
    p = char or int(payload.get("char", DEFAULT_CHAR))
    order = order if order is not None else int(payload.get("order", DEFAULT_ORDER))
    is_large = bool(payload.get("is_large", False))

    I = oracle.ideal_from_json(payload["I"], variables)
    J = oracle.ideal_from_json(payload["J"], variables)
    module_gens = [
        oracle.parse_monomial(g, variables) if isinstance(g, str) else tuple(g)
        for g in payload["module"]
    ]
    intersection, total = oracle.fiber_presentation(I, J)

    def truncation(base, extra):
        pres = _module_over(base, [list(g) for g in extra], p)
        return oracle.poincare_truncation(pres, order, max_internal, threads=threads)

    p_M_over_R = truncation(I, module_gens)
    p_T_over_R = truncation(I, total.generators)
    p_T_over_S = truncation(J, total.generators)

    inputs = PoincareInputs(p_M_over_R, p_T_over_R, p_T_over_S, is_large=is_large)
    formula = fiber.fiber_series(inputs, order)
    oracle_series = truncation(intersection, module_gens)

    relation, first = compare_series(formula.series, oracle_series)
    notes = tuple(payload.get("notes", [])) + (
        "formula: closed rational form for the product ring",
        "oracle: graded minimal resolution over the same-ambient presentation",
        f"largeness asserted: {is_large}",
    )
    report = VerifyReport(formula.series, oracle_series, relation, first, is_large, notes)
    if is_large and relation != "equal":
        raise InternalInconsistency(
            f"large fiber product must match the oracle exactly, got {relation} "
            f"(first divergence at index {first})"
        )
    # report integrity: the stored relation must be recomputable
    if compare_series(report.formula_series, report.oracle_series) != (relation, first):
        raise InternalInconsistency("verify report relation is not reproducible")
    return report


# --- subcommand runners -----------------------------------------------------


def _emit(args, kind: str, result: dict, human: str) -> None:
    if args.json:
        doc = {"schema_version": SCHEMA_VERSION, "kind": kind, "result": result}
        print(json.dumps(doc, indent=2))
    else:
        print(human)


def _cmd_series(args) -> int:
    payload = load_scenario(args.scenario, "series")
    order = args.order if args.order is not None else int(payload.get("order", DEFAULT_ORDER))
    f = RationalFunction(
        Polynomial.from_json(payload["num"]), Polynomial.from_json(payload["den"])
    )
    out = series.expand(f, order)
    _emit(args, "series", {"series": out.to_json()},
          "coefficients: " + " ".join(str(c) for c in out.coeffs))
    return EXIT_OK


def _cmd_betti(args) -> int:
    payload = load_scenario(args.scenario, "betti")
    bound = fiber.betti_bound(
        BettiSequence.from_json(payload["beta_M_over_R"]),
        BettiSequence.from_json(payload["beta_T_over_R"]),
        BettiSequence.from_json(payload["beta_T_over_S"]),
        int(payload["n"]),
        is_large=bool(payload.get("is_large", False)),
    )
    label = "exact" if payload.get("is_large") else "lower bound"
    _emit(args, "betti", {"bound": bound.to_json(), "label": label},
          f"betti {label}: " + " ".join(str(v) for v in bound.values))
    return EXIT_OK


def _cmd_depth(args) -> int:
    payload = load_scenario(args.scenario, "depth")
    data = FiberData.from_json(payload)
    result = structure.depth_rule(data)
    _emit(args, "depth", result.to_json(),
          f"depth: {result.kind.value} {result.value if result.value is not None else ''} "
          f"(rule {result.rule})")
    return EXIT_OK


def _cmd_classify(args) -> int:
    payload = load_scenario(args.scenario, "classify")
    data = FiberData.from_json(payload.get("data", payload))
    depth = payload.get("depth")
    report = structure.classify(data, depth_fiber=depth)
    lines = ["predicate              value      rule               direction"]
    for name, pred in report.rows():
        value = {True: "true", False: "false", None: "undetermined"}[pred.value]
        lines.append(f"{name:22s} {value:10s} {pred.rule:18s} {pred.direction}")
    _emit(args, "classify", report.to_json(), "\n".join(lines))
    return EXIT_OK


def _cmd_resolve(args) -> int:
    payload = load_scenario(args.scenario, "resolve")
    variables = payload["vars"]
    p = args.char or int(payload.get("char", DEFAULT_CHAR))
    ideal = oracle.ideal_from_json(payload.get("ideal", []), variables)
    module = oracle.ideal_from_json(payload["module"], variables)
    pres = QuotientPresentation(len(variables), p, ideal, module)
    max_hom = args.order if args.order is not None else int(payload.get("max_hom", DEFAULT_ORDER))
    table = oracle.resolve(pres, max_hom, args.max_internal, threads=args.threads)
    _emit(args, "resolve", table.to_json(), table.to_text())
    if not table.is_complete_through():
        print("warning: table incomplete within the internal-degree budget",
              file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_verify(args) -> int:
    payload = load_scenario(args.scenario, "verify")
    report = run_verify(
        payload,
        order=args.order,
        char=args.char,
        max_internal=args.max_internal,
        threads=args.threads,
    )
    human = "\n".join(
        [
            "formula: " + " ".join(str(c) for c in report.formula_series.coeffs),
            "oracle:  " + " ".join(str(c) for c in report.oracle_series.coeffs),
            f"relation: {report.relation}"
            + (f" (first divergence at {report.first_divergence})"
               if report.first_divergence is not None else ""),
        ]
        + [f"note: {n}" for n in report.notes]
    )
    _emit(args, "verify", report.to_json(), human)
    return EXIT_OK


def _cmd_examples(args) -> int:
    rows = []
    for sid in corpus_ids():
        doc = load_corpus_scenario(sid)
        rows.append({"id": sid, "kind": doc.get("kind"),
                     "description": doc.get("description", "")})
    human = "\n".join(f"{r['id']:16s} {r['kind']:8s} {r['description']}" for r in rows)
    _emit(args, "examples", {"scenarios": rows}, human)
    return EXIT_OK


_RUNNERS = {
    "series": _cmd_series,
    "betti": _cmd_betti,
    "depth": _cmd_depth,
    "classify": _cmd_classify,
    "resolve": _cmd_resolve,
    "verify": _cmd_verify,
    "examples": _cmd_examples,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fiberprod",
        description="Exact Poincare-series formulas, depth rules and a "
        "resolution oracle for fiber product rings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in list(KINDS) + ["examples"]:
        sp = sub.add_parser(name)
        if name != "examples":
            sp.add_argument("--scenario", required=True, help="scenario JSON file")
        sp.add_argument("--order", type=int, default=None,
                        help=f"truncation order (default {DEFAULT_ORDER})")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--char", type=int, default=None,
                        help=f"field characteristic (default {DEFAULT_CHAR})")
        sp.add_argument("--max-internal", type=int, default=None, dest="max_internal",
                        help="internal-degree budget for the oracle")
        sp.add_argument("--threads", type=int, default=1)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _RUNNERS[args.command](args)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InternalInconsistency as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except FileNotFoundError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
