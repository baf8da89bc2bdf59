"""
Command model, algebra strings and dispatch to the library operations
"""

import json
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError, field_validator

from ncpoisson.algebra.element import Element, format_element, generators
from ncpoisson.algebra.homomorphism import check_homomorphism
from ncpoisson.algebra.spec import symplectic, weyl
from ncpoisson.analysis.adjoint import centralizer_basis, orbit_profile, partner_probe, subspace_bases
from ncpoisson.analysis.classify import classify
from ncpoisson.analysis.theorems import (
    THEOREM_KINDS,
    automorphism_invariance,
    centralizer_generator_check,
    tensor_theorem_check,
)
from ncpoisson.cli.parser import EvalContext, parse_element, parse_value
from ncpoisson.config import DEFAULT_ITERATIONS, default_degree
from ncpoisson.exceptions import AlgebraDefinitionError, NCPoissonError, ParseError
from ncpoisson.graded.symbols import gr_commutative
from ncpoisson.growth.gk import DependenceWitness, gk_profile, independence_probe, profile_to_csv
from ncpoisson.localization.localized import (
    LocalizedAlgebra,
    LocElement,
    MemberCertificate,
    format_loc,
    loc_bracket,
    loc_torsion_check,
)
from ncpoisson.reports import (
    GRADE_NOT_APPLICABLE,
    Bounds,
    ReportEnvelope,
    ad_report_payload,
    degree_text,
    element_text,
    elements_text,
    envelope,
    rational_text,
    verdict_payload,
)
from ncpoisson.tensor.product import TensorAlgebraSpec, tensor_algebra
from ncpoisson.utils.helpers import ensure_directory, write_text_atomic
from ncpoisson.utils.logger import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2

VERBS = (
    "classify", "centralizer", "eigen", "orbit", "tensor-check", "gk", "indep",
    "locbracket", "loc-torsion", "gr-check", "partner", "hom-classify", "normal-form",
)

PROVEN = "Proven"
CONSISTENT = "ConsistentUpToBound"


class Command(BaseModel):
    verb: str
    algebra: str = "weyl:1"
    expr: Optional[str] = None
    left: Optional[str] = None
    right: Optional[str] = None
    exprs: List[str] = Field(default_factory=list)
    probe: Optional[str] = None
    kind: Optional[str] = None
    lam: str = "0"
    deg: Optional[int] = Field(default=None, ge=0)
    iterations: int = Field(default=DEFAULT_ITERATIONS, ge=1)
    i_max: int = Field(default=4, ge=0)
    n_max: int = Field(default=10, ge=1)
    format: str = "text"
    csv: Optional[str] = None

    @field_validator("lam")
    @classmethod
    def _rational(cls, value: str) -> str:
        try:
            Fraction(value)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational number: {value!r}") from e
        return value

    @field_validator("format")
    @classmethod
    def _known_format(cls, value: str) -> str:
        if value not in ("text", "json"):
            raise ValueError("format must be text or json")
        return value

    def degree_bound(self) -> int:
        return self.deg if self.deg is not None else default_degree()

    def query(self) -> Dict[str, Any]:
        data = self.model_dump(exclude={"format", "csv", "deg", "iterations", "i_max", "n_max"})
        return {k: v for k, v in data.items() if v not in (None, [])}


@dataclass(frozen=True)
class RunResult:
    exit_code: int
    report: ReportEnvelope


# -- algebra strings ----------------------------------------------------------------

def _split_top_level(text: str) -> List[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


def parse_algebra(text: str) -> EvalContext:
    """weyl:n, sympoly:n, tensor(A,B), with an optional @loc=g suffix"""
    text = text.strip()
    if "@loc=" in text:
        base_text, g_text = text.split("@loc=", 1)
        base = parse_algebra(base_text)
        if base.tensor is not None:
            raise AlgebraDefinitionError("localized tensor algebras are not supported")
        g = parse_element(g_text, base)
        return EvalContext.of(LocalizedAlgebra(base.algebra, g))
    match = re.fullmatch(r"(weyl|sympoly):(\d+)", text)
    if match:
        n = int(match.group(2))
        if n < 1:
            raise AlgebraDefinitionError("an algebra needs at least one generator pair")
        return EvalContext(weyl(n) if match.group(1) == "weyl" else symplectic(n))
    match = re.fullmatch(r"tensor\((.*)\)", text)
    if match:
        parts = _split_top_level(match.group(1))
        if len(parts) != 2:
            raise AlgebraDefinitionError(f"tensor(...) takes two algebras, got {len(parts)}")
        left, right = (parse_algebra(p) for p in parts)
        if left.tensor or right.tensor or left.localized or right.localized:
            raise AlgebraDefinitionError("tensor factors must be plain algebras")
        return EvalContext.of(tensor_algebra(left.algebra, right.algebra))
    raise AlgebraDefinitionError(f"unknown algebra {text!r}; expected weyl:n, sympoly:n or tensor(A,B)")


def _require(value: Optional[str], flag: str) -> str:
    if not value:
        raise ParseError(f"missing {flag}")
    return value


def _factors(context: EvalContext) -> TensorAlgebraSpec:
    if context.tensor is not None:
        return context.tensor
    return tensor_algebra(context.algebra, context.algebra)


def _localized(context: EvalContext) -> LocalizedAlgebra:
    if context.localized is None:
        raise AlgebraDefinitionError("this command needs a localized algebra such as sympoly:1@loc=y")
    return context.localized


def _as_loc(value, algebra: LocalizedAlgebra) -> LocElement:
    if isinstance(value, LocElement):
        return value
    return LocElement(algebra, value, 0)


# -- verbs --------------------------------------------------------------------------

def _classify(cmd: Command, ctx: EvalContext) -> RunResult:
    n = cmd.degree_bound()
    z = parse_element(_require(cmd.expr, "--expr"), ctx)
    verdict = classify(z, n, cmd.iterations)
    report = envelope(cmd.query(), Bounds(deg=n, iterations=cmd.iterations), verdict.grade.value,
                      verdict.warnings, verdict=verdict_payload(verdict))
    return RunResult(EXIT_OK, report)


def _centralizer(cmd: Command, ctx: EvalContext) -> RunResult:
    n = cmd.degree_bound()
    z = parse_element(_require(cmd.expr, "--expr"), ctx)
    bounds = Bounds(deg=n)
    if cmd.exprs:
        gens = [parse_element(e, ctx) for e in cmd.exprs]
        check = centralizer_generator_check(z, gens, n)
        bases = {
            "C": elements_text(centralizer_basis(z, n)),
            "centralizer_dim": check.centralizer_dim,
            "generated_dim": check.generated_dim,
            "spans_equal": check.spans_equal,
        }
        code = EXIT_OK if check.spans_equal else EXIT_CHECK_FAILED
        return RunResult(code, envelope(cmd.query(), bounds, CONSISTENT, bases=bases))
    basis = centralizer_basis(z, n)
    return RunResult(EXIT_OK, envelope(cmd.query(), bounds, bases={"C": elements_text(basis), "dim": len(basis)}))


def _eigen(cmd: Command, ctx: EvalContext) -> RunResult:
    n = cmd.degree_bound()
    z = parse_element(_require(cmd.expr, "--expr"), ctx)
    report = subspace_bases(z, n, cmd.iterations)
    return RunResult(EXIT_OK, envelope(cmd.query(), Bounds(deg=n, iterations=cmd.iterations),
                                       warnings=report.warnings, bases=ad_report_payload(report)))


def _orbit(cmd: Command, ctx: EvalContext) -> RunResult:
    z = parse_element(_require(cmd.expr, "--expr"), ctx)
    x = parse_element(_require(cmd.probe, "--probe"), ctx)
    degrees = orbit_profile(z, x, cmd.iterations)
    killed = degrees[-1] == float("-inf")
    profile = {"degrees": [degree_text(d) for d in degrees], "terminates": killed}
    grade = PROVEN if killed else CONSISTENT
    return RunResult(EXIT_OK, envelope(cmd.query(), Bounds(iterations=cmd.iterations), grade, profile=profile))


def _tensor_check(cmd: Command, ctx: EvalContext) -> RunResult:
    n = cmd.degree_bound()
    kind = _require(cmd.kind, "--kind")
    if kind not in THEOREM_KINDS:
        raise ParseError(f"--kind must be one of {', '.join(THEOREM_KINDS)}")
    spec = _factors(ctx)
    z1 = parse_element(_require(cmd.left, "--left"), spec.left)
    z2 = parse_element(_require(cmd.right, "--right"), spec.right)
    check = tensor_theorem_check(kind, spec, z1, z2, n, Fraction(cmd.lam), cmd.iterations)
    dims = {
        "kind": check.kind,
        "lhs_dim": check.lhs_dim,
        "rhs_dim": check.rhs_dim,
        "spans_equal": check.spans_equal,
        "notes": list(check.notes),
    }
    if check.value is not None:
        dims["lambda"] = rational_text(check.value)
    code = EXIT_OK if check.passed else EXIT_CHECK_FAILED
    return RunResult(code, envelope(cmd.query(), Bounds(deg=n, iterations=cmd.iterations), CONSISTENT, dims=dims))


def _gk(cmd: Command, ctx: EvalContext) -> RunResult:
    sources = cmd.exprs or ["1"] + [format_element(g) for g in generators(ctx.algebra)]
    gens = [parse_element(e, ctx) for e in sources]
    profile = gk_profile(gens, cmd.n_max)
    if cmd.csv:
        profile_to_csv(profile, cmd.csv)
    payload = {
        "generators": elements_text(profile.generator_set),
        "dims": list(profile.dims),
        "slopes": [None if s is None else round(s, 6) for s in profile.slope_estimates],
        "fitted_slope": None if profile.fitted_slope is None else round(profile.fitted_slope, 6),
    }
    return RunResult(EXIT_OK, envelope(cmd.query(), Bounds(n_max=cmd.n_max), CONSISTENT, profile=payload))


def _indep(cmd: Command, ctx: EvalContext) -> RunResult:
    w = parse_element(_require(cmd.expr, "--expr"), ctx)
    basis = [parse_element(e, ctx) for e in (cmd.exprs or ["1"])]
    result = independence_probe(w, basis, cmd.i_max)
    if isinstance(result, DependenceWitness):
        verdict = {"result": "DependenceWitness", "coefficients": elements_text(result.coefficients)}
    else:
        verdict = {"result": "IndependentUpTo", "i_max": result.i_max}
    return RunResult(EXIT_OK, envelope(cmd.query(), Bounds(i_max=cmd.i_max), PROVEN, verdict=verdict))


def _locbracket(cmd: Command, ctx: EvalContext) -> RunResult:
    alg = _localized(ctx)
    a = _as_loc(parse_value(_require(cmd.left, "--left"), ctx), alg)
    b = _as_loc(parse_value(_require(cmd.right, "--right"), ctx), alg)
    value = loc_bracket(a, b)
    bases = {"bracket": format_loc(value), "numerator": element_text(value.numerator), "exp": value.exp}
    return RunResult(EXIT_OK, envelope(cmd.query(), bases=bases))


def _loc_torsion(cmd: Command, ctx: EvalContext) -> RunResult:
    alg = _localized(ctx)
    z = parse_element(_require(cmd.expr, "--expr"), ctx)
    probe = _as_loc(parse_value(_require(cmd.probe, "--probe"), ctx), alg)
    result = loc_torsion_check(z, probe, cmd.iterations)
    steps = [
        {"exp": s.exp, "numerator_degree": degree_text(s.numerator_degree),
         "leading_coefficient": rational_text(s.leading_coefficient)}
        for s in result.profile
    ]
    verdict: Dict[str, Any] = {
        "result": "Member" if isinstance(result, MemberCertificate) else "NonMemberEvidence",
        "predicted_member": result.predicted_member,
        "prediction_agrees": result.prediction_agrees,
        "profile": steps,
    }
    if isinstance(result, MemberCertificate):
        verdict.update(steps=result.steps, orbit_dim=result.orbit_dim, nilpotent=result.nilpotent)
        grade = PROVEN
    else:
        grade = CONSISTENT
    return RunResult(EXIT_OK, envelope(cmd.query(), Bounds(iterations=cmd.iterations), grade, verdict=verdict))


def _gr_check(cmd: Command, ctx: EvalContext) -> RunResult:
    n = cmd.degree_bound()
    certificate = gr_commutative(ctx.algebra, n)
    verdict: Dict[str, Any] = {
        "commutative": certificate.commutative,
        "delta": certificate.delta,
        "pairs_checked": certificate.pairs_checked,
    }
    if certificate.counterexample is not None:
        verdict["counterexample"] = elements_text(certificate.counterexample)
    code = EXIT_OK if certificate.commutative else EXIT_CHECK_FAILED
    return RunResult(code, envelope(cmd.query(), Bounds(deg=n), CONSISTENT, verdict=verdict))


def _partner(cmd: Command, ctx: EvalContext) -> RunResult:
    n = cmd.degree_bound()
    z = parse_element(_require(cmd.expr, "--expr"), ctx)
    w = partner_probe(z, n)
    verdict = {"partner": element_text(w)}
    grade = PROVEN if w is not None else CONSISTENT
    return RunResult(EXIT_OK, envelope(cmd.query(), Bounds(deg=n), grade, verdict=verdict))


def _hom_classify(cmd: Command, ctx: EvalContext) -> RunResult:
    n = cmd.degree_bound()
    z = parse_element(_require(cmd.expr, "--expr"), ctx)
    if len(cmd.exprs) != ctx.algebra.n_vars:
        raise ParseError(f"--image needs {ctx.algebra.n_vars} generator images, got {len(cmd.exprs)}")
    images = [parse_element(e, ctx) for e in cmd.exprs]
    check_homomorphism(ctx.algebra, images)
    check = automorphism_invariance(images, z, n, cmd.iterations)
    verdict = {
        "before": verdict_payload(check.before),
        "after": verdict_payload(check.after),
        "agree": check.agree,
    }
    grades = {check.before.grade.value, check.after.grade.value}
    grade = PROVEN if grades == {PROVEN} else CONSISTENT
    warnings = list(check.before.warnings) + list(check.after.warnings)
    code = EXIT_OK if check.agree else EXIT_CHECK_FAILED
    return RunResult(code, envelope(cmd.query(), Bounds(deg=n, iterations=cmd.iterations), grade, warnings,
                                    verdict=verdict))


def _normal_form(cmd: Command, ctx: EvalContext) -> RunResult:
    value = parse_value(_require(cmd.expr, "--expr"), ctx)
    text = format_loc(value) if isinstance(value, LocElement) else format_element(value)
    return RunResult(EXIT_OK, envelope(cmd.query(), bases={"normal_form": text}))


HANDLERS: Dict[str, Callable[[Command, EvalContext], RunResult]] = {
    "classify": _classify,
    "centralizer": _centralizer,
    "eigen": _eigen,
    "orbit": _orbit,
    "tensor-check": _tensor_check,
    "gk": _gk,
    "indep": _indep,
    "locbracket": _locbracket,
    "loc-torsion": _loc_torsion,
    "gr-check": _gr_check,
    "partner": _partner,
    "hom-classify": _hom_classify,
    "normal-form": _normal_form,
}


def run(cmd: Command) -> RunResult:
    """Dispatch one command; input errors propagate as NCPoissonError"""
    handler = HANDLERS.get(cmd.verb)
    if handler is None:
        raise ParseError(f"unknown verb {cmd.verb!r}")
    logger.debug("running %s on %s", cmd.verb, cmd.algebra)
    return handler(cmd, parse_algebra(cmd.algebra))


def error_report(query: Dict[str, Any], message: str) -> ReportEnvelope:
    return ReportEnvelope(query=query, evidence_grade=GRADE_NOT_APPLICABLE, error=message)


def run_safely(cmd: Command) -> RunResult:
    """run() with input errors turned into exit code 2 and an error report"""
    try:
        return run(cmd)
    except NCPoissonError as e:
        logger.debug("input error: %s", e)
        return RunResult(EXIT_INPUT_ERROR, error_report(cmd.query(), str(e)))


# -- batch --------------------------------------------------------------------------

def _run_payload(payload: Dict[str, Any]) -> Tuple[int, str]:
    try:
        cmd = Command(**payload)
    except (ValidationError, TypeError) as e:
        return EXIT_INPUT_ERROR, error_report(payload if isinstance(payload, dict) else {}, str(e)).to_json()
    result = run_safely(cmd)
    return result.exit_code, result.report.to_json()


def read_batch(path: str) -> List[Dict[str, Any]]:
    """One JSON object per non-empty line"""
    commands = []
    with open(path, "r", encoding="utf-8") as f:
        for number, line in enumerate(f, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                commands.append(json.loads(line))
            except json.JSONDecodeError as e:
                raise ParseError(f"invalid JSON: {e.msg}", number, e.colno) from e
    return commands


def run_batch(path: str, out_dir: str, workers: Optional[int] = None) -> List[int]:
    """Run independent commands concurrently; each report lands in out_dir/report-NNN.json"""
    commands = read_batch(path)
    ensure_directory(out_dir)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_run_payload, commands))
    codes = []
    for index, (code, text) in enumerate(results, start=1):
        write_text_atomic(os.path.join(out_dir, f"report-{index:03d}.json"), text + "\n")
        codes.append(code)
    logger.info("batch of %d commands written to %s", len(codes), out_dir)
    return codes
