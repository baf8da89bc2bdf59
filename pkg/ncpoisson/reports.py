"""
Report models for the CLI; the JSON layout is a stable contract
"""

from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from ncpoisson.algebra.element import Element, format_element
from ncpoisson.config import REPORT_SCHEMA_VERSION
from ncpoisson.utils.helpers import dumps_report, format_rational

PAYLOAD_KEYS = ("verdict", "bases", "dims", "profile")
GRADE_NOT_APPLICABLE = "n/a"


class Bounds(BaseModel):
    deg: Optional[int] = None
    iterations: Optional[int] = None
    i_max: Optional[int] = None
    n_max: Optional[int] = None


class ReportEnvelope(BaseModel):
    schema_version: str = REPORT_SCHEMA_VERSION
    query: Dict[str, Any]
    bounds: Bounds = Field(default_factory=Bounds)
    verdict: Optional[Dict[str, Any]] = None
    bases: Optional[Dict[str, Any]] = None
    dims: Optional[Dict[str, Any]] = None
    profile: Optional[Dict[str, Any]] = None
    evidence_grade: str = GRADE_NOT_APPLICABLE
    warnings: List[str] = Field(default_factory=list)
    error: Optional[str] = None

    def payload_key(self) -> Optional[str]:
        for key in PAYLOAD_KEYS:
            if getattr(self, key) is not None:
                return key
        return None

    def to_dict(self) -> Dict[str, Any]:
        data = self.model_dump()
        for key in PAYLOAD_KEYS + ("error",):
            if data[key] is None:
                del data[key]
        data["bounds"] = {k: v for k, v in data["bounds"].items() if v is not None}
        return data

    def to_json(self) -> str:
        return dumps_report(self.to_dict())


def rational_text(value: Fraction) -> str:
    return format_rational(Fraction(value))


def degree_text(value: float) -> Any:
    return "-inf" if value == float("-inf") else int(value)


def element_text(x: Optional[Element]) -> Optional[str]:
    return None if x is None else format_element(x)


def elements_text(xs: Sequence[Element]) -> List[str]:
    return [format_element(x) for x in xs]


def relation_payload(status) -> Dict[str, Any]:
    data = {"kind": status.kind.value, "note": status.note}
    if status.witness is not None:
        data["witness"] = element_text(status.witness)
    if status.bound_used is not None:
        data["bound_used"] = list(status.bound_used)
    return data


def verdict_payload(verdict) -> Dict[str, Any]:
    ev = {"kind": verdict.ev_status.kind, "proven": verdict.ev_status.proven}
    if verdict.ev_status.value is not None:
        ev["value"] = rational_text(verdict.ev_status.value)
    if verdict.ev_status.witness is not None:
        ev["witness"] = element_text(verdict.ev_status.witness)
    data = {
        "label": verdict.label.value,
        "grade": verdict.grade.value,
        "ev_status": ev,
        "rel_CN": relation_payload(verdict.rel_CN),
        "rel_NF": relation_payload(verdict.rel_NF),
        "rel_DF": relation_payload(verdict.rel_DF),
        "rel_FP": relation_payload(verdict.rel_FP),
    }
    if verdict.element is not None:
        data["element"] = element_text(verdict.element)
    return data


def ad_report_payload(report) -> Dict[str, Any]:
    """Bases of an AdReport keyed by subspace name"""
    return {
        "slice_dim": report.slice_dim,
        "invariant_dim": report.invariant_dim,
        "ev_found": [rational_text(v) for v in report.ev_found],
        "irrational_flag": report.irrational_flag,
        "C": elements_text(report.c_basis),
        "N": {str(m): elements_text(b) for m, b in enumerate(report.n_bases, start=1)},
        "n_stabilized": report.n_stabilized,
        "D": {rational_text(v): elements_text(b) for v, b in report.d_bases.items()},
        "F": {
            rational_text(v): {str(k): elements_text(b) for k, b in enumerate(chain)}
            for v, chain in report.f_bases.items()
        },
    }


def envelope(query: Dict[str, Any], bounds: Optional[Bounds] = None, grade: str = GRADE_NOT_APPLICABLE,
             warnings: Sequence[str] = (), **payload: Dict[str, Any]) -> ReportEnvelope:
    """Report with exactly one payload section"""
    if len(payload) != 1 or next(iter(payload)) not in PAYLOAD_KEYS:
        raise ValueError(f"exactly one of {', '.join(PAYLOAD_KEYS)} is required")
    return ReportEnvelope(
        query=query,
        bounds=bounds or Bounds(),
        evidence_grade=grade,
        warnings=list(warnings),
        **payload,
    )
