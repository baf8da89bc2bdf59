"""
Helper utilities for ncpoisson
"""

import json
import os
import tempfile
from fractions import Fraction
from math import comb, factorial
from pathlib import Path
from typing import Any, Dict


def ensure_directory(path: str) -> None:
    """Ensure directory exists, create if it doesn't"""
    if path:
        Path(path).mkdir(parents=True, exist_ok=True)


def dumps_report(data: Dict[str, Any]) -> str:
    """Deterministic JSON rendering used for every report"""
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)


def write_text_atomic(file_path: str, text: str) -> None:
    """Write text through a temporary file and rename it into place"""
    directory = os.path.dirname(os.path.abspath(file_path))
    ensure_directory(directory)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, 'w', encoding='utf-8') as f:
            f.write(text)
        os.replace(tmp_path, file_path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise


def format_rational(value: Fraction) -> str:
    """Render a rational as 'a' or 'a/b'"""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def reorder_coefficient(s: int, r: int, k: int) -> int:
    """k! * C(s, k) * C(r, k): weight of p^(r-k) q^(s-k) in q^s p^r"""
    return factorial(k) * comb(s, k) * comb(r, k)


def monomial_count(degree_bound: int, n_vars: int) -> int:
    """Number of monomials of total degree <= degree_bound in n_vars variables"""
    if degree_bound < 0:
        return 0
    return comb(degree_bound + n_vars, n_vars)
