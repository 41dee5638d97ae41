"""Serializers: canonical JSON, LaTeX and plain-text output.

JSON output is deterministic byte-for-byte: keys sorted, two-space
indent, rationals as decimal strings, polynomial terms in lexicographic
exponent order.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .kernel import BergmanKernelForm, exponent_box
from .laurent import LaurentPolynomial
from .oracle import OracleReport


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def form_to_json_dict(form: BergmanKernelForm) -> dict:
    box = form.box if form.box is not None else exponent_box(form.source)
    return {
        "n": form.n,
        "detB": form.det,
        "prefactor": {
            "num": str(form.prefactor.numerator),
            "den": str(form.prefactor.denominator),
        },
        "piExponent": form.pi_exponent,
        "numerator": form.numerator.to_json_dict(),
        "denominatorFactors": [f.to_json_dict() for f in form.factors],
        "nuBox": {
            "lower": list(box.lower),
            "upper": list(box.upper),
            "xi": list(box.ceilings),
        },
    }


def _coeff_text(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_text(p: LaurentPolynomial, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    chunks = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            f"{var}{i + 1}" if k == 1 else f"{var}{i + 1}^{k}"
            for i, k in enumerate(e)
            if k != 0
        )
        neg = c < 0
        mag = -c if neg else c
        if not mono:
            body = _coeff_text(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_coeff_text(mag)}*{mono}"
        if not chunks:
            chunks.append(("-" if neg else "") + body)
        else:
            chunks.append(("- " if neg else "+ ") + body)
    return " ".join(chunks)


def form_to_text(form: BergmanKernelForm) -> str:
    pre = form.prefactor
    if pre.denominator == 1:
        pre_txt = f"{pre.numerator}" if pre != 1 else "1"
    else:
        pre_txt = f"{pre.numerator}/{pre.denominator}"
    den = " * ".join(f"({poly_text(f)})^2" for f in form.factors)
    return (
        f"K(p,q) = ({pre_txt}/pi^{-form.pi_exponent})"
        f" * ({poly_text(form.numerator)}) / ({den})"
    )


def form_to_latex(form: BergmanKernelForm) -> str:
    pre = form.prefactor
    npi = -form.pi_exponent
    pi_part = rf"\pi^{{{npi}}}"
    if pre == 1:
        prefactor = rf"\frac{{1}}{{{pi_part}}}"
    elif pre.numerator == 1:
        prefactor = rf"\frac{{1}}{{{pre.denominator}\,{pi_part}}}"
    else:
        prefactor = rf"\frac{{{pre.numerator}}}{{{pre.denominator}\,{pi_part}}}"
    den = " ".join(rf"\left({f.to_latex()}\right)^{{2}}" for f in form.factors)
    return (
        prefactor
        + r" \cdot "
        + rf"\frac{{{form.numerator.to_latex()}}}{{{den}}}"
    )


def report_to_json_dict(report: OracleReport) -> dict:
    return {
        "checked": report.checked,
        "matched": report.matched,
        "mismatches": [
            {
                "exp": list(e),
                "closedForm": _coeff_text(closed),
                "oracle": _coeff_text(oracle),
            }
            for e, closed, oracle in report.mismatches
        ],
        "safeBox": {
            "lower": list(report.safe_lower),
            "upper": list(report.safe_upper),
        },
    }
