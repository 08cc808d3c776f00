"""Text, LaTeX, s-expression and JSON emitters.

The JSON tree is exact: every rational is written as ``{"num": "...", "den":
"..."}`` with integer strings, so ``from_json(to_json(x)) == x`` bit for bit.
Term order is deterministic everywhere (sorted generator tuples, monomials in
descending lex order).
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Dict, List

from .forms import EquivariantForm, gen_name, parse_gen
from .scalar import (
    RationalCoefficient,
    Scalar,
    XV,
    Z,
    ZB,
    parse_var,
    var_index,
    var_kind,
    var_name,
)

# ---------------------------------------------------------------------------
# plain text
# ---------------------------------------------------------------------------


def _frac_text(q: Fraction) -> str:
    return str(q)


def scalar_to_text(s: Scalar) -> str:
    return str(s)


def _mono_text(mono) -> str:
    return "*".join(var_name(v) if e == 1 else f"{var_name(v)}^{e}" for v, e in mono)


def coefficient_to_text(c: RationalCoefficient) -> str:
    if c.is_zero():
        return "0"
    parts = []
    for mono, s in c.terms():
        st = str(s)
        if " + " in st:
            st = f"({st})"
        if mono:
            parts.append(_mono_text(mono) if st == "1" else f"{st}*{_mono_text(mono)}")
        else:
            parts.append(st)
    num = " + ".join(parts)
    if c.denom_exp:
        return f"({num})/|z|^{2 * c.denom_exp}"
    return num if len(parts) == 1 else f"({num})"


def form_to_text(w: EquivariantForm) -> str:
    if w.is_zero():
        return "0"
    parts = []
    for gens in sorted(w.terms, key=lambda g: (len(g), g)):
        c = coefficient_to_text(w.terms[gens])
        if gens:
            parts.append(f"{c} {'^'.join(gen_name(g) for g in gens)}")
        else:
            parts.append(c)
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# LaTeX
# ---------------------------------------------------------------------------


def _latex_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return f"{sign}\\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def _latex_gauss(re: Fraction, im: Fraction) -> str:
    if not im:
        return _latex_rational(re)
    imag = "\\sqrt{-1}" if abs(im) == 1 else f"{_latex_rational(abs(im))}\\sqrt{{-1}}"
    if not re:
        return ("-" if im < 0 else "") + imag
    return f"\\left({_latex_rational(re)}{'-' if im < 0 else '+'}{imag}\\right)"


def scalar_to_latex(s: Scalar) -> str:
    if s.is_zero():
        return "0"
    parts = []
    for k in sorted(s.terms):
        re, im = s.terms[k]
        base = _latex_gauss(re, im)
        if k == 0:
            parts.append(base)
        else:
            pi = "\\pi" if k == 1 else f"\\pi^{{{k}}}"
            parts.append(f"{base}{pi}" if base not in ("1", "-1") else f"{base[:-1]}{pi}")
    return " + ".join(parts)


def _latex_var(code: int) -> str:
    kind = var_kind(code)
    idx = var_index(code)
    if kind == Z:
        return f"z_{{{idx}}}"
    if kind == ZB:
        return f"\\bar{{z}}_{{{idx}}}"
    if kind == XV:
        return f"X_{{{idx[0]}{idx[1]}}}"
    return f"t_{{{idx}}}"


def _latex_mono(mono) -> str:
    return " ".join(_latex_var(v) if e == 1 else f"{_latex_var(v)}^{{{e}}}" for v, e in mono)


def coefficient_to_latex(c: RationalCoefficient) -> str:
    if c.is_zero():
        return "0"
    parts = []
    for mono, s in c.terms():
        st = scalar_to_latex(s)
        if " + " in st:
            st = f"\\left({st}\\right)"
        if not mono:
            parts.append(st)
        elif st == "1":
            parts.append(_latex_mono(mono))
        elif st == "-1":
            parts.append("-" + _latex_mono(mono))
        else:
            parts.append(f"{st}\\,{_latex_mono(mono)}")
    num = " + ".join(parts).replace("+ -", "- ")
    if c.denom_exp:
        return f"\\frac{{{num}}}{{\\|z\\|^{{{2 * c.denom_exp}}}}}"
    return num if len(parts) == 1 else f"\\left({num}\\right)"


def _latex_gen(g: int) -> str:
    name = gen_name(g)
    if name.startswith("dzb"):
        return f"d\\bar{{z}}_{{{name[3:]}}}"
    return f"{name[:2]}_{{{name[2:]}}}"


def form_to_latex(w: EquivariantForm) -> str:
    if w.is_zero():
        return "0"
    parts = []
    for gens in sorted(w.terms, key=lambda g: (len(g), g)):
        c = coefficient_to_latex(w.terms[gens])
        if gens:
            parts.append(f"{c}\\, " + "\\wedge ".join(_latex_gen(g) for g in gens))
        else:
            parts.append(c)
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# s-expressions
# ---------------------------------------------------------------------------


def scalar_to_sexpr(s: Scalar) -> str:
    parts = []
    for k in sorted(s.terms):
        re, im = s.terms[k]
        parts.append(f"(* (complex {re} {im}) (expt pi {k}))")
    if not parts:
        return "0"
    return parts[0] if len(parts) == 1 else f"(+ {' '.join(parts)})"


def coefficient_to_sexpr(c: RationalCoefficient) -> str:
    parts = []
    for mono, s in c.terms():
        factors = [scalar_to_sexpr(s)]
        factors += [var_name(v) if e == 1 else f"(expt {var_name(v)} {e})" for v, e in mono]
        parts.append(f"(* {' '.join(factors)})")
    num = "0" if not parts else (parts[0] if len(parts) == 1 else f"(+ {' '.join(parts)})")
    if c.denom_exp:
        return f"(/ {num} (expt sigma {c.denom_exp}))"
    return num


def form_to_sexpr(w: EquivariantForm) -> str:
    parts = []
    for gens in sorted(w.terms, key=lambda g: (len(g), g)):
        wedge = f"(wedge {' '.join(gen_name(g) for g in gens)})" if gens else "1"
        parts.append(f"(* {coefficient_to_sexpr(w.terms[gens])} {wedge})")
    if not parts:
        return "0"
    return parts[0] if len(parts) == 1 else f"(+ {' '.join(parts)})"


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def _q(q: Fraction) -> Dict[str, str]:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def _unq(d) -> Fraction:
    return Fraction(int(d["num"]), int(d["den"]))


def scalar_to_json(s: Scalar) -> Dict[str, Any]:
    return {
        "type": "scalar",
        "terms": [{"piExp": k, "re": _q(s.terms[k][0]), "im": _q(s.terms[k][1])} for k in sorted(s.terms)],
    }


def scalar_from_json(d) -> Scalar:
    return Scalar.from_terms({t["piExp"]: (_unq(t["re"]), _unq(t["im"])) for t in d["terms"]})


def coefficient_to_json(c: RationalCoefficient) -> Dict[str, Any]:
    terms = []
    for mono, s in c.terms():
        terms.append({
            "monomial": [{"var": var_name(v), "exp": e} for v, e in mono],
            "coeff": scalar_to_json(s),
        })
    return {"type": "rational", "rank": c.rank, "denomExp": c.denom_exp, "numerator": terms}


def coefficient_from_json(d) -> RationalCoefficient:
    num = {}
    for t in d["numerator"]:
        mono = tuple(sorted((parse_var(m["var"]), m["exp"]) for m in t["monomial"]))
        for k, v in scalar_from_json(t["coeff"]).terms.items():
            num[(mono, k)] = v
    return RationalCoefficient(num, d["denomExp"], d["rank"], canonical=True)


def form_to_json(w: EquivariantForm) -> Dict[str, Any]:
    terms = []
    for gens in sorted(w.terms, key=lambda g: (len(g), g)):
        terms.append({"generators": [gen_name(g) for g in gens], "coeff": coefficient_to_json(w.terms[gens])})
    return {"type": "form", "rank": w.rank, "terms": terms}


def form_to_json_expanded(w: EquivariantForm) -> Dict[str, Any]:
    """Like :func:`form_to_json` but with one entry per (generators, monomial)."""
    terms = []
    for gens in sorted(w.terms):
        c = w.terms[gens]
        for key in sorted(c.numerator):
            single = RationalCoefficient({key: c.numerator[key]}, c.denom_exp, c.rank, canonical=True)
            terms.append({"generators": [gen_name(g) for g in gens], "coeff": coefficient_to_json(single)})
    return {"type": "form", "rank": w.rank, "terms": terms}


def form_from_json(d) -> EquivariantForm:
    """Inverse of both JSON emitters; repeated generator lists are summed."""
    terms: Dict = {}
    for t in d["terms"]:
        gens = tuple(parse_gen(g) for g in t["generators"])
        c = coefficient_from_json(t["coeff"])
        terms[gens] = terms[gens] + c if gens in terms else c
    return EquivariantForm(terms, d["rank"])


def connection_to_json(c) -> Dict[str, Any]:
    return {
        "type": "connection",
        "rank": c.rank,
        "theta": [[form_to_json(f) for f in row] for row in c.theta],
        "ell": [[coefficient_to_json(x) for x in row] for row in c.ell],
    }


def connection_from_json(d):
    from .connection import Connection
    theta = [[form_from_json(f) for f in row] for row in d["theta"]]
    ell = [[coefficient_from_json(x) for x in row] for row in d["ell"]]
    return Connection.from_lists(theta, ell, d["rank"])


def matrix_to_json(M: List[List[EquivariantForm]]) -> List[List[Dict[str, Any]]]:
    return [[form_to_json(f) for f in row] for row in M]


def triple_to_json(t) -> Dict[str, Any]:
    return {
        "xi0": form_to_json(t.xi0),
        "xi1": form_to_json(t.xi1),
        "xi01": form_to_json(t.xi01),
        "degree": t.degree,
        "representation": t.representation,
    }


def triple_from_json(d):
    from .cech import CechTriple
    return CechTriple(form_from_json(d["xi0"]), form_from_json(d["xi1"]), form_from_json(d["xi01"]),
                      d["degree"], d.get("representation", "proof"))


def dumps(obj) -> str:
    """Canonical JSON text for any supported value."""
    if isinstance(obj, Scalar):
        tree = scalar_to_json(obj)
    elif isinstance(obj, RationalCoefficient):
        tree = coefficient_to_json(obj)
    elif isinstance(obj, EquivariantForm):
        tree = form_to_json(obj)
    elif hasattr(obj, "xi01"):
        tree = triple_to_json(obj)
    elif hasattr(obj, "theta"):
        tree = connection_to_json(obj)
    else:
        tree = obj
    return json.dumps(tree, sort_keys=True, indent=2)


def loads(text: str):
    d = json.loads(text)
    kind = d.get("type") if isinstance(d, dict) else None
    if kind == "scalar":
        return scalar_from_json(d)
    if kind == "rational":
        return coefficient_from_json(d)
    if kind == "form":
        return form_from_json(d)
    if kind == "connection":
        return connection_from_json(d)
    if kind is not None:
        raise ValueError(f"unknown object type {kind!r}")
    if isinstance(d, dict) and "xi01" in d:
        return triple_from_json(d)
    return d
