"""Shared test helpers: sympy conversion and small random generators."""
from __future__ import annotations

import random

import sympy as sp

from eqcdr.scalar import Q, RationalCoefficient, Z, ZB, XV, TV, var_index, var_kind, var_z, var_zb, var_x

PI = sp.pi


def sym(code: int):
    kind = var_kind(code)
    idx = var_index(code)
    if kind == Z:
        return sp.Symbol(f"z{idx}")
    if kind == ZB:
        return sp.Symbol(f"w{idx}")  # zbar as an independent variable
    if kind == XV:
        a, b = idx
        return sp.Symbol(f"X{a}{b}")
    return sp.Symbol(f"t{idx}")


def sigma_sym(l: int):
    return sum(sp.Symbol(f"z{i}") * sp.Symbol(f"w{i}") for i in range(1, l + 1))


def to_sympy(c: RationalCoefficient):
    num = 0
    for (mono, k), (re, im) in c.numerator.items():
        term = (sp.Rational(int(re.numerator), int(re.denominator))
                + sp.I * sp.Rational(int(im.numerator), int(im.denominator))) * PI ** k
        for v, e in mono:
            term *= sym(v) ** e
        num += term
    return num / sigma_sym(c.rank) ** c.denom_exp


def sympy_equal(a, b) -> bool:
    return sp.simplify(sp.together(a - b)) == 0


def random_coefficient(rng: random.Random, l: int, terms: int = 3, max_exp: int = 2,
                       with_x: bool = True, max_denom: int = 2) -> RationalCoefficient:
    num = {}
    for _ in range(terms):
        mono = []
        for i in range(1, l + 1):
            for code in (var_z(i), var_zb(i)):
                e = rng.randint(0, max_exp)
                if e:
                    mono.append((code, e))
        if with_x and rng.random() < 0.5:
            mono.append((var_x(rng.randint(1, l), rng.randint(1, l)), 1))
        key = (tuple(sorted(mono)), rng.randint(-1, 1))
        num[key] = (Q(rng.randint(-4, 4), rng.randint(1, 3)), Q(rng.randint(-2, 2)))
    num = {k: v for k, v in num.items() if v[0] or v[1]}
    return RationalCoefficient(num, rng.randint(0, max_denom), l)
