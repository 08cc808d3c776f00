"""Random test objects that respect the U(l) symmetry.

The Bianchi identity and d_eq^2 = 0 only hold for U(l)-invariant data, so the
random connections and random equivariant forms are assembled from invariant
building blocks with random Laurent polynomials in |z|^2 as coefficients.
Everything is driven by an explicit ``random.Random`` so results depend only
on the seed.
"""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from .connection import Connection, FormMatrix
from .forms import EquivariantForm, dz, dzb, form_sum, x_matrix
from .scalar import RationalCoefficient


def random_fraction(rng: random.Random, bound: int = 5) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, 3))


def random_sigma_laurent(l: int, rng: random.Random, lo: int = -1, hi: int = 1,
                         max_terms: int = 2) -> RationalCoefficient:
    """``sum_n c_n |z|^(2n)`` over at most ``max_terms`` random exponents in [lo, hi]."""
    out = RationalCoefficient.const(0, l)
    while out.is_zero():
        exps = rng.sample(range(lo, hi + 1), min(rng.randint(1, max_terms), hi - lo + 1))
        for n in sorted(exps):
            c = RationalCoefficient.const(random_fraction(rng), l)
            if n >= 0:
                out = out + c * RationalCoefficient.sigma(l, n)
            else:
                out = out + RationalCoefficient.over_sigma(c, -n)
    return out


# ---------------------------------------------------------------------------
# invariant one-form matrices
# ---------------------------------------------------------------------------

def _one(l, gen, coef) -> EquivariantForm:
    return EquivariantForm({(gen,): coef}, l)


def del_sigma(l: int) -> EquivariantForm:
    return form_sum((_one(l, dz(k), RationalCoefficient.zb(k, l)) for k in range(1, l + 1)), l)


def delbar_sigma(l: int) -> EquivariantForm:
    return form_sum((_one(l, dzb(k), RationalCoefficient.z(k, l)) for k in range(1, l + 1)), l)


def invariant_theta_blocks(l: int) -> Dict[str, FormMatrix]:
    """Matrices of one-forms transforming like the connection matrix."""
    z = lambda i: RationalCoefficient.z(i, l)
    zb = lambda i: RationalCoefficient.zb(i, l)
    ds, dbs = del_sigma(l), delbar_sigma(l)
    zero = EquivariantForm.zero(l)
    idx = range(1, l + 1)
    return {
        "zb_j dz_i": [[_one(l, dz(i), zb(j)) for j in idx] for i in idx],
        "z_i dzb_j": [[_one(l, dzb(j), z(i)) for j in idx] for i in idx],
        "delta_ij del sigma": [[ds if i == j else zero for j in idx] for i in idx],
        "delta_ij delbar sigma": [[dbs if i == j else zero for j in idx] for i in idx],
        "z_i zb_j del sigma": [[ds * (z(i) * zb(j)) for j in idx] for i in idx],
        "z_i zb_j delbar sigma": [[dbs * (z(i) * zb(j)) for j in idx] for i in idx],
    }


def random_invariant_connection(l: int, rng: random.Random, blocks: int = 2) -> Connection:
    """``theta = sum_b f_b(|z|^2) B_b`` over random invariant blocks, ell = X."""
    table = invariant_theta_blocks(l)
    names = sorted(table)
    theta = [[EquivariantForm.zero(l) for _ in range(l)] for _ in range(l)]
    for name in rng.sample(names, min(blocks, len(names))):
        f = random_sigma_laurent(l, rng)
        B = table[name]
        theta = [[theta[i][j] + B[i][j] * f for j in range(l)] for i in range(l)]
    return Connection.from_lists(theta, x_matrix(l), l)


# ---------------------------------------------------------------------------
# invariant forms
# ---------------------------------------------------------------------------

def _x_bilinear(l: int, left: Callable, right: Callable) -> EquivariantForm:
    X = x_matrix(l)
    parts = []
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            parts.append(left(i) * X[i - 1][j - 1] * right(j))
    return form_sum(parts, l)


def invariant_form_blocks(l: int) -> List[Tuple[str, int, EquivariantForm]]:
    """(name, total degree, form) for U(l)-invariant generators."""
    sc = lambda c: EquivariantForm.scalar(c, l)
    zf = lambda i: sc(RationalCoefficient.z(i, l))
    zbf = lambda i: sc(RationalCoefficient.zb(i, l))
    dzf = lambda i: EquivariantForm({(dz(i),): RationalCoefficient.const(1, l)}, l)
    dzbf = lambda i: EquivariantForm({(dzb(i),): RationalCoefficient.const(1, l)}, l)
    omega = form_sum((dzf(i) * dzbf(i) for i in range(1, l + 1)), l)
    trace = form_sum((sc(RationalCoefficient.X(i, i, l)) for i in range(1, l + 1)), l)
    blocks = [
        ("del sigma", 1, del_sigma(l)),
        ("delbar sigma", 1, delbar_sigma(l)),
        ("omega", 2, omega),
        ("zb X z", 2, _x_bilinear(l, zbf, zf)),
        ("zb X dz", 3, _x_bilinear(l, zbf, dzf)),
        ("dzb X z", 3, _x_bilinear(l, dzbf, zf)),
        ("dzb X dz", 4, _x_bilinear(l, dzbf, dzf)),
        ("tr X", 2, trace),
    ]
    if l > 1:
        from .bm_kernel import minor_x
        full = tuple(range(1, l + 1))
        blocks.append(("det X", 2 * l, sc(minor_x(full, full, l))))
    return blocks


def _random_product(l: int, degree: int, rng: random.Random, blocks) -> EquivariantForm:
    """A random wedge product of blocks with total degree exactly ``degree``."""
    out = EquivariantForm.one(l)
    left = degree
    while left > 0:
        choices = [b for b in blocks if b[1] <= left]
        if not choices:
            return EquivariantForm.zero(l)
        _, d, form = rng.choice(choices)
        out = out * form
        left -= d
    return out


def random_equivariant_form(l: int, rng: random.Random, degree: int, regular: bool = False,
                            terms: int = 2) -> EquivariantForm:
    """Random invariant form of homogeneous total degree ``degree``.

    ``regular`` restricts the |z|^2 coefficients to polynomials, so the form
    extends across the origin.
    """
    blocks = invariant_form_blocks(l)
    parts = []
    for _ in range(terms):
        prod = _random_product(l, degree, rng, blocks)
        f = random_sigma_laurent(l, rng, lo=0 if regular else -2, hi=1)
        parts.append(prod * f)
    return form_sum(parts, l)


def random_polynomial_form(l: int, rng: random.Random, form_degree: int, terms: int = 3,
                           max_exp: int = 2, with_x: bool = True, denominators: bool = True) -> EquivariantForm:
    """A form with random monomial coefficients; no symmetry assumed."""
    gens_all = [dz(i) for i in range(1, l + 1)] + [dzb(i) for i in range(1, l + 1)]
    parts = []
    for _ in range(terms):
        gens = sorted(rng.sample(gens_all, form_degree))
        coef = RationalCoefficient.const(random_fraction(rng), l)
        for i in range(1, l + 1):
            coef = coef * RationalCoefficient.z(i, l) ** rng.randint(0, max_exp)
            coef = coef * RationalCoefficient.zb(i, l) ** rng.randint(0, max_exp)
        if with_x and rng.random() < 0.5:
            coef = coef * RationalCoefficient.X(rng.randint(1, l), rng.randint(1, l), l)
        if denominators and rng.random() < 0.5:
            coef = RationalCoefficient.over_sigma(coef, rng.randint(1, 2))
        parts.append(EquivariantForm({tuple(gens): coef}, l))
    return form_sum(parts, l)


def random_triple(l: int, rng: random.Random, degree: int, relative: bool = False):
    from .cech import CechTriple
    xi0 = EquivariantForm.zero(l) if relative else random_equivariant_form(l, rng, degree)
    xi1 = random_equivariant_form(l, rng, degree, regular=True)
    xi01 = random_equivariant_form(l, rng, degree - 1) if degree >= 1 else EquivariantForm.zero(l)
    return CechTriple(xi0, xi1, xi01, degree)
