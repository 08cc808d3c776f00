"""Equivariant Chern forms and Bott difference forms.

Determinants are plain Leibniz sums: every curvature entry has even total
degree, so entries commute and no ordering care is needed.  The difference
form of ``p + 1`` connections is obtained by building the curvature of the
affine family over the standard p-simplex (including its dt components),
taking the Chern piece, and integrating the ``dt_1 ^ ... ^ dt_p`` component
over the simplex with the fibre coordinates placed in front:

    rho_*(dt_1 ^ ... ^ dt_p ^ w) = (integral over the simplex) w.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence

from .connection import Connection, curvature, curvature_from
from .forms import EquivariantForm, d_eq, dt, form_sum, is_dt
from .scalar import TV, RationalCoefficient, i_over_2pi, var_kind

FormMatrix = List[List[EquivariantForm]]


def _perm_parity(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_even(M: FormMatrix) -> EquivariantForm:
    """Leibniz determinant of a matrix of even-degree forms."""
    n = len(M)
    rank = M[0][0].rank
    terms = []
    for perm in itertools.permutations(range(n)):
        prod = M[0][perm[0]]
        for i in range(1, n):
            if prod.is_zero():
                break
            prod = prod * M[i][perm[i]]
        if prod.is_zero():
            continue
        terms.append(prod if _perm_parity(perm) > 0 else -prod)
    return form_sum(terms, rank)


def principal_minor_sum(M: FormMatrix, k: int) -> EquivariantForm:
    n = len(M)
    rank = M[0][0].rank
    if k == 0:
        return EquivariantForm.one(rank)
    parts = []
    for rows in itertools.combinations(range(n), k):
        parts.append(det_even([[M[i][j] for j in rows] for i in rows]))
    return form_sum(parts, rank)


def chern_form_of(kappa: FormMatrix, k: int) -> EquivariantForm:
    """Degree-2k part of ``det(I + (i/2pi) kappa)``."""
    n = len(kappa)
    if not 0 <= k <= n:
        raise ValueError(f"Chern degree {k} out of range 0..{n}")
    minors = principal_minor_sum(kappa, k)
    return minors * (i_over_2pi() ** k) if k else minors


def chern_form(c: Connection, k: int) -> EquivariantForm:
    if not 0 <= k <= c.rank:
        raise ValueError(f"Chern degree {k} out of range 0..{c.rank}")
    return chern_form_of(curvature(c), k)


def total_chern_form(c: Connection) -> EquivariantForm:
    kappa = curvature(c)
    return form_sum((chern_form_of(kappa, k) for k in range(c.rank + 1)), c.rank)


# ---------------------------------------------------------------------------
# simplex families
# ---------------------------------------------------------------------------

@dataclass
class SimplexFamily:
    connections: List[Connection]
    rank: int = field(init=False)

    def __post_init__(self):
        if not self.connections:
            raise ValueError("need at least one connection")
        self.rank = self.connections[0].rank
        for c in self.connections:
            if c.rank != self.rank:
                raise ValueError("mismatched ranks in simplex family")
            if c.ell != self.connections[0].ell:
                raise ValueError("ell(X) must agree across the family")

    @property
    def p(self) -> int:
        return len(self.connections) - 1

    def weights(self) -> List[RationalCoefficient]:
        l = self.rank
        ts = [RationalCoefficient.t(nu, l) for nu in range(1, self.p + 1)]
        w0 = RationalCoefficient.const(1, l)
        for t in ts:
            w0 = w0 - t
        return [w0] + ts

    def tilde_theta(self) -> FormMatrix:
        """``(1 - sum t) theta^(0) + sum t_nu theta^(nu)``."""
        l = self.rank
        ws = self.weights()
        out = []
        for i in range(l):
            row = []
            for j in range(l):
                row.append(form_sum((c.theta[i][j] * w for c, w in zip(self.connections, ws)), l))
            out.append(row)
        return out

    def tilde_curvature(self) -> FormMatrix:
        """Equivariant curvature on simplex x C^l, dt components included."""
        return curvature_from(self.tilde_theta(), self.connections[0].ell, self.rank, with_dt=True)


def simplex_moment(exponents: Sequence[int]) -> Fraction:
    """Integral of ``t_1^a_1 ... t_p^a_p`` over the standard p-simplex."""
    p = len(exponents)
    num = 1
    for a in exponents:
        num *= math.factorial(a)
    return Fraction(num, math.factorial(p + sum(exponents)))


def _integrate_t(c: RationalCoefficient, p: int) -> RationalCoefficient:
    out = {}
    for (mono, k), (re, im) in c.numerator.items():
        exps = [0] * p
        rest = []
        for v, e in mono:
            if var_kind(v) == TV:
                nu = v - 20000
                if nu > p:
                    raise ValueError(f"t{nu} outside a {p}-simplex")
                exps[nu - 1] = e
            else:
                rest.append((v, e))
        w = simplex_moment(exps)
        key = (tuple(rest), k)
        val = (re * w, im * w)
        if key in out:
            val = (out[key][0] + val[0], out[key][1] + val[1])
        out[key] = val
    out = {k: v for k, v in out.items() if v[0] or v[1]}
    return RationalCoefficient(out, c.denom_exp, c.rank)


def integrate_over_simplex(w: EquivariantForm, p: int) -> EquivariantForm:
    """Fibre integration along the standard p-simplex (fibre coordinates first)."""
    fiber = tuple(dt(nu) for nu in range(1, p + 1))
    out: Dict = {}
    for gens, c in w.terms.items():
        dts = tuple(g for g in gens if is_dt(g))
        if dts != fiber:
            continue
        base = gens[:len(gens) - p]
        # dt block sits last in storage order; moving it to the front
        sign = -1 if (p * len(base)) % 2 else 1
        val = _integrate_t(c, p)
        if sign < 0:
            val = -val
        out[base] = out[base] + val if base in out else val
    return EquivariantForm(out, w.rank)


def bott_difference(family, k: int) -> EquivariantForm:
    """Bott difference form of degree ``2k - p`` for ``p + 1`` connections."""
    if not isinstance(family, SimplexFamily):
        family = SimplexFamily(list(family))
    if not 0 <= k <= family.rank:
        raise ValueError(f"Chern degree {k} out of range 0..{family.rank}")
    if family.p == 0:
        return chern_form(family.connections[0], k)
    kappa = family.tilde_curvature()
    raw = principal_minor_sum(kappa, k) if k else EquivariantForm.one(family.rank)
    integrated = integrate_over_simplex(raw, family.p)
    return integrated * (i_over_2pi() ** k) if k else integrated


def bott_cocycle_defect(connections: Sequence[Connection], k: int) -> EquivariantForm:
    """``sum_nu (-1)^nu phi(..., hat nu, ...) + (-1)^p d_eq phi(all)``; should vanish."""
    connections = list(connections)
    p = len(connections) - 1
    if p < 1:
        raise ValueError("need at least two connections")
    rank = connections[0].rank
    parts = []
    for nu in range(p + 1):
        sub = connections[:nu] + connections[nu + 1:]
        term = bott_difference(sub, k)
        parts.append(term if nu % 2 == 0 else -term)
    top = d_eq(bott_difference(connections, k))
    parts.append(top if p % 2 == 0 else -top)
    return form_sum(parts, rank)
