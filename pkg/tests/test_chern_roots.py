from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st
from sympy.polys.polyfuncs import symmetrize

from eqcdr.chern_roots import (ChernPolynomial, TruncatedSeries, c_top_times_todd_inv, ch_alternating_lambda,
                               ch_series, elementary_symmetric, rr_identity_defect, to_chern_basis,
                               todd_inv_series, todd_series)


def to_sympy(s: TruncatedSeries, syms):
    out = 0
    for e, c in s.items():
        term = sp.Rational(c.numerator, c.denominator)
        for x, n in zip(syms, e):
            term *= x ** n
        out += term
    return sp.expand(out)


def truncate(expr, syms, N):
    poly = sp.Poly(sp.expand(expr), *syms)
    return sp.expand(sum(c * sp.prod([x ** n for x, n in zip(syms, m)])
                         for m, c in poly.terms() if sum(m) <= N))


def sympy_series(expr, syms, N):
    """Multivariate Taylor truncation to total degree N via a scaling variable."""
    eps = sp.Symbol("eps")
    scaled = expr.subs({x: eps * x for x in syms}, simultaneous=True)
    ser = sp.series(scaled, eps, 0, N + 1).removeO()
    return sp.expand(ser.subs(eps, 1))


def test_examples():
    a = sp.Symbol("a")
    assert to_sympy(ch_alternating_lambda(1, 3), [a]) == a - a ** 2 / 2 + a ** 3 / 6
    a1, a2 = sp.symbols("a1 a2")
    assert to_sympy(ch_alternating_lambda(2, 2), [a1, a2]) == a1 * a2
    assert to_sympy(c_top_times_todd_inv(2, 2), [a1, a2]) == a1 * a2
    assert to_sympy(c_top_times_todd_inv(1, 3), [a]) == a - a ** 2 / 2 + a ** 3 / 6
    assert ch_alternating_lambda(0, 3).terms == {(): Fraction(1)}
    assert to_sympy(todd_series(1, 2), [a]) == 1 + a / 2 + a ** 2 / 12
    assert to_sympy(ch_series(1, 2), [a]) == 1 + a + a ** 2 / 2
    assert todd_inv_series(3, 4).constant_term() == 1


def test_order_must_cover_rank():
    with pytest.raises(ValueError):
        ch_alternating_lambda(3, 2)


@pytest.mark.parametrize("l,N", [(1, 6), (2, 4), (3, 3)])
def test_todd_against_sympy(l, N):
    syms = sp.symbols(f"a1:{l + 1}")
    expr = sp.prod([x / (1 - sp.exp(-x)) for x in syms])
    assert to_sympy(todd_series(l, N), syms) == truncate(sympy_series(expr, syms, N), syms, N)


@pytest.mark.parametrize("l,N", [(1, 5), (2, 4)])
def test_ch_against_sympy(l, N):
    syms = sp.symbols(f"a1:{l + 1}")
    expr = sum(sp.exp(x) for x in syms)
    assert to_sympy(ch_series(l, N), syms) == truncate(sympy_series(expr, syms, N), syms, N)


@pytest.mark.parametrize("l,N", [(2, 3), (3, 3)])
def test_alternating_sum_against_sympy(l, N):
    syms = sp.symbols(f"a1:{l + 1}")
    expr = sp.prod([1 - sp.exp(-x) for x in syms])
    assert to_sympy(ch_alternating_lambda(l, N), syms) == truncate(sympy_series(expr, syms, N), syms, N)


@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_rr_identity(l):
    assert not rr_identity_defect(l).terms


def test_todd_inverse():
    s = todd_series(3, 4) * todd_inv_series(3, 4)
    assert s == TruncatedSeries.const(3, 4)


def test_chern_basis_examples():
    a1, a2 = TruncatedSeries.var(1, 2, 3), TruncatedSeries.var(2, 2, 3)
    assert to_chern_basis(a1 + a2) == ChernPolynomial(2, {(1, 0): 1})
    assert to_chern_basis(a1 * a2) == ChernPolynomial(2, {(0, 1): 1})
    td = to_chern_basis(todd_series(2, 2))
    assert td == ChernPolynomial(2, {(0, 0): 1, (1, 0): Fraction(1, 2), (2, 0): Fraction(1, 12),
                                     (0, 1): Fraction(1, 12)})
    assert str(td) == "1 + 1/2*c1 + 1/12*c1^2 + 1/12*c2"


def test_non_symmetric_rejected():
    with pytest.raises(ValueError):
        to_chern_basis(TruncatedSeries.var(1, 2, 2))


@pytest.mark.parametrize("l,N", [(2, 4), (3, 3)])
def test_chern_basis_against_newton_identities(l, N):
    """sympy's symmetric reduction is the oracle."""
    syms = sp.symbols(f"a1:{l + 1}")
    s = todd_series(l, N)
    poly = to_chern_basis(s)
    sym_expr, rest, defs = _symmetrize(to_sympy(s, syms), syms)
    assert rest == 0
    ours = 0
    cs = [sp.Symbol(f"s{k}") for k in range(1, l + 1)]
    for e, c in poly.terms.items():
        ours += sp.Rational(c.numerator, c.denominator) * sp.prod([x ** n for x, n in zip(cs, e)])
    assert sp.expand(ours - sym_expr) == 0


def _symmetrize(expr, syms):
    sym_expr, rest = symmetrize(expr, *syms, formal=True)[:2]
    return sym_expr, rest, None


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.integers(0, 3))
def test_chern_round_trip(coeffs, order_extra):
    l = 2
    N = 2 + order_extra
    terms = {(0, 0): coeffs[0], (1, 0): coeffs[1], (0, 1): coeffs[2], (2, 0): coeffs[3]}
    p = ChernPolynomial(l, terms)
    assert to_chern_basis(p.to_series(N)) == p


def test_elementary_symmetric():
    e2 = elementary_symmetric(2, 3, 3)
    assert set(e2.terms) == {(1, 1, 0), (1, 0, 1), (0, 1, 1)}
