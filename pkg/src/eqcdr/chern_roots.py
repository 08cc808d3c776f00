"""Truncated power series in formal Chern roots a_1..a_l.

Used to check the series identity

    sum_i (-1)^i ch(Lambda^i E*) = c_top(E) * td(E)^-1

and to rewrite symmetric series in the elementary symmetric polynomials
c_1..c_l.  Coefficients are exact Fractions; each root has series degree 1.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Tuple

Exp = Tuple[int, ...]


class TruncatedSeries:
    __slots__ = ("nvars", "order", "terms")

    def __init__(self, nvars: int, order: int, terms: Dict[Exp, Fraction] | None = None):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        self.nvars = nvars
        self.order = order
        self.terms = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError("exponent length does not match the number of variables")
            if c and sum(e) <= order:
                self.terms[tuple(e)] = Fraction(c)

    @classmethod
    def const(cls, nvars: int, order: int, value=1) -> "TruncatedSeries":
        return cls(nvars, order, {(0,) * nvars: Fraction(value)})

    @classmethod
    def var(cls, j: int, nvars: int, order: int) -> "TruncatedSeries":
        """The root a_j (1-based)."""
        e = [0] * nvars
        e[j - 1] = 1
        return cls(nvars, order, {tuple(e): Fraction(1)})

    @classmethod
    def univariate(cls, coeffs: Iterable[Fraction], j: int, nvars: int, order: int) -> "TruncatedSeries":
        """``sum_n coeffs[n] a_j^n``."""
        terms = {}
        for n, c in enumerate(coeffs):
            if n > order:
                break
            e = [0] * nvars
            e[j - 1] = n
            terms[tuple(e)] = Fraction(c)
        return cls(nvars, order, terms)

    def _check(self, other: "TruncatedSeries"):
        if other.nvars != self.nvars:
            raise ValueError("series in different numbers of variables")

    def _coerce(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries.const(self.nvars, self.order, other)
        raise TypeError(f"cannot combine series with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return TruncatedSeries(self.nvars, order, out)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.nvars, self.order, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(self.nvars, self.order, {e: c * other for e, c in self.terms.items()})
        other = self._coerce(other)
        order = min(self.order, other.order)
        out: Dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return TruncatedSeries(self.nvars, order, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = TruncatedSeries.const(self.nvars, self.order)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            try:
                other = self._coerce(other)
            except TypeError:
                return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.nvars, min(order, self.order), self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree_part(self, d: int) -> "TruncatedSeries":
        return TruncatedSeries(self.nvars, self.order, {e: c for e, c in self.terms.items() if sum(e) == d})

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; needs a nonzero constant term."""
        c0 = self.constant_term()
        if not c0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        # 1/(c0 (1 + u)) = (1/c0) sum (-u)^n, u has no constant term
        u = self * (1 / c0) - 1
        out = TruncatedSeries.const(self.nvars, self.order)
        power = TruncatedSeries.const(self.nvars, self.order)
        for _ in range(self.order):
            power = power * (-u)
            out = out + power
        return out * (1 / c0)

    def is_symmetric(self) -> bool:
        for e, c in self.terms.items():
            for i in range(self.nvars - 1):
                swapped = list(e)
                swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                if self.terms.get(tuple(swapped)) != c:
                    return False
        return True

    def items(self) -> Iterator[Tuple[Exp, Fraction]]:
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            yield e, self.terms[e]

    def __repr__(self):
        return f"TruncatedSeries({series_to_text(self)}; O({self.order + 1}))"


def _mono_text(e: Exp, prefix: str) -> str:
    parts = []
    for j, n in enumerate(e, start=1):
        if n:
            parts.append(f"{prefix}{j}" if n == 1 else f"{prefix}{j}^{n}")
    return "*".join(parts)


def _poly_text(items, prefix: str) -> str:
    parts = []
    for e, c in items:
        m = _mono_text(e, prefix)
        if not m:
            parts.append(str(c))
        elif c == 1:
            parts.append(m)
        elif c == -1:
            parts.append(f"-{m}")
        else:
            parts.append(f"{c}*{m}")
    return " + ".join(parts).replace("+ -", "- ") if parts else "0"


def series_to_text(s: TruncatedSeries) -> str:
    return _poly_text(s.items(), "a")


# ---------------------------------------------------------------------------
# univariate coefficient lists
# ---------------------------------------------------------------------------

def _exp_coeffs(order: int, sign: int = 1):
    return [Fraction(sign ** n, math.factorial(n)) for n in range(order + 1)]


def _one_minus_exp_neg_over_a(order: int):
    """(1 - e^-a)/a = sum_n (-1)^n a^n / (n+1)!"""
    return [Fraction((-1) ** n, math.factorial(n + 1)) for n in range(order + 1)]


def _check_ln(l: int, N: int):
    if l < 0:
        raise ValueError("rank must be >= 0")
    if N < l:
        raise ValueError("truncation order must be at least the rank")


def exp_series(s: TruncatedSeries) -> TruncatedSeries:
    """``exp(s)`` for a series without constant term."""
    if s.constant_term():
        raise ValueError("exp needs a series without constant term")
    out = TruncatedSeries.const(s.nvars, s.order)
    power = TruncatedSeries.const(s.nvars, s.order)
    for n in range(1, s.order + 1):
        power = power * s
        out = out + power * Fraction(1, math.factorial(n))
    return out


def ch_series(l: int, N: int) -> TruncatedSeries:
    """Chern character ``sum_j exp(a_j)``."""
    if N < 0:
        raise ValueError("truncation order must be >= 0")
    out = TruncatedSeries(l, N)
    for j in range(1, l + 1):
        out = out + TruncatedSeries.univariate(_exp_coeffs(N), j, l, N)
    return out


def todd_series(l: int, N: int) -> TruncatedSeries:
    """``prod_j a_j / (1 - exp(-a_j))``."""
    if N < 0:
        raise ValueError("truncation order must be >= 0")
    out = TruncatedSeries.const(l, N)
    for j in range(1, l + 1):
        factor = TruncatedSeries.univariate(_one_minus_exp_neg_over_a(N), j, l, N)
        out = out * factor.inverse()
    return out


def todd_inv_series(l: int, N: int) -> TruncatedSeries:
    return todd_series(l, N).inverse()


def c_top(l: int, N: int) -> TruncatedSeries:
    out = TruncatedSeries.const(l, N)
    for j in range(1, l + 1):
        out = out * TruncatedSeries.var(j, l, N)
    return out


def ch_alternating_lambda(l: int, N: int) -> TruncatedSeries:
    """``sum_i (-1)^i ch(Lambda^i E*)``, with ch(Lambda^i E*) = e_i(exp(-a))."""
    _check_ln(l, N)
    out = TruncatedSeries(l, N)
    for i in range(l + 1):
        for S in itertools.combinations(range(1, l + 1), i):
            lin = TruncatedSeries(l, N)
            for j in S:
                lin = lin - TruncatedSeries.var(j, l, N)
            term = exp_series(lin)
            out = out + (term if i % 2 == 0 else -term)
    return out


def c_top_times_todd_inv(l: int, N: int) -> TruncatedSeries:
    """``c_l * td^-1`` with td^-1 the series inverse of the Todd series."""
    _check_ln(l, N)
    return c_top(l, N) * todd_inv_series(l, N)


# ---------------------------------------------------------------------------
# Chern basis
# ---------------------------------------------------------------------------

class ChernPolynomial:
    """Polynomial in c_1..c_l; keys are exponent tuples (of c_1, ..., c_l)."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[Exp, Fraction] | None = None):
        self.nvars = nvars
        self.terms = {tuple(e): Fraction(c) for e, c in (terms or {}).items() if c}

    def __eq__(self, other):
        if not isinstance(other, ChernPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def weighted_degree(self, e: Exp) -> int:
        return sum((i + 1) * n for i, n in enumerate(e))

    def items(self):
        for e in sorted(self.terms, key=lambda e: (self.weighted_degree(e), tuple(-x for x in e))):
            yield e, self.terms[e]

    def to_series(self, order: int) -> TruncatedSeries:
        """Back-substitute c_k = e_k(a_1, ..., a_l)."""
        es = [elementary_symmetric(k, self.nvars, order) for k in range(1, self.nvars + 1)]
        out = TruncatedSeries(self.nvars, order)
        for e, c in self.terms.items():
            term = TruncatedSeries.const(self.nvars, order, c)
            for k, n in enumerate(e):
                term = term * es[k] ** n
            out = out + term
        return out

    def __str__(self):
        return _poly_text(self.items(), "c")

    def __repr__(self):
        return f"ChernPolynomial({self})"


def elementary_symmetric(k: int, l: int, order: int) -> TruncatedSeries:
    terms = {}
    for S in itertools.combinations(range(l), k):
        e = [0] * l
        for j in S:
            e[j] = 1
        terms[tuple(e)] = Fraction(1)
    return TruncatedSeries(l, order, terms)


def to_chern_basis(s: TruncatedSeries) -> ChernPolynomial:
    """Rewrite a symmetric series through c_k = e_k(a) by leading-term reduction."""
    if not s.is_symmetric():
        raise ValueError("series is not symmetric in the Chern roots")
    l = s.nvars
    es = [elementary_symmetric(k, l, s.order) for k in range(1, l + 1)]
    rest = TruncatedSeries(l, s.order, s.terms)
    out: Dict[Exp, Fraction] = {}
    while rest.terms:
        lead = max(rest.terms)  # lex-largest exponent is a partition
        c = rest.terms[lead]
        powers = tuple(lead[k] - (lead[k + 1] if k + 1 < l else 0) for k in range(l))
        if any(p < 0 for p in powers):
            raise ValueError("series is not symmetric in the Chern roots")
        out[powers] = out.get(powers, 0) + c
        term = TruncatedSeries.const(l, s.order, c)
        for k, n in enumerate(powers):
            term = term * es[k] ** n
        rest = rest - term
    return ChernPolynomial(l, out)


def rr_identity_defect(l: int, N: int | None = None) -> TruncatedSeries:
    if N is None:
        N = 2 * l + 2
    return ch_alternating_lambda(l, N) - c_top_times_todd_inv(l, N)
