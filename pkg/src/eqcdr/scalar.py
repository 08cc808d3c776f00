"""Exact coefficient arithmetic.

Two layers live here:

* :class:`Scalar` -- elements of ``Q(i)[pi, 1/pi]``, stored as a map from the
  exponent of pi to a Gaussian rational.
* :class:`RationalCoefficient` -- ``P(z, zbar, X, t) / |z|^(2m)`` where ``P`` is
  a polynomial with Scalar coefficients.  Every coefficient that shows up in
  the Bochner-Martinelli computations has this shape, so no general
  rational-function field is needed.

Internally a polynomial is a plain dict keyed by ``(monomial, pi_exponent)``
with ``(re, im)`` pairs of exact rationals as values; a monomial is a tuple of
``(variable_code, exponent)`` pairs sorted by code.  Keeping pi as a Laurent
"variable" of the key avoids allocating Scalar objects in inner loops.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, Mapping, Optional, Tuple

import numpy as np
from gmpy2 import mpq

# exact rational type of the polynomial kernel; gmpy2's mpq interoperates with
# Fraction (equality, hashing, mixed arithmetic) and is an order of magnitude faster
Q = mpq
_Q_TYPE = type(mpq(0))
RATIONAL_TYPES = (int, Fraction, _Q_TYPE)

Monomial = Tuple[Tuple[int, int], ...]
Key = Tuple[Monomial, int]
GaussRat = Tuple[Any, Any]
Poly = Dict[Key, GaussRat]

_ZERO = Q(0)
_ONE = Q(1)

# ---------------------------------------------------------------------------
# variables
# ---------------------------------------------------------------------------

Z, ZB, XV, TV = 0, 1, 2, 3
_KIND_BASE = {Z: 0, ZB: 1000, XV: 10000, TV: 20000}


def var_z(i: int) -> int:
    return i


def var_zb(i: int) -> int:
    return 1000 + i


def var_x(a: int, b: int) -> int:
    return 10000 + 100 * a + b


def var_t(nu: int) -> int:
    return 20000 + nu


def var_kind(code: int) -> int:
    if code < 1000:
        return Z
    if code < 10000:
        return ZB
    if code < 20000:
        return XV
    return TV


def var_index(code: int):
    kind = var_kind(code)
    if kind == XV:
        return divmod(code - 10000, 100)
    return code - _KIND_BASE[kind]


def var_name(code: int) -> str:
    kind = var_kind(code)
    if kind == Z:
        return f"z{code}"
    if kind == ZB:
        return f"zb{code - 1000}"
    if kind == XV:
        a, b = divmod(code - 10000, 100)
        return f"X{a}{b}" if a < 10 and b < 10 else f"X{a}_{b}"
    return f"t{code - 20000}"


def parse_var(name: str) -> int:
    if name.startswith("zb"):
        return var_zb(int(name[2:]))
    if name.startswith("z"):
        return var_z(int(name[1:]))
    if name.startswith("X"):
        body = name[1:]
        if "_" in body:
            a, b = body.split("_")
        else:
            a, b = body[0], body[1:]
        return var_x(int(a), int(b))
    if name.startswith("t"):
        return var_t(int(name[1:]))
    raise ValueError(f"unknown variable {name!r}")


# ---------------------------------------------------------------------------
# Gaussian rationals and scalars
# ---------------------------------------------------------------------------

def _gmul(a: GaussRat, b: GaussRat) -> GaussRat:
    ar, ai = a
    br, bi = b
    if not ai and not bi:
        return (ar * br, _ZERO)
    return (ar * br - ai * bi, ar * bi + ai * br)


def _gadd(a: GaussRat, b: GaussRat) -> GaussRat:
    ai, bi = a[1], b[1]
    if not bi:
        return (a[0] + b[0], ai)
    if not ai:
        return (a[0] + b[0], bi)
    return (a[0] + b[0], ai + bi)


def _gneg(a: GaussRat) -> GaussRat:
    return (-a[0], -a[1])


class Scalar:
    """An exact element ``sum_k c_k pi^k`` with Gaussian-rational ``c_k``."""

    __slots__ = ("terms",)

    def __init__(self, re=0, im=0, pi: int = 0):
        re, im = Q(re), Q(im)
        self.terms: Dict[int, GaussRat] = {pi: (re, im)} if (re or im) else {}

    @classmethod
    def from_terms(cls, terms: Mapping[int, GaussRat]) -> "Scalar":
        obj = cls.__new__(cls)
        obj.terms = {k: (Q(v[0]), Q(v[1])) for k, v in terms.items() if v[0] or v[1]}
        return obj

    @classmethod
    def coerce(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, RATIONAL_TYPES):
            return cls(value)
        if isinstance(value, complex) and value.real.is_integer() and value.imag.is_integer():
            return cls(int(value.real), int(value.imag))
        raise TypeError(f"cannot convert {type(value).__name__} to an exact Scalar")

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = _gadd(out[k], v) if k in out else v
        return Scalar.from_terms(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar.from_terms({k: _gneg(v) for k, v in self.terms.items()})

    def __sub__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        out: Dict[int, GaussRat] = {}
        for k1, a in self.terms.items():
            for k2, b in other.terms.items():
                k = k1 + k2
                p = _gmul(a, b)
                out[k] = _gadd(out[k], p) if k in out else p
        return Scalar.from_terms(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * Scalar.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "Scalar":
        """Inverse of a single-term scalar ``c pi^k``; sums are not units here."""
        if len(self.terms) != 1:
            raise ZeroDivisionError("only monomial scalars c*pi^k are invertible")
        (k, (a, b)), = self.terms.items()
        den = a * a + b * b
        return Scalar(a / den, -b / den, -k)

    def conjugate(self) -> "Scalar":
        return Scalar.from_terms({k: (a, -b) for k, (a, b) in self.terms.items()})

    # comparison ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # evaluation / display ----------------------------------------------
    def evaluate(self, pi: float = math.pi) -> complex:
        return sum((complex(float(a), float(b)) * pi ** k for k, (a, b) in self.terms.items()), 0j)

    def __complex__(self):
        return self.evaluate()

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms):
            parts.append(_gauss_str(self.terms[k]) + ("" if k == 0 else f"*pi^{k}"))
        return " + ".join(parts)


def _gauss_str(c: GaussRat) -> str:
    a, b = c
    if not b:
        return str(a)
    if not a:
        return "i" if b == 1 else ("-i" if b == -1 else f"{b}i")
    return f"({a}{'+' if b > 0 else '-'}{abs(b)}i)"


I = Scalar(0, 1)
PI = Scalar(1, 0, 1)
ONE = Scalar(1)


def i_over_2pi() -> Scalar:
    """The Chern normalisation sqrt(-1)/(2 pi) = (i/2) pi^-1."""
    return Scalar(0, Fraction(1, 2), -1)


# ---------------------------------------------------------------------------
# polynomial kernel (dict based)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1 << 18)
def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    if a[-1][0] < b[0][0]:
        return a + b
    if b[-1][0] < a[0][0]:
        return b + a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial, kind: int) -> int:
    return sum(e for v, e in m if var_kind(v) == kind)


def _lex_key(key: Key):
    mono, k = key
    return (tuple((-v, e) for v, e in mono), k)


def poly_add(p: Poly, q: Poly) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = dict(p)
    for k, v in q.items():
        if k in out:
            s = _gadd(out[k], v)
            if s[0] or s[1]:
                out[k] = s
            else:
                del out[k]
        else:
            out[k] = v
    return out


def poly_iadd(out: Poly, q: Poly, sign: int = 1) -> None:
    """In-place ``out += sign*q``."""
    for k, v in q.items():
        if sign < 0:
            v = _gneg(v)
        if k in out:
            s = _gadd(out[k], v)
            if s[0] or s[1]:
                out[k] = s
            else:
                del out[k]
        else:
            out[k] = v


def poly_neg(p: Poly) -> Poly:
    return {k: _gneg(v) for k, v in p.items()}


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (m1, k1), a in p.items():
        for (m2, k2), b in q.items():
            key = (mono_mul(m1, m2), k1 + k2)
            c = _gmul(a, b)
            if key in out:
                c = _gadd(out[key], c)
                if c[0] or c[1]:
                    out[key] = c
                else:
                    del out[key]
            else:
                out[key] = c
    return out


def poly_scale(p: Poly, s: Scalar) -> Poly:
    out: Poly = {}
    for (m, k), a in p.items():
        for ks, b in s.terms.items():
            key = (m, k + ks)
            c = _gmul(a, b)
            if key in out:
                c = _gadd(out[key], c)
                if c[0] or c[1]:
                    out[key] = c
                else:
                    del out[key]
            else:
                out[key] = c
    return out


def poly_const(s: Scalar) -> Poly:
    return {((), k): v for k, v in s.terms.items()}


def poly_var(code: int, power: int = 1) -> Poly:
    if power == 0:
        return {((), 0): (_ONE, _ZERO)}
    return {(((code, power),), 0): (_ONE, _ZERO)}


def poly_diff(p: Poly, code: int) -> Poly:
    out: Poly = {}
    for (m, k), (a, b) in p.items():
        for idx, (v, e) in enumerate(m):
            if v == code:
                rest = m[:idx] + (((v, e - 1),) if e > 1 else ()) + m[idx + 1:]
                out[(rest, k)] = (a * e, b * e)
                break
    return out


@lru_cache(maxsize=None)
def _sigma_pow_cached(l: int, n: int):
    if n == 0:
        return ((((), 0), (_ONE, _ZERO)),)
    sigma = {(((var_z(i), 1), (var_zb(i), 1)), 0): (_ONE, _ZERO) for i in range(1, l + 1)}
    prev = dict(_sigma_pow_cached(l, n - 1))
    return tuple(poly_mul(prev, sigma).items())


def sigma_pow(l: int, n: int) -> Poly:
    """``(|z|^2)^n`` as a polynomial in ``z_1..z_l, zb_1..zb_l``."""
    return dict(_sigma_pow_cached(l, n))


_MOD = (1 << 61) - 1  # prime


@lru_cache(maxsize=None)
def _null_point(l: int):
    """A point of {sum z_i zb_i = 0} mod a large prime, z and zb independent."""
    vals = {}
    for code in list(range(1, l + 1)) + [1000 + i for i in range(2, l + 1)]:
        vals[code] = (code * 0x9E3779B97F4A7C15 + 0x2545F4914F6CDD1D) % _MOD or 1
    acc = sum(vals[i] * vals[1000 + i] for i in range(2, l + 1)) % _MOD
    vals[var_zb(1)] = (-acc * pow(vals[1], _MOD - 2, _MOD)) % _MOD
    return vals


@lru_cache(maxsize=1 << 18)
def _mono_mod(mono: Monomial, l: int) -> int:
    point = _null_point(l)
    m = 1
    for v, e in mono:
        x = point.get(v)
        if x is None:
            x = (v * 0x9E3779B97F4A7C15 + 0x2545F4914F6CDD1D) % _MOD or 1
        m = m * pow(x, e, _MOD) % _MOD
    return m


@lru_cache(maxsize=1 << 16)
def _rat_mod(num: int, den: int) -> Optional[int]:
    den %= _MOD
    if not den:
        return None
    return num % _MOD * pow(den, _MOD - 2, _MOD) % _MOD


def _vanishes_on_sigma(p: Poly, l: int) -> bool:
    """Necessary condition for |z|^2 | p: every real/imaginary pi-component of
    ``p`` vanishes at a point of the complexified null cone (mod a prime)."""
    acc: Dict[Tuple[int, int], int] = {}
    for (mono, k), (a, b) in p.items():
        m = _mono_mod(mono, l)
        for part, q in ((0, a), (1, b)):
            if not q:
                continue
            c = _rat_mod(int(q.numerator), int(q.denominator))
            if c is None:
                return True
            key = (k, part)
            acc[key] = (acc.get(key, 0) + c * m) % _MOD
    return not any(acc.values())


def poly_div_sigma(p: Poly, l: int) -> Optional[Poly]:
    """Exact quotient ``p / |z|^2`` or None when |z|^2 does not divide ``p``.

    Division by ``sigma = z1*zb1 + s'`` with respect to the term ``z1*zb1``.
    Dividing a term with ``m = min(deg_z1, deg_zb1)`` only produces terms with
    ``m - 1`` (``s'`` has no z1, zb1), so terms are handled in buckets of
    decreasing ``m``; ``p`` is divisible iff bucket 0 cancels completely.  A
    modular evaluation on the null cone rejects most non-divisible inputs first.
    """
    if not p:
        return {}
    if not _vanishes_on_sigma(p, l):
        return None
    lead_z, lead_zb = var_z(1), var_zb(1)
    rest = [((var_z(i), 1), (var_zb(i), 1)) for i in range(2, l + 1)]
    buckets: Dict[int, Poly] = {}
    for key, c in p.items():
        d = dict(key[0])
        m = min(d.get(lead_z, 0), d.get(lead_zb, 0))
        buckets.setdefault(m, {})[key] = c
    quot: Poly = {}
    for m in range(max(buckets), 0, -1):
        bucket = buckets.get(m)
        if not bucket:
            continue
        low = buckets.setdefault(m - 1, {})
        for (mono, k), c in bucket.items():
            qmono = tuple((v, e - 1) if v in (lead_z, lead_zb) else (v, e) for v, e in mono)
            qmono = tuple(ve for ve in qmono if ve[1])
            quot[(qmono, k)] = c
            if rest:
                neg = _gneg(c)
                for r in rest:
                    key = (mono_mul(qmono, r), k)
                    if key in low:
                        val = _gadd(low[key], neg)
                        if val[0] or val[1]:
                            low[key] = val
                        else:
                            del low[key]
                    else:
                        low[key] = neg
    if buckets.get(0):
        return None
    return quot


def poly_subs(p: Poly, values: Mapping[int, Poly]) -> Poly:
    """Substitute polynomials for variables."""
    out: Poly = {}
    for (m, k), c in p.items():
        term: Poly = {((), k): c}
        keep = []
        for v, e in m:
            if v in values:
                for _ in range(e):
                    term = poly_mul(term, values[v])
            else:
                keep.append((v, e))
        if keep:
            term = poly_mul(term, {(tuple(keep), 0): (_ONE, _ZERO)})
        poly_iadd(out, term)
    return out


# ---------------------------------------------------------------------------
# RationalCoefficient
# ---------------------------------------------------------------------------

class RationalCoefficient:
    """``numerator / |z|^(2*denom_exp)`` on C^rank, kept in canonical form.

    Canonical form means the numerator is not divisible by ``|z|^2`` whenever
    ``denom_exp > 0``; with that, equality is plain structural equality.
    """

    __slots__ = ("numerator", "denom_exp", "rank")

    def __init__(self, numerator: Poly, denom_exp: int, rank: int, canonical: bool = False):
        if denom_exp < 0:
            raise ValueError("denominator exponent must be non-negative")
        self.rank = rank
        if not numerator:
            self.numerator, self.denom_exp = {}, 0
            return
        if not canonical:
            while denom_exp > 0:
                q = poly_div_sigma(numerator, rank)
                if q is None:
                    break
                numerator, denom_exp = q, denom_exp - 1
        self.numerator = numerator
        self.denom_exp = denom_exp

    # constructors -------------------------------------------------------
    @classmethod
    def const(cls, value, rank: int) -> "RationalCoefficient":
        return cls(poly_const(Scalar.coerce(value)), 0, rank, canonical=True)

    @classmethod
    def var(cls, code: int, rank: int, power: int = 1) -> "RationalCoefficient":
        return cls(poly_var(code, power), 0, rank, canonical=True)

    @classmethod
    def z(cls, i: int, rank: int):
        return cls.var(var_z(i), rank)

    @classmethod
    def zb(cls, i: int, rank: int):
        return cls.var(var_zb(i), rank)

    @classmethod
    def X(cls, a: int, b: int, rank: int):
        return cls.var(var_x(a, b), rank)

    @classmethod
    def t(cls, nu: int, rank: int):
        return cls.var(var_t(nu), rank)

    @classmethod
    def sigma(cls, rank: int, power: int = 1):
        return cls(sigma_pow(rank, power), 0, rank, canonical=True)

    @classmethod
    def over_sigma(cls, numerator: "RationalCoefficient", m: int) -> "RationalCoefficient":
        return cls(dict(numerator.numerator), numerator.denom_exp + m, numerator.rank)

    def coerce(self, other) -> "RationalCoefficient":
        if isinstance(other, RationalCoefficient):
            if other.rank != self.rank:
                raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")
            return other
        return RationalCoefficient.const(other, self.rank)

    # arithmetic ---------------------------------------------------------
    def _lift(self, m: int) -> Poly:
        if m == self.denom_exp:
            return self.numerator
        return poly_mul(self.numerator, sigma_pow(self.rank, m - self.denom_exp))

    def __add__(self, other):
        try:
            other = self.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.numerator:
            return self
        if not self.numerator:
            return other
        m = max(self.denom_exp, other.denom_exp)
        num = poly_add(self._lift(m), other._lift(m))
        return RationalCoefficient(num, m, self.rank)

    __radd__ = __add__

    def __neg__(self):
        return RationalCoefficient(poly_neg(self.numerator), self.denom_exp, self.rank, canonical=True)

    def __sub__(self, other):
        try:
            other = self.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Scalar) or isinstance(other, RATIONAL_TYPES):
            s = Scalar.coerce(other)
            return RationalCoefficient(poly_scale(self.numerator, s), self.denom_exp, self.rank, canonical=True)
        if not isinstance(other, RationalCoefficient):
            return NotImplemented
        other = self.coerce(other)
        if not self.numerator or not other.numerator:
            return RationalCoefficient({}, 0, self.rank)
        num = poly_mul(self.numerator, other.numerator)
        m = self.denom_exp + other.denom_exp
        if m == 0:
            return RationalCoefficient(num, 0, self.rank, canonical=True)
        return RationalCoefficient(num, m, self.rank)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        result = RationalCoefficient.const(1, self.rank)
        for _ in range(n):
            result = result * self
        return result

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.numerator

    def __bool__(self):
        return bool(self.numerator)

    def __eq__(self, other):
        if not isinstance(other, RationalCoefficient):
            try:
                other = self.coerce(other)
            except TypeError:
                return NotImplemented
        return (self.rank == other.rank and self.denom_exp == other.denom_exp
                and self.numerator == other.numerator)

    def equals_by_cross_multiplication(self, other: "RationalCoefficient") -> bool:
        """``P1 * sigma^m2 == P2 * sigma^m1``; independent of canonical form."""
        lhs = poly_mul(self.numerator, sigma_pow(self.rank, other.denom_exp))
        rhs = poly_mul(other.numerator, sigma_pow(self.rank, self.denom_exp))
        return lhs == rhs

    def __hash__(self):
        return hash((self.rank, self.denom_exp, frozenset(self.numerator.items())))

    def variables(self) -> set:
        return {v for (m, _k) in self.numerator for v, _e in m}

    def x_degrees(self) -> set:
        return {mono_degree(m, XV) for (m, _k) in self.numerator}

    def x_piece(self, p: int) -> "RationalCoefficient":
        """The part of X-degree exactly ``p``."""
        num = {key: c for key, c in self.numerator.items() if mono_degree(key[0], XV) == p}
        return RationalCoefficient(num, self.denom_exp, self.rank)

    def is_constant(self) -> bool:
        return self.denom_exp == 0 and all(not m for (m, _k) in self.numerator)

    def as_scalar(self) -> Scalar:
        if not self.is_constant():
            raise ValueError("coefficient depends on variables")
        return Scalar.from_terms({k: c for (m, k), c in self.numerator.items()})

    def terms(self) -> Iterable[Tuple[Monomial, Scalar]]:
        """Numerator as (monomial, Scalar) pairs in deterministic order."""
        grouped: Dict[Monomial, Dict[int, GaussRat]] = {}
        for (m, k), c in self.numerator.items():
            grouped.setdefault(m, {})[k] = c
        for m in sorted(grouped, key=lambda mm: _lex_key((mm, 0)), reverse=True):
            yield m, Scalar.from_terms(grouped[m])

    # calculus -----------------------------------------------------------
    def diff(self, code: int) -> "RationalCoefficient":
        """Partial derivative; the |z|^2 denominator is differentiated too."""
        dp = RationalCoefficient(poly_diff(self.numerator, code), self.denom_exp, self.rank)
        m = self.denom_exp
        kind = var_kind(code)
        if m == 0 or kind not in (Z, ZB):
            return dp
        i = var_index(code)
        partner = var_zb(i) if kind == Z else var_z(i)
        # d/dv sigma^-m = -m * partner * sigma^-(m+1)
        corr = RationalCoefficient(poly_mul(self.numerator, poly_var(partner)), m + 1, self.rank)
        return dp - corr * m

    def subs(self, values: Mapping[int, "RationalCoefficient"]) -> "RationalCoefficient":
        """Substitute polynomial (denominator-free) values for X or t variables."""
        polys = {}
        for code, val in values.items():
            val = self.coerce(val)
            if val.denom_exp:
                raise ValueError("substituted values must be polynomials")
            if var_kind(code) in (Z, ZB):
                raise ValueError("substitution for z variables would break the |z|^2 denominator")
            polys[code] = val.numerator
        return RationalCoefficient(poly_subs(self.numerator, polys), self.denom_exp, self.rank)

    def restrict_to_unit_sphere(self) -> Poly:
        """Numerator polynomial; on |z| = 1 the denominator is 1."""
        return dict(self.numerator)

    # numerics -----------------------------------------------------------
    def evaluate(self, z, X=None, t=None, pi: float = math.pi) -> complex:
        """Float value at ``z`` (zbar is taken as the conjugate of z)."""
        z = np.asarray(z, dtype=complex)
        sigma = float(np.sum(np.abs(z) ** 2))
        if self.denom_exp and sigma == 0.0:
            raise ZeroDivisionError("|z| = 0 with a |z|^2 denominator")
        vals = _numeric_values(z, X, t)
        total = 0j
        for (m, k), (a, b) in self.numerator.items():
            term = complex(float(a), float(b)) * pi ** k
            for v, e in m:
                term *= vals(v) ** e
            total += term
        return total / sigma ** self.denom_exp

    def evaluate_array(self, z: np.ndarray, X=None, t=None, pi: float = math.pi) -> np.ndarray:
        """Vectorised evaluation over points ``z`` of shape (N, rank)."""
        z = np.asarray(z, dtype=complex)
        sigma = np.sum(np.abs(z) ** 2, axis=1)
        out = np.zeros(z.shape[0], dtype=complex)
        cache = {}
        for (m, k), (a, b) in self.numerator.items():
            term = np.full(z.shape[0], complex(float(a), float(b)) * pi ** k)
            for v, e in m:
                base = cache.get(v)
                if base is None:
                    base = cache[v] = _array_value(v, z, X, t)
                term = term * base ** e
            out += term
        if self.denom_exp:
            out = out / sigma ** self.denom_exp
        return out

    def __repr__(self):
        from .serialize import coefficient_to_text
        return f"RationalCoefficient({coefficient_to_text(self)})"


def _numeric_values(z, X, t):
    def value(code):
        kind = var_kind(code)
        if kind == Z:
            return z[code - 1]
        if kind == ZB:
            return np.conj(z[code - 1001])
        if kind == XV:
            if X is None:
                raise ValueError("X values required")
            a, b = var_index(code)
            return complex(np.asarray(X)[a - 1, b - 1])
        if t is None:
            raise ValueError("t values required")
        return complex(t[code - 20001])
    return value


def _array_value(code, z, X, t):
    kind = var_kind(code)
    if kind == Z:
        return z[:, code - 1]
    if kind == ZB:
        return np.conj(z[:, code - 1001])
    if kind == XV:
        if X is None:
            raise ValueError("X values required")
        a, b = var_index(code)
        return np.full(z.shape[0], complex(np.asarray(X)[a - 1, b - 1]))
    if t is None:
        raise ValueError("t values required")
    return np.full(z.shape[0], complex(t[code - 20001]))


def add(a: RationalCoefficient, b: RationalCoefficient) -> RationalCoefficient:
    return a + b


def mul(a: RationalCoefficient, b: RationalCoefficient) -> RationalCoefficient:
    return a * b


def eval_numeric(a: RationalCoefficient, z, X=None, t=None, pi: float = math.pi) -> complex:
    return a.evaluate(z, X=X, t=t, pi=pi)
