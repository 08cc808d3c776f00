"""Cartan-model equivariant differential forms on C^l.

A form is a finite map from strictly increasing generator tuples to
:class:`~eqcdr.scalar.RationalCoefficient`.  Generators are small ints with the
global order ``dz_1 < ... < dz_l < dzb_1 < ... < dzb_l < dt_1 < ... < dt_p``;
the Koszul sign is applied whenever a product is re-sorted, so equality of
forms is equality of their term maps.

Contraction follows the fundamental field of ``m -> exp(-sX) m``, i.e.
``iota_X dz_i = -sum_k X_ik z_k`` and ``iota_X dzb_i = +sum_k X_ki zb_k``
(the latter uses ``conj(X_ik) = -X_ki`` on u(l)).
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .scalar import (
    RationalCoefficient,
    Scalar,
    TV,
    Z,
    ZB,
    var_kind,
    var_x,
    var_z,
    var_zb,
)

Gens = Tuple[int, ...]

DZ_BASE, DZB_BASE, DT_BASE = 0, 1000, 2000


def dz(i: int) -> int:
    return DZ_BASE + i


def dzb(i: int) -> int:
    return DZB_BASE + i


def dt(nu: int) -> int:
    return DT_BASE + nu


def is_dt(g: int) -> bool:
    return g > DT_BASE


def gen_name(g: int) -> str:
    if g > DT_BASE:
        return f"dt{g - DT_BASE}"
    if g > DZB_BASE:
        return f"dzb{g - DZB_BASE}"
    return f"dz{g}"


def parse_gen(name: str) -> int:
    if name.startswith("dzb"):
        return dzb(int(name[3:]))
    if name.startswith("dz"):
        return dz(int(name[2:]))
    if name.startswith("dt"):
        return dt(int(name[2:]))
    raise ValueError(f"unknown generator {name!r}")


class DtGeneratorError(ValueError):
    """An operation defined on C^l only met a dt generator."""


@lru_cache(maxsize=65536)
def merge_sign(a: Gens, b: Gens) -> Tuple[int, Optional[Gens]]:
    """Sign and sorted union for ``e_a ^ e_b``; ``(0, None)`` on overlap."""
    if not a:
        return 1, b
    if not b:
        return 1, a
    inversions = 0
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        elif a[i] > b[j]:
            out.append(b[j])
            inversions += len(a) - i
            j += 1
        else:
            return 0, None
    out.extend(a[i:])
    out.extend(b[j:])
    return (-1 if inversions & 1 else 1), tuple(out)


def _insert_sign(g: int, gens: Gens) -> Tuple[int, Optional[Gens]]:
    return merge_sign((g,), gens)


class EquivariantForm:
    """A (mixed-degree) equivariant form on C^rank, possibly with dt factors."""

    __slots__ = ("terms", "rank")

    def __init__(self, terms: Dict[Gens, RationalCoefficient], rank: int):
        self.rank = rank
        self.terms = {g: c for g, c in terms.items() if not c.is_zero()}

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, rank: int) -> "EquivariantForm":
        return cls({}, rank)

    @classmethod
    def scalar(cls, value, rank: int) -> "EquivariantForm":
        if isinstance(value, RationalCoefficient):
            return cls({(): value}, rank)
        return cls({(): RationalCoefficient.const(value, rank)}, rank)

    @classmethod
    def one(cls, rank: int) -> "EquivariantForm":
        return cls.scalar(1, rank)

    @classmethod
    def basis(cls, gens: Sequence[int], rank: int, coeff=1) -> "EquivariantForm":
        """``coeff * d(g_1) ^ ... ^ d(g_k)`` in the given (unsorted) order."""
        out = cls.scalar(coeff, rank)
        for g in reversed(list(gens)):
            out = cls({(g,): RationalCoefficient.const(1, rank)}, rank) * out
        return out

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "EquivariantForm"):
        if other.rank != self.rank:
            raise ValueError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other):
        if not isinstance(other, EquivariantForm):
            if isinstance(other, (int, Scalar, RationalCoefficient)):
                other = EquivariantForm.scalar(other, self.rank)
            else:
                return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out[g] + c if g in out else c
        return EquivariantForm(out, self.rank)

    __radd__ = __add__

    def __neg__(self):
        return EquivariantForm({g: -c for g, c in self.terms.items()}, self.rank)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, EquivariantForm):
            return wedge(self, other)
        if isinstance(other, (int, Scalar, RationalCoefficient)) or hasattr(other, "denominator"):
            return EquivariantForm({g: c * other for g, c in self.terms.items()}, self.rank)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, EquivariantForm):
            return wedge(other, self)
        return self.__mul__(other)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, EquivariantForm):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # structure ----------------------------------------------------------
    def form_degrees(self) -> set:
        return {len(g) for g in self.terms}

    def piece(self, form_degree: int) -> "EquivariantForm":
        return EquivariantForm({g: c for g, c in self.terms.items() if len(g) == form_degree}, self.rank)

    def x_strata(self) -> Dict[int, "EquivariantForm"]:
        """Split by polynomial degree in the X variables."""
        out: Dict[int, Dict[Gens, RationalCoefficient]] = {}
        for g, c in self.terms.items():
            for p in c.x_degrees():
                out.setdefault(p, {})[g] = c.x_piece(p)
        return {p: EquivariantForm(t, self.rank) for p, t in sorted(out.items())}

    def total_degrees(self) -> set:
        return {len(g) + 2 * p for g, c in self.terms.items() for p in c.x_degrees()}

    def has_dt(self) -> bool:
        return any(is_dt(x) for g in self.terms for x in g)

    @property
    def simplex_dim(self) -> int:
        p = 0
        for g, c in self.terms.items():
            for x in g:
                if is_dt(x):
                    p = max(p, x - DT_BASE)
            for v in c.variables():
                if var_kind(v) == TV:
                    p = max(p, v - 20000)
        return p

    def max_denom_exp(self) -> int:
        return max((c.denom_exp for c in self.terms.values()), default=0)

    def coefficient(self, gens: Sequence[int]) -> RationalCoefficient:
        """Coefficient of ``d(g_1)^...^d(g_k)`` with the given generator order."""
        gens = tuple(gens)
        srt = tuple(sorted(gens))
        if len(set(gens)) != len(gens):
            return RationalCoefficient.const(0, self.rank)
        c = self.terms.get(srt)
        if c is None:
            return RationalCoefficient.const(0, self.rank)
        sign, _ = _permutation_sign(gens)
        return c if sign > 0 else -c

    def map_coefficients(self, fn) -> "EquivariantForm":
        return EquivariantForm({g: fn(c) for g, c in self.terms.items()}, self.rank)

    def subs(self, values) -> "EquivariantForm":
        return self.map_coefficients(lambda c: c.subs(values))

    def set_x_zero(self) -> "EquivariantForm":
        return self.x_strata().get(0, EquivariantForm.zero(self.rank))

    # calculus -----------------------------------------------------------
    def d(self) -> "EquivariantForm":
        return exterior_derivative(self)

    def d_eq(self) -> "EquivariantForm":
        return d_eq(self)

    def contract_x(self) -> "EquivariantForm":
        return contract_x(self)

    # numerics -----------------------------------------------------------
    def evaluate(self, z, vectors: Sequence = (), X=None, t=None) -> complex:
        """Value of the degree-k part on k real tangent vectors.

        Tangent vectors are given as complex l-vectors ``w``, so that
        ``dz_j(w) = w_j`` and ``dzb_j(w) = conj(w_j)``.
        """
        k = len(vectors)
        vecs = [np.asarray(v, dtype=complex) for v in vectors]
        total = 0j
        for g, c in self.terms.items():
            if len(g) != k:
                continue
            if any(is_dt(x) for x in g):
                raise DtGeneratorError("numeric evaluation only covers C^l generators")
            mat = np.array([[_gen_on_vector(x, w) for w in vecs] for x in g], dtype=complex)
            det = np.linalg.det(mat) if k else 1.0
            total += c.evaluate(z, X=X, t=t) * det
        return complex(total)

    def __repr__(self):
        from .serialize import form_to_text
        return f"EquivariantForm({form_to_text(self)})"


def _gen_on_vector(g: int, w: np.ndarray) -> complex:
    if g > DZB_BASE:
        return np.conj(w[g - DZB_BASE - 1])
    return w[g - 1]


def _permutation_sign(seq: Sequence[int]):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign, tuple(sorted(seq))


# ---------------------------------------------------------------------------
# products and derivations
# ---------------------------------------------------------------------------

def wedge(a: EquivariantForm, b: EquivariantForm) -> EquivariantForm:
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")
    out: Dict[Gens, RationalCoefficient] = {}
    for ga, ca in a.terms.items():
        for gb, cb in b.terms.items():
            sign, g = merge_sign(ga, gb)
            if not sign:
                continue
            c = ca * cb
            if sign < 0:
                c = -c
            out[g] = out[g] + c if g in out else c
    return EquivariantForm(out, a.rank)


def _gradient(c: RationalCoefficient, rank: int, include_t: bool) -> Dict[int, RationalCoefficient]:
    """Map generator -> partial derivative of ``c`` along it."""
    codes = set()
    for v in c.variables():
        kind = var_kind(v)
        if kind in (Z, ZB) or (include_t and kind == TV):
            codes.add(v)
    if c.denom_exp:
        for i in range(1, rank + 1):
            codes.add(var_z(i))
            codes.add(var_zb(i))
    grad = {}
    for v in codes:
        kind = var_kind(v)
        if kind == Z:
            g = dz(v)
        elif kind == ZB:
            g = dzb(v - 1000)
        else:
            g = dt(v - 20000)
        dc = c.diff(v)
        if not dc.is_zero():
            grad[g] = dc
    return grad


def _differential(a: EquivariantForm, include_t: bool) -> EquivariantForm:
    out: Dict[Gens, RationalCoefficient] = {}
    for gens, c in a.terms.items():
        if not include_t and any(is_dt(x) for x in gens):
            raise DtGeneratorError("exterior derivative on C^l met a dt generator")
        for g, dc in _gradient(c, a.rank, include_t).items():
            sign, new = _insert_sign(g, gens)
            if not sign:
                continue
            if sign < 0:
                dc = -dc
            out[new] = out[new] + dc if new in out else dc
    return EquivariantForm(out, a.rank)


def exterior_derivative(a: EquivariantForm) -> EquivariantForm:
    """de Rham d on C^l minus the origin; X and t are constants."""
    return _differential(a, include_t=False)


def total_derivative(a: EquivariantForm) -> EquivariantForm:
    """de Rham d on (simplex) x C^l: t variables are differentiated into dt's."""
    return _differential(a, include_t=True)


def x_matrix(rank: int) -> List[List[RationalCoefficient]]:
    return [[RationalCoefficient.X(a, b, rank) for b in range(1, rank + 1)] for a in range(1, rank + 1)]


def numeric_matrix(values, rank: int) -> List[List[RationalCoefficient]]:
    return [[RationalCoefficient.const(values[a][b], rank) for b in range(rank)] for a in range(rank)]


def elementary_matrix(a: int, b: int, rank: int) -> List[List[RationalCoefficient]]:
    """E_ab (1-based) as a constant matrix."""
    vals = [[1 if (i == a - 1 and j == b - 1) else 0 for j in range(rank)] for i in range(rank)]
    return numeric_matrix(vals, rank)


def _iota_values(M, rank: int) -> Dict[int, RationalCoefficient]:
    vals = {}
    for i in range(1, rank + 1):
        s = RationalCoefficient.const(0, rank)
        sb = RationalCoefficient.const(0, rank)
        for k in range(1, rank + 1):
            s = s + M[i - 1][k - 1] * RationalCoefficient.z(k, rank)
            sb = sb + M[k - 1][i - 1] * RationalCoefficient.zb(k, rank)
        vals[dz(i)] = -s
        vals[dzb(i)] = sb
    return vals


def contract(a: EquivariantForm, M) -> EquivariantForm:
    """Contraction with the fundamental field of the matrix ``M``."""
    iota = _iota_values(M, a.rank)
    out: Dict[Gens, RationalCoefficient] = {}
    for gens, c in a.terms.items():
        for r, g in enumerate(gens):
            if is_dt(g):
                raise DtGeneratorError("contraction is only defined on C^l generators")
            val = iota[g]
            if val.is_zero():
                continue
            new = gens[:r] + gens[r + 1:]
            term = c * val
            if r & 1:
                term = -term
            out[new] = out[new] + term if new in out else term
    return EquivariantForm(out, a.rank)


def contract_x(a: EquivariantForm) -> EquivariantForm:
    return contract(a, x_matrix(a.rank))


def d_eq(a: EquivariantForm) -> EquivariantForm:
    """Twisted differential ``d - iota_X``."""
    return exterior_derivative(a) - contract_x(a)


def _x_derivation(a: EquivariantForm, D) -> EquivariantForm:
    """Derivation of the X-polynomial coefficients with X_ij -> D_ij."""
    rank = a.rank
    out = EquivariantForm.zero(rank)
    for i in range(1, rank + 1):
        for j in range(1, rank + 1):
            code = var_x(i, j)
            part = {}
            for g, c in a.terms.items():
                if code in c.variables():
                    part[g] = c.diff(code) * D[i - 1][j - 1]
            if part:
                out = out + EquivariantForm(part, rank)
    return out


def total_lie_derivative(a: EquivariantForm, basis_index: Tuple[int, int]) -> EquivariantForm:
    """Infinitesimal equivariance defect along the complexified basis vector E_ab.

    Returns ``L_Y a + delta a`` where ``L_Y = d iota_Y + iota_Y d`` and
    ``delta`` acts on the X variables by ``X -> -[Y, X]``.  It vanishes iff
    ``a`` is infinitesimally equivariant in that direction.
    """
    rank = a.rank
    Y = elementary_matrix(basis_index[0], basis_index[1], rank)
    X = x_matrix(rank)
    lie = exterior_derivative(contract(a, Y)) + contract(exterior_derivative(a), Y)
    zero = RationalCoefficient.const(0, rank)
    D = []
    for i in range(rank):
        row = []
        for j in range(rank):
            yx = sum((Y[i][k] * X[k][j] for k in range(rank)), zero)
            xy = sum((X[i][k] * Y[k][j] for k in range(rank)), zero)
            row.append(xy - yx)
        D.append(row)
    return lie + _x_derivation(a, D)


def lie_derivative_x(a: EquivariantForm) -> EquivariantForm:
    """Cartan's L_X = d iota_X + iota_X d with symbolic X."""
    return exterior_derivative(contract_x(a)) + contract_x(exterior_derivative(a))


def form_sum(forms: Iterable[EquivariantForm], rank: int) -> EquivariantForm:
    out: Dict[Gens, RationalCoefficient] = {}
    for f in forms:
        for g, c in f.terms.items():
            out[g] = out[g] + c if g in out else c
    return EquivariantForm(out, rank)
