"""Equivariant connections on the pulled-back bundle over C^l.

A connection is given by its matrix of one-forms ``theta`` with respect to the
frame ``s_i(z) = (e_i, z)`` together with the matrix ``ell(X)`` of the
infinitesimal bundle action on that frame.  Index convention: ``theta[j][i]``
is the coefficient of ``s_j`` in ``nabla s_i``; the curvature is assembled as

    kappa = d theta + theta ^ theta - iota_X theta + ell(X)

entry by entry, which reproduces ``kappa(D1) = X`` for the flat connection.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .forms import (
    EquivariantForm,
    contract_x,
    d_eq,
    dz,
    exterior_derivative,
    lie_derivative_x,
    total_derivative,
    x_matrix,
)
from .scalar import TV, XV, RationalCoefficient, var_kind

FormMatrix = List[List[EquivariantForm]]


@dataclass(frozen=True)
class Connection:
    theta: Tuple[Tuple[EquivariantForm, ...], ...]
    ell: Tuple[Tuple[RationalCoefficient, ...], ...]
    rank: int

    def __post_init__(self):
        l = self.rank
        if len(self.theta) != l or any(len(r) != l for r in self.theta):
            raise ValueError("theta must be an l x l matrix")
        if len(self.ell) != l or any(len(r) != l for r in self.ell):
            raise ValueError("ell must be an l x l matrix")
        for row in self.theta:
            for f in row:
                if f.rank != l:
                    raise ValueError("theta entry has the wrong rank")
                if f.form_degrees() - {1}:
                    raise ValueError("theta entries must be pure one-forms")
                if f.has_dt():
                    raise ValueError("theta entries must not contain dt")
                if any(p for c in f.terms.values() for p in c.x_degrees()):
                    raise ValueError("theta entries must not depend on X")
        for row in self.ell:
            for c in row:
                if c.is_zero():
                    continue
                if c.x_degrees() != {1} or any(var_kind(v) not in (XV, TV) for v in c.variables()):
                    raise ValueError("ell entries must be X-linear with no z dependence")

    @classmethod
    def from_lists(cls, theta: Sequence[Sequence[EquivariantForm]], ell, rank: int) -> "Connection":
        return cls(tuple(tuple(r) for r in theta), tuple(tuple(r) for r in ell), rank)


# ---------------------------------------------------------------------------
# matrix helpers
# ---------------------------------------------------------------------------

def zero_matrix(rank: int) -> FormMatrix:
    return [[EquivariantForm.zero(rank) for _ in range(rank)] for _ in range(rank)]


def mat_add(A, B) -> FormMatrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B) -> FormMatrix:
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_wedge(A, B) -> FormMatrix:
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = A[i][0] * B[0][j]
            for k in range(1, n):
                acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def mat_map(fn, A) -> FormMatrix:
    return [[fn(a) for a in row] for row in A]


def mat_is_zero(A) -> bool:
    return all(a.is_zero() for row in A for a in row)


def ell_forms(ell, rank: int) -> FormMatrix:
    return [[EquivariantForm.scalar(c, rank) for c in row] for row in ell]


def curvature_from(theta, ell, rank: int, with_dt: bool = False) -> FormMatrix:
    """``d theta + theta^theta - iota_X theta + ell``; ``with_dt`` uses the total d."""
    d = total_derivative if with_dt else exterior_derivative
    tt = mat_wedge(theta, theta)
    ellf = ell_forms(ell, rank)
    return [[d(theta[i][j]) + tt[i][j] - contract_x(theta[i][j]) + ellf[i][j]
             for j in range(rank)] for i in range(rank)]


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def curvature(c: Connection) -> FormMatrix:
    return curvature_from(c.theta, c.ell, c.rank)


def bianchi_defect(c: Connection) -> FormMatrix:
    """``d_eq kappa - (kappa^theta - theta^kappa)``; zero for invariant connections."""
    kappa = curvature(c)
    lhs = mat_map(d_eq, kappa)
    rhs = mat_sub(mat_wedge(kappa, c.theta), mat_wedge(c.theta, kappa))
    return mat_sub(lhs, rhs)


def invariance_defect(c: Connection) -> FormMatrix:
    """``L_X theta + [ell(X), theta]``.

    This is the infinitesimal U(l)-invariance condition on the connection; the
    Bianchi defect equals its negative, so a random connection only satisfies
    Bianchi when it is built from invariant pieces.
    """
    ellf = ell_forms(c.ell, c.rank)
    comm = mat_sub(mat_wedge(ellf, c.theta), mat_wedge(c.theta, ellf))
    return mat_add(mat_map(lie_derivative_x, c.theta), comm)


def builtin_d1(l: int) -> Connection:
    """The flat connection ``D1(sum f_i s_i) = sum df_i s_i``."""
    if l < 1:
        raise ValueError("rank must be >= 1")
    return Connection.from_lists(zero_matrix(l), x_matrix(l), l)


def builtin_d0(l: int) -> Connection:
    """The s_Delta-trivial connection on C^l minus 0: ``theta_ij = -(zb_j/|z|^2) dz_i``."""
    if l < 1:
        raise ValueError("rank must be >= 1")
    theta = []
    for i in range(1, l + 1):
        row = []
        for j in range(1, l + 1):
            coef = -RationalCoefficient.over_sigma(RationalCoefficient.zb(j, l), 1)
            row.append(EquivariantForm({(dz(i),): coef}, l))
        theta.append(row)
    return Connection.from_lists(theta, x_matrix(l), l)


def apply_to_section(c: Connection, coeffs: Sequence[RationalCoefficient]) -> List[EquivariantForm]:
    """Components of ``nabla(sum_i f_i s_i)``: ``df_j + sum_i theta_ji f_i``."""
    if len(coeffs) != c.rank:
        raise ValueError("need one coefficient per frame element")
    out = []
    for j in range(c.rank):
        acc = exterior_derivative(EquivariantForm.scalar(coeffs[j], c.rank))
        for i in range(c.rank):
            acc = acc + c.theta[j][i] * coeffs[i]
        out.append(acc)
    return out


def convex_combination(c0: Connection, c1: Connection, weight: RationalCoefficient) -> Connection:
    """``(1 - w) c0 + w c1`` for a weight that is constant for d (e.g. a t variable)."""
    if c0.rank != c1.rank:
        raise ValueError("rank mismatch")
    if c0.ell != c1.ell:
        raise ValueError("connections must share ell(X)")
    one = RationalCoefficient.const(1, c0.rank)
    theta = [[a * (one - weight) + b * weight for a, b in zip(ra, rb)]
             for ra, rb in zip(c0.theta, c1.theta)]
    return Connection.from_lists(theta, c0.ell, c0.rank)
